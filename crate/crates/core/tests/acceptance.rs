//! Acceptance harness: prints one PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so that the report is printed verbatim.
//! The process fails if a criterion fails that is not listed in
//! `KNOWN_FAILURES` (failures documented as conflicts in the published
//! data); those are still reported as FAIL.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinor_kummer::complex_roots::poly_height;
use spinor_kummer::field::{q, qi};
use spinor_kummer::heights::{
    bad_primes, canonical_height, compare_dagger_naive, epsilon_content, epsilon_lower_bound, integral_x_points,
    local_epsilon, mu_partial, ord_p, random_curve_with_divisor, split_curve, supported_on_divisors_of, CanonicalHeight,
    Place, naive_height,
};
use spinor_kummer::kummer::{kummer_quartic_g2_generic, mumford_to_frame, psi_embed, QUARTIC_NVARS};
use spinor_kummer::theta::{duplication_polys_fp, duplication_polys_rational};
use spinor_kummer::verify::{run_suite, SuiteConfig};
use spinor_kummer::{Fp, HyperellipticCurve, MPoly, MumfordDivisor, Poly, Q, QuadraticSpace, SpinVector};

/// Criteria whose failure is expected and recorded: the published quartic
/// differs from the recomputed one, and the published genus-one map has the
/// opposite sign to the published genus-two formulas.
const KNOWN_FAILURES: &[u32] = &[2, 3];

/// Root labeling under which the trace-descended `δ_1` has the published
/// leading coefficients (label `i + 1` is Frobenius-orbit position `[i]`).
const PINNED_LABELING: [usize; 9] = [0, 1, 2, 3, 4, 7, 8, 5, 6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn fp_poly(asc: &[i64]) -> Poly<Fp> {
    Poly::new(asc.iter().map(|&c| Fp::new(c, 5)).collect())
}

fn fp_vec(v: &[i64]) -> Vec<Fp> {
    v.iter().map(|&c| Fp::new(c, 5)).collect()
}

// ---------------------------------------------------------------- criterion 1

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let curve = HyperellipticCurve::from_poly(fp_poly(&[3, 1, 0, 2, 0, 0, 0, 0, 0, 1])).expect("nonsingular");
    let space = QuadraticSpace::new(&curve);
    let p = MumfordDivisor::new(
        &curve,
        fp_poly(&[3, 2, 1, 4, 1]),
        fp_poly(&[4, 2, 3, 0, 1, 1]),
        fp_poly(&[1, 1, 1, 3]),
    )
    .expect("published Mumford triple");
    let golden: [[i64; 16]; 5] = [
        [1, 1, 1, 3, 3, 4, 2, 3, 4, 2, 0, 4, 1, 2, 1, 3],
        [0, 1, 2, 2, 3, 2, 1, 1, 3, 1, 4, 0, 4, 1, 4, 3],
        [1, 0, 0, 0, 2, 1, 1, 3, 4, 4, 4, 0, 2, 2, 3, 2],
        [0, 1, 1, 0, 1, 1, 4, 1, 4, 0, 1, 4, 2, 3, 2, 4],
        [1, 3, 1, 2, 1, 2, 4, 3, 1, 2, 2, 3, 0, 4, 4, 4],
    ];
    let mut cur = p.clone();
    for (k, gold) in golden.iter().enumerate() {
        let psi = psi_embed(&space, &cur).expect("embedding");
        let ok = if k == 0 { psi.coords() == fp_vec(gold) } else { psi.normalized().coords() == fp_vec(gold) };
        if !ok {
            failures.push(format!("Ψ([{}]P) = {:?}", 1 << k, psi.coords()));
        }
        if k < 4 {
            cur = cur.double();
        }
    }
    let q16 = p.mul(16);
    if q16 != cur
        || *q16.u() != fp_poly(&[1, 3, 1, 2, 1])
        || *q16.v() != fp_poly(&[4, 4, 2, 3, 3, 1])
        || *q16.r() != fp_poly(&[2, 0, 3, 4])
    {
        failures.push(format!("[16]P = ({}, {}, {})", q16.u(), q16.v(), q16.r()));
    }
    let delta = duplication_polys_fp(&curve, Some(&PINNED_LABELING)).expect("duplication quartics");
    // published leading terms of δ_1 in x_1..x_4; zeros are skipped monomials
    let prefix: [([u32; 4], i64); 19] = [
        ([4, 0, 0, 0], 0),
        ([3, 1, 0, 0], 4),
        ([2, 2, 0, 0], 2),
        ([1, 3, 0, 0], 1),
        ([0, 4, 0, 0], 3),
        ([3, 0, 1, 0], 3),
        ([2, 1, 1, 0], 0),
        ([1, 2, 1, 0], 4),
        ([0, 3, 1, 0], 1),
        ([2, 0, 2, 0], 3),
        ([1, 1, 2, 0], 0),
        ([0, 2, 2, 0], 3),
        ([1, 0, 3, 0], 3),
        ([0, 1, 3, 0], 2),
        ([0, 0, 4, 0], 3),
        ([3, 0, 0, 1], 3),
        ([2, 1, 0, 1], 2),
        ([1, 2, 0, 1], 2),
        ([0, 3, 0, 1], 1),
    ];
    for (e4, c) in prefix {
        let mut e = vec![0u32; 16];
        e[..4].copy_from_slice(&e4);
        let got = delta.polys()[0].coeff(&e);
        if got != Fp::new(c, 5) {
            failures.push(format!("δ_1 coefficient of {e4:?} is {got}, expected {c}"));
        }
    }
    let mut x = psi_embed(&space, &p).expect("embedding");
    for (k, gold) in golden.iter().enumerate().skip(1) {
        x = delta.apply(&x);
        if x.normalized().coords() != fp_vec(gold) {
            failures.push(format!("δ iterate {k} differs from the published Ψ([{}]P)", 1 << k));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("runtime {elapsed:.1?} exceeds 2 minutes"));
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("5 Kummer vectors, [16]P, 19 δ_1 coefficients and 4 δ iterates exact; {elapsed:.1?}")
        } else {
            failures.join("; ")
        },
    }
}

// ---------------------------------------------------------------- criterion 2

/// The published genus-two quartic, term by term, in the variables
/// `x_1..x_4, c_1..c_5`.
fn published_quartic() -> MPoly<Q> {
    let terms: &[(i64, [u32; 9])] = &[
        (1, [4, 0, 0, 0, 0, 0, 0, 2, 0]),
        (-4, [4, 0, 0, 0, 0, 0, 1, 0, 1]),
        (-4, [3, 1, 0, 0, 0, 1, 0, 0, 1]),
        (-2, [3, 0, 1, 0, 0, 1, 0, 1, 0]),
        (-4, [3, 0, 0, 1, 0, 0, 0, 0, 1]),
        (-4, [2, 2, 0, 0, 1, 0, 0, 0, 1]),
        (1, [2, 0, 2, 0, 0, 2, 0, 0, 0]),
        (-4, [2, 0, 2, 0, 1, 0, 1, 0, 0]),
        (2, [2, 0, 2, 0, 0, 0, 0, 1, 0]),
        (4, [2, 1, 1, 0, 0, 0, 0, 0, 1]),
        (-4, [2, 1, 1, 0, 1, 0, 0, 1, 0]),
        (2, [2, 1, 0, 1, 0, 0, 0, 1, 0]),
        (4, [2, 0, 1, 1, 0, 0, 1, 0, 0]),
        (-4, [1, 3, 0, 0, 0, 0, 0, 0, 1]),
        (-2, [1, 0, 3, 0, 0, 1, 0, 0, 0]),
        (-4, [1, 1, 2, 0, 0, 0, 1, 0, 0]),
        (-4, [1, 2, 1, 0, 0, 0, 0, 1, 0]),
        (-4, [1, 0, 2, 1, 1, 0, 0, 0, 0]),
        (2, [1, 1, 1, 1, 0, 1, 0, 0, 0]),
        (4, [1, 0, 1, 2, 0, 0, 0, 0, 0]),
        (1, [0, 0, 4, 0, 0, 0, 0, 0, 0]),
        (-6, [0, 1, 2, 0, 0, 0, 0, 0, 0]),
        (1, [0, 2, 0, 2, 0, 0, 0, 0, 0]),
    ];
    let mut out = MPoly::zero(QUARTIC_NVARS, &qi(0));
    for (c, e) in terms {
        out.add_term(e.to_vec(), qi(*c));
    }
    out
}

fn criterion_2() -> Outcome {
    let computed = kummer_quartic_g2_generic(&qi(1));
    let published = published_quartic();
    let diff = &computed - &published;
    if diff.is_zero() {
        return Outcome { pass: true, detail: "symbolic equality over Q(c_1..c_5)".into() };
    }
    let terms: Vec<String> = diff
        .terms_grevlex()
        .iter()
        .map(|(e, c)| format!("{c}·{}", monomial_name(e)))
        .collect();
    Outcome {
        pass: false,
        detail: format!("computed − published = {} (see decisions ledger)", terms.join(" + ")),
    }
}

fn monomial_name(e: &[u32]) -> String {
    const NAMES: [&str; 9] = ["x1", "x2", "x3", "x4", "c1", "c2", "c3", "c4", "c5"];
    e.iter()
        .zip(NAMES)
        .filter(|(k, _)| **k > 0)
        .map(|(k, n)| if *k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect::<Vec<_>>()
        .join("")
}

// ---------------------------------------------------------------- criterion 3

fn small_q(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_monic(deg: usize, rng: &mut ChaCha8Rng) -> Poly<Q> {
    let mut c: Vec<Q> = (0..deg).map(|_| small_q(rng)).collect();
    c.push(qi(1));
    Poly::new(c)
}

fn random_poly_below(deg: usize, rng: &mut ChaCha8Rng) -> Poly<Q> {
    Poly::new((0..deg).map(|_| small_q(rng)).collect())
}

/// A random rational Mumford triple `(U, V, R)` with `deg U = m`, together
/// with the curve `f = U V + R^2` of genus `g`.
fn random_triple(g: usize, m: usize, rng: &mut ChaCha8Rng) -> (HyperellipticCurve<Q>, MumfordDivisor<Q>) {
    loop {
        let u = random_monic(m, rng);
        let v = random_monic(2 * g + 1 - m, rng);
        let r = random_poly_below(m, rng);
        let f = &(&u * &v) + &(&r * &r);
        if let Ok(curve) = HyperellipticCurve::from_poly(f) {
            if let Ok(d) = MumfordDivisor::new(&curve, u, v, r) {
                return (curve, d);
            }
        }
    }
}

/// `c_k` in the convention `P = x^n + c_1 x^{n-1} + ... + c_n` (or without
/// the leading term for `R`).
fn top(p: &Poly<Q>, n: usize, k: usize) -> Q {
    p.coeff_or(n - k, &qi(0))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    let trials = 10;
    for _ in 0..trials {
        // genus one: [1 : -α]
        let (c, d) = random_triple(1, 1, &mut rng);
        let alpha = -d.u().coeff_or(0, &qi(0));
        let psi = psi_embed(&QuadraticSpace::new(&c), &d).expect("embedding");
        if psi.coords() != [qi(1), -alpha.clone()] {
            let sign_flipped = psi.coords() == [qi(1), alpha.clone()];
            failures.push(format!(
                "g=1 α={alpha}: Ψ = [{}]{}",
                psi.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" : "),
                if sign_flipped { " (opposite sign)" } else { "" }
            ));
        }
        // genus two, generic: [1 : -u_1 : u_2 : -u_2 v_1 - v_3]
        let (c, d) = random_triple(2, 2, &mut rng);
        let (u, v) = (d.u(), d.v());
        let expected = vec![
            qi(1),
            -top(u, 2, 1),
            top(u, 2, 2),
            -(top(u, 2, 2) * top(v, 3, 1)) - top(v, 3, 3),
        ];
        let psi = psi_embed(&QuadraticSpace::new(&c), &d).expect("embedding");
        if psi.coords() != expected {
            failures.push(format!("g=2 generic: {:?} vs {:?}", psi.coords(), expected));
        }
        // genus two, Mumford degree one: [0 : 1 : -u_1 : u_1^2]
        let (c, d) = random_triple(2, 1, &mut rng);
        let u1 = top(d.u(), 1, 1);
        let expected = SpinVector::new(2, vec![qi(0), qi(1), -u1.clone(), u1.clone() * &u1]).expect("length 4");
        let psi = psi_embed(&QuadraticSpace::new(&c), &d).expect("embedding");
        if !psi.projectively_equal(&expected) {
            failures.push(format!("g=2, m=1: {:?}", psi.coords()));
        }
        // genus five: the frame (ξ_i), (ξ_ij) and the first coordinates
        let (c, d) = random_triple(5, 5, &mut rng);
        let space = QuadraticSpace::new(&c);
        let frame = mumford_to_frame(&space, &d).expect("frame");
        let u = |k: usize| if k == 0 { qi(1) } else { top(d.u(), 5, k) };
        let v = |k: usize| if k == 0 { qi(1) } else { top(d.v(), 6, k) };
        let r = |k: usize| d.r().coeff_or(5 - k, &qi(0));
        let xi: Vec<Q> = (0..5).map(|i| -u(5 - i)).collect();
        if frame.xi() != xi.as_slice() {
            failures.push(format!("g=5 ξ_i = {:?}", frame.xi()));
        }
        let two = qi(2);
        let upper: [((usize, usize), Q); 10] = [
            ((0, 1), r(3) * r(5) * &two + u(5) * v(4) + u(3) * v(6)),
            ((0, 2), r(2) * r(5) * &two + u(5) * v(3) + u(2) * v(6)),
            ((0, 3), r(1) * r(5) * &two + u(5) * v(2) + u(1) * v(6)),
            ((0, 4), u(5) * v(1) + v(6)),
            (
                (1, 2),
                r(2) * r(4) * &two + r(1) * r(5) * &two + u(5) * v(2) + u(4) * v(3) + u(2) * v(5) + u(1) * v(6),
            ),
            ((1, 3), r(1) * r(4) * &two + u(5) * v(1) + u(4) * v(2) + u(1) * v(5) + v(6)),
            ((1, 4), u(4) * v(1) + u(5) + v(5)),
            ((2, 3), r(1) * r(3) * &two + u(4) * v(1) + u(3) * v(2) + u(1) * v(4) + u(5) + v(5)),
            ((2, 4), u(3) * v(1) + u(4) + v(4)),
            ((3, 4), u(2) * v(1) + u(3) + v(3)),
        ];
        for ((i, j), twice) in upper {
            let want = twice / &two;
            if frame.xij()[(i, j)] != want || frame.xij()[(j, i)] != -want.clone() {
                failures.push(format!("g=5 ξ_{i}{j} = {}, expected {want}", frame.xij()[(i, j)]));
            }
        }
        let psi = psi_embed(&space, &d).expect("embedding");
        let prefix = [
            qi(1),
            -u(1),
            u(2),
            -u(3),
            u(4),
            -u(5),
            -u(3) - u(2) * v(1) - v(3),
            u(4) + u(3) * v(1) + v(4),
            -u(5) - u(4) * v(1) - v(5),
            u(5) * v(1) + v(6),
        ];
        if psi.coords()[..10] != prefix {
            failures.push(format!("g=5 Ψ prefix {:?}", &psi.coords()[..10]));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{trials} random rational parameter sets for each of g=1, g=2 (m=2, m=1), g=5 frame and Ψ prefix")
        } else {
            failures.join("; ")
        },
    }
}

// ---------------------------------------------------------------- criterion 4

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let threads = std::env::var("SPINOR_KUMMER_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let mut failures = Vec::new();
    let mut runs = 0;
    for g in 1..=3 {
        for p in [5u64, 7, 11, 13] {
            let cfg = SuiteConfig { g, p, seed: 1000 + 100 * g as u64 + p, points: 100, threads };
            match run_suite(&cfg) {
                Ok(report) => {
                    runs += 1;
                    for c in &report.checks {
                        if !c.passed() {
                            failures.push(format!(
                                "g={g} p={p} {}: {}/{} failed ({})",
                                c.name,
                                c.failures,
                                c.samples,
                                c.detail.clone().unwrap_or_default()
                            ));
                        }
                    }
                }
                Err(e) => failures.push(format!("g={g} p={p}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        failures.push(format!("runtime {elapsed:.1?} exceeds 10 minutes"));
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{runs} (g, p) runs × 10 checks, 100 points each, zero failures; {elapsed:.1?}")
        } else {
            failures.join("; ")
        },
    }
}

// ---------------------------------------------------------------- criterion 5

const N_MAX: usize = 6;
const SLACK: f64 = 1e-9;
/// Sample points are kept to naive height at most this, so that most orbits
/// reach `N_MAX` doublings within the library's height budget.
const MAX_SAMPLE_HEIGHT: f64 = 3.0;

/// Up to `count` non-identity points on `curve`, built from `seed_point` and
/// the affine points with small integral `x`.
fn sample_points(
    curve: &HyperellipticCurve<Q>,
    seed_point: Option<&MumfordDivisor<Q>>,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<MumfordDivisor<Q>> {
    let pool: Vec<MumfordDivisor<Q>> = integral_x_points(curve, 40)
        .iter()
        .map(|(a, b)| MumfordDivisor::from_point(curve, a, b).expect("point on the curve"))
        .collect();
    let space = QuadraticSpace::new(curve);
    let small = |d: &MumfordDivisor<Q>| naive_height(&space, d).is_ok_and(|h| h <= MAX_SAMPLE_HEIGHT);
    let mut out: Vec<MumfordDivisor<Q>> = seed_point.into_iter().filter(|d| small(d)).cloned().collect();
    for attempt in 0..400 {
        if out.len() >= count {
            break;
        }
        let candidate = if out.is_empty() {
            match pool.get(attempt) {
                Some(pt) => pt.clone(),
                None => break,
            }
        } else if pool.is_empty() {
            out[rng.gen_range(0..out.len())].mul(2)
        } else {
            let pt = &pool[rng.gen_range(0..pool.len())];
            let other = &out[rng.gen_range(0..out.len())];
            if rng.gen() { other.add(pt) } else { other.sub(pt) }
        };
        if !candidate.is_identity() && !out.contains(&candidate) && small(&candidate) {
            out.push(candidate);
        }
    }
    out
}

fn ch(space: &QuadraticSpace<Q>, d: &MumfordDivisor<Q>, reached: &mut [usize; 2]) -> CanonicalHeight {
    let h = canonical_height(space, d, N_MAX).expect("canonical height");
    reached[0] += usize::from(h.iterations == N_MAX);
    reached[1] += 1;
    h
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let (mut curves, mut points, mut pairs) = (0, 0, 0);
    let mut worst_quad = 0.0f64;
    let mut worst_par = 0.0f64;
    let mut reached = [0usize; 2];
    // random curves f = UV + R^2 with Ht(f) <= 20
    for i in 0..10 {
        let g = 1 + i % 2;
        let (curve, d) = random_curve_with_divisor(g, 3, &mut rng);
        assert!(poly_height(curve.f()) <= 20.0);
        let space = QuadraticSpace::new(&curve);
        let pts = sample_points(&curve, Some(&d), 6, &mut rng);
        curves += 1;
        let mut hs = Vec::new();
        for p in &pts {
            points += 1;
            let cmp = compare_dagger_naive(&space, p).expect("heights");
            if !cmp.dagger_le_naive() {
                failures.push(format!("h† > h on curve {i}: {} > {}", cmp.dagger_max, cmp.naive_max));
            }
            let h1 = ch(&space, p, &mut reached);
            let h2 = ch(&space, &p.double(), &mut reached);
            let resid = (h2.estimate - 4.0 * h1.estimate).abs();
            let bound = h2.tail_bound + 4.0 * h1.tail_bound;
            worst_quad = worst_quad.max(resid / bound.max(f64::MIN_POSITIVE));
            if resid > bound + SLACK {
                failures.push(format!("quadraticity on curve {i}: residual {resid:.3e} > bound {bound:.3e}"));
            }
            hs.push(h1);
        }
        for k in 0..pts.len().saturating_sub(1) {
            pairs += 1;
            let (p, q) = (&pts[k], &pts[k + 1]);
            let hsum = ch(&space, &p.add(q), &mut reached);
            let hdiff = ch(&space, &p.sub(q), &mut reached);
            let resid = (hsum.estimate + hdiff.estimate - 2.0 * hs[k].estimate - 2.0 * hs[k + 1].estimate).abs();
            let bound = hsum.tail_bound + hdiff.tail_bound + 2.0 * hs[k].tail_bound + 2.0 * hs[k + 1].tail_bound;
            worst_par = worst_par.max(resid / bound.max(f64::MIN_POSITIVE));
            if resid > bound + SLACK {
                failures.push(format!("parallelogram on curve {i}: residual {resid:.3e} > bound {bound:.3e}"));
            }
        }
    }
    // fully split curves: local bounds at bad places, μ ≡ 0 at good places
    let split_roots: [&[i64]; 4] = [&[-1, 0, 1], &[-2, 0, 3], &[-2, -1, 0, 1, 2], &[-3, -1, 0, 1, 3]];
    let mut local_checks = 0;
    let mut good_mu_checks = 0;
    for roots in split_roots {
        let curve = split_curve(roots).expect("distinct roots");
        if poly_height(curve.f()) > 20.0 {
            failures.push(format!("split curve {roots:?} has Ht(f) > 20"));
            continue;
        }
        curves += 1;
        let space = QuadraticSpace::new(&curve);
        let delta = duplication_polys_rational(&curve).expect("f splits");
        let g = curve.genus();
        let inf = SpinVector::infinity(g, &qi(1));
        if delta.apply(&inf) != inf {
            failures.push(format!("δ(∞) ≠ ∞ exactly for {roots:?}"));
        }
        let bad = bad_primes(&curve).expect("small discriminant");
        let two_disc = curve.discriminant().numer() * 2;
        for p in sample_points(&curve, None, 5, &mut rng) {
            points += 1;
            let cmp = compare_dagger_naive(&space, &p).expect("heights");
            if !cmp.dagger_le_naive() {
                failures.push(format!("h† > h on split curve {roots:?}"));
            }
            for &v in &bad {
                local_checks += 1;
                let eps = local_epsilon(&space, &delta, &p, Place::Finite(v)).expect("ε_v");
                let lower = epsilon_lower_bound(&curve, v);
                if eps < lower - SLACK {
                    failures.push(format!("ε_{v} = {eps:.4} < log|2^(4g)Δ|_{v} = {lower:.4} on {roots:?}"));
                }
            }
            // an explicit good odd place: μ_v truncation is exactly zero
            let good = (3u64..)
                .step_by(2)
                .find(|&v| spinor_kummer::field::is_prime(v) && ord_p(curve.discriminant(), v) == 0)
                .expect("some odd prime does not divide Δ");
            good_mu_checks += 1;
            let mu = mu_partial(&space, &delta, &p, Place::Finite(good), N_MAX).expect("μ_v");
            if mu.value != 0.0 {
                failures.push(format!("μ_{good} = {} ≠ 0 at a good place on {roots:?}", mu.value));
            }
            // every good place at once: the content of δ(x) along the orbit
            // has no prime outside 2Δ, so every term of μ_v vanishes there
            let mut cur = p.clone();
            for _ in 0..N_MAX {
                local_checks += 1;
                let c = epsilon_content(&space, &delta, &cur).expect("content");
                if !supported_on_divisors_of(&c, &two_disc) {
                    failures.push(format!("ε_v ≠ 0 at a good place: content {c} on {roots:?}"));
                }
                cur = cur.double();
            }
        }
    }
    let elapsed = start.elapsed();
    let enough = points >= 50 && curves >= 10;
    if !enough {
        failures.push(format!("only {points} points on {curves} curves"));
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{points} points on {curves} curves, {pairs} pairs; h† ≤ h exact; worst residual/bound: quadraticity {worst_quad:.3}, parallelogram {worst_par:.3}; {}/{} canonical estimates at n = {N_MAX}; {local_checks} bad-place and orbit-content checks, {good_mu_checks} μ_v ≡ 0 checks at good odd places; {elapsed:.1?}",
                reached[0], reached[1]
            )
        } else {
            failures.join("; ")
        },
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 5] = [
        (1, "genus-4 golden reproduction over F_5", criterion_1),
        (2, "genus-2 Kummer quartic", criterion_2),
        (3, "generic-formula spot checks", criterion_3),
        (4, "seeded property suite", criterion_4),
        (5, "heights over Q", criterion_5),
    ];
    // `ACCEPTANCE_ONLY=1,3` restricts the run to the listed criteria.
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let mut unexpected = 0;
    for (n, name, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&n)) {
            continue;
        }
        let start = std::time::Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n} [{name}]: {status} — {} ({:.1}s)",
            out.detail,
            start.elapsed().as_secs_f64()
        );
        if !out.pass && !KNOWN_FAILURES.contains(&n) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criterion/criteria failed unexpectedly");
        std::process::exit(1);
    }
}
