//! Seeded property suite over a prime field: the structural identities of
//! the Kummer embedding, the spin representation, the theta group and the
//! duplication quartics, checked on random data.
//!
//! Each check draws from its own generator, seeded from the suite seed and
//! the check's index, so results do not depend on scheduling; checks may run
//! on several worker threads and are reported in a fixed order.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Fq};
use crate::jacobian::{enumerate_points, random_affine_point, random_divisor, subset_poly, MumfordDivisor};
use crate::kummer::{membership_and_lift, psi_embed, KummerVerdict};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::quadratic::QuadraticSpace;
use crate::spinor::{
    annihilator, beta_form, clifford_act, eval_quadric, expected_quadric_dim, frame_from_subspace,
    intersection_dim, pure_spinor_from_frame, quadric_ideal, same_span, span_dim, IsotropicFrame,
    SpinLayout, SpinVector,
};
use crate::theta::{
    canonical_torsion_mask, coordinate_resultant, duplication_polys_fp, heisenberg_matrix, labelled_roots,
    q_form, torsion_resultant,
};

/// Largest splitting-field degree accepted when drawing a suite curve.
pub const MAX_SPLITTING_DEGREE: usize = 4;

/// Largest `|P^{2^g - 1}(F_p)|` scanned by the brute-force lifting check.
pub const BRUTE_FORCE_BUDGET: u64 = 200_000;

/// Parameters of one run of the suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Genus of the random curve.
    pub g: usize,
    /// Odd prime of the base field.
    pub p: u64,
    /// Seed of every random choice.
    pub seed: u64,
    /// Number of random points (or pairs) per point-based check.
    pub points: usize,
    /// Number of worker threads (at least one).
    pub threads: usize,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    /// Stable name of the check.
    pub name: &'static str,
    /// Number of cases examined.
    pub samples: usize,
    /// Number of cases that failed.
    pub failures: usize,
    /// Description of the first failure, or a note on the coverage.
    pub detail: Option<String>,
}

impl CheckResult {
    /// Whether the check had no failures.
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of the whole suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    /// The configuration that produced the report.
    pub config: SuiteConfig,
    /// The random curve the checks ran on.
    pub curve: HyperellipticCurve<Fp>,
    /// Degree of the splitting field of `f`.
    pub splitting_degree: usize,
    /// Results in a fixed order.
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    /// Whether every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Accumulates failures of one check.
struct Tally {
    name: &'static str,
    samples: usize,
    failures: usize,
    detail: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, samples: 0, failures: 0, detail: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.detail.is_none() {
                self.detail = Some(what());
            }
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        if self.detail.is_none() {
            self.detail = Some(note.into());
        }
        self
    }

    fn finish(self) -> CheckResult {
        CheckResult { name: self.name, samples: self.samples, failures: self.failures, detail: self.detail }
    }
}

/// Everything the checks share.
struct Context {
    g: usize,
    p: u64,
    points: usize,
    curve: HyperellipticCurve<Fp>,
    space: QuadraticSpace<Fp>,
    curve_q: HyperellipticCurve<Fq>,
    space_q: QuadraticSpace<Fq>,
    roots: Vec<Fq>,
}

impl Context {
    fn one(&self) -> Fp {
        Fp::new(1, self.p)
    }

    fn zero(&self) -> Fp {
        Fp::new(0, self.p)
    }

    /// A random divisor class; about a quarter of the samples have lower
    /// Mumford degree, and the first sample is the identity.
    fn random_point(&self, k: usize, rng: &mut ChaCha8Rng) -> MumfordDivisor<Fp> {
        if k == 0 {
            return MumfordDivisor::identity(&self.curve);
        }
        let d = random_divisor(&self.curve, rng);
        if rng.gen_ratio(1, 4) {
            let (a, b) = random_affine_point(&self.curve, rng);
            d.sub(&MumfordDivisor::from_point(&self.curve, &a, &b).expect("point on the curve"))
        } else {
            d
        }
    }

    fn to_fq(&self, d: &MumfordDivisor<Fp>) -> MumfordDivisor<Fq> {
        let field = self.roots[0].context().clone();
        d.base_change(|c| field.from_fp(*c))
    }
}

/// Draws a random curve of genus `g` over `F_p` whose splitting field has
/// degree at most [`MAX_SPLITTING_DEGREE`] and prime to `p`, so that every
/// check (including trace descent of the duplication quartics) applies.
pub fn suite_curve<R: Rng + ?Sized>(g: usize, p: u64, rng: &mut R) -> Result<(HyperellipticCurve<Fp>, usize)> {
    Fp::check_modulus(p)?;
    if g == 0 {
        return Err(Error::Precondition("genus must be positive".into()));
    }
    for _ in 0..10_000 {
        let mut c: Vec<Fp> = (0..=2 * g).map(|_| Fp::new(rng.gen_range(0..p) as i64, p)).collect();
        c.push(Fp::new(1, p));
        let Ok(curve) = HyperellipticCurve::from_poly(Poly::new(c)) else {
            continue;
        };
        let d = labelled_roots(&curve, None)?.d;
        if d <= MAX_SPLITTING_DEGREE && d as u64 % p != 0 {
            return Ok((curve, d));
        }
    }
    Err(Error::BudgetExceeded(format!("no suitable genus-{g} curve over F_{p}")))
}

type Check = fn(&Context, &mut ChaCha8Rng) -> Result<CheckResult>;

/// The checks, in report order.
const CHECKS: [(&str, Check); 10] = [
    ("a_psi_negation", check_negation),
    ("b_membership_rank", check_membership),
    ("b_lift_brute_force", check_lift_brute_force),
    ("c_beta_incidence", check_beta_incidence),
    ("d_annihilator_round_trip", check_round_trip),
    ("e_heisenberg_identities", check_heisenberg),
    ("f_duplication", check_duplication),
    ("g_coordinate_resultant", check_coordinate_resultant),
    ("h_quadric_ideal", check_quadric_ideal),
    ("i_q_form_span", check_q_form_span),
];

/// Names of the checks, in report order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs the whole suite.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (curve, splitting_degree) = suite_curve(config.g, config.p, &mut rng)?;
    let lr = labelled_roots(&curve, None)?;
    let field = lr.field.clone();
    let curve_q = curve.base_change(|c| field.from_fp(*c));
    let ctx = Context {
        g: config.g,
        p: config.p,
        points: config.points,
        space: QuadraticSpace::new(&curve),
        space_q: QuadraticSpace::new(&curve_q),
        curve,
        curve_q,
        roots: lr.roots,
    };
    let results: Mutex<Vec<Option<Result<CheckResult>>>> = Mutex::new(vec![None; CHECKS.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..config.threads.clamp(1, CHECKS.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= CHECKS.len() {
                    break;
                }
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(k as u64 + 1)));
                let r = (CHECKS[k].1)(&ctx, &mut rng);
                results.lock().expect("no poisoned lock")[k] = Some(r);
            });
        }
    });
    let checks = results
        .into_inner()
        .expect("no poisoned lock")
        .into_iter()
        .map(|r| r.expect("every check ran"))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { config: config.clone(), curve: ctx.curve, splitting_degree, checks })
}

fn check_negation(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("a_psi_negation");
    for k in 0..ctx.points {
        let d = ctx.random_point(k, rng);
        let a = psi_embed(&ctx.space, &d)?;
        let b = psi_embed(&ctx.space, &d.negate())?;
        t.record(a.projectively_equal(&b), || format!("Ψ(-P) ≠ Ψ(P) for U = {}", d.u()));
    }
    Ok(t.finish())
}

fn check_membership(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("b_membership_rank");
    for k in 0..ctx.points {
        let d = ctx.random_point(k, rng);
        let s = psi_embed(&ctx.space, &d)?;
        let ok = matches!(
            membership_and_lift(&ctx.space, &s)?,
            KummerVerdict::OnKummer { rank, lifts: true, .. } if rank <= 1
        );
        t.record(ok, || format!("Ψ(P) not recognised as a lifting Kummer point for U = {}", d.u()));
    }
    Ok(t.finish())
}

/// Every normalized point of `P^{n-1}(F_p)`.
fn projective_points(n: usize, p: u64) -> Vec<Vec<Fp>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - 1 - lead;
        for mut k in 0..p.pow(free as u32) {
            let mut v = vec![Fp::new(0, p); n];
            v[lead] = Fp::new(1, p);
            for c in v.iter_mut().skip(lead + 1) {
                *c = Fp::new((k % p) as i64, p);
                k /= p;
            }
            out.push(v);
        }
    }
    out
}

fn check_lift_brute_force(ctx: &Context, _rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("b_lift_brute_force");
    let n = 1usize << ctx.g;
    if ctx.g > 2 || (ctx.p as f64).powi(n as i32 - 1) * 2.0 > BRUTE_FORCE_BUDGET as f64 {
        return Ok(t.note("skipped: brute force only for g ≤ 2").finish());
    }
    let image: HashSet<Vec<Fp>> = enumerate_points(&ctx.curve)?
        .iter()
        .map(|d| psi_embed(&ctx.space, d).map(|s| s.normalized().into_coords()))
        .collect::<Result<_>>()?;
    for v in projective_points(n, ctx.p) {
        let s = SpinVector::new(ctx.g, v.clone())?;
        let lifts = matches!(membership_and_lift(&ctx.space, &s)?, KummerVerdict::OnKummer { lifts: true, .. });
        let expected = image.contains(&v);
        t.record(lifts == expected, || format!("lift verdict {lifts} but enumeration says {expected} at {v:?}"));
    }
    Ok(t.note(format!("{} Kummer images of J(F_p)", image.len())).finish())
}

fn random_pure_spinor(ctx: &Context, rng: &mut ChaCha8Rng) -> SpinVector<Fp> {
    let mask = rng.gen_range(0..=SpinLayout::get(ctx.g).full());
    pure_spinor_from_frame(&ctx.space, &IsotropicFrame::random(ctx.g, mask, &ctx.one(), rng))
}

fn check_beta_incidence(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("c_beta_incidence");
    let zero = ctx.zero();
    let mut meeting = 0;
    while t.samples < ctx.points {
        let s1 = random_pure_spinor(ctx, rng);
        // Half of the pairs are independent; in the other half the second
        // spinor is a Clifford reflection of the first, whose subspace meets
        // the first one in at least g - 1 dimensions.
        let s2 = if t.samples % 2 == 0 {
            random_pure_spinor(ctx, rng)
        } else {
            let v: Vec<Fp> = (0..=2 * ctx.g).map(|_| zero.random_like(rng)).collect();
            clifford_act(&ctx.space, &v, &s1)
        };
        if s2.is_zero() {
            continue;
        }
        let w1 = annihilator(&ctx.space, &s1);
        let w2 = annihilator(&ctx.space, &s2);
        let meets = intersection_dim(&w1, &w2, &zero) > 0;
        meeting += meets as usize;
        let incident = beta_form(&s1, &s2).is_zero();
        t.record(incident == meets, || format!("β = 0 is {incident} but intersection is nontrivial: {meets}"));
    }
    Ok(t.note(format!("{meeting} meeting pairs")).finish())
}

fn check_round_trip(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("d_annihilator_round_trip");
    let one = ctx.one();
    let zero = ctx.zero();
    for _ in 0..ctx.points {
        let mask = rng.gen_range(0..=SpinLayout::get(ctx.g).full());
        let frame = IsotropicFrame::random(ctx.g, mask, &one, rng);
        let s = pure_spinor_from_frame(&ctx.space, &frame);
        let w = annihilator(&ctx.space, &s);
        let spans = same_span(&w, &frame.subspace_basis(&one), &zero);
        let back = frame_from_subspace(&ctx.space, &w, mask).map(|f| pure_spinor_from_frame(&ctx.space, &f));
        let ok = spans && matches!(&back, Ok(s2) if s2.projectively_equal(&s));
        t.record(ok, || format!("round trip failed for J = {mask:b}"));
    }
    Ok(t.finish())
}

fn check_heisenberg(ctx: &Context, _rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("e_heisenberg_identities");
    let g = ctx.g;
    let n = 1usize << g;
    let one = ctx.roots[0].one_like();
    let zero = ctx.roots[0].zero_like();
    let id = Matrix::identity(n, &one);
    let full: u32 = (1 << (2 * g + 1)) - 1;
    let inf = SpinVector::infinity(g, &one);
    t.record(*heisenberg_matrix(&ctx.space_q, &ctx.roots, full).matrix() == id, || "M_B ≠ Id".into());
    for mask in 1..full {
        let m = heisenberg_matrix(&ctx.space_q, &ctx.roots, mask);
        let r = torsion_resultant(&ctx.roots, mask);
        t.record(m.matrix() * m.matrix() == id.scale(&r), || format!("M_I^2 ≠ r_(I,I^c) for I = {mask:b}"));
        let mc = heisenberg_matrix(&ctx.space_q, &ctx.roots, full & !mask);
        t.record(m.matrix() == mc.matrix(), || format!("M_I ≠ M_(I^c) for I = {mask:b}"));
        let b = beta_form(&m.apply_to_infinity(), &inf);
        let expected = if canonical_torsion_mask(g, mask).count_ones() as usize == g { one.clone() } else { zero.clone() };
        t.record(b == expected, || format!("β(M_T ∞, ∞) = {b} for T = {mask:b}"));
    }
    Ok(t.finish())
}

fn check_duplication(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("f_duplication");
    let delta = duplication_polys_fp(&ctx.curve, None)?;
    for k in 0..ctx.points {
        let d = ctx.random_point(k, rng);
        let x = psi_embed(&ctx.space, &d)?;
        let x2 = psi_embed(&ctx.space, &d.double())?;
        t.record(delta.apply(&x).projectively_equal(&x2), || format!("δ(Ψ(P)) ≠ Ψ(2P) for U = {}", d.u()));
    }
    Ok(t.finish())
}

fn check_coordinate_resultant(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("g_coordinate_resultant");
    let g = ctx.g;
    let one = ctx.roots[0].one_like();
    for k in 0..ctx.points {
        let d = ctx.to_fq(&ctx.random_point(k, rng));
        let m = d.degree();
        let candidates: Vec<u32> = (0..1u32 << (2 * g + 1))
            .filter(|t| t.count_ones() as usize == g - m)
            .collect();
        let tm = candidates[rng.gen_range(0..candidates.len())];
        let s = coordinate_resultant(&ctx.space_q, &ctx.roots, tm, &d)?;
        let res = d
            .u()
            .resultant(&subset_poly(&ctx.roots, tm, &one))
            .ok_or_else(|| Error::Internal("resultant of monic polynomials".into()))?;
        t.record(s == res, || format!("s(P) ≠ Res(U_P, U_T) for T = {tm:b}, m = {m}"));
    }
    let _ = &ctx.curve_q;
    Ok(t.finish())
}

fn check_quadric_ideal(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("h_quadric_ideal");
    let ideal = quadric_ideal(&ctx.space, rng)?;
    let expected = expected_quadric_dim(ctx.g);
    t.record(ideal.len() == expected, || format!("dim I(2) = {} but expected {expected}", ideal.len()));
    for k in 0..ctx.points {
        let d = ctx.random_point(k, rng);
        let s = psi_embed(&ctx.space, &d)?;
        let ok = ideal.iter().all(|q| eval_quadric(q, &s).is_zero());
        t.record(ok, || format!("a quadric of I(2) is nonzero at Ψ(P), U = {}", d.u()));
    }
    Ok(t.finish())
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check_q_form_span(ctx: &Context, _rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let mut t = Tally::new("i_q_form_span");
    let g = ctx.g;
    let n = 1usize << g;
    let zero = ctx.roots[0].zero_like();
    let mut rows = Vec::new();
    for mask in (0..1u32 << (2 * g + 1)).filter(|m| m.count_ones() as usize == g) {
        let gram = q_form(&ctx.space_q, &ctx.roots, mask)?;
        let symmetric = (0..n).all(|a| (0..n).all(|b| gram[(a, b)] == gram[(b, a)]));
        t.record(symmetric, || format!("q_T Gram matrix not symmetric for T = {mask:b}"));
        rows.push((0..n).flat_map(|a| (a..n).map(move |b| (a, b))).map(|(a, b)| gram[(a, b)].clone()).collect());
    }
    let rank = span_dim(&rows, &zero);
    let expected = binom(2 * g + 1, g);
    t.record(rank == expected, || format!("span of the q_T has rank {rank}, expected {expected}"));
    Ok(t.finish())
}
