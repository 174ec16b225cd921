//! Heights on the Jacobian over the rationals: the dagger height `h†`, the
//! naive height `h` of the Kummer image, the reduction height `h̃`, the
//! canonical height by Tate's limit, and the local height differences
//! `ε_v` and `μ_v`.
//!
//! All logarithms are natural.  Integer stages are kept exact (primitive
//! integer vectors, valuations) and only the final logarithms are floats.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::complex_roots::{complex_roots, poly_height};
use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::Q;
use crate::jacobian::MumfordDivisor;
use crate::kummer::{primitive_integer_vector, psi_embed};
use crate::poly::Poly;
use crate::quadratic::QuadraticSpace;
use crate::spinor::SpinVector;
use crate::theta::DuplicationPolys;

/// Largest trial divisor used when factoring discriminants.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// `log |n|` for a nonzero integer of any size.
pub fn bigint_ln(n: &BigInt) -> f64 {
    assert!(!n.is_zero(), "logarithm of zero");
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().expect("fits in a double").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log |q|` for a nonzero rational.
pub fn rational_ln_abs(q: &Q) -> f64 {
    bigint_ln(q.numer()) - bigint_ln(q.denom())
}

/// `ord_p(q)` for a nonzero rational.
pub fn ord_p(q: &Q, p: u64) -> i64 {
    fn ord_int(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.clone();
        let mut k = 0;
        while (&n % p).is_zero() {
            n /= p;
            k += 1;
        }
        k
    }
    assert!(!q.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    ord_int(q.numer(), &pb) - ord_int(q.denom(), &pb)
}

/// Largest absolute entry of the primitive integer vector on the line of `v`.
pub fn primitive_max(v: &[Q]) -> BigInt {
    primitive_integer_vector(v)
        .into_iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Logarithmic Weil height of the projective point `[v]`.
pub fn weil_height(v: &[Q]) -> f64 {
    let m = primitive_max(v);
    if m.is_zero() {
        0.0
    } else {
        bigint_ln(&m)
    }
}

/// The vector `[1 : u_1 : ... : u_m]` for `U = x^m + u_1 x^{m-1} + ... + u_m`.
pub fn dagger_vector(d: &MumfordDivisor<Q>) -> Vec<Q> {
    let u = d.u().coeffs();
    let m = d.degree();
    (0..=m).map(|i| u[m - i].clone()).collect()
}

/// The dagger height `h†(P) = h(1 : u_1 : ... : u_m)`.
pub fn dagger_height(d: &MumfordDivisor<Q>) -> f64 {
    weil_height(&dagger_vector(d))
}

/// The naive height: the Weil height of `Ψ(P)`.
pub fn naive_height(space: &QuadraticSpace<Q>, d: &MumfordDivisor<Q>) -> Result<f64> {
    Ok(weil_height(psi_embed(space, d)?.coords()))
}

/// The integer stage of the comparison `h† ≤ h`: the largest entries of the
/// two primitive integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactHeightComparison {
    /// `max |·|` of the primitive vector of `[1 : u_1 : ... : u_m]`.
    pub dagger_max: BigInt,
    /// `max |·|` of the primitive vector of `Ψ(P)`.
    pub naive_max: BigInt,
}

impl ExactHeightComparison {
    /// Whether `h†(P) ≤ h(P)`, decided on integers.
    pub fn dagger_le_naive(&self) -> bool {
        self.dagger_max <= self.naive_max
    }
}

/// Exact comparison of the dagger and naive heights.
pub fn compare_dagger_naive(space: &QuadraticSpace<Q>, d: &MumfordDivisor<Q>) -> Result<ExactHeightComparison> {
    Ok(ExactHeightComparison {
        dagger_max: primitive_max(&dagger_vector(d)),
        naive_max: primitive_max(psi_embed(space, d)?.coords()),
    })
}

fn to_complex(q: &Q) -> Complex64 {
    Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn eval_complex(p: &Poly<Q>, z: Complex64) -> Complex64 {
    p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + to_complex(c))
}

/// The reduction height
/// `h̃(P) = ½ h^∞(1 : u_1 : ... : u_m) + ½ log Σ_i |U(ω_i)| / |f'(ω_i)|`,
/// where `h^∞` is the non-archimedean part of the Weil height (the log of
/// the common denominator of the `u_i`).  Only defined for `gcd(U, f) = 1`.
pub fn reduction_height(curve: &HyperellipticCurve<Q>, d: &MumfordDivisor<Q>) -> Result<f64> {
    let f = curve.f();
    if d.u().gcd(f).degree() != Some(0) {
        return Err(Error::ReductionHeightUndefined);
    }
    let den = dagger_vector(d)
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let fp = f.derivative();
    let mut s = 0.0;
    for w in complex_roots(f)? {
        s += eval_complex(d.u(), w).norm() / eval_complex(&fp, w).norm();
    }
    if !s.is_finite() {
        return Err(Error::Precondition("coefficients of U too large for double precision".into()));
    }
    Ok(0.5 * bigint_ln(&den) + 0.5 * s.ln())
}

/// Estimate of the canonical height `ĥ(P) = ½ lim 4^{-n} h([2^n] P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalHeight {
    /// `½ 4^{-n} h([2^n] P)` at the last computed `n`.
    pub estimate: f64,
    /// The number `n` of doublings used (at most the requested `n_max`).
    pub iterations: usize,
    /// Bound `½ C 4^{-n} / 3` on the remaining tail, where `C` is the largest
    /// observed `|h([2]Q) - 4 h(Q)|` along the orbit.
    pub tail_bound: f64,
    /// `½ 4^{-k} h([2^k] P)` for `k = 0, ..., n`.
    pub partials: Vec<f64>,
}

/// Orbit points whose naive height exceeds this many nats are not doubled
/// further by [`canonical_height`]: the coefficients of the double would be
/// four times longer, and rational Cantor arithmetic on them is the dominant
/// cost (roughly a second per doubling at this size).
pub const HEIGHT_BUDGET: f64 = 5000.0;

/// Tate's limit truncated after `n_max` doublings (fewer if the orbit
/// exceeds [`HEIGHT_BUDGET`]), with an empirical tail bound.
pub fn canonical_height(space: &QuadraticSpace<Q>, d: &MumfordDivisor<Q>, n_max: usize) -> Result<CanonicalHeight> {
    canonical_height_with_budget(space, d, n_max, HEIGHT_BUDGET)
}

/// [`canonical_height`] with an explicit height budget: doubling stops at the
/// first `[2^n] P` with naive height above `budget`, and the estimate and
/// tail bound refer to that `n`.  If not even one doubling is affordable the
/// tail bound is infinite.
pub fn canonical_height_with_budget(
    space: &QuadraticSpace<Q>,
    d: &MumfordDivisor<Q>,
    n_max: usize,
    budget: f64,
) -> Result<CanonicalHeight> {
    let mut hs = Vec::with_capacity(n_max + 1);
    let mut cur = d.clone();
    for k in 0..=n_max {
        let h = naive_height(space, &cur)?;
        hs.push(h);
        if k == n_max || h > budget {
            break;
        }
        cur = cur.double();
    }
    let n = hs.len() - 1;
    let tail_bound = if n == 0 {
        f64::INFINITY
    } else {
        let c = hs.windows(2).map(|w| (w[1] - 4.0 * w[0]).abs()).fold(0.0, f64::max);
        0.5 * c / 4f64.powi(n as i32) / 3.0
    };
    let partials: Vec<f64> = hs
        .iter()
        .enumerate()
        .map(|(k, h)| 0.5 * h / 4f64.powi(k as i32))
        .collect();
    Ok(CanonicalHeight {
        estimate: *partials.last().expect("at least one term"),
        iterations: n,
        tail_bound,
        partials,
    })
}

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    /// The `p`-adic place.
    Finite(u64),
    /// The real place.
    Infinite,
}

/// The primitive integer lift of `Ψ(P)` and its image `δ(x)`.
fn lift_and_double(space: &QuadraticSpace<Q>, delta: &DuplicationPolys<Q>, d: &MumfordDivisor<Q>) -> Result<(Vec<Q>, Vec<Q>)> {
    let g = space.genus();
    let x: Vec<Q> = primitive_integer_vector(psi_embed(space, d)?.coords())
        .into_iter()
        .map(Q::from_integer)
        .collect();
    let w = delta
        .apply(&SpinVector::new(g, x.clone())?)
        .into_coords();
    if w.iter().all(|c| c.is_zero()) {
        return Err(Error::Internal("δ vanishes on a Kummer point".into()));
    }
    Ok((x, w))
}

/// The content `c` of `δ(x)` for the primitive integral lift `x` of `Ψ(P)`:
/// `δ(x) = c · w` with `w` primitive integral.  At every finite place
/// `ε_p(P) = log |c|_p`.
pub fn epsilon_content(space: &QuadraticSpace<Q>, delta: &DuplicationPolys<Q>, d: &MumfordDivisor<Q>) -> Result<Q> {
    let (_, w) = lift_and_double(space, delta, d)?;
    let prim = primitive_integer_vector(&w);
    let k = w.iter().position(|c| !c.is_zero()).expect("nonzero vector");
    Ok(w[k].clone() / Q::from_integer(prim[k].clone()))
}

/// `ε_v(P) = h_v(δ(x)) - 4 h_v(x)` for a lift `x` of `Ψ(P)`.
pub fn local_epsilon(
    space: &QuadraticSpace<Q>,
    delta: &DuplicationPolys<Q>,
    d: &MumfordDivisor<Q>,
    place: Place,
) -> Result<f64> {
    match place {
        Place::Finite(p) => {
            let c = epsilon_content(space, delta, d)?;
            Ok(-(ord_p(&c, p) as f64) * (p as f64).ln())
        }
        Place::Infinite => {
            let (x, w) = lift_and_double(space, delta, d)?;
            let lmax = |v: &[Q]| {
                v.iter()
                    .filter(|c| !c.is_zero())
                    .map(rational_ln_abs)
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            Ok(lmax(&w) - 4.0 * lmax(&x))
        }
    }
}

/// `log |2^{4g} Δ|_p`, the lower bound for `ε_p`.
pub fn epsilon_lower_bound(curve: &HyperellipticCurve<Q>, p: u64) -> f64 {
    let g = curve.genus() as u32;
    let v = ord_p(curve.discriminant(), p) + if p == 2 { 4 * g as i64 } else { 0 };
    -(v as f64) * (p as f64).ln()
}

/// A truncation of `μ_v(P) = Σ_n 4^{-(n+1)} ε_v([2^n] P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuPartial {
    /// The partial sum over the computed terms.
    pub value: f64,
    /// `ε_v([2^n] P)` for the computed `n`.
    pub terms: Vec<f64>,
    /// `sup |ε_v| · 4^{-N} / 3` over the observed terms.
    pub tail_bound: f64,
}

/// `μ_v(P)` truncated after `n_terms` terms.
pub fn mu_partial(
    space: &QuadraticSpace<Q>,
    delta: &DuplicationPolys<Q>,
    d: &MumfordDivisor<Q>,
    place: Place,
    n_terms: usize,
) -> Result<MuPartial> {
    let mut terms = Vec::with_capacity(n_terms);
    let mut cur = d.clone();
    for k in 0..n_terms {
        terms.push(local_epsilon(space, delta, &cur, place)?);
        if k + 1 < n_terms {
            cur = cur.double();
        }
    }
    let value = terms
        .iter()
        .enumerate()
        .map(|(k, e)| e / 4f64.powi(k as i32 + 1))
        .sum();
    let sup = terms.iter().map(|e| e.abs()).fold(0.0, f64::max);
    Ok(MuPartial {
        value,
        tail_bound: sup / 4f64.powi(n_terms as i32) / 3.0,
        terms,
    })
}

/// Prime factorization of `|n|` by trial division up to `bound`; `None` if a
/// cofactor remains that cannot be certified prime (it exceeds `bound²`).
pub fn factor_with_bound(n: &BigInt, bound: u64) -> Option<Vec<(u64, u32)>> {
    assert!(!n.is_zero(), "factoring zero");
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= bound && n > BigInt::one() {
        let pb = BigInt::from(p);
        if pb.clone() * &pb > n {
            break;
        }
        let mut e = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let b = BigInt::from(bound);
        if n > b.clone() * &b {
            return None;
        }
        out.push((n.to_u64()?, 1));
    }
    Some(out)
}

/// The primes dividing `2Δ` for a curve with integral `f`.
pub fn bad_primes(curve: &HyperellipticCurve<Q>) -> Result<Vec<u64>> {
    if curve.f().coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::Precondition("bad primes need an integral model".into()));
    }
    let two_disc = curve.discriminant().numer() * BigInt::from(2);
    let fac = factor_with_bound(&two_disc, TRIAL_DIVISION_BOUND)
        .ok_or_else(|| Error::BudgetExceeded("discriminant has a large cofactor".into()))?;
    Ok(fac.into_iter().map(|(p, _)| p).collect())
}

/// Whether every prime in the numerator or denominator of `c` divides `m`.
pub fn supported_on_divisors_of(c: &Q, m: &BigInt) -> bool {
    fn strip(mut n: BigInt, m: &BigInt) -> BigInt {
        loop {
            let g = n.gcd(m);
            if g.is_one() {
                return n.abs();
            }
            n /= g;
        }
    }
    strip(c.numer().clone(), m).is_one() && strip(c.denom().clone(), m).is_one()
}

/// All heights of one point.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightReport {
    /// `h†(P)`.
    pub dagger: f64,
    /// `h(P)`.
    pub naive: f64,
    /// `h̃(P)`, absent when `gcd(U, f) ≠ 1`.
    pub reduction: Option<f64>,
    /// `ĥ(P)` with its tail bound.
    pub canonical: CanonicalHeight,
    /// The exact integer-stage comparison behind `h† ≤ h`.
    pub comparison: ExactHeightComparison,
}

/// Computes every height of `d` (canonical height with `n_max` doublings).
pub fn height_report(curve: &HyperellipticCurve<Q>, d: &MumfordDivisor<Q>, n_max: usize) -> Result<HeightReport> {
    let space = QuadraticSpace::new(curve);
    let reduction = match reduction_height(curve, d) {
        Ok(h) => Some(h),
        Err(Error::ReductionHeightUndefined) => None,
        Err(e) => return Err(e),
    };
    Ok(HeightReport {
        dagger: dagger_height(d),
        naive: naive_height(&space, d)?,
        reduction,
        canonical: canonical_height(&space, d, n_max)?,
        comparison: compare_dagger_naive(&space, d)?,
    })
}

/// Largest allowed `Ht(f)` for generated test curves.
pub const MAX_CURVE_HEIGHT: f64 = 20.0;

fn random_poly<R: Rng + ?Sized>(deg: usize, monic: bool, bound: i64, rng: &mut R) -> Poly<Q> {
    let mut c: Vec<Q> = (0..=deg).map(|_| Q::from_integer(rng.gen_range(-bound..=bound).into())).collect();
    if monic {
        c[deg] = Q::one();
    }
    Poly::new(c)
}

/// A random integral curve of genus `g` together with a rational divisor of
/// Mumford degree `g` on it, built as `f = U V + R^2` from random `U`, `V`,
/// `R` with coefficients in `[-bound, bound]`; `Ht(f) ≤ 20` and `Δ ≠ 0`.
pub fn random_curve_with_divisor<R: Rng + ?Sized>(
    g: usize,
    bound: i64,
    rng: &mut R,
) -> (HyperellipticCurve<Q>, MumfordDivisor<Q>) {
    loop {
        let u = random_poly(g, true, bound, rng);
        let v = random_poly(g + 1, true, bound, rng);
        let r = if g > 1 { random_poly(g - 1, false, bound, rng) } else { Poly::constant(Q::from_integer(rng.gen_range(-bound..=bound).into())) };
        let f = &(&u * &v) + &(&r * &r);
        if poly_height(&f) > MAX_CURVE_HEIGHT {
            continue;
        }
        let Ok(curve) = HyperellipticCurve::from_poly(f) else {
            continue;
        };
        if let Ok(d) = MumfordDivisor::new(&curve, u, v, r) {
            return (curve, d);
        }
    }
}

/// The curve `y^2 = Π (x - e_i)` for distinct integers `e_i`.
pub fn split_curve(roots: &[i64]) -> Result<HyperellipticCurve<Q>> {
    let f = roots.iter().fold(Poly::constant(Q::one()), |acc, &e| {
        &acc * &Poly::new(vec![Q::from_integer((-e).into()), Q::one()])
    });
    HyperellipticCurve::from_poly(f)
}

/// Affine points with integral `x` in `[-bound, bound]` (both signs of `y`).
pub fn integral_x_points(curve: &HyperellipticCurve<Q>, bound: i64) -> Vec<(Q, Q)> {
    use crate::field::Field;
    let mut out = Vec::new();
    for x in -bound..=bound {
        let a = Q::from_integer(x.into());
        let y2 = curve.f().eval(&a);
        if let Some(b) = y2.sqrt() {
            if !Zero::is_zero(&b) {
                out.push((a.clone(), -b.clone()));
            }
            out.push((a, b));
        }
    }
    out
}

/// The sum of `g` points drawn from `points`.
pub fn random_divisor_from_points<R: Rng + ?Sized>(
    curve: &HyperellipticCurve<Q>,
    points: &[(Q, Q)],
    rng: &mut R,
) -> Result<MumfordDivisor<Q>> {
    if points.is_empty() {
        return Err(Error::Precondition("no points to sample from".into()));
    }
    let mut acc = MumfordDivisor::identity(curve);
    for _ in 0..curve.genus() {
        let (a, b) = &points[rng.gen_range(0..points.len())];
        acc = acc.add(&MumfordDivisor::from_point(curve, a, b)?);
    }
    Ok(acc)
}
