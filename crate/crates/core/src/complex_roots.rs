//! Numerical complex roots of rational polynomials (Aberth–Ehrlich iteration
//! followed by Newton polishing), with a certified residual check.

use num_complex::Complex64;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Q;
use crate::poly::Poly;

/// Height `Ht(f) = max_i |c_i|^{1/i}` of a monic polynomial
/// `x^n + c_1 x^{n-1} + ... + c_n`.
pub fn poly_height(f: &Poly<Q>) -> f64 {
    let n = f.degree().unwrap_or(0);
    let mut h: f64 = 0.0;
    for i in 1..=n {
        let c = f.coeffs()[n - i].to_f64().unwrap_or(f64::INFINITY).abs();
        h = h.max(c.powf(1.0 / i as f64));
    }
    h
}

/// Default residual tolerance `1e-12 * max(1, Ht(f))^{deg f}`.
pub fn default_tolerance(f: &Poly<Q>) -> f64 {
    let n = f.degree().unwrap_or(0) as i32;
    1e-12 * poly_height(f).max(1.0).powi(n)
}

fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of a squarefree polynomial over the rationals, sorted by
/// `(re, im)`, each with residual `|f(z)|` below `tol` (see
/// [`default_tolerance`]).
pub fn complex_roots_with_tolerance(f: &Poly<Q>, tol: f64) -> Result<Vec<Complex64>> {
    let n = f
        .degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Precondition("complex_roots needs degree >= 1".into()))?;
    let lead = f.lead().unwrap().to_f64().unwrap();
    let c: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|a| Complex64::new(a.to_f64().unwrap() / lead, 0.0))
        .collect();
    // Cauchy bound on root moduli.
    let bound = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(bound * 0.5 + 0.1, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-17 {
            break;
        }
    }
    // Newton polishing.
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = eval_with_derivative(&c, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    let worst = z
        .iter()
        .map(|&zi| (eval_with_derivative(&c, zi).0 * lead).norm())
        .fold(0.0, f64::max);
    if !(worst <= tol) {
        return Err(Error::NoConvergence { residual: worst });
    }
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(z)
}

/// [`complex_roots_with_tolerance`] with the default tolerance.
pub fn complex_roots(f: &Poly<Q>) -> Result<Vec<Complex64>> {
    complex_roots_with_tolerance(f, default_tolerance(f))
}

/// The rational roots of a monic squarefree polynomial, if it splits
/// completely over the rationals, sorted increasingly.
///
/// With `D` the common denominator of the coefficients every rational root
/// lies in `D^{-1} Z`, so numerical roots are rounded there and then verified
/// exactly.
pub fn rational_roots(f: &Poly<Q>) -> Result<Option<Vec<Q>>> {
    if !f.is_monic() {
        return Err(Error::Precondition("rational_roots needs a monic polynomial".into()));
    }
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let d = Q::from_integer(den);
    let mut out = Vec::new();
    for z in complex_roots(f)? {
        if z.im.abs() > 1e-6 * (1.0 + z.norm()) {
            return Ok(None);
        }
        let scaled = Q::from_float(z.re).ok_or_else(|| Error::Internal("non-finite root".into()))? * &d;
        let cand = scaled.round() / &d;
        if !f.eval(&cand).is_zero() {
            return Ok(None);
        }
        out.push(cand);
    }
    out.sort();
    out.dedup();
    if out.len() != f.degree().unwrap_or(0) {
        return Ok(None);
    }
    Ok(Some(out))
}
