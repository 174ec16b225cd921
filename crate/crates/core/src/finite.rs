//! Finite-field utilities: deterministic extension fields, factorization
//! degrees over `F_p`, and splitting fields of squarefree polynomials.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Fq, FqContext};
use crate::poly::Poly;

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(p^k) mod m` for `k = 0..=kmax`, as a list.
fn frobenius_powers_of_x(m: &Poly<Fp>, p: u64, kmax: usize) -> Vec<Poly<Fp>> {
    let one = m.lead().unwrap().one_like();
    let x = Poly::x(&one).rem(m);
    let mut out = vec![x.clone()];
    let mut cur = x;
    for _ in 0..kmax {
        cur = cur.powmod(p, m);
        out.push(cur.clone());
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
pub fn is_irreducible(m: &Poly<Fp>) -> bool {
    let Some(d) = m.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let p = m.lead().unwrap().modulus();
    let fr = frobenius_powers_of_x(m, p, d);
    let x = &fr[0];
    if &fr[d] != x {
        return false;
    }
    prime_factors(d).into_iter().all(|q| {
        let h = &fr[d / q] - x;
        h.gcd(m).degree() == Some(0)
    })
}

/// The lexicographically smallest monic irreducible polynomial of degree `d`
/// over `F_p`, ordering `x^d + a_{d-1} x^{d-1} + ... + a_0` by the tuple
/// `(a_{d-1}, ..., a_0)`.  Returns ascending coefficients.
pub fn smallest_irreducible(p: u64, d: usize) -> Result<Vec<u64>> {
    Fp::check_modulus(p)?;
    let total = (p as u128).pow(d as u32);
    for n in 0..total {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = n;
        for _ in 0..d {
            coeffs.push((k % p as u128) as u64);
            k /= p as u128;
        }
        coeffs.push(1);
        let poly = Poly::new(coeffs.iter().map(|&c| Fp::new(c as i64, p)).collect());
        if is_irreducible(&poly) {
            return Ok(coeffs);
        }
    }
    Err(Error::Internal(format!("no irreducible of degree {d} over F_{p}")))
}

/// The field `F_{p^d}` modelled with [`smallest_irreducible`].
pub fn extension_field(p: u64, d: usize) -> Result<Arc<FqContext>> {
    FqContext::from_modulus(p, smallest_irreducible(p, d)?)
}

/// Degrees of the irreducible factors of a squarefree polynomial over `F_p`
/// (distinct-degree factorization), sorted ascending with multiplicity.
pub fn factor_degrees(f: &Poly<Fp>) -> Result<Vec<usize>> {
    let n = f.degree().ok_or(Error::ZeroDiscriminant)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(Error::ZeroDiscriminant);
    }
    let p = f.lead().unwrap().modulus();
    let mut rest = f.monic();
    let one = f.lead().unwrap().one_like();
    let x = Poly::x(&one);
    let mut h = x.clone();
    let mut degs = Vec::new();
    let mut k = 0;
    while let Some(dr) = rest.degree() {
        if dr == 0 {
            break;
        }
        k += 1;
        if 2 * k > dr {
            degs.push(dr);
            break;
        }
        h = h.powmod(p, &rest);
        let g = (&h - &x).gcd(&rest);
        let dg = g.degree().unwrap();
        if dg > 0 {
            for _ in 0..dg / k {
                degs.push(k);
            }
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
        }
    }
    degs.sort_unstable();
    Ok(degs)
}

fn lcm(a: usize, b: usize) -> usize {
    a / num_integer::gcd(a, b) * b
}

/// Roots of a squarefree polynomial that splits completely over `F_q`,
/// found by equal-degree splitting with a fixed-seed random sequence.
pub fn roots_in_extension(f: &Poly<Fq>) -> Vec<Fq> {
    let Some(s) = f.sample() else { return Vec::new() };
    let q = s.context().order();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    let mut stack = vec![f.monic()];
    while let Some(g) = stack.pop() {
        match g.degree() {
            None | Some(0) => {}
            Some(1) => out.push(-g.coeffs()[0].clone()),
            Some(_) => loop {
                let a = s.random_like(&mut rng);
                let one = s.one_like();
                let lin = Poly::new(vec![a, one.clone()]);
                let h = &lin.powmod((q - 1) / 2, &g) - &Poly::constant(one);
                let d = h.gcd(&g);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    let e = g.exact_div(&d).expect("factor divides");
                    stack.push(d);
                    stack.push(e);
                    break;
                }
            },
        }
    }
    out
}

/// Splitting data of a squarefree `f` over `F_p`.
#[derive(Clone, Debug)]
pub struct SplittingData {
    /// Degree of the splitting field over `F_p`.
    pub d: usize,
    /// The splitting field `F_{p^d}`.
    pub field: Arc<FqContext>,
    /// The distinct roots, sorted by their coefficient tuples read from the
    /// top coefficient down (the base-`p` integer they encode).
    pub roots: Vec<Fq>,
}

/// Sort key of an `F_{p^d}` element: coefficients from `t^{d-1}` down to `1`.
pub fn fq_sort_key(a: &Fq) -> Vec<u64> {
    a.coeffs().iter().rev().copied().collect()
}

/// Splitting field and roots of a squarefree polynomial over `F_p`.
pub fn splitting_data(f: &Poly<Fp>) -> Result<SplittingData> {
    let degs = factor_degrees(f)?;
    let d = degs.iter().fold(1, |a, &b| lcm(a, b));
    let p = f.lead().ok_or(Error::ZeroDiscriminant)?.modulus();
    let field = extension_field(p, d)?;
    let fq = f.map(|c| field.from_fp(*c));
    let mut roots = roots_in_extension(&fq);
    if roots.len() != f.degree().unwrap() {
        return Err(Error::Internal("splitting field lacks roots".into()));
    }
    roots.sort_by_key(fq_sort_key);
    Ok(SplittingData { d, field, roots })
}
