//! Sparse multivariate polynomials, used for symbolic quartics and the
//! duplication forms.
//!
//! Monomials are exponent vectors; terms are listed in graded reverse
//! lexicographic order with `x_1 > x_2 > ...` (largest first).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;

/// Graded reverse lexicographic comparison of exponent vectors.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // the smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// A polynomial in `nvars` variables over `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F>,
    zero: F,
}

impl<F: Field> MPoly<F> {
    /// The zero polynomial.
    pub fn zero(nvars: usize, zero: &F) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
            zero: zero.zero_like(),
        }
    }

    /// A constant.
    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars, &c);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i` (zero-based index).
    pub fn var(nvars: usize, i: usize, one: &F) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, one.one_like())
    }

    /// `c · x^e`.
    pub fn monomial(e: Vec<u32>, c: F) -> Self {
        let mut p = Self::zero(e.len(), &c);
        p.add_term(e, c);
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds `c · x^e` in place.
    pub fn add_term(&mut self, e: Vec<u32>, c: F) {
        assert_eq!(e.len(), self.nvars, "exponent vector of the wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Whether the polynomial is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^e` (zero if absent).
    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order (unspecified but deterministic).
    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &F)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Terms in decreasing graded reverse lexicographic order.
    pub fn terms_grevlex(&self) -> Vec<(&[u32], &F)> {
        let mut v: Vec<(&[u32], &F)> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| grevlex_cmp(b.0, a.0));
        v
    }

    /// Total degree (`None` for zero).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Whether every term has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c);
        }
        out
    }

    /// Evaluates at a point.
    pub fn eval(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.nvars, "evaluation point of the wrong length");
        let mut acc = self.zero.clone();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t * xi.pow(k as u64);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes polynomials for variables.
    pub fn compose(&self, subs: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(subs.len(), self.nvars, "wrong number of substitutions");
        let n = subs[0].nvars;
        let mut acc = MPoly::zero(n, &self.zero);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(n, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                for _ in 0..k {
                    t = &t * s;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Homogenizes to degree `d` using variable `var`.
    pub fn homogenize(&self, var: usize, d: u32) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e, c) in &self.terms {
            let deg: u32 = e.iter().sum();
            assert!(deg <= d, "cannot homogenize a term of degree {deg} to degree {d}");
            let mut e2 = e.clone();
            e2[var] += d - deg;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Keeps only the terms satisfying a predicate on exponents.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e, c) in &self.terms {
            if keep(e) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Applies `phi` to every coefficient.
    pub fn map<G: Field>(&self, zero: &G, phi: impl Fn(&F) -> G) -> MPoly<G> {
        let mut out = MPoly::zero(self.nvars, zero);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), phi(c));
        }
        out
    }
}

impl<'a, F: Field> std::ops::Add for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, o: &'a MPoly<F>) -> MPoly<F> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, F: Field> std::ops::Sub for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: &'a MPoly<F>) -> MPoly<F> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, F: Field> std::ops::Mul for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, o: &'a MPoly<F>) -> MPoly<F> {
        let mut out = MPoly::zero(self.nvars, &self.zero);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb);
            }
        }
        out
    }
}

impl<F: Field> std::ops::Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        self.scale(&(-self.zero.one_like()))
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms_grevlex().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, p)?,
                }
            }
        }
        Ok(())
    }
}
