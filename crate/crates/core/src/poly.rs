//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree order.  The representation is
//! canonical: the coefficient vector is empty for the zero polynomial and
//! otherwise its last entry is nonzero.  The degree of the zero polynomial is
//! the sentinel `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial in one indeterminate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    /// Builds a polynomial from ascending coefficients, trimming zeros.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c x^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let mut v = vec![c.zero_like(); n + 1];
        v[n] = c;
        Poly::new(v)
    }

    /// The polynomial `x` over the field of `one`.
    pub fn x(one: &F) -> Self {
        Poly::monomial(one.one_like(), 1)
    }

    /// Ascending coefficients (empty for zero).
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Consumes the polynomial, returning its ascending coefficients.
    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with `-1` for the zero polynomial.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, `None` for zero.
    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Whether the polynomial is monic.
    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    /// Coefficient of `x^i` (`None` above the degree).
    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    /// Coefficient of `x^i`, with `zero` returned above the degree.
    pub fn coeff_or(&self, i: usize, zero: &F) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| zero.clone())
    }

    /// Some element of the coefficient field, if the polynomial is nonzero.
    pub fn sample(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; n];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Evaluates at `x` by Horner's rule.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * c.from_i64_like(i as i64))
                .collect(),
        )
    }

    /// The monic associate (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => {
                let li = l.inv().expect("nonzero leading coefficient");
                self.scale(&li)
            }
        }
    }

    /// Euclidean division by a monic polynomial: `self = q b + r`, `deg r < deg b`.
    ///
    /// Monicity keeps the division denominator-free; non-monic or zero
    /// divisors are rejected.
    pub fn divmod(&self, b: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
        if !b.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        Ok(self.divmod_field(b))
    }

    /// Euclidean division by any nonzero polynomial over the field.
    ///
    /// # Panics
    /// Panics if `b` is zero.
    pub fn divmod_field(&self, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let db = b.degree().expect("division by the zero polynomial");
        let Some(da) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if da < db {
            return (Poly::zero(), self.clone());
        }
        let lb = b.lead().unwrap();
        let lb_inv = if lb.is_one() { None } else { lb.inv() };
        let mut r = self.coeffs.clone();
        let zero = lb.zero_like();
        let mut q = vec![zero; da - db + 1];
        for k in (0..=da - db).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let c = match &lb_inv {
                Some(i) => top * i,
                None => top,
            };
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] = r[k + j].clone() - c.clone() * bj;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (Poly::new(q), Poly::new(r))
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, b: &Poly<F>) -> Poly<F> {
        self.divmod_field(b).1
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn exact_div(&self, b: &Poly<F>) -> Option<Poly<F>> {
        let (q, r) = self.divmod_field(b);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, b: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(d, s, t)` with `d = s a + t b`, `d` monic.
    pub fn ext_gcd(&self, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let one = self
            .sample()
            .or(b.sample())
            .map(|c| Poly::constant(c.one_like()));
        let Some(one) = one else {
            return (Poly::zero(), Poly::zero(), Poly::zero());
        };
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divmod_field(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if let Some(l) = r0.lead() {
            let li = l.inv().unwrap();
            (r0.scale(&li), s0.scale(&li), t0.scale(&li))
        } else {
            (r0, s0, t0)
        }
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, mut e: u64, m: &Poly<F>) -> Poly<F> {
        let Some(s) = m.sample() else {
            panic!("modulus must be nonzero");
        };
        let mut acc = Poly::constant(s.one_like()).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// `self^e`.
    pub fn pow(&self, e: u32) -> Poly<F> {
        let Some(s) = self.sample() else {
            return if e == 0 { panic!("0^0 of the zero polynomial") } else { Poly::zero() };
        };
        let mut acc = Poly::constant(s.one_like());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Resultant `Res(self, b)` via the Euclidean algorithm.
    ///
    /// Uses `Res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r)`
    /// for `r = a mod b`.
    pub fn resultant(&self, b: &Poly<F>) -> Option<F> {
        let (mut a, mut b) = (self.clone(), b.clone());
        let s = a.sample().or(b.sample())?.clone();
        if a.is_zero() || b.is_zero() {
            return Some(s.zero_like());
        }
        let mut acc = s.one_like();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                return Some(acc * b.coeffs[0].pow(da as u64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Some(s.zero_like());
            }
            let dr = r.degree().unwrap();
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = acc * b.lead().unwrap().pow((da - dr) as u64);
            a = b;
            b = r;
        }
    }

    /// Discriminant of a monic polynomial: `(-1)^{n(n-1)/2} Res(f, f')`.
    pub fn discriminant(&self) -> Option<F> {
        let n = self.degree()?;
        let r = self.resultant(&self.derivative())?;
        let r = r / self.lead().unwrap().clone();
        Some(if (n * (n.saturating_sub(1)) / 2) % 2 == 1 { -r } else { r })
    }

    /// Applies `phi` to every coefficient.
    pub fn map<G: Field>(&self, phi: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(phi).collect())
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &'a Poly<F>) -> Poly<F> {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(short.coeffs.iter()) {
            *a = a.clone() + b;
        }
        Poly::new(v)
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &'a Poly<F>) -> Poly<F> {
        self + &(-o)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &'a Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b;
            }
        }
        Poly::new(v)
    }
}

macro_rules! owned_poly_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: Poly<F>) -> Poly<F> {
                (&self).$m(&o)
            }
        }
    };
}
owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if c.is_one() && i > 0 {
                String::new()
            } else if i > 0 {
                format!("({c})*")
            } else {
                format!("({c})")
            };
            match i {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}x")?,
                _ => write!(f, "{cs}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi, Fp, Q};

    fn fp(v: &[i64], p: u64) -> Poly<Fp> {
        Poly::new(v.iter().map(|&c| Fp::new(c, p)).collect())
    }

    fn qp(v: &[i64]) -> Poly<Q> {
        Poly::new(v.iter().map(|&c| qi(c)).collect())
    }

    #[test]
    fn divmod_exact_divisibility() {
        let (q0, r) = qp(&[0, 0, 0, 1]).divmod(&qp(&[0, 1])).unwrap();
        assert_eq!(q0, qp(&[0, 0, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_over_f5() {
        let (q0, r) = fp(&[2, 0, 0, 0, 1], 5).divmod(&fp(&[1, 0, 1], 5)).unwrap();
        assert_eq!(q0, fp(&[4, 0, 1], 5));
        assert_eq!(r, fp(&[3], 5));
    }

    #[test]
    fn divmod_spot_check_xv_by_quadratic() {
        // U = x^2 + x + 2, x V with V = x^3.
        let u = qp(&[2, 1, 1]);
        let xv = qp(&[0, 0, 0, 0, 1]);
        let (q0, r) = xv.divmod(&u).unwrap();
        assert_eq!(&(&q0 * &u) + &r, xv);
        assert!(r.deg_i() < 2);
    }

    #[test]
    fn divmod_rejects_non_monic() {
        assert_eq!(qp(&[1, 1]).divmod(&qp(&[1, 2])), Err(Error::NonMonicDivisor));
        assert_eq!(qp(&[1, 1]).divmod(&Poly::zero()), Err(Error::NonMonicDivisor));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::<Q>::zero().degree(), None);
        assert_eq!(qp(&[0, 0]).degree(), None);
        assert_eq!(qp(&[1]).degree(), Some(0));
    }

    #[test]
    fn resultant_and_discriminant() {
        // disc(x^3 + a x + b) = -4a^3 - 27b^2
        let f = qp(&[1, 1, 0, 1]);
        assert_eq!(f.discriminant().unwrap(), qi(-31));
        // Res(x - 2, x^2 + 1) = 5
        assert_eq!(qp(&[-2, 1]).resultant(&qp(&[1, 0, 1])).unwrap(), qi(5));
        // Res(x^2+1, x-2) with (-1)^{2} = 5
        assert_eq!(qp(&[1, 0, 1]).resultant(&qp(&[-2, 1])).unwrap(), qi(5));
        assert!(qp(&[0, 0, 0, 1]).discriminant().unwrap().is_zero());
    }

    #[test]
    fn ext_gcd_identity() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, 1]);
        let (d, s, t) = a.ext_gcd(&b);
        assert_eq!(d, qp(&[1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), d);
        let _ = q(1, 2);
    }
}
