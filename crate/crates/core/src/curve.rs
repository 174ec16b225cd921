//! Odd-degree hyperelliptic curves `y^2 = f(x)`, `f` monic of degree `2g + 1`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// The curve `y^2 = x^{2g+1} + c_1 x^{2g} + ... + c_{2g+1}` with nonzero
/// discriminant over a field of characteristic different from two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve<F: Field> {
    g: usize,
    f: Poly<F>,
    disc: F,
}

impl<F: Field> HyperellipticCurve<F> {
    /// Builds the curve from `c_1, ..., c_{2g+1}` (`one` fixes the field).
    pub fn from_coeffs(c: &[F], one: &F) -> Result<Self> {
        if c.len() < 3 || c.len() % 2 == 0 {
            return Err(Error::InvalidCurve(format!(
                "expected 2g+1 >= 3 coefficients, got {}",
                c.len()
            )));
        }
        let n = c.len();
        let mut asc = vec![one.zero_like(); n + 1];
        asc[n] = one.one_like();
        for (i, ci) in c.iter().enumerate() {
            asc[n - 1 - i] = ci.clone();
        }
        Self::from_poly(Poly::new(asc))
    }

    /// Builds the curve from `f`, which must be monic of odd degree `>= 3`.
    pub fn from_poly(f: Poly<F>) -> Result<Self> {
        let curve = Self::unchecked(f)?;
        if curve.disc.is_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        Ok(curve)
    }

    /// Shape checks only; the discriminant is computed but not required to
    /// be nonzero.  Used by formula-level unit tests of degenerate models.
    pub(crate) fn unchecked(f: Poly<F>) -> Result<Self> {
        let n = f
            .degree()
            .ok_or_else(|| Error::InvalidCurve("zero polynomial".into()))?;
        if n < 3 || n % 2 == 0 {
            return Err(Error::InvalidCurve(format!(
                "degree {n} is not odd and at least 3"
            )));
        }
        if !f.is_monic() {
            return Err(Error::InvalidCurve("f must be monic".into()));
        }
        if f.lead().unwrap().characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let disc = f.discriminant().unwrap();
        Ok(HyperellipticCurve {
            g: (n - 1) / 2,
            f,
            disc,
        })
    }

    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// The defining polynomial `f`.
    pub fn f(&self) -> &Poly<F> {
        &self.f
    }

    /// The coefficient `c_i` of `x^{2g+1-i}` (`c_0 = 1`).
    pub fn c(&self, i: usize) -> F {
        let n = 2 * self.g + 1;
        self.f.coeffs()[n - i].clone()
    }

    /// The discriminant of `f`.
    pub fn discriminant(&self) -> &F {
        &self.disc
    }

    /// The element one of the base field.
    pub fn one(&self) -> F {
        self.f.lead().unwrap().one_like()
    }

    /// The element zero of the base field.
    pub fn zero(&self) -> F {
        self.f.lead().unwrap().zero_like()
    }

    /// Base change along a field embedding.
    pub fn base_change<G: Field>(&self, phi: impl Fn(&F) -> G) -> HyperellipticCurve<G> {
        HyperellipticCurve {
            g: self.g,
            f: self.f.map(&phi),
            disc: phi(&self.disc),
        }
    }
}
