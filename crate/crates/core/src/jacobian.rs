//! Points of the Jacobian in Mumford representation and Cantor's group law.
//!
//! A point is a triple `(U, V, R)` with `U` monic of degree `m <= g`, `V`
//! monic of degree `2g + 1 - m`, `deg R < m` and `f - R^2 = U V`.  The group
//! law is Cantor's composition-and-reduction algorithm for `y^2 = f(x)`; it
//! shares no code with the spinor side and serves as its oracle.

use rand::Rng;

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::poly::Poly;

/// A reduced divisor class `[D - m P_∞]` on the Jacobian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor<F: Field> {
    curve: HyperellipticCurve<F>,
    u: Poly<F>,
    v: Poly<F>,
    r: Poly<F>,
}

impl<F: Field> MumfordDivisor<F> {
    /// Validates a Mumford triple.
    pub fn new(curve: &HyperellipticCurve<F>, u: Poly<F>, v: Poly<F>, r: Poly<F>) -> Result<Self> {
        let g = curve.genus();
        let m = u
            .degree()
            .ok_or_else(|| Error::InvalidMumford("U is zero".into()))?;
        if m > g {
            return Err(Error::InvalidMumford(format!("deg U = {m} exceeds the genus {g}")));
        }
        if !u.is_monic() || !v.is_monic() {
            return Err(Error::InvalidMumford("U and V must be monic".into()));
        }
        if v.degree() != Some(2 * g + 1 - m) {
            return Err(Error::InvalidMumford("deg U + deg V must equal 2g + 1".into()));
        }
        if r.deg_i() >= m as i64 {
            return Err(Error::InvalidMumford("deg R must be below deg U".into()));
        }
        if &(curve.f() - &(&r * &r)) != &(&u * &v) {
            return Err(Error::InvalidMumford("f - R^2 != U V".into()));
        }
        Ok(MumfordDivisor {
            curve: curve.clone(),
            u,
            v,
            r,
        })
    }

    /// Builds the divisor from `U` and `R`, computing `V = (f - R^2)/U`.
    pub fn from_u_r(curve: &HyperellipticCurve<F>, u: Poly<F>, r: Poly<F>) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidMumford("U is zero".into()));
        }
        let v = (curve.f() - &(&r * &r))
            .exact_div(&u)
            .ok_or_else(|| Error::InvalidMumford("U does not divide f - R^2".into()))?;
        Self::new(curve, u, v, r)
    }

    /// The identity `(1, f, 0)`.
    pub fn identity(curve: &HyperellipticCurve<F>) -> Self {
        MumfordDivisor {
            curve: curve.clone(),
            u: Poly::constant(curve.one()),
            v: curve.f().clone(),
            r: Poly::zero(),
        }
    }

    /// The class `[(α, β) - P_∞]` of an affine point.
    pub fn from_point(curve: &HyperellipticCurve<F>, alpha: &F, beta: &F) -> Result<Self> {
        let one = curve.one();
        let u = Poly::new(vec![-alpha.clone(), one]);
        Self::from_u_r(curve, u, Poly::constant(beta.clone()))
    }

    /// The curve.
    pub fn curve(&self) -> &HyperellipticCurve<F> {
        &self.curve
    }

    /// `U`.
    pub fn u(&self) -> &Poly<F> {
        &self.u
    }

    /// `V`.
    pub fn v(&self) -> &Poly<F> {
        &self.v
    }

    /// `R`.
    pub fn r(&self) -> &Poly<F> {
        &self.r
    }

    /// The Mumford degree `m = deg U`.
    pub fn degree(&self) -> usize {
        self.u.degree().unwrap()
    }

    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.degree() == 0
    }

    /// `-D = (U, V, -R)`.
    pub fn negate(&self) -> Self {
        MumfordDivisor {
            curve: self.curve.clone(),
            u: self.u.clone(),
            v: self.v.clone(),
            r: -&self.r,
        }
    }

    fn assert_same_curve(&self, o: &Self) {
        assert!(self.curve == o.curve, "divisors on different curves");
    }

    /// Reduces a semi-reduced pair `(U, R)` with `U | f - R^2`.
    fn reduce(curve: &HyperellipticCurve<F>, mut u: Poly<F>, mut r: Poly<F>) -> Self {
        let g = curve.genus();
        let f = curve.f();
        r = r.rem(&u);
        while u.degree().unwrap() > g {
            let u2 = (f - &(&r * &r))
                .exact_div(&u)
                .expect("Cantor reduction: U divides f - R^2");
            let u2 = u2.monic();
            r = (-&r).rem(&u2);
            u = u2;
        }
        let v = (f - &(&r * &r)).exact_div(&u).expect("Cantor reduction: final V");
        MumfordDivisor {
            curve: curve.clone(),
            u,
            v,
            r,
        }
    }

    /// The group law.
    pub fn add(&self, o: &Self) -> Self {
        self.assert_same_curve(o);
        let (u1, r1, u2, r2) = (&self.u, &self.r, &o.u, &o.r);
        let (d1, e1, e2) = u1.ext_gcd(u2);
        let rsum = r1 + r2;
        let (d, c1, c2) = if rsum.is_zero() {
            (d1.clone(), Poly::constant(self.curve.one()), Poly::zero())
        } else {
            d1.ext_gcd(&rsum)
        };
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let s3 = c2;
        let dd = &d * &d;
        let u = (u1 * u2).exact_div(&dd).expect("Cantor composition: d^2 | U1 U2");
        let num = &(&(&s1 * &(u1 * r2)) + &(&s2 * &(u2 * r1))) + &(&s3 * &(&(r1 * r2) + self.curve.f()));
        let r = num.exact_div(&d).expect("Cantor composition: d | numerator");
        let r = r.rem(&u);
        Self::reduce(&self.curve, u, r)
    }

    /// `2D`.
    pub fn double(&self) -> Self {
        self.add(self)
    }

    /// `[k] D` for any integer `k`.
    pub fn mul(&self, k: i64) -> Self {
        let base = if k < 0 { self.negate() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(&self.curve);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.add(&b);
            }
            b = b.double();
            e >>= 1;
        }
        acc
    }

    /// `D1 - D2`.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.negate())
    }

    /// Maps coefficients along a field embedding.
    pub fn base_change<G: Field>(&self, phi: impl Fn(&F) -> G) -> MumfordDivisor<G> {
        MumfordDivisor {
            curve: self.curve.base_change(&phi),
            u: self.u.map(&phi),
            v: self.v.map(&phi),
            r: self.r.map(&phi),
        }
    }
}

/// Subset of root indices (bit `i` for the root `roots[i]`) replaced by the
/// complement when larger than `g`, so that `|I| <= g`.
pub fn canonical_two_torsion_subset(g: usize, mask: u32) -> u32 {
    let all = (1u32 << (2 * g + 1)) - 1;
    let mask = mask & all;
    if mask.count_ones() as usize > g {
        all ^ mask
    } else {
        mask
    }
}

/// `U_I = Π_{i∈I} (x - ω_i)`.
pub fn subset_poly<F: Field>(roots: &[F], mask: u32, one: &F) -> Poly<F> {
    let mut u = Poly::constant(one.one_like());
    for (i, w) in roots.iter().enumerate() {
        if mask >> i & 1 == 1 {
            u = &u * &Poly::new(vec![-w.clone(), one.one_like()]);
        }
    }
    u
}

/// The two-torsion class `[D_I]`, `D_I = Σ_{i∈I} (ω_i, 0) - |I| P_∞`,
/// canonicalized to `|I| <= g`.
pub fn two_torsion_divisor<F: Field>(
    curve: &HyperellipticCurve<F>,
    roots: &[F],
    mask: u32,
) -> MumfordDivisor<F> {
    let g = curve.genus();
    assert_eq!(roots.len(), 2 * g + 1, "need all 2g + 1 roots");
    let m = canonical_two_torsion_subset(g, mask);
    let u = subset_poly(roots, m, &curve.one());
    MumfordDivisor::from_u_r(curve, u, Poly::zero()).expect("roots of f give a valid divisor")
}

/// A random affine point `(α, β)` on the curve, by rejection sampling of `α`.
pub fn random_affine_point<F: Field, R: Rng + ?Sized>(
    curve: &HyperellipticCurve<F>,
    rng: &mut R,
) -> (F, F) {
    let one = curve.one();
    loop {
        let a = one.random_like(rng);
        if let Some(b) = curve.f().eval(&a).sqrt() {
            let b = if rng.gen::<bool>() { -b } else { b };
            return (a, b);
        }
    }
}

/// A random divisor class, the sum of `g` random affine points (finite fields).
pub fn random_divisor<F: Field, R: Rng + ?Sized>(
    curve: &HyperellipticCurve<F>,
    rng: &mut R,
) -> MumfordDivisor<F> {
    let mut acc = MumfordDivisor::identity(curve);
    for _ in 0..curve.genus() {
        let (a, b) = random_affine_point(curve, rng);
        acc = acc.add(&MumfordDivisor::from_point(curve, &a, &b).unwrap());
    }
    acc
}

/// Largest `p^{2g}` accepted by [`enumerate_points`].
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

fn all_polys(p: u64, deg_bound: usize, monic_degree: Option<usize>) -> Vec<Poly<Fp>> {
    // monic of the given degree, or all polys of degree < deg_bound
    let n = monic_degree.unwrap_or(deg_bound);
    let count = p.pow(n as u32);
    (0..count)
        .map(|mut k| {
            let mut c = Vec::with_capacity(n + 1);
            for _ in 0..n {
                c.push(Fp::new((k % p) as i64, p));
                k /= p;
            }
            if monic_degree.is_some() {
                c.push(Fp::new(1, p));
            }
            Poly::new(c)
        })
        .collect()
}

/// Every point of `J(F_p)`, by exhaustive search over `(U, R)`.
pub fn enumerate_points(curve: &HyperellipticCurve<Fp>) -> Result<Vec<MumfordDivisor<Fp>>> {
    let g = curve.genus();
    let p = curve.one().modulus();
    let work = (p as f64).powi(2 * g as i32);
    if work > ENUMERATION_BUDGET as f64 {
        return Err(Error::BudgetExceeded(format!(
            "p^(2g) = {work} exceeds the enumeration budget {ENUMERATION_BUDGET}"
        )));
    }
    let mut out = Vec::new();
    for m in 0..=g {
        let rs = all_polys(p, m, None);
        for u in all_polys(p, m, Some(m)) {
            for r in &rs {
                let t = curve.f() - &(r * r);
                if let Ok((v, rem)) = t.divmod(&u) {
                    if rem.is_zero() {
                        out.push(MumfordDivisor::new(curve, u.clone(), v, r.clone())?);
                    }
                }
            }
        }
    }
    Ok(out)
}
