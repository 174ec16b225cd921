//! The Kummer map `Ψ: J → P(S)`, the membership and lifting test for points
//! of `P(S)`, and the quartic equation of the Kummer surface in genus two.
//!
//! A divisor `(U, V, R)` of Mumford degree `m` is sent to the maximal
//! isotropic subspace `L ⊂ V` spanned by `x^i U` (`0 <= i < g - m`) and
//! `-2 x^i V + a_i + q_i R` (`0 <= i < m`), where `x^i V = p_i U + a_i` and
//! `-2 x^i R = q_i U + b_i`; `Ψ(D)` is the pure spinor of `L`, normalized to
//! have coordinate one at `J = {2g, ..., 2g - m + 1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::jacobian::MumfordDivisor;
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::poly::Poly;
use crate::quadratic::QuadraticSpace;
use crate::spinor::{annihilator, frame_from_subspace, pure_spinor_from_frame, IsotropicFrame, SpinVector};

/// Mask of `J = {2g, ..., 2g - m + 1}`.
pub fn degree_subset_mask(g: usize, m: usize) -> u32 {
    ((1u32 << m) - 1) << (g - m)
}

/// Basis of the isotropic subspace `Ψ(D)` in straightened coordinates.
pub fn divisor_subspace<F: Field>(space: &QuadraticSpace<F>, d: &MumfordDivisor<F>) -> Vec<Vec<F>> {
    let g = space.genus();
    let m = d.degree();
    let one = space.one();
    let x = Poly::x(&one);
    let mut gens = Vec::with_capacity(g);
    let mut xi = Poly::constant(one.clone());
    for _ in 0..g - m {
        gens.push(space.poly_to_p(&(&xi * d.u())));
        xi = &xi * &x;
    }
    let mut xi = Poly::constant(one.clone());
    let minus_two = Poly::constant(one.from_i64_like(-2));
    for _ in 0..m {
        let xv = &xi * d.v();
        let (_, a) = xv.divmod(d.u()).expect("U is monic");
        let (q, _) = (&(&xi * d.r()) * &minus_two).divmod(d.u()).expect("U is monic");
        let gen = &(&(&xv * &minus_two) + &a) + &(&q * d.r());
        gens.push(space.poly_to_p(&gen));
        xi = &xi * &x;
    }
    gens
}

/// The normalized frame of `Ψ(D)` relative to `J = {2g, ..., 2g - m + 1}`.
pub fn mumford_to_frame<F: Field>(space: &QuadraticSpace<F>, d: &MumfordDivisor<F>) -> Result<IsotropicFrame<F>> {
    let g = space.genus();
    let basis = divisor_subspace(space, d);
    frame_from_subspace(space, &basis, degree_subset_mask(g, d.degree()))
        .map_err(|e| Error::Internal(format!("frame of a Mumford divisor: {e}")))
}

/// `Ψ(D)` with coordinate one at `J = {2g, ..., 2g - m + 1}`.
pub fn psi_embed<F: Field>(space: &QuadraticSpace<F>, d: &MumfordDivisor<F>) -> Result<SpinVector<F>> {
    Ok(pure_spinor_from_frame(space, &mumford_to_frame(space, d)?))
}

/// The primitive integer vector on the line of a nonzero rational vector,
/// scaled so that its first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for c in &ints {
        gcd = gcd.gcd(c);
    }
    if gcd.is_zero() {
        return ints;
    }
    let first_neg = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    if first_neg {
        gcd = -gcd;
    }
    ints.into_iter().map(|c| c / &gcd).collect()
}

/// Outcome of [`membership_and_lift`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KummerVerdict<F: Field> {
    /// The point is not in the image of the Kummer map.
    NotOnKummer,
    /// The point lies on the Kummer variety.
    OnKummer {
        /// Rank of the form `(a, b) ↦ ψ(a, x b)` on `L`, zero or one.
        rank: usize,
        /// For rank one, a nonzero diagonal entry `λ` of the Gram matrix,
        /// meaningful modulo squares.
        lambda: Option<F>,
        /// Whether the point is `Ψ` of a rational point of the Jacobian
        /// (rank zero, or `-λ` a square).
        lifts: bool,
    },
}

/// Gram matrix of `(a, b) ↦ ψ(a, x b)` on a list of vectors.
pub fn x_form_gram<F: Field>(space: &QuadraticSpace<F>, basis: &[Vec<F>]) -> Matrix<F> {
    let n = basis.len();
    let xs: Vec<Vec<F>> = basis.iter().map(|b| space.mul_x_p(b)).collect();
    let mut a = Matrix::zeros(n, n, &space.zero());
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = space.psi_p(&basis[i], &xs[j]);
        }
    }
    a
}

/// Decides whether `s` lies on the Kummer variety `K ⊂ P(S)` and whether it
/// lifts to a rational point of the Jacobian.
///
/// `L = {v : v·s = 0}` is recomputed from `s`; the point is on `K` when `L`
/// is maximal isotropic and `ψ(a, x b)` has rank at most one on `L`.  A
/// rank-one form is `λ v vᵗ`.  With the explicit subspaces of [`psi_embed`]
/// the image of a rational point `(α, β)` has `λ = -β²` up to squares, so the
/// point lifts iff `-λ` is a square.
pub fn membership_and_lift<F: Field>(space: &QuadraticSpace<F>, s: &SpinVector<F>) -> Result<KummerVerdict<F>> {
    if s.is_zero() {
        return Err(Error::Precondition("the zero vector is not a point of P(S)".into()));
    }
    let g = space.genus();
    let l = annihilator(space, s);
    if l.len() != g {
        return Ok(KummerVerdict::NotOnKummer);
    }
    for a in &l {
        for b in &l {
            if !space.psi_p(a, b).is_zero() {
                return Ok(KummerVerdict::NotOnKummer);
            }
        }
    }
    let a = x_form_gram(space, &l);
    let rank = a.rank();
    Ok(match rank {
        0 => KummerVerdict::OnKummer {
            rank,
            lambda: None,
            lifts: true,
        },
        1 => {
            let lambda = (0..g)
                .map(|i| a[(i, i)].clone())
                .find(|x| !x.is_zero())
                .ok_or_else(|| Error::Internal("rank-one symmetric form with zero diagonal".into()))?;
            let lifts = (-lambda.clone()).is_square();
            KummerVerdict::OnKummer {
                rank,
                lambda: Some(lambda),
                lifts,
            }
        }
        _ => KummerVerdict::NotOnKummer,
    })
}

/// Number of variables of [`kummer_quartic_g2_generic`]: `x_1..x_4, c_1..c_5`.
pub const QUARTIC_NVARS: usize = 9;

/// The genus-two Kummer quartic with symbolic coefficients.
///
/// Variables `0..4` are the spinor coordinates `x_1..x_4`, variables `4..9`
/// are `c_1..c_5`.  On the chart `x_1 = 1` the generic isotropic subspace
/// has `ξ_0 = -x_3`, `ξ_1 = x_2`, `ξ_01 = -x_4/2`, and is the column span of
/// `L` below; the Kummer is where `det(ᵗL T L) = 0`, `T` being the Gram
/// matrix of `ψ(a, x b)`.  The determinant is homogenized with `x_1` and
/// scaled so that the coefficient of `x_3^4` is one.
pub fn kummer_quartic_g2_generic<F: Field>(one: &F) -> MPoly<F> {
    let n = QUARTIC_NVARS;
    let var = |i: usize| MPoly::var(n, i, one);
    let cst = |c: F| MPoly::constant(n, c);
    let half = one.half();
    let zero = MPoly::zero(n, one);
    let c = |i: usize| var(3 + i); // c_i, 1 <= i <= 5
    let neg_half = -half.clone();
    let xi0 = -&var(2);
    let xi1 = var(1);
    let xi01 = var(3).scale(&neg_half);
    let xi0xi1 = &xi0 * &xi1;
    let l: [[MPoly<F>; 2]; 5] = [
        [&xi01 + &xi0xi1.scale(&neg_half), (&xi0 * &xi0).scale(&neg_half)],
        [(&xi1 * &xi1).scale(&neg_half), &(-&xi01) + &xi0xi1.scale(&neg_half)],
        [xi1.clone(), xi0.clone()],
        [cst(one.clone()), zero.clone()],
        [zero.clone(), cst(one.clone())],
    ];
    let z = || zero.clone();
    let u = || cst(one.clone());
    let t: [[MPoly<F>; 5]; 5] = [
        [z(), z(), z(), u(), z()],
        [z(), z(), u(), z(), z()],
        [z(), u(), -&c(1), c(2).scale(&neg_half), z()],
        [u(), z(), c(2).scale(&neg_half), -&c(3), c(4).scale(&neg_half)],
        [z(), z(), z(), c(4).scale(&neg_half), -&c(5)],
    ];
    let mut m: Vec<Vec<MPoly<F>>> = vec![vec![z(), z()], vec![z(), z()]];
    for (a, row) in m.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let mut acc = z();
            for i in 0..5 {
                if l[i][a].is_zero() {
                    continue;
                }
                for j in 0..5 {
                    if t[i][j].is_zero() || l[j][b].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&(&l[i][a] * &t[i][j]) * &l[j][b]);
                }
            }
            *entry = acc;
        }
    }
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    // total degree in x_2..x_4 only
    let mut aff = MPoly::zero(n, one);
    let mut deg = 0;
    for (e, cf) in det.terms_grevlex() {
        deg = deg.max(e[1] + e[2] + e[3]);
        aff.add_term(e.to_vec(), cf.clone());
    }
    let mut out = MPoly::zero(n, one);
    for (e, cf) in aff.terms_grevlex() {
        let mut e2 = e.to_vec();
        e2[0] = deg - (e[1] + e[2] + e[3]);
        out.add_term(e2, cf.clone());
    }
    // normalize the coefficient of x_3^4 to one
    let mut e = vec![0; n];
    e[2] = 4;
    let lead = out.coeff(&e).inv().expect("x_3^4 occurs in the quartic");
    out.scale(&lead)
}

/// The Kummer quartic of a genus-two curve in the coordinates `x_1..x_4`.
pub fn kummer_quartic_g2<F: Field>(curve: &HyperellipticCurve<F>) -> Result<MPoly<F>> {
    if curve.genus() != 2 {
        return Err(Error::Precondition(format!(
            "the Kummer quartic is only available in genus 2, not {}",
            curve.genus()
        )));
    }
    let one = curve.one();
    let generic = kummer_quartic_g2_generic(&one);
    let mut subs: Vec<MPoly<F>> = (0..4).map(|i| MPoly::var(4, i, &one)).collect();
    for i in 1..=5 {
        subs.push(MPoly::constant(4, curve.c(i)));
    }
    Ok(generic.compose(&subs))
}
