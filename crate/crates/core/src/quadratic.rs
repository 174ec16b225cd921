//! The quadratic space `V = k[x]/(f)` with form `psi(a, b) = tau(ab)`, where
//! `tau` reads off the coefficient of `x^{2g}`, together with its
//! straightened basis `p_0, ..., p_{2g}` in which the Gram matrix is
//! antidiagonal.
//!
//! The straightened basis is `p_i = x^i` for `i <= g` and
//! `p_{g+i} = x^{g+i} + c_1 x^{g+i-1} + ... + c_{2i-1} x^{g-i+1} + (c_{2i}/2) x^{g-i}`.
//! The span of `p_{g+1}, ..., p_{2g}` is the isotropic subspace `E`, that of
//! `p_0, ..., p_{g-1}` is `F`.

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Which basis a vector of `V` is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// The power basis `1, x, ..., x^{2g}`.
    Power,
    /// The straightened basis `p_0, ..., p_{2g}`.
    Straightened,
}

/// A vector of `V` tagged with the basis of its coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VElem<F: Field> {
    basis: Basis,
    coords: Vec<F>,
}

impl<F: Field> VElem<F> {
    /// Wraps coordinates in the given basis.
    pub fn new(basis: Basis, coords: Vec<F>) -> Self {
        VElem { basis, coords }
    }

    /// Coordinates in the straightened basis.
    pub fn straightened(coords: Vec<F>) -> Self {
        VElem::new(Basis::Straightened, coords)
    }

    /// Coordinates in the power basis.
    pub fn power(coords: Vec<F>) -> Self {
        VElem::new(Basis::Power, coords)
    }

    /// The basis tag.
    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// The coordinates.
    pub fn coords(&self) -> &[F] {
        &self.coords
    }
}

/// The quadratic space attached to a curve.
#[derive(Clone, Debug)]
pub struct QuadraticSpace<F: Field> {
    curve: HyperellipticCurve<F>,
    /// Column `j` holds `p_j` in power-basis coordinates.
    p_in_power: Matrix<F>,
    /// Inverse change of basis: column `j` holds `x^j` in straightened coordinates.
    power_in_p: Matrix<F>,
}

impl<F: Field> QuadraticSpace<F> {
    /// Computes the straightened basis of `V` for `curve`.
    pub fn new(curve: &HyperellipticCurve<F>) -> Self {
        let g = curve.genus();
        let n = 2 * g + 1;
        let one = curve.one();
        let half = one.half();
        let mut p = Matrix::zeros(n, n, &one);
        for i in 0..=g {
            p[(i, i)] = one.clone();
        }
        for i in 1..=g {
            let col = g + i;
            p[(g + i, col)] = one.clone();
            for k in 1..2 * i {
                p[(g + i - k, col)] = curve.c(k);
            }
            p[(g - i, col)] = curve.c(2 * i) * &half;
        }
        let power_in_p = p.inverse().expect("unitriangular change of basis");
        QuadraticSpace {
            curve: curve.clone(),
            p_in_power: p,
            power_in_p,
        }
    }

    /// The underlying curve.
    pub fn curve(&self) -> &HyperellipticCurve<F> {
        &self.curve
    }

    /// The genus `g`; `dim V = 2g + 1`.
    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    /// `dim V = 2g + 1`.
    pub fn dim(&self) -> usize {
        2 * self.genus() + 1
    }

    /// Zero of the base field.
    pub fn zero(&self) -> F {
        self.curve.zero()
    }

    /// One of the base field.
    pub fn one(&self) -> F {
        self.curve.one()
    }

    /// Matrix whose column `j` is `p_j` in power coordinates.
    pub fn change_of_basis(&self) -> &Matrix<F> {
        &self.p_in_power
    }

    /// Matrix whose column `j` is `x^j` in straightened coordinates.
    pub fn inverse_change_of_basis(&self) -> &Matrix<F> {
        &self.power_in_p
    }

    fn check_len(&self, v: &VElem<F>) -> Result<()> {
        if v.coords.len() != self.dim() {
            return Err(Error::Schema(format!(
                "vector of length {} in a space of dimension {}",
                v.coords.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Expresses `v` in the straightened basis.
    pub fn to_p_coords(&self, v: &VElem<F>) -> Result<VElem<F>> {
        self.check_len(v)?;
        Ok(match v.basis {
            Basis::Straightened => v.clone(),
            Basis::Power => VElem::straightened(self.power_in_p.mul_vec(&v.coords)),
        })
    }

    /// Expresses `v` in the power basis.
    pub fn from_p_coords(&self, v: &VElem<F>) -> Result<VElem<F>> {
        self.check_len(v)?;
        Ok(match v.basis {
            Basis::Power => v.clone(),
            Basis::Straightened => VElem::power(self.p_in_power.mul_vec(&v.coords)),
        })
    }

    /// The class of a polynomial in `V`, in straightened coordinates.
    pub fn poly_to_p(&self, a: &Poly<F>) -> Vec<F> {
        let r = a.rem(self.curve.f());
        let z = self.zero();
        let coords: Vec<F> = (0..self.dim()).map(|i| r.coeff_or(i, &z)).collect();
        self.power_in_p.mul_vec(&coords)
    }

    /// The polynomial of degree `<= 2g` represented by straightened coordinates.
    pub fn p_to_poly(&self, v: &[F]) -> Poly<F> {
        Poly::new(self.p_in_power.mul_vec(v))
    }

    /// The unit vector `p_i` in straightened coordinates.
    pub fn p_unit(&self, i: usize) -> Vec<F> {
        let mut v = vec![self.zero(); self.dim()];
        v[i] = self.one();
        v
    }

    /// `psi(a, b)`: the coefficient of `x^{2g}` in `ab mod f`.
    pub fn psi(&self, a: &VElem<F>, b: &VElem<F>) -> Result<F> {
        let a = Poly::new(self.from_p_coords(a)?.coords);
        let b = Poly::new(self.from_p_coords(b)?.coords);
        let r = (&a * &b).rem(self.curve.f());
        Ok(r.coeff_or(2 * self.genus(), &self.zero()))
    }

    /// `psi` on straightened coordinates, using the antidiagonal Gram matrix.
    pub fn psi_p(&self, a: &[F], b: &[F]) -> F {
        let n = self.dim();
        let mut acc = self.zero();
        for i in 0..n {
            if !a[i].is_zero() && !b[n - 1 - i].is_zero() {
                acc = acc + a[i].clone() * &b[n - 1 - i];
            }
        }
        acc
    }

    /// Multiplication by `x` on straightened coordinates.
    pub fn mul_x_p(&self, v: &[F]) -> Vec<F> {
        let a = self.p_to_poly(v);
        self.poly_to_p(&a.shift(1))
    }

    /// Gram matrix of `psi` in the straightened basis (computed from `tau`).
    pub fn gram_p(&self) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n, &self.zero());
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self
                    .psi(
                        &VElem::straightened(self.p_unit(i)),
                        &VElem::straightened(self.p_unit(j)),
                    )
                    .expect("dimensions agree");
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi, Fp, Q};
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qcurve(c: &[i64]) -> HyperellipticCurve<Q> {
        let c: Vec<Q> = c.iter().map(|&x| qi(x)).collect();
        HyperellipticCurve::from_coeffs(&c, &Q::one()).unwrap()
    }

    #[test]
    fn genus_one_straightened_basis() {
        let curve = qcurve(&[3, 5, 7]);
        let v = QuadraticSpace::new(&curve);
        // p_2 = x^2 + c_1 x + c_2/2
        assert_eq!(v.change_of_basis().col(2), vec![q(5, 2), qi(3), qi(1)]);
    }

    #[test]
    fn degenerate_model_gives_monomials() {
        let f = Poly::monomial(qi(1), 7);
        let curve = HyperellipticCurve::unchecked(f).unwrap();
        let v = QuadraticSpace::new(&curve);
        assert_eq!(v.change_of_basis(), &Matrix::identity(7, &qi(1)));
    }

    #[test]
    fn gram_is_antidiagonal() {
        let curve = qcurve(&[0, 0, 0, 1, 1]);
        let v = QuadraticSpace::new(&curve);
        let g = v.gram_p();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(g[(i, j)], if i + j == 4 { qi(1) } else { qi(0) });
            }
        }
        assert_eq!(
            v.psi(&VElem::power(vec![qi(1), qi(0), qi(0), qi(0), qi(0)]),
                  &VElem::power(vec![qi(0), qi(0), qi(0), qi(0), qi(1)]))
                .unwrap(),
            qi(1)
        );
    }

    #[test]
    fn psi_of_x3_squared_by_hand_reduction() {
        // f = x^5 + 3: x^6 = x * x^5 = -3x, whose x^4 coefficient is 0.
        let curve = qcurve(&[0, 0, 0, 0, 3]);
        let v = QuadraticSpace::new(&curve);
        let x3 = VElem::power(vec![qi(0), qi(0), qi(0), qi(1), qi(0)]);
        assert_eq!(v.psi(&x3, &x3).unwrap(), qi(0));
        // and x^3 * x = x^4 has coefficient 1
        let x1 = VElem::power(vec![qi(0), qi(1), qi(0), qi(0), qi(0)]);
        assert_eq!(v.psi(&x3, &x1).unwrap(), qi(1));
    }

    #[test]
    fn coordinate_round_trips_and_self_adjointness() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let one = Fp::new(1, 7);
        let c: Vec<Fp> = [1, 2, 3, 4, 5, 6, 1].iter().map(|&x| Fp::new(x, 7)).collect();
        let curve = HyperellipticCurve::from_coeffs(&c, &one);
        let curve = match curve {
            Ok(c) => c,
            Err(_) => {
                let c: Vec<Fp> = [0, 0, 0, 0, 0, 1, 1].iter().map(|&x| Fp::new(x, 7)).collect();
                HyperellipticCurve::from_coeffs(&c, &one).unwrap()
            }
        };
        let v = QuadraticSpace::new(&curve);
        for i in 0..=3 {
            let xi = VElem::power(v.p_unit(i));
            assert_eq!(v.to_p_coords(&xi).unwrap().coords(), &v.p_unit(i)[..]);
        }
        for _ in 0..50 {
            let a: Vec<Fp> = (0..7).map(|_| one.random_like(&mut rng)).collect();
            let b: Vec<Fp> = (0..7).map(|_| one.random_like(&mut rng)).collect();
            let va = VElem::power(a.clone());
            let back = v.from_p_coords(&v.to_p_coords(&va).unwrap()).unwrap();
            assert_eq!(back, va);
            let ap = v.to_p_coords(&va).unwrap().coords().to_vec();
            let bp = v.to_p_coords(&VElem::power(b)).unwrap().coords().to_vec();
            assert_eq!(v.psi_p(&v.mul_x_p(&ap), &bp), v.psi_p(&ap, &v.mul_x_p(&bp)));
            assert_eq!(
                v.psi_p(&ap, &bp),
                v.psi(&VElem::straightened(ap.clone()), &VElem::straightened(bp.clone()))
                    .unwrap()
            );
        }
    }

    #[test]
    fn change_of_basis_is_half_integral() {
        let curve = qcurve(&[3, -5, 7, 11, -13, 2, 9]);
        let v = QuadraticSpace::new(&curve);
        for m in [v.change_of_basis(), v.inverse_change_of_basis()] {
            for i in 0..7 {
                for j in 0..7 {
                    assert!((m[(i, j)].clone() * qi(2)).is_integer());
                }
            }
        }
    }
}
