//! Exact arithmetic for the `|2Θ|` Kummer embedding of odd hyperelliptic
//! Jacobians, computed through pure spinors.
//!
//! For a curve `y^2 = f(x)` with `f` monic of degree `2g + 1`, the crate
//! provides
//!
//! * exact fields (`Q`, `F_p`, `F_{p^d}`), polynomials and matrices
//!   ([`field`], [`poly`], [`matrix`], [`finite`], [`complex_roots`]);
//! * the quadratic space `V = k[x]/(f)` and its straightened basis
//!   ([`quadratic`]);
//! * the spin representation `S = ∧*E`, its Clifford action, the form `β`,
//!   Pfaffians and pure spinors ([`spinor`]);
//! * Mumford divisors and Cantor's group law ([`jacobian`]);
//! * the Kummer map `Ψ: J → P(S)`, membership and lifting tests, and the
//!   genus-two Kummer quartic ([`kummer`]);
//! * Heisenberg matrices of the two-torsion, generic spin bases and the
//!   duplication quartics ([`theta`]);
//! * dagger, naive, reduction and canonical heights over `Q` ([`heights`]);
//! * a seeded property suite over prime fields ([`verify`]).
//!
//! Everything is generic over the [`Field`] trait; the aliases at the crate
//! root fix the concrete fields used in practice.

pub mod complex_roots;
pub mod curve;
pub mod error;
pub mod field;
pub mod finite;
pub mod heights;
pub mod jacobian;
pub mod kummer;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod quadratic;
pub mod spinor;
pub mod theta;
pub mod verify;

pub use curve::HyperellipticCurve;
pub use error::{Error, ErrorKind, Result};
pub use field::{Field, Fp, Fq, FqContext, Q};
pub use jacobian::MumfordDivisor;
pub use matrix::Matrix;
pub use mpoly::MPoly;
pub use poly::Poly;
pub use quadratic::{Basis, QuadraticSpace, VElem};
pub use spinor::{IsotropicFrame, SpinVector};

/// A curve over the rationals.
pub type QCurve = HyperellipticCurve<Q>;
/// A curve over a prime field.
pub type FpCurve = HyperellipticCurve<Fp>;
/// A curve over an extension of a prime field.
pub type FqCurve = HyperellipticCurve<Fq>;
/// A Mumford divisor over the rationals.
pub type QDivisor = MumfordDivisor<Q>;
/// A Mumford divisor over a prime field.
pub type FpDivisor = MumfordDivisor<Fp>;
/// A spin vector over the rationals.
pub type QSpinVector = SpinVector<Q>;
/// A spin vector over a prime field.
pub type FpSpinVector = SpinVector<Fp>;
