//! Exact scalar fields: the rationals, prime fields `F_p` and extensions `F_{p^d}`.
//!
//! Every algorithm in the crate is generic over the [`Field`] trait.  Finite
//! fields carry their modulus at run time, so constants are produced from an
//! existing element (`zero_like`, `one_like`, ...) rather than from a
//! context-free `Zero::zero()`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// An exact commutative field of characteristic different from two.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// The additive identity of the field containing `self`.
    fn zero_like(&self) -> Self;
    /// The multiplicative identity of the field containing `self`.
    fn one_like(&self) -> Self;
    /// The image of the integer `n` in the field containing `self`.
    fn from_i64_like(&self, n: i64) -> Self;
    /// Whether `self` is zero.
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Characteristic of the field (0 for the rationals).
    fn characteristic(&self) -> u64;
    /// Whether `self` is a square in the field.
    fn is_square(&self) -> bool;
    /// A random element of the field (small height for the rationals).
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self;
    /// A square root of `self` in the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// Whether `self` is one.
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// `self^e` by square-and-multiply.
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    /// The element `1/2`.
    fn half(&self) -> Self {
        self.from_i64_like(2)
            .inv()
            .expect("characteristic 2 is rejected at construction")
    }
}

/// The rational numbers, as arbitrary-precision fractions in lowest terms.
pub type Q = BigRational;

/// Builds the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

fn bigint_is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        qi(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_square(&self) -> bool {
        bigint_is_square(self.numer()) && bigint_is_square(self.denom())
    }
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let n: i64 = rng.gen_range(-50..=50);
        let d: i64 = rng.gen_range(1..=9);
        q(n, d)
    }
    fn sqrt(&self) -> Option<Self> {
        Field::is_square(self)
            .then(|| BigRational::new(self.numer().sqrt(), self.denom().sqrt()))
    }
    fn pow(&self, e: u64) -> Self {
        num_traits::pow::Pow::pow(self, e)
    }
}

/// Tonelli–Shanks square root in a finite field of odd order `order`.
fn tonelli_shanks<F: Field>(a: &F, order: u64) -> Option<F> {
    if a.is_zero() {
        return Some(a.clone());
    }
    if !a.is_square() {
        return None;
    }
    let mut s = 0;
    let mut t = order - 1;
    while t % 2 == 0 {
        t /= 2;
        s += 1;
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x5eed);
    let z = loop {
        let z = a.random_like(&mut rng);
        if !z.is_zero() && !z.is_square() {
            break z;
        }
    };
    let mut m = s;
    let mut c = z.pow(t);
    let mut tt = a.pow(t);
    let mut r = a.pow((t + 1) / 2);
    while !tt.is_one() {
        let mut i = 0;
        let mut x = tt.clone();
        while !x.is_one() {
            x = x.clone() * &x;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..m - i - 1 {
            b = b.clone() * &b;
        }
        m = i;
        c = b.clone() * &b;
        tt = tt * &c;
        r = r * &b;
    }
    Some(r)
}

/// Deterministic primality test for 64-bit integers (trial division is
/// enough for the moduli this crate works with, which fit in 32 bits).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// An element of the prime field `F_p`, `p` an odd prime below `2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    /// Validates that `p` is an odd prime usable as a modulus.
    pub fn check_modulus(p: u64) -> Result<()> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) || p >= (1 << 32) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(())
    }

    /// The class of `v` modulo `p` (the modulus is assumed validated).
    pub fn new(v: i64, p: u64) -> Fp {
        Fp {
            v: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    /// Canonical representative in `0..p`.
    pub fn value(&self) -> u64 {
        self.v
    }

    /// The modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

macro_rules! forward_ref_binops {
    ($t:ty) => {
        impl<'a> Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t {
                self + o.clone()
            }
        }
        impl<'a> Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t {
                self - o.clone()
            }
        }
        impl<'a> Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, o: &'a $t) -> $t {
                self * o.clone()
            }
        }
        impl<'a> Div<&'a $t> for $t {
            type Output = $t;
            fn div(self, o: &'a $t) -> $t {
                self / o.clone()
            }
        }
    };
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        let s = self.v + o.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: if self.v >= o.v {
                self.v - o.v
            } else {
                self.v + self.p - o.v
            },
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: self.v * o.v % self.p,
            p: self.p,
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fp) -> Fp {
        self * o.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

forward_ref_binops!(Fp);

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp::new(n, self.p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(Fp {
                v: mod_pow(self.v, self.p - 2, self.p),
                p: self.p,
            })
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn is_square(&self) -> bool {
        self.v == 0 || mod_pow(self.v, (self.p - 1) / 2, self.p) == 1
    }
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        Fp {
            v: rng.gen_range(0..self.p),
            p: self.p,
        }
    }
    fn sqrt(&self) -> Option<Self> {
        tonelli_shanks(self, self.p)
    }
    fn pow(&self, e: u64) -> Self {
        Fp {
            v: mod_pow(self.v, e, self.p),
            p: self.p,
        }
    }
}

/// Description of a finite field `F_{p^d} = F_p[t]/(m(t))`.
#[derive(Debug, PartialEq, Eq)]
pub struct FqContext {
    p: u64,
    d: usize,
    /// Monic modulus, ascending coefficients, length `d + 1`.
    modulus: Vec<u64>,
    /// `p^d`.
    order: u64,
}

impl FqContext {
    /// Builds the context from an explicit monic irreducible modulus
    /// (ascending coefficients).  Irreducibility is the caller's
    /// responsibility; see [`crate::finite::smallest_irreducible`].
    pub fn from_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<FqContext>> {
        Fp::check_modulus(p)?;
        let d = modulus.len().saturating_sub(1);
        if d == 0 || modulus[d] != 1 {
            return Err(Error::Precondition("modulus must be monic of degree >= 1".into()));
        }
        let mut order: u64 = 1;
        for _ in 0..d {
            order = order
                .checked_mul(p)
                .filter(|o| *o < (1u64 << 62))
                .ok_or_else(|| Error::Precondition(format!("F_{{{p}^{d}}} is too large")))?;
        }
        Ok(Arc::new(FqContext {
            p,
            d,
            modulus: modulus.into_iter().map(|c| c % p).collect(),
            order,
        }))
    }

    /// The characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The extension degree.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// The field order `p^d`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The modulus as ascending coefficients.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Embeds a prime-field element.
    pub fn from_fp(self: &Arc<Self>, a: Fp) -> Fq {
        debug_assert_eq!(a.p, self.p);
        self.from_int(a.v as i64)
    }

    /// Embeds an integer.
    pub fn from_int(self: &Arc<Self>, n: i64) -> Fq {
        let mut c = vec![0; self.d];
        c[0] = n.rem_euclid(self.p as i64) as u64;
        Fq {
            c,
            ctx: Arc::clone(self),
        }
    }

    /// The element with the given coefficients in the basis `1, t, t^2, ...`
    /// (coefficients beyond degree `d - 1` are reduced by the modulus).
    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> Fq {
        let mut t: Vec<u128> = coeffs.iter().map(|&x| (x % self.p) as u128).collect();
        t.resize(t.len().max(self.d), 0);
        Fq {
            c: self.reduce(t),
            ctx: Arc::clone(self),
        }
    }

    /// Reduces an ascending coefficient vector modulo the modulus.
    fn reduce(&self, mut t: Vec<u128>) -> Vec<u64> {
        let (p, d) = (self.p as u128, self.d);
        for k in (d..t.len()).rev() {
            let top = t[k] % p;
            if top == 0 {
                continue;
            }
            // t^k = t^{k-d} * t^d and t^d = -sum m_i t^i
            for i in 0..d {
                let m = self.modulus[i] as u128;
                if m != 0 {
                    t[k - d + i] += top * (p - m);
                }
            }
            t[k] = 0;
        }
        t[..d].iter().map(|x| (x % p) as u64).collect()
    }

    /// The class of `t`.
    pub fn generator(self: &Arc<Self>) -> Fq {
        let mut c = vec![0; self.d];
        if self.d == 1 {
            c[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            c[1] = 1;
        }
        Fq {
            c,
            ctx: Arc::clone(self),
        }
    }

    /// Every element of the field, in increasing order of coefficient tuples.
    pub fn elements(self: &Arc<Self>) -> Vec<Fq> {
        (0..self.order)
            .map(|mut n| {
                let mut c = vec![0; self.d];
                for x in c.iter_mut() {
                    *x = n % self.p;
                    n /= self.p;
                }
                Fq {
                    c,
                    ctx: Arc::clone(self),
                }
            })
            .collect()
    }
}

/// An element of `F_{p^d}`: a polynomial of degree `< d` in the class `t`.
#[derive(Clone)]
pub struct Fq {
    c: Vec<u64>,
    ctx: Arc<FqContext>,
}

impl Fq {
    /// Coefficients in the basis `1, t, ..., t^{d-1}`.
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// The field context.
    pub fn context(&self) -> &Arc<FqContext> {
        &self.ctx
    }

    /// The Frobenius image `self^p`.
    pub fn frobenius(&self) -> Fq {
        Field::pow(self, self.ctx.p)
    }

    /// If the element lies in the prime field, returns it.
    pub fn to_fp(&self) -> Option<Fp> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(Fp::new(self.c[0] as i64, self.ctx.p))
        } else {
            None
        }
    }

    /// Absolute trace `sum_k self^{p^k}`, an element of `F_p`.
    pub fn trace(&self) -> Fp {
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..self.ctx.d {
            cur = cur.frobenius();
            acc = acc + &cur;
        }
        acc.to_fp().expect("trace lies in the prime field")
    }

    fn same_field(&self, o: &Fq) -> bool {
        Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx
    }
}

impl PartialEq for Fq {
    fn eq(&self, o: &Fq) -> bool {
        self.c == o.c && self.same_field(o)
    }
}
impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.d == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for i in (0..self.ctx.d).rev() {
            let c = self.c[i];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(mut self, o: Fq) -> Fq {
        debug_assert!(self.same_field(&o));
        let p = self.ctx.p;
        for (a, b) in self.c.iter_mut().zip(o.c.iter()) {
            let s = *a + *b;
            *a = if s >= p { s - p } else { s };
        }
        self
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(mut self, o: Fq) -> Fq {
        debug_assert!(self.same_field(&o));
        let p = self.ctx.p;
        for (a, b) in self.c.iter_mut().zip(o.c.iter()) {
            *a = if *a >= *b { *a - *b } else { *a + p - *b };
        }
        self
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(mut self) -> Fq {
        let p = self.ctx.p;
        for a in self.c.iter_mut() {
            if *a != 0 {
                *a = p - *a;
            }
        }
        self
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, o: Fq) -> Fq {
        &self * &o
    }
}

impl<'a> Mul<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn mul(self, o: &'a Fq) -> Fq {
        debug_assert!(self.same_field(o));
        let ctx = &self.ctx;
        let d = ctx.d;
        // Products of residues < 2^32 accumulate safely in u128.
        let mut t = vec![0u128; 2 * d - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                t[i + j] += (a as u128) * (b as u128);
            }
        }
        Fq {
            c: ctx.reduce(t),
            ctx: Arc::clone(ctx),
        }
    }
}

impl Div for Fq {
    type Output = Fq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fq) -> Fq {
        self * o.inv().expect("division by zero in F_q")
    }
}

forward_ref_binops!(Fq);

impl Field for Fq {
    fn zero_like(&self) -> Self {
        Fq {
            c: vec![0; self.ctx.d],
            ctx: Arc::clone(&self.ctx),
        }
    }
    fn one_like(&self) -> Self {
        self.ctx.from_int(1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.ctx.from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(Field::pow(self, self.ctx.order - 2))
        }
    }
    fn characteristic(&self) -> u64 {
        self.ctx.p
    }
    fn is_square(&self) -> bool {
        Field::is_zero(self) || Field::pow(self, (self.ctx.order - 1) / 2).is_one()
    }
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        Fq {
            c: (0..self.ctx.d).map(|_| rng.gen_range(0..self.ctx.p)).collect(),
            ctx: Arc::clone(&self.ctx),
        }
    }
    fn sqrt(&self) -> Option<Self> {
        tonelli_shanks(self, self.ctx.order)
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// Squarefree part of a nonzero rational, as a signed integer: the canonical
/// representative of its class in `Q^x / (Q^x)^2`.
///
/// Uses trial division up to `10^6`; a remaining cofactor that is not a
/// perfect square is treated as squarefree, which is exact whenever the
/// cofactor has no repeated prime factor above `10^6`.
pub fn squarefree_part(x: &Q) -> Option<BigInt> {
    if Zero::is_zero(x) {
        return None;
    }
    let mut n = x.numer() * x.denom();
    let sign = n.sign();
    if sign == Sign::Minus {
        n = -n;
    }
    let mut out = BigInt::one();
    let mut k = 2u64;
    while k <= 1_000_000 {
        let kb = BigInt::from(k);
        if &kb * &kb > n {
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(&kb) {
            n /= &kb;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &kb;
        }
        k += if k == 2 { 1 } else { 2 };
    }
    if !bigint_is_square(&n) {
        out *= n;
    }
    Some(if sign == Sign::Minus { -out } else { out })
}
