//! The spin representation `S = ∧*E` of the Clifford algebra of `V`.
//!
//! A basis of `S` is given by the wedge monomials `p_I = p_{i_r} ∧ ... ∧ p_{i_1}`
//! for subsets `I = {i_1 < ... < i_r}` of `{g+1, ..., 2g}` (indices of the
//! straightened basis spanning `E`).  Spin vectors store their `2^g`
//! coordinates in the canonical order: larger subsets first, and subsets of
//! equal size by decreasing lexicographic order of their decreasingly sorted
//! elements.  For `g = 2` this is `(p_4 ∧ p_3, p_4, p_3, 1)`.  The last basis
//! vector `1 = p_∅` is the point `∞`.
//!
//! Vectors of `V` act by
//! * `e ∧ ω` for `e ∈ E`,
//! * contraction `f ⌟ (w_1 ∧ ... ∧ w_k) = Σ (-1)^{i-1} 2ψ(f, w_i) w_1 ∧ .. ŵ_i .. ∧ w_k`
//!   for `f ∈ F`,
//! * `(-1)^k` on `∧^k E` for `p_g`,
//!
//! which satisfies the Clifford relation `v·(v·s) = ψ(v, v) s`.
//!
//! Internally a subset of `{g+1, ..., 2g}` is a bit mask whose bit `b` stands
//! for the index `g + 1 + b`.

use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quadratic::QuadraticSpace;

/// Largest genus for which dense spin vectors are supported.
pub const MAX_GENUS: usize = 12;

/// Canonical ordering of the subsets of `{g+1, ..., 2g}` for one genus.
#[derive(Debug)]
pub struct SpinLayout {
    g: usize,
    order: Vec<u32>,
    pos: Vec<usize>,
}

impl SpinLayout {
    fn build(g: usize) -> SpinLayout {
        let n = 1usize << g;
        let mut order: Vec<u32> = (0..n as u32).collect();
        // Key: size descending, then reverse lexicographic order of the
        // increasing element tuples, so that for subsets of {5,...,8} the
        // pairs run {7,8}, {6,8}, {6,7}, {5,8}, {5,7}, {5,6}.
        let increasing = |m: u32| (0..g).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>();
        order.sort_by(|a, b| {
            b.count_ones()
                .cmp(&a.count_ones())
                .then_with(|| increasing(*b).cmp(&increasing(*a)))
        });
        let mut pos = vec![0; n];
        for (i, &m) in order.iter().enumerate() {
            pos[m as usize] = i;
        }
        SpinLayout { g, order, pos }
    }

    /// The layout for genus `g` (cached).
    ///
    /// # Panics
    /// Panics for `g = 0` or `g > MAX_GENUS`.
    pub fn get(g: usize) -> &'static SpinLayout {
        static CACHE: OnceLock<Vec<OnceLock<SpinLayout>>> = OnceLock::new();
        assert!((1..=MAX_GENUS).contains(&g), "genus {g} out of range");
        let cache = CACHE.get_or_init(|| (0..=MAX_GENUS).map(|_| OnceLock::new()).collect());
        cache[g].get_or_init(|| SpinLayout::build(g))
    }

    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// `2^g`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// Always false (a layout has at least two entries).
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Mask at canonical position `i`.
    pub fn mask(&self, i: usize) -> u32 {
        self.order[i]
    }

    /// Canonical position of a mask.
    pub fn position(&self, mask: u32) -> usize {
        self.pos[mask as usize]
    }

    /// Mask of the full set `{g+1, ..., 2g}`.
    pub fn full(&self) -> u32 {
        (1u32 << self.g) - 1
    }

    /// Converts a list of indices in `{g+1, ..., 2g}` to a mask.
    pub fn mask_of(&self, subset: &[usize]) -> Result<u32> {
        let mut m = 0;
        for &i in subset {
            if i <= self.g || i > 2 * self.g {
                return Err(Error::Schema(format!(
                    "index {i} outside {{{}, ..., {}}}",
                    self.g + 1,
                    2 * self.g
                )));
            }
            m |= 1 << (i - self.g - 1);
        }
        Ok(m)
    }

    /// Elements of a mask as indices in `{g+1, ..., 2g}`, decreasing.
    pub fn elements(&self, mask: u32) -> Vec<usize> {
        (0..self.g)
            .rev()
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| self.g + 1 + b)
            .collect()
    }
}

/// The canonical ordering of the subsets of `{g+1, ..., 2g}`, each listed
/// with its elements in decreasing order.
pub fn spin_subset_order(g: usize) -> Vec<Vec<usize>> {
    let l = SpinLayout::get(g);
    (0..l.len()).map(|i| l.elements(l.mask(i))).collect()
}

/// An element of `S` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinVector<F: Field> {
    g: usize,
    coords: Vec<F>,
}

impl<F: Field> SpinVector<F> {
    /// Wraps `2^g` canonical coordinates.
    pub fn new(g: usize, coords: Vec<F>) -> Result<Self> {
        if g == 0 || g > MAX_GENUS || coords.len() != 1 << g {
            return Err(Error::Schema(format!(
                "a spin vector for genus {g} needs {} coordinates, got {}",
                1usize << g.min(30),
                coords.len()
            )));
        }
        Ok(SpinVector { g, coords })
    }

    /// The zero vector.
    pub fn zero(g: usize, zero: &F) -> Self {
        SpinVector {
            g,
            coords: vec![zero.zero_like(); 1 << g],
        }
    }

    /// The basis vector `p_I` for a mask.
    pub fn basis(g: usize, mask: u32, one: &F) -> Self {
        let mut s = Self::zero(g, one);
        let pos = SpinLayout::get(g).position(mask);
        s.coords[pos] = one.one_like();
        s
    }

    /// The vector `∞ = p_∅ = (0, ..., 0, 1)`.
    pub fn infinity(g: usize, one: &F) -> Self {
        Self::basis(g, 0, one)
    }

    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Canonical coordinates.
    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// Consumes the vector returning its coordinates.
    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }

    /// Layout of the coordinates.
    pub fn layout(&self) -> &'static SpinLayout {
        SpinLayout::get(self.g)
    }

    /// Coordinate of `p_I` for a mask.
    pub fn at_mask(&self, mask: u32) -> &F {
        &self.coords[self.layout().position(mask)]
    }

    /// Whether all coordinates vanish.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &F) -> Self {
        SpinVector {
            g: self.g,
            coords: self.coords.iter().map(|x| x.clone() * c).collect(),
        }
    }

    /// Componentwise sum.
    pub fn add(&self, o: &Self) -> Self {
        SpinVector {
            g: self.g,
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    /// Scales so that the first nonzero coordinate is one.
    pub fn normalized(&self) -> Self {
        match self.coords.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Equality as points of `P(S)`.
    pub fn projectively_equal(&self, o: &Self) -> bool {
        self.g == o.g && !self.is_zero() && !o.is_zero() && self.normalized() == o.normalized()
    }

    /// Applies `phi` coordinatewise.
    pub fn map<G: Field>(&self, phi: impl Fn(&F) -> G) -> SpinVector<G> {
        SpinVector {
            g: self.g,
            coords: self.coords.iter().map(phi).collect(),
        }
    }
}

fn parity_sign<F: Field>(x: &F, odd: bool) -> F {
    if odd {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Accumulates `coeff · (p_k · s)` into `out`.
fn act_basis_into<F: Field>(g: usize, k: usize, coeff: &F, s: &SpinVector<F>, out: &mut [F]) {
    let l = s.layout();
    let two = coeff.from_i64_like(2);
    for (pos, c) in s.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mask = l.mask(pos);
        let (target, value) = if k > g {
            let b = k - g - 1;
            if mask >> b & 1 == 1 {
                continue;
            }
            let above = (mask >> (b + 1)).count_ones();
            (mask | 1 << b, parity_sign(&(c.clone() * coeff), above % 2 == 1))
        } else if k < g {
            let b = g - 1 - k; // element 2g - k
            if mask >> b & 1 == 0 {
                continue;
            }
            let above = (mask >> (b + 1)).count_ones();
            (
                mask ^ 1 << b,
                parity_sign(&(c.clone() * coeff * &two), above % 2 == 1),
            )
        } else {
            (mask, parity_sign(&(c.clone() * coeff), mask.count_ones() % 2 == 1))
        };
        let tp = l.position(target);
        out[tp] = out[tp].clone() + value;
    }
}

/// The Clifford action of `p_k` on `s`.
pub fn act_basis<F: Field>(k: usize, s: &SpinVector<F>) -> SpinVector<F> {
    let one = s.coords[0].one_like();
    let mut out = SpinVector::zero(s.g, &one);
    act_basis_into(s.g, k, &one, s, &mut out.coords);
    out
}

/// The Clifford action of `v` (straightened coordinates) on `s`.
pub fn clifford_act<F: Field>(space: &QuadraticSpace<F>, v: &[F], s: &SpinVector<F>) -> SpinVector<F> {
    let g = space.genus();
    assert_eq!(v.len(), 2 * g + 1, "vector of V has wrong length");
    assert_eq!(s.g, g, "spin vector of the wrong genus");
    let mut out = SpinVector::zero(g, &space.zero());
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            act_basis_into(g, k, c, s, &mut out.coords);
        }
    }
    out
}

/// `β(p_I, p_{I^c})` for a mask `I` (zero pairings are not queried).
fn beta_monomial_sign(g: usize, i_mask: u32) -> bool {
    let j_mask = !i_mask & ((1u32 << g) - 1);
    let s = j_mask.count_ones();
    let mut inversions = 0;
    for b in 0..g {
        if i_mask >> b & 1 == 1 {
            inversions += (j_mask >> (b + 1)).count_ones();
        }
    }
    ((s * (s + 1) / 2) + inversions) % 2 == 1
}

/// The form `β(s1, s2)`: the coefficient of `p_{2g} ∧ ... ∧ p_{g+1}` in
/// `s1 ∧ s2*`, where `(v_1 ∧ ... ∧ v_r)* = (-1)^r v_r ∧ ... ∧ v_1`.
///
/// On monomials `β(p_I, p_J)` vanishes unless `I = J^c`, where it equals
/// `(-1)^{s(s+1)/2} ε(σ)` with `s = |J|` and `ε(σ)` the sign of sorting the
/// concatenated wedge.
pub fn beta_form<F: Field>(s1: &SpinVector<F>, s2: &SpinVector<F>) -> F {
    assert_eq!(s1.g, s2.g, "β of spin vectors of different genus");
    let g = s1.g;
    let l = s1.layout();
    let full = l.full();
    let mut acc = s1.coords[0].zero_like();
    for (pos, a) in s1.coords.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let m = l.mask(pos);
        let b = &s2.coords[l.position(full ^ m)];
        if b.is_zero() {
            continue;
        }
        acc = acc + parity_sign(&(a.clone() * b), beta_monomial_sign(g, m));
    }
    acc
}

/// The Gram matrix `(β(e_a, e_b))` in canonical coordinates.
pub fn beta_matrix<F: Field>(g: usize, one: &F) -> Matrix<F> {
    let l = SpinLayout::get(g);
    let n = l.len();
    let mut m = Matrix::zeros(n, n, one);
    for a in 0..n {
        let ma = l.mask(a);
        let b = l.position(l.full() ^ ma);
        m[(a, b)] = parity_sign(&one.one_like(), beta_monomial_sign(g, ma));
    }
    m
}

/// A maximal isotropic subspace in normal form relative to a subset `J`.
///
/// With `p'_j = p_j, p'_{2g-j} = p_{2g-j}` for `j ∈ J` and the two swapped
/// for `j ∉ J`, the subspace has the unique basis
/// `l_j = p'_j + ξ_{2g-j} p_g + Σ_{i<g} A_{i,2g-j} p'_i` (`j = 2g, ..., g+1`),
/// and `ξ_{ij} = A_{ij} + ξ_i ξ_j / 2` is antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicFrame<F: Field> {
    g: usize,
    j_mask: u32,
    xi: Vec<F>,
    xij: Matrix<F>,
}

impl<F: Field> IsotropicFrame<F> {
    /// Validates and wraps a frame; `xij` must be antisymmetric.
    pub fn new(g: usize, j_mask: u32, xi: Vec<F>, xij: Matrix<F>) -> Result<Self> {
        if xi.len() != g || xij.rows() != g || xij.cols() != g || j_mask >> g != 0 {
            return Err(Error::Schema("frame dimensions do not match the genus".into()));
        }
        for i in 0..g {
            for j in 0..g {
                if !(xij[(i, j)].clone() + &xij[(j, i)]).is_zero() {
                    return Err(Error::Precondition("ξ_ij is not antisymmetric".into()));
                }
            }
        }
        Ok(IsotropicFrame { g, j_mask, xi, xij })
    }

    /// The zero frame for the subset `J`.
    pub fn zero(g: usize, j_mask: u32, zero: &F) -> Self {
        IsotropicFrame {
            g,
            j_mask,
            xi: vec![zero.zero_like(); g],
            xij: Matrix::zeros(g, g, zero),
        }
    }

    /// A random frame with subset `J`.
    pub fn random<R: Rng + ?Sized>(g: usize, j_mask: u32, one: &F, rng: &mut R) -> Self {
        let xi = (0..g).map(|_| one.random_like(rng)).collect();
        let mut xij = Matrix::zeros(g, g, one);
        for i in 0..g {
            for j in i + 1..g {
                let x = one.random_like(rng);
                xij[(j, i)] = -x.clone();
                xij[(i, j)] = x;
            }
        }
        IsotropicFrame { g, j_mask, xi, xij }
    }

    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Mask of `J ⊆ {g+1, ..., 2g}`.
    pub fn j_mask(&self) -> u32 {
        self.j_mask
    }

    /// The vector `(ξ_0, ..., ξ_{g-1})`.
    pub fn xi(&self) -> &[F] {
        &self.xi
    }

    /// The antisymmetric matrix `(ξ_{ij})`.
    pub fn xij(&self) -> &Matrix<F> {
        &self.xij
    }

    /// Index in the straightened basis of `p'_i` for `i < g`.
    pub fn primed_index(&self, i: usize) -> usize {
        let j = 2 * self.g - i;
        if self.j_mask >> (j - self.g - 1) & 1 == 1 {
            i
        } else {
            j
        }
    }

    /// Index in the straightened basis of `p'_j` for `g < j <= 2g`.
    pub fn primed_index_upper(&self, j: usize) -> usize {
        if self.j_mask >> (j - self.g - 1) & 1 == 1 {
            j
        } else {
            2 * self.g - j
        }
    }

    /// The basis `l_{2g}, ..., l_{g+1}` of the subspace, in straightened coordinates.
    pub fn subspace_basis(&self, one: &F) -> Vec<Vec<F>> {
        let g = self.g;
        let half = one.half();
        (0..g)
            .map(|r| {
                // row r is l_j with j = 2g - r
                let j = 2 * g - r;
                let mut v = vec![one.zero_like(); 2 * g + 1];
                v[self.primed_index_upper(j)] = one.one_like();
                v[g] = self.xi[r].clone();
                for i in 0..g {
                    // A_{i r} = ξ_{i r} - ξ_i ξ_r / 2
                    let a = self.xij[(i, r)].clone() - self.xi[i].clone() * &self.xi[r] * &half;
                    let k = self.primed_index(i);
                    v[k] = v[k].clone() + a;
                }
                v
            })
            .collect()
    }
}

/// The Pfaffian `ξ_I` of a frame for `I ⊆ {0, ..., g-1}`.
///
/// Even `|I|`: the Pfaffian of the antisymmetric submatrix.  Odd `|I|`: the
/// sum over one singleton `i_0` and a perfect matching of the rest, each term
/// `ξ_{i_0} Π ξ_{i_k j_k}` signed by the permutation `(i_0, i_1, j_1, ...)`.
/// `ξ_∅ = 1`.
pub fn pfaffian<F: Field>(frame: &IsotropicFrame<F>, subset: &[usize]) -> F {
    let one = if frame.g > 0 {
        frame.xij.zero_elem().one_like()
    } else {
        unreachable!("frames have positive genus")
    };
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_unstable();
    pf_rec(frame, &idx, &one)
}

fn pf_rec<F: Field>(frame: &IsotropicFrame<F>, idx: &[usize], one: &F) -> F {
    if idx.is_empty() {
        return one.clone();
    }
    let mut acc = one.zero_like();
    if idx.len() % 2 == 1 {
        for k in 0..idx.len() {
            let x = &frame.xi[idx[k]];
            if x.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &v)| v).collect();
            let term = x.clone() * pf_rec(frame, &rest, one);
            acc = acc + parity_sign(&term, k % 2 == 1);
        }
    } else {
        for k in 1..idx.len() {
            let x = &frame.xij[(idx[0], idx[k])];
            if x.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != 0 && t != k)
                .map(|(_, &v)| v)
                .collect();
            let term = x.clone() * pf_rec(frame, &rest, one);
            acc = acc + parity_sign(&term, k % 2 == 0);
        }
    }
    acc
}

/// The pure spinor `ω_L = γ p_J` of the subspace described by a frame, where
/// `γ = (1 + ½ p_g Σ_j ξ_j p'_j) Π_{i<j} (1 + ½ ξ_{ij} p'_i p'_j)`.
///
/// The coefficient at `J` is exactly one.
pub fn pure_spinor_from_frame<F: Field>(space: &QuadraticSpace<F>, frame: &IsotropicFrame<F>) -> SpinVector<F> {
    let g = space.genus();
    assert_eq!(frame.g, g, "frame of the wrong genus");
    let one = space.one();
    let half = one.half();
    let mut s = SpinVector::basis(g, frame.j_mask, &one);
    for i in 0..g {
        for j in i + 1..g {
            let x = &frame.xij[(i, j)];
            if x.is_zero() {
                continue;
            }
            let t = act_basis(frame.primed_index(j), &s);
            let mut out = s.coords.clone();
            act_basis_into(g, frame.primed_index(i), &(x.clone() * &half), &t, &mut out);
            s.coords = out;
        }
    }
    let mut u = SpinVector::zero(g, &one);
    for j in 0..g {
        if !frame.xi[j].is_zero() {
            act_basis_into(g, frame.primed_index(j), &frame.xi[j], &s, &mut u.coords);
        }
    }
    let mut out = s.coords.clone();
    act_basis_into(g, g, &half, &u, &mut out);
    s.coords = out;
    s
}

/// Matrix whose column `k` is `p_k · s`.
fn action_matrix<F: Field>(space: &QuadraticSpace<F>, s: &SpinVector<F>) -> Matrix<F> {
    let cols: Vec<Vec<F>> = (0..space.dim()).map(|k| act_basis(k, s).coords).collect();
    Matrix::from_cols(&cols, s.coords.len(), &space.zero())
}

/// Basis (straightened coordinates) of `L(s) = {v ∈ V : v·s = 0}`.
pub fn annihilator<F: Field>(space: &QuadraticSpace<F>, s: &SpinVector<F>) -> Vec<Vec<F>> {
    action_matrix(space, s).kernel()
}

/// Basis of `L_I = ⟨p_i : i ∈ I⟩ + ⟨p_{2g-i} : i ∉ I⟩` for `I ⊆ {g+1, ..., 2g}`.
pub fn coordinate_subspace<F: Field>(space: &QuadraticSpace<F>, mask: u32) -> Vec<Vec<F>> {
    let g = space.genus();
    (g + 1..=2 * g)
        .map(|i| {
            if mask >> (i - g - 1) & 1 == 1 {
                space.p_unit(i)
            } else {
                space.p_unit(2 * g - i)
            }
        })
        .collect()
}

/// Dimension of the span of a list of vectors.
pub fn span_dim<F: Field>(vs: &[Vec<F>], zero: &F) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_rows(vs.to_vec(), vs[0].len(), zero).rank()
}

/// `dim(A ∩ B)` for subspaces given by bases.
pub fn intersection_dim<F: Field>(a: &[Vec<F>], b: &[Vec<F>], zero: &F) -> usize {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    span_dim(a, zero) + span_dim(b, zero) - span_dim(&all, zero)
}

/// Whether two bases span the same subspace.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], zero: &F) -> bool {
    let da = span_dim(a, zero);
    da == span_dim(b, zero) && intersection_dim(a, b, zero) == da
}

/// Normal form of a maximal isotropic subspace relative to `J`.
///
/// `basis` spans the subspace in straightened coordinates.  Fails if the
/// subspace meets `L_{J^c}` or is not maximal isotropic.
pub fn frame_from_subspace<F: Field>(
    space: &QuadraticSpace<F>,
    basis: &[Vec<F>],
    j_mask: u32,
) -> Result<IsotropicFrame<F>> {
    let g = space.genus();
    let zero = space.zero();
    let one = space.one();
    let proto = IsotropicFrame::zero(g, j_mask, &zero);
    if basis.len() != g {
        return Err(Error::Precondition(format!("expected {g} basis vectors, got {}", basis.len())));
    }
    // Columns: p'_{2g}, ..., p'_{g+1}, p_g, p'_{g-1}, ..., p'_0.
    let mut colmap = Vec::with_capacity(2 * g + 1);
    for j in (g + 1..=2 * g).rev() {
        colmap.push(proto.primed_index_upper(j));
    }
    colmap.push(g);
    for i in (0..g).rev() {
        colmap.push(proto.primed_index(i));
    }
    let rows: Vec<Vec<F>> = basis
        .iter()
        .map(|v| colmap.iter().map(|&k| v[k].clone()).collect())
        .collect();
    let m = Matrix::from_rows(rows, 2 * g + 1, &zero);
    let rr = m.row_reduce();
    if rr.rank != g || rr.pivots != (0..g).collect::<Vec<_>>() {
        return Err(Error::Precondition(
            "subspace meets L_{J^c}; choose another subset J".into(),
        ));
    }
    let e = rr.echelon;
    let half = one.half();
    let xi: Vec<F> = (0..g).map(|r| e[(r, g)].clone()).collect();
    let mut xij = Matrix::zeros(g, g, &zero);
    for r in 0..g {
        for i in 0..g {
            // column of p'_i is g + 1 + (g - 1 - i)
            let a = e[(r, 2 * g - i)].clone();
            xij[(i, r)] = a + xi[i].clone() * &xi[r] * &half;
        }
    }
    IsotropicFrame::new(g, j_mask, xi, xij)
        .map_err(|_| Error::Precondition("subspace is not isotropic".into()))
}

/// Monomials `x_a x_b` (`a <= b`, canonical positions) indexing quadrics on `S`.
pub fn quadric_monomials(g: usize) -> Vec<(usize, usize)> {
    let n = 1usize << g;
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            out.push((a, b));
        }
    }
    out
}

/// Evaluates a quadric (coefficients over [`quadric_monomials`]) at `s`.
pub fn eval_quadric<F: Field>(coeffs: &[F], s: &SpinVector<F>) -> F {
    let mons = quadric_monomials(s.g);
    let mut acc = s.coords[0].zero_like();
    for (c, &(a, b)) in coeffs.iter().zip(&mons) {
        if !c.is_zero() {
            acc = acc + c.clone() * &s.coords[a] * &s.coords[b];
        }
    }
    acc
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Expected `dim I(2) = binom(2^g + 1, 2) - binom(2g + 1, g)`.
pub fn expected_quadric_dim(g: usize) -> usize {
    binom((1 << g) + 1, 2) - binom(2 * g + 1, g)
}

/// Basis of the quadrics vanishing on the orthogonal Grassmannian, computed
/// as the kernel of evaluating all degree-two monomials at sampled pure
/// spinors.  Sampling continues until the rank is stable over two
/// consecutive batches.
pub fn quadric_ideal<F: Field, R: Rng + ?Sized>(
    space: &QuadraticSpace<F>,
    rng: &mut R,
) -> Result<Vec<Vec<F>>> {
    let g = space.genus();
    let one = space.one();
    let zero = space.zero();
    let mons = quadric_monomials(g);
    let nm = mons.len();
    let full = SpinLayout::get(g).full();
    let batch = nm + 8;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut last_rank = usize::MAX;
    for round in 0..8 {
        for _ in 0..batch {
            let frame = IsotropicFrame::random(g, full, &one, rng);
            let s = pure_spinor_from_frame(space, &frame);
            rows.push(mons.iter().map(|&(a, b)| s.coords[a].clone() * &s.coords[b]).collect());
        }
        let m = Matrix::from_rows(rows.clone(), nm, &zero);
        let rs = m.row_space();
        let rank = rs.len();
        rows = rs;
        if rank == last_rank && round > 0 {
            return Ok(Matrix::from_rows(rows, nm, &zero).kernel());
        }
        last_rank = rank;
    }
    Err(Error::SampleDeficiency("evaluation rank did not stabilize".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::HyperellipticCurve;
    use crate::field::{q, qi, Fp, Q};
    use num_traits::One;

    fn space_q(c: &[i64]) -> QuadraticSpace<Q> {
        let c: Vec<Q> = c.iter().map(|&x| qi(x)).collect();
        QuadraticSpace::new(&HyperellipticCurve::from_coeffs(&c, &Q::one()).unwrap())
    }

    #[test]
    fn subset_orders() {
        assert_eq!(spin_subset_order(1), vec![vec![2], vec![]]);
        assert_eq!(
            spin_subset_order(2),
            vec![vec![4, 3], vec![4], vec![3], vec![]]
        );
        // pinned by the genus-four Kummer coordinates listed in the literature
        let o4 = spin_subset_order(4);
        assert_eq!(o4[1..5].to_vec(), vec![vec![8, 7, 6], vec![8, 7, 5], vec![8, 6, 5], vec![7, 6, 5]]);
        assert_eq!(
            o4[5..11].to_vec(),
            vec![vec![8, 7], vec![8, 6], vec![7, 6], vec![8, 5], vec![7, 5], vec![6, 5]]
        );
    }

    #[test]
    fn action_formulas() {
        let v = space_q(&[1, 2, 3, 4, 5]);
        let one = qi(1);
        let inf = SpinVector::infinity(2, &one);
        assert_eq!(act_basis(2, &inf), inf);
        // p_0 acting on p_4 gives 2 * 1.
        let p4 = SpinVector::basis(2, 0b10, &one);
        assert_eq!(act_basis(0, &p4), inf.scale(&qi(2)));
        // p_1 acting on p_4 ∧ p_3 gives -2 p_4.
        let p43 = SpinVector::basis(2, 0b11, &one);
        assert_eq!(act_basis(1, &p43), p4.scale(&qi(-2)));
        let _ = v;
    }

    #[test]
    fn beta_values() {
        let one = qi(1);
        let full = SpinVector::basis(2, 0b11, &one);
        let inf = SpinVector::infinity(2, &one);
        assert_eq!(beta_form(&full, &inf), qi(1));
        let p4 = SpinVector::basis(2, 0b10, &one);
        assert_eq!(beta_form(&p4, &p4), qi(0));
    }

    #[test]
    fn pfaffian_examples() {
        let one = qi(1);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        let fr = IsotropicFrame::random(4, 0b1111, &one, &mut rng);
        assert_eq!(pfaffian(&fr, &[]), qi(1));
        let x = fr.xi();
        let m = fr.xij();
        assert_eq!(
            pfaffian(&fr, &[1, 2, 3]),
            x[1].clone() * &m[(2, 3)] - x[2].clone() * &m[(1, 3)] + x[3].clone() * &m[(1, 2)]
        );
        let pf4 = pfaffian(&fr, &[0, 1, 2, 3]);
        assert_eq!(pf4.clone() * pf4, m.det());
    }

    #[test]
    fn genus_two_generic_example() {
        // ξ = (-u2, -u1), ξ01 = (u2 v1 + v3)/2 at u1=1, u2=2, v1=0, v3=1.
        let v = space_q(&[1, 2, 3, 4, 5]);
        let mut xij = Matrix::zeros(2, 2, &qi(0));
        xij[(0, 1)] = q(1, 2);
        xij[(1, 0)] = q(-1, 2);
        let fr = IsotropicFrame::new(2, 0b11, vec![qi(-2), qi(-1)], xij).unwrap();
        let s = pure_spinor_from_frame(&v, &fr);
        assert_eq!(s.coords(), &[qi(1), qi(-1), qi(2), qi(-1)]);
    }

    #[test]
    fn annihilators_of_coordinate_points() {
        let v = space_q(&[1, 2, 3, 4, 5, 6, 7]);
        let one = qi(1);
        let inf = SpinVector::infinity(3, &one);
        let f: Vec<Vec<Q>> = (0..3).map(|i| v.p_unit(i)).collect();
        assert!(same_span(&annihilator(&v, &inf), &f, &qi(0)));
        let full = SpinVector::basis(3, 0b111, &one);
        let e: Vec<Vec<Q>> = (4..7).map(|i| v.p_unit(i)).collect();
        assert!(same_span(&annihilator(&v, &full), &e, &qi(0)));
    }

    #[test]
    fn quadric_dimensions_small_genus() {
        let c: Vec<Fp> = [0, 0, 0, 1, 1].iter().map(|&x| Fp::new(x, 101)).collect();
        let v = QuadraticSpace::new(&HyperellipticCurve::from_coeffs(&c, &Fp::new(1, 101)).unwrap());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(9);
        assert_eq!(quadric_ideal(&v, &mut rng).unwrap().len(), 0);
        assert_eq!(expected_quadric_dim(2), 0);
        assert_eq!(expected_quadric_dim(3), 1);
        assert_eq!(expected_quadric_dim(4), 10);
    }
}
