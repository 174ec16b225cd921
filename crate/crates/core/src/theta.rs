//! The Heisenberg (theta) group action of the two-torsion on `S`, generic
//! spin bases, and quartic polynomials representing duplication.
//!
//! Roots `ω_1, ..., ω_{2g+1}` of `f` are passed as a slice; subsets of roots
//! are bitmasks with bit `i` standing for `roots[i]` (so the label `i + 1`).
//! For such a subset `I = {i_1 < ... < i_r}` the Heisenberg matrix `M_I` is
//! the action on `S` of `δ_I^{-1} ε_{i_1} ⋯ ε_{i_r}` in the Clifford algebra,
//! where `ε_i = f(x) / (x - ω_i)` and `δ_I = Π_{j<k} (ω_{i_k} - ω_{i_j})`.

use std::sync::Arc;

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::complex_roots::rational_roots;
use crate::field::{Field, Fp, Fq, FqContext, Q};
use crate::finite::splitting_data;
use crate::jacobian::MumfordDivisor;
use crate::kummer::{degree_subset_mask, psi_embed};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::poly::Poly;
use crate::quadratic::QuadraticSpace;
use crate::spinor::{beta_matrix, clifford_act, SpinLayout, SpinVector};

/// Indices of the set bits of a root mask, increasing.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// The mask of a subset of root labels `1..=2g+1`.
pub fn labels_to_mask(labels: &[usize]) -> u32 {
    labels.iter().fold(0, |m, &l| {
        assert!(l >= 1, "root labels start at 1");
        m | 1 << (l - 1)
    })
}

/// The root labels `1..=2g+1` of a mask.
pub fn mask_to_labels(mask: u32) -> Vec<usize> {
    mask_indices(mask).into_iter().map(|i| i + 1).collect()
}

/// The mask of all `n` roots.
fn all_roots(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

/// `δ_I = Π_{j<k} (ω_{i_k} - ω_{i_j})`, the square root of the
/// discriminant of the roots in `I` (one for `|I| ≤ 1`).
pub fn half_discriminant<F: Field>(roots: &[F], mask: u32) -> F {
    let idx = mask_indices(mask);
    let mut acc = roots[0].one_like();
    for (k, &ik) in idx.iter().enumerate() {
        for &ij in &idx[..k] {
            acc = acc * (roots[ik].clone() - &roots[ij]);
        }
    }
    acc
}

/// `r_{I,J} = Π_{i ∈ I, j ∈ J} (ω_i - ω_j)`.
pub fn root_resultant<F: Field>(roots: &[F], i_mask: u32, j_mask: u32) -> F {
    let mut acc = roots[0].one_like();
    for i in mask_indices(i_mask) {
        for j in mask_indices(j_mask) {
            acc = acc * (roots[i].clone() - &roots[j]);
        }
    }
    acc
}

/// `r_T = r_{I, I^c}` for the two-torsion point `T = [D_I]`.
pub fn torsion_resultant<F: Field>(roots: &[F], mask: u32) -> F {
    root_resultant(roots, mask, all_roots(roots.len()) & !mask)
}

/// The subset of size at most `g` representing the same two-torsion point
/// as `mask` (`D_I = D_{I^c}`).
pub fn canonical_torsion_mask(g: usize, mask: u32) -> u32 {
    if mask.count_ones() as usize <= g {
        mask
    } else {
        all_roots(2 * g + 1) & !mask
    }
}

/// `ε_i = f(x) / (x - ω_i)` in straightened coordinates.
pub fn epsilon_vector<F: Field>(space: &QuadraticSpace<F>, roots: &[F], i: usize) -> Vec<F> {
    let one = space.one();
    let lin = Poly::new(vec![-roots[i].clone(), one]);
    let q = space
        .curve()
        .f()
        .exact_div(&lin)
        .expect("ω_i is a root of f");
    space.poly_to_p(&q)
}

/// The matrix of `v_1 ⋯ v_r` acting on `S` (the rightmost factor acts first).
pub fn clifford_product_matrix<F: Field>(space: &QuadraticSpace<F>, factors: &[Vec<F>]) -> Matrix<F> {
    let g = space.genus();
    let one = space.one();
    let n = SpinLayout::get(g).len();
    let cols: Vec<Vec<F>> = (0..n)
        .map(|k| {
            let mut s = SpinVector::basis(g, SpinLayout::get(g).mask(k), &one);
            for v in factors.iter().rev() {
                s = clifford_act(space, v, &s);
            }
            s.into_coords()
        })
        .collect();
    Matrix::from_cols(&cols, n, &space.zero())
}

/// The Heisenberg matrix `M_I` of a two-torsion point `[D_I]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergMatrix<F: Field> {
    g: usize,
    mask: u32,
    matrix: Matrix<F>,
}

impl<F: Field> HeisenbergMatrix<F> {
    /// The root subset `I`.
    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// The `2^g × 2^g` matrix in canonical coordinates.
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// `M_I s`.
    pub fn apply(&self, s: &SpinVector<F>) -> SpinVector<F> {
        assert_eq!(s.genus(), self.g, "spin vector of the wrong genus");
        SpinVector::new(self.g, self.matrix.mul_vec(s.coords())).expect("length preserved")
    }

    /// `M_I ∞`, the column of `∞ = p_∅`.
    pub fn apply_to_infinity(&self) -> SpinVector<F> {
        let pos = SpinLayout::get(self.g).position(0);
        SpinVector::new(self.g, self.matrix.col(pos)).expect("length preserved")
    }
}

/// `M_I = δ_I^{-1} ε_{i_1} ⋯ ε_{i_r}` acting on `S`.
pub fn heisenberg_matrix<F: Field>(space: &QuadraticSpace<F>, roots: &[F], mask: u32) -> HeisenbergMatrix<F> {
    let g = space.genus();
    assert_eq!(roots.len(), 2 * g + 1, "need all 2g+1 roots of f");
    let factors: Vec<Vec<F>> = mask_indices(mask).into_iter().map(|i| epsilon_vector(space, roots, i)).collect();
    let d = half_discriminant(roots, mask).inv().expect("roots are distinct");
    HeisenbergMatrix {
        g,
        mask,
        matrix: clifford_product_matrix(space, &factors).scale(&d),
    }
}

/// `δ_I^{-1} ε_{i_r} ⋯ ε_{i_1}`, the reversed product; `M_I` times it is the
/// spinor norm `N(M_I)`.
pub fn reversed_heisenberg_matrix<F: Field>(space: &QuadraticSpace<F>, roots: &[F], mask: u32) -> Matrix<F> {
    let mut factors: Vec<Vec<F>> = mask_indices(mask).into_iter().map(|i| epsilon_vector(space, roots, i)).collect();
    factors.reverse();
    let d = half_discriminant(roots, mask).inv().expect("roots are distinct");
    clifford_product_matrix(space, &factors).scale(&d)
}

/// Whether `M_I M_J = -M_J M_I`: the vectors `ε_i` pairwise anticommute and
/// square to scalars, so the sign is `(-1)^{|I||J| + |I ∩ J|}`.
pub fn heisenberg_commutator_is_negative(i_mask: u32, j_mask: u32) -> bool {
    (i_mask.count_ones() * j_mask.count_ones() + (i_mask & j_mask).count_ones()) % 2 == 1
}

/// The Weil pairing `e_2([D_I], [D_J])` as a sign, computed from even-size
/// representatives: `(-1)^{|I' ∩ J'|}`.
pub fn weil_pairing_is_negative(g: usize, i_mask: u32, j_mask: u32) -> bool {
    let even = |m: u32| {
        if m.count_ones() % 2 == 0 {
            m
        } else {
            all_roots(2 * g + 1) & !m
        }
    };
    (even(i_mask) & even(j_mask)).count_ones() % 2 == 1
}

/// The family `F ⊂ {I ⊂ J : |I| = r}` of size `binom(n, r)` whose wedge
/// products form a basis of `∧^r W` for points in uniform position.
/// `j` is sorted; elements `≤ g` form `J_1`, the others `J_2`.
fn uniform_matroid_family(j: &[usize], g: usize, n: usize, r: usize) -> Vec<Vec<usize>> {
    let j2: Vec<usize> = j.iter().copied().filter(|&x| x > g).collect();
    if n == 1 || r == 1 {
        return j2[..n].iter().map(|&x| vec![x]).collect();
    }
    let pivot = if r % 2 == 0 {
        *j.iter().find(|&&x| x <= g).expect("J_1 is large enough")
    } else {
        j2[0]
    };
    let rest: Vec<usize> = j.iter().copied().filter(|&x| x != pivot).collect();
    let mut out: Vec<Vec<usize>> = uniform_matroid_family(&rest, g, n - 1, r - 1)
        .into_iter()
        .map(|mut s| {
            s.push(pivot);
            s.sort_unstable();
            s
        })
        .collect();
    if r < n {
        out.extend(uniform_matroid_family(&rest, g, n - 1, r));
    }
    out
}

/// The generic spin basis `{I Δ {1..g}}` as subsets of root labels
/// `1..=2g+1`, ordered by the size `r = 0, 1, ..., g` of `I`.
pub fn generic_spin_basis(g: usize) -> Vec<Vec<usize>> {
    assert!(g >= 1, "genus must be positive");
    let j: Vec<usize> = (1..=2 * g + 1).collect();
    let j1 = labels_to_mask(&(1..=g).collect::<Vec<_>>());
    let mut out = vec![mask_to_labels(j1)];
    for r in 1..=g {
        for s in uniform_matroid_family(&j, g, g, r) {
            out.push(mask_to_labels(labels_to_mask(&s) ^ j1));
        }
    }
    out
}

/// The generic spin basis as root masks.
pub fn generic_spin_basis_masks(g: usize) -> Vec<u32> {
    generic_spin_basis(g).iter().map(|s| labels_to_mask(s)).collect()
}

/// The Gram matrix `G[a][b] = β(M e_a, e_b)` of the quadric `β(M x, x)`.
pub fn beta_twisted_gram<F: Field>(g: usize, m: &Matrix<F>) -> Matrix<F> {
    let one = m.zero_elem().one_like();
    &m.transpose() * &beta_matrix(g, &one)
}

/// The quadratic form `x ↦ Σ G[a][b] x_a x_b` as a polynomial.
pub fn quadratic_form_poly<F: Field>(gram: &Matrix<F>) -> MPoly<F> {
    let n = gram.rows();
    let zero = gram.zero_elem().clone();
    let mut out = MPoly::zero(n, &zero);
    for a in 0..n {
        for b in 0..n {
            let c = gram[(a, b)].clone();
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; n];
            e[a] += 1;
            e[b] += 1;
            out.add_term(e, c);
        }
    }
    out
}

/// The Gram matrix of `q_T(x) = β(M_T x, x)` for a two-torsion point `T`
/// of Mumford degree `g`; it is symmetric.
pub fn q_form<F: Field>(space: &QuadraticSpace<F>, roots: &[F], t_mask: u32) -> Result<Matrix<F>> {
    let g = space.genus();
    if canonical_torsion_mask(g, t_mask).count_ones() as usize != g {
        return Err(Error::Precondition("q_T needs a two-torsion point of Mumford degree g".into()));
    }
    Ok(beta_twisted_gram(g, heisenberg_matrix(space, roots, t_mask).matrix()))
}

/// Quartic polynomials `δ_1, ..., δ_{2^g}` representing duplication on the
/// Kummer variety in the canonical coordinates of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicationPolys<F: Field> {
    g: usize,
    polys: Vec<MPoly<F>>,
    basis: Vec<u32>,
}

impl<F: Field> DuplicationPolys<F> {
    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// The quartics, one per coordinate.
    pub fn polys(&self) -> &[MPoly<F>] {
        &self.polys
    }

    /// The root masks of the generic spin basis used to build them.
    pub fn spin_basis(&self) -> &[u32] {
        &self.basis
    }

    /// `δ(x)`; projectively this is the image of `x` under duplication.
    pub fn apply(&self, x: &SpinVector<F>) -> SpinVector<F> {
        assert_eq!(x.genus(), self.g, "spin vector of the wrong genus");
        let v = self.polys.iter().map(|p| p.eval(x.coords())).collect();
        SpinVector::new(self.g, v).expect("one quartic per coordinate")
    }

    /// Applies `phi` to every coefficient.
    pub fn map<G: Field>(&self, zero: &G, phi: impl Fn(&F) -> G) -> DuplicationPolys<G> {
        DuplicationPolys {
            g: self.g,
            polys: self.polys.iter().map(|p| p.map(zero, &phi)).collect(),
            basis: self.basis.clone(),
        }
    }
}

/// The linear system behind a generic spin basis: rows `β(M_{T_i} ∞, ·)`,
/// constants `β(M_{T_i} ∞, ∞)` and the quadrics `β(M_{T_i} x, x)`.
struct SpinBasisSystem<F: Field> {
    rows: Matrix<F>,
    constants: Vec<F>,
    quadrics: Vec<Matrix<F>>,
}

fn spin_basis_system<F: Field>(space: &QuadraticSpace<F>, roots: &[F], basis: &[u32]) -> SpinBasisSystem<F> {
    let g = space.genus();
    let one = space.one();
    let bm = beta_matrix(g, &one);
    let n = SpinLayout::get(g).len();
    let mut rows = Vec::with_capacity(n);
    let mut constants = Vec::with_capacity(n);
    let mut quadrics = Vec::with_capacity(n);
    for &t in basis {
        let m = heisenberg_matrix(space, roots, t);
        let v = m.apply_to_infinity().into_coords();
        // β(v, e_j) = Σ_c v_c β(e_c, e_j)
        let row: Vec<F> = (0..n)
            .map(|j| (0..n).fold(space.zero(), |acc, c| acc + v[c].clone() * &bm[(c, j)]))
            .collect();
        constants.push(row[SpinLayout::get(g).position(0)].clone());
        rows.push(row);
        quadrics.push(beta_twisted_gram(g, m.matrix()));
    }
    SpinBasisSystem {
        rows: Matrix::from_rows(rows, n, &space.zero()),
        constants,
        quadrics,
    }
}

/// Duplication quartics from a generic spin basis over a field containing
/// all roots: the unique `δ` with
/// `β(M_{T_i} ∞, δ(x)) β(M_{T_i} ∞, ∞) = β(M_{T_i} x, x)^2` for each `i`.
pub fn duplication_polys_split<F: Field>(
    space: &QuadraticSpace<F>,
    roots: &[F],
    basis: &[u32],
) -> Result<DuplicationPolys<F>> {
    let g = space.genus();
    let n = SpinLayout::get(g).len();
    if basis.len() != n {
        return Err(Error::Precondition(format!("a spin basis needs {n} points, got {}", basis.len())));
    }
    if let Some(&t) = basis.iter().find(|&&t| canonical_torsion_mask(g, t).count_ones() as usize != g) {
        return Err(Error::Precondition(format!(
            "two-torsion point {:?} does not have Mumford degree g",
            mask_to_labels(t)
        )));
    }
    let sys = spin_basis_system(space, roots, basis);
    let inv = sys
        .rows
        .inverse()
        .ok_or_else(|| Error::Precondition("two-torsion points do not form a generic spin basis".into()))?;
    let mut rhs = Vec::with_capacity(n);
    for (q, c) in sys.quadrics.iter().zip(&sys.constants) {
        let c_inv = c.inv().ok_or_else(|| Error::Internal("β(M_T ∞, ∞) vanishes".into()))?;
        let qp = quadratic_form_poly(q);
        rhs.push((&qp * &qp).scale(&c_inv));
    }
    // δ_j = Σ_i inv[j][i] · rhs_i, accumulated term by term
    let mut acc: Vec<std::collections::HashMap<Vec<u32>, F>> = vec![Default::default(); n];
    for (i, r) in rhs.iter().enumerate() {
        for (e, c) in r.iter() {
            for (j, a) in acc.iter_mut().enumerate() {
                let w = &inv[(j, i)];
                if w.is_zero() {
                    continue;
                }
                let t = c.clone() * w;
                match a.get_mut(e) {
                    Some(v) => *v = v.clone() + t,
                    None => {
                        a.insert(e.to_vec(), t);
                    }
                }
            }
        }
    }
    let polys = acc
        .into_iter()
        .map(|a| {
            let mut p = MPoly::zero(n, &space.zero());
            for (e, c) in a {
                p.add_term(e, c);
            }
            p
        })
        .collect();
    Ok(DuplicationPolys {
        g,
        polys,
        basis: basis.to_vec(),
    })
}

/// Orders the roots by Frobenius orbits: orbits sorted by their smallest
/// element (in the order of `roots`), each listed as `ω, ω^p, ω^{p^2}, ...`
/// from that element.
pub fn frobenius_orbit_order(roots: &[Fq]) -> Vec<Fq> {
    let mut seen = vec![false; roots.len()];
    let mut out = Vec::with_capacity(roots.len());
    for start in 0..roots.len() {
        if seen[start] {
            continue;
        }
        let mut cur = roots[start].clone();
        loop {
            let k = roots.iter().position(|r| *r == cur).expect("Frobenius permutes the roots");
            if seen[k] {
                break;
            }
            seen[k] = true;
            out.push(cur.clone());
            cur = cur.frobenius();
        }
    }
    out
}

/// The roots of `f` over its splitting field, labelled for the Heisenberg
/// constructions over `F_p`.
#[derive(Clone, Debug)]
pub struct LabelledRoots {
    /// The splitting field `F_{p^d}`.
    pub field: Arc<FqContext>,
    /// Its degree `d` over `F_p`.
    pub d: usize,
    /// `ω_1, ..., ω_{2g+1}` in label order.
    pub roots: Vec<Fq>,
}

/// Labels the roots of `f` over `F_p`: first in Frobenius-orbit order, then
/// (optionally) permuted so that label `i + 1` is orbit position
/// `labeling[i]`.
pub fn labelled_roots(curve: &HyperellipticCurve<Fp>, labeling: Option<&[usize]>) -> Result<LabelledRoots> {
    let sd = splitting_data(curve.f())?;
    let ordered = frobenius_orbit_order(&sd.roots);
    let roots = match labeling {
        None => ordered,
        Some(perm) => {
            let mut check = perm.to_vec();
            check.sort_unstable();
            if check != (0..ordered.len()).collect::<Vec<_>>() {
                return Err(Error::Precondition(format!(
                    "root labeling must be a permutation of 0..{}",
                    ordered.len()
                )));
            }
            perm.iter().map(|&k| ordered[k].clone()).collect()
        }
    };
    Ok(LabelledRoots {
        field: sd.field,
        d: sd.d,
        roots,
    })
}

/// Duplication quartics over `F_p`: built over the splitting field from the
/// generic spin basis and descended by `(1/d) Tr`, which requires `p ∤ d`.
pub fn duplication_polys_fp(
    curve: &HyperellipticCurve<Fp>,
    labeling: Option<&[usize]>,
) -> Result<DuplicationPolys<Fp>> {
    let g = curve.genus();
    let p = curve.one().modulus();
    let lr = labelled_roots(curve, labeling)?;
    if lr.d as u64 % p == 0 {
        return Err(Error::TraceDescentUnavailable { p, d: lr.d });
    }
    let field = lr.field.clone();
    let curve_q = curve.base_change(|c| field.from_fp(*c));
    let space = QuadraticSpace::new(&curve_q);
    let split = duplication_polys_split(&space, &lr.roots, &generic_spin_basis_masks(g))?;
    let d_inv = Fp::new(lr.d as i64, p).inv().expect("p does not divide d");
    Ok(split.map(&Fp::new(0, p), |c| c.trace() * d_inv))
}

/// Duplication quartics over a field in which `f` splits, with the roots
/// supplied in label order.
pub fn duplication_polys_with_roots<F: Field>(
    curve: &HyperellipticCurve<F>,
    roots: &[F],
) -> Result<DuplicationPolys<F>> {
    let g = curve.genus();
    if roots.len() != 2 * g + 1 || roots.iter().any(|r| !curve.f().eval(r).is_zero()) {
        return Err(Error::Precondition("need the 2g+1 roots of f".into()));
    }
    let space = QuadraticSpace::new(curve);
    duplication_polys_split(&space, roots, &generic_spin_basis_masks(g))
}

/// Duplication quartics over the rationals for a curve whose `f` splits
/// completely over `Q` (roots labelled in increasing order).  Curves that do
/// not split are rejected: `δ` over `Q` is only built in the split case.
pub fn duplication_polys_rational(curve: &HyperellipticCurve<Q>) -> Result<DuplicationPolys<Q>> {
    let roots = rational_roots(curve.f())?
        .ok_or_else(|| Error::Precondition("f does not split over Q; compute δ over a finite field instead".into()))?;
    duplication_polys_with_roots(curve, &roots)
}

/// `s(P) = x_1(M_T Ψ(P)) / x_M(Ψ(P))` for a two-torsion point `T = [D_I]`
/// of Mumford degree `g - m` and a divisor `P` of Mumford degree `m`, where
/// `M = {2g, ..., 2g-m+1}`.  It equals the resultant `Res(U_P, U_T)`.
pub fn coordinate_resultant<F: Field>(
    space: &QuadraticSpace<F>,
    roots: &[F],
    t_mask: u32,
    p: &MumfordDivisor<F>,
) -> Result<F> {
    let g = space.genus();
    let m = p.degree();
    let t = canonical_torsion_mask(g, t_mask);
    if t.count_ones() as usize + m != g {
        return Err(Error::Precondition(format!(
            "T has Mumford degree {} but P has degree {m}; they must sum to g = {g}",
            t.count_ones()
        )));
    }
    let psi = psi_embed(space, p)?;
    let xm = psi.at_mask(degree_subset_mask(g, m)).clone();
    let xm_inv = xm
        .inv()
        .ok_or_else(|| Error::Internal("x_M vanishes on a point of Mumford degree m".into()))?;
    let image = heisenberg_matrix(space, roots, t).apply(&psi);
    Ok(image.coords()[0].clone() * xm_inv)
}
