//! Dense matrices over a [`Field`] with exact Gaussian elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::field::Field;

/// A dense `rows x cols` matrix stored row-major.
///
/// A zero element of the coefficient field is kept alongside the entries so
/// that empty matrices still know their field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    zero: F,
}

/// Output of [`Matrix::row_reduce`].
#[derive(Clone, Debug)]
pub struct RowReduction<F: Field> {
    /// Reduced row-echelon form of the input.
    pub echelon: Matrix<F>,
    /// Invertible matrix with `transform * input = echelon`.
    pub transform: Matrix<F>,
    /// Number of pivots.
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    /// The zero matrix over the field of `zero`.
    pub fn zeros(rows: usize, cols: usize, zero: &F) -> Self {
        let z = zero.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![z.clone(); rows * cols],
            zero: z,
        }
    }

    /// The identity matrix over the field of `one`.
    pub fn identity(n: usize, one: &F) -> Self {
        let mut m = Matrix::zeros(n, n, one);
        for i in 0..n {
            m[(i, i)] = one.one_like();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    ///
    /// # Panics
    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, zero: &F) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
            zero: zero.zero_like(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<F>], nrows: usize, zero: &F) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len(), zero);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "ragged matrix columns");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The zero element of the coefficient field.
    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// All rows as vectors.
    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The transpose.
    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c).collect(),
            zero: self.zero.clone(),
        }
    }

    /// Whether all entries are zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Gauss-Jordan elimination to reduced row-echelon form.
    pub fn row_reduce(&self) -> RowReduction<F> {
        let one = self.zero.one_like();
        let mut e = self.clone();
        let mut t = Matrix::identity(self.rows, &one);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !e[(i, c)].is_zero()) else {
                continue;
            };
            e.swap_rows(r, p);
            t.swap_rows(r, p);
            let inv = e[(r, c)].inv().unwrap();
            e.scale_row(r, &inv);
            t.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !e[(i, c)].is_zero() {
                    let f = e[(i, c)].clone();
                    e.add_row_multiple(i, r, &f);
                    t.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowReduction {
            echelon: e,
            transform: t,
            rank: r,
            pivots,
        }
    }

    /// Rank by exact elimination.
    pub fn rank(&self) -> usize {
        self.echelon_only().1.len()
    }

    /// Reduced row-echelon form without tracking the transform.
    fn echelon_only(&self) -> (Matrix<F>, Vec<usize>) {
        let mut e = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !e[(i, c)].is_zero()) else {
                continue;
            };
            e.swap_rows(r, p);
            let inv = e[(r, c)].inv().unwrap();
            e.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !e[(i, c)].is_zero() {
                    let f = e[(i, c)].clone();
                    e.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (e, pivots)
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (e, pivots) = self.echelon_only();
        let one = self.zero.one_like();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![self.zero.clone(); self.cols];
            v[free] = one.clone();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -e[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the row space (rows of the reduced echelon form).
    pub fn row_space(&self) -> Vec<Vec<F>> {
        let (e, pivots) = self.echelon_only();
        (0..pivots.len()).map(|i| e.row(i).to_vec()).collect()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut e = self.clone();
        let mut acc = self.zero.one_like();
        for c in 0..self.cols {
            let Some(p) = (c..self.rows).find(|&i| !e[(i, c)].is_zero()) else {
                return self.zero.clone();
            };
            if p != c {
                e.swap_rows(c, p);
                acc = -acc;
            }
            let piv = e[(c, c)].clone();
            acc = acc * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..self.rows {
                if !e[(i, c)].is_zero() {
                    let f = e[(i, c)].clone() * &inv;
                    e.add_row_multiple(i, c, &f);
                }
            }
        }
        acc
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let rr = self.row_reduce();
        (rr.rank == self.rows).then_some(rr.transform)
    }

    /// Solves `M x = b` for square invertible `M`.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        Some(self.inverse()?.mul_vec(b))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &F) {
        for j in 0..self.cols {
            let x = &mut self.data[r * self.cols + j];
            if !x.is_zero() {
                *x = x.clone() * c;
            }
        }
    }

    /// `row[i] -= f * row[r]`.
    fn add_row_multiple(&mut self, i: usize, r: usize, f: &F) {
        for j in 0..self.cols {
            let src = &self.data[r * self.cols + j];
            if src.is_zero() {
                continue;
            }
            let v = src.clone() * f;
            let x = &mut self.data[i * self.cols + j];
            *x = x.clone() - v;
        }
    }

    /// Applies `phi` entrywise.
    pub fn map<G: Field>(&self, phi: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&phi).collect(),
            zero: phi(&self.zero).zero_like(),
        }
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, F: Field> Mul<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, o: &'a Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let mut m = Matrix::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] = m[(i, j)].clone() + a.clone() * b;
                    }
                }
            }
        }
        m
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn minors_rank(m: &Matrix<Fp>) -> usize {
        // largest k such that some k x k minor is nonzero
        let (r, c) = (m.rows(), m.cols());
        let mut best = 0;
        for k in 1..=r.min(c) {
            let rows: Vec<Vec<usize>> = subsets(r, k);
            let cols: Vec<Vec<usize>> = subsets(c, k);
            'outer: for rs in &rows {
                for cs in &cols {
                    let sub = Matrix::from_rows(
                        rs.iter()
                            .map(|&i| cs.iter().map(|&j| m[(i, j)]).collect())
                            .collect(),
                        k,
                        m.zero_elem(),
                    );
                    if !sub.det().is_zero() {
                        best = k;
                        break 'outer;
                    }
                }
            }
        }
        best
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn identity_and_zero() {
        let z = Fp::new(0, 7);
        let id = Matrix::identity(3, &z.one_like());
        let rr = id.row_reduce();
        assert_eq!(rr.echelon, id);
        assert_eq!(rr.rank, 3);
        let zm = Matrix::zeros(2, 3, &z);
        let rr = zm.row_reduce();
        assert_eq!(rr.echelon, zm);
        assert_eq!(rr.rank, 0);
    }

    #[test]
    fn random_rank_agrees_with_minors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z = Fp::new(0, 7);
        for _ in 0..60 {
            let mut m = Matrix::zeros(3, 5, &z);
            let sparse = rand::Rng::gen_bool(&mut rng, 0.5);
            for i in 0..3 {
                for j in 0..5 {
                    if !sparse || rand::Rng::gen_bool(&mut rng, 0.3) {
                        m[(i, j)] = z.random_like(&mut rng);
                    }
                }
            }
            let rr = m.row_reduce();
            assert_eq!(rr.rank, minors_rank(&m));
            assert_eq!(&rr.transform * &m, rr.echelon);
            assert!(!rr.transform.det().is_zero());
            for v in m.kernel() {
                assert!(rr.echelon.mul_vec(&v).iter().all(|x| x.is_zero()));
                assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
            assert_eq!(m.kernel().len(), 5 - rr.rank);
        }
    }
}
