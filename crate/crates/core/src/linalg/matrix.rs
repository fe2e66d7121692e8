//! Dense rational matrices and deterministic Gauss–Jordan elimination.
//!
//! Elimination always picks the leftmost column with a nonzero entry and
//! the topmost nonzero row within it, so the reduced row echelon form —
//! and everything derived from it (rank, nullspace, canonical subspace
//! bases) — is a canonical function of the input.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::Error;
use crate::linalg::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Outcome of solving `m * x = rhs`: one particular solution plus the
/// homogeneous solution space (as a canonical basis, not a `Subspace`,
/// to avoid a module cycle; callers wrap it when they need lattice ops).
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<Rat>,
    pub homogeneous: Vec<Vec<Rat>>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &(&self[(i, j)] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= c;
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= y;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in col..m.cols {
                        let delta = &factor * &m[(row, j)];
                        m[(r, j)] -= &delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{v : self * v = 0}`. Each free column yields one
    /// basis vector (free coordinate set to 1), in increasing free-column
    /// order; the result is then itself written in reduced echelon form by
    /// the caller when canonicity across spanning sets matters.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                map[c] = Some(i);
            }
            map
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(i, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = rhs` exactly. Returns `None` when inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Option<LinearSolution>, Error> {
        if rhs.len() != self.rows {
            return Err(Error::dim(format!(
                "solve: rhs length {} does not match {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![Rat::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            particular[pc] = r[(i, self.cols)].clone();
        }
        Ok(Some(LinearSolution {
            particular,
            homogeneous: self.nullspace(),
        }))
    }

    /// Inverse via elimination on `[self | I]`; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = RatMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ai = a * self.cols + j;
            let bi = b * self.cols + j;
            self.data.swap(ai, bi);
        }
    }

    /// Flattens row-major into one vector of length `rows * cols`.
    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data length mismatch");
        RatMatrix { rows, cols, data }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[RatMatrix]) -> RatMatrix {
        let cols = blocks.first().map_or(0, RatMatrix::cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack width mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend(b.data.iter().cloned());
        }
        RatMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rat>]) -> RatMatrix {
        let n = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|c| c.len() == n), "column length mismatch");
        let mut m = RatMatrix::zero(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Rat::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::int(x)).collect()
    }

    #[test]
    fn rref_of_singular_2x2() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0]);
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_of_rank_one_row() {
        let m = RatMatrix::from_i64(&[&[1, 2]]);
        let null = m.nullspace();
        assert_eq!(null.len(), 1);
        // Same line as span{(-2, 1)}.
        assert_eq!(null[0], vec![Rat::int(-2), Rat::int(1)]);
        assert!(m.mul_vec(&null[0]).iter().all(Rat::is_zero));
    }

    #[test]
    fn solve_unique() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let sol = m.solve(&v(&[3, 1])).unwrap().unwrap();
        assert_eq!(sol.particular, v(&[2, 1]));
        assert!(sol.homogeneous.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let m = RatMatrix::from_i64(&[&[1, 1]]);
        let sol = m.solve(&v(&[0])).unwrap().unwrap();
        assert_eq!(sol.particular, v(&[0, 0]));
        assert_eq!(sol.homogeneous.len(), 1);
        // Homogeneous basis spans the line through (1, -1).
        let h = &sol.homogeneous[0];
        assert!(&h[0] + &h[1] == Rat::zero() && !h[0].is_zero());
    }

    #[test]
    fn solve_inconsistent() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&v(&[0, 1])).unwrap().is_none());
    }

    #[test]
    fn solve_rhs_length_is_checked() {
        let m = RatMatrix::from_i64(&[&[1, 1]]);
        assert!(m.solve(&v(&[1, 2])).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert_eq!(inv.mul(&m), RatMatrix::identity(2));
        let singular = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn zero_row_and_column_shapes() {
        let m = RatMatrix::zero(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().len(), 3);
        let m = RatMatrix::zero(3, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.nullspace().is_empty());
    }
}
