//! Structure-constant algebras and the right Leibniz identity.
//!
//! An [`Algebra`] is a finite-dimensional bilinear product given by sparse
//! structure constants over ℚ. The defining identity checked everywhere is
//! the right Leibniz law
//!
//! ```text
//! [x, [y, z]] = [[x, y], z] - [[x, z], y]
//! ```
//!
//! equivalent to: every right multiplication R_a = [·, a] is a derivation.
//! Indices are 0-based in code; displayed and serialized forms are 1-based.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;
use crate::linalg::subspace::Subspace;

/// Sparse coordinate vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(usize, Rat)>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    dim: usize,
    basis_names: Vec<String>,
    /// `(i, j) -> [e_i, e_j]`, absent keys meaning zero product.
    products: BTreeMap<(usize, usize), SparseVec>,
}

/// How the lower central series of a nilpotent algebra tapers off.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NilpotentClass {
    /// dim Lᵏ = n + 1 - k for all k.
    NullFiliform,
    /// dim Lᵏ = n - k for 2 ≤ k ≤ n.
    Filiform,
    OtherNilpotent,
    NotNilpotent,
}

impl std::fmt::Display for NilpotentClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NilpotentClass::NullFiliform => "null-filiform",
            NilpotentClass::Filiform => "filiform",
            NilpotentClass::OtherNilpotent => "nilpotent",
            NilpotentClass::NotNilpotent => "not nilpotent",
        };
        write!(f, "{s}")
    }
}

impl Algebra {
    /// Builds an algebra from 0-based products without checking the
    /// Leibniz identity; call [`Algebra::check_leibniz`] to validate.
    pub fn new(
        dim: usize,
        basis_names: Vec<String>,
        products: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self, Error> {
        if basis_names.len() != dim {
            return Err(Error::data(format!(
                "{} basis names for dimension {dim}",
                basis_names.len()
            )));
        }
        for (&(i, j), value) in &products {
            if i >= dim || j >= dim {
                return Err(Error::data(format!(
                    "product index ({}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            let mut last: Option<usize> = None;
            for &(k, ref c) in value {
                if k >= dim {
                    return Err(Error::data(format!(
                        "product ({}, {}) refers to basis index {} out of range",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
                if c.is_zero() {
                    return Err(Error::data(format!(
                        "product ({}, {}) stores an explicit zero coefficient",
                        i + 1,
                        j + 1
                    )));
                }
                if let Some(prev) = last {
                    if k <= prev {
                        return Err(Error::data(format!(
                            "product ({}, {}) has unsorted or duplicate indices",
                            i + 1,
                            j + 1
                        )));
                    }
                }
                last = Some(k);
            }
        }
        let products = products.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        Ok(Algebra {
            dim,
            basis_names,
            products,
        })
    }

    /// Default basis names e1..en.
    pub fn with_default_names(
        dim: usize,
        products: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self, Error> {
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        Algebra::new(dim, names, products)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.products
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// `[e_i, e_j]` as a dense coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        if let Some(sparse) = self.products.get(&(i, j)) {
            for (k, c) in sparse {
                v[*k] = c.clone();
            }
        }
        v
    }

    /// Bilinear bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim, "left factor dimension");
        assert_eq!(y.len(), self.dim, "right factor dimension");
        let mut out = vec![Rat::zero(); self.dim];
        for (&(i, j), value) in &self.products {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let scale = &x[i] * &y[j];
            for (k, c) in value {
                out[*k] += &(&scale * c);
            }
        }
        out
    }

    /// Matrix of right multiplication R_a : x ↦ [x, a].
    pub fn right_mult(&self, a: &[Rat]) -> LinearMap {
        let cols: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| self.bracket(&self.basis_vector(i), a))
            .collect();
        LinearMap::new(RatMatrix::from_cols(&cols))
    }

    /// Matrix of left multiplication L_a : x ↦ [a, x].
    pub fn left_mult(&self, a: &[Rat]) -> LinearMap {
        let cols: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| self.bracket(a, &self.basis_vector(i)))
            .collect();
        LinearMap::new(RatMatrix::from_cols(&cols))
    }

    /// Verifies the right Leibniz identity on all basis triples, reporting
    /// the first violating triple (0-based) in lexicographic order.
    pub fn check_leibniz(&self) -> Result<(), Error> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let yz = self.bracket_basis(j, k);
                    let lhs = self.bracket(&self.basis_vector(i), &yz);
                    let xy = self.bracket_basis(i, j);
                    let xz = self.bracket_basis(i, k);
                    let t1 = self.bracket(&xy, &self.basis_vector(k));
                    let t2 = self.bracket(&xz, &self.basis_vector(j));
                    let ok = lhs
                        .iter()
                        .zip(t1.iter().zip(&t2))
                        .all(|(l, (a, b))| l == &(a - b));
                    if !ok {
                        return Err(Error::IdentityViolation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of all squares [x, x], computed as the span of the symmetrized
    /// basis products [e_i, e_j] + [e_j, e_i] over i ≤ j. For a Lie algebra
    /// this is zero; in general it is a two-sided ideal with [L, I] = 0
    /// whenever the identity holds.
    pub fn squares_ideal(&self) -> Subspace {
        let mut vectors = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut v = self.bracket_basis(i, j);
                let w = self.bracket_basis(j, i);
                for (a, b) in v.iter_mut().zip(&w) {
                    *a += b;
                }
                vectors.push(v);
            }
        }
        Subspace::from_spanning(self.dim, vectors)
    }

    /// Span of brackets [a, b] over a ∈ A, b ∈ B.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for u in a.basis() {
            for w in b.basis() {
                vectors.push(self.bracket(u, w));
            }
        }
        Subspace::from_spanning(self.dim, vectors)
    }

    /// Lower central series L¹ = L, Lᵏ⁺¹ = [Lᵏ, L], listed until it
    /// stabilizes (the last entry repeats or is zero).
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.bracket_span(last, &full);
            let stable = &next == last;
            series.push(next);
            if stable {
                break;
            }
        }
        series
    }

    /// Derived series L⁽¹⁾ = L, L⁽ˢ⁺¹⁾ = [L⁽ˢ⁾, L⁽ˢ⁾].
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.bracket_span(last, last);
            let stable = &next == last;
            series.push(next);
            if stable {
                break;
            }
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    /// Smallest t with Lᵗ = 0 (1-based), for nilpotent algebras.
    pub fn nilindex(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.last().unwrap().is_zero().then(|| series.len())
    }

    /// The two-sided annihilator {x : [x, L] = [L, x] = 0}.
    pub fn annihilator(&self) -> Subspace {
        let mut blocks = Vec::with_capacity(2 * self.dim);
        for j in 0..self.dim {
            blocks.push(self.right_mult(&self.basis_vector(j)).matrix().clone());
            blocks.push(self.left_mult(&self.basis_vector(j)).matrix().clone());
        }
        let stacked = RatMatrix::vstack(&blocks);
        Subspace::from_spanning(self.dim, stacked.nullspace())
    }

    pub fn classify_nilpotent(&self) -> NilpotentClass {
        let series = self.lower_central_series();
        if !series.last().unwrap().is_zero() {
            return NilpotentClass::NotNilpotent;
        }
        let n = self.dim;
        let dim_at = |k: usize| series.get(k - 1).map_or(0, Subspace::dim);
        if (1..=n + 1).all(|k| dim_at(k) == n + 1 - k) {
            return NilpotentClass::NullFiliform;
        }
        if n >= 2 && (2..=n).all(|k| dim_at(k) == n - k) {
            return NilpotentClass::Filiform;
        }
        NilpotentClass::OtherNilpotent
    }

    /// Whether [L, S] = 0 for the given subspace S.
    pub fn is_left_module_trivial(&self, s: &Subspace) -> bool {
        for i in 0..self.dim {
            for v in s.basis() {
                if !self.bracket(&self.basis_vector(i), v).iter().all(Rat::is_zero) {
                    return false;
                }
            }
        }
        true
    }
}

/// A linear endomorphism in basis coordinates: column j holds the image of
/// the j-th basis vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    matrix: RatMatrix,
}

impl LinearMap {
    pub fn new(matrix: RatMatrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "endomorphism must be square");
        LinearMap { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap::new(RatMatrix::identity(dim))
    }

    pub fn zero(dim: usize) -> Self {
        LinearMap::new(RatMatrix::zero(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_vec(v)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: &Rat) -> LinearMap {
        LinearMap::new(self.matrix.scale(c))
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        self.matrix.inverse().map(LinearMap::new)
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    /// Row-major flattening, the coordinate convention for subspaces of
    /// maps (ambient dimension dim²).
    pub fn flatten(&self) -> Vec<Rat> {
        self.matrix.flatten()
    }

    pub fn from_flat(dim: usize, data: Vec<Rat>) -> Self {
        LinearMap::new(RatMatrix::from_flat(dim, dim, data))
    }

    /// Whether D satisfies D([x,y]) = [D(x), y] + [x, D(y)] on all basis
    /// pairs (bilinearity extends it to the whole algebra).
    pub fn is_derivation(&self, a: &Algebra) -> bool {
        self.derivation_defect(a).is_none()
    }

    /// First basis pair (0-based) where the derivation identity fails.
    pub fn derivation_defect(&self, a: &Algebra) -> Option<(usize, usize)> {
        assert_eq!(self.dim(), a.dim(), "map dimension mismatch");
        for i in 0..a.dim() {
            let dei = self.apply(&a.basis_vector(i));
            for j in 0..a.dim() {
                let lhs = self.apply(&a.bracket_basis(i, j));
                let dej = self.apply(&a.basis_vector(j));
                let t1 = a.bracket(&dei, &a.basis_vector(j));
                let t2 = a.bracket(&a.basis_vector(i), &dej);
                let ok = lhs
                    .iter()
                    .zip(t1.iter().zip(&t2))
                    .all(|(l, (x, y))| l == &(x + y));
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Whether φ is multiplicative: φ([x,y]) = [φ(x), φ(y)] on basis pairs.
    pub fn is_multiplicative(&self, a: &Algebra) -> bool {
        self.multiplicative_defect(a).is_none()
    }

    pub fn multiplicative_defect(&self, a: &Algebra) -> Option<(usize, usize)> {
        assert_eq!(self.dim(), a.dim(), "map dimension mismatch");
        for i in 0..a.dim() {
            let fi = self.apply(&a.basis_vector(i));
            for j in 0..a.dim() {
                let lhs = self.apply(&a.bracket_basis(i, j));
                let fj = self.apply(&a.basis_vector(j));
                let rhs = a.bracket(&fi, &fj);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}
