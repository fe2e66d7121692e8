//! Canonical subspaces of ℚⁿ.
//!
//! A `Subspace` stores its basis as the nonzero rows of a reduced row
//! echelon form, so two equal subspaces have byte-identical bases and
//! subspace equality is plain structural equality.

use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    /// Rows of an RREF matrix, none of them zero.
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_spanning(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| {
                    let mut v = vec![Rat::zero(); ambient_dim];
                    v[i] = Rat::one();
                    v
                })
                .collect(),
        )
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Rat>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "spanning vector length mismatch"
        );
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let (r, pivots) = RatMatrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Exact membership by residual after reduction against the echelon
    /// basis.
    pub fn member(&self, v: &[Rat]) -> Result<bool, Error> {
        if v.len() != self.ambient_dim {
            return Err(Error::dim(format!(
                "member: vector length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut residual = v.to_vec();
        for b in &self.basis {
            let lead = b.iter().position(|x| !x.is_zero()).expect("zero basis row");
            if residual[lead].is_zero() {
                continue;
            }
            let factor = &residual[lead] / &b[lead];
            for (r, x) in residual.iter_mut().zip(b) {
                let delta = &factor * x;
                *r -= &delta;
            }
        }
        Ok(residual.iter().all(Rat::is_zero))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_same_ambient(other, "sum")?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Subspace::from_spanning(self.ambient_dim, vectors))
    }

    /// Intersection via the nullspace of `[Aᵀ | -Bᵀ]`: a combination of
    /// A-basis vectors equal to a combination of B-basis vectors.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_same_ambient(other, "intersect")?;
        let a = self.dim();
        let b = other.dim();
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let mut m = RatMatrix::zero(self.ambient_dim, a + b);
        for (j, vec) in self.basis.iter().enumerate() {
            for (i, x) in vec.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        for (j, vec) in other.basis.iter().enumerate() {
            for (i, x) in vec.iter().enumerate() {
                m[(i, a + j)] = -x;
            }
        }
        let vectors = m
            .nullspace()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![Rat::zero(); self.ambient_dim];
                for (j, c) in coeffs[..a].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (i, x) in self.basis[j].iter().enumerate() {
                        v[i] += &(c * x);
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_spanning(self.ambient_dim, vectors))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, Error> {
        self.check_same_ambient(other, "contains")?;
        for v in &other.basis {
            if !self.member(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_same_ambient(&self, other: &Subspace, op: &str) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::dim(format!(
                "{op}: ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        v
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_spanning(
            n,
            vs.iter()
                .map(|v| v.iter().map(|&x| Rat::int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn canonical_basis_is_input_order_independent() {
        let a = span(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = span(3, &[&[0, 1, 1], &[1, 2, 1], &[1, 1, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersect_coordinate_planes() {
        let a = Subspace::from_spanning(3, vec![e(3, 0), e(3, 1)]);
        let b = Subspace::from_spanning(3, vec![e(3, 1), e(3, 2)]);
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet, Subspace::from_spanning(3, vec![e(3, 1)]));
    }

    #[test]
    fn sum_and_intersection_dims_are_modular() {
        let a = span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let b = span(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let s = a.sum(&b).unwrap();
        let m = a.intersect(&b).unwrap();
        assert_eq!(s.dim() + m.dim(), a.dim() + b.dim());
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn member_checks_exactly() {
        let s = span(3, &[&[1, 2, 0], &[0, 0, 1]]);
        assert!(s.member(&[Rat::int(2), Rat::int(4), Rat::new(-1, 3)]).unwrap());
        assert!(!s.member(&[Rat::int(1), Rat::int(0), Rat::int(0)]).unwrap());
        assert!(s.member(&[Rat::zero(), Rat::zero(), Rat::zero()]).unwrap());
    }

    #[test]
    fn member_rejects_wrong_dimension() {
        let s = span(3, &[&[1, 0, 0]]);
        assert!(s.member(&[Rat::one()]).is_err());
    }

    #[test]
    fn zero_and_full() {
        let z = Subspace::zero(4);
        let f = Subspace::full(4);
        assert_eq!(z.dim(), 0);
        assert_eq!(f.dim(), 4);
        assert!(f.contains(&z).unwrap());
        assert_eq!(f.intersect(&z).unwrap(), z);
        assert_eq!(f.sum(&z).unwrap(), f);
    }
}
