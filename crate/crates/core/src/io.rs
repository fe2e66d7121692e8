//! JSON interchange for algebras and linear maps.
//!
//! Algebra format (indices 1-based, coefficients as `"p/q"` strings):
//!
//! ```json
//! {
//!   "dim": 4,
//!   "basis": ["e1", "e2", "e3", "e4"],
//!   "brackets": [[1, 1, [[2, "1"]]], [2, 1, [[3, "1"]]]]
//! }
//! ```
//!
//! Absent pairs are zero products. Output is canonical: brackets sorted by
//! (i, j), coefficients sorted by basis index, always-string coefficients.
//! Input is slightly more liberal (integer coefficients are accepted).
//! A linear map serializes as a dim×dim row-major matrix of rationals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, LinearMap, SparseVec};
use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<(usize, usize, Vec<(usize, CoeffJson)>)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Str(String),
    Int(i64),
}

impl CoeffJson {
    fn parse(&self) -> Result<Rat, Error> {
        match self {
            CoeffJson::Str(s) => s.parse().map_err(Error::InvalidData),
            CoeffJson::Int(n) => Ok(Rat::int(*n)),
        }
    }
}

/// Canonical JSON for an algebra table.
pub fn algebra_to_json(a: &Algebra) -> String {
    let brackets = a
        .products()
        .iter()
        .map(|(&(i, j), value)| {
            (
                i + 1,
                j + 1,
                value
                    .iter()
                    .map(|(k, c)| (k + 1, CoeffJson::Str(c.to_string())))
                    .collect(),
            )
        })
        .collect();
    let doc = AlgebraJson {
        dim: a.dim(),
        basis: a.basis_names().to_vec(),
        brackets,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializing algebra");
    s.push('\n');
    s
}

/// Parses an algebra table; checks the Leibniz identity unless
/// `skip_identity_check` is set.
pub fn algebra_from_json(json: &str, skip_identity_check: bool) -> Result<Algebra, Error> {
    let doc: AlgebraJson =
        serde_json::from_str(json).map_err(|e| Error::data(format!("malformed algebra JSON: {e}")))?;
    let mut products: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (i, j, value) in &doc.brackets {
        if *i == 0 || *j == 0 {
            return Err(Error::data("bracket indices are 1-based; got 0".to_string()));
        }
        let key = (i - 1, j - 1);
        if products.contains_key(&key) {
            return Err(Error::data(format!("duplicate bracket entry for ({i}, {j})")));
        }
        let mut sparse: SparseVec = Vec::with_capacity(value.len());
        for (k, c) in value {
            if *k == 0 {
                return Err(Error::data("coefficient indices are 1-based; got 0".to_string()));
            }
            let coeff = c.parse()?;
            if coeff.is_zero() {
                continue;
            }
            sparse.push((k - 1, coeff));
        }
        sparse.sort_by_key(|(k, _)| *k);
        if sparse.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::data(format!("duplicate coefficient index in bracket ({i}, {j})")));
        }
        products.insert(key, sparse);
    }
    let algebra = Algebra::new(doc.dim, doc.basis, products)?;
    if !skip_identity_check {
        algebra.check_leibniz()?;
    }
    Ok(algebra)
}

/// A linear map as a row-major rational matrix.
pub fn map_to_json(m: &LinearMap) -> String {
    let rows: Vec<Vec<String>> = (0..m.dim())
        .map(|i| m.matrix().row(i).iter().map(Rat::to_string).collect())
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("serializing map");
    s.push('\n');
    s
}

pub fn map_from_json(json: &str, expect_dim: usize) -> Result<LinearMap, Error> {
    let rows: Vec<Vec<CoeffJson>> =
        serde_json::from_str(json).map_err(|e| Error::data(format!("malformed map JSON: {e}")))?;
    if rows.len() != expect_dim || rows.iter().any(|r| r.len() != expect_dim) {
        return Err(Error::dim(format!(
            "map must be a {expect_dim}x{expect_dim} matrix"
        )));
    }
    let mut m = RatMatrix::zero(expect_dim, expect_dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            m[(i, j)] = c.parse()?;
        }
    }
    Ok(LinearMap::new(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn nf4_round_trip_is_canonical() {
        let nf4 = catalog::make_nf(4).unwrap();
        let json = algebra_to_json(&nf4);
        let back = algebra_from_json(&json, false).unwrap();
        assert_eq!(back, nf4);
        assert_eq!(algebra_to_json(&back), json);
    }

    #[test]
    fn example_format_parses() {
        let json = r#"{
            "dim": 4,
            "basis": ["e1", "e2", "e3", "e4"],
            "brackets": [
                [1, 1, [[2, "1"]]],
                [2, 1, [[3, "1"]]],
                [3, 1, [[4, "1"]]]
            ]
        }"#;
        let a = algebra_from_json(json, false).unwrap();
        assert_eq!(a, catalog::make_nf(4).unwrap());
    }

    #[test]
    fn integer_coefficients_accepted_on_input() {
        let json = r#"{"dim": 2, "basis": ["e1", "e2"], "brackets": [[1, 1, [[2, 1]]]]}"#;
        let a = algebra_from_json(json, false).unwrap();
        assert_eq!(a, catalog::make_nf(2).unwrap());
    }

    #[test]
    fn identity_violation_reported_and_skippable() {
        let json = r#"{"dim": 2, "basis": ["e1", "e2"], "brackets": [[1, 2, [[2, "1"]]]]}"#;
        match algebra_from_json(json, false) {
            Err(Error::IdentityViolation { i, j, k }) => assert_eq!((i, j, k), (1, 1, 2)),
            other => panic!("expected identity violation, got {other:?}"),
        }
        assert!(algebra_from_json(json, true).is_ok());
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(algebra_from_json("{", false).is_err());
        // Basis list shorter than dim.
        let json = r#"{"dim": 3, "basis": ["e1"], "brackets": []}"#;
        assert!(algebra_from_json(json, false).is_err());
        // Out-of-range index.
        let json = r#"{"dim": 2, "basis": ["e1", "e2"], "brackets": [[1, 3, [[1, "1"]]]]}"#;
        assert!(algebra_from_json(json, false).is_err());
        // 0-based input.
        let json = r#"{"dim": 2, "basis": ["e1", "e2"], "brackets": [[0, 1, [[1, "1"]]]]}"#;
        assert!(algebra_from_json(json, false).is_err());
    }

    #[test]
    fn map_round_trip() {
        let m = LinearMap::new(RatMatrix::from_i64(&[&[1, 2], &[0, -1]]));
        let json = map_to_json(&m);
        let back = map_from_json(&json, 2).unwrap();
        assert_eq!(back, m);
        assert!(map_from_json(&json, 3).is_err());
    }
}
