//! Derivation spaces computed exactly as the kernel of the linear system
//! D([x, y]) = [D(x), y] + [x, D(y)] over all basis pairs, plus the
//! structural decompositions of Der(L) for the simple catalog algebras
//! and the rigidity (point-stabilizer) computations built on them.

use crate::algebra::{Algebra, LinearMap};
use crate::catalog::SimpleDecomposition;
use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;
use crate::linalg::subspace::Subspace;

/// The derivation space of an algebra: a canonical (echelon) basis of
/// maps together with the subspace of flattened matrices in ℚ^(n²).
#[derive(Clone, Debug)]
pub struct DerivationBasis {
    pub space: Subspace,
    pub maps: Vec<LinearMap>,
}

impl DerivationBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }
}

/// Coefficient matrix of the derivation conditions: one row per
/// (basis pair, coordinate), one column per entry of the unknown matrix
/// (row-major).
fn derivation_equations(a: &Algebra) -> RatMatrix {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let b_ij = a.bracket_basis(i, j);
            for c in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                // D([e_i, e_j])_c picks up M[c][s] with weight ([e_i,e_j])_s.
                for (s, w) in b_ij.iter().enumerate() {
                    if !w.is_zero() {
                        row[c * n + s] += w;
                    }
                }
                // -[D(e_i), e_j]_c: D(e_i) = Σ_k M[k][i] e_k.
                for k in 0..n {
                    let w = &a.bracket_basis(k, j)[c];
                    if !w.is_zero() {
                        row[k * n + i] -= w;
                    }
                }
                // -[e_i, D(e_j)]_c.
                for k in 0..n {
                    let w = &a.bracket_basis(i, k)[c];
                    if !w.is_zero() {
                        row[k * n + j] -= w;
                    }
                }
                rows.push(row);
            }
        }
    }
    RatMatrix::from_rows(rows)
}

/// Computes Der(L) exactly. The returned basis is canonical: it is read
/// off the reduced echelon form of the solution space, so equal inputs
/// give identical bases.
pub fn compute_der(a: &Algebra) -> DerivationBasis {
    let n = a.dim();
    let kernel = derivation_equations(a).nullspace();
    let space = Subspace::from_spanning(n * n, kernel);
    let maps = space
        .basis()
        .iter()
        .map(|flat| LinearMap::from_flat(n, flat.clone()))
        .collect();
    DerivationBasis { space, maps }
}

/// The span of the right multiplications R_a(x) = [x, a], as a subspace
/// of flattened matrices.
pub fn inner_derivations(a: &Algebra) -> Subspace {
    let n = a.dim();
    let vectors = (0..n)
        .map(|j| a.right_mult(&a.basis_vector(j)).flatten())
        .collect();
    Subspace::from_spanning(n * n, vectors)
}

/// Projection of L = G ∔ I onto I along G, as an endomorphism. It is a
/// derivation because G is a subalgebra and [L, I] = 0.
pub fn pr_i(dec: &SimpleDecomposition) -> LinearMap {
    let n = dec.algebra.dim();
    let mut m = RatMatrix::zero(n, n);
    for &i in &dec.i_indices {
        m[(i, i)] = Rat::one();
    }
    LinearMap::new(m)
}

/// The module isomorphism θ: G → I extended by zero on I, checked to be
/// a derivation of the ambient algebra.
pub fn theta_extended(dec: &SimpleDecomposition) -> Result<LinearMap, Error> {
    let theta = dec
        .theta
        .clone()
        .ok_or_else(|| Error::data("decomposition carries no module isomorphism"))?;
    if !theta.is_derivation(&dec.algebra) {
        return Err(Error::data(
            "extended module isomorphism fails the derivation conditions",
        ));
    }
    Ok(theta)
}

/// Comparison of Der(L) against its structural description
/// {R_a} ⊕ ℚ·pr_I (⊕ ℚ·θ when G ≅ I).
#[derive(Clone, Debug, serde::Serialize)]
pub struct DecompositionReport {
    pub der_dim: usize,
    pub inner_dim: usize,
    pub uses_theta: bool,
    pub constructed_dim: usize,
    /// The summands intersect trivially.
    pub direct: bool,
    /// The constructed space equals Der(L).
    pub equal: bool,
}

pub fn verify_decomposition(dec: &SimpleDecomposition) -> Result<DecompositionReport, Error> {
    let a = &dec.algebra;
    let n = a.dim();
    let der = compute_der(a);
    let inner = inner_derivations(a);

    let projection = pr_i(dec);
    if !projection.is_derivation(a) {
        return Err(Error::data("pr_I fails the derivation conditions"));
    }
    let mut extra = vec![projection.flatten()];
    let uses_theta = dec.theta.is_some();
    if uses_theta {
        extra.push(theta_extended(dec)?.flatten());
    }
    let extra_count = extra.len();
    let constructed = inner.sum(&Subspace::from_spanning(n * n, extra))?;

    let direct = constructed.dim() == inner.dim() + extra_count;
    let equal = constructed == der.space;
    Ok(DecompositionReport {
        der_dim: der.dim(),
        inner_dim: inner.dim(),
        uses_theta,
        constructed_dim: constructed.dim(),
        direct,
        equal,
    })
}

/// Within a space of flattened endomorphisms, the subspace of maps
/// vanishing at `point`.
pub fn stabilizer_at(maps: &Subspace, point: &[Rat]) -> Subspace {
    let n = point.len();
    assert_eq!(maps.ambient_dim(), n * n, "maps must act on the point's space");
    let k = maps.dim();
    if k == 0 {
        return Subspace::zero(n * n);
    }
    // Column b holds the value at `point` of the b-th basis map.
    let mut eval = RatMatrix::zero(n, k);
    for (b, flat) in maps.basis().iter().enumerate() {
        let value = LinearMap::from_flat(n, flat.clone()).apply(point);
        for (r, c) in value.into_iter().enumerate() {
            eval[(r, b)] = c;
        }
    }
    let combos = eval.nullspace();
    let vectors = combos
        .iter()
        .map(|coeffs| {
            let mut v = vec![Rat::zero(); n * n];
            for (b, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (idx, entry) in maps.basis()[b].iter().enumerate() {
                    v[idx] += &(c * entry);
                }
            }
            v
        })
        .collect();
    Subspace::from_spanning(n * n, vectors)
}

/// Derivations vanishing at the rigidity point h₀ + i₀. For the simple
/// catalog algebras this space is zero: a derivation is pinned down by
/// its value at the single point.
pub fn rigidity_stabilizer(dec: &SimpleDecomposition) -> Subspace {
    let der = compute_der(&dec.algebra);
    stabilizer_at(&der.space, &dec.rigidity_point())
}

/// The derivation of NFₙ determined by its value Σ αᵢ eᵢ at e₁:
/// D(e_j) = j α₁ e_j + Σ_{i=2}^{n-j+1} α_i e_{j+i-1}.
pub fn nf_derivation_from_e1(n: usize, alpha: &[Rat]) -> Result<LinearMap, Error> {
    if alpha.len() != n {
        return Err(Error::dim(format!(
            "value at e1 needs {n} coordinates, got {}",
            alpha.len()
        )));
    }
    let mut m = RatMatrix::zero(n, n);
    for j in 1..=n {
        m[(j - 1, j - 1)] = &Rat::int(j as i64) * &alpha[0];
        for i in 2..=n + 1 - j {
            m[(j + i - 2, j - 1)] = alpha[i - 1].clone();
        }
    }
    Ok(LinearMap::new(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn nf_derivation_dims_match_the_closed_form() {
        for n in 2..=8 {
            let a = catalog::make_nf(n).unwrap();
            let der = compute_der(&a);
            assert_eq!(der.dim(), n, "dim Der(NF{n})");
            // The closed-form maps span exactly Der.
            let mut vectors = Vec::new();
            for i in 0..n {
                let d = nf_derivation_from_e1(n, &a.basis_vector(i)).unwrap();
                assert!(d.is_derivation(&a), "closed form at alpha = e{}", i + 1);
                vectors.push(d.flatten());
            }
            let span = Subspace::from_spanning(n * n, vectors);
            assert_eq!(span, der.space);
        }
    }

    #[test]
    fn every_derivation_space_contains_the_right_multiplications() {
        for name in catalog::catalog_names() {
            let a = catalog::by_name(name).unwrap();
            let der = compute_der(&a);
            let inner = inner_derivations(&a);
            assert!(der.space.contains(&inner).unwrap(), "{name}");
        }
    }

    #[test]
    fn derivation_basis_maps_are_derivations() {
        for name in ["nf5", "f1-n5-sample", "simple-sl2-v3", "example-6-4"] {
            let a = catalog::by_name(name).unwrap();
            for d in compute_der(&a).maps {
                assert!(d.is_derivation(&a), "{name}");
            }
        }
    }

    #[test]
    fn simple_decompositions_are_direct_and_exhaustive() {
        for m in 2..=5 {
            let dec = catalog::make_simple_sl2(m).unwrap();
            let report = verify_decomposition(&dec).unwrap();
            assert!(report.direct, "m = {m}");
            assert!(report.equal, "m = {m}");
            assert_eq!(report.inner_dim, 3, "m = {m}");
            let expected = if m == 3 { 5 } else { 4 };
            assert_eq!(report.der_dim, expected, "m = {m}");
        }
        let report = verify_decomposition(&catalog::example_6_4_decomposition()).unwrap();
        assert!(report.direct && report.equal);
        assert_eq!(report.der_dim, 5);
    }

    #[test]
    fn rigidity_stabilizers_vanish_on_simple_algebras() {
        for name in [
            "simple-sl2-v2",
            "simple-sl2-v3",
            "simple-sl2-v4",
            "simple-sl2-v5",
            "example-6-4",
        ] {
            let dec = catalog::decomposition_by_name(name).unwrap();
            assert_eq!(rigidity_stabilizer(&dec).dim(), 0, "{name}");
        }
    }

    #[test]
    fn plain_sl2_always_stabilizes_some_direction() {
        // Contrast case: on the Lie algebra sl2 every point has a nonzero
        // derivation vanishing on it, so no single point pins derivations.
        let a = catalog::make_sl2();
        let der = compute_der(&a);
        assert_eq!(der.dim(), 3);
        let h = a.basis_vector(0);
        assert!(stabilizer_at(&der.space, &h).dim() >= 1);
        let generic: Vec<Rat> = vec![Rat::one(), Rat::one(), Rat::one()];
        assert!(stabilizer_at(&der.space, &generic).dim() >= 1);
    }

    #[test]
    fn stabilizer_drops_exactly_the_maps_killing_the_point() {
        // In the full matrix space, maps killing a fixed nonzero point
        // form a codimension-n subspace.
        let n = 3;
        let full = Subspace::full(n * n);
        let point = vec![Rat::one(), Rat::int(2), Rat::zero()];
        let stab = stabilizer_at(&full, &point);
        assert_eq!(stab.dim(), n * n - n);
    }

    #[test]
    fn theta_extension_is_a_derivation_exactly_when_present() {
        let dec3 = catalog::make_simple_sl2(3).unwrap();
        assert!(theta_extended(&dec3).unwrap().is_derivation(&dec3.algebra));
        let dec4 = catalog::make_simple_sl2(4).unwrap();
        assert!(theta_extended(&dec4).is_err());
    }

    #[test]
    fn projection_onto_squares_is_an_outer_derivation() {
        let dec = catalog::make_simple_sl2(4).unwrap();
        let p = pr_i(&dec);
        assert!(p.is_derivation(&dec.algebra));
        let inner = inner_derivations(&dec.algebra);
        assert!(!inner.member(&p.flatten()).unwrap());
    }
}
