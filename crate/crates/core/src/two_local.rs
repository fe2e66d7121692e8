//! 2-local derivations: maps Δ (not assumed linear) such that every PAIR
//! of points admits a single derivation agreeing with Δ at both. The
//! construction here produces, on any algebra with dim [L,L] ≤ n - 2 and
//! a nonzero annihilator, a 2-local derivation that is not additive —
//! hence not a derivation — together with the pairwise witnesses. The
//! null-filiform contrast shows why the hypotheses matter: there a
//! derivation is pinned by its value at e₁, so 2-local rigidity holds.

use crate::algebra::{Algebra, LinearMap};
use crate::derivations::{compute_der, nf_derivation_from_e1};
use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;
use crate::sample;

/// The degree-1 homogeneous but nonlinear functional f(λ₁, λ₂) = λ₁²/λ₂
/// (zero when λ₂ = 0) that drives the construction.
pub fn f_hom(l1: &Rat, l2: &Rat) -> Rat {
    if l2.is_zero() {
        Rat::zero()
    } else {
        &(l1 * l1) / l2
    }
}

/// A 2-local derivation Δ(x) = f(λ₁(x), λ₂(x)) z, where λ₁, λ₂ are the
/// first two coordinates along a basis-vector complement V of [L, L] and
/// z is a nonzero annihilator element.
#[derive(Clone, Debug)]
pub struct TwoLocalMap {
    pub algebra: Algebra,
    pub z: Vec<Rat>,
    /// Ambient indices of the standard basis vectors spanning V.
    pub v_indices: Vec<usize>,
    /// Inverse of the column basis ([L,L] echelon basis, then V): its
    /// rows after the first `l2_dim` read off the V-coordinates.
    coord: RatMatrix,
    l2_dim: usize,
}

impl TwoLocalMap {
    /// The two distinguished V-coordinates of a point.
    pub fn lambda(&self, x: &[Rat]) -> (Rat, Rat) {
        let coords = self.coord.mul_vec(x);
        (
            coords[self.l2_dim].clone(),
            coords[self.l2_dim + 1].clone(),
        )
    }

    /// Δ(x) = x-dependent multiple of z. Deliberately not a LinearMap:
    /// the whole point is that this map fails additivity.
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        let (l1, l2) = self.lambda(x);
        let c = f_hom(&l1, &l2);
        self.z.iter().map(|w| &c * w).collect()
    }

    /// The derivation δ_{a,b}(x) = (a λ₁(x) + b λ₂(x)) z.
    pub fn witness(&self, a: &Rat, b: &Rat) -> LinearMap {
        let n = self.algebra.dim();
        let mut m = RatMatrix::zero(n, n);
        for r in 0..n {
            if self.z[r].is_zero() {
                continue;
            }
            for c in 0..n {
                let functional = &(a * &self.coord[(self.l2_dim, c)])
                    + &(b * &self.coord[(self.l2_dim + 1, c)]);
                m[(r, c)] = &self.z[r] * &functional;
            }
        }
        LinearMap::new(m)
    }

    /// Solves the 2×2 system pinning a witness to the pair (x, y):
    /// a λ₁ + b λ₂ must reproduce f(λ₁, λ₂) at both points. Homogeneity
    /// of f makes the system consistent for every pair.
    pub fn witness_for(&self, x: &[Rat], y: &[Rat]) -> Result<LinearMap, Error> {
        let (x1, x2) = self.lambda(x);
        let (y1, y2) = self.lambda(y);
        let rows = vec![vec![x1.clone(), x2.clone()], vec![y1.clone(), y2.clone()]];
        let rhs = vec![f_hom(&x1, &x2), f_hom(&y1, &y2)];
        let solution = RatMatrix::from_rows(rows)
            .solve(&rhs)?
            .ok_or_else(|| Error::data("witness system is inconsistent"))?;
        Ok(self.witness(&solution.particular[0], &solution.particular[1]))
    }
}

/// Builds the 2-local non-derivation, checking the hypotheses:
/// dim [L,L] ≤ n - 2 (so V has at least two directions) and Ann(L) ≠ 0
/// (z is its first echelon basis vector).
pub fn build_two_local(a: &Algebra) -> Result<TwoLocalMap, Error> {
    build_with_z_from(a, false)
}

pub(crate) fn build_with_z_from(a: &Algebra, z_in_l2: bool) -> Result<TwoLocalMap, Error> {
    let n = a.dim();
    let l2 = a
        .lower_central_series()
        .get(1)
        .cloned()
        .unwrap_or_else(|| crate::linalg::subspace::Subspace::zero(n));
    if l2.dim() + 2 > n {
        return Err(Error::hypothesis(
            "dim [L,L] <= n - 2",
            format!("dim [L,L] = {} in dimension {n}", l2.dim()),
        ));
    }
    let ann = a.annihilator();
    let z_space = if z_in_l2 { ann.intersect(&l2)? } else { ann };
    if z_space.dim() == 0 {
        let which = if z_in_l2 {
            "Ann(L) ∩ [L,L] is nonzero"
        } else {
            "Ann(L) is nonzero"
        };
        return Err(Error::hypothesis(which, "the space is zero"));
    }
    let z = z_space.basis()[0].clone();

    // Standard basis vectors complementing [L,L]: the non-pivot columns
    // of its echelon basis.
    let mut is_pivot = vec![false; n];
    for row in l2.basis() {
        let lead = row.iter().position(|c| !c.is_zero()).expect("echelon row");
        is_pivot[lead] = true;
    }
    let v_indices: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();

    let mut columns = Vec::with_capacity(n);
    for row in l2.basis() {
        columns.push(row.clone());
    }
    for &i in &v_indices {
        columns.push(a.basis_vector(i));
    }
    let basis_matrix = RatMatrix::from_cols(&columns);
    let coord = basis_matrix
        .inverse()
        .expect("echelon basis plus complement is invertible");

    Ok(TwoLocalMap {
        algebra: a.clone(),
        z,
        v_indices,
        coord,
        l2_dim: l2.dim(),
    })
}

/// Result of checking the 2-local property over many pairs.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PairCheck {
    pub pairs: usize,
    pub failures: usize,
}

/// Verifies the 2-local property on all ordered basis pairs plus seeded
/// random pairs up to `pairs` total: each pair must admit a witness that
/// is a derivation and matches Δ at both points.
pub fn verify_two_local_derivation(
    map: &TwoLocalMap,
    seed: u64,
    pairs: usize,
) -> Result<PairCheck, Error> {
    let n = map.algebra.dim();
    let mut tested = 0;
    let mut failures = 0;
    let mut rng = sample::seeded_rng(seed);
    let check = |x: &[Rat], y: &[Rat], map: &TwoLocalMap| -> Result<bool, Error> {
        let witness = map.witness_for(x, y)?;
        Ok(witness.is_derivation(&map.algebra)
            && witness.apply(x) == map.apply(x)
            && witness.apply(y) == map.apply(y))
    };
    for i in 0..n {
        for j in 0..n {
            let x = map.algebra.basis_vector(i);
            let y = map.algebra.basis_vector(j);
            tested += 1;
            if !check(&x, &y, map)? {
                failures += 1;
            }
        }
    }
    while tested < pairs {
        let x = sample::rat_vector(&mut rng, n);
        let y = sample::rat_vector(&mut rng, n);
        tested += 1;
        if !check(&x, &y, map)? {
            failures += 1;
        }
    }
    Ok(PairCheck {
        pairs: tested,
        failures,
    })
}

/// A concrete additivity failure: Δ(x + y) ≠ Δ(x) + Δ(y).
#[derive(Clone, Debug, serde::Serialize)]
pub struct NonlinearityWitness {
    pub x: Vec<Rat>,
    pub y: Vec<Rat>,
    pub at_sum: Vec<Rat>,
    pub sum_of_values: Vec<Rat>,
    pub additive: bool,
}

/// Evaluates Δ on the first two complement directions and their sum:
/// Δ(v₁) = Δ(v₂) = 0 but Δ(v₁ + v₂) = z ≠ 0.
pub fn nonlinearity_witness(map: &TwoLocalMap) -> NonlinearityWitness {
    let x = map.algebra.basis_vector(map.v_indices[0]);
    let y = map.algebra.basis_vector(map.v_indices[1]);
    let sum: Vec<Rat> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
    let at_sum = map.apply(&sum);
    let vx = map.apply(&x);
    let vy = map.apply(&y);
    let sum_of_values: Vec<Rat> = vx.iter().zip(&vy).map(|(a, b)| a + b).collect();
    let additive = at_sum == sum_of_values;
    NonlinearityWitness {
        x,
        y,
        at_sum,
        sum_of_values,
        additive,
    }
}

/// The null-filiform contrast: Der(NFₙ) has dimension n, matches the
/// closed form reconstructing D from D(e₁), and evaluation at e₁ is
/// injective on it — so a 2-local derivation, agreeing with a derivation
/// at e₁ and any other point, is that derivation.
#[derive(Clone, Debug, serde::Serialize)]
pub struct NfRigidityReport {
    pub n: usize,
    pub der_dim: usize,
    pub closed_form_spans: bool,
    pub evaluation_injective: bool,
}

pub fn nf_rigidity_check(n: usize) -> Result<NfRigidityReport, Error> {
    let a = crate::catalog::make_nf(n)?;
    let der = compute_der(&a);

    let mut vectors = Vec::new();
    let mut all_derivations = true;
    for i in 0..n {
        let d = nf_derivation_from_e1(n, &a.basis_vector(i))?;
        all_derivations &= d.is_derivation(&a);
        vectors.push(d.flatten());
    }
    let span = crate::linalg::subspace::Subspace::from_spanning(n * n, vectors);
    let closed_form_spans = all_derivations && span == der.space;

    // Evaluation at e1 as a matrix on the derivation basis.
    let mut eval = RatMatrix::zero(n, der.dim());
    let e1 = a.basis_vector(0);
    for (b, d) in der.maps.iter().enumerate() {
        for (r, c) in d.apply(&e1).into_iter().enumerate() {
            eval[(r, b)] = c;
        }
    }
    let evaluation_injective = eval.rank() == der.dim();

    Ok(NfRigidityReport {
        n,
        der_dim: der.dim(),
        closed_form_spans,
        evaluation_injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn homogeneous_functional_values() {
        assert_eq!(f_hom(&Rat::int(3), &Rat::int(2)), Rat::new(9, 2));
        assert_eq!(f_hom(&Rat::int(3), &Rat::zero()), Rat::zero());
        assert_eq!(f_hom(&Rat::zero(), &Rat::int(5)), Rat::zero());
        // Degree-1 homogeneity away from the degenerate locus.
        let t = Rat::new(7, 3);
        let lhs = f_hom(&(&Rat::int(4) * &t), &(&Rat::int(5) * &t));
        assert_eq!(lhs, &t * &f_hom(&Rat::int(4), &Rat::int(5)));
    }

    #[test]
    fn abelian_three_uses_e1_and_the_full_complement() {
        let a = catalog::make_abelian(3);
        let map = build_two_local(&a).unwrap();
        assert_eq!(map.z, a.basis_vector(0));
        assert_eq!(map.v_indices, vec![0, 1, 2]);
        // Δ(e1 + 2 e2) = (1/2) z.
        let mut x = vec![Rat::one(), Rat::int(2), Rat::zero()];
        assert_eq!(map.apply(&x), vec![Rat::new(1, 2), Rat::zero(), Rat::zero()]);
        // On the λ2 = 0 locus the value is zero.
        x[1] = Rat::zero();
        assert!(map.apply(&x).iter().all(Rat::is_zero));
    }

    #[test]
    fn filiform_candidates_pass_the_pair_check() {
        for name in ["f1-n5-zero", "f2-n5-zero", "f3-n5-zero", "abelian-3"] {
            let a = catalog::by_name(name).unwrap();
            let map = build_two_local(&a).unwrap();
            let check = verify_two_local_derivation(&map, sample::DEFAULT_SEED, 500).unwrap();
            assert_eq!(check.failures, 0, "{name}");
            assert!(check.pairs >= 500, "{name}");
            let witness = nonlinearity_witness(&map);
            assert!(!witness.additive, "{name}");
            assert!(witness.at_sum.iter().any(|c| !c.is_zero()), "{name}");
        }
    }

    #[test]
    fn candidate_slate_matches_certificates() {
        for (name, algebra, cert) in catalog::theorem37_candidates() {
            assert!(cert.qualifies, "{name}");
            assert!(build_two_local(&algebra).is_ok(), "{name}");
        }
    }

    #[test]
    fn null_filiform_fails_the_codimension_hypothesis() {
        let a = catalog::make_nf(5).unwrap();
        match build_two_local(&a) {
            Err(Error::HypothesisViolated { which, .. }) => {
                assert!(which.contains("n - 2"));
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn witnesses_are_outer_products_killing_the_derived_algebra() {
        let a = catalog::by_name("f1-n5-zero").unwrap();
        let map = build_two_local(&a).unwrap();
        let witness = map.witness(&Rat::int(3), &Rat::int(-2));
        assert!(witness.is_derivation(&a));
        // The witness kills [L,L] = span{e3, e4, e5}.
        for i in 2..5 {
            assert!(witness
                .apply(&a.basis_vector(i))
                .iter()
                .all(Rat::is_zero));
        }
    }

    #[test]
    fn pair_system_is_consistent_on_proportional_pairs() {
        let a = catalog::make_abelian(3);
        let map = build_two_local(&a).unwrap();
        let x = vec![Rat::one(), Rat::int(2), Rat::zero()];
        let y = vec![Rat::int(3), Rat::int(6), Rat::zero()];
        let witness = map.witness_for(&x, &y).unwrap();
        assert_eq!(witness.apply(&x), map.apply(&x));
        assert_eq!(witness.apply(&y), map.apply(&y));
    }

    #[test]
    fn nf_rigidity_holds_through_dimension_eight() {
        for n in 2..=8 {
            let report = nf_rigidity_check(n).unwrap();
            assert_eq!(report.der_dim, n);
            assert!(report.closed_form_spans, "n = {n}");
            assert!(report.evaluation_injective, "n = {n}");
        }
    }
}
