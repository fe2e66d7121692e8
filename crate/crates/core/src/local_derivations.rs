//! Local derivations: maps Δ with Δ(x) = D_x(x) for some derivation D_x
//! at every single point. Membership is certified from two sides. An
//! outer polynomial bound ("superspace") contains every local derivation
//! and is computed exactly from vanishing minors; when it collapses onto
//! Der(L), local derivations are derivations. In the opposite direction,
//! a concrete non-derivation is certified local by exhibiting a witness
//! derivation at every sampled point, with the witness chosen uniformly
//! by a closed-form selector.

use crate::algebra::{Algebra, LinearMap};
use crate::catalog::{make_filiform, FiliformParams};
use crate::derivations::{compute_der, DerivationBasis};
use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;
use crate::linalg::subspace::Subspace;
use crate::poly::{
    minor_constraints, rank_drop_constraints, MultiPoly, PolyMatrix, UnknownColumn,
};
use crate::sample;

/// Largest algebra dimension accepted by the superspace computation; the
/// minor enumeration grows combinatorially beyond it.
pub const SUPERSPACE_MAX_DIM: usize = 10;

/// The superspace S ⊇ {local derivations} of flattened matrices: all Δ
/// such that every (r+1)×(r+1) minor of [M(x) | Δ(x)] vanishes
/// identically, where M(x) stacks a derivation basis evaluated at a
/// symbolic point and r is its generic rank. Membership of Δ means
/// Δ(x) ∈ Der(L)·x pointwise wherever M(x) has full generic rank, and
/// every genuine local derivation lies in S.
pub fn locder_superspace(a: &Algebra) -> Result<(Subspace, DerivationBasis), Error> {
    let n = a.dim();
    if n > SUPERSPACE_MAX_DIM {
        return Err(Error::CapabilityBound {
            max: SUPERSPACE_MAX_DIM,
            got: n,
        });
    }
    let der = compute_der(a);
    let k = der.dim();

    // M(x): column b is the b-th basis derivation applied to x.
    let mut m = PolyMatrix::zero(n, k, n);
    for (b, d) in der.maps.iter().enumerate() {
        for r in 0..n {
            let mut entry = MultiPoly::zero(n);
            for c in 0..n {
                let w = &d.matrix()[(r, c)];
                if !w.is_zero() {
                    entry = entry.add(&MultiPoly::var(n, c).scale(w));
                }
            }
            m.set(r, b, entry);
        }
    }
    let r = m.generic_rank();

    // The unknown column Δ(x): row r holds Σ_c Δ[r][c] x_c with the n²
    // entries of Δ as unknowns, flattened row-major.
    let coeffs = (0..n)
        .map(|row| {
            (0..n)
                .map(|c| (row * n + c, MultiPoly::var(n, c)))
                .collect()
        })
        .collect();
    let column = UnknownColumn {
        unknowns: n * n,
        coeffs,
    };
    let constraints = minor_constraints(&m, &column, r);
    let mut space = Subspace::from_spanning(n * n, constraints.nullspace());

    // The identical-vanishing system only sees generic points; when it
    // stalls strictly above Der, cut further along the locus where M(x)
    // loses rank. A local derivation stays in the column span at those
    // points too, so the extra equations never remove one.
    if space != der.space {
        if let Some(extra) = rank_drop_constraints(&m, &column, r) {
            let cut = Subspace::from_spanning(n * n, extra.nullspace());
            space = space.intersect(&cut)?;
        }
    }

    debug_assert!(space.contains(&der.space).unwrap_or(false));
    Ok((space, der))
}

/// Chooses the witness derivation for the filiform non-derivation Δ at a
/// point: the generic formula `generic + t·corrector` with
/// t = -x[numerator_index] / g(x) when the functional g is nonzero at the
/// point, and the corrector alone on the stratum g(x) = 0.
#[derive(Clone, Debug)]
pub struct WitnessSelector {
    pub generic: LinearMap,
    pub corrector: LinearMap,
    /// Coefficients of the linear functional g.
    pub functional: Vec<Rat>,
    /// Coordinate whose value is divided by g(x) in the generic branch.
    pub numerator_index: usize,
}

impl WitnessSelector {
    pub fn functional_at(&self, x: &[Rat]) -> Rat {
        self.functional
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (c, v)| acc + &(c * v))
    }

    pub fn pick(&self, x: &[Rat]) -> (LinearMap, &'static str) {
        let g = self.functional_at(x);
        if g.is_zero() {
            (self.corrector.clone(), "degenerate")
        } else {
            let t = -(&x[self.numerator_index] / &g);
            (self.generic.add(&self.corrector.scale(&t)), "generic")
        }
    }
}

/// Outcome of checking one sample point of a local-derivation candidate.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SampleRecord {
    pub point: Vec<Rat>,
    pub branch: &'static str,
    pub witness_is_derivation: bool,
    pub witness_matches_at_point: bool,
}

impl SampleRecord {
    pub fn ok(&self) -> bool {
        self.witness_is_derivation && self.witness_matches_at_point
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct LocalCheck {
    pub passed: bool,
    pub generic_points: usize,
    pub degenerate_points: usize,
    pub records: Vec<SampleRecord>,
}

/// Certifies Δ as a local derivation on the given sample points: at each
/// point the selector's witness must be a derivation agreeing with Δ
/// there.
pub fn certify_local(
    a: &Algebra,
    delta: &LinearMap,
    selector: &WitnessSelector,
    points: &[Vec<Rat>],
) -> LocalCheck {
    let mut records = Vec::with_capacity(points.len());
    let mut generic = 0;
    let mut degenerate = 0;
    for x in points {
        let (witness, branch) = selector.pick(x);
        if branch == "generic" {
            generic += 1;
        } else {
            degenerate += 1;
        }
        records.push(SampleRecord {
            point: x.clone(),
            branch,
            witness_is_derivation: witness.is_derivation(a),
            witness_matches_at_point: witness.apply(x) == delta.apply(x),
        });
    }
    LocalCheck {
        passed: records.iter().all(SampleRecord::ok),
        generic_points: generic,
        degenerate_points: degenerate,
        records,
    }
}

/// The filiform local-non-derivation package: Δ(x) = g(x) e_{n-1}, the
/// two derivations the witnesses combine (the matched-coefficient map
/// g(x) e_{n-1} + x₃ e_n and the corrector g(x) e_n), and the selector.
#[derive(Clone, Debug)]
pub struct FiliformLocalPack {
    pub algebra: Algebra,
    pub delta: LinearMap,
    pub selector: WitnessSelector,
}

/// Coefficients of the family's distinguished functional g on the first
/// two coordinates.
fn family_functional(params: &FiliformParams, n: usize) -> Vec<Rat> {
    let mut g = vec![Rat::zero(); n];
    match params {
        FiliformParams::F1 { .. } => {
            g[0] = Rat::one();
            g[1] = Rat::one();
        }
        FiliformParams::F2 { .. } => g[0] = Rat::one(),
        FiliformParams::F3 { .. } => g[1] = Rat::one(),
    }
    g
}

/// Builds Δ(x) = g(x) e_{n-1} for a filiform family member and proves on
/// the spot that Δ is not a derivation while both witness ingredients
/// are.
pub fn build_filiform_local_nonderivation(
    params: &FiliformParams,
) -> Result<FiliformLocalPack, Error> {
    let n = params.n();
    if n < 5 {
        return Err(Error::param(
            "the local non-derivation construction needs dimension >= 5",
        ));
    }
    let algebra = make_filiform(params)?;
    let g = family_functional(params, n);

    let mut delta = RatMatrix::zero(n, n);
    let mut generic = RatMatrix::zero(n, n);
    let mut corrector = RatMatrix::zero(n, n);
    for (c, w) in g.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        delta[(n - 2, c)] = w.clone();
        generic[(n - 2, c)] = w.clone();
        corrector[(n - 1, c)] = w.clone();
    }
    generic[(n - 1, 2)] = Rat::one();

    let delta = LinearMap::new(delta);
    let generic = LinearMap::new(generic);
    let corrector = LinearMap::new(corrector);

    if delta.is_derivation(&algebra) {
        return Err(Error::data(
            "candidate map is a derivation for these parameters",
        ));
    }
    if !generic.is_derivation(&algebra) || !corrector.is_derivation(&algebra) {
        return Err(Error::data(
            "witness ingredients fail the derivation conditions",
        ));
    }

    Ok(FiliformLocalPack {
        algebra,
        delta,
        selector: WitnessSelector {
            generic,
            corrector,
            functional: g,
            numerator_index: 2,
        },
    })
}

/// Deterministic sample points: all basis vectors, pairwise sums and
/// differences, a spanning set of the degenerate stratum (kernel of the
/// functional) when one is given, then `random_count` seeded vectors.
pub fn structured_samples(
    n: usize,
    degenerate_functional: Option<&[Rat]>,
    seed: u64,
    random_count: usize,
) -> Vec<Vec<Rat>> {
    let mut points = Vec::new();
    let basis = |i: usize| {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        v
    };
    for i in 0..n {
        points.push(basis(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut sum = basis(i);
            sum[j] = Rat::one();
            points.push(sum);
            let mut diff = basis(i);
            diff[j] = -Rat::one();
            points.push(diff);
        }
    }
    if let Some(g) = degenerate_functional {
        assert_eq!(g.len(), n);
        let row = RatMatrix::from_rows(vec![g.to_vec()]);
        let kernel = row.nullspace();
        for v in &kernel {
            points.push(v.clone());
        }
        for i in 0..kernel.len() {
            for j in i + 1..kernel.len() {
                let sum: Vec<Rat> = kernel[i]
                    .iter()
                    .zip(&kernel[j])
                    .map(|(a, b)| a + b)
                    .collect();
                points.push(sum);
            }
        }
    }
    let mut rng = sample::seeded_rng(seed);
    for _ in 0..random_count {
        points.push(sample::rat_vector(&mut rng, n));
    }
    points
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum LocalVerdict {
    /// The superspace collapses onto Der(L): every local derivation is a
    /// derivation.
    Equal,
    /// A certified local non-derivation exists.
    StrictlyLarger,
    /// The bound is strict but no certified witness is known.
    Inconclusive,
}

impl std::fmt::Display for LocalVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LocalVerdict::Equal => "equal",
            LocalVerdict::StrictlyLarger => "strictly-larger",
            LocalVerdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct LocalCertificate {
    pub der_dim: usize,
    pub superspace_dim: usize,
    pub verdict: LocalVerdict,
}

/// Superspace collapse check: verdict `Equal` proves that local
/// derivations of the algebra are derivations.
pub fn theorem41_check(a: &Algebra) -> Result<LocalCertificate, Error> {
    let (space, der) = locder_superspace(a)?;
    let verdict = if space == der.space {
        LocalVerdict::Equal
    } else {
        LocalVerdict::Inconclusive
    };
    Ok(LocalCertificate {
        der_dim: der.dim(),
        superspace_dim: space.dim(),
        verdict,
    })
}

/// Full certificate for a filiform family member: the superspace is
/// strictly larger than Der and the packaged Δ is a certified local
/// non-derivation inside it.
pub fn filiform_certificate(
    params: &FiliformParams,
    seed: u64,
) -> Result<(LocalCertificate, LocalCheck), Error> {
    let pack = build_filiform_local_nonderivation(params)?;
    let (space, der) = locder_superspace(&pack.algebra)?;
    let points = structured_samples(
        params.n(),
        Some(&pack.selector.functional),
        seed,
        50,
    );
    let check = certify_local(&pack.algebra, &pack.delta, &pack.selector, &points);
    let delta_in_superspace = space.member(&pack.delta.flatten())?;
    let verdict = if check.passed && delta_in_superspace && space.dim() > der.dim() {
        LocalVerdict::StrictlyLarger
    } else {
        LocalVerdict::Inconclusive
    };
    Ok((
        LocalCertificate {
            der_dim: der.dim(),
            superspace_dim: space.dim(),
            verdict,
        },
        check,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn superspace_rejects_large_algebras() {
        let a = catalog::make_abelian(11);
        match locder_superspace(&a) {
            Err(Error::CapabilityBound { max, got }) => {
                assert_eq!(max, SUPERSPACE_MAX_DIM);
                assert_eq!(got, 11);
            }
            other => panic!("expected capability bound, got {other:?}"),
        }
    }

    #[test]
    fn superspace_of_simple_algebras_collapses_onto_derivations() {
        for m in 2..=4 {
            let dec = catalog::make_simple_sl2(m).unwrap();
            let cert = theorem41_check(&dec.algebra).unwrap();
            assert_eq!(cert.verdict, LocalVerdict::Equal, "m = {m}");
            assert_eq!(cert.der_dim, cert.superspace_dim, "m = {m}");
        }
    }

    #[test]
    fn superspace_of_the_printed_example_collapses() {
        let cert = theorem41_check(&catalog::example_6_4()).unwrap();
        assert_eq!(cert.verdict, LocalVerdict::Equal);
        assert_eq!(cert.der_dim, 5);
    }

    #[test]
    fn filiform_families_certify_strictly_larger() {
        for params in [
            FiliformParams::f1_zero(5),
            FiliformParams::f2_zero(5),
            FiliformParams::f3_zero(5),
        ] {
            let (cert, check) = filiform_certificate(&params, sample::DEFAULT_SEED).unwrap();
            assert_eq!(
                cert.verdict,
                LocalVerdict::StrictlyLarger,
                "{}",
                params.family_name()
            );
            assert!(cert.superspace_dim > cert.der_dim);
            assert!(check.passed);
            assert!(check.generic_points > 0);
            assert!(check.degenerate_points > 0);
        }
    }

    #[test]
    fn filiform_certificates_cover_sampled_parameters_and_n6() {
        for params in [
            FiliformParams::f1_sample(6),
            FiliformParams::f2_sample(6),
            FiliformParams::f3_sample(6),
        ] {
            let (cert, check) = filiform_certificate(&params, 7).unwrap();
            assert_eq!(cert.verdict, LocalVerdict::StrictlyLarger);
            assert!(check.passed);
        }
    }

    #[test]
    fn matched_coefficients_give_a_derivation_and_unmatched_do_not() {
        let pack = build_filiform_local_nonderivation(&FiliformParams::f1_zero(5)).unwrap();
        // α = β = 1 is the generic witness; α = 1, β = 0 is Δ itself.
        assert!(pack.selector.generic.is_derivation(&pack.algebra));
        assert!(!pack.delta.is_derivation(&pack.algebra));
        // Mismatched scaling α = 2, β = 1 also fails.
        let mismatched = pack.delta.add(&pack.selector.generic);
        assert!(!mismatched.is_derivation(&pack.algebra));
        // But α = β = 2 works: the failure is exactly the mismatch.
        let doubled = pack.selector.generic.scale(&Rat::int(2));
        assert!(doubled.is_derivation(&pack.algebra));
    }

    #[test]
    fn witness_selector_agrees_with_delta_on_both_branches() {
        let pack = build_filiform_local_nonderivation(&FiliformParams::f2_zero(5)).unwrap();
        // Generic branch: x = e1 + e3 has g(x) = 1 and x3-coordinate 1.
        let mut x = vec![Rat::zero(); 5];
        x[0] = Rat::one();
        x[2] = Rat::one();
        let (witness, branch) = pack.selector.pick(&x);
        assert_eq!(branch, "generic");
        assert!(witness.is_derivation(&pack.algebra));
        assert_eq!(witness.apply(&x), pack.delta.apply(&x));
        // Degenerate branch: x = e2 has g(x) = 0.
        let y = pack.algebra.basis_vector(1);
        let (witness, branch) = pack.selector.pick(&y);
        assert_eq!(branch, "degenerate");
        assert_eq!(witness.apply(&y), pack.delta.apply(&y));
    }

    #[test]
    fn delta_lies_in_the_superspace_but_outside_derivations() {
        let pack = build_filiform_local_nonderivation(&FiliformParams::f1_zero(5)).unwrap();
        let (space, der) = locder_superspace(&pack.algebra).unwrap();
        let flat = pack.delta.flatten();
        assert!(space.member(&flat).unwrap());
        assert!(!der.space.member(&flat).unwrap());
    }

    #[test]
    fn construction_rejects_small_dimensions() {
        assert!(build_filiform_local_nonderivation(&FiliformParams::f1_zero(4)).is_err());
    }

    #[test]
    fn structured_samples_hit_the_degenerate_stratum() {
        let g = vec![Rat::one(), Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()];
        let points = structured_samples(5, Some(&g), 3, 10);
        let on_stratum = points
            .iter()
            .filter(|p| {
                g.iter()
                    .zip(p.iter())
                    .fold(Rat::zero(), |acc, (c, v)| acc + &(c * v))
                    .is_zero()
            })
            .count();
        // Kernel basis (4 vectors) + their pairwise sums (6) at minimum.
        assert!(on_stratum >= 10);
    }
}
