//! Constructors for the standard algebras the verification suite runs on:
//! null-filiform algebras, the three filiform families, sl₂, and the
//! simple right Leibniz algebras sl₂ ∔ V_m built from irreducible
//! sl₂-modules. Every constructor validates the Leibniz identity before
//! returning, so a successful build is itself a certificate that the
//! table is an algebra.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, LinearMap, SparseVec};
use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;
use crate::linalg::subspace::Subspace;

fn add_product(
    products: &mut BTreeMap<(usize, usize), BTreeMap<usize, Rat>>,
    i: usize,
    j: usize,
    k: usize,
    c: Rat,
) {
    if c.is_zero() {
        return;
    }
    let entry = products.entry((i, j)).or_default();
    let acc = entry.entry(k).or_insert_with(Rat::zero);
    *acc += &c;
    if acc.is_zero() {
        entry.remove(&k);
    }
}

fn finish(
    dim: usize,
    names: Vec<String>,
    products: BTreeMap<(usize, usize), BTreeMap<usize, Rat>>,
) -> Result<Algebra, Error> {
    let products: BTreeMap<(usize, usize), SparseVec> = products
        .into_iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(key, v)| (key, v.into_iter().collect()))
        .collect();
    let algebra = Algebra::new(dim, names, products)?;
    algebra.check_leibniz()?;
    Ok(algebra)
}

fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

/// Abelian algebra of the given dimension (all products zero).
pub fn make_abelian(n: usize) -> Algebra {
    Algebra::with_default_names(n, BTreeMap::new()).expect("abelian table")
}

/// Null-filiform algebra NFₙ: [e_i, e_1] = e_{i+1} with e_{n+1} = 0.
/// Its lower central series dims are n, n-1, ..., 1, 0.
pub fn make_nf(n: usize) -> Result<Algebra, Error> {
    if n == 0 {
        return Err(Error::param("null-filiform dimension must be at least 1"));
    }
    let mut products = BTreeMap::new();
    for i in 0..n.saturating_sub(1) {
        add_product(&mut products, i, 0, i + 1, Rat::one());
    }
    finish(n, default_names(n), products)
}

/// One antisymmetric filler product of the third filiform family:
/// [e_i, e_j] = Σ coeffs (and [e_j, e_i] the negative), with 1-based
/// indices 2 ≤ i < j, i + j ≤ n - 1, and coefficient indices in
/// i + j + 1 ..= n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F3Filler {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, Rat)>,
}

/// Parameters for the three filiform families. Vectors follow the family
/// signatures: F1 takes (α₄..αₙ, θ), F2 takes (β₃..βₙ, γ) — β₃ is part
/// of the printed signature although no product uses it — and F3 takes
/// (θ₁, θ₂, θ₃) plus optional antisymmetric fillers and the parity flag
/// α ∈ {0, 1} (only odd dimensions may set it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiliformParams {
    F1 { n: usize, alpha: Vec<Rat>, theta: Rat },
    F2 { n: usize, beta: Vec<Rat>, gamma: Rat },
    F3 {
        n: usize,
        theta: [Rat; 3],
        fillers: Vec<F3Filler>,
        alpha: bool,
    },
}

impl FiliformParams {
    pub fn n(&self) -> usize {
        match self {
            FiliformParams::F1 { n, .. }
            | FiliformParams::F2 { n, .. }
            | FiliformParams::F3 { n, .. } => *n,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FiliformParams::F1 { .. } => "F1",
            FiliformParams::F2 { .. } => "F2",
            FiliformParams::F3 { .. } => "F3",
        }
    }

    pub fn f1_zero(n: usize) -> Self {
        FiliformParams::F1 {
            n,
            alpha: vec![Rat::zero(); n.saturating_sub(3)],
            theta: Rat::zero(),
        }
    }

    /// One nonzero parameter: α₄ = 1.
    pub fn f1_sample(n: usize) -> Self {
        let mut alpha = vec![Rat::zero(); n.saturating_sub(3)];
        alpha[0] = Rat::one();
        FiliformParams::F1 {
            n,
            alpha,
            theta: Rat::zero(),
        }
    }

    pub fn f2_zero(n: usize) -> Self {
        FiliformParams::F2 {
            n,
            beta: vec![Rat::zero(); n.saturating_sub(2)],
            gamma: Rat::zero(),
        }
    }

    /// One nonzero parameter: γ = 1.
    pub fn f2_sample(n: usize) -> Self {
        FiliformParams::F2 {
            n,
            beta: vec![Rat::zero(); n.saturating_sub(2)],
            gamma: Rat::one(),
        }
    }

    pub fn f3_zero(n: usize) -> Self {
        FiliformParams::F3 {
            n,
            theta: [Rat::zero(), Rat::zero(), Rat::zero()],
            fillers: Vec::new(),
            alpha: false,
        }
    }

    /// One nonzero parameter: θ₂ = 1.
    pub fn f3_sample(n: usize) -> Self {
        FiliformParams::F3 {
            n,
            theta: [Rat::zero(), Rat::one(), Rat::zero()],
            fillers: Vec::new(),
            alpha: false,
        }
    }
}

/// Builds a filiform family member and checks the Leibniz identity, which
/// is the arbiter for parameter choices the family tables leave open.
pub fn make_filiform(params: &FiliformParams) -> Result<Algebra, Error> {
    match params {
        FiliformParams::F1 { n, alpha, theta } => {
            let n = *n;
            if n < 4 {
                return Err(Error::param("first filiform family needs dimension >= 4"));
            }
            if alpha.len() != n - 3 {
                return Err(Error::param(format!(
                    "first family at dimension {n} takes {} alpha parameters, got {}",
                    n - 3,
                    alpha.len()
                )));
            }
            // alpha[k - 4] = α_k for k in 4..=n.
            let a = |k: usize| alpha[k - 4].clone();
            let mut products = BTreeMap::new();
            add_product(&mut products, 0, 0, 2, Rat::one());
            for i in 2..=n - 1 {
                add_product(&mut products, i - 1, 0, i, Rat::one());
            }
            for k in 4..=n.saturating_sub(1) {
                add_product(&mut products, 0, 1, k - 1, a(k));
            }
            add_product(&mut products, 0, 1, n - 1, theta.clone());
            for i in 2..=n.saturating_sub(2) {
                for k in i + 2..=n {
                    add_product(&mut products, i - 1, 1, k - 1, a(k + 2 - i));
                }
            }
            finish(n, default_names(n), products)
        }
        FiliformParams::F2 { n, beta, gamma } => {
            let n = *n;
            if n < 4 {
                return Err(Error::param("second filiform family needs dimension >= 4"));
            }
            if beta.len() != n - 2 {
                return Err(Error::param(format!(
                    "second family at dimension {n} takes {} beta parameters, got {}",
                    n - 2,
                    beta.len()
                )));
            }
            // beta[k - 3] = β_k for k in 3..=n.
            let b = |k: usize| beta[k - 3].clone();
            let mut products = BTreeMap::new();
            add_product(&mut products, 0, 0, 2, Rat::one());
            for i in 3..=n - 1 {
                add_product(&mut products, i - 1, 0, i, Rat::one());
            }
            for k in 4..=n {
                add_product(&mut products, 0, 1, k - 1, b(k));
            }
            add_product(&mut products, 1, 1, n - 1, gamma.clone());
            for i in 3..=n.saturating_sub(2) {
                for k in i + 2..=n {
                    add_product(&mut products, i - 1, 1, k - 1, b(k + 2 - i));
                }
            }
            finish(n, default_names(n), products)
        }
        FiliformParams::F3 {
            n,
            theta,
            fillers,
            alpha,
        } => {
            let n = *n;
            if n < 3 {
                return Err(Error::param("third filiform family needs dimension >= 3"));
            }
            if *alpha && n % 2 == 0 {
                return Err(Error::param(
                    "the parity parameter is only available in odd dimensions",
                ));
            }
            let mut products = BTreeMap::new();
            for i in 2..=n - 1 {
                add_product(&mut products, i - 1, 0, i, Rat::one());
            }
            for i in 3..=n - 1 {
                add_product(&mut products, 0, i - 1, i, -Rat::one());
            }
            add_product(&mut products, 0, 0, n - 1, theta[0].clone());
            add_product(&mut products, 0, 1, 2, -Rat::one());
            add_product(&mut products, 0, 1, n - 1, theta[1].clone());
            add_product(&mut products, 1, 1, n - 1, theta[2].clone());
            for filler in fillers {
                let (i, j) = (filler.i, filler.j);
                if !(2 <= i && i < j && i + j <= n - 1) {
                    return Err(Error::param(format!(
                        "filler pair ({i}, {j}) outside 2 <= i < j with i + j <= {}",
                        n - 1
                    )));
                }
                for (k, c) in &filler.coeffs {
                    if !(i + j + 1 <= *k && *k <= n) {
                        return Err(Error::param(format!(
                            "filler ({i}, {j}) coefficient index {k} outside {}..={n}",
                            i + j + 1
                        )));
                    }
                    add_product(&mut products, i - 1, j - 1, k - 1, c.clone());
                    add_product(&mut products, j - 1, i - 1, k - 1, -c);
                }
            }
            if *alpha {
                // [e_i, e_{n-i}] = (-1)^i e_n for pairs with both indices
                // >= 2; pairs involving e_1 are owned by the chain rules.
                for i in 2..=n.saturating_sub(2) {
                    let j = n - i;
                    if j < 2 || j == i {
                        continue;
                    }
                    let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                    add_product(&mut products, i - 1, j - 1, n - 1, sign);
                }
            }
            finish(n, default_names(n), products)
        }
    }
}

/// sl₂ with basis (h, e, f): [e,h] = 2e, [h,f] = 2f, [e,f] = h and the
/// antisymmetric counterparts.
pub fn make_sl2() -> Algebra {
    let mut products = BTreeMap::new();
    add_product(&mut products, 1, 0, 1, Rat::int(2)); // [e,h] = 2e
    add_product(&mut products, 0, 1, 1, Rat::int(-2)); // [h,e] = -2e
    add_product(&mut products, 0, 2, 2, Rat::int(2)); // [h,f] = 2f
    add_product(&mut products, 2, 0, 2, Rat::int(-2)); // [f,h] = -2f
    add_product(&mut products, 1, 2, 0, Rat::one()); // [e,f] = h
    add_product(&mut products, 2, 1, 0, -Rat::one()); // [f,e] = -h
    let names = vec!["h".into(), "e".into(), "f".into()];
    finish(3, names, products).expect("sl2 table")
}

/// Right action of sl₂ on the irreducible module V_m of dimension
/// m = n + 1: with weight basis x_0..x_n,
/// [x_k, e] = x_{k+1}, [x_k, f] = -k(n+1-k) x_{k-1}, [x_k, h] = (n-2k) x_k.
#[derive(Clone, Debug)]
pub struct Sl2ModuleAction {
    pub dim: usize,
    pub h: RatMatrix,
    pub e: RatMatrix,
    pub f: RatMatrix,
}

pub fn make_sl2_module(m: usize) -> Result<Sl2ModuleAction, Error> {
    if m < 2 {
        return Err(Error::param("module dimension must be at least 2"));
    }
    let n = (m - 1) as i64;
    let mut h = RatMatrix::zero(m, m);
    let mut e = RatMatrix::zero(m, m);
    let mut f = RatMatrix::zero(m, m);
    for k in 0..m {
        let ki = k as i64;
        h[(k, k)] = Rat::int(n - 2 * ki);
        if k + 1 < m {
            e[(k + 1, k)] = Rat::one();
        }
        if k > 0 {
            f[(k - 1, k)] = Rat::int(-ki * (n + 1 - ki));
        }
    }
    Ok(Sl2ModuleAction { dim: m, h, e, f })
}

/// A simple right Leibniz algebra presented as L = G ∔ I with G ≅ sl₂
/// a subalgebra, I the squares ideal (an irreducible right G-module with
/// [L, I] = 0), a strongly regular element h₀ of the Cartan line, and the
/// distinguished point i₀ used by the rigidity checks. `theta`, present
/// exactly when dim G = dim I, is the module isomorphism G → I extended
/// to an endomorphism of L by killing I.
#[derive(Clone, Debug)]
pub struct SimpleDecomposition {
    pub algebra: Algebra,
    pub g_indices: Vec<usize>,
    pub i_indices: Vec<usize>,
    pub h0: Vec<Rat>,
    pub i0: Vec<Rat>,
    /// (basis name, eigenvalue of [h₀, ·]) per nonzero root vector of G.
    pub roots: Vec<(String, Rat)>,
    /// (basis name, eigenvalue of [·, h₀]) per weight vector of I.
    pub weights: Vec<(String, Rat)>,
    pub theta: Option<LinearMap>,
}

impl SimpleDecomposition {
    /// Validates every structural claim the decomposition makes; all
    /// downstream rigidity machinery relies on these.
    pub fn new(
        algebra: Algebra,
        g_indices: Vec<usize>,
        i_indices: Vec<usize>,
        h0: Vec<Rat>,
        i0: Vec<Rat>,
        theta: Option<LinearMap>,
    ) -> Result<Self, Error> {
        let dim = algebra.dim();
        let mut seen = vec![false; dim];
        for &i in g_indices.iter().chain(&i_indices) {
            if i >= dim || seen[i] {
                return Err(Error::data("G/I indices must partition the basis"));
            }
            seen[i] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::data("G/I indices must partition the basis"));
        }

        let basis_span = |idx: &[usize]| {
            Subspace::from_spanning(dim, idx.iter().map(|&i| algebra.basis_vector(i)).collect())
        };
        let g_space = basis_span(&g_indices);
        let i_space = basis_span(&i_indices);

        if algebra.squares_ideal() != i_space {
            return Err(Error::data("I must equal the squares ideal"));
        }
        if !algebra.is_left_module_trivial(&i_space) {
            return Err(Error::data("[L, I] must vanish"));
        }
        for &a in &g_indices {
            for &b in &g_indices {
                let prod = algebra.bracket_basis(a, b);
                if !g_space.member(&prod)? {
                    return Err(Error::data("G must be closed under the bracket"));
                }
            }
        }
        if !g_space.member(&h0)? {
            return Err(Error::data("h0 must lie in G"));
        }
        if !i_space.member(&i0)? {
            return Err(Error::data("i0 must lie in I"));
        }

        // Roots: [h0, g] = root * g on G-basis vectors (zero for the
        // Cartan line); weights: [i, h0] = weight * i on I-basis vectors.
        let mut roots = Vec::new();
        for &g in &g_indices {
            let image = algebra.bracket(&h0, &algebra.basis_vector(g));
            let value = eigenvalue_on_basis_vector(&image, g)?;
            if !value.is_zero() {
                roots.push((algebra.basis_names()[g].clone(), value));
            }
        }
        let mut weights = Vec::new();
        for &i in &i_indices {
            let image = algebra.bracket(&algebra.basis_vector(i), &h0);
            let value = eigenvalue_on_basis_vector(&image, i)?;
            weights.push((algebra.basis_names()[i].clone(), value));
        }

        // Strong regularity of h0: distinct nonzero root values, distinct
        // weight values.
        for (a, (_, va)) in roots.iter().enumerate() {
            if va.is_zero() {
                return Err(Error::data("root values must be nonzero"));
            }
            for (_, vb) in roots.iter().skip(a + 1) {
                if va == vb {
                    return Err(Error::data("root values must be pairwise distinct"));
                }
            }
        }
        for (a, (_, va)) in weights.iter().enumerate() {
            for (_, vb) in weights.iter().skip(a + 1) {
                if va == vb {
                    return Err(Error::data("weight values must be pairwise distinct"));
                }
            }
        }

        if let Some(theta) = &theta {
            if g_indices.len() != i_indices.len() {
                return Err(Error::data(
                    "theta requires dim G = dim I",
                ));
            }
            // theta kills I, maps G into I bijectively, and intertwines:
            // theta([x, y]) = [theta(x), y] on basis pairs of G.
            let mut g_images = Vec::new();
            for &i in &i_indices {
                if !theta.apply(&algebra.basis_vector(i)).iter().all(Rat::is_zero) {
                    return Err(Error::data("theta must kill I"));
                }
            }
            for &g in &g_indices {
                let img = theta.apply(&algebra.basis_vector(g));
                if !i_space.member(&img)? {
                    return Err(Error::data("theta must map G into I"));
                }
                g_images.push(img);
            }
            if Subspace::from_spanning(dim, g_images).dim() != i_indices.len() {
                return Err(Error::data("theta must be bijective from G onto I"));
            }
            for &x in &g_indices {
                for &y in &g_indices {
                    let lhs = theta.apply(&algebra.bracket_basis(x, y));
                    let rhs = algebra.bracket(
                        &theta.apply(&algebra.basis_vector(x)),
                        &algebra.basis_vector(y),
                    );
                    if lhs != rhs {
                        return Err(Error::data(
                            "theta must intertwine the right action",
                        ));
                    }
                }
            }
        }

        Ok(SimpleDecomposition {
            algebra,
            g_indices,
            i_indices,
            h0,
            i0,
            roots,
            weights,
            theta,
        })
    }

    pub fn dim_g(&self) -> usize {
        self.g_indices.len()
    }

    pub fn dim_i(&self) -> usize {
        self.i_indices.len()
    }

    pub fn g_subspace(&self) -> Subspace {
        Subspace::from_spanning(
            self.algebra.dim(),
            self.g_indices
                .iter()
                .map(|&i| self.algebra.basis_vector(i))
                .collect(),
        )
    }

    pub fn i_subspace(&self) -> Subspace {
        Subspace::from_spanning(
            self.algebra.dim(),
            self.i_indices
                .iter()
                .map(|&i| self.algebra.basis_vector(i))
                .collect(),
        )
    }

    /// h₀ + i₀, the point whose derivation stabilizer is trivial.
    pub fn rigidity_point(&self) -> Vec<Rat> {
        self.h0
            .iter()
            .zip(&self.i0)
            .map(|(a, b)| a + b)
            .collect()
    }
}

fn eigenvalue_on_basis_vector(image: &[Rat], index: usize) -> Result<Rat, Error> {
    for (k, c) in image.iter().enumerate() {
        if k != index && !c.is_zero() {
            return Err(Error::data(
                "basis vector is not an eigenvector of the h0 action",
            ));
        }
    }
    Ok(image[index].clone())
}

/// L = sl₂ ∔ V_m with basis (h, e, f, x_0..x_{m-1}).
///
/// The module products follow [`make_sl2_module`]; consistency of the
/// right multiplications then forces the sl₂ products
/// [e,f] = -h, [e,h] = -2e, [f,h] = 2f (and antisymmetric counterparts),
/// which is sl₂ up to rescaling f. For m = 3 the module is isomorphic to
/// the adjoint module and theta(h) = 2x₁, theta(e) = x₂, theta(f) = 2x₀
/// is the intertwiner; i₀ is then θ(e + f), otherwise i₀ = Σ_k x_k.
pub fn make_simple_sl2(m: usize) -> Result<SimpleDecomposition, Error> {
    if m < 2 {
        return Err(Error::param("module dimension must be at least 2"));
    }
    let dim = 3 + m;
    let mut names = vec!["h".to_string(), "e".to_string(), "f".to_string()];
    for k in 0..m {
        names.push(format!("x{k}"));
    }
    let mut products = BTreeMap::new();
    // sl2 block (h = 0, e = 1, f = 2).
    add_product(&mut products, 0, 1, 1, Rat::int(2)); // [h,e] = 2e
    add_product(&mut products, 1, 0, 1, Rat::int(-2)); // [e,h] = -2e
    add_product(&mut products, 0, 2, 2, Rat::int(-2)); // [h,f] = -2f
    add_product(&mut products, 2, 0, 2, Rat::int(2)); // [f,h] = 2f
    add_product(&mut products, 1, 2, 0, -Rat::one()); // [e,f] = -h
    add_product(&mut products, 2, 1, 0, Rat::one()); // [f,e] = h
    // Module block.
    let action = make_sl2_module(m)?;
    for k in 0..m {
        for (matrix, g) in [(&action.h, 0), (&action.e, 1), (&action.f, 2)] {
            for row in 0..m {
                let c = matrix[(row, k)].clone();
                add_product(&mut products, 3 + k, g, 3 + row, c);
            }
        }
    }
    let algebra = finish(dim, names, products)?;

    let h0 = algebra.basis_vector(0);
    let theta = if m == 3 {
        let mut t = RatMatrix::zero(dim, dim);
        t[(4, 0)] = Rat::int(2); // theta(h) = 2 x1
        t[(5, 1)] = Rat::one(); // theta(e) = x2
        t[(3, 2)] = Rat::int(2); // theta(f) = 2 x0
        Some(LinearMap::new(t))
    } else {
        None
    };
    let i0 = if let Some(theta) = &theta {
        let mut ef = vec![Rat::zero(); dim];
        ef[1] = Rat::one();
        ef[2] = Rat::one();
        theta.apply(&ef)
    } else {
        let mut v = vec![Rat::zero(); dim];
        for k in 0..m {
            v[3 + k] = Rat::one();
        }
        v
    };
    SimpleDecomposition::new(algebra, vec![0, 1, 2], (3..dim).collect(), h0, i0, theta)
}

/// The 6-dimensional simple algebra sl₂ ∔ V₃ in its classical printed
/// form: e lowers and f raises the module index, [e, f] = h.
pub fn example_6_4() -> Algebra {
    let mut products = BTreeMap::new();
    add_product(&mut products, 1, 0, 1, Rat::int(2)); // [e,h] = 2e
    add_product(&mut products, 0, 2, 2, Rat::int(2)); // [h,f] = 2f
    add_product(&mut products, 1, 2, 0, Rat::one()); // [e,f] = h
    add_product(&mut products, 0, 1, 1, Rat::int(-2)); // [h,e] = -2e
    add_product(&mut products, 2, 0, 2, Rat::int(-2)); // [f,h] = -2f
    add_product(&mut products, 2, 1, 0, -Rat::one()); // [f,e] = -h
    // [x_k, e] = -k(3-k) x_{k-1}
    add_product(&mut products, 4, 1, 3, Rat::int(-2));
    add_product(&mut products, 5, 1, 4, Rat::int(-2));
    // [x_k, f] = x_{k+1}
    add_product(&mut products, 3, 2, 4, Rat::one());
    add_product(&mut products, 4, 2, 5, Rat::one());
    // [x_k, h] = (2-2k) x_k
    add_product(&mut products, 3, 0, 3, Rat::int(2));
    add_product(&mut products, 5, 0, 5, Rat::int(-2));
    let names = ["h", "e", "f", "x0", "x1", "x2"]
        .map(String::from)
        .to_vec();
    finish(6, names, products).expect("printed 6-dimensional table")
}

/// Decomposition data for [`example_6_4`]: theta(h) = 2x₁, theta(e) = 2x₀,
/// theta(f) = x₂, h₀ = h and i₀ = x₀ + x₁ + x₂.
pub fn example_6_4_decomposition() -> SimpleDecomposition {
    let algebra = example_6_4();
    let dim = algebra.dim();
    let mut t = RatMatrix::zero(dim, dim);
    t[(4, 0)] = Rat::int(2);
    t[(3, 1)] = Rat::int(2);
    t[(5, 2)] = Rat::one();
    let h0 = algebra.basis_vector(0);
    let mut i0 = vec![Rat::zero(); dim];
    for k in 3..6 {
        i0[k] = Rat::one();
    }
    SimpleDecomposition::new(
        algebra,
        vec![0, 1, 2],
        vec![3, 4, 5],
        h0,
        i0,
        Some(LinearMap::new(t)),
    )
    .expect("printed decomposition data")
}

/// The basis relabeling h ↦ h, e ↦ f, f ↦ e, x_k ↦ x_k, which is an
/// isomorphism from [`example_6_4`] onto `make_simple_sl2(3).algebra`
/// (the raising/lowering conventions of the two tables are swapped).
pub fn example_6_4_relabeling() -> LinearMap {
    let mut m = RatMatrix::zero(6, 6);
    m[(0, 0)] = Rat::one();
    m[(2, 1)] = Rat::one();
    m[(1, 2)] = Rat::one();
    for k in 3..6 {
        m[(k, k)] = Rat::one();
    }
    LinearMap::new(m)
}

/// Machine-checked hypotheses for the 2-local construction: dimension,
/// dim [L, L], annihilator dimension, and whether the construction
/// applies (dim [L,L] ≤ n - 2 and Ann(L) ≠ 0).
#[derive(Clone, Debug, serde::Serialize)]
pub struct Theorem37Certificate {
    pub dim: usize,
    pub dim_l2: usize,
    pub ann_dim: usize,
    pub qualifies: bool,
}

pub fn theorem37_certificate(a: &Algebra) -> Theorem37Certificate {
    let dim = a.dim();
    let dim_l2 = a
        .lower_central_series()
        .get(1)
        .map_or(0, Subspace::dim);
    let ann_dim = a.annihilator().dim();
    Theorem37Certificate {
        dim,
        dim_l2,
        ann_dim,
        qualifies: dim >= 2 && dim_l2 + 2 <= dim && ann_dim > 0,
    }
}

/// Catalog algebras qualifying for the 2-local non-derivation
/// construction, each with its checked certificate.
pub fn theorem37_candidates() -> Vec<(String, Algebra, Theorem37Certificate)> {
    let slate = [
        "abelian-2",
        "abelian-3",
        "f1-n5-zero",
        "f1-n6-zero",
        "f2-n5-zero",
        "f2-n6-zero",
        "f3-n5-zero",
        "f3-n6-zero",
    ];
    let mut out = Vec::new();
    for name in slate {
        let algebra = by_name(name).expect("slate names are in the catalog");
        let cert = theorem37_certificate(&algebra);
        if cert.qualifies {
            out.push((name.to_string(), algebra, cert));
        }
    }
    out
}

/// Names of the golden catalog files, in inventory order.
pub fn golden_names() -> Vec<&'static str> {
    vec![
        "nf4",
        "nf5",
        "nf6",
        "nf7",
        "nf8",
        "f1-n5-zero",
        "f1-n5-sample",
        "f1-n6-zero",
        "f1-n6-sample",
        "f2-n5-zero",
        "f2-n5-sample",
        "f2-n6-zero",
        "f2-n6-sample",
        "f3-n5-zero",
        "f3-n5-sample",
        "f3-n6-zero",
        "f3-n6-sample",
        "sl2",
        "simple-sl2-v2",
        "simple-sl2-v3",
        "simple-sl2-v4",
        "simple-sl2-v5",
        "example-6-4",
    ]
}

/// All names [`by_name`] accepts: the golden inventory plus the abelian
/// helpers.
pub fn catalog_names() -> Vec<&'static str> {
    let mut names = golden_names();
    names.push("abelian-2");
    names.push("abelian-3");
    names
}

pub fn by_name(name: &str) -> Option<Algebra> {
    let filiform = |params: FiliformParams| make_filiform(&params).ok();
    match name {
        "nf4" => make_nf(4).ok(),
        "nf5" => make_nf(5).ok(),
        "nf6" => make_nf(6).ok(),
        "nf7" => make_nf(7).ok(),
        "nf8" => make_nf(8).ok(),
        "f1-n5-zero" => filiform(FiliformParams::f1_zero(5)),
        "f1-n5-sample" => filiform(FiliformParams::f1_sample(5)),
        "f1-n6-zero" => filiform(FiliformParams::f1_zero(6)),
        "f1-n6-sample" => filiform(FiliformParams::f1_sample(6)),
        "f2-n5-zero" => filiform(FiliformParams::f2_zero(5)),
        "f2-n5-sample" => filiform(FiliformParams::f2_sample(5)),
        "f2-n6-zero" => filiform(FiliformParams::f2_zero(6)),
        "f2-n6-sample" => filiform(FiliformParams::f2_sample(6)),
        "f3-n5-zero" => filiform(FiliformParams::f3_zero(5)),
        "f3-n5-sample" => filiform(FiliformParams::f3_sample(5)),
        "f3-n6-zero" => filiform(FiliformParams::f3_zero(6)),
        "f3-n6-sample" => filiform(FiliformParams::f3_sample(6)),
        "sl2" => Some(make_sl2()),
        "simple-sl2-v2" => make_simple_sl2(2).ok().map(|d| d.algebra),
        "simple-sl2-v3" => make_simple_sl2(3).ok().map(|d| d.algebra),
        "simple-sl2-v4" => make_simple_sl2(4).ok().map(|d| d.algebra),
        "simple-sl2-v5" => make_simple_sl2(5).ok().map(|d| d.algebra),
        "example-6-4" => Some(example_6_4()),
        "abelian-2" => Some(make_abelian(2)),
        "abelian-3" => Some(make_abelian(3)),
        _ => None,
    }
}

/// Decomposition data for the catalog algebras that carry it.
pub fn decomposition_by_name(name: &str) -> Option<SimpleDecomposition> {
    match name {
        "simple-sl2-v2" => make_simple_sl2(2).ok(),
        "simple-sl2-v3" => make_simple_sl2(3).ok(),
        "simple-sl2-v4" => make_simple_sl2(4).ok(),
        "simple-sl2-v5" => make_simple_sl2(5).ok(),
        "example-6-4" => Some(example_6_4_decomposition()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::NilpotentClass;

    #[test]
    fn nf4_table_matches_printed_products() {
        let nf4 = make_nf(4).unwrap();
        assert_eq!(nf4.bracket_basis(0, 0), nf4.basis_vector(1));
        assert_eq!(nf4.bracket_basis(1, 0), nf4.basis_vector(2));
        assert_eq!(nf4.bracket_basis(2, 0), nf4.basis_vector(3));
        assert!(nf4.bracket_basis(3, 0).iter().all(Rat::is_zero));
        assert!(nf4.bracket_basis(0, 1).iter().all(Rat::is_zero));
    }

    #[test]
    fn every_catalog_algebra_satisfies_the_identity() {
        for name in catalog_names() {
            let a = by_name(name).unwrap_or_else(|| panic!("{name} missing"));
            assert!(a.check_leibniz().is_ok(), "{name} fails the identity");
        }
    }

    #[test]
    fn filiform_families_are_filiform_at_zero_parameters() {
        for name in [
            "f1-n5-zero",
            "f1-n6-zero",
            "f2-n5-zero",
            "f2-n6-zero",
            "f3-n5-zero",
            "f3-n6-zero",
        ] {
            let a = by_name(name).unwrap();
            assert_eq!(
                a.classify_nilpotent(),
                NilpotentClass::Filiform,
                "{name} should be filiform"
            );
        }
    }

    #[test]
    fn f2_zero_at_n5_is_lie_free_of_e2() {
        let a = by_name("f2-n5-zero").unwrap();
        // [e2, L] = [L, e2] = 0 at zero parameters.
        for i in 0..5 {
            assert!(a.bracket_basis(1, i).iter().all(Rat::is_zero));
            assert!(a.bracket_basis(i, 1).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn f3_zero_is_a_lie_algebra() {
        let a = by_name("f3-n5-zero").unwrap();
        // Antisymmetry on all pairs means the table is Lie.
        for i in 0..5 {
            for j in 0..5 {
                let ij = a.bracket_basis(i, j);
                let ji = a.bracket_basis(j, i);
                for (x, y) in ij.iter().zip(&ji) {
                    assert_eq!(x, &-y, "pair ({i},{j}) breaks antisymmetry");
                }
            }
        }
        // The nonzero theta sample is not Lie.
        let b = by_name("f3-n5-sample").unwrap();
        let ij = b.bracket_basis(0, 1);
        let ji = b.bracket_basis(1, 0);
        assert!(ij.iter().zip(&ji).any(|(x, y)| x != &-y));
    }

    #[test]
    fn f3_alpha_variant_passes_identity_in_odd_dims() {
        let params = FiliformParams::F3 {
            n: 5,
            theta: [Rat::zero(), Rat::zero(), Rat::zero()],
            fillers: Vec::new(),
            alpha: true,
        };
        let a = make_filiform(&params).unwrap();
        assert_eq!(a.bracket_basis(1, 2), a.basis_vector(4)); // [e2,e3] = e5
        let even = FiliformParams::F3 {
            n: 6,
            theta: [Rat::zero(), Rat::zero(), Rat::zero()],
            fillers: Vec::new(),
            alpha: true,
        };
        assert!(make_filiform(&even).is_err());
    }

    #[test]
    fn filiform_rejects_bad_parameter_lists() {
        assert!(make_filiform(&FiliformParams::F1 {
            n: 3,
            alpha: vec![],
            theta: Rat::zero(),
        })
        .is_err());
        assert!(make_filiform(&FiliformParams::F1 {
            n: 5,
            alpha: vec![Rat::zero()],
            theta: Rat::zero(),
        })
        .is_err());
        assert!(make_filiform(&FiliformParams::F3 {
            n: 5,
            theta: [Rat::zero(), Rat::zero(), Rat::zero()],
            fillers: vec![F3Filler {
                i: 1,
                j: 2,
                coeffs: vec![(4, Rat::one())],
            }],
            alpha: false,
        })
        .is_err());
    }

    #[test]
    fn f3_filler_products_are_antisymmetric_and_checked() {
        let params = FiliformParams::F3 {
            n: 6,
            theta: [Rat::zero(), Rat::zero(), Rat::zero()],
            fillers: vec![F3Filler {
                i: 2,
                j: 3,
                coeffs: vec![(6, Rat::one())],
            }],
            alpha: false,
        };
        let a = make_filiform(&params).unwrap();
        assert_eq!(a.bracket_basis(1, 2), a.basis_vector(5));
        let neg: Vec<Rat> = a.basis_vector(5).iter().map(|c| -c).collect();
        assert_eq!(a.bracket_basis(2, 1), neg);
    }

    #[test]
    fn simple_sl2_squares_ideal_is_the_module() {
        for m in 2..=5 {
            let dec = make_simple_sl2(m).unwrap();
            assert_eq!(dec.algebra.squares_ideal(), dec.i_subspace());
            assert!(dec.algebra.is_left_module_trivial(&dec.i_subspace()));
        }
    }

    #[test]
    fn simple_sl2_roots_and_weights() {
        let dec = make_simple_sl2(2).unwrap();
        let root_values: Vec<Rat> = dec.roots.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(root_values, vec![Rat::int(2), Rat::int(-2)]);
        let weight_values: Vec<Rat> = dec.weights.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(weight_values, vec![Rat::int(1), Rat::int(-1)]);

        let dec5 = make_simple_sl2(5).unwrap();
        let weight_values: Vec<Rat> = dec5.weights.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(
            weight_values,
            vec![Rat::int(4), Rat::int(2), Rat::int(0), Rat::int(-2), Rat::int(-4)]
        );
    }

    #[test]
    fn simple_sl2_v3_carries_theta_and_theta_image_i0() {
        let dec = make_simple_sl2(3).unwrap();
        let theta = dec.theta.as_ref().unwrap();
        // theta(e + f) = x2 + 2 x0.
        let mut expected = vec![Rat::zero(); 6];
        expected[3] = Rat::int(2);
        expected[5] = Rat::one();
        assert_eq!(dec.i0, expected);
        // The extension kills I.
        for k in 3..6 {
            assert!(theta
                .apply(&dec.algebra.basis_vector(k))
                .iter()
                .all(Rat::is_zero));
        }
        // Other module sizes carry no theta and use the weight-vector sum.
        let dec4 = make_simple_sl2(4).unwrap();
        assert!(dec4.theta.is_none());
        assert_eq!(dec4.i0[3..7], vec![Rat::one(); 4]);
    }

    #[test]
    fn relabeling_is_an_isomorphism_onto_the_uniform_convention() {
        let src = example_6_4();
        let dst = make_simple_sl2(3).unwrap().algebra;
        let phi = example_6_4_relabeling();
        assert!(phi.is_invertible());
        for i in 0..6 {
            for j in 0..6 {
                let lhs = phi.apply(&src.bracket_basis(i, j));
                let rhs = dst.bracket(
                    &phi.apply(&src.basis_vector(i)),
                    &phi.apply(&src.basis_vector(j)),
                );
                assert_eq!(lhs, rhs, "pair ({i}, {j})");
            }
        }
    }

    #[test]
    fn example_6_4_matches_its_printed_products() {
        let l = example_6_4();
        // [x1, e] = -2 x0, [x2, e] = -2 x1, [x0, f] = x1, [x1, f] = x2.
        let minus2 = |v: Vec<Rat>| v.iter().map(|c| c * &Rat::int(-2)).collect::<Vec<_>>();
        assert_eq!(l.bracket_basis(4, 1), minus2(l.basis_vector(3)));
        assert_eq!(l.bracket_basis(5, 1), minus2(l.basis_vector(4)));
        assert_eq!(l.bracket_basis(3, 2), l.basis_vector(4));
        assert_eq!(l.bracket_basis(4, 2), l.basis_vector(5));
        // [x0, h] = 2 x0, [x1, h] = 0, [x2, h] = -2 x2.
        assert_eq!(l.bracket_basis(3, 0), {
            let mut v = vec![Rat::zero(); 6];
            v[3] = Rat::int(2);
            v
        });
        assert!(l.bracket_basis(4, 0).iter().all(Rat::is_zero));
    }

    #[test]
    fn module_irreducibility_by_invariant_closure() {
        use crate::sample;
        for m in 2..=5 {
            let dec = make_simple_sl2(m).unwrap();
            let mut rng = sample::seeded_rng(sample::DEFAULT_SEED);
            for _ in 0..10 {
                // Random nonzero module vector.
                let mut v = vec![Rat::zero(); dec.algebra.dim()];
                loop {
                    for &i in &dec.i_indices {
                        v[i] = sample::rat_in_range(&mut rng);
                    }
                    if v.iter().any(|c| !c.is_zero()) {
                        break;
                    }
                }
                let mut closure =
                    Subspace::from_spanning(dec.algebra.dim(), vec![v.clone()]);
                loop {
                    let mut vectors: Vec<Vec<Rat>> = closure.basis().to_vec();
                    for b in closure.basis() {
                        for &g in &dec.g_indices {
                            vectors.push(dec.algebra.bracket(b, &dec.algebra.basis_vector(g)));
                        }
                    }
                    let next = Subspace::from_spanning(dec.algebra.dim(), vectors);
                    if next == closure {
                        break;
                    }
                    closure = next;
                }
                assert_eq!(closure, dec.i_subspace(), "closure at m = {m}");
            }
        }
    }

    #[test]
    fn theorem37_slate() {
        let candidates = theorem37_candidates();
        let names: Vec<&str> = candidates.iter().map(|(n, _, _)| n.as_str()).collect();
        assert!(names.contains(&"abelian-3"));
        assert!(names.contains(&"f1-n5-zero"));
        for (name, _, cert) in &candidates {
            assert!(cert.qualifies, "{name}");
            assert!(cert.dim_l2 + 2 <= cert.dim);
            assert!(cert.ann_dim > 0);
        }
        // Null-filiform algebras fail hypothesis (i): dim L2 = n - 1.
        let nf5 = make_nf(5).unwrap();
        let cert = theorem37_certificate(&nf5);
        assert_eq!(cert.dim_l2, 4);
        assert!(!cert.qualifies);
    }

    #[test]
    fn decomposition_constructor_rejects_wrong_ideals() {
        let dec = make_simple_sl2(2).unwrap();
        // Swapping G and I indices must fail: G is not the squares ideal.
        let bad = SimpleDecomposition::new(
            dec.algebra.clone(),
            dec.i_indices.clone(),
            dec.g_indices.clone(),
            dec.h0.clone(),
            dec.i0.clone(),
            None,
        );
        assert!(bad.is_err());
    }
}
