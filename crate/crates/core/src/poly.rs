//! Sparse multivariate polynomials over ℚ and polynomial matrices.
//!
//! Monomials are ordered graded-lexicographically (total degree first,
//! then exponent vectors lexicographically), which fixes a deterministic
//! leading term. Generic rank of a polynomial matrix uses Bareiss
//! fraction-free elimination: every intermediate entry is a minor of the
//! original matrix, so the division step is exact in the polynomial ring.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::Error;
use crate::linalg::matrix::RatMatrix;
use crate::linalg::rat::Rat;

/// Exponent vector with graded-lex ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise quotient; `None` when not divisible.
    fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    /// Nonzero terms only; ascending graded-lex order by key.
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(Mono(exps), Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Mono::total_degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `q` with `self = q * divisor`, or `None`
    /// when the division leaves a remainder. For an exact quotient the
    /// leading term of the running remainder is always divisible by the
    /// divisor's leading term, so the single-divisor reduction loop decides
    /// divisibility.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        let (dm, dc) = {
            let (m, c) = divisor.leading_term().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let mut t = MultiPoly::zero(self.nvars);
            t.terms.insert(qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.insert_term(Mono(exps), c * &Rat::int(e as i64));
        }
        out
    }

    /// Largest exponent of `x_i` across all terms (0 for the zero poly).
    pub fn degree_in(&self, i: usize) -> u32 {
        assert!(i < self.nvars, "variable index out of range");
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Decomposition as a polynomial in `x_i`: maps each power of `x_i`
    /// to its coefficient, an `x_i`-free polynomial in the same ring.
    pub fn coeffs_in(&self, i: usize) -> BTreeMap<u32, MultiPoly> {
        assert!(i < self.nvars, "variable index out of range");
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            out.entry(e)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .insert_term(Mono(exps), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// The polynomial with x_i set to zero: only the terms free of x_i
    /// survive.
    pub fn at_zero(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars, "variable index out of range");
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] == 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// True when the polynomial has no terms of positive degree.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// Scales so the graded-lex leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat, Error> {
        if point.len() != self.nvars {
            return Err(Error::dim(format!(
                "eval: {} values for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    /// Human form with 1-based variables, e.g. `x1^2*x2 - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            data: vec![MultiPoly::zero(nvars); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.nvars(), self.nvars, "variable count mismatch");
        self.data[i * self.cols + j] = p;
    }

    pub fn eval(&self, point: &[Rat]) -> Result<RatMatrix, Error> {
        let mut out = RatMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.get(i, j).eval(point)?;
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(row_idx.len(), col_idx.len(), self.nvars);
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Rank over the fraction field ℚ(x₁..xₙ), i.e. the rank attained at
    /// generic points, via Bareiss elimination with row swaps and
    /// zero-column skips. Deterministic: leftmost eliminable column,
    /// topmost nonzero pivot row.
    pub fn generic_rank(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant of a square matrix via the same elimination (the final
    /// pivot, sign-corrected for row swaps).
    pub fn determinant(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows == 0 {
            return MultiPoly::one(self.nvars);
        }
        let (rank, last_pivot, swaps) = self.bareiss();
        if rank < self.rows {
            return MultiPoly::zero(self.nvars);
        }
        if swaps % 2 == 0 {
            last_pivot
        } else {
            last_pivot.neg()
        }
    }

    /// Returns (rank, final pivot, row-swap count). Every entry produced
    /// in step k equals a (k+1)-minor of the original matrix, so the
    /// division by the previous pivot is exact (Sylvester's identity);
    /// `div_exact` failing would indicate a bug, hence the expect.
    fn bareiss(&self) -> (usize, MultiPoly, usize) {
        let mut m = self.data.clone();
        let at = |m: &Vec<MultiPoly>, i: usize, j: usize| -> MultiPoly { m[i * self.cols + j].clone() };
        let mut prev = MultiPoly::one(self.nvars);
        let mut last_pivot = MultiPoly::one(self.nvars);
        let mut row = 0;
        let mut swaps = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m[r * self.cols + col].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    m.swap(row * self.cols + j, p * self.cols + j);
                }
                swaps += 1;
            }
            let pivot = at(&m, row, col);
            for r in row + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = pivot
                        .mul(&at(&m, r, c))
                        .sub(&at(&m, r, col).mul(&at(&m, row, c)));
                    m[r * self.cols + c] = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides exactly");
                }
                m[r * self.cols + col] = MultiPoly::zero(self.nvars);
            }
            prev = pivot.clone();
            last_pivot = pivot;
            row += 1;
        }
        (row, last_pivot, swaps)
    }
}

/// Lowest-index variable occurring in `f`, if any.
fn main_var(f: &MultiPoly) -> Option<usize> {
    (0..f.nvars()).find(|&i| f.degree_in(i) > 0)
}

/// Content of `f` as a polynomial in `x_m`: the gcd of its coefficients.
fn content_in(f: &MultiPoly, m: usize) -> MultiPoly {
    let slices = f.coeffs_in(m);
    poly_gcd_many(slices.values(), f.nvars())
}

/// Pseudo-remainder of `f` by `g` with respect to `x_m` (up to a factor
/// that is free of `x_m`, which is all the primitive-sequence gcd needs):
/// repeatedly cancels the leading `x_m`-term of the running remainder
/// against `g` after scaling by `g`'s leading coefficient.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, m: usize) -> MultiPoly {
    let dg = g.degree_in(m);
    debug_assert!(dg > 0, "pseudo-division needs x_m in the divisor");
    let lc_g = g.coeffs_in(m).remove(&dg).expect("leading coefficient");
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree_in(m);
        if dr < dg {
            break;
        }
        let lc_r = r.coeffs_in(m).remove(&dr).expect("leading coefficient");
        let shift = MultiPoly::var(f.nvars(), m).pow(dr - dg);
        r = r.mul(&lc_g).sub(&lc_r.mul(&shift).mul(g));
    }
    r
}

/// Multivariate gcd over ℚ, normalized so the graded-lex leading
/// coefficient is 1; gcd(0, 0) = 0. Recursive primitive pseudo-remainder
/// sequence: split off the lowest-index shared variable, reduce the
/// primitive parts, and recurse into the contents.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert_eq!(f.nvars(), g.nvars(), "variable count mismatch");
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.nvars());
    }
    let m = main_var(f)
        .into_iter()
        .chain(main_var(g))
        .min()
        .expect("both nonconstant");
    // A divisor of an x_m-free polynomial is x_m-free, hence divides the
    // other argument coefficient-wise.
    if f.degree_in(m) == 0 {
        return poly_gcd(f, &content_in(g, m));
    }
    if g.degree_in(m) == 0 {
        return poly_gcd(&content_in(f, m), g);
    }
    let cont_f = content_in(f, m);
    let cont_g = content_in(g, m);
    let cont = poly_gcd(&cont_f, &cont_g);
    let mut a = f.div_exact(&cont_f).expect("content divides");
    let mut b = g.div_exact(&cont_g).expect("content divides");
    if a.degree_in(m) < b.degree_in(m) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, m);
        if r.is_zero() {
            let pp_b = b
                .div_exact(&content_in(&b, m))
                .expect("content divides");
            return cont.mul(&pp_b).monic();
        }
        if r.degree_in(m) == 0 {
            // Coprime primitive parts: the gcd is carried by the contents.
            return cont.monic();
        }
        a = b;
        b = r.div_exact(&content_in(&r, m)).expect("content divides");
    }
}

/// Gcd of a sequence of polynomials (0 for an empty or all-zero input).
pub fn poly_gcd_many<'a, I>(polys: I, nvars: usize) -> MultiPoly
where
    I: IntoIterator<Item = &'a MultiPoly>,
{
    let mut acc = MultiPoly::zero(nvars);
    for p in polys {
        acc = poly_gcd(&acc, p);
        if !acc.is_zero() && acc.is_constant() {
            return acc;
        }
    }
    acc
}

/// Squarefree part: `f / gcd(f, ∂f/∂x₁, …, ∂f/∂xₙ)`, monic. Repeated
/// factors drop to multiplicity one; the vanishing locus is unchanged.
pub fn squarefree_part(f: &MultiPoly) -> MultiPoly {
    if f.is_zero() || f.is_constant() {
        return f.monic();
    }
    let mut d = f.clone();
    for i in 0..f.nvars() {
        let p = f.partial(i);
        if !p.is_zero() {
            d = poly_gcd(&d, &p);
        }
    }
    f.div_exact(&d)
        .expect("gcd with the partials divides")
        .monic()
}

/// Sparse linear form in auxiliary unknowns with polynomial coefficients:
/// entry `i` of the column is `Σ coeffs[i][(u, p)] p(x) · unknown_u`.
/// Coefficients must have degree ≤ 1 in the x-variables and each unknown
/// appears at most linearly, which is all the certificate path needs.
pub struct UnknownColumn {
    pub unknowns: usize,
    pub coeffs: Vec<Vec<(usize, MultiPoly)>>,
}

/// Linear constraints on the unknowns forcing every (r+1)×(r+1) minor of
/// `[m | column]` that uses the appended column to vanish identically.
///
/// Each such minor expands along the appended column into
/// `Σ_p ± minor_p(x) · column[row_p]`, which is linear in the unknowns
/// with polynomial coefficients; requiring every x-monomial coefficient to
/// vanish yields one rational equation row per monomial. Row subsets of
/// size r+1 combine with column subsets of size r; when `r+1 > m.rows`
/// the condition is vacuous and the system is empty.
pub fn minor_constraints(m: &PolyMatrix, column: &UnknownColumn, r: usize) -> RatMatrix {
    assert_eq!(column.coeffs.len(), m.rows(), "column row count mismatch");
    let mut equations: BTreeSet<Vec<Rat>> = BTreeSet::new();
    if r + 1 > m.rows() || r > m.cols() {
        return RatMatrix::zero(0, column.unknowns);
    }
    for rowset in (0..m.rows()).combinations(r + 1) {
        for colset in (0..m.cols()).combinations(r) {
            let acc = border_expansion(m, column, &rowset, &colset);
            push_monomial_equations(&acc, column.unknowns, &mut equations);
        }
    }
    if equations.is_empty() {
        RatMatrix::zero(0, column.unknowns)
    } else {
        RatMatrix::from_rows(equations.into_iter().collect())
    }
}

/// Expansion of `det [m[rowset, colset] | column[rowset]]` along the
/// appended column: the polynomial coefficient of each unknown. `rowset`
/// must be one longer than `colset`.
fn border_expansion(
    m: &PolyMatrix,
    column: &UnknownColumn,
    rowset: &[usize],
    colset: &[usize],
) -> BTreeMap<usize, MultiPoly> {
    let mut acc: BTreeMap<usize, MultiPoly> = BTreeMap::new();
    for (p, &i) in rowset.iter().enumerate() {
        if column.coeffs[i].is_empty() {
            continue;
        }
        let rest: Vec<usize> = rowset
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != p)
            .map(|(_, &x)| x)
            .collect();
        let minor = m.submatrix(&rest, colset).determinant();
        if minor.is_zero() {
            continue;
        }
        // Cofactor sign along the appended (last) column.
        let signed = if (p + colset.len()) % 2 == 0 {
            minor
        } else {
            minor.neg()
        };
        for (u, coeff) in &column.coeffs[i] {
            let contribution = signed.mul(coeff);
            acc.entry(*u)
                .and_modify(|a| *a = a.add(&contribution))
                .or_insert(contribution);
        }
    }
    acc
}

/// Emits one normalized equation row per x-monomial appearing in the
/// per-unknown coefficients; proportional rows deduplicate via the set.
fn push_monomial_equations(
    acc: &BTreeMap<usize, MultiPoly>,
    unknowns: usize,
    equations: &mut BTreeSet<Vec<Rat>>,
) {
    let monos: BTreeSet<Mono> = acc
        .values()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    for mono in monos {
        let mut eq = vec![Rat::zero(); unknowns];
        for (u, p) in acc {
            eq[*u] = p.coeff(&mono);
        }
        if let Some(first) = eq.iter().find(|c| !c.is_zero()) {
            let inv = first.recip();
            for c in &mut eq {
                *c *= &inv;
            }
            equations.insert(eq);
        }
    }
}

/// Numerator of `p` after substituting `x_j := num / den`, cleared by
/// `den^target`: `Σ_d coeff_{x_j^d}(p) · num^d · den^(target−d)`.
/// Requires `target ≥ deg_j(p)`.
fn graph_numerator(
    p: &MultiPoly,
    j: usize,
    num: &MultiPoly,
    den: &MultiPoly,
    target: u32,
) -> MultiPoly {
    let mut out = MultiPoly::zero(p.nvars());
    for (d, c) in p.coeffs_in(j) {
        out = out.add(&c.mul(&num.pow(d)).mul(&den.pow(target - d)));
    }
    out
}

/// How many variables the rank-drop walk may pin to zero while hunting
/// for graph slices of the locus.
const RANK_DROP_ZERO_BUDGET: usize = 2;

/// Linear constraints on the unknowns forcing the r×r minors of
/// `[m | column]` that use the appended column to vanish on rational
/// families inside the locus where the rank of `m` drops below `r`.
///
/// Every r×r minor of `m` is divisible by the minors' common gcd `g`, so
/// the rank is at most r−1 on the locus `g = 0`; a column that lies
/// pointwise in the span of `m`'s columns therefore makes every bordered
/// r×r minor vanish on that locus. The locus is probed along graph
/// slices: wherever a variable x_j appears linearly in `g`, write
/// `g = B·x_j + A` and substitute `x_j = −A/B` into the bordered minors;
/// clearing `B`-denominators leaves polynomials whose monomial
/// coefficients must vanish, because the graph points fill the part of
/// the locus where `B ≠ 0`. When no variable is linear, the walk recurses
/// into coordinate restrictions: pinning x_j = 0 replaces `g` by its
/// x_j-free part, whose slices parametrize rational locus points with
/// that coordinate zero — and a restriction on which `g` vanishes
/// identically puts the whole coordinate subspace inside the locus, so
/// the restricted minors must vanish outright. Every equation is exact
/// (no sampling) and only excludes columns that leave the pointwise span
/// somewhere on the locus, never a genuine solution. Returns `None` when
/// the locus is empty (constant gcd) or no slice is found.
pub fn rank_drop_constraints(
    m: &PolyMatrix,
    column: &UnknownColumn,
    r: usize,
) -> Option<RatMatrix> {
    assert_eq!(column.coeffs.len(), m.rows(), "column row count mismatch");
    if r == 0 || r > m.rows() || r > m.cols() {
        return None;
    }
    let mut gcd = MultiPoly::zero(m.nvars());
    for rowset in (0..m.rows()).combinations(r) {
        for colset in (0..m.cols()).combinations(r) {
            let minor = m.submatrix(&rowset, &colset).determinant();
            gcd = poly_gcd(&gcd, &minor);
            if !gcd.is_zero() && gcd.is_constant() {
                return None;
            }
        }
    }
    let g = squarefree_part(&gcd);
    if g.is_zero() || g.is_constant() {
        return None;
    }
    let mut expansions = Vec::new();
    for rowset in (0..m.rows()).combinations(r) {
        for colset in (0..m.cols()).combinations(r - 1) {
            let acc = border_expansion(m, column, &rowset, &colset);
            if !acc.is_empty() {
                expansions.push(acc);
            }
        }
    }
    let mut walk = SliceWalk {
        expansions,
        unknowns: column.unknowns,
        nvars: m.nvars(),
        equations: BTreeSet::new(),
        visited: BTreeSet::new(),
    };
    walk.visit(&g, &[], RANK_DROP_ZERO_BUDGET);
    if walk.equations.is_empty() {
        None
    } else {
        Some(RatMatrix::from_rows(walk.equations.into_iter().collect()))
    }
}

/// Recursive slice search over coordinate restrictions of the rank-drop
/// locus; see [`rank_drop_constraints`].
struct SliceWalk {
    expansions: Vec<BTreeMap<usize, MultiPoly>>,
    unknowns: usize,
    nvars: usize,
    equations: BTreeSet<Vec<Rat>>,
    visited: BTreeSet<Vec<usize>>,
}

impl SliceWalk {
    /// Restriction of every expansion to the subspace `x_zeros = 0`,
    /// dropping the ones that vanish there.
    fn restricted(&self, zeros: &[usize]) -> Vec<BTreeMap<usize, MultiPoly>> {
        self.expansions
            .iter()
            .map(|acc| {
                acc.iter()
                    .map(|(u, p)| {
                        let mut q = p.clone();
                        for &z in zeros {
                            q = q.at_zero(z);
                        }
                        (*u, q)
                    })
                    .filter(|(_, q)| !q.is_zero())
                    .collect::<BTreeMap<usize, MultiPoly>>()
            })
            .filter(|acc| !acc.is_empty())
            .collect()
    }

    /// `g` is the squarefree locus cut on the subspace `x_zeros = 0`,
    /// neither zero nor constant. Emits graph-slice equations for every
    /// variable linear in `g`, then recurses into deeper restrictions
    /// while the zero budget lasts.
    fn visit(&mut self, g: &MultiPoly, zeros: &[usize], budget: usize) {
        let restricted = self.restricted(zeros);
        for j in 0..self.nvars {
            if g.degree_in(j) != 1 {
                continue;
            }
            let parts = g.coeffs_in(j);
            let neg_a = match parts.get(&0) {
                Some(a) => a.neg(),
                None => MultiPoly::zero(self.nvars),
            };
            let b = &parts[&1];
            for acc in &restricted {
                let target = acc.values().map(|p| p.degree_in(j)).max().unwrap_or(0);
                let substituted: BTreeMap<usize, MultiPoly> = acc
                    .iter()
                    .map(|(u, p)| (*u, graph_numerator(p, j, &neg_a, b, target)))
                    .collect();
                push_monomial_equations(&substituted, self.unknowns, &mut self.equations);
            }
        }
        if budget == 0 {
            return;
        }
        for j in 0..self.nvars {
            if g.degree_in(j) == 0 {
                continue;
            }
            let mut deeper = zeros.to_vec();
            deeper.push(j);
            deeper.sort_unstable();
            if !self.visited.insert(deeper.clone()) {
                continue;
            }
            let gz = g.at_zero(j);
            if gz.is_zero() {
                // The whole coordinate subspace sits inside the locus:
                // the restricted minors must vanish identically.
                for acc in self.restricted(&deeper) {
                    push_monomial_equations(&acc, self.unknowns, &mut self.equations);
                }
                continue;
            }
            let gz = squarefree_part(&gz);
            if !gz.is_constant() {
                self.visit(&gz, &deeper, budget - 1);
            }
        }
    }
}
