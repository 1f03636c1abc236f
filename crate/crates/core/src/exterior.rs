//! Exterior algebra of a rank-`n` lattice `Λ ⊂ V` and its dual, as a model
//! for the cohomology of the torus `T^n = V/Λ`.
//!
//! Indices are 0-based internally: `e_0 … e_{n-1}` is the lattice basis and
//! `e_0^* … e_{n-1}^*` the dual basis. The orientation sends
//! `e_0 ∧ … ∧ e_{n-1}` to `1`. A covector `e_I^*` evaluates on `e_J` as the
//! determinant pairing, so `<e_I^*, e_J> = δ_{IJ}` for sorted `I`, `J`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::{self, Q};

/// A torus `V/Λ` of real dimension `n` with the standard orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusContext {
    n: usize,
}

impl TorusContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Orientation scalar of `e_0 ∧ … ∧ e_{n-1}`; always `1`.
    pub fn orientation(&self) -> Q {
        Q::one()
    }

    /// All strictly increasing index tuples of length `q`, lexicographic.
    pub fn basis_tuples(&self, q: usize) -> Vec<Vec<usize>> {
        subsets(self.n, q)
    }
}

/// Whether an element lives in `∧^q V` or in `∧^q V^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Vector,
    Covector,
}

/// Homogeneous element of `∧^q V` or `∧^q V^*` with rational coefficients.
#[derive(Clone, Debug)]
pub struct ExteriorElement {
    ctx: TorusContext,
    degree: usize,
    side: Side,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

impl PartialEq for ExteriorElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.degree == other.degree
            && self.side == other.side
            && self.nonzero_terms().eq(other.nonzero_terms())
    }
}

impl Eq for ExteriorElement {}

impl ExteriorElement {
    pub fn zero(ctx: TorusContext, side: Side, degree: usize) -> Result<Self> {
        if degree > ctx.n {
            return Err(Error::DegreeOverflow { left: degree, right: 0, n: ctx.n });
        }
        Ok(Self { ctx, degree, side, coeffs: BTreeMap::new() })
    }

    /// The scalar `c` viewed as a degree-0 element.
    pub fn scalar(ctx: TorusContext, side: Side, c: Q) -> Self {
        let mut e = Self::zero(ctx, side, 0).expect("degree 0 always fits");
        e.add_term(Vec::new(), c);
        e
    }

    /// `e_{i_1} ∧ … ∧ e_{i_q}` (or the covector analogue) for indices in any
    /// order; repeated indices give zero, unsorted ones pick up the sign of
    /// the sorting permutation.
    pub fn basis(ctx: TorusContext, side: Side, indices: &[usize]) -> Result<Self> {
        Self::term(ctx, side, indices, Q::one())
    }

    pub fn term(ctx: TorusContext, side: Side, indices: &[usize], coeff: Q) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= ctx.n) {
            return Err(Error::IndexOutOfRange { index: bad, n: ctx.n });
        }
        let mut e = Self::zero(ctx, side, indices.len())?;
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            e.add_term(sorted, if sign { -coeff } else { coeff });
        }
        Ok(e)
    }

    /// Degree-1 element `sum_i v_i e_i` (or `sum_i v_i e_i^*`).
    pub fn from_vector(ctx: TorusContext, side: Side, v: &[Q]) -> Result<Self> {
        if v.len() != ctx.n {
            return Err(Error::Shape {
                expected: format!("vector of length {}", ctx.n),
                found: format!("length {}", v.len()),
            });
        }
        let mut e = Self::zero(ctx, side, 1)?;
        for (i, c) in v.iter().enumerate() {
            e.add_term(vec![i], c.clone());
        }
        Ok(e)
    }

    fn add_term(&mut self, key: Vec<usize>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert_with(Q::zero);
        *slot += c;
    }

    pub fn context(&self) -> TorusContext {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Coefficient of the sorted basis tuple `indices`.
    pub fn coeff(&self, indices: &[usize]) -> Q {
        self.coeffs.get(indices).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_terms().next().is_none()
    }

    /// Coefficients in the lexicographic basis of the degree.
    pub fn to_coordinates(&self) -> Vec<Q> {
        self.ctx.basis_tuples(self.degree).iter().map(|t| self.coeff(t)).collect()
    }

    pub fn from_coordinates(ctx: TorusContext, side: Side, degree: usize, coords: &[Q]) -> Result<Self> {
        let tuples = ctx.basis_tuples(degree);
        if coords.len() != tuples.len() {
            return Err(Error::Shape {
                expected: format!("{} coordinates", tuples.len()),
                found: format!("{}", coords.len()),
            });
        }
        let mut e = Self::zero(ctx, side, degree)?;
        for (t, c) in tuples.into_iter().zip(coords) {
            e.add_term(t, c.clone());
        }
        Ok(e)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), ..self.clone() };
        for (k, v) in self.nonzero_terms() {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Shape {
                expected: format!("degree {}", self.degree),
                found: format!("degree {}", other.degree),
            });
        }
        let mut out = self.clone();
        for (k, v) in other.nonzero_terms() {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch { left: self.ctx.n, right: other.ctx.n });
        }
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        Ok(())
    }

    /// Evaluates a covector-side element on `q` vectors of `V` (given in
    /// lattice coordinates) as an alternating multilinear form.
    pub fn evaluate(&self, vectors: &[Vec<Q>]) -> Result<Q> {
        if self.side != Side::Covector {
            return Err(Error::SideMismatch);
        }
        if vectors.len() != self.degree {
            return Err(Error::Shape {
                expected: format!("{} arguments", self.degree),
                found: format!("{}", vectors.len()),
            });
        }
        let mut total = Q::zero();
        for (idx, c) in self.nonzero_terms() {
            let rows: Vec<Vec<Q>> =
                idx.iter().map(|&i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
            let det = if rows.is_empty() {
                Q::one()
            } else {
                RationalMatrix::from_rows(rows)?.determinant()
            };
            total += c * det;
        }
        Ok(total)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.side == Side::Covector { "*" } else { "" };
        let mut first = true;
        for (idx, c) in self.nonzero_terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if idx.is_empty() {
                continue;
            }
            let names: Vec<_> = idx.iter().map(|i| format!("e{}{star}", i + 1)).collect();
            write!(f, " {}", names.join("^"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// All `q`-subsets of `0..n` as sorted tuples in lexicographic order.
pub fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < q - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q <= n {
        rec(0, n, q, &mut Vec::with_capacity(q), &mut out);
    }
    out
}

/// Sorts `indices`; `None` if an index repeats, otherwise the sorted tuple and
/// whether the permutation was odd.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Exterior product.
pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    a.check_compatible(b)?;
    let n = a.ctx.n;
    if a.degree + b.degree > n {
        return Err(Error::DegreeOverflow { left: a.degree, right: b.degree, n });
    }
    let mut out = ExteriorElement::zero(a.ctx, a.side, a.degree + b.degree)?;
    for (i, x) in a.nonzero_terms() {
        for (j, y) in b.nonzero_terms() {
            let mut idx = i.clone();
            idx.extend_from_slice(j);
            if let Some((sorted, odd)) = sort_with_sign(&idx) {
                let c = x * y;
                out.add_term(sorted, if odd { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Interior product `ι(λ)α` with `λ` inserted in the last slot:
/// `(ι(λ)α)(v_1, …, v_{q-1}) = α(v_1, …, v_{q-1}, λ)`.
pub fn contract(lambda: &[i64], a: &ExteriorElement) -> Result<ExteriorElement> {
    let lambda = rational::ints(lambda);
    contract_rational(&lambda, a)
}

/// [`contract`] for a rational vector `λ ∈ V`.
pub fn contract_rational(lambda: &[Q], a: &ExteriorElement) -> Result<ExteriorElement> {
    if a.side != Side::Covector {
        return Err(Error::SideMismatch);
    }
    if lambda.len() != a.ctx.n {
        return Err(Error::Shape {
            expected: format!("vector of length {}", a.ctx.n),
            found: format!("length {}", lambda.len()),
        });
    }
    if a.degree == 0 {
        return Err(Error::ContractScalar);
    }
    let q = a.degree;
    let mut out = ExteriorElement::zero(a.ctx, Side::Covector, q - 1)?;
    for (idx, c) in a.nonzero_terms() {
        // Expanding the determinant along the last argument: the factor at
        // (0-based) position p carries sign (-1)^(q-1-p).
        for (p, &i) in idx.iter().enumerate() {
            if lambda[i].is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(p);
            let term = c * &lambda[i];
            out.add_term(rest, if (q - 1 - p) % 2 == 1 { -term } else { term });
        }
    }
    Ok(out)
}

/// The cohomological pairing `<α, γ>''` of a degree-`q` class with a loop
/// class `γ ∈ Λ = π_1(T^n)`. On cohomology this is contraction with `γ` in
/// the last slot, so this is [`contract`] under its topological name.
pub fn translation_pairing(a: &ExteriorElement, gamma: &[i64]) -> Result<ExteriorElement> {
    contract(gamma, a)
}

/// Sign of `vol(e_I ∧ e_J)` for disjoint sorted tuples whose union is `0..n`.
fn complement_sign(i: &[usize], j: &[usize]) -> bool {
    let mut idx = i.to_vec();
    idx.extend_from_slice(j);
    sort_with_sign(&idx).expect("disjoint tuples").1
}

fn complement(n: usize, idx: &[usize]) -> Vec<usize> {
    (0..n).filter(|k| !idx.contains(k)).collect()
}

/// Poincaré duality `∧^q V^* → ∧^{n-q} V`: the unique `w` with
/// `a(v) = vol(v ∧ w)` for all `v ∈ ∧^q V`.
pub fn pd_to_vector(a: &ExteriorElement) -> Result<ExteriorElement> {
    if a.side != Side::Covector {
        return Err(Error::SideMismatch);
    }
    let n = a.ctx.n;
    let mut out = ExteriorElement::zero(a.ctx, Side::Vector, n - a.degree)?;
    for (idx, c) in a.nonzero_terms() {
        let comp = complement(n, idx);
        let odd = complement_sign(idx, &comp);
        out.add_term(comp, if odd { -c.clone() } else { c.clone() });
    }
    Ok(out)
}

/// Inverse of [`pd_to_vector`]: `w ↦ (v ↦ vol(v ∧ w))`.
pub fn pd_to_covector(w: &ExteriorElement) -> Result<ExteriorElement> {
    if w.side != Side::Vector {
        return Err(Error::SideMismatch);
    }
    let n = w.ctx.n;
    let mut out = ExteriorElement::zero(w.ctx, Side::Covector, n - w.degree)?;
    for (idx, c) in w.nonzero_terms() {
        let comp = complement(n, idx);
        let odd = complement_sign(&comp, idx);
        out.add_term(comp, if odd { -c.clone() } else { c.clone() });
    }
    Ok(out)
}

/// An element of `GL(Λ)`: an integer matrix of determinant `±1` acting on
/// `H_1 = Λ`, columns being the images of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAutomorphism {
    ctx: TorusContext,
    matrix: RationalMatrix,
}

impl LatticeAutomorphism {
    pub fn new(ctx: TorusContext, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if rows.len() != ctx.n || rows.iter().any(|r| r.len() != ctx.n) {
            return Err(Error::Shape {
                expected: format!("{0}x{0} integer matrix", ctx.n),
                found: format!("{} rows", rows.len()),
            });
        }
        Self::from_matrix(ctx, RationalMatrix::from_i64_rows(&rows))
    }

    pub fn from_matrix(ctx: TorusContext, matrix: RationalMatrix) -> Result<Self> {
        if matrix.nrows() != ctx.n || !matrix.is_square() {
            return Err(Error::Shape {
                expected: format!("{0}x{0} matrix", ctx.n),
                found: format!("{}x{}", matrix.nrows(), matrix.ncols()),
            });
        }
        let det = matrix.determinant();
        if !matrix.is_integral() || (det != Q::one() && det != -Q::one()) {
            return Err(Error::NotUnimodular { det: rational::to_string(&det) });
        }
        Ok(Self { ctx, matrix })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn context(&self) -> TorusContext {
        self.ctx
    }

    pub fn inverse(&self) -> Self {
        let inv = self.matrix.inverse().expect("unimodular");
        Self { ctx: self.ctx, matrix: inv }
    }

    /// Matrix of the induced action on `∧^q V^*` in the lexicographic basis.
    /// On `V^*` the action is the inverse transpose; it is extended to higher
    /// degrees multiplicatively.
    pub fn induced_on_forms(&self, q: usize) -> Result<RationalMatrix> {
        let ctx = self.ctx;
        let dual = self.matrix.inverse().expect("unimodular").transpose();
        let images: Vec<ExteriorElement> = (0..ctx.n)
            .map(|i| ExteriorElement::from_vector(ctx, Side::Covector, &dual.column(i)))
            .collect::<Result<_>>()?;
        let tuples = ctx.basis_tuples(q);
        let columns: Vec<Vec<Q>> = tuples
            .iter()
            .map(|t| {
                let mut acc = ExteriorElement::scalar(ctx, Side::Covector, Q::one());
                for &i in t {
                    acc = wedge(&acc, &images[i])?;
                }
                Ok(acc.to_coordinates())
            })
            .collect::<Result<_>>()?;
        Ok(RationalMatrix::from_columns(tuples.len(), &columns))
    }
}

/// Dimension of the subspace of `∧^i V^*` fixed by every generator, for
/// `i = 0, …, n`.
pub fn invariant_dimensions(ctx: TorusContext, generators: &[LatticeAutomorphism]) -> Result<Vec<usize>> {
    if let Some(g) = generators.iter().find(|g| g.ctx != ctx) {
        return Err(Error::ContextMismatch { left: ctx.n, right: g.ctx.n });
    }
    (0..=ctx.n)
        .map(|q| {
            let size = ctx.basis_tuples(q).len();
            if generators.is_empty() {
                return Ok(size);
            }
            let id = RationalMatrix::identity(size);
            let mut rows = Vec::with_capacity(size * generators.len());
            for g in generators {
                let diff = &g.induced_on_forms(q)? - &id;
                rows.extend(diff.to_rows());
            }
            Ok(size - RationalMatrix::from_rows(rows)?.rank())
        })
        .collect()
}

/// Outcome of checking `PD(ι(λ)a) = (-1)^{n-q} PD(a) ∧ λ` over every basis
/// covector `a` of degree `1 ≤ q ≤ n` and every basis lattice vector `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub n: usize,
    pub checked: usize,
    /// `(I, λ index)` pairs where the two sides differ.
    pub failures: Vec<(Vec<usize>, usize)>,
}

impl DiagramReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn duality_diagram(ctx: TorusContext) -> Result<DiagramReport> {
    let n = ctx.n;
    let mut checked = 0;
    let mut failures = Vec::new();
    for q in 1..=n {
        let sign = if (n - q).is_multiple_of(2) { Q::one() } else { -Q::one() };
        for idx in ctx.basis_tuples(q) {
            let a = ExteriorElement::basis(ctx, Side::Covector, &idx)?;
            let pd_a = pd_to_vector(&a)?;
            for l in 0..n {
                let mut lambda = vec![0i64; n];
                lambda[l] = 1;
                let left = pd_to_vector(&contract(&lambda, &a)?)?;
                let right = wedge(&pd_a, &ExteriorElement::basis(ctx, Side::Vector, &[l])?)?.scale(&sign);
                checked += 1;
                if left != right {
                    failures.push((idx.clone(), l));
                }
            }
        }
    }
    Ok(DiagramReport { n, checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ctx(n: usize) -> TorusContext {
        TorusContext::new(n).unwrap()
    }

    fn cov(n: usize, idx: &[usize]) -> ExteriorElement {
        ExteriorElement::basis(ctx(n), Side::Covector, idx).unwrap()
    }

    fn vecb(n: usize, idx: &[usize]) -> ExteriorElement {
        ExteriorElement::basis(ctx(n), Side::Vector, idx).unwrap()
    }

    #[test]
    fn wedge_basis_and_anticommutativity() {
        let e1 = cov(3, &[0]);
        let e2 = cov(3, &[1]);
        assert_eq!(wedge(&e1, &e2).unwrap(), cov(3, &[0, 1]));
        assert_eq!(wedge(&e2, &e1).unwrap(), cov(3, &[0, 1]).scale(&int(-1)));
        let s = e1.add(&e2).unwrap();
        assert!(wedge(&s, &s).unwrap().is_zero());
    }

    #[test]
    fn wedge_errors() {
        let a = cov(2, &[0]);
        let b = vecb(2, &[1]);
        assert_eq!(wedge(&a, &b), Err(Error::SideMismatch));
        let top = cov(2, &[0, 1]);
        assert_eq!(wedge(&top, &a), Err(Error::DegreeOverflow { left: 2, right: 1, n: 2 }));
        assert!(matches!(wedge(&cov(3, &[0]), &a), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn contraction_last_slot() {
        let a = cov(3, &[0, 1]);
        assert_eq!(contract(&[0, 1, 0], &a).unwrap(), cov(3, &[0]));
        assert_eq!(contract(&[1, 0, 0], &a).unwrap(), cov(3, &[1]).scale(&int(-1)));
        assert!(contract(&[0, 0, 1], &a).unwrap().is_zero());
        let scalar = ExteriorElement::scalar(ctx(3), Side::Covector, int(1));
        assert_eq!(contract(&[1, 0, 0], &scalar), Err(Error::ContractScalar));
        assert_eq!(translation_pairing(&a, &[0, 1, 0]).unwrap(), cov(3, &[0]));
    }

    #[test]
    fn poincare_duality_examples() {
        assert_eq!(pd_to_vector(&cov(2, &[0])).unwrap(), vecb(2, &[1]));
        assert_eq!(pd_to_vector(&cov(2, &[1])).unwrap(), vecb(2, &[0]).scale(&int(-1)));
        assert_eq!(pd_to_vector(&cov(3, &[0, 1])).unwrap(), vecb(3, &[2]));
    }

    #[test]
    fn equality_ignores_stored_zeros() {
        let a = cov(2, &[0]).add(&cov(2, &[1])).unwrap().sub(&cov(2, &[1])).unwrap();
        assert_eq!(a, cov(2, &[0]));
    }

    #[test]
    fn unimodularity_enforced() {
        let c = ctx(2);
        assert!(LatticeAutomorphism::new(c, &[vec![2, 0], vec![0, 1]]).is_err());
        assert!(LatticeAutomorphism::new(c, &[vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn no_generators_gives_binomials() {
        assert_eq!(invariant_dimensions(ctx(4), &[]).unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn diagram_small_tori() {
        for n in 1..=4 {
            let r = duality_diagram(ctx(n)).unwrap();
            assert!(r.passes(), "{r:?}");
        }
    }
}
