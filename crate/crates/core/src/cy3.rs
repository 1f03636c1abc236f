//! Threefold mirror-map model.
//!
//! `H^even` of the mirror `X̌` is modelled by quadruples
//! `(a0, a2, a4, a6) ∈ Q ⊕ Q^r ⊕ Q^r ⊕ Q`, with `a2` in the basis
//! `e_1 … e_r` of `H^2` and `a4` in the dual basis (component `k` is the value
//! on `e_k`). The same space, with the mirror map taken to be the identity on
//! coordinates, models `H^3(X, Q)` with its intersection form. Orientation is
//! normalized by `spair((1,0,0,0), (0,0,0,1)) = 1`; the class of a fiber is
//! `[T^3] = (0,0,0,1)`.
//!
//! Two inputs are assumptions of the model rather than consequences: the
//! mirror Riemann-Roch identity `-σ_0·σ_D = χ(O(D))`, and the linear term
//! `C = c_2/12` of `-σ_0·σ_D`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, Subspace};
use crate::rational::{self, Q};
use crate::weightfilt::{self, MaxUnipotentReport};

/// Topological type of a Calabi-Yau threefold mirror: triple intersection
/// numbers and the linear form `D ↦ c_2·D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CY3Datum {
    label: String,
    rank: usize,
    cubic: Vec<i64>,
    c2: Vec<i64>,
}

impl CY3Datum {
    /// Builds a datum from (possibly partial) cubic entries `(i, j, k, value)`,
    /// 0-based. Each entry is applied to all permutations of its indices;
    /// two entries naming the same unordered triple must agree.
    pub fn from_entries(
        label: impl Into<String>,
        rank: usize,
        entries: &[(usize, usize, usize, i64)],
        c2: Vec<i64>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invalid(String::from("rank must be positive")));
        }
        if c2.len() != rank {
            return Err(Error::Shape { expected: format!("c2 of length {rank}"), found: format!("{}", c2.len()) });
        }
        let mut cubic: Vec<Option<i64>> = vec![None; rank * rank * rank];
        for &(i, j, k, value) in entries {
            if let Some(&bad) = [i, j, k].iter().find(|&&x| x >= rank) {
                return Err(Error::IndexOutOfRange { index: bad, n: rank });
            }
            for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                let slot = &mut cubic[(a * rank + b) * rank + c];
                match *slot {
                    Some(existing) if existing != value => {
                        return Err(Error::Invalid(format!(
                            "inconsistent cubic entries for ({i},{j},{k}): {existing} vs {value}"
                        )));
                    }
                    _ => *slot = Some(value),
                }
            }
        }
        Ok(Self {
            label: label.into(),
            rank,
            cubic: cubic.into_iter().map(|x| x.unwrap_or(0)).collect(),
            c2,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn c2(&self) -> &[i64] {
        &self.c2
    }

    pub fn cubic_entry(&self, i: usize, j: usize, k: usize) -> i64 {
        self.cubic[(i * self.rank + j) * self.rank + k]
    }

    pub fn is_cubic_zero(&self) -> bool {
        self.cubic.iter().all(|&x| x == 0)
    }

    /// `c(D, E, F) = sum c_ijk D_i E_j F_k`.
    pub fn triple(&self, d: &[Q], e: &[Q], f: &[Q]) -> Q {
        let r = self.rank;
        let mut total = Q::zero();
        for i in 0..r {
            if d[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if e[j].is_zero() {
                    continue;
                }
                let de = &d[i] * &e[j];
                for k in 0..r {
                    let c = self.cubic_entry(i, j, k);
                    if c != 0 && !f[k].is_zero() {
                        total += &de * &f[k] * Q::from_integer(c.into());
                    }
                }
            }
        }
        total
    }

    /// `c_2·D`.
    pub fn c2_dot(&self, d: &[Q]) -> Q {
        self.c2.iter().zip(d).fold(Q::zero(), |acc, (c, x)| acc + x * Q::from_integer((*c).into()))
    }

    /// `c_2` as an `H^4` dual vector.
    pub fn c2_class(&self) -> Vec<Q> {
        self.c2.iter().map(|&c| rational::int(c)).collect()
    }

    pub fn basis_vector(&self, j: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.rank];
        v[j] = Q::one();
        v
    }

    fn check_len(&self, v: &[Q]) -> Result<()> {
        if v.len() == self.rank {
            Ok(())
        } else {
            Err(Error::Shape { expected: format!("vector of length {}", self.rank), found: format!("length {}", v.len()) })
        }
    }

    /// Cup product `H^2 ⊗ H^2 → H^4`: component `k` is `c(D, E, e_k)`.
    pub fn cup22(&self, d: &[Q], e: &[Q]) -> Vec<Q> {
        (0..self.rank).map(|k| self.triple(d, e, &self.basis_vector(k))).collect()
    }

    /// Symplectic pairing
    /// `(α, β) = α0 β6 - <β4, α2> + <α4, β2> - α6 β0`.
    pub fn spair(&self, x: &EvenClass, y: &EvenClass) -> Q {
        &x.a0 * &y.a6 - rational::dot(&y.a4, &x.a2) + rational::dot(&x.a4, &y.a2) - &x.a6 * &y.a0
    }

    /// Gram matrix of [`Self::spair`] on the coordinate basis.
    pub fn spair_gram(&self) -> RationalMatrix {
        let n = 2 * self.rank + 2;
        let basis: Vec<EvenClass> = (0..n).map(|i| EvenClass::unit(self.rank, i)).collect();
        let mut g = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.spair(&basis[i], &basis[j]));
            }
        }
        g
    }

    /// Multiplication by `e^D`.
    pub fn exp_mult(&self, d: &[Q], x: &EvenClass) -> EvenClass {
        let half = rational::frac(1, 2);
        let sixth = rational::frac(1, 6);
        let dd = self.cup22(d, d);
        let a2 = x.a2.iter().zip(d).map(|(a, di)| a + &x.a0 * di).collect();
        let d_a2 = self.cup22(d, &x.a2);
        let a4 = (0..self.rank).map(|k| &x.a4[k] + &d_a2[k] + &x.a0 * &dd[k] * &half).collect();
        let a6 = &x.a6
            + rational::dot(&x.a4, d)
            + self.triple(d, d, &x.a2) * &half
            + &x.a0 * self.triple(d, d, d) * &sixth;
        EvenClass { a0: x.a0.clone(), a2, a4, a6 }
    }

    /// Mukai vector of `O(D)`:
    /// `(1, D, D²/2 + c_2/24, D³/6 + c_2·D/24)`.
    pub fn mukai_line_bundle(&self, d: &[Q]) -> Result<EvenClass> {
        self.check_len(d)?;
        let dd = self.cup22(d, d);
        let c2 = self.c2_class();
        let a4 = (0..self.rank).map(|k| &dd[k] / rational::int(2) + &c2[k] / rational::int(24)).collect();
        let a6 = self.triple(d, d, d) / rational::int(6) + self.c2_dot(d) / rational::int(24);
        Ok(EvenClass { a0: Q::one(), a2: d.to_vec(), a4, a6 })
    }

    /// Section class `σ_D = v(O(-D))`.
    pub fn sigma(&self, d: &[Q]) -> Result<EvenClass> {
        let neg: Vec<Q> = d.iter().map(|x| -x).collect();
        self.mukai_line_bundle(&neg)
    }

    pub fn sigma0(&self) -> EvenClass {
        self.sigma(&vec![Q::zero(); self.rank]).expect("length matches rank")
    }

    /// Fiber class `[T^3] = (0,0,0,1)`.
    pub fn fiber_class(&self) -> EvenClass {
        EvenClass::unit(self.rank, 2 * self.rank + 1)
    }

    /// `α_0 = (1,0,0,0)`, with `α_0·[T^3] = 1`.
    pub fn alpha0(&self) -> EvenClass {
        EvenClass::unit(self.rank, 0)
    }

    /// Monodromy of translation by `σ_D`: `T_D = e^{-D}`.
    pub fn translate(&self, d: &[Q], x: &EvenClass) -> EvenClass {
        let neg: Vec<Q> = d.iter().map(|v| -v).collect();
        self.exp_mult(&neg, x)
    }

    pub fn translate_matrix(&self, d: &[Q]) -> RationalMatrix {
        let n = 2 * self.rank + 2;
        let cols: Vec<Vec<Q>> =
            (0..n).map(|i| self.translate(d, &EvenClass::unit(self.rank, i)).to_vec()).collect();
        RationalMatrix::from_columns(n, &cols)
    }

    /// Picard-Lefschetz transvection `α ↦ α + (α, σ_0) σ_0`.
    pub fn picard_lefschetz(&self, x: &EvenClass) -> EvenClass {
        let s0 = self.sigma0();
        x.add(&s0.scale(&self.spair(x, &s0)))
    }

    pub fn leray_filtration(&self) -> LerayFiltration {
        LerayFiltration::new(self.rank)
    }

    /// Checks `(T_D - I) α ∈ F_{i-1}` for `α ∈ F_i` and compares the induced
    /// graded map with cup product by `D`.
    pub fn graded_action_check(&self, d: &[Q], x: &EvenClass, level: usize) -> Result<GradedActionReport> {
        self.check_len(d)?;
        let leray = self.leray_filtration();
        if level > 3 || !leray.contains(level, x) {
            return Err(Error::NotInFiltration { level });
        }
        let diff = self.translate(d, x).sub(x);
        let lands_in_lower = if level == 0 { diff.is_zero() } else { leray.contains(level - 1, &diff) };
        let source = x.graded_component(level);
        let (image, cup) = if level == 0 {
            (Vec::new(), Vec::new())
        } else {
            (diff.graded_component(level - 1), self.graded_cup(d, level, &source))
        };
        let negated: Vec<Q> = cup.iter().map(|v| -v).collect();
        let model_sign_ok = image == negated;
        // Identify the graded pieces with the duality isomorphisms, negated on
        // Gr_0 and Gr_1; the graded map becomes cup with (-1)^i D.
        let normalized_sign_ok = if level == 0 {
            true
        } else {
            let s_hi = graded_sign(level);
            let s_lo = graded_sign(level - 1);
            let lhs: Vec<Q> = image.iter().map(|v| v * rational::int(s_lo)).collect();
            let scaled: Vec<Q> = source.iter().map(|v| v * rational::int(s_hi)).collect();
            let parity = if level.is_multiple_of(2) { 1 } else { -1 };
            let rhs: Vec<Q> =
                self.graded_cup(d, level, &scaled).iter().map(|v| v * rational::int(parity)).collect();
            lhs == rhs
        };
        Ok(GradedActionReport { level, lands_in_lower, graded_image: image, cup_with_d: cup, model_sign_ok, normalized_sign_ok })
    }

    /// Cup with `D` from `Gr_i` to `Gr_{i-1}` in graded coordinates.
    fn graded_cup(&self, d: &[Q], level: usize, component: &[Q]) -> Vec<Q> {
        match level {
            3 => d.iter().map(|x| x * &component[0]).collect(),
            2 => self.cup22(d, component),
            1 => vec![rational::dot(component, d)],
            _ => Vec::new(),
        }
    }

    /// `(spair(α_0, (T_{D1}-I)(T_{D2}-I)(T_{D3}-I) α_0), -c(D1,D2,D3), equal)`.
    pub fn triple_product_check(&self, d1: &[Q], d2: &[Q], d3: &[Q]) -> Result<(Q, Q, bool)> {
        for d in [d1, d2, d3] {
            self.check_len(d)?;
        }
        let a0 = self.alpha0();
        let mut v = a0.clone();
        for d in [d3, d2, d1] {
            v = self.translate(d, &v).sub(&v);
        }
        let lhs = self.spair(&a0, &v);
        let rhs = -self.triple(d1, d2, d3);
        let eq = lhs == rhs;
        Ok((lhs, rhs, eq))
    }

    /// `f(t) = spair(σ_0, σ_{tD})`.
    pub fn sigma_pairing_at(&self, d: &[Q], t: i64) -> Q {
        let td: Vec<Q> = d.iter().map(|x| x * rational::int(t)).collect();
        self.spair(&self.sigma0(), &self.sigma(&td).expect("length checked"))
    }

    /// Interpolates `f(t) = spair(σ_0, σ_{tD})` on `t = 0..3` and checks it
    /// against `-(c(D,D,D) t³/6 + t c_2·D/12)`, oddness, and the constant
    /// third difference `-c(D,D,D)`.
    pub fn sigma_polynomial(&self, d: &[Q]) -> Result<SigmaPolynomial> {
        self.check_len(d)?;
        let f: Vec<Q> = (0..4).map(|t| self.sigma_pairing_at(d, t)).collect();
        let coeffs = newton_to_monomial(&f);
        let cube = self.triple(d, d, d);
        let c2d = self.c2_dot(d);
        let closed = |t: i64| -> Q {
            let t = rational::int(t);
            -(&cube * &t * &t * &t / rational::int(6) + &t * &c2d / rational::int(12))
        };
        let eval = |t: i64| -> Q {
            let tq = rational::int(t);
            coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * &tq + c)
        };
        let sample: Vec<i64> = (-4..=4).collect();
        let matches_closed_form = sample.iter().all(|&t| self.sigma_pairing_at(d, t) == closed(t) && eval(t) == closed(t));
        let odd = (1..=4).all(|t| self.sigma_pairing_at(d, -t) == -self.sigma_pairing_at(d, t));
        let expected = -cube.clone();
        let third_differences: Vec<Q> = (-3..=1)
            .map(|t| {
                let v: Vec<Q> = (0..4).map(|s| self.sigma_pairing_at(d, t + s)).collect();
                &v[3] - &v[2] * rational::int(3) + &v[1] * rational::int(3) - &v[0]
            })
            .collect();
        // Δ^3 f(t) = σ_0·(T_D - I)^3 σ_{tD}, computed on the operator side.
        let operator_side: Vec<Q> = (-3..=1)
            .map(|t| {
                let td: Vec<Q> = d.iter().map(|x| x * rational::int(t)).collect();
                let mut v = self.sigma(&td).expect("length checked");
                for _ in 0..3 {
                    v = self.translate(d, &v).sub(&v);
                }
                self.spair(&self.sigma0(), &v)
            })
            .collect();
        let third_difference_ok =
            third_differences.iter().chain(&operator_side).all(|x| *x == expected);
        Ok(SigmaPolynomial {
            coefficients: coeffs,
            matches_closed_form,
            odd,
            third_difference: third_differences[0].clone(),
            third_difference_ok,
        })
    }

    /// `χ(O(D)) = D³/6 + c_2·D/12`, cross-checked against `-σ_0·σ_D` and the
    /// Mukai pairing `(v(O), v(O(D)))`.
    pub fn chi_line_bundle(&self, d: &[Q]) -> Result<ChiReport> {
        self.check_len(d)?;
        let closed_form = self.triple(d, d, d) / rational::int(6) + self.c2_dot(d) / rational::int(12);
        let minus_sigma_pairing = -self.spair(&self.sigma0(), &self.sigma(d)?);
        let zero = vec![Q::zero(); self.rank];
        let mukai_pairing = self.spair(&self.mukai_line_bundle(&zero)?, &self.mukai_line_bundle(d)?);
        let consistent = closed_form == minus_sigma_pairing && closed_form == mukai_pairing;
        Ok(ChiReport { closed_form, minus_sigma_pairing, mukai_pairing, consistent })
    }

    /// `spair(α, β)` for `α, β ∈ F_1`; errors if either lies outside `F_1`.
    pub fn f1_isotropy_check(&self, x: &EvenClass, y: &EvenClass) -> Result<bool> {
        let leray = self.leray_filtration();
        if !leray.contains(1, x) || !leray.contains(1, y) {
            return Err(Error::NotInFiltration { level: 1 });
        }
        Ok(self.spair(x, y).is_zero())
    }

    pub fn hard_lefschetz_check(&self, d: &[Q]) -> Result<HardLefschetz> {
        self.check_len(d)?;
        let r = self.rank;
        let mut m = RationalMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                m.set(i, j, self.triple(d, &self.basis_vector(i), &self.basis_vector(j)));
            }
        }
        Ok(HardLefschetz {
            cube_nonzero: !self.triple(d, d, d).is_zero(),
            cup_invertible: !m.determinant().is_zero(),
            nonzero: d.iter().any(|x| !x.is_zero()),
        })
    }

    /// `N_j = log T_{e_j}`.
    pub fn monodromy_logs(&self) -> Vec<RationalMatrix> {
        (0..self.rank)
            .map(|j| weightfilt::log_unipotent(&self.translate_matrix(&self.basis_vector(j))).expect("translations are unipotent"))
            .collect()
    }

    /// Compares the weight filtration of `N = sum a_j log T_{e_j}` (center 3)
    /// with the Leray filtration, together with the maximally-unipotent
    /// conditions for `{T_{e_j}}`.
    pub fn weight_vs_leray(&self, a: &[Q]) -> Result<WeightVsLeray> {
        self.check_len(a)?;
        let hl = self.hard_lefschetz_check(a)?;
        if !hl.passes() {
            return Ok(WeightVsLeray { hard_lefschetz: hl, degenerate: true, comparisons: Vec::new(), max_unipotent: None });
        }
        let ts: Vec<RationalMatrix> = (0..self.rank).map(|j| self.translate_matrix(&self.basis_vector(j))).collect();
        let report = weightfilt::maximally_unipotent_check(&ts, a, Some(3), 2 * self.rank + 2)?;
        let leray = self.leray_filtration();
        let comparisons = (0..=6)
            .map(|k| {
                let i = k / 2;
                LevelComparison { weight_index: k, leray_index: i, equal: report.filtration.level(k as i64) == *leray.level(i) }
            })
            .collect();
        Ok(WeightVsLeray { hard_lefschetz: hl, degenerate: false, comparisons, max_unipotent: Some(report) })
    }

    /// Nilpotent-orbit Yukawa coupling `N_{i1} N_{i2} N_{i3} α_0 = λ [T^3]`
    /// and the cubic value `c(e_{i1}, e_{i2}, e_{i3})`.
    pub fn yukawa(&self, indices: [usize; 3]) -> Result<(Q, Q)> {
        let logs = self.monodromy_logs();
        let lambda = weightfilt::yukawa_nilpotent(
            &logs,
            &self.alpha0().to_vec(),
            &self.fiber_class().to_vec(),
            &self.spair_gram(),
            &indices,
        )?;
        let [i, j, k] = indices;
        Ok((lambda, rational::int(self.cubic_entry(i, j, k))))
    }
}

/// `±1` identifying `Gr_i` of the model with the duality isomorphism.
fn graded_sign(level: usize) -> i64 {
    if level >= 2 { 1 } else { -1 }
}

/// Monomial coefficients `c_0 … c_3` of the cubic through `(t, f[t])`,
/// `t = 0..3`.
fn newton_to_monomial(f: &[Q]) -> Vec<Q> {
    let d1 = &f[1] - &f[0];
    let d2 = &f[2] - &f[1] * rational::int(2) + &f[0];
    let d3 = &f[3] - &f[2] * rational::int(3) + &f[1] * rational::int(3) - &f[0];
    // f(t) = f0 + d1 t + d2 t(t-1)/2 + d3 t(t-1)(t-2)/6
    let half = rational::frac(1, 2);
    let sixth = rational::frac(1, 6);
    let c0 = f[0].clone();
    let c1 = &d1 - &d2 * &half + &d3 * rational::int(2) * &sixth;
    let c2 = &d2 * &half - &d3 * rational::int(3) * &sixth;
    let c3 = &d3 * &sixth;
    vec![c0, c1, c2, c3]
}

/// `(a0, a2, a4, a6)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenClass {
    pub a0: Q,
    pub a2: Vec<Q>,
    pub a4: Vec<Q>,
    pub a6: Q,
}

impl EvenClass {
    pub fn zero(rank: usize) -> Self {
        Self { a0: Q::zero(), a2: vec![Q::zero(); rank], a4: vec![Q::zero(); rank], a6: Q::zero() }
    }

    /// The `i`-th coordinate basis vector in the order `(a0, a2, a4, a6)`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![Q::zero(); 2 * rank + 2];
        v[i] = Q::one();
        Self::from_vec(rank, &v)
    }

    pub fn new(a0: Q, a2: Vec<Q>, a4: Vec<Q>, a6: Q) -> Self {
        assert_eq!(a2.len(), a4.len(), "H^2 and H^4 parts must have equal rank");
        Self { a0, a2, a4, a6 }
    }

    pub fn rank(&self) -> usize {
        self.a2.len()
    }

    pub fn to_vec(&self) -> Vec<Q> {
        let mut v = Vec::with_capacity(2 * self.rank() + 2);
        v.push(self.a0.clone());
        v.extend(self.a2.iter().cloned());
        v.extend(self.a4.iter().cloned());
        v.push(self.a6.clone());
        v
    }

    pub fn from_vec(rank: usize, v: &[Q]) -> Self {
        assert_eq!(v.len(), 2 * rank + 2);
        Self {
            a0: v[0].clone(),
            a2: v[1..=rank].to_vec(),
            a4: v[rank + 1..=2 * rank].to_vec(),
            a6: v[2 * rank + 1].clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let v: Vec<Q> = self.to_vec().iter().zip(other.to_vec()).map(|(a, b)| a + b).collect();
        Self::from_vec(self.rank(), &v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let v: Vec<Q> = self.to_vec().iter().zip(other.to_vec()).map(|(a, b)| a - b).collect();
        Self::from_vec(self.rank(), &v)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let v: Vec<Q> = self.to_vec().iter().map(|a| a * c).collect();
        Self::from_vec(self.rank(), &v)
    }

    pub fn is_zero(&self) -> bool {
        self.to_vec().iter().all(Zero::is_zero)
    }

    /// Component in `Gr_i = F_i / F_{i-1}`: `a6` for 0, `a4` for 1, `a2` for
    /// 2, `a0` for 3.
    pub fn graded_component(&self, level: usize) -> Vec<Q> {
        match level {
            0 => vec![self.a6.clone()],
            1 => self.a4.clone(),
            2 => self.a2.clone(),
            _ => vec![self.a0.clone()],
        }
    }
}

/// `F_0 = {(0,0,0,*)} ⊂ F_1 = {(0,0,*,*)} ⊂ F_2 = {(0,*,*,*)} ⊂ F_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LerayFiltration {
    rank: usize,
    levels: [Subspace; 4],
}

impl LerayFiltration {
    pub fn new(rank: usize) -> Self {
        let n = 2 * rank + 2;
        let span_from = |start: usize| {
            Subspace::span(n, (start..n).map(|i| EvenClass::unit(rank, i).to_vec()).collect())
        };
        Self { rank, levels: [span_from(n - 1), span_from(rank + 1), span_from(1), Subspace::full(n)] }
    }

    pub fn level(&self, i: usize) -> &Subspace {
        &self.levels[i.min(3)]
    }

    pub fn contains(&self, i: usize, x: &EvenClass) -> bool {
        x.rank() == self.rank && self.level(i).contains(&x.to_vec())
    }

    pub fn dims(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.levels[i].dim())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedActionReport {
    pub level: usize,
    /// `(T_D - I) α ∈ F_{i-1}` (`= 0` when `i = 0`).
    pub lands_in_lower: bool,
    /// `Gr_{i-1}` component of `(T_D - I) α`.
    pub graded_image: Vec<Q>,
    /// `D ∪ (Gr_i component of α)`.
    pub cup_with_d: Vec<Q>,
    /// In model coordinates the graded map is cup with `-D`.
    pub model_sign_ok: bool,
    /// After the duality identifications it is cup with `(-1)^i D`.
    pub normalized_sign_ok: bool,
}

impl GradedActionReport {
    pub fn passes(&self) -> bool {
        self.lands_in_lower && self.model_sign_ok && self.normalized_sign_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPolynomial {
    /// `c_0 … c_3` with `f(t) = sum c_k t^k`.
    pub coefficients: Vec<Q>,
    pub matches_closed_form: bool,
    pub odd: bool,
    pub third_difference: Q,
    pub third_difference_ok: bool,
}

impl SigmaPolynomial {
    pub fn passes(&self) -> bool {
        self.matches_closed_form && self.odd && self.third_difference_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiReport {
    pub closed_form: Q,
    pub minus_sigma_pairing: Q,
    pub mukai_pairing: Q,
    pub consistent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HardLefschetz {
    /// `c(D,D,D) ≠ 0`.
    pub cube_nonzero: bool,
    /// `(c(D, e_i, e_j))` invertible.
    pub cup_invertible: bool,
    pub nonzero: bool,
}

impl HardLefschetz {
    pub fn passes(&self) -> bool {
        self.cube_nonzero && self.cup_invertible && self.nonzero
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelComparison {
    pub weight_index: usize,
    pub leray_index: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVsLeray {
    pub hard_lefschetz: HardLefschetz,
    /// No verdict: the hard Lefschetz condition fails for `sum a_j e_j`.
    pub degenerate: bool,
    /// `W_k` against `F_{k/2}` for `k = 0..6`.
    pub comparisons: Vec<LevelComparison>,
    pub max_unipotent: Option<MaxUnipotentReport>,
}

impl WeightVsLeray {
    pub fn filtrations_agree(&self) -> bool {
        !self.degenerate && self.comparisons.iter().all(|c| c.equal)
    }
}

/// `E_2` page of the Leray spectral sequence of `H^*(X)` for a threefold with
/// Hodge numbers `h11 = h^{1,1}(X)`, `h12 = h^{1,2}(X)`, rows `q = 3, 2, 1, 0`
/// and columns `p = 0..3`, plus the same table for the mirror.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LerayTable {
    pub grid: [[u64; 4]; 4],
    pub mirror: [[u64; 4]; 4],
}

impl LerayTable {
    /// Dimension of `H^3`: the sum over `p + q = 3`.
    pub fn b3(&self) -> u64 {
        (0..4).map(|p| self.grid[p][p]).sum()
    }
}

pub fn leray_table(h11: u64, h12: u64) -> LerayTable {
    let grid = |a: u64, b: u64| [[1, 0, 0, 1], [0, b, a, 0], [0, a, b, 0], [1, 0, 0, 1]];
    LerayTable { grid: grid(h11, h12), mirror: grid(h12, h11) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    fn quintic_like() -> CY3Datum {
        CY3Datum::from_entries("r1", 1, &[(0, 0, 0, 6)], vec![12]).unwrap()
    }

    #[test]
    fn cup_reads_cubic() {
        let x = quintic_like();
        assert_eq!(x.cup22(&ints(&[1]), &ints(&[1])), ints(&[6]));
        assert_eq!(x.cup22(&ints(&[1]), &ints(&[0])), ints(&[0]));
    }

    #[test]
    fn spair_normalization() {
        let x = quintic_like();
        assert_eq!(x.spair(&x.alpha0(), &x.fiber_class()), int(1));
        let a = EvenClass::new(int(2), ints(&[3]), ints(&[-1]), int(5));
        assert_eq!(x.spair(&a, &a), int(0));
    }

    #[test]
    fn mukai_vector_examples() {
        let x = quintic_like();
        assert_eq!(x.mukai_line_bundle(&ints(&[0])).unwrap(), EvenClass::new(int(1), ints(&[0]), vec![frac(1, 2)], int(0)));
        assert_eq!(
            x.mukai_line_bundle(&ints(&[1])).unwrap(),
            EvenClass::new(int(1), ints(&[1]), vec![frac(7, 2)], frac(3, 2))
        );
    }

    #[test]
    fn graded_action_examples() {
        let x = quintic_like();
        let d = ints(&[2]);
        let c = EvenClass::new(int(0), ints(&[0]), ints(&[5]), int(0));
        let rep = x.graded_action_check(&d, &c, 1).unwrap();
        assert!(rep.passes());
        assert_eq!(x.translate(&d, &c).sub(&c), EvenClass::new(int(0), ints(&[0]), ints(&[0]), int(-10)));
        let e = EvenClass::new(int(0), ints(&[3]), ints(&[0]), int(0));
        // (0,0,-cup22(D,E), c(D,D,E)/2) = (0,0,-36,36)
        assert_eq!(x.translate(&d, &e).sub(&e), EvenClass::new(int(0), ints(&[0]), ints(&[-36]), int(36)));
        assert!(x.graded_action_check(&d, &e, 2).unwrap().passes());
        let pt = x.fiber_class();
        assert!(x.translate(&d, &pt).sub(&pt).is_zero());
        assert_eq!(x.graded_action_check(&d, &e, 1), Err(Error::NotInFiltration { level: 1 }));
    }

    #[test]
    fn rank_one_closed_forms() {
        let x = quintic_like();
        let d = ints(&[1]);
        assert_eq!(x.triple_product_check(&d, &d, &d).unwrap(), (int(-6), int(-6), true));
        let poly = x.sigma_polynomial(&d).unwrap();
        assert_eq!(poly.coefficients, ints(&[0, -1, 0, -1]));
        assert!(poly.passes());
        assert_eq!(x.chi_line_bundle(&d).unwrap().closed_form, int(2));
        assert!(x.chi_line_bundle(&d).unwrap().consistent);
        assert_eq!(x.chi_line_bundle(&ints(&[0])).unwrap().closed_form, int(0));
    }

    #[test]
    fn picard_lefschetz_fixes_sigma0() {
        let x = quintic_like();
        assert_eq!(x.picard_lefschetz(&x.sigma0()), x.sigma0());
    }

    #[test]
    fn hard_lefschetz_cases() {
        let x = quintic_like();
        assert!(x.hard_lefschetz_check(&ints(&[1])).unwrap().passes());
        let z = x.hard_lefschetz_check(&ints(&[0])).unwrap();
        assert!(!z.cube_nonzero && !z.cup_invertible && !z.nonzero);
        let flat = CY3Datum::from_entries("flat", 1, &[], vec![0]).unwrap();
        assert!(!flat.hard_lefschetz_check(&ints(&[1])).unwrap().passes());
    }

    #[test]
    fn weight_vs_leray_rank_one() {
        let x = quintic_like();
        let rep = x.weight_vs_leray(&ints(&[1])).unwrap();
        assert!(rep.filtrations_agree());
        let mu = rep.max_unipotent.unwrap();
        assert!(mu.passes());
        assert_eq!(mu.pairing_matrix.unwrap(), RationalMatrix::from_i64_rows(&[&[-1]]));
    }

    #[test]
    fn inconsistent_cubic_rejected() {
        let err = CY3Datum::from_entries("bad", 2, &[(0, 0, 1, 1), (1, 0, 0, 2)], vec![0, 0]);
        assert!(matches!(err, Err(Error::Invalid(_))));
        assert!(CY3Datum::from_entries("ok", 2, &[(0, 0, 1, 1), (0, 1, 0, 1)], vec![0, 0]).is_ok());
    }

    #[test]
    fn leray_table_shape() {
        let t = leray_table(1, 101);
        assert_eq!(t.grid[1], [0, 101, 1, 0]);
        assert_eq!(t.grid[2], [0, 1, 101, 0]);
        assert_eq!(t.mirror, leray_table(101, 1).grid);
        assert_eq!(t.b3(), 204);
        assert_eq!(leray_table(0, 0).grid, [[1, 0, 0, 1], [0; 4], [0; 4], [1, 0, 0, 1]]);
    }

    #[test]
    fn leray_dims() {
        assert_eq!(LerayFiltration::new(3).dims(), [1, 4, 7, 8]);
    }
}
