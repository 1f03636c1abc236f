//! Logarithms of unipotent operators and monodromy weight filtrations.
//!
//! For a nilpotent `N` on `V` and a center `m` with `N^{m+1} = 0`, the weight
//! filtration `0 ⊆ W_0 ⊆ … ⊆ W_{2m} = V` is the unique increasing filtration
//! with `N W_k ⊆ W_{k-2}` and `N^k : Gr_{m+k} → Gr_{m-k}` an isomorphism for
//! every `k ≥ 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, Subspace};
use crate::rational::{self, Q};

fn require_square(m: &RationalMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Shape {
            expected: String::from("square matrix"),
            found: format!("{}x{}", m.nrows(), m.ncols()),
        })
    }
}

/// Smallest `k` with `N^k = 0`, or `None` if `N^{dim} ≠ 0`.
pub fn nilpotency_index(n: &RationalMatrix) -> Option<usize> {
    let dim = n.nrows();
    let mut power = RationalMatrix::identity(dim);
    for k in 0..=dim {
        if power.is_zero() {
            return Some(k);
        }
        power = &power * n;
    }
    None
}

/// `log T = sum_{k>=1} (-1)^{k+1} (T - I)^k / k`, a finite sum for unipotent `T`.
pub fn log_unipotent(t: &RationalMatrix) -> Result<RationalMatrix> {
    require_square(t)?;
    let dim = t.nrows();
    let x = t - &RationalMatrix::identity(dim);
    let Some(order) = nilpotency_index(&x) else {
        return Err(Error::NotUnipotent { power: dim });
    };
    let mut acc = RationalMatrix::zeros(dim, dim);
    let mut power = RationalMatrix::identity(dim);
    for k in 1..order {
        power = &power * &x;
        let c = Q::new((if k % 2 == 1 { 1 } else { -1 }).into(), (k as i64).into());
        acc = &acc + &power.scale(&c);
    }
    Ok(acc)
}

/// `exp N = sum_k N^k / k!` for nilpotent `N`.
pub fn exp_nilpotent(n: &RationalMatrix) -> Result<RationalMatrix> {
    require_square(n)?;
    let dim = n.nrows();
    let Some(order) = nilpotency_index(n) else {
        return Err(Error::NotNilpotent { power: dim });
    };
    let mut acc = RationalMatrix::identity(dim);
    let mut term = RationalMatrix::identity(dim);
    for k in 1..order {
        term = (&term * n).scale(&Q::new(1.into(), (k as i64).into()));
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Increasing filtration `W_0 ⊆ … ⊆ W_{2m}` of `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    center: usize,
    ambient: usize,
    levels: Vec<Subspace>,
}

impl WeightFiltration {
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `W_0, …, W_{2m}`.
    pub fn levels(&self) -> &[Subspace] {
        &self.levels
    }

    /// `W_k`, extended by `0` below index 0 and by `V` above `2m`.
    pub fn level(&self, k: i64) -> Subspace {
        if k < 0 {
            Subspace::zero(self.ambient)
        } else if k as usize >= self.levels.len() {
            Subspace::full(self.ambient)
        } else {
            self.levels[k as usize].clone()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Subspace::dim).collect()
    }

    /// Checks the two defining properties of the weight filtration of `n`
    /// together with monotonicity and `W_{2m} = V`.
    pub fn satisfies_defining_properties(&self, n: &RationalMatrix) -> bool {
        let m = self.center as i64;
        let full = Subspace::full(self.ambient);
        if self.levels.last() != Some(&full) {
            return false;
        }
        if self.levels.windows(2).any(|w| !w[0].is_subspace_of(&w[1])) {
            return false;
        }
        for k in 0..=2 * m {
            if !self.level(k).image_under(n).is_subspace_of(&self.level(k - 2)) {
                return false;
            }
        }
        for k in 1..=m {
            let nk = n.pow(k as usize);
            let top = self.level(m + k);
            let top_below = self.level(m + k - 1);
            let bottom = self.level(m - k);
            let bottom_below = self.level(m - k - 1);
            let gr_top = top.dim() - top_below.dim();
            let gr_bottom = bottom.dim() - bottom_below.dim();
            if gr_top != gr_bottom {
                return false;
            }
            let image = top.image_under(&nk);
            if !image.is_subspace_of(&bottom) {
                return false;
            }
            // Injective on Gr_{m+k}: rank of N^k W_{m+k} modulo W_{m-k-1}
            // equals dim Gr_{m+k}, and N^k kills W_{m+k-1} modulo W_{m-k-1}.
            if image.sum(&bottom_below).dim() - bottom_below.dim() != gr_top {
                return false;
            }
            if !top_below.image_under(&nk).is_subspace_of(&bottom_below) {
                return false;
            }
        }
        true
    }
}

/// Monodromy weight filtration of a nilpotent `n` centered at `center`.
///
/// Built from the formula
/// `W_{m+k} = sum_{j>=0} ker N^{j+1} ∩ im N^{max(0, j-k)}`,
/// which is read off from a Jordan decomposition.
pub fn weight_filtration(n: &RationalMatrix, center: usize) -> Result<WeightFiltration> {
    require_square(n)?;
    let dim = n.nrows();
    let index = nilpotency_index(n).ok_or(Error::NotNilpotent { power: dim })?;
    // N^{index} = 0, N^{index-1} != 0; chains have length <= index.
    if index > center + 1 {
        return Err(Error::CenterTooSmall { order: index, center });
    }
    let max_j = index.saturating_sub(1);
    let powers: Vec<RationalMatrix> = (0..=index).map(|p| n.pow(p)).collect();
    let kernels: Vec<Subspace> = (1..=index).map(|p| Subspace::kernel_of(&powers[p])).collect();
    let images: Vec<Subspace> = powers[..index].iter().map(Subspace::image_of).collect();
    // pieces[j][p] = ker N^{j+1} ∩ im N^p; im N^p = 0 for p >= index.
    let pieces: Vec<Vec<Subspace>> = kernels
        .iter()
        .map(|ker| images.iter().map(|im| ker.intersection(im)).collect())
        .collect();
    let m = center as i64;
    let levels = (-m..=m)
        .map(|k| {
            let mut vectors = Vec::new();
            for (j, row) in pieces.iter().enumerate().take(max_j + 1) {
                let p = (j as i64 - k).max(0) as usize;
                if let Some(piece) = row.get(p) {
                    vectors.extend(piece.basis().iter().cloned());
                }
            }
            Subspace::span(dim, vectors)
        })
        .collect();
    Ok(WeightFiltration { center, ambient: dim, levels })
}

/// Outcome of checking the maximally-unipotent conditions on commuting
/// monodromy operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxUnipotentReport {
    /// `N_j = log T_j`.
    pub logs: Vec<RationalMatrix>,
    /// `N = sum_j a_j N_j`.
    pub combined: RationalMatrix,
    pub filtration: WeightFiltration,
    /// Every `T_j` unipotent.
    pub unipotent: bool,
    /// `dim W_0 = dim W_1 = 1` and `dim W_2 = 1 + s`.
    pub weight_dims: bool,
    pub dim_w0: usize,
    pub dim_w1: usize,
    pub dim_w2: usize,
    /// The matrix `(m_jk)` with `N_j g_k = m_jk g_0`, when it is defined.
    pub pairing_matrix: Option<RationalMatrix>,
    /// `(m_jk)` defined and invertible.
    pub pairing_invertible: bool,
}

impl MaxUnipotentReport {
    pub fn passes(&self) -> bool {
        self.unipotent && self.weight_dims && self.pairing_invertible
    }
}

/// Checks the three maximally-unipotent conditions for commuting unipotent
/// `ts` with positive weights `a`. `center` defaults to the nilpotency order
/// of `N` minus one.
///
/// The basis of `W_2` is `g_0` (the echelon basis vector of `W_0`) followed by
/// the echelon basis vectors of `W_2` that are independent of the ones chosen
/// before them; the invertibility verdict does not depend on this choice.
pub fn maximally_unipotent_check(
    ts: &[RationalMatrix],
    a: &[Q],
    center: Option<usize>,
    dim: usize,
) -> Result<MaxUnipotentReport> {
    if ts.len() != a.len() {
        return Err(Error::Shape {
            expected: format!("{} weights", ts.len()),
            found: format!("{}", a.len()),
        });
    }
    for t in ts {
        require_square(t)?;
        if t.nrows() != dim {
            return Err(Error::Shape {
                expected: format!("{dim}x{dim} operators"),
                found: format!("{}x{}", t.nrows(), t.ncols()),
            });
        }
    }
    if let Some((index, value)) = a.iter().enumerate().find(|(_, x)| !x.is_positive()) {
        return Err(Error::NonPositiveWeight { index, value: rational::to_string(value) });
    }
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if !ts[i].commutes_with(&ts[j]) {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    let logs: Vec<RationalMatrix> = ts.iter().map(log_unipotent).collect::<Result<_>>()?;
    let combined = logs
        .iter()
        .zip(a)
        .fold(RationalMatrix::zeros(dim, dim), |acc, (n, w)| &acc + &n.scale(w));
    let order = nilpotency_index(&combined).ok_or(Error::NotNilpotent { power: dim })?;
    let center = center.unwrap_or(order.saturating_sub(1));
    let filtration = weight_filtration(&combined, center)?;
    let (w0, w1, w2) = (filtration.level(0), filtration.level(1), filtration.level(2));
    let s = ts.len();
    let weight_dims = w0.dim() == 1 && w1.dim() == 1 && w2.dim() == 1 + s;
    let pairing_matrix = if weight_dims { pairing_matrix(&logs, &w0, &w2) } else { None };
    let pairing_invertible = pairing_matrix
        .as_ref()
        .is_some_and(|m| m.nrows() == 0 || !m.determinant().is_zero());
    Ok(MaxUnipotentReport {
        logs,
        combined,
        unipotent: true,
        weight_dims,
        dim_w0: w0.dim(),
        dim_w1: w1.dim(),
        dim_w2: w2.dim(),
        filtration,
        pairing_matrix,
        pairing_invertible,
    })
}

fn pairing_matrix(logs: &[RationalMatrix], w0: &Subspace, w2: &Subspace) -> Option<RationalMatrix> {
    let g0 = w0.basis()[0].clone();
    let mut chosen = Subspace::span(g0.len(), vec![g0.clone()]);
    let mut extension = Vec::new();
    for v in w2.basis() {
        if !chosen.contains(v) {
            chosen = chosen.sum(&Subspace::span(g0.len(), vec![v.clone()]));
            extension.push(v.clone());
        }
    }
    let pivot = g0.iter().position(|x| !x.is_zero())?;
    let s = logs.len();
    let mut m = RationalMatrix::zeros(s, extension.len());
    for (j, n) in logs.iter().enumerate() {
        for (k, g) in extension.iter().enumerate() {
            let image = n.mul_vec(g);
            let scalar = &image[pivot] / &g0[pivot];
            if image.iter().zip(&g0).any(|(x, y)| *x != &scalar * y) {
                return None;
            }
            m.set(j, k, scalar);
        }
    }
    Some(m)
}

/// The scalar `λ` with `N_{i_1} ⋯ N_{i_n} α_0 = λ β_0`, where the rightmost
/// operator is applied first. `pairing` is the Gram matrix of the skew form
/// and must satisfy `pairing(α_0, β_0) = 1`.
pub fn yukawa_nilpotent(
    ns: &[RationalMatrix],
    alpha0: &[Q],
    beta0: &[Q],
    pairing: &RationalMatrix,
    indices: &[usize],
) -> Result<Q> {
    let norm = pairing.bilinear(alpha0, beta0);
    if !norm.is_one() {
        return Err(Error::Normalization { value: rational::to_string(&norm) });
    }
    let mut v = alpha0.to_vec();
    for &i in indices.iter().rev() {
        let n = ns.get(i).ok_or(Error::IndexOutOfRange { index: i, n: ns.len() })?;
        v = n.mul_vec(&v);
    }
    let pivot = beta0
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Invalid(String::from("beta0 is zero")))?;
    let lambda = &v[pivot] / &beta0[pivot];
    let residual: Vec<Q> = v.iter().zip(beta0).map(|(x, b)| x - &lambda * b).collect();
    if residual.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotProportional { residual: rational::vec_to_strings(&residual) });
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_identity_and_jordan_block() {
        assert!(log_unipotent(&RationalMatrix::identity(3)).unwrap().is_zero());
        let t = RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(log_unipotent(&t).unwrap(), RationalMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn non_unipotent_rejected() {
        let t = RationalMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(log_unipotent(&t), Err(Error::NotUnipotent { power: 2 }));
    }

    #[test]
    fn zero_operator_filtration() {
        let w = weight_filtration(&RationalMatrix::zeros(3, 3), 2).unwrap();
        assert_eq!(w.dims(), vec![0, 0, 3, 3, 3]);
    }

    #[test]
    fn jordan_block_size_two() {
        let n = RationalMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let w = weight_filtration(&n, 1).unwrap();
        let im = Subspace::image_of(&n);
        assert_eq!(w.level(0), im);
        assert_eq!(w.level(1), im);
        assert_eq!(w.level(2), Subspace::full(2));
        assert!(w.satisfies_defining_properties(&n));
    }

    #[test]
    fn center_bound_enforced() {
        let n = RationalMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(weight_filtration(&n, 1), Err(Error::CenterTooSmall { order: 3, center: 1 }));
        assert!(weight_filtration(&n, 2).unwrap().satisfies_defining_properties(&n));
    }

    #[test]
    fn empty_operator_list_is_zero_filtration() {
        let r = maximally_unipotent_check(&[], &[], Some(1), 2).unwrap();
        assert!(r.combined.is_zero());
        assert_eq!(r.filtration.dims(), vec![0, 2, 2]);
    }

    #[test]
    fn yukawa_zero_operators() {
        let z = RationalMatrix::zeros(2, 2);
        let g = RationalMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        let v = yukawa_nilpotent(&[z], &rational::ints(&[1, 0]), &rational::ints(&[0, 1]), &g, &[0, 0]).unwrap();
        assert!(v.is_zero());
        let bad = yukawa_nilpotent(&[], &rational::ints(&[1, 0]), &rational::ints(&[1, 0]), &g, &[]);
        assert!(matches!(bad, Err(Error::Normalization { .. })));
    }
}
