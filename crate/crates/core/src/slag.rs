//! The special Lagrangian fibration `f : X → R^n` on
//! `X = C^n - {1 + z_1⋯z_n = 0}` given by
//! `f_k = |z_1|² - |z_{k+1}|²` (`k < n`) and `f_n = log|1 + z_1⋯z_n|`.
//!
//! Residuals use closed-form Wirtinger derivatives `∂f_k/∂z̄_j`; fibers are
//! sampled through the diagonal `T^{n-1}` action and the position of
//! `∏ z_j` on the circle `|1 + c| = e^{x_n}`.
//!
//! Homology conventions: `γ_k` (`k < n`) is the orbit cycle rotating `z_1`
//! backwards and `z_{k+1}` forwards; monodromy matrices act on `H_1` with
//! columns the images of `γ_1 … γ_n`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{self, LatticeAutomorphism, TorusContext};
use crate::sampling;

/// Absolute tolerance for the equalities defining the discriminant strata.
pub const DISCRIMINANT_TOL: f64 = 1e-12;
/// Points with `|1 + ∏ z| < SAMPLE_TUBE` are rejected by the sampler.
pub const SAMPLE_TUBE: f64 = 0.05;
pub const SAMPLE_MIN_MODULUS: f64 = 0.1;
pub const SAMPLE_MAX_MODULUS: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FibrationContext {
    n: usize,
    tolerance: f64,
}

impl FibrationContext {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_tolerance(n, 1e-9)
    }

    pub fn with_tolerance(n: usize, tolerance: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Invalid(format!("tolerance must be positive, got {tolerance}")));
        }
        Ok(Self { n, tolerance })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn check_point(&self, z: &AmbientPoint) -> Result<()> {
        if z.0.len() != self.n {
            return Err(Error::Shape { expected: format!("{} coordinates", self.n), found: format!("{}", z.0.len()) });
        }
        if (Complex64::new(1.0, 0.0) + z.product()).norm() == 0.0 {
            return Err(Error::OffDomain);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPoint(pub Vec<Complex64>);

impl AmbientPoint {
    pub fn product(&self) -> Complex64 {
        self.0.iter().fold(Complex64::new(1.0, 0.0), |acc, z| acc * z)
    }

    /// `∏_{l ≠ j} z_l`, computed without division.
    fn product_except(&self, j: usize) -> Complex64 {
        self.0
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != j)
            .fold(Complex64::new(1.0, 0.0), |acc, (_, z)| acc * z)
    }

    /// Diagonal torus action `z_j ↦ e^{iθ_j} z_j`; `thetas` must sum to zero
    /// for the action to preserve fibers.
    pub fn rotate(&self, thetas: &[f64]) -> Self {
        Self(self.0.iter().zip(thetas).map(|(z, t)| z * Complex64::from_polar(1.0, *t)).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasePoint(pub Vec<f64>);

pub fn f_eval(ctx: &FibrationContext, z: &AmbientPoint) -> Result<BasePoint> {
    ctx.check_point(z)?;
    let n = ctx.n;
    let r1 = z.0[0].norm_sqr();
    let mut x: Vec<f64> = (1..n).map(|k| r1 - z.0[k].norm_sqr()).collect();
    x.push((Complex64::new(1.0, 0.0) + z.product()).norm().ln());
    Ok(BasePoint(x))
}

/// `A[j][k] = ∂f_k/∂z̄_j`.
pub fn dbar_partials(ctx: &FibrationContext, z: &AmbientPoint) -> Result<Vec<Vec<Complex64>>> {
    ctx.check_point(z)?;
    let n = ctx.n;
    let zero = Complex64::new(0.0, 0.0);
    let mut a = vec![vec![zero; n]; n];
    for k in 0..n - 1 {
        a[0][k] = z.0[0];
        a[k + 1][k] = -z.0[k + 1];
    }
    // ∂/∂z̄_j log|1+P| = conj(∂P/∂z_j) / (2 conj(1+P)).
    let denom = (Complex64::new(1.0, 0.0) + z.product()).conj() * 2.0;
    for (j, row) in a.iter_mut().enumerate() {
        row[n - 1] = z.product_except(j).conj() / denom;
    }
    Ok(a)
}

/// Poisson bracket for `ω' = (i/2) Σ dz_j ∧ dz̄_j` from Wirtinger
/// derivatives: `{f, g} = 4 Σ_j Im(conj(∂f/∂z̄_j) ∂g/∂z̄_j)`.
fn poisson(a: &[Vec<Complex64>], f: usize, g: usize) -> f64 {
    4.0 * a.iter().map(|row| (row[f].conj() * row[g]).im).sum::<f64>()
}

/// `max_{i<j} |{f_i, f_j}|`.
pub fn lagrangian_residual(ctx: &FibrationContext, z: &AmbientPoint) -> Result<f64> {
    let a = dbar_partials(ctx, z)?;
    let mut worst: f64 = 0.0;
    for i in 0..ctx.n {
        for j in i + 1..ctx.n {
            worst = worst.max(poisson(&a, i, j).abs());
        }
    }
    Ok(worst)
}

/// `|Im[ det(i ∂f_k/∂z̄_j) / (i^n (1 + ∏ z)) ]|`.
pub fn special_residual(ctx: &FibrationContext, z: &AmbientPoint) -> Result<f64> {
    let i = Complex64::new(0.0, 1.0);
    let a: Vec<Vec<Complex64>> = dbar_partials(ctx, z)?
        .into_iter()
        .map(|row| row.into_iter().map(|x| x * i).collect())
        .collect();
    let det = complex_det(a);
    let in_ = (0..ctx.n).fold(Complex64::new(1.0, 0.0), |acc, _| acc * i);
    Ok((det / (in_ * (Complex64::new(1.0, 0.0) + z.product()))).im.abs())
}

fn complex_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x][c].norm().partial_cmp(&a[y][c].norm()).unwrap_or(core::cmp::Ordering::Equal))
            .unwrap_or(c);
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c];
        det *= pivot;
        for r in c + 1..n {
            let f = a[r][c] / pivot;
            if f.norm() == 0.0 {
                continue;
            }
            for k in c..n {
                let v = a[c][k];
                a[r][k] -= f * v;
            }
        }
    }
    det
}

/// A point of `f^{-1}(x)` with `∏ z_j = -1 + e^{x_n} e^{iθ}`.
///
/// The radii solve `r_1² - r_{k+1}² = x_k` and `∏ r_j = |c|` by bisection on
/// `r_1`. Arguments are `phases[0..n-2]` for `z_1 … z_{n-2}`, `0` for
/// `z_{n-1}`, and whatever makes the arguments sum to `arg c` for `z_n`.
pub fn fiber_point(ctx: &FibrationContext, x: &BasePoint, theta: f64, phases: &[f64]) -> Result<AmbientPoint> {
    let n = ctx.n;
    if x.0.len() != n {
        return Err(Error::Shape { expected: format!("{n} base coordinates"), found: format!("{}", x.0.len()) });
    }
    if phases.len() != n - 2 {
        return Err(Error::Shape { expected: format!("{} phases", n - 2), found: format!("{}", phases.len()) });
    }
    if let Some((k, v)) = x.0.iter().chain(phases).chain([&theta]).enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::Infeasible { constraint: format!("input {k} is not finite ({v})") });
    }
    let c = Complex64::new(-1.0, 0.0) + Complex64::from_polar(x.0[n - 1].exp(), theta);
    let target = c.norm();
    if target <= 4.0 * f64::EPSILON {
        return Err(Error::ZeroProductRay);
    }
    let offsets = &x.0[..n - 1];
    let floor = offsets.iter().copied().fold(0.0_f64, f64::max);
    let radii_for = |r1: f64| -> Vec<f64> {
        let s = r1 * r1;
        core::iter::once(r1).chain(offsets.iter().map(|xk| (s - xk).max(0.0).sqrt())).collect()
    };
    let product = |r1: f64| radii_for(r1).iter().product::<f64>();
    let mut lo = floor.sqrt();
    let mut hi = lo + 1.0;
    let mut grow = 0;
    while product(hi) < target {
        hi = lo + 2.0 * (hi - lo);
        grow += 1;
        if grow > 2000 || !hi.is_finite() {
            return Err(Error::Infeasible {
                constraint: String::from("product of radii cannot reach |1 + e^{x_n} e^{i theta} - 1|"),
            });
        }
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if product(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let radii = radii_for(0.5 * (lo + hi));
    let mut args: Vec<f64> = phases.to_vec();
    args.push(0.0);
    let used: f64 = args.iter().sum();
    args.push(c.arg() - used);
    let z = radii.iter().zip(&args).map(|(r, a)| Complex64::from_polar(*r, *a)).collect();
    Ok(AmbientPoint(z))
}

/// Discriminant strata `f(P_ij)` (1-based `i < j`) containing `x`.
///
/// `f(P_1j)`: `x_n = 0`, `x_{j-1} = 0`, all `x_k ≤ 0`.
/// `f(P_ij)`, `i, j > 1`: `x_n = 0`, `x_{i-1} = x_{j-1} ≥ x_k` for all `k`,
/// where `k` ranges over `1 … n` so that `x_{i-1} ≥ x_n = 0`.
pub fn discriminant_member(ctx: &FibrationContext, x: &BasePoint) -> Vec<(usize, usize)> {
    let n = ctx.n;
    let tol = DISCRIMINANT_TOL;
    let mut out = Vec::new();
    if x.0.len() != n || x.0[n - 1].abs() > tol {
        return out;
    }
    let xs = &x.0;
    for i in 1..=n {
        for j in i + 1..=n {
            let hit = if i == 1 {
                xs[j - 2].abs() <= tol && xs.iter().all(|&v| v <= tol)
            } else {
                let (a, b) = (xs[i - 2], xs[j - 2]);
                (a - b).abs() <= tol && xs.iter().all(|&v| a >= v - tol && b >= v - tol)
            };
            if hit {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDescriptor {
    /// Largest number of coordinates vanishing simultaneously on the fiber.
    pub l: usize,
    pub type_string: String,
    /// Conjectural dual fiber type.
    pub dual_type_string: String,
}

/// Topology of `f^{-1}(x)`.
pub fn fiber_type(ctx: &FibrationContext, x: &BasePoint) -> FiberDescriptor {
    let n = ctx.n;
    let tol = DISCRIMINANT_TOL;
    let l = if x.0.len() != n || x.0[n - 1].abs() > tol {
        0
    } else {
        // Zero radii can only occur at the smallest admissible r_1, namely
        // r_1² = max(0, max_k x_k).
        let offsets = &x.0[..n - 1];
        let top = offsets.iter().copied().fold(0.0_f64, f64::max);
        let first = usize::from(top <= tol);
        first + offsets.iter().filter(|&&v| (v - top).abs() <= tol).count()
    };
    let (type_string, dual_type_string) = if l <= 1 {
        let t = format!("T^{n}");
        (t.clone(), t)
    } else {
        let rest = n - l;
        let torus = if rest == 0 { String::new() } else { format!("T^{rest} x ") };
        let mut ty = format!("{torus}((S^1 x T^{m})/({{pt}} x T^{m}))", m = l - 1);
        if n == 2 && l == 2 {
            ty = format!("I_1: {ty}");
        }
        let dual = format!(
            "{torus}((T^{m} x S^1)/~), (t1,s1)~(t2,s2) iff equal or t1=t2 in T^{m}-(0,1)^{m} [conjectural]",
            m = l - 1
        );
        (ty, dual)
    };
    FiberDescriptor { l, type_string, dual_type_string }
}

pub type IntMatrix = Vec<Vec<i64>>;

/// Monodromy about the three discriminant branches for `n = 3`, basis
/// `γ_1, γ_2, γ_3`.
pub fn monodromy_matrices_n3() -> [IntMatrix; 3] {
    [
        vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]],
        vec![vec![1, 0, 1], vec![0, 1, -1], vec![0, 0, 1]],
    ]
}

/// Monodromy about `f(P_ij)`: the identity on `γ_1 … γ_{n-1}` and
/// `γ_n ↦ γ_n + sign·δ` with vanishing cycle `δ`.
///
/// `δ` is read with the orbit-cycle indexing: `γ_{k-1}` is the cycle that
/// rotates `z_k` against `z_1`, so `δ = γ_{j-1}` for `i = 1` and
/// `δ = γ_{i-1} - γ_{j-1}` otherwise. Taken literally with `γ_j`, the pair
/// `(1, n)` would give `δ = γ_n`, which is not a vanishing cycle. The sign is
/// orientation dependent; `+1` reproduces [`monodromy_matrices_n3`] for the
/// branches `(1,2)`, `(1,3)`, `(2,3)`.
pub fn general_monodromy(n: usize, i: usize, j: usize, sign: i64) -> Result<IntMatrix> {
    if n < 2 || i < 1 || i >= j || j > n {
        return Err(Error::BadIndices { n, i, j });
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Invalid(format!("sign must be +1 or -1, got {sign}")));
    }
    let mut m: IntMatrix = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    let last = n - 1;
    if i == 1 {
        m[j - 2][last] += sign;
    } else {
        m[i - 2][last] += sign;
        m[j - 2][last] -= sign;
    }
    Ok(m)
}

/// The vanishing cycle `δ` of branch `(i, j)` in the `γ` basis.
pub fn vanishing_cycle(n: usize, i: usize, j: usize) -> Result<Vec<i64>> {
    if n < 2 || i < 1 || i >= j || j > n {
        return Err(Error::BadIndices { n, i, j });
    }
    let mut d = vec![0; n];
    if i == 1 {
        d[j - 2] = 1;
    } else {
        d[i - 2] = 1;
        d[j - 2] = -1;
    }
    Ok(d)
}

/// Invariant cohomology of a smooth fiber under all branch monodromies,
/// against `[1, C(n-1,0), …, C(n-1,n-1)]`.
pub fn simplicity_dims(n: usize) -> Result<(Vec<usize>, Vec<usize>, bool)> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let ctx = TorusContext::new(n)?;
    let mut generators = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            generators.push(LatticeAutomorphism::new(ctx, &general_monodromy(n, i, j, 1)?)?);
        }
    }
    let computed = exterior::invariant_dimensions(ctx, &generators)?;
    let mut expected = vec![1];
    expected.extend((0..n).map(|k| num_integer::binomial(n - 1, k)));
    let eq = computed == expected;
    Ok((computed, expected, eq))
}

/// A random point of `X` with every `|z_j|` in `[0.1, 3]`, uniform phases,
/// and `|1 + ∏ z| ≥ 0.05`.
pub fn sample_point<R: Rng>(n: usize, rng: &mut R) -> AmbientPoint {
    loop {
        let z: Vec<Complex64> = (0..n)
            .map(|_| {
                let r = rng.random_range(SAMPLE_MIN_MODULUS..=SAMPLE_MAX_MODULUS);
                let t = rng.random_range(0.0..core::f64::consts::TAU);
                Complex64::from_polar(r, t)
            })
            .collect();
        let p = AmbientPoint(z);
        if (Complex64::new(1.0, 0.0) + p.product()).norm() >= SAMPLE_TUBE {
            return p;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleResiduals {
    pub index: u64,
    pub lagrangian: f64,
    pub special: f64,
    /// `‖f(fiber_point(f(z), θ, phases)) - f(z)‖_∞` for the sample's base
    /// point and a fresh `θ` and phases.
    pub roundtrip: f64,
}

/// Residuals of sample `index` of the sweep with master seed `seed`.
pub fn sample_residuals(ctx: &FibrationContext, seed: u64, index: u64) -> Result<SampleResiduals> {
    let mut rng = sampling::trial_rng(seed, index);
    let z = sample_point(ctx.n, &mut rng);
    let lagrangian = lagrangian_residual(ctx, &z)?;
    let special = special_residual(ctx, &z)?;
    let x = f_eval(ctx, &z)?;
    let theta = loop {
        let t = rng.random_range(0.0..core::f64::consts::TAU);
        // Stay off the zero-product point of the circle.
        if x.0[ctx.n - 1].abs() > 1e-6 || t.abs() > 1e-6 {
            break t;
        }
    };
    let phases: Vec<f64> = (0..ctx.n - 2).map(|_| rng.random_range(0.0..core::f64::consts::TAU)).collect();
    let w = fiber_point(ctx, &x, theta, &phases)?;
    let back = f_eval(ctx, &w)?;
    let roundtrip = back.0.iter().zip(&x.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(SampleResiduals { index, lagrangian, special, roundtrip })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[(f64, f64)]) -> AmbientPoint {
        AmbientPoint(v.iter().map(|&(a, b)| Complex64::new(a, b)).collect())
    }

    #[test]
    fn f_examples() {
        let c3 = FibrationContext::new(3).unwrap();
        let x = f_eval(&c3, &pt(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)])).unwrap();
        assert_eq!(x.0[..2], [0.0, 0.0]);
        assert!((x.0[2] - 2f64.ln()).abs() < 1e-15);
        let x = f_eval(&c3, &pt(&[(2.0, 0.0), (1.0, 0.0), (1.0, 0.0)])).unwrap();
        assert_eq!(x.0[..2], [3.0, 3.0]);
        assert!((x.0[2] - 3f64.ln()).abs() < 1e-15);
        let c2 = FibrationContext::new(2).unwrap();
        assert_eq!(f_eval(&c2, &pt(&[(0.0, 0.0), (5.0, 0.0)])).unwrap().0, vec![-25.0, 0.0]);
        assert_eq!(f_eval(&c2, &pt(&[(-1.0, 0.0), (1.0, 0.0)])), Err(Error::OffDomain));
    }

    #[test]
    fn fiber_point_examples() {
        let c3 = FibrationContext::new(3).unwrap();
        let z = fiber_point(&c3, &BasePoint(vec![0.0, 0.0, 2f64.ln()]), 0.0, &[0.0]).unwrap();
        for w in &z.0 {
            assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let c2 = FibrationContext::new(2).unwrap();
        let z = fiber_point(&c2, &BasePoint(vec![0.0, 2f64.ln()]), 0.0, &[]).unwrap();
        for w in &z.0 {
            assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        assert_eq!(fiber_point(&c2, &BasePoint(vec![1.0, 0.0]), 0.0, &[]), Err(Error::ZeroProductRay));
    }

    #[test]
    fn discriminant_examples() {
        let c3 = FibrationContext::new(3).unwrap();
        assert!(discriminant_member(&c3, &BasePoint(vec![0.0, -1.0, 0.0])).contains(&(1, 2)));
        assert!(discriminant_member(&c3, &BasePoint(vec![1.0, 1.0, 0.0])).contains(&(2, 3)));
        assert!(discriminant_member(&c3, &BasePoint(vec![0.0, 0.0, 1.0])).is_empty());
        assert!(discriminant_member(&c3, &BasePoint(vec![-1.0, -1.0, 0.0])).is_empty());
    }

    #[test]
    fn fiber_types() {
        let c2 = FibrationContext::new(2).unwrap();
        let c3 = FibrationContext::new(3).unwrap();
        let generic = fiber_type(&c3, &BasePoint(vec![0.3, -0.2, 0.7]));
        assert_eq!((generic.l, generic.type_string.as_str()), (0, "T^3"));
        let i1 = fiber_type(&c2, &BasePoint(vec![0.0, 0.0]));
        assert_eq!(i1.l, 2);
        assert!(i1.type_string.starts_with("I_1"));
        assert_eq!(fiber_type(&c3, &BasePoint(vec![0.0, 0.0, 0.0])).l, 3);
        assert!(fiber_type(&c3, &BasePoint(vec![0.0, 0.0, 0.0])).dual_type_string.contains("conjectural"));
    }

    #[test]
    fn branch_matrices_match_displayed_ones() {
        let [t1, t2, t3] = monodromy_matrices_n3();
        assert_eq!(general_monodromy(3, 1, 2, 1).unwrap(), t1);
        assert_eq!(general_monodromy(3, 1, 3, 1).unwrap(), t2);
        assert_eq!(general_monodromy(3, 2, 3, 1).unwrap(), t3);
        assert!(general_monodromy(3, 2, 2, 1).is_err());
        assert!(general_monodromy(3, 0, 2, 1).is_err());
    }

    #[test]
    fn simplicity_small_n() {
        assert_eq!(simplicity_dims(2).unwrap(), (vec![1, 1, 1], vec![1, 1, 1], true));
        assert_eq!(simplicity_dims(3).unwrap(), (vec![1, 1, 2, 1], vec![1, 1, 2, 1], true));
    }
}
