use num_complex::Complex64;
use rand::Rng;
use syzkit_core::exterior::{self, LatticeAutomorphism, TorusContext};
use syzkit_core::sampling;
use syzkit_core::slag::{self, AmbientPoint, BasePoint, FibrationContext};

const H: f64 = 1e-6;

/// `f` evaluated from its definition, for finite differences.
fn f_direct(z: &[Complex64]) -> Vec<f64> {
    let n = z.len();
    let mut out: Vec<f64> = (1..n).map(|k| z[0].norm_sqr() - z[k].norm_sqr()).collect();
    let p = z.iter().fold(Complex64::new(1.0, 0.0), |a, b| a * b);
    out.push((Complex64::new(1.0, 0.0) + p).norm().ln());
    out
}

/// Central differences: `grad[j] = (∂f/∂x_j, ∂f/∂y_j)` for each component.
fn fd_gradients(z: &[Complex64]) -> Vec<Vec<(f64, f64)>> {
    let n = z.len();
    let mut g = vec![vec![(0.0, 0.0); n]; n];
    for j in 0..n {
        for (dir, step) in [(0, Complex64::new(H, 0.0)), (1, Complex64::new(0.0, H))] {
            let mut plus = z.to_vec();
            let mut minus = z.to_vec();
            plus[j] += step;
            minus[j] -= step;
            let (fp, fm) = (f_direct(&plus), f_direct(&minus));
            for k in 0..n {
                let d = (fp[k] - fm[k]) / (2.0 * H);
                if dir == 0 {
                    g[k][j].0 = d;
                } else {
                    g[k][j].1 = d;
                }
            }
        }
    }
    g
}

#[test]
fn closed_form_partials_agree_with_finite_differences() {
    for n in 2..=5 {
        let ctx = FibrationContext::new(n).unwrap();
        for i in 0..50u64 {
            let mut rng = sampling::trial_rng(31, i);
            let z = slag::sample_point(n, &mut rng);
            let a = slag::dbar_partials(&ctx, &z).unwrap();
            let g = fd_gradients(&z.0);
            for k in 0..n {
                for j in 0..n {
                    let fd = Complex64::new(g[k][j].0, g[k][j].1) * 0.5;
                    assert!((a[j][k] - fd).norm() < 1e-5, "n={n} sample={i} k={k} j={j}");
                }
            }
            // Poisson brackets from real partials: Σ_j f_x g_y - f_y g_x.
            for p in 0..n {
                for q in p + 1..n {
                    let b: f64 = (0..n).map(|j| g[p][j].0 * g[q][j].1 - g[p][j].1 * g[q][j].0).sum();
                    assert!(b.abs() < 1e-5, "n={n} bracket ({p},{q}) = {b}");
                }
            }
        }
    }
}

#[test]
fn residual_sweeps() {
    for n in 2..=5 {
        let ctx = FibrationContext::new(n).unwrap();
        for i in 0..1000u64 {
            let s = slag::sample_residuals(&ctx, 4, i).unwrap();
            assert!(s.lagrangian < 1e-9 && s.special < 1e-9 && s.roundtrip < 1e-8, "n={n} {s:?}");
        }
    }
}

#[test]
fn special_residual_simple_point() {
    let ctx = FibrationContext::new(2).unwrap();
    let z = AmbientPoint(vec![Complex64::new(1.0, 0.0); 2]);
    assert!(slag::special_residual(&ctx, &z).unwrap() < 1e-12);
    assert!(slag::lagrangian_residual(&ctx, &z).unwrap() < 1e-12);
}

#[test]
fn residuals_near_singular_points() {
    for n in 2..=5 {
        let ctx = FibrationContext::new(n).unwrap();
        for i in 0..100u64 {
            let mut rng = sampling::trial_rng(8, i);
            let mut z = slag::sample_point(n, &mut rng);
            let a = rng.random_range(0..n);
            let b = (a + 1 + rng.random_range(0..n - 1)) % n;
            z.0[a] = Complex64::from_polar(1e-8, rng.random_range(0.0..std::f64::consts::TAU));
            z.0[b] = Complex64::from_polar(1e-8, rng.random_range(0.0..std::f64::consts::TAU));
            assert!(slag::lagrangian_residual(&ctx, &z).unwrap() < 1e-9);
            assert!(slag::special_residual(&ctx, &z).unwrap() < 1e-9);
        }
    }
}

#[test]
fn torus_action_preserves_fibers_and_residuals() {
    for n in 2..=5 {
        let ctx = FibrationContext::new(n).unwrap();
        for i in 0..200u64 {
            let mut rng = sampling::trial_rng(17, i);
            let z = slag::sample_point(n, &mut rng);
            let mut thetas: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-3.0..3.0)).collect();
            thetas.push(-thetas.iter().sum::<f64>());
            let w = z.rotate(&thetas);
            let (x, y) = (slag::f_eval(&ctx, &z).unwrap(), slag::f_eval(&ctx, &w).unwrap());
            assert!(x.0.iter().zip(&y.0).all(|(a, b)| (a - b).abs() < 1e-9));
            let d = slag::special_residual(&ctx, &z).unwrap() - slag::special_residual(&ctx, &w).unwrap();
            assert!(d.abs() < 1e-9);
            assert!(slag::lagrangian_residual(&ctx, &w).unwrap() < 1e-9);

            // Different free phases land on the same fiber.
            let theta = rng.random_range(0.1..6.0);
            for _ in 0..3 {
                let phases: Vec<f64> = (0..n - 2).map(|_| rng.random_range(-3.0..3.0)).collect();
                let p = slag::fiber_point(&ctx, &x, theta, &phases).unwrap();
                let back = slag::f_eval(&ctx, &p).unwrap();
                assert!(back.0.iter().zip(&x.0).all(|(a, b)| (a - b).abs() < 1e-8));
            }
        }
    }
}

#[test]
fn strata_and_fiber_types_agree() {
    let n = 4;
    let ctx = FibrationContext::new(n).unwrap();
    let mut rng = sampling::trial_rng(1, 1);
    for _ in 0..300 {
        let mut x: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-3..=3) as f64).collect();
        x.push(if rng.random_bool(0.7) { 0.0 } else { 0.5 });
        let x = BasePoint(x);
        let strata = slag::discriminant_member(&ctx, &x);
        let l = slag::fiber_type(&ctx, &x).l;
        assert_eq!(!strata.is_empty(), l >= 2, "{x:?} {strata:?} l={l}");
        if l >= 2 {
            // A stratum (i, j) lists two of the l vanishing coordinates.
            assert!(!strata.is_empty());
        }
    }
}

#[test]
fn labeling_search_matches_displayed_matrices() {
    let shown = slag::monodromy_matrices_n3();
    let pairs = [(1, 2), (1, 3), (2, 3)];
    let mut matches = Vec::new();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        for signs in 0..8 {
            let ok = (0..3).all(|t| {
                let sign = if signs >> t & 1 == 0 { 1 } else { -1 };
                let (i, j) = pairs[perm[t]];
                slag::general_monodromy(3, i, j, sign).unwrap() == shown[t]
            });
            if ok {
                matches.push((perm, signs));
            }
        }
    }
    assert!(matches.contains(&([0, 1, 2], 0)), "{matches:?}");
}

#[test]
fn general_monodromy_properties() {
    for n in 2..=6 {
        for i in 1..=n {
            for j in i + 1..=n {
                for sign in [1, -1] {
                    let m = slag::general_monodromy(n, i, j, sign).unwrap();
                    let delta = slag::vanishing_cycle(n, i, j).unwrap();
                    let image: Vec<i64> = (0..n).map(|r| (0..n).map(|c| m[r][c] * delta[c]).sum()).collect();
                    assert_eq!(image, delta);
                    // (T - I)² = 0.
                    let nil: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| m[r][c] - i64::from(r == c)).collect()).collect();
                    for r in 0..n {
                        for c in 0..n {
                            assert_eq!((0..n).map(|k| nil[r][k] * nil[k][c]).sum::<i64>(), 0);
                        }
                    }
                }
            }
        }
    }
    assert!(slag::general_monodromy(3, 2, 4, 1).is_err());
}

#[test]
fn simplicity_against_binomials() {
    for n in 2..=6 {
        let (computed, expected, eq) = slag::simplicity_dims(n).unwrap();
        let mut binom = vec![1usize];
        let mut row = vec![1usize];
        for _ in 0..n - 1 {
            let mut next = vec![1];
            next.extend(row.windows(2).map(|w| w[0] + w[1]));
            next.push(1);
            row = next;
        }
        binom.extend(row);
        assert!(eq);
        assert_eq!(computed, binom);
        assert_eq!(expected, binom);
    }
    let c = TorusContext::new(5).unwrap();
    let gens: Vec<LatticeAutomorphism> = Vec::new();
    assert_eq!(exterior::invariant_dimensions(c, &gens).unwrap(), vec![1, 5, 10, 10, 5, 1]);
}
