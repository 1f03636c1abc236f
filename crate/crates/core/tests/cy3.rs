use num_traits::{One, Zero};
use rand::Rng;
use syzkit_core::cy3::{CY3Datum, EvenClass};
use syzkit_core::rational::{frac, int, ints, Q};
use syzkit_core::sampling;
use syzkit_core::RationalMatrix;

fn cubic(datum: &CY3Datum, a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    let r = datum.rank();
    let mut s = 0;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                s += datum.cubic_entry(i, j, k) * a[i] * b[j] * c[k];
            }
        }
    }
    s
}

fn c2_dot(datum: &CY3Datum, d: &[i64]) -> i64 {
    datum.c2().iter().zip(d).map(|(a, b)| a * b).sum()
}

/// Matrix of cup product with `D` on `(a0, a2, a4, a6)`, assembled from the
/// cubic entries directly.
fn cup_matrix(datum: &CY3Datum, d: &[i64]) -> RationalMatrix {
    let r = datum.rank();
    let n = 2 * r + 2;
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..r {
        m.set(1 + i, 0, int(d[i]));
        for k in 0..r {
            let v: i64 = (0..r).map(|j| d[j] * datum.cubic_entry(j, i, k)).sum();
            m.set(1 + r + k, 1 + i, int(v));
        }
        m.set(n - 1, 1 + r + i, int(d[i]));
    }
    m
}

/// `e^{-D} = I - L + L²/2 - L³/6`.
fn translate_oracle(datum: &CY3Datum, d: &[i64]) -> RationalMatrix {
    let l = cup_matrix(datum, d);
    let n = l.nrows();
    let l2 = &l * &l;
    let l3 = &l2 * &l;
    let id = RationalMatrix::identity(n);
    &(&(&id - &l) + &l2.scale(&frac(1, 2))) - &l3.scale(&frac(1, 6))
}

fn data() -> Vec<CY3Datum> {
    let mut rng = sampling::trial_rng(2024, 0);
    vec![
        CY3Datum::from_entries("r1", 1, &[(0, 0, 0, 6)], vec![12]).unwrap(),
        sampling::random_cy3(&mut rng, 2, 5, true),
        sampling::random_cy3(&mut rng, 3, 5, false),
        CY3Datum::from_entries("flat", 2, &[], vec![24, 0]).unwrap(),
    ]
}

#[test]
fn model_against_direct_formulas() {
    for datum in data() {
        let r = datum.rank();
        let g = datum.spair_gram();
        assert_eq!(g.transpose(), g.scale(&int(-1)));
        assert!(g.determinant().is_one() || (-g.determinant()).is_one());
        for trial in 0..60u64 {
            let mut rng = sampling::trial_rng(77, trial);
            let d1 = sampling::int_vector(&mut rng, r, 5);
            let d2 = sampling::int_vector(&mut rng, r, 5);
            let d3 = sampling::int_vector(&mut rng, r, 5);
            let (q1, q2, q3) = (ints(&d1), ints(&d2), ints(&d3));

            let t1 = datum.translate_matrix(&q1);
            assert_eq!(t1, translate_oracle(&datum, &d1));
            assert_eq!(&(&t1.transpose() * &g) * &t1, g);
            let sum: Vec<i64> = d1.iter().zip(&d2).map(|(a, b)| a + b).collect();
            assert_eq!(&t1 * &datum.translate_matrix(&q2), datum.translate_matrix(&ints(&sum)));

            let (lhs, rhs, ok) = datum.triple_product_check(&q1, &q2, &q3).unwrap();
            assert!(ok);
            assert_eq!(lhs, int(-cubic(&datum, &d1, &d2, &d3)));
            assert_eq!(rhs, lhs);

            let cube = cubic(&datum, &d1, &d1, &d1);
            let c2d = c2_dot(&datum, &d1);
            for t in -3i64..=3 {
                let expected = -(frac(cube * t * t * t, 6) + frac(t * c2d, 12));
                assert_eq!(datum.sigma_pairing_at(&q1, t), expected);
            }
            let poly = datum.sigma_polynomial(&q1).unwrap();
            assert!(poly.passes());
            assert_eq!(poly.third_difference, int(-cube));
            assert_eq!(poly.coefficients, vec![Q::zero(), frac(-c2d, 12), Q::zero(), frac(-cube, 6)]);

            let chi = datum.chi_line_bundle(&q1).unwrap();
            assert!(chi.consistent);
            assert_eq!(chi.closed_form, frac(cube, 6) + frac(c2d, 12));
            let neg: Vec<Q> = q1.iter().map(|x| -x).collect();
            assert_eq!(datum.chi_line_bundle(&neg).unwrap().closed_form, -chi.closed_form);

            let f1 = |rng: &mut rand_chacha::ChaCha8Rng| {
                EvenClass::new(
                    Q::zero(),
                    vec![Q::zero(); r],
                    sampling::rational_vector(rng, r, 5),
                    int(rng.random_range(-5..=5)),
                )
            };
            let (a, b) = (f1(&mut rng), f1(&mut rng));
            assert!(datum.f1_isotropy_check(&a, &b).unwrap());

            for level in 0..4 {
                let mut x = EvenClass::zero(r);
                x.a6 = int(1 + trial as i64 % 3);
                if level >= 1 {
                    x.a4 = sampling::rational_vector(&mut rng, r, 5);
                }
                if level >= 2 {
                    x.a2 = sampling::rational_vector(&mut rng, r, 5);
                }
                if level >= 3 {
                    x.a0 = int(2);
                }
                assert!(datum.graded_action_check(&q1, &x, level).unwrap().passes());
            }
        }
    }
}

#[test]
fn mukai_vectors_and_sections() {
    let datum = &data()[0];
    let v = datum.mukai_line_bundle(&ints(&[1])).unwrap();
    assert_eq!(v.to_vec(), vec![int(1), int(1), frac(7, 2), frac(3, 2)]);
    let s = datum.sigma(&ints(&[1])).unwrap();
    assert_eq!(s.to_vec(), vec![int(1), int(-1), frac(7, 2), frac(-3, 2)]);
    // Translation moves sections: T_D σ_α = σ_{α+D}.
    let moved = datum.translate(&ints(&[2]), &datum.sigma(&ints(&[-1])).unwrap());
    assert_eq!(moved, datum.sigma(&ints(&[1])).unwrap());
    // Picard-Lefschetz fixes σ_0 and is an isometry on the basis.
    let s0 = datum.sigma0();
    assert_eq!(datum.picard_lefschetz(&s0), s0);
    for i in 0..4 {
        for j in 0..4 {
            let (x, y) = (EvenClass::unit(1, i), EvenClass::unit(1, j));
            assert_eq!(
                datum.spair(&datum.picard_lefschetz(&x), &datum.picard_lefschetz(&y)),
                datum.spair(&x, &y)
            );
        }
    }
}

#[test]
fn weight_and_leray_filtrations() {
    let all = data();
    for datum in &all[..2] {
        let ones = vec![Q::one(); datum.rank()];
        let w = datum.weight_vs_leray(&ones).unwrap();
        assert!(w.filtrations_agree());
        let mu = w.max_unipotent.unwrap();
        assert!(mu.passes());
        assert_eq!(mu.pairing_matrix.unwrap(), RationalMatrix::identity(datum.rank()).scale(&int(-1)));
    }
    assert!(all[3].weight_vs_leray(&[int(1), int(1)]).unwrap().degenerate);
}

#[test]
fn inconsistent_cubic_rejected() {
    assert!(CY3Datum::from_entries("bad", 2, &[(0, 1, 1, 3), (1, 0, 1, 4)], vec![0, 0]).is_err());
    assert!(CY3Datum::from_entries("ok", 2, &[(0, 1, 1, 3), (1, 1, 0, 3)], vec![0, 0]).is_ok());
    assert!(CY3Datum::from_entries("range", 2, &[(0, 2, 1, 3)], vec![0, 0]).is_err());
}
