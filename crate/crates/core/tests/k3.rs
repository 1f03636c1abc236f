use proptest::prelude::*;
use syzkit_core::k3::{K3Class, K3LatticeModel};
use syzkit_core::rational::{frac, int, ints, Q};

fn grams() -> Vec<Vec<Vec<i64>>> {
    vec![vec![vec![-2]], vec![vec![-2, 1], vec![1, -2]], vec![vec![0, 1], vec![1, 0]], vec![vec![-4, 2, 0], vec![2, -2, 1], vec![0, 1, -6]]]
}

fn dot(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    (0..x.len()).flat_map(|i| (0..y.len()).map(move |j| (i, j))).map(|(i, j)| x[i] * g[i][j] * y[j]).sum()
}

/// `σ_D = E' + D - (D²/2 + 1) E` in integer arithmetic; `D²` is even here.
fn sigma_oracle(g: &[Vec<i64>], d: &[i64]) -> K3Class {
    K3Class { a: int(1), v: ints(d), b: int(-(dot(g, d, d) / 2 + 1)) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn section_identities(which in 0usize..4, raw in prop::collection::vec(-5i64..=5, 3), raw2 in prop::collection::vec(-5i64..=5, 3)) {
        let g = grams()[which].clone();
        let t = g.len();
        let model = K3LatticeModel::new("m", g.clone()).unwrap();
        let d = &raw[..t];
        let e = &raw2[..t];
        let dq = ints(d);
        let eq = ints(e);

        let s = model.sigma_class(&dq).unwrap();
        prop_assert_eq!(&s, &sigma_oracle(&g, d));
        prop_assert_eq!(model.pair(&s, &s), int(-2));
        let (lhs, rhs, ok) = model.riemann_roch_check(&dq).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(lhs, frac(dot(&g, d, d), 2) + int(2));
        prop_assert_eq!(rhs, frac(dot(&g, d, d), 2) + int(2));

        let td = model.monodromy_td(&dq).unwrap();
        prop_assert_eq!(&model.translation_action(&dq).unwrap(), &td);
        prop_assert!(model.is_isometry(&td));
        prop_assert!(td.is_integral());

        // T_D σ_α = σ_{α+D}.
        let sum: Vec<i64> = d.iter().zip(e).map(|(a, b)| a + b).collect();
        prop_assert_eq!(model.apply(&td, &sigma_oracle(&g, e)), sigma_oracle(&g, &sum));

        let law = &td * &model.monodromy_td(&eq).unwrap();
        prop_assert_eq!(law, model.monodromy_td(&ints(&sum)).unwrap());
    }
}

#[test]
fn odd_gram_gives_half_integral_sections() {
    let model = K3LatticeModel::new("odd", vec![vec![1]]).unwrap();
    assert!(!model.is_even());
    let s = model.sigma_class(&[Q::from_integer(1.into())]).unwrap();
    assert!(!s.is_integral());
    assert_eq!(model.pair(&s, &s), int(-2));
    let d = ints(&[3]);
    assert_eq!(model.translation_action(&d).unwrap(), model.monodromy_td(&d).unwrap());
}

#[test]
fn fixes_fiber_and_shifts_orthogonal_part() {
    let g = vec![vec![-2, 1], vec![1, -2]];
    let model = K3LatticeModel::new("A2", g.clone()).unwrap();
    let d = [2, -1];
    let td = model.monodromy_td(&ints(&d)).unwrap();
    assert_eq!(model.apply(&td, &model.e()), model.e());
    for i in 0..2 {
        let mut unit = [0, 0];
        unit[i] = 1;
        let expected = K3Class { a: int(0), v: ints(&unit), b: int(-dot(&g, &d, &unit)) };
        assert_eq!(model.apply(&td, &model.d(i)), expected);
    }
}
