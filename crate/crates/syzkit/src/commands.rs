//! Verification suites behind each subcommand.
//!
//! Trials draw their randomness from `sampling::trial_rng(seed, index)` and
//! may run in parallel; results are folded in trial order so reports are
//! reproducible byte for byte.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use syzkit_core::cy3::{self, CY3Datum, EvenClass};
use syzkit_core::exterior::{self, TorusContext};
use syzkit_core::k3::K3LatticeModel;
use syzkit_core::linalg::RationalMatrix;
use syzkit_core::rational::{self, Q};
use syzkit_core::sampling;
use syzkit_core::slag::{self, AmbientPoint, BasePoint, FibrationContext};
use syzkit_core::weightfilt;
use syzkit_core::Error;

use crate::io::InputError;
use crate::report::{float, floats, matrix, q, qs, Report, TrialTally};

/// Bound on `‖f(fiber_point(x)) - x‖_∞`.
pub const ROUNDTRIP_TOL: f64 = 1e-8;
/// Entries of random integer vectors lie in `[-RANDOM_BOUND, RANDOM_BOUND]`.
pub const RANDOM_BOUND: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { trials: 200, seed: 0, tolerance: 1e-9 }
    }
}

type Outcome = (&'static str, bool, Value);

fn fold_trials(report: &mut Report, per_trial: Vec<Vec<Outcome>>) {
    let mut tallies: Vec<(&'static str, TrialTally)> = Vec::new();
    for outcomes in per_trial {
        for (name, pass, witness) in outcomes {
            let pos = match tallies.iter().position(|(n, _)| *n == name) {
                Some(p) => p,
                None => {
                    tallies.push((name, TrialTally::default()));
                    tallies.len() - 1
                }
            };
            tallies[pos].1.record(pass, witness);
        }
    }
    for (name, t) in tallies {
        report.push(name, t.pass(), t.witness());
    }
}

fn failed(name: &'static str, e: Error) -> Outcome {
    (name, false, json!({"error": e.to_string()}))
}

fn neg_identity(n: usize) -> RationalMatrix {
    RationalMatrix::identity(n).scale(&-Q::one())
}

fn random_in_leray<R: rand::Rng>(rng: &mut R, rank: usize, level: usize) -> EvenClass {
    let mut x = EvenClass::zero(rank);
    x.a6 = rational::int(rng.random_range(-RANDOM_BOUND..=RANDOM_BOUND));
    if level >= 1 {
        x.a4 = sampling::rational_vector(rng, rank, RANDOM_BOUND);
    }
    if level >= 2 {
        x.a2 = sampling::rational_vector(rng, rank, RANDOM_BOUND);
    }
    if level >= 3 {
        x.a0 = rational::int(rng.random_range(-RANDOM_BOUND..=RANDOM_BOUND));
    }
    x
}

fn even(x: &EvenClass) -> Value {
    qs(&x.to_vec())
}

fn cy3_trial(datum: &CY3Datum, seed: u64, index: u64) -> Vec<Outcome> {
    let r = datum.rank();
    let mut rng = sampling::trial_rng(seed, index);
    let d1 = sampling::rational_vector(&mut rng, r, RANDOM_BOUND);
    let d2 = sampling::rational_vector(&mut rng, r, RANDOM_BOUND);
    let d3 = sampling::rational_vector(&mut rng, r, RANDOM_BOUND);
    let xs: Vec<EvenClass> = (0..4).map(|i| random_in_leray(&mut rng, r, i)).collect();
    let alpha = random_in_leray(&mut rng, r, 1);
    let beta = random_in_leray(&mut rng, r, 1);
    let mut out = Vec::new();

    let g = datum.spair_gram();
    let t1 = datum.translate_matrix(&d1);
    let iso = &(&t1.transpose() * &g) * &t1 == g;
    out.push(("translate_isometry", iso, json!({"d": qs(&d1)})));

    let sum: Vec<Q> = d1.iter().zip(&d2).map(|(a, b)| a + b).collect();
    let t2 = datum.translate_matrix(&d2);
    let law = &t1 * &t2 == datum.translate_matrix(&sum) && datum.translate_matrix(&vec![Q::zero(); r]).is_identity();
    out.push(("group_law", law, json!({"d1": qs(&d1), "d2": qs(&d2)})));

    let mut graded = true;
    let mut graded_witness = Vec::new();
    for (level, x) in xs.iter().enumerate() {
        match datum.graded_action_check(&d1, x, level) {
            Ok(rep) => {
                graded &= rep.passes();
                graded_witness.push(json!({
                    "level": level,
                    "alpha": even(x),
                    "graded_image": qs(&rep.graded_image),
                    "cup_with_d": qs(&rep.cup_with_d),
                    "pass": rep.passes(),
                }));
            }
            Err(e) => return vec![failed("graded_action", e)],
        }
    }
    out.push(("graded_action", graded, json!({"d": qs(&d1), "levels": graded_witness})));

    match datum.triple_product_check(&d1, &d2, &d3) {
        Ok((lhs, rhs, eq)) => out.push((
            "triple_product",
            eq,
            json!({"d1": qs(&d1), "d2": qs(&d2), "d3": qs(&d3), "pairing": q(&lhs), "minus_cubic": q(&rhs)}),
        )),
        Err(e) => out.push(failed("triple_product", e)),
    }

    match datum.sigma_polynomial(&d1) {
        Ok(p) => out.push((
            "sigma_polynomial",
            p.passes(),
            json!({
                "d": qs(&d1),
                "coefficients": qs(&p.coefficients),
                "closed_form": p.matches_closed_form,
                "odd": p.odd,
                "third_difference": q(&p.third_difference),
                "third_difference_ok": p.third_difference_ok,
            }),
        )),
        Err(e) => out.push(failed("sigma_polynomial", e)),
    }

    match datum.chi_line_bundle(&d1) {
        Ok(c) => out.push((
            "chi_cross_check",
            c.consistent,
            json!({
                "d": qs(&d1),
                "closed_form": q(&c.closed_form),
                "minus_sigma_pairing": q(&c.minus_sigma_pairing),
                "mukai_pairing": q(&c.mukai_pairing),
            }),
        )),
        Err(e) => out.push(failed("chi_cross_check", e)),
    }

    match datum.f1_isotropy_check(&alpha, &beta) {
        Ok(ok) => out.push(("f1_isotropy", ok, json!({"alpha": even(&alpha), "beta": even(&beta)}))),
        Err(e) => out.push(failed("f1_isotropy", e)),
    }
    out
}

fn weight_vs_leray_check(datum: &CY3Datum, report: &mut Report) {
    let a = vec![Q::one(); datum.rank()];
    match datum.weight_vs_leray(&a) {
        Ok(w) if w.degenerate => report.push(
            "weight_vs_leray",
            true,
            json!({
                "degenerate": true,
                "cube_nonzero": w.hard_lefschetz.cube_nonzero,
                "cup_invertible": w.hard_lefschetz.cup_invertible,
            }),
        ),
        Ok(w) => {
            let mu = w.max_unipotent.as_ref().expect("nondegenerate reports carry the certificate");
            let m_is_minus_identity = mu.pairing_matrix.as_ref() == Some(&neg_identity(datum.rank()));
            let pass = w.filtrations_agree() && mu.passes() && m_is_minus_identity;
            let comparisons: Vec<Value> = w
                .comparisons
                .iter()
                .map(|c| json!({"w": c.weight_index, "f": c.leray_index, "equal": c.equal}))
                .collect();
            report.push(
                "weight_vs_leray",
                pass,
                json!({
                    "degenerate": false,
                    "weights": qs(&a),
                    "comparisons": comparisons,
                    "weight_dims": mu.filtration.dims(),
                    "leray_dims": datum.leray_filtration().dims(),
                    "condition_1": mu.unipotent,
                    "condition_2": mu.weight_dims,
                    "condition_3": mu.pairing_invertible,
                    "m": mu.pairing_matrix.as_ref().map(matrix),
                }),
            );
        }
        Err(e) => report.push("weight_vs_leray", false, json!({"error": e.to_string()})),
    }
}

pub fn check_cy3(datum: &CY3Datum, cfg: &RunConfig) -> Report {
    let mut report = Report::new("check-cy3");
    let r = datum.rank();
    let g = datum.spair_gram();
    let det = g.determinant();
    let skew = g.transpose() == g.scale(&-Q::one());
    report.push(
        "spair_skew_unimodular",
        skew && (det.is_one() || (-det.clone()).is_one()),
        json!({"label": datum.label(), "rank": r, "skew": skew, "det": q(&det)}),
    );

    let basis: Vec<EvenClass> = (0..2 * r + 2).map(|i| EvenClass::unit(r, i)).collect();
    let pl_iso = basis.iter().all(|x| {
        basis.iter().all(|y| datum.spair(&datum.picard_lefschetz(x), &datum.picard_lefschetz(y)) == datum.spair(x, y))
    });
    let s0 = datum.sigma0();
    report.push(
        "picard_lefschetz_isometry",
        pl_iso && datum.picard_lefschetz(&s0) == s0,
        json!({"sigma0": even(&s0)}),
    );

    let mut yukawa_ok = true;
    let mut first_bad = Value::Null;
    for i in 0..r {
        for j in i..r {
            for k in j..r {
                match datum.yukawa([i, j, k]) {
                    Ok((lambda, c)) => {
                        if lambda != -c.clone() && yukawa_ok {
                            yukawa_ok = false;
                            first_bad = json!({"indices": [i, j, k], "lambda": q(&lambda), "c": q(&c)});
                        }
                    }
                    Err(e) => {
                        yukawa_ok = false;
                        first_bad = json!({"indices": [i, j, k], "error": e.to_string()});
                    }
                }
            }
        }
    }
    report.push("yukawa_nilpotent_orbit", yukawa_ok, json!({"first_failure": first_bad}));

    let per_trial: Vec<Vec<Outcome>> =
        (0..cfg.trials as u64).into_par_iter().map(|t| cy3_trial(datum, cfg.seed, t)).collect();
    fold_trials(&mut report, per_trial);
    weight_vs_leray_check(datum, &mut report);
    report
}

pub fn chi(datum: &CY3Datum, d: &[Q]) -> Result<Report, InputError> {
    let c = datum.chi_line_bundle(d)?;
    let mut report = Report::new("chi");
    report.push(
        "chi_line_bundle",
        c.consistent,
        json!({
            "d": qs(d),
            "chi": q(&c.closed_form),
            "minus_sigma0_sigma_d": q(&c.minus_sigma_pairing),
            "mukai_pairing": q(&c.mukai_pairing),
        }),
    );
    Ok(report)
}

pub fn weights(ts: &[RationalMatrix], a: &[Q]) -> Result<Report, InputError> {
    let dim = ts.first().map(RationalMatrix::nrows).ok_or_else(|| InputError::Invalid("no matrices given".into()))?;
    let mut report = Report::new("weights");
    match weightfilt::maximally_unipotent_check(ts, a, None, dim) {
        Ok(mu) => {
            report.push("condition_1_unipotent", mu.unipotent, json!({"s": ts.len(), "dim": dim}));
            report.push(
                "condition_2_weight_dims",
                mu.weight_dims,
                json!({"w0": mu.dim_w0, "w1": mu.dim_w1, "w2": mu.dim_w2, "expected_w2": 1 + ts.len()}),
            );
            report.push(
                "condition_3_pairing",
                mu.pairing_invertible,
                json!({"m": mu.pairing_matrix.as_ref().map(matrix)}),
            );
            report.push(
                "filtration_defining_properties",
                mu.filtration.satisfies_defining_properties(&mu.combined),
                json!({"center": mu.filtration.center(), "dims": mu.filtration.dims(), "n": matrix(&mu.combined)}),
            );
        }
        Err(e @ (Error::NotUnipotent { .. } | Error::NotNilpotent { .. })) => {
            report.push("condition_1_unipotent", false, json!({"error": e.to_string()}));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn k3_trial(model: &K3LatticeModel, seed: u64, index: u64) -> Vec<Outcome> {
    let t = model.rank();
    let mut rng = sampling::trial_rng(seed, index);
    let d = sampling::rational_vector(&mut rng, t, RANDOM_BOUND);
    let d2 = sampling::rational_vector(&mut rng, t, RANDOM_BOUND);
    let mut out = Vec::new();
    let closed = model.monodromy_td(&d).expect("length matches");
    match model.translation_action(&d) {
        Ok(m) => out.push(("translation_matches_closed_form", m == closed, json!({"d": qs(&d)}))),
        Err(e) => out.push(failed("translation_matches_closed_form", e)),
    }
    out.push(("isometry", model.is_isometry(&closed), json!({"d": qs(&d)})));
    let sum: Vec<Q> = d.iter().zip(&d2).map(|(a, b)| a + b).collect();
    let law = &closed * &model.monodromy_td(&d2).expect("length matches") == model.monodromy_td(&sum).expect("length matches");
    out.push(("group_law", law, json!({"d1": qs(&d), "d2": qs(&d2)})));
    let s = model.sigma_class(&d).expect("length matches");
    let sq = model.pair(&s, &s);
    out.push(("sigma_square", sq == rational::int(-2), json!({"d": qs(&d), "sigma_d_squared": q(&sq)})));
    let (lhs, rhs, eq) = model.riemann_roch_check(&d).expect("length matches");
    out.push(("riemann_roch", eq, json!({"d": qs(&d), "minus_sigma0_sigma_d": q(&lhs), "d2_half_plus_2": q(&rhs)})));
    out.push(("sigma_integral", s.is_integral(), json!({"d": qs(&d), "sigma_d": qs(&s.to_vec())})));
    out
}

pub fn check_k3(model: &K3LatticeModel, cfg: &RunConfig) -> Report {
    let mut report = Report::new("check-k3");
    report.push(
        "fiber_class_relation",
        model.fiber_class_relation(),
        json!({"label": model.label(), "rank": model.rank(), "even": model.is_even()}),
    );
    let per_trial: Vec<Vec<Outcome>> =
        (0..cfg.trials as u64).into_par_iter().map(|t| k3_trial(model, cfg.seed, t)).collect();
    let mut inner = Report::new("check-k3");
    fold_trials(&mut inner, per_trial);
    for c in inner.checks {
        if c.name == "sigma_integral" && !model.is_even() {
            // Half-integral section classes are expected off the even case.
            report.push(
                "integrality",
                true,
                json!({"warning": "Gram matrix has odd diagonal; sigma_D need not be integral", "detail": c.witness}),
            );
        } else if c.name == "sigma_integral" {
            report.push("integrality", c.pass, c.witness);
        } else {
            report.push(c.name, c.pass, c.witness);
        }
    }
    report
}

pub fn slag_verify(n: usize, samples: usize, cfg: &RunConfig) -> Result<Report, InputError> {
    let ctx = FibrationContext::with_tolerance(n, cfg.tolerance)?;
    let results: Vec<Result<slag::SampleResiduals, Error>> =
        (0..samples as u64).into_par_iter().map(|i| slag::sample_residuals(&ctx, cfg.seed, i)).collect();
    let mut report = Report::new("slag verify");
    let mut worst = [(0.0f64, 0u64); 3];
    for r in results {
        match r {
            Ok(s) => {
                for (slot, v) in worst.iter_mut().zip([s.lagrangian, s.special, s.roundtrip]) {
                    if v > slot.0 || v.is_nan() {
                        *slot = (v, s.index);
                    }
                }
            }
            Err(e) => {
                report.push("sampling", false, json!({"error": e.to_string()}));
                return Ok(report);
            }
        }
    }
    let bounds = [cfg.tolerance, cfg.tolerance, ROUNDTRIP_TOL];
    for ((name, (v, idx)), bound) in ["lagrangian_residual", "special_residual", "fiber_roundtrip"].iter().zip(worst).zip(bounds) {
        report.push(
            *name,
            v < bound,
            json!({"n": n, "samples": samples, "seed": cfg.seed, "max": float(v), "worst_index": idx, "bound": float(bound)}),
        );
    }
    Ok(report)
}

fn point(z: &AmbientPoint) -> Value {
    Value::Array(z.0.iter().map(|c| json!([float(c.re), float(c.im)])).collect())
}

pub fn slag_fiber(n: usize, x: &[f64], theta: f64, phases: &[f64]) -> Result<Report, InputError> {
    let ctx = FibrationContext::new(n)?;
    let base = BasePoint(x.to_vec());
    let z = slag::fiber_point(&ctx, &base, theta, phases)?;
    let back = slag::f_eval(&ctx, &z)?;
    let err = back.0.iter().zip(x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let desc = slag::fiber_type(&ctx, &base);
    let mut report = Report::new("slag fiber");
    report.push(
        "fiber_roundtrip",
        err < ROUNDTRIP_TOL,
        json!({"x": floats(x), "theta": float(theta), "z": point(&z), "f_z": floats(&back.0), "error": float(err)}),
    );
    report.push(
        "fiber_type",
        true,
        json!({"l": desc.l, "type": desc.type_string, "dual_type": desc.dual_type_string}),
    );
    Ok(report)
}

pub fn slag_discriminant(n: usize, x: &[f64]) -> Result<Report, InputError> {
    let ctx = FibrationContext::new(n)?;
    if x.len() != n {
        return Err(InputError::Invalid(format!("expected {n} base coordinates, got {}", x.len())));
    }
    let base = BasePoint(x.to_vec());
    let strata = slag::discriminant_member(&ctx, &base);
    let desc = slag::fiber_type(&ctx, &base);
    let consistent = strata.is_empty() == (desc.l <= 1);
    let mut report = Report::new("slag discriminant");
    report.push(
        "strata_vs_fiber_type",
        consistent,
        json!({
            "x": floats(x),
            "strata": strata.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "l": desc.l,
            "type": desc.type_string,
            "dual_type": desc.dual_type_string,
        }),
    );
    Ok(report)
}

fn int_matrix(m: &[Vec<i64>]) -> RationalMatrix {
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    RationalMatrix::from_i64_rows(&rows)
}

pub fn slag_monodromy(n: usize) -> Result<Report, InputError> {
    if n < 2 {
        return Err(syzkit_core::Error::InvalidDimension(n).into());
    }
    let mut report = Report::new("slag monodromy");
    if n == 3 {
        let shown = slag::monodromy_matrices_n3();
        let labels = [(1, 2), (1, 3), (2, 3)];
        let matched = labels.iter().zip(&shown).all(|(&(i, j), m)| slag::general_monodromy(3, i, j, 1).ok().as_ref() == Some(m));
        report.push(
            "displayed_matrices",
            matched,
            json!({
                "t1": shown[0], "t2": shown[1], "t3": shown[2],
                "branches": labels.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
                "sign": 1,
            }),
        );
    }
    let id = RationalMatrix::identity(n);
    let mut all = Vec::new();
    let mut ok = true;
    for i in 1..=n {
        for j in i + 1..=n {
            let m = slag::general_monodromy(n, i, j, 1)?;
            let t = int_matrix(&m);
            let nil = &t - &id;
            let delta = rational::ints(&slag::vanishing_cycle(n, i, j)?);
            let fixes_gammas = (0..n - 1).all(|k| t.column(k) == id.column(k));
            let pass = !nil.is_zero() && (&nil * &nil).is_zero() && fixes_gammas && t.mul_vec(&delta) == delta;
            ok &= pass;
            all.push(json!({"branch": [i, j], "matrix": m, "pass": pass}));
        }
    }
    report.push("unipotent_index_two", ok, json!({"n": n, "branches": all}));
    Ok(report)
}

pub fn slag_simplicity(n: usize) -> Result<Report, InputError> {
    let (computed, expected, eq) = slag::simplicity_dims(n)?;
    let mut report = Report::new("slag simplicity");
    report.push("invariant_dimensions", eq, json!({"n": n, "computed": computed, "expected": expected}));
    Ok(report)
}

pub fn torus(n: usize) -> Result<Report, InputError> {
    let ctx = TorusContext::new(n)?;
    let d = exterior::duality_diagram(ctx)?;
    let mut report = Report::new("torus");
    report.push(
        "duality_diagram",
        d.passes(),
        json!({"n": n, "pairs_checked": d.checked, "failures": d.failures.iter().map(|(i, l)| json!({"covector": i, "lambda": l})).collect::<Vec<_>>()}),
    );
    Ok(report)
}

pub fn leray_table(h11: u64, h12: u64) -> Report {
    let t = cy3::leray_table(h11, h12);
    let mut report = Report::new("leray-table");
    report.push("b3", t.b3() == 2 + 2 * h12, json!({"b3": t.b3(), "grid_rows_q3_to_q0": t.grid}));
    report.push(
        "mirror_swap",
        t.mirror == cy3::leray_table(h12, h11).grid,
        json!({"mirror_rows_q3_to_q0": t.mirror}),
    );
    report
}
