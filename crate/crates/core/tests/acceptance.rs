//! Acceptance checks, one line per criterion. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any criterion fails.

// `!(x <= tol)` is used on purpose so that NaN fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use qduality::cli::{run, Mode, RunConfig, ALPHA_P_INDICES, ALPHA_T_VALUES, EXAMPLE_POINTS};
use qduality::duality::golden::{golden_examples, GoldenExample};
use qduality::duality::{
    alpha_coeff, alpha_via_gamma, beta_table, gamma_coeff, rhs_eval, DualityFamily, ParameterFamily,
};
use qduality::oracle::{c_minus1, c_minus1_index, closure_scale, residue_at_zero, RationalFk};
use qduality::qcore::{gauss_coefficients, q_gamma, q_pochhammer, QBase, QExponent};
use qduality::qseries::{limit_at_one, phi_eval, phi_hat_eval, PhiSpec};
use qduality::random::{case_rng, draw_exponents, draw_qparams, SweepBounds};
use qduality::report::{ResidualReport, Status};
use rand::Rng;

const SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    let size = x.norm().max(y.norm());
    if size == 0.0 {
        0.0
    } else {
        (x - y).norm() / size
    }
}

fn sweep_config(mode: Mode, samples: usize) -> RunConfig {
    let mut config = RunConfig::new(mode);
    config.samples = samples;
    config.seed = SEED;
    config.tol = 1e-8;
    config.sweep.q = vec![0.2, 0.5];
    config
}

fn flagged_fraction(report: &ResidualReport) -> f64 {
    report.summary.n_flagged as f64 / report.cases.len() as f64
}

fn sweep_line(report: &ResidualReport) -> String {
    let s = &report.summary;
    format!(
        "{} cases, {} pass, {} fail, {} ill-conditioned, max residual {:.2e}",
        report.cases.len(),
        s.n_pass,
        s.n_fail,
        s.n_flagged,
        report.max_residual()
    )
}

fn sweep_ok(report: &ResidualReport) -> bool {
    report.all_passed() && flagged_fraction(report) <= 0.10
}

fn golden_errors(examples: &[GoldenExample]) -> f64 {
    let mut worst: f64 = 0.0;
    for ex in examples {
        let rho = ex.params.admissible_radius();
        for (frac, angle) in EXAMPLE_POINTS {
            let z = Complex64::from_polar(rho * frac, angle);
            let value = rhs_eval(&ex.params, z).map_or(f64::INFINITY, |v| rel(v, ex.closed_form(z)));
            worst = worst.max(value);
        }
        let table = match beta_table(&ex.params) {
            Ok(t) => t,
            Err(_) => return f64::INFINITY,
        };
        let biggest = ex.beta.iter().map(|(_, b)| b.norm()).fold(0.0, f64::max);
        for (k, b) in table.iter() {
            let err = match ex.beta.iter().find(|(kk, _)| *kk == k) {
                Some(&(_, expected)) => rel(b, expected),
                None => b.norm() / biggest,
            };
            worst = worst.max(err);
        }
        for &(k, expected) in &ex.beta {
            worst = worst.max(rel(table.get(k), expected));
        }
    }
    worst
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let base = QBase::real(0.3).unwrap();
    let real = golden_examples(base, [c(0.17), c(0.59), c(1.13)], [c(0.23), c(0.71), c(1.37)]);
    let complex = golden_examples(
        base,
        [
            Complex64::new(0.17, 0.11),
            Complex64::new(0.59, -0.07),
            Complex64::new(1.13, 0.19),
        ],
        [
            Complex64::new(0.23, -0.15),
            Complex64::new(0.71, 0.05),
            Complex64::new(1.37, 0.2),
        ],
    );
    let (worst_real, worst_complex) = match (real, complex) {
        (Ok(r), Ok(cx)) => (golden_errors(&r), golden_errors(&cx)),
        (r, cx) => {
            return Outcome {
                pass: false,
                detail: format!("parameter error: {:?} {:?}", r.err(), cx.err()),
            }
        }
    };
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: worst_real <= 1e-9 && worst_complex <= 1e-9 && secs < 5.0,
        detail: format!(
            "examples 1-5, real triple max rel error {worst_real:.2e}, complex triple {worst_complex:.2e}, {secs:.2} s"
        ),
    }
}

fn criterion2() -> (Outcome, Option<ResidualReport>) {
    let start = Instant::now();
    let report = match run(&sweep_config(Mode::Theorem1, 100)) {
        Ok(r) => r,
        Err(e) => {
            return (
                Outcome {
                    pass: false,
                    detail: e.to_string(),
                },
                None,
            )
        }
    };
    let secs = start.elapsed().as_secs_f64();
    let outcome = Outcome {
        pass: sweep_ok(&report) && secs < 60.0,
        detail: format!("theorem1 {}, {secs:.2} s", sweep_line(&report)),
    };
    (outcome, Some(report))
}

fn criterion3(theorem1: Option<&ResidualReport>) -> Outcome {
    let report = match run(&sweep_config(Mode::Beta, 100)) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: e.to_string(),
            }
        }
    };
    let same_cases = theorem1.is_some_and(|t| t.cases.iter().zip(&report.cases).all(|(x, y)| x.params == y.params));
    Outcome {
        pass: report.all_passed() && report.summary.n_flagged == 0 && same_cases && report.cases.len() == 100,
        detail: format!(
            "beta vs sampling (weighted on the sampling circle) {}, same parameters as criterion 2: {same_cases}",
            sweep_line(&report)
        ),
    }
}

fn probe_bounds() -> SweepBounds {
    SweepBounds {
        m_bound: 3,
        n_bound: 3,
        t_bound: 3,
        q_values: vec![0.2, 0.5],
        complex_parts: false,
    }
}

fn criterion4() -> Outcome {
    let bounds = probe_bounds();
    let mut residue_worst: f64 = 0.0;
    let mut probes = 0;
    let mut id = 0;
    while probes < 50 {
        let mut rng = case_rng(SEED + 4, id);
        id += 1;
        let p = draw_qparams(&mut rng, 2 + (id % 3) as usize, &bounds);
        let k = -p.m_min() + rng.gen_range(0..=2);
        let i = rng.gen_range(0..p.r());
        let top = k + p.n()[i];
        if top < 0 {
            continue;
        }
        let j = rng.gen_range(0..=top);
        let fk = RationalFk::new(&p, k);
        let err = match (fk.residue_at_pole(i, j), gamma_coeff(&p, i, j, k)) {
            (Ok(res), Ok(gamma)) => rel(res, gamma),
            _ => f64::INFINITY,
        };
        residue_worst = residue_worst.max(err);
        probes += 1;
    }
    let mut closure_worst: f64 = 0.0;
    for id in 0..30 {
        let mut rng = case_rng(SEED + 5, id);
        let p = draw_qparams(&mut rng, 2 + (id % 3) as usize, &bounds);
        let k = -p.m_min() + rng.gen_range(0..=2);
        let err = match (alpha_coeff(&p, k), alpha_via_gamma(&p.view(), k)) {
            (Ok(alpha), Ok((_, term_scale))) => {
                let closure = c_minus1(&p, k) - residue_at_zero(&p, k);
                let scale = term_scale.max(closure_scale(&p, k)).max(alpha.norm());
                (alpha - closure).norm() / scale
            }
            _ => f64::INFINITY,
        };
        closure_worst = closure_worst.max(err);
    }
    Outcome {
        pass: residue_worst <= 1e-10 && closure_worst <= 1e-8,
        detail: format!(
            "{probes} residue probes max rel error {residue_worst:.2e}, 30 closure probes max scaled error {closure_worst:.2e}"
        ),
    }
}

fn criterion5() -> Outcome {
    let report = match run(&sweep_config(Mode::Alpha, 30)) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: e.to_string(),
            }
        }
    };
    let mut ts = Vec::new();
    let mut indices = Vec::new();
    for case in &report.cases {
        if let Ok(p) = case.params.to_qparams() {
            ts.push(p.t());
            indices.push(c_minus1_index(&p, 0));
        }
    }
    let spans = ALPHA_T_VALUES.iter().all(|t| ts.contains(t)) && ALPHA_P_INDICES.iter().all(|i| indices.contains(i));
    Outcome {
        pass: report.all_passed() && report.summary.n_flagged == 0 && spans,
        detail: format!(
            "terminating identity {}, t and p-index sets covered: {spans}",
            sweep_line(&report)
        ),
    }
}

fn summation_split(report: &ResidualReport) -> (usize, usize) {
    let mut positive = 0;
    let mut nonpositive = 0;
    for case in &report.cases {
        if case.params.t >= 1 {
            positive += 1;
        } else {
            nonpositive += 1;
        }
    }
    (positive, nonpositive)
}

fn criterion6() -> Outcome {
    let report = match run(&sweep_config(Mode::Prop1, 20)) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: e.to_string(),
            }
        }
    };
    let w_ok = report
        .cases
        .iter()
        .all(|case| case.params.to_qparams().is_ok_and(|p| p.w().norm() < 1.0));
    let (positive, nonpositive) = summation_split(&report);
    Outcome {
        pass: sweep_ok(&report) && w_ok,
        detail: format!(
            "balanced summation {} ({positive} with t >= 1, {nonpositive} with t <= 0), all |W| < 1: {w_ok}",
            sweep_line(&report)
        ),
    }
}

fn criterion7() -> Outcome {
    let (identity, summation) = match (
        run(&sweep_config(Mode::Confluent, 60)),
        run(&sweep_config(Mode::Prop3, 60)),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            return Outcome {
                pass: false,
                detail: format!("{:?} {:?}", a.err(), b.err()),
            }
        }
    };
    let (positive, nonpositive) = summation_split(&summation);
    Outcome {
        pass: sweep_ok(&identity) && sweep_ok(&summation),
        detail: format!(
            "confluent identity {}; confluent summation {} ({positive} with t >= 1, {nonpositive} with t <= 0)",
            sweep_line(&identity),
            sweep_line(&summation)
        ),
    }
}

/// Sign of `(-1)^n`.
fn sign(n: i64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn qcore_probe(kind: usize, rng: &mut impl Rng) -> f64 {
    let q = [0.2, 0.5, 0.7][rng.gen_range(0..3)];
    let base = QBase::real(q).unwrap();
    let exps = draw_exponents(rng, 3, true, true);
    let a = exps[0];
    match kind {
        // (q^a;q)_n in three ways, including the reversed-base product.
        0 => {
            let n = rng.gen_range(0..=8);
            let lhs = q_pochhammer(base.pow(a), &base, n).value;
            let pre = base.pow(a * n as f64 + c((n * (n - 1) / 2) as f64)) * sign(n);
            let via_negative = pre / q_pochhammer(base.pow(c(1.0) - a), &base, -n).value;
            let via_shift = pre * q_pochhammer(base.pow(c(1.0) - a - n as f64), &base, n).value;
            let inv = base.pow(-a);
            let reversed: Complex64 = (0..n).map(|k| c(1.0) - inv * base.powi(-k)).product();
            let via_reversed = reversed * pre;
            rel(lhs, via_negative)
                .max(rel(lhs, via_shift))
                .max(rel(lhs, via_reversed))
        }
        // q-gamma shift for k of either sign.
        1 => {
            let k = rng.gen_range(-5..=5);
            let z = QExponent(a);
            let ratio = q_gamma(z + k as f64, &base).unwrap() / q_gamma(z, &base).unwrap();
            let expected = q_pochhammer(base.pow(a), &base, k).value / (1.0 - q).powi(k as i32);
            rel(ratio, expected)
        }
        // Reflection of the index and the shifted-parameter identity.
        2 => {
            let kk = rng.gen_range(0..=8);
            let j = rng.gen_range(0..=kk);
            let qq = base.q();
            let lhs = q_pochhammer(qq, &base, kk - j).value;
            let rhs = base.powi(j * (j - 1) / 2 - kk * j) * sign(j) * q_pochhammer(qq, &base, kk).value
                / q_pochhammer(base.powi(-kk), &base, j).value;
            let m = rng.gen_range(0..=6);
            let j2 = rng.gen_range(0..=6);
            let lhs2 = q_pochhammer(base.pow(a - j2 as f64), &base, m).value;
            let rhs2 = q_pochhammer(base.pow(a), &base, m).value * q_pochhammer(base.pow(c(1.0) - a), &base, j2).value
                / (base.powi(m * j2) * q_pochhammer(base.pow(c(1.0) - a - m as f64), &base, j2).value);
            rel(lhs, rhs).max(rel(lhs2, rhs2))
        }
        // Gauss expansion at a random complex point.
        3 => {
            let n = rng.gen_range(0..=10);
            let x = Complex64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
            let coeffs = gauss_coefficients(n, &base);
            let sum: Complex64 = coeffs.iter().enumerate().map(|(j, cj)| cj * x.powi(j as i32)).sum();
            rel(q_pochhammer(x, &base, n as i64).value, sum)
        }
        // Bailey-Slater series against the standard one padded with zeros.
        _ => {
            let s = rng.gen_range(1..=3);
            let upper_count = rng.gen_range(1..=s + 1);
            let upper: Vec<Complex64> = draw_exponents(rng, upper_count, false, true)
                .into_iter()
                .map(|e| base.pow(e))
                .collect();
            let lower: Vec<Complex64> = draw_exponents(rng, s, false, true)
                .into_iter()
                .map(|e| base.pow(e))
                .collect();
            let z = Complex64::from_polar(rng.gen_range(0.05..0.8), rng.gen_range(0.0..std::f64::consts::TAU));
            let mut padded = upper.clone();
            padded.resize(s + 1, c(0.0));
            // Direct partial sum with no sign or q-power weight; |z| <= 0.8 so 400 terms suffice.
            let mut direct = c(0.0);
            for n in 0..400i64 {
                let mut term = z.powi(n as i32) / q_pochhammer(base.q(), &base, n).value;
                for &u in &upper {
                    term *= q_pochhammer(u, &base, n).value;
                }
                for &w in &lower {
                    term /= q_pochhammer(w, &base, n).value;
                }
                direct += term;
            }
            match (
                phi_hat_eval(&upper, &lower, &base, z, 1e-16),
                phi_eval(&padded, &lower, &base, z, 1e-16),
            ) {
                (Ok(x), Ok(y)) => rel(x.value, y.value).max(rel(x.value, direct)),
                _ => f64::INFINITY,
            }
        }
    }
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    let names = [
        "(q^a;q)_n",
        "q-gamma shift",
        "index reflection",
        "Gauss expansion",
        "zero padding",
    ];
    let mut worst = [0.0f64; 5];
    for id in 0..200u64 {
        let mut rng = case_rng(SEED + 8, id);
        let kind = id as usize % 5;
        worst[kind] = worst[kind].max(qcore_probe(kind, &mut rng));
    }
    let secs = start.elapsed().as_secs_f64();
    let parts: Vec<String> = names.iter().zip(worst).map(|(n, w)| format!("{n} {w:.1e}")).collect();
    Outcome {
        pass: worst.iter().all(|&w| w <= 1e-11) && secs < 5.0,
        detail: format!("200 probes, max rel error: {}; {secs:.2} s", parts.join(", ")),
    }
}

fn criterion9() -> Outcome {
    let mut worst_near: f64 = 0.0;
    let mut all_decrease = true;
    let mut failures = Vec::new();
    for id in 0..10u64 {
        let mut rng = case_rng(SEED + 9, id);
        let q = [0.2, 0.5][id as usize % 2];
        let base = QBase::real(q).unwrap();
        let r = 2 + (id as usize % 2);
        let upper: Vec<Complex64> = draw_exponents(&mut rng, r, false, true)
            .into_iter()
            .map(|e| base.pow(e))
            .collect();
        let lower: Vec<Complex64> = draw_exponents(&mut rng, r - 1, false, true)
            .into_iter()
            .map(|e| base.pow(e))
            .collect();
        let spec = PhiSpec::standard(upper, lower, base);
        let limit = match limit_at_one(&spec) {
            Ok(l) => l,
            Err(e) => {
                failures.push(format!("spec {id}: {e}"));
                continue;
            }
        };
        let gap = |eps: f64| {
            spec.evaluate(c(1.0 - eps), 1e-15)
                .map(|v| (v.value * eps - limit).norm() / limit.norm())
                .unwrap_or(f64::INFINITY)
        };
        let (near, nearer) = (gap(1e-4), gap(1e-5));
        worst_near = worst_near.max(near);
        if !(nearer < near) {
            all_decrease = false;
            failures.push(format!("spec {id}: {near:.2e} then {nearer:.2e}"));
        }
    }
    Outcome {
        pass: worst_near <= 1e-2 && all_decrease && failures.is_empty(),
        detail: format!(
            "10 specs, worst gap at 1-1e-4 {worst_near:.2e}, smaller at 1-1e-5 for all: {all_decrease}{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!(" ({})", failures.join("; "))
            }
        ),
    }
}

fn criterion10() -> Outcome {
    let residuals = |r: &ResidualReport| -> Vec<(u64, Vec<u64>, Status)> {
        r.cases
            .iter()
            .map(|c| (c.case_id, c.residuals.iter().map(|x| x.to_bits()).collect(), c.status))
            .collect()
    };
    let mut identical = true;
    let mut checked = Vec::new();
    for mode in [Mode::Theorem1, Mode::Confluent, Mode::Prop1, Mode::Alpha, Mode::Beta] {
        let config = sweep_config(mode, 20);
        let first = run(&config);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map(|pool| pool.install(|| run(&config)));
        let same = match (first, single) {
            (Ok(a), Ok(Ok(b))) => residuals(&a) == residuals(&b),
            _ => false,
        };
        identical &= same;
        checked.push(format!("{mode:?} {same}"));
    }
    Outcome {
        pass: identical,
        detail: format!(
            "bitwise-identical residuals on rerun with one worker: {}",
            checked.join(", ")
        ),
    }
}

fn main() -> ExitCode {
    let mut results = Vec::new();
    results.push(criterion1());
    let (two, theorem1) = criterion2();
    results.push(two);
    results.push(criterion3(theorem1.as_ref()));
    results.push(criterion4());
    results.push(criterion5());
    results.push(criterion6());
    results.push(criterion7());
    results.push(criterion8());
    results.push(criterion9());
    results.push(criterion10());
    let mut failed = 0;
    for (idx, outcome) in results.iter().enumerate() {
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}: {}", idx + 1, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
