use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::config::{Mode, RunConfig};
use super::CliError;
use crate::confluent::ConfluentParams;
use crate::duality::golden::standard_examples;
use crate::duality::{
    beta_table_for, identity_case, rhs_eval, summation_case, BetaTable, DualityFamily, ParameterFamily, ParamsEcho,
    QParams,
};
use crate::oracle::{alpha_identity_case, c_minus1_index, recover_beta_detailed};
use crate::random::{admissible_z, case_rng, draw_confluent, draw_qparams};
use crate::report::{CaseRecord, ResidualReport, SampleRecord, Status};
use crate::Error;

/// Environment variable overriding the size of the worker pool.
pub const WORKERS_ENV: &str = "QDUALITY_WORKERS";

/// Largest `|W|` accepted when drawing cases for the balanced summation check.
pub const PROP1_MAX_W: f64 = 0.8;

/// `t` values cycled through by `alpha` sweeps.
pub const ALPHA_T_VALUES: [i64; 4] = [-1, 0, 1, 2];

/// Targets for the index of `q_s` entering `C_-1`, cycled by `alpha` sweeps.
pub const ALPHA_P_INDICES: [i64; 4] = [-1, 0, 1, 2];

/// Radii (as fractions of the admissible radius) and angles of the golden sample points.
pub const EXAMPLE_POINTS: [(f64, f64); 5] = [(0.5, 0.7), (0.6, 2.0), (0.7, 3.3), (0.8, 4.6), (0.9, 5.9)];

const MAX_REJECTIONS: usize = 10_000;

/// A fixed parameter set read from a config.
#[derive(Debug, Clone)]
pub enum ConfigFamily {
    Balanced(QParams),
    Confluent(ConfluentParams),
}

impl ConfigFamily {
    /// Balanced when `b` and `a` have the same length, confluent when `b` is shorter.
    pub fn from_echo(echo: &ParamsEcho) -> Result<Self, CliError> {
        let base = echo.base()?;
        let (a, b) = (echo.a_values(), echo.b_values());
        if b.len() == a.len() {
            Ok(ConfigFamily::Balanced(echo.to_qparams()?))
        } else {
            let p = ConfluentParams::new(base, a, b, echo.m.clone(), echo.n.clone(), echo.t)?;
            Ok(ConfigFamily::Confluent(p))
        }
    }
}

fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| CliError::Config {
        path: WORKERS_ENV.to_string(),
        message: e.to_string(),
    })
}

/// Execute a run. Cases are evaluated in parallel and reported in case order.
pub fn run(config: &RunConfig) -> Result<ResidualReport, CliError> {
    config.validate()?;
    let start = Instant::now();
    let cases = match (&config.params, config.mode) {
        (_, Mode::Examples) => example_cases(config.tol),
        (Some(echo), _) => vec![fixed_case(config, echo)?],
        (None, _) => {
            let pool = pool()?;
            pool.install(|| {
                (0..config.samples as u64)
                    .into_par_iter()
                    .map(|id| run_case(config, id))
                    .collect()
            })
        }
    };
    let mut report = ResidualReport::new(cases);
    report.summary.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

/// One randomly drawn case of a sweep; depends only on the seed, mode, bounds and `case_id`.
pub fn run_case(config: &RunConfig, case_id: u64) -> CaseRecord {
    let mut rng = case_rng(config.seed, case_id);
    let bounds = config.sweep.bounds();
    let (r, s) = config.case_shape(case_id);
    let tol = config.tol;
    let zs = config.z_samples_per_case;
    match config.mode {
        Mode::Theorem1 => {
            let p = draw_qparams(&mut rng, r, &bounds);
            let points = admissible_z(&mut rng, p.admissible_radius(), &p.rhs_poles(), zs);
            identity_case(&p, case_id, &points, tol)
        }
        Mode::Confluent => {
            let p = draw_confluent(&mut rng, r, s, &bounds);
            let points = admissible_z(&mut rng, p.admissible_radius(), &p.rhs_poles(), zs);
            identity_case(&p, case_id, &points, tol)
        }
        Mode::Prop1 => {
            let mut p = draw_qparams(&mut rng, r, &bounds);
            let mut tries = 1;
            while p.w().norm() > PROP1_MAX_W && tries < MAX_REJECTIONS {
                p = draw_qparams(&mut rng, r, &bounds);
                tries += 1;
            }
            if p.w().norm() >= 1.0 {
                let err = Error::InvalidParams(format!("no draw with |W| <= {PROP1_MAX_W} in {tries} tries"));
                return CaseRecord::errored(case_id, "prop1", ParamsEcho::from_view(p.view()), tol, &err);
            }
            summation_case(&p, case_id, "prop1", tol)
        }
        Mode::Prop3 => {
            let p = draw_confluent(&mut rng, r, s, &bounds);
            summation_case(&p, case_id, "prop3", tol)
        }
        Mode::Alpha => {
            let idx = case_id as usize;
            let t = ALPHA_T_VALUES[idx % 4];
            let target = ALPHA_P_INDICES[(idx / 4) % 4];
            let mut p = draw_qparams(&mut rng, r, &bounds).with_t(t);
            let mut tries = 1;
            while c_minus1_index(&p, 0) != target && tries < MAX_REJECTIONS {
                p = draw_qparams(&mut rng, r, &bounds).with_t(t);
                tries += 1;
            }
            let k = -p.m_min() + rng.gen_range(0..=2);
            let case = alpha_identity_case(&p, case_id, k, tol);
            if c_minus1_index(&p, 0) != target {
                case.with_note(format!("index target {target} not reached"))
            } else {
                case
            }
        }
        Mode::Beta => {
            let p = draw_qparams(&mut rng, r, &bounds);
            beta_case(&p, case_id, tol)
        }
        Mode::Examples => example_cases(tol).swap_remove(case_id as usize % 5),
    }
}

fn fixed_case(config: &RunConfig, echo: &ParamsEcho) -> Result<CaseRecord, CliError> {
    let family = ConfigFamily::from_echo(echo)?;
    let mut rng = case_rng(config.seed, 0);
    let tol = config.tol;
    let zs = config.z_samples_per_case;
    let case = match (config.mode, &family) {
        (Mode::Theorem1 | Mode::Confluent, ConfigFamily::Balanced(p)) => identity_case(
            p,
            0,
            &admissible_z(&mut rng, p.admissible_radius(), &p.rhs_poles(), zs),
            tol,
        ),
        (Mode::Theorem1 | Mode::Confluent, ConfigFamily::Confluent(p)) => identity_case(
            p,
            0,
            &admissible_z(&mut rng, p.admissible_radius(), &p.rhs_poles(), zs),
            tol,
        ),
        (Mode::Prop1 | Mode::Prop3, ConfigFamily::Balanced(p)) => {
            if p.w().norm() >= 1.0 {
                return Err(Error::InvalidParams(format!("|W| = {} must be below 1", p.w().norm())).into());
            }
            summation_case(p, 0, "prop1", tol)
        }
        (Mode::Prop1 | Mode::Prop3, ConfigFamily::Confluent(p)) => summation_case(p, 0, "prop3", tol),
        (Mode::Alpha, ConfigFamily::Balanced(p)) => alpha_identity_case(p, 0, config.k.unwrap_or(-p.m_min()), tol),
        (Mode::Alpha, ConfigFamily::Confluent(p)) => {
            let k = config.k.unwrap_or(-p.view().m_min().unwrap_or(0));
            alpha_identity_case(p, 0, k, tol)
        }
        (Mode::Beta, ConfigFamily::Balanced(p)) => beta_case(p, 0, tol),
        (Mode::Beta, ConfigFamily::Confluent(p)) => beta_case(p, 0, tol),
        (Mode::Examples, _) => unreachable!("examples ignore fixed parameters"),
    };
    Ok(case)
}

/// The beta table compared against recovery from samples on a circle.
fn beta_case<P: DualityFamily>(family: &P, case_id: u64, tol: f64) -> CaseRecord {
    let echo = ParamsEcho::from_view(family.view());
    let outcome = beta_table_for(family).and_then(|table| {
        let rec = recover_beta_detailed(family, tol)?;
        let diff = table.max_weighted_difference(&rec.table, rec.radius);
        let zero = Complex64::new(0.0, 0.0);
        let radius = Complex64::new(rec.radius, 0.0);
        Ok(SampleRecord::scaled(radius, zero, zero, diff, rec.condition))
    });
    match outcome {
        Ok(sample) => CaseRecord::from_samples(case_id, "beta", echo, vec![sample], tol),
        Err(e) => CaseRecord::errored(case_id, "beta", echo, tol, &e),
    }
}

fn example_cases(tol: f64) -> Vec<CaseRecord> {
    standard_examples()
        .into_iter()
        .map(|ex| {
            let id = ex.id as u64;
            let echo = ParamsEcho::from_view(ex.params.view());
            let rho = ex.params.admissible_radius();
            let mut samples = Vec::new();
            for (frac, angle) in EXAMPLE_POINTS {
                let z = Complex64::from_polar(rho * frac, angle);
                match rhs_eval(&ex.params, z) {
                    Ok(rhs) => {
                        let expected = ex.closed_form(z);
                        let residual = (rhs - expected).norm() / expected.norm();
                        samples.push(SampleRecord::scaled(z, rhs, expected, residual, 1.0));
                    }
                    Err(e) => return CaseRecord::errored(id, "examples", echo, tol, &e),
                }
            }
            let mut case = CaseRecord::from_samples(id, "examples", echo, samples, tol);
            match beta_table_for(&ex.params) {
                Ok(table) => {
                    let mismatch = ex
                        .beta
                        .iter()
                        .map(|&(k, b)| (table.get(k) - b).norm() / b.norm())
                        .fold(0.0, f64::max);
                    let printed: Vec<i64> = ex.beta.iter().map(|&(k, _)| k).collect();
                    let biggest = ex.beta.iter().map(|(_, b)| b.norm()).fold(0.0, f64::max);
                    let stray = table
                        .iter()
                        .filter(|(k, _)| !printed.contains(k))
                        .map(|(_, b)| b.norm() / biggest)
                        .fold(0.0, f64::max);
                    if !(mismatch.max(stray) <= tol) {
                        case.status = Status::Fail;
                        case.note = Some(format!("beta mismatch {mismatch:.3e}, stray entries {stray:.3e}"));
                    }
                }
                Err(e) => {
                    case.status = Status::Fail;
                    case.note = Some(e.to_string());
                }
            }
            case
        })
        .collect()
}

/// The beta table for the fixed parameters of a config.
pub fn beta_for_config(config: &RunConfig) -> Result<BetaTable, CliError> {
    let echo = config.params.as_ref().ok_or_else(|| CliError::Config {
        path: "params".into(),
        message: "fixed parameters are required".into(),
    })?;
    let table = match ConfigFamily::from_echo(echo)? {
        ConfigFamily::Balanced(p) => beta_table_for(&p)?,
        ConfigFamily::Confluent(p) => beta_table_for(&p)?,
    };
    Ok(table)
}

/// The terminating identity at index `k` for the fixed parameters of a config.
pub fn alpha_report(config: &RunConfig, k: i64) -> Result<ResidualReport, CliError> {
    let mut config = config.clone();
    config.mode = Mode::Alpha;
    config.k = Some(k);
    let echo = config.params.as_ref().ok_or_else(|| CliError::Config {
        path: "params".into(),
        message: "fixed parameters are required".into(),
    })?;
    if let Some(m_min) = echo.m.iter().min() {
        if k < -m_min {
            return Err(
                Error::InvalidParams(format!("the terminating identity needs k >= -m_min = {}", -m_min)).into(),
            );
        }
    }
    run(&config)
}

/// Write `report` as JSON to `path` and one case per line to the `.jsonl` sibling.
/// Returns the sibling's path.
pub fn write_report(report: &ResidualReport, path: &Path) -> Result<PathBuf, CliError> {
    let io = |p: &Path| {
        let p = p.to_path_buf();
        move |e| CliError::Io { path: p, source: e }
    };
    let text = serde_json::to_string_pretty(report)?;
    std::fs::write(path, text + "\n").map_err(io(path))?;
    let lines_path = path.with_extension("jsonl");
    let mut out = std::io::BufWriter::new(std::fs::File::create(&lines_path).map_err(io(&lines_path))?);
    for case in &report.cases {
        writeln!(out, "{}", serde_json::to_string(case)?).map_err(io(&lines_path))?;
    }
    writeln!(out, "{}", serde_json::json!({ "summary": report.summary })).map_err(io(&lines_path))?;
    out.flush().map_err(io(&lines_path))?;
    Ok(lines_path)
}
