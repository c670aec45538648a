//! A seeded random sweep over every checked relation, the same way the CLI runs one.
//!
//! `cargo run --example verification_sweep -- 200` runs 200 cases per mode.

use qduality::cli::{run, Mode, RunConfig};

fn main() -> Result<(), qduality::cli::CliError> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    for mode in [
        Mode::Theorem1,
        Mode::Beta,
        Mode::Alpha,
        Mode::Prop1,
        Mode::Confluent,
        Mode::Prop3,
    ] {
        let mut config = RunConfig::new(mode);
        config.samples = samples;
        config.seed = 7;
        config.sweep.q = vec![0.2, 0.5];
        config.sweep.complex_parts = true;
        let report = run(&config)?;
        let s = &report.summary;
        println!(
            "{mode:?}: {} pass, {} fail, {} ill-conditioned, max residual {:.2e} ({:.2} s)",
            s.n_pass,
            s.n_fail,
            s.n_flagged,
            report.max_residual(),
            s.wall_time
        );
    }
    Ok(())
}
