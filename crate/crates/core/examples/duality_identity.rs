//! Both sides of the balanced duality identity for one parameter set.

use num_complex::Complex64;
use qduality::duality::{lhs_eval, rhs_eval, theorem1_residual, DualityFamily, QParams};
use qduality::qcore::QBase;

fn main() -> qduality::Result<()> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let params = QParams::new(
        QBase::real(0.5)?,
        vec![c(0.15), c(0.62), Complex64::new(1.3, 0.1)],
        vec![c(0.4), c(0.95), c(1.7)],
        vec![1, 0, 2],
        vec![0, 2, 1],
        1,
    )?;
    let radius = params.admissible_radius();
    println!("|W| = {:.4}, admissible radius {radius:.4}", params.w().norm());

    let points: Vec<Complex64> = (0..4)
        .map(|i| Complex64::from_polar(0.6 * radius, 0.4 + 1.5 * i as f64))
        .collect();
    for &z in &points {
        let lhs = lhs_eval(&params, z, 1e-15)?;
        let rhs = rhs_eval(&params, z)?;
        println!("z = {z:.4}: lhs {lhs:.14}  rhs {rhs:.14}");
    }

    let report = theorem1_residual(&params, &points, 1e-8);
    println!(
        "max residual {:.2e}, status {:?}",
        report.max_residual(),
        report.cases[0].status
    );
    Ok(())
}
