//! The confluent identity (fewer lower than upper parameters) and its balanced limit.

use num_complex::Complex64;
use qduality::confluent::{
    confluence_gap, confluent_beta_table, confluent_lhs_eval, confluent_rhs_eval, prop3_check, ConfluentParams,
};
use qduality::duality::DualityFamily;
use qduality::qcore::QBase;

fn main() -> qduality::Result<()> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let p = ConfluentParams::new(
        QBase::real(0.5)?,
        vec![c(0.21), c(0.74), c(1.38)],
        vec![c(0.45)],
        vec![1],
        vec![0, 1, 2],
        1,
    )?;
    let table = confluent_beta_table(&p)?;
    println!("beta support {:?}", p.k_range());
    for (k, b) in table.iter() {
        println!("  beta_{k} = {b:.13}");
    }

    let z = Complex64::from_polar(0.5 * p.admissible_radius(), 1.1);
    println!("lhs {:.14}", confluent_lhs_eval(&p, z, 1e-15)?);
    println!("rhs {:.14}", confluent_rhs_eval(&p, z)?);

    let sums = prop3_check(&p, 1e-8);
    println!("summation at z = q^t: residual {:.2e}", sums.max_residual());

    // Two upper and one lower parameter: lift to a balanced set with b_2 = -depth.
    let two_one = ConfluentParams::new(
        QBase::real(0.5)?,
        vec![c(0.3), c(0.8)],
        vec![c(0.55)],
        vec![0],
        vec![1, 0],
        1,
    )?;
    let z = Complex64::new(0.2, 0.1);
    for depth in [10.0, 20.0, 30.0] {
        println!("depth {depth}: gap {:.2e}", confluence_gap(&two_one, depth, z, 1e-15)?);
    }
    Ok(())
}
