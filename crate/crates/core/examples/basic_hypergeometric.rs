//! Evaluating rφs and the Bailey-Slater variant with certified truncation.

use num_complex::Complex64;
use qduality::qcore::{QBase, QExponent};
use qduality::qseries::{heine_transform, phi_eval, phi_hat_eval, PhiSpec};

fn main() -> qduality::Result<()> {
    let base = QBase::real(0.4)?;
    let qp = |x: f64| base.pow_real(x);
    let z = Complex64::new(0.3, 0.2);

    let v = phi_eval(&[qp(0.2), qp(1.1)], &[qp(0.7)], &base, z, 1e-15)?;
    println!(
        "2phi1 = {:.15}  ({} terms, tail <= {:.1e})",
        v.value, v.truncation.order, v.truncation.tail_bound
    );

    let heine = heine_transform(
        QExponent::from(0.2),
        QExponent::from(1.1),
        QExponent::from(0.7),
        z,
        &base,
    )?;
    println!("Heine   = {heine:.15}");

    // Fewer lower than upper parameters: the hat series drops the sign and q-power weight.
    let hat = phi_hat_eval(&[qp(0.2), qp(1.1)], &[qp(0.7), qp(1.6), qp(0.9)], &base, z, 1e-15)?;
    let std = phi_eval(&[qp(0.2), qp(1.1)], &[qp(0.7), qp(1.6), qp(0.9)], &base, z, 1e-15)?;
    println!("2phi^3 = {:.12}, 2phi3 = {:.12}", hat.value, std.value);

    // A terminating series stops exactly at n = 4.
    let spec = PhiSpec::standard(vec![base.powi(-4), qp(0.5)], vec![qp(1.3)], base);
    println!("terminates at n = {:?}", spec.termination_index());
    println!("value {:.15}", spec.evaluate(Complex64::new(2.0, 0.0), 1e-15)?.value);

    if let Err(e) = phi_hat_eval(&[qp(0.2), qp(0.5)], &[qp(0.3)], &base, Complex64::new(1.2, 0.0), 1e-15) {
        println!("|z| > 1 for the hat series: {e}");
    }
    Ok(())
}
