//! (1 - z) rφ(r-1)(z) approaching its limit as z -> 1.

use num_complex::Complex64;
use qduality::qcore::QBase;
use qduality::qseries::{limit_at_one, PhiSpec};

fn main() -> qduality::Result<()> {
    let base = QBase::real(0.5)?;
    let qp = |x: f64| base.pow_real(x);
    let spec = PhiSpec::standard(vec![qp(0.3), qp(1.2), qp(0.6)], vec![qp(0.9), qp(1.4)], base);
    let limit = limit_at_one(&spec)?;
    println!("limit {limit:.12}");
    for eps in [1e-2, 1e-3, 1e-4, 1e-5] {
        let v = spec.evaluate(Complex64::new(1.0 - eps, 0.0), 1e-15)?;
        let scaled = v.value * eps;
        println!(
            "z = 1 - {eps:.0e}: (1-z) phi = {scaled:.12}, relative gap {:.2e}, {} terms",
            (scaled - limit).norm() / limit.norm(),
            v.truncation.order
        );
    }
    Ok(())
}
