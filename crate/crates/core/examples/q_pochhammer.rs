//! q-shifted factorials for both signs of n, infinite products and the q-gamma function.

use num_complex::Complex64;
use qduality::qcore::{gauss_coefficients, q_binomial, q_gamma, q_pochhammer, q_pochhammer_infinite, QBase, QExponent};

fn main() -> qduality::Result<()> {
    let base = QBase::real(0.5)?;
    let a = base.pow_real(0.3);

    for n in [-3, -1, 0, 1, 4] {
        println!("(q^0.3; q)_{n:<2} = {:.12}", q_pochhammer(a, &base, n).value);
    }

    // (q^2;q)_-3 = 1/(q^-1;q)_3, and (q^-1;q)_3 contains the factor 1 - q^0.
    let pole = q_pochhammer(base.powi(2), &base, -3);
    println!("(q^2; q)_-3 infinite: {}", pole.is_infinite);

    println!("(q; q)_inf = {:.15}", q_pochhammer_infinite(base.q(), &base));
    println!("[5 2]_q = {:.6}", q_binomial(5, 2, &base));
    println!("Gauss coefficients of (x;q)_3: {:?}", gauss_coefficients(3, &base));

    let z = QExponent::new(0.7, 0.1);
    let g = q_gamma(z, &base)?;
    let g1 = q_gamma(z + 1.0, &base)?;
    let ratio = g1 / g;
    let expected = (Complex64::new(1.0, 0.0) - base.pow(z.0)) / (1.0 - 0.5);
    println!("Gamma_q(z+1)/Gamma_q(z) = {ratio:.14}, [z]_q = {expected:.14}");
    Ok(())
}
