//! The rational function f_k: residues at its poles against gamma, and the
//! closure of residues through the expansions at zero and infinity.

use num_complex::Complex64;
use qduality::duality::beta_table;
use qduality::duality::{alpha_coeff, gamma_coeff, QParams};
use qduality::oracle::{c_minus1, recover_beta_by_sampling, residue_at_zero, RationalFk};
use qduality::qcore::QBase;

fn main() -> qduality::Result<()> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let p = QParams::new(
        QBase::real(0.2)?,
        vec![c(0.33), c(1.21)],
        vec![c(0.58), c(0.87)],
        vec![1, 1],
        vec![2, 0],
        2,
    )?;
    let k = -p.m_min();
    let fk = RationalFk::new(&p, k);
    println!("f_{k}: degree {}, {} poles", fk.degree(), fk.poles().len());
    for i in 0..2 {
        for j in 0..=k + p.n()[i] {
            let res = fk.residue_at_pole(i, j)?;
            let gamma = gamma_coeff(&p, i, j, k)?;
            println!("  pole (i={i}, j={j}): residue {res:.13}  gamma {gamma:.13}");
        }
    }

    let alpha = alpha_coeff(&p, k)?;
    let closure = c_minus1(&p, k) - residue_at_zero(&p, k);
    println!("alpha_{k} = {alpha:.14}, from expansions {closure:.14}");

    let direct = beta_table(&p)?;
    let sampled = recover_beta_by_sampling(&p, 1e-10)?;
    for (k, b) in direct.iter() {
        println!("beta_{k}: {b:.12} sampled {:.12}", sampled.get(k));
    }
    Ok(())
}
