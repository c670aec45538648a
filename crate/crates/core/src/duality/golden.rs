//! Five worked instances of the balanced identity with `r = 3` and their
//! right-hand sides in closed form.

use num_complex::Complex64;

use super::params::QParams;
use crate::error::Result;
use crate::qcore::QBase;

/// One worked instance: parameters, expected `beta`, and the closed-form right side.
#[derive(Debug, Clone)]
pub struct GoldenExample {
    pub id: usize,
    pub params: QParams,
    /// Nonzero coefficients `(k, beta_k)` as printed.
    pub beta: Vec<(i64, Complex64)>,
}

impl GoldenExample {
    /// Right-hand side exactly as printed, without going through `beta`.
    pub fn closed_form(&self, z: Complex64) -> Complex64 {
        let base = self.params.base();
        let qp = |x: Complex64| base.pow(x);
        let a = self.params.a();
        let b = self.params.b();
        let one = Complex64::new(1.0, 0.0);
        match self.id {
            1 => qp(a[2]) / ((one - qp(a[2] - b[0])) * z * z),
            2 => {
                let numer =
                    (one - qp(a[2] - a[0] - 1.0)) * (one - qp(a[2] - a[0] - 2.0)) * qp(a[2] + b[0] + b[1] + b[2]);
                let denom = (qp(b[0]) - qp(a[2])) * (qp(b[1]) - qp(a[2])) * (qp(b[2]) - qp(a[2])) * z.powi(3);
                numer / denom
            }
            3 => qp(a[2]) / ((one - qp(a[2] - b[0])) * z),
            4 => one / ((one - qp(a[2] - b[0])) * z * (one - z)) + one / ((one - qp(b[0] - a[2])) * (one - z)),
            5 => {
                let w = self.params.w();
                qp(2.0 * a[2]) / ((one - qp(a[2] - b[0])) * z * (one - w * z))
                    + qp(1.0 + a[0] + a[1] + 2.0 * a[2] + b[0] - b[1] - b[2]) / ((qp(a[2]) - qp(b[0])) * (one - w * z))
            }
            _ => unreachable!("examples are numbered 1 to 5"),
        }
    }
}

/// The five instances for given `q`, `a` and `b` triples.
pub fn golden_examples(base: QBase, a: [Complex64; 3], b: [Complex64; 3]) -> Result<Vec<GoldenExample>> {
    let qp = |x: Complex64| base.pow(x);
    let one = Complex64::new(1.0, 0.0);
    let make = |m: [i64; 3], n: [i64; 3], t: i64| QParams::new(base, a.to_vec(), b.to_vec(), m.to_vec(), n.to_vec(), t);

    let e1 = GoldenExample {
        id: 1,
        params: make([1, 2, 2], [1, 1, 2], 0)?,
        beta: vec![(-2, qp(a[2]) / (one - qp(a[2] - b[0])))],
    };
    let e2_beta = (one - qp(a[2] - a[0] - 1.0)) * (one - qp(a[2] - a[0] - 2.0)) * qp(a[2] + b[0] + b[1] + b[2])
        / ((qp(b[0]) - qp(a[2])) * (qp(b[1]) - qp(a[2])) * (qp(b[2]) - qp(a[2])));
    let e2 = GoldenExample {
        id: 2,
        params: make([2, 2, 2], [0, 2, 3], 0)?,
        beta: vec![(-3, e2_beta)],
    };
    let e3 = GoldenExample {
        id: 3,
        params: make([0, 1, 1], [0, 0, 1], 0)?,
        beta: vec![(-1, qp(a[2]) / (one - qp(a[2] - b[0])))],
    };
    let e4 = GoldenExample {
        id: 4,
        params: make([0, 1, 1], [0, 0, 1], 1)?,
        beta: vec![(-1, one / (one - qp(a[2] - b[0]))), (0, one / (one - qp(b[0] - a[2])))],
    };
    let e5 = GoldenExample {
        id: 5,
        params: make([0, 1, 1], [0, 0, 1], -1)?,
        beta: vec![
            (-1, qp(2.0 * a[2]) / (one - qp(a[2] - b[0]))),
            (
                0,
                qp(1.0 + a[0] + a[1] + 2.0 * a[2] + b[0] - b[1] - b[2]) / (qp(a[2]) - qp(b[0])),
            ),
        ],
    };
    Ok(vec![e1, e2, e3, e4, e5])
}

/// `q = 0.3`, `a = (0.17, 0.59, 1.13)`, `b = (0.23, 0.71, 1.37)`.
pub fn standard_examples() -> Vec<GoldenExample> {
    let c = |x: f64| Complex64::new(x, 0.0);
    golden_examples(
        QBase::real(0.3).expect("valid base"),
        [c(0.17), c(0.59), c(1.13)],
        [c(0.23), c(0.71), c(1.37)],
    )
    .expect("valid parameters")
}
