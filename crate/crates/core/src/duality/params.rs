use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::QBase;

/// Default threshold for the non-integrality hypothesis on `a_i - a_j`.
pub const EPS_INT: f64 = 1e-6;

/// Borrowed view of an exponent bundle `(q, a, b, m, n, t)`.
///
/// `a` and `n` have length `r`; `b` and `m` have length `s` (`s = r` for the
/// balanced identity, `s < r` for the confluent one).
#[derive(Debug, Clone, Copy)]
pub struct ParamView<'a> {
    pub base: QBase,
    pub a: &'a [Complex64],
    pub b: &'a [Complex64],
    pub m: &'a [i64],
    pub n: &'a [i64],
    pub t: i64,
}

impl ParamView<'_> {
    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn s(&self) -> usize {
        self.b.len()
    }

    pub fn big_m(&self) -> i64 {
        self.m.iter().sum()
    }

    pub fn big_n(&self) -> i64 {
        self.n.iter().sum()
    }

    /// `min m_i`, or `None` when `s = 0`.
    pub fn m_min(&self) -> Option<i64> {
        self.m.iter().copied().min()
    }

    pub fn n_max(&self) -> i64 {
        self.n.iter().copied().max().expect("r >= 1")
    }

    pub fn t_plus(&self) -> i64 {
        self.t.max(0)
    }

    /// Exponent of `W = q^(t + r - 1 + Σa - Σb)`.
    pub fn w_exponent(&self) -> Complex64 {
        let sa: Complex64 = self.a.iter().sum();
        let sb: Complex64 = self.b.iter().sum();
        Complex64::new((self.t + self.r() as i64 - 1) as f64, 0.0) + sa - sb
    }

    pub fn w(&self) -> Complex64 {
        self.base.pow(self.w_exponent())
    }

    /// `k >= -m_min`, the range where the numerator of `f_k` is a polynomial.
    pub fn numerator_is_polynomial(&self, k: i64) -> bool {
        self.m_min().is_none_or(|mm| k >= -mm)
    }
}

/// Access to the exponent bundle shared by the balanced and confluent families.
pub trait ParameterFamily {
    fn view(&self) -> ParamView<'_>;
}

/// Parameters of the balanced duality identity (`s = r >= 2`).
#[derive(Debug, Clone, PartialEq)]
pub struct QParams {
    base: QBase,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    m: Vec<i64>,
    n: Vec<i64>,
    t: i64,
}

pub(crate) fn check_non_integer_differences(a: &[Complex64], eps: f64) -> Result<()> {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let d = a[i] - a[j];
            let dist = (d.re - d.re.round()).abs();
            if dist < eps && d.im.abs() < eps {
                return Err(Error::InvalidParams(format!(
                    "a_{} - a_{} = {d} is within {eps:e} of an integer",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

impl QParams {
    pub fn new(base: QBase, a: Vec<Complex64>, b: Vec<Complex64>, m: Vec<i64>, n: Vec<i64>, t: i64) -> Result<Self> {
        let r = a.len();
        if r < 2 {
            return Err(Error::InvalidParams(format!("r = {r}, need r >= 2")));
        }
        if b.len() != r || m.len() != r || n.len() != r {
            return Err(Error::InvalidParams(format!(
                "vector lengths a={}, b={}, m={}, n={} must all equal r",
                r,
                b.len(),
                m.len(),
                n.len()
            )));
        }
        check_non_integer_differences(&a, EPS_INT)?;
        Ok(QParams { base, a, b, m, n, t })
    }

    /// Same exponents with a different shift `t`.
    pub fn with_t(&self, t: i64) -> Self {
        QParams { t, ..self.clone() }
    }

    pub fn base(&self) -> &QBase {
        &self.base
    }
    pub fn a(&self) -> &[Complex64] {
        &self.a
    }
    pub fn b(&self) -> &[Complex64] {
        &self.b
    }
    pub fn m(&self) -> &[i64] {
        &self.m
    }
    pub fn n(&self) -> &[i64] {
        &self.n
    }
    pub fn t(&self) -> i64 {
        self.t
    }
    pub fn r(&self) -> usize {
        self.a.len()
    }
    pub fn big_m(&self) -> i64 {
        self.view().big_m()
    }
    pub fn big_n(&self) -> i64 {
        self.view().big_n()
    }
    pub fn m_min(&self) -> i64 {
        self.view().m_min().expect("r >= 2")
    }
    pub fn n_max(&self) -> i64 {
        self.view().n_max()
    }
    pub fn t_plus(&self) -> i64 {
        self.t.max(0)
    }

    /// `p = max(-1, M - N - r - t + 1)`.
    pub fn p(&self) -> i64 {
        (self.big_m() - self.big_n() - self.r() as i64 - self.t + 1).max(-1)
    }

    pub fn w(&self) -> Complex64 {
        self.view().w()
    }

    /// Support `[-n_max, p + t+ - m_min]` of the Laurent polynomial.
    pub fn k_range(&self) -> (i64, i64) {
        (-self.n_max(), self.p() + self.t_plus() - self.m_min())
    }
}

impl ParameterFamily for QParams {
    fn view(&self) -> ParamView<'_> {
        ParamView {
            base: self.base,
            a: &self.a,
            b: &self.b,
            m: &self.m,
            n: &self.n,
            t: self.t,
        }
    }
}

/// Serializable echo of a parameter bundle; complex numbers are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsEcho {
    pub q: [f64; 2],
    pub a: Vec<[f64; 2]>,
    pub b: Vec<[f64; 2]>,
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub t: i64,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl ParamsEcho {
    pub fn from_view(view: ParamView<'_>) -> Self {
        ParamsEcho {
            q: pair(view.base.q()),
            a: view.a.iter().copied().map(pair).collect(),
            b: view.b.iter().copied().map(pair).collect(),
            m: view.m.to_vec(),
            n: view.n.to_vec(),
            t: view.t,
        }
    }

    pub fn base(&self) -> Result<QBase> {
        QBase::new(unpair(&self.q))
    }

    pub fn a_values(&self) -> Vec<Complex64> {
        self.a.iter().map(unpair).collect()
    }

    pub fn b_values(&self) -> Vec<Complex64> {
        self.b.iter().map(unpair).collect()
    }

    pub fn to_qparams(&self) -> Result<QParams> {
        QParams::new(
            self.base()?,
            self.a_values(),
            self.b_values(),
            self.m.clone(),
            self.n.clone(),
            self.t,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reals(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn derived_quantities() {
        let base = QBase::real(0.3).unwrap();
        let p = QParams::new(
            base,
            reals(&[0.17, 0.59, 1.13]),
            reals(&[0.23, 0.71, 1.37]),
            vec![0, 1, 1],
            vec![0, 0, 1],
            -1,
        )
        .unwrap();
        assert_eq!((p.big_m(), p.big_n(), p.m_min(), p.n_max()), (2, 1, 0, 1));
        assert_eq!(p.p(), 0);
        assert_eq!(p.k_range(), (-1, 0));
        let w_exp = -1.0 + 2.0 + (0.17 + 0.59 + 1.13) - (0.23 + 0.71 + 1.37);
        assert!((p.w() - base.pow_real(w_exp)).norm() < 1e-15);
        assert_eq!(p.with_t(1).k_range(), (-1, 0));
    }

    #[test]
    fn rejects_integer_spaced_a() {
        let base = QBase::real(0.3).unwrap();
        let err = QParams::new(base, reals(&[0.2, 1.2]), reals(&[0.1, 0.4]), vec![0, 0], vec![0, 0], 0);
        assert!(matches!(err, Err(Error::InvalidParams(_))));
        let ok = QParams::new(
            base,
            vec![Complex64::new(0.2, 0.0), Complex64::new(1.2, 0.01)],
            reals(&[0.1, 0.4]),
            vec![0, 0],
            vec![0, 0],
            0,
        );
        assert!(ok.is_ok());
        assert!(QParams::new(base, reals(&[0.2]), reals(&[0.1]), vec![0], vec![0], 0).is_err());
        assert!(QParams::new(base, reals(&[0.2, 0.5]), reals(&[0.1]), vec![0, 0], vec![0, 0], 0).is_err());
    }
}
