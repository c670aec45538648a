use num_complex::Complex64;

use crate::duality::{ParamView, ParameterFamily};
use crate::error::{Error, Result};
use crate::qcore::q_pochhammer;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Below this modulus a linear factor `1 - c z` counts as vanishing.
pub const FACTOR_TOL: f64 = 1e-12;

/// A linear factor `1 - c z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFactor {
    pub c: Complex64,
    /// `(i, j)` for the denominator factor `1 - z q^(j - a_i)`.
    pub pole_index: Option<(usize, i64)>,
}

impl LinearFactor {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        ONE - self.c * z
    }

    pub fn root(&self) -> Complex64 {
        self.c.inv()
    }
}

/// `f_k(z) = -(z q^(1-b);q)_{k+m} / (z q^(-a);q)_{k+n+1}` and `F_k = z^(-t) f_k`,
/// stored as explicit lists of linear factors.
#[derive(Debug, Clone)]
pub struct RationalFk<'a> {
    view: ParamView<'a>,
    k: i64,
    numer: Vec<LinearFactor>,
    denom: Vec<LinearFactor>,
}

/// Push the factors of `(x z;q)_len` onto `top` (and `bottom` for negative `len`).
fn push_pochhammer(
    view: &ParamView<'_>,
    x: Complex64,
    len: i64,
    top: &mut Vec<LinearFactor>,
    bottom: &mut Vec<LinearFactor>,
    tag: impl Fn(i64) -> Option<(usize, i64)>,
) {
    let base = &view.base;
    if len >= 0 {
        for u in 0..len {
            top.push(LinearFactor {
                c: x * base.powi(u),
                pole_index: tag(u),
            });
        }
    } else {
        for u in 1..=(-len) {
            bottom.push(LinearFactor {
                c: x * base.powi(-u),
                pole_index: None,
            });
        }
    }
}

impl<'a> RationalFk<'a> {
    pub fn new<P: ParameterFamily + ?Sized>(family: &'a P, k: i64) -> Self {
        let view = family.view();
        let base = view.base;
        let mut numer = Vec::new();
        let mut denom = Vec::new();
        for (bl, ml) in view.b.iter().zip(view.m) {
            push_pochhammer(&view, base.pow(1.0 - bl), k + ml, &mut numer, &mut denom, |_| None);
        }
        for (i, (ai, ni)) in view.a.iter().zip(view.n).enumerate() {
            push_pochhammer(&view, base.pow(-ai), k + ni + 1, &mut denom, &mut numer, |u| {
                Some((i, u))
            });
        }
        RationalFk { view, k, numer, denom }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn view(&self) -> &ParamView<'a> {
        &self.view
    }

    pub fn numerator_factors(&self) -> &[LinearFactor] {
        &self.numer
    }

    pub fn denominator_factors(&self) -> &[LinearFactor] {
        &self.denom
    }

    /// Numerator degree minus denominator degree, `M - N - r - (r - s) k`.
    pub fn degree(&self) -> i64 {
        self.numer.len() as i64 - self.denom.len() as i64
    }

    /// All finite poles of `f_k`.
    pub fn poles(&self) -> Vec<Complex64> {
        self.denom.iter().map(LinearFactor::root).collect()
    }

    pub fn fk_eval(&self, z: Complex64) -> Result<Complex64> {
        let mut value = -ONE;
        for f in &self.denom {
            let d = f.eval(z);
            if d.norm() < FACTOR_TOL {
                return Err(Error::NearPole(z));
            }
            value /= d;
        }
        for f in &self.numer {
            value *= f.eval(z);
        }
        Ok(value)
    }

    /// `F_k(z) = z^(-t) f_k(z)`.
    pub fn big_fk_eval(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::NearPole(z));
        }
        Ok(self.fk_eval(z)? * z.powi(-self.view.t as i32))
    }

    /// Residue of `F_k` at `q^(a_i - j)`, by removing the vanishing linear factor
    /// and evaluating the rest at the pole.
    pub fn residue_at_pole(&self, i: usize, j: i64) -> Result<Complex64> {
        let idx = self
            .denom
            .iter()
            .position(|f| f.pole_index == Some((i, j)))
            .ok_or(Error::NoPole { i, j, k: self.k })?;
        let z0 = self.denom[idx].root();
        // (1 - c z) = -c (z - z0), and -c = -1/z0.
        let mut value = -ONE * (-z0);
        for (u, f) in self.denom.iter().enumerate() {
            if u == idx {
                continue;
            }
            let d = f.eval(z0);
            if d.norm() < FACTOR_TOL {
                return Err(Error::NonSimplePole(z0));
            }
            value /= d;
        }
        for f in &self.numer {
            value *= f.eval(z0);
        }
        Ok(value * z0.powi(-self.view.t as i32))
    }

    /// `R(z) = -(z q^(1-b);q)_m / (z q^(-a);q)_{n+1}`, the `k`-independent part.
    pub fn r_eval(&self, z: Complex64) -> Complex64 {
        let v = &self.view;
        let base = &v.base;
        let mut value = -ONE;
        for (bl, ml) in v.b.iter().zip(v.m) {
            value *= q_pochhammer(z * base.pow(1.0 - bl), base, *ml).value;
        }
        for (ai, ni) in v.a.iter().zip(v.n) {
            value /= q_pochhammer(z * base.pow(-ai), base, ni + 1).value;
        }
        value
    }

    /// `f_k` through the splitting `R(z) prod_i g_k(z; q^(n_i+1-a_i), q^(m_i+1-b_i))`.
    pub fn split_eval(&self, z: Complex64) -> Complex64 {
        let v = &self.view;
        let base = &v.base;
        let mut value = self.r_eval(z);
        for (i, (ai, ni)) in v.a.iter().zip(v.n).enumerate() {
            let alpha = base.pow(-ai + (ni + 1) as f64);
            value *= match (v.b.get(i), v.m.get(i)) {
                (Some(bi), Some(mi)) => g_k(z, alpha, base.pow(1.0 - bi + *mi as f64), self.k, v),
                _ => q_pochhammer(alpha * z, base, self.k).recip(),
            };
        }
        value
    }
}

/// `g_k(z; alpha, beta) = (beta z;q)_k / (alpha z;q)_k`.
pub fn g_k(z: Complex64, alpha: Complex64, beta: Complex64, k: i64, view: &ParamView<'_>) -> Complex64 {
    q_pochhammer(beta * z, &view.base, k).value / q_pochhammer(alpha * z, &view.base, k).value
}

/// Residue of `F_k` at `q^(a_i - j)` for a 0-based `i`.
pub fn residue_at_pole(fk: &RationalFk<'_>, i: usize, j: i64) -> Result<Complex64> {
    fk.residue_at_pole(i, j)
}

pub fn fk_eval(fk: &RationalFk<'_>, z: Complex64) -> Result<Complex64> {
    fk.fk_eval(z)
}
