use num_complex::Complex64;

use super::coefficients::{beta_table_for, BetaTable};
use super::family::DualityFamily;
use super::params::{ParamsEcho, QParams};
use crate::error::{Error, Result};
use crate::qcore::{q_pochhammer, q_pochhammer_infinite, PochhammerRatio};
use crate::qseries::{PhiSpec, Variant};
use crate::report::{CaseRecord, ResidualReport, SampleRecord};

/// Relative accuracy requested from every series evaluated inside a residual.
pub const SERIES_TOL: f64 = 1e-15;

/// Below this modulus the right-hand denominator counts as vanishing.
pub const POLE_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The two series of term `i`: the standard one (argument scaled by
/// `first_argument_scale(i)`) and the Bailey-Slater one at `z`.
fn term_series<P: DualityFamily + ?Sized>(family: &P, i: usize) -> (PhiSpec, PhiSpec) {
    let v = family.view();
    let base = v.base;
    let ai = v.a[i];
    let ni = v.n[i];
    let first_upper: Vec<Complex64> = v.b.iter().map(|bl| base.pow(bl - ai)).collect();
    let second_upper: Vec<Complex64> =
        v.b.iter()
            .zip(v.m)
            .map(|(bl, ml)| base.pow(1.0 - bl + ai + (ml - ni) as f64))
            .collect();
    let mut first_lower = Vec::with_capacity(v.r() - 1);
    let mut second_lower = Vec::with_capacity(v.r() - 1);
    for (l, (al, nl)) in v.a.iter().zip(v.n).enumerate() {
        if l != i {
            first_lower.push(base.pow(1.0 + al - ai));
            second_lower.push(base.pow(1.0 - al + ai + (nl - ni) as f64));
        }
    }
    let variant = if v.s() == v.r() {
        Variant::Standard
    } else {
        Variant::BaileySlater
    };
    (
        PhiSpec::standard(first_upper, first_lower, base),
        PhiSpec::new(second_upper, second_lower, base, variant),
    )
}

/// Prefactor of term `i` without the power of `z`.
fn term_prefactor<P: DualityFamily + ?Sized>(family: &P, i: usize) -> Result<Complex64> {
    let v = family.view();
    let base = &v.base;
    let ai = v.a[i];
    let ni = v.n[i];
    let mut ratio = PochhammerRatio::new(base.pow(ai * (1.0 - v.t as f64)));
    for (bl, ml) in v.b.iter().zip(v.m) {
        ratio.numer(q_pochhammer(base.pow(1.0 - bl + ai), base, ml - ni));
    }
    for (l, (al, nl)) in v.a.iter().zip(v.n).enumerate() {
        if l != i {
            ratio.denom(q_pochhammer(base.pow(ai - al), base, nl - ni + 1));
        }
    }
    ratio.resolve("left-hand prefactor")
}

/// The `r` terms of the left-hand side at `z`.
pub fn lhs_terms<P: DualityFamily + ?Sized>(family: &P, z: Complex64, tol: f64) -> Result<Vec<Complex64>> {
    if z == ZERO {
        return Err(Error::NearPole(z));
    }
    let v = family.view();
    (0..v.r())
        .map(|i| {
            let prefactor = term_prefactor(family, i)?;
            if prefactor == ZERO {
                return Ok(ZERO);
            }
            let (first, second) = term_series(family, i);
            let x = family.first_argument_scale(i) * z;
            let phi1 = first.evaluate(x, tol)?.value;
            let phi2 = second.evaluate(z, tol)?.value;
            Ok(prefactor * z.powi(-v.n[i] as i32) * phi1 * phi2)
        })
        .collect()
}

/// Left-hand side of the identity for any duality family.
pub fn lhs_eval_for<P: DualityFamily + ?Sized>(family: &P, z: Complex64, tol: f64) -> Result<Complex64> {
    Ok(lhs_terms(family, z, tol)?.into_iter().sum())
}

/// `(Wz;q)_L (z;q)_{t+}`.
pub fn rhs_denominator<P: DualityFamily + ?Sized>(family: &P, z: Complex64) -> Complex64 {
    let v = family.view();
    let w_part = q_pochhammer(v.w() * z, &v.base, family.w_factor_len()).value;
    let z_part = q_pochhammer(z, &v.base, v.t_plus()).value;
    w_part * z_part
}

/// Right-hand side from a precomputed table, with the largest Laurent term modulus
/// divided by the denominator.
pub fn rhs_from_table<P: DualityFamily + ?Sized>(
    family: &P,
    table: &BetaTable,
    z: Complex64,
) -> Result<(Complex64, f64)> {
    if z == ZERO && table.k_lo < 0 {
        return Err(Error::NearPole(z));
    }
    let denom = rhs_denominator(family, z);
    if denom.norm() < POLE_TOL {
        return Err(Error::NearPole(z));
    }
    let (sum, biggest) = table.laurent(z);
    Ok((sum / denom, biggest / denom.norm()))
}

/// Evaluate both sides of the identity at each sample point.
pub fn identity_case<P: DualityFamily + ?Sized>(
    family: &P,
    case_id: u64,
    z_samples: &[Complex64],
    tol: f64,
) -> CaseRecord {
    let echo = ParamsEcho::from_view(family.view());
    let table = match beta_table_for(family) {
        Ok(t) => t,
        Err(e) => return CaseRecord::errored(case_id, P::CHECK, echo, tol, &e),
    };
    let mut samples = Vec::with_capacity(z_samples.len());
    for &z in z_samples {
        let sample = lhs_terms(family, z, SERIES_TOL).and_then(|terms| {
            let lhs: Complex64 = terms.iter().sum();
            let biggest = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
            let (rhs, _) = rhs_from_table(family, &table, z)?;
            let residual = (lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1.0);
            let condition = biggest / lhs.norm().max(f64::MIN_POSITIVE);
            Ok(SampleRecord::new(z, lhs, rhs, residual, condition))
        });
        match sample {
            Ok(s) => samples.push(s),
            Err(e) => return CaseRecord::errored(case_id, P::CHECK, echo, tol, &e),
        }
    }
    CaseRecord::from_samples(case_id, P::CHECK, echo, samples, tol)
}

/// Both sides of the summation corollary: the left side at `z -> 1` after
/// multiplying through by the right-hand denominator.
///
/// Returns `(lhs, rhs, largest lhs term modulus, modulus sum of the rhs terms)`.
pub fn summation_sides<P: DualityFamily + ?Sized>(family: &P) -> Result<(Complex64, Complex64, f64, f64)> {
    let v = family.view();
    let base = &v.base;
    let mut lhs = ZERO;
    let mut scale: f64 = 0.0;
    for i in 0..v.r() {
        let ai = v.a[i];
        let mut value = base.pow(ai * (1.0 - v.t as f64));
        for bl in v.b {
            value *= q_pochhammer_infinite(base.pow(1.0 - bl + ai), base);
        }
        for (l, al) in v.a.iter().enumerate() {
            if l != i {
                value /= q_pochhammer_infinite(base.pow(ai - al), base);
            }
        }
        let (first, _) = term_series(family, i);
        value *= first.evaluate(family.first_argument_scale(i), SERIES_TOL)?.value;
        scale = scale.max(value.norm());
        lhs += value;
    }
    let outer = q_pochhammer_infinite(base.powi(v.t), base);
    let (rhs, rhs_scale) = if outer == ZERO {
        (ZERO, 0.0)
    } else {
        let table = beta_table_for(family)?;
        let factor = outer / q_pochhammer(v.w(), base, family.w_factor_len()).value;
        let abs: f64 = table.coeffs.iter().map(|b| b.norm()).sum();
        (factor * table.sum(), factor.norm() * abs)
    };
    Ok((lhs, rhs, scale, rhs_scale))
}

/// Residual of the summation corollary, measured against the largest left-hand term.
/// The sample is flagged when the finite sum on the right cancels heavily.
pub fn summation_case<P: DualityFamily + ?Sized>(family: &P, case_id: u64, check: &str, tol: f64) -> CaseRecord {
    let echo = ParamsEcho::from_view(family.view());
    match summation_sides(family) {
        Ok((lhs, rhs, scale, rhs_scale)) => {
            let size = lhs.norm().max(rhs.norm()).max(scale).max(f64::MIN_POSITIVE);
            let residual = (lhs - rhs).norm() / size;
            let sample = SampleRecord::new(ZERO, lhs, rhs, residual, rhs_scale / size);
            CaseRecord::from_samples(case_id, check, echo, vec![sample], tol)
        }
        Err(e) => CaseRecord::errored(case_id, check, echo, tol, &e),
    }
}

/// `gamma_{i,j}^{k+n_i}` for a 0-based index `i`.
pub fn gamma_coeff(params: &QParams, i: usize, j: i64, k: i64) -> Result<Complex64> {
    use super::params::ParameterFamily;
    super::coefficients::gamma_view(&params.view(), i, j, k)
}

/// `alpha_k`, cross-checked between the gamma double sum and the series route.
pub fn alpha_coeff(params: &QParams, k: i64) -> Result<Complex64> {
    use super::params::ParameterFamily;
    Ok(super::coefficients::alpha_detail(&params.view(), k)?.value)
}

pub fn beta_table(params: &QParams) -> Result<BetaTable> {
    beta_table_for(params)
}

pub fn lhs_eval(params: &QParams, z: Complex64, tol: f64) -> Result<Complex64> {
    lhs_eval_for(params, z, tol)
}

pub fn rhs_eval(params: &QParams, z: Complex64) -> Result<Complex64> {
    let table = beta_table_for(params)?;
    Ok(rhs_from_table(params, &table, z)?.0)
}

pub fn theorem1_residual(params: &QParams, z_samples: &[Complex64], tol: f64) -> ResidualReport {
    ResidualReport::single(identity_case(params, 0, z_samples, tol))
}

/// Summation corollary of the balanced identity; requires `|W| < 1`.
pub fn prop1_check(params: &QParams, tol: f64) -> Result<ResidualReport> {
    let w = params.w();
    if w.norm() >= 1.0 {
        return Err(Error::InvalidParams(format!("|W| = {} must be below 1", w.norm())));
    }
    Ok(ResidualReport::single(summation_case(params, 0, "prop1", tol)))
}
