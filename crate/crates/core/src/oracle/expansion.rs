use num_complex::Complex64;

use super::residue::RationalFk;
use crate::duality::{alpha_phi_term_scaled, ParamView, ParameterFamily, ParamsEcho, QParams};
use crate::error::Result;
use crate::report::{CaseRecord, ResidualReport, SampleRecord};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Nodes of the trapezoidal rule used by the contour oracles.
pub const CONTOUR_NODES: usize = 256;

/// Sums of exponents entering the large-`z` leading coefficient of `f_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumConstants {
    pub a_sum: Complex64,
    pub b_sum: Complex64,
    pub m2: i64,
    pub n2: i64,
    pub dot_an: Complex64,
    pub dot_bm: Complex64,
    pub big_m: i64,
    pub big_n: i64,
}

impl SumConstants {
    pub fn new(v: &ParamView<'_>) -> Self {
        SumConstants {
            a_sum: v.a.iter().sum(),
            b_sum: v.b.iter().sum(),
            m2: v.m.iter().map(|x| x * x).sum(),
            n2: v.n.iter().map(|x| x * x).sum(),
            dot_an: v.a.iter().zip(v.n).map(|(a, n)| a * *n as f64).sum(),
            dot_bm: v.b.iter().zip(v.m).map(|(b, m)| b * *m as f64).sum(),
            big_m: v.big_m(),
            big_n: v.big_n(),
        }
    }
}

/// `sum_{j=0}^{upper} f(j)` with the signed-range convention
/// `sum_{j=0}^{upper} = -sum_{j=upper+1}^{-1}` for `upper < -1`.
fn signed_range_sum(upper: i64, f: impl Fn(i64) -> Complex64) -> Complex64 {
    if upper >= 0 {
        (0..=upper).map(f).sum()
    } else {
        -((upper + 1)..=-1).map(f).sum::<Complex64>()
    }
}

/// Newton-type recurrence `c_0 = 1`, `c_s = (1/s) sum_{u=1}^{s} u L_u c_{s-u}`.
fn exponentiate(power_sums: &[Complex64]) -> Vec<Complex64> {
    let s_max = power_sums.len();
    let mut c = vec![ONE];
    for s in 1..=s_max {
        let acc: Complex64 = (1..=s).map(|u| power_sums[u - 1] * u as f64 * c[s - u]).sum();
        c.push(acc / s as f64);
    }
    c
}

/// Majorant recurrence matching [`exponentiate`] with every input replaced by its
/// absolute value; bounds the size of the terms that cancel in `c_s`.
fn exponentiate_abs(abs_sums: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for s in 1..=abs_sums.len() {
        let acc: f64 = (1..=s).map(|u| abs_sums[u - 1] * u as f64 * c[s - u]).sum();
        c.push(acc / s as f64);
    }
    c
}

/// `(1/s) [sum_i sum_{j=0}^{k+n_i} x_i(j)^s - sum_l sum_{j=0}^{k+m_l-1} y_l(j)^s]`
/// with `x_i(j) = q^ex(i, j)`, `y_l(j) = q^ey(l, j)`, plus the sum of term moduli.
fn power_sum(
    v: &ParamView<'_>,
    k: i64,
    s: usize,
    ex: impl Fn(usize, i64) -> Complex64,
    ey: impl Fn(usize, i64) -> Complex64,
) -> (Complex64, f64) {
    let base = &v.base;
    let sf = s as f64;
    let mut total = ZERO;
    let mut abs = 0.0;
    for (i, ni) in v.n.iter().enumerate() {
        let part = signed_range_sum(k + ni, |j| base.pow(ex(i, j) * sf));
        abs += signed_range_abs(k + ni, |j| base.pow(ex(i, j) * sf).norm());
        total += part;
    }
    for (l, ml) in v.m.iter().enumerate() {
        total -= signed_range_sum(k + ml - 1, |j| base.pow(ey(l, j) * sf));
        abs += signed_range_abs(k + ml - 1, |j| base.pow(ey(l, j) * sf).norm());
    }
    (total / sf, abs / sf)
}

fn signed_range_abs(upper: i64, f: impl Fn(i64) -> f64) -> f64 {
    if upper >= 0 {
        (0..=upper).map(f).sum()
    } else {
        ((upper + 1)..=-1).map(f).sum()
    }
}

fn q_power_sum(v: &ParamView<'_>, k: i64, s: usize) -> (Complex64, f64) {
    power_sum(
        v,
        k,
        s,
        |i, j| v.a[i] - (v.n[i] + k - j) as f64,
        |l, j| v.b[l] - (v.m[l] + k - j) as f64,
    )
}

fn p_power_sum(v: &ParamView<'_>, k: i64, s: usize) -> (Complex64, f64) {
    power_sum(v, k, s, |i, j| -v.a[i] + j as f64, |l, j| 1.0 - v.b[l] + j as f64)
}

/// `Q_s` for the large-`z` expansion of the normalized `f_k`.
pub fn big_q(v: &ParamView<'_>, k: i64, s: usize) -> Complex64 {
    q_power_sum(v, k, s).0
}

/// `P_s` for the small-`z` expansion of `-f_k`.
pub fn big_p(v: &ParamView<'_>, k: i64, s: usize) -> Complex64 {
    p_power_sum(v, k, s).0
}

/// `q_0..q_{s_max}`: `f_k(z) = lead z^D (1 + q_1/z + q_2/z^2 + ...)` for large `z`.
pub fn q_recurrence<P: ParameterFamily + ?Sized>(family: &P, k: i64, s_max: usize) -> Vec<Complex64> {
    let v = family.view();
    let sums: Vec<Complex64> = (1..=s_max).map(|s| big_q(&v, k, s)).collect();
    exponentiate(&sums)
}

/// `p_0..p_{s_max}`: `-f_k(z) = 1 + p_1 z + p_2 z^2 + ...` for small `z`.
pub fn p_recurrence<P: ParameterFamily + ?Sized>(family: &P, k: i64, s_max: usize) -> Vec<Complex64> {
    let v = family.view();
    let sums: Vec<Complex64> = (1..=s_max).map(|s| big_p(&v, k, s)).collect();
    exponentiate(&sums)
}

/// Degree `D = M - N - r - (r - s) k` and leading coefficient of `f_k` at infinity.
pub fn large_z_leading<P: ParameterFamily + ?Sized>(family: &P, k: i64) -> (i64, Complex64) {
    let v = family.view();
    let c = SumConstants::new(&v);
    let (r, s) = (v.r() as i64, v.s() as i64);
    let degree = c.big_m - c.big_n - r - (r - s) * k;
    let sign = if (degree + 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let kf = k as f64;
    let exponent = kf * (c.a_sum - c.b_sum + (c.big_m - c.big_n) as f64) + c.a_sum + c.dot_an - c.dot_bm
        + (c.m2 - c.n2 + c.big_m - c.big_n) as f64 / 2.0
        - ((r - s) * k * (k + 1)) as f64 / 2.0;
    (degree, v.base.pow(exponent) * sign)
}

/// Index of `q_s` that multiplies `z^-1` in `F_k = z^-t f_k`; negative when
/// `F_k` decays faster than `1/z`.
pub fn c_minus1_index<P: ParameterFamily + ?Sized>(family: &P, k: i64) -> i64 {
    large_z_leading(family, k).0 - family.view().t + 1
}

/// The `z^-1` coefficient of `F_k` at infinity.
pub fn c_minus1<P: ParameterFamily + ?Sized>(family: &P, k: i64) -> Complex64 {
    let idx = c_minus1_index(family, k);
    if idx < 0 {
        return ZERO;
    }
    let (_, lead) = large_z_leading(family, k);
    lead * q_recurrence(family, k, idx as usize)[idx as usize]
}

/// Residue of `F_k` at `z = 0`, namely `-p_{t-1}` (zero for `t <= 0`).
pub fn residue_at_zero<P: ParameterFamily + ?Sized>(family: &P, k: i64) -> Complex64 {
    let t = family.view().t;
    if t <= 0 {
        return ZERO;
    }
    -p_recurrence(family, k, (t - 1) as usize)[(t - 1) as usize]
}

/// Coefficient of `z^power` in the Laurent expansion of `f` valid on `|z| = radius`,
/// by the trapezoidal rule with `nodes` points.
pub fn contour_coefficient(
    f: impl Fn(Complex64) -> Result<Complex64>,
    radius: f64,
    power: i64,
    nodes: usize,
) -> Result<Complex64> {
    let mut acc = ZERO;
    for u in 0..nodes {
        let theta = std::f64::consts::TAU * (u as f64 + 0.5) / nodes as f64;
        let z = Complex64::from_polar(radius, theta);
        acc += f(z)? * z.powi(-power as i32);
    }
    Ok(acc / nodes as f64)
}

/// A circle enclosing every finite pole of `f_k`, used for expansions at infinity.
pub fn large_radius(fk: &RationalFk<'_>) -> f64 {
    2.0 * fk.poles().iter().map(|p| p.norm()).fold(1.0, f64::max)
}

/// A circle inside every finite pole of `f_k`, used for expansions at zero.
pub fn small_radius(fk: &RationalFk<'_>) -> f64 {
    0.5 * fk.poles().iter().map(|p| p.norm()).fold(1.0, f64::min)
}

/// Size of the terms cancelling inside `C_-1(k) + p_{t-1}`; the roundoff of
/// the recurrences is a small multiple of this times machine epsilon.
pub fn closure_scale<P: ParameterFamily + ?Sized>(family: &P, k: i64) -> f64 {
    let v = family.view();
    let mut scale = 0.0;
    let idx = c_minus1_index(family, k);
    if idx >= 0 {
        let abs: Vec<f64> = (1..=idx as usize).map(|s| q_power_sum(&v, k, s).1).collect();
        scale += large_z_leading(family, k).1.norm() * exponentiate_abs(&abs)[idx as usize];
    }
    if v.t >= 1 {
        let abs: Vec<f64> = (1..=(v.t - 1) as usize).map(|s| p_power_sum(&v, k, s).1).collect();
        scale += exponentiate_abs(&abs)[(v.t - 1) as usize];
    }
    scale
}

/// Both sides of the terminating identity for `alpha_k` and a roundoff scale: the
/// larger of the biggest left series (summed in modulus) and [`closure_scale`].
///
/// Left: the sum of terminating series. Right: `C_-1(k) + p_{t-1}`.
pub fn alpha_identity_sides<P: ParameterFamily + ?Sized>(family: &P, k: i64) -> Result<(Complex64, Complex64, f64)> {
    let v = family.view();
    let mut lhs = ZERO;
    let mut scale: f64 = 0.0;
    for i in 0..v.r() {
        let (term, size) = alpha_phi_term_scaled(&v, i, k)?;
        scale = scale.max(size);
        lhs += term;
    }
    let rhs = c_minus1(family, k) - residue_at_zero(family, k);
    Ok((lhs, rhs, scale.max(closure_scale(family, k))))
}

pub fn alpha_identity_case<P: ParameterFamily + ?Sized>(family: &P, case_id: u64, k: i64, tol: f64) -> CaseRecord {
    let echo = ParamsEcho::from_view(family.view());
    match alpha_identity_sides(family, k) {
        Ok((lhs, rhs, scale)) => {
            let residual = (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(scale).max(f64::MIN_POSITIVE);
            let condition = scale / lhs.norm().max(f64::MIN_POSITIVE);
            let sample = SampleRecord::scaled(ZERO, lhs, rhs, residual, condition);
            CaseRecord::from_samples(case_id, "alpha", echo, vec![sample], tol).with_k(k)
        }
        Err(e) => CaseRecord::errored(case_id, "alpha", echo, tol, &e).with_k(k),
    }
}

/// The terminating identity at a single `k >= -m_min`.
pub fn alpha_identity_check(params: &QParams, k: i64, tol: f64) -> ResidualReport {
    ResidualReport::single(alpha_identity_case(params, 0, k, tol))
}
