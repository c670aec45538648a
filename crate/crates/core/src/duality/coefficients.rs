use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::family::DualityFamily;
use super::params::ParamView;
use crate::error::{Error, Result};
use crate::qcore::{d_coefficients, q_binomial, q_pochhammer, PochhammerRatio};
use crate::qseries::PhiSpec;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative agreement required between the two routes to `alpha_k`.
pub const ALPHA_CROSS_CHECK_TOL: f64 = 1e-10;

/// Accuracy requested from the terminating series behind `alpha_k`.
const ALPHA_SERIES_TOL: f64 = 1e-16;

fn sign(j: i64) -> f64 {
    if j.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `gamma_{i,j}^{k+n_i}` for a 0-based index `i`; zero outside `0 <= j <= k + n_i`.
pub fn gamma_view(v: &ParamView<'_>, i: usize, j: i64, k: i64) -> Result<Complex64> {
    let top = k + v.n[i];
    if j < 0 || j > top {
        return Ok(ZERO);
    }
    let base = &v.base;
    let ai = v.a[i];
    let t = v.t as f64;
    let exponent = ai * (1.0 - t) + t * j as f64 + (j * (j - 1) / 2) as f64;
    let mut ratio = PochhammerRatio::new(base.pow(exponent) * sign(j));
    for (bl, ml) in v.b.iter().zip(v.m) {
        ratio.numer(q_pochhammer(base.pow(1.0 - bl + ai - j as f64), base, ml + k));
    }
    for (l, (al, nl)) in v.a.iter().zip(v.n).enumerate() {
        if l != i {
            ratio.denom(q_pochhammer(base.pow(ai - al - j as f64), base, nl + k + 1));
        }
    }
    ratio.denom(q_pochhammer(base.q(), base, j));
    ratio.denom(q_pochhammer(base.q(), base, top - j));
    ratio.resolve("gamma coefficient")
}

/// Both evaluations of `alpha_k` together with the size of the terms summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaValue {
    /// Value through the terminating balanced series.
    pub value: Complex64,
    /// Value through the double sum of gamma coefficients.
    pub via_gamma: Complex64,
    /// Sum of the moduli of all gamma terms.
    pub term_scale: f64,
}

impl AlphaValue {
    pub fn discrepancy(&self) -> f64 {
        (self.value - self.via_gamma).norm()
    }
}

/// `alpha_k` as the double sum of gamma coefficients, with the sum of term moduli.
pub fn alpha_via_gamma(v: &ParamView<'_>, k: i64) -> Result<(Complex64, f64)> {
    let mut sum = ZERO;
    let mut scale = 0.0;
    for i in 0..v.r() {
        for j in 0..=(k + v.n[i]) {
            let g = gamma_view(v, i, j, k)?;
            sum += g;
            scale += g.norm();
        }
    }
    Ok((sum, scale))
}

/// The `i`-th terminating series contribution to `alpha_k` (0 when `k + n_i < 0`).
///
/// The series has `r + s` upper and `r + s - 1` lower parameters and argument
/// `q^(N - M + r - 1 + t + k(r - s))`.
pub fn alpha_phi_term(v: &ParamView<'_>, i: usize, k: i64) -> Result<Complex64> {
    Ok(alpha_phi_term_scaled(v, i, k)?.0)
}

/// [`alpha_phi_term`] together with the prefactor times the sum of the series' term moduli.
pub fn alpha_phi_term_scaled(v: &ParamView<'_>, i: usize, k: i64) -> Result<(Complex64, f64)> {
    let top = k + v.n[i];
    if top < 0 {
        return Ok((ZERO, 0.0));
    }
    let base = &v.base;
    let ai = v.a[i];
    let t = v.t as f64;

    let mut ratio = PochhammerRatio::new(base.pow(ai * (1.0 - t)));
    for (bl, ml) in v.b.iter().zip(v.m) {
        ratio.numer(q_pochhammer(base.pow(1.0 - bl + ai), base, ml + k));
    }
    ratio.denom(q_pochhammer(base.q(), base, top));
    for (l, (al, nl)) in v.a.iter().zip(v.n).enumerate() {
        if l != i {
            ratio.denom(q_pochhammer(base.pow(ai - al), base, nl + k + 1));
        }
    }
    let prefactor = ratio.resolve("alpha prefactor")?;

    let mut upper = vec![base.powi(-top)];
    let mut lower = Vec::with_capacity(v.r() + v.s() - 1);
    for (bl, ml) in v.b.iter().zip(v.m) {
        upper.push(base.pow(bl - ai));
        lower.push(base.pow(bl - ai - (ml + k) as f64));
    }
    for (l, (al, nl)) in v.a.iter().zip(v.n).enumerate() {
        if l != i {
            upper.push(base.pow(al - ai - (nl + k) as f64));
            lower.push(base.pow(1.0 - ai + al));
        }
    }
    let r = v.r() as i64;
    let s = v.s() as i64;
    let arg = base.powi(v.big_n() - v.big_m() + r - 1 + v.t + k * (r - s));
    let series = PhiSpec::standard(upper, lower, *base).evaluate(arg, ALPHA_SERIES_TOL)?;
    Ok((prefactor * series.value, prefactor.norm() * series.abs_sum))
}

/// `alpha_k` by both routes; errors when they disagree beyond
/// [`ALPHA_CROSS_CHECK_TOL`] relative to the term scale.
pub fn alpha_detail(v: &ParamView<'_>, k: i64) -> Result<AlphaValue> {
    let (via_gamma, term_scale) = alpha_via_gamma(v, k)?;
    let mut value = ZERO;
    for i in 0..v.r() {
        value += alpha_phi_term(v, i, k)?;
    }
    let out = AlphaValue {
        value,
        via_gamma,
        term_scale,
    };
    let bound = ALPHA_CROSS_CHECK_TOL * term_scale.max(value.norm()).max(f64::MIN_POSITIVE);
    if out.discrepancy() > bound {
        return Err(Error::CrossCheck {
            what: "alpha_k",
            lhs: value,
            rhs: via_gamma,
            bound,
        });
    }
    Ok(out)
}

/// Coefficients `beta_k` of the Laurent polynomial on the right-hand side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaTable {
    pub k_lo: i64,
    pub k_hi: i64,
    /// `coeffs[k - k_lo]`.
    pub coeffs: Vec<Complex64>,
    /// Largest modulus among the terms combined into any single `beta_k`.
    pub term_scale: f64,
}

impl BetaTable {
    pub fn new(k_lo: i64, k_hi: i64, coeffs: Vec<Complex64>, term_scale: f64) -> Self {
        debug_assert_eq!(coeffs.len() as i64, (k_hi - k_lo + 1).max(0));
        BetaTable {
            k_lo,
            k_hi,
            coeffs,
            term_scale,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// `beta_k`, zero outside the support.
    pub fn get(&self, k: i64) -> Complex64 {
        if k < self.k_lo || k > self.k_hi {
            ZERO
        } else {
            self.coeffs[(k - self.k_lo) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(idx, &c)| (self.k_lo + idx as i64, c))
    }

    /// `sum_k beta_k z^k`, together with the largest term modulus.
    pub fn laurent(&self, z: Complex64) -> (Complex64, f64) {
        let mut sum = ZERO;
        let mut biggest: f64 = 0.0;
        for (k, c) in self.iter() {
            let term = c * z.powi(k as i32);
            biggest = biggest.max(term.norm());
            sum += term;
        }
        (sum, biggest)
    }

    pub fn sum(&self) -> Complex64 {
        self.coeffs.iter().sum()
    }

    /// Largest entrywise difference in the scaled variable `u = z / radius`:
    /// `max_k |x_k - y_k| radius^k / max_k |x_k| radius^k`. This is the natural
    /// norm for coefficients recovered from samples on the circle `|z| = radius`.
    pub fn max_weighted_difference(&self, other: &BetaTable, radius: f64) -> f64 {
        let lo = self.k_lo.min(other.k_lo);
        let hi = self.k_hi.max(other.k_hi);
        if hi < lo {
            return 0.0;
        }
        let weight = |k: i64| radius.powi((k - lo) as i32);
        let size = (lo..=hi)
            .map(|k| self.get(k).norm().max(other.get(k).norm()) * weight(k))
            .fold(0.0, f64::max);
        let diff = (lo..=hi)
            .map(|k| (self.get(k) - other.get(k)).norm() * weight(k))
            .fold(0.0, f64::max);
        if diff == 0.0 {
            0.0
        } else {
            diff / size
        }
    }

    /// Largest entrywise difference relative to `max(|beta_k|, scale)`, where the
    /// supports are compared on their union.
    pub fn max_relative_difference(&self, other: &BetaTable, scale: f64) -> f64 {
        let lo = self.k_lo.min(other.k_lo);
        let hi = self.k_hi.max(other.k_hi);
        (lo..=hi)
            .map(|k| {
                let (x, y) = (self.get(k), other.get(k));
                (x - y).norm() / x.norm().max(y.norm()).max(scale).max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }
}

/// `D_j` for the family's right-hand denominator.
pub fn denominator_coefficients<P: DualityFamily + ?Sized>(family: &P) -> Vec<Complex64> {
    let v = family.view();
    d_coefficients(v.w(), family.w_factor_len() - 1, v.t_plus(), &v.base)
}

/// The beta table of any duality family, by convolving `D` with `alpha`.
pub fn beta_table_for<P: DualityFamily + ?Sized>(family: &P) -> Result<BetaTable> {
    let v = family.view();
    let (k_lo, k_hi) = family.k_range();
    if k_hi < k_lo {
        return Ok(BetaTable::new(k_lo, k_hi, Vec::new(), 0.0));
    }
    let d = denominator_coefficients(family);
    let depth = d.len() as i64 - 1;
    let alphas = (k_lo..=k_hi).map(|k| alpha_detail(&v, k)).collect::<Result<Vec<_>>>()?;
    let mut coeffs = Vec::with_capacity(alphas.len());
    let mut term_scale: f64 = 0.0;
    for k in k_lo..=k_hi {
        let mut acc = ZERO;
        for j in (k - depth).max(k_lo)..=k {
            let term = d[(k - j) as usize] * alphas[(j - k_lo) as usize].value * sign(k - j);
            term_scale = term_scale.max(term.norm());
            acc += term;
        }
        coeffs.push(acc);
    }
    Ok(BetaTable::new(k_lo, k_hi, coeffs, term_scale))
}

/// The beta table from the explicit double sum over `g + h = k - j`, building
/// each coefficient of the denominator inline. Used to cross-check
/// [`beta_table_for`].
pub fn beta_table_literal<P: DualityFamily + ?Sized>(family: &P) -> Result<BetaTable> {
    let v = family.view();
    let base = &v.base;
    let w = v.w();
    let (k_lo, k_hi) = family.k_range();
    let w_len = family.w_factor_len();
    let t_plus = v.t_plus();
    let mut coeffs = Vec::new();
    let mut term_scale: f64 = 0.0;
    for k in k_lo..=k_hi {
        let mut acc = ZERO;
        for j in k_lo..=k {
            let alpha = alpha_detail(&v, j)?.value;
            let mut inner = ZERO;
            for h in 0..=(k - j).min(w_len) {
                let g = k - j - h;
                if g > t_plus {
                    continue;
                }
                inner += q_binomial(w_len, h, base)
                    * q_binomial(t_plus, g, base)
                    * base.powi((h * (h - 1) + g * (g - 1)) / 2)
                    * w.powi(h as i32);
            }
            let term = inner * alpha * sign(k - j);
            term_scale = term_scale.max(term.norm());
            acc += term;
        }
        coeffs.push(acc);
    }
    Ok(BetaTable::new(k_lo, k_hi, coeffs, term_scale))
}
