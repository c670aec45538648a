//! Basic hypergeometric series.
//!
//! [`PhiSpec`] describes either the standard series
//!
//! ```text
//! rφs(u; l; z) = Σ_n (u;q)_n / ((l;q)_n (q;q)_n) [(-1)^n q^(n(n-1)/2)]^(1+s-r) z^n
//! ```
//!
//! or the Bailey–Slater variant `rφ̂s`, which drops the bracketed factor.
//! Terms are built by a running product. A non-terminating sum stops once a
//! geometric majorant of the remaining terms certifies the requested tolerance.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{q_pochhammer_inf, QBase, QExponent, DEFAULT_INF_TOL};

/// Relative tolerance for recognising an upper parameter as `q^-N`.
pub const TERMINATION_TOL: f64 = 1e-10;
/// Largest `N` considered when scanning for terminating parameters.
pub const TERMINATION_SCAN_CAP: usize = 512;
/// Threshold on `|1 - l q^n|` signalling a lower-parameter pole.
pub const LOWER_POLE_TOL: f64 = 1e-12;
/// Default cap on the number of summed terms.
pub const DEFAULT_MAX_TERMS: usize = 50_000_000;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Standard,
    BaileySlater,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpec {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
    pub base: QBase,
    pub variant: Variant,
    pub max_terms: usize,
}

/// Truncation order and a certified bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    pub order: usize,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub truncation: SeriesTruncation,
    /// Sum of the moduli of the summed terms, a cancellation scale.
    pub abs_sum: f64,
}

impl PhiSpec {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>, base: QBase, variant: Variant) -> Self {
        PhiSpec {
            upper,
            lower,
            base,
            variant,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn standard(upper: Vec<Complex64>, lower: Vec<Complex64>, base: QBase) -> Self {
        Self::new(upper, lower, base, Variant::Standard)
    }

    pub fn bailey_slater(upper: Vec<Complex64>, lower: Vec<Complex64>, base: QBase) -> Self {
        Self::new(upper, lower, base, Variant::BaileySlater)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// Power of `(-1)^n q^(n(n-1)/2)` carried by each term.
    pub fn weight_exponent(&self) -> i64 {
        match self.variant {
            Variant::Standard => 1 + self.lower.len() as i64 - self.upper.len() as i64,
            Variant::BaileySlater => 0,
        }
    }

    /// Smallest `N` such that some upper parameter equals `q^-N`.
    pub fn termination_index(&self) -> Option<usize> {
        let q = self.base.q();
        self.upper
            .iter()
            .filter_map(|&u| {
                let mut x = u;
                for n in 0..=TERMINATION_SCAN_CAP {
                    if (x - ONE).norm() < TERMINATION_TOL {
                        return Some(n);
                    }
                    if x.norm() < 0.5 {
                        return None;
                    }
                    x *= q;
                }
                None
            })
            .min()
    }

    /// Ratio `term_{n+1} / term_n`; `q_n` is `q^n`.
    fn term_ratio(&self, n: usize, q_n: Complex64, z: Complex64) -> Result<Complex64> {
        let mut numer = z;
        for &u in &self.upper {
            numer *= ONE - u * q_n;
        }
        let mut denom = ONE - q_n * self.base.q();
        for (index, &l) in self.lower.iter().enumerate() {
            let factor = ONE - l * q_n;
            if factor.norm() < LOWER_POLE_TOL {
                return Err(Error::LowerParameterPole { index, k: n });
            }
            denom *= factor;
        }
        let e = self.weight_exponent();
        let weight = if e == 0 { ONE } else { (-q_n).powi(e as i32) };
        Ok(numer / denom * weight)
    }

    /// Upper bound on `|term_{m+1} / term_m|` valid for every `m >= n`.
    fn ratio_majorant(&self, n: usize, z_abs: f64) -> f64 {
        let qa = self.base.modulus();
        let qn = qa.powi(n as i32);
        let mut bound = z_abs;
        for u in &self.upper {
            bound *= 1.0 + u.norm() * qn;
        }
        let mut denom = 1.0 - qn * qa;
        for l in &self.lower {
            denom *= 1.0 - l.norm() * qn;
        }
        if !(denom > 0.0) {
            return f64::INFINITY;
        }
        let e = self.weight_exponent();
        bound / denom * qn.powi(e as i32)
    }

    fn check_convergence(&self, z: Complex64) -> Result<()> {
        let e = self.weight_exponent();
        if e < 0 {
            return Err(Error::Divergent(format!(
                "{} upper over {} lower parameters diverges for z != 0",
                self.upper.len(),
                self.lower.len()
            )));
        }
        if e == 0 && z.norm() >= 1.0 {
            return Err(Error::Divergent(format!("|z| = {} >= 1", z.norm())));
        }
        Ok(())
    }

    /// Sum of the terms `0..=order`.
    pub fn partial_sum(&self, z: Complex64, order: usize) -> Result<Complex64> {
        let stop = self.termination_index().map_or(order, |n0| n0.min(order));
        let q = self.base.q();
        let mut term = ONE;
        let mut sum = ONE;
        let mut q_n = ONE;
        for n in 0..stop {
            term *= self.term_ratio(n, q_n, z)?;
            sum += term;
            q_n *= q;
        }
        Ok(sum)
    }

    /// Sum the series to `tail_bound <= tol * max(1, |value|)`.
    pub fn evaluate(&self, z: Complex64, tol: f64) -> Result<SeriesValue> {
        if !(tol > 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
        let termination = self.termination_index();
        if termination.is_none() && z != Complex64::new(0.0, 0.0) {
            self.check_convergence(z)?;
        }
        let q = self.base.q();
        let z_abs = z.norm();
        let mut term = ONE;
        let mut sum = ONE;
        let mut abs_sum = 1.0;
        let mut q_n = ONE;
        let mut n = 0usize;
        loop {
            if termination == Some(n) || term == Complex64::new(0.0, 0.0) {
                return Ok(SeriesValue {
                    value: sum,
                    truncation: SeriesTruncation {
                        order: n,
                        tail_bound: 0.0,
                    },
                    abs_sum,
                });
            }
            if termination.is_none() {
                let rho = self.ratio_majorant(n, z_abs);
                if rho < 1.0 {
                    let tail = term.norm() * rho / (1.0 - rho);
                    if tail <= tol * sum.norm().max(1.0) {
                        return Ok(SeriesValue {
                            value: sum,
                            truncation: SeriesTruncation {
                                order: n,
                                tail_bound: tail,
                            },
                            abs_sum,
                        });
                    }
                }
                if n >= self.max_terms {
                    return Err(Error::TruncationCap(self.max_terms));
                }
            }
            term *= self.term_ratio(n, q_n, z)?;
            sum += term;
            abs_sum += term.norm();
            q_n *= q;
            n += 1;
        }
    }
}

/// Standard series `rφs(upper; lower; z)`.
pub fn phi_eval(upper: &[Complex64], lower: &[Complex64], base: &QBase, z: Complex64, tol: f64) -> Result<SeriesValue> {
    PhiSpec::standard(upper.to_vec(), lower.to_vec(), *base).evaluate(z, tol)
}

/// Bailey–Slater series `rφ̂s(upper; lower; z)`.
pub fn phi_hat_eval(
    upper: &[Complex64],
    lower: &[Complex64],
    base: &QBase,
    z: Complex64,
    tol: f64,
) -> Result<SeriesValue> {
    PhiSpec::bailey_slater(upper.to_vec(), lower.to_vec(), *base).evaluate(z, tol)
}

/// Right side of Heine's transformation of `2φ1(q^a, q^b; q^c; z)`:
/// `(q^(a+b-c) z;q)_inf / (z;q)_inf · 2φ1(q^(c-a), q^(c-b); q^c; q^(a+b-c) z)`.
pub fn heine_transform(a: QExponent, b: QExponent, c: QExponent, z: Complex64, base: &QBase) -> Result<Complex64> {
    let shifted = (a + b - c).power(base) * z;
    if z.norm() >= 1.0 || shifted.norm() >= 1.0 {
        return Err(Error::Divergent(format!(
            "Heine transform needs |z| < 1 and |q^(a+b-c) z| < 1, got {} and {}",
            z.norm(),
            shifted.norm()
        )));
    }
    let prefactor = q_pochhammer_inf(shifted, base, DEFAULT_INF_TOL)? / q_pochhammer_inf(z, base, DEFAULT_INF_TOL)?;
    let series = phi_eval(
        &[(c - a).power(base), (c - b).power(base)],
        &[c.power(base)],
        base,
        shifted,
        1e-16,
    )?;
    Ok(prefactor * series.value)
}

/// `lim_{z→1⁻} (1-z) rφ(r-1)(v; w; z) = (v;q)_inf / ((w;q)_inf (q;q)_inf)`.
pub fn limit_at_one(spec: &PhiSpec) -> Result<Complex64> {
    if spec.variant != Variant::Standard || spec.upper.len() != spec.lower.len() + 1 {
        return Err(Error::InvalidParams(
            "limit at one needs a standard series with one more upper than lower parameter".into(),
        ));
    }
    let base = &spec.base;
    let mut value = ONE;
    for &v in &spec.upper {
        value *= q_pochhammer_inf(v, base, DEFAULT_INF_TOL)?;
    }
    let mut denom = q_pochhammer_inf(base.q(), base, DEFAULT_INF_TOL)?;
    for (index, &w) in spec.lower.iter().enumerate() {
        let factor = q_pochhammer_inf(w, base, DEFAULT_INF_TOL)?;
        if factor == Complex64::new(0.0, 0.0) {
            return Err(Error::LowerParameterPole { index, k: 0 });
        }
        denom *= factor;
    }
    Ok(value / denom)
}
