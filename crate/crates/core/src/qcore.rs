//! q-arithmetic primitives.
//!
//! The q-shifted factorial is defined for integer indices of both signs:
//!
//! ```text
//! (a;q)_0 = 1
//! (a;q)_n = (1 - a)(1 - aq) ... (1 - aq^(n-1))        n > 0
//! (a;q)_n = 1 / [(1 - a/q)(1 - a/q^2) ... (1 - a/q^-n)] n < 0
//! ```
//!
//! For negative `n` a factor `1/(1 - 1)` can occur; such a value is reported as
//! infinite rather than as an error, and its reciprocal is exactly zero. This
//! convention is what makes `1/(q;q)_j` vanish for `j < 0`.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute threshold on `|1 - a q^k|` below which a factor is treated as an exact zero.
pub const INFINITE_TOL: f64 = 1e-14;

/// Threshold on `|q^(z+k) - 1|` used by the q-gamma pole check.
pub const GAMMA_POLE_TOL: f64 = 1e-10;

/// Default relative accuracy for infinite products.
pub const DEFAULT_INF_TOL: f64 = 1e-17;

/// Bits of mantissa carried by the default backend.
pub const DEFAULT_PRECISION_BITS: u32 = f64::MANTISSA_DIGITS;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The base `q` with `0 < |q| < 1` and its cached principal logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBase {
    q: Complex64,
    log_q: Complex64,
    precision_bits: u32,
}

impl QBase {
    pub fn new(q: Complex64) -> Result<Self> {
        let modulus = q.norm();
        if !(modulus > 0.0 && modulus < 1.0) || !q.is_finite() {
            return Err(Error::InvalidBase(q));
        }
        Ok(QBase {
            q,
            log_q: q.ln(),
            precision_bits: DEFAULT_PRECISION_BITS,
        })
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    #[inline]
    pub fn q(&self) -> Complex64 {
        self.q
    }

    #[inline]
    pub fn log_q(&self) -> Complex64 {
        self.log_q
    }

    #[inline]
    pub fn modulus(&self) -> f64 {
        self.q.norm()
    }

    /// Working precision of the backend in bits. Only double precision is implemented.
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// `q^x = exp(x log q)` on the principal branch.
    #[inline]
    pub fn pow(&self, x: Complex64) -> Complex64 {
        (x * self.log_q).exp()
    }

    #[inline]
    pub fn pow_real(&self, x: f64) -> Complex64 {
        (self.log_q * x).exp()
    }

    #[inline]
    pub fn powi(&self, n: i64) -> Complex64 {
        if n >= i32::MIN as i64 && n <= i32::MAX as i64 {
            self.q.powi(n as i32)
        } else {
            self.pow_real(n as f64)
        }
    }
}

/// An exponent `x`; the quantity used in formulas is `q^x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QExponent(pub Complex64);

impl QExponent {
    pub fn new(re: f64, im: f64) -> Self {
        QExponent(Complex64::new(re, im))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn power(self, base: &QBase) -> Complex64 {
        base.pow(self.0)
    }
}

impl From<f64> for QExponent {
    fn from(x: f64) -> Self {
        QExponent(Complex64::new(x, 0.0))
    }
}

impl From<Complex64> for QExponent {
    fn from(x: Complex64) -> Self {
        QExponent(x)
    }
}

impl Add for QExponent {
    type Output = QExponent;
    fn add(self, rhs: QExponent) -> QExponent {
        QExponent(self.0 + rhs.0)
    }
}

impl Add<f64> for QExponent {
    type Output = QExponent;
    fn add(self, rhs: f64) -> QExponent {
        QExponent(self.0 + rhs)
    }
}

impl Sub for QExponent {
    type Output = QExponent;
    fn sub(self, rhs: QExponent) -> QExponent {
        QExponent(self.0 - rhs.0)
    }
}

impl Neg for QExponent {
    type Output = QExponent;
    fn neg(self) -> QExponent {
        QExponent(-self.0)
    }
}

/// Value of a q-shifted factorial, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPochhammerValue {
    pub value: Complex64,
    pub is_infinite: bool,
}

impl QPochhammerValue {
    pub fn finite(value: Complex64) -> Self {
        QPochhammerValue {
            value,
            is_infinite: false,
        }
    }

    pub fn infinite() -> Self {
        QPochhammerValue {
            value: Complex64::new(f64::INFINITY, 0.0),
            is_infinite: true,
        }
    }

    /// `1/value`, exactly zero for an infinite value.
    pub fn recip(self) -> Complex64 {
        if self.is_infinite {
            ZERO
        } else {
            self.value.inv()
        }
    }

    /// The finite value, or `None` when infinite.
    pub fn finite_value(self) -> Option<Complex64> {
        (!self.is_infinite).then_some(self.value)
    }
}

/// `(a;q)_n` for any integer `n`.
pub fn q_pochhammer(a: Complex64, base: &QBase, n: i64) -> QPochhammerValue {
    let q = base.q();
    let mut acc = ONE;
    if n >= 0 {
        let mut x = a;
        for _ in 0..n {
            let factor = ONE - x;
            if factor.norm() < INFINITE_TOL {
                return QPochhammerValue::finite(ZERO);
            }
            acc *= factor;
            x *= q;
        }
        QPochhammerValue::finite(acc)
    } else {
        let q_inv = q.inv();
        let mut x = a * q_inv;
        for _ in 0..(-n) {
            let factor = ONE - x;
            if factor.norm() < INFINITE_TOL {
                return QPochhammerValue::infinite();
            }
            acc *= factor;
            x *= q_inv;
        }
        QPochhammerValue::finite(acc.inv())
    }
}

/// `(a_1;q)_{n_1} ... (a_r;q)_{n_r}`; infinite as soon as one factor is.
pub fn q_pochhammer_product(a: &[Complex64], n: &[i64], base: &QBase) -> QPochhammerValue {
    debug_assert_eq!(a.len(), n.len());
    let mut acc = ONE;
    for (&ai, &ni) in a.iter().zip(n) {
        let v = q_pochhammer(ai, base, ni);
        if v.is_infinite {
            return QPochhammerValue::infinite();
        }
        acc *= v.value;
    }
    QPochhammerValue::finite(acc)
}

/// Accumulates a ratio of q-shifted factorials, honouring the infinite convention:
/// an infinite factor in the denominator makes the whole ratio exactly zero.
#[derive(Debug, Clone, Copy)]
pub struct PochhammerRatio {
    value: Complex64,
    numer_infinite: bool,
    denom_infinite: bool,
    denom_zero: bool,
}

impl PochhammerRatio {
    pub fn new(scale: Complex64) -> Self {
        PochhammerRatio {
            value: scale,
            numer_infinite: false,
            denom_infinite: false,
            denom_zero: false,
        }
    }

    pub fn scale(&mut self, c: Complex64) -> &mut Self {
        self.value *= c;
        self
    }

    pub fn numer(&mut self, v: QPochhammerValue) -> &mut Self {
        if v.is_infinite {
            self.numer_infinite = true;
        } else {
            self.value *= v.value;
        }
        self
    }

    pub fn denom(&mut self, v: QPochhammerValue) -> &mut Self {
        if v.is_infinite {
            self.denom_infinite = true;
        } else if v.value == ZERO {
            self.denom_zero = true;
        } else {
            self.value /= v.value;
        }
        self
    }

    pub fn resolve(&self, context: &str) -> Result<Complex64> {
        match (self.numer_infinite, self.denom_infinite, self.denom_zero) {
            (false, true, _) => Ok(ZERO),
            (false, false, false) => Ok(self.value),
            (false, false, true) => Err(Error::DegenerateDenominator(format!(
                "{context}: a denominator factor vanishes"
            ))),
            (true, _, _) => Err(Error::DegenerateDenominator(format!(
                "{context}: a numerator factor is infinite"
            ))),
        }
    }
}

/// `(a;q)_inf` to relative accuracy `tol`.
///
/// The product stops at the first `K` with `|a| |q|^K < tol (1 - |q|)`, which bounds
/// the logarithm of the discarded tail by `tol`.
pub fn q_pochhammer_inf(a: Complex64, base: &QBase, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let q = base.q();
    let qa = base.modulus();
    let threshold = tol * (1.0 - qa);
    let mut x = a;
    let mut acc = ONE;
    while x.norm() >= threshold {
        let factor = ONE - x;
        if factor.norm() < INFINITE_TOL {
            return Ok(ZERO);
        }
        acc *= factor;
        x *= q;
    }
    Ok(acc)
}

/// `(a;q)_inf` at the default accuracy.
pub fn q_pochhammer_infinite(a: Complex64, base: &QBase) -> Complex64 {
    q_pochhammer_inf(a, base, DEFAULT_INF_TOL).expect("default tolerance is positive")
}

/// The q-gamma function `(1-q)^(1-z) (q;q)_inf / (q^z;q)_inf`.
pub fn q_gamma(z: QExponent, base: &QBase) -> Result<Complex64> {
    let q = base.q();
    let mut x = base.pow(z.0);
    let mut k = 0usize;
    while x.norm() > 0.5 {
        if (x - ONE).norm() < GAMMA_POLE_TOL {
            return Err(Error::GammaPole { z: z.0, k });
        }
        x *= q;
        k += 1;
    }
    let prefactor = ((ONE - z.0) * (ONE - q).ln()).exp();
    let numer = q_pochhammer_infinite(q, base);
    let denom = q_pochhammer_infinite(base.pow(z.0), base);
    Ok(prefactor * numer / denom)
}

/// Gaussian binomial coefficient; zero outside `0 <= j <= n`.
pub fn q_binomial(n: i64, j: i64, base: &QBase) -> Complex64 {
    if j < 0 || j > n {
        return ZERO;
    }
    let numer = q_pochhammer(base.powi(n - j + 1), base, j).value;
    let denom = q_pochhammer(base.q(), base, j).value;
    numer / denom
}

/// Coefficients `c_0..c_n` of the Gauss expansion `(a;q)_n = sum_j c_j a^j`,
/// `c_j = [n j]_q q^(j(j-1)/2) (-1)^j`. They do not depend on `a`.
pub fn gauss_coefficients(n: usize, base: &QBase) -> Vec<Complex64> {
    let n = n as i64;
    (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            q_binomial(n, j, base) * base.powi(j * (j - 1) / 2) * sign
        })
        .collect()
}

/// `D_0..D_{p+1+t+}` with `(Wz;q)_{p+1} (z;q)_{t+} = sum_j D_j (-z)^j`.
///
/// `p >= -1` and `t_plus >= 0`; when `p = -1` the first factor is empty.
pub fn d_coefficients(w: Complex64, p: i64, t_plus: i64, base: &QBase) -> Vec<Complex64> {
    assert!(p >= -1 && t_plus >= 0, "p >= -1 and t_plus >= 0 required");
    let w_part: Vec<Complex64> = (0..=p + 1)
        .map(|h| q_binomial(p + 1, h, base) * base.powi(h * (h - 1) / 2) * w.powi(h as i32))
        .collect();
    let z_part: Vec<Complex64> = (0..=t_plus)
        .map(|g| q_binomial(t_plus, g, base) * base.powi(g * (g - 1) / 2))
        .collect();
    let mut d = vec![ZERO; w_part.len() + z_part.len() - 1];
    for (h, wh) in w_part.iter().enumerate() {
        for (g, zg) in z_part.iter().enumerate() {
            d[h + g] += wh * zg;
        }
    }
    d
}
