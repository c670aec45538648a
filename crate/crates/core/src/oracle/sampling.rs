use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::duality::{lhs_eval_for, rhs_denominator, BetaTable, DualityFamily, SERIES_TOL};
use crate::error::{Error, Result};

/// Largest acceptable condition number of the scaled Vandermonde matrix.
pub const MAX_CONDITION: f64 = 1e8;

/// Number of sample circles tried before giving up.
pub const MAX_ATTEMPTS: usize = 5;

/// Result of one recovery: the table plus diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovery {
    pub table: BetaTable,
    /// Radius of the sample circle.
    pub radius: f64,
    /// Relative mismatch at the held-out check point.
    pub check_residual: f64,
    pub condition: f64,
    pub attempts: usize,
}

/// `z^{n_max} (Wz;q)_L (z;q)_{t+} LHS(z)`, a polynomial in `z`.
fn cleared_lhs<P: DualityFamily + ?Sized>(family: &P, z: Complex64) -> Result<Complex64> {
    let shift = -family.k_range().0;
    Ok(z.powi(shift as i32) * rhs_denominator(family, z) * lhs_eval_for(family, z, SERIES_TOL)?)
}

fn horner(coeffs: &[Complex64], u: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
}

/// Recover `beta` on the circle `|z| = radius` from `d + 1` equally spaced samples
/// starting at angle `phase`, plus one check point at `0.6 radius`.
pub fn recover_on_circle<P: DualityFamily + ?Sized>(family: &P, radius: f64, phase: f64) -> Result<Recovery> {
    let (k_lo, k_hi) = family.k_range();
    if k_hi < k_lo {
        return Ok(Recovery {
            table: BetaTable::new(k_lo, k_hi, Vec::new(), 0.0),
            radius,
            check_residual: 0.0,
            condition: 1.0,
            attempts: 1,
        });
    }
    let size = (k_hi - k_lo + 1) as usize;
    let nodes: Vec<Complex64> = (0..size)
        .map(|u| Complex64::from_polar(1.0, phase + TAU * u as f64 / size as f64))
        .collect();
    let values = nodes
        .iter()
        .map(|&u| cleared_lhs(family, u * radius))
        .collect::<Result<Vec<_>>>()?;
    let matrix = DMatrix::from_fn(size, size, |row, col| nodes[row].powi(col as i32));
    let singular = matrix.clone().singular_values();
    let condition = singular.max() / singular.min();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition));
    }
    let scaled = matrix
        .lu()
        .solve(&DVector::from_vec(values.clone()))
        .ok_or(Error::IllConditioned(f64::INFINITY))?;
    let scaled: Vec<Complex64> = scaled.iter().copied().collect();

    let check_u = Complex64::from_polar(0.6, phase + TAU * 0.5 / size as f64);
    let expected = cleared_lhs(family, check_u * radius)?;
    let magnitude = values.iter().map(|v| v.norm()).fold(expected.norm(), f64::max);
    let check_residual = (horner(&scaled, check_u) - expected).norm() / magnitude.max(f64::MIN_POSITIVE);

    let coeffs: Vec<Complex64> = scaled
        .iter()
        .enumerate()
        .map(|(j, e)| e / radius.powi(j as i32))
        .collect();
    Ok(Recovery {
        table: BetaTable::new(k_lo, k_hi, coeffs, magnitude),
        radius,
        check_residual,
        condition,
        attempts: 1,
    })
}

/// Recover `beta` from left-hand samples on the admissible circle, retrying at
/// rotated phases while the check point disagrees by more than `tol`.
pub fn recover_beta_detailed<P: DualityFamily + ?Sized>(family: &P, tol: f64) -> Result<Recovery> {
    let radius = family.admissible_radius();
    let mut last_err = Error::Inconsistent(f64::NAN);
    for attempt in 0..MAX_ATTEMPTS {
        let phase = 0.3 + 0.77 * attempt as f64;
        match recover_on_circle(family, radius, phase) {
            Ok(rec) if rec.check_residual <= tol => {
                return Ok(Recovery {
                    attempts: attempt + 1,
                    ..rec
                })
            }
            Ok(rec) => last_err = Error::Inconsistent(rec.check_residual),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

pub fn recover_beta_by_sampling<P: DualityFamily + ?Sized>(family: &P, tol: f64) -> Result<BetaTable> {
    Ok(recover_beta_detailed(family, tol)?.table)
}
