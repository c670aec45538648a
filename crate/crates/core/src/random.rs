//! Seeded parameter and sample-point generators.
//!
//! Every case owns an independent ChaCha20 stream: the generator is seeded with the
//! run seed and then switched to stream `case_id`, so adding cases never perturbs
//! the draws of earlier ones.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::confluent::ConfluentParams;
use crate::duality::QParams;
use crate::qcore::QBase;

/// Minimum spacing of the `a_i` real parts modulo 1.
pub const A_SPACING: f64 = 0.05;

/// Bound on imaginary parts when complex exponents are enabled.
pub const MAX_IMAG: f64 = 0.2;

/// The generator for case `case_id` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case_id: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(case_id);
    rng
}

/// Ranges for randomly drawn parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepBounds {
    pub m_bound: i64,
    pub n_bound: i64,
    pub t_bound: i64,
    pub q_values: Vec<f64>,
    pub complex_parts: bool,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            m_bound: 3,
            n_bound: 3,
            t_bound: 3,
            q_values: vec![0.2, 0.5],
            complex_parts: false,
        }
    }
}

fn frac_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// `count` exponents with real parts in `(0, 2)`; with `spaced`, real parts are
/// pairwise at least [`A_SPACING`] apart modulo 1.
pub fn draw_exponents<R: Rng>(rng: &mut R, count: usize, spaced: bool, complex: bool) -> Vec<Complex64> {
    let mut reals: Vec<f64> = Vec::with_capacity(count);
    while reals.len() < count {
        let x: f64 = rng.gen_range(0.0..2.0);
        if x == 0.0 {
            continue;
        }
        if spaced && reals.iter().any(|&y| frac_distance(x, y) < A_SPACING) {
            continue;
        }
        reals.push(x);
    }
    reals
        .into_iter()
        .map(|re| {
            let im = if complex {
                rng.gen_range(-MAX_IMAG..=MAX_IMAG)
            } else {
                0.0
            };
            Complex64::new(re, im)
        })
        .collect()
}

pub fn draw_ints<R: Rng>(rng: &mut R, count: usize, bound: i64) -> Vec<i64> {
    (0..count).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub fn draw_base<R: Rng>(rng: &mut R, q_values: &[f64]) -> QBase {
    let q = *q_values.choose(rng).expect("at least one q value");
    QBase::real(q).expect("configured q lies in (0, 1)")
}

/// A balanced parameter set with `r` terms.
pub fn draw_qparams<R: Rng>(rng: &mut R, r: usize, bounds: &SweepBounds) -> QParams {
    let base = draw_base(rng, &bounds.q_values);
    let a = draw_exponents(rng, r, true, bounds.complex_parts);
    let b = draw_exponents(rng, r, false, bounds.complex_parts);
    let m = draw_ints(rng, r, bounds.m_bound);
    let n = draw_ints(rng, r, bounds.n_bound);
    let t = rng.gen_range(-bounds.t_bound..=bounds.t_bound);
    QParams::new(base, a, b, m, n, t).expect("spaced exponents satisfy the hypotheses")
}

/// A confluent parameter set with `r` exponents `a` and `s < r` exponents `b`.
pub fn draw_confluent<R: Rng>(rng: &mut R, r: usize, s: usize, bounds: &SweepBounds) -> ConfluentParams {
    let base = draw_base(rng, &bounds.q_values);
    let a = draw_exponents(rng, r, true, bounds.complex_parts);
    let b = draw_exponents(rng, s, false, bounds.complex_parts);
    let m = draw_ints(rng, s, bounds.m_bound);
    let n = draw_ints(rng, r, bounds.n_bound);
    let t = rng.gen_range(-bounds.t_bound..=bounds.t_bound);
    ConfluentParams::new(base, a, b, m, n, t).expect("spaced exponents satisfy the hypotheses")
}

/// `count` points in the annulus `radius/4 <= |z| <= radius`, each at distance at
/// least `radius/20` from every pole.
pub fn admissible_z<R: Rng>(rng: &mut R, radius: f64, poles: &[Complex64], count: usize) -> Vec<Complex64> {
    let clearance = 0.05 * radius;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rho = rng.gen_range(0.25 * radius..=radius);
        let theta = rng.gen_range(0.0..TAU);
        let z = Complex64::from_polar(rho, theta);
        if poles.iter().all(|p| (z - p).norm() >= clearance) {
            out.push(z);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_and_reproducible() {
        let x: Vec<u64> = (0..4).map(|_| case_rng(7, 3).gen()).collect();
        let mut rng = case_rng(7, 3);
        let y: Vec<u64> = (0..4).map(|_| rng.gen()).collect();
        let mut other = case_rng(7, 4);
        let w: u64 = other.gen();
        assert_eq!(x[0], y[0]);
        assert_ne!(y[0], w);
    }

    #[test]
    fn spacing_and_bounds() {
        let mut rng = case_rng(1, 0);
        let bounds = SweepBounds {
            complex_parts: true,
            ..SweepBounds::default()
        };
        for r in 2..=4 {
            let p = draw_qparams(&mut rng, r, &bounds);
            for i in 0..r {
                assert!(p.a()[i].im.abs() <= MAX_IMAG && p.b()[i].re > 0.0 && p.b()[i].re < 2.0);
                assert!(p.m()[i].abs() <= 3 && p.n()[i].abs() <= 3);
                for j in 0..i {
                    assert!(frac_distance(p.a()[i].re, p.a()[j].re) >= A_SPACING);
                }
            }
        }
    }

    #[test]
    fn sample_points_stay_in_annulus() {
        let mut rng = case_rng(2, 0);
        let poles = [Complex64::new(0.3, 0.0)];
        for z in admissible_z(&mut rng, 0.4, &poles, 200) {
            assert!(z.norm() >= 0.1 - 1e-15 && z.norm() <= 0.4 + 1e-15);
            assert!((z - poles[0]).norm() >= 0.02);
        }
    }
}
