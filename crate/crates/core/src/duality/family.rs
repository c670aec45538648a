use num_complex::Complex64;

use super::params::{ParamView, ParameterFamily, QParams};

/// A parameter family with a duality identity of the shape
///
/// `sum_i T_i(z) = sum_k beta_k z^k / ((Wz;q)_L (z;q)_{t+})`
///
/// where `T_i` pairs a standard series at `W q^((s-r) a_i) z` with a
/// Bailey-Slater series at `z`. The balanced and confluent families differ only
/// in `L` and in the support of `beta`.
pub trait DualityFamily: ParameterFamily + Sync {
    /// Short identifier used in reports.
    const CHECK: &'static str;

    /// `L`, the length of the `(Wz;q)` factor on the right-hand side.
    fn w_factor_len(&self) -> i64;

    /// Inclusive support `[k_lo, k_hi]` of `beta`.
    fn k_range(&self) -> (i64, i64);

    /// Factor `W q^((s-r) a_i)` multiplying `z` in the first series of term `i`.
    fn first_argument_scale(&self, i: usize) -> Complex64 {
        let v = self.view();
        let shift = (v.s() as f64 - v.r() as f64) * v.a[i];
        v.w() * v.base.pow(shift)
    }

    /// Radius of the disc in which both series factors converge comfortably.
    fn admissible_radius(&self) -> f64 {
        let r = self.view().r();
        let biggest = (0..r).map(|i| self.first_argument_scale(i).norm()).fold(1.0, f64::max);
        0.4 / biggest
    }

    /// Zeros of the right-hand denominator.
    fn rhs_poles(&self) -> Vec<Complex64> {
        let v: ParamView<'_> = self.view();
        let w = v.w();
        let mut poles: Vec<Complex64> = (0..self.w_factor_len()).map(|u| v.base.powi(-u) / w).collect();
        poles.extend((0..v.t_plus()).map(|u| v.base.powi(-u)));
        poles
    }
}

impl DualityFamily for QParams {
    const CHECK: &'static str = "theorem1";

    fn w_factor_len(&self) -> i64 {
        self.p() + 1
    }

    fn k_range(&self) -> (i64, i64) {
        QParams::k_range(self)
    }
}
