//! The confluent identity (`s < r`): a standard `s phi r-1` series at
//! `W q^((s-r) a_i) z` paired with a Bailey-Slater `s phi-hat r-1` series at `z`.

use num_complex::Complex64;

use crate::duality::{
    beta_table_for, identity_case, lhs_eval_for, rhs_from_table, summation_case, BetaTable, DualityFamily, ParamView,
    ParameterFamily, QParams, EPS_INT,
};
use crate::error::{Error, Result};
use crate::qcore::QBase;
use crate::report::ResidualReport;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfluentParams {
    base: QBase,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    m: Vec<i64>,
    n: Vec<i64>,
    t: i64,
}

impl ConfluentParams {
    /// `a` and `n` have length `r >= 1`; `b` and `m` have length `s < r`.
    pub fn new(base: QBase, a: Vec<Complex64>, b: Vec<Complex64>, m: Vec<i64>, n: Vec<i64>, t: i64) -> Result<Self> {
        let (r, s) = (a.len(), b.len());
        if r == 0 || s >= r {
            return Err(Error::InvalidParams(format!("need 0 <= s < r, got r = {r}, s = {s}")));
        }
        if n.len() != r || m.len() != s {
            return Err(Error::InvalidParams(format!(
                "lengths n = {} (want {r}) and m = {} (want {s})",
                n.len(),
                m.len()
            )));
        }
        crate::duality::check_non_integer_differences(&a, EPS_INT)?;
        Ok(ConfluentParams { base, a, b, m, n, t })
    }

    pub fn with_t(&self, t: i64) -> Self {
        ConfluentParams { t, ..self.clone() }
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
    pub fn s(&self) -> usize {
        self.b.len()
    }

    pub fn w(&self) -> Complex64 {
        self.view().w()
    }

    /// `p' = floor((M - N - r - t + 1) / (r - s))`.
    pub fn p_prime(&self) -> i64 {
        let v = self.view();
        let num = v.big_m() - v.big_n() - self.r() as i64 - self.t + 1;
        num.div_euclid((self.r() - self.s()) as i64)
    }

    /// `K = max(-m_min - 1, p') + t+`; for `s = 0` only `p'` remains.
    pub fn big_k(&self) -> i64 {
        let v = self.view();
        let head = match v.m_min() {
            Some(mm) => (-mm - 1).max(self.p_prime()),
            None => self.p_prime(),
        };
        head + v.t_plus()
    }
}

impl ParameterFamily for ConfluentParams {
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

impl DualityFamily for ConfluentParams {
    const CHECK: &'static str = "confluent";

    fn w_factor_len(&self) -> i64 {
        0
    }

    fn k_range(&self) -> (i64, i64) {
        (-self.view().n_max(), self.big_k())
    }
}

pub fn confluent_lhs_eval(params: &ConfluentParams, z: Complex64, tol: f64) -> Result<Complex64> {
    lhs_eval_for(params, z, tol)
}

pub fn confluent_beta_table(params: &ConfluentParams) -> Result<BetaTable> {
    beta_table_for(params)
}

pub fn confluent_rhs_eval(params: &ConfluentParams, z: Complex64) -> Result<Complex64> {
    let table = beta_table_for(params)?;
    Ok(rhs_from_table(params, &table, z)?.0)
}

pub fn confluent_residual(params: &ConfluentParams, z_samples: &[Complex64], tol: f64) -> ResidualReport {
    ResidualReport::single(identity_case(params, 0, z_samples, tol))
}

/// Summation corollary of the confluent identity.
pub fn prop3_check(params: &ConfluentParams, tol: f64) -> ResidualReport {
    ResidualReport::single(summation_case(params, 0, "prop3", tol))
}

/// The balanced `r = 2` parameters whose limit `b_2 -> -infinity` is the confluent
/// `(r, s) = (2, 1)` family: `b = (b_1, -depth)` and `m = (m_1, 0)`.
pub fn balanced_lift(params: &ConfluentParams, depth: f64) -> Result<QParams> {
    if params.r() != 2 || params.s() != 1 {
        return Err(Error::InvalidParams("the lift is defined for (r, s) = (2, 1)".into()));
    }
    QParams::new(
        params.base,
        params.a.clone(),
        vec![params.b[0], Complex64::new(-depth, 0.0)],
        vec![params.m[0], 0],
        params.n.clone(),
        params.t,
    )
}

/// `|LHS_balanced(z) - LHS_confluent(z)|` for the lift at `depth`.
pub fn confluence_gap(params: &ConfluentParams, depth: f64, z: Complex64, tol: f64) -> Result<f64> {
    let lifted = balanced_lift(params, depth)?;
    Ok((lhs_eval_for(&lifted, z, tol)? - lhs_eval_for(params, z, tol)?).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{alpha_coeff, gamma_coeff, SERIES_TOL};
    use crate::oracle::recover_beta_detailed;
    use crate::random::{admissible_z, case_rng, draw_confluent, SweepBounds};
    use crate::report::Status;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn draw(id: u64, r: usize, s: usize) -> ConfluentParams {
        let bounds = SweepBounds {
            q_values: vec![0.2, 0.5],
            ..SweepBounds::default()
        };
        draw_confluent(&mut case_rng(31, id), r, s, &bounds)
    }

    #[test]
    fn validation_and_support() {
        let base = QBase::real(0.5).unwrap();
        assert!(ConfluentParams::new(
            base,
            vec![c(0.1), c(0.4)],
            vec![c(0.2), c(0.3)],
            vec![0, 0],
            vec![0, 0],
            0
        )
        .is_err());
        let p = ConfluentParams::new(base, vec![c(0.1), c(0.4)], vec![c(0.2)], vec![0], vec![0, 0], 0).unwrap();
        assert_eq!(p.p_prime(), -1);
        assert_eq!(p.k_range(), (0, -1));
        let p0 = ConfluentParams::new(base, vec![c(0.1), c(0.4)], vec![], vec![], vec![1, 0], 2).unwrap();
        assert_eq!(p0.p_prime(), (-1i64 - 2 - 2 + 1).div_euclid(2));
        assert_eq!(p0.big_k(), p0.p_prime() + 2);
    }

    #[test]
    fn two_one_minimal_case_by_hand() {
        // K = -1 here: the only candidate row k = 0 is the two-term gamma sum,
        // which cancels exactly, so the left side vanishes identically.
        let base = QBase::real(0.5).unwrap();
        let p = ConfluentParams::new(base, vec![c(0.3), c(0.85)], vec![c(0.6)], vec![0], vec![0, 0], 0).unwrap();
        let table = confluent_beta_table(&p).unwrap();
        assert!(table.is_empty());
        let q = |x: f64| base.pow_real(x);
        let first = q(0.3) / (c(1.0) - q(0.3 - 0.85));
        let second = q(0.85) / (c(1.0) - q(0.85 - 0.3));
        let v = p.view();
        let g0 = crate::duality::gamma_view(&v, 0, 0, 0).unwrap();
        let g1 = crate::duality::gamma_view(&v, 1, 0, 0).unwrap();
        assert!((g0 - first).norm() < 1e-14 && (g1 - second).norm() < 1e-14);
        assert!((first + second).norm() < 1e-14 * first.norm());
        let z = Complex64::new(0.2, 0.1);
        let terms = crate::duality::lhs_terms(&p, z, SERIES_TOL).unwrap();
        let sum: Complex64 = terms.iter().sum();
        assert!(sum.norm() < 1e-13 * terms[0].norm());
    }

    #[test]
    fn random_identity_and_sampling() {
        for (id, (r, s)) in [(2, 1), (3, 1), (3, 2), (2, 0), (3, 0)]
            .iter()
            .cycle()
            .take(30)
            .enumerate()
        {
            let p = draw(id as u64, *r, *s);
            let mut rng = case_rng(32, id as u64);
            let zs = admissible_z(&mut rng, p.admissible_radius(), &p.rhs_poles(), 5);
            let report = confluent_residual(&p, &zs, 1e-8);
            assert_eq!(report.cases[0].status, Status::Pass, "{:?}", report.cases[0]);
            let table = confluent_beta_table(&p).unwrap();
            let rec = recover_beta_detailed(&p, 1e-8).unwrap();
            assert!(table.max_weighted_difference(&rec.table, rec.radius) < 1e-7);
        }
    }

    #[test]
    fn summation_vanishes_for_nonpositive_t() {
        for id in 0..12 {
            let p = draw(100 + id, 3, 1 + (id % 2) as usize);
            for t in [-2, 0, 1, 2] {
                let report = prop3_check(&p.with_t(t), 1e-8);
                let case = &report.cases[0];
                assert!(report.all_passed(), "t {t}: {case:?}");
                if t <= 0 {
                    assert_eq!(case.samples[0].rhs, [0.0, 0.0]);
                }
                // Flagged cases still agree up to the roundoff of the cancelling sum.
                let sample = &case.samples[0];
                assert!(
                    sample.residual <= 1e-8f64.max(1e-14 * sample.condition),
                    "t {t}: {case:?}"
                );
            }
        }
    }

    #[test]
    fn small_z_is_dominated_by_heads() {
        let p = draw(7, 3, 1);
        let z = c(1e-6);
        let lhs = confluent_lhs_eval(&p, z, SERIES_TOL).unwrap();
        let n_max = p.view().n_max();
        let head: Complex64 = (0..p.r())
            .filter(|&i| p.n()[i] == n_max)
            .map(|i| {
                let v = p.view();
                let mut x = v.base.pow(v.a[i] * (1.0 - p.t() as f64));
                for (bl, ml) in v.b.iter().zip(v.m) {
                    x *= crate::qcore::q_pochhammer(v.base.pow(1.0 - bl + v.a[i]), &v.base, ml - v.n[i]).value;
                }
                for (l, (al, nl)) in v.a.iter().zip(v.n).enumerate() {
                    if l != i {
                        x /= crate::qcore::q_pochhammer(v.base.pow(v.a[i] - al), &v.base, nl - v.n[i] + 1).value;
                    }
                }
                x * z.powi(-n_max as i32)
            })
            .sum();
        assert!((lhs - head).norm() < 1e-4 * head.norm());
    }

    #[test]
    fn balanced_limit_converges_geometrically() {
        let base = QBase::real(0.5).unwrap();
        let p = ConfluentParams::new(base, vec![c(0.27), c(0.64)], vec![c(0.45)], vec![1], vec![0, 1], 1).unwrap();
        let z = Complex64::new(0.12, 0.08);
        let gaps: Vec<f64> = [10.0, 20.0, 30.0]
            .iter()
            .map(|&d| confluence_gap(&p, d, z, SERIES_TOL).unwrap())
            .collect();
        assert!(gaps[1] < gaps[0] * 1e-2 && gaps[2] < gaps[1] * 1e-2, "{gaps:?}");
        // The lifted balanced set is itself a valid identity.
        let lifted = balanced_lift(&p, 10.0).unwrap();
        assert!(alpha_coeff(&lifted, 0).is_ok());
        let _ = gamma_coeff(&lifted, 0, 0, 0).unwrap();
    }
}
