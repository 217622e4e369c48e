//! Residual checks of the identities tying `R`, `Θ`, `A₁` and `ℛ` together.

use num_complex::Complex64;

use super::fd::{self, FdEstimate};
use super::jacobi::{
    du_r, du_r_at_special, dv_a1_odd, exponential_period_closed, exponential_period_integral,
    period_integral_gamma, period_integral_quadrature, r_fn, script_r, theta_jacobi_dv,
};
use super::{NumericConfig, Tau};
use crate::error::{Error, Result};
use crate::qseries::{lambda_odd_series, theta_series};
use crate::rankin::check_cohen_binomial_identities;
use crate::report::{Failure, ResidualRecord, VerificationReport};

pub const TOL_R: f64 = 1e-10;
pub const TOL_DR: f64 = 1e-8;
pub const TOL_EQFIN_M0: f64 = 1e-8;
pub const TOL_EQFIN_M1: f64 = 1e-4;
pub const TOL_HEAT: f64 = 1e-4;
pub const TOL_APPELL: f64 = 1e-9;
pub const TOL_DIFF_THETA: f64 = 1e-10;
pub const TOL_ROUTES: f64 = 1e-9;

/// A finite-difference estimate whose `h` and `h/2` values differ by more
/// than this multiple of the check tolerance is rejected.
const STEP_LIMIT_FACTOR: f64 = 100.0;

/// Terms of the exact `Λ` series kept for the Appell–Lerch comparison.
const LAMBDA_PREC: usize = 40;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn record(check: impl Into<String>, tau: Tau, cfg: &NumericConfig, residual: f64, tol: f64) -> ResidualRecord {
    ResidualRecord::new(check, tau.as_pair(), cfg.record(), residual, tol)
}

fn guard_step(est: &FdEstimate, tol: f64) -> Result<()> {
    let limit = STEP_LIMIT_FACTOR * tol;
    let disagreement = est.disagreement();
    if !(disagreement <= limit) {
        return Err(Error::StepTooLarge { disagreement, limit });
    }
    Ok(())
}

/// `R(−τ−½; 2τ) = iq^{1/4}`, `R(−τ−1; 2τ) = −q^{1/4}` and the two `D_u R`
/// identities against the period integrals of `ϑ(z)` and `ϑ(z+½)`.
pub fn check_r_identities(tau: Tau, cfg: &NumericConfig) -> Result<Vec<ResidualRecord>> {
    cfg.validate()?;
    let t = tau.value();
    let t2 = tau.scale(2.0);
    let q4 = tau.q_pow(0.25);
    let i = c(0.0, 1.0);
    let pi = std::f64::consts::PI;

    let r1 = (r_fn(-t - 0.5, t2, cfg) - i * q4).norm();
    let r2 = (r_fn(-t - 1.0, t2, cfg) + q4).norm();

    let integral = period_integral_quadrature(tau, false, cfg);
    let dr1_rhs = c(-1.0, 1.0) / (4.0 * pi) * q4 * integral - i * 0.5 * q4;
    let dr1 = (du_r_at_special(tau, cfg) - dr1_rhs).norm();

    let twisted = period_integral_quadrature(tau, true, cfg);
    let dr2_rhs = -c(1.0, 1.0) / (4.0 * pi) * q4 * twisted + q4 * 0.5;
    let dr2 = (du_r(-t - 1.0, t2, cfg) - dr2_rhs).norm();

    Ok(vec![
        record("R1", tau, cfg, r1, TOL_R),
        record("R2", tau, cfg, r2, TOL_R),
        record("DR1", tau, cfg, dr1, TOL_DR),
        record("DR2", tau, cfg, dr2, TOL_DR),
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatOutcome {
    /// `|(2D_τ + D_u²)R|` from Richardson-extrapolated derivatives.
    pub record: ResidualRecord,
    /// The same residual from plain differences at `h` and `h/2`.
    pub coarse: f64,
    pub fine: f64,
}

impl HeatOutcome {
    /// Close to 4 when the plain residual is dominated by the `O(h²)` error.
    pub fn convergence_ratio(&self) -> f64 {
        self.coarse / self.fine
    }
}

/// Residual of `2D_τ R + D_u² R` at `(u, τ)`.
pub fn check_heat(u: Complex64, tau: Tau, cfg: &NumericConfig) -> Result<HeatOutcome> {
    cfg.validate()?;
    let dtau = fd::wirtinger(&|t: Complex64| r_fn(u, Tau(t), cfg), tau.value(), 1, cfg.h);
    let du2 = fd::wirtinger(&|z: Complex64| r_fn(z, tau, cfg), u, 2, cfg.h);
    let combined = FdEstimate {
        value: dtau.value * 2.0 + du2.value,
        coarse: dtau.coarse * 2.0 + du2.coarse,
        fine: dtau.fine * 2.0 + du2.fine,
    };
    guard_step(&combined, TOL_HEAT)?;
    Ok(HeatOutcome {
        record: record("heat", tau, cfg, combined.value.norm(), TOL_HEAT),
        coarse: combined.coarse.norm(),
        fine: combined.fine.norm(),
    })
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

struct ThetaSide {
    name: String,
    r: u32,
    lhs: Complex64,
    rhs: Complex64,
}

fn diff_theta_sides(r_max: u32, tau: Tau, cfg: &NumericConfig) -> Result<Vec<ThetaSide>> {
    cfg.validate()?;
    if r_max > 6 {
        return Err(Error::Domain(format!("r_max must be at most 6, got {r_max}")));
    }
    let t = tau.value();
    let t2 = tau.scale(2.0);
    let q = tau.q_pow(1.0);
    let q_m4 = tau.q_pow(-0.25);
    let theta = theta_series(cfg.trunc * cfg.trunc);
    let mut plain = Vec::new();
    let mut shifted = Vec::new();
    for s in 0..=r_max / 2 {
        let d = theta.d_tau_pow(s);
        shifted.push(d.half_shift().eval(q));
        plain.push(d.eval(q));
    }
    let combo = |values: &[Complex64], r: u32| -> Complex64 {
        (0..=r / 2)
            .map(|s| values[s as usize] * (binom(r, 2 * s) * (-0.5f64).powi((r - 2 * s) as i32)))
            .sum()
    };
    let mut out = Vec::new();
    for r in 0..=r_max {
        out.push(ThetaSide {
            name: format!("difftheta.half.r{r}"),
            r,
            lhs: theta_jacobi_dv(r, t + 0.5, t2, cfg),
            rhs: -q_m4 * combo(&plain, r),
        });
        out.push(ThetaSide {
            name: format!("difftheta.one.r{r}"),
            r,
            lhs: theta_jacobi_dv(r, t + 1.0, t2, cfg),
            rhs: c(0.0, 1.0) * q_m4 * combo(&shifted, r),
        });
    }
    Ok(out)
}

/// Residuals of the two expressions for `D_v^r Θ` at `(τ+½; 2τ)` and
/// `(τ+1; 2τ)` through derivatives of `ϑ`, for `r ≤ r_max`.
pub fn diff_theta_residuals(r_max: u32, tau: Tau, cfg: &NumericConfig) -> Result<Vec<ResidualRecord>> {
    Ok(diff_theta_sides(r_max, tau, cfg)?
        .into_iter()
        .map(|s| record(s.name, tau, cfg, (s.lhs - s.rhs).norm(), TOL_DIFF_THETA))
        .collect())
}

pub fn check_diff_theta(r_max: u32, tau: Tau, cfg: &NumericConfig) -> Result<VerificationReport> {
    let sides = diff_theta_sides(r_max, tau, cfg)?;
    let mut report = VerificationReport::new("difftheta", (0, i64::from(r_max)))
        .param("tau", format!("{},{}", tau.re(), tau.im()))
        .param("trunc", cfg.trunc)
        .param("tolerance", format!("{TOL_DIFF_THETA:e}"));
    if let Some(bad) = sides.iter().find(|s| !((s.lhs - s.rhs).norm() < TOL_DIFF_THETA)) {
        report = report.fail(Failure {
            n: i64::from(bad.r),
            lhs: format!("{}", bad.lhs),
            rhs: format!("{}", bad.rhs),
            context: Some(bad.name.clone()),
        });
    }
    Ok(report)
}

/// `D_τ^m ℛ` against its expression through `D_u^j R(−τ−½; 2τ)`, `j ≤ 2m+1`.
///
/// For `m = 0` both sides are closed-form series. For `m = 1` the
/// derivatives `D_τℛ`, `D_u²R` and `D_u³R` come from finite differences.
pub fn check_eqfin1(m: u32, tau: Tau, cfg: &NumericConfig) -> Result<ResidualRecord> {
    cfg.validate()?;
    let t = tau.value();
    let t2 = tau.scale(2.0);
    let u0 = -t - 0.5;
    let mut derivs = vec![r_fn(u0, t2, cfg), du_r_at_special(tau, cfg)];
    let (lhs, tol) = match m {
        0 => (script_r(tau, cfg), TOL_EQFIN_M0),
        1 => {
            let lhs = fd::wirtinger(&|z: Complex64| script_r(Tau(z), cfg), t, 1, cfg.h);
            guard_step(&lhs, TOL_EQFIN_M1)?;
            for order in [2, 3] {
                let est = fd::wirtinger(&|z: Complex64| r_fn(z, t2, cfg), u0, order, cfg.h);
                guard_step(&est, TOL_EQFIN_M1)?;
                derivs.push(est.value);
            }
            (lhs.value, TOL_EQFIN_M1)
        }
        _ => return Err(Error::Domain(format!("only m = 0 and m = 1 are supported, got {m}"))),
    };
    let mut sum = c(0.0, 0.0);
    for l in 0..=m {
        let even = derivs[(2 * l) as usize] * 0.5;
        let odd = derivs[(2 * l + 1) as usize] * (f64::from(2 * (m - l) + 1) / f64::from(2 * l + 1));
        sum += (even + odd) * (binom(2 * m + 1, 2 * l) * 0.25f64.powi((m - l) as i32));
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = c(0.0, -0.25) * tau.q_pow(-0.25) * sum * sign;
    Ok(record(format!("eqfin1.m{m}"), tau, cfg, (lhs - rhs).norm(), tol))
}

/// `Λ_{k,odd}(τ) = ½(D_v^k A₁^odd)(0, τ+½; 2τ)` for `k ∈ {1, 3, 5}`, with the
/// left side summed from the exact divisor-function series.
pub fn check_appell(tau: Tau, cfg: &NumericConfig) -> Result<Vec<ResidualRecord>> {
    cfg.validate()?;
    let q = tau.q_pow(1.0);
    let mut out = Vec::new();
    for k in [1, 3, 5] {
        let exact = lambda_odd_series(k, LAMBDA_PREC)?.eval(q);
        let numeric = dv_a1_odd(k, tau, cfg)? * 0.5;
        out.push(record(format!("appell.k{k}"), tau, cfg, (exact - numeric).norm(), TOL_APPELL));
    }
    Ok(out)
}

/// Incomplete-Gamma series against adaptive quadrature for both period
/// integrals, plus the single-exponential integral formula for `n ≤ 5`
/// (relative residual).
pub fn check_script_r_routes(tau: Tau, cfg: &NumericConfig) -> Result<Vec<ResidualRecord>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for (name, twisted) in [("period.theta", false), ("period.theta_shifted", true)] {
        let a = period_integral_gamma(tau, twisted, cfg);
        let b = period_integral_quadrature(tau, twisted, cfg);
        out.push(record(name, tau, cfg, (a - b).norm(), TOL_ROUTES));
    }
    for n in 1..=5 {
        let closed = exponential_period_closed(n, tau);
        let quad = exponential_period_integral(n, tau);
        out.push(record(format!("period.exp.n{n}"), tau, cfg, (closed - quad).norm() / closed.norm(), TOL_ROUTES));
    }
    Ok(out)
}

/// The named checks exposed by the command line and the C interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Rid,
    Heat,
    Eqfin1,
    Appell,
    Difftheta,
    Binom,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] =
        [CheckKind::Rid, CheckKind::Heat, CheckKind::Eqfin1, CheckKind::Appell, CheckKind::Difftheta, CheckKind::Binom];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Rid => "rid",
            CheckKind::Heat => "heat",
            CheckKind::Eqfin1 => "eqfin1",
            CheckKind::Appell => "appell",
            CheckKind::Difftheta => "difftheta",
            CheckKind::Binom => "binom",
        }
    }
}

impl std::str::FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown check {s:?}")))
    }
}

/// Default heat-check point `u`.
pub const HEAT_U: Complex64 = Complex64::new(0.3, 0.2);

#[derive(Debug, Clone, Default)]
pub struct CheckOutput {
    pub reports: Vec<VerificationReport>,
    pub residuals: Vec<ResidualRecord>,
    /// Free-form diagnostics, e.g. the step-halving ratio of the heat check.
    pub notes: Vec<String>,
}

impl CheckOutput {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed) && self.residuals.iter().all(|r| r.pass)
    }
}

/// Runs one named check. `m` is the derivative order for `eqfin1` (default
/// 0), `r_max` for `difftheta` (default 5) and `m_max` for `binom` (default 10).
pub fn run_check(kind: CheckKind, tau: Tau, u: Option<Complex64>, m: Option<u32>, cfg: &NumericConfig) -> Result<CheckOutput> {
    let mut out = CheckOutput::default();
    match kind {
        CheckKind::Rid => out.residuals = check_r_identities(tau, cfg)?,
        CheckKind::Heat => {
            let heat = check_heat(u.unwrap_or(HEAT_U), tau, cfg)?;
            out.notes.push(format!(
                "plain residual at h: {:.3e}, at h/2: {:.3e}, ratio {:.2}",
                heat.coarse,
                heat.fine,
                heat.convergence_ratio()
            ));
            out.residuals.push(heat.record);
        }
        CheckKind::Eqfin1 => out.residuals.push(check_eqfin1(m.unwrap_or(0), tau, cfg)?),
        CheckKind::Appell => out.residuals = check_appell(tau, cfg)?,
        CheckKind::Difftheta => {
            let r_max = m.unwrap_or(5);
            out.reports.push(check_diff_theta(r_max, tau, cfg)?);
            out.residuals = diff_theta_residuals(r_max, tau, cfg)?;
        }
        CheckKind::Binom => out.reports.push(check_cohen_binomial_identities(m.unwrap_or(10))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn standard_points() -> Vec<Tau> {
        vec![Tau::new(0.0, 1.0).unwrap(), Tau::new(0.0, 2.0).unwrap(), Tau::new(0.3, 0.7).unwrap()]
    }

    fn assert_all_pass(records: &[ResidualRecord]) {
        for r in records {
            assert!(r.pass, "{} at {:?}: {:e} >= {:e}", r.check, r.tau, r.residual, r.tolerance);
        }
    }

    #[test]
    fn r_identities_hold() {
        for t in standard_points() {
            assert_all_pass(&check_r_identities(t, &cfg()).unwrap());
        }
    }

    #[test]
    fn eqfin1_base_case() {
        for t in standard_points() {
            assert_all_pass(&[check_eqfin1(0, t, &cfg()).unwrap()]);
        }
    }

    #[test]
    fn eqfin1_first_derivative() {
        assert_all_pass(&[check_eqfin1(1, Tau::new(0.0, 1.0).unwrap(), &cfg()).unwrap()]);
        assert!(check_eqfin1(2, Tau::new(0.0, 1.0).unwrap(), &cfg()).is_err());
    }

    #[test]
    fn heat_operator_annihilates_r() {
        for t in [Tau::new(0.0, 1.0).unwrap(), Tau::new(0.2, 1.0).unwrap()] {
            let out = check_heat(c(0.3, 0.2), t, &cfg()).unwrap();
            assert!(out.record.pass, "{:?}", out);
            let ratio = out.convergence_ratio();
            assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn named_checks() {
        let t = Tau::new(0.0, 1.0).unwrap();
        for kind in CheckKind::ALL {
            assert_eq!(kind.name().parse::<CheckKind>().unwrap(), kind);
            let out = run_check(kind, t, None, None, &cfg()).unwrap();
            assert!(out.passed(), "{kind:?}");
            assert!(!out.reports.is_empty() || !out.residuals.is_empty());
        }
        assert!("nope".parse::<CheckKind>().is_err());
        assert!(run_check(CheckKind::Eqfin1, t, None, Some(3), &cfg()).is_err());
    }

    #[test]
    fn step_guard() {
        let est = FdEstimate { value: c(0.0, 0.0), coarse: c(1.0, 0.0), fine: c(0.0, 0.0) };
        assert!(matches!(guard_step(&est, TOL_HEAT), Err(Error::StepTooLarge { .. })));
        let nan = FdEstimate { value: c(0.0, 0.0), coarse: c(f64::NAN, 0.0), fine: c(0.0, 0.0) };
        assert!(guard_step(&nan, TOL_HEAT).is_err());
    }

    #[test]
    fn appell_matches_divisor_series() {
        assert_all_pass(&check_appell(Tau::new(0.0, 1.0).unwrap(), &cfg()).unwrap());
    }

    #[test]
    fn appell_comparison_separates_orders() {
        // at τ = i/4 the q^9 coefficients (where λ₁ and λ₃ first differ) are visible
        let t = Tau::new(0.0, 0.25).unwrap();
        let q = t.q_pow(1.0);
        for k in [1, 3, 5] {
            let exact = lambda_odd_series(k, 400).unwrap().eval(q);
            let numeric = dv_a1_odd(k, t, &cfg()).unwrap() * 0.5;
            assert!((exact - numeric).norm() < 1e-9 * exact.norm(), "k = {k}");
            let other = lambda_odd_series(k + 2, 400).unwrap().eval(q);
            assert!((other - numeric).norm() > 1e-6);
        }
    }

    #[test]
    fn theta_derivative_identities() {
        let t = Tau::new(0.0, 1.0).unwrap();
        assert_all_pass(&diff_theta_residuals(5, t, &cfg()).unwrap());
        let r0 = &diff_theta_residuals(0, t, &cfg()).unwrap()[0];
        assert!(r0.residual < 1e-12);
        assert!(check_diff_theta(5, t, &cfg()).unwrap().passed());
        assert!(check_diff_theta(7, t, &cfg()).is_err());
    }

    #[test]
    fn period_routes() {
        for t in standard_points() {
            assert_all_pass(&check_script_r_routes(t, &cfg()).unwrap());
        }
    }
}
