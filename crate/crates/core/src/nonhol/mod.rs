//! Floating-point evaluation of the non-holomorphic objects (the function
//! `R`, Jacobi theta, Appell–Lerch sums and the period integral of `ϑ`) plus
//! residual checks of the identities relating them.
//!
//! Derivatives in `u` and `τ` of real-analytic functions are Wirtinger
//! derivatives `D = (1/2πi)·½(∂_re − i∂_im)`.

// Comparisons are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::ConfigRecord;

pub mod checks;
pub mod fd;
pub mod jacobi;
pub mod quad;
pub mod special;

pub use checks::{
    check_appell, check_diff_theta, check_eqfin1, check_heat, check_r_identities, check_script_r_routes,
    diff_theta_residuals, run_check, CheckKind, CheckOutput, HeatOutcome,
};
pub use jacobi::{
    a1_completed, appell_a1, appell_a1_odd, du_r, du_r_at_special, du_r_at_special_with_sign0, dv_a1_odd,
    period_integral_gamma, period_integral_quadrature, r_fn, script_r, script_r_quadrature, theta_jacobi,
    theta_jacobi_dv,
};
pub use special::{beta_fn, e_fn, erfcx, incomplete_gamma_mhalf};

pub(crate) const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tau(Complex64);

impl Tau {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::Domain(format!("tau must lie in the upper half-plane, got {}", Complex64::new(re, im))));
        }
        Ok(Tau(Complex64::new(re, im)))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Tau::new(z.re, z.im)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    /// `q^r = e^{2πirτ}`.
    pub fn q_pow(self, r: f64) -> Complex64 {
        (Complex64::new(0.0, TWO_PI * r) * self.0).exp()
    }

    pub fn scale(self, k: f64) -> Tau {
        assert!(k > 0.0);
        Tau(self.0 * k)
    }

    pub fn shift(self, dx: f64) -> Tau {
        Tau(self.0 + dx)
    }

    pub fn as_pair(self) -> [f64; 2] {
        [self.0.re, self.0.im]
    }
}

impl std::str::FromStr for Tau {
    type Err = Error;

    /// `"RE,IM"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("expected RE,IM, got {s:?}"));
        let (re, im) = s.split_once(',').ok_or_else(bad)?;
        let re: f64 = re.trim().parse().map_err(|_| bad())?;
        let im: f64 = im.trim().parse().map_err(|_| bad())?;
        Tau::new(re, im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    /// Sums run over `|index| ≤ trunc`.
    pub trunc: usize,
    /// Finite-difference step.
    pub h: f64,
    pub tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { trunc: 30, h: 1e-3, tol: 1e-8 }
    }
}

impl NumericConfig {
    pub fn new(trunc: usize, h: f64, tol: f64) -> Result<Self> {
        let cfg = NumericConfig { trunc, h, tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trunc < 10 {
            return Err(Error::InvalidConfig(format!("trunc must be >= 10, got {}", self.trunc)));
        }
        if !(self.h > 0.0 && self.h <= 1e-2) {
            return Err(Error::InvalidConfig(format!("h must lie in (0, 1e-2], got {}", self.h)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn record(&self) -> ConfigRecord {
        ConfigRecord { trunc: self.trunc, h: self.h, tol: self.tol }
    }

    pub fn with_trunc(self, trunc: usize) -> Self {
        NumericConfig { trunc, ..self }
    }

    pub fn with_h(self, h: f64) -> Self {
        NumericConfig { h, ..self }
    }
}
