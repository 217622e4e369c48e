//! Truncated series for `R`, `Θ`, the level-one Appell–Lerch sum and the
//! period integral of `ϑ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::integrate;
use super::special::{erfcx, incomplete_gamma_mhalf_scaled};
use super::{NumericConfig, Tau, TWO_PI};
use crate::error::{Error, Result};

const POLE_DISTANCE: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-14;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn parity(j: i64) -> f64 {
    if j.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn half_integers(trunc: usize) -> impl Iterator<Item = (i64, f64)> {
    let t = trunc as i64;
    (-t - 1..=t).map(|j| (j, j as f64 + 0.5))
}

/// Term `ν` of `R(u; τ)`, together with `(−1)^{ν−½} e^{−πiν²τ−2πiνu−πw²}`
/// where `w = (ν + Im u / y)√(2y)`.
///
/// `sgn(ν) − E(w)` is rewritten through `erfc` so that the growing factor
/// `q^{−ν²/2}` is absorbed into the Gaussian decay of `erfc`.
fn r_term(j: i64, nu: f64, u: Complex64, tau: Complex64) -> (Complex64, Complex64) {
    let y = tau.im;
    let w = (nu + u.im / y) * (2.0 * y).sqrt();
    let z = c(0.0, -PI * nu * nu) * tau + c(0.0, -TWO_PI * nu) * u;
    let sign = parity(j);
    let gauss = (z - PI * w * w).exp() * sign;
    let s = nu.signum();
    let aw = PI.sqrt() * w.abs();
    let term = if w == 0.0 || w.signum() == s {
        gauss * (s * erfcx(aw))
    } else {
        z.exp() * (sign * s * (2.0 - libm::erfc(aw)))
    };
    (term, gauss)
}

/// `R(u; τ) = Σ_{ν∈½+ℤ} {sgn(ν) − E((ν + Im u/y)√(2y))}(−1)^{ν−½} q^{−ν²/2} e^{−2πiνu}`,
/// truncated to `|ν| ≤ T + ½`. The omitted terms are bounded by the first one,
/// which carries a factor `e^{−πT²y}`.
pub fn r_fn(u: Complex64, tau: Tau, cfg: &NumericConfig) -> Complex64 {
    half_integers(cfg.trunc).map(|(j, nu)| r_term(j, nu, u, tau.value()).0).sum()
}

/// `D_u R(u; τ)`, term by term: `D_u` sends `sgn(ν) − E(w)` to
/// `e^{−πw²}/(π√(2y))` and `e^{−2πiνu}` to `−ν e^{−2πiνu}`.
pub fn du_r(u: Complex64, tau: Tau, cfg: &NumericConfig) -> Complex64 {
    let k = 1.0 / (PI * (2.0 * tau.im()).sqrt());
    half_integers(cfg.trunc)
        .map(|(j, nu)| {
            let (term, gauss) = r_term(j, nu, u, tau.value());
            gauss * k - term * nu
        })
        .sum()
}

/// `(D_u R)(−τ−½; 2τ)` from the explicit series in `n`, with `sgn(0) = 1`.
pub fn du_r_at_special(tau: Tau, cfg: &NumericConfig) -> Complex64 {
    du_r_at_special_with_sign0(tau, cfg, 1.0)
}

/// As [`du_r_at_special`] with a caller-chosen value of `sgn(0)`.
pub fn du_r_at_special_with_sign0(tau: Tau, cfg: &NumericConfig, sign0: f64) -> Complex64 {
    let (x, y) = (tau.re(), tau.im());
    let t = cfg.trunc as i64;
    let mut acc = c(0.0, 0.0);
    for n in -t..=t {
        let nf = n as f64;
        let sgn = if n == 0 { sign0 } else { nf.signum() };
        let decay = (-TWO_PI * nf * nf * y).exp();
        // β(4n²y) q^{−n²} has modulus erfcx(2|n|√(πy)) e^{−2πn²y}
        let real = decay / (PI * (4.0 * y).sqrt()) - sgn * (nf + 0.5) * erfcx(2.0 * nf.abs() * (PI * y).sqrt()) * decay;
        acc += c(0.0, -TWO_PI * nf * nf * x).exp() * real;
    }
    c(0.0, 1.0) * tau.q_pow(0.25) * acc
}

/// `D_v^r Θ(v; τ)` with `Θ(v; τ) = Σ_{ν∈½+ℤ} q^{ν²/2} e^{2πiν(v+½)}`.
pub fn theta_jacobi_dv(r: u32, v: Complex64, tau: Tau, cfg: &NumericConfig) -> Complex64 {
    half_integers(cfg.trunc)
        .map(|(_, nu)| {
            let e = c(0.0, PI * nu * nu) * tau.value() + c(0.0, TWO_PI * nu) * (v + 0.5);
            e.exp() * nu.powi(r as i32)
        })
        .sum()
}

pub fn theta_jacobi(v: Complex64, tau: Tau, cfg: &NumericConfig) -> Complex64 {
    theta_jacobi_dv(0, v, tau, cfg)
}

/// `a^{1/2} Σ_{|n|≤T} w(n) (−1)^n q^{n(n+1)/2} b^n / (1 − a q^n)` with the
/// sum restricted to odd `n` when `odd_only` and `w(n) = n^power`.
fn appell_sum(u: Complex64, v: Complex64, tau: Tau, cfg: &NumericConfig, odd_only: bool, power: u32) -> Result<Complex64> {
    let t = cfg.trunc as i64;
    let tv = tau.value();
    let i2pi = c(0.0, TWO_PI);
    let mut acc = c(0.0, 0.0);
    for n in -t..=t {
        if odd_only && n % 2 == 0 {
            continue;
        }
        let nf = n as f64;
        let log_num = i2pi * (tv * (nf * (nf + 1.0) / 2.0) + v * nf);
        let log_a = i2pi * (u + tv * nf);
        let weight = parity(n) * nf.powi(power as i32);
        let term = if log_a.re > 0.0 {
            // |a q^n| ≥ 1: divide through by a q^n
            let inv = (-log_a).exp();
            let denom = 1.0 - inv;
            let distance = denom.norm() * log_a.re.exp();
            if distance < POLE_DISTANCE {
                return Err(Error::PoleProximity { distance });
            }
            -(log_num - log_a).exp() / denom
        } else {
            let denom = 1.0 - log_a.exp();
            if denom.norm() < POLE_DISTANCE {
                return Err(Error::PoleProximity { distance: denom.norm() });
            }
            log_num.exp() / denom
        };
        acc += term * weight;
    }
    Ok((c(0.0, PI) * u).exp() * acc)
}

/// `A₁(u, v; τ) = a^{1/2} Σ_n (−1)^n q^{n(n+1)/2} b^n / (1 − a q^n)`.
pub fn appell_a1(u: Complex64, v: Complex64, tau: Tau, cfg: &NumericConfig) -> Result<Complex64> {
    appell_sum(u, v, tau, cfg, false, 0)
}

/// The odd-`n` part of `A₁`, equal to `½(A₁(u,v) − A₁(u,v+½))`; finite at `u = 0`.
pub fn appell_a1_odd(u: Complex64, v: Complex64, tau: Tau, cfg: &NumericConfig) -> Result<Complex64> {
    appell_sum(u, v, tau, cfg, true, 0)
}

/// `Â₁(u, v; τ) = A₁(u, v; τ) + (i/2) Θ(v; τ) R(u − v; τ)`.
pub fn a1_completed(u: Complex64, v: Complex64, tau: Tau, cfg: &NumericConfig) -> Result<Complex64> {
    let a = appell_a1(u, v, tau, cfg)?;
    Ok(a + c(0.0, 0.5) * theta_jacobi(v, tau, cfg) * r_fn(u - v, tau, cfg))
}

/// `(D_v^k A₁^odd)(0, τ+½; 2τ)`; each term carries `b^n`, so `D_v^k` multiplies it by `n^k`.
pub fn dv_a1_odd(k: u32, tau: Tau, cfg: &NumericConfig) -> Result<Complex64> {
    if k.is_multiple_of(2) {
        return Err(Error::Domain(format!("derivative order must be odd, got {k}")));
    }
    appell_sum(c(0.0, 0.0), tau.value() + 0.5, tau.scale(2.0), cfg, true, k)
}

/// `∫_{−τ̄}^{i∞} θ(z) (z+τ)^{−3/2} dz` for `θ(z) = Σ ε_n e^{2πin²z}`, with
/// `ε_n = 1` or, when `twisted`, `ε_n = (−1)^n` (that is, `ϑ(z + ½)`).
///
/// On `z = −τ̄ + it` one has `z + τ = i(2y + t)` and the principal branch gives
/// `(z+τ)^{3/2} = e^{3πi/4}(2y+t)^{3/2}`; each theta term then reduces to
/// `∫_{2y}^∞ e^{−cs}s^{−3/2}ds = c^{1/2}Γ(−½; 2cy)` with `c = 2πn²`.
pub fn period_integral_gamma(tau: Tau, twisted: bool, cfg: &NumericConfig) -> Complex64 {
    let (x, y) = (tau.re(), tau.im());
    let mut j = c(2.0 / (2.0 * y).sqrt(), 0.0);
    for n in 1..=cfg.trunc as i64 {
        let nf = n as f64;
        let eps = if twisted { parity(n) } else { 1.0 };
        let arg = 4.0 * PI * nf * nf * y;
        let scaled = incomplete_gamma_mhalf_scaled(arg).expect("positive argument");
        let mag = (TWO_PI).sqrt() * nf * (-TWO_PI * nf * nf * y).exp() * scaled;
        j += c(0.0, -TWO_PI * nf * nf * x).exp() * (2.0 * eps * mag);
    }
    // (z+τ)^{−3/2} dz = e^{−3πi/4}(2y+t)^{−3/2} · i dt
    c(0.0, -PI / 4.0).exp() * j
}

/// The same integral by adaptive quadrature after `t = 2y(1/w² − 1)`.
pub fn period_integral_quadrature(tau: Tau, twisted: bool, cfg: &NumericConfig) -> Complex64 {
    let tv = tau.value();
    let y = tau.im();
    let t = cfg.trunc as i64;
    let theta = move |z: Complex64| -> Complex64 {
        let shift = if twisted { 0.5 } else { 0.0 };
        (-t..=t).map(|n| (c(0.0, TWO_PI * (n * n) as f64) * (z + shift)).exp()).sum()
    };
    let f = |w: f64| {
        let z = -tv.conj() + c(0.0, 2.0 * y * (1.0 / (w * w) - 1.0));
        let zt = z + tv;
        theta(z) * c(0.0, 4.0 * y) / (zt.powf(1.5) * (w * w * w))
    };
    integrate(f, 0.0, 1.0, QUAD_TOL, 1e-14)
}

/// `ℛ(τ) = (1+i)/(16π) ∫_{−τ̄}^{i∞} ϑ(z)(z+τ)^{−3/2} dz`.
pub fn script_r(tau: Tau, cfg: &NumericConfig) -> Complex64 {
    c(1.0, 1.0) / (16.0 * PI) * period_integral_gamma(tau, false, cfg)
}

pub fn script_r_quadrature(tau: Tau, cfg: &NumericConfig) -> Complex64 {
    c(1.0, 1.0) / (16.0 * PI) * period_integral_quadrature(tau, false, cfg)
}

/// `∫_{−τ̄}^{i∞} e^{2πinz}(−i(z+τ))^{−3/2} dz` by quadrature.
pub fn exponential_period_integral(n: u32, tau: Tau) -> Complex64 {
    let tv = tau.value();
    let y = tau.im();
    let f = |w: f64| {
        let z = -tv.conj() + c(0.0, 2.0 * y * (1.0 / (w * w) - 1.0));
        let base = c(0.0, -1.0) * (z + tv);
        (c(0.0, TWO_PI * n as f64) * z).exp() * c(0.0, 4.0 * y) / (base.powf(1.5) * (w * w * w))
    };
    integrate(f, 0.0, 1.0, 0.0, 1e-13)
}

/// `i(2πn)^{1/2} q^{−n} Γ(−½; 4πny)`.
pub fn exponential_period_closed(n: u32, tau: Tau) -> Complex64 {
    let nf = n as f64;
    let (x, y) = (tau.re(), tau.im());
    let arg = 4.0 * PI * nf * y;
    let scaled = incomplete_gamma_mhalf_scaled(arg).expect("n >= 1");
    c(0.0, 1.0) * (TWO_PI * nf).sqrt() * c(0.0, -TWO_PI * nf * x).exp() * (-TWO_PI * nf * y).exp() * scaled
}
