//! Real special functions: `β`, `E`, `Γ(-1/2; x)` and the scaled
//! complementary error function used to keep Gaussian-tail sums finite.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// `e^{x²}·erfc(x)` for `x ≥ 0`.
pub fn erfcx(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < 10.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    // asymptotic series; for x ≥ 10 the terms fall below 1e-17 well before
    // they start to grow
    let inv2 = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..20 {
        term *= -((2 * k - 1) as f64) * inv2;
        sum += term;
    }
    sum / (x * SQRT_PI)
}

/// `β(x) = ∫_x^∞ u^{-1/2} e^{-πu} du = erfc(√(πx))`.
pub fn beta_fn(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("beta needs x >= 0, got {x}")));
    }
    Ok(libm::erfc((PI * x).sqrt()))
}

/// `E(t) = 2∫_0^t e^{-πu²} du = erf(√π t)`.
pub fn e_fn(t: f64) -> f64 {
    libm::erf(SQRT_PI * t)
}

/// `e^x·Γ(-1/2; x)` for `x > 0`.
///
/// From `Γ(a+1; x) = aΓ(a; x) + x^a e^{-x}` with `a = -1/2`:
/// `Γ(-1/2; x) = 2(x^{-1/2} e^{-x} - Γ(1/2; x))` and `Γ(1/2; x) = √π erfc(√x)`.
/// For large `x` the two terms cancel, so the asymptotic expansion
/// `x^{-3/2}(1 - 3/(2x) + 15/(4x²) - …)` takes over.
pub fn incomplete_gamma_mhalf_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Gamma(-1/2; x) needs x > 0, got {x}")));
    }
    if x < 40.0 {
        return Ok(2.0 * (1.0 / x.sqrt() - SQRT_PI * erfcx(x.sqrt())));
    }
    // Γ(a; x) ~ x^{a-1} e^{-x} Σ_k (a-1)(a-2)…(a-k) / x^k
    let a = -0.5;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..30 {
        let next = term * (a - k as f64) / x;
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    Ok(x.powf(a - 1.0) * sum)
}

/// `Γ(-1/2; x)` for `x > 0`.
pub fn incomplete_gamma_mhalf(x: f64) -> Result<f64> {
    Ok(incomplete_gamma_mhalf_scaled(x)? * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonhol::quad::integrate_real;

    #[test]
    fn beta_and_e_basics() {
        assert!((beta_fn(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(e_fn(0.0), 0.0);
        assert!(beta_fn(-1.0).is_err());
        assert!(incomplete_gamma_mhalf(0.0).is_err());
    }

    #[test]
    fn e_matches_sign_beta_form() {
        for i in -300..=300 {
            let t = i as f64 / 100.0;
            let other = t.signum() * (1.0 - beta_fn(t * t).unwrap());
            let other = if t == 0.0 { 0.0 } else { other };
            assert!((e_fn(t) - other).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn e_matches_quadrature() {
        for t in [-2.5, -0.7, 0.1, 0.9, 3.0] {
            let q = 2.0 * integrate_real(|u| (-PI * u * u).exp(), 0.0, t, 1e-15, 0.0);
            assert!((e_fn(t) - q).abs() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn beta_matches_quadrature() {
        // substitute u = x + s², so the integrand is smooth on [0, ∞)
        for x in [0.05, 0.3, 1.0, 2.5] {
            let q = integrate_real(
                |w| {
                    let s = w / (1.0 - w);
                    let ds = 1.0 / ((1.0 - w) * (1.0 - w));
                    let u = x + s * s;
                    2.0 * s * u.powf(-0.5) * (-PI * u).exp() * ds
                },
                0.0,
                1.0,
                1e-15,
                0.0,
            );
            assert!((beta_fn(x).unwrap() - q).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn partial_integration_formula() {
        // β(x) = x^{-1/2} e^{-πx}/π - Γ(-1/2; πx)/(2√π)
        for x in [0.01f64, 0.2, 1.0, 3.0, 8.0] {
            let rhs = x.powf(-0.5) * (-PI * x).exp() / PI
                - incomplete_gamma_mhalf(PI * x).unwrap() / (2.0 * SQRT_PI);
            let lhs = beta_fn(x).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * lhs, "x = {x}");
        }
    }

    #[test]
    fn incomplete_gamma_against_quadrature() {
        // Γ(-1/2; x) = ∫_x^∞ t^{-3/2} e^{-t} dt; substitute t = x/w²
        for x in [0.1, 1.0, 7.0, 39.0, 41.0, 120.0] {
            let scaled = integrate_real(
                |w| {
                    let t = x / (w * w);
                    t.powf(-1.5) * (x - t).exp() * 2.0 * x / (w * w * w)
                },
                0.0,
                1.0,
                0.0,
                1e-14,
            );
            let ours = incomplete_gamma_mhalf_scaled(x).unwrap();
            assert!(((ours - scaled) / scaled).abs() < 1e-11, "x = {x}: {ours} vs {scaled}");
        }
    }

    #[test]
    fn erfcx_is_continuous_at_switch() {
        let below = erfcx(10.0 - 1e-12);
        let above = erfcx(10.0);
        assert!(((below - above) / above).abs() < 1e-11);
        assert!((erfcx(0.0) - 1.0).abs() < 1e-16);
    }
}
