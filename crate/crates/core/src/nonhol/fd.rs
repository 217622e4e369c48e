//! Central finite differences for Wirtinger derivatives of real-analytic
//! functions of one complex variable.

use num_complex::Complex64;

use super::TWO_PI;

/// Second-order central stencil for `d^p/dx^p`, unscaled by `h^p`.
fn stencil(p: u32) -> &'static [(i32, f64)] {
    match p {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => panic!("no stencil for derivative order {p}"),
    }
}

/// `∂_re^p ∂_im^r f` at `z`.
pub fn partial(f: &impl Fn(Complex64) -> Complex64, z: Complex64, p: u32, r: u32, h: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(i, wi) in stencil(p) {
        for &(j, wj) in stencil(r) {
            acc += f(z + Complex64::new(i as f64 * h, j as f64 * h)) * (wi * wj);
        }
    }
    acc / h.powi((p + r) as i32)
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `D^n f` with `D = (1/2πi)·½(∂_re − i∂_im)` at a single step size.
pub fn wirtinger_plain(f: &impl Fn(Complex64) -> Complex64, z: Complex64, n: u32, h: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let minus_i = Complex64::new(0.0, -1.0);
    for j in 0..=n {
        acc += partial(f, z, n - j, j, h) * minus_i.powu(j) * binom(n, j);
    }
    let factor = Complex64::new(0.0, 2.0 * TWO_PI).inv();
    acc * factor.powu(n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdEstimate {
    /// Richardson combination of `coarse` and `fine`.
    pub value: Complex64,
    /// Plain estimate at step `h`.
    pub coarse: Complex64,
    /// Plain estimate at step `h/2`.
    pub fine: Complex64,
}

impl FdEstimate {
    pub fn disagreement(&self) -> f64 {
        (self.coarse - self.fine).norm()
    }
}

pub fn wirtinger(f: &impl Fn(Complex64) -> Complex64, z: Complex64, n: u32, h: f64) -> FdEstimate {
    let coarse = wirtinger_plain(f, z, n, h);
    let fine = wirtinger_plain(f, z, n, h / 2.0);
    FdEstimate { value: (fine * 4.0 - coarse) / 3.0, coarse, fine }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holomorphic_derivatives() {
        // D e^{2πi c z} = c e^{2πi c z}
        let c = 0.7;
        let f = |z: Complex64| (Complex64::new(0.0, TWO_PI * c) * z).exp();
        let z = Complex64::new(0.1, 0.4);
        for n in 1..=3 {
            let est = wirtinger(&f, z, n, 1e-3);
            let exact = f(z) * c.powi(n as i32);
            assert!((est.value - exact).norm() < 1e-8, "n = {n}");
        }
    }

    #[test]
    fn antiholomorphic_part_is_killed() {
        let f = |z: Complex64| z.conj() * z.conj() + z;
        let est = wirtinger(&f, Complex64::new(0.3, -0.2), 1, 1e-3);
        assert!((est.value - Complex64::new(0.0, TWO_PI).inv()).norm() < 1e-10);
    }

    #[test]
    fn real_analytic_mixed() {
        // D(z·z̄) = z̄/(2πi)
        let f = |z: Complex64| z * z.conj();
        let z = Complex64::new(0.5, 0.25);
        let est = wirtinger(&f, z, 1, 1e-3);
        assert!((est.value - z.conj() / Complex64::new(0.0, TWO_PI)).norm() < 1e-10);
    }
}
