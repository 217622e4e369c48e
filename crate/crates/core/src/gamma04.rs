//! An exact model of `M_k(Γ₀(4))` and `S_k(Γ₀(4))` for even `k`.
//!
//! `M_k` is spanned by the monomials `ϑ^{4a}·F₂^b` with `2a + 2b = k`
//! (`k/2 + 1` of them), and `S_k = Δ₄·M_{k-6}` with `Δ₄ = η(2τ)¹²`. The model
//! is certified at the weights used here by the independence tests below;
//! membership is decided by exact fraction-free elimination and then checked
//! on every available coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{delta4_series, f2_series, theta_series, QSeries};
use crate::rational::Rational;

/// Extra coefficients demanded beyond the Sturm bound.
pub const SAFETY_MARGIN: usize = 10;

/// Monomials `ϑ^{4a} F₂^b` of weight `k`, optionally multiplied by `Δ₄`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBasis {
    weight: u32,
    cusp: bool,
    elements: Vec<(u32, u32)>,
    series: Vec<QSeries>,
}

impl MonomialBasis {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `(a, b)` exponents, in the order `(k/2, 0), (k/2 - 1, 1), …, (0, k/2)`
    /// (of the weight `k - 6` factor for a cusp basis).
    pub fn elements(&self) -> &[(u32, u32)] {
        &self.elements
    }

    pub fn series(&self) -> &[QSeries] {
        &self.series
    }

    pub fn dim(&self) -> usize {
        self.series.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|&(a, b)| {
                let mut parts = Vec::new();
                if self.cusp {
                    parts.push("Delta4".to_string());
                }
                match a {
                    0 => {}
                    1 => parts.push("theta^4".into()),
                    a => parts.push(format!("theta^{}", 4 * a)),
                }
                match b {
                    0 => {}
                    1 => parts.push("F2".into()),
                    b => parts.push(format!("F2^{b}")),
                }
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            })
            .collect()
    }
}

fn check_weight(k: i64) -> Result<u32> {
    if k < 0 || k % 2 != 0 {
        return Err(Error::Domain(format!("weight must be even and non-negative, got {k}")));
    }
    Ok(k as u32)
}

/// The monomial basis of `M_k(Γ₀(4))` through `q^prec`.
pub fn monomial_basis(k: i64, prec: usize) -> Result<MonomialBasis> {
    let k = check_weight(k)?;
    let half = k / 2;
    let theta4 = theta_series(prec).pow(4);
    let f2 = f2_series(prec);
    let elements: Vec<(u32, u32)> = (0..=half).rev().map(|a| (a, half - a)).collect();
    let series = elements
        .iter()
        .map(|&(a, b)| &theta4.pow(a) * &f2.pow(b))
        .collect();
    Ok(MonomialBasis {
        weight: k,
        cusp: false,
        elements,
        series,
    })
}

pub fn space_basis(k: i64, prec: usize) -> Result<Vec<QSeries>> {
    Ok(monomial_basis(k, prec)?.series)
}

/// `Δ₄ · M_{k-6}`; empty below weight 6.
pub fn cusp_monomial_basis(k: i64, prec: usize) -> Result<MonomialBasis> {
    let k = check_weight(k)?;
    if k < 6 {
        return Ok(MonomialBasis {
            weight: k,
            cusp: true,
            elements: Vec::new(),
            series: Vec::new(),
        });
    }
    let inner = monomial_basis(k as i64 - 6, prec)?;
    let delta = delta4_series(prec);
    Ok(MonomialBasis {
        weight: k,
        cusp: true,
        elements: inner.elements,
        series: inner.series.iter().map(|s| &delta * s).collect(),
    })
}

pub fn cusp_basis(k: i64, prec: usize) -> Result<Vec<QSeries>> {
    Ok(cusp_monomial_basis(k, prec)?.series)
}

/// `k·[SL₂(ℤ) : Γ₀(4)]/12 = k/2`.
pub fn sturm_bound(k: u32) -> usize {
    (k as usize * 6) / 12
}

/// Coefficients of a series in a monomial basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisDecomposition {
    pub weight: u32,
    pub cusp: bool,
    pub labels: Vec<String>,
    #[serde(with = "crate::rational::as_strings")]
    pub coefficients: Vec<Rational>,
    pub verified_through: usize,
}

impl std::fmt::Display for BasisDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl BasisDecomposition {
    /// `c₁·b₁ + c₂·b₂ + …` over the non-zero coefficients, `0` if none.
    pub fn combination(&self) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{c}·{l}"))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Expresses `f` in the basis of `M_k` (or `S_k` when `use_cusp`).
///
/// The coefficients come from the shortest leading block of q-coefficients on
/// which the basis has full rank; the result is then checked against every
/// coefficient of `f`, so `verified_through` is `f.prec()`.
pub fn identify(f: &QSeries, k: i64, use_cusp: bool) -> Result<BasisDecomposition> {
    let weight = check_weight(k)?;
    let basis = if use_cusp {
        cusp_monomial_basis(k, f.prec())?
    } else {
        monomial_basis(k, f.prec())?
    };
    let required = basis.dim().max(sturm_bound(weight)) + SAFETY_MARGIN;
    if f.prec() < required {
        return Err(Error::InsufficientPrecision {
            required,
            available: f.prec(),
        });
    }
    let coefficients = solve_leading(basis.series(), f)?;
    for n in 0..=f.prec() {
        let value: Rational = basis
            .series()
            .iter()
            .zip(&coefficients)
            .map(|(b, c)| c * &b.coeffs()[n])
            .sum();
        if value != f.coeffs()[n] {
            return Err(Error::NotInSpace { index: Some(n) });
        }
    }
    Ok(BasisDecomposition {
        weight,
        cusp: use_cusp,
        labels: basis.labels(),
        coefficients,
        verified_through: f.prec(),
    })
}

/// Exact rank of a family of series over their common precision.
pub fn rank(series: &[QSeries]) -> usize {
    if series.is_empty() {
        return 0;
    }
    let prec = series.iter().map(QSeries::prec).min().unwrap();
    let rows: Vec<Vec<Rational>> = (0..=prec)
        .map(|n| series.iter().map(|s| s.coeffs()[n].clone()).collect())
        .collect();
    bareiss(integer_rows(&rows)).1.len()
}

/// Scales each rational row by the lcm of its denominators.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination. Returns the echelon matrix and the
/// pivot columns.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..m {
            for j in (c + 1)..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn solve_leading(basis: &[QSeries], f: &QSeries) -> Result<Vec<Rational>> {
    let d = basis.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let prec = f.prec();
    let row = |n: usize| -> Vec<Rational> {
        basis
            .iter()
            .map(|b| b.coeffs()[n].clone())
            .chain(std::iter::once(f.coeffs()[n].clone()))
            .collect()
    };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut basis_rank = 0;
    for n in 0..=prec {
        rows.push(row(n));
        let only_basis: Vec<Vec<Rational>> = rows.iter().map(|r| r[..d].to_vec()).collect();
        basis_rank = bareiss(integer_rows(&only_basis)).1.len();
        if basis_rank == d {
            break;
        }
    }
    if basis_rank < d {
        return Err(Error::Domain(format!(
            "basis of dimension {d} has rank {basis_rank} through q^{prec}"
        )));
    }
    let (echelon, pivots) = bareiss(integer_rows(&rows));
    if pivots.contains(&d) {
        return Err(Error::NotInSpace { index: None });
    }
    // pivots are exactly 0..d: back-substitute in the upper triangle
    let mut x = vec![Rational::zero(); d];
    for i in (0..d).rev() {
        let mut acc = Rational::from_integer(echelon[i][d].clone());
        for j in (i + 1)..d {
            acc -= Rational::from_integer(echelon[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(echelon[i][i].clone());
    }
    Ok(x)
}
