//! Truncated q-expansions with exact rational coefficients.
//!
//! A [`QSeries`] of precision `N` knows its coefficients `a_0..=a_N` and
//! nothing beyond. Binary operations on series of different precision
//! truncate to the smaller one.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{isqrt, lambda, sigma, HurwitzTable};
use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
    weight: Option<Rational>,
}

impl QSeries {
    /// Builds a series from `a_0..=a_N`; panics on an empty vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series needs at least a_0");
        QSeries {
            coeffs,
            weight: None,
        }
    }

    pub fn from_fn(prec: usize, f: impl FnMut(usize) -> Rational) -> Self {
        QSeries::new((0..=prec).map(f).collect())
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        QSeries::new(coeffs.into_iter().map(int).collect())
    }

    pub fn zero(prec: usize) -> Self {
        QSeries::from_fn(prec, |_| Rational::zero())
    }

    pub fn one(prec: usize) -> Self {
        QSeries::from_fn(prec, |n| if n == 0 { Rational::one() } else { Rational::zero() })
    }

    pub fn with_weight(mut self, weight: Option<Rational>) -> Self {
        self.weight = weight;
        self
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn weight(&self) -> Option<&Rational> {
        self.weight.as_ref()
    }

    /// `a_n`, or zero past the precision.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, prec: usize) -> QSeries {
        let prec = prec.min(self.prec());
        QSeries {
            coeffs: self.coeffs[..=prec].to_vec(),
            weight: self.weight.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            weight: self.weight.clone(),
        }
    }

    /// `D = q d/dq`: `a_n ↦ n·a_n`. The result carries no weight tag.
    pub fn d_tau(&self) -> QSeries {
        QSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * int(n as i64))
                .collect(),
        )
    }

    pub fn d_tau_pow(&self, r: u32) -> QSeries {
        let mut out = self.clone();
        for _ in 0..r {
            out = out.d_tau();
        }
        out
    }

    /// `f(τ + 1/2)`: `a_n ↦ (-1)^n a_n`.
    pub fn half_shift(&self) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| if n % 2 == 1 { -a } else { a.clone() })
                .collect(),
            weight: self.weight.clone(),
        }
    }

    /// `(f - f(τ+1/2))/2`, the odd-index part.
    pub fn odd_part(&self) -> QSeries {
        (self - &self.half_shift()).scale(&Rational::new(BigInt::one(), BigInt::from(2)))
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut result = QSeries::one(self.prec());
        let mut base = self.clone();
        let exponent = e;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result.weight = self.weight.as_ref().map(|w| w * int(i64::from(exponent)));
        result
    }

    /// Evaluates the truncated sum at a complex `q`.
    pub fn eval(&self, q: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.coeffs.iter().rev() {
            acc = acc * q + to_f64(a);
        }
        acc
    }

    /// Plain-text interchange: a `prec=<N>` header, an optional
    /// `weight=<w>` line, then one `<n> <coefficient>` line per index.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "prec={}", self.prec()).unwrap();
        if let Some(w) = &self.weight {
            writeln!(out, "weight={w}").unwrap();
        }
        for (n, a) in self.coeffs.iter().enumerate() {
            writeln!(out, "{n} {a}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<QSeries> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing prec header".into()))?;
        let prec: usize = header
            .strip_prefix("prec=")
            .and_then(|p| p.trim().parse().ok())
            .ok_or_else(|| parse_err(hline, format!("expected prec=<N>, got {header:?}")))?;

        let mut weight = None;
        let mut coeffs: Vec<Option<Rational>> = vec![None; prec + 1];
        for (lineno, line) in lines {
            if let Some(w) = line.strip_prefix("weight=") {
                weight = Some(
                    parse_rational(w)
                        .ok_or_else(|| parse_err(lineno, format!("bad weight {w:?}")))?,
                );
                continue;
            }
            let (idx, val) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| parse_err(lineno, format!("expected `<n> <p>/<q>`, got {line:?}")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad index {idx:?}")))?;
            if idx > prec {
                return Err(parse_err(lineno, format!("index {idx} beyond prec={prec}")));
            }
            let val = parse_rational(val)
                .ok_or_else(|| parse_err(lineno, format!("bad coefficient {val:?}")))?;
            if coeffs[idx].replace(val).is_some() {
                return Err(parse_err(lineno, format!("duplicate index {idx}")));
            }
        }
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .map(|(n, c)| c.ok_or_else(|| parse_err(0, format!("missing coefficient for q^{n}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::new(coeffs).with_weight(weight))
    }
}

fn join_weight(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) if x == y => Some(x.clone()),
        _ => None,
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        QSeries {
            coeffs: (0..=prec).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(),
            weight: join_weight(&self.weight, &rhs.weight),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        QSeries {
            coeffs: (0..=prec).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(),
            weight: join_weight(&self.weight, &rhs.weight),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            weight: self.weight.clone(),
        }
    }
}

/// Cauchy product truncated at the smaller precision; weights add.
impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        let mut out = vec![Rational::zero(); prec + 1];
        let rhs_support: Vec<usize> = (0..=prec).filter(|&j| !rhs.coeffs[j].is_zero()).collect();
        for i in 0..=prec {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for &j in &rhs_support {
                if i + j > prec {
                    break;
                }
                out[i + j] += a * &rhs.coeffs[j];
            }
        }
        let weight = match (&self.weight, &rhs.weight) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        QSeries { coeffs: out, weight }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `ϑ(τ) = Σ_{n∈ℤ} q^{n²}`, weight 1/2.
pub fn theta_series(prec: usize) -> QSeries {
    let mut coeffs = vec![Rational::zero(); prec + 1];
    coeffs[0] = Rational::one();
    let r = isqrt(prec as i64) as usize;
    for n in 1..=r {
        coeffs[n * n] = int(2);
    }
    QSeries::new(coeffs).with_weight(Some(Rational::new(1.into(), 2.into())))
}

/// `ℋ(τ) = Σ H(n) qⁿ`, weight 3/2.
pub fn hurwitz_series(prec: usize) -> QSeries {
    hurwitz_series_from(&HurwitzTable::new(prec), prec)
}

pub fn hurwitz_series_from(table: &HurwitzTable, prec: usize) -> QSeries {
    QSeries::from_fn(prec, |n| table.get(n as i64))
        .with_weight(Some(Rational::new(3.into(), 2.into())))
}

/// `F₂(τ) = Σ σ₁(2n+1) q^{2n+1}`, weight 2.
pub fn f2_series(prec: usize) -> QSeries {
    QSeries::from_fn(prec, |n| {
        if n % 2 == 1 {
            Rational::from_integer(sigma(1, n as u64))
        } else {
            Rational::zero()
        }
    })
    .with_weight(Some(int(2)))
}

/// `Λ_{ℓ,odd}(τ) = Σ λ_ℓ(2n+1) q^{2n+1}`.
pub fn lambda_odd_series(ell: u32, prec: usize) -> Result<QSeries> {
    if ell.is_multiple_of(2) {
        return Err(Error::Domain(format!("lambda_odd_series needs odd ell, got {ell}")));
    }
    Ok(QSeries::from_fn(prec, |n| {
        if n % 2 == 1 {
            lambda(ell, n as u64)
        } else {
            Rational::zero()
        }
    }))
}

/// `Δ₄(τ) = η(2τ)¹² = q ∏_{n≥1} (1 - q^{2n})¹²`, weight 6.
pub fn delta4_series(prec: usize) -> QSeries {
    if prec == 0 {
        return QSeries::zero(0).with_weight(Some(int(6)));
    }
    // the product only has to be known through q^{prec-1}
    let inner = prec - 1;
    let mut euler = QSeries::one(inner);
    let mut n = 1;
    while 2 * n <= inner {
        let mut factor = QSeries::one(inner);
        factor.coeffs[2 * n] = int(-1);
        euler = &euler * &factor;
        n += 1;
    }
    let e2 = &euler * &euler;
    let e4 = &e2 * &e2;
    let e8 = &e4 * &e4;
    let e12 = &e8 * &e4;
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(e12.coeffs);
    QSeries::new(coeffs).with_weight(Some(int(6)))
}
