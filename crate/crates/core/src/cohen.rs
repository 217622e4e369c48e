//! Cohen's generating series
//! `Σ_{n odd} [Σ_{s² ≤ n} H(n-s²)/(1 - 2sX + nX²) + Σ_k λ_{2k+1}(n) X^{2k}] qⁿ`,
//! its `X^ℓ` coefficients by two independent routes, and the class number
//! relations that follow from identifying them as modular forms.
//!
//! Certification is coefficient-wise: a coefficient series that matches a
//! basis decomposition through `q^N` with `N` well past the Sturm bound is
//! reported as identified. The modular transformation law itself is not
//! checked here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{cohen_kernel_coeff, four_square_table, isqrt, lambda, sigma, HarmonicPoly, HurwitzTable};
use crate::error::{Error, Result};
use crate::gamma04::{identify, sturm_bound, SAFETY_MARGIN};
use crate::qseries::{hurwitz_series_from, lambda_odd_series, theta_series, QSeries};
use crate::rankin::{c_constant, rankin_cohen, WeightedSeries};
use crate::rational::{int, rat, Rational};
use crate::report::{Failure, VerificationReport};

/// `Σ_{s² ≤ n} u_ℓ(s, n)·H(n - s²)` exactly, `u_ℓ` the kernel coefficient.
fn kernel_sum(table: &HurwitzTable, ell: u32, n: i64) -> Rational {
    let r = isqrt(n);
    let mut acc = BigInt::zero();
    for s in -r..=r {
        let h12 = table.twelve_h(n - s * s);
        if h12 != 0 {
            acc += cohen_kernel_coeff(ell, s, n) * h12;
        }
    }
    Rational::new(acc, BigInt::from(12))
}

/// The `X^ell` coefficient of Cohen's series, summed directly from class
/// numbers through `q^prec`.
pub fn cohen_coeff_direct(ell: u32, prec: usize) -> QSeries {
    cohen_coeff_direct_with(&HurwitzTable::new(prec), ell, prec)
}

pub fn cohen_coeff_direct_with(table: &HurwitzTable, ell: u32, prec: usize) -> QSeries {
    let coeffs: Vec<Rational> = (0..=prec)
        .into_par_iter()
        .map(|n| {
            if n % 2 == 0 {
                return Rational::zero();
            }
            let mut c = kernel_sum(table, ell, n as i64);
            if ell.is_multiple_of(2) {
                c += lambda(ell + 1, n as u64);
            }
            c
        })
        .collect();
    QSeries::new(coeffs).with_weight(Some(int(ell as i64 + 2)))
}

/// The `X^{2k}` coefficient as
/// `(c_k/2)([ℋ,ϑ]_k(τ) - [ℋ,ϑ]_k(τ+½)) + Λ_{2k+1,odd}(τ)`, with the bracket
/// taken at weights 3/2 and 1/2.
pub fn cohen_coeff_bracket(k: u32, prec: usize) -> QSeries {
    cohen_coeff_bracket_with(&HurwitzTable::new(prec), k, prec)
}

pub fn cohen_coeff_bracket_with(table: &HurwitzTable, k: u32, prec: usize) -> QSeries {
    let h = WeightedSeries::new(hurwitz_series_from(table, prec), rat(3, 2)).expect("positive weight");
    let t = WeightedSeries::new(theta_series(prec), rat(1, 2)).expect("positive weight");
    let bracket = rankin_cohen(&h, &t, k).expect("equal precision");
    let diff = &bracket - &bracket.half_shift();
    let lam = lambda_odd_series(2 * k + 1, prec).expect("odd index");
    (&diff.scale(&(c_constant(k) * rat(1, 2))) + &lam).with_weight(Some(int(2 * k as i64 + 2)))
}

/// The class number relations that can be checked number by number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationId {
    /// `Σ_s H(4n - s²) + 2λ₁(n) = 2σ₁(n)` for all `n ≥ 1`.
    Eq1,
    /// `Σ_s H(n - s²) + λ₁(n) = σ₁(n)/3` for odd `n`.
    Eq3,
    /// `Σ_s (4s² - n) H(n - s²) + λ₃(n) = 0` for odd `n`.
    Cc1,
    /// `Σ_s g₄ H(n - s²) + λ₅(n) = -(1/12) Σ 𝒴₄` for odd `n`.
    Cc2,
    /// `Σ_s g₆ H(n - s²) + λ₇(n) = -(1/3) Σ 𝒴₆` for odd `n`.
    Cc3,
    /// `Σ_s g₈ H(n - s²) + λ₉(n) = -(1/70) Σ 𝒴₈` for odd `n`.
    Cc4,
}

impl RelationId {
    pub const ALL: [RelationId; 6] = [
        RelationId::Eq1,
        RelationId::Eq3,
        RelationId::Cc1,
        RelationId::Cc2,
        RelationId::Cc3,
        RelationId::Cc4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::Eq1 => "eq1",
            RelationId::Eq3 => "eq3",
            RelationId::Cc1 => "cc1",
            RelationId::Cc2 => "cc2",
            RelationId::Cc3 => "cc3",
            RelationId::Cc4 => "cc4",
        }
    }

    pub fn odd_only(self) -> bool {
        self != RelationId::Eq1
    }

    fn four_square(self) -> Option<(HarmonicPoly, Rational)> {
        match self {
            RelationId::Cc2 => Some((HarmonicPoly::Y4, rat(-1, 12))),
            RelationId::Cc3 => Some((HarmonicPoly::Y6, rat(-1, 3))),
            RelationId::Cc4 => Some((HarmonicPoly::Y8, rat(-1, 70))),
            _ => None,
        }
    }

    /// Kernel index `ℓ` for the `cc` relations.
    fn kernel_index(self) -> Option<u32> {
        match self {
            RelationId::Cc1 => Some(2),
            RelationId::Cc2 => Some(4),
            RelationId::Cc3 => Some(6),
            RelationId::Cc4 => Some(8),
            _ => None,
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown relation {s:?}")))
    }
}

/// Precomputed tables for evaluating one relation over `n ≤ max`.
pub struct RelationContext {
    id: RelationId,
    hurwitz: HurwitzTable,
    four_squares: Option<Vec<BigInt>>,
}

impl RelationContext {
    pub fn new(id: RelationId, max: u64) -> Self {
        let hmax = if id == RelationId::Eq1 { 4 * max } else { max };
        RelationContext {
            id,
            hurwitz: HurwitzTable::new(hmax as usize),
            four_squares: id
                .four_square()
                .map(|(poly, _)| four_square_table(poly, max as usize)),
        }
    }

    /// Whether `n` lies in the relation's domain.
    pub fn applies(&self, n: u64) -> bool {
        n >= 1 && (!self.id.odd_only() || n % 2 == 1)
    }

    /// Both sides of the relation at `n`.
    pub fn sides(&self, n: u64) -> (Rational, Rational) {
        let ni = n as i64;
        match self.id {
            RelationId::Eq1 => {
                let lhs = kernel_sum(&self.hurwitz, 0, 4 * ni) + lambda(1, n) * int(2);
                (lhs, Rational::from_integer(sigma(1, n) * 2))
            }
            RelationId::Eq3 => {
                let lhs = kernel_sum(&self.hurwitz, 0, ni) + lambda(1, n);
                (lhs, Rational::new(sigma(1, n), BigInt::from(3)))
            }
            id => {
                let ell = id.kernel_index().expect("cc relation");
                let lhs = kernel_sum(&self.hurwitz, ell, ni) + lambda(ell + 1, n);
                let rhs = match (id.four_square(), &self.four_squares) {
                    (Some((_, factor)), Some(table)) => {
                        factor * Rational::from_integer(table[n as usize].clone())
                    }
                    _ => Rational::zero(),
                };
                (lhs, rhs)
            }
        }
    }
}

/// Checks a relation exactly for every applicable `n` in `[lo, hi]`. The
/// reported failure, if any, is the smallest failing `n`.
pub fn check_relation(id: RelationId, lo: u64, hi: u64) -> VerificationReport {
    let ctx = RelationContext::new(id, hi.max(1));
    let ns: Vec<u64> = (lo..=hi).filter(|&n| ctx.applies(n)).collect();
    let report = VerificationReport::new(id.name(), (lo as i64, hi as i64))
        .param("relation", id)
        .param("tested", ns.len());
    let failure = ns.par_iter().find_map_first(|&n| {
        let (lhs, rhs) = ctx.sides(n);
        (lhs != rhs).then(|| Failure {
            n: n as i64,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            context: None,
        })
    });
    match failure {
        None => report,
        Some(f) => report.fail(f),
    }
}

fn first_difference(a: &QSeries, b: &QSeries) -> Option<Failure> {
    let prec = a.prec().min(b.prec());
    (0..=prec).find(|&n| a.coeffs()[n] != b.coeffs()[n]).map(|n| Failure {
        n: n as i64,
        lhs: a.coeffs()[n].to_string(),
        rhs: b.coeffs()[n].to_string(),
        context: None,
    })
}

/// Certifies the generating-series identity and the cusp-form statement for every
/// `k ≤ k_max` through `q^prec`. For each `k` three reports are produced:
///
/// * `routes`: the direct `X^{2k}` coefficient equals the bracket form;
/// * `odd`: the `X^{2k+1}` coefficient vanishes;
/// * `identify`: `k = 0` decomposes in `M₂`, `k ≥ 1` in the cusp basis of
///   weight `2k + 2`.
pub fn verify_theorem(k_max: u32, prec: usize) -> Result<Vec<VerificationReport>> {
    let required = sturm_bound(2 * k_max + 2) + SAFETY_MARGIN;
    if prec < required {
        return Err(Error::InsufficientPrecision {
            required,
            available: prec,
        });
    }
    let table = HurwitzTable::new(prec);
    let range = (0, prec as i64);
    let mut reports = Vec::new();
    for k in 0..=k_max {
        let weight = 2 * k + 2;
        let direct = cohen_coeff_direct_with(&table, 2 * k, prec);
        let bracket = cohen_coeff_bracket_with(&table, k, prec);

        let routes = VerificationReport::new("theorem.routes", range)
            .param("k", k)
            .param("ell", 2 * k);
        reports.push(match first_difference(&direct, &bracket) {
            None => routes,
            Some(f) => routes.fail(f),
        });

        let odd = cohen_coeff_direct_with(&table, 2 * k + 1, prec);
        let odd_report = VerificationReport::new("theorem.odd", range)
            .param("k", k)
            .param("ell", 2 * k + 1);
        reports.push(match first_difference(&odd, &QSeries::zero(prec)) {
            None => odd_report,
            Some(f) => odd_report.fail(f),
        });

        let cusp = k >= 1;
        let mut ident = VerificationReport::new("theorem.identify", range)
            .param("k", k)
            .param("weight", weight)
            .param("space", if cusp { "S" } else { "M" });
        match identify(&direct, weight as i64, cusp) {
            Ok(d) => {
                ident = ident.param("combination", d.combination());
                ident.decomposition = Some(d);
            }
            Err(Error::NotInSpace { index }) => {
                let n = index.map_or(-1, |i| i as i64);
                ident = ident.fail(Failure {
                    n,
                    lhs: index.map_or_else(String::new, |i| direct.coeffs()[i].to_string()),
                    rhs: String::new(),
                    context: Some(format!(
                        "model falsification: X^{} coefficient not in the weight-{weight} basis span",
                        2 * k
                    )),
                });
            }
            Err(e) => return Err(e),
        }
        reports.push(ident);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::four_square_sum;
    use crate::qseries::f2_series;

    #[test]
    fn direct_route_examples() {
        let d0 = cohen_coeff_direct(0, 9);
        assert_eq!(d0.coeff(1), rat(1, 3));
        let d2 = cohen_coeff_direct(2, 9);
        assert_eq!(d2.coeff(1), int(0));
        assert!(cohen_coeff_direct(1, 60).is_zero());
        for n in (0..=9).step_by(2) {
            assert!(d0.coeff(n).is_zero());
        }
    }

    #[test]
    fn bracket_route_examples() {
        let b0 = cohen_coeff_bracket(0, 9);
        assert_eq!(b0.coeff(1), rat(1, 3));
        assert!(b0.coeff(2).is_zero());
        let b2 = cohen_coeff_bracket(2, 9);
        assert_eq!(b2.coeff(1), rat(-1, 3));
        assert_eq!(
            b2.coeff(1),
            rat(-1, 12) * Rational::from_integer(four_square_sum(HarmonicPoly::Y4, 1))
        );
    }

    #[test]
    fn routes_agree_small() {
        for k in 0..=3 {
            assert_eq!(
                cohen_coeff_direct(2 * k, 80).coeffs(),
                cohen_coeff_bracket(k, 80).coeffs(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn relation_examples() {
        let eq1 = RelationContext::new(RelationId::Eq1, 1);
        assert_eq!(eq1.sides(1), (int(2), int(2)));
        let cc1 = RelationContext::new(RelationId::Cc1, 9);
        assert_eq!(cc1.sides(9), (int(0), int(0)));
        let cc4 = RelationContext::new(RelationId::Cc4, 1);
        assert_eq!(cc4.sides(1), (int(-1), int(-1)));
        for id in RelationId::ALL {
            assert!(check_relation(id, 1, 61).passed(), "{id}");
        }
    }

    #[test]
    fn relation_domain_and_parsing() {
        assert_eq!("cc3".parse::<RelationId>().unwrap(), RelationId::Cc3);
        assert!("cc5".parse::<RelationId>().is_err());
        let eq3 = RelationContext::new(RelationId::Eq3, 10);
        assert!(!eq3.applies(4) && eq3.applies(5) && !eq3.applies(0));
        let r = check_relation(RelationId::Eq3, 2, 2);
        assert!(r.passed());
        assert_eq!(r.params["tested"], "0");
    }

    #[test]
    fn broken_relation_reports_smallest_failure() {
        // doubling the left side breaks the odd relation; n = 1 is skipped here
        let ctx = RelationContext::new(RelationId::Eq3, 31);
        let first = (3..=31u64)
            .filter(|n| n % 2 == 1)
            .find(|&n| {
                let (l, r) = ctx.sides(n);
                l * int(2) != r
            })
            .unwrap();
        assert_eq!(first, 3);
        let d = cohen_coeff_direct(0, 21);
        let bad = &d + &QSeries::from_fn(21, |n| if n == 15 { int(1) } else { int(0) });
        assert_eq!(first_difference(&d, &bad).unwrap().n, 15);
    }

    #[test]
    fn weight_two_series_is_a_third_of_f2() {
        let d0 = cohen_coeff_direct(0, 60);
        assert_eq!(d0.coeffs(), f2_series(60).scale(&rat(1, 3)).coeffs());
    }

    #[test]
    fn theorem_small() {
        let reports = verify_theorem(2, 30).unwrap();
        assert_eq!(reports.len(), 9);
        assert!(reports.iter().all(|r| r.passed()), "{reports:#?}");
        let d0 = reports[2].decomposition.as_ref().unwrap();
        assert_eq!(d0.coefficients, vec![int(0), rat(1, 3)]);
        let d2 = reports[8].decomposition.as_ref().unwrap();
        assert_eq!(d2.coefficients, vec![rat(-1, 3)]);
        assert!(matches!(
            verify_theorem(4, 10),
            Err(Error::InsufficientPrecision { required: 15, available: 10 })
        ));
    }
}
