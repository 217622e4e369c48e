//! Rankin–Cohen brackets of (half-)integral weight and the exact binomial
//! bookkeeping behind the bracket formula for Cohen's series.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rational::{int, rat, Rational};
use crate::report::{Failure, VerificationReport};

/// A q-series together with the weight used in bracket coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSeries {
    series: QSeries,
    weight: Rational,
}

impl WeightedSeries {
    pub fn new(series: QSeries, weight: Rational) -> Result<Self> {
        if !weight.is_positive() {
            return Err(Error::Domain(format!("bracket weights must be positive, got {weight}")));
        }
        Ok(WeightedSeries { series, weight })
    }

    pub fn series(&self) -> &QSeries {
        &self.series
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }
}

/// `m choose s` for rational `m`: `m(m-1)…(m-s+1)/s!`.
pub fn gen_binomial(m: &Rational, s: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..s {
        acc *= m - int(j as i64);
        acc /= int(j as i64 + 1);
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binom(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    Rational::new(factorial(n), factorial(k) * factorial(n - k))
}

/// `c_k = k!·√π/Γ(k+1/2) = 4^k (k!)² / (2k)!`.
pub fn c_constant(k: u32) -> Rational {
    let k_fact = factorial(k);
    Rational::new(BigInt::from(4).pow(k) * &k_fact * &k_fact, factorial(2 * k))
}

/// `b_{k,ℓ,m} = (2k+1)! / ((2ℓ)! (2m)! (2(k-ℓ-m)+1)!)`.
pub fn multinomial_b(k: u32, ell: u32, m: u32) -> Result<Rational> {
    if ell + m > k {
        return Err(Error::Domain(format!(
            "b_{{k,l,m}} needs l + m <= k, got k={k}, l={ell}, m={m}"
        )));
    }
    Ok(Rational::new(
        factorial(2 * k + 1),
        factorial(2 * ell) * factorial(2 * m) * factorial(2 * (k - ell - m) + 1),
    ))
}

/// The `n`-th Rankin–Cohen bracket
/// `Σ_{r+s=n} (-1)^r C(k+n-1, s) C(ℓ+n-1, r) D^r f · D^s g`,
/// tagged with weight `k + ℓ + 2n`.
pub fn rankin_cohen(f: &WeightedSeries, g: &WeightedSeries, n: u32) -> Result<QSeries> {
    if f.series.prec() != g.series.prec() {
        return Err(Error::PrecisionMismatch {
            left: f.series.prec(),
            right: g.series.prec(),
        });
    }
    let shift = int(n as i64 - 1);
    let top_f = &f.weight + &shift;
    let top_g = &g.weight + &shift;

    let f_derivs: Vec<QSeries> = std::iter::successors(Some(f.series.clone()), |s| Some(s.d_tau()))
        .take(n as usize + 1)
        .collect();
    let g_derivs: Vec<QSeries> = std::iter::successors(Some(g.series.clone()), |s| Some(s.d_tau()))
        .take(n as usize + 1)
        .collect();

    let mut acc = QSeries::zero(f.series.prec());
    for r in 0..=n {
        let s = n - r;
        let mut coeff = gen_binomial(&top_f, s) * gen_binomial(&top_g, r);
        if r % 2 == 1 {
            coeff = -coeff;
        }
        if coeff.is_zero() {
            continue;
        }
        let term = &f_derivs[r as usize] * &g_derivs[s as usize];
        acc = &acc + &term.scale(&coeff);
    }
    let weight = &f.weight + &g.weight + int(2 * n as i64);
    Ok(acc.with_weight(Some(weight)))
}

fn quarter_pow(e: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(4).pow(e))
}

/// Coefficients `V_m[j]` of `D_u^j R` in the closed form of `D_τ^m ℛ`
/// (up to the common prefactor `-(i/4) q^{-1/4} (-1)^m`).
fn closed_form_vector(m: u32) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 2 * m as usize + 2];
    for ell in 0..=m {
        let base = binom(2 * m + 1, 2 * ell) * quarter_pow(m - ell);
        v[2 * ell as usize] += &base * rat(1, 2);
        v[2 * ell as usize + 1] += base * rat(2 * (m - ell) as i64 + 1, 2 * ell as i64 + 1);
    }
    v
}

/// Exact checks of the binomial simplifications used in the induction
/// for the generating-series identity, for all index tuples with entries `≤ m_max`:
///
/// * `id1`, `id2`: the two simplifications of the middle coefficients;
/// * `last`, `first`: the boundary terms `ℓ = m+1` and `ℓ = 0`;
/// * `step`: the full induction step on coefficient vectors, i.e. applying
///   `D_τ` together with the heat equation maps the closed form at `m` to the
///   closed form at `m+1`;
/// * `split`: the two products of binomials that collapse to `b_{k,ℓ,m}`;
/// * `ratio`: the reduction of `b_{k,ℓ,m}` against `c_k` and the two
///   half-integral binomials.
pub fn check_cohen_binomial_identities(m_max: u32) -> VerificationReport {
    let report = VerificationReport::new("binom", (0, m_max as i64)).param("m_max", m_max);
    match first_binomial_failure(m_max) {
        None => report,
        Some(f) => report.fail(f),
    }
}

fn mismatch(n: u32, context: String, lhs: &Rational, rhs: &Rational) -> Option<Failure> {
    (lhs != rhs).then(|| Failure {
        n: n as i64,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        context: Some(context),
    })
}

fn first_binomial_failure(m_max: u32) -> Option<Failure> {
    let half = rat(1, 2);
    for m in 0..=m_max {
        for ell in 1..=m {
            let (mi, li) = (m as i64, ell as i64);
            let c = binom(2 * m + 1, 2 * ell);
            let ratio = rat((2 * li - 1) * (2 * li), (2 * (mi - li) + 2) * (2 * (mi - li) + 3));

            let lhs = &c * (&half + rat(2 * (2 * mi - li) + 5, 4 * li - 2) * &ratio);
            let rhs = &half * binom(2 * m + 3, 2 * ell);
            if let Some(f) = mismatch(m, format!("id1 m={m} l={ell}"), &lhs, &rhs) {
                return Some(f);
            }

            let lhs = &c
                * (rat(2 * (mi + li) + 3, 2 * li + 1) + rat(2 * (mi - li) + 3, 2 * li - 1) * &ratio);
            let rhs = rat(2 * (mi - li) + 3, 2 * li + 1) * binom(2 * m + 3, 2 * ell);
            if let Some(f) = mismatch(m, format!("id2 m={m} l={ell}"), &lhs, &rhs) {
                return Some(f);
            }
        }

        let mi = m as i64;
        let c = binom(2 * m + 1, 2 * m);
        let lhs = &c * rat(2 * mi + 3, 4 * mi + 2);
        let rhs = &half * int(2 * mi + 3);
        if let Some(f) = mismatch(m, format!("last/even m={m}"), &lhs, &rhs) {
            return Some(f);
        }
        let lhs = &c * rat(1, 2 * mi + 1);
        let rhs = rat(1, 2 * mi + 3) * int(2 * mi + 3);
        if let Some(f) = mismatch(m, format!("last/odd m={m}"), &lhs, &rhs) {
            return Some(f);
        }

        let lhs = rat(1, 8) * quarter_pow(m);
        let rhs = &half * quarter_pow(m + 1);
        if let Some(f) = mismatch(m, format!("first/even m={m}"), &lhs, &rhs) {
            return Some(f);
        }
        let lhs = (rat(1, 4) * int(2 * mi + 1) + &half) * quarter_pow(m);
        let rhs = int(2 * mi + 3) * quarter_pow(m + 1);
        if let Some(f) = mismatch(m, format!("first/odd m={m}"), &lhs, &rhs) {
            return Some(f);
        }

        if m < m_max {
            // D_τ(q^{-1/4} X) = -¼ q^{-1/4} X + q^{-1/4} D_τ X, and
            // D_τ[D_u^j R(-τ-½; 2τ)] = -D_u^{j+1} R - D_u^{j+2} R by the heat equation.
            let v = closed_form_vector(m);
            let next = closed_form_vector(m + 1);
            let mut stepped = vec![Rational::zero(); next.len()];
            for (j, c) in v.iter().enumerate() {
                stepped[j] += c * rat(1, 4);
                stepped[j + 1] += c;
                stepped[j + 2] += c;
            }
            for j in 0..next.len() {
                if let Some(f) = mismatch(m, format!("step m={m} j={j}"), &stepped[j], &next[j]) {
                    return Some(f);
                }
            }
        }
    }

    for k in 0..=m_max {
        let c_k = c_constant(k);
        let kr = int(k as i64);
        for m in 0..=k {
            for ell in 0..=(k - m) {
                let b = multinomial_b(k, ell, m).expect("l + m <= k");
                let lhs = binom(2 * k + 1, 2 * ell) * binom(2 * (k - ell) + 1, 2 * m);
                if let Some(f) = mismatch(k, format!("split/even k={k} l={ell} m={m}"), &lhs, &b) {
                    return Some(f);
                }
                if 2 * (k - ell) >= 2 * m {
                    let lhs = binom(2 * k + 1, 2 * ell + 1) * binom(2 * (k - ell), 2 * m);
                    let rhs = rat(2 * (k - ell - m) as i64 + 1, 2 * ell as i64 + 1) * &b;
                    if let Some(f) =
                        mismatch(k, format!("split/odd k={k} l={ell} m={m}"), &lhs, &rhs)
                    {
                        return Some(f);
                    }
                }

                let denom = &c_k
                    * gen_binomial(&(&kr + &half), m)
                    * gen_binomial(&(&kr - &half), k - m);
                let lhs = quarter_pow(k - ell - m) * &b / denom;
                let rhs = binom(2 * (k - m) + 1, 2 * ell) * quarter_pow(k - ell - m);
                if let Some(f) = mismatch(k, format!("ratio k={k} l={ell} m={m}"), &lhs, &rhs) {
                    return Some(f);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{hurwitz_series, theta_series};
    use proptest::prelude::*;

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&rat(7, 3), 0), int(1));
        assert_eq!(gen_binomial(&rat(3, 2), 1), rat(3, 2));
        assert_eq!(gen_binomial(&rat(1, 2), 2), rat(-1, 8));
        for n in 0..15u32 {
            for s in 0..=n {
                assert_eq!(gen_binomial(&int(n as i64), s), binom(n, s));
            }
            assert!(gen_binomial(&int(n as i64), n + 1).is_zero());
        }
    }

    #[test]
    fn c_constant_examples() {
        assert_eq!(c_constant(0), int(1));
        assert_eq!(c_constant(1), int(2));
        assert_eq!(c_constant(2), rat(8, 3));
    }

    /// `Γ(k + ½)/√π = ½·(3/2)…(k - ½)` straight from `Γ(x+1) = xΓ(x)`, so
    /// `k!√π/Γ(k+½)` is available without the duplication formula.
    #[test]
    fn c_constant_matches_gamma_quotient() {
        for k in 0..=10u32 {
            let gamma_over_sqrt_pi: Rational =
                (0..k).map(|j| rat(2 * j as i64 + 1, 2)).product();
            let expected = Rational::from_integer(factorial(k)) / gamma_over_sqrt_pi;
            assert_eq!(c_constant(k), expected, "k = {k}");
            if k <= 5 {
                let numeric = (1..=k).map(f64::from).product::<f64>() * std::f64::consts::PI.sqrt()
                    / libm::tgamma(k as f64 + 0.5);
                assert!((crate::rational::to_f64(&c_constant(k)) - numeric).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn c_constant_times_half_binomial_is_one() {
        for k in 0..=20u32 {
            let v = c_constant(k) * gen_binomial(&(int(k as i64) - rat(1, 2)), k);
            assert_eq!(v, int(1), "k = {k}");
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_b(4, 0, 0).unwrap(), int(1));
        assert_eq!(multinomial_b(1, 0, 1).unwrap(), int(3));
        assert_eq!(multinomial_b(2, 1, 1).unwrap(), int(30));
        assert!(multinomial_b(2, 2, 1).is_err());
    }

    fn weighted(series: QSeries, w: Rational) -> WeightedSeries {
        WeightedSeries::new(series, w).unwrap()
    }

    #[test]
    fn bracket_zero_is_product() {
        let h = weighted(hurwitz_series(20), rat(3, 2));
        let t = weighted(theta_series(20), rat(1, 2));
        let b = rankin_cohen(&h, &t, 0).unwrap();
        assert_eq!(b.coeffs(), (hurwitz_series(20) * theta_series(20)).coeffs());
        assert_eq!(b.weight(), Some(&int(2)));
    }

    #[test]
    fn first_bracket_by_hand() {
        // [ℋ,ϑ]₁ = (3/2)·ℋ·Dϑ - (1/2)·Dℋ·ϑ; at q³ only Dℋ·ϑ contributes 3·H(3) = 1
        let h = weighted(hurwitz_series(3), rat(3, 2));
        let t = weighted(theta_series(3), rat(1, 2));
        let b = rankin_cohen(&h, &t, 1).unwrap();
        assert_eq!(b.coeff(3), rat(-1, 2));
        // at q¹: (3/2)·H(0)·2 - (1/2)·(0) = -1/4
        assert_eq!(b.coeff(1), rat(-1, 4));
        assert_eq!(b.weight(), Some(&int(4)));
    }

    #[test]
    fn bracket_errors() {
        assert!(WeightedSeries::new(theta_series(3), int(0)).is_err());
        let a = weighted(theta_series(3), rat(1, 2));
        let b = weighted(theta_series(4), rat(1, 2));
        assert_eq!(
            rankin_cohen(&a, &b, 1),
            Err(Error::PrecisionMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn binomial_identities() {
        assert!(check_cohen_binomial_identities(1).passed());
        assert!(check_cohen_binomial_identities(10).passed());
        // boundary k = l + m: exponent of 1/4 is zero
        for k in 0..=6u32 {
            for ell in 0..=k {
                let m = k - ell;
                let b = multinomial_b(k, ell, m).unwrap();
                let half = rat(1, 2);
                let kr = int(k as i64);
                let denom = c_constant(k)
                    * gen_binomial(&(&kr + &half), m)
                    * gen_binomial(&(&kr - &half), k - m);
                assert_eq!(b / denom, binom(2 * (k - m) + 1, 2 * ell));
            }
        }
    }

    #[test]
    fn induction_step_detects_tampering() {
        // perturbing the closed form must break the step identity
        let v = closed_form_vector(2);
        let mut stepped = vec![Rational::zero(); v.len() + 2];
        for (j, c) in v.iter().enumerate() {
            stepped[j] += c * rat(1, 4);
            stepped[j + 1] += c;
            stepped[j + 2] += c;
        }
        assert_eq!(stepped, closed_form_vector(3));
        stepped[0] += int(1);
        assert_ne!(stepped, closed_form_vector(3));
    }

    fn arb_series(prec: usize) -> impl Strategy<Value = QSeries> {
        proptest::collection::vec(-30i64..30, prec + 1).prop_map(QSeries::from_integers)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn first_bracket_antisymmetric(f in arb_series(30), g in arb_series(30), w in 1i64..8) {
            let fw = weighted(f, int(w));
            let gw = weighted(g, int(w));
            let fg = rankin_cohen(&fw, &gw, 1).unwrap();
            let gf = rankin_cohen(&gw, &fw, 1).unwrap();
            let neg = -&gf;
            prop_assert_eq!(fg.coeffs(), neg.coeffs());
            let ff = rankin_cohen(&fw, &fw, 1).unwrap();
            prop_assert!(ff.is_zero());
        }
    }
}
