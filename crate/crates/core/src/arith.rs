//! Exact arithmetic functions: class numbers, Hurwitz class numbers, divisor
//! sums, `λ_k`, the Taylor coefficients of `(1 - 2sX + nX²)⁻¹`, and four-square
//! sums of harmonic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// A positive definite binary quadratic form `ax² + bxy + cy²` in reduced
/// normal form: `|b| ≤ a ≤ c`, `b ≥ 0` if `|b| = a` or `a = c`, and
/// `gcd(a, b, c) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    /// `b² - 4ac`, negative for every reduced form.
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0
            && b.abs() <= a
            && a <= c
            && (b >= 0 || (b.abs() != a && a != c))
            && gcd3(a, b, c) == 1
            && self.discriminant() < 0
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

fn check_discriminant(d: i64) -> Result<()> {
    if d <= 0 || !matches!(d % 4, 0 | 3) {
        return Err(Error::Domain(format!(
            "discriminant -{d} is not negative with -d ≡ 0,1 (mod 4)"
        )));
    }
    Ok(())
}

/// All primitive reduced forms of discriminant `-d`.
pub fn reduced_forms(d: i64) -> Result<Vec<ReducedForm>> {
    check_discriminant(d)?;
    let mut forms = Vec::new();
    let mut a = 1;
    while 3 * a * a <= d {
        for b in (1 - a)..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd3(a, b, c) == 1 {
                forms.push(ReducedForm { a, b, c });
            }
        }
        a += 1;
    }
    Ok(forms)
}

/// `h(-d)`: the number of SL₂(ℤ)-classes of primitive positive definite forms
/// of discriminant `-d`.
pub fn class_number(d: i64) -> Result<u64> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// Class numbers `h(-d)` for every `d ≤ max` (zero where `d ≢ 0,3 mod 4`),
/// from a single sweep over reduced forms.
pub fn class_number_table(max: usize) -> Vec<u64> {
    let mut h = vec![0u64; max + 1];
    let max = max as i64;
    let mut a: i64 = 1;
    while 3 * a * a <= max {
        for b in (1 - a)..=a {
            // smallest admissible c is a; d = 4ac - b² grows with c
            let mut c = a;
            loop {
                let d = 4 * a * c - b * b;
                if d > max {
                    break;
                }
                if !(c == a && b < 0) && gcd3(a, b, c) == 1 {
                    h[d as usize] += 1;
                }
                c += 1;
            }
        }
        a += 1;
    }
    h
}

fn weight_divisor(d: u64) -> i64 {
    match d {
        3 => 3,
        4 => 2,
        _ => 1,
    }
}

/// The Hurwitz class number `H(n)`, computed from its definition as a
/// weighted sum of class numbers over square divisors.
pub fn hurwitz(n: u64) -> Rational {
    if n == 0 {
        return rat(-1, 12);
    }
    if matches!(n % 4, 1 | 2) {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    let mut f: u64 = 1;
    while f * f <= n {
        if n.is_multiple_of(f * f) {
            let d = n / (f * f);
            if matches!(d % 4, 0 | 3) {
                let h = class_number(d as i64).expect("d ≡ 0,3 mod 4");
                total += rat(h as i64, weight_divisor(d));
            }
        }
        f += 1;
    }
    total
}

/// Precomputed `H(0..=max)`.
///
/// Values are held as `6·H(n)` (an integer for `n ≥ 1`) so that bulk sums stay
/// in machine integers; [`HurwitzTable::get`] returns the exact rational.
#[derive(Debug, Clone)]
pub struct HurwitzTable {
    six_h: Vec<i64>,
}

impl HurwitzTable {
    pub fn new(max: usize) -> Self {
        let h = class_number_table(max);
        let mut six_h = vec![0i64; max + 1];
        for (d, &hd) in h.iter().enumerate() {
            if hd == 0 {
                continue;
            }
            let contrib = 6 * hd as i64 / weight_divisor(d as u64);
            let mut f = 1usize;
            while d * f * f <= max {
                six_h[d * f * f] += contrib;
                f += 1;
            }
        }
        HurwitzTable { six_h }
    }

    pub fn max(&self) -> usize {
        self.six_h.len() - 1
    }

    /// `H(n)`; negative arguments give 0.
    pub fn get(&self, n: i64) -> Rational {
        if n < 0 {
            return Rational::zero();
        }
        if n == 0 {
            return rat(-1, 12);
        }
        rat(self.six_h[n as usize], 6)
    }

    /// `12·H(n)`, always an integer (`-1` at `n = 0`, `0` for `n < 0`).
    pub fn twelve_h(&self, n: i64) -> i64 {
        match n {
            n if n < 0 => 0,
            0 => -1,
            n => 2 * self.six_h[n as usize],
        }
    }
}

/// Divisors of `n ≥ 1` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `σ_k(n) = Σ_{d|n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

/// `λ_k(n) = ½ Σ_{d|n} min(d, n/d)^k`.
pub fn lambda(k: u32, n: u64) -> Rational {
    let s: BigInt = divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d.min(n / d)).pow(k))
        .sum();
    Rational::new(s, BigInt::from(2))
}

/// Coefficient of `X^ell` in `(1 - 2sX + nX²)⁻¹`.
pub fn cohen_kernel_coeff(ell: u32, s: i64, n: i64) -> BigInt {
    let two_s = BigInt::from(2 * s);
    let n = BigInt::from(n);
    let mut prev = BigInt::one();
    if ell == 0 {
        return prev;
    }
    let mut cur = two_s.clone();
    for _ in 1..ell {
        let next = &two_s * &cur - &n * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The three harmonic polynomials in four variables appearing in the
/// higher class number relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HarmonicPoly {
    Y4,
    Y6,
    Y8,
}

impl HarmonicPoly {
    pub fn degree(self) -> u32 {
        match self {
            HarmonicPoly::Y4 => 4,
            HarmonicPoly::Y6 => 6,
            HarmonicPoly::Y8 => 8,
        }
    }

    pub fn eval(self, x: i64, y: i64, z: i64, t: i64) -> i128 {
        let (x, y, z, t) = (x as i128, y as i128, z as i128, t as i128);
        let (x2, y2, z2, t2) = (x * x, y * y, z * z, t * t);
        match self {
            HarmonicPoly::Y4 => x2 * x2 - 6 * x2 * y2 + y2 * y2,
            HarmonicPoly::Y6 => {
                let x4 = x2 * x2;
                let z4 = z2 * z2;
                x4 * x2 - 5 * x4 * y2 - 10 * x4 * z2 + 30 * x2 * y2 * z2 + 5 * x2 * z4
                    - 5 * y2 * z4
            }
            HarmonicPoly::Y8 => {
                let x4 = x2 * x2;
                let x6 = x4 * x2;
                let z4 = z2 * z2;
                let z6 = z4 * z2;
                13 * x6 * x2 + 63 * x6 * y2 - 490 * x6 * z2 + 63 * x6 * t2
                    - 630 * x4 * y2 * z2
                    - 315 * x4 * y2 * t2
                    + 1435 * x4 * z4
                    - 630 * x4 * z2 * t2
                    + 315 * x2 * y2 * z4
                    + 1890 * x2 * y2 * z2 * t2
                    - 616 * x2 * z6
                    + 315 * x2 * z4 * t2
                    - 315 * t2 * y2 * z4
                    + 22 * z6 * z2
            }
        }
    }
}

impl std::str::FromStr for HarmonicPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "Y4" => Ok(HarmonicPoly::Y4),
            "Y6" => Ok(HarmonicPoly::Y6),
            "Y8" => Ok(HarmonicPoly::Y8),
            _ => Err(Error::Domain(format!("unknown harmonic polynomial {s:?}"))),
        }
    }
}

/// `Σ P(x,y,z,t)` over all `(x,y,z,t) ∈ ℤ⁴` with `x²+y²+z²+t² = n`.
pub fn four_square_sum(poly: HarmonicPoly, n: u64) -> BigInt {
    four_square_table(poly, n as usize)
        .pop()
        .expect("table has n+1 entries")
}

/// `four_square_sum(poly, m)` for every `m ≤ max`, in one sweep of the
/// four-dimensional ball.
pub fn four_square_table(poly: HarmonicPoly, max: usize) -> Vec<BigInt> {
    let max = max as i64;
    let r = isqrt(max);
    let mut acc = vec![0i128; max as usize + 1];
    for x in -r..=r {
        let sx = x * x;
        let ry = isqrt(max - sx);
        for y in -ry..=ry {
            let sy = sx + y * y;
            let rz = isqrt(max - sy);
            for z in -rz..=rz {
                let sz = sy + z * z;
                let rt = isqrt(max - sz);
                for t in -rt..=rt {
                    acc[(sz + t * t) as usize] += poly.eval(x, y, z, t);
                }
            }
        }
    }
    acc.into_iter().map(BigInt::from).collect()
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Convenience: `σ_k(n)` as a rational.
pub fn sigma_rational(k: u32, n: u64) -> Rational {
    Rational::from_integer(sigma(k, n))
}

/// `H(n)` for `n` possibly negative (zero there), used by the relation sums.
pub fn hurwitz_signed(n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        hurwitz(n as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    /// Independent oracle: enumerate every primitive form with bounded
    /// coefficients and reduce it by the classical algorithm; count the
    /// distinct reduced representatives.
    fn class_number_by_reduction(d: i64) -> u64 {
        fn reduce(mut a: i64, mut b: i64, mut c: i64) -> (i64, i64, i64) {
            loop {
                if b > a || b <= -a {
                    // translate: b -> b - 2ka into (-a, a]
                    let k = (b + a - 1).div_euclid(2 * a);
                    let nb = b - 2 * k * a;
                    c = c - k * b + k * k * a;
                    b = nb;
                    continue;
                }
                if a > c {
                    std::mem::swap(&mut a, &mut c);
                    b = -b;
                    continue;
                }
                if a == c && b < 0 {
                    b = -b;
                }
                return (a, b, c);
            }
        }
        let mut seen = BTreeSet::new();
        for c in 1..=d {
            for b in -d..=d {
                let num = b * b + d;
                if num % (4 * c) != 0 {
                    continue;
                }
                let a = num / (4 * c);
                if gcd3(a, b, c) != 1 {
                    continue;
                }
                seen.insert(reduce(a, b, c));
            }
        }
        seen.len() as u64
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(3).unwrap(), 1);
        assert_eq!(class_number(4).unwrap(), 1);
        assert_eq!(class_number(23).unwrap(), 3);
        assert_eq!(
            reduced_forms(23).unwrap(),
            vec![
                ReducedForm { a: 1, b: 1, c: 6 },
                ReducedForm { a: 2, b: -1, c: 3 },
                ReducedForm { a: 2, b: 1, c: 3 },
            ]
        );
    }

    #[test]
    fn class_number_rejects_bad_discriminants() {
        for d in [0, -3, 1, 2, 5, 6, 21] {
            assert!(matches!(class_number(d), Err(Error::Domain(_))), "d = {d}");
        }
    }

    #[test]
    fn class_number_matches_reduction_oracle() {
        let table = class_number_table(200);
        for d in 1..=200i64 {
            if matches!(d % 4, 0 | 3) {
                let expected = class_number_by_reduction(d);
                assert_eq!(class_number(d).unwrap(), expected, "h(-{d})");
                assert_eq!(table[d as usize], expected, "table h(-{d})");
                for f in reduced_forms(d).unwrap() {
                    assert!(f.is_reduced());
                    assert_eq!(f.discriminant(), -d);
                }
            } else {
                assert_eq!(table[d as usize], 0);
            }
        }
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz(0), rat(-1, 12));
        assert_eq!(hurwitz(1), rat(0, 1));
        assert_eq!(hurwitz(3), rat(1, 3));
        assert_eq!(hurwitz(4), rat(1, 2));
        assert_eq!(hurwitz(12), rat(4, 3));
        assert_eq!(hurwitz(7), int(1));
    }

    #[test]
    fn hurwitz_table_matches_definition() {
        let table = HurwitzTable::new(600);
        for n in 0..=600u64 {
            assert_eq!(table.get(n as i64), hurwitz(n), "H({n})");
            assert_eq!(
                Rational::from_integer(BigInt::from(table.twelve_h(n as i64))),
                hurwitz(n) * int(12)
            );
        }
        assert_eq!(table.get(-5), Rational::zero());
    }

    #[test]
    fn hurwitz_sign_pattern() {
        for n in 1..=400u64 {
            let h = hurwitz(n);
            if matches!(n % 4, 1 | 2) {
                assert!(h.is_zero(), "H({n})");
            } else {
                assert!(h > Rational::zero(), "H({n})");
            }
        }
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma(1, 1), BigInt::from(1));
        assert_eq!(sigma(1, 6), BigInt::from(12));
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(1, 1), rat(1, 2));
        assert_eq!(lambda(1, 9), rat(5, 2));
        assert_eq!(lambda(3, 9), rat(29, 2));
        assert_eq!(lambda(2, 4), rat(6, 2));
    }

    #[test]
    fn kernel_coefficients() {
        for s in -5..=5 {
            for n in 0..10 {
                assert_eq!(cohen_kernel_coeff(0, s, n), BigInt::from(1));
                assert_eq!(cohen_kernel_coeff(2, s, n), BigInt::from(4 * s * s - n));
            }
        }
        assert_eq!(cohen_kernel_coeff(4, 1, 1), BigInt::from(5));
    }

    #[test]
    fn kernel_matches_printed_closed_forms() {
        for s in -20i64..=20 {
            for n in 1i64..=50 {
                let g4 = 16 * s.pow(4) - 12 * n * s * s + n * n;
                let g6 = 64 * s.pow(6) - 80 * s.pow(4) * n + 24 * s * s * n * n - n.pow(3);
                let g8 = 256 * s.pow(8) - 448 * s.pow(6) * n + 240 * s.pow(4) * n * n
                    - 40 * s * s * n.pow(3)
                    + n.pow(4);
                assert_eq!(cohen_kernel_coeff(4, s, n), BigInt::from(g4));
                assert_eq!(cohen_kernel_coeff(6, s, n), BigInt::from(g6));
                assert_eq!(cohen_kernel_coeff(8, s, n), BigInt::from(g8));
            }
        }
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(four_square_sum(HarmonicPoly::Y4, 0), BigInt::from(0));
        assert_eq!(four_square_sum(HarmonicPoly::Y4, 1), BigInt::from(4));
        assert_eq!(four_square_sum(HarmonicPoly::Y8, 1), BigInt::from(70));
    }

    #[test]
    fn four_square_matches_box_oracle() {
        for poly in [HarmonicPoly::Y4, HarmonicPoly::Y6, HarmonicPoly::Y8] {
            let table = four_square_table(poly, 100);
            let mut oracle = vec![0i128; 101];
            for x in -10i64..=10 {
                for y in -10i64..=10 {
                    for z in -10i64..=10 {
                        for t in -10i64..=10 {
                            let n = x * x + y * y + z * z + t * t;
                            if n <= 100 {
                                oracle[n as usize] += poly.eval(x, y, z, t);
                            }
                        }
                    }
                }
            }
            for n in 0..=100 {
                assert_eq!(table[n], BigInt::from(oracle[n]), "{poly:?} at {n}");
            }
        }
    }

    proptest! {
        #[test]
        fn kernel_parity_in_s(ell in 0u32..12, s in -30i64..30, n in 0i64..200) {
            let a = cohen_kernel_coeff(ell, s, n);
            let b = cohen_kernel_coeff(ell, -s, n);
            if ell % 2 == 0 { prop_assert_eq!(a, b) } else { prop_assert_eq!(a, -b) }
        }
    }
}
