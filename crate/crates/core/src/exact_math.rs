//! Exact integer and rational arithmetic.
//!
//! Every rank, bound and ratio in the crate is carried as a [`Natural`] or a
//! [`Ratio`]. Comparisons never touch floating point; decimal renderings are
//! produced from the exact values by integer long division.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Result, WaringError};

/// Significant digits used by every `*_approx` rendering.
pub const APPROX_DIGITS: usize = 12;

/// Arbitrary-precision nonnegative integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow(&self, exp: u32) -> Natural {
        Natural(Pow::pow(&self.0, exp))
    }

    /// Subtraction that returns `None` instead of going negative.
    pub fn checked_sub(&self, other: &Natural) -> Option<Natural> {
        if self.0 >= other.0 {
            Some(Natural(&self.0 - &other.0))
        } else {
            None
        }
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    /// Machine-word view when the value fits.
    pub fn to_u64(&self) -> Option<u64> {
        num_traits::ToPrimitive::to_u64(&self.0)
    }

    /// Decimal rendering rounded to [`APPROX_DIGITS`] significant digits.
    pub fn approx(&self) -> String {
        approx_decimal(&self.0, &BigUint::one())
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<usize> for Natural {
    fn from(v: usize) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl FromStr for Natural {
    type Err = WaringError;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse::<BigUint>()
            .map(Natural)
            .map_err(|e| WaringError::Parse(format!("{s:?}: {e}")))
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<'a> Add<&'a Natural> for &'a Natural {
    type Output = Natural;
    fn add(self, rhs: &'a Natural) -> Natural {
        Natural(&self.0 + &rhs.0)
    }
}

impl Add for Natural {
    type Output = Natural;
    fn add(self, rhs: Natural) -> Natural {
        Natural(self.0 + rhs.0)
    }
}

impl<'a> Mul<&'a Natural> for &'a Natural {
    type Output = Natural;
    fn mul(self, rhs: &'a Natural) -> Natural {
        Natural(&self.0 * &rhs.0)
    }
}

impl Mul for Natural {
    type Output = Natural;
    fn mul(self, rhs: Natural) -> Natural {
        Natural(self.0 * rhs.0)
    }
}

impl Mul<u64> for &Natural {
    type Output = Natural;
    fn mul(self, rhs: u64) -> Natural {
        Natural(&self.0 * rhs)
    }
}

impl Mul<u64> for Natural {
    type Output = Natural;
    fn mul(self, rhs: u64) -> Natural {
        Natural(self.0 * rhs)
    }
}

impl Sum for Natural {
    fn sum<I: Iterator<Item = Natural>>(iter: I) -> Natural {
        iter.fold(Natural::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Natural> for Natural {
    fn sum<I: Iterator<Item = &'a Natural>>(iter: I) -> Natural {
        iter.fold(Natural::zero(), |acc, x| &acc + x)
    }
}

impl Product for Natural {
    fn product<I: Iterator<Item = Natural>>(iter: I) -> Natural {
        iter.fold(Natural::one(), |acc, x| acc * x)
    }
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    numer: BigInt,
    denom: BigInt,
}

impl Ratio {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Ratio> {
        if denom.is_zero() {
            return Err(WaringError::DivisionByZero);
        }
        let g = numer.gcd(&denom);
        let (mut numer, mut denom) = if g.is_zero() {
            (numer, denom)
        } else {
            (numer / &g, denom / &g)
        };
        if denom.is_negative() {
            numer = -numer;
            denom = -denom;
        }
        if numer.is_zero() {
            denom = BigInt::one();
        }
        Ok(Ratio { numer, denom })
    }

    pub fn from_naturals(numer: &Natural, denom: &Natural) -> Result<Ratio> {
        Ratio::new(
            BigInt::from_biguint(Sign::Plus, numer.0.clone()),
            BigInt::from_biguint(Sign::Plus, denom.0.clone()),
        )
    }

    /// Convenience for small literal fractions.
    pub fn from_i64(numer: i64, denom: i64) -> Result<Ratio> {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_integer(value: &Natural) -> Ratio {
        Ratio {
            numer: BigInt::from_biguint(Sign::Plus, value.0.clone()),
            denom: BigInt::one(),
        }
    }

    pub fn zero() -> Ratio {
        Ratio {
            numer: BigInt::zero(),
            denom: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn abs(&self) -> Ratio {
        Ratio {
            numer: self.numer.abs(),
            denom: self.denom.clone(),
        }
    }

    /// Decimal rendering rounded to [`APPROX_DIGITS`] significant digits.
    pub fn approx(&self) -> String {
        let body = approx_decimal(self.numer.magnitude(), self.denom.magnitude());
        if self.numer.is_negative() {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Exact three-way comparison by cross-multiplication (denominators are positive).
pub fn ratio_compare(a: &Ratio, b: &Ratio) -> Ordering {
    (&a.numer * &b.denom).cmp(&(&b.numer * &a.denom))
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        ratio_compare(self, other)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Ratio> for &'a Ratio {
    type Output = Ratio;
    fn add(self, rhs: &'a Ratio) -> Ratio {
        Ratio::new(
            &self.numer * &rhs.denom + &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
        .expect("product of positive denominators")
    }
}

impl<'a> Sub<&'a Ratio> for &'a Ratio {
    type Output = Ratio;
    fn sub(self, rhs: &'a Ratio) -> Ratio {
        Ratio::new(
            &self.numer * &rhs.denom - &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
        .expect("product of positive denominators")
    }
}

impl<'a> Mul<&'a Ratio> for &'a Ratio {
    type Output = Ratio;
    fn mul(self, rhs: &'a Ratio) -> Ratio {
        Ratio::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
            .expect("product of positive denominators")
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for Ratio {
    type Err = WaringError;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| WaringError::Parse(format!("{s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Ratio::new(parse(p)?, parse(q)?),
            None => Ratio::new(parse(s)?, BigInt::one()),
        }
    }
}

/// Binomial coefficient C(m, k); zero when k > m.
pub fn binomial(m: u64, k: u64) -> Natural {
    if k > m {
        return Natural::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc = C(m - k + i, i) after this step, so the division is exact.
        acc *= m - k + i;
        acc /= i;
    }
    Natural(acc)
}

/// Binomial with the vanishing convention for out-of-range arguments:
/// a negative top or a negative bottom gives 0.
pub fn binomial_signed(m: i64, k: i64) -> Natural {
    if m < 0 || k < 0 {
        Natural::zero()
    } else {
        binomial(m as u64, k as u64)
    }
}

/// Exact ceiling of `a / b`.
pub fn ceil_div(a: &Natural, b: &Natural) -> Result<Natural> {
    if b.is_zero() {
        return Err(WaringError::DivisionByZero);
    }
    let (q, r) = a.0.div_rem(&b.0);
    Ok(Natural(if r.is_zero() { q } else { q + 1u32 }))
}

pub fn factorial(n: u32) -> Natural {
    (1..=u64::from(n)).map(Natural::from).product()
}

fn pow10(e: usize) -> BigUint {
    Pow::pow(BigUint::from(10u32), e)
}

/// Rounds `num / den` to [`APPROX_DIGITS`] significant digits using only
/// integer arithmetic, printed in the style of C's `%.12g`.
fn approx_decimal(num: &BigUint, den: &BigUint) -> String {
    if num.is_zero() {
        return "0".to_string();
    }
    // Decimal exponent e with 10^e <= num/den < 10^(e+1).
    let mut e = num.to_str_radix(10).len() as i64 - den.to_str_radix(10).len() as i64;
    let scaled_ge = |e: i64| -> bool {
        if e >= 0 {
            *num >= den * pow10(e as usize)
        } else {
            num * pow10((-e) as usize) >= *den
        }
    };
    while !scaled_ge(e) {
        e -= 1;
    }
    while scaled_ge(e + 1) {
        e += 1;
    }
    let shift = APPROX_DIGITS as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (num * pow10(shift as usize), den.clone())
    } else {
        (num.clone(), den * pow10((-shift) as usize))
    };
    let (mut m, r) = n.div_rem(&d);
    if r * 2u32 >= d {
        m += 1u32;
    }
    if m == pow10(APPROX_DIGITS) {
        m /= 10u32;
        e += 1;
    }
    let digits = m.to_str_radix(10);
    if (-5..APPROX_DIGITS as i64).contains(&e) {
        let s = if e >= 0 {
            let split = (e + 1) as usize;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
        };
        trim_fraction(&s)
    } else {
        let mantissa = trim_fraction(&format!("{}.{}", &digits[..1], &digits[1..]));
        let sign = if e < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", e.abs())
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn r(p: i64, q: i64) -> Ratio {
        Ratio::from_i64(p, q).unwrap()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), nat(6));
        assert_eq!(binomial(6, 3), nat(20));
        assert_eq!(binomial(9, 0), nat(1));
        assert_eq!(binomial(0, 0), nat(1));
        assert_eq!(binomial(2, 5), nat(0));
    }

    #[test]
    fn binomial_signed_vanishes_out_of_range() {
        assert_eq!(binomial_signed(-1, 0), nat(0));
        assert_eq!(binomial_signed(3, -1), nat(0));
        assert_eq!(binomial_signed(0, 0), nat(1));
        assert_eq!(binomial_signed(5, 2), nat(10));
    }

    #[test]
    fn pascal_recurrence_exhaustive() {
        for m in 1..=60u64 {
            for k in 1..=m {
                assert_eq!(
                    binomial(m, k),
                    &binomial(m - 1, k - 1) + &binomial(m - 1, k),
                    "C({m},{k})"
                );
            }
        }
    }

    #[test]
    fn binomial_large_is_exact() {
        // C(100, 50) = 100891344545564193334812497256
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn ceil_div_examples() {
        assert_eq!(ceil_div(&nat(20), &nat(4)).unwrap(), nat(5));
        assert_eq!(ceil_div(&nat(21), &nat(3)).unwrap(), nat(7));
        assert_eq!(ceil_div(&nat(10), &nat(3)).unwrap(), nat(4));
        assert_eq!(ceil_div(&nat(0), &nat(3)).unwrap(), nat(0));
        assert_eq!(
            ceil_div(&nat(1), &nat(0)),
            Err(WaringError::DivisionByZero)
        );
    }

    #[test]
    fn ceil_div_matches_integer_formula() {
        for a in (0..1_000_000u64).step_by(997) {
            for b in 1..=1000u64 {
                assert_eq!(ceil_div(&nat(a), &nat(b)).unwrap(), nat(a.div_ceil(b)));
            }
        }
    }

    #[test]
    fn ratio_compare_examples() {
        assert_eq!(ratio_compare(&r(3, 2), &r(3, 2)), Ordering::Equal);
        assert_eq!(ratio_compare(&r(8, 9), &r(1, 1)), Ordering::Less);
        // (d+n-2)/(d+n-1) at d=3, n=4 against (n-1)/n
        assert_eq!(ratio_compare(&r(5, 6), &r(3, 4)), Ordering::Greater);
    }

    #[test]
    fn ratio_normalizes() {
        let x = r(24, 27);
        assert_eq!(x.to_string(), "8/9");
        assert_eq!(r(-4, -10).to_string(), "2/5");
        assert_eq!(r(4, -10).to_string(), "-2/5");
        assert_eq!(r(0, -7).to_string(), "0");
        assert_eq!(r(6, 3).to_string(), "2");
        assert!(Ratio::from_i64(1, 0).is_err());
        assert_eq!("150/1717".parse::<Ratio>().unwrap(), r(150, 1717));
        assert_eq!("10/4".parse::<Ratio>().unwrap(), r(5, 2));
    }

    #[test]
    fn approx_rendering() {
        assert_eq!(r(8, 9).approx(), "0.888888888889");
        assert_eq!(r(3, 2).approx(), "1.5");
        assert_eq!(r(1, 3).approx(), "0.333333333333");
        assert_eq!(r(2, 3).approx(), "0.666666666667");
        assert_eq!(r(150, 1717).approx(), "0.0873616773442");
        assert_eq!(nat(10).approx(), "10");
        assert_eq!(nat(999_999_999_999).approx(), "999999999999");
        assert_eq!(nat(9_999_999_999_999).approx(), "1e+13");
        assert_eq!(nat(123_456_789_012_345).approx(), "1.23456789012e+14");
        assert_eq!(r(1, 1_000_000).approx(), "1e-06");
        assert_eq!(r(-1, 4).approx(), "-0.25");
        assert_eq!(Ratio::zero().approx(), "0");
    }

    proptest! {
        #[test]
        fn ratio_add_mul_commute_associate(
            a in -1000i64..1000, b in 1i64..500,
            c in -1000i64..1000, d in 1i64..500,
            e in -1000i64..1000, f in 1i64..500,
        ) {
            let (x, y, z) = (r(a, b), r(c, d), r(e, f));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn normalization_idempotent(a in -10_000i64..10_000, b in 1i64..10_000, k in 1i64..50) {
            let x = r(a * k, b * k);
            let again = Ratio::new(x.numer().clone(), x.denom().clone()).unwrap();
            prop_assert_eq!(&x, &again);
            prop_assert_eq!(x, r(a, b));
        }

        #[test]
        fn compare_agrees_with_cross_multiplication(
            a in -10_000i64..10_000, b in 1i64..10_000,
            c in -10_000i64..10_000, d in 1i64..10_000,
        ) {
            prop_assert_eq!(ratio_compare(&r(a, b), &r(c, d)), (a * d).cmp(&(c * b)));
        }
    }
}
