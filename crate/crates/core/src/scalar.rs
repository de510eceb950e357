//! Coefficient fields.
//!
//! Everything in this crate is generic over a [`Scalar`], i.e. any type that
//! behaves like a field of characteristic zero. The verification suites use
//! [`Rational`]; `f64` also satisfies the bound and is handy for quick
//! experiments, but equality checks over floats are of course not exact.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};
use num_traits::{FromPrimitive, Num, One};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// A field of characteristic zero.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    /// Parses `p`, `-p` or `p/q`.
    fn parse_scalar(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.is_empty() {
            return None;
        }
        let int = |t: &str| {
            let t = t.trim();
            Self::from_str_radix(t, 10).or_else(|_| Self::from_str_radix(&format!("{t}/1"), 10)).ok()
        };
        if let Some((n, d)) = text.split_once('/') {
            let n = int(n)?;
            let d = int(d)?;
            if d.is_zero() {
                return None;
            }
            Some(n / d)
        } else {
            int(text)
        }
    }

    fn is_minus_one(&self) -> bool {
        *self == -Self::one()
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}

/// A 64-bit rational whose arithmetic panics on overflow instead of
/// wrapping, in every build profile. Several times faster than
/// [`Rational`] for the small coefficients of the exhaustive suites.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Q64(pub Ratio<i64>);

impl Q64 {
    pub fn new(num: i64, den: i64) -> Self {
        Q64(Ratio::new(num, den))
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(*self.0.numer()), BigInt::from(*self.0.denom()))
    }
}

impl fmt::Display for Q64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Q64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! q64_checked {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr for Q64 {
            type Output = Q64;
            fn $m(self, o: Q64) -> Q64 {
                Q64(self.0.$checked(&o.0).expect(concat!("Q64 overflow in ", stringify!($m))))
            }
        }
    };
}
q64_checked!(Add, add, checked_add);
q64_checked!(Sub, sub, checked_sub);
q64_checked!(Mul, mul, checked_mul);
q64_checked!(Div, div, checked_div);

impl std::ops::Rem for Q64 {
    type Output = Q64;
    fn rem(self, o: Q64) -> Q64 {
        Q64(self.0 % o.0)
    }
}

impl Neg for Q64 {
    type Output = Q64;
    fn neg(self) -> Q64 {
        let n = self.0.numer().checked_neg().expect("Q64 overflow in neg");
        Q64(Ratio::new_raw(n, *self.0.denom()))
    }
}

impl num_traits::Zero for Q64 {
    fn zero() -> Self {
        Q64(Ratio::from_integer(0))
    }
    fn is_zero(&self) -> bool {
        self.0.numer() == &0
    }
}

impl One for Q64 {
    fn one() -> Self {
        Q64(Ratio::from_integer(1))
    }
}

impl Num for Q64 {
    type FromStrRadixErr = num_rational::ParseRatioError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        Ratio::from_str_radix(s, radix).map(Q64)
    }
}

impl FromPrimitive for Q64 {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Q64(Ratio::from_integer(n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        i64::try_from(n).ok().map(|n| Q64(Ratio::from_integer(n)))
    }
}

/// `n!` as a scalar.
pub fn factorial<C: Scalar>(n: u32) -> C {
    (1..=n as i64).fold(C::one(), |acc, k| acc * C::from_int(k))
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Rational with the given numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts an exact rational into another scalar type.
///
/// Panics if numerator or denominator does not fit in `i64`; identity
/// coefficients are always small.
pub fn from_rational<C: Scalar>(q: &Rational) -> C {
    use num_traits::ToPrimitive;
    let n = q.numer().to_i64().expect("numerator fits in i64");
    let d = q.denom().to_i64().expect("denominator fits in i64");
    C::from_ratio(n, d)
}

/// Clears denominators: returns the least common multiple of all
/// denominators in `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(Rational::parse_scalar("3/2"), Some(rat(3, 2)));
        assert_eq!(Rational::parse_scalar("-6/4"), Some(rat(-3, 2)));
        assert_eq!(Rational::parse_scalar("7"), Some(rat(7, 1)));
        assert_eq!(Rational::parse_scalar("1/0"), None);
        assert_eq!(Rational::parse_scalar("x"), None);
        assert_eq!(f64::parse_scalar("1/4"), Some(0.25));
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(rat(6, 4).to_string(), "3/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
    }

    #[test]
    fn q64_is_exact_or_panics() {
        let a = Q64::new(1, 3) + Q64::new(1, 6);
        assert_eq!(a, Q64::new(1, 2));
        assert_eq!(a.to_rational(), rat(1, 2));
        assert_eq!(Q64::parse_scalar("-6/4"), Some(Q64::new(-3, 2)));
        assert_eq!(Q64::half() * Q64::from_int(4), Q64::from_int(2));
        let big = Q64::from_int(i64::MAX);
        assert!(std::panic::catch_unwind(|| big + Q64::one()).is_err());
        assert!(std::panic::catch_unwind(|| big * Q64::from_int(2)).is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(factorial::<Rational>(5), rat(120, 1));
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(common_denominator(&[rat(1, 4), rat(5, 6)]), BigInt::from(12));
    }
}
