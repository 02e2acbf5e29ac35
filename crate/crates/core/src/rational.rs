//! Exact rational numbers.
//!
//! [`Rational`] keeps small values inline as a reduced `i64` fraction and
//! promotes to an arbitrary-precision [`BigRational`] only when an operation
//! overflows. The representation is canonical, so structural equality and
//! hashing coincide with numeric equality.

use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Invariant: `den > 0`, `gcd(num, den) = 1`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    /// Invariant: the value does not fit the `Small` form.
    Big(Box<BigRational>),
}

/// Error returned when a string is not a valid rational literal.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
            let (mut x, mut y) = (a as u64, b as u64);
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            return x as u128;
        }
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn small_from_i128(num: i128, den: i128) -> Option<Rational> {
    if num > i64::MAX as i128 || num <= i64::MIN as i128 || den > i64::MAX as i128 {
        return None;
    }
    Some(Rational(Repr::Small {
        num: num as i64,
        den: den as i64,
    }))
}

impl Rational {
    /// Builds `num / den`, reducing to lowest terms.
    ///
    /// # Panics
    /// Panics when `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if den != 1 {
            let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
            if g > 1 {
                num /= g;
                den /= g;
            }
        }
        small_from_i128(num, den).unwrap_or_else(|| {
            Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))))
        })
    }

    fn from_big(value: BigRational) -> Self {
        if let (Some(num), Some(den)) = (value.numer().to_i64(), value.denom().to_i64()) {
            if num != i64::MIN {
                return Rational(Repr::Small { num, den });
            }
        }
        Rational(Repr::Big(Box::new(value)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    /// Builds a rational from an arbitrary-precision numerator and denominator.
    ///
    /// # Panics
    /// Panics when `den` is zero.
    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        Self::from_big(BigRational::new(num, den))
    }

    /// The integer `n` as a rational.
    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Numerator of the reduced fraction.
    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    /// Denominator of the reduced fraction (always positive).
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            Repr::Small { .. } => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    /// Approximate floating-point value, for rendering only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => {
                let n = b.numer().to_f64().unwrap_or(f64::NAN);
                let d = b.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    /// Largest integer not greater than `self`.
    pub fn floor(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Self::from_integer(num.div_euclid(*den)),
            Repr::Big(b) => Self::from_big(b.floor()),
        }
    }

    /// Smallest integer not less than `self`.
    pub fn ceil(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => {
                Self::from_i128(-((-(*num as i128)).div_euclid(*den as i128)), 1)
            }
            Repr::Big(b) => Self::from_big(b.ceil()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics when `self` is zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    return Self::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    return Self::from_i128(*a as i128 - *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d - c * b, b * d)
            }
            _ => Self::from_big(self.to_big() - rhs.to_big()),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Self::zero();
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "rational division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Self::from_big(self.to_big() / rhs.to_big()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').or_else(|| text.strip_prefix('+')).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(text.as_bytes(), 10)
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Parses `"n"` or `"n/d"` with decimal integers; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(String::from(s));
        let text = s.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        if let (Ok(n), Ok(d)) = (num.parse::<i64>(), den.parse::<i64>()) {
            if d == 0 {
                return Err(err());
            }
            return Ok(Self::new(n, d));
        }
        let n = parse_integer(num).ok_or_else(err)?;
        let d = parse_integer(den).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Self::from_bigints(n, d))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_integer(n as i64)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Self::from_integer(n as i64)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Self::from_i128(n as i128, 1)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Self::from_i128(n as i128, 1)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_bigints(n, BigInt::one())
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $imp:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                *self = self.$imp(rhs);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                *self = self.$imp(&rhs);
            }
        }
    };
}

binary_op!(Add, add, add_ref, AddAssign, add_assign);
binary_op!(Sub, sub, sub_ref, SubAssign, sub_assign);
binary_op!(Mul, mul, mul_ref, MulAssign, mul_assign);
binary_op!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for `Rational::new(num, den)`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Shorthand for an integer rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n)
}
