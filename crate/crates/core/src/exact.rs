//! Exact rational arithmetic, multiplicities and Hirzebruch–Jung continued fractions.
//!
//! Every canonical-degree and discrepancy quantity in this crate is a [`Rational`].
//! There is no floating point anywhere: klt is decided by strict inequalities whose
//! boundary values (a discrepancy of exactly `-1`, a degree of exactly `0`) must be
//! classified correctly.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExactError;

/// An exact fraction, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, ExactError> {
        if denom == 0 {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `1 / value`; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Sign as `Ordering` relative to zero.
    pub fn signum(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational(BigRational::from_integer(value))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
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

/// `p/q`, or `p` when the denominator is one.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `p` or `p/q` with decimal integers; anything with a decimal point is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::ParseRational(s.to_string());
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let numer: BigInt = numer.parse().map_err(|_| bad())?;
        let denom: BigInt = denom.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Orbifold multiplicity of a divisor component. `1` means no orbifold structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Multiplicity(u64);

impl Multiplicity {
    pub const ONE: Multiplicity = Multiplicity(1);

    pub fn new(value: u64) -> Result<Self, ExactError> {
        if value == 0 {
            return Err(ExactError::ZeroMultiplicity);
        }
        Ok(Multiplicity(value))
    }

    /// Like [`Multiplicity::new`], but additionally requires a genuine orbifold point (`m ≥ 2`).
    pub fn orbifold(value: u64) -> Result<Self, ExactError> {
        if value < 2 {
            return Err(ExactError::MultiplicityBelowTwo(value));
        }
        Ok(Multiplicity(value))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// The boundary coefficient `1 - 1/m`.
    pub fn coeff(self) -> Rational {
        coeff(self)
    }

    /// `1/m`.
    pub fn inverse(self) -> Rational {
        Rational(BigRational::new(BigInt::one(), BigInt::from(self.0)))
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = u64::deserialize(deserializer)?;
        Multiplicity::new(value).map_err(serde::de::Error::custom)
    }
}

/// The orbifold coefficient `1 - 1/m`.
pub fn coeff(m: Multiplicity) -> Rational {
    Rational::one() - m.inverse()
}

/// A Hirzebruch–Jung chain `[e_1, ..., e_n]`, every entry at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HjChain(Vec<u64>);

impl HjChain {
    pub fn new(entries: Vec<u64>) -> Result<Self, ExactError> {
        if entries.is_empty() {
            return Err(ExactError::EmptyChain);
        }
        if let Some(&bad) = entries.iter().find(|&&e| e < 2) {
            return Err(ExactError::ChainEntryBelowTwo(bad));
        }
        Ok(HjChain(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HjChain {
        HjChain(self.0.iter().rev().copied().collect())
    }
}

/// Expands `N/q = e_1 - 1/(e_2 - 1/(...))` with every `e_i ≥ 2`.
pub fn hj_expand(n: u64, q: u64) -> Result<HjChain, ExactError> {
    if q == 0 || q >= n {
        return Err(ExactError::OutOfRange { n, q });
    }
    if n.gcd(&q) != 1 {
        return Err(ExactError::NotCoprime { n, q });
    }
    let (mut num, mut den) = (n, q);
    let mut entries = Vec::new();
    while den > 0 {
        let e = num.div_ceil(den);
        entries.push(e);
        // e*den - num < den, so the pair strictly shrinks
        let next = e * den - num;
        num = den;
        den = next;
    }
    Ok(HjChain(entries))
}

/// Inverse of [`hj_expand`]: evaluates the chain to a coprime pair `(N, q)` with `0 < q < N`.
///
/// Fails only if `N` does not fit in a `u64`.
pub fn hj_evaluate(chain: &HjChain) -> Result<(u64, u64), ExactError> {
    let mut entries = chain.0.iter().rev();
    let last = *entries.next().expect("HjChain is nonempty");
    let (mut num, mut den) = (last, 1u64);
    for &e in entries {
        let next = e
            .checked_mul(num)
            .and_then(|x| x.checked_sub(den))
            .ok_or(ExactError::Overflow)?;
        den = num;
        num = next;
    }
    Ok((num, den))
}

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_list(values: &[u64]) -> Result<u64, ExactError> {
    let (&first, rest) = values.split_first().ok_or(ExactError::EmptyGcd)?;
    if values.contains(&0) {
        return Err(ExactError::ZeroMultiplicity);
    }
    Ok(rest.iter().fold(first, |acc, &v| acc.gcd(&v)))
}
