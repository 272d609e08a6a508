//! Exact scalar domains: arbitrary-precision integers and exact rationals.
//!
//! Everything in this crate is generic over [`Scalar`], which is implemented
//! exactly twice: for [`BigInt`] (the integral structures) and for
//! [`BigRational`] (the field case). No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarDomain {
    Int,
    Rat,
}

impl ScalarDomain {
    pub fn name(self) -> &'static str {
        match self {
            ScalarDomain::Int => "int",
            ScalarDomain::Rat => "rat",
        }
    }
}

/// Ring operations shared by the two exact scalar domains.
///
/// Arithmetic takes references and returns owned values; callers clone only
/// when they need to keep an operand.
pub trait Scalar: Clone + PartialEq + Eq + Ord + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static {
    fn domain() -> ScalarDomain;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs(&self) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Exact division: `None` when the quotient does not exist in the domain
    /// (non-exact division over Int, or division by zero).
    fn div_exact(&self, other: &Self) -> Option<Self>;

    /// Uniform random draw with numerator (and, over Rat, denominator)
    /// bounded by `height`.
    fn random<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for BigInt {
    fn domain() -> ScalarDomain {
        ScalarDomain::Int
    }

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, other);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self {
        let h = height as i64;
        BigInt::from(rng.gen_range(-h..=h))
    }

    fn to_json(&self) -> Value {
        match i64::try_from(self) {
            Ok(n) => Value::from(n),
            Err(_) => Value::String(self.to_string()),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigInt::from(i))
                } else {
                    Err(Error::Parse(format!("expected an integer, got {n}")))
                }
            }
            Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad integer literal {s:?}: {e}"))),
            other => Err(Error::Parse(format!("expected an integer, got {other}"))),
        }
    }
}

impl Scalar for BigRational {
    fn domain() -> ScalarDomain {
        ScalarDomain::Rat
    }

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self {
        let h = height as i64;
        let num = BigInt::from(rng.gen_range(-h..=h));
        let den = BigInt::from(rng.gen_range(1..=h.max(1)));
        BigRational::new(num, den)
    }

    fn to_json(&self) -> Value {
        if self.denom().is_one() {
            Scalar::to_json(self.numer())
        } else {
            Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigRational::from_integer(BigInt::from(i)))
                } else {
                    Err(Error::Parse(format!("expected a rational, got {n}")))
                }
            }
            Value::String(s) => match s.split_once('/') {
                Some((num, den)) => {
                    let num = num
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
                    let den = den
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
                    if Zero::is_zero(&den) {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(BigRational::new(num, den))
                }
                None => s
                    .parse::<BigInt>()
                    .map(BigRational::from_integer)
                    .map_err(|e| Error::Parse(format!("bad rational literal {s:?}: {e}"))),
            },
            other => Err(Error::Parse(format!("expected a rational, got {other}"))),
        }
    }
}

/// gcd(|a|, |b|) with gcd(0, 0) = 0.
pub fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

/// gcd of a whole coordinate slice; 0 when every entry is 0.
pub fn gcd_slice(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::from(0);
    for x in xs {
        g = gcd_int(&g, x);
        if g == BigInt::from(1) {
            break;
        }
    }
    g
}
