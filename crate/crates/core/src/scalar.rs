//! Exact coefficient fields.
//!
//! All linear algebra in this crate is generic over [`Field`]. Two families
//! implement it: prime fields [`Fp<P>`] with the modulus fixed at compile
//! time, and the rationals [`Rational`] backed by arbitrary-precision
//! integers. Nothing here touches floating point; every rank, kernel and
//! product computed downstream is exact.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Zero for the rationals.
    const CHARACTERISTIC: u32;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    fn spec() -> FieldSpec;

    fn div(&self, other: &Self) -> Self {
        self.clone()
            * other
                .inverse()
                .expect("division by zero in field arithmetic")
    }
}

/// Integers modulo a prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const PRIME_CHECK: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME_CHECK;
        Fp(n.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

const fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    const CHARACTERISTIC: u32 = P;

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = self.0 as u64;
        let mut exp = P - 2;
        let m = P as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(Fp(result as u32))
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }
}

/// Exact rational numbers.
pub type Rational = BigRational;

impl Field for BigRational {
    const CHARACTERISTIC: u32 = 0;

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }
}

/// Runtime selector for a coefficient field.
///
/// Only the primes listed in [`FieldSpec::SUPPORTED_PRIMES`] have a compiled
/// [`Fp`] instantiation; [`with_field!`](crate::with_field) dispatches to them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub const SUPPORTED_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

    /// The default sweep `F2, F3, Q`.
    pub fn default_sweep() -> Vec<FieldSpec> {
        vec![
            FieldSpec::Prime(2),
            FieldSpec::Prime(3),
            FieldSpec::Rationals,
        ]
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t == "ℚ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix('f'))
            .or_else(|| t.strip_prefix("Z/"))
            .unwrap_or(t);
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::UnsupportedField(s.to_string()))?;
        if FieldSpec::SUPPORTED_PRIMES.contains(&p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::UnsupportedField(s.to_string()))
        }
    }
}

/// Runs `$body` with `$S` bound to the scalar type selected by a
/// [`FieldSpec`]. Evaluates to `Result<_, Error>`; unsupported primes yield
/// [`Error::UnsupportedField`](crate::Error::UnsupportedField).
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $S:ident => $body:expr) => {{
        match $spec {
            $crate::FieldSpec::Rationals => {
                type $S = $crate::Q;
                Ok($body)
            }
            $crate::FieldSpec::Prime(2) => {
                type $S = $crate::Fp<2>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(3) => {
                type $S = $crate::Fp<3>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(5) => {
                type $S = $crate::Fp<5>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(7) => {
                type $S = $crate::Fp<7>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(11) => {
                type $S = $crate::Fp<11>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(13) => {
                type $S = $crate::Fp<13>;
                Ok($body)
            }
            other => Err($crate::Error::UnsupportedField(other.to_string())),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        for a in 1..7 {
            let x = Fp::<7>::new(a);
            assert_eq!(x * x.inverse().unwrap(), Fp::<7>::one());
        }
        assert!(Fp::<3>::zero().inverse().is_none());
        assert_eq!(-Fp::<2>::one(), Fp::<2>::one());
    }

    #[test]
    fn parses_field_names() {
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("F17".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let third = Rational::from_i64(1).div(&Rational::from_i64(3));
        assert_eq!(third.clone() + third.clone() + third, Rational::one());
    }
}
