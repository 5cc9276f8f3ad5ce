use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value of an un-normalized invariant: a positive integer or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Finite(u64),
    Infinite,
}

impl Value {
    pub fn is_finite(self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Value::Finite(n) => Some(n),
            Value::Infinite => None,
        }
    }

    /// `m·self + c`, never below 1.
    pub fn affine(self, m: u64, c: i64) -> Value {
        match self {
            Value::Finite(n) => Value::Finite(((m * n) as i64 + c).max(1) as u64),
            Value::Infinite => Value::Infinite,
        }
    }

    /// Smallest `x ≥ 1` with `m·x + c ≥ self`.
    pub fn affine_preimage(self, m: u64, c: i64) -> Value {
        match self {
            Value::Finite(n) => {
                let need = n as i64 - c;
                if need <= 0 {
                    Value::Finite(1)
                } else {
                    Value::Finite(((need as u64).div_ceil(m)).max(1))
                }
            }
            Value::Infinite => Value::Infinite,
        }
    }

    pub fn times(self, other: Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a * b),
            _ => Value::Infinite,
        }
    }

    /// Smallest `x ≥ 1` with `x·other ≥ self`, when `other` is finite.
    pub fn quotient_preimage(self, other: Value) -> Option<Value> {
        match (self, other) {
            (_, Value::Infinite) => None,
            (Value::Infinite, _) => Some(Value::Infinite),
            (Value::Finite(a), Value::Finite(b)) => {
                Some(Value::Finite(a.div_ceil(b.max(1)).max(1)))
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(n) => write!(f, "{n}"),
            Value::Infinite => f.write_str("∞"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Finite(n) => s.serialize_u64(*n),
            Value::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Value;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"infinity\"")
            }

            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Value, E> {
                if n == 0 {
                    Err(E::custom("invariants are at least 1"))
                } else {
                    Ok(Value::Finite(n))
                }
            }

            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Value, E> {
                if n < 1 {
                    Err(E::custom("invariants are at least 1"))
                } else {
                    Ok(Value::Finite(n as u64))
                }
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Value, E> {
                match s {
                    "infinity" | "inf" | "∞" => Ok(Value::Infinite),
                    _ => Err(E::invalid_value(de::Unexpected::Str(s), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(Value::Finite(2).affine(2, -1), Value::Finite(3));
        assert_eq!(Value::Finite(3).affine_preimage(2, -1), Value::Finite(2));
        assert_eq!(Value::Finite(4).affine_preimage(2, -1), Value::Finite(3));
        assert_eq!(Value::Finite(1).affine_preimage(2, -1), Value::Finite(1));
        assert_eq!(Value::Finite(3).times(Value::Finite(2)), Value::Finite(6));
        assert_eq!(Value::Infinite.times(Value::Finite(2)), Value::Infinite);
        assert_eq!(
            Value::Finite(5).quotient_preimage(Value::Finite(2)),
            Some(Value::Finite(3))
        );
        assert_eq!(Value::Finite(5).quotient_preimage(Value::Infinite), None);
        assert!(Value::Finite(1_000_000) < Value::Infinite);
    }
}
