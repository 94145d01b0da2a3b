//! Extended nonnegative values with an explicit finite/infinite tag.
//!
//! Condition functionals and quasi-norms routinely evaluate to +∞; that is a
//! classification result, not a failure, so it is carried as a tagged value
//! rather than an error or a sentinel float.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul};

/// A nonnegative real number or +∞.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub fn finite(v: f64) -> Self {
        debug_assert!(v.is_finite(), "ExtReal::finite called with {v}");
        ExtReal::Finite(v)
    }

    /// Classify a raw float: non-finite (inf or NaN overflow) maps to the infinite tag.
    pub fn from_raw(v: f64) -> Self {
        if v.is_finite() {
            ExtReal::Finite(v)
        } else {
            ExtReal::Infinite
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinite)
    }

    /// Finite payload, if any.
    pub fn value(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinite => None,
        }
    }

    /// Finite payload or panic; for tests and for paths that already checked the tag.
    pub fn expect_finite(self, what: &str) -> f64 {
        match self {
            ExtReal::Finite(v) => v,
            ExtReal::Infinite => panic!("{what}: expected a finite value, got the infinite tag"),
        }
    }

    /// Collapse to f64, mapping the tag to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::Finite(v) => v,
            ExtReal::Infinite => f64::INFINITY,
        }
    }

    pub fn max(self, other: Self) -> Self {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a.max(b)),
            _ => ExtReal::Infinite,
        }
    }

    pub fn powf(self, e: f64) -> Self {
        match self {
            ExtReal::Finite(v) => ExtReal::from_raw(v.powf(e)),
            ExtReal::Infinite => {
                if e > 0.0 {
                    ExtReal::Infinite
                } else {
                    ExtReal::Finite(0.0)
                }
            }
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::from_raw(a + b),
            _ => ExtReal::Infinite,
        }
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::from_raw(a * b),
            // 0·∞ does not occur for the nonnegative functionals computed here;
            // keep the absorbing convention.
            _ => ExtReal::Infinite,
        }
    }
}

impl Mul<f64> for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: f64) -> ExtReal {
        self * ExtReal::from_raw(rhs)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_absorbs_infinity() {
        let a = ExtReal::finite(2.0);
        assert_eq!(a + ExtReal::Infinite, ExtReal::Infinite);
        assert_eq!(a * ExtReal::Infinite, ExtReal::Infinite);
        assert_eq!(a + ExtReal::finite(3.0), ExtReal::finite(5.0));
    }

    #[test]
    fn overflow_becomes_tag() {
        assert!(ExtReal::from_raw(f64::INFINITY).is_infinite());
        assert!((ExtReal::finite(1e308) * ExtReal::finite(1e308)).is_infinite());
    }
}
