//! The L^p exponent, with an explicit marker for p = infinity.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// An L^p exponent: either a finite `p >= 1` or infinity.
///
/// Every norm in the crate is driven by one of these. The conjugate exponent
/// is available through [`Exponent::dual`], with `dual(1) = inf` and
/// `dual(inf) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    /// A validated finite exponent.
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Exponent::Finite(p))
    }

    pub const INFINITY: Exponent = Exponent::Infinite;

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    /// The value for finite exponents, `None` for infinity.
    pub fn value(&self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(*p),
            Exponent::Infinite => None,
        }
    }

    /// Finite value or an [`Error::InfiniteExponent`].
    pub fn require_finite(&self) -> Result<f64> {
        self.value().ok_or(Error::InfiniteExponent)
    }

    /// Finite value strictly above 1, as required by the sharp-constant
    /// formulas that involve `1/(p-1)`.
    pub fn require_finite_above_one(&self) -> Result<f64> {
        let p = self.require_finite()?;
        if p <= 1.0 {
            return Err(Error::ExponentNotAboveOne(p));
        }
        Ok(p)
    }

    /// The conjugate exponent p' = p/(p-1).
    pub fn dual(&self) -> Exponent {
        match self {
            Exponent::Infinite => Exponent::Finite(1.0),
            Exponent::Finite(p) if *p == 1.0 => Exponent::Infinite,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Exponent::Infinite),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::Schema(format!("cannot parse exponent {t:?}")))?;
                Exponent::finite(p)
            }
        }
    }
}
