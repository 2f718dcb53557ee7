use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::GeometryError;

/// Arithmetic mode shared by every coordinate and radius of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Rational,
    F64,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::F64 => "f64",
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A coordinate or radius value.
///
/// `Rational` values are kept in lowest terms with a positive denominator
/// (guaranteed by [`BigRational`]'s normalisation). `F64` values used inside
/// a configuration are always finite.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    F64(f64),
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Rational(_) => ScalarMode::Rational,
            Scalar::F64(_) => ScalarMode::F64,
        }
    }

    pub fn ratio(numer: i64, denom: i64) -> Scalar {
        Scalar::Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(value: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(value.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => rational_to_f64(q),
            Scalar::F64(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::F64(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Rational(_) => true,
            Scalar::F64(x) => x.is_finite(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_positive(),
            Scalar::F64(x) => *x > 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::F64(x) => *x == 0.0,
        }
    }

    /// Total order within one mode. Mixed modes are an error.
    pub fn try_cmp(&self, other: &Scalar) -> Result<Ordering, GeometryError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(a.cmp(b)),
            (Scalar::F64(a), Scalar::F64(b)) => Ok(a.total_cmp(b)),
            _ => Err(GeometryError::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            }),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, GeometryError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::F64(a), Scalar::F64(b)) => Ok(Scalar::F64(a + b)),
            _ => Err(GeometryError::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            }),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, GeometryError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::F64(a), Scalar::F64(b)) => Ok(Scalar::F64(a * b)),
            _ => Err(GeometryError::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            }),
        }
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p/q` (always with a denominator), floats in
    /// shortest round-trip form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::F64(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = GeometryError;

    /// Parses `p/q` or a bare integer `p` into an exact rational.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Scalar::Rational)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, GeometryError> {
    let bad = || GeometryError::BadRational(s.to_string());
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

/// Converts a rational to the nearest-ish binary64 value. Values outside the
/// binary64 range saturate to infinity.
pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root of a nonnegative rational, if it is itself rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}
