//! Points, balls, and validated ball configurations.
//!
//! Two arithmetic modes are supported. Exact configurations hold every
//! coordinate and radius as a [`BigRational`] and classify contacts with a
//! strict trichotomy. Approximate configurations hold binary64 values and
//! classify against a relative tolerance on the squared sum of radii.

mod contact;
pub mod json;
mod scalar;

use num_rational::BigRational;
use thiserror::Error;

pub use contact::{
    classify_pair, is_connected, squared_distance, validate_configuration, ContactClass,
    ValidationReport,
};
pub(crate) use contact::{classify_f64_parts, scan_pairs};
pub use scalar::{rational_sqrt, Scalar, ScalarMode};
pub(crate) use scalar::{parse_rational, rational_to_f64};

/// Relative tolerance used by approximate configurations unless overridden.
pub const DEFAULT_REL_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("scalar mode mismatch: {left} vs {right}")]
    ModeMismatch { left: ScalarMode, right: ScalarMode },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("radius must be strictly positive, got {0}")]
    NonPositiveRadius(String),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("point must have at least one coordinate")]
    EmptyPoint,
    #[error("exact tolerance policy requires rational scalars")]
    ExactNeedsRational,
    #[error("relative tolerance must be finite and nonnegative, got {0}")]
    BadTolerance(f64),
    #[error("declared tangency ({0}, {1}) is not a sorted pair of ball indices")]
    BadDeclaredPair(usize, usize),
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Centre of a ball. All coordinates share one scalar mode by construction.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Rational(Vec<BigRational>),
    F64(Vec<f64>),
}

impl Point {
    pub fn from_f64(coords: Vec<f64>) -> Result<Point, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::NonFinite("point coordinate"));
        }
        Ok(Point::F64(coords))
    }

    pub fn from_rationals(coords: Vec<BigRational>) -> Result<Point, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        Ok(Point::Rational(coords))
    }

    /// Builds a point from scalars, all of which must share one mode.
    pub fn from_scalars(coords: Vec<Scalar>) -> Result<Point, GeometryError> {
        let Some(first) = coords.first() else {
            return Err(GeometryError::EmptyPoint);
        };
        match first.mode() {
            ScalarMode::Rational => coords
                .into_iter()
                .map(|s| match s {
                    Scalar::Rational(q) => Ok(q),
                    other => Err(GeometryError::ModeMismatch {
                        left: ScalarMode::Rational,
                        right: other.mode(),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()
                .and_then(Point::from_rationals),
            ScalarMode::F64 => coords
                .into_iter()
                .map(|s| match s {
                    Scalar::F64(x) => Ok(x),
                    other => Err(GeometryError::ModeMismatch {
                        left: ScalarMode::F64,
                        right: other.mode(),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()
                .and_then(Point::from_f64),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Point::Rational(c) => c.len(),
            Point::F64(c) => c.len(),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Point::Rational(_) => ScalarMode::Rational,
            Point::F64(_) => ScalarMode::F64,
        }
    }

    pub fn coord(&self, axis: usize) -> Scalar {
        match self {
            Point::Rational(c) => Scalar::Rational(c[axis].clone()),
            Point::F64(c) => Scalar::F64(c[axis]),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match self {
            Point::Rational(c) => c.iter().map(rational_to_f64).collect(),
            Point::F64(c) => c.clone(),
        }
    }
}

/// A closed d-ball with strictly positive radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Point,
    radius: Scalar,
}

impl Ball {
    pub fn new(center: Point, radius: Scalar) -> Result<Ball, GeometryError> {
        if center.mode() != radius.mode() {
            return Err(GeometryError::ModeMismatch {
                left: center.mode(),
                right: radius.mode(),
            });
        }
        if !radius.is_finite() {
            return Err(GeometryError::NonFinite("radius"));
        }
        if !radius.is_positive() {
            return Err(GeometryError::NonPositiveRadius(radius.to_string()));
        }
        Ok(Ball { center, radius })
    }

    pub fn unit_f64(center: Vec<f64>) -> Result<Ball, GeometryError> {
        Ball::new(Point::from_f64(center)?, Scalar::F64(1.0))
    }

    pub fn f64(center: Vec<f64>, radius: f64) -> Result<Ball, GeometryError> {
        Ball::new(Point::from_f64(center)?, Scalar::F64(radius))
    }

    pub fn rational(center: Vec<BigRational>, radius: BigRational) -> Result<Ball, GeometryError> {
        Ball::new(Point::from_rationals(center)?, Scalar::Rational(radius))
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &Scalar {
        &self.radius
    }

    pub fn dimension(&self) -> usize {
        self.center.dimension()
    }

    pub fn mode(&self) -> ScalarMode {
        self.center.mode()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TolerancePolicy {
    Exact,
    Approximate { rel_eps: f64 },
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy::Approximate {
            rel_eps: DEFAULT_REL_EPS,
        }
    }
}

impl TolerancePolicy {
    pub fn approximate(rel_eps: f64) -> Result<TolerancePolicy, GeometryError> {
        if !rel_eps.is_finite() || rel_eps < 0.0 {
            return Err(GeometryError::BadTolerance(rel_eps));
        }
        Ok(TolerancePolicy::Approximate { rel_eps })
    }

    pub fn rel_eps(&self) -> Option<f64> {
        match self {
            TolerancePolicy::Exact => None,
            TolerancePolicy::Approximate { rel_eps } => Some(*rel_eps),
        }
    }
}

/// A finite set of balls in a fixed dimension together with the tolerance
/// policy used to classify their contacts.
///
/// Construction checks the structural invariants (dimensions, scalar modes,
/// index ranges). Overlap and declared-tangency checks are pairwise and live
/// in [`validate_configuration`]; operations that require a valid
/// configuration run that check themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dimension: usize,
    mode: ScalarMode,
    balls: Vec<Ball>,
    policy: TolerancePolicy,
    declared_tangencies: Option<Vec<(usize, usize)>>,
    enclosing: Option<Ball>,
}

impl Configuration {
    pub fn new(
        dimension: usize,
        mode: ScalarMode,
        balls: Vec<Ball>,
        policy: TolerancePolicy,
        declared_tangencies: Option<Vec<(usize, usize)>>,
    ) -> Result<Configuration, GeometryError> {
        if dimension == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if let TolerancePolicy::Approximate { rel_eps } = policy {
            if !rel_eps.is_finite() || rel_eps < 0.0 {
                return Err(GeometryError::BadTolerance(rel_eps));
            }
        } else if mode != ScalarMode::Rational {
            return Err(GeometryError::ExactNeedsRational);
        }
        for ball in &balls {
            check_ball(dimension, mode, ball)?;
        }
        if let Some(pairs) = &declared_tangencies {
            for &(i, j) in pairs {
                if i >= j || j >= balls.len() {
                    return Err(GeometryError::BadDeclaredPair(i, j));
                }
            }
        }
        Ok(Configuration {
            dimension,
            mode,
            balls,
            policy,
            declared_tangencies,
            enclosing: None,
        })
    }

    /// An empty configuration in the given dimension.
    pub fn empty(dimension: usize, mode: ScalarMode, policy: TolerancePolicy) -> Result<Self, GeometryError> {
        Configuration::new(dimension, mode, Vec::new(), policy, None)
    }

    /// Attaches a bounding ball that is kept alongside the configuration but
    /// is not one of its balls (it takes no part in contact checks).
    pub fn with_enclosing(mut self, enclosing: Ball) -> Result<Configuration, GeometryError> {
        check_ball(self.dimension, self.mode, &enclosing)?;
        self.enclosing = Some(enclosing);
        Ok(self)
    }

    /// Replaces the tolerance policy, re-checking mode compatibility.
    pub fn with_policy(self, policy: TolerancePolicy) -> Result<Configuration, GeometryError> {
        let enclosing = self.enclosing;
        let cfg = Configuration::new(
            self.dimension,
            self.mode,
            self.balls,
            policy,
            self.declared_tangencies,
        )?;
        Ok(Configuration { enclosing, ..cfg })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn policy(&self) -> TolerancePolicy {
        self.policy
    }

    pub fn declared_tangencies(&self) -> Option<&[(usize, usize)]> {
        self.declared_tangencies.as_deref()
    }

    pub fn enclosing(&self) -> Option<&Ball> {
        self.enclosing.as_ref()
    }

    pub fn radii(&self) -> Vec<Scalar> {
        self.balls.iter().map(|b| b.radius().clone()).collect()
    }
}

fn check_ball(dimension: usize, mode: ScalarMode, ball: &Ball) -> Result<(), GeometryError> {
    if ball.dimension() != dimension {
        return Err(GeometryError::DimensionMismatch {
            left: dimension,
            right: ball.dimension(),
        });
    }
    if ball.mode() != mode {
        return Err(GeometryError::ModeMismatch {
            left: mode,
            right: ball.mode(),
        });
    }
    Ok(())
}
