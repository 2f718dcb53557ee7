//! Configuration JSON interchange.
//!
//! ```json
//! {"dimension": 2, "scalar": "rational",
//!  "balls": [{"center": ["1/2", "0/1"], "radius": "1/2"}],
//!  "declared_tangencies": [[0, 1]]}
//! ```
//!
//! Rational scalars are `"p/q"` strings, binary64 scalars are JSON numbers.
//! `tolerance` is omitted for exact configurations. Emission always uses
//! sorted keys and no insignificant whitespace, which is also the canonical
//! form hashed by [`digest`].

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{parse_rational, Ball, Configuration, GeometryError, Point, Scalar, ScalarMode, TolerancePolicy, DEFAULT_REL_EPS};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigurationDoc {
    dimension: usize,
    scalar: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    balls: Vec<BallDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    declared_tangencies: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    enclosing: Option<BallDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BallDoc {
    center: Vec<Value>,
    radius: Value,
}

fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::F64(x) => Value::from(*x),
    }
}

fn scalar_from_value(v: &Value, mode: ScalarMode) -> Result<Scalar, FormatError> {
    match (mode, v) {
        (ScalarMode::Rational, Value::String(s)) => Ok(Scalar::Rational(parse_rational(s)?)),
        (ScalarMode::F64, Value::Number(n)) => n
            .as_f64()
            .map(Scalar::F64)
            .ok_or_else(|| FormatError::Schema(format!("number {n} is not representable as f64"))),
        (ScalarMode::Rational, other) => Err(FormatError::Schema(format!(
            "rational scalars must be \"p/q\" strings, got {other}"
        ))),
        (ScalarMode::F64, other) => Err(FormatError::Schema(format!("f64 scalars must be numbers, got {other}"))),
    }
}

fn ball_to_doc(ball: &Ball) -> BallDoc {
    let center = (0..ball.dimension())
        .map(|axis| scalar_to_value(&ball.center().coord(axis)))
        .collect();
    BallDoc {
        center,
        radius: scalar_to_value(ball.radius()),
    }
}

fn ball_from_doc(doc: &BallDoc, mode: ScalarMode) -> Result<Ball, FormatError> {
    let coords = doc
        .center
        .iter()
        .map(|v| scalar_from_value(v, mode))
        .collect::<Result<Vec<_>, _>>()?;
    let radius = scalar_from_value(&doc.radius, mode)?;
    Ok(Ball::new(Point::from_scalars(coords)?, radius)?)
}

pub fn to_value(cfg: &Configuration) -> Value {
    let doc = ConfigurationDoc {
        dimension: cfg.dimension(),
        scalar: cfg.mode().as_str().to_string(),
        tolerance: cfg.policy().rel_eps(),
        balls: cfg.balls().iter().map(ball_to_doc).collect(),
        declared_tangencies: cfg
            .declared_tangencies()
            .map(|pairs| pairs.iter().map(|&(i, j)| [i, j]).collect()),
        enclosing: cfg.enclosing().map(ball_to_doc),
    };
    // Round-tripping through `Value` sorts the keys.
    serde_json::to_value(doc).expect("configuration documents always serialize")
}

/// Canonical compact JSON (sorted keys, no whitespace).
pub fn to_json(cfg: &Configuration) -> String {
    to_value(cfg).to_string()
}

pub fn to_json_pretty(cfg: &Configuration) -> String {
    serde_json::to_string_pretty(&to_value(cfg)).expect("values always serialize")
}

pub fn from_value(value: Value) -> Result<Configuration, FormatError> {
    let doc: ConfigurationDoc = serde_json::from_value(value)?;
    from_doc(doc)
}

pub fn from_json(text: &str) -> Result<Configuration, FormatError> {
    let doc: ConfigurationDoc = serde_json::from_str(text)?;
    from_doc(doc)
}

fn from_doc(doc: ConfigurationDoc) -> Result<Configuration, FormatError> {
    let mode = match doc.scalar.as_str() {
        "rational" => ScalarMode::Rational,
        "f64" => ScalarMode::F64,
        other => {
            return Err(FormatError::Schema(format!(
                "scalar must be \"rational\" or \"f64\", got {other:?}"
            )))
        }
    };
    let policy = match (mode, doc.tolerance) {
        (ScalarMode::Rational, None) => TolerancePolicy::Exact,
        (ScalarMode::F64, None) => TolerancePolicy::approximate(DEFAULT_REL_EPS)?,
        (_, Some(eps)) => TolerancePolicy::approximate(eps)?,
    };
    let balls = doc
        .balls
        .iter()
        .map(|b| ball_from_doc(b, mode))
        .collect::<Result<Vec<_>, _>>()?;
    let declared = doc
        .declared_tangencies
        .map(|pairs| pairs.into_iter().map(|[i, j]| (i, j)).collect());
    let cfg = Configuration::new(doc.dimension, mode, balls, policy, declared)?;
    match doc.enclosing {
        Some(e) => Ok(cfg.with_enclosing(ball_from_doc(&e, mode)?)?),
        None => Ok(cfg),
    }
}

/// SHA-256 of the canonical JSON, hex encoded.
pub fn digest(cfg: &Configuration) -> String {
    digest_bytes(to_json(cfg).as_bytes())
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn parses_rational_documents() {
        let text = r#"{"dimension":2,"scalar":"rational","balls":[
            {"center":["0","0"],"radius":"1/2"},
            {"center":["5/6","0/1"],"radius":"1/3"}],
            "declared_tangencies":[[0,1]]}"#;
        let cfg = from_json(text).unwrap();
        assert_eq!(cfg.policy(), TolerancePolicy::Exact);
        assert_eq!(cfg.len(), 2);
        assert_eq!(cfg.declared_tangencies(), Some(&[(0, 1)][..]));
        assert_eq!(
            to_json(&cfg),
            r#"{"balls":[{"center":["0/1","0/1"],"radius":"1/2"},{"center":["5/6","0/1"],"radius":"1/3"}],"declared_tangencies":[[0,1]],"dimension":2,"scalar":"rational"}"#
        );
    }

    #[test]
    fn f64_documents_default_the_tolerance() {
        let cfg = from_json(r#"{"dimension":1,"scalar":"f64","balls":[{"center":[0],"radius":1}]}"#).unwrap();
        assert_eq!(cfg.policy().rel_eps(), Some(DEFAULT_REL_EPS));
        let cfg = from_json(r#"{"dimension":1,"scalar":"f64","tolerance":0.001,"balls":[]}"#).unwrap();
        assert_eq!(cfg.policy().rel_eps(), Some(0.001));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(from_json("{"), Err(FormatError::Json(_))));
        assert!(matches!(
            from_json(r#"{"dimension":1,"scalar":"f64","balls":[{"center":["1/2"],"radius":1}]}"#),
            Err(FormatError::Schema(_))
        ));
        assert!(matches!(
            from_json(r#"{"dimension":1,"scalar":"decimal","balls":[]}"#),
            Err(FormatError::Schema(_))
        ));
        assert!(matches!(
            from_json(r#"{"dimension":1,"scalar":"f64","balls":[{"center":[0],"radius":0}]}"#),
            Err(FormatError::Geometry(GeometryError::NonPositiveRadius(_)))
        ));
        assert!(matches!(
            from_json(r#"{"dimension":2,"scalar":"f64","balls":[{"center":[0],"radius":1}]}"#),
            Err(FormatError::Geometry(GeometryError::DimensionMismatch { .. }))
        ));
    }

    #[test]
    fn digest_is_stable_under_key_order() {
        let a = from_json(r#"{"dimension":1,"scalar":"f64","balls":[{"center":[0],"radius":1}]}"#).unwrap();
        let b = from_json(r#"{"balls":[{"radius":1.0,"center":[0.0]}],"scalar":"f64","dimension":1}"#).unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(digest(&a).len(), 64);
    }

    proptest! {
        #[test]
        fn f64_round_trip_is_value_exact(
            coords in proptest::collection::vec((-1e6f64..1e6, -1e6f64..1e6, 1e-6f64..1e3), 0..8),
            eps in 0.0f64..1e-3,
        ) {
            let balls = coords.iter().map(|&(x, y, r)| Ball::f64(vec![x, y], r).unwrap()).collect();
            let cfg = Configuration::new(2, ScalarMode::F64, balls, TolerancePolicy::approximate(eps).unwrap(), None).unwrap();
            let back = from_json(&to_json(&cfg)).unwrap();
            prop_assert_eq!(&back, &cfg);
            prop_assert_eq!(to_json(&back), to_json(&cfg));
        }

        #[test]
        fn rational_round_trip_is_bit_exact(
            coords in proptest::collection::vec((-1000i64..1000, 1i64..500, -1000i64..1000, 1i64..500, 1i64..99), 0..8),
        ) {
            let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
            let balls = coords.iter()
                .map(|&(a, b, c, d, r)| Ball::rational(vec![q(a, b), q(c, d)], q(r, 7)).unwrap())
                .collect();
            let cfg = Configuration::new(2, ScalarMode::Rational, balls, TolerancePolicy::Exact, None).unwrap();
            let text = to_json(&cfg);
            let back = from_json(&text).unwrap();
            prop_assert_eq!(&back, &cfg);
            prop_assert_eq!(to_json(&back), text);
        }
    }
}
