//! JSON input formats.
//!
//! Two schemas share one entry point and are told apart by their keys: a
//! `"halfspaces"` array means a polytope, a `"points"` array means abstract
//! fixed-point data. Rationals are `"p/q"` or integer strings (bare JSON
//! integers are tolerated); floating-point literals are rejected.

use serde::{Deserialize, Serialize};

use crate::cohomology::EquivariantClass;
use crate::delzant::DelzantPolytope;
use crate::exact::Rational;
use crate::fixedpoints::FixedPointSet;

/// Abstract fixed-point data, optionally carrying claimed degree-2 classes
/// and a coefficient vector for the contradiction detector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbstractData {
    #[serde(flatten)]
    pub set: FixedPointSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<Vec<EquivariantClass>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Rational>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAbstract {
    dim: usize,
    points: Vec<crate::fixedpoints::FixedPointDatum>,
    #[serde(default)]
    claimed: Option<Vec<EquivariantClass>>,
    #[serde(default)]
    c: Option<Vec<Rational>>,
}

impl From<FixedPointSet> for AbstractData {
    fn from(set: FixedPointSet) -> Self {
        AbstractData {
            set,
            claimed: None,
            c: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Polytope(DelzantPolytope),
    FixedPoints(AbstractData),
}

#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ParseError {
    /// Dotted path of the offending field, `.` for the document root.
    pub path: String,
    pub message: String,
}

fn decode<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| ParseError {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| ParseError {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

pub fn parse_polytope(text: &str) -> Result<DelzantPolytope, ParseError> {
    decode(text)
}

pub fn parse_fixed_points(text: &str) -> Result<AbstractData, ParseError> {
    let raw: RawAbstract = decode(text)?;
    let set = FixedPointSet::new(raw.dim, raw.points).map_err(|e| ParseError {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(AbstractData {
        set,
        claimed: raw.claimed,
        c: raw.c,
    })
}

/// Schema-discriminated parse of either input format.
pub fn parse_input(text: &str) -> Result<Input, ParseError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| ParseError {
        path: ".".into(),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| ParseError {
        path: ".".into(),
        message: "expected a JSON object".into(),
    })?;
    match (obj.contains_key("halfspaces"), obj.contains_key("points")) {
        (true, false) => parse_polytope(text).map(Input::Polytope),
        (false, true) => parse_fixed_points(text).map(Input::FixedPoints),
        (true, true) => Err(ParseError {
            path: ".".into(),
            message: "both \"halfspaces\" and \"points\" present".into(),
        }),
        (false, false) => Err(ParseError {
            path: ".".into(),
            message: "expected a \"halfspaces\" (polytope) or \"points\" (fixed points) key".into(),
        }),
    }
}

pub fn parse_class(text: &str) -> Result<EquivariantClass, ParseError> {
    decode(text)
}
