//! JSON shapes exchanged by the command line: ring descriptors, ring specs,
//! piece dumps and scenario configs.

use std::collections::BTreeMap;

use gwa_core::cycles::Cycle;
use gwa_core::graded::{GradedRingSpec, Pieces};
use gwa_core::parse::{parse_poly, parse_rational};
use gwa_core::sigma::{LineKind, SigmaLine, TorusDescriptor};
use gwa_core::{AlgebraError, Poly, Scalar, Q};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RingDesc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
}

/// A one-dimensional ring: `σ(u) = u + 1`, `σ(u) = p·u` for rational `p`, or
/// `σ(u) = p·u` over `ℚ(p)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Ring {
    Additive,
    Rational(Q),
    Symbolic,
}

impl RingDesc {
    pub fn new(kind: &str, p: Option<&str>) -> Self {
        RingDesc {
            kind: kind.to_string(),
            p: p.map(str::to_string),
            dim: None,
            params: Vec::new(),
        }
    }

    pub fn is_torus(&self) -> bool {
        self.dim.unwrap_or(1) > 1 || !self.params.is_empty()
    }

    pub fn line(&self) -> Result<Ring, AlgebraError> {
        if self.is_torus() {
            return Err(AlgebraError::InvalidRing("a one-dimensional ring is required here".into()));
        }
        match (self.kind.as_str(), self.p.as_deref()) {
            ("A", _) => Ok(Ring::Additive),
            ("B", Some("symbolic")) => Ok(Ring::Symbolic),
            ("B", Some(p)) => Ok(Ring::Rational(parse_rational(p)?)),
            ("B", None) => Err(AlgebraError::InvalidRing("kind B needs p".into())),
            (k, _) => Err(AlgebraError::InvalidRing(format!("unknown ring kind {k:?}"))),
        }
    }

    pub fn torus(&self) -> Result<TorusDescriptor, AlgebraError> {
        let additive = match self.kind.as_str() {
            "A" => true,
            "B" => false,
            k => return Err(AlgebraError::InvalidRing(format!("unknown ring kind {k:?}"))),
        };
        let mut params = self.params.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        if !additive && params.is_empty() {
            if let Some(p) = &self.p {
                params.push(parse_rational(p)?);
            }
        }
        let t = TorusDescriptor::new(additive, params)?;
        if let Some(d) = self.dim {
            if d != t.dim() {
                return Err(AlgebraError::DimensionMismatch(format!("dim {d} but {} variables", t.dim())));
            }
        }
        Ok(t)
    }

    pub fn describe<S: Scalar>(line: &SigmaLine<S>) -> Self {
        if line.is_symbolic() {
            RingDesc::new("B", Some("symbolic"))
        } else if line.kind() == LineKind::Additive {
            RingDesc::new("A", None)
        } else {
            RingDesc::new("B", Some(&line.parameter().to_string()))
        }
    }
}

/// Runs `$body` with `$line` bound to the `SigmaLine` of the ring, over the
/// matching scalar type.
#[macro_export]
macro_rules! with_line {
    ($ring:expr, |$line:ident| $body:expr) => {
        match $ring {
            $crate::io::Ring::Additive => {
                let $line = gwa_core::sigma::SigmaLine::<gwa_core::Q>::additive()?;
                $body
            }
            $crate::io::Ring::Rational(p) => {
                let $line = gwa_core::sigma::SigmaLine::<gwa_core::Q>::multiplicative(p.clone())?;
                $body
            }
            $crate::io::Ring::Symbolic => {
                let $line = gwa_core::sigma::SigmaLine::<gwa_core::RatFunc>::multiplicative(gwa_core::RatFunc::p())?;
                $body
            }
        }
    };
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDesc>,
    pub orbit: String,
    #[serde(rename = "G")]
    pub g: Cycle,
    pub h: String,
    pub j: String,
}

impl SpecDesc {
    pub fn of<S: Scalar>(spec: &GradedRingSpec<S>) -> Self {
        SpecDesc {
            ring: Some(RingDesc::describe(spec.line())),
            orbit: spec.orbit().q().to_string(),
            g: spec.cycle().clone(),
            h: spec.h().to_string(),
            j: spec.j().to_string(),
        }
    }

    pub fn build<S: Scalar>(&self, line: SigmaLine<S>) -> Result<GradedRingSpec<S>, AlgebraError> {
        let q: Poly<S> = parse_poly(&self.orbit)?;
        let h: Poly<S> = parse_poly(&self.h)?;
        let j: Poly<S> = parse_poly(&self.j)?;
        GradedRingSpec::new(line, &q, self.g.clone(), &h, &j)
    }
}

/// `n ↦ gₙ` as canonical strings on `[-window, window]`.
pub fn piece_dump<S: Scalar>(pieces: &dyn Pieces<S>, window: i64) -> Result<BTreeMap<i64, String>, AlgebraError> {
    (-window..=window).map(|n| Ok((n, pieces.generator(n)?.to_string()))).collect()
}

/// A spec file is either a bare spec or the output of `build`, which nests
/// the spec next to its piece dump.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    Built {
        spec: SpecDesc,
        #[serde(default)]
        pieces: Option<BTreeMap<String, String>>,
    },
    Bare(SpecDesc),
}

impl SpecFile {
    pub fn into_parts(self) -> Result<(SpecDesc, Option<BTreeMap<i64, String>>), AlgebraError> {
        match self {
            SpecFile::Built { spec, pieces: Some(p) } => {
                let pieces = p
                    .into_iter()
                    .map(|(k, v)| {
                        k.parse()
                            .map(|k| (k, v))
                            .map_err(|_| AlgebraError::InvalidSpec(format!("piece degree {k:?} is not an integer")))
                    })
                    .collect::<Result<_, _>>()?;
                Ok((spec, Some(pieces)))
            }
            SpecFile::Built { spec, pieces: None } | SpecFile::Bare(spec) => Ok((spec, None)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDesc {
    pub name: String,
    #[serde(default)]
    pub window: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct Scenario {
    pub version: u32,
    #[serde(default)]
    pub ring: Option<RingDesc>,
    #[serde(default)]
    pub specs: Vec<SpecDesc>,
    #[serde(default)]
    pub polys: Vec<String>,
    #[serde(default)]
    pub checks: Vec<CheckDesc>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<String>,
}

pub fn envelope(command: &str, body: Value) -> Value {
    let mut out = serde_json::json!({ "version": VERSION, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}
