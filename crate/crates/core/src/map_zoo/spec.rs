//! JSON descriptions of maps, e.g.
//! `{"kind":"monomial","A":[[2,1],[1,1]],"coeffs":["1","1"]}` or
//! `{"kind":"projective","polys":["x^2","y^2"]}`.
//!
//! Errors carry the JSON path of the offending field.

use std::fmt;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith;
use crate::elliptic::{EllipticCurve, EllipticPoint};
use crate::heights::FactoredRational;
use crate::ns_calculus::IntMatrix;
use crate::poly::PROJECTIVE_VARS;

use super::{MapKind, SelfMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    /// Dotted path such as `maps[0].map.A`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for SpecError {}

fn join(base: &str, tail: &str) -> String {
    match (base.is_empty(), tail.is_empty()) {
        (_, true) => base.to_string(),
        (true, false) => tail.to_string(),
        (false, false) if tail.starts_with('[') => format!("{base}{tail}"),
        (false, false) => format!("{base}.{tail}"),
    }
}

fn typed<T: DeserializeOwned>(v: &Value, path: &str) -> Result<T, SpecError> {
    serde_path_to_error::deserialize(v.clone()).map_err(|e| {
        let inner = e.path().to_string();
        let inner = if inner == "." { String::new() } else { inner };
        SpecError { path: join(path, &inner), message: e.into_inner().to_string() }
    })
}

fn fail(path: &str, message: impl fmt::Display) -> SpecError {
    SpecError { path: path.to_string(), message: message.to_string() }
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
struct ProjectiveSpec {
    polys: Vec<String>,
    #[serde(default = "yes")]
    morphism: bool,
}

#[derive(Deserialize)]
struct MonomialSpec {
    #[serde(rename = "A")]
    a: IntMatrix,
    #[serde(default)]
    coeffs: Vec<String>,
}

#[derive(Deserialize)]
struct ProductSpec {
    factors: Vec<Value>,
}

#[derive(Deserialize)]
struct RuledSpec {
    a: i64,
    d: i64,
    e: i64,
}

#[derive(Deserialize)]
struct EllipticSpec {
    curve: EllipticCurve,
    m: i64,
    #[serde(default)]
    translate: Option<EllipticPoint>,
}

/// The accepted values of `kind`.
pub const MAP_KINDS: [&str; 5] = ["projective", "monomial", "product", "ruled", "elliptic"];

impl SelfMap {
    /// Build a map from its JSON description; `path` prefixes error locations.
    pub fn from_json(v: &Value, path: &str) -> Result<SelfMap, SpecError> {
        let kind_path = join(path, "kind");
        let kind = v
            .get("kind")
            .ok_or_else(|| fail(&kind_path, "missing field `kind`"))?
            .as_str()
            .ok_or_else(|| fail(&kind_path, "`kind` must be a string"))?;
        match kind {
            "projective" => {
                let s: ProjectiveSpec = typed(v, path)?;
                let refs: Vec<&str> = s.polys.iter().map(String::as_str).collect();
                SelfMap::projective_from_strs(&refs, s.morphism).map_err(|e| fail(&join(path, "polys"), e))
            }
            "monomial" => {
                let s: MonomialSpec = typed(v, path)?;
                let mut coeffs = Vec::with_capacity(s.coeffs.len());
                for (i, c) in s.coeffs.iter().enumerate() {
                    let here = join(path, &format!("coeffs[{i}]"));
                    let q = arith::parse_rational(c).map_err(|e| fail(&here, e))?;
                    coeffs.push(FactoredRational::from_rational(&q).map_err(|e| fail(&here, e))?);
                }
                let a_path = join(path, "A");
                if !coeffs.is_empty() && coeffs.len() != s.a.n() {
                    return Err(fail(&join(path, "coeffs"), format!("expected {} coefficients", s.a.n())));
                }
                SelfMap::monomial(s.a, coeffs).map_err(|e| fail(&a_path, e))
            }
            "product" => {
                let s: ProductSpec = typed(v, path)?;
                let mut factors = Vec::with_capacity(s.factors.len());
                for (i, f) in s.factors.iter().enumerate() {
                    factors.push(SelfMap::from_json(f, &join(path, &format!("factors[{i}]")))?);
                }
                SelfMap::product(factors).map_err(|e| fail(&join(path, "factors"), e))
            }
            "ruled" => {
                let s: RuledSpec = typed(v, path)?;
                SelfMap::ruled(s.a, s.d, s.e).map_err(|e| fail(path, e))
            }
            "elliptic" => {
                let s: EllipticSpec = typed(v, path)?;
                let t = s.translate.unwrap_or(EllipticPoint::Infinity);
                SelfMap::elliptic(s.curve, BigInt::from(s.m), t).map_err(|e| fail(path, e))
            }
            other => Err(fail(&kind_path, format!("unknown kind `{other}`; expected one of {}", MAP_KINDS.join(", ")))),
        }
    }

    pub fn from_json_str(s: &str) -> Result<SelfMap, SpecError> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| fail("", format!("line {} column {}: {e}", e.line(), e.column())))?;
        SelfMap::from_json(&v, "")
    }

    /// JSON description that [`SelfMap::from_json`] reads back.
    pub fn to_json(&self) -> Value {
        match &self.kind {
            MapKind::ProjectivePoly(p) => {
                let names = &PROJECTIVE_VARS[..p.polys.len()];
                let polys: Vec<String> = p.polys.iter().map(|q| q.display_with(names).to_string()).collect();
                json!({"kind": "projective", "polys": polys, "morphism": p.morphism})
            }
            MapKind::Monomial(m) => {
                let coeffs: Vec<String> = m
                    .coeffs
                    .iter()
                    .map(|c| c.to_rational(4096).map(|q| arith::format_rational(&q)).unwrap_or_else(|| c.to_string()))
                    .collect();
                json!({"kind": "monomial", "A": m.matrix, "coeffs": coeffs})
            }
            MapKind::Product(fs) => {
                let factors: Vec<Value> = fs.iter().map(SelfMap::to_json).collect();
                json!({"kind": "product", "factors": factors})
            }
            MapKind::RuledNS(r) => json!({"kind": "ruled", "a": r.a, "d": r.d, "e": r.e}),
            MapKind::Elliptic(e) => {
                let m =
                    e.m.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(e.m.to_string()));
                json!({"kind": "elliptic", "curve": e.curve, "m": m, "translate": e.translate})
            }
        }
    }
}
