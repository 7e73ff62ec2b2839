use std::fmt;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::elliptic::{naive_height_unchecked, EllipticPoint};
use crate::heights::{torus_height, weil_height, HeightValue, ProjectivePoint, TorusEmbedding, TorusPoint};

use super::MapError;

/// Where a map's points live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Projective(usize),
    Torus(usize),
    /// `(P^1)^k`.
    Product(usize),
    Elliptic,
    /// Abstract NS-level maps have no points.
    NsOnly,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Projective(n) => write!(f, "P^{n}"),
            Domain::Torus(d) => write!(f, "G_m^{d}"),
            Domain::Product(k) => write!(f, "(P^1)^{k}"),
            Domain::Elliptic => write!(f, "an elliptic curve"),
            Domain::NsOnly => write!(f, "no point set (NS level only)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Projective(ProjectivePoint),
    Torus(TorusPoint),
    Product(Vec<ProjectivePoint>),
    Elliptic(EllipticPoint),
}

/// Result of evaluating a map at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    Value(Point),
    Indeterminate,
}

impl Image {
    pub fn value(self) -> Option<Point> {
        match self {
            Image::Value(p) => Some(p),
            Image::Indeterminate => None,
        }
    }
}

impl Point {
    pub fn domain(&self) -> Domain {
        match self {
            Point::Projective(p) => Domain::Projective(p.dim()),
            Point::Torus(t) => Domain::Torus(t.dim()),
            Point::Product(ps) => Domain::Product(ps.len()),
            Point::Elliptic(_) => Domain::Elliptic,
        }
    }

    /// Size of the largest integer needed to write the point down.
    pub fn max_bits(&self) -> u64 {
        match self {
            Point::Projective(p) => p.max_bits(),
            Point::Torus(t) => t.max_bits(),
            Point::Product(ps) => ps.iter().map(ProjectivePoint::max_bits).max().unwrap_or(0),
            Point::Elliptic(e) => e.max_bits(),
        }
    }

    /// The standard height: Weil height on `P^N`, the chosen compactification
    /// on the torus, the sum of the factor heights on `(P^1)^k`, and the
    /// height of the x-coordinate on an elliptic curve.
    pub fn height(&self, embedding: TorusEmbedding) -> HeightValue {
        match self {
            Point::Projective(p) => weil_height(p),
            Point::Torus(t) => torus_height(t, embedding),
            Point::Product(ps) => HeightValue::new(ps.iter().map(|p| weil_height(p).value).sum()),
            Point::Elliptic(e) => naive_height_unchecked(e),
        }
    }

    pub fn projective_i64(coords: &[i64]) -> Result<Point, MapError> {
        Ok(Point::Projective(ProjectivePoint::from_i64s(coords)?))
    }

    pub fn torus_i64(coords: &[i64]) -> Result<Point, MapError> {
        Ok(Point::Torus(TorusPoint::from_i64s(coords)?))
    }

    /// Command-line shorthand for a point of `domain`: `2:1` or `1:2:3` for
    /// projective points, `2,3` or `1/2,5` for torus points, `2:1;3:1` for
    /// products, and `-1,1` or `infinity` on an elliptic curve. JSON forms are
    /// accepted too.
    pub fn parse_for(domain: Domain, s: &str) -> Result<Point, MapError> {
        let t = s.trim();
        if t.starts_with('{') || t.starts_with('"') {
            let v: serde_json::Value =
                serde_json::from_str(t).map_err(|e| MapError::Invalid(format!("point `{s}`: {e}")))?;
            return Point::from_json_for(domain, &v);
        }
        let bad = |msg: &str| MapError::Invalid(format!("point `{s}`: {msg}"));
        let body = t.trim_start_matches('(').trim_end_matches(')');
        let rationals = |part: &str, sep: char| -> Result<Vec<BigRational>, MapError> {
            part.split(sep)
                .map(|c| arith::parse_rational(c.trim().trim_start_matches('(').trim_end_matches(')')))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(&e.to_string()))
        };
        let p = match domain {
            Domain::Projective(_) => Point::Projective(ProjectivePoint::normalize(&rationals(body, ':')?)?),
            Domain::Torus(_) => Point::Torus(TorusPoint::from_rationals(&rationals(body, ',')?)?),
            Domain::Product(_) => {
                // Factors are separated by `;` or by `,` (the display form).
                let sep = if body.contains(';') { ';' } else { ',' };
                let parts = body
                    .split(sep)
                    .map(|q| ProjectivePoint::normalize(&rationals(q, ':')?).map_err(MapError::from))
                    .collect::<Result<Vec<_>, _>>()?;
                Point::Product(parts)
            }
            Domain::Elliptic => Point::Elliptic(EllipticPoint::parse(t)?),
            Domain::NsOnly => return Err(bad("this map has no points")),
        };
        check_domain(domain, p)
    }

    /// A point from its JSON form (`{"proj":..}`, `{"torus":..}`,
    /// `{"product":[{"proj":..},..]}`, `{"x":..,"y":..}`, `"infinity"`), or a
    /// shorthand string.
    pub fn from_json_for(domain: Domain, v: &serde_json::Value) -> Result<Point, MapError> {
        if let serde_json::Value::String(s) = v {
            if domain != Domain::Elliptic || !s.eq_ignore_ascii_case("infinity") {
                return Point::parse_for(domain, s);
            }
        }
        let p: Point = serde_json::from_value(v.clone()).map_err(|e| MapError::Invalid(format!("point: {e}")))?;
        check_domain(domain, p)
    }
}

fn check_domain(domain: Domain, p: Point) -> Result<Point, MapError> {
    if p.domain() == domain {
        Ok(p)
    } else {
        Err(MapError::DomainMismatch { expected: domain.to_string(), got: p.domain().to_string() })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Projective(p) => write!(f, "{p}"),
            Point::Torus(t) => write!(f, "{t}"),
            Point::Product(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Point::Elliptic(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointJson {
    Projective(ProjectivePoint),
    Torus(TorusPoint),
    Product { product: Vec<ProjectivePoint> },
    Elliptic(EllipticPoint),
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Projective(p) => p.serialize(s),
            Point::Torus(t) => t.serialize(s),
            Point::Product(ps) => PointJson::Product { product: ps.clone() }.serialize(s),
            Point::Elliptic(e) => e.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PointJson::deserialize(d).map_err(|_| D::Error::custom("unrecognized point"))?;
        Ok(match raw {
            PointJson::Projective(p) => Point::Projective(p),
            PointJson::Torus(t) => Point::Torus(t),
            PointJson::Product { product } => Point::Product(product),
            PointJson::Elliptic(e) => Point::Elliptic(e),
        })
    }
}
