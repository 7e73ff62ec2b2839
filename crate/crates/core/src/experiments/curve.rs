use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::heights::{ProjectivePoint, TorusPoint};
use crate::map_zoo::{Domain, Point};
use crate::poly::Poly;

use super::ExperimentError;

/// A rational curve `t -> (c_0(t), ..., c_k(t))` with integer polynomial
/// coordinates, sampled at `t = t_start, t_start + 1, ...`.
///
/// Projective domains take homogeneous coordinates, tori take affine ones and
/// `(P^1)^k` takes `2k` coordinates read pairwise.
#[derive(Debug, Clone)]
pub struct ParamCurve {
    domain: Domain,
    coords: Vec<Poly>,
    pub t_start: i64,
}

#[derive(Serialize)]
struct CurveJson {
    coords: Vec<String>,
    t_start: i64,
}

impl Serialize for ParamCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CurveJson {
            coords: self.coords.iter().map(|c| c.display_with(&['t']).to_string()).collect(),
            t_start: self.t_start,
        }
        .serialize(s)
    }
}

fn expected_len(domain: Domain) -> Option<usize> {
    match domain {
        Domain::Projective(n) => Some(n + 1),
        Domain::Torus(d) => Some(d),
        Domain::Product(k) => Some(2 * k),
        Domain::Elliptic | Domain::NsOnly => None,
    }
}

impl ParamCurve {
    pub fn new(domain: Domain, coords: Vec<Poly>, t_start: i64) -> Result<Self, ExperimentError> {
        let want = expected_len(domain)
            .ok_or_else(|| ExperimentError::Curve(format!("no curve sampler for points of {domain}")))?;
        if coords.len() != want {
            return Err(ExperimentError::Curve(format!("{domain} needs {want} coordinates, got {}", coords.len())));
        }
        if coords.iter().any(|c| c.nvars() != 1) {
            return Err(ExperimentError::Curve("coordinates must be polynomials in t".into()));
        }
        Ok(ParamCurve { domain, coords, t_start })
    }

    pub fn parse(domain: Domain, coords: &[&str], t_start: i64) -> Result<Self, ExperimentError> {
        let polys = coords
            .iter()
            .map(|c| Poly::parse(c, &['t']).map_err(|e| ExperimentError::Curve(format!("`{c}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        ParamCurve::new(domain, polys, t_start)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// The point at parameter `t`; `None` where the parametrization
    /// degenerates (all homogeneous coordinates zero, or a zero torus
    /// coordinate).
    pub fn point_at(&self, t: i64) -> Option<Point> {
        let arg = [BigInt::from(t)];
        let vals: Vec<BigInt> = self.coords.iter().map(|c| c.eval(&arg)).collect();
        match self.domain {
            Domain::Projective(_) => ProjectivePoint::from_integers(vals).ok().map(Point::Projective),
            Domain::Torus(_) => {
                if vals.iter().any(Zero::is_zero) {
                    return None;
                }
                let qs: Vec<BigRational> = vals.into_iter().map(BigRational::from_integer).collect();
                TorusPoint::from_rationals(&qs).ok().map(Point::Torus)
            }
            Domain::Product(_) => vals
                .chunks(2)
                .map(|c| ProjectivePoint::from_integers(c.to_vec()).ok())
                .collect::<Option<Vec<_>>>()
                .map(Point::Product),
            Domain::Elliptic | Domain::NsOnly => None,
        }
    }

    /// `(t, point)` for `count` consecutive parameters from `t_start`,
    /// skipping degenerate ones.
    pub fn samples(&self, count: usize) -> Vec<(i64, Point)> {
        (0..count as i64).map(|i| self.t_start + i).filter_map(|t| self.point_at(t).map(|p| (t, p))).collect()
    }
}
