use num_rational::BigRational;
use num_traits::One;

use crate::elliptic::EllipticPoint;
use crate::heights::ProjectivePoint;

use super::{Domain, Image, MapError, Point, SelfMap};

/// A morphism between the spaces of two zoo maps.
#[derive(Debug, Clone)]
pub enum Morphism {
    /// A zoo map used as a morphism of its own space (e.g. `x -> x^2` on `G_m`).
    Map(SelfMap),
    /// `(P^1)^k -> P^1`, onto the given factor.
    ProductProjection(usize),
    /// `E -> P^1`, `(x, y) -> (x : 1)`, `O -> (1 : 0)`.
    EllipticXCoordinate,
}

impl Morphism {
    pub fn apply(&self, p: &Point) -> Result<Image, MapError> {
        match (self, p) {
            (Morphism::Map(f), _) => f.evaluate(p),
            (Morphism::ProductProjection(i), Point::Product(qs)) if *i < qs.len() => {
                Ok(Image::Value(Point::Projective(qs[*i].clone())))
            }
            (Morphism::EllipticXCoordinate, Point::Elliptic(e)) => {
                let q = match e {
                    EllipticPoint::Infinity => ProjectivePoint::from_i64s(&[1, 0])?,
                    EllipticPoint::Affine { x, .. } => ProjectivePoint::normalize(&[x.clone(), BigRational::one()])?,
                };
                Ok(Image::Value(Point::Projective(q)))
            }
            _ => Err(MapError::DomainMismatch { expected: self.source_description(), got: p.domain().to_string() }),
        }
    }

    fn source_description(&self) -> String {
        match self {
            Morphism::Map(f) => f.domain().to_string(),
            Morphism::ProductProjection(i) => format!("(P^1)^k with k > {i}"),
            Morphism::EllipticXCoordinate => Domain::Elliptic.to_string(),
        }
    }
}

/// Whether `psi(f_x(P)) = f_y(psi(P))` holds exactly at every sample. A
/// sample where either side is undefined counts as a failure.
pub fn semiconjugacy_check(psi: &Morphism, fx: &SelfMap, fy: &SelfMap, samples: &[Point]) -> Result<bool, MapError> {
    for p in samples {
        let left = match fx.evaluate(p)? {
            Image::Value(q) => psi.apply(&q)?,
            Image::Indeterminate => return Ok(false),
        };
        let right = match psi.apply(p)? {
            Image::Value(q) => fy.evaluate(&q)?,
            Image::Indeterminate => return Ok(false),
        };
        match (left, right) {
            (Image::Value(a), Image::Value(b)) if a == b => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}
