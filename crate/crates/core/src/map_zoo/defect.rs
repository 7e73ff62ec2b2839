//! The height attached to each map's eigenclass and the constant bounding
//! `|h(f(Q)) - delta * h(Q)|`.
//!
//! Diagonal power maps have defect exactly zero. For a monomial map the
//! height is `L(x) = sum_p |u . v_p(x)| log p`, `u` a real left eigenvector of
//! the exponent matrix for an eigenvalue of maximal modulus; then
//! `L(f(x)) - rho * L(x)` is bounded by the same expression evaluated on the
//! coefficients. Everything else is measured on a fixed pseudo-random sample
//! and doubled.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::elliptic::{naive_height_unchecked, EllipticPoint};
use crate::heights::{weil_height, FactoredRational, ProjectivePoint, TorusPoint};
use crate::ns_calculus::dominant_real_left_eigenvector;
use crate::par::*;
use crate::poly::Poly;

use super::{translation_is_torsion, Image, MapError, MapKind, Point, SelfMap};

const DEFECT_SAMPLES: usize = 100;
const DEFECT_SEED: u64 = 0x00de_fec7;
const SAMPLE_COORD_RANGE: i64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectBound {
    pub value: f64,
    /// Measured on samples rather than proved.
    pub empirical: bool,
}

#[derive(Default)]
pub(super) struct Cache {
    defect: OnceLock<Option<DefectBound>>,
    eigen: OnceLock<Option<(f64, Vec<f64>)>>,
    elliptic_pool: OnceLock<Vec<EllipticPoint>>,
}

impl SelfMap {
    fn monomial_eigen(&self) -> Option<&(f64, Vec<f64>)> {
        let MapKind::Monomial(m) = &self.kind else { return None };
        self.cache.eigen.get_or_init(|| dominant_real_left_eigenvector(&m.matrix)).as_ref()
    }

    /// Height relative to the map's eigenclass, the quantity renormalized by
    /// `delta^n` in the canonical height.
    pub fn eigen_height(&self, p: &Point) -> Result<f64, MapError> {
        let mismatch = || MapError::DomainMismatch { expected: self.domain().to_string(), got: p.domain().to_string() };
        if p.domain() != self.domain() {
            return Err(mismatch());
        }
        match (&self.kind, p) {
            (MapKind::ProjectivePoly(_), Point::Projective(q)) => Ok(weil_height(q).value),
            (MapKind::Monomial(_), Point::Torus(t)) => {
                let (_, u) = self
                    .monomial_eigen()
                    .ok_or_else(|| MapError::Unavailable("dominant eigenvalue is not real".into()))?;
                Ok(eigen_log_size(u, t.coords()))
            }
            (MapKind::Product(fs), Point::Product(qs)) => {
                let top = top_degree(fs);
                Ok(fs
                    .iter()
                    .zip(qs)
                    .filter(|(f, _)| f.poly_degree() == Some(top))
                    .map(|(_, q)| weil_height(q).value)
                    .sum())
            }
            (MapKind::Elliptic(_), Point::Elliptic(e)) => Ok(naive_height_unchecked(e).value),
            _ => Err(mismatch()),
        }
    }

    /// Bound on `|h_D(f(Q)) - delta * h_D(Q)|`, if one is available.
    pub fn defect_bound(&self) -> Option<DefectBound> {
        *self.cache.defect.get_or_init(|| self.compute_defect())
    }

    fn compute_defect(&self) -> Option<DefectBound> {
        match &self.kind {
            MapKind::ProjectivePoly(p) => {
                if !p.morphism {
                    return None;
                }
                if is_diagonal_power(&p.polys, p.degree) {
                    return Some(DefectBound { value: 0.0, empirical: false });
                }
                self.measured_defect(p.degree as f64)
            }
            MapKind::Monomial(m) => {
                let (_, u) = self.monomial_eigen()?;
                Some(DefectBound { value: eigen_log_size(u, &m.coeffs), empirical: false })
            }
            MapKind::Product(fs) => {
                let top = top_degree(fs);
                let mut total = 0.0;
                let mut empirical = false;
                for f in fs.iter().filter(|f| f.poly_degree() == Some(top)) {
                    let b = f.defect_bound()?;
                    total += b.value;
                    empirical |= b.empirical;
                }
                Some(DefectBound { value: total, empirical })
            }
            MapKind::RuledNS(_) => None,
            MapKind::Elliptic(e) => {
                // A non-torsion translation shifts heights by O(sqrt h), not O(1).
                if e.m.abs() <= BigInt::one() || !translation_is_torsion(e) {
                    return None;
                }
                let m = arith::to_f64(&e.m);
                self.measured_defect(m * m)
            }
        }
    }

    fn measured_defect(&self, delta: f64) -> Option<DefectBound> {
        let samples = self.sample_points(DEFECT_SAMPLES, DEFECT_SEED);
        if samples.is_empty() {
            return None;
        }
        let worst: Vec<f64> = samples
            .par_iter()
            .map(|q| match self.evaluate(q) {
                Ok(Image::Value(fq)) => {
                    let a = self.eigen_height(&fq).unwrap_or(0.0);
                    let b = self.eigen_height(q).unwrap_or(0.0);
                    (a - delta * b).abs()
                }
                _ => 0.0,
            })
            .collect();
        let max = worst.into_iter().fold(0.0, f64::max);
        Some(DefectBound { value: 2.0 * max, empirical: true })
    }

    /// `count` pseudo-random points of moderate height in the map's domain,
    /// reproducible from `seed`.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        match &self.kind {
            MapKind::ProjectivePoly(p) => {
                while out.len() < count {
                    if let Some(q) = random_projective(&mut rng, p.polys.len()) {
                        out.push(Point::Projective(q));
                    }
                }
            }
            MapKind::Monomial(m) => {
                while out.len() < count {
                    out.push(Point::Torus(random_torus(&mut rng, m.matrix.n())));
                }
            }
            MapKind::Product(fs) => {
                while out.len() < count {
                    let qs: Option<Vec<ProjectivePoint>> = fs.iter().map(|_| random_projective(&mut rng, 2)).collect();
                    if let Some(qs) = qs {
                        out.push(Point::Product(qs));
                    }
                }
            }
            MapKind::RuledNS(_) => {}
            MapKind::Elliptic(e) => {
                let pool = self.cache.elliptic_pool.get_or_init(|| e.curve.small_points(60));
                if pool.is_empty() {
                    return out;
                }
                while out.len() < count {
                    let p = &pool[rng.gen_range(0..pool.len())];
                    let q = &pool[rng.gen_range(0..pool.len())];
                    let k = BigInt::from(rng.gen_range(1..=3));
                    let kp = e.curve.multiply_unchecked(&k, p);
                    out.push(Point::Elliptic(e.curve.add(&kp, q).expect("pool points lie on the curve")));
                }
            }
        }
        out
    }
}

fn top_degree(fs: &[SelfMap]) -> u32 {
    fs.iter().filter_map(SelfMap::poly_degree).max().unwrap_or(1)
}

/// `sum_p |u . v_p| log p` over the primes of the given coordinates.
fn eigen_log_size(u: &[f64], coords: &[FactoredRational]) -> f64 {
    let mut primes: Vec<&BigInt> = coords.iter().flat_map(|c| c.factors().iter().map(|(p, _)| p)).collect();
    primes.sort();
    primes.dedup();
    primes
        .into_iter()
        .map(|p| {
            let dot: f64 = coords.iter().zip(u).map(|(c, ui)| ui * arith::to_f64(&c.exponent_of(p))).sum();
            dot.abs() * arith::ln_abs(p)
        })
        .sum()
}

fn is_diagonal_power(polys: &[Poly], d: u32) -> bool {
    polys.iter().enumerate().all(|(i, p)| {
        p.num_terms() == 1
            && p.terms().all(|(e, c)| c.is_one() && e.iter().enumerate().all(|(j, &k)| k == if i == j { d } else { 0 }))
    })
}

fn random_projective(rng: &mut ChaCha8Rng, len: usize) -> Option<ProjectivePoint> {
    let coords: Vec<BigInt> =
        (0..len).map(|_| BigInt::from(rng.gen_range(-SAMPLE_COORD_RANGE..=SAMPLE_COORD_RANGE))).collect();
    if coords.iter().all(Zero::is_zero) {
        return None;
    }
    ProjectivePoint::from_integers(coords).ok()
}

fn random_torus(rng: &mut ChaCha8Rng, dim: usize) -> TorusPoint {
    let coords: Vec<BigRational> = (0..dim)
        .map(|_| {
            let mut n = 0i64;
            while n == 0 {
                n = rng.gen_range(-40..=40);
            }
            let d = rng.gen_range(1..=40i64);
            BigRational::new(n.into(), d.into())
        })
        .collect();
    TorusPoint::from_rationals(&coords).expect("nonzero small rationals factor")
}
