//! Search for a low-degree form vanishing on a finite set of points.
//!
//! Full column rank of the evaluation matrix modulo a prime already implies
//! full rank over the rationals, so most negative answers come from cheap
//! word-sized arithmetic. Only a rank drop modulo every screening prime sends
//! the search to the exact rational kernel.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::elliptic::EllipticPoint;
use crate::heights::FactoredRational;
use crate::map_zoo::{Domain, MapError, Point};
use crate::poly::Poly;

use super::{DensityEvidence, EngineError};

const SCREEN_PRIMES: [u64; 3] = [(1 << 61) - 1, 1_000_000_007, 998_244_353];

/// Torus points are expanded to integers only up to this exponent.
const MAX_EXPANSION_EXPONENT: u32 = 1 << 14;

const NAMES: [char; 16] = ['x', 'y', 'z', 'w', 'u', 'v', 's', 't', 'a', 'b', 'c', 'e', 'g', 'h', 'k', 'm'];

/// Degree budget used when the caller does not choose one.
pub fn default_density_degree(domain: Domain) -> u32 {
    match domain {
        Domain::Projective(2) | Domain::Torus(2) => 3,
        _ => 2,
    }
}

/// Number of unknown coefficients of a form of degree `d` (multidegree
/// `(d, ..., d)` on products).
pub fn monomial_count(domain: Domain, d: u32) -> usize {
    match domain {
        Domain::Projective(n) | Domain::Torus(n) => binomial(n + d as usize, d as usize),
        Domain::Product(k) => (d as usize + 1).pow(k as u32),
        Domain::Elliptic => d as usize + 1,
        Domain::NsOnly => 0,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

enum Block {
    Ints(Vec<BigInt>),
    /// `(1 : x_1 : ... : x_d)` with factored coordinates.
    Factored(Vec<FactoredRational>),
}

fn blocks_of(p: &Point) -> Vec<Block> {
    match p {
        Point::Projective(q) => vec![Block::Ints(q.coords().to_vec())],
        Point::Torus(t) => {
            let mut cs = vec![FactoredRational::one()];
            cs.extend(t.coords().iter().cloned());
            vec![Block::Factored(cs)]
        }
        Point::Product(qs) => qs.iter().map(|q| Block::Ints(q.coords().to_vec())).collect(),
        Point::Elliptic(EllipticPoint::Infinity) => vec![Block::Ints(vec![BigInt::one(), BigInt::zero()])],
        Point::Elliptic(EllipticPoint::Affine { x, .. }) => {
            vec![Block::Ints(vec![x.numer().clone(), x.denom().clone()])]
        }
    }
}

fn block_len(domain: Domain) -> (usize, usize) {
    match domain {
        Domain::Projective(n) | Domain::Torus(n) => (1, n + 1),
        Domain::Product(k) => (k, 2),
        Domain::Elliptic => (1, 2),
        Domain::NsOnly => (0, 0),
    }
}

fn exponents(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Concatenated exponent vectors, one block after another.
fn monomials(blocks: usize, width: usize, d: u32) -> Vec<Vec<u32>> {
    let single = exponents(width, d);
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..blocks {
        out = out
            .iter()
            .flat_map(|prefix| {
                single.iter().map(move |e| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(e);
                    v
                })
            })
            .collect();
    }
    out
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, q);
        }
        b = mul_mod(b, b, q);
        e >>= 1;
    }
    r
}

fn big_mod(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")
}

/// Residue of a factored rational, `None` if `q` divides a denominator.
fn factored_mod(c: &FactoredRational, q: u64) -> Option<u64> {
    let qb = BigInt::from(q);
    let mut r = 1u64;
    for (p, e) in c.factors() {
        let pm = big_mod(p, q);
        if pm == 0 {
            if e.is_negative() {
                return None;
            }
            return Some(0);
        }
        let e_red = e.mod_floor(&(&qb - 1u32)).to_u64().expect("reduced exponent fits");
        r = mul_mod(r, pow_mod(pm, e_red, q), q);
    }
    Some(if c.is_negative() { (q - r) % q } else { r })
}

fn block_mod(b: &Block, q: u64) -> Option<Vec<u64>> {
    match b {
        Block::Ints(xs) => Some(xs.iter().map(|x| big_mod(x, q)).collect()),
        Block::Factored(cs) => cs.iter().map(|c| factored_mod(c, q)).collect(),
    }
}

fn block_exact(b: &Block) -> Result<Vec<BigRational>, EngineError> {
    match b {
        Block::Ints(xs) => Ok(xs.iter().map(|x| BigRational::from_integer(x.clone())).collect()),
        Block::Factored(cs) => {
            cs.iter().map(|c| c.to_rational(MAX_EXPANSION_EXPONENT).ok_or(EngineError::PointTooLarge)).collect()
        }
    }
}

fn rank_mod(rows: &[Vec<u64>], ncols: usize, q: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], q - 2, q);
        for j in col..ncols {
            m[rank][j] = mul_mod(m[rank][j], inv, q);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for j in col..ncols {
                    let sub = mul_mod(factor, m[rank][j], q);
                    m[r][j] = (m[r][j] + q - sub) % q;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// A nonzero kernel vector with coprime integer entries, if any.
fn exact_kernel(rows: Vec<Vec<BigRational>>, ncols: usize) -> Option<Vec<BigInt>> {
    let mut m = rows;
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        for j in col..ncols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..ncols {
                    let sub = &factor * &m[rank][j];
                    m[r][j] -= sub;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut sol = vec![BigRational::zero(); ncols];
    sol[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        sol[pc] = -m[row][free].clone();
    }
    let den = sol.iter().fold(BigInt::one(), |acc, x| arith::lcm(&acc, x.denom()));
    let mut ints: Vec<BigInt> = sol.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = arith::gcd_many(ints.iter());
    if !g.is_zero() && !g.is_one() {
        ints.iter_mut().for_each(|x| *x = &*x / &g);
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        ints.iter_mut().for_each(|x| *x = -&*x);
    }
    Some(ints)
}

/// Lowest-degree form (up to `max_degree`) vanishing on every point, or a
/// certificate that none exists at that budget.
pub fn vanishing_curve_search(points: &[Point], max_degree: u32) -> Result<DensityEvidence, EngineError> {
    let Some(first) = points.first() else {
        return Err(EngineError::InsufficientPoints {
            needed: monomial_count(Domain::Projective(1), max_degree) + 1,
            got: 0,
        });
    };
    let domain = first.domain();
    if let Some(bad) = points.iter().find(|p| p.domain() != domain) {
        return Err(MapError::DomainMismatch { expected: domain.to_string(), got: bad.domain().to_string() }.into());
    }
    if domain == Domain::NsOnly || max_degree == 0 {
        return Err(MapError::Invalid("nothing to search".into()).into());
    }
    let mut seen = HashSet::new();
    let distinct: Vec<&Point> = points.iter().filter(|p| seen.insert(*p)).collect();
    let samples: Vec<Vec<Block>> = distinct.iter().map(|p| blocks_of(p)).collect();
    let (nblocks, width) = block_len(domain);

    for d in 1..=max_degree {
        let monos = monomials(nblocks, width, d);
        let full_mod_p = SCREEN_PRIMES.iter().any(|&q| match modular_rows(&samples, &monos, width, q) {
            Some(rows) => rank_mod(&rows, monos.len(), q) == monos.len(),
            None => false,
        });
        if full_mod_p {
            continue;
        }
        let rows = exact_rows(&samples, &monos, width)?;
        if let Some(coeffs) = exact_kernel(rows, monos.len()) {
            return Ok(DensityEvidence::ContainedInCurve(format_form(&coeffs, &monos)));
        }
    }
    let needed = monomial_count(domain, max_degree) + 1;
    if distinct.len() < needed {
        return Err(EngineError::InsufficientPoints { needed, got: distinct.len() });
    }
    Ok(DensityEvidence::NoVanishingCurveUpToDegree(max_degree))
}

fn modular_rows(samples: &[Vec<Block>], monos: &[Vec<u32>], width: usize, q: u64) -> Option<Vec<Vec<u64>>> {
    samples
        .iter()
        .map(|blocks| {
            let vals: Vec<u64> = blocks.iter().map(|b| block_mod(b, q)).collect::<Option<Vec<_>>>()?.concat();
            debug_assert_eq!(vals.len(), blocks.len() * width);
            Some(
                monos
                    .iter()
                    .map(|e| e.iter().zip(&vals).fold(1u64, |acc, (&k, &v)| mul_mod(acc, pow_mod(v, k as u64, q), q)))
                    .collect(),
            )
        })
        .collect()
}

fn exact_rows(samples: &[Vec<Block>], monos: &[Vec<u32>], width: usize) -> Result<Vec<Vec<BigRational>>, EngineError> {
    samples
        .iter()
        .map(|blocks| {
            let vals: Vec<BigRational> = blocks.iter().map(block_exact).collect::<Result<Vec<_>, _>>()?.concat();
            debug_assert_eq!(vals.len(), blocks.len() * width);
            Ok(monos
                .iter()
                .map(|e| {
                    e.iter()
                        .zip(&vals)
                        .filter(|(&k, _)| k > 0)
                        .fold(BigRational::one(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
                })
                .collect())
        })
        .collect()
}

fn format_form(coeffs: &[BigInt], monos: &[Vec<u32>]) -> String {
    let nvars = monos[0].len();
    let poly = coeffs
        .iter()
        .zip(monos)
        .filter(|(c, _)| !c.is_zero())
        .fold(Poly::zero(nvars), |acc, (c, e)| acc.add(&Poly::monomial(c.clone(), e.clone())));
    poly.display_with(&NAMES[..nvars.min(NAMES.len())]).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heights::ProjectivePoint;

    fn proj(c: &[i64]) -> Point {
        Point::Projective(ProjectivePoint::from_i64s(c).unwrap())
    }

    #[test]
    fn counts() {
        assert_eq!(monomial_count(Domain::Projective(2), 3), 10);
        assert_eq!(monomial_count(Domain::Product(2), 2), 9);
        assert_eq!(monomials(2, 2, 2).len(), 9);
        assert_eq!(exponents(3, 3).len(), 10);
    }

    #[test]
    fn collinear_points_lie_on_z() {
        let pts = [proj(&[1, 0, 0]), proj(&[0, 1, 0]), proj(&[1, 1, 0])];
        assert_eq!(vanishing_curve_search(&pts, 1).unwrap(), DensityEvidence::ContainedInCurve("z".into()));
    }

    #[test]
    fn squaring_orbit_has_no_line() {
        let pts = [proj(&[2, 1]), proj(&[4, 1]), proj(&[16, 1])];
        assert_eq!(vanishing_curve_search(&pts, 1).unwrap(), DensityEvidence::NoVanishingCurveUpToDegree(1));
    }

    #[test]
    fn two_points_lie_on_a_quadric() {
        let pts = [proj(&[0, 1]), proj(&[1, 0])];
        assert!(matches!(vanishing_curve_search(&pts, 2).unwrap(), DensityEvidence::ContainedInCurve(_)));
        assert!(matches!(vanishing_curve_search(&pts, 1), Err(EngineError::InsufficientPoints { .. })));
    }

    #[test]
    fn conic_is_found_exactly() {
        // (t^2 - 1 : 2t : t^2 + 1) lies on x^2 + y^2 = z^2.
        let pts: Vec<Point> = (2..12).map(|t| proj(&[t * t - 1, 2 * t, t * t + 1])).collect();
        let ev = vanishing_curve_search(&pts, 3).unwrap();
        assert_eq!(ev, DensityEvidence::ContainedInCurve("x^2+y^2-z^2".into()));
    }
}
