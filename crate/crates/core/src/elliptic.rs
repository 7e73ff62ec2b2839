//! Short Weierstrass curves `y^2 = x^3 + ax + b` over `Q` and their group law.
//!
//! Every group operation works on unreduced numerators and denominators and
//! reduces once per output coordinate, so multiples whose coordinates run to
//! hundreds of thousands of bits stay affordable.

use std::fmt;

use malachite_q::Rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{self, ArithError};
use crate::heights::HeightValue;

/// Torsion orders of rational points never exceed this.
pub const RATIONAL_TORSION_BOUND: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    Singular,
    #[error("point {0} is not on the curve")]
    OffCurve(String),
    #[error("kernel of [m1] - [b] is the whole curve when m1 = b = {0}")]
    DegenerateKernel(i64),
    #[error("factorization needed for the torsion search is out of reach")]
    Factorization(#[from] ArithError),
    #[error("bad curve or point description: {0}")]
    Parse(String),
}

/// `y^2 = x^3 + ax + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    a: BigRational,
    b: BigRational,
}

#[derive(Debug, Clone)]
pub enum EllipticPoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

// Rational equality and hashing walk a continued fraction when denominators
// differ, which is slow and deeply recursive for large heights. Reduced
// fractions are compared by their parts instead.
impl PartialEq for EllipticPoint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (EllipticPoint::Infinity, EllipticPoint::Infinity) => true,
            (EllipticPoint::Affine { x: x1, y: y1 }, EllipticPoint::Affine { x: x2, y: y2 }) => {
                x1.numer() == x2.numer()
                    && x1.denom() == x2.denom()
                    && y1.numer() == y2.numer()
                    && y1.denom() == y2.denom()
            }
            _ => false,
        }
    }
}

impl Eq for EllipticPoint {}

impl Ord for EllipticPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (EllipticPoint::Infinity, EllipticPoint::Infinity) => std::cmp::Ordering::Equal,
            (EllipticPoint::Infinity, _) => std::cmp::Ordering::Less,
            (_, EllipticPoint::Infinity) => std::cmp::Ordering::Greater,
            (EllipticPoint::Affine { x: x1, y: y1 }, EllipticPoint::Affine { x: x2, y: y2 }) => {
                if self == other {
                    std::cmp::Ordering::Equal
                } else {
                    x1.cmp(x2).then_with(|| y1.cmp(y2))
                }
            }
        }
    }
}

impl PartialOrd for EllipticPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for EllipticPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            EllipticPoint::Infinity => state.write_u8(0),
            EllipticPoint::Affine { x, y } => {
                state.write_u8(1);
                for part in [x.numer(), x.denom(), y.numer(), y.denom()] {
                    part.hash(state);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorsionStatus {
    Torsion(u32),
    NonTorsion,
}

/// Group-law arithmetic runs on malachite rationals; num-bigint division is
/// quadratic and dominates once coordinates reach a few hundred thousand bits.
fn to_mq(q: &BigRational) -> Rational {
    Rational::from_integers(arith::to_malachite(q.numer()), arith::to_malachite(q.denom()))
}

fn from_mq(q: Rational) -> BigRational {
    let sign = q < 0u32;
    let (n, d) = q.into_numerator_and_denominator();
    let n = arith::natural_to_bigint(&n);
    BigRational::new_raw(if sign { -n } else { n }, arith::natural_to_bigint(&d))
}

impl EllipticCurve {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self, EllipticError> {
        let disc: BigRational =
            BigRational::from_integer(4.into()) * &a * &a * &a + BigRational::from_integer(27.into()) * &b * &b;
        if disc.is_zero() {
            return Err(EllipticError::Singular);
        }
        Ok(EllipticCurve { a, b })
    }

    pub fn from_i64s(a: i64, b: i64) -> Result<Self, EllipticError> {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// `-16(4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> BigRational {
        let four = BigRational::from_integer(4.into());
        let t = four * &self.a * &self.a * &self.a + BigRational::from_integer(27.into()) * &self.b * &self.b;
        -BigRational::from_integer(16.into()) * t
    }

    /// `x^3 + ax + b`.
    pub fn rhs(&self, x: &BigRational) -> BigRational {
        from_mq(self.rhs_mq(&to_mq(x)))
    }

    fn rhs_mq(&self, x: &Rational) -> Rational {
        x * x * x + to_mq(&self.a) * x + to_mq(&self.b)
    }

    pub fn contains(&self, p: &EllipticPoint) -> bool {
        match p {
            EllipticPoint::Infinity => true,
            EllipticPoint::Affine { x, y } => {
                let y = to_mq(y);
                &y * &y == self.rhs_mq(&to_mq(x))
            }
        }
    }

    /// The affine point with the given coordinates, checked against the equation.
    pub fn point(&self, x: BigRational, y: BigRational) -> Result<EllipticPoint, EllipticError> {
        let p = EllipticPoint::Affine { x, y };
        self.check(&p)?;
        Ok(p)
    }

    pub fn point_i64(&self, x: i64, y: i64) -> Result<EllipticPoint, EllipticError> {
        self.point(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    fn check(&self, p: &EllipticPoint) -> Result<(), EllipticError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllipticError::OffCurve(p.to_string()))
        }
    }

    pub fn negate(&self, p: &EllipticPoint) -> EllipticPoint {
        match p {
            EllipticPoint::Infinity => EllipticPoint::Infinity,
            EllipticPoint::Affine { x, y } => EllipticPoint::Affine { x: x.clone(), y: -y },
        }
    }

    pub fn add(&self, p: &EllipticPoint, q: &EllipticPoint) -> Result<EllipticPoint, EllipticError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &EllipticPoint, q: &EllipticPoint) -> EllipticPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (EllipticPoint::Infinity, _) => return q.clone(),
            (_, EllipticPoint::Infinity) => return p.clone(),
            (EllipticPoint::Affine { x: x1, y: y1 }, EllipticPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (x1, y1, x2, y2) = (to_mq(x1), to_mq(y1), to_mq(x2), to_mq(y2));
        let slope = if x1 == x2 {
            if (&y1 + &y2) == 0u32 {
                return EllipticPoint::Infinity;
            }
            (Rational::from(3u32) * &x1 * &x1 + to_mq(&self.a)) / (Rational::from(2u32) * &y1)
        } else {
            (&y2 - &y1) / (&x2 - &x1)
        };
        let x3 = &slope * &slope - &x1 - &x2;
        let y3 = from_mq(slope * (&x1 - &x3) - y1);
        let x3 = from_mq(x3);
        EllipticPoint::Affine { x: x3, y: y3 }
    }

    /// `[m]P` by double-and-add.
    pub fn multiply(&self, m: &BigInt, p: &EllipticPoint) -> Result<EllipticPoint, EllipticError> {
        self.check(p)?;
        Ok(self.multiply_unchecked(m, p))
    }

    pub fn multiply_i64(&self, m: i64, p: &EllipticPoint) -> Result<EllipticPoint, EllipticError> {
        self.multiply(&BigInt::from(m), p)
    }

    pub(crate) fn multiply_unchecked(&self, m: &BigInt, p: &EllipticPoint) -> EllipticPoint {
        if m.is_negative() {
            return self.negate(&self.multiply_unchecked(&-m, p));
        }
        let mut acc = EllipticPoint::Infinity;
        for i in (0..m.bits()).rev() {
            acc = self.add_unchecked(&acc, &acc);
            if m.bit(i) {
                acc = self.add_unchecked(&acc, p);
            }
        }
        acc
    }

    /// Order of `P` if it is at most [`RATIONAL_TORSION_BOUND`].
    pub fn is_torsion(&self, p: &EllipticPoint) -> Result<TorsionStatus, EllipticError> {
        self.check(p)?;
        Ok(self.torsion_order_up_to(p, RATIONAL_TORSION_BOUND))
    }

    fn torsion_order_up_to(&self, p: &EllipticPoint, bound: u32) -> TorsionStatus {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc == EllipticPoint::Infinity {
                return TorsionStatus::Torsion(n);
            }
            acc = self.add_unchecked(&acc, p);
        }
        TorsionStatus::NonTorsion
    }

    /// Height of the x-coordinate as a point of `P^1`; `0` at infinity.
    pub fn naive_height(&self, p: &EllipticPoint) -> Result<HeightValue, EllipticError> {
        self.check(p)?;
        Ok(naive_height_unchecked(p))
    }

    /// Rational points `Q` of order at most `bound` with `[m1 - b]Q = O`.
    ///
    /// Candidates come from an integral model `y^2 = x^3 + Ax + B`, where
    /// torsion points are integral with `y = 0` or `y^2 | 4A^3 + 27B^2`.
    pub fn kernel_witness(&self, m1: i64, b: i64, bound: u32) -> Result<Vec<EllipticPoint>, EllipticError> {
        if m1 == b {
            return Err(EllipticError::DegenerateKernel(m1));
        }
        let n = BigInt::from(m1) - BigInt::from(b);
        let mut out: Vec<EllipticPoint> = self
            .rational_torsion_candidates()?
            .into_iter()
            .filter(|q| matches!(self.torsion_order_up_to(q, bound), TorsionStatus::Torsion(_)))
            .filter(|q| self.multiply_unchecked(&n, q) == EllipticPoint::Infinity)
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn rational_torsion_candidates(&self) -> Result<Vec<EllipticPoint>, EllipticError> {
        // Scale by u with u^4 a and u^6 b integral: (x, y) -> (u^2 x, u^3 y).
        let u = arith::lcm(self.a.denom(), self.b.denom());
        let u2 = &u * &u;
        let u3 = &u2 * &u;
        let a_int = (self.a.clone() * BigRational::from_integer(&u2 * &u2)).to_integer();
        let b_int = (self.b.clone() * BigRational::from_integer(&u3 * &u3)).to_integer();
        let disc = BigInt::from(4) * &a_int * &a_int * &a_int + BigInt::from(27) * &b_int * &b_int;

        let mut ys = vec![BigInt::zero()];
        let disc_factors = arith::factor_integer(&disc)?;
        // y^2 | disc  <=>  y | prod p^{floor(e/2)}
        let half: Vec<(BigInt, u64)> = disc_factors.into_iter().map(|(p, e)| (p, e / 2)).collect();
        for y in divisors(&half) {
            ys.push(y.clone());
            ys.push(-y);
        }

        let mut out = vec![EllipticPoint::Infinity];
        for y in ys {
            let c = &b_int - &y * &y;
            for x in integer_cubic_roots(&a_int, &c)? {
                let pt = EllipticPoint::Affine {
                    x: arith::reduce_fraction(x, u2.clone()),
                    y: arith::reduce_fraction(y.clone(), u3.clone()),
                };
                if self.contains(&pt) {
                    out.push(pt);
                }
            }
        }
        Ok(out)
    }

    /// Small rational points `(n/k^2, y)` with `|n| <= range`, `k <= 3`.
    pub fn small_points(&self, range: i64) -> Vec<EllipticPoint> {
        let mut out = Vec::new();
        for k in 1..=3i64 {
            for n in -range..=range {
                let x = BigRational::new(n.into(), (k * k).into());
                if k > 1 && x.denom() != &BigInt::from(k * k) {
                    continue;
                }
                let r = self.rhs(&x);
                if let Some(y) = rational_sqrt(&r) {
                    if !y.is_zero() {
                        out.push(EllipticPoint::Affine { x: x.clone(), y: -&y });
                    }
                    out.push(EllipticPoint::Affine { x, y });
                }
            }
        }
        out
    }
}

pub(crate) fn naive_height_unchecked(p: &EllipticPoint) -> HeightValue {
    match p {
        EllipticPoint::Infinity => HeightValue::ZERO,
        EllipticPoint::Affine { x, .. } => {
            let n = if x.numer().is_zero() { f64::NEG_INFINITY } else { arith::ln_abs(x.numer()) };
            HeightValue::new(n.max(arith::ln_abs(x.denom())))
        }
    }
}

impl EllipticPoint {
    /// Largest bit length among the numerators and denominators.
    pub fn max_bits(&self) -> u64 {
        match self {
            EllipticPoint::Infinity => 0,
            EllipticPoint::Affine { x, y } => {
                [x.numer(), x.denom(), y.numer(), y.denom()].iter().map(|v| v.bits()).max().unwrap_or(0)
            }
        }
    }

    pub fn x(&self) -> Option<&BigRational> {
        match self {
            EllipticPoint::Infinity => None,
            EllipticPoint::Affine { x, .. } => Some(x),
        }
    }
}

impl fmt::Display for EllipticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticPoint::Infinity => write!(f, "infinity"),
            EllipticPoint::Affine { x, y } => {
                write!(f, "({},{})", arith::format_rational(x), arith::format_rational(y))
            }
        }
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", arith::format_rational(&self.a), arith::format_rational(&self.b))
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new_raw(n, d))
}

/// All positive divisors of `prod p^e`.
fn divisors(factors: &[(BigInt, u64)]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        out = next;
    }
    out
}

/// Integer roots of `x^3 + a x + c`.
fn integer_cubic_roots(a: &BigInt, c: &BigInt) -> Result<Vec<BigInt>, EllipticError> {
    let eval = |x: &BigInt| x * x * x + a * x + c;
    let mut roots = Vec::new();
    if c.is_zero() {
        roots.push(BigInt::zero());
        // x^2 + a = 0
        let m = -a;
        if m.is_positive() {
            let s = m.sqrt();
            if &s * &s == m {
                roots.push(s.clone());
                roots.push(-s);
            }
        }
        return Ok(roots);
    }
    let f = arith::factor_integer(c)?;
    let fs: Vec<(BigInt, u64)> = f.into_iter().collect();
    for d in divisors(&fs) {
        for r in [d.clone(), -d] {
            if eval(&r).is_zero() {
                roots.push(r);
            }
        }
    }
    Ok(roots)
}

// ---------------------------------------------------------------------------
// JSON: curves {"a":"-2","b":"0"}, points {"x":"-1","y":"1"} or "infinity".

#[derive(Serialize, Deserialize)]
struct CurveJson {
    a: String,
    b: String,
}

impl Serialize for EllipticCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CurveJson { a: arith::format_rational(&self.a), b: arith::format_rational(&self.b) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EllipticCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CurveJson::deserialize(d)?;
        let a = arith::parse_rational(&raw.a).map_err(D::Error::custom)?;
        let b = arith::parse_rational(&raw.b).map_err(D::Error::custom)?;
        EllipticCurve::new(a, b).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointJson {
    Named(String),
    Affine { x: String, y: String },
}

impl Serialize for EllipticPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EllipticPoint::Infinity => PointJson::Named("infinity".into()).serialize(s),
            EllipticPoint::Affine { x, y } => {
                PointJson::Affine { x: arith::format_rational(x), y: arith::format_rational(y) }.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for EllipticPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match PointJson::deserialize(d)? {
            PointJson::Named(s) => EllipticPoint::parse(&s).map_err(D::Error::custom),
            PointJson::Affine { x, y } => Ok(EllipticPoint::Affine {
                x: arith::parse_rational(&x).map_err(D::Error::custom)?,
                y: arith::parse_rational(&y).map_err(D::Error::custom)?,
            }),
        }
    }
}

impl EllipticPoint {
    /// `"infinity"`, `"O"`, or `"x,y"` with rational entries (parentheses optional).
    pub fn parse(s: &str) -> Result<Self, EllipticError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.eq_ignore_ascii_case("infinity") || t == "O" || t == "inf" {
            return Ok(EllipticPoint::Infinity);
        }
        let (x, y) = t.split_once(',').ok_or_else(|| EllipticError::Parse(s.to_string()))?;
        let x = arith::parse_rational(x).map_err(|e| EllipticError::Parse(e.to_string()))?;
        let y = arith::parse_rational(y).map_err(|e| EllipticError::Parse(e.to_string()))?;
        Ok(EllipticPoint::Affine { x, y })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn curve() -> EllipticCurve {
        EllipticCurve::from_i64s(-2, 0).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let e = curve();
        let o = EllipticPoint::Infinity;
        let t = e.point_i64(0, 0).unwrap();
        let p = e.point_i64(-1, 1).unwrap();
        assert_eq!(e.add(&t, &o).unwrap(), t);
        assert_eq!(e.add(&p, &e.point_i64(-1, -1).unwrap()).unwrap(), o);
        let two_p = e.add(&p, &p).unwrap();
        // Oracle: slope (3x^2 + a)/(2y) = 1/2, x3 = 1/4 + 2 = 9/4, y3 = (1/2)(-1 - 9/4) - 1 = -21/8.
        assert_eq!(two_p, EllipticPoint::Affine { x: q(9, 4), y: q(-21, 8) });
        assert_eq!(q(729, 64) - q(2, 1) * q(9, 4), q(441, 64));
        assert_eq!(e.multiply_i64(2, &p).unwrap(), two_p);
        assert_eq!(e.multiply_i64(1, &p).unwrap(), p);
        assert_eq!(e.multiply_i64(0, &p).unwrap(), o);
        assert_eq!(e.multiply_i64(2, &t).unwrap(), o);
        assert_eq!(e.multiply_i64(-2, &p).unwrap(), e.negate(&two_p));
    }

    #[test]
    fn chord_through_two_torsion() {
        let e = curve();
        // Oracle: slope through (0,0),(-1,1) is -1; x3 = 1 - 0 + 1 = 2, y3 = -1(0 - 2) - 0 = 2.
        let r = e.add(&e.point_i64(0, 0).unwrap(), &e.point_i64(-1, 1).unwrap()).unwrap();
        assert_eq!(r, EllipticPoint::Affine { x: q(2, 1), y: q(2, 1) });
        assert!(e.contains(&r));
    }

    #[test]
    fn torsion_and_heights() {
        let e = curve();
        assert_eq!(e.is_torsion(&EllipticPoint::Infinity).unwrap(), TorsionStatus::Torsion(1));
        assert_eq!(e.is_torsion(&e.point_i64(0, 0).unwrap()).unwrap(), TorsionStatus::Torsion(2));
        assert_eq!(e.is_torsion(&e.point_i64(-1, 1).unwrap()).unwrap(), TorsionStatus::NonTorsion);
        assert_eq!(e.naive_height(&EllipticPoint::Infinity).unwrap().value, 0.0);
        assert_eq!(e.naive_height(&e.point_i64(-1, 1).unwrap()).unwrap().value, 0.0);
        let h = e.naive_height(&EllipticPoint::Affine { x: q(9, 4), y: q(-21, 8) }).unwrap().value;
        assert!((h - 9f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn off_curve_and_singular() {
        let e = curve();
        let bad = EllipticPoint::Affine { x: q(1, 1), y: q(1, 1) };
        assert!(matches!(e.add(&bad, &bad), Err(EllipticError::OffCurve(_))));
        assert_eq!(EllipticCurve::from_i64s(0, 0), Err(EllipticError::Singular));
        assert_eq!(EllipticCurve::from_i64s(-3, 2), Err(EllipticError::Singular));
    }

    #[test]
    fn kernel_witness_examples() {
        let e = curve();
        assert_eq!(e.kernel_witness(2, 3, 12).unwrap(), vec![EllipticPoint::Infinity]);
        assert_eq!(e.kernel_witness(1, 3, 12).unwrap(), vec![EllipticPoint::Infinity, e.point_i64(0, 0).unwrap()]);
        assert_eq!(e.kernel_witness(3, 3, 12), Err(EllipticError::DegenerateKernel(3)));
        // y^2 = x^3 - x has full rational 2-torsion.
        let e2 = EllipticCurve::from_i64s(-1, 0).unwrap();
        assert_eq!(e2.kernel_witness(0, 2, 12).unwrap().len(), 4);
        // y^2 = x^3 + 1 has a rational 6-torsion point (2, 3).
        let e6 = EllipticCurve::from_i64s(0, 1).unwrap();
        assert_eq!(e6.is_torsion(&e6.point_i64(2, 3).unwrap()).unwrap(), TorsionStatus::Torsion(6));
        assert_eq!(e6.kernel_witness(7, 1, 12).unwrap().len(), 6);
    }

    #[test]
    fn json_forms() {
        let e: EllipticCurve = serde_json::from_str(r#"{"a":"-2","b":"0"}"#).unwrap();
        assert_eq!(e, curve());
        let p: EllipticPoint = serde_json::from_str(r#"{"x":"-1","y":"1"}"#).unwrap();
        assert_eq!(p, curve().point_i64(-1, 1).unwrap());
        let o: EllipticPoint = serde_json::from_str(r#""infinity""#).unwrap();
        assert_eq!(o, EllipticPoint::Infinity);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"x":"-1","y":"1"}"#);
        assert!(serde_json::from_str::<EllipticCurve>(r#"{"a":"0","b":"0"}"#).is_err());
    }

    #[test]
    fn small_point_search() {
        let e = curve();
        let pts = e.small_points(5);
        assert!(pts.contains(&e.point_i64(-1, 1).unwrap()));
        assert!(pts.contains(&e.point_i64(0, 0).unwrap()));
        assert!(pts.iter().all(|p| e.contains(p)));
    }
}
