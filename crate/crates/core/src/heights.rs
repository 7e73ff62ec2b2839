//! Rational points of projective space and of the split torus, and their
//! logarithmic Weil heights.
//!
//! Projective points are kept as primitive integer vectors whose first
//! nonzero entry is positive, so equality of points is equality of vectors.
//! Torus coordinates are kept factored as signed products of prime powers:
//! monomial maps only ever touch the exponents, which lets an orbit run for
//! thousands of steps without expanding a single integer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{self, ArithError};
use crate::par::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("all homogeneous coordinates are zero")]
    AllZero,
    #[error("torus coordinates must be nonzero")]
    ZeroTorusCoordinate,
    #[error("empty sample")]
    EmptySample,
    #[error("malformed factorization: {0}")]
    BadFactorization(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A height on the natural-log scale together with `max(h, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightValue {
    pub value: f64,
    pub plus_value: f64,
}

impl HeightValue {
    pub fn new(value: f64) -> Self {
        // Rounding in the fast logarithm can dip a hair below zero for units.
        let value = if value < 0.0 { 0.0 } else { value };
        HeightValue { value, plus_value: value.max(1.0) }
    }

    pub const ZERO: HeightValue = HeightValue { value: 0.0, plus_value: 1.0 };
}

// ---------------------------------------------------------------------------
// Projective points

/// A rational point of `P^N` in canonical primitive form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    /// Canonical representative of the class of `raw`.
    pub fn normalize(raw: &[BigRational]) -> Result<Self, HeightError> {
        if raw.iter().all(Zero::is_zero) {
            return Err(HeightError::AllZero);
        }
        let mut den = BigInt::one();
        for q in raw {
            den = arith::lcm(&den, q.denom());
        }
        let ints: Vec<BigInt> = raw.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Self::from_integers(ints)
    }

    /// Canonical representative of an integer vector (not all zero).
    pub fn from_integers(mut coords: Vec<BigInt>) -> Result<Self, HeightError> {
        let g = arith::gcd_many(coords.iter());
        if g.is_zero() {
            return Err(HeightError::AllZero);
        }
        if !g.is_one() {
            for c in coords.iter_mut() {
                *c = &*c / &g;
            }
        }
        let lead_negative = coords.iter().find(|c| !c.is_zero()).map(|c| c.is_negative()).unwrap_or(false);
        if lead_negative {
            for c in coords.iter_mut() {
                *c = -&*c;
            }
        }
        Ok(ProjectivePoint { coords })
    }

    /// Normalize integer coordinates whose gcd is known to divide `bound`.
    pub(crate) fn from_integers_with_gcd_bound(mut coords: Vec<BigInt>, bound: &BigInt) -> Result<Self, HeightError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(HeightError::AllZero);
        }
        let reduced: Vec<BigInt> = coords.iter().map(|c| c % bound).collect();
        let mut g = bound.abs();
        for r in &reduced {
            g = arith::gcd(&g, r);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            // `g` divides `bound`; the true gcd divides `g`.
            let true_g = arith::gcd_many(coords.iter().chain(std::iter::once(&g)));
            for c in coords.iter_mut() {
                *c = &*c / &true_g;
            }
        }
        Self::from_integers(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Result<Self, HeightError> {
        Self::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Largest coordinate bit length.
    pub fn max_bits(&self) -> u64 {
        self.coords.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// `log max |x_i|` on the primitive representative.
pub fn weil_height(p: &ProjectivePoint) -> HeightValue {
    let h = p.coords.iter().filter(|c| !c.is_zero()).map(arith::ln_abs).fold(0.0f64, f64::max);
    HeightValue::new(h)
}

// ---------------------------------------------------------------------------
// Factored rationals and torus points

/// A nonzero rational `+-prod p^e` with distinct primes in increasing order
/// and nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredRational {
    negative: bool,
    factors: Vec<(BigInt, BigInt)>,
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational { negative: false, factors: Vec::new() }
    }

    /// Build from raw `(prime, exponent)` pairs; duplicates are merged and
    /// zero exponents dropped. Primality of the bases is the caller's claim.
    pub fn from_factors(
        negative: bool,
        pairs: impl IntoIterator<Item = (BigInt, BigInt)>,
    ) -> Result<Self, HeightError> {
        let mut map: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (p, e) in pairs {
            if p <= BigInt::one() {
                return Err(HeightError::BadFactorization(format!("base {p} is not a prime")));
            }
            *map.entry(p).or_insert_with(BigInt::zero) += e;
        }
        let factors = map.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        Ok(FactoredRational { negative, factors })
    }

    pub fn from_rational(q: &BigRational) -> Result<Self, HeightError> {
        if q.is_zero() {
            return Err(HeightError::ZeroTorusCoordinate);
        }
        let mut pairs: Vec<(BigInt, BigInt)> = Vec::new();
        for (p, k) in arith::factor_integer(q.numer())? {
            pairs.push((p, BigInt::from(k)));
        }
        for (p, k) in arith::factor_integer(q.denom())? {
            pairs.push((p, -BigInt::from(k)));
        }
        Self::from_factors(q.is_negative(), pairs)
    }

    pub fn from_i64(v: i64) -> Result<Self, HeightError> {
        Self::from_rational(&BigRational::from_integer(v.into()))
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn factors(&self) -> &[(BigInt, BigInt)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, p: &BigInt) -> BigInt {
        match self.factors.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => self.factors[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<BigInt, BigInt> = self.factors.iter().cloned().collect();
        for (p, e) in &other.factors {
            *map.entry(p.clone()).or_insert_with(BigInt::zero) += e;
        }
        FactoredRational {
            negative: self.negative ^ other.negative,
            factors: map.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::one();
        }
        FactoredRational {
            negative: self.negative && k.is_odd_int(),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(&BigInt::from(-1))
    }

    /// `(log |num|, log |den|)` without expanding the integers.
    pub fn log_num_den(&self) -> (f64, f64) {
        let mut num = 0.0;
        let mut den = 0.0;
        for (p, e) in &self.factors {
            let t = arith::to_f64(e) * arith::ln_abs(p);
            if e.is_positive() {
                num += t;
            } else {
                den -= t;
            }
        }
        (num, den)
    }

    /// Height of the point `(num : den)` of `P^1`.
    pub fn height(&self) -> f64 {
        let (n, d) = self.log_num_den();
        n.max(d)
    }

    /// Expanded value; `None` when an exponent exceeds `max_exponent`.
    pub fn to_rational(&self, max_exponent: u32) -> Option<BigRational> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            let k = e.abs().to_u32().filter(|&k| k <= max_exponent)?;
            if e.is_positive() {
                num *= num_traits::pow(p.clone(), k as usize);
            } else {
                den *= num_traits::pow(p.clone(), k as usize);
            }
        }
        if self.negative {
            num = -num;
        }
        Some(BigRational::new_raw(num, den))
    }
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational(64) {
            if q.numer().bits() <= 128 && q.denom().bits() <= 128 {
                return write!(f, "{}", arith::format_rational(&q));
            }
        }
        let parts: Vec<String> = self.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        write!(f, "{}{}", if self.negative { "-" } else { "" }, body)
    }
}

/// A rational point of the torus `G_m^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<FactoredRational>,
}

/// The two compactifications of the torus used for heights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TorusEmbedding {
    /// `(P^1)^d`: the sum of the coordinate heights.
    ProductOfLines,
    /// `P^d` via `x -> (1 : x_1 : ... : x_d)`.
    #[default]
    ProjectiveSpace,
}

impl TorusPoint {
    pub fn new(coords: Vec<FactoredRational>) -> Result<Self, HeightError> {
        if coords.is_empty() {
            return Err(HeightError::BadFactorization("torus point needs at least one coordinate".into()));
        }
        Ok(TorusPoint { coords })
    }

    pub fn from_rationals(values: &[BigRational]) -> Result<Self, HeightError> {
        let coords = values.iter().map(FactoredRational::from_rational).collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self, HeightError> {
        let qs: Vec<BigRational> = values.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        Self::from_rationals(&qs)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[FactoredRational] {
        &self.coords
    }

    /// Every prime occurring in some coordinate, increasing.
    pub fn primes(&self) -> Vec<BigInt> {
        let set: BTreeSet<&BigInt> = self.coords.iter().flat_map(|c| c.factors.iter().map(|(p, _)| p)).collect();
        set.into_iter().cloned().collect()
    }

    /// Exponent vector `(v_p(x_1), ..., v_p(x_d))` for each prime.
    pub fn valuation_vectors(&self) -> Vec<(BigInt, Vec<BigInt>)> {
        self.primes()
            .into_iter()
            .map(|p| {
                let v = self.coords.iter().map(|c| c.exponent_of(&p)).collect();
                (p, v)
            })
            .collect()
    }

    /// Integer coordinates of the image `(1 : x_1 : ... : x_d)` in `P^d`.
    /// `None` if some exponent is larger than `max_exponent`.
    pub fn to_projective(&self, max_exponent: u32) -> Option<ProjectivePoint> {
        let mut qs = vec![BigRational::one()];
        for c in &self.coords {
            qs.push(c.to_rational(max_exponent)?);
        }
        ProjectivePoint::normalize(&qs).ok()
    }

    /// Storage size of the factored coordinates in bits: primes plus
    /// exponents. Far smaller than the size of the expanded integers.
    pub fn max_bits(&self) -> u64 {
        self.coords.iter().map(|c| c.factors().iter().map(|(p, e)| p.bits() + e.bits()).sum::<u64>()).max().unwrap_or(0)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Height of a torus point under one of its two compactifications.
pub fn torus_height(p: &TorusPoint, embedding: TorusEmbedding) -> HeightValue {
    match embedding {
        TorusEmbedding::ProductOfLines => HeightValue::new(p.coords.iter().map(FactoredRational::height).sum()),
        TorusEmbedding::ProjectiveSpace => {
            // Clearing the common denominator multiplies every coordinate by
            // prod p^{m_p}, m_p = max(0, max_i -v_p(x_i)); the result is primitive.
            let mut per_coord = vec![0.0f64; p.dim() + 1];
            for (prime, vals) in p.valuation_vectors() {
                let lp = arith::ln_abs(&prime);
                let m = vals.iter().map(|v| -v).fold(BigInt::zero(), |a, b| a.max(b));
                per_coord[0] += arith::to_f64(&m) * lp;
                for (i, v) in vals.iter().enumerate() {
                    per_coord[i + 1] += arith::to_f64(&(v + &m)) * lp;
                }
            }
            HeightValue::new(per_coord.into_iter().fold(0.0, f64::max))
        }
    }
}

/// Comparability constants between the two torus embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparability {
    /// Slope `M` in `h_prod >= M * h_proj + M'`.
    pub slope: f64,
    /// Offset `M'`.
    pub offset: f64,
}

impl Comparability {
    pub fn holds_for(&self, p: &TorusPoint) -> bool {
        let hp = torus_height(p, TorusEmbedding::ProjectiveSpace).value;
        let hq = torus_height(p, TorusEmbedding::ProductOfLines).value;
        hq + 1e-9 * (1.0 + hq) >= self.slope * hp + self.offset
    }
}

/// Largest slope with zero offset such that
/// `h_ProductOfLines >= M * h_ProjectiveSpace + M'` on every sample.
/// A sample whose heights all vanish yields `(1, 0)`.
pub fn height_comparability_constants(samples: &[TorusPoint]) -> Result<Comparability, HeightError> {
    if samples.is_empty() {
        return Err(HeightError::EmptySample);
    }
    let ratios: Vec<Option<f64>> = samples
        .par_iter()
        .map(|p| {
            let hp = torus_height(p, TorusEmbedding::ProjectiveSpace).value;
            let hq = torus_height(p, TorusEmbedding::ProductOfLines).value;
            (hp > 0.0).then(|| hq / hp)
        })
        .collect();
    let slope = ratios.into_iter().flatten().fold(f64::INFINITY, f64::min);
    let slope = if slope.is_finite() { slope } else { 1.0 };
    Ok(Comparability { slope, offset: 0.0 })
}

// ---------------------------------------------------------------------------
// JSON forms: {"proj": ["2","3"]} and {"torus": [[["2",5],["3",-2]], [["7",1]]]}

#[derive(Serialize, Deserialize)]
struct ProjJson {
    proj: Vec<String>,
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ProjJson { proj: self.coords.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ProjJson::deserialize(d)?;
        let qs = raw
            .proj
            .iter()
            .map(|s| arith::parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        ProjectivePoint::normalize(&qs).map_err(D::Error::custom)
    }
}

/// An exponent in JSON: a number when it fits, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExpJson {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct TorusJson {
    torus: Vec<Vec<(String, ExpJson)>>,
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let torus = self
            .coords
            .iter()
            .map(|c| {
                // A negative sign is carried as the pseudo-factor (-1)^1.
                let mut v: Vec<(String, ExpJson)> = Vec::new();
                if c.negative {
                    v.push(("-1".into(), ExpJson::Small(1)));
                }
                for (p, e) in &c.factors {
                    let e = match e.to_i64() {
                        Some(x) => ExpJson::Small(x),
                        None => ExpJson::Big(e.to_string()),
                    };
                    v.push((p.to_string(), e));
                }
                v
            })
            .collect();
        TorusJson { torus }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TorusJson::deserialize(d)?;
        let mut coords = Vec::with_capacity(raw.torus.len());
        for coord in raw.torus {
            let mut negative = false;
            let mut pairs = Vec::new();
            for (p, e) in coord {
                let e: BigInt = match e {
                    ExpJson::Small(x) => x.into(),
                    ExpJson::Big(s) => s.parse().map_err(|_| D::Error::custom(format!("bad exponent `{s}`")))?,
                };
                let p: BigInt = p.parse().map_err(|_| D::Error::custom(format!("bad prime `{p}`")))?;
                if p == BigInt::from(-1) {
                    negative ^= e.is_odd_int();
                } else {
                    pairs.push((p, e));
                }
            }
            coords.push(FactoredRational::from_factors(negative, pairs).map_err(D::Error::custom)?);
        }
        TorusPoint::new(coords).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn proj(v: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64s(v).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(ProjectivePoint::from_i64s(&[4, 6]).unwrap(), proj(&[2, 3]));
        assert_eq!(ProjectivePoint::from_i64s(&[-1, -2]).unwrap(), proj(&[1, 2]));
        // Clearing denominators by 6: (3, 2); cross-multiplication check 1/2 * 2 == 1/3 * 3.
        let p = ProjectivePoint::normalize(&[q(1, 2), q(1, 3)]).unwrap();
        assert_eq!(p, proj(&[3, 2]));
        assert_eq!(q(1, 2) * q(2, 1), q(1, 3) * q(3, 1));
        assert_eq!(ProjectivePoint::from_i64s(&[0, 0]), Err(HeightError::AllZero));
        assert_eq!(ProjectivePoint::from_i64s(&[0, -3, 6]).unwrap(), proj(&[0, 1, -2]));
    }

    #[test]
    fn weil_height_examples() {
        assert!((weil_height(&proj(&[2, 1])).value - 2f64.ln()).abs() < 1e-12);
        assert_eq!(weil_height(&proj(&[1, 1])).value, 0.0);
        assert!((weil_height(&proj(&[1, 2, 3])).value - 3f64.ln()).abs() < 1e-12);
        assert_eq!(weil_height(&proj(&[1, 1])).plus_value, 1.0);
    }

    #[test]
    fn torus_height_examples() {
        let p = TorusPoint::from_i64s(&[2, 3]).unwrap();
        let h = torus_height(&p, TorusEmbedding::ProductOfLines).value;
        assert!((h - 6f64.ln()).abs() < 1e-12);
        let h = torus_height(&p, TorusEmbedding::ProjectiveSpace).value;
        assert!((h - 3f64.ln()).abs() < 1e-12);

        let c = FactoredRational::from_factors(false, [(2.into(), 5.into()), (3.into(), (-2).into())]).unwrap();
        let p = TorusPoint::new(vec![c, FactoredRational::from_i64(7).unwrap()]).unwrap();
        // Oracle: expand 2^5/3^2 = 32/9 and take log max(|num|, |den|).
        let expanded = p.coords()[0].to_rational(10).unwrap();
        assert_eq!(expanded, q(32, 9));
        let oracle = 32f64.ln() + 7f64.ln();
        assert!((torus_height(&p, TorusEmbedding::ProductOfLines).value - oracle).abs() < 1e-12);
        assert!((oracle - 5.411646).abs() < 1e-6);
    }

    #[test]
    fn projective_space_height_matches_expansion() {
        let p = TorusPoint::from_rationals(&[q(2, 9), q(-5, 6), q(4, 1)]).unwrap();
        let expanded = p.to_projective(100).unwrap();
        let a = torus_height(&p, TorusEmbedding::ProjectiveSpace).value;
        assert!((a - weil_height(&expanded).value).abs() < 1e-12);
    }

    #[test]
    fn comparability_examples() {
        let c = height_comparability_constants(&[TorusPoint::from_i64s(&[2, 3]).unwrap()]).unwrap();
        assert!((c.slope - 6f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!((c.slope - 1.63093).abs() < 1e-5);
        assert_eq!(c.offset, 0.0);

        let c = height_comparability_constants(&[TorusPoint::from_i64s(&[1, 1]).unwrap()]).unwrap();
        assert_eq!((c.slope, c.offset), (1.0, 0.0));

        let samples = [TorusPoint::from_i64s(&[2, 3]).unwrap(), TorusPoint::from_i64s(&[4, 9]).unwrap()];
        let unit = Comparability { slope: 1.0, offset: 0.0 };
        assert!(samples.iter().all(|p| unit.holds_for(p)));
        let c = height_comparability_constants(&samples).unwrap();
        assert!(c.slope >= 1.0 && samples.iter().all(|p| c.holds_for(p)));

        assert_eq!(height_comparability_constants(&[]), Err(HeightError::EmptySample));
    }

    #[test]
    fn json_forms() {
        let p = proj(&[2, 3]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"proj":["2","3"]}"#);
        assert_eq!(serde_json::from_str::<ProjectivePoint>(&s).unwrap(), p);

        let t: TorusPoint = serde_json::from_str(r#"{"torus": [[["2",5],["3",-2]], [["7",1]]]}"#).unwrap();
        assert_eq!(t.coords()[0].to_rational(10).unwrap(), q(32, 9));
        let back = serde_json::to_string(&t).unwrap();
        assert_eq!(back, r#"{"torus":[[["2",5],["3",-2]],[["7",1]]]}"#);

        let neg = TorusPoint::from_i64s(&[-6]).unwrap();
        let s = serde_json::to_string(&neg).unwrap();
        assert_eq!(serde_json::from_str::<TorusPoint>(&s).unwrap(), neg);
    }

    #[test]
    fn factored_arithmetic() {
        let a = FactoredRational::from_rational(&q(-12, 5)).unwrap();
        let b = FactoredRational::from_rational(&q(5, 2)).unwrap();
        assert_eq!(a.mul(&b).to_rational(10).unwrap(), q(-6, 1));
        assert_eq!(a.pow(&2.into()).to_rational(10).unwrap(), q(144, 25));
        assert_eq!(a.inv().to_rational(10).unwrap(), q(-5, 12));
        assert_eq!(a.mul(&a.inv()), FactoredRational::one());
        assert!(FactoredRational::from_rational(&q(0, 1)).is_err());
    }
}
