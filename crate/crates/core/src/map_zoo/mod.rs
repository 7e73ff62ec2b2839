//! Concrete self-maps: polynomial endomorphisms of projective space, monomial
//! maps of the torus, products of maps of the line, abstract ruled-surface
//! actions and endomorphisms of elliptic curves.

mod defect;
mod orbit;
mod point;
mod semiconj;
mod spec;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::elliptic::{EllipticCurve, EllipticError, EllipticPoint, TorsionStatus};
use crate::heights::{FactoredRational, HeightError, ProjectivePoint, TorusPoint};
use crate::ns_calculus::{self, spectral_radius, IntMatrix, NsError, PullbackAction, RuledInvariants, SpectralRadius};
use crate::poly::{Poly, PolyError, PROJECTIVE_VARS};

pub use defect::DefectBound;
pub use orbit::{iterate_orbit, OrbitOptions, OrbitRecord, OrbitStatus, DEFAULT_BIT_BUDGET};
pub use point::{Domain, Image, Point};
pub use semiconj::{semiconjugacy_check, Morphism};
pub use spec::{SpecError, MAP_KINDS};

/// Largest total degree `power_map` will build for polynomial maps.
pub const DEFAULT_DEGREE_CAP: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("point lives in {got}, map acts on {expected}")]
    DomainMismatch { expected: String, got: String },
    #[error("no certified pullback action: {0}")]
    Unavailable(String),
    #[error("composed degree {degree} exceeds the cap {cap}")]
    CompositionOverflow { degree: u64, cap: u32 },
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error("map is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Height(#[from] HeightError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ns(#[from] NsError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

/// `(F_0 : ... : F_N)` with homogeneous integer forms of a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    polys: Vec<Poly>,
    degree: u32,
    morphism: bool,
    /// Resultant of the two forms on `P^1`; any common factor of the values
    /// divides it.
    resultant: Option<BigInt>,
}

/// `x_j -> c_j * prod_i x_i^{A[j][i]}` on `G_m^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    matrix: IntMatrix,
    coeffs: Vec<FactoredRational>,
}

/// `P -> [m]P + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticMap {
    curve: EllipticCurve,
    m: BigInt,
    translate: EllipticPoint,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    ProjectivePoly(ProjectiveMap),
    Monomial(MonomialMap),
    /// Factor-wise action on `(P^1)^k`.
    Product(Vec<SelfMap>),
    RuledNS(RuledInvariants),
    Elliptic(EllipticMap),
}

/// One self-map with lazily computed height data.
#[derive(Clone)]
pub struct SelfMap {
    kind: MapKind,
    cache: Arc<defect::Cache>,
}

impl PartialEq for SelfMap {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SelfMap").field("kind", &self.kind).finish()
    }
}

impl SelfMap {
    fn from_kind(kind: MapKind) -> Self {
        SelfMap { kind, cache: Arc::new(defect::Cache::default()) }
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    /// Polynomial self-map of `P^N`, `N + 1 = polys.len()`. `morphism` is the
    /// caller's claim that the forms have no common zero; on `P^1` it is
    /// checked through the resultant.
    pub fn projective(polys: Vec<Poly>, morphism: bool) -> Result<Self, MapError> {
        let n = polys.len();
        if n < 2 {
            return Err(MapError::Invalid("a projective map needs at least two forms".into()));
        }
        if polys.iter().any(|p| p.nvars() != n) {
            return Err(MapError::Invalid(format!("every form must use exactly {n} variables")));
        }
        let mut degree = None;
        for (i, p) in polys.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree().ok_or_else(|| MapError::Invalid(format!("form {i} is not homogeneous")))?;
            if *degree.get_or_insert(d) != d {
                return Err(MapError::Invalid("forms have different degrees".into()));
            }
        }
        let degree = degree.ok_or_else(|| MapError::Invalid("all forms are zero".into()))?;
        if degree == 0 {
            return Err(MapError::Invalid("forms must have degree at least 1".into()));
        }
        let resultant = if n == 2 { Some(binary_resultant(&polys[0], &polys[1], degree)) } else { None };
        if morphism && resultant.as_ref().is_some_and(Zero::is_zero) {
            return Err(MapError::Invalid("the two forms share a common factor".into()));
        }
        Ok(Self::from_kind(MapKind::ProjectivePoly(ProjectiveMap { polys, degree, morphism, resultant })))
    }

    /// Parse forms in the variables `x, y, z, w` (as many as there are forms).
    pub fn projective_from_strs(polys: &[&str], morphism: bool) -> Result<Self, MapError> {
        let n = polys.len();
        if n > PROJECTIVE_VARS.len() {
            return Err(MapError::Invalid(format!("at most {} forms are supported", PROJECTIVE_VARS.len())));
        }
        let names = &PROJECTIVE_VARS[..n];
        let parsed = polys.iter().map(|s| Poly::parse(s, names)).collect::<Result<Vec<_>, _>>()?;
        Self::projective(parsed, morphism)
    }

    /// `(x_0^d : ... : x_N^d)`.
    pub fn diagonal_power(n_plus_1: usize, d: u32) -> Self {
        let polys = (0..n_plus_1)
            .map(|i| {
                let mut e = vec![0; n_plus_1];
                e[i] = d;
                Poly::monomial(BigInt::one(), e)
            })
            .collect();
        Self::projective(polys, true).expect("power maps are morphisms")
    }

    /// Monomial map with exponent matrix `a` and coefficients (all `1` when empty).
    pub fn monomial(a: IntMatrix, coeffs: Vec<FactoredRational>) -> Result<Self, MapError> {
        let d = a.n();
        let coeffs = if coeffs.is_empty() { vec![FactoredRational::one(); d] } else { coeffs };
        if coeffs.len() != d {
            return Err(MapError::Invalid(format!("{} coefficients for a {d}x{d} matrix", coeffs.len())));
        }
        if a.det().is_zero() {
            return Err(MapError::Invalid("exponent matrix is singular".into()));
        }
        Ok(Self::from_kind(MapKind::Monomial(MonomialMap { matrix: a, coeffs })))
    }

    pub fn monomial_i64(rows: &[&[i64]]) -> Result<Self, MapError> {
        let m = IntMatrix::new(rows.iter().map(|r| r.to_vec()).collect())?;
        Self::monomial(m, Vec::new())
    }

    /// Factor-wise product of self-maps of `P^1`.
    pub fn product(factors: Vec<SelfMap>) -> Result<Self, MapError> {
        if factors.is_empty() {
            return Err(MapError::Invalid("a product needs at least one factor".into()));
        }
        for f in &factors {
            match &f.kind {
                MapKind::ProjectivePoly(p) if p.polys.len() == 2 => {}
                _ => return Err(MapError::Invalid("every factor must be a polynomial map of P^1".into())),
            }
        }
        Ok(Self::from_kind(MapKind::Product(factors)))
    }

    pub fn ruled(a: i64, d: i64, e: i64) -> Result<Self, MapError> {
        Ok(Self::from_kind(MapKind::RuledNS(ns_calculus::ruled_solve(a, d, e)?)))
    }

    /// `P -> [m]P + translate`.
    pub fn elliptic(curve: EllipticCurve, m: BigInt, translate: EllipticPoint) -> Result<Self, MapError> {
        if m.is_zero() {
            return Err(MapError::Invalid("[0] is not dominant".into()));
        }
        if !curve.contains(&translate) {
            return Err(EllipticError::OffCurve(translate.to_string()).into());
        }
        Ok(Self::from_kind(MapKind::Elliptic(EllipticMap { curve, m, translate })))
    }

    /// The map `x([2]P)` induced on `P^1` by doubling on an integral curve.
    pub fn lattes_doubling(curve: &EllipticCurve) -> Result<Self, MapError> {
        let (a, b) = match (curve.a().is_integer(), curve.b().is_integer()) {
            (true, true) => (curve.a().to_integer(), curve.b().to_integer()),
            _ => return Err(MapError::Invalid("Lattes map needs integral a and b".into())),
        };
        let mono = |c: BigInt, ex: u32, ez: u32| Poly::monomial(c, vec![ex, ez]);
        // X^4 - 2aX^2Z^2 - 8bXZ^3 + a^2Z^4 : 4(X^3Z + aXZ^3 + bZ^4)
        let num = mono(BigInt::one(), 4, 0)
            .add(&mono(BigInt::from(-2) * &a, 2, 2))
            .add(&mono(BigInt::from(-8) * &b, 1, 3))
            .add(&mono(&a * &a, 0, 4));
        let den =
            mono(BigInt::from(4), 3, 1).add(&mono(BigInt::from(4) * &a, 1, 3)).add(&mono(BigInt::from(4) * &b, 0, 4));
        Self::projective(vec![num, den], true)
    }

    /// Domain of the points this map acts on.
    pub fn domain(&self) -> Domain {
        match &self.kind {
            MapKind::ProjectivePoly(p) => Domain::Projective(p.polys.len() - 1),
            MapKind::Monomial(m) => Domain::Torus(m.matrix.n()),
            MapKind::Product(fs) => Domain::Product(fs.len()),
            MapKind::RuledNS(_) => Domain::NsOnly,
            MapKind::Elliptic(_) => Domain::Elliptic,
        }
    }

    /// Whether the map is known to be everywhere defined on its domain.
    pub fn is_morphism(&self) -> bool {
        match &self.kind {
            MapKind::ProjectivePoly(p) => p.morphism,
            MapKind::Product(fs) => fs.iter().all(SelfMap::is_morphism),
            MapKind::Monomial(_) | MapKind::RuledNS(_) | MapKind::Elliptic(_) => true,
        }
    }

    /// Degree of the forms for polynomial maps.
    pub fn poly_degree(&self) -> Option<u32> {
        match &self.kind {
            MapKind::ProjectivePoly(p) => Some(p.degree),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&IntMatrix, &[FactoredRational])> {
        match &self.kind {
            MapKind::Monomial(m) => Some((&m.matrix, &m.coeffs)),
            _ => None,
        }
    }

    pub fn as_elliptic(&self) -> Option<(&EllipticCurve, &BigInt, &EllipticPoint)> {
        match &self.kind {
            MapKind::Elliptic(e) => Some((&e.curve, &e.m, &e.translate)),
            _ => None,
        }
    }

    pub fn as_projective(&self) -> Option<(&[Poly], bool)> {
        match &self.kind {
            MapKind::ProjectivePoly(p) => Some((&p.polys, p.morphism)),
            _ => None,
        }
    }

    // -----------------------------------------------------------------------
    // Evaluation

    /// `f(P)`, or [`Image::Indeterminate`] when every output form vanishes.
    pub fn evaluate(&self, p: &Point) -> Result<Image, MapError> {
        let mismatch = || MapError::DomainMismatch { expected: self.domain().to_string(), got: p.domain().to_string() };
        match (&self.kind, p) {
            (MapKind::ProjectivePoly(m), Point::Projective(q)) if q.coords().len() == m.polys.len() => {
                Ok(match eval_projective(m, q)? {
                    Some(v) => Image::Value(Point::Projective(v)),
                    None => Image::Indeterminate,
                })
            }
            (MapKind::Monomial(m), Point::Torus(t)) if t.dim() == m.matrix.n() => {
                Ok(Image::Value(Point::Torus(eval_monomial(m, t)?)))
            }
            (MapKind::Product(fs), Point::Product(qs)) if qs.len() == fs.len() => {
                let mut out = Vec::with_capacity(qs.len());
                for (f, q) in fs.iter().zip(qs) {
                    match f.evaluate(&Point::Projective(q.clone()))? {
                        Image::Value(Point::Projective(v)) => out.push(v),
                        Image::Indeterminate => return Ok(Image::Indeterminate),
                        Image::Value(_) => unreachable!("factor maps P^1 to P^1"),
                    }
                }
                Ok(Image::Value(Point::Product(out)))
            }
            (MapKind::Elliptic(e), Point::Elliptic(q)) => {
                if !e.curve.contains(q) {
                    return Err(EllipticError::OffCurve(q.to_string()).into());
                }
                Ok(Image::Value(Point::Elliptic(eval_elliptic(e, q))))
            }
            _ => Err(mismatch()),
        }
    }

    // -----------------------------------------------------------------------
    // Iterates and inverses

    /// `f o g` for maps of the same kind on the same space.
    pub fn compose(&self, inner: &SelfMap) -> Result<SelfMap, MapError> {
        self.compose_with_cap(inner, DEFAULT_DEGREE_CAP)
    }

    fn compose_with_cap(&self, inner: &SelfMap, cap: u32) -> Result<SelfMap, MapError> {
        let mismatch =
            || MapError::DomainMismatch { expected: self.domain().to_string(), got: inner.domain().to_string() };
        if self.domain() != inner.domain() {
            return Err(mismatch());
        }
        match (&self.kind, &inner.kind) {
            (MapKind::ProjectivePoly(f), MapKind::ProjectivePoly(g)) => {
                let degree = f.degree as u64 * g.degree as u64;
                if degree > cap as u64 {
                    return Err(MapError::CompositionOverflow { degree, cap });
                }
                let polys = f.polys.iter().map(|p| p.compose(&g.polys)).collect();
                Self::projective(polys, f.morphism && g.morphism)
            }
            (MapKind::Monomial(f), MapKind::Monomial(g)) => {
                let matrix = f.matrix.checked_mul(&g.matrix).ok_or(NsError::Overflow)?;
                let coeffs = transport_coeffs(&f.matrix, &f.coeffs, &g.coeffs);
                Self::monomial(matrix, coeffs)
            }
            (MapKind::Product(fs), MapKind::Product(gs)) => {
                let factors =
                    fs.iter().zip(gs).map(|(f, g)| f.compose_with_cap(g, cap)).collect::<Result<Vec<_>, _>>()?;
                Self::product(factors)
            }
            (MapKind::Elliptic(f), MapKind::Elliptic(g)) if f.curve == g.curve => {
                // [m](n Q + c') + c = [mn]Q + ([m]c' + c)
                let t = f.curve.multiply_unchecked(&f.m, &g.translate);
                let translate = f.curve.add(&t, &f.translate)?;
                Self::elliptic(f.curve.clone(), &f.m * &g.m, translate)
            }
            (MapKind::RuledNS(f), MapKind::RuledNS(g)) if f.e == g.e => {
                let a = f.a.checked_mul(g.a).ok_or(NsError::Overflow)?;
                let d = f.d.checked_mul(g.d).ok_or(NsError::Overflow)?;
                Self::ruled(a, d, f.e)
            }
            _ => Err(mismatch()),
        }
    }

    /// `t`-th iterate as a map in its own right.
    pub fn power_map(&self, t: u32) -> Result<SelfMap, MapError> {
        self.power_map_with_cap(t, DEFAULT_DEGREE_CAP)
    }

    pub fn power_map_with_cap(&self, t: u32, cap: u32) -> Result<SelfMap, MapError> {
        if t == 0 {
            return Err(MapError::Invalid("iterate exponent must be at least 1".into()));
        }
        if let MapKind::ProjectivePoly(p) = &self.kind {
            let degree = (p.degree as u64).checked_pow(t).unwrap_or(u64::MAX);
            if degree > cap as u64 {
                return Err(MapError::CompositionOverflow { degree, cap });
            }
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = self.compose_with_cap(&acc, cap)?;
        }
        Ok(acc)
    }

    /// Inverse of an automorphism: monomial maps with `det A = +-1` and
    /// elliptic maps with `m = +-1`.
    pub fn inverse(&self) -> Result<SelfMap, MapError> {
        match &self.kind {
            MapKind::Monomial(f) => {
                let inv = f.matrix.unimodular_inverse().ok_or(MapError::NotInvertible)?;
                // g(y)_j = prod_i (y_i / c_i)^{B[j][i]}
                let inv_c: Vec<FactoredRational> = f.coeffs.iter().map(FactoredRational::inv).collect();
                let ones = vec![FactoredRational::one(); f.coeffs.len()];
                let coeffs = transport_coeffs(&inv, &ones, &inv_c);
                Self::monomial(inv, coeffs)
            }
            MapKind::Elliptic(f) if f.m.abs().is_one() => {
                // P = [m](Q - c) since m = 1/m
                let neg_c = f.curve.negate(&f.translate);
                let translate = f.curve.multiply_unchecked(&f.m, &neg_c);
                Self::elliptic(f.curve.clone(), f.m.clone(), translate)
            }
            _ => Err(MapError::NotInvertible),
        }
    }

    // -----------------------------------------------------------------------
    // Neron-Severi data

    /// Certified pullback action on NS, where one is known.
    pub fn ns_action(&self) -> Result<PullbackAction, MapError> {
        match &self.kind {
            MapKind::ProjectivePoly(p) => {
                if !p.morphism {
                    return Err(MapError::Unavailable("polynomial map not asserted to be a morphism".into()));
                }
                let deg = p.degree as i64;
                let n = (p.polys.len() - 1) as u32;
                let deg_f = deg.checked_pow(n).ok_or(NsError::Overflow)?;
                Ok(PullbackAction::new(IntMatrix::diagonal(&[deg]), deg_f)?)
            }
            MapKind::Monomial(m) => {
                if !m.matrix.is_generalized_permutation() {
                    return Err(MapError::Unavailable(
                        "monomial map is not regular on (P^1)^d; only its dynamical degree is known".into(),
                    ));
                }
                let matrix = m.matrix.transpose().abs();
                let deg = m.matrix.det().abs().to_i64().ok_or(NsError::Overflow)?;
                Ok(PullbackAction::new(matrix, deg)?)
            }
            MapKind::Product(fs) => {
                let degs: Vec<i64> = fs.iter().map(|f| f.poly_degree().expect("P^1 factor") as i64).collect();
                let deg_f = degs.iter().try_fold(1i64, |acc, d| acc.checked_mul(*d)).ok_or(NsError::Overflow)?;
                if !self.is_morphism() {
                    return Err(MapError::Unavailable("a factor is not asserted to be a morphism".into()));
                }
                Ok(PullbackAction::new(IntMatrix::diagonal(&degs), deg_f)?)
            }
            MapKind::RuledNS(r) => Ok(PullbackAction::new(r.matrix(), r.deg_f)?),
            MapKind::Elliptic(e) => {
                let m = e.m.to_i64().ok_or(NsError::Overflow)?;
                let deg = m.checked_mul(m).ok_or(NsError::Overflow)?;
                Ok(PullbackAction::new(IntMatrix::diagonal(&[deg]), deg)?)
            }
        }
    }

    /// The dynamical degree: from the NS action when one is certified, and
    /// for monomial maps from the spectral radius of the exponent matrix.
    pub fn delta(&self) -> Result<SpectralRadius, MapError> {
        match self.ns_action() {
            Ok(a) => Ok(ns_calculus::dynamical_degree(&a)),
            Err(e) => self.known_delta().ok_or(e),
        }
    }

    /// Dynamical degree known independently of an NS action.
    pub fn known_delta(&self) -> Option<SpectralRadius> {
        match &self.kind {
            MapKind::Monomial(m) => Some(spectral_radius(&m.matrix)),
            _ => None,
        }
    }
}

fn binary_resultant(f: &Poly, g: &Poly, degree: u32) -> BigInt {
    // Coefficient of X^{d-i} Z^i.
    let coeffs = |p: &Poly| -> Vec<BigInt> {
        (0..=degree)
            .map(|i| {
                p.terms().find(|(e, _)| e[0] == degree - i && e[1] == i).map(|(_, c)| c.clone()).unwrap_or_default()
            })
            .collect()
    };
    let (a, b) = (coeffs(f), coeffs(g));
    let d = degree as usize;
    let n = 2 * d;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..d {
        for (i, c) in a.iter().enumerate() {
            m[r][r + i] = c.clone();
        }
        for (i, c) in b.iter().enumerate() {
            m[d + r][r + i] = c.clone();
        }
    }
    ns_calculus::bareiss_det(m)
}

fn eval_projective(m: &ProjectiveMap, q: &ProjectivePoint) -> Result<Option<ProjectivePoint>, MapError> {
    let vals: Vec<BigInt> = m.polys.iter().map(|p| p.eval(q.coords())).collect();
    if vals.iter().all(Zero::is_zero) {
        return Ok(None);
    }
    let out = match &m.resultant {
        Some(r) if !r.is_zero() => ProjectivePoint::from_integers_with_gcd_bound(vals, r)?,
        _ => ProjectivePoint::from_integers(vals)?,
    };
    Ok(Some(out))
}

fn eval_monomial(m: &MonomialMap, t: &TorusPoint) -> Result<TorusPoint, MapError> {
    let d = m.matrix.n();
    let rows = m.matrix.rows();
    let mut primes: std::collections::BTreeSet<BigInt> = t.primes().into_iter().collect();
    for c in &m.coeffs {
        primes.extend(c.factors().iter().map(|(p, _)| p.clone()));
    }
    let mut pairs: Vec<Vec<(BigInt, BigInt)>> = vec![Vec::new(); d];
    for p in &primes {
        let ex: Vec<BigInt> = t.coords().iter().map(|c| c.exponent_of(p)).collect();
        for j in 0..d {
            let mut e = m.coeffs[j].exponent_of(p);
            for (i, x) in ex.iter().enumerate() {
                if rows[j][i] != 0 && !x.is_zero() {
                    e += x * rows[j][i];
                }
            }
            pairs[j].push((p.clone(), e));
        }
    }
    let coords = pairs
        .into_iter()
        .enumerate()
        .map(|(j, ps)| {
            let mut negative = m.coeffs[j].is_negative();
            for (i, c) in t.coords().iter().enumerate() {
                if c.is_negative() && rows[j][i] % 2 != 0 {
                    negative = !negative;
                }
            }
            FactoredRational::from_factors(negative, ps)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TorusPoint::new(coords)?)
}

fn eval_elliptic(e: &EllipticMap, q: &EllipticPoint) -> EllipticPoint {
    let mq = e.curve.multiply_unchecked(&e.m, q);
    e.curve.add(&mq, &e.translate).expect("both summands on the curve")
}

/// Coefficients of `f o g` when `f` has exponent matrix `a` and coefficients
/// `outer`, and `g` has coefficients `inner`: `c_j * prod_i inner_i^{a[j][i]}`.
fn transport_coeffs(a: &IntMatrix, outer: &[FactoredRational], inner: &[FactoredRational]) -> Vec<FactoredRational> {
    (0..a.n())
        .map(|j| {
            let mut c = outer[j].clone();
            for (i, g) in inner.iter().enumerate() {
                let k = a.get(j, i);
                if k != 0 {
                    c = c.mul(&g.pow(&BigInt::from(k)));
                }
            }
            c
        })
        .collect()
}

impl fmt::Display for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MapKind::ProjectivePoly(p) => {
                let names = &PROJECTIVE_VARS[..p.polys.len()];
                let parts: Vec<String> = p.polys.iter().map(|q| q.display_with(names).to_string()).collect();
                write!(f, "({})", parts.join(" : "))
            }
            MapKind::Monomial(m) => {
                let cs: Vec<String> = m.coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "monomial A={} c=[{}]", m.matrix, cs.join(","))
            }
            MapKind::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            MapKind::RuledNS(r) => write!(f, "ruled(a={}, d={}, e={})", r.a, r.d, r.e),
            MapKind::Elliptic(e) => {
                if e.translate == EllipticPoint::Infinity {
                    write!(f, "[{}] on {}", e.m, e.curve)
                } else {
                    write!(f, "[{}] + {} on {}", e.m, e.translate, e.curve)
                }
            }
        }
    }
}

/// The translation `P -> P + c` as a self-map.
pub fn translation_map(curve: &EllipticCurve, c: &EllipticPoint) -> Result<SelfMap, MapError> {
    SelfMap::elliptic(curve.clone(), BigInt::one(), c.clone())
}

/// Whether the translation part of an elliptic map is torsion.
pub(crate) fn translation_is_torsion(e: &EllipticMap) -> bool {
    matches!(e.curve.is_torsion(&e.translate), Ok(TorsionStatus::Torsion(_)))
}
