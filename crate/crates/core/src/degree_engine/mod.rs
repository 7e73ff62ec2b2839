//! Arithmetic-degree estimators, canonical heights and verdicts comparing the
//! growth of heights along an orbit with the dynamical degree of the map.

mod vanishing;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heights::{HeightValue, TorusEmbedding};
use crate::map_zoo::{
    iterate_orbit, MapError, OrbitOptions, OrbitRecord, OrbitStatus, Point, SelfMap, DEFAULT_BIT_BUDGET,
};

pub use vanishing::{default_density_degree, monomial_count, vanishing_curve_search};

/// Default allowed gap `|alpha - delta|`.
pub const DEFAULT_TOLERANCE: f64 = 0.05;

/// Orbit steps used for canonical heights unless told otherwise.
pub const DEFAULT_CANONICAL_STEPS: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("orbit too short: need {needed} heights, have {got}")]
    TooShort { needed: usize, got: usize },
    #[error("heights in the estimation window are below 1")]
    NonGrowing,
    #[error("dynamical degree {0} is not > 1")]
    DeltaNotExpanding(f64),
    #[error("no bound on the one-step height defect is available for this map")]
    NoDefectBound,
    #[error("need at least {needed} distinct points for a conclusive search, have {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("points are too large to expand for the density search")]
    PointTooLarge,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMethod {
    RootLimit,
    RatioTail,
    CanonicalHeight,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeEstimate {
    pub method: EstimateMethod,
    pub value: f64,
    pub error_bar: f64,
    pub n_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalHeightValue {
    pub value: f64,
    pub tail_bound: f64,
    /// Index of the orbit point the value was read from.
    pub n_used: usize,
    /// The defect constant behind `tail_bound` was measured, not proved.
    pub empirical: bool,
}

impl CanonicalHeightValue {
    /// `value - tail_bound`, a lower bound for the true canonical height.
    pub fn lower(&self) -> f64 {
        self.value - self.tail_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityEvidence {
    NoVanishingCurveUpToDegree(u32),
    /// A nonzero form vanishing on all tested points.
    ContainedInCurve(String),
    Preperiodic,
    /// The search could not run; the reason is recorded.
    NotAssessed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ConsistentWithKS,
    InconsistentBeyondTolerance,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::ConsistentWithKS => "consistent",
            Verdict::InconsistentBeyondTolerance => "inconsistent",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KSReport {
    pub delta: f64,
    pub delta_error: f64,
    pub alpha_estimate: DegreeEstimate,
    /// The root estimator, reported alongside whichever estimate is primary.
    pub alpha_root: Option<DegreeEstimate>,
    pub canonical_height: Option<CanonicalHeightValue>,
    pub density_evidence: DensityEvidence,
    pub orbit_status: OrbitStatus,
    pub orbit_len: usize,
    pub tolerance: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictConfig {
    pub n_max: usize,
    pub bit_budget: u64,
    pub tolerance: f64,
    pub embedding: TorusEmbedding,
    /// Degree budget of the vanishing-curve search; the domain default when `None`.
    pub density_degree: Option<u32>,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        VerdictConfig {
            n_max: 20,
            bit_budget: DEFAULT_BIT_BUDGET,
            tolerance: DEFAULT_TOLERANCE,
            embedding: TorusEmbedding::ProjectiveSpace,
            density_degree: None,
        }
    }
}

impl VerdictConfig {
    fn orbit_options(&self) -> OrbitOptions {
        OrbitOptions::new(self.n_max).with_bit_budget(self.bit_budget).with_embedding(self.embedding)
    }
}

/// Heights along the orbit; a preperiodic orbit is unrolled along its cycle
/// to at least `min_len` entries.
fn unrolled_heights(orbit: &OrbitRecord, min_len: usize) -> Vec<HeightValue> {
    let mut hs = orbit.heights.clone();
    if let OrbitStatus::Preperiodic { tail_start, period } = orbit.status {
        while period > 0 && hs.len() < min_len {
            let k = hs.len();
            hs.push(hs[tail_start + (k - tail_start) % period]);
        }
    }
    hs
}

fn window(n: usize) -> usize {
    n.div_ceil(3).max(1)
}

/// `(h+_n)^{1/n}` at the last index, with the spread over the last `ceil(n/3)`
/// indices as error bar.
pub fn alpha_root(orbit: &OrbitRecord) -> Result<DegreeEstimate, EngineError> {
    let hs = &unrolled_heights(orbit, 4);
    if hs.len() < 3 {
        return Err(EngineError::TooShort { needed: 3, got: hs.len() });
    }
    let n = hs.len() - 1;
    let w = window(n);
    let vals: Vec<f64> = (n + 1 - w..=n).map(|k| hs[k].plus_value.powf(1.0 / k as f64)).collect();
    let (lo, hi) = min_max(&vals);
    Ok(DegreeEstimate { method: EstimateMethod::RootLimit, value: vals[vals.len() - 1], error_bar: hi - lo, n_used: n })
}

/// Median of `h_{k+1} / h_k` over the last `ceil(n/3)` steps. The error bar
/// is the window's range or, if larger, the bias left at the median under a
/// fitted `L + c/k` drift (polynomial factors in the height growth).
pub fn alpha_ratio(orbit: &OrbitRecord) -> Result<DegreeEstimate, EngineError> {
    let hs = &unrolled_heights(orbit, 4);
    if hs.len() < 4 {
        return Err(EngineError::TooShort { needed: 4, got: hs.len() });
    }
    let n = hs.len() - 1;
    let w = window(n);
    if hs[n - w..].iter().any(|h| h.value < 1.0) {
        return Err(EngineError::NonGrowing);
    }
    let mut ratios: Vec<f64> = (n - w..n).map(|k| hs[k + 1].value / hs[k].value).collect();
    let (lo, hi) = min_max(&ratios);
    let drift = ratio_drift(&ratios, n - w);
    ratios.sort_by(f64::total_cmp);
    let m = ratios.len();
    let median = if m % 2 == 1 { ratios[m / 2] } else { (ratios[m / 2 - 1] + ratios[m / 2]) / 2.0 };
    Ok(DegreeEstimate {
        method: EstimateMethod::RatioTail,
        value: median.max(1.0),
        error_bar: (hi - lo).max(drift),
        n_used: n,
    })
}

/// `2|c| / k_mid` for `r_k = L + c/k` through the first and last ratios of a
/// window starting at index `first`. The doubling covers an unknown shift
/// `c/(k + s)`, which the two-point fit underestimates.
fn ratio_drift(ratios: &[f64], first: usize) -> f64 {
    let m = ratios.len();
    if m < 2 || first == 0 {
        return 0.0;
    }
    let (k0, k1) = (first as f64, (first + m - 1) as f64);
    let c = (ratios[0] - ratios[m - 1]) / (1.0 / k0 - 1.0 / k1);
    let mid = first as f64 + (m - 1) as f64 / 2.0;
    2.0 * c.abs() / mid
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)))
}

/// `h_D(f^n P) / delta^n` at the last affordable `n`, with the telescoped
/// truncation bound.
pub fn canonical_height(f: &SelfMap, delta: f64, p: &Point, n_max: usize) -> Result<CanonicalHeightValue, EngineError> {
    canonical_height_with(f, delta, p, &OrbitOptions::new(n_max))
}

pub fn canonical_height_with(
    f: &SelfMap,
    delta: f64,
    p: &Point,
    opts: &OrbitOptions,
) -> Result<CanonicalHeightValue, EngineError> {
    check_expanding(delta)?;
    let defect = f.defect_bound().ok_or(EngineError::NoDefectBound)?;
    let orbit = iterate_orbit(f, p, opts)?;
    canonical_from_orbit(f, delta, &orbit, defect)
}

fn check_expanding(delta: f64) -> Result<(), EngineError> {
    if delta <= 1.0 + 1e-12 {
        Err(EngineError::DeltaNotExpanding(delta))
    } else {
        Ok(())
    }
}

fn canonical_from_orbit(
    f: &SelfMap,
    delta: f64,
    orbit: &OrbitRecord,
    defect: crate::map_zoo::DefectBound,
) -> Result<CanonicalHeightValue, EngineError> {
    if orbit.is_preperiodic() {
        return Ok(CanonicalHeightValue {
            value: 0.0,
            tail_bound: 0.0,
            n_used: orbit.points.len() - 1,
            empirical: false,
        });
    }
    let n = orbit.points.len() - 1;
    let scale = delta.powi(n as i32);
    let h = f.eigen_height(&orbit.points[n])?;
    let value = (h / scale).max(0.0);
    let tail_bound = defect.value / (scale * (delta - 1.0));
    Ok(CanonicalHeightValue { value, tail_bound, n_used: n, empirical: defect.empirical })
}

/// Orbit, both estimators, canonical height and density evidence for one
/// `(map, point)` pair, and the resulting verdict.
pub fn ks_verdict(f: &SelfMap, p: &Point, cfg: &VerdictConfig) -> Result<KSReport, EngineError> {
    let delta_cert = f.delta()?;
    let delta = delta_cert.value;
    let orbit = iterate_orbit(f, p, &cfg.orbit_options())?;
    let base = |alpha: DegreeEstimate, root, hhat, density, verdict| KSReport {
        delta,
        delta_error: delta_cert.error_bound,
        alpha_estimate: alpha,
        alpha_root: root,
        canonical_height: hhat,
        density_evidence: density,
        orbit_status: orbit.status,
        orbit_len: orbit.points.len(),
        tolerance: cfg.tolerance,
        verdict,
    };

    if orbit.is_preperiodic() {
        let alpha = DegreeEstimate {
            method: EstimateMethod::RatioTail,
            value: 1.0,
            error_bar: 0.0,
            n_used: orbit.points.len() - 1,
        };
        let hhat = (delta > 1.0 + 1e-12).then(|| CanonicalHeightValue {
            value: 0.0,
            tail_bound: 0.0,
            n_used: orbit.points.len() - 1,
            empirical: false,
        });
        return Ok(base(alpha, alpha_root(&orbit).ok(), hhat, DensityEvidence::Preperiodic, Verdict::ConsistentWithKS));
    }

    let root = alpha_root(&orbit);
    let alpha = match alpha_ratio(&orbit) {
        Ok(a) => a,
        Err(e) => root.clone().map_err(|_| e)?,
    };
    let hhat = match (check_expanding(delta), f.defect_bound()) {
        (Ok(()), Some(defect)) => Some(canonical_from_orbit(f, delta, &orbit, defect)?),
        _ => None,
    };
    let density = density_evidence(&orbit, cfg.density_degree);

    let verdict = if (alpha.value - delta).abs() <= cfg.tolerance || hhat.is_some_and(|h| h.value > h.tail_bound) {
        Verdict::ConsistentWithKS
    } else if alpha.value + alpha.error_bar < delta - cfg.tolerance
        && matches!(density, DensityEvidence::NoVanishingCurveUpToDegree(_))
    {
        Verdict::InconsistentBeyondTolerance
    } else {
        Verdict::Inconclusive
    };
    Ok(base(alpha, root.ok(), hhat, density, verdict))
}

/// Vanishing-curve search on the smallest orbit points: enough of them for a
/// conclusive answer at the degree budget, and no more.
fn density_evidence(orbit: &OrbitRecord, degree: Option<u32>) -> DensityEvidence {
    let Some(first) = orbit.points.first() else {
        return DensityEvidence::NotAssessed("empty orbit".into());
    };
    let d = degree.unwrap_or_else(|| default_density_degree(first.domain()));
    let needed = monomial_count(first.domain(), d) + 1;
    let take = orbit.points.len().min(needed + 1);
    match vanishing_curve_search(&orbit.points[..take], d) {
        Ok(ev) => ev,
        Err(e) => DensityEvidence::NotAssessed(e.to_string()),
    }
}
