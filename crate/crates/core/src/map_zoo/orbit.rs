use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::heights::{HeightValue, TorusEmbedding};

use super::{Image, MapError, Point, SelfMap};

/// Per-coordinate bit budget used when none is given.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// Points remembered for cycle detection before detection is switched off.
pub const DEFAULT_MEMORY_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitOptions {
    pub n_max: usize,
    pub bit_budget: u64,
    pub embedding: TorusEmbedding,
    pub memory_cap: usize,
}

impl OrbitOptions {
    pub fn new(n_max: usize) -> Self {
        OrbitOptions {
            n_max,
            bit_budget: DEFAULT_BIT_BUDGET,
            embedding: TorusEmbedding::ProjectiveSpace,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }

    pub fn with_bit_budget(mut self, bits: u64) -> Self {
        self.bit_budget = bits;
        self
    }

    pub fn with_embedding(mut self, embedding: TorusEmbedding) -> Self {
        self.embedding = embedding;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitStatus {
    Completed,
    /// `points[step]` lies in the indeterminacy locus.
    HitIndeterminacy(usize),
    /// `points[tail_start + period] == points[tail_start]`.
    Preperiodic {
        tail_start: usize,
        period: usize,
    },
    /// The image at index `step` would exceed the bit budget; it is not recorded.
    BitBudgetExceeded(usize),
}

impl fmt::Display for OrbitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitStatus::Completed => write!(f, "completed"),
            OrbitStatus::HitIndeterminacy(s) => write!(f, "indeterminate@{s}"),
            OrbitStatus::Preperiodic { tail_start, period } => write!(f, "preperiodic({tail_start},{period})"),
            OrbitStatus::BitBudgetExceeded(s) => write!(f, "bit_budget@{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub points: Vec<Point>,
    pub heights: Vec<HeightValue>,
    pub status: OrbitStatus,
    pub embedding: TorusEmbedding,
}

impl OrbitRecord {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self.status, OrbitStatus::Preperiodic { .. })
    }

    pub fn height_values(&self) -> Vec<f64> {
        self.heights.iter().map(|h| h.value).collect()
    }
}

/// Forward orbit `P, f(P), f^2(P), ...` for at most `n_max` steps.
/// Size of the next iterate if the last growth factor persists. Fast-growing
/// maps (e.g. `[8]` on an elliptic curve) would otherwise spend most of their
/// time on one final iterate that lands far past the budget.
fn projected_bits(sizes: &[u64]) -> u64 {
    match sizes {
        [.., prev, last] if *prev > 64 && last > prev => {
            let ratio = *last as f64 / *prev as f64;
            (*last as f64 * ratio).min(u64::MAX as f64) as u64
        }
        _ => 0,
    }
}

pub fn iterate_orbit(f: &SelfMap, p: &Point, opts: &OrbitOptions) -> Result<OrbitRecord, MapError> {
    if opts.n_max < 1 {
        return Err(MapError::Invalid("n_max must be at least 1".into()));
    }
    let mut points = vec![p.clone()];
    let mut heights = vec![p.height(opts.embedding)];
    let mut seen: HashMap<Point, usize> = HashMap::new();
    seen.insert(p.clone(), 0);
    let mut tracking = true;
    let mut status = OrbitStatus::Completed;
    let mut sizes = vec![p.max_bits()];
    for step in 1..=opts.n_max {
        if projected_bits(&sizes) > opts.bit_budget.saturating_mul(2) {
            status = OrbitStatus::BitBudgetExceeded(step);
            break;
        }
        let next = match f.evaluate(points.last().expect("nonempty"))? {
            Image::Value(q) => q,
            Image::Indeterminate => {
                status = OrbitStatus::HitIndeterminacy(step - 1);
                break;
            }
        };
        let bits = next.max_bits();
        if bits > opts.bit_budget {
            status = OrbitStatus::BitBudgetExceeded(step);
            break;
        }
        sizes.push(bits);
        let repeat = if tracking { seen.get(&next).copied() } else { None };
        heights.push(next.height(opts.embedding));
        if let Some(t) = repeat {
            points.push(next);
            status = OrbitStatus::Preperiodic { tail_start: t, period: step - t };
            break;
        }
        if tracking {
            if seen.len() >= opts.memory_cap {
                tracking = false;
                seen.clear();
            } else {
                seen.insert(next.clone(), step);
            }
        }
        points.push(next);
    }
    Ok(OrbitRecord { points, heights, status, embedding: opts.embedding })
}
