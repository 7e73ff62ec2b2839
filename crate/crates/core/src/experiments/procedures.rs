use std::collections::HashSet;

use serde::Serialize;

use crate::degree_engine::{canonical_height_with, CanonicalHeightValue};
use crate::map_zoo::{Image, MapError, OrbitOptions, Point, SelfMap};
use crate::par::*;

use super::{ExperimentError, ParamCurve};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualifiedPoint {
    pub t: i64,
    pub point: Point,
    pub canonical_height: CanonicalHeightValue,
}

fn expanding_delta(f: &SelfMap) -> Result<f64, ExperimentError> {
    let delta = f.delta()?.value;
    if delta <= 1.0 + 1e-12 {
        return Err(ExperimentError::NotExpanding(delta));
    }
    Ok(delta)
}

/// Curve points whose canonical height clears `epsilon` after subtracting the
/// truncation bound. Points are tested independently, so a larger
/// `n_samples` only ever adds to the list.
pub fn find_full_degree_points(
    f: &SelfMap,
    curve: &ParamCurve,
    n_samples: usize,
    epsilon: f64,
    opts: &OrbitOptions,
) -> Result<Vec<QualifiedPoint>, ExperimentError> {
    let delta = expanding_delta(f)?;
    let samples = curve.samples(n_samples);
    let scored: Vec<Result<(i64, Point, CanonicalHeightValue), ExperimentError>> = samples
        .into_par_iter()
        .map(|(t, p)| {
            let c = canonical_height_with(f, delta, &p, opts)?;
            Ok((t, p, c))
        })
        .collect();
    let mut out = Vec::new();
    for r in scored {
        let (t, point, c) = r?;
        if c.lower() > epsilon {
            out.push(QualifiedPoint { t, point, canonical_height: c });
        }
    }
    if out.is_empty() {
        return Err(ExperimentError::NoQualifyingPoints { sampled: n_samples });
    }
    Ok(out)
}

/// `f^{-len}(P), ..., P, ..., f^{len}(P)`: backward iterates first, in
/// increasing distance, then `P`, then forward iterates. `None` if some
/// iterate is undefined.
pub fn orbit_segment(f: &SelfMap, f_inv: &SelfMap, p: &Point, len: usize) -> Result<Option<Vec<Point>>, MapError> {
    let mut out = Vec::with_capacity(2 * len + 1);
    if !push_iterates(f_inv, p, len, &mut out)? {
        return Ok(None);
    }
    out.push(p.clone());
    if !push_iterates(f, p, len, &mut out)? {
        return Ok(None);
    }
    Ok(Some(out))
}

fn push_iterates(g: &SelfMap, p: &Point, len: usize, out: &mut Vec<Point>) -> Result<bool, MapError> {
    let mut q = p.clone();
    for _ in 0..len {
        q = match g.evaluate(&q)? {
            Image::Value(v) => v,
            Image::Indeterminate => return Ok(false),
        };
        out.push(q.clone());
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCertificate {
    pub t: i64,
    pub point: Point,
    pub canonical_height: CanonicalHeightValue,
    /// Distinct points in the recorded segment.
    pub segment_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DisjointOrbitSet {
    pub points: Vec<Point>,
    pub segment_length: usize,
    pub certificates: Vec<OrbitCertificate>,
    /// Candidates examined before the set was complete.
    pub candidates_tried: usize,
    #[serde(skip)]
    pub segments: Vec<Vec<Point>>,
}

struct Candidate {
    t: i64,
    point: Point,
    hhat: CanonicalHeightValue,
    segment: Option<Vec<Point>>,
}

/// Greedy construction of points with pairwise disjoint orbit segments, each
/// with canonical height above `epsilon`. Candidate segments are computed a
/// batch at a time in parallel; acceptance runs in candidate order, so the
/// result does not depend on the thread count.
pub fn build_disjoint_orbits(
    f: &SelfMap,
    target_size: usize,
    segment_length: usize,
    curve: &ParamCurve,
    max_candidates: usize,
    epsilon: f64,
    opts: &OrbitOptions,
) -> Result<DisjointOrbitSet, ExperimentError> {
    let delta = expanding_delta(f)?;
    let f_inv = f.inverse()?;
    let batch = (2 * current_num_threads()).max(4);
    let candidates = curve.samples(max_candidates);

    let mut seen: HashSet<Point> = HashSet::new();
    let mut set = DisjointOrbitSet {
        points: Vec::new(),
        segment_length,
        certificates: Vec::new(),
        candidates_tried: 0,
        segments: Vec::new(),
    };
    for chunk in candidates.chunks(batch) {
        if set.points.len() >= target_size {
            break;
        }
        let scored: Vec<Result<Candidate, ExperimentError>> = chunk
            .par_iter()
            .map(|(t, p)| {
                let hhat = canonical_height_with(f, delta, p, opts)?;
                let segment = if hhat.lower() > epsilon { orbit_segment(f, &f_inv, p, segment_length)? } else { None };
                Ok(Candidate { t: *t, point: p.clone(), hhat, segment })
            })
            .collect();
        for c in scored {
            if set.points.len() >= target_size {
                break;
            }
            let c = c?;
            set.candidates_tried += 1;
            let Some(segment) = c.segment else { continue };
            let distinct: HashSet<&Point> = segment.iter().collect();
            if distinct.len() != segment.len() || segment.iter().any(|q| seen.contains(q)) {
                continue;
            }
            seen.extend(segment.iter().cloned());
            set.certificates.push(OrbitCertificate {
                t: c.t,
                point: c.point.clone(),
                canonical_height: c.hhat,
                segment_size: segment.len(),
            });
            set.points.push(c.point);
            set.segments.push(segment);
        }
    }
    if set.points.len() < target_size {
        return Err(ExperimentError::BudgetExhausted {
            accepted: set.points.len(),
            target: target_size,
            candidates: set.candidates_tried,
        });
    }
    Ok(set)
}
