//! Integer Neron-Severi models: intersection forms, pullback actions, exact
//! dynamical degrees, and the numerical calculus of `P^1`-bundles over curves.

mod matrix;
mod ruled;
mod spectral;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use matrix::bareiss_det;
pub use matrix::IntMatrix;
pub use ruled::{fiber_preserving_test, is_ample_ruled, ruled_solve, RuledInvariants, RuledObstruction};
pub use spectral::{
    charpoly, dominant_real_left_eigenvector, spectral_radius, spectral_radius_estimate, symmetric_square,
    SpectralRadius,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NsError {
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("intersection form is not symmetric")]
    NotSymmetric,
    #[error("pullback matrix is singular")]
    Singular,
    #[error("topological degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("a ruled model needs gram [[0,1],[1,-e]] with e >= -1")]
    BadRuledGram,
    #[error("no integral solution: e(d-a) = {0} is odd")]
    NotRealizable(i64),
    #[error("ampleness criterion needs e >= 0, got {0}")]
    NegativeE(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow")]
    Overflow,
}

/// A lattice with its intersection pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSModel {
    gram: IntMatrix,
    basis_labels: Vec<String>,
    ruled_e: Option<i64>,
}

impl NSModel {
    pub fn new(gram: IntMatrix, basis_labels: Vec<String>) -> Result<Self, NsError> {
        if !gram.is_symmetric() {
            return Err(NsError::NotSymmetric);
        }
        let labels = if basis_labels.is_empty() {
            (0..gram.n()).map(|i| format!("D{i}")).collect()
        } else if basis_labels.len() == gram.n() {
            basis_labels
        } else {
            return Err(NsError::DimensionMismatch { expected: gram.n(), got: basis_labels.len() });
        };
        Ok(NSModel { gram, basis_labels: labels, ruled_e: None })
    }

    /// The `P^1`-bundle model with basis `(F, C_0)`.
    pub fn ruled(e: i64) -> Result<Self, NsError> {
        if e < -1 {
            return Err(NsError::BadRuledGram);
        }
        let gram = IntMatrix::new(vec![vec![0, 1], vec![1, -e]])?;
        Ok(NSModel { gram, basis_labels: vec!["F".into(), "C0".into()], ruled_e: Some(e) })
    }

    pub fn rank(&self) -> usize {
        self.gram.n()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn ruled_e(&self) -> Option<i64> {
        self.ruled_e
    }
}

/// The action of `f^*` on the chosen basis (columns are images of basis
/// vectors) together with the topological degree of `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PullbackAction {
    pub matrix: IntMatrix,
    #[serde(rename = "deg")]
    pub deg_f: i64,
}

impl PullbackAction {
    pub fn new(matrix: IntMatrix, deg_f: i64) -> Result<Self, NsError> {
        if deg_f <= 0 {
            return Err(NsError::NonPositiveDegree(deg_f));
        }
        if num_traits::Zero::is_zero(&matrix.det()) {
            return Err(NsError::Singular);
        }
        Ok(PullbackAction { matrix, deg_f })
    }

    pub fn rank(&self) -> usize {
        self.matrix.n()
    }

    /// Action of the composite `f o g`, i.e. `(f o g)^* = g^* f^*`.
    pub fn compose(&self, inner: &PullbackAction) -> Result<PullbackAction, NsError> {
        let matrix = inner.matrix.checked_mul(&self.matrix).ok_or(NsError::Overflow)?;
        let deg_f = self.deg_f.checked_mul(inner.deg_f).ok_or(NsError::Overflow)?;
        Ok(PullbackAction { matrix, deg_f })
    }

    pub fn power(&self, t: u32) -> Result<PullbackAction, NsError> {
        let matrix = self.matrix.checked_pow(t).ok_or(NsError::Overflow)?;
        let deg_f = self.deg_f.checked_pow(t).ok_or(NsError::Overflow)?;
        Ok(PullbackAction { matrix, deg_f })
    }
}

/// `D1^T * gram * D2`.
pub fn intersect(model: &NSModel, d1: &[i64], d2: &[i64]) -> Result<i128, NsError> {
    let n = model.rank();
    for v in [d1, d2] {
        if v.len() != n {
            return Err(NsError::DimensionMismatch { expected: n, got: v.len() });
        }
    }
    let g = model.gram.rows();
    let mut acc: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            acc += d1[i] as i128 * g[i][j] as i128 * d2[j] as i128;
        }
    }
    Ok(acc)
}

/// Projection formula `M^T G M = deg(f) G`, checked exactly.
pub fn check_pullback(model: &NSModel, action: &PullbackAction) -> Result<bool, NsError> {
    let n = model.rank();
    if action.rank() != n {
        return Err(NsError::DimensionMismatch { expected: n, got: action.rank() });
    }
    let m = action.matrix.rows();
    let g = model.gram.rows();
    for i in 0..n {
        for j in 0..n {
            let mut acc: i128 = 0;
            for k in 0..n {
                for l in 0..n {
                    acc += m[k][i] as i128 * g[k][l] as i128 * m[l][j] as i128;
                }
            }
            if acc != action.deg_f as i128 * g[i][j] as i128 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `delta_f = rho(f^*)` for an endomorphism, as a certified enclosure.
pub fn dynamical_degree(action: &PullbackAction) -> SpectralRadius {
    spectral_radius(&action.matrix)
}

// ---------------------------------------------------------------------------
// ns-check documents

/// `{"rank":2, "gram":[[0,1],[1,-2]], "ruled_e":2, "action":{"matrix":[[3,0],[0,3]], "deg":9}}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NsDocument {
    pub rank: usize,
    pub gram: IntMatrix,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ruled_e: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<PullbackAction>,
}

impl NsDocument {
    pub fn into_parts(self) -> Result<(NSModel, Option<PullbackAction>), NsError> {
        if self.gram.n() != self.rank {
            return Err(NsError::DimensionMismatch { expected: self.rank, got: self.gram.n() });
        }
        let model = match self.ruled_e {
            Some(e) => {
                let m = NSModel::ruled(e)?;
                if *m.gram() != self.gram {
                    return Err(NsError::BadRuledGram);
                }
                m
            }
            None => NSModel::new(self.gram, self.basis_labels)?,
        };
        let action = match self.action {
            Some(a) => {
                if a.rank() != model.rank() {
                    return Err(NsError::DimensionMismatch { expected: model.rank(), got: a.rank() });
                }
                Some(PullbackAction::new(a.matrix, a.deg_f)?)
            }
            None => None,
        };
        Ok((model, action))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NsCheckReport {
    pub rank: usize,
    /// All pairings of basis vectors, row-major.
    pub intersection_table: Vec<Vec<i128>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pullback_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<SpectralRadius>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_preserving: Option<bool>,
    /// Whether `(e+1)F + C_0` stays ample under the action.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ample_preserved: Option<bool>,
}

pub fn ns_check(model: &NSModel, action: Option<&PullbackAction>) -> Result<NsCheckReport, NsError> {
    let n = model.rank();
    let basis: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut table = Vec::with_capacity(n);
    for a in &basis {
        let mut row = Vec::with_capacity(n);
        for b in &basis {
            row.push(intersect(model, a, b)?);
        }
        table.push(row);
    }
    let mut report = NsCheckReport {
        rank: n,
        intersection_table: table,
        pullback_ok: None,
        delta: None,
        fiber_preserving: None,
        ample_preserved: None,
    };
    if let Some(action) = action {
        report.pullback_ok = Some(check_pullback(model, action)?);
        report.delta = Some(dynamical_degree(action));
        if let Some(e) = model.ruled_e() {
            report.fiber_preserving = Some(fiber_preserving_test(action));
            if e >= 0 {
                let image = action.matrix.mul_vec(&[e + 1, 1]).ok_or(NsError::Overflow)?;
                report.ample_preserved = Some(is_ample_ruled(image[0], image[1], e)?);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn ruled_intersection_numbers() {
        let m = NSModel::ruled(2).unwrap();
        assert_eq!(intersect(&m, &[1, 0], &[1, 0]).unwrap(), 0);
        assert_eq!(intersect(&m, &[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(intersect(&m, &[0, 1], &[0, 1]).unwrap(), -2);
        assert_eq!(intersect(&m, &[1, 0, 0], &[0, 1]), Err(NsError::DimensionMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn projection_formula_examples() {
        let m = NSModel::ruled(2).unwrap();
        let ok = |rows: &[&[i64]], deg| check_pullback(&m, &PullbackAction::new(mat(rows), deg).unwrap()).unwrap();
        assert!(ok(&[&[3, 0], &[0, 3]], 9));
        // c = e(d-a)/2 = 2: columns (1,0) and (2,3); oracle below multiplies out M^T G M.
        assert!(ok(&[&[1, 2], &[0, 3]], 3));
        let g = [[0i64, 1], [1, -2]];
        let mm = [[1i64, 2], [0, 3]];
        let mut prod = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        prod[i][j] += mm[k][i] * g[k][l] * mm[l][j];
                    }
                }
            }
        }
        assert_eq!(prod, [[0, 3], [3, -6]]);
        // 2cd - ed^2 = -18 != -ade = -6
        assert!(!ok(&[&[1, 0], &[0, 3]], 3));
    }

    #[test]
    fn dynamical_degree_examples() {
        let d = dynamical_degree(&PullbackAction::new(mat(&[&[2, 1], &[1, 1]]), 1).unwrap());
        assert!((d.value - 2.618034).abs() < 1e-6);
        let d = dynamical_degree(&PullbackAction::new(IntMatrix::diagonal(&[2, 3]), 6).unwrap());
        assert!((d.value - 3.0).abs() <= d.error_bound);
        let d = dynamical_degree(&PullbackAction::new(IntMatrix::identity(3), 1).unwrap());
        assert!((d.value - 1.0).abs() <= d.error_bound);
    }

    #[test]
    fn action_validation() {
        assert_eq!(PullbackAction::new(mat(&[&[1, 2], &[2, 4]]), 1), Err(NsError::Singular));
        assert_eq!(PullbackAction::new(IntMatrix::identity(2), 0), Err(NsError::NonPositiveDegree(0)));
        assert!(NSModel::new(mat(&[&[0, 1], &[2, 0]]), vec![]).is_err());
    }

    #[test]
    fn document_round_trip() {
        let doc: NsDocument = serde_json::from_str(
            r#"{"rank":2, "gram":[[0,1],[1,-2]], "ruled_e":2, "action":{"matrix":[[3,0],[0,3]], "deg":9}}"#,
        )
        .unwrap();
        let (model, action) = doc.into_parts().unwrap();
        let report = ns_check(&model, action.as_ref()).unwrap();
        assert_eq!(report.intersection_table, vec![vec![0, 1], vec![1, -2]]);
        assert_eq!(report.pullback_ok, Some(true));
        assert_eq!(report.fiber_preserving, Some(true));
        assert_eq!(report.ample_preserved, Some(true));
        assert!((report.delta.unwrap().value - 3.0).abs() < 1e-9);

        let bad: NsDocument = serde_json::from_str(r#"{"rank":2, "gram":[[0,1],[1,-3]], "ruled_e":2}"#).unwrap();
        assert_eq!(bad.into_parts().unwrap_err(), NsError::BadRuledGram);
    }
}
