//! Numerical invariants of endomorphisms of a `P^1`-bundle `X -> C` with
//! `NS(X) = Z F + Z C_0`, `F^2 = 0`, `F.C_0 = 1`, `C_0^2 = -e`.
//!
//! A fiber-preserving endomorphism acts by `f^*F = aF`, `f^*C_0 = cF + dC_0`;
//! the matrix below therefore has columns `(a, 0)` and `(c, d)`.

use serde::{Deserialize, Serialize};

use super::{IntMatrix, NSModel, NsError, PullbackAction};

/// Which consequence of the intersection calculus rules the data out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuledObstruction {
    /// `f^*` must carry the ample ray through `eF + C_0` to itself, which for
    /// `e > 0` forces `a = d`.
    ConePreservation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuledInvariants {
    pub a: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub deg_f: i64,
    pub delta: f64,
    pub realizable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<RuledObstruction>,
}

impl RuledInvariants {
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::new(vec![vec![self.a, self.c], vec![0, self.d]]).expect("2x2")
    }

    pub fn action(&self) -> PullbackAction {
        PullbackAction { matrix: self.matrix(), deg_f: self.deg_f }
    }

    pub fn model(&self) -> NSModel {
        NSModel::ruled(self.e).expect("e >= 0")
    }
}

/// Solve the projection-formula constraint `2cd - ed^2 = -ead` for `c` and
/// decide whether `(a, d, e)` can come from an actual endomorphism.
pub fn ruled_solve(a: i64, d: i64, e: i64) -> Result<RuledInvariants, NsError> {
    if a < 1 || d < 1 || e < 0 {
        return Err(NsError::InvalidArgument(format!("need a >= 1, d >= 1, e >= 0; got a={a}, d={d}, e={e}")));
    }
    let twice_c = e.checked_mul(d - a).ok_or(NsError::Overflow)?;
    if twice_c % 2 != 0 {
        return Err(NsError::NotRealizable(twice_c));
    }
    let c = twice_c / 2;
    let deg_f = a.checked_mul(d).ok_or(NsError::Overflow)?;
    let realizable = e == 0 || a == d;
    Ok(RuledInvariants {
        a,
        c,
        d,
        e,
        deg_f,
        delta: a.max(d) as f64,
        realizable,
        obstruction: (!realizable).then_some(RuledObstruction::ConePreservation),
    })
}

/// Ampleness of `aF + bC_0` when `e >= 0`: `a > be` and `b > 0`.
pub fn is_ample_ruled(a_coeff: i64, b_coeff: i64, e: i64) -> Result<bool, NsError> {
    if e < 0 {
        return Err(NsError::NegativeE(e));
    }
    Ok(b_coeff > 0 && (a_coeff as i128) > (b_coeff as i128) * (e as i128))
}

/// `f^*F = aF` with `a != 0`, i.e. the first column is `(a, 0)`. Actions of
/// rank other than two are never fiber preserving.
pub fn fiber_preserving_test(action: &PullbackAction) -> bool {
    action.rank() == 2 && action.matrix.get(1, 0) == 0 && action.matrix.get(0, 0) != 0
}
