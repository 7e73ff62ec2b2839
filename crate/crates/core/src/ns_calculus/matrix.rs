use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::NsError;

/// A dense integer matrix stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = NsError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, NsError> {
        IntMatrix::new(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows
    }
}

impl IntMatrix {
    /// Square matrix from rows; ragged or non-square input is rejected.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, NsError> {
        let n = rows.len();
        if n == 0 {
            return Err(NsError::NotSquare { rows: 0, cols: 0 });
        }
        for r in &rows {
            if r.len() != n {
                return Err(NsError::NotSquare { rows: n, cols: r.len() });
            }
        }
        Ok(IntMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        IntMatrix { rows }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect()).collect();
        IntMatrix { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        IntMatrix { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i]).collect()).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn abs(&self) -> Self {
        IntMatrix { rows: self.rows.iter().map(|r| r.iter().map(|v| v.abs()).collect()).collect() }
    }

    /// Product, `None` on i64 overflow.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let n = self.n();
        if other.n() != n {
            return None;
        }
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += self.rows[i][k] as i128 * other.rows[k][j] as i128;
                }
                rows[i][j] = i64::try_from(acc).ok()?;
            }
        }
        Some(IntMatrix { rows })
    }

    pub fn checked_pow(&self, t: u32) -> Option<Self> {
        let mut acc = IntMatrix::identity(self.n());
        for _ in 0..t {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| {
                let s: i128 = r.iter().zip(v).map(|(a, b)| *a as i128 * *b as i128).sum();
                i64::try_from(s).ok()
            })
            .collect()
    }

    pub fn to_big(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        bareiss_det(self.to_big())
    }

    /// Integer inverse when `det = +-1`.
    pub fn unimodular_inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_one() || det == -BigInt::one() {
            let n = self.n();
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..n {
                    // inverse = adj / det, adj[i][j] = (-1)^{i+j} minor(j, i)
                    let minor = self.minor(j, i);
                    let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    let v = sign * minor * &det;
                    rows[i][j] = i64::try_from(v).ok()?;
                }
            }
            Some(IntMatrix { rows })
        } else {
            None
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> BigInt {
        let n = self.n();
        if n == 1 {
            return BigInt::one();
        }
        let sub: Vec<Vec<BigInt>> = (0..n)
            .filter(|&i| i != skip_row)
            .map(|i| (0..n).filter(|&j| j != skip_col).map(|j| BigInt::from(self.rows[i][j])).collect())
            .collect();
        bareiss_det(sub)
    }

    /// True when every row and every column holds exactly one nonzero entry.
    pub fn is_generalized_permutation(&self) -> bool {
        let n = self.n();
        let rows_ok = self.rows.iter().all(|r| r.iter().filter(|&&v| v != 0).count() == 1);
        let cols_ok = (0..n).all(|j| (0..n).filter(|&i| self.rows[i][j] != 0).count() == 1);
        rows_ok && cols_ok
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
