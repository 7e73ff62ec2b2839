//! Certified spectral radii of integer matrices.
//!
//! The eigenvalues of the symmetric square `Sym^2(M)` are the products
//! `l_i * l_j` (`i <= j`). Every real one is at most `rho^2`, and `rho^2` itself
//! occurs (as `l * conj(l)` for a dominant `l`), so `rho^2` is the largest real
//! root of the squarefree part of the characteristic polynomial of `Sym^2(M)`.
//! That root is isolated with a Sturm sequence over exact rationals and
//! bisected to the requested width.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// Midpoint and half-width of a certified enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralRadius {
    pub value: f64,
    pub error_bound: f64,
}

impl SpectralRadius {
    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }
    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }
}

/// Absolute target half-width; relaxed to a few ulps for very large radii.
const TARGET_HALF_WIDTH: f64 = 1e-13;
const MAX_BISECTIONS: usize = 2000;

/// Characteristic polynomial `det(xI - M)`, coefficients from the constant
/// term upwards (Faddeev-LeVerrier; every division is exact).
pub fn charpoly(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A * M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Matrix of the induced action on quadratic forms, basis `e_i e_j`, `i <= j`.
pub fn symmetric_square(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let size = pairs.len();
    let mut out = vec![vec![BigInt::zero(); size]; size];
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for (row, &(k, l)) in pairs.iter().enumerate() {
            out[row][col] = if k == l { &m[k][i] * &m[k][j] } else { &m[k][i] * &m[l][j] + &m[l][i] * &m[k][j] };
        }
    }
    out
}

// --- rational polynomial helpers (coefficients low to high) ---------------

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn deriv(p: &QPoly) -> QPoly {
    let mut d: QPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect();
    trim(&mut d);
    d
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let coef = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &coef * bc;
            r[shift + i] -= t;
        }
        q[shift] = coef;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn monic_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &l;
        }
    }
    x
}

fn eval(p: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sgn(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

struct Sturm {
    chain: Vec<QPoly>,
    at_infinity: usize,
}

impl Sturm {
    fn new(p: QPoly) -> Self {
        let mut chain = vec![p.clone(), deriv(&p)];
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() {
                chain.pop();
                break;
            }
            let (_, r) = divrem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        let at_infinity = sign_changes(chain.iter().map(|q| sgn(q.last().unwrap())));
        Sturm { chain, at_infinity }
    }

    /// Number of distinct real roots in `(x, +inf)`.
    fn roots_above(&self, x: &BigRational) -> usize {
        sign_changes(self.chain.iter().map(|q| sgn(&eval(q, x)))) - self.at_infinity
    }
}

/// Floating estimate of the spectral radius.
pub fn spectral_radius_estimate(m: &IntMatrix) -> f64 {
    let n = m.n();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j) as f64);
    dm.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest modulus of a complex eigenvalue, with a certified half-width.
pub fn spectral_radius(m: &IntMatrix) -> SpectralRadius {
    let big = m.to_big();
    let cp = charpoly(&symmetric_square(&big));
    let p: QPoly = cp.into_iter().map(BigRational::from_integer).collect();
    let g = monic_gcd(&p, &deriv(&p));
    let (mut sqfree, _) = divrem(&p, &g);
    trim(&mut sqfree);
    let sturm = Sturm::new(sqfree.clone());

    // Cauchy bound on |roots|.
    let lead = sqfree.last().unwrap().abs();
    let cauchy = sqfree.iter().rev().skip(1).map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| a.max(b))
        + BigRational::one();

    let est = spectral_radius_estimate(m);
    let guess = est * est;
    let mut lo = -BigRational::one();
    let mut hi = cauchy;
    let pad = 1e-9 * guess.max(1.0);
    if let (Some(l), Some(h)) = (BigRational::from_float(guess - pad), BigRational::from_float(guess + pad)) {
        if sturm.roots_above(&h) == 0 && sturm.roots_above(&l) >= 1 {
            lo = l;
            hi = h;
        }
    }

    // Integer radii (power maps, permutations) are returned exactly.
    let rounded = guess.sqrt().round();
    if (1.0..1e15).contains(&rounded) {
        let r = BigInt::from(rounded as i64);
        let r2 = BigRational::from_integer(&r * &r);
        if eval(&sqfree, &r2).is_zero() && sturm.roots_above(&r2) == 0 {
            return SpectralRadius { value: rounded, error_bound: 0.0 };
        }
    }

    let two = BigRational::from_integer(2.into());
    let mut steps = 0;
    loop {
        let (sl, sh) = sqrt_bounds(&lo, &hi);
        let target = TARGET_HALF_WIDTH.max(4.0 * f64::EPSILON * sh);
        if (sh - sl) / 2.0 <= target || steps >= MAX_BISECTIONS {
            return SpectralRadius { value: (sl + sh) / 2.0, error_bound: (sh - sl) / 2.0 + 4.0 * f64::EPSILON * sh };
        }
        let mid = (&lo + &hi) / &two;
        if sturm.roots_above(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
}

fn sqrt_bounds(lo: &BigRational, hi: &BigRational) -> (f64, f64) {
    let l = lo.to_f64().unwrap_or(0.0).max(0.0);
    let h = hi.to_f64().unwrap_or(f64::INFINITY).max(0.0);
    (l.sqrt(), h.sqrt())
}

/// A real eigenvalue of maximal modulus and a left eigenvector for it,
/// scaled so its largest-magnitude entry is `+1`. `None` when the maximal
/// modulus is attained only by non-real eigenvalues.
pub fn dominant_real_left_eigenvector(m: &IntMatrix) -> Option<(f64, Vec<f64>)> {
    let n = m.n();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j) as f64);
    let eig = dm.complex_eigenvalues();
    let rho = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = 1e-9 * rho.max(1.0);
    let dominant: Vec<_> = eig.iter().filter(|z| (z.norm() - rho).abs() <= tol).collect();
    let real = dominant.iter().filter(|z| z.im.abs() <= tol).map(|z| z.re).fold(None, |acc: Option<f64>, x| {
        Some(match acc {
            Some(a) if a >= x => a,
            _ => x,
        })
    })?;
    let lambda = if real >= 0.0 { rho } else { -rho };
    let shifted = dm.transpose() - DMatrix::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t?;
    let (idx, _) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let mut u: Vec<f64> = v_t.row(idx).iter().copied().collect();
    let (imax, _) =
        u.iter().enumerate().fold((0, 0.0f64), |acc, (i, &x)| if x.abs() > acc.1 { (i, x.abs()) } else { acc });
    let scale = u[imax];
    if scale == 0.0 {
        return None;
    }
    for x in u.iter_mut() {
        *x /= scale;
    }
    Some((lambda, u))
}
