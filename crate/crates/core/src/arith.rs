//! Integer helpers shared by every module: fast logarithms of big integers,
//! gcds that stay fast on million-bit operands, trial-division factoring and
//! parsing of decimal rationals.

use std::collections::BTreeMap;

use malachite_nz::integer::Integer as MInteger;
use malachite_nz::natural::Natural;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),
    #[error("`{0}` has a prime factor above the trial-division limit")]
    FactorizationTooHard(String),
    #[error("cannot factor zero")]
    FactorZero,
}

/// Operands below this many bits use num-integer's gcd directly.
const FAST_GCD_BITS: u64 = 2048;

/// Largest trial divisor used by [`factor_integer`].
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 22;

/// Natural log of `|n|`, computed from the bit length and the top 64 bits so
/// the cost does not depend on the size of `n`. Returns `-inf` for zero.
pub fn ln_abs(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    // (bits - 1) log 2 + log(mantissa), mantissa in [1, 2) from the top word.
    let top = if bits > 64 { (n >> (bits - 64)).to_u64() } else { (n << (64 - bits)).to_u64() };
    let mantissa = top.expect("top word") as f64 / 9_223_372_036_854_775_808.0;
    (bits - 1) as f64 * std::f64::consts::LN_2 + mantissa.ln()
}

/// `gcd(|a|, |b|)`. Large operands go to malachite's subquadratic gcd; a small
/// operand first reduces the large one by a single division.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(gcd_biguint(a.magnitude(), b.magnitude()))
}

pub fn gcd_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if small.is_one() {
        return BigUint::one();
    }
    if big.bits() < FAST_GCD_BITS {
        return big.gcd(small);
    }
    if small.bits() < FAST_GCD_BITS {
        let r = big % small;
        return small.gcd(&r);
    }
    use malachite_base::num::arithmetic::traits::Gcd;
    let g = Natural::from_limbs_asc(&big.to_u64_digits()).gcd(Natural::from_limbs_asc(&small.to_u64_digits()));
    natural_to_biguint(&g)
}

pub(crate) fn natural_to_biguint(n: &Natural) -> BigUint {
    let digits: Vec<u32> = n.to_limbs_asc().into_iter().flat_map(|l| [l as u32, (l >> 32) as u32]).collect();
    BigUint::new(digits)
}

pub(crate) fn natural_to_bigint(n: &Natural) -> BigInt {
    BigInt::from(natural_to_biguint(n))
}

pub(crate) fn to_malachite(v: &BigInt) -> MInteger {
    let mag = MInteger::from(Natural::from_limbs_asc(&v.magnitude().to_u64_digits()));
    if v.is_negative() {
        -mag
    } else {
        mag
    }
}

/// gcd of a list, smallest operands first so that a unit short-circuits early.
pub fn gcd_many<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let mut mags: Vec<&BigUint> = values.into_iter().map(|v| v.magnitude()).collect();
    mags.sort_by_key(|m| m.bits());
    let mut g = BigUint::zero();
    for m in mags {
        if m.is_zero() {
            continue;
        }
        g = gcd_biguint(&g, m);
        if g.is_one() {
            break;
        }
    }
    BigInt::from(g)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / gcd(a, b) * b).abs()
}

/// Reduce `num/den` to lowest terms with a positive denominator.
pub fn reduce_fraction(num: BigInt, den: BigInt) -> BigRational {
    assert!(!den.is_zero(), "zero denominator");
    let g = gcd(&num, &den);
    let (mut n, mut d) = if g.is_one() { (num, den) } else { (num / &g, den / &g) };
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    BigRational::new_raw(n, d)
}

/// Parse `"p"`, `"-p"` or `"p/q"` (decimal integers) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let t = s.trim();
    let bad = || ArithError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(reduce_fraction(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Factor `|n|` into primes by trial division up to [`TRIAL_DIVISION_LIMIT`].
/// A cofactor below the square of the limit is prime and accepted.
pub fn factor_integer(n: &BigInt) -> Result<BTreeMap<BigInt, u64>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::FactorZero);
    }
    let mut rest = n.magnitude().clone();
    let mut out = BTreeMap::new();
    let push = |p: u64, rest: &mut BigUint, out: &mut BTreeMap<BigInt, u64>| {
        let pb = BigUint::from(p);
        let mut k = 0u64;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            *rest = q;
            k += 1;
        }
        if k > 0 {
            out.insert(BigInt::from(p), k);
        }
    };
    push(2, &mut rest, &mut out);
    let mut p = 3u64;
    while p <= TRIAL_DIVISION_LIMIT {
        if rest.is_one() {
            break;
        }
        if let Some(r) = rest.to_u64() {
            if p.saturating_mul(p) > r {
                break;
            }
        }
        push(p, &mut rest, &mut out);
        p += 2;
    }
    if !rest.is_one() {
        let limit = BigUint::from(TRIAL_DIVISION_LIMIT);
        if p <= TRIAL_DIVISION_LIMIT || rest < &limit * &limit {
            *out.entry(BigInt::from(rest)).or_insert(0) += 1;
        } else {
            return Err(ArithError::FactorizationTooHard(n.to_string()));
        }
    }
    Ok(out)
}

/// Converts a big integer to `f64`, saturating to +-inf.
pub fn to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(if n.sign() == Sign::Minus { f64::NEG_INFINITY } else { f64::INFINITY })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_abs_matches_float_log_for_small_values() {
        for v in [1i64, 2, 3, 1000, -77, i64::MAX] {
            let got = ln_abs(&BigInt::from(v));
            assert!((got - (v.unsigned_abs() as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn ln_abs_of_huge_power_of_two() {
        let n = BigInt::one() << 1_000_000u32;
        let got = ln_abs(&n);
        assert!((got - 1_000_000.0 * std::f64::consts::LN_2).abs() < 1e-6);
    }

    #[test]
    fn gcd_agrees_with_num_integer_on_large_operands() {
        let a = BigInt::from(3).pow(5000) * BigInt::from(35);
        let b = BigInt::from(3).pow(4000) * BigInt::from(14);
        assert_eq!(gcd(&a, &b), a.gcd(&b));
        assert_eq!(gcd(&a, &BigInt::from(21)), BigInt::from(21));
        assert_eq!(gcd_many([&a, &b, &BigInt::from(0)]), a.gcd(&b));
    }

    #[test]
    fn factoring() {
        let f = factor_integer(&BigInt::from(-360)).unwrap();
        let expect: Vec<(BigInt, u64)> = vec![(2.into(), 3), (3.into(), 2), (5.into(), 1)];
        assert_eq!(f.into_iter().collect::<Vec<_>>(), expect);
        assert!(factor_integer(&BigInt::one()).unwrap().is_empty());
        let big_prime = BigInt::from(1_000_000_007u64);
        assert_eq!(factor_integer(&big_prime).unwrap().len(), 1);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
