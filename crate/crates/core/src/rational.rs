//! Exact rational arithmetic used by every certified inequality.
//!
//! Densities, mate thresholds and increment bounds are all compared as
//! `BigRational` values; floating point is confined to heuristic scoring
//! and search seeding.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// The rational type shared across the crate.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational from an unsigned count.
pub fn q_usize(n: usize) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational a/b. Panics if b = 0.
pub fn q_ratio(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

/// Density e/v as an exact rational. Panics if v = 0.
pub fn density(e: usize, v: usize) -> Q {
    Q::new(BigInt::from(e), BigInt::from(v))
}

/// Smallest integer ≥ q, as usize. Panics on negative input.
pub fn ceil_usize(q: &Q) -> usize {
    assert!(!q.is_negative(), "ceil_usize on negative rational");
    q.ceil().to_integer().to_usize().expect("ceil fits usize")
}

/// q-th power for a non-negative integer exponent.
pub fn q_pow(base: &Q, exp: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Exact test of `x >= y^(p/q)` for x, y >= 0 and integers p, q >= 1,
/// done by cross-multiplying into integer powers: x^q >= y^p.
pub fn ge_rational_power(x: &Q, y: &Q, p: u32, q: u32) -> bool {
    assert!(q >= 1);
    assert!(!x.is_negative() && !y.is_negative());
    q_pow(x, q) >= q_pow(y, p)
}

/// Lossy conversion for heuristic scoring and logging only.
pub fn q_to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Canonical "p/q" rendering (integer values render without the "/q").
pub fn format_q(q: &Q) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse "p/q" or a bare integer "p".
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num = BigInt::from_str(a.trim()).map_err(|e| e.to_string())?;
        let den = BigInt::from_str(b.trim()).map_err(|e| e.to_string())?;
        if den.is_zero() {
            return Err("zero denominator".to_string());
        }
        Ok(Q::new(num, den))
    } else {
        let num = BigInt::from_str(s).map_err(|e| e.to_string())?;
        Ok(Q::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_format_parse_roundtrip() {
        for s in ["3/2", "-7/3", "5", "0"] {
            let q = parse_q(s).unwrap();
            assert_eq!(format_q(&q), s);
        }
        assert_eq!(format_q(&parse_q("6/4").unwrap()), "3/2");
    }

    #[test]
    fn test_power_comparison() {
        // 2 >= 3^(1/2) since 4 >= 3
        assert!(ge_rational_power(&q_int(2), &q_int(3), 1, 2));
        // 5/3 >= 3^(1/2)? (5/3)^2 = 25/9 < 3 -> false
        assert!(!ge_rational_power(&q_ratio(5, 3), &q_int(3), 1, 2));
    }

    #[test]
    fn test_ceil() {
        assert_eq!(ceil_usize(&q_ratio(7, 3)), 3);
        assert_eq!(ceil_usize(&q_int(4)), 4);
        assert_eq!(ceil_usize(&Q::zero()), 0);
    }
}
