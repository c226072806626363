//! Shared exact-arithmetic helpers: memoized factorials, rational
//! construction shorthands, decimal rendering, and an exact rational
//! approximation of `e`.
//!
//! Everything here is `BigInt`/`BigRational`; no counting path in this
//! crate ever touches fixed-width or floating-point arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Mutex;

static FACTORIALS: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// n! with a process-wide memo table, grown to the largest argument seen.
pub fn factorial(n: usize) -> BigInt {
    let mut cache = FACTORIALS.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigInt::one());
    }
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

/// n! for signed arguments; `None` when n < 0 (the "1/(-m)! = 0" convention
/// is applied by callers that divide by this).
pub fn factorial_opt(n: i64) -> Option<BigInt> {
    if n < 0 {
        None
    } else {
        Some(factorial(n as usize))
    }
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big_to_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Exact rational -> integer, panicking if the denominator is not 1.
/// Used where a formula is guaranteed (and asserted) to produce integers.
pub fn rat_to_int(x: &BigRational) -> Option<BigInt> {
    if x.is_integer() {
        Some(x.to_integer())
    } else {
        None
    }
}

/// Renders an exact rational as a decimal string with `digits` places after
/// the point, truncated toward zero. Deterministic by construction.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let abs = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// Exact partial sum of e = sum 1/i!, taken far enough that the truncation
/// error is below 10^-(digits). The remainder after the i = M term is
/// bounded by 2/(M+1)!.
pub fn e_rational(digits: usize) -> BigRational {
    let bound = BigInt::from(10u32).pow(digits as u32 + 1);
    let mut sum = BigRational::zero();
    let mut m = 0usize;
    loop {
        let f = factorial(m);
        sum += BigRational::new(BigInt::one(), f.clone());
        if f > bound {
            return sum;
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(10), int(3628800));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(266, 105), 4), "2.5333");
        assert_eq!(decimal_string(&rat(-1, 3), 3), "-0.333");
        assert_eq!(decimal_string(&rat_int(2), 2), "2.00");
        assert_eq!(decimal_string(&rat(7, 2), 0), "3");
    }

    #[test]
    fn e_matches_known_digits() {
        let e = e_rational(30);
        assert_eq!(&decimal_string(&e, 20)[..12], "2.7182818284");
    }
}
