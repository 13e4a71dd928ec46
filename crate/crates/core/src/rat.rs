//! Exact rational scalars.
//!
//! Coefficients throughout the crate are arbitrary-precision rationals kept
//! in lowest terms with a positive denominator; `num_rational::BigRational`
//! maintains both invariants on construction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `q^e` for a nonzero rational base and an arbitrary-sign integer exponent.
pub fn rat_pow(q: &Rat, e: &BigInt) -> Rat {
    assert!(!q.is_zero(), "rat_pow: zero base");
    if e.is_zero() {
        return Rat::one();
    }
    let base = if e.is_negative() { q.recip() } else { q.clone() };
    let mut exp = e.abs();
    let mut acc = Rat::one();
    let mut sq = base;
    let one = BigInt::one();
    let two = BigInt::from(2);
    while !exp.is_zero() {
        if (&exp & &one).is_one() {
            acc *= &sq;
        }
        exp /= &two;
        if !exp.is_zero() {
            sq = &sq * &sq;
        }
    }
    acc
}

pub fn rat_pow_i64(q: &Rat, e: i64) -> Rat {
    rat_pow(q, &BigInt::from(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_signs_and_zero() {
        let q = rat(2, 3);
        assert_eq!(rat_pow_i64(&q, 0), rat_int(1));
        assert_eq!(rat_pow_i64(&q, 2), rat(4, 9));
        assert_eq!(rat_pow_i64(&q, -2), rat(9, 4));
        assert_eq!(rat_pow_i64(&rat(-1, 1), 5), rat_int(-1));
    }
}
