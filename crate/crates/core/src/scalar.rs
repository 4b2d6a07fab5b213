//! Exact scalar types shared by the whole crate.
//!
//! Integers everywhere in the combinatorial pipeline; rationals only in
//! evaluation, group actions, and rank computation. Both are re-exports of
//! `num` types, which already guarantee normalized lowest-terms rationals
//! with positive denominators.

use num::BigInt;

pub type Int = num::BigInt;
pub type Rat = num::BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from(Int::from(v))
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> Int {
    let mut acc = BigInt::from(1u32);
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    acc
}

/// n! as a machine integer; enough for symmetric groups at desk scale.
pub fn factorial_u64(n: u32) -> u64 {
    (2..=u64::from(n)).product::<u64>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(1), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(10), int(3_628_800));
        assert_eq!(factorial_u64(8), 40_320);
    }

    #[test]
    fn rationals_normalize() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert!(rat(1, -2).denom() > &int(0));
    }
}
