//! Integer helpers shared by the codecs and the analytics: ceiling logs,
//! exact binomials and conversions of huge integers and ratios to `f64`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `ceil(log2 n)` for `n >= 1`; `ceil_log2(1) == 0`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1, "ceil_log2 of zero");
    n.next_power_of_two().trailing_zeros()
}

pub fn floor_log2(n: u64) -> u32 {
    assert!(n >= 1, "floor_log2 of zero");
    63 - n.leading_zeros()
}

/// Binomial coefficients `C(n, 0..=n)` as exact integers.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * (n - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |acc, j| acc * (n - j) / (j + 1))
}

pub fn central_binomial(k: usize) -> BigUint {
    binomial(k, k / 2)
}

pub fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

/// `log2(x)` for a positive integer of any size, accurate to f64 precision.
pub fn log2_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    shift as f64 + (top as f64).log2()
}

/// `num / den` rounded to f64 even when both operands overflow f64.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "ratio with zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    // scale so the integer quotient carries at least 96 significant bits
    let shift = 96 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    big_to_f64_scaled(&q, -shift)
}

/// `x * 2^exp` as f64, saturating to infinity or zero outside the range.
pub fn big_to_f64_scaled(x: &BigUint, exp: i64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits() as i64;
    let drop = (bits - 64).max(0);
    let top = (x >> drop as u64).to_u64().unwrap() as f64;
    let total = exp + drop;
    // split the scale to stay clear of intermediate overflow in powi
    let half = (total / 2) as i32;
    let rest = (total - half as i64) as i32;
    top * 2f64.powi(half) * 2f64.powi(rest)
}
