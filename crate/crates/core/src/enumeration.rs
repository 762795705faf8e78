//! Counting balanced words by the size of their compressed listing.
//!
//! `N(λ, k)` is the number of balanced words of length `k` whose running
//! digital sum has `max - min = λ`. It follows from closed-walk
//! counts `T(B)` on a path of `B` states (the trace of the `k`-th power of
//! the tridiagonal connection matrix) as the second difference
//! `T(λ+1) - 2 T(λ) + T(λ-1)`.
//!
//! Three routes are provided:
//! - exact traces from the reflection principle, which sums binomials in
//!   one residue class: `T(B) = (B+1) Σ_m C(k, k/2 + m(B+1)) - 2^k`;
//! - exact traces from transfer-matrix dynamic programming (slow, used as a
//!   cross-check);
//! - the cosine eigenvalue form, evaluated in arbitrary precision.
//!
//! [`n_lambda_bruteforce`] counts listings directly for small `k`.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::math::{binomial_row, central_binomial, pow2};
use crate::subset::subset_members;
use crate::word::Word;

/// Largest `k` accepted by [`n_lambda_bruteforce`].
pub const BRUTEFORCE_MAX_K: usize = 20;

/// Closed walks of `length` steps on a path graph of `states` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkSpec {
    pub states: usize,
    pub length: usize,
}

impl WalkSpec {
    pub fn new(states: usize, length: usize) -> Self {
        WalkSpec { states, length }
    }
}

/// `Σ_i M_B^k(i,i)` computed exactly.
pub fn trace_closed_walks(spec: WalkSpec) -> BigUint {
    trace_from_row(&binomial_row(spec.length), spec)
}

fn trace_from_row(row: &[BigUint], spec: WalkSpec) -> BigUint {
    let WalkSpec { states, length: k } = spec;
    if states == 0 || !k.is_multiple_of(2) {
        return BigUint::zero();
    }
    let period = states + 1;
    let mut residue_sum = BigUint::zero();
    let mut j = (k / 2) % period;
    while j <= k {
        residue_sum += &row[j];
        j += period;
    }
    residue_sum * period - pow2(k)
}

/// Same quantity as [`trace_closed_walks`] by walking the transfer matrix
/// from every start state. Cost is `O(k·B²)` big-integer additions.
pub fn trace_closed_walks_transfer(spec: WalkSpec) -> BigUint {
    let WalkSpec { states, length } = spec;
    let mut total = BigUint::zero();
    for start in 0..states {
        let mut counts = vec![BigUint::zero(); states];
        counts[start] = 1u32.into();
        for _ in 0..length {
            let mut next = vec![BigUint::zero(); states];
            for (s, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if s > 0 {
                    next[s - 1] += c;
                }
                if s + 1 < states {
                    next[s + 1] += c;
                }
            }
            counts = next;
        }
        total += &counts[start];
    }
    total
}

fn check_lambda(lambda: usize, k: usize) -> Result<()> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::domain(format!("k must be even and >= 2, got {k}")));
    }
    if lambda == 0 || lambda > k / 2 {
        return Err(Error::domain(format!(
            "lambda {lambda} outside 1..={} for k = {k}",
            k / 2
        )));
    }
    Ok(())
}

fn second_difference(row: &[BigUint], lambda: usize, k: usize) -> BigUint {
    let t = |b: usize| -> BigInt { trace_from_row(row, WalkSpec::new(b, k)).into() };
    let n: BigInt = t(lambda + 1) - t(lambda) * 2u32 + t(lambda - 1);
    n.to_biguint()
        .expect("second difference of closed-walk traces is a count")
}

/// Exact number of balanced words of length `k` with compressed listing size
/// `lambda`.
pub fn n_lambda(lambda: usize, k: usize) -> Result<BigUint> {
    check_lambda(lambda, k)?;
    Ok(second_difference(&binomial_row(k), lambda, k))
}

fn closed_form_precision(k: usize) -> usize {
    (k + 128).div_ceil(64) * 64
}

/// `Σ_{i=1}^{B} cos^k(π i / (B+1))` at precision `p`.
fn cosine_power_sum(states: usize, k: usize, p: usize, cc: &mut Consts) -> BigFloat {
    let rm = RoundingMode::ToEven;
    let pi = cc.pi(p, rm);
    let denom = BigFloat::from_u64(states as u64 + 1, p);
    let mut acc = BigFloat::from_u64(0, p);
    for i in 1..=states {
        let angle = pi.mul(&BigFloat::from_u64(i as u64, p), p, rm).div(&denom, p, rm);
        let term = angle.cos(p, rm, cc).powi(k, p, rm);
        acc = acc.add(&term, p, rm);
    }
    acc
}

fn bigfloat_to_f64(x: &BigFloat) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    let (words, _, sign, exponent, _) = x
        .as_raw_parts()
        .ok_or_else(|| Error::FloatRange("non-finite closed-form value".into()))?;
    let top = *words.last().expect("normalized mantissa") as f64 / 2f64.powi(64);
    let magnitude = top * 2f64.powi(exponent - 1) * 2.0;
    if !magnitude.is_finite() {
        return Err(Error::FloatRange(format!("2^{exponent} exceeds f64")));
    }
    Ok(if sign == Sign::Neg { -magnitude } else { magnitude })
}

/// `N(λ,k)` from the cosine eigenvalue form,
/// `2^k (S(λ+1) - 2 S(λ) + S(λ-1))` with `S(B) = Σ_{i=1}^{B} cos^k(πi/(B+1))`.
///
/// The sum cancels heavily when `λ` approaches `k/2`, so it is carried at
/// `k + 128` bits of precision before rounding to `f64`.
pub fn n_lambda_closed_form(lambda: usize, k: usize) -> Result<f64> {
    check_lambda(lambda, k)?;
    let p = closed_form_precision(k);
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().map_err(|e| Error::Internal(format!("{e:?}")))?;
    let upper = cosine_power_sum(lambda + 1, k, p, &mut cc);
    let mid = cosine_power_sum(lambda, k, p, &mut cc);
    let lower = cosine_power_sum(lambda - 1, k, p, &mut cc);
    let two = BigFloat::from_u64(2, p);
    let diff = upper.sub(&mid.mul(&two, p, rm), p, rm).add(&lower, p, rm);
    let scaled = diff.mul(&two.powi(k, p, rm), p, rm);
    bigfloat_to_f64(&scaled)
}

/// Counts balanced words whose compressed listing has `lambda` members by
/// building every listing.
pub fn n_lambda_bruteforce(lambda: usize, k: usize) -> Result<BigUint> {
    if k > BRUTEFORCE_MAX_K {
        return Err(Error::Resource(format!(
            "brute force limited to k <= {BRUTEFORCE_MAX_K}, got {k}"
        )));
    }
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::domain(format!("k must be even and >= 2, got {k}")));
    }
    let mut count = 0u64;
    for y in Word::all_balanced(k) {
        if subset_members(&y, false)?.len() == lambda {
            count += 1;
        }
    }
    Ok(count.into())
}

/// `N(λ,k)` for every `λ` in `1..=k/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    k: usize,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 || !k.is_multiple_of(2) {
            return Err(Error::domain(format!("k must be even and >= 2, got {k}")));
        }
        let row = binomial_row(k);
        let traces: Vec<BigInt> = (0..=k / 2 + 1)
            .map(|b| trace_from_row(&row, WalkSpec::new(b, k)).into())
            .collect();
        let counts = (1..=k / 2)
            .map(|l| {
                let n: BigInt = &traces[l + 1] - &traces[l] * 2u32 + &traces[l - 1];
                n.to_biguint().expect("non-negative count")
            })
            .collect();
        Ok(CountTable { k, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `N(λ,k)`, zero outside `1..=k/2`.
    pub fn get(&self, lambda: usize) -> BigUint {
        lambda
            .checked_sub(1)
            .and_then(|i| self.counts.get(i))
            .cloned()
            .unwrap_or_default()
    }

    /// `(λ, N(λ,k))` pairs in ascending `λ`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().enumerate().map(|(i, n)| (i + 1, n))
    }

    /// `Σ N(λ,k)`; equals the number of balanced words.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `Σ λ N(λ,k)`; equals the number of unbalanced words.
    pub fn weighted_total(&self) -> BigUint {
        self.iter().map(|(l, n)| n * l).sum()
    }

    /// Checks both summation identities exactly.
    pub fn identities_hold(&self) -> bool {
        let balanced = central_binomial(self.k);
        self.total() == balanced && self.weighted_total() == pow2(self.k) - balanced
    }
}

/// Relative distance `|approx - exact| / exact`, for closed-form checks.
pub fn relative_error(approx: f64, exact: &BigUint) -> f64 {
    let e = exact.to_f64().unwrap_or(f64::INFINITY);
    if e == 0.0 {
        return approx.abs();
    }
    ((approx - e) / e).abs()
}
