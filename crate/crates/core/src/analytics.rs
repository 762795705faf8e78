//! Average prefix redundancy of the balancing schemes and the CSV tables
//! built from it.
//!
//! All averages weight each listing size `λ` by the number of information
//! words that land in a listing of that size, `λ·N(λ,k)`. Ratios of huge
//! integers go through [`ratio_to_f64`] so `k = 1024` never overflows.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::enumeration::CountTable;
use crate::error::{Error, Result};
use crate::math::{
    big_to_f64_scaled, binomial, ceil_log2, central_binomial, floor_log2, log2_big, pow2,
    ratio_to_f64,
};
use crate::subset::{prefix_length, Scheme};

/// The `k` values of the published comparison table.
pub const TABLE1_KS: [usize; 9] = [4, 8, 16, 32, 64, 128, 256, 512, 1024];

fn check_k(k: usize, min: usize) -> Result<()> {
    if !k.is_multiple_of(2) || k < min {
        return Err(Error::domain(format!("k must be even and >= {min}, got {k}")));
    }
    Ok(())
}

/// Redundancy of the full set of balanced words, `k - log2 C(k, k/2)`.
pub fn h0_exact(k: usize) -> Result<f64> {
    check_k(k, 2)?;
    Ok(k as f64 - log2_big(&central_binomial(k)))
}

/// `½ log2 k + 0.326`.
pub fn h0_approx(k: usize) -> Result<f64> {
    check_k(k, 2)?;
    Ok(0.5 * (k as f64).log2() + 0.326)
}

fn unbalanced_count(k: usize) -> BigUint {
    pow2(k) - central_binomial(k)
}

/// Average ideal prefix length of the compressed scheme over unbalanced
/// information words.
pub fn h_avg(k: usize) -> Result<f64> {
    check_k(k, 4)?;
    Ok(h_avg_from(&CountTable::new(k)?))
}

pub fn h_avg_from(table: &CountTable) -> f64 {
    let den = unbalanced_count(table.k());
    table
        .iter()
        .map(|(l, n)| ratio_to_f64(&(n * l), &den) * (l as f64).log2())
        .sum()
}

/// Average ideal prefix length of the uncompressed baseline over all words.
/// A compressed listing of size `λ` is a baseline listing of size `λ + 1`.
pub fn h1_avg(k: usize) -> Result<f64> {
    check_k(k, 4)?;
    Ok(h1_avg_from(&CountTable::new(k)?))
}

pub fn h1_avg_from(table: &CountTable) -> f64 {
    let den = pow2(table.k());
    table
        .iter()
        .map(|(l, n)| ratio_to_f64(&(n * (l + 1)), &den) * ((l + 1) as f64).log2())
        .sum()
}

/// Average prefix length of bit-recycling Knuth balancing,
/// `Σ_{c=1}^{k/2} P(c)·AV(c)`.
pub fn h2_avg(k: usize) -> Result<f64> {
    check_k(k, 4)?;
    let half = k / 2;
    let mut total = 0.0;
    for c in 1..=half {
        // P(c) = 2^{c+1-k} C(k-1-c, k/2-c)
        let p = big_to_f64_scaled(&binomial(k - 1 - c, half - c), c as i64 + 1 - k as i64);
        let lo = floor_log2(c as u64) as i32;
        let hi = ceil_log2(c as u64) as i32;
        let d = c as f64 - 2f64.powi(lo);
        let av = (c as f64 - 2.0 * d) * lo as f64 / 2f64.powi(lo) + 2.0 * d / 2f64.powi(hi) * hi as f64;
        total += p * av;
    }
    Ok(total)
}

/// Smallest even length `m` whose full balanced set has at least `lambda`
/// words, i.e. `C(m, m/2) >= lambda`.
pub fn delta_lambda(lambda: u64) -> u64 {
    let mut m = 0u64;
    let mut central: u128 = 1;
    while central < lambda as u128 {
        // C(m+2, m/2+1) = C(m, m/2) (m+1)(m+2) / (m/2+1)^2
        let h = m as u128 / 2 + 1;
        central = central * (m as u128 + 1) * (m as u128 + 2) / (h * h);
        m += 2;
    }
    m
}

/// [`h_avg`] with `log2 λ` replaced by the balanced prefix length `Δ(λ)`.
pub fn h_prime(k: usize) -> Result<f64> {
    check_k(k, 4)?;
    Ok(h_prime_from(&CountTable::new(k)?))
}

pub fn h_prime_from(table: &CountTable) -> f64 {
    let num: BigUint = table
        .iter()
        .map(|(l, n)| n * l * delta_lambda(l as u64))
        .sum();
    ratio_to_f64(&num, &unbalanced_count(table.k()))
}

/// [`h1_avg`] with `log2 λ` replaced by `Δ(λ)`.
pub fn h1_prime(k: usize) -> Result<f64> {
    check_k(k, 4)?;
    Ok(h1_prime_from(&CountTable::new(k)?))
}

pub fn h1_prime_from(table: &CountTable) -> f64 {
    let num: BigUint = table
        .iter()
        .map(|(l, n)| n * (l + 1) * delta_lambda(l as u64 + 1))
        .sum();
    ratio_to_f64(&num, &pow2(table.k()))
}

/// Number of information words of length `k` sent with each prefix length.
pub fn prefix_length_counts(k: usize, scheme: Scheme) -> Result<BTreeMap<usize, BigUint>> {
    check_k(k, 4)?;
    let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
    if !scheme.is_proposed() {
        counts.insert(prefix_length(k, scheme, None)?, pow2(k));
        return Ok(counts);
    }
    counts.insert(0, central_binomial(k));
    let table = CountTable::new(k)?;
    for (l, n) in table.iter() {
        if n.is_zero() {
            continue;
        }
        let len = match scheme {
            Scheme::ProposedVl => prefix_length(k, scheme, Some(l))?,
            _ => prefix_length(k, scheme, None)?,
        };
        *counts.entry(len).or_default() += n * l;
    }
    Ok(counts)
}

/// Mean prefix length over uniformly random information words.
pub fn expected_prefix_bits(k: usize, scheme: Scheme) -> Result<f64> {
    let counts = prefix_length_counts(k, scheme)?;
    let num: BigUint = counts.iter().map(|(len, c)| c * *len).sum();
    Ok(ratio_to_f64(&num, &pow2(k)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedundancyRow {
    pub k: usize,
    pub h0: f64,
    pub h: f64,
    pub h1: f64,
    pub h2: f64,
}

pub fn redundancy_row(k: usize) -> Result<RedundancyRow> {
    check_k(k, 4)?;
    let table = CountTable::new(k)?;
    Ok(RedundancyRow {
        k,
        h0: h0_exact(k)?,
        h: h_avg_from(&table),
        h1: h1_avg_from(&table),
        h2: h2_avg(k)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalancedPrefixRow {
    pub k: usize,
    pub h_prime: f64,
    pub h1_prime: f64,
    pub log2_k: f64,
    pub ceil_log2_k: u32,
}

pub fn balanced_prefix_row(k: usize) -> Result<BalancedPrefixRow> {
    check_k(k, 4)?;
    let table = CountTable::new(k)?;
    Ok(BalancedPrefixRow {
        k,
        h_prime: h_prime_from(&table),
        h1_prime: h1_prime_from(&table),
        log2_k: (k as f64).log2(),
        ceil_log2_k: ceil_log2(k as u64),
    })
}

/// Integer fixed-length prefix widths: Knuth, baseline, compressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPrefixRow {
    pub k: usize,
    pub knuth: usize,
    pub baseline: usize,
    pub proposed: usize,
}

pub fn fixed_prefix_row(k: usize) -> Result<FixedPrefixRow> {
    Ok(FixedPrefixRow {
        k,
        knuth: prefix_length(k, Scheme::Knuth, None)?,
        baseline: prefix_length(k, Scheme::BaselineFl, None)?,
        proposed: prefix_length(k, Scheme::ProposedFl, None)?,
    })
}

pub fn table1_csv(ks: &[usize]) -> Result<String> {
    let mut out = String::from("k,H0,H,H1,H2\n");
    for &k in ks {
        let r = redundancy_row(k)?;
        writeln!(out, "{},{:.4},{:.4},{:.4},{:.4}", r.k, r.h0, r.h, r.h1, r.h2).unwrap();
    }
    Ok(out)
}

pub fn fig2_csv(ks: &[usize]) -> Result<String> {
    let mut out = String::from("k,H_prime,H1_prime,log2_k,ceil_log2_k\n");
    for &k in ks {
        let r = balanced_prefix_row(k)?;
        writeln!(
            out,
            "{},{:.4},{:.4},{:.4},{}",
            r.k, r.h_prime, r.h1_prime, r.log2_k, r.ceil_log2_k
        )
        .unwrap();
    }
    Ok(out)
}

pub fn fig3_csv(ks: &[usize]) -> Result<String> {
    let mut out = String::from("k,ceil_log2_k,ceil_log2_half_k_plus_1,ceil_log2_half_k\n");
    for &k in ks {
        let r = fixed_prefix_row(k)?;
        writeln!(out, "{},{},{},{}", r.k, r.knuth, r.baseline, r.proposed).unwrap();
    }
    Ok(out)
}

pub fn nlambda_csv(ks: &[usize]) -> Result<String> {
    let mut out = String::from("k,lambda,N\n");
    for &k in ks {
        let table = CountTable::new(k)?;
        for (l, n) in table.iter() {
            writeln!(out, "{k},{l},{n}").unwrap();
        }
    }
    Ok(out)
}
