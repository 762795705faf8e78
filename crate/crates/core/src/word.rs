//! Binary words and their running-digital-sum primitives.
//!
//! Bits are stored as `{0,1}`; every signed quantity (disparity, running
//! digital sum) is measured in bipolar units where a `0` counts as `-1` and a
//! `1` as `+1`. Positions in the public contracts are 1-based, so
//! `invert_prefix(w, j)` complements bits `1..=j`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite bit sequence, first bit leftmost.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: Vec<bool>,
}

/// Largest and smallest running digital sum over positions `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RdsExtrema {
    pub max_rds: i64,
    pub min_rds: i64,
}

impl RdsExtrema {
    /// Number of unit steps between the extreme levels.
    pub fn span(&self) -> u64 {
        (self.max_rds - self.min_rds) as u64
    }
}

impl Word {
    pub fn new(bits: Vec<bool>) -> Self {
        Word { bits }
    }

    /// The zero-length word, used only as the prefix of prefix-less packets.
    pub fn empty() -> Self {
        Word { bits: Vec::new() }
    }

    pub fn zeros(len: usize) -> Self {
        Word {
            bits: vec![false; len],
        }
    }

    /// `width` low bits of `value`, most significant bit first.
    pub fn from_uint(value: u64, width: usize) -> Self {
        debug_assert!(width >= 64 || value >> width == 0);
        let bits = (0..width)
            .rev()
            .map(|i| i < 64 && (value >> i) & 1 == 1)
            .collect();
        Word { bits }
    }

    /// Reads the word as an unsigned integer, most significant bit first.
    /// `None` when the word is longer than 64 bits.
    pub fn to_uint(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    /// Bit at 1-based position `i`.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// `#ones - #zeros`; zero exactly when the word is balanced.
    pub fn disparity(&self) -> i64 {
        2 * self.weight() as i64 - self.bits.len() as i64
    }

    /// Partial sums `d_1, ..., d_k` in bipolar units.
    pub fn running_sums(&self) -> impl Iterator<Item = i64> + '_ {
        self.bits.iter().scan(0i64, |acc, &b| {
            *acc += if b { 1 } else { -1 };
            Some(*acc)
        })
    }

    /// Extremes of the running digital sum. An empty word reports `(0, 0)`.
    pub fn rds_extrema(&self) -> RdsExtrema {
        let mut sums = self.running_sums();
        let Some(first) = sums.next() else {
            return RdsExtrema {
                max_rds: 0,
                min_rds: 0,
            };
        };
        let (min_rds, max_rds) = sums.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
        RdsExtrema { max_rds, min_rds }
    }

    /// Complements bits `1..=j`; `j = 0` is the identity.
    pub fn invert_prefix(&self, j: usize) -> Result<Word> {
        if j > self.bits.len() {
            return Err(Error::Range {
                index: j,
                len: self.bits.len(),
            });
        }
        let mut bits = self.bits.clone();
        bits[..j].iter_mut().for_each(|b| *b = !*b);
        Ok(Word { bits })
    }

    pub fn is_balanced(&self) -> bool {
        self.bits.len().is_multiple_of(2) && self.disparity() == 0
    }

    /// Smallest `e` in `1..=k` such that inverting the first `e` bits
    /// balances the word. Already balanced words still search from `e = 1`.
    pub fn first_balancing_index(&self) -> Result<usize> {
        let k = self.bits.len();
        if k == 0 || !k.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "balancing index needs a non-empty even-length word, got length {k}"
            )));
        }
        // inverting a prefix with sum d_e turns d into d - 2*d_e
        let target = self.disparity() / 2;
        self.running_sums()
            .position(|d| d == target)
            .map(|pos| pos + 1)
            .ok_or_else(|| Error::Internal(format!("no balancing index for {self}")))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Word { bits }
    }

    /// Splits after the first `mid` bits.
    pub fn split_at(&self, mid: usize) -> (Word, Word) {
        let (head, tail) = self.bits.split_at(mid);
        (Word::new(head.to_vec()), Word::new(tail.to_vec()))
    }

    /// All `2^k` words of length `k` in ascending lexicographic order.
    pub fn all(k: usize) -> impl Iterator<Item = Word> {
        assert!(k < 64, "exhaustive enumeration limited to k < 64");
        (0..1u64 << k).map(move |v| Word::from_uint(v, k))
    }

    /// All balanced words of length `k` in ascending lexicographic order.
    pub fn all_balanced(k: usize) -> impl Iterator<Item = Word> {
        assert!(k < 64, "exhaustive enumeration limited to k < 64");
        (0..1u64 << k)
            .filter(move |v| 2 * v.count_ones() as usize == k)
            .map(move |v| Word::from_uint(v, k))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !matches!(c, '_' | '·' | ' '))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl From<&[bool]> for Word {
    fn from(bits: &[bool]) -> Self {
        Word::new(bits.to_vec())
    }
}
