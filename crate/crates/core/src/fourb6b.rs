//! Table-free 4B6B balanced code and overall balancing of packet prefixes.
//!
//! A nibble is balanced the Knuth way: invert its first `e` bits and append a
//! two-bit suffix naming `e`. The suffix alphabet depends on the nibble's
//! first bit, and `e` is the smallest index for which body plus suffix carry
//! exactly three ones. Because `e >= 1`, the first body bit is always the
//! complement of the input's first bit, so the decoder knows which suffix
//! alphabet to invert.

use std::fmt;

use crate::error::{Error, Result};
use crate::math::ceil_log2;
use crate::subset::{decode_packet, encode_packet, Packet, Scheme};
use crate::word::Word;

/// Suffix for inversion index `e` (index `e - 1`), by input start bit.
const SUFFIX_START_0: [[bool; 2]; 4] = [
    [false, true],
    [true, false],
    [false, false],
    [true, true],
];
const SUFFIX_START_1: [[bool; 2]; 4] = [
    [false, true],
    [true, false],
    [true, true],
    [false, false],
];

fn suffix_map(start: bool) -> &'static [[bool; 2]; 4] {
    if start {
        &SUFFIX_START_1
    } else {
        &SUFFIX_START_0
    }
}

/// A six-bit codeword of weight three.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sextet([bool; 6]);

impl Sextet {
    pub fn from_word(w: &Word) -> Result<Sextet> {
        let bits: [bool; 6] = w
            .bits()
            .try_into()
            .map_err(|_| Error::InvalidSextet(format!("{w} (length {})", w.len())))?;
        Ok(Sextet(bits))
    }

    pub fn bits(&self) -> &[bool; 6] {
        &self.0
    }

    pub fn to_word(self) -> Word {
        Word::new(self.0.to_vec())
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Sextet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

impl fmt::Debug for Sextet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sextet({self})")
    }
}

pub fn encode_nibble(n: &Word) -> Result<Sextet> {
    if n.len() != 4 {
        return Err(Error::domain(format!("nibble must have 4 bits, got {}", n.len())));
    }
    let suffixes = suffix_map(n.bit(1));
    for e in 1..=4 {
        let body = n.invert_prefix(e)?;
        let suffix = suffixes[e - 1];
        if body.weight() + suffix.iter().filter(|&&b| b).count() == 3 {
            let mut out = [false; 6];
            out[..4].copy_from_slice(body.bits());
            out[4..].copy_from_slice(&suffix);
            return Ok(Sextet(out));
        }
    }
    Err(Error::Internal(format!("no balancing index for nibble {n}")))
}

pub fn decode_sextet(s: &Word) -> Result<Word> {
    let sextet = Sextet::from_word(s)?;
    if sextet.weight() != 3 {
        return Err(Error::InvalidSextet(format!("{s} has weight {}", sextet.weight())));
    }
    let bits = sextet.bits();
    let body = Word::new(bits[..4].to_vec());
    let start = !bits[0];
    let suffix = [bits[4], bits[5]];
    let e = suffix_map(start)
        .iter()
        .position(|&sfx| sfx == suffix)
        .map(|i| i + 1)
        .ok_or_else(|| Error::InvalidSextet(s.to_string()))?;
    let nibble = body.invert_prefix(e)?;
    if encode_nibble(&nibble)? != sextet {
        return Err(Error::InvalidSextet(format!("{s} is not a 4B6B codeword")));
    }
    Ok(nibble)
}

/// Zero-pads `p` on the right to whole nibbles and maps each to a sextet.
pub fn balance_prefix(p: &Word) -> Result<Word> {
    if p.is_empty() {
        return Err(Error::domain("cannot balance an empty prefix"));
    }
    let padded = p.concat(&Word::zeros(p.len().div_ceil(4) * 4 - p.len()));
    let mut out = Vec::with_capacity(padded.len() / 4 * 6);
    for nibble in padded.bits().chunks(4) {
        out.extend_from_slice(encode_nibble(&Word::from(nibble))?.bits());
    }
    Ok(Word::new(out))
}

/// Inverse of [`balance_prefix`] for an original prefix of `r` bits. Padding
/// bits must be zero.
pub fn unbalance_prefix(encoded: &Word, r: usize) -> Result<Word> {
    let expected = 6 * r.div_ceil(4);
    if r == 0 || encoded.len() != expected {
        return Err(Error::corrupt_packet(format!(
            "balanced prefix has {} bits, expected {expected}",
            encoded.len()
        )));
    }
    let mut bits = Vec::with_capacity(expected / 6 * 4);
    for chunk in encoded.bits().chunks(6) {
        bits.extend_from_slice(decode_sextet(&Word::from(chunk))?.bits());
    }
    if bits[r..].iter().any(|&b| b) {
        return Err(Error::corrupt_packet("non-zero prefix padding"));
    }
    bits.truncate(r);
    Ok(Word::new(bits))
}

fn fl_prefix_bits(k: usize) -> usize {
    ceil_log2((k / 2) as u64) as usize
}

/// Compressed fixed-length encoding whose prefix is re-encoded with 4B6B, so
/// the whole packet is balanced. Balanced inputs stay prefix-less.
pub fn full_encode(x: &Word) -> Result<Packet> {
    let k = x.len();
    let fl = encode_packet(x, Scheme::ProposedFl)?;
    if fl.bit_length() == k {
        return Ok(fl);
    }
    let (prefix, y) = fl.split(k)?;
    Ok(Packet::new(balance_prefix(&prefix)?.concat(&y)))
}

pub fn full_decode(p: &Packet, k: usize) -> Result<Word> {
    if !k.is_multiple_of(2) || k < 4 {
        return Err(Error::domain(format!("full balancing needs even k >= 4, got {k}")));
    }
    if p.bit_length() == k {
        return decode_packet(p, k, Scheme::ProposedFl);
    }
    let (encoded, y) = p.split(k)?;
    let prefix = unbalance_prefix(&encoded, fl_prefix_bits(k))?;
    decode_packet(&Packet::new(prefix.concat(&y)), k, Scheme::ProposedFl)
}
