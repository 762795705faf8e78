//! Knuth's balancing scheme: invert the shortest balancing prefix and send
//! its length as a fixed-width index.

use crate::error::{Error, Result};
use crate::math::ceil_log2;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnuthCodeword {
    /// `e - 1` in `ceil(log2 k)` bits, most significant bit first.
    pub prefix: Word,
    /// The balanced image of the information word.
    pub payload: Word,
}

impl KnuthCodeword {
    pub fn to_word(&self) -> Word {
        self.prefix.concat(&self.payload)
    }
}

/// Prefix width for information length `k`.
pub fn prefix_bits(k: usize) -> usize {
    ceil_log2(k as u64) as usize
}

pub fn encode(x: &Word) -> Result<KnuthCodeword> {
    let k = x.len();
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::domain(format!("Knuth encoding needs even k >= 2, got {k}")));
    }
    let e = x.first_balancing_index()?;
    Ok(KnuthCodeword {
        prefix: Word::from_uint((e - 1) as u64, prefix_bits(k)),
        payload: x.invert_prefix(e)?,
    })
}

pub fn decode(cw: &KnuthCodeword) -> Result<Word> {
    let k = cw.payload.len();
    if !cw.payload.is_balanced() {
        return Err(Error::CorruptCodeword(format!(
            "payload {} is not balanced",
            cw.payload
        )));
    }
    if cw.prefix.len() != prefix_bits(k) {
        return Err(Error::CorruptCodeword(format!(
            "prefix has {} bits, expected {} for k = {k}",
            cw.prefix.len(),
            prefix_bits(k)
        )));
    }
    let e = cw
        .prefix
        .to_uint()
        .map(|v| v as usize + 1)
        .ok_or_else(|| Error::CorruptCodeword("prefix too wide".into()))?;
    if e > k {
        return Err(Error::CorruptCodeword(format!("index {e} exceeds k = {k}")));
    }
    cw.payload.invert_prefix(e)
}
