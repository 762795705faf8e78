//! Subset ranking codecs.
//!
//! Every information word `x` maps, through its first balancing index, to a
//! balanced image `y`. The words sharing an image form the listing `s(y)`,
//! and the rank of `x` inside that listing is the transmitted prefix. The
//! baseline listing keeps the one balanced member that maps to `y` (placed
//! last); the compressed listing drops it because balanced information
//! words travel without a prefix, their packet length alone marking them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fourb6b;
use crate::knuth;
use crate::math::ceil_log2;
use crate::word::Word;

/// Prefix schemes understood by [`encode_packet`] and [`decode_packet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Classic Knuth index prefix, `ceil(log2 k)` bits.
    Knuth,
    /// Uncompressed listings, rank in `ceil(log2(k/2 + 1))` bits.
    BaselineFl,
    /// Compressed listings, rank in `ceil(log2(k/2))` bits.
    ProposedFl,
    /// Compressed listings, rank in `max(1, ceil(log2 λ))` bits.
    ProposedVl,
    /// `ProposedFl` with the prefix carried as balanced 4B6B sextets.
    ProposedFull,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Knuth,
        Scheme::BaselineFl,
        Scheme::ProposedFl,
        Scheme::ProposedVl,
        Scheme::ProposedFull,
    ];

    /// Wire identifier used in stream headers.
    pub fn id(self) -> u8 {
        match self {
            Scheme::Knuth => 0,
            Scheme::BaselineFl => 1,
            Scheme::ProposedFl => 2,
            Scheme::ProposedVl => 3,
            Scheme::ProposedFull => 4,
        }
    }

    pub fn from_id(id: u8) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|s| s.id() == id)
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Knuth => "knuth",
            Scheme::BaselineFl => "baseline-fl",
            Scheme::ProposedFl => "proposed-fl",
            Scheme::ProposedVl => "proposed-vl",
            Scheme::ProposedFull => "proposed-full",
        }
    }

    /// Schemes that send balanced information words without a prefix.
    pub fn is_proposed(self) -> bool {
        matches!(
            self,
            Scheme::ProposedFl | Scheme::ProposedVl | Scheme::ProposedFull
        )
    }

    /// Smallest information length the scheme accepts.
    pub fn min_k(self) -> usize {
        if self.is_proposed() {
            4
        } else {
            2
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown scheme {s:?}")))
    }
}

/// The ordered candidate list `s(y)` of a balanced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetListing {
    pub y: Word,
    pub members: Vec<Word>,
    pub includes_balanced: bool,
}

impl SubsetListing {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rank_of(&self, x: &Word) -> Option<usize> {
        self.members.iter().position(|m| m == x)
    }
}

/// A codeword `p·y`; its bit length plays the role of the end-of-packet mark.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Packet {
    pub bits: Word,
}

impl Packet {
    pub fn new(bits: Word) -> Self {
        Packet { bits }
    }

    pub fn bit_length(&self) -> usize {
        self.bits.len()
    }

    /// Prefix and payload for an information length `k`.
    pub fn split(&self, k: usize) -> Result<(Word, Word)> {
        if self.bits.len() < k {
            return Err(Error::corrupt_packet(format!(
                "packet of {} bits is shorter than k = {k}",
                self.bits.len()
            )));
        }
        Ok(self.bits.split_at(self.bits.len() - k))
    }
}

fn check_k(k: usize, scheme: Scheme) -> Result<()> {
    if !k.is_multiple_of(2) || k < scheme.min_k() {
        return Err(Error::domain(format!(
            "{scheme} needs even k >= {}, got {k}",
            scheme.min_k()
        )));
    }
    Ok(())
}

fn require_balanced(y: &Word) -> Result<()> {
    if y.is_empty() || !y.is_balanced() {
        return Err(Error::domain(format!("{y} is not a balanced word")));
    }
    Ok(())
}

/// All words whose first balancing index maps them onto `y`.
///
/// Unbalanced members come first in ascending lexicographic order; the
/// single balanced member is appended last when `includes_balanced`.
pub fn subset_members(y: &Word, includes_balanced: bool) -> Result<SubsetListing> {
    require_balanced(y)?;
    let mut unbalanced = Vec::new();
    let mut balanced = None;
    for j in 1..=y.len() {
        let x = y.invert_prefix(j)?;
        if x.first_balancing_index()? != j {
            continue;
        }
        if x.is_balanced() {
            if balanced.replace(x).is_some() {
                return Err(Error::Internal(format!("{y} has two balanced preimages")));
            }
        } else {
            unbalanced.push(x);
        }
    }
    unbalanced.sort();
    if includes_balanced {
        let b = balanced.ok_or_else(|| Error::Internal(format!("{y} has no balanced preimage")))?;
        unbalanced.push(b);
    }
    Ok(SubsetListing {
        y: y.clone(),
        members: unbalanced,
        includes_balanced,
    })
}

/// Size of the compressed listing read off the running digital sum of `y`:
/// the distance between its highest and lowest level.
pub fn subset_size_rds(y: &Word) -> Result<usize> {
    require_balanced(y)?;
    Ok(y.rds_extrema().span() as usize)
}

/// Prefix width in bits. `lambda` is the compressed listing size and is only
/// consulted (and required) for [`Scheme::ProposedVl`].
pub fn prefix_length(k: usize, scheme: Scheme, lambda: Option<usize>) -> Result<usize> {
    if !k.is_multiple_of(2) || k < 4 {
        return Err(Error::domain(format!("prefix length needs even k >= 4, got {k}")));
    }
    let half = (k / 2) as u64;
    let bits = match scheme {
        Scheme::Knuth => ceil_log2(k as u64),
        Scheme::BaselineFl => ceil_log2(half + 1),
        Scheme::ProposedFl => ceil_log2(half),
        Scheme::ProposedVl => {
            let lambda = lambda.ok_or_else(|| Error::domain("proposed-vl prefix length needs lambda"))?;
            if lambda == 0 || lambda as u64 > half {
                return Err(Error::domain(format!("lambda {lambda} outside 1..={half}")));
            }
            ceil_log2(lambda as u64).max(1)
        }
        Scheme::ProposedFull => 6 * ceil_log2(half).div_ceil(4),
    };
    Ok(bits as usize)
}

fn fl_width(k: usize, scheme: Scheme) -> usize {
    let half = (k / 2) as u64;
    match scheme {
        Scheme::Knuth => knuth::prefix_bits(k),
        Scheme::BaselineFl => ceil_log2(half + 1) as usize,
        _ => ceil_log2(half) as usize,
    }
}

fn vl_width(lambda: usize) -> usize {
    ceil_log2(lambda as u64).max(1) as usize
}

/// Encodes an information word as a packet under `scheme`.
pub fn encode_packet(x: &Word, scheme: Scheme) -> Result<Packet> {
    let k = x.len();
    check_k(k, scheme)?;
    match scheme {
        Scheme::Knuth => return knuth::encode(x).map(|cw| Packet::new(cw.to_word())),
        Scheme::ProposedFull => return fourb6b::full_encode(x),
        _ => {}
    }
    if scheme.is_proposed() && x.is_balanced() {
        return Ok(Packet::new(x.clone()));
    }
    let y = x.invert_prefix(x.first_balancing_index()?)?;
    let listing = subset_members(&y, scheme == Scheme::BaselineFl)?;
    let rank = listing
        .rank_of(x)
        .ok_or_else(|| Error::Internal(format!("{x} missing from listing of {y}")))?;
    let width = match scheme {
        Scheme::ProposedVl => vl_width(listing.len()),
        _ => fl_width(k, scheme),
    };
    if width < 64 && rank as u64 >> width != 0 {
        return Err(Error::Internal(format!("rank {rank} does not fit {width} bits")));
    }
    Ok(Packet::new(Word::from_uint(rank as u64, width).concat(&y)))
}

/// Inverse of [`encode_packet`] for information length `k`.
pub fn decode_packet(p: &Packet, k: usize, scheme: Scheme) -> Result<Word> {
    check_k(k, scheme)?;
    match scheme {
        Scheme::Knuth => {
            let (prefix, payload) = p.split(k)?;
            let cw = knuth::KnuthCodeword { prefix, payload };
            return knuth::decode(&cw).map_err(|e| match e {
                Error::CorruptCodeword(msg) => Error::CorruptPacket(msg),
                other => other,
            });
        }
        Scheme::ProposedFull => return fourb6b::full_decode(p, k),
        _ => {}
    }
    let (prefix, y) = p.split(k)?;
    if !y.is_balanced() {
        return Err(Error::corrupt_packet(format!("payload {y} is not balanced")));
    }
    if prefix.is_empty() && scheme.is_proposed() {
        return Ok(y);
    }
    let listing = subset_members(&y, scheme == Scheme::BaselineFl)?;
    let expected = match scheme {
        Scheme::ProposedVl => vl_width(listing.len()),
        _ => fl_width(k, scheme),
    };
    if prefix.len() != expected {
        return Err(Error::corrupt_packet(format!(
            "{scheme} prefix has {} bits, expected {expected}",
            prefix.len()
        )));
    }
    let rank = prefix
        .to_uint()
        .ok_or_else(|| Error::corrupt_packet("prefix too wide"))? as usize;
    listing.members.get(rank).cloned().ok_or_else(|| {
        Error::corrupt_packet(format!(
            "rank {rank} outside listing of {} members for {y}",
            listing.len()
        ))
    })
}

/// Listings of every balanced word of length `k`, in ascending order of `y`.
pub fn subset_table(k: usize, includes_balanced: bool) -> Result<Vec<SubsetListing>> {
    if !k.is_multiple_of(2) || !(2..=20).contains(&k) {
        return Err(Error::domain(format!("subset table needs even 2 <= k <= 20, got {k}")));
    }
    Word::all_balanced(k)
        .map(|y| subset_members(&y, includes_balanced))
        .collect()
}

/// Renders the listings as a grid: a header row of balanced words, one row
/// per rank, and the fixed-length prefix of each rank in the last column.
pub fn render_subset_table(k: usize, scheme: Scheme) -> Result<String> {
    let includes_balanced = match scheme {
        Scheme::BaselineFl => true,
        Scheme::ProposedFl => false,
        other => return Err(Error::domain(format!("no subset table for {other}"))),
    };
    let table = subset_table(k, includes_balanced)?;
    let width = fl_width(k, scheme);
    let rows = table.iter().map(SubsetListing::len).max().unwrap_or(0);
    let blank = " ".repeat(k);
    let mut out = String::new();
    let mut header = vec!["y".to_string()];
    header.extend(table.iter().map(|l| l.y.to_string()));
    header.push("p".into());
    out.push_str(&header.join(" "));
    out.push('\n');
    for r in 0..rows {
        let mut line = vec![" ".to_string()];
        line.extend(
            table
                .iter()
                .map(|l| l.members.get(r).map_or(blank.clone(), Word::to_string)),
        );
        line.push(Word::from_uint(r as u64, width).to_string());
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}
