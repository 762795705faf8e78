//! Balanced binary codes built on Knuth's prefix-inversion rule.
//!
//! An information word is balanced by inverting its shortest balancing
//! prefix. Instead of sending the inversion index, the codecs here send the
//! rank of the word among all words sharing the same balanced image. The
//! compressed variant drops the balanced member from every such listing and
//! sends balanced inputs as bare packets, which shortens the fixed-length
//! prefix to `ceil(log2(k/2))` bits.
//!
//! Modules:
//! - [`word`]: disparity, running digital sum, prefix inversion;
//! - [`knuth`]: the classic index-prefix codec;
//! - [`subset`]: listings, ranking and the packet codecs for every [`Scheme`];
//! - [`enumeration`]: exact and closed-form counts of listing sizes;
//! - [`analytics`]: average prefix redundancy and the CSV tables;
//! - [`fourb6b`]: the table-free 4B6B code and overall balancing;
//! - [`stream`]: byte framing of packet sequences;
//! - [`selfcheck`]: exhaustive invariant sweep.
//!
//! ```
//! use balanced_codes::{decode_packet, encode_packet, Scheme, Word};
//!
//! let x: Word = "1111".parse().unwrap();
//! let packet = encode_packet(&x, Scheme::ProposedFl).unwrap();
//! assert_eq!(packet.bits.to_string(), "10011");
//! assert_eq!(decode_packet(&packet, 4, Scheme::ProposedFl).unwrap(), x);
//! ```

pub mod analytics;
pub mod enumeration;
pub mod error;
pub mod fourb6b;
pub mod knuth;
pub mod math;
pub mod selfcheck;
pub mod stream;
pub mod subset;
pub mod word;

pub use enumeration::{CountTable, WalkSpec};
pub use error::{Error, Result};
pub use fourb6b::Sextet;
pub use knuth::KnuthCodeword;
pub use selfcheck::{selfcheck, SelfCheckReport};
pub use stream::{deframe_stream, frame_stream, StreamHeader};
pub use subset::{
    decode_packet, encode_packet, prefix_length, subset_members, subset_size_rds, Packet, Scheme,
    SubsetListing,
};
pub use word::{RdsExtrema, Word};
