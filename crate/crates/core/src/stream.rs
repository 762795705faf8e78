//! Byte-stream framing of packet sequences.
//!
//! ```text
//! header  : "BPK1" | k: u16 BE | scheme: u8 | pad_mode: u8 | payload_bit_count: u64 BE
//! packet* : bit_length: unsigned LEB128 | ceil(bit_length/8) bytes, MSB first, zero padded
//! ```
//!
//! The explicit bit length is the end-of-packet mark: it is what lets a
//! prefix-less balanced packet (length `k`) be told apart from a prefixed one.

use crate::error::{Error, Result};
use crate::subset::{decode_packet, encode_packet, Packet, Scheme};
use crate::word::Word;

pub const MAGIC: [u8; 4] = *b"BPK1";
pub const HEADER_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub k: u16,
    pub scheme: Scheme,
    pub pad_mode: bool,
    /// Length of the original input in bits, before block padding.
    pub payload_bit_count: u64,
}

fn header_error(reason: impl Into<String>) -> Error {
    Error::StreamCorrupt {
        packet: None,
        reason: reason.into(),
    }
}

impl StreamHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4..6].copy_from_slice(&self.k.to_be_bytes());
        out[6] = self.scheme.id();
        out[7] = self.pad_mode as u8;
        out[8..].copy_from_slice(&self.payload_bit_count.to_be_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<StreamHeader> {
        if bytes.len() < HEADER_LEN {
            return Err(header_error(format!("header truncated at {} bytes", bytes.len())));
        }
        if bytes[..4] != MAGIC {
            return Err(header_error(format!("bad magic {:02x?}", &bytes[..4])));
        }
        let k = u16::from_be_bytes([bytes[4], bytes[5]]);
        let scheme =
            Scheme::from_id(bytes[6]).ok_or_else(|| header_error(format!("unknown scheme id {}", bytes[6])))?;
        let pad_mode = match bytes[7] {
            0 => false,
            1 => true,
            other => return Err(header_error(format!("bad pad flag {other}"))),
        };
        let payload_bit_count = u64::from_be_bytes(bytes[8..16].try_into().unwrap());
        let header = StreamHeader {
            k,
            scheme,
            pad_mode,
            payload_bit_count,
        };
        header.validate().map_err(|e| header_error(e.to_string()))?;
        Ok(header)
    }

    fn validate(&self) -> Result<()> {
        let k = self.k as usize;
        if !k.is_multiple_of(2) || k < self.scheme.min_k() {
            return Err(Error::domain(format!(
                "{} needs even k >= {}, got {k}",
                self.scheme,
                self.scheme.min_k()
            )));
        }
        if !self.pad_mode && !self.payload_bit_count.is_multiple_of(k as u64) {
            return Err(Error::InputLength {
                bits: self.payload_bit_count,
                k,
            });
        }
        Ok(())
    }

    pub fn packet_count(&self) -> u64 {
        self.payload_bit_count.div_ceil(self.k as u64)
    }
}

pub fn write_varint(mut v: u64, out: &mut Vec<u8>) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

/// Decodes an unsigned LEB128 value, returning it with the bytes consumed.
pub fn read_varint(bytes: &[u8]) -> Option<(u64, usize)> {
    let mut value = 0u64;
    for (i, &b) in bytes.iter().enumerate().take(10) {
        let chunk = (b & 0x7f) as u64;
        if i == 9 && chunk > 1 {
            return None;
        }
        value |= chunk << (7 * i);
        if b & 0x80 == 0 {
            return Some((value, i + 1));
        }
    }
    None
}

/// Packs bits most-significant-first, zero padding the last byte.
pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (b as u8) << (7 - i))
        })
        .collect()
}

pub fn unpack_bits(bytes: &[u8], bit_count: usize) -> Vec<bool> {
    (0..bit_count)
        .map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1)
        .collect()
}

/// Splits `input` into `k`-bit blocks, encodes each under `scheme` and
/// frames the packets behind a header.
pub fn frame_stream(input: &[bool], k: usize, scheme: Scheme, pad_mode: bool) -> Result<Vec<u8>> {
    let k16 = u16::try_from(k).map_err(|_| Error::domain(format!("k = {k} exceeds u16")))?;
    let header = StreamHeader {
        k: k16,
        scheme,
        pad_mode,
        payload_bit_count: input.len() as u64,
    };
    header.validate()?;
    let mut out = header.to_bytes().to_vec();
    for block in input.chunks(k) {
        let mut bits = block.to_vec();
        bits.resize(k, false);
        let packet = encode_packet(&Word::new(bits), scheme)?;
        write_varint(packet.bit_length() as u64, &mut out);
        out.extend(pack_bits(packet.bits.bits()));
    }
    Ok(out)
}

/// Parses the packets following a header without decoding them.
pub fn read_packets(body: &[u8]) -> Result<Vec<Packet>> {
    let mut packets = Vec::new();
    let mut pos = 0;
    while pos < body.len() {
        let index = packets.len();
        let corrupt = |reason: String| Error::StreamCorrupt {
            packet: Some(index),
            reason,
        };
        let (bit_length, used) =
            read_varint(&body[pos..]).ok_or_else(|| corrupt("truncated or oversized length".into()))?;
        pos += used;
        let byte_len = bit_length.div_ceil(8);
        if byte_len > (body.len() - pos) as u64 {
            return Err(corrupt(format!(
                "declares {bit_length} bits but only {} bytes remain",
                body.len() - pos
            )));
        }
        let bytes = &body[pos..pos + byte_len as usize];
        let bits = unpack_bits(bytes, bit_length as usize);
        if pack_bits(&bits) != bytes {
            return Err(corrupt("non-zero padding in final byte".into()));
        }
        pos += byte_len as usize;
        packets.push(Packet::new(Word::new(bits)));
    }
    Ok(packets)
}

/// Recovers the original bits from a framed stream.
pub fn deframe_stream(bytes: &[u8]) -> Result<Vec<bool>> {
    let header = StreamHeader::parse(bytes)?;
    let packets = read_packets(&bytes[HEADER_LEN..])?;
    if packets.len() as u64 != header.packet_count() {
        return Err(header_error(format!(
            "expected {} packets, found {}",
            header.packet_count(),
            packets.len()
        )));
    }
    let k = header.k as usize;
    let mut out = Vec::with_capacity(packets.len() * k);
    for (index, packet) in packets.iter().enumerate() {
        let word = decode_packet(packet, k, header.scheme).map_err(|e| Error::StreamCorrupt {
            packet: Some(index),
            reason: e.to_string(),
        })?;
        out.extend_from_slice(word.bits());
    }
    out.truncate(header.payload_bit_count as usize);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.parse::<Word>().unwrap().into_bits()
    }

    #[test]
    fn frames_example() {
        let stream = frame_stream(&bits("01011111"), 4, Scheme::ProposedFl, false).unwrap();
        let header = StreamHeader::parse(&stream).unwrap();
        assert_eq!(header.payload_bit_count, 8);
        assert_eq!(header.packet_count(), 2);
        let packets = read_packets(&stream[HEADER_LEN..]).unwrap();
        let got: Vec<String> = packets.iter().map(|p| p.bits.to_string()).collect();
        assert_eq!(got, ["0101", "10011"]);
        // varint 4, 0101_0000, varint 5, 1001_1000
        assert_eq!(&stream[HEADER_LEN..], &[4, 0x50, 5, 0x98]);
        assert_eq!(deframe_stream(&stream).unwrap(), bits("01011111"));
    }

    #[test]
    fn header_layout() {
        let h = StreamHeader {
            k: 16,
            scheme: Scheme::ProposedVl,
            pad_mode: true,
            payload_bit_count: 0x0102,
        };
        assert_eq!(
            h.to_bytes(),
            [b'B', b'P', b'K', b'1', 0, 16, 3, 1, 0, 0, 0, 0, 0, 0, 1, 2]
        );
        assert_eq!(StreamHeader::parse(&h.to_bytes()).unwrap(), h);
    }

    #[test]
    fn length_must_divide_without_padding() {
        let err = frame_stream(&bits("010111"), 4, Scheme::ProposedFl, false).unwrap_err();
        assert_eq!(err, Error::InputLength { bits: 6, k: 4 });
        let stream = frame_stream(&bits("010111"), 4, Scheme::ProposedFl, true).unwrap();
        assert_eq!(deframe_stream(&stream).unwrap(), bits("010111"));
    }

    #[test]
    fn rejects_corruption() {
        let stream = frame_stream(&bits("01011111"), 4, Scheme::ProposedFl, false).unwrap();
        let mut bad = stream.clone();
        bad[0] = b'X';
        assert!(matches!(deframe_stream(&bad), Err(Error::StreamCorrupt { packet: None, .. })));
        // flip the last payload bit of packet 1: 10011 -> 10010 is unbalanced
        let mut bad = stream.clone();
        *bad.last_mut().unwrap() ^= 0x08;
        assert!(matches!(
            deframe_stream(&bad),
            Err(Error::StreamCorrupt { packet: Some(1), .. })
        ));
        // truncated packet
        assert!(matches!(
            deframe_stream(&stream[..stream.len() - 1]),
            Err(Error::StreamCorrupt { packet: Some(1), .. })
        ));
        // missing packet
        assert!(matches!(
            deframe_stream(&stream[..stream.len() - 2]),
            Err(Error::StreamCorrupt { packet: None, .. })
        ));
        // stray padding bit
        let mut bad = stream.clone();
        *bad.last_mut().unwrap() |= 0x01;
        assert!(matches!(
            deframe_stream(&bad),
            Err(Error::StreamCorrupt { packet: Some(1), .. })
        ));
    }

    #[test]
    fn varint_values() {
        for v in [0u64, 1, 127, 128, 300, u32::MAX as u64, u64::MAX] {
            let mut buf = Vec::new();
            write_varint(v, &mut buf);
            assert_eq!(read_varint(&buf), Some((v, buf.len())));
        }
        let mut buf = Vec::new();
        write_varint(300, &mut buf);
        assert_eq!(buf, [0xac, 0x02]);
        assert_eq!(read_varint(&[0x80]), None);
        assert_eq!(read_varint(&[0xff; 10]), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bit_packing_roundtrip(b in proptest::collection::vec(any::<bool>(), 0..200)) {
                prop_assert_eq!(unpack_bits(&pack_bits(&b), b.len()), b);
            }

            #[test]
            fn stream_roundtrip(
                b in proptest::collection::vec(any::<bool>(), 0..400),
                scheme in proptest::sample::select(Scheme::ALL.to_vec()),
                k in proptest::sample::select(vec![4usize, 6, 8, 16, 34]),
            ) {
                let stream = frame_stream(&b, k, scheme, true).unwrap();
                prop_assert_eq!(deframe_stream(&stream).unwrap(), b);
            }
        }
    }
}
