//! Wire framing.
//!
//! ```text
//! byte 0      message tag
//! byte 1      ring code (0 = 64-bit, 1 = 128-bit)
//! bytes 2..4  reserved, zero
//! bytes 4..12 payload length in bytes, little-endian u64
//! bytes 12..  payload: little-endian ring elements, l/8 bytes each
//! ```

use std::fmt;
use std::io::Read;

use crate::error::{Error, Result};
use crate::ring::RingWidth;

pub const FRAME_HEADER_LEN: usize = 12;

/// Message-type registry. Every primitive sends under its own tag so a
/// receiver can reject out-of-sequence frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum MessageTag {
    /// Session parameters, exchanged once per link before any protocol.
    Handshake = 0x01,
    /// Pairwise common-randomness key, sent once at session setup.
    KeySetup = 0x02,
    /// Masked operands `E = X - A`, `F = Y - B` opened between P0 and P1.
    MulOpen = 0x10,
    /// Helper's correction share `C_1 = A*B - C_0` of a multiplication triple.
    TripleCorrection = 0x11,
    /// Masked value `c = a - r` opened between P0 and P1.
    BitDecompOpen = 0x20,
    /// Helper's correction shares for the bits of the mask `r`.
    BitDecompDeal = 0x21,
}

impl MessageTag {
    pub const ALL: [MessageTag; 6] = [
        MessageTag::Handshake,
        MessageTag::KeySetup,
        MessageTag::MulOpen,
        MessageTag::TripleCorrection,
        MessageTag::BitDecompOpen,
        MessageTag::BitDecompDeal,
    ];

    pub fn from_byte(b: u8) -> Result<Self> {
        MessageTag::ALL
            .into_iter()
            .find(|t| *t as u8 == b)
            .ok_or_else(|| Error::Protocol(format!("unknown message tag 0x{b:02x}")))
    }
}

impl fmt::Display for MessageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}(0x{:02x})", *self as u8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameHeader {
    pub tag: MessageTag,
    pub width: RingWidth,
    pub payload_len: u64,
}

impl FrameHeader {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < FRAME_HEADER_LEN {
            return Err(Error::Protocol(format!(
                "truncated frame header: {} of {FRAME_HEADER_LEN} bytes",
                bytes.len()
            )));
        }
        let tag = MessageTag::from_byte(bytes[0])?;
        let width = RingWidth::from_wire_code(bytes[1])?;
        if bytes[2] != 0 || bytes[3] != 0 {
            return Err(Error::Protocol("reserved header bytes are not zero".into()));
        }
        let payload_len = u64::from_le_bytes(bytes[4..12].try_into().expect("8 bytes"));
        Ok(FrameHeader {
            tag,
            width,
            payload_len,
        })
    }
}

/// Framed size of `count` elements.
pub fn framed_len(count: usize, width: RingWidth) -> usize {
    FRAME_HEADER_LEN + count * width.bytes()
}

pub fn encode_frame(tag: MessageTag, width: RingWidth, elements: &[u128]) -> Vec<u8> {
    let mut out = Vec::with_capacity(framed_len(elements.len(), width));
    out.push(tag as u8);
    out.push(width.wire_code());
    out.extend_from_slice(&[0, 0]);
    out.extend_from_slice(&((elements.len() * width.bytes()) as u64).to_le_bytes());
    for &e in elements {
        width.write_le(e, &mut out);
    }
    out
}

/// Decodes a complete frame, returning its header and elements.
pub fn decode_frame(bytes: &[u8]) -> Result<(FrameHeader, Vec<u128>)> {
    let header = FrameHeader::parse(bytes)?;
    let payload = &bytes[FRAME_HEADER_LEN..];
    if payload.len() as u64 != header.payload_len {
        return Err(Error::Protocol(format!(
            "truncated frame: header announces {} payload bytes, got {}",
            header.payload_len,
            payload.len()
        )));
    }
    let size = header.width.bytes();
    if !payload.len().is_multiple_of(size) {
        return Err(Error::Protocol(format!(
            "payload of {} bytes is not a whole number of {}-byte elements",
            payload.len(),
            size
        )));
    }
    let elements = payload
        .chunks_exact(size)
        .map(|c| header.width.read_le(c))
        .collect();
    Ok((header, elements))
}

/// Reads one frame (header plus payload) from a byte stream.
pub fn read_frame<R: Read>(reader: &mut R) -> std::io::Result<Vec<u8>> {
    let mut buf = vec![0u8; FRAME_HEADER_LEN];
    reader.read_exact(&mut buf)?;
    let len = u64::from_le_bytes(buf[4..12].try_into().expect("8 bytes"));
    let len = usize::try_from(len).map_err(|_| {
        std::io::Error::new(std::io::ErrorKind::InvalidData, "frame length overflows usize")
    })?;
    buf.resize(FRAME_HEADER_LEN + len, 0);
    reader.read_exact(&mut buf[FRAME_HEADER_LEN..])?;
    Ok(buf)
}
