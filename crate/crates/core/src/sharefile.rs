//! On-disk format for one party's shares of a data owner's input.
//!
//! Layout: magic `SPPSHARE`, version byte, ring code, `f`, `m`, party index,
//! three zero bytes, element count as u64 little-endian, then the shares as
//! `l/8`-byte little-endian integers.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::ring::RingWidth;
use crate::runtime::{PartyId, ProtocolConfig};

pub const MAGIC: &[u8; 8] = b"SPPSHARE";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareFile {
    pub width: RingWidth,
    pub frac_bits: u8,
    pub int_bits: u8,
    pub party: PartyId,
    pub shares: Vec<u128>,
}

impl ShareFile {
    pub fn new(config: &ProtocolConfig, party: PartyId, shares: Vec<u128>) -> Result<Self> {
        if party == PartyId::P2 {
            return Err(Error::Usage("the helper holds no shares".into()));
        }
        Ok(ShareFile {
            width: config.width,
            frac_bits: config.frac_bits as u8,
            int_bits: config.int_bits as u8,
            party,
            shares,
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.shares.len() * self.width.bytes());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&[
            VERSION,
            self.width.wire_code(),
            self.frac_bits,
            self.int_bits,
            self.party.index() as u8,
            0,
            0,
            0,
        ]);
        out.extend_from_slice(&(self.shares.len() as u64).to_le_bytes());
        for &s in &self.shares {
            self.width.write_le(s, &mut out);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |why: String| Error::Input(format!("share file: {why}"));
        if bytes.len() < HEADER_LEN {
            return Err(bad(format!("{} bytes is shorter than the header", bytes.len())));
        }
        if &bytes[..8] != MAGIC {
            return Err(bad("bad magic".into()));
        }
        if bytes[8] != VERSION {
            return Err(bad(format!("unsupported version {}", bytes[8])));
        }
        let width = RingWidth::from_wire_code(bytes[9]).map_err(|_| bad(format!("unknown ring code {}", bytes[9])))?;
        let party = match bytes[12] {
            0 => PartyId::P0,
            1 => PartyId::P1,
            other => return Err(bad(format!("party index {other} holds no shares"))),
        };
        if bytes[13..16] != [0, 0, 0] {
            return Err(bad("reserved bytes are not zero".into()));
        }
        let count = u64::from_le_bytes(bytes[16..24].try_into().expect("8 bytes")) as usize;
        let body = &bytes[HEADER_LEN..];
        if Some(body.len()) != count.checked_mul(width.bytes()) {
            return Err(bad(format!(
                "header declares {count} shares, body has {} bytes",
                body.len()
            )));
        }
        let shares = body.chunks_exact(width.bytes()).map(|c| width.read_le(c)).collect();
        Ok(ShareFile {
            width,
            frac_bits: bytes[10],
            int_bits: bytes[11],
            party,
            shares,
        })
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    /// True if `other` is the complementary share of the same data.
    pub fn pairs_with(&self, other: &ShareFile) -> bool {
        self.width == other.width
            && self.frac_bits == other.frac_bits
            && self.int_bits == other.int_bits
            && self.party != other.party
            && self.shares.len() == other.shares.len()
    }
}
