//! Arithmetic in `Z_{2^l}` for a session-selected width `l`.
//!
//! Elements are stored in a `u128` word and reduced with a width mask after
//! every operation, so the same binary runs the 64-bit and 128-bit rings. The
//! 16-bit ring exists for exhaustive tests of the sharing layer.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingWidth {
    /// Reduced test ring.
    W16,
    W64,
    W128,
}

impl RingWidth {
    pub const fn bits(self) -> u32 {
        match self {
            RingWidth::W16 => 16,
            RingWidth::W64 => 64,
            RingWidth::W128 => 128,
        }
    }

    pub const fn bytes(self) -> usize {
        self.bits() as usize / 8
    }

    #[inline]
    pub const fn mask(self) -> u128 {
        match self {
            RingWidth::W16 => 0xffff,
            RingWidth::W64 => u64::MAX as u128,
            RingWidth::W128 => u128::MAX,
        }
    }

    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            16 => Ok(RingWidth::W16),
            64 => Ok(RingWidth::W64),
            128 => Ok(RingWidth::W128),
            other => Err(Error::Config(format!(
                "unsupported ring width {other}; expected 64 or 128"
            ))),
        }
    }

    /// Ring code carried in frame and share-file headers.
    pub const fn wire_code(self) -> u8 {
        match self {
            RingWidth::W64 => 0,
            RingWidth::W128 => 1,
            RingWidth::W16 => 2,
        }
    }

    pub fn from_wire_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(RingWidth::W64),
            1 => Ok(RingWidth::W128),
            2 => Ok(RingWidth::W16),
            other => Err(Error::Protocol(format!("unknown ring code {other}"))),
        }
    }

    #[inline]
    pub fn reduce(self, v: u128) -> u128 {
        v & self.mask()
    }

    #[inline]
    pub fn add(self, a: u128, b: u128) -> u128 {
        a.wrapping_add(b) & self.mask()
    }

    #[inline]
    pub fn sub(self, a: u128, b: u128) -> u128 {
        a.wrapping_sub(b) & self.mask()
    }

    #[inline]
    pub fn mul(self, a: u128, b: u128) -> u128 {
        a.wrapping_mul(b) & self.mask()
    }

    #[inline]
    pub fn neg(self, a: u128) -> u128 {
        a.wrapping_neg() & self.mask()
    }

    #[inline]
    pub fn shl(self, a: u128, shift: u32) -> u128 {
        if shift >= 128 {
            0
        } else {
            (a << shift) & self.mask()
        }
    }

    /// Two's-complement view of a reduced word.
    #[inline]
    pub fn to_signed(self, v: u128) -> i128 {
        let pad = 128 - self.bits();
        ((v << pad) as i128) >> pad
    }

    #[inline]
    pub fn from_signed(self, v: i128) -> u128 {
        (v as u128) & self.mask()
    }

    /// Bit `l - 1`.
    #[inline]
    pub fn msb(self, v: u128) -> u128 {
        (v >> (self.bits() - 1)) & 1
    }

    /// Little-endian, exactly `l / 8` bytes.
    #[inline]
    pub fn write_le(self, v: u128, out: &mut Vec<u8>) {
        match self {
            RingWidth::W64 => out.extend_from_slice(&(v as u64).to_le_bytes()),
            RingWidth::W128 => out.extend_from_slice(&v.to_le_bytes()),
            RingWidth::W16 => out.extend_from_slice(&(v as u16).to_le_bytes()),
        }
    }

    /// Reads exactly `l / 8` bytes; panics on any other length.
    #[inline]
    pub fn read_le(self, bytes: &[u8]) -> u128 {
        match self {
            RingWidth::W64 => u64::from_le_bytes(bytes.try_into().expect("8 bytes")) as u128,
            RingWidth::W128 => u128::from_le_bytes(bytes.try_into().expect("16 bytes")),
            RingWidth::W16 => u16::from_le_bytes(bytes.try_into().expect("2 bytes")) as u128,
        }
    }

    /// `n` uniform elements from one bulk draw of `rng`.
    pub fn random_vec<R: rand::RngCore + ?Sized>(self, rng: &mut R, n: usize) -> Vec<u128> {
        let mut buf = vec![0u8; n * self.bytes()];
        rng.fill_bytes(&mut buf);
        buf.chunks_exact(self.bytes()).map(|c| self.read_le(c)).collect()
    }
}

impl fmt::Display for RingWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_2^{}", self.bits())
    }
}

/// An element of `Z_{2^l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    value: u128,
    width: RingWidth,
}

impl RingElement {
    pub fn new(value: u128, width: RingWidth) -> Self {
        RingElement {
            value: width.reduce(value),
            width,
        }
    }

    pub fn zero(width: RingWidth) -> Self {
        RingElement { value: 0, width }
    }

    pub fn from_signed(value: i128, width: RingWidth) -> Self {
        RingElement {
            value: width.from_signed(value),
            width,
        }
    }

    pub fn value(self) -> u128 {
        self.value
    }

    pub fn width(self) -> RingWidth {
        self.width
    }

    pub fn to_signed(self) -> i128 {
        self.width.to_signed(self.value)
    }

    pub fn to_le_bytes(self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.width.bytes());
        self.width.write_le(self.value, &mut out);
        out
    }

    pub fn from_le_bytes(bytes: &[u8], width: RingWidth) -> Result<Self> {
        if bytes.len() != width.bytes() {
            return Err(Error::Protocol(format!(
                "expected {} bytes for a {width} element, got {}",
                width.bytes(),
                bytes.len()
            )));
        }
        Ok(RingElement::new(width.read_le(bytes), width))
    }

    fn check_width(self, other: RingElement) {
        assert_eq!(
            self.width, other.width,
            "ring elements of different widths cannot be combined"
        );
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        self.check_width(rhs);
        RingElement {
            value: self.width.add(self.value, rhs.value),
            width: self.width,
        }
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        self.check_width(rhs);
        RingElement {
            value: self.width.sub(self.value, rhs.value),
            width: self.width,
        }
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        self.check_width(rhs);
        RingElement {
            value: self.width.mul(self.value, rhs.value),
            width: self.width,
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            value: self.width.neg(self.value),
            width: self.width,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wraps_instead_of_trapping() {
        let w = RingWidth::W64;
        let max = RingElement::new(u64::MAX as u128, w);
        let one = RingElement::new(1, w);
        assert_eq!((max + one).value(), 0);
        assert_eq!((RingElement::zero(w) - one).value(), u64::MAX as u128);
        assert_eq!((max * max).value(), 1);

        let w = RingWidth::W128;
        let max = RingElement::new(u128::MAX, w);
        assert_eq!((max + RingElement::new(1, w)).value(), 0);
        assert_eq!((-RingElement::new(1, w)).value(), u128::MAX);
    }

    #[test]
    #[should_panic(expected = "different widths")]
    fn mixed_widths_panic() {
        let _ = RingElement::new(1, RingWidth::W64) + RingElement::new(1, RingWidth::W128);
    }

    #[test]
    fn signed_view() {
        let w = RingWidth::W64;
        assert_eq!(w.to_signed(u64::MAX as u128), -1);
        assert_eq!(w.to_signed(1 << 63), -(1i128 << 63));
        assert_eq!(w.from_signed(-8192), (1u128 << 64) - 8192);
        assert_eq!(RingWidth::W16.to_signed(0x8000), -32768);
        assert_eq!(RingWidth::W128.to_signed(u128::MAX), -1);
    }

    #[test]
    fn serialization_is_little_endian_and_width_sized() {
        let e = RingElement::new(0x0102, RingWidth::W64);
        assert_eq!(e.to_le_bytes(), vec![2, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(RingElement::new(7, RingWidth::W128).to_le_bytes().len(), 16);
        assert!(RingElement::from_le_bytes(&[0; 7], RingWidth::W64).is_err());
    }

    proptest! {
        #[test]
        fn ops_match_native_u64(a: u64, b: u64) {
            let w = RingWidth::W64;
            let (x, y) = (RingElement::new(a as u128, w), RingElement::new(b as u128, w));
            prop_assert_eq!((x + y).value(), a.wrapping_add(b) as u128);
            prop_assert_eq!((x - y).value(), a.wrapping_sub(b) as u128);
            prop_assert_eq!((x * y).value(), a.wrapping_mul(b) as u128);
            let bytes = x.to_le_bytes();
            prop_assert_eq!(RingElement::from_le_bytes(&bytes, w).unwrap(), x);
        }
    }
}
