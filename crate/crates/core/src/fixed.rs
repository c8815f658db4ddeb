//! Fixed-point codec: a real `x` is stored as `floor(x * 2^f)` in the ring,
//! negative values in two's complement.

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingWidth};

pub const DEFAULT_FRAC_BITS: u32 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedPointParams {
    frac_bits: u32,
    width: RingWidth,
}

impl FixedPointParams {
    /// Requires `0 < f < l/2` so one product fits before truncation.
    pub fn new(frac_bits: u32, width: RingWidth) -> Result<Self> {
        if frac_bits == 0 || 2 * frac_bits >= width.bits() {
            return Err(Error::Config(format!(
                "fractional bits must satisfy 0 < f < l/2, got f = {frac_bits} for l = {}",
                width.bits()
            )));
        }
        Ok(FixedPointParams { frac_bits, width })
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn width(&self) -> RingWidth {
        self.width
    }

    /// Raw encoding of 1.0.
    pub fn one(&self) -> u128 {
        1u128 << self.frac_bits
    }

    pub fn ulp(&self) -> f64 {
        (-(self.frac_bits as f64)).exp2()
    }

    /// Largest encodable magnitude, `2^(l-1-f) - 1`.
    pub fn max_abs(&self) -> f64 {
        (self.width.bits() as f64 - 1.0 - self.frac_bits as f64).exp2() - 1.0
    }

    pub fn encode(&self, x: f64) -> Result<FixedPointValue> {
        if !x.is_finite() || x.abs() > self.max_abs() {
            return Err(Error::Range(format!(
                "{x} is outside +/-{} for f = {}, l = {}",
                self.max_abs(),
                self.frac_bits,
                self.width.bits()
            )));
        }
        let scaled = (x * self.frac_bits_scale()).floor() as i128;
        Ok(FixedPointValue {
            raw: RingElement::from_signed(scaled, self.width),
        })
    }

    pub fn decode(&self, v: FixedPointValue) -> f64 {
        self.decode_raw(v.raw.value())
    }

    pub fn decode_raw(&self, raw: u128) -> f64 {
        self.width.to_signed(raw) as f64 / self.frac_bits_scale()
    }

    pub fn encode_raw(&self, x: f64) -> Result<u128> {
        self.encode(x).map(|v| v.raw.value())
    }

    fn frac_bits_scale(&self) -> f64 {
        (self.frac_bits as f64).exp2()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedPointValue {
    pub raw: RingElement,
}

pub fn encode_fixed(x: f64, params: &FixedPointParams) -> Result<FixedPointValue> {
    params.encode(x)
}

pub fn decode_fixed(v: FixedPointValue, params: &FixedPointParams) -> f64 {
    params.decode(v)
}
