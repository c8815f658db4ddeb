use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fixed::{FixedPointParams, DEFAULT_FRAC_BITS};
use crate::ring::RingWidth;

pub const DEFAULT_INT_BITS: u32 = 5;
pub const MAX_FRAC_BITS: u32 = 20;

/// Bits of headroom kept between a pre-truncation product and `2^(l-1)`.
/// Local share truncation fails with probability about `|product| / 2^(l-1)`,
/// so the safe input domains below keep that under `2^-20` per element.
pub const TRUNCATION_MARGIN_BITS: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TransportKind {
    #[default]
    Local,
    Tcp,
}

impl FromStr for TransportKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "local" => Ok(TransportKind::Local),
            "tcp" => Ok(TransportKind::Tcp),
            other => Err(Error::Usage(format!(
                "unknown transport '{other}', expected local or tcp"
            ))),
        }
    }
}

impl fmt::Display for TransportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransportKind::Local => "local",
            TransportKind::Tcp => "tcp",
        })
    }
}

/// Session-wide parameters every party must agree on.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolConfig {
    pub width: RingWidth,
    /// Fractional bits `f`.
    pub frac_bits: u32,
    /// Integer-bit budget `m` of the exponentiation input.
    pub int_bits: u32,
    pub transport: TransportKind,
    /// Root seed for key sampling and the data-owner sharing RNG.
    pub seed: u64,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            width: RingWidth::W64,
            frac_bits: DEFAULT_FRAC_BITS,
            int_bits: DEFAULT_INT_BITS,
            transport: TransportKind::Local,
            seed: 0,
        }
    }
}

impl ProtocolConfig {
    pub fn with_width(mut self, width: RingWidth) -> Self {
        self.width = width;
        self
    }

    pub fn with_int_bits(mut self, m: u32) -> Self {
        self.int_bits = m;
        self
    }

    pub fn with_frac_bits(mut self, f: u32) -> Self {
        self.frac_bits = f;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_transport(mut self, transport: TransportKind) -> Self {
        self.transport = transport;
        self
    }

    pub fn fixed(&self) -> FixedPointParams {
        FixedPointParams::new(self.frac_bits, self.width)
            .expect("fixed-point parameters are checked by validate()")
    }

    /// Checks `1 <= f <= 20`, `f < l/2`, `m >= 1`, and that `e^(2^m)` (the
    /// supremum of `e^x` on `[0, 2^m)`) is encodable.
    pub fn validate(&self) -> Result<()> {
        if self.width == RingWidth::W16 {
            return Err(Error::Config(
                "the 16-bit ring is a sharing test ring; protocols need l = 64 or 128".into(),
            ));
        }
        if !(1..=MAX_FRAC_BITS).contains(&self.frac_bits) {
            return Err(Error::Config(format!(
                "precision f = {} outside 1..={MAX_FRAC_BITS}",
                self.frac_bits
            )));
        }
        let fixed = FixedPointParams::new(self.frac_bits, self.width)?;
        if self.int_bits == 0 {
            return Err(Error::Config("integer-bit budget m must be at least 1".into()));
        }
        let exp_sup = if self.int_bits >= 63 {
            f64::INFINITY
        } else {
            (1u64 << self.int_bits) as f64
        };
        if exp_sup > fixed.max_abs().ln() {
            return Err(Error::Config(format!(
                "e^(2^{m}) is not encodable with f = {f} in a {l}-bit ring (m = {m} too large)",
                m = self.int_bits,
                f = self.frac_bits,
                l = self.width.bits()
            )));
        }
        Ok(())
    }

    /// Upper end of the input interval on which exponentiation stays clear of
    /// ring overflow and truncation failure: `min(2^m, ln 2 * (l - 1 - margin - 2f))`.
    pub fn exp_domain(&self) -> f64 {
        let headroom = self.width.bits() as f64
            - 1.0
            - TRUNCATION_MARGIN_BITS as f64
            - 2.0 * self.frac_bits as f64;
        let by_ring = headroom * std::f64::consts::LN_2;
        let by_bits = (self.int_bits.min(62) as f64).exp2();
        by_bits.min(by_ring).max(0.0)
    }

    /// Sigmoid also needs the division operands to satisfy the comparison
    /// precondition: `(1 + e^x) * 2^(3f - 1) < 2^(l-2)`.
    pub fn sigmoid_domain(&self) -> f64 {
        self.exp_domain()
            .min((self.division_denominator_bound() - 1.0).max(1.0).ln())
    }

    pub fn tanh_domain(&self) -> f64 {
        self.sigmoid_domain() / 2.0
    }

    /// Per-element bound for a softmax row of `k` entries.
    pub fn softmax_domain(&self, k: usize) -> f64 {
        let bound = self.division_denominator_bound() / k.max(1) as f64;
        self.exp_domain().min(bound.ln().max(0.0))
    }

    /// Largest real denominator the long division accepts.
    pub fn division_denominator_bound(&self) -> f64 {
        (self.width.bits() as f64 - 1.0 - 3.0 * self.frac_bits as f64).exp2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let c = ProtocolConfig::default();
        c.validate().unwrap();
        assert_eq!((c.width, c.frac_bits, c.int_bits), (RingWidth::W64, 13, 5));
    }

    #[test]
    fn oversized_int_budget_is_rejected() {
        let c = ProtocolConfig::default().with_int_bits(20);
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        assert!(ProtocolConfig::default().with_int_bits(0).validate().is_err());
    }

    #[test]
    fn wider_ring_widens_exp_budget() {
        let narrow = ProtocolConfig::default().with_int_bits(6);
        assert!(narrow.validate().is_err());
        let wide = narrow.clone().with_width(RingWidth::W128);
        wide.validate().unwrap();
        assert!(wide.exp_domain() > ProtocolConfig::default().exp_domain());
    }

    #[test]
    fn precision_limits() {
        assert!(ProtocolConfig::default().with_frac_bits(21).validate().is_err());
        assert!(ProtocolConfig::default().with_frac_bits(0).validate().is_err());
        ProtocolConfig::default().with_frac_bits(20).with_int_bits(3).validate().unwrap();
        assert!(ProtocolConfig::default().with_width(RingWidth::W16).validate().is_err());
    }

    #[test]
    fn domains_at_defaults() {
        let c = ProtocolConfig::default();
        // 17 bits of headroom at l = 64, f = 13
        assert!((c.exp_domain() - 17.0 * std::f64::consts::LN_2).abs() < 1e-12);
        assert!(c.sigmoid_domain() <= c.exp_domain());
        assert!(c.sigmoid_domain() > 4.0);
        assert_eq!(ProtocolConfig::default().with_int_bits(3).exp_domain(), 8.0);
    }
}
