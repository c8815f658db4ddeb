//! Three-party secure evaluation of exponentiation-based activation functions
//! over 2-out-of-2 additively shared fixed-point data.
//!
//! P0 and P1 hold additive shares in `Z_{2^l}` (`l` = 64 or 128); P2 is a
//! data-free helper that deals correlated randomness. On top of secure
//! multiplication, truncation, bit decomposition, prefix multiplication,
//! comparison and long division, the crate evaluates `e^x` (integer part via
//! bit decomposition and a table of `e^(2^i)`, fractional part via a five-term
//! Taylor series), the logistic sigmoid, tanh, their derivatives and softmax.

pub mod activations;
pub mod error;
pub mod fixed;
pub mod oracle;
pub mod primitives;
pub mod protocol;
pub mod ring;
pub mod runtime;
pub mod sharefile;
pub mod sharing;
pub mod sim;

pub use error::{Error, Result};
pub use fixed::{decode_fixed, encode_fixed, FixedPointParams, FixedPointValue};
pub use protocol::Protocol;
pub use ring::{RingElement, RingWidth};
pub use runtime::{
    start_local_session, start_network_party, Party, PartyId, ProtocolConfig, SessionTranscript,
    TransportKind,
};
pub use sharing::{reconstruct, share, zero_shares, PairwiseKey, Share};
