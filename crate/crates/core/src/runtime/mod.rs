//! Parties, transports, session setup and communication metering.

mod config;
mod frame;
mod party;
mod session;
mod transcript;
mod transport;

use std::fmt;

pub use config::{ProtocolConfig, TransportKind, DEFAULT_INT_BITS, MAX_FRAC_BITS, TRUNCATION_MARGIN_BITS};
pub use frame::{decode_frame, encode_frame, framed_len, read_frame, FrameHeader, MessageTag, FRAME_HEADER_LEN};
pub use party::{MeterMark, Party};
pub use session::{
    start_local_session, start_network_party, LocalSession, NetworkAddrs, SessionInfo, PROTOCOL_VERSION,
};
pub use transcript::SessionTranscript;
pub use transport::{ClosedTransport, LocalTransport, TcpTransport, Transport};

/// P0 and P1 hold shares; P2 is the data-free helper.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartyId {
    P0,
    P1,
    P2,
}

impl PartyId {
    pub const ALL: [PartyId; 3] = [PartyId::P0, PartyId::P1, PartyId::P2];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<PartyId> {
        PartyId::ALL.get(i).copied()
    }
}

impl fmt::Display for PartyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.index())
    }
}
