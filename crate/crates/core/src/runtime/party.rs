use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::{ChaCha20Rng, ChaCha8Rng};

use super::config::ProtocolConfig;
use super::frame::{decode_frame, encode_frame, MessageTag};
use super::transcript::SessionTranscript;
use super::transport::{ClosedTransport, Transport};
use super::PartyId;
use crate::error::{Error, Result};
use crate::fixed::FixedPointParams;
use crate::ring::RingWidth;
use crate::sharing::{zero_share_vec, PairwiseKey};

#[derive(Clone, Debug, Default)]
struct Meter {
    sent_bytes: [u64; 3],
    sent_msgs: [u64; 3],
    recv_bytes: [u64; 3],
    recv_msgs: [u64; 3],
    rounds: u64,
}

/// Snapshot of a party's counters, taken before a protocol run.
#[derive(Clone, Debug)]
pub struct MeterMark {
    meter: Meter,
    at: Instant,
}

/// One party's view of a running session: its identity, the agreed
/// configuration, its transport, and the correlated-randomness state set up
/// with its peers.
pub struct Party {
    id: PartyId,
    config: ProtocolConfig,
    fixed: FixedPointParams,
    transport: Box<dyn Transport>,
    meter: Meter,
    zero_key: Option<PairwiseKey>,
    zero_counter: u64,
    // [0]: stream shared by P0 and P2, [1]: stream shared by P1 and P2
    dealer: [Option<ChaCha8Rng>; 2],
}

impl std::fmt::Debug for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Party")
            .field("id", &self.id)
            .field("config", &self.config)
            .finish_non_exhaustive()
    }
}

impl Party {
    pub(crate) fn new(id: PartyId, config: ProtocolConfig, transport: Box<dyn Transport>) -> Result<Self> {
        config.validate()?;
        Ok(Party {
            id,
            fixed: config.fixed(),
            config,
            transport,
            meter: Meter::default(),
            zero_key: None,
            zero_counter: 0,
            dealer: [None, None],
        })
    }

    pub fn id(&self) -> PartyId {
        self.id
    }

    pub fn config(&self) -> &ProtocolConfig {
        &self.config
    }

    pub fn width(&self) -> RingWidth {
        self.config.width
    }

    pub fn fixed(&self) -> FixedPointParams {
        self.fixed
    }

    pub fn is_helper(&self) -> bool {
        self.id == PartyId::P2
    }

    /// `j` in the share formulas: 0 for P0, 1 for P1. Zero for the helper,
    /// whose local arithmetic is never used.
    pub fn j(&self) -> u128 {
        match self.id {
            PartyId::P1 => 1,
            _ => 0,
        }
    }

    /// The other primary party.
    fn primary_peer(&self) -> Result<PartyId> {
        match self.id {
            PartyId::P0 => Ok(PartyId::P1),
            PartyId::P1 => Ok(PartyId::P0),
            PartyId::P2 => Err(Error::Protocol("the helper has no primary peer".into())),
        }
    }

    pub fn send_elements(&mut self, to: PartyId, tag: MessageTag, elements: &[u128]) -> Result<()> {
        if to == PartyId::P2 && tag != MessageTag::Handshake {
            // the helper must never see anything derived from a secret
            return Err(Error::Protocol(format!(
                "helper-blindness audit: {tag} addressed to P2 from {}",
                self.id
            )));
        }
        let frame = encode_frame(tag, self.width(), elements);
        self.meter.sent_bytes[to.index()] += frame.len() as u64;
        self.meter.sent_msgs[to.index()] += 1;
        self.transport.send(to, frame)
    }

    pub fn recv_elements(&mut self, from: PartyId, tag: MessageTag) -> Result<Vec<u128>> {
        let frame = self.transport.recv(from)?;
        self.meter.recv_bytes[from.index()] += frame.len() as u64;
        self.meter.recv_msgs[from.index()] += 1;
        let (header, elements) = decode_frame(&frame)?;
        if header.tag != tag {
            return Err(Error::Protocol(format!(
                "{} expected {tag} from {from}, got {}",
                self.id, header.tag
            )));
        }
        if header.width != self.width() {
            return Err(Error::Protocol(format!(
                "{} received a {} frame from {from} in a {} session",
                self.id,
                header.width,
                self.width()
            )));
        }
        Ok(elements)
    }

    /// Sends `elements` to the other primary party and returns what it sent
    /// in the same round.
    pub(crate) fn exchange(&mut self, tag: MessageTag, elements: &[u128]) -> Result<Vec<u128>> {
        let peer = self.primary_peer()?;
        self.send_elements(peer, tag, elements)?;
        let theirs = self.recv_elements(peer, tag)?;
        if theirs.len() != elements.len() {
            return Err(Error::Protocol(format!(
                "{tag}: sent {} elements, {peer} sent {}",
                elements.len(),
                theirs.len()
            )));
        }
        self.meter.rounds += 1;
        Ok(theirs)
    }

    /// `n` elements from the stream `primary` shares with the helper.
    pub(crate) fn dealer_draw(&mut self, primary: PartyId, n: usize) -> Vec<u128> {
        let width = self.width();
        let rng = self.dealer[primary.index()]
            .as_mut()
            .unwrap_or_else(|| panic!("{primary}/P2 stream is not available here"));
        width.random_vec(rng, n)
    }

    /// Fresh zero shares from the P0/P1 key; the helper gets zeros.
    pub fn next_zero_shares(&mut self, n: usize) -> Vec<u128> {
        match &self.zero_key {
            Some(key) if !self.is_helper() => {
                let out = zero_share_vec(key, self.zero_counter, n, self.j() as u8, self.width());
                self.zero_counter += n as u64;
                out
            }
            _ => vec![0; n],
        }
    }

    /// Closes every link. Peers blocked on this party see a transport error
    /// instead of waiting forever.
    pub fn shutdown(&mut self) {
        self.transport = Box::new(ClosedTransport);
    }

    pub fn mark(&self) -> MeterMark {
        MeterMark {
            meter: self.meter.clone(),
            at: Instant::now(),
        }
    }

    /// This party's outgoing traffic and rounds since `mark`.
    pub fn transcript_since(&self, mark: &MeterMark) -> SessionTranscript {
        let mut t = SessionTranscript::default();
        let me = self.id.index();
        for to in 0..3 {
            t.bytes[me][to] = self.meter.sent_bytes[to] - mark.meter.sent_bytes[to];
            t.messages[me][to] = self.meter.sent_msgs[to] - mark.meter.sent_msgs[to];
        }
        t.rounds = self.meter.rounds - mark.meter.rounds;
        t.wall = mark.at.elapsed();
        t
    }

    /// Bytes received from each peer since session setup.
    pub fn received_bytes(&self) -> [u64; 3] {
        self.meter.recv_bytes
    }

    pub fn rounds(&self) -> u64 {
        self.meter.rounds
    }

    /// Distributes pairwise keys: P0 samples the P0/P1 key, the helper samples
    /// one key per primary party. The helper receives nothing.
    pub(crate) fn establish_keys(&mut self) -> Result<()> {
        let mut rng = ChaCha20Rng::seed_from_u64(self.config.seed);
        rng.set_stream(1 + self.id.index() as u64);
        match self.id {
            PartyId::P0 => {
                let k01 = PairwiseKey::random(&mut rng);
                self.send_key(PartyId::P1, &k01)?;
                let k02 = self.recv_key(PartyId::P2)?;
                self.zero_key = Some(k01);
                self.dealer[0] = Some(ChaCha8Rng::from_seed(k02.0));
            }
            PartyId::P1 => {
                let k01 = self.recv_key(PartyId::P0)?;
                let k12 = self.recv_key(PartyId::P2)?;
                self.zero_key = Some(k01);
                self.dealer[1] = Some(ChaCha8Rng::from_seed(k12.0));
            }
            PartyId::P2 => {
                let k02 = PairwiseKey::random(&mut rng);
                let k12 = PairwiseKey::random(&mut rng);
                self.send_key(PartyId::P0, &k02)?;
                self.send_key(PartyId::P1, &k12)?;
                self.dealer[0] = Some(ChaCha8Rng::from_seed(k02.0));
                self.dealer[1] = Some(ChaCha8Rng::from_seed(k12.0));
            }
        }
        self.meter = Meter::default();
        Ok(())
    }

    fn send_key(&mut self, to: PartyId, key: &PairwiseKey) -> Result<()> {
        let width = self.width();
        let words: Vec<u128> = key.0.chunks(width.bytes()).map(|c| width.read_le(c)).collect();
        self.send_elements(to, MessageTag::KeySetup, &words)
    }

    fn recv_key(&mut self, from: PartyId) -> Result<PairwiseKey> {
        let width = self.width();
        let words = self.recv_elements(from, MessageTag::KeySetup)?;
        let mut bytes = Vec::with_capacity(32);
        for w in words {
            width.write_le(w, &mut bytes);
        }
        let key: [u8; 32] = bytes
            .try_into()
            .map_err(|_| Error::Protocol(format!("key from {from} is not 32 bytes")))?;
        Ok(PairwiseKey(key))
    }
}
