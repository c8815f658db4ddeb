//! End-to-end runs on plaintext inputs: a data owner encodes and shares the
//! inputs, the three parties evaluate a protocol over the configured
//! transport, and the output shares are reconstructed and decoded.

use std::net::{SocketAddr, TcpListener};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::primitives::SharedMatrix;
use crate::protocol::Protocol;
use crate::runtime::{
    start_local_session, start_network_party, NetworkAddrs, PartyId, ProtocolConfig, SessionInfo,
    SessionTranscript, TransportKind,
};
use crate::sharing::{reconstruct_vec, share_vec};

/// A plaintext real matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PlainMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl PlainMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Usage(format!(
                "{rows}x{cols} matrix needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(PlainMatrix { rows, cols, data })
    }

    pub fn row(data: Vec<f64>) -> Self {
        PlainMatrix {
            rows: 1,
            cols: data.len(),
            data,
        }
    }

    /// Uniform samples from `[lo, hi)`.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, lo: f64, hi: f64, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(lo..hi)).collect();
        PlainMatrix { rows, cols, data }
    }
}

/// Reconstructed output and session metering of one run.
#[derive(Clone, Debug)]
pub struct SimOutcome {
    pub output: PlainMatrix,
    /// Reconstructed ring elements before decoding.
    pub raw: Vec<u128>,
    pub transcript: SessionTranscript,
}

/// Random inputs for `protocol` over its input domain under `config`.
pub fn random_inputs(
    protocol: Protocol,
    config: &ProtocolConfig,
    rows: usize,
    cols: usize,
    seed: u64,
) -> Vec<PlainMatrix> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    protocol
        .input_shapes(rows, cols)
        .into_iter()
        .zip(protocol.input_domain(config, cols))
        .map(|((r, c), (lo, hi))| PlainMatrix::random(r, c, lo, hi, &mut rng))
        .collect()
}

/// The data owner's step: encodes every input and splits it into P0's and
/// P1's shares, drawing masks from a stream of `config.seed` that the key
/// setup does not use.
pub fn share_inputs(config: &ProtocolConfig, inputs: &[PlainMatrix]) -> Result<[Vec<SharedMatrix>; 2]> {
    let fixed = config.fixed();
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    rng.set_stream(0);
    let mut s0 = Vec::with_capacity(inputs.len());
    let mut s1 = Vec::with_capacity(inputs.len());
    for m in inputs {
        let raw = m
            .data
            .iter()
            .map(|&x| fixed.encode_raw(x))
            .collect::<Result<Vec<_>>>()?;
        let (a, b) = share_vec(&raw, config.width, &mut rng);
        s0.push(SharedMatrix::new(m.rows, m.cols, true, a)?);
        s1.push(SharedMatrix::new(m.rows, m.cols, true, b)?);
    }
    Ok([s0, s1])
}

/// Runs `protocol` on `inputs` with three parties over `config.transport`.
pub fn simulate(config: &ProtocolConfig, protocol: Protocol, inputs: &[PlainMatrix]) -> Result<SimOutcome> {
    config.validate()?;
    if inputs.len() != protocol.arity() {
        return Err(Error::Usage(format!(
            "{protocol} takes {} input(s), got {}",
            protocol.arity(),
            inputs.len()
        )));
    }
    let [s0, s1] = share_inputs(config, inputs)?;
    let helper: Vec<SharedMatrix> = inputs
        .iter()
        .map(|m| SharedMatrix::placeholder(m.rows, m.cols, true))
        .collect();
    let per_party = [s0, s1, helper];
    let results = match config.transport {
        TransportKind::Local => run_local(config, protocol, &per_party)?,
        TransportKind::Tcp => run_tcp(config, protocol, &per_party)?,
    };
    let [(o0, t0), (o1, t1), (_, t2)] = results;
    let raw = reconstruct_vec(&o0.data, &o1.data, config.width)?;
    let fixed = config.fixed();
    let data = raw.iter().map(|&r| fixed.decode_raw(r)).collect();
    Ok(SimOutcome {
        output: PlainMatrix::new(o0.rows, o0.cols, data)?,
        raw,
        transcript: SessionTranscript::merge([&t0, &t1, &t2]),
    })
}

type PartyResult = (SharedMatrix, SessionTranscript);

fn run_local(
    config: &ProtocolConfig,
    protocol: Protocol,
    inputs: &[Vec<SharedMatrix>; 3],
) -> Result<[PartyResult; 3]> {
    let mut session = start_local_session(config)?;
    session.run(|party| {
        let mark = party.mark();
        let out = protocol.run(party, &inputs[party.id().index()])?;
        Ok((out, party.transcript_since(&mark)))
    })
}

fn run_tcp(
    config: &ProtocolConfig,
    protocol: Protocol,
    inputs: &[Vec<SharedMatrix>; 3],
) -> Result<[PartyResult; 3]> {
    let addrs = NetworkAddrs::new(free_loopback_addr()?, free_loopback_addr()?);
    let (rows, cols) = (inputs[0][0].rows as u64, inputs[0][0].cols as u64);
    let results: Vec<Result<PartyResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = PartyId::ALL
            .iter()
            .map(|&role| {
                let addrs = addrs.clone();
                s.spawn(move || {
                    let info = SessionInfo {
                        protocol_id: protocol.id(),
                        rows,
                        cols,
                    };
                    let (mut party, _) = start_network_party(config, role, &addrs, info)?;
                    let mark = party.mark();
                    let out = protocol.run(&mut party, &inputs[role.index()])?;
                    Ok((out, party.transcript_since(&mark)))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("party thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(3);
    for r in results {
        out.push(r?);
    }
    Ok(out.try_into().expect("three results"))
}

/// A loopback address with a port that was free a moment ago.
pub fn free_loopback_addr() -> Result<SocketAddr> {
    let listener = TcpListener::bind("127.0.0.1:0")?;
    Ok(listener.local_addr()?)
}
