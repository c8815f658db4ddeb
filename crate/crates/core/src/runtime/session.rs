//! Session setup: the in-process simulator and the networked deployment.

use std::io::Write;
use std::panic::AssertUnwindSafe;
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::time::{Duration, Instant};

use super::config::ProtocolConfig;
use super::frame::{decode_frame, encode_frame, read_frame, MessageTag};
use super::party::Party;
use super::transport::{LocalTransport, TcpTransport};
use super::PartyId;
use crate::error::{Error, Result};

pub const PROTOCOL_VERSION: u128 = 1;

/// Three parties wired P0<->P1, P0<->P2, P1<->P2 over in-process channels.
#[derive(Debug)]
pub struct LocalSession {
    parties: [Party; 3],
}

pub fn start_local_session(config: &ProtocolConfig) -> Result<LocalSession> {
    config.validate()?;
    let [t0, t1, t2] = LocalTransport::mesh();
    let mut p0 = Party::new(PartyId::P0, config.clone(), Box::new(t0))?;
    let mut p1 = Party::new(PartyId::P1, config.clone(), Box::new(t1))?;
    let mut p2 = Party::new(PartyId::P2, config.clone(), Box::new(t2))?;
    // local sends never block, so the setup can run sequentially
    p2.establish_keys()?;
    p0.establish_keys()?;
    p1.establish_keys()?;
    Ok(LocalSession {
        parties: [p0, p1, p2],
    })
}

impl LocalSession {
    pub fn parties(&self) -> &[Party; 3] {
        &self.parties
    }

    pub fn into_parties(self) -> [Party; 3] {
        self.parties
    }

    /// Runs `f` on each party in its own thread and returns the three results
    /// in party order. The first error wins. A party whose `f` fails or
    /// panics is shut down so the others do not wait on it; the session is
    /// unusable afterwards.
    pub fn run<F, R>(&mut self, f: F) -> Result<[R; 3]>
    where
        F: Fn(&mut Party) -> Result<R> + Sync,
        R: Send,
    {
        let f = &f;
        let outcomes: Vec<std::thread::Result<Result<R>>> = std::thread::scope(|s| {
            let handles: Vec<_> = self
                .parties
                .iter_mut()
                .map(|p| {
                    s.spawn(move || {
                        let r = std::panic::catch_unwind(AssertUnwindSafe(|| f(p)));
                        if !matches!(r, Ok(Ok(_))) {
                            p.shutdown();
                        }
                        r
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("party thread panicked outside the protocol"))
                .collect()
        });
        let mut results = Vec::with_capacity(3);
        for o in outcomes {
            match o {
                Ok(r) => results.push(r),
                Err(panic) => std::panic::resume_unwind(panic),
            }
        }
        let mut out = Vec::with_capacity(3);
        for r in results {
            out.push(r?);
        }
        Ok(out.try_into().ok().expect("three results"))
    }
}

/// Public session metadata agreed in the networked handshake.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SessionInfo {
    pub protocol_id: u8,
    /// Input shape; the helper sends zeros and adopts P0's.
    pub rows: u64,
    pub cols: u64,
}

#[derive(Clone, Debug)]
pub struct NetworkAddrs {
    /// P0 listens here; P1 and P2 connect.
    pub peer0: SocketAddr,
    /// P1 listens here; P2 connects.
    pub peer1: SocketAddr,
    pub timeout: Duration,
}

impl NetworkAddrs {
    pub fn new(peer0: SocketAddr, peer1: SocketAddr) -> Self {
        NetworkAddrs {
            peer0,
            peer1,
            timeout: Duration::from_secs(10),
        }
    }
}

/// Joins a networked session as `role`, performing the parameter handshake
/// with each peer and the key setup. Returns the party handle and the
/// session metadata (the helper learns the input shape here).
pub fn start_network_party(
    config: &ProtocolConfig,
    role: PartyId,
    addrs: &NetworkAddrs,
    info: SessionInfo,
) -> Result<(Party, SessionInfo)> {
    config.validate()?;
    let hello = Handshake::new(config, role, info);
    let mut agreed = info;
    let mut streams = Vec::new();
    match role {
        PartyId::P0 => {
            let listener = bind(addrs.peer0, role)?;
            for _ in 0..2 {
                let mut stream = accept(&listener, addrs.timeout, "P1/P2")?;
                let theirs = Handshake::read(&mut stream, None)?;
                hello.write(&mut stream, theirs.party)?;
                hello.check(&theirs)?;
                if streams.iter().any(|(p, _)| *p == theirs.party) || theirs.party == PartyId::P0 {
                    return Err(Error::Handshake {
                        peer: theirs.party,
                        reason: "duplicate or invalid party identity".into(),
                    });
                }
                streams.push((theirs.party, stream));
            }
        }
        PartyId::P1 => {
            let listener = bind(addrs.peer1, role)?;
            let mut to_p0 = connect(addrs.peer0, PartyId::P0, addrs.timeout)?;
            hello.write(&mut to_p0, PartyId::P0)?;
            let theirs = Handshake::read(&mut to_p0, Some(PartyId::P0))?;
            hello.check(&theirs)?;
            streams.push((PartyId::P0, to_p0));

            let mut from_p2 = accept(&listener, addrs.timeout, "P2")?;
            let theirs = Handshake::read(&mut from_p2, Some(PartyId::P2))?;
            hello.write(&mut from_p2, PartyId::P2)?;
            hello.check(&theirs)?;
            streams.push((PartyId::P2, from_p2));
        }
        PartyId::P2 => {
            for (peer, addr) in [(PartyId::P0, addrs.peer0), (PartyId::P1, addrs.peer1)] {
                let mut stream = connect(addr, peer, addrs.timeout)?;
                hello.write(&mut stream, peer)?;
                let theirs = Handshake::read(&mut stream, Some(peer))?;
                hello.check(&theirs)?;
                if peer == PartyId::P0 {
                    agreed.rows = theirs.info.rows;
                    agreed.cols = theirs.info.cols;
                }
                streams.push((peer, stream));
            }
        }
    }
    let transport = TcpTransport::new(streams)?;
    let mut party = Party::new(role, config.clone(), Box::new(transport))?;
    party.establish_keys()?;
    Ok((party, agreed))
}

fn bind(addr: SocketAddr, role: PartyId) -> Result<TcpListener> {
    TcpListener::bind(addr).map_err(|e| Error::transport(role, format!("cannot listen on {addr}: {e}")))
}

fn connect(addr: SocketAddr, peer: PartyId, timeout: Duration) -> Result<TcpStream> {
    let deadline = Instant::now() + timeout;
    loop {
        match TcpStream::connect_timeout(&addr, Duration::from_millis(500)) {
            Ok(s) => return Ok(s),
            Err(e) if Instant::now() >= deadline => {
                return Err(Error::transport(peer, format!("cannot connect to {addr}: {e}")))
            }
            Err(_) => std::thread::sleep(Duration::from_millis(20)),
        }
    }
}

fn accept(listener: &TcpListener, timeout: Duration, expecting: &str) -> Result<TcpStream> {
    let deadline = Instant::now() + timeout;
    listener.set_nonblocking(true)?;
    loop {
        match listener.accept() {
            Ok((stream, _)) => {
                stream.set_nonblocking(false)?;
                return Ok(stream);
            }
            Err(e) if e.kind() == std::io::ErrorKind::WouldBlock => {
                if Instant::now() >= deadline {
                    return Err(Error::Transport {
                        peer: PartyId::P2,
                        reason: format!("timed out waiting for {expecting} to connect"),
                    });
                }
                std::thread::sleep(Duration::from_millis(10));
            }
            Err(e) => return Err(e.into()),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Handshake {
    version: u128,
    party: PartyId,
    width_bits: u128,
    frac_bits: u128,
    int_bits: u128,
    info: SessionInfo,
    config_width: crate::ring::RingWidth,
}

impl Handshake {
    fn new(config: &ProtocolConfig, party: PartyId, info: SessionInfo) -> Self {
        let info = if party == PartyId::P2 {
            SessionInfo {
                rows: 0,
                cols: 0,
                ..info
            }
        } else {
            info
        };
        Handshake {
            version: PROTOCOL_VERSION,
            party,
            width_bits: config.width.bits() as u128,
            frac_bits: config.frac_bits as u128,
            int_bits: config.int_bits as u128,
            info,
            config_width: config.width,
        }
    }

    fn write(&self, stream: &mut TcpStream, peer: PartyId) -> Result<()> {
        let payload = [
            self.version,
            self.party.index() as u128,
            self.width_bits,
            self.frac_bits,
            self.int_bits,
            self.info.protocol_id as u128,
            self.info.rows as u128,
            self.info.cols as u128,
        ];
        let frame = encode_frame(MessageTag::Handshake, self.config_width, &payload);
        stream
            .write_all(&frame)
            .and_then(|_| stream.flush())
            .map_err(|e| Error::transport(peer, e))
    }

    fn read(stream: &mut TcpStream, expected: Option<PartyId>) -> Result<Handshake> {
        let who = expected.unwrap_or(PartyId::P2);
        let frame = read_frame(stream).map_err(|e| Error::transport(who, e))?;
        let (header, v) = decode_frame(&frame)?;
        if header.tag != MessageTag::Handshake || v.len() != 8 {
            return Err(Error::Handshake {
                peer: who,
                reason: format!("expected a handshake frame, got {}", header.tag),
            });
        }
        let party = match v[1] {
            0 => PartyId::P0,
            1 => PartyId::P1,
            2 => PartyId::P2,
            other => {
                return Err(Error::Handshake {
                    peer: who,
                    reason: format!("invalid party index {other}"),
                })
            }
        };
        if let Some(e) = expected {
            if e != party {
                return Err(Error::Handshake {
                    peer: who,
                    reason: format!("expected {e}, peer identifies as {party}"),
                });
            }
        }
        Ok(Handshake {
            version: v[0],
            party,
            width_bits: v[2],
            frac_bits: v[3],
            int_bits: v[4],
            info: SessionInfo {
                protocol_id: v[5] as u8,
                rows: v[6] as u64,
                cols: v[7] as u64,
            },
            config_width: header.width,
        })
    }

    fn check(&self, theirs: &Handshake) -> Result<()> {
        let mismatch = |what: &str, a: u128, b: u128| Error::Handshake {
            peer: theirs.party,
            reason: format!("{what} mismatch: local {a}, peer {b}"),
        };
        let fields = [
            ("version", self.version, theirs.version),
            ("ring width", self.width_bits, theirs.width_bits),
            ("precision f", self.frac_bits, theirs.frac_bits),
            ("integer bits m", self.int_bits, theirs.int_bits),
            (
                "protocol id",
                self.info.protocol_id as u128,
                theirs.info.protocol_id as u128,
            ),
        ];
        for (what, a, b) in fields {
            if a != b {
                return Err(mismatch(what, a, b));
            }
        }
        let primaries = self.party != PartyId::P2 && theirs.party != PartyId::P2;
        if primaries && (self.info.rows, self.info.cols) != (theirs.info.rows, theirs.info.cols) {
            return Err(Error::Handshake {
                peer: theirs.party,
                reason: format!(
                    "input shape mismatch: local {}x{}, peer {}x{}",
                    self.info.rows, self.info.cols, theirs.info.rows, theirs.info.cols
                ),
            });
        }
        Ok(())
    }
}
