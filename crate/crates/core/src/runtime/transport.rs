//! Byte transports between the three parties.
//!
//! Both transports carry whole frames and never block on send, so a party
//! can send to a peer that is itself sending before either of them reads.

use std::io::{BufReader, BufWriter, Write};
use std::net::{Shutdown, TcpStream};
use std::sync::mpsc::{self, Receiver, Sender};
use std::thread::JoinHandle;

use super::frame::read_frame;
use super::PartyId;
use crate::error::{Error, Result};

pub trait Transport: Send {
    /// Queues a complete frame for `to`.
    fn send(&mut self, to: PartyId, frame: Vec<u8>) -> Result<()>;
    /// Blocks until the next complete frame from `from` arrives.
    fn recv(&mut self, from: PartyId) -> Result<Vec<u8>>;
}

/// In-process channels.
pub struct LocalTransport {
    me: PartyId,
    outgoing: [Option<Sender<Vec<u8>>>; 3],
    incoming: [Option<Receiver<Vec<u8>>>; 3],
}

impl LocalTransport {
    /// Fully connected mesh for P0, P1, P2.
    pub fn mesh() -> [LocalTransport; 3] {
        let mut transports = PartyId::ALL.map(|me| LocalTransport {
            me,
            outgoing: [None, None, None],
            incoming: [None, None, None],
        });
        for from in PartyId::ALL {
            for to in PartyId::ALL {
                if from != to {
                    let (tx, rx) = mpsc::channel();
                    transports[from.index()].outgoing[to.index()] = Some(tx);
                    transports[to.index()].incoming[from.index()] = Some(rx);
                }
            }
        }
        transports
    }
}

impl Transport for LocalTransport {
    fn send(&mut self, to: PartyId, frame: Vec<u8>) -> Result<()> {
        let tx = self.outgoing[to.index()]
            .as_ref()
            .ok_or_else(|| Error::transport(to, format!("{} has no channel to itself", self.me)))?;
        tx.send(frame)
            .map_err(|_| Error::transport(to, "peer disconnected"))
    }

    fn recv(&mut self, from: PartyId) -> Result<Vec<u8>> {
        let rx = self.incoming[from.index()]
            .as_ref()
            .ok_or_else(|| Error::transport(from, format!("{} has no channel to itself", self.me)))?;
        rx.recv()
            .map_err(|_| Error::transport(from, "peer disconnected"))
    }
}

/// What a party's transport becomes after [`Party::shutdown`]: every call
/// fails, and the dropped original closes the links so peers fail too.
///
/// [`Party::shutdown`]: super::Party::shutdown
pub struct ClosedTransport;

impl Transport for ClosedTransport {
    fn send(&mut self, to: PartyId, _frame: Vec<u8>) -> Result<()> {
        Err(Error::transport(to, "session was shut down"))
    }

    fn recv(&mut self, from: PartyId) -> Result<Vec<u8>> {
        Err(Error::transport(from, "session was shut down"))
    }
}

struct TcpLink {
    queue: Option<Sender<Vec<u8>>>,
    writer: Option<JoinHandle<std::io::Result<()>>>,
    reader: BufReader<TcpStream>,
    stream: TcpStream,
}

impl TcpLink {
    fn new(stream: TcpStream) -> std::io::Result<Self> {
        stream.set_nodelay(true)?;
        let write_half = stream.try_clone()?;
        let reader = BufReader::with_capacity(1 << 16, stream.try_clone()?);
        let (tx, rx) = mpsc::channel::<Vec<u8>>();
        let writer = std::thread::spawn(move || {
            let mut out = BufWriter::with_capacity(1 << 16, write_half);
            while let Ok(frame) = rx.recv() {
                out.write_all(&frame)?;
                // drain whatever is already queued before flushing
                while let Ok(more) = rx.try_recv() {
                    out.write_all(&more)?;
                }
                out.flush()?;
            }
            Ok(())
        });
        Ok(TcpLink {
            queue: Some(tx),
            writer: Some(writer),
            reader,
            stream,
        })
    }
}

/// One TCP stream per peer; a writer thread per stream drains a send queue.
pub struct TcpTransport {
    links: [Option<TcpLink>; 3],
}

impl TcpTransport {
    pub fn new(streams: Vec<(PartyId, TcpStream)>) -> Result<Self> {
        let mut links: [Option<TcpLink>; 3] = [None, None, None];
        for (peer, stream) in streams {
            links[peer.index()] =
                Some(TcpLink::new(stream).map_err(|e| Error::transport(peer, e))?);
        }
        Ok(TcpTransport { links })
    }

    fn link(&mut self, peer: PartyId) -> Result<&mut TcpLink> {
        self.links[peer.index()]
            .as_mut()
            .ok_or_else(|| Error::transport(peer, "no connection"))
    }
}

impl Transport for TcpTransport {
    fn send(&mut self, to: PartyId, frame: Vec<u8>) -> Result<()> {
        let link = self.link(to)?;
        link.queue
            .as_ref()
            .expect("queue lives until drop")
            .send(frame)
            .map_err(|_| Error::transport(to, "connection closed"))
    }

    fn recv(&mut self, from: PartyId) -> Result<Vec<u8>> {
        let link = self.link(from)?;
        read_frame(&mut link.reader).map_err(|e| Error::transport(from, e))
    }
}

impl Drop for TcpTransport {
    fn drop(&mut self) {
        for link in self.links.iter_mut().flatten() {
            drop(link.queue.take());
            if let Some(handle) = link.writer.take() {
                let _ = handle.join();
            }
            let _ = link.stream.shutdown(Shutdown::Write);
        }
    }
}
