use std::io::Write;
use std::path::PathBuf;

use actmpc_core::primitives::SharedMatrix;
use actmpc_core::runtime::{NetworkAddrs, SessionInfo};
use actmpc_core::sharefile::ShareFile;
use actmpc_core::{start_network_party, Error, PartyId, Result};

use crate::options::Settings;
use crate::shares::load;

pub(crate) fn command(s: &Settings, inputs: &[PathBuf], err: &mut dyn Write) -> Result<i32> {
    let role = s.role()?;
    let protocol = s.protocol()?;
    let c = &s.config;
    let (peer0, peer1) = s.peers()?;

    let mut shares = Vec::new();
    if role == PartyId::P2 {
        if !inputs.is_empty() {
            return Err(Error::Usage("the helper (role 2) takes no input share files".into()));
        }
    } else {
        if inputs.len() != protocol.arity() {
            return Err(Error::Usage(format!(
                "{protocol} needs {} --input share file(s), got {}",
                protocol.arity(),
                inputs.len()
            )));
        }
        if s.opts.out.is_none() {
            return Err(Error::Usage("--out is required for P0 and P1".into()));
        }
        for path in inputs {
            shares.push(load(path, role, c.width, c.frac_bits, c.int_bits)?);
        }
    }

    let (rows, cols) = match (s.opts.rows, s.opts.cols) {
        (Some(r), Some(k)) => (r, k),
        (None, None) => (1, shares.first().map_or(0, |f| f.shares.len())),
        _ => return Err(Error::Usage("give both --rows and --cols, or neither".into())),
    };
    let info = SessionInfo {
        protocol_id: protocol.id(),
        rows: rows as u64,
        cols: cols as u64,
    };
    let addrs = NetworkAddrs::new(peer0, peer1);
    let (mut party, agreed) = start_network_party(c, role, &addrs, info)?;
    let shapes = protocol.input_shapes(agreed.rows as usize, agreed.cols as usize);
    let matrices = if role == PartyId::P2 {
        shapes
            .iter()
            .map(|&(r, k)| SharedMatrix::placeholder(r, k, true))
            .collect()
    } else {
        shapes
            .iter()
            .zip(shares)
            .map(|(&(r, k), f)| SharedMatrix::new(r, k, true, f.shares))
            .collect::<Result<Vec<_>>>()?
    };

    let mark = party.mark();
    let output = protocol.run(&mut party, &matrices)?;
    writeln!(err, "{role}: {}", party.transcript_since(&mark))?;
    if let Some(path) = &s.opts.out {
        if role != PartyId::P2 {
            ShareFile::new(c, role, output.data)?.write_to(path)?;
        }
    }
    Ok(0)
}
