#![allow(dead_code)]

use actmpc_core::primitives::SharedMatrix;
use actmpc_core::sharing::{reconstruct_vec, share_vec};
use actmpc_core::{start_local_session, Party, ProtocolConfig, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ULP: f64 = 1.0 / 8192.0;

/// A plaintext operand: shape, fixed-point flag and raw ring values.
pub struct Operand {
    pub rows: usize,
    pub cols: usize,
    pub fixed: bool,
    pub raw: Vec<u128>,
}

impl Operand {
    pub fn row(raw: Vec<u128>, fixed: bool) -> Self {
        Operand {
            rows: 1,
            cols: raw.len(),
            fixed,
            raw,
        }
    }
}

/// Shares the operands, runs `f` on all three parties and reconstructs the
/// result. Also returns the number of online rounds P0 used.
pub fn run_raw<F>(config: &ProtocolConfig, operands: &[Operand], f: F) -> (Vec<u128>, u64)
where
    F: Fn(&mut Party, &[SharedMatrix]) -> Result<SharedMatrix> + Sync,
{
    let w = config.width;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let mut per_party: [Vec<SharedMatrix>; 3] = Default::default();
    for op in operands {
        let (a, b) = share_vec(&op.raw, w, &mut rng);
        per_party[0].push(SharedMatrix::new(op.rows, op.cols, op.fixed, a).unwrap());
        per_party[1].push(SharedMatrix::new(op.rows, op.cols, op.fixed, b).unwrap());
        per_party[2].push(SharedMatrix::placeholder(op.rows, op.cols, op.fixed));
    }
    let mut session = start_local_session(config).unwrap();
    let [(o0, r0), (o1, _), _] = session
        .run(|p| {
            let before = p.rounds();
            let out = f(p, &per_party[p.id().index()])?;
            Ok((out, p.rounds() - before))
        })
        .unwrap();
    (reconstruct_vec(&o0.data, &o1.data, w).unwrap(), r0)
}

pub fn encode_all(config: &ProtocolConfig, xs: &[f64]) -> Vec<u128> {
    let fx = config.fixed();
    xs.iter().map(|&x| fx.encode_raw(x).unwrap()).collect()
}

pub fn decode_all(config: &ProtocolConfig, raw: &[u128]) -> Vec<f64> {
    let fx = config.fixed();
    raw.iter().map(|&r| fx.decode_raw(r)).collect()
}
