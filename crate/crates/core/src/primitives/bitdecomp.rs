//! Arithmetic bit decomposition over `Z_{2^l}`.
//!
//! The helper deals a uniform mask `r` (P0's share from the P0/P2 stream,
//! P1's from the P1/P2 stream) together with arithmetic shares of the low `m`
//! bits of `r`. P0 and P1 open `c = a - r`, then add the public `c` to the
//! shared bits of `r` with a ripple-carry adder. With one addend public, the
//! carry out of position `i` is `g_i + p_i * carry_i` where `g_i = c_i r_i`
//! and `p_i = c_i XOR r_i` are both local; `g_i` and `p_i * carry_i` are
//! never both 1, so the XOR becomes a sum. Each position past the first costs
//! one multiplication, `m - 1` sequential rounds in total.

use super::{local, mul, SharedMatrix};
use crate::error::{Error, Result};
use crate::ring::RingWidth;
use crate::runtime::{MessageTag, Party, PartyId};

/// Arithmetic shares of bits, least-significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedBits {
    pub bits: Vec<SharedMatrix>,
}

impl SharedBits {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `sum_i bit_i * 2^(i - from)` over positions `from..`, computed locally.
    pub fn recompose_from(&self, width: RingWidth, from: usize) -> SharedMatrix {
        let template = &self.bits[0];
        let mut acc = vec![0u128; template.len()];
        for (i, bit) in self.bits.iter().enumerate().skip(from) {
            let weight = width.shl(1, (i - from) as u32);
            for (a, &b) in acc.iter_mut().zip(&bit.data) {
                *a = width.add(*a, width.mul(b, weight));
            }
        }
        template.with_data(acc, false)
    }

    pub fn recompose(&self, width: RingWidth) -> SharedMatrix {
        self.recompose_from(width, 0)
    }
}

/// Shares of the low `m` bits of the integer shared by `a`.
///
/// Requires `a` to reconstruct into `[0, 2^m)` for the bits to represent
/// `a` itself; in general the result is the binary expansion of `a mod 2^m`.
pub fn bit_decomp(party: &mut Party, a: &SharedMatrix, m: usize) -> Result<SharedBits> {
    let w = party.width();
    if m == 0 || m > w.bits() as usize {
        return Err(Error::Usage(format!(
            "bit_decomp: bit count {m} outside 1..={}",
            w.bits()
        )));
    }
    let n = a.len();
    let (r, r_bits) = deal_mask(party, n, m)?;

    let c = if party.is_helper() {
        vec![0; n]
    } else {
        let masked = local::sub(w, &a.data, &r);
        let theirs = party.exchange(MessageTag::BitDecompOpen, &masked)?;
        local::add(w, &masked, &theirs)
    };

    let j = party.j();
    // g_i = c_i * r_i and p_i = j*c_i + r_i - 2*c_i*r_i, both local
    let gp = |i: usize| -> (Vec<u128>, Vec<u128>) {
        c.iter()
            .zip(&r_bits[i])
            .map(|(&cv, &rb)| {
                let cb = (cv >> i) & 1;
                let g = cb * rb;
                (w.reduce(g), w.reduce((j * cb).wrapping_add(rb).wrapping_sub(g.wrapping_mul(2))))
            })
            .unzip()
    };

    let mut out = Vec::with_capacity(m);
    let (g0, p0) = gp(0);
    out.push(a.with_data(p0, false));
    let mut carry = a.with_data(g0, false);
    for i in 1..m {
        let (g, p) = gp(i);
        let pm = a.with_data(p, false);
        let t = mul(party, &pm, &carry)?.data;
        let mut s = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for k in 0..n {
            let tk2 = t[k].wrapping_mul(2);
            s.push(w.reduce(pm.data[k].wrapping_add(carry.data[k]).wrapping_sub(tk2)));
            next.push(w.reduce(g[k].wrapping_add(t[k])));
        }
        out.push(a.with_data(s, false));
        carry = a.with_data(next, false);
    }
    Ok(SharedBits { bits: out })
}

/// This party's share of the mask `r` and of its low `m` bits (bit-major).
fn deal_mask(party: &mut Party, n: usize, m: usize) -> Result<(Vec<u128>, Vec<Vec<u128>>)> {
    let w = party.width();
    match party.id() {
        PartyId::P2 => {
            let r0 = party.dealer_draw(PartyId::P0, n);
            let b0: Vec<Vec<u128>> = (0..m).map(|_| party.dealer_draw(PartyId::P0, n)).collect();
            let r1 = party.dealer_draw(PartyId::P1, n);
            let r = local::add(w, &r0, &r1);
            let mut correction = Vec::with_capacity(n * m);
            for (i, b0i) in b0.iter().enumerate() {
                correction.extend(r.iter().zip(b0i).map(|(&rv, &s0)| w.sub((rv >> i) & 1, s0)));
            }
            party.send_elements(PartyId::P1, MessageTag::BitDecompDeal, &correction)?;
            Ok((vec![0; n], vec![vec![0; n]; m]))
        }
        PartyId::P0 => {
            let r = party.dealer_draw(PartyId::P0, n);
            let bits = (0..m).map(|_| party.dealer_draw(PartyId::P0, n)).collect();
            Ok((r, bits))
        }
        PartyId::P1 => {
            let r = party.dealer_draw(PartyId::P1, n);
            let flat = party.recv_elements(PartyId::P2, MessageTag::BitDecompDeal)?;
            if flat.len() != n * m {
                return Err(Error::Protocol(format!(
                    "bit mask deal has {} elements, expected {}",
                    flat.len(),
                    n * m
                )));
            }
            let bits = if n == 0 {
                vec![Vec::new(); m]
            } else {
                flat.chunks_exact(n).map(|c| c.to_vec()).collect()
            };
            Ok((r, bits))
        }
    }
}
