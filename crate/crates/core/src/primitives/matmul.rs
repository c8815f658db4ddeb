//! Beaver-triple multiplication with the helper as dealer.
//!
//! The helper shares a PRG stream with each primary party. P0's triple shares
//! `(A_0, B_0, C_0)` and P1's `(A_1, B_1)` come from those streams; the helper
//! sends P1 only the correction `C_1 = (A_0 + A_1)(B_0 + B_1) - C_0`. P0 and
//! P1 then open `E = X - A`, `F = Y - B` to each other and compute
//! `Z_j = j*E*F + E*B_j + A_j*F + C_j`.

use super::local;
use super::SharedMatrix;
use crate::error::{Error, Result};
use crate::ring::RingWidth;
use crate::runtime::{MessageTag, Party, PartyId};

/// The bilinear map a triple is generated for.
#[derive(Clone, Copy, Debug)]
enum Product {
    /// Element-wise.
    Hadamard,
    /// `m x n` times `n x v`.
    Matrix { m: usize, n: usize, v: usize },
}

impl Product {
    fn apply(self, w: RingWidth, a: &[u128], b: &[u128]) -> Vec<u128> {
        match self {
            Product::Hadamard => a.iter().zip(b).map(|(&x, &y)| w.mul(x, y)).collect(),
            Product::Matrix { m, n, v } => {
                let mut out = vec![0u128; m * v];
                for i in 0..m {
                    for k in 0..n {
                        let aik = a[i * n + k];
                        if aik == 0 {
                            continue;
                        }
                        let row = &b[k * v..(k + 1) * v];
                        for (o, &bkj) in out[i * v..(i + 1) * v].iter_mut().zip(row) {
                            *o = o.wrapping_add(aik.wrapping_mul(bkj));
                        }
                    }
                }
                for o in &mut out {
                    *o = w.reduce(*o);
                }
                out
            }
        }
    }

    /// P1's share of the triple product: `(A_0 + A_1)(B_0 + B_1) - C_0`.
    fn correction(self, w: RingWidth, a: [&[u128]; 2], b: [&[u128]; 2], c0: &[u128]) -> Vec<u128> {
        match self {
            Product::Hadamard => (0..c0.len())
                .map(|i| {
                    let x = a[0][i].wrapping_add(a[1][i]);
                    let y = b[0][i].wrapping_add(b[1][i]);
                    w.reduce(x.wrapping_mul(y).wrapping_sub(c0[i]))
                })
                .collect(),
            Product::Matrix { .. } => {
                let c = self.apply(w, &local::add(w, a[0], a[1]), &local::add(w, b[0], b[1]));
                local::sub(w, &c, c0)
            }
        }
    }
}

/// Triple shares of this party: `(A_j, B_j, C_j)`. The helper gets empty
/// vectors after dealing.
fn deal_triple(
    party: &mut Party,
    a_len: usize,
    b_len: usize,
    c_len: usize,
    product: Product,
) -> Result<(Vec<u128>, Vec<u128>, Vec<u128>)> {
    let w = party.width();
    match party.id() {
        PartyId::P2 => {
            let a0 = party.dealer_draw(PartyId::P0, a_len);
            let b0 = party.dealer_draw(PartyId::P0, b_len);
            let c0 = party.dealer_draw(PartyId::P0, c_len);
            let a1 = party.dealer_draw(PartyId::P1, a_len);
            let b1 = party.dealer_draw(PartyId::P1, b_len);
            let c1 = product.correction(w, [&a0, &a1], [&b0, &b1], &c0);
            party.send_elements(PartyId::P1, MessageTag::TripleCorrection, &c1)?;
            Ok((Vec::new(), Vec::new(), Vec::new()))
        }
        PartyId::P0 => {
            let a = party.dealer_draw(PartyId::P0, a_len);
            let b = party.dealer_draw(PartyId::P0, b_len);
            let c = party.dealer_draw(PartyId::P0, c_len);
            Ok((a, b, c))
        }
        PartyId::P1 => {
            let a = party.dealer_draw(PartyId::P1, a_len);
            let b = party.dealer_draw(PartyId::P1, b_len);
            let c = party.recv_elements(PartyId::P2, MessageTag::TripleCorrection)?;
            if c.len() != c_len {
                return Err(Error::Protocol(format!(
                    "triple correction has {} elements, expected {c_len}",
                    c.len()
                )));
            }
            Ok((a, b, c))
        }
    }
}

/// Opens `E = X - A` and `F = Y - B` in one round.
fn open_masked(party: &mut Party, x: &[u128], y: &[u128], a: &[u128], b: &[u128]) -> Result<Vec<u128>> {
    let w = party.width();
    let mut masked = Vec::with_capacity(x.len() + y.len());
    masked.extend(x.iter().zip(a).map(|(&xi, &ai)| w.sub(xi, ai)));
    masked.extend(y.iter().zip(b).map(|(&yi, &bi)| w.sub(yi, bi)));
    let theirs = party.exchange(MessageTag::MulOpen, &masked)?;
    Ok(local::add(w, &masked, &theirs))
}

/// Shares of `product(X, Y)`, without truncation.
fn beaver(party: &mut Party, x: &[u128], y: &[u128], out_len: usize, product: Product) -> Result<Vec<u128>> {
    let w = party.width();
    let (a, b, c) = deal_triple(party, x.len(), y.len(), out_len, product)?;
    if party.is_helper() {
        return Ok(vec![0; out_len]);
    }
    let opened = open_masked(party, x, y, &a, &b)?;
    let (e, f) = opened.split_at(x.len());
    let j = party.j();

    if let Product::Hadamard = product {
        let z = (0..out_len)
            .map(|i| {
                let v = (j * e[i])
                    .wrapping_mul(f[i])
                    .wrapping_add(e[i].wrapping_mul(b[i]))
                    .wrapping_add(a[i].wrapping_mul(f[i]))
                    .wrapping_add(c[i]);
                w.reduce(v)
            })
            .collect();
        return Ok(z);
    }
    let mut z = product.apply(w, e, &b);
    for (zi, v) in z.iter_mut().zip(product.apply(w, &a, f)) {
        *zi = w.add(*zi, v);
    }
    for (zi, &v) in z.iter_mut().zip(&c) {
        *zi = w.add(*zi, v);
    }
    if j == 1 {
        for (zi, v) in z.iter_mut().zip(product.apply(w, e, f)) {
            *zi = w.add(*zi, v);
        }
    }
    Ok(z)
}

fn finish(party: &Party, z: Vec<u128>, both_fixed: bool) -> Vec<u128> {
    if both_fixed && !party.is_helper() {
        local::trunc(party.width(), party.j(), &z, party.fixed().frac_bits())
    } else {
        z
    }
}

/// Element-wise product: a batch of independent 1x1 matrix products sharing
/// one triple message and one opening round. Truncated iff both operands are
/// fixed-point.
pub fn mul(party: &mut Party, x: &SharedMatrix, y: &SharedMatrix) -> Result<SharedMatrix> {
    super::check_same_shape("mul", x, y)?;
    let z = beaver(party, &x.data, &y.data, x.len(), Product::Hadamard)?;
    let both = x.fixed && y.fixed;
    let z = finish(party, z, both);
    Ok(x.with_data(z, x.fixed || y.fixed))
}

/// Shares of `X * Y` for `X: m x n`, `Y: n x v`. Fixed-point products are
/// truncated per output element.
pub fn mat_mul(party: &mut Party, x: &SharedMatrix, y: &SharedMatrix) -> Result<SharedMatrix> {
    if x.cols != y.rows {
        return Err(Error::Usage(format!(
            "mat_mul: inner dimensions differ ({}x{} times {}x{})",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    let (m, n, v) = (x.rows, x.cols, y.cols);
    let z = beaver(party, &x.data, &y.data, m * v, Product::Matrix { m, n, v })?;
    let both = x.fixed && y.fixed;
    let z = finish(party, z, both);
    SharedMatrix::new(m, v, x.fixed || y.fixed, z)
}
