//! Exponentiation and the activation functions built on it.
//!
//! Every function takes this party's shares of a fixed-point matrix and is
//! applied element-wise (softmax: per row). Inputs must lie in the
//! nonnegative exponentiation domain `[0, 2^m)`; see
//! [`ProtocolConfig::exp_domain`](crate::ProtocolConfig::exp_domain) and the
//! per-function domains next to it for the sub-intervals that also stay
//! clear of ring overflow.

mod exp;
mod sigmoid;
mod softmax;
mod taylor;
mod tanh;

pub use exp::{exp, exp_parts, ExpConstants, ExpParts};
pub use sigmoid::{d_sigmoid, sigmoid};
pub use softmax::softmax;
pub use taylor::{taylor_exp, TAYLOR_TERMS};
pub use tanh::{d_tanh, tanh};

use crate::primitives::{local, SharedMatrix};
use crate::runtime::Party;

/// Adds fresh shares of zero from the P0/P1 key.
pub(crate) fn rerandomize(party: &mut Party, x: SharedMatrix) -> SharedMatrix {
    let u = party.next_zero_shares(x.len());
    let data = local::add(party.width(), &x.data, &u);
    x.with_data(data, x.fixed)
}

/// `j * 1.0` in fixed point.
pub(crate) fn public_one(party: &Party, like: &SharedMatrix) -> Vec<u128> {
    local::add_public(party.width(), party.j(), &vec![0; like.len()], party.fixed().one())
}
