use super::{d_sigmoid, public_one, rerandomize, sigmoid};
use crate::error::Result;
use crate::primitives::{local, SharedMatrix};
use crate::runtime::Party;

/// Shares of `2 * sigma(2x) - 1`.
pub fn tanh(party: &mut Party, x: &SharedMatrix) -> Result<SharedMatrix> {
    let w = party.width();
    let doubled = x.with_data(local::scale(w, &x.data, 2), true);
    let p = sigmoid(party, &doubled)?;
    let j_one = public_one(party, x);
    let out = local::sub(w, &local::scale(w, &p.data, 2), &j_one);
    Ok(rerandomize(party, p.with_data(out, true)))
}

/// Shares of `4 * sigma'(2x)`.
pub fn d_tanh(party: &mut Party, x: &SharedMatrix) -> Result<SharedMatrix> {
    let w = party.width();
    let doubled = x.with_data(local::scale(w, &x.data, 2), true);
    let b = d_sigmoid(party, &doubled)?;
    let out = local::scale(w, &b.data, 4);
    Ok(rerandomize(party, b.with_data(out, true)))
}
