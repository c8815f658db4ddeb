use super::{exp, public_one, rerandomize};
use crate::error::Result;
use crate::primitives::{division, local, mul, SharedMatrix};
use crate::runtime::Party;

/// Shares of `e^x / (1 + e^x)`.
pub fn sigmoid(party: &mut Party, x: &SharedMatrix) -> Result<SharedMatrix> {
    let w = party.width();
    let numerator = exp(party, x)?;
    let j_one = public_one(party, x);
    let denominator = numerator.with_data(local::add(w, &numerator.data, &j_one), true);
    let quotient = division(party, &numerator, &denominator)?;
    Ok(rerandomize(party, quotient))
}

/// Shares of `sigma(x) * (1 - sigma(x))`.
pub fn d_sigmoid(party: &mut Party, x: &SharedMatrix) -> Result<SharedMatrix> {
    let w = party.width();
    let s = sigmoid(party, x)?;
    let j_one = public_one(party, x);
    let one_minus = s.with_data(local::sub(w, &j_one, &s.data), true);
    let product = mul(party, &s, &one_minus)?;
    Ok(rerandomize(party, product))
}
