use super::rerandomize;
use crate::error::Result;
use crate::primitives::{local, mul, SharedMatrix};
use crate::runtime::Party;

/// Series terms evaluated: `1 + x + x^2/2 + x^3/6 + x^4/24`.
pub const TAYLOR_TERMS: usize = 5;

/// Shares of the five-term Taylor polynomial of `e^x`, for `x` in `[0, 1)`.
///
/// The running numerator is multiplied by `x` once per term; dividing it by
/// the public factorial is local on each share. Outside `[0, 1)` the result
/// is still the polynomial, which drifts from `e^x` quickly.
pub fn taylor_exp(party: &mut Party, x: &SharedMatrix) -> Result<SharedMatrix> {
    let w = party.width();
    let j = party.j();
    let one = party.fixed().one();
    let mut acc = local::add_public(w, j, &x.data, one);
    let mut numerator = x.clone();
    let mut denominator: u128 = 1;
    for i in 2..TAYLOR_TERMS as u128 {
        numerator = mul(party, &numerator, x)?;
        denominator *= i;
        let term = local::div_public(w, j, &numerator.data, denominator);
        acc = local::add(w, &acc, &term);
    }
    Ok(rerandomize(party, x.with_data(acc, true)))
}
