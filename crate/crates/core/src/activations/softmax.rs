use super::{exp, rerandomize};
use crate::error::{Error, Result};
use crate::primitives::{division, SharedMatrix};
use crate::runtime::Party;

/// Row-wise softmax: row `r` holds `z_1 .. z_k` (`k = cols`) and maps to
/// `e^(z_i) / sum_i e^(z_i)`. All exponentials are computed in one batch,
/// each row sum locally, and all quotients in one batched division.
pub fn softmax(party: &mut Party, z: &SharedMatrix) -> Result<SharedMatrix> {
    if z.cols == 0 || z.rows == 0 {
        return Err(Error::Usage("softmax needs k >= 1 inputs per row".into()));
    }
    let w = party.width();
    let e = exp(party, z)?;
    let mut sums = Vec::with_capacity(e.len());
    for row in e.data.chunks_exact(z.cols) {
        let s = row.iter().fold(0u128, |acc, &v| w.add(acc, v));
        sums.extend(std::iter::repeat_n(s, z.cols));
    }
    let denominators = e.with_data(sums, true);
    let quotient = division(party, &e, &denominators)?;
    Ok(rerandomize(party, quotient))
}
