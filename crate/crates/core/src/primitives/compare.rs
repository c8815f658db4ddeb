use super::{bit_decomp, local, SharedMatrix};
use crate::error::Result;
use crate::runtime::Party;

/// Shares of the bit `a >= b`, for `|a - b| < 2^(l-1)`.
///
/// The sign of `a - b` is its top bit; the result is `1 - msb`.
pub fn compare_ge(party: &mut Party, a: &SharedMatrix, b: &SharedMatrix) -> Result<SharedMatrix> {
    super::check_same_shape("compare_ge", a, b)?;
    let w = party.width();
    let d = a.with_data(local::sub(w, &a.data, &b.data), false);
    let bits = bit_decomp(party, &d, w.bits() as usize)?;
    let msb = &bits.bits[w.bits() as usize - 1];
    let j = party.j();
    let data = msb.data.iter().map(|&s| w.sub(j, s)).collect();
    Ok(a.with_data(data, false))
}
