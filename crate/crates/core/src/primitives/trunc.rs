use super::{bit_decomp, local, SharedMatrix};
use crate::error::Result;
use crate::runtime::Party;

/// Exact floor of a nonnegative fixed-point value below `2^m`.
///
/// Decomposes the `f + m` low bits of `x` and recomposes bits `f..f+m`.
/// Returns the integer part as a plain integer and the same value at scale
/// `2^f`.
pub fn trunc_floor(party: &mut Party, x: &SharedMatrix) -> Result<(SharedMatrix, SharedMatrix)> {
    let w = party.width();
    let f = party.fixed().frac_bits() as usize;
    let m = party.config().int_bits as usize;
    let bits = bit_decomp(party, x, f + m)?;
    let int = bits.recompose_from(w, f);
    let fx = int.with_data(local::shl(w, &int.data, f as u32), true);
    Ok((int, fx))
}
