use super::{compare_ge, local, mul, SharedMatrix};
use crate::error::Result;
use crate::runtime::Party;

/// Shares of `x / y` in fixed point, by restoring long division over `2f`
/// quotient bits.
///
/// Requires `0 <= x`, `0 <= y`, `x / y < 2^f` and `y` below
/// [`ProtocolConfig::division_denominator_bound`](crate::ProtocolConfig::division_denominator_bound).
/// A zero denominator saturates to `2^f - 2^-f`.
pub fn division(party: &mut Party, x: &SharedMatrix, y: &SharedMatrix) -> Result<SharedMatrix> {
    super::check_same_shape("division", x, y)?;
    let w = party.width();
    let f = party.fixed().frac_bits();
    // R = x * 2^(2f) and y * 2^f as plain integers: R / y = (x / y) * 2^f
    let mut rem = x.with_data(local::shl(w, &x.data, f), false);
    let mut quotient = vec![0u128; x.len()];
    for k in (0..2 * f).rev() {
        let shifted = y.with_data(local::shl(w, &y.data, k), false);
        let bit = compare_ge(party, &rem, &shifted)?;
        let sub = mul(party, &bit, &shifted)?;
        rem = rem.with_data(local::sub(w, &rem.data, &sub.data), false);
        quotient = local::add(w, &quotient, &local::shl(w, &bit.data, k));
    }
    Ok(x.with_data(quotient, true))
}
