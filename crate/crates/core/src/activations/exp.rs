use super::{public_one, taylor_exp};
use crate::error::{Error, Result};
use crate::fixed::FixedPointParams;
use crate::primitives::{bit_decomp, local, mul, pre_mult, SharedMatrix};
use crate::runtime::Party;

/// `encode(e^(2^i))` for `i = 0 .. m-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpConstants {
    pub table: Vec<u128>,
}

impl ExpConstants {
    /// Fails if any entry, or the product over all entries (`e^(2^m - 1)`),
    /// is not encodable.
    pub fn new(fixed: &FixedPointParams, int_bits: u32) -> Result<Self> {
        let top = ((1u64 << int_bits.min(63)) - 1) as f64;
        if top > fixed.max_abs().ln() {
            return Err(Error::Range(format!(
                "e^{top} does not fit the fixed-point range for m = {int_bits}"
            )));
        }
        let table = (0..int_bits)
            .map(|i| fixed.encode_raw((i as f64).exp2().exp()))
            .collect::<Result<_>>()?;
        Ok(ExpConstants { table })
    }
}

/// The two factors of `e^x = e^floor(x) * e^(x - floor(x))` alongside their
/// product.
#[derive(Clone, Debug)]
pub struct ExpParts {
    pub result: SharedMatrix,
    /// Shares of `e^floor(x)` from the selector product.
    pub int_part: SharedMatrix,
    /// Shares of the Taylor value at the fractional part.
    pub frac_part: SharedMatrix,
}

/// Shares of `e^x` for `x` in `[0, 2^m)`.
pub fn exp(party: &mut Party, x: &SharedMatrix) -> Result<SharedMatrix> {
    exp_parts(party, x).map(|p| p.result)
}

/// [`exp`], also returning the integer-part and fractional-part factors.
pub fn exp_parts(party: &mut Party, x: &SharedMatrix) -> Result<ExpParts> {
    let w = party.width();
    let m = party.config().int_bits;
    let constants = ExpConstants::new(&party.fixed(), m)?;
    let one = party.fixed().one();

    // bits f..f+m of x are the bits of floor(x)
    let f = party.fixed().frac_bits() as usize;
    let all_bits = bit_decomp(party, x, f + m as usize)?;
    let int = all_bits.recompose_from(w, f);
    let int_fx = local::shl(w, &int.data, f as u32);
    let frac = x.with_data(local::sub(w, &x.data, &int_fx), true);
    let int_bits = &all_bits.bits[f..];

    // v_i = e^(2^i) * c_i + j - c_i, in fixed point
    let j_one = public_one(party, x);
    let selectors: Vec<SharedMatrix> = int_bits
        .iter()
        .zip(&constants.table)
        .map(|(c, &e)| {
            let data = c
                .data
                .iter()
                .zip(&j_one)
                .map(|(&ci, &jo)| w.sub(w.add(w.mul(e, ci), jo), w.mul(one, ci)))
                .collect();
            x.with_data(data, true)
        })
        .collect();

    let int_part = pre_mult(party, &selectors)?;
    let frac_part = taylor_exp(party, &frac)?;
    let result = mul(party, &int_part, &frac_part)?;
    Ok(ExpParts {
        result,
        int_part,
        frac_part,
    })
}
