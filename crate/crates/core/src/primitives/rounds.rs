//! Online round counts between P0 and P1. Helper messages are dealt ahead of
//! the openings they support and are not counted.

use crate::runtime::ProtocolConfig;

pub const MUL: u64 = 1;

/// One opening, then one multiplication per bit past the first.
pub fn bit_decomp(m: u32) -> u64 {
    m as u64
}

pub fn trunc_floor(c: &ProtocolConfig) -> u64 {
    bit_decomp(c.frac_bits + c.int_bits)
}

pub fn compare(c: &ProtocolConfig) -> u64 {
    bit_decomp(c.width.bits())
}

/// `2f` quotient bits, each one comparison and one multiplication.
pub fn division(c: &ProtocolConfig) -> u64 {
    2 * c.frac_bits as u64 * (compare(c) + MUL)
}

/// Depth of a balanced multiplication tree over `m` factors.
pub fn pre_mult(m: u32) -> u64 {
    if m <= 1 {
        0
    } else {
        (32 - (m - 1).leading_zeros()) as u64
    }
}

/// One multiplication per series term past the linear one.
pub fn taylor_exp() -> u64 {
    3
}

/// The integer part's bits come out of the same decomposition as the floor.
pub fn exp(c: &ProtocolConfig) -> u64 {
    trunc_floor(c) + pre_mult(c.int_bits) + taylor_exp() + MUL
}

pub fn sigmoid(c: &ProtocolConfig) -> u64 {
    exp(c) + division(c)
}

pub fn d_sigmoid(c: &ProtocolConfig) -> u64 {
    sigmoid(c) + MUL
}
