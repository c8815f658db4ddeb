use super::{mul, SharedMatrix};
use crate::error::{Error, Result};
use crate::runtime::Party;

/// Shares of the element-wise product of all `factors`.
///
/// Multiplies pairs level by level; all pairs of a level go out in one
/// batched multiplication, so `m` factors take `ceil(log2 m)` rounds.
pub fn pre_mult(party: &mut Party, factors: &[SharedMatrix]) -> Result<SharedMatrix> {
    let Some(first) = factors.first() else {
        return Err(Error::Usage("pre_mult needs at least one factor".into()));
    };
    for f in factors {
        super::check_same_shape("pre_mult", first, f)?;
    }
    let mut level = factors.to_vec();
    while level.len() > 1 {
        let n = first.len();
        let pairs = level.len() / 2;
        let mut left = Vec::with_capacity(pairs * n);
        let mut right = Vec::with_capacity(pairs * n);
        for pair in level.chunks_exact(2) {
            left.extend_from_slice(&pair[0].data);
            right.extend_from_slice(&pair[1].data);
        }
        let fixed = level.iter().all(|m| m.fixed);
        let product = mul(
            party,
            &SharedMatrix::from_vec(left, fixed),
            &SharedMatrix::from_vec(right, fixed),
        )?;
        let mut next: Vec<SharedMatrix> = if n == 0 {
            vec![first.with_data(Vec::new(), fixed); pairs]
        } else {
            product.data.chunks_exact(n).map(|c| first.with_data(c.to_vec(), fixed)).collect()
        };
        if level.len() % 2 == 1 {
            next.push(level.pop().expect("odd level is nonempty"));
        }
        level = next;
    }
    Ok(level.pop().expect("one factor left"))
}
