//! 2-out-of-2 additive sharing and pairwise zero shares.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingWidth};

/// One party's additive share. `party` is 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Share {
    pub raw: RingElement,
    pub party: u8,
}

impl Share {
    pub fn width(&self) -> RingWidth {
        self.raw.width()
    }
}

/// Uniform element of the ring.
pub fn random_element<R: RngCore + ?Sized>(rng: &mut R, width: RingWidth) -> u128 {
    match width {
        RingWidth::W128 => ((rng.next_u64() as u128) << 64) | rng.next_u64() as u128,
        _ => width.reduce(rng.next_u64() as u128),
    }
}

/// Share 0 is uniform; share 1 is `x - share_0`.
pub fn share<R: Rng + ?Sized>(x: RingElement, rng: &mut R) -> (Share, Share) {
    let r = RingElement::new(random_element(rng, x.width()), x.width());
    share_with_mask(x, r)
}

pub fn share_with_mask(x: RingElement, share0: RingElement) -> (Share, Share) {
    (
        Share {
            raw: share0,
            party: 0,
        },
        Share {
            raw: x - share0,
            party: 1,
        },
    )
}

pub fn reconstruct(s0: Share, s1: Share) -> Result<RingElement> {
    if s0.party != 0 || s1.party != 1 {
        return Err(Error::Usage(format!(
            "reconstruct expects shares of parties (0, 1), got ({}, {})",
            s0.party, s1.party
        )));
    }
    if s0.width() != s1.width() {
        return Err(Error::Usage(format!(
            "share widths differ: {} vs {}",
            s0.width(),
            s1.width()
        )));
    }
    Ok(s0.raw + s1.raw)
}

/// Splits every element of a raw vector.
pub fn share_vec<R: Rng + ?Sized>(
    values: &[u128],
    width: RingWidth,
    rng: &mut R,
) -> (Vec<u128>, Vec<u128>) {
    values
        .iter()
        .map(|&v| {
            let r = random_element(rng, width);
            (r, width.sub(v, r))
        })
        .unzip()
}

pub fn reconstruct_vec(s0: &[u128], s1: &[u128], width: RingWidth) -> Result<Vec<u128>> {
    if s0.len() != s1.len() {
        return Err(Error::Usage(format!(
            "share vectors differ in length: {} vs {}",
            s0.len(),
            s1.len()
        )));
    }
    Ok(s0.iter().zip(s1).map(|(&a, &b)| width.add(a, b)).collect())
}

/// Key held by a pair of parties after session setup.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct PairwiseKey(pub [u8; 32]);

impl std::fmt::Debug for PairwiseKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PairwiseKey(..)")
    }
}

impl PairwiseKey {
    pub fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        let mut k = [0u8; 32];
        rng.fill_bytes(&mut k);
        PairwiseKey(k)
    }
}

/// Words of keystream reserved per counter value.
const WORDS_PER_COUNTER: u128 = 4;

/// Keyed PRF: ChaCha20 keystream under `key`, read at a position fixed by
/// `counter`. Returns `(u0, u1)` with `u0 + u1 = 0`.
pub fn zero_shares(key: &PairwiseKey, counter: u64, width: RingWidth) -> (RingElement, RingElement) {
    let u0 = prf_stream(key, counter, 1, width)[0];
    let u0 = RingElement::new(u0, width);
    (u0, -u0)
}

/// `n` consecutive PRF outputs starting at `counter`, for party `party`:
/// party 0 gets `u0`, party 1 gets `-u0`.
pub fn zero_share_vec(
    key: &PairwiseKey,
    counter: u64,
    n: usize,
    party: u8,
    width: RingWidth,
) -> Vec<u128> {
    let mut out = prf_stream(key, counter, n, width);
    if party == 1 {
        for v in &mut out {
            *v = width.neg(*v);
        }
    }
    out
}

fn prf_stream(key: &PairwiseKey, counter: u64, n: usize, width: RingWidth) -> Vec<u128> {
    let mut rng = ChaCha20Rng::from_seed(key.0);
    (0..n)
        .map(|i| {
            rng.set_word_pos((counter as u128 + i as u128) * WORDS_PER_COUNTER);
            random_element(&mut rng, width)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn exhaustive_reconstruction_in_test_ring() {
        let w = RingWidth::W16;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for x in 0..=u16::MAX as u128 {
            let (s0, s1) = share(RingElement::new(x, w), &mut rng);
            assert_eq!(reconstruct(s0, s1).unwrap().value(), x);
        }
    }

    #[test]
    fn shares_of_zero_are_negatives() {
        let w = RingWidth::W64;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let first = random_element(&mut ChaCha8Rng::seed_from_u64(42), w);
        let (s0, s1) = share(RingElement::zero(w), &mut rng);
        assert_eq!(s0.raw.value(), first);
        assert_eq!(s1.raw.value(), (1u128 << 64) - first);
    }

    #[test]
    fn forced_mask() {
        let w = RingWidth::W64;
        let (_, s1) = share_with_mask(RingElement::new(5, w), RingElement::new(7, w));
        assert_eq!(s1.raw.value(), (1u128 << 64) - 2);
    }

    #[test]
    fn reconstruct_known_and_wrapping() {
        let w = RingWidth::W64;
        let s = |v, party| Share {
            raw: RingElement::new(v, w),
            party,
        };
        assert_eq!(reconstruct(s(3, 0), s(4, 1)).unwrap().value(), 7);
        assert_eq!(reconstruct(s(u64::MAX as u128, 0), s(1, 1)).unwrap().value(), 0);
    }

    #[test]
    fn reconstruct_rejects_bad_tags_and_widths() {
        let a = Share {
            raw: RingElement::new(1, RingWidth::W64),
            party: 0,
        };
        let b = Share {
            raw: RingElement::new(1, RingWidth::W128),
            party: 1,
        };
        assert!(matches!(reconstruct(a, a), Err(Error::Usage(_))));
        assert!(matches!(reconstruct(a, b), Err(Error::Usage(_))));
    }

    #[test]
    fn zero_shares_sum_to_zero_and_are_deterministic() {
        let key = PairwiseKey([9; 32]);
        for width in [RingWidth::W64, RingWidth::W128] {
            for counter in [0, 1, 77, u64::MAX / 8] {
                let (u0, u1) = zero_shares(&key, counter, width);
                assert_eq!((u0 + u1).value(), 0);
                assert_eq!(zero_shares(&key, counter, width), (u0, u1));
            }
        }
        let v0 = zero_share_vec(&key, 10, 5, 0, RingWidth::W64);
        let v1 = zero_share_vec(&key, 10, 5, 1, RingWidth::W64);
        for (i, (a, b)) in v0.iter().zip(&v1).enumerate() {
            assert_eq!(RingWidth::W64.add(*a, *b), 0);
            assert_eq!(*a, zero_shares(&key, 10 + i as u64, RingWidth::W64).0.value());
        }
    }

    #[test]
    fn distinct_counters_do_not_collide() {
        let key = PairwiseKey([3; 32]);
        let values: HashSet<u128> = zero_share_vec(&key, 0, 100_000, 0, RingWidth::W64)
            .into_iter()
            .collect();
        assert_eq!(values.len(), 100_000);
    }

    proptest! {
        #[test]
        fn share_round_trip(x: u128, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for width in [RingWidth::W64, RingWidth::W128] {
                let e = RingElement::new(x, width);
                let (s0, s1) = share(e, &mut rng);
                prop_assert_eq!(reconstruct(s0, s1).unwrap(), e);
            }
        }
    }
}
