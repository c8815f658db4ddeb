//! Communication-free operations on one party's shares.

use crate::ring::RingWidth;

pub fn add(w: RingWidth, a: &[u128], b: &[u128]) -> Vec<u128> {
    a.iter().zip(b).map(|(&x, &y)| w.add(x, y)).collect()
}

pub fn sub(w: RingWidth, a: &[u128], b: &[u128]) -> Vec<u128> {
    a.iter().zip(b).map(|(&x, &y)| w.sub(x, y)).collect()
}

/// Multiply every share by a public ring constant.
pub fn scale(w: RingWidth, a: &[u128], k: u128) -> Vec<u128> {
    a.iter().map(|&x| w.mul(x, k)).collect()
}

/// The `+ j * c` pattern: party 1 adds the public constant `c`, party 0
/// adds nothing, so the reconstruction grows by exactly `c`.
pub fn add_public(w: RingWidth, j: u128, a: &[u128], c: u128) -> Vec<u128> {
    let c = w.mul(j, c);
    a.iter().map(|&x| w.add(x, c)).collect()
}

/// Local truncation by `shift` bits: party 0 shifts its share arithmetically,
/// party 1 negates, shifts and negates back. The reconstructed result is the
/// shifted secret up to one unit in the last place, or wrong with probability
/// about `|x| / 2^(l-1)`.
#[inline]
pub fn trunc_share(w: RingWidth, j: u128, v: u128, shift: u32) -> u128 {
    if j == 0 {
        w.from_signed(w.to_signed(v) >> shift)
    } else {
        w.neg(w.from_signed(w.to_signed(w.neg(v)) >> shift))
    }
}

pub fn trunc(w: RingWidth, j: u128, a: &[u128], shift: u32) -> Vec<u128> {
    a.iter().map(|&v| trunc_share(w, j, v, shift)).collect()
}

/// Local division by a public positive integer, same convention as
/// [`trunc_share`].
#[inline]
pub fn div_public_share(w: RingWidth, j: u128, v: u128, d: u128) -> u128 {
    let d = d as i128;
    if j == 0 {
        w.from_signed(w.to_signed(v).div_euclid(d))
    } else {
        w.neg(w.from_signed(w.to_signed(w.neg(v)).div_euclid(d)))
    }
}

pub fn div_public(w: RingWidth, j: u128, a: &[u128], d: u128) -> Vec<u128> {
    a.iter().map(|&v| div_public_share(w, j, v, d)).collect()
}

pub fn shl(w: RingWidth, a: &[u128], shift: u32) -> Vec<u128> {
    a.iter().map(|&x| w.shl(x, shift)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sharing::share_vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn truncation_is_within_one_unit() {
        let w = RingWidth::W64;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let secrets: Vec<i128> = (-500..500).map(|k| k * 123_457).collect();
        let raw: Vec<u128> = secrets.iter().map(|&s| w.from_signed(s)).collect();
        let (a, b) = share_vec(&raw, w, &mut rng);
        let ta = trunc(w, 0, &a, 13);
        let tb = trunc(w, 1, &b, 13);
        for (i, &s) in secrets.iter().enumerate() {
            let got = w.to_signed(w.add(ta[i], tb[i]));
            let want = s >> 13;
            assert!((got - want).abs() <= 1, "{s}: got {got}, want {want}");
        }
    }

    #[test]
    fn public_division_is_within_one_unit() {
        let w = RingWidth::W128;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let secrets: Vec<i128> = (0..1000).map(|k| k * 9_999_991).collect();
        let raw: Vec<u128> = secrets.iter().map(|&s| w.from_signed(s)).collect();
        let (a, b) = share_vec(&raw, w, &mut rng);
        for d in [2u128, 6, 24] {
            let (da, db) = (div_public(w, 0, &a, d), div_public(w, 1, &b, d));
            for (i, &s) in secrets.iter().enumerate() {
                let got = w.to_signed(w.add(da[i], db[i]));
                assert!((got - s / d as i128).abs() <= 1);
            }
        }
    }

    #[test]
    fn public_constant_is_added_once() {
        let w = RingWidth::W64;
        let a = add_public(w, 0, &[10], 8192);
        let b = add_public(w, 1, &[w.neg(10)], 8192);
        assert_eq!(w.add(a[0], b[0]), 8192);
    }
}
