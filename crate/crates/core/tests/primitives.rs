mod common;

use actmpc_core::primitives::{
    bit_decomp, compare_ge, division, mat_mul, mul, pre_mult, rounds, trunc_floor,
};
use actmpc_core::{ProtocolConfig, RingWidth};
use common::{decode_all, encode_all, run_raw, Operand, ULP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn integer_mat_mul_is_exact() {
    let c = ProtocolConfig::default();
    let w = c.width;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..100 {
        let x: Vec<u128> = (0..9).map(|_| rng.gen::<u64>() as u128).collect();
        let y: Vec<u128> = (0..9).map(|_| rng.gen::<u64>() as u128).collect();
        let ops = [
            Operand { rows: 3, cols: 3, fixed: false, raw: x.clone() },
            Operand { rows: 3, cols: 3, fixed: false, raw: y.clone() },
        ];
        let (z, r) = run_raw(&c.clone().with_seed(case), &ops, |p, s| mat_mul(p, &s[0], &s[1]));
        for i in 0..3 {
            for j in 0..3 {
                let want = (0..3).fold(0u128, |acc, k| w.add(acc, w.mul(x[i * 3 + k], y[k * 3 + j])));
                assert_eq!(z[i * 3 + j], want);
            }
        }
        assert_eq!(r, rounds::MUL);
    }
}

#[test]
fn rectangular_mat_mul_and_shape_errors() {
    let c = ProtocolConfig::default();
    let x = encode_all(&c, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    let y = encode_all(&c, &[0.5, -1.0, 0.25]);
    let ops = [
        Operand { rows: 2, cols: 3, fixed: true, raw: x },
        Operand { rows: 3, cols: 1, fixed: true, raw: y },
    ];
    let (z, _) = run_raw(&c, &ops, |p, s| mat_mul(p, &s[0], &s[1]));
    let got = decode_all(&c, &z);
    assert!((got[0] - (0.5 - 2.0 + 0.75)).abs() <= 2.0 * ULP);
    assert!((got[1] - (2.0 - 5.0 + 1.5)).abs() <= 2.0 * ULP);

    let mut session = actmpc_core::start_local_session(&c).unwrap();
    let err = session.run(|p| {
        let a = actmpc_core::primitives::SharedMatrix::placeholder(2, 3, true);
        mat_mul(p, &a, &a)
    });
    assert!(matches!(err, Err(actmpc_core::Error::Usage(_))));
}

#[test]
fn fixed_point_product_is_within_one_unit() {
    let c = ProtocolConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let xs: Vec<f64> = (0..500).map(|_| rng.gen_range(-50.0..50.0)).collect();
    let ys: Vec<f64> = (0..500).map(|_| rng.gen_range(-50.0..50.0)).collect();
    let ops = [Operand::row(encode_all(&c, &xs), true), Operand::row(encode_all(&c, &ys), true)];
    let (z, _) = run_raw(&c, &ops, |p, s| mul(p, &s[0], &s[1]));
    let fx = c.fixed();
    for (i, got) in decode_all(&c, &z).into_iter().enumerate() {
        let exact = fx.decode_raw(ops[0].raw[i]) * fx.decode_raw(ops[1].raw[i]);
        assert!((got - exact).abs() <= 2.0 * ULP, "{} * {}: {got}", xs[i], ys[i]);
    }
}

#[test]
fn bit_decomp_is_exhaustively_correct_below_256() {
    for width in [RingWidth::W64, RingWidth::W128] {
        let c = ProtocolConfig::default().with_width(width);
        let values: Vec<u128> = (0..256).collect();
        let mut session = actmpc_core::start_local_session(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (a, b) = actmpc_core::sharing::share_vec(&values, width, &mut rng);
        let inputs = [a, b, vec![0; 256]];
        let [(b0, r0), (b1, _), _] = session
            .run(|p| {
                let x = actmpc_core::primitives::SharedMatrix::from_vec(inputs[p.id().index()].clone(), false);
                let before = p.rounds();
                let bits = bit_decomp(p, &x, 8)?;
                Ok((bits, p.rounds() - before))
            })
            .unwrap();
        assert_eq!(r0, rounds::bit_decomp(8));
        for (v, &value) in values.iter().enumerate() {
            for i in 0..8 {
                let bit = width.add(b0.bits[i].data[v], b1.bits[i].data[v]);
                assert_eq!(bit, (value >> i) & 1, "bit {i} of {value}");
            }
        }
    }
}

#[test]
fn bit_decomp_rejects_bad_bit_counts() {
    let c = ProtocolConfig::default();
    let mut session = actmpc_core::start_local_session(&c).unwrap();
    let r = session.run(|p| {
        let x = actmpc_core::primitives::SharedMatrix::from_vec(vec![0], false);
        bit_decomp(p, &x, 65).map(|_| ())
    });
    assert!(matches!(r, Err(actmpc_core::Error::Usage(_))));
}

#[test]
fn trunc_floor_is_exact() {
    let c = ProtocolConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let raw: Vec<u128> = (0..1000).map(|_| rng.gen_range(0..(32u128 << 13))).collect();
    let ops = [Operand::row(raw.clone(), true)];
    let (z, r) = run_raw(&c, &ops, |p, s| trunc_floor(p, &s[0]).map(|(int, _)| int));
    assert_eq!(r, rounds::trunc_floor(&c));
    for (got, v) in z.iter().zip(&raw) {
        assert_eq!(*got, v >> 13);
    }
}

#[test]
fn comparison_on_signed_values() {
    let c = ProtocolConfig::default();
    let w = c.width;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let xs: Vec<i128> = (0..300).map(|_| rng.gen_range(-1_000_000..1_000_000)).collect();
    let mut ys: Vec<i128> = (0..300).map(|_| rng.gen_range(-1_000_000..1_000_000)).collect();
    ys[0] = xs[0];
    let ops = [
        Operand::row(xs.iter().map(|&v| w.from_signed(v)).collect(), false),
        Operand::row(ys.iter().map(|&v| w.from_signed(v)).collect(), false),
    ];
    let (z, r) = run_raw(&c, &ops, |p, s| compare_ge(p, &s[0], &s[1]));
    assert_eq!(r, rounds::compare(&c));
    for i in 0..xs.len() {
        assert_eq!(z[i], (xs[i] >= ys[i]) as u128, "{} >= {}", xs[i], ys[i]);
    }
}

#[test]
fn division_is_within_four_units() {
    let c = ProtocolConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 1000;
    let xs: Vec<u128> = (0..n).map(|_| rng.gen_range(0..(8u128 << 13))).collect();
    let ys: Vec<u128> = (0..n).map(|_| rng.gen_range((1u128 << 12)..(8u128 << 13))).collect();
    let ops = [Operand::row(xs.clone(), true), Operand::row(ys.clone(), true)];
    let (z, r) = run_raw(&c, &ops, |p, s| division(p, &s[0], &s[1]));
    assert_eq!(r, rounds::division(&c));
    for (i, got) in decode_all(&c, &z).into_iter().enumerate() {
        let want = xs[i] as f64 / ys[i] as f64;
        assert!((got - want).abs() <= 4.0 * ULP, "{} / {}: {got} vs {want}", xs[i], ys[i]);
    }
}

#[test]
fn division_by_zero_saturates() {
    let c = ProtocolConfig::default();
    let ops = [Operand::row(encode_all(&c, &[1.0]), true), Operand::row(vec![0], true)];
    let (z, _) = run_raw(&c, &ops, |p, s| division(p, &s[0], &s[1]));
    assert_eq!(z[0], (1 << 26) - 1);
}

#[test]
fn pre_mult_is_within_m_units() {
    let c = ProtocolConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100u64 {
        let len = rng.gen_range(1..=6);
        let factors: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ops: Vec<Operand> = factors.iter().map(|&f| Operand::row(encode_all(&c, &[f]), true)).collect();
        let (z, r) = run_raw(&c.clone().with_seed(case), &ops, pre_mult);
        assert_eq!(r, rounds::pre_mult(len as u32));
        let fx = c.fixed();
        let exact: f64 = ops.iter().map(|o| fx.decode_raw(o.raw[0])).product();
        let got = fx.decode_raw(z[0]);
        assert!((got - exact).abs() <= len as f64 * ULP, "{factors:?}: {got} vs {exact}");
    }
}

#[test]
fn comparison_is_antisymmetric_on_random_pairs() {
    let c = ProtocolConfig::default();
    let w = c.width;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let bound = 1i128 << 61;
    let mut xs: Vec<i128> = (0..10_000).map(|_| rng.gen_range(-bound..bound)).collect();
    let ys: Vec<i128> = (0..10_000).map(|_| rng.gen_range(-bound..bound)).collect();
    xs[..10].copy_from_slice(&ys[..10]);
    let enc = |v: &[i128]| Operand::row(v.iter().map(|&x| w.from_signed(x)).collect(), false);
    let (ge, _) = run_raw(&c, &[enc(&xs), enc(&ys)], |p, s| compare_ge(p, &s[0], &s[1]));
    let (le, _) = run_raw(&c, &[enc(&ys), enc(&xs)], |p, s| compare_ge(p, &s[0], &s[1]));
    for i in 0..xs.len() {
        assert_eq!(ge[i], (xs[i] >= ys[i]) as u128);
        assert_eq!(ge[i] + le[i], if xs[i] == ys[i] { 2 } else { 1 });
    }
}

#[test]
fn bit_decomp_recomposes_exhaustively_for_ten_bits() {
    let c = ProtocolConfig::default();
    let values: Vec<u128> = (0..1024).collect();
    let (z, _) = run_raw(&c, &[Operand::row(values.clone(), false)], |p, s| {
        bit_decomp(p, &s[0], 10).map(|b| b.recompose(p.width()))
    });
    assert_eq!(z, values);
}

#[test]
fn worked_examples() {
    let c = ProtocolConfig::default();
    let row = |xs: &[f64]| Operand::row(encode_all(&c, xs), true);

    let (z, _) = run_raw(&c, &[row(&[2.0]), row(&[3.0])], |p, s| mat_mul(p, &s[0], &s[1]));
    assert!((decode_all(&c, &z)[0] - 6.0).abs() <= ULP);

    let x = [0.5, -1.25, 3.0, 2.0, 0.0, 7.5, -3.0, 1.0, 4.25];
    let id = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
    let ops = [
        Operand { rows: 3, cols: 3, fixed: true, raw: encode_all(&c, &x) },
        Operand { rows: 3, cols: 3, fixed: true, raw: encode_all(&c, &id) },
    ];
    let (z, _) = run_raw(&c, &ops, |p, s| mat_mul(p, &s[0], &s[1]));
    for (got, want) in decode_all(&c, &z).iter().zip(x) {
        assert!((got - want).abs() <= ULP);
    }

    let (z, _) = run_raw(&c, &[row(&[2.5, 0.75])], |p, s| {
        trunc_floor(p, &s[0]).map(|(int, fx)| {
            let mut both = int.clone();
            both.data.extend(fx.data);
            both
        })
    });
    assert_eq!(&z[..2], &[2, 0]);
    assert_eq!(&z[2..], &encode_all(&c, &[2.0, 0.0])[..]);

    let (z, _) = run_raw(&c, &[Operand::row(vec![5, 0], false)], |p, s| {
        bit_decomp(p, &s[0], 4).map(|b| {
            let data = b.bits.iter().flat_map(|m| m.data.clone()).collect();
            actmpc_core::primitives::SharedMatrix::from_vec(data, false)
        })
    });
    // bit-major: (bit 0 of 5, bit 0 of 0), (bit 1 of 5, ...), ...
    assert_eq!(z, vec![1, 0, 0, 0, 1, 0, 0, 0]);

    let (z, _) = run_raw(&c, &[row(&[2.0]), row(&[3.0]), row(&[4.0])], pre_mult);
    assert!((decode_all(&c, &z)[0] - 24.0).abs() <= 3.0 * ULP);

    let (z, _) = run_raw(&c, &[row(&[6.0, 1.0, 2.75]), row(&[3.0, 3.0, 1.0])], |p, s| {
        division(p, &s[0], &s[1])
    });
    let q = decode_all(&c, &z);
    for (got, want) in q.iter().zip([2.0, 1.0 / 3.0, 2.75]) {
        assert!((got - want).abs() <= 4.0 * ULP, "{got} vs {want}");
    }
}

#[test]
fn quotient_times_divisor_recovers_the_dividend() {
    let c = ProtocolConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let xs: Vec<f64> = (0..200).map(|_| rng.gen_range(0.0..4.0)).collect();
    let ys: Vec<f64> = (0..200).map(|_| rng.gen_range(0.5..4.0)).collect();
    let ops = [Operand::row(encode_all(&c, &xs), true), Operand::row(encode_all(&c, &ys), true)];
    let (z, _) = run_raw(&c, &ops, |p, s| {
        let q = division(p, &s[0], &s[1])?;
        mul(p, &q, &s[1])
    });
    let fx = c.fixed();
    for (i, got) in decode_all(&c, &z).into_iter().enumerate() {
        let (x, y) = (fx.decode_raw(ops[0].raw[i]), fx.decode_raw(ops[1].raw[i]));
        assert!((got - x).abs() <= 4.0 * ULP * y + ULP, "({x} / {y}) * {y} = {got}");
    }
}

#[test]
fn transcripts_do_not_depend_on_values() {
    let c = ProtocolConfig::default();
    let mut sizes = Vec::new();
    for seed in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<u128> = (0..16).map(|_| rng.gen_range(0..(4u128 << 13))).collect();
        let ys: Vec<u128> = (0..16).map(|_| rng.gen_range((1u128 << 13)..(4u128 << 13))).collect();
        let ops = [Operand::row(xs, true), Operand::row(ys, true)];
        let mut session = actmpc_core::start_local_session(&c.clone().with_seed(seed)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
        let shares: Vec<_> = ops
            .iter()
            .map(|o| actmpc_core::sharing::share_vec(&o.raw, c.width, &mut rng))
            .collect();
        let per_party: Vec<Vec<actmpc_core::primitives::SharedMatrix>> = (0..3)
            .map(|j| {
                shares
                    .iter()
                    .map(|(a, b)| {
                        let data = match j {
                            0 => a.clone(),
                            1 => b.clone(),
                            _ => vec![0; a.len()],
                        };
                        actmpc_core::primitives::SharedMatrix::from_vec(data, true)
                    })
                    .collect()
            })
            .collect();
        let ts = session
            .run(|p| {
                let mark = p.mark();
                let s = &per_party[p.id().index()];
                compare_ge(p, &s[0], &s[1])?;
                division(p, &s[0], &s[1])?;
                pre_mult(p, s)?;
                Ok(p.transcript_since(&mark))
            })
            .unwrap();
        sizes.push(actmpc_core::SessionTranscript::merge(ts.iter()).bytes);
    }
    assert!(sizes.windows(2).all(|w| w[0] == w[1]));
}
