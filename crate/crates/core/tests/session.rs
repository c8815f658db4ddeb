use std::time::Duration;

use actmpc_core::runtime::{NetworkAddrs, SessionInfo};
use actmpc_core::sharefile::ShareFile;
use actmpc_core::sim::{free_loopback_addr, random_inputs, share_inputs, simulate};
use actmpc_core::sharing::reconstruct_vec;
use actmpc_core::{start_network_party, Error, PartyId, Protocol, ProtocolConfig, TransportKind};

#[test]
fn transcripts_depend_only_on_shapes() {
    for p in Protocol::ALL {
        let mut seen = None;
        for seed in 0..3u64 {
            let c = ProtocolConfig::default().with_seed(seed);
            let inputs = random_inputs(p, &c, 3, 4, 100 + seed);
            let t = simulate(&c, p, &inputs).unwrap().transcript;
            let volume = (t.bytes, t.messages, t.rounds);
            match &seen {
                None => seen = Some(volume),
                Some(v) => assert_eq!(v, &volume, "{p}"),
            }
            assert_eq!(t.rounds, p.declared_rounds(&c));
        }
    }
}

#[test]
fn helper_receives_nothing() {
    let c = ProtocolConfig::default();
    for p in Protocol::ALL {
        let inputs = random_inputs(p, &c, 2, 3, 7);
        let t = simulate(&c, p, &inputs).unwrap().transcript;
        assert_eq!(t.received_by(PartyId::P2), 0, "{p}");
        assert!(t.sent_by(PartyId::P2) > 0, "{p}");
    }
}

#[test]
fn composite_transcripts_cover_their_parts() {
    let c = ProtocolConfig::default();
    let bytes = |p: Protocol| {
        let inputs = random_inputs(p, &c, 4, 4, 1);
        simulate(&c, p, &inputs).unwrap().transcript.total_bytes()
    };
    assert!(bytes(Protocol::Sigmoid) >= bytes(Protocol::Exp) + bytes(Protocol::Division));
    assert!(bytes(Protocol::DSigmoid) > bytes(Protocol::Sigmoid));
}

#[test]
fn tcp_and_local_transports_agree() {
    let c = ProtocolConfig::default().with_seed(9);
    let inputs = random_inputs(Protocol::Sigmoid, &c, 4, 4, 3);
    let local = simulate(&c, Protocol::Sigmoid, &inputs).unwrap();
    let tcp = simulate(&c.clone().with_transport(TransportKind::Tcp), Protocol::Sigmoid, &inputs).unwrap();
    assert_eq!(local.raw, tcp.raw);
    assert_eq!(local.transcript.bytes, tcp.transcript.bytes);
}

fn addrs() -> NetworkAddrs {
    let mut a = NetworkAddrs::new(free_loopback_addr().unwrap(), free_loopback_addr().unwrap());
    a.timeout = Duration::from_secs(3);
    a
}

#[test]
fn mismatched_precision_fails_the_handshake() {
    let a = addrs();
    let info = SessionInfo { protocol_id: Protocol::Exp.id(), rows: 1, cols: 1 };
    let results: Vec<_> = std::thread::scope(|s| {
        let hs: Vec<_> = [(PartyId::P0, 13), (PartyId::P1, 12)]
            .into_iter()
            .map(|(role, f)| {
                let a = a.clone();
                s.spawn(move || {
                    let c = ProtocolConfig::default().with_frac_bits(f);
                    start_network_party(&c, role, &a, info).map(|_| ())
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(
        results.iter().any(|r| matches!(r, Err(Error::Handshake { .. }))),
        "{results:?}"
    );
}

#[test]
fn unreachable_peer_is_a_transport_error() {
    let mut a = addrs();
    a.timeout = Duration::from_millis(300);
    let info = SessionInfo::default();
    let r = start_network_party(&ProtocolConfig::default(), PartyId::P2, &a, info);
    match r {
        Err(Error::Transport { peer, .. }) => assert_eq!(peer, PartyId::P0),
        other => panic!("expected a transport error, got {other:?}"),
    }
}

#[test]
fn share_files_reconstruct_the_owner_data() {
    let c = ProtocolConfig::default().with_seed(4);
    let inputs = random_inputs(Protocol::Exp, &c, 10, 10, 5);
    let [s0, s1] = share_inputs(&c, &inputs).unwrap();
    let dir = std::env::temp_dir().join(format!("actmpc-share-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (p0, p1) = (dir.join("p0.bin"), dir.join("p1.bin"));
    ShareFile::new(&c, PartyId::P0, s0[0].data.clone()).unwrap().write_to(&p0).unwrap();
    ShareFile::new(&c, PartyId::P1, s1[0].data.clone()).unwrap().write_to(&p1).unwrap();
    let (f0, f1) = (ShareFile::read_from(&p0).unwrap(), ShareFile::read_from(&p1).unwrap());
    assert!(f0.pairs_with(&f1));
    let raw = reconstruct_vec(&f0.shares, &f1.shares, c.width).unwrap();
    for (r, x) in raw.iter().zip(&inputs[0].data) {
        assert_eq!(*r, c.fixed().encode_raw(*x).unwrap());
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn a_failing_party_does_not_stall_the_others() {
    use actmpc_core::primitives::{mul, SharedMatrix};
    let c = ProtocolConfig::default();
    let mut session = actmpc_core::start_local_session(&c).unwrap();
    let r = session.run(|p| {
        if p.id() == PartyId::P1 {
            return Err(Error::Protocol("P1 gives up".into()));
        }
        let x = SharedMatrix::new(1, 4, true, vec![0; 4])?;
        mul(p, &x, &x)
    });
    assert!(r.is_err());

    let mut session = actmpc_core::start_local_session(&c).unwrap();
    let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        session.run(|p| {
            assert!(p.id() != PartyId::P0, "P0 panics");
            let x = SharedMatrix::new(1, 4, true, vec![0; 4])?;
            mul(p, &x, &x)
        })
    }));
    assert!(r.is_err());
}
