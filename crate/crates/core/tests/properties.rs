use std::collections::BTreeMap;

use proptest::prelude::*;

use hexnc::analysis::{benefit, lemma1, lemma2};
use hexnc::engine::{energy, run, RandomBits, RunConfig, SymbolicSources, ZeroSources};
use hexnc::hexcode::{node_constants, tilde};
use hexnc::routing::{routing_energy, shortest_paths, simulate_routing};
use hexnc::topology::{build_triangle, place_sessions};
use hexnc::verify::{
    oracle_transmission, propagate_constants, verify_code, verify_concrete, verify_line,
    verify_line_concrete,
};
use hexnc::{
    Bit, Direction, HexNetwork, LinComb, NodeId, Part, Role, SessionId, SessionKind, TriCoord,
};

fn bit_run(k: u32, horizon: i64, seed: u64) -> hexnc::Trace<Bit> {
    let net = HexNetwork::new(k).unwrap();
    let bits = RandomBits::new(net.sessions(), horizon, seed);
    run(
        &net.topology,
        &net.placements,
        &net.behaviors(),
        &bits,
        RunConfig::new(horizon),
    )
    .unwrap()
}

#[test]
fn zero_sources_give_zero_payloads() {
    for k in 2..=7 {
        let net = HexNetwork::new(k).unwrap();
        let trace = run(
            &net.topology,
            &net.placements,
            &net.behaviors::<Bit>(),
            &ZeroSources,
            RunConfig::new(10),
        )
        .unwrap();
        assert!(trace.transmissions().all(|t| *t.payload == Bit::ZERO));
    }
}

#[test]
fn first_slot_counts() {
    let trace = bit_run(4, 1, 0);
    assert_eq!(trace.transmissions_per_slot(), vec![28]);
    let e = energy(&bit_run(2, 6, 0), 1).unwrap();
    assert!(e.transmissions_per_slot.iter().all(|c| *c == 9));
}

#[test]
fn internal_node_carries_three_tilde_terms() {
    let net = HexNetwork::new(4).unwrap();
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<LinComb>(),
        &SymbolicSources,
        RunConfig::new(8),
    )
    .unwrap();
    let idx = net
        .topology
        .index_of(NodeId::Tri(TriCoord::new(2, 2)))
        .unwrap();
    let mut want = LinComb::new();
    for role in Role::ALL {
        want += tilde(role, 2, 6, 4).unwrap();
    }
    assert_eq!(trace.get(idx, 8, Part::Whole), Some(&want));
}

#[test]
fn left_edge_receiver_recovers_source() {
    // Q = (2,1), B[Q] = (3,1), session z_3 with δz = 3
    let k = 4;
    let horizon = 12;
    let trace = bit_run(k, horizon, 99);
    let net = HexNetwork::new(k).unwrap();
    let bits = RandomBits::new(net.sessions(), horizon, 99);
    let q = net
        .topology
        .index_of(NodeId::Tri(TriCoord::new(2, 1)))
        .unwrap();
    let b = net
        .topology
        .index_of(NodeId::Tri(TriCoord::new(3, 1)))
        .unwrap();
    let dz = i64::from(node_constants(TriCoord::new(2, 1), k).dz);
    let z3 = SessionId::new(SessionKind::Z, 3);
    for t in 2..=horizon {
        let qz = *trace.get(q, t, Part::Role(Role::Z)).unwrap();
        let bz = *trace.get(b, t - 1, Part::Role(Role::Z)).unwrap();
        assert_eq!(qz + bz, bits.bit(z3, t - dz), "t={t}");
    }
}

#[test]
fn superposition_exhaustive_small_k() {
    for k in 2..=6u32 {
        let r = verify_concrete(k, 4 * i64::from(k), u64::from(k) * 31, None).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn decode_random_streams() {
    for k in 2..=10u32 {
        let r = verify_concrete(k, 3 * i64::from(k), 2024, Some(200)).unwrap();
        assert!(r.failures.is_empty(), "{}", r.to_text());
    }
}

#[test]
fn one_symbol_per_session_per_slot() {
    let k = 6;
    let horizon = 20;
    let trace = bit_run(k, horizon, 5);
    let mut per_session: BTreeMap<SessionId, usize> = BTreeMap::new();
    for (session, _) in trace.decoded().keys() {
        *per_session.entry(*session).or_default() += 1;
    }
    assert_eq!(per_session.len(), 3 * k as usize);
    assert!(per_session.values().all(|n| *n == horizon as usize));
}

#[test]
fn energy_independent_of_payload() {
    let a = energy(&bit_run(7, 21, 1), 6).unwrap();
    let b = energy(&bit_run(7, 21, 2), 6).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        a.steady_average,
        num_rational::Ratio::from_integer(lemma2(7).unwrap())
    );
}

#[test]
fn deterministic_serialization() {
    assert_eq!(bit_run(5, 15, 3).serialize(), bit_run(5, 15, 3).serialize());
    assert_ne!(bit_run(5, 15, 3).serialize(), bit_run(5, 15, 4).serialize());
}

#[test]
fn serialized_trace_matches_oracle() {
    let k = 3;
    let horizon = 5;
    let net = HexNetwork::new(k).unwrap();
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<LinComb>(),
        &SymbolicSources,
        RunConfig::new(horizon),
    )
    .unwrap();
    let mut want = String::new();
    for slot in 1..=horizon {
        for p in hexnc::topology::coords(k) {
            for role in Role::ALL {
                let v = oracle_transmission(p, k, slot, Part::Role(role))
                    .unwrap()
                    .value;
                let tag = ["x", "y", "z"][role as usize];
                want.push_str(&format!("{slot},{},{},{tag},{v}\n", p.c, p.r));
            }
        }
    }
    assert_eq!(trace.serialize(), want);
}

#[test]
fn line_trace_golden() {
    let net = hexnc::LineNetwork::new(3).unwrap();
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<LinComb>(),
        &SymbolicSources,
        RunConfig::new(3),
    )
    .unwrap();
    let golden = "\
1,1,0,whole,a1(1)
1,2,0,whole,0
1,3,0,whole,b1(1)
2,1,0,whole,a1(2)
2,2,0,whole,a1(1)+b1(1)
2,3,0,whole,b1(2)
3,1,0,whole,a1(3)
3,2,0,whole,a1(2)+b1(2)
3,3,0,whole,b1(3)
";
    assert_eq!(trace.serialize(), golden);
}

#[test]
fn routing_formula_equals_bfs_hop_sum() {
    for k in 2..=50u32 {
        let t = build_triangle(k).unwrap();
        let table = shortest_paths(&t, &place_sessions(k).unwrap()).unwrap();
        assert_eq!(table.total_hops(), routing_energy(k).unwrap(), "K={k}");
    }
}

#[test]
fn routing_delivers_with_hop_delay() {
    for k in 2..=8u32 {
        let t = build_triangle(k).unwrap();
        let p = place_sessions(k).unwrap();
        let horizon = 3 * i64::from(k);
        let bits = RandomBits::new(p.iter().map(|s| s.session), horizon, 11);
        let (table, trace) = simulate_routing(&t, &p, &bits, horizon).unwrap();
        assert!(trace
            .transmissions_per_slot()
            .iter()
            .all(|c| *c == lemma1(u64::from(k)).unwrap()));
        for route in &table.routes {
            let h = route.hops() as i64;
            for slot in 1..=horizon {
                assert_eq!(
                    trace.decoded_at(route.session, slot),
                    Some(&bits.bit(route.session, slot - h)),
                    "K={k} {} slot {slot}",
                    route.session
                );
            }
        }
    }
}

#[test]
fn line_scheme_symbolic_and_concrete() {
    for n in 2..=12u32 {
        let r = verify_line(n, 3 * i64::from(n)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let r = verify_line_concrete(n, 100, u64::from(n)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn verify_code_rejects_short_horizon() {
    assert!(verify_code(5, 9).is_err());
    assert!(verify_code(1, 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn propagation_is_order_independent(k in 2u32..=8, order in Just(Direction::ALL.to_vec()).prop_shuffle()) {
        let (constants, bad) = propagate_constants(k, &order);
        prop_assert!(bad.is_empty());
        for p in hexnc::topology::coords(k) {
            prop_assert_eq!(constants[&p], node_constants(p, k));
        }
    }

    #[test]
    fn benefit_below_three(k in 2u64..=1_000_000) {
        let b = benefit(k).unwrap();
        prop_assert!(b < num_rational::Ratio::from_integer(3));
        prop_assert!(benefit(k + 1).unwrap() > b);
    }

    #[test]
    fn neighbor_round_trip(k in 2u32..=12, c in 1u32..=12, r in 1u32..=12, d in 0usize..6) {
        let p = TriCoord::new(c, r);
        prop_assume!(p.is_valid(k));
        let dir = Direction::ALL[d];
        if let Some(q) = p.step(dir, k) {
            prop_assert_eq!(q.step(dir.inverse(), k), Some(p));
        }
    }
}
