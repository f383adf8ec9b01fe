//! Closed-form oracles and exhaustive checks of the code.
//!
//! The oracle computes what each node should carry directly from its
//! constants and the tilde sums. The checks run the causal rules through the
//! engine and compare every emission and every decoded symbol against it.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::lemma2;
use crate::engine::{run, Part, RandomBits, RunConfig, SymbolicSources, Trace};
use crate::error::{Error, Result};
use crate::gf2::{Bit, LinComb, Payload, SymbolTerm};
use crate::hexcode::{node_constants, tilde, HexNetwork, NodeConstants};
use crate::linenet::{LineNetwork, SESSION_A, SESSION_B};
use crate::topology::{
    classify, coords, rotate, rotate_n, Direction, NodeId, Role, SessionId, SessionPlacement,
    TriCoord,
};

/// Oracle value for one emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleValue {
    pub value: LinComb,
    /// Set when a `whole` value is requested for a border node, which never
    /// actually transmits it.
    pub notional: bool,
}

/// Closed-form content of `part` emitted by `p` in slot `t`.
pub fn oracle_transmission(p: TriCoord, k: u32, t: i64, part: Part) -> Result<OracleValue> {
    if !p.is_valid(k) {
        return Err(Error::InvalidParameter(format!(
            "{p} outside the K={k} triangle"
        )));
    }
    let c = node_constants(p, k);
    let term = |role: Role| {
        let (index, delay) = c.role(role);
        tilde(role, index, t - i64::from(delay), k)
    };
    match part {
        Part::Whole => {
            let mut value = LinComb::new();
            for role in Role::ALL {
                value += term(role)?;
            }
            Ok(OracleValue {
                value,
                notional: classify(p, k).is_border(),
            })
        }
        Part::Role(role) => Ok(OracleValue {
            value: term(role)?,
            notional: false,
        }),
        Part::Relay(_) => Err(Error::InvalidParameter("relay parts have no oracle".into())),
    }
}

/// One problem found by a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Emission differs from the oracle.
    Mismatch {
        node: NodeId,
        slot: i64,
        part: Part,
        expected: String,
        actual: String,
    },
    /// A node emitted a part it should not, or omitted one it should.
    Shape {
        node: NodeId,
        slot: i64,
        detail: String,
    },
    Decode {
        session: SessionId,
        slot: i64,
        expected: String,
        actual: String,
    },
    Energy {
        slot: i64,
        expected: u64,
        actual: u64,
    },
    Symmetry {
        node: NodeId,
        detail: String,
    },
    /// Emission carries a source symbol the node neither originates nor decodes.
    DecodedSource {
        node: NodeId,
        slot: i64,
        part: Part,
        term: SymbolTerm,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = |n: &NodeId| {
            let (c, r) = n.columns();
            format!("{c},{r}")
        };
        match self {
            Violation::Mismatch {
                node,
                slot,
                part,
                expected,
                actual,
            } => write!(
                f,
                "mismatch,{slot},{},{part},{expected},{actual}",
                cols(node)
            ),
            Violation::Shape { node, slot, detail } => {
                write!(f, "shape,{slot},{},{detail}", cols(node))
            }
            Violation::Decode {
                session,
                slot,
                expected,
                actual,
            } => {
                write!(f, "decode,{slot},{session},{expected},{actual}")
            }
            Violation::Energy {
                slot,
                expected,
                actual,
            } => {
                write!(f, "energy,{slot},{expected},{actual}")
            }
            Violation::Symmetry { node, detail } => write!(f, "symmetry,{},{detail}", cols(node)),
            Violation::DecodedSource {
                node,
                slot,
                part,
                term,
            } => {
                write!(f, "decoded-source,{slot},{},{part},{term}", cols(node))
            }
        }
    }
}

/// Outcome of a check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub k: u32,
    pub horizon: i64,
    pub checked_transmissions: u64,
    pub checked_decodes: u64,
    pub mismatches: Vec<Violation>,
    pub failures: Vec<Violation>,
    pub property_violations: Vec<Violation>,
}

impl VerificationReport {
    fn new(k: u32, horizon: i64) -> Self {
        Self {
            k,
            horizon,
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.failures.is_empty()
            && self.property_violations.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.mismatches.len() + self.failures.len() + self.property_violations.len()
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.mismatches
            .iter()
            .chain(&self.failures)
            .chain(&self.property_violations)
    }

    /// Header line followed by one violation per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "K={} T={} transmissions={} decodes={} violations={} pass={}\n",
            self.k,
            self.horizon,
            self.checked_transmissions,
            self.checked_decodes,
            self.violation_count(),
            self.passed()
        );
        for v in self.violations() {
            let _ = writeln!(out, "{v}");
        }
        out
    }
}

/// Runs the code symbolically for `horizon` slots.
pub fn symbolic_trace(k: u32, horizon: i64) -> Result<(HexNetwork, Trace<LinComb>)> {
    let net = HexNetwork::new(k)?;
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors(),
        &SymbolicSources,
        RunConfig::new(horizon),
    )?;
    Ok((net, trace))
}

fn expected_parts(p: TriCoord, k: u32) -> Vec<Part> {
    if classify(p, k).is_border() {
        Role::ALL.into_iter().map(Part::Role).collect()
    } else {
        vec![Part::Whole]
    }
}

/// Checks every emission against the oracle, every receiver output against
/// its session delayed by `K-1`, and the per-slot count against the closed
/// form.
pub fn verify_code(k: u32, horizon: i64) -> Result<VerificationReport> {
    if k < 2 || horizon < 2 * i64::from(k) {
        return Err(Error::InvalidParameter(format!(
            "need K >= 2 and T >= 2K, got K={k} T={horizon}"
        )));
    }
    let (net, trace) = symbolic_trace(k, horizon)?;
    let mut report = VerificationReport::new(k, horizon);
    let expected_count = lemma2(u64::from(k))?;
    for slot in 1..=horizon {
        for (idx, node) in trace.nodes().iter().enumerate() {
            let p = node.tri().expect("triangle");
            let emitted = trace.emissions(idx, slot);
            let want_parts = expected_parts(p, k);
            let got_parts: Vec<Part> = emitted.iter().map(|(part, _)| *part).collect();
            if got_parts != want_parts {
                report.failures.push(Violation::Shape {
                    node: *node,
                    slot,
                    detail: format!("parts {got_parts:?}"),
                });
            }
            for (part, actual) in emitted {
                report.checked_transmissions += 1;
                let expected = oracle_transmission(p, k, slot, *part)?.value;
                if &expected != actual {
                    report.mismatches.push(Violation::Mismatch {
                        node: *node,
                        slot,
                        part: *part,
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                    });
                }
            }
        }
        let count = trace.transmissions_per_slot()[slot as usize - 1];
        if count != expected_count {
            report.failures.push(Violation::Energy {
                slot,
                expected: expected_count,
                actual: count,
            });
        }
    }
    let delay = i64::from(k) - 1;
    for pl in &net.placements {
        for slot in 1..=horizon {
            report.checked_decodes += 1;
            let expected = LinComb::term(pl.session, slot - delay);
            let actual = trace.decoded().get(&(pl.session, slot));
            let ok = matches!(actual, Some((n, v)) if *n == pl.receiver && *v == expected);
            if !ok {
                report.failures.push(Violation::Decode {
                    session: pl.session,
                    slot,
                    expected: expected.to_string(),
                    actual: actual.map_or("none".into(), |(_, v)| v.to_string()),
                });
            }
        }
    }
    Ok(report)
}

/// Concrete run with seeded random bits: checks decoding at delay `K-1` for
/// `t > K-1`, and that bit payloads equal the symbolic combinations
/// evaluated on the same streams. `samples` limits the payload comparison to
/// that many seeded `(node, slot)` pairs; `None` compares all.
pub fn verify_concrete(
    k: u32,
    horizon: i64,
    seed: u64,
    samples: Option<usize>,
) -> Result<VerificationReport> {
    let net = HexNetwork::new(k)?;
    let bits = RandomBits::new(net.sessions(), horizon, seed);
    let concrete = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<Bit>(),
        &bits,
        RunConfig::new(horizon),
    )?;
    let symbolic = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<LinComb>(),
        &SymbolicSources,
        RunConfig::new(horizon),
    )?;
    let mut report = VerificationReport::new(k, horizon);
    let delay = i64::from(k) - 1;
    for pl in &net.placements {
        for slot in delay + 1..=horizon {
            report.checked_decodes += 1;
            let expected = bits.bit(pl.session, slot - delay);
            let actual = concrete.decoded_at(pl.session, slot).copied();
            if actual != Some(expected) {
                report.failures.push(Violation::Decode {
                    session: pl.session,
                    slot,
                    expected: expected.encode(),
                    actual: actual.map_or("none".into(), |b| b.encode()),
                });
            }
        }
    }
    let n = net.topology.len();
    let pairs: Vec<(usize, i64)> = match samples {
        None => (1..=horizon)
            .flat_map(|s| (0..n).map(move |i| (i, s)))
            .collect(),
        Some(m) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            (0..m)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(1..=horizon)))
                .collect()
        }
    };
    for (idx, slot) in pairs {
        for (part, sym) in symbolic.emissions(idx, slot) {
            report.checked_transmissions += 1;
            let want = sym.eval(|s, t| bits.bit(s, t));
            let got = concrete.get(idx, slot, *part).copied();
            if got != Some(want) {
                report.mismatches.push(Violation::Mismatch {
                    node: net.topology.node(idx),
                    slot,
                    part: *part,
                    expected: want.encode(),
                    actual: got.map_or("none".into(), |b| b.encode()),
                });
            }
        }
    }
    Ok(report)
}

/// Checks that constants commute with the rotation: `(j,δy)` at `ρ(p)` is
/// `(i,δx)` at `p`, and cyclically.
pub fn verify_symmetry(k: u32) -> Result<VerificationReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("K must be >= 2, got {k}")));
    }
    let mut report = VerificationReport::new(k, 0);
    for p in coords(k) {
        report.checked_transmissions += 1;
        let here = node_constants(p, k);
        let there = node_constants(rotate(p, k), k);
        for role in Role::ALL {
            if there.role(role.rotate()) != here.role(role) {
                report.failures.push(Violation::Symmetry {
                    node: NodeId::Tri(p),
                    detail: format!("{role:?} constants not carried to {}", rotate(p, k)),
                });
            }
        }
        if rotate_n(p, k, 3) != p || node_constants(rotate_n(p, k, 3), k) != here {
            report.failures.push(Violation::Symmetry {
                node: NodeId::Tri(p),
                detail: "third power of rotation is not the identity".into(),
            });
        }
    }
    Ok(report)
}

/// Change of `(index, delay)` per role when moving one step in `d`, read off
/// the neighbor relations of the code.
pub fn neighbor_shift(d: Direction) -> [(i64, i64); 3] {
    match d {
        Direction::A => [(1, 0), (-1, -1), (0, 1)],
        Direction::B => [(1, 1), (0, -1), (-1, 0)],
        Direction::C => [(0, 1), (1, 0), (-1, -1)],
        Direction::D => [(-1, 0), (1, 1), (0, -1)],
        Direction::E => [(-1, -1), (0, 1), (1, 0)],
        Direction::F => [(0, -1), (-1, 0), (1, 1)],
    }
}

/// Fig.-style anchors: `(i,δx)=(1,0)` at `(1,1)`, `(j,δy)=(1,0)` at `(K,1)`,
/// `(k,δz)=(1,0)` at `(1,K)`.
pub fn anchor(role: Role, k: u32) -> TriCoord {
    match role {
        Role::X => TriCoord::new(1, 1),
        Role::Y => TriCoord::new(k, 1),
        Role::Z => TriCoord::new(1, k),
    }
}

/// Propagates each role's `(index, delay)` by breadth-first search from its
/// anchor, visiting directions in `order`. Returns the constants and every
/// edge on which the propagated values disagree with the neighbor shift.
pub fn propagate_constants(
    k: u32,
    order: &[Direction],
) -> (HashMap<TriCoord, NodeConstants>, Vec<(TriCoord, Direction)>) {
    let mut per_role: Vec<HashMap<TriCoord, (i64, i64)>> = Vec::new();
    for (r, role) in Role::ALL.into_iter().enumerate() {
        let mut seen = HashMap::new();
        let start = anchor(role, k);
        seen.insert(start, (1i64, 0i64));
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            let (idx, delay) = seen[&p];
            for &d in order {
                if let Some(q) = p.step(d, k) {
                    if let Entry::Vacant(slot) = seen.entry(q) {
                        let (di, dd) = neighbor_shift(d)[r];
                        slot.insert((idx + di, delay + dd));
                        queue.push_back(q);
                    }
                }
            }
        }
        per_role.push(seen);
    }
    let mut bad = Vec::new();
    for p in coords(k) {
        for d in Direction::ALL {
            if let Some(q) = p.step(d, k) {
                let consistent = (0..3).all(|r| {
                    let (i, dl) = per_role[r][&p];
                    let (di, dd) = neighbor_shift(d)[r];
                    per_role[r][&q] == (i + di, dl + dd)
                });
                if !consistent {
                    bad.push((p, d));
                }
            }
        }
    }
    let to_u = |v: i64| u32::try_from(v).unwrap_or(u32::MAX);
    let constants = coords(k)
        .map(|p| {
            let [x, y, z] = [0, 1, 2].map(|r| per_role[r][&p]);
            (
                p,
                NodeConstants {
                    i: to_u(x.0),
                    dx: to_u(x.1),
                    j: to_u(y.0),
                    dy: to_u(y.1),
                    k: to_u(z.0),
                    dz: to_u(z.1),
                },
            )
        })
        .collect();
    (constants, bad)
}

/// Flags every emitted term that the emitting node neither originates nor
/// has decoded by that slot.
pub fn decoded_source_violations(
    trace: &Trace<LinComb>,
    placements: &[SessionPlacement],
) -> Vec<Violation> {
    let mut out = Vec::new();
    let nodes = trace.nodes();
    let mut decoded: HashMap<NodeId, BTreeSet<SymbolTerm>> = HashMap::new();
    for slot in 1..=trace.horizon() {
        for ((_, s), (node, value)) in trace.decoded().range(..) {
            if *s == slot {
                decoded
                    .entry(*node)
                    .or_default()
                    .extend(value.terms().iter().copied());
            }
        }
        for (idx, node) in nodes.iter().enumerate() {
            let known = decoded.get(node);
            for (part, payload) in trace.emissions(idx, slot) {
                for term in payload.terms() {
                    let originated = placements
                        .iter()
                        .any(|pl| pl.session == term.session && pl.source == *node);
                    let was_decoded = known.is_some_and(|k| k.contains(term));
                    if !originated && !was_decoded {
                        out.push(Violation::DecodedSource {
                            node: *node,
                            slot,
                            part: *part,
                            term: *term,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Runs the code symbolically and reports emissions that combine symbols the
/// node has not decoded. This code is expected to produce violations.
pub fn check_decoded_source_property(k: u32, horizon: i64) -> Result<VerificationReport> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("K must be >= 3, got {k}")));
    }
    let (net, trace) = symbolic_trace(k, horizon)?;
    let mut report = VerificationReport::new(k, horizon);
    report.checked_transmissions = trace.transmissions().count() as u64;
    report.property_violations = decoded_source_violations(&trace, &net.placements);
    Ok(report)
}

/// Closed-form emission of node `m` on an `N`-node line: `a(t)` and `b(t)` at
/// the endpoints, `a(t-m+1) + b(t-(N-m))` at relays.
pub fn line_oracle(m: u32, n: u32, t: i64) -> LinComb {
    if m == 1 {
        LinComb::term(SESSION_A, t)
    } else if m == n {
        LinComb::term(SESSION_B, t)
    } else {
        LinComb::term(SESSION_A, t - i64::from(m) + 1)
            + LinComb::term(SESSION_B, t - i64::from(n - m))
    }
}

/// Symbolic check of the line scheme: emissions against [`line_oracle`],
/// endpoint outputs at delay `N-1`, and `N` transmissions per slot.
/// The report's `k` field holds `N`.
pub fn verify_line(n: u32, horizon: i64) -> Result<VerificationReport> {
    let net = LineNetwork::new(n)?;
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<LinComb>(),
        &SymbolicSources,
        RunConfig::new(horizon),
    )?;
    let mut report = VerificationReport::new(n, horizon);
    for slot in 1..=horizon {
        for m in 1..=n {
            let idx = m as usize - 1;
            let emitted = trace.emissions(idx, slot);
            if emitted.len() != 1 || emitted[0].0 != Part::Whole {
                report.failures.push(Violation::Shape {
                    node: NodeId::Line(m),
                    slot,
                    detail: format!("{} parts", emitted.len()),
                });
            }
            for (part, actual) in emitted {
                report.checked_transmissions += 1;
                let expected = line_oracle(m, n, slot);
                if &expected != actual {
                    report.mismatches.push(Violation::Mismatch {
                        node: NodeId::Line(m),
                        slot,
                        part: *part,
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                    });
                }
            }
        }
        let count = trace.transmissions_per_slot()[slot as usize - 1];
        if count != u64::from(n) {
            report.failures.push(Violation::Energy {
                slot,
                expected: u64::from(n),
                actual: count,
            });
        }
    }
    let delay = i64::from(n) - 1;
    for pl in &net.placements {
        for slot in 1..=horizon {
            report.checked_decodes += 1;
            let expected = LinComb::term(pl.session, slot - delay);
            let actual = trace.decoded().get(&(pl.session, slot));
            if !matches!(actual, Some((node, v)) if *node == pl.receiver && *v == expected) {
                report.failures.push(Violation::Decode {
                    session: pl.session,
                    slot,
                    expected: expected.to_string(),
                    actual: actual.map_or("none".into(), |(_, v)| v.to_string()),
                });
            }
        }
    }
    Ok(report)
}

/// Concrete line run: endpoint outputs against seeded random streams, delay `N-1`.
pub fn verify_line_concrete(n: u32, horizon: i64, seed: u64) -> Result<VerificationReport> {
    let net = LineNetwork::new(n)?;
    let bits = RandomBits::new([SESSION_A, SESSION_B], horizon, seed);
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<Bit>(),
        &bits,
        RunConfig::new(horizon),
    )?;
    let mut report = VerificationReport::new(n, horizon);
    let delay = i64::from(n) - 1;
    for session in [SESSION_A, SESSION_B] {
        for slot in delay + 1..=horizon {
            report.checked_decodes += 1;
            let expected = bits.bit(session, slot - delay);
            let actual = trace.decoded_at(session, slot).copied();
            if actual != Some(expected) {
                report.failures.push(Violation::Decode {
                    session,
                    slot,
                    expected: expected.encode(),
                    actual: actual.map_or("none".into(), |b| b.encode()),
                });
            }
        }
    }
    Ok(report)
}

/// Decoded-source check for the line scheme.
pub fn check_line_decoded_source_property(n: u32, horizon: i64) -> Result<VerificationReport> {
    let net = LineNetwork::new(n)?;
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<LinComb>(),
        &SymbolicSources,
        RunConfig::new(horizon),
    )?;
    let mut report = VerificationReport::new(n, horizon);
    report.checked_transmissions = trace.transmissions().count() as u64;
    report.property_violations = decoded_source_violations(&trace, &net.placements);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::SessionKind;

    #[test]
    fn oracle_examples() {
        let v = oracle_transmission(TriCoord::new(1, 1), 4, 1, Part::Role(Role::X)).unwrap();
        assert_eq!(v.value, LinComb::term(SessionId::new(SessionKind::X, 1), 1));
        for p in coords(4) {
            assert!(oracle_transmission(p, 4, 0, Part::Whole)
                .unwrap()
                .value
                .is_empty());
        }
        let v = oracle_transmission(TriCoord::new(2, 2), 4, 8, Part::Whole).unwrap();
        let mut want = LinComb::new();
        for role in Role::ALL {
            want += tilde(role, 2, 6, 4).unwrap();
        }
        assert_eq!(v.value, want);
        assert!(!v.notional);
        let v = oracle_transmission(TriCoord::new(1, 1), 4, 5, Part::Whole).unwrap();
        assert!(v.notional);
        assert!(oracle_transmission(TriCoord::new(3, 3), 4, 1, Part::Whole).is_err());
    }

    #[test]
    fn small_code_verifies() {
        let r = verify_code(4, 12).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let r = verify_code(2, 6).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(verify_code(4, 7).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let k = 6;
        let top = node_constants(TriCoord::new(k, 1), k);
        let rot = node_constants(rotate(TriCoord::new(k, 1), k), k);
        assert_eq!(rotate(TriCoord::new(k, 1), k), TriCoord::new(1, k));
        assert_eq!((rot.i, rot.dx), (1, k - 1));
        assert_eq!((rot.j, rot.dy), (k, k - 1));
        assert_eq!((rot.k, rot.dz), (1, 0));
        assert_eq!((rot.j, rot.dy), (top.i, top.dx));
        assert!(verify_symmetry(8).unwrap().passed());
    }

    #[test]
    fn propagation_matches_closed_form() {
        for k in 2..=8 {
            let (c, bad) = propagate_constants(k, &Direction::ALL);
            assert!(bad.is_empty(), "K={k} {bad:?}");
            for p in coords(k) {
                assert_eq!(c[&p], node_constants(p, k), "K={k} {p}");
            }
        }
    }

    #[test]
    fn internal_node_violates_decoded_source_property() {
        let r = check_decoded_source_property(4, 12).unwrap();
        assert!(r.property_violations.iter().any(|v| matches!(
            v,
            Violation::DecodedSource { node: NodeId::Tri(p), .. } if *p == TriCoord::new(2, 2)
        )));
        assert!(!r.passed());
        assert!(check_decoded_source_property(2, 6).is_err());
    }

    #[test]
    fn line_scheme_verifies() {
        for n in 2..=6 {
            let r = verify_line(n, 3 * i64::from(n)).unwrap();
            assert!(r.passed(), "{}", r.to_text());
            assert!(verify_line_concrete(n, 64, 3).unwrap().passed());
        }
    }

    #[test]
    fn line_relay_violates_decoded_source_property() {
        let r = check_line_decoded_source_property(3, 9).unwrap();
        assert!(r.property_violations.iter().any(|v| matches!(
            v,
            Violation::DecodedSource {
                node: NodeId::Line(2),
                ..
            }
        )));
        assert!(!r.property_violations.iter().any(|v| matches!(
            v,
            Violation::DecodedSource {
                node: NodeId::Line(1),
                ..
            }
        )));
    }

    #[test]
    fn report_text_lists_violations() {
        let r = check_decoded_source_property(3, 9).unwrap();
        let text = r.to_text();
        assert!(text.starts_with("K=3 T=9 "));
        assert_eq!(text.lines().count(), 1 + r.violation_count());
        assert!(text.lines().nth(1).unwrap().starts_with("decoded-source,"));
    }
}
