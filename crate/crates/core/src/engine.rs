//! Slot-synchronous broadcast simulation.
//!
//! Time is slotted. In slot `t` every node runs its [`Behavior`] against a
//! [`View`] that exposes neighbor transmissions from slots `< t`, its own
//! past transmissions, and its own source symbols up to `t`. Every emission
//! is heard by all neighbors. All history at slots `<= 0` is zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Bit, LinComb, Payload};
use crate::topology::{NodeId, Role, SessionId, SessionPlacement, Topology};

pub const DEFAULT_WINDOW: i64 = 4;

/// Tag distinguishing the emissions of one node within a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    Whole,
    Role(Role),
    /// Store-and-forward packet of one session (routing baseline).
    Relay(SessionId),
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Whole => f.write_str("whole"),
            Part::Role(Role::X) => f.write_str("x"),
            Part::Role(Role::Y) => f.write_str("y"),
            Part::Role(Role::Z) => f.write_str("z"),
            Part::Relay(s) => write!(f, "fwd-{s}"),
        }
    }
}

/// Per-session source streams. Implementations must return zero for `t <= 0`.
pub trait SourceStreams<P: Payload>: Sync {
    fn symbol(&self, session: SessionId, t: i64) -> P;
}

/// Symbolic sources: each symbol is its own term.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymbolicSources;

impl SourceStreams<LinComb> for SymbolicSources {
    fn symbol(&self, session: SessionId, t: i64) -> LinComb {
        LinComb::term(session, t)
    }
}

/// All-zero sources, for any payload.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroSources;

impl<P: Payload> SourceStreams<P> for ZeroSources {
    fn symbol(&self, _: SessionId, _: i64) -> P {
        P::zero()
    }
}

/// Seeded random bit streams for slots `1..=horizon`.
#[derive(Debug, Clone)]
pub struct RandomBits {
    streams: HashMap<SessionId, Vec<bool>>,
}

impl RandomBits {
    pub fn new(sessions: impl IntoIterator<Item = SessionId>, horizon: i64, seed: u64) -> Self {
        let mut sessions: Vec<SessionId> = sessions.into_iter().collect();
        sessions.sort();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = horizon.max(0) as usize;
        let streams = sessions
            .into_iter()
            .map(|s| (s, (0..len).map(|_| rng.gen::<bool>()).collect()))
            .collect();
        Self { streams }
    }

    pub fn bit(&self, session: SessionId, t: i64) -> Bit {
        if t <= 0 {
            return Bit::ZERO;
        }
        let v = self
            .streams
            .get(&session)
            .and_then(|s| s.get(t as usize - 1))
            .copied()
            .unwrap_or(false);
        Bit(v)
    }
}

impl SourceStreams<Bit> for RandomBits {
    fn symbol(&self, session: SessionId, t: i64) -> Bit {
        self.bit(session, t)
    }
}

/// Per-node step function.
pub trait Behavior<P: Payload>: Send + Sync {
    /// Emissions of this node in `view.slot()`.
    fn step(&self, view: &View<'_, P>) -> Result<Vec<(Part, P)>>;

    /// Symbols decoded in `view.slot()`; the view also exposes this node's
    /// own slot-`t` emissions.
    fn decode(&self, _view: &View<'_, P>) -> Result<Vec<(SessionId, P)>> {
        Ok(Vec::new())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub horizon: i64,
    pub window: i64,
}

impl RunConfig {
    pub fn new(horizon: i64) -> Self {
        Self {
            horizon,
            window: DEFAULT_WINDOW,
        }
    }

    pub fn with_window(mut self, window: i64) -> Self {
        self.window = window;
        self
    }
}

type SlotRecord<P> = Vec<Vec<(Part, P)>>;

/// Read access for one node at one slot.
pub struct View<'a, P: Payload> {
    topology: &'a Topology,
    records: &'a [SlotRecord<P>],
    current: Option<&'a [(Part, P)]>,
    sources: &'a dyn SourceStreams<P>,
    sourced: &'a [SessionId],
    node: usize,
    slot: i64,
    window: i64,
}

impl<'a, P: Payload> View<'a, P> {
    pub fn slot(&self) -> i64 {
        self.slot
    }

    pub fn node(&self) -> NodeId {
        self.topology.node(self.node)
    }

    pub fn node_index(&self) -> usize {
        self.node
    }

    pub fn topology(&self) -> &Topology {
        self.topology
    }

    fn check_history(&self, slot: i64) -> Result<()> {
        if slot >= self.slot {
            return Err(Error::Causality {
                node: self.node(),
                slot: self.slot,
                requested: slot,
            });
        }
        let depth = self.slot - slot;
        if depth > self.window {
            return Err(Error::HistoryWindow {
                node: self.node(),
                slot: self.slot,
                depth,
                window: self.window,
            });
        }
        Ok(())
    }

    fn lookup(&self, idx: usize, slot: i64, part: Part) -> Result<P> {
        if slot <= 0 {
            return Ok(P::zero());
        }
        self.records[slot as usize - 1][idx]
            .iter()
            .find(|(p, _)| *p == part)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| {
                Error::Internal(format!(
                    "{} did not emit part {part} at slot {slot}",
                    self.topology.node(idx)
                ))
            })
    }

    fn lookup_whole(&self, idx: usize, slot: i64) -> Result<P> {
        if slot <= 0 {
            return Ok(P::zero());
        }
        let parts = &self.records[slot as usize - 1][idx];
        if let Some((_, v)) = parts.iter().find(|(p, _)| *p == Part::Whole) {
            return Ok(v.clone());
        }
        let mut sum = P::zero();
        let mut any = false;
        for (_, v) in parts.iter().filter(|(p, _)| matches!(p, Part::Role(_))) {
            sum.add_assign_ref(v);
            any = true;
        }
        if !any {
            return Err(Error::Internal(format!(
                "{} has no whole value at slot {slot}",
                self.topology.node(idx)
            )));
        }
        Ok(sum)
    }

    fn port_target(&self, port: usize) -> Result<usize> {
        self.topology.port(self.node, port).ok_or_else(|| {
            Error::Internal(format!("{} has no neighbor at port {port}", self.node()))
        })
    }

    /// Emission `part` of the neighbor at `port` in `slot < t`.
    pub fn neighbor(&self, port: usize, part: Part, slot: i64) -> Result<P> {
        self.check_history(slot)?;
        let idx = self.port_target(port)?;
        self.lookup(idx, slot, part)
    }

    /// The neighbor's whole value: its `Whole` emission, or the sum of its
    /// role parts when it splits its transmission.
    pub fn neighbor_whole(&self, port: usize, slot: i64) -> Result<P> {
        self.check_history(slot)?;
        let idx = self.port_target(port)?;
        self.lookup_whole(idx, slot)
    }

    /// Emission of an adjacent node addressed by index.
    pub fn heard(&self, from: usize, part: Part, slot: i64) -> Result<P> {
        self.check_history(slot)?;
        if !self.topology.are_adjacent(self.node, from) {
            return Err(Error::Internal(format!(
                "{} cannot hear non-neighbor {}",
                self.node(),
                self.topology.node(from)
            )));
        }
        self.lookup(from, slot, part)
    }

    /// Own emission. Slot `t` itself is readable only while decoding.
    pub fn own(&self, part: Part, slot: i64) -> Result<P> {
        if slot == self.slot {
            if let Some(cur) = self.current {
                return cur
                    .iter()
                    .find(|(p, _)| *p == part)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::Internal(format!("{} has no part {part}", self.node())));
            }
        }
        self.check_history(slot)?;
        self.lookup(self.node, slot, part)
    }

    /// Own whole value (sum of own parts when split).
    pub fn own_whole(&self, slot: i64) -> Result<P> {
        self.check_history(slot)?;
        self.lookup_whole(self.node, slot)
    }

    /// Source symbol of a session originating at this node, for `slot <= t`.
    pub fn source(&self, session: SessionId, slot: i64) -> Result<P> {
        if !self.sourced.contains(&session) {
            return Err(Error::Internal(format!(
                "{} is not the source of {session}",
                self.node()
            )));
        }
        if slot > self.slot {
            return Err(Error::Causality {
                node: self.node(),
                slot: self.slot,
                requested: slot,
            });
        }
        Ok(self.sources.symbol(session, slot))
    }
}

/// One logged emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission<P> {
    pub node: NodeId,
    pub slot: i64,
    pub part: Part,
    pub payload: P,
}

/// Complete record of a run.
#[derive(Debug, Clone)]
pub struct Trace<P: Payload> {
    nodes: Vec<NodeId>,
    horizon: i64,
    records: Vec<SlotRecord<P>>,
    decoded: BTreeMap<(SessionId, i64), (NodeId, P)>,
}

impl<P: Payload> Trace<P> {
    pub fn horizon(&self) -> i64 {
        self.horizon
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Parts emitted by node `idx` in `slot` (1-based).
    pub fn emissions(&self, idx: usize, slot: i64) -> &[(Part, P)] {
        &self.records[slot as usize - 1][idx]
    }

    pub fn get(&self, idx: usize, slot: i64, part: Part) -> Option<&P> {
        self.emissions(idx, slot)
            .iter()
            .find(|(p, _)| *p == part)
            .map(|(_, v)| v)
    }

    pub fn transmissions(&self) -> impl Iterator<Item = Transmission<&P>> + '_ {
        self.records
            .iter()
            .enumerate()
            .flat_map(move |(s, per_node)| {
                per_node.iter().enumerate().flat_map(move |(n, parts)| {
                    parts.iter().map(move |(part, payload)| Transmission {
                        node: self.nodes[n],
                        slot: s as i64 + 1,
                        part: *part,
                        payload,
                    })
                })
            })
    }

    pub fn transmissions_per_slot(&self) -> Vec<u64> {
        self.records
            .iter()
            .map(|per_node| per_node.iter().map(|p| p.len() as u64).sum())
            .collect()
    }

    /// Decoded outputs keyed by `(session, slot)`, with the decoding node.
    pub fn decoded(&self) -> &BTreeMap<(SessionId, i64), (NodeId, P)> {
        &self.decoded
    }

    pub fn decoded_at(&self, session: SessionId, slot: i64) -> Option<&P> {
        self.decoded.get(&(session, slot)).map(|(_, v)| v)
    }

    /// Line-oriented text form, one `slot,node_c,node_r,part,payload` record
    /// per transmission, ordered by slot then node order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for t in self.transmissions() {
            let (c, r) = t.node.columns();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                t.slot,
                c,
                r,
                t.part,
                t.payload.encode()
            );
        }
        out
    }
}

/// Runs `behaviors` (one per node, in topology order) for slots `1..=horizon`.
pub fn run<P: Payload>(
    topology: &Topology,
    placements: &[SessionPlacement],
    behaviors: &[Box<dyn Behavior<P>>],
    sources: &dyn SourceStreams<P>,
    config: RunConfig,
) -> Result<Trace<P>> {
    if behaviors.len() != topology.len() {
        return Err(Error::Configuration(format!(
            "{} behaviors for {} nodes",
            behaviors.len(),
            topology.len()
        )));
    }
    if config.horizon < 0 || config.window < 1 {
        return Err(Error::InvalidParameter(format!(
            "bad run config {config:?}"
        )));
    }
    let mut sourced: Vec<Vec<SessionId>> = vec![Vec::new(); topology.len()];
    for pl in placements {
        let idx = topology.index_of(pl.source).ok_or_else(|| {
            Error::Configuration(format!(
                "source {} of {} not in topology",
                pl.source, pl.session
            ))
        })?;
        sourced[idx].push(pl.session);
    }

    let mut records: Vec<SlotRecord<P>> = Vec::with_capacity(config.horizon as usize);
    let mut decoded = BTreeMap::new();
    for slot in 1..=config.horizon {
        let mut current: SlotRecord<P> = Vec::with_capacity(topology.len());
        for (node, behavior) in behaviors.iter().enumerate() {
            let view = View {
                topology,
                records: &records,
                current: None,
                sources,
                sourced: &sourced[node],
                node,
                slot,
                window: config.window,
            };
            current.push(behavior.step(&view)?);
        }
        for (node, behavior) in behaviors.iter().enumerate() {
            let view = View {
                topology,
                records: &records,
                current: Some(&current[node]),
                sources,
                sourced: &sourced[node],
                node,
                slot,
                window: config.window,
            };
            for (session, value) in behavior.decode(&view)? {
                decoded.insert((session, slot), (topology.node(node), value));
            }
        }
        records.push(current);
    }
    Ok(Trace {
        nodes: topology.nodes().to_vec(),
        horizon: config.horizon,
        records,
        decoded,
    })
}

/// Transmission counts of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnergyReport {
    pub transmissions_per_slot: Vec<u64>,
    pub total: u64,
    pub warmup: i64,
    /// Average over all slots.
    pub full_average: Ratio<u64>,
    /// Average over slots after the warmup.
    pub steady_average: Ratio<u64>,
    /// Steady-state transmissions per delivered round (one round per slot).
    pub per_round: Ratio<u64>,
}

pub fn energy<P: Payload>(trace: &Trace<P>, warmup: i64) -> Result<EnergyReport> {
    if warmup < 0 || warmup >= trace.horizon() {
        return Err(Error::InvalidParameter(format!(
            "warmup {warmup} must be in 0..{}",
            trace.horizon()
        )));
    }
    let per_slot = trace.transmissions_per_slot();
    let total: u64 = per_slot.iter().sum();
    let steady: u64 = per_slot[warmup as usize..].iter().sum();
    let steady_slots = per_slot.len() as u64 - warmup as u64;
    let steady_average = Ratio::new(steady, steady_slots);
    Ok(EnergyReport {
        full_average: Ratio::new(total, per_slot.len() as u64),
        transmissions_per_slot: per_slot,
        total,
        warmup,
        steady_average,
        per_round: steady_average,
    })
}
