//! Per-`K` energy comparison rows.

use serde::{Deserialize, Serialize};

use crate::analysis::{benefit, internal_count, lemma1, lemma2, node_count};
use crate::engine::{energy, run, RunConfig, ZeroSources};
use crate::error::{Error, Result};
use crate::gf2::Bit;
use crate::hexcode::HexNetwork;
use crate::routing::simulate_routing;
use crate::topology::{build_triangle, place_sessions};

/// Largest `K` whose row is cross-checked by simulation.
pub const SIMULATION_LIMIT: u32 = 50;

/// CSV header of [`SweepRow`].
pub const SWEEP_HEADER: [&str; 8] = [
    "K",
    "nodes",
    "internal",
    "routing_energy",
    "coding_energy",
    "benefit_num",
    "benefit_den",
    "benefit",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "K")]
    pub k: u32,
    pub nodes: u64,
    pub internal: u64,
    pub routing_energy: u64,
    pub coding_energy: u64,
    pub benefit_num: u64,
    pub benefit_den: u64,
    pub benefit: f64,
}

impl SweepRow {
    /// Row from the closed forms alone.
    pub fn analytic(k: u32) -> Result<Self> {
        let kk = u64::from(k);
        let b = benefit(kk)?;
        Ok(Self {
            k,
            nodes: node_count(kk),
            internal: internal_count(kk),
            routing_energy: lemma1(kk)?,
            coding_energy: lemma2(kk)?,
            benefit_num: *b.numer(),
            benefit_den: *b.denom(),
            benefit: *b.numer() as f64 / *b.denom() as f64,
        })
    }

    /// Row from the closed forms, checked against simulated per-slot counts
    /// when `K <= SIMULATION_LIMIT`.
    pub fn checked(k: u32) -> Result<Self> {
        let row = Self::analytic(k)?;
        if k <= SIMULATION_LIMIT {
            let coding = simulated_coding_energy(k, 4)?;
            let routing = simulated_routing_energy(k, 4)?;
            if coding != row.coding_energy || routing != row.routing_energy {
                return Err(Error::Internal(format!(
                    "K={k}: simulated coding {coding} routing {routing}, formulas {} {}",
                    row.coding_energy, row.routing_energy
                )));
            }
        }
        Ok(row)
    }
}

fn constant_count(per_slot: &[u64], what: &str, k: u32) -> Result<u64> {
    match per_slot.split_first() {
        Some((first, rest)) if rest.iter().all(|c| c == first) => Ok(*first),
        _ => Err(Error::Internal(format!(
            "{what} count varies across slots at K={k}: {per_slot:?}"
        ))),
    }
}

/// Transmissions per slot of the code, counted by the engine.
pub fn simulated_coding_energy(k: u32, horizon: i64) -> Result<u64> {
    let net = HexNetwork::new(k)?;
    let trace = run(
        &net.topology,
        &net.placements,
        &net.behaviors::<Bit>(),
        &ZeroSources,
        RunConfig::new(horizon),
    )?;
    let report = energy(&trace, 0)?;
    constant_count(&report.transmissions_per_slot, "coding", k)
}

/// Transmissions per slot of shortest-path routing, counted by the engine.
pub fn simulated_routing_energy(k: u32, horizon: i64) -> Result<u64> {
    let topology = build_triangle(k)?;
    let placements = place_sessions(k)?;
    let (_, trace) = simulate_routing::<Bit>(&topology, &placements, &ZeroSources, horizon)?;
    let report = energy(&trace, 0)?;
    constant_count(&report.transmissions_per_slot, "routing", k)
}
