use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use hexnc::engine::{energy, run, RandomBits, RunConfig, SymbolicSources, Trace};
use hexnc::linenet::{line_benefit, LineNetwork, SESSION_A, SESSION_B};
use hexnc::verify::{verify_code, verify_line, verify_line_concrete, verify_symmetry};
use hexnc::{EnergyReport, Error, HexNetwork, Payload, SweepRow};

use crate::{Format, Mode, Outcome, TopologyArg};

fn invalid(msg: String) -> anyhow::Error {
    Error::InvalidParameter(msg).into()
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn verify(k: u32, t: Option<i64>, format: Format) -> Result<Outcome> {
    let horizon = t.unwrap_or(3 * i64::from(k));
    let mut report = verify_code(k, horizon)?;
    report.failures.extend(verify_symmetry(k)?.failures);
    let text = match format {
        Format::Csv => report.to_text(),
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                pass: bool,
                #[serde(flatten)]
                report: &'a hexnc::VerificationReport,
            }
            json(&Out {
                pass: report.passed(),
                report: &report,
            })?
        }
    };
    Ok(Outcome {
        text,
        ok: report.passed(),
    })
}

#[derive(Serialize)]
struct Record {
    slot: i64,
    node_c: u32,
    node_r: u32,
    part: String,
    payload: String,
}

#[derive(Serialize)]
struct SimulationOut {
    topology: &'static str,
    size: u32,
    slots: i64,
    seed: u64,
    mode: &'static str,
    energy: EnergyReport,
    trace: Vec<Record>,
}

fn render<P: Payload>(trace: &Trace<P>, meta: SimulationOut, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let e = &meta.energy;
            eprintln!(
                "transmissions: total {} full-average {} steady-average {} (warmup {})",
                e.total, e.full_average, e.steady_average, e.warmup
            );
            Ok(trace.serialize())
        }
        Format::Json => {
            let trace = trace
                .transmissions()
                .map(|t| {
                    let (node_c, node_r) = t.node.columns();
                    Record {
                        slot: t.slot,
                        node_c,
                        node_r,
                        part: t.part.to_string(),
                        payload: t.payload.encode(),
                    }
                })
                .collect();
            json(&SimulationOut { trace, ..meta })
        }
    }
}

pub fn simulate(
    topology: TopologyArg,
    size: u32,
    slots: i64,
    seed: u64,
    mode: Mode,
    format: Format,
) -> Result<Outcome> {
    if slots < 1 {
        return Err(invalid(format!("--slots must be >= 1, got {slots}")));
    }
    let warmup = i64::from(size.saturating_sub(1)).min(slots - 1);
    let meta = |energy| SimulationOut {
        topology: match topology {
            TopologyArg::Hex => "hex",
            TopologyArg::Line => "line",
        },
        size,
        slots,
        seed,
        mode: match mode {
            Mode::Bit => "bit",
            Mode::Symbolic => "symbolic",
        },
        energy,
        trace: Vec::new(),
    };
    let config = RunConfig::new(slots);
    let text = match topology {
        TopologyArg::Hex => {
            let net = HexNetwork::new(size)?;
            match mode {
                Mode::Bit => {
                    let bits = RandomBits::new(net.sessions(), slots, seed);
                    let trace = run(
                        &net.topology,
                        &net.placements,
                        &net.behaviors(),
                        &bits,
                        config,
                    )?;
                    render(&trace, meta(energy(&trace, warmup)?), format)?
                }
                Mode::Symbolic => {
                    let trace = run(
                        &net.topology,
                        &net.placements,
                        &net.behaviors(),
                        &SymbolicSources,
                        config,
                    )?;
                    render(&trace, meta(energy(&trace, warmup)?), format)?
                }
            }
        }
        TopologyArg::Line => {
            let net = LineNetwork::new(size)?;
            match mode {
                Mode::Bit => {
                    let bits = RandomBits::new([SESSION_A, SESSION_B], slots, seed);
                    let trace = run(
                        &net.topology,
                        &net.placements,
                        &net.behaviors(),
                        &bits,
                        config,
                    )?;
                    render(&trace, meta(energy(&trace, warmup)?), format)?
                }
                Mode::Symbolic => {
                    let trace = run(
                        &net.topology,
                        &net.placements,
                        &net.behaviors(),
                        &SymbolicSources,
                        config,
                    )?;
                    render(&trace, meta(energy(&trace, warmup)?), format)?
                }
            }
        }
    };
    Ok(Outcome { text, ok: true })
}

pub fn sweep_rows(k_min: u32, k_max: u32, step: u32) -> Result<Vec<SweepRow>> {
    if k_min < 2 || k_max < k_min || step == 0 {
        return Err(invalid(format!(
            "need 2 <= k-min <= k-max and step >= 1, got {k_min}..{k_max} step {step}"
        )));
    }
    let ks: Vec<u32> = (k_min..=k_max).step_by(step as usize).collect();
    ks.par_iter()
        .map(|&k| SweepRow::checked(k).with_context(|| format!("sweep row K={k}")))
        .collect()
}

pub fn sweep(k_min: u32, k_max: u32, step: u32, format: Format) -> Result<Outcome> {
    let rows = sweep_rows(k_min, k_max, step)?;
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => json(&rows)?,
    };
    Ok(Outcome { text, ok: true })
}

#[derive(Serialize)]
struct LineRow {
    #[serde(rename = "N")]
    n: u32,
    routing_energy: u64,
    coding_energy: u64,
    benefit_num: u64,
    benefit_den: u64,
    benefit: f64,
    verified: bool,
}

pub fn line(n: u32, format: Format) -> Result<Outcome> {
    let b = line_benefit(n)?;
    let horizon = 3 * i64::from(n);
    let verified =
        verify_line(n, horizon)?.passed() && verify_line_concrete(n, horizon.max(64), 1)?.passed();
    let row = LineRow {
        n,
        routing_energy: 2 * u64::from(n - 1),
        coding_energy: u64::from(n),
        benefit_num: *b.numer(),
        benefit_den: *b.denom(),
        benefit: *b.numer() as f64 / *b.denom() as f64,
        verified,
    };
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&row)?;
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => json(&row)?,
    };
    Ok(Outcome { text, ok: verified })
}
