//! Shortest-path routing baseline.
//!
//! Each session's symbols travel along one shortest path, store-and-forward,
//! one hop per slot. A node on several paths transmits once per session.

use std::collections::VecDeque;

use crate::analysis::lemma1;
use crate::engine::{run, Behavior, Part, RunConfig, SourceStreams, Trace, View};
use crate::error::{Error, Result};
use crate::gf2::Payload;
use crate::topology::{NodeId, SessionId, SessionPlacement, Topology};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub session: SessionId,
    pub path: Vec<NodeId>,
}

impl Route {
    pub fn hops(&self) -> usize {
        self.path.len() - 1
    }
}

/// Shortest route per session, in placement order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopTable {
    pub routes: Vec<Route>,
}

impl HopTable {
    pub fn total_hops(&self) -> u64 {
        self.routes.iter().map(|r| r.hops() as u64).sum()
    }

    pub fn get(&self, session: SessionId) -> Option<&Route> {
        self.routes.iter().find(|r| r.session == session)
    }
}

fn bfs_distances(topology: &Topology, from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; topology.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes have distances");
        for v in topology.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Breadth-first shortest path per session. Among equal-length paths the
/// lexicographically smallest node sequence is chosen.
pub fn shortest_paths(topology: &Topology, placements: &[SessionPlacement]) -> Result<HopTable> {
    let locate = |n: NodeId| {
        topology
            .index_of(n)
            .ok_or_else(|| Error::Configuration(format!("{n} not in topology")))
    };
    let mut routes = Vec::with_capacity(placements.len());
    for pl in placements {
        let src = locate(pl.source)?;
        let dst = locate(pl.receiver)?;
        let dist = bfs_distances(topology, dst);
        let mut at = src;
        let mut d = dist[src].ok_or_else(|| {
            Error::Configuration(format!("{} unreachable from {}", pl.receiver, pl.source))
        })?;
        let mut path = vec![topology.node(at)];
        while d > 0 {
            at = topology
                .neighbors(at)
                .filter(|v| dist[*v] == Some(d - 1))
                .min_by_key(|v| topology.node(*v))
                .expect("a node at distance d has a neighbor at d-1");
            path.push(topology.node(at));
            d -= 1;
        }
        routes.push(Route {
            session: pl.session,
            path,
        });
    }
    Ok(HopTable { routes })
}

/// Minimum routing transmissions per round on the `K`-triangle.
pub fn routing_energy(k: u32) -> Result<u64> {
    lemma1(u64::from(k))
}

/// Role of one node on one route.
#[derive(Debug, Clone, Copy)]
struct Hop {
    session: SessionId,
    /// Upstream node on the route; `None` at the source.
    prev: Option<usize>,
}

/// Store-and-forward behavior of one node.
#[derive(Debug, Clone, Default)]
pub struct Router {
    forwards: Vec<Hop>,
    receives: Vec<Hop>,
}

impl<P: Payload> Behavior<P> for Router {
    fn step(&self, view: &View<'_, P>) -> Result<Vec<(Part, P)>> {
        let t = view.slot();
        self.forwards
            .iter()
            .map(|hop| {
                let part = Part::Relay(hop.session);
                let value = match hop.prev {
                    None => view.source(hop.session, t)?,
                    Some(prev) => view.heard(prev, part, t - 1)?,
                };
                Ok((part, value))
            })
            .collect()
    }

    fn decode(&self, view: &View<'_, P>) -> Result<Vec<(SessionId, P)>> {
        let t = view.slot();
        self.receives
            .iter()
            .map(|hop| {
                let value = match hop.prev {
                    None => view.source(hop.session, t)?,
                    Some(prev) => view.heard(prev, Part::Relay(hop.session), t - 1)?,
                };
                Ok((hop.session, value))
            })
            .collect()
    }
}

/// One [`Router`] per node for the given routes.
pub fn routers(topology: &Topology, table: &HopTable) -> Result<Vec<Router>> {
    let mut out = vec![Router::default(); topology.len()];
    for route in &table.routes {
        let idx: Vec<usize> = route
            .path
            .iter()
            .map(|n| {
                topology
                    .index_of(*n)
                    .ok_or_else(|| Error::Configuration(format!("{n} not in topology")))
            })
            .collect::<Result<_>>()?;
        for (pos, &node) in idx.iter().enumerate() {
            let prev = pos.checked_sub(1).map(|p| idx[p]);
            let hop = Hop {
                session: route.session,
                prev,
            };
            if pos + 1 < idx.len() {
                out[node].forwards.push(hop);
            } else {
                out[node].receives.push(hop);
            }
        }
    }
    Ok(out)
}

/// Pipelined routing for `horizon` slots. The receiver of a session with
/// `h` hops outputs the symbol of slot `t - h` in slot `t`.
pub fn simulate_routing<P: Payload>(
    topology: &Topology,
    placements: &[SessionPlacement],
    sources: &dyn SourceStreams<P>,
    horizon: i64,
) -> Result<(HopTable, Trace<P>)> {
    let table = shortest_paths(topology, placements)?;
    let behaviors: Vec<Box<dyn Behavior<P>>> = routers(topology, &table)?
        .into_iter()
        .map(|r| Box::new(r) as Box<dyn Behavior<P>>)
        .collect();
    let trace = run(
        topology,
        placements,
        &behaviors,
        sources,
        RunConfig::new(horizon),
    )?;
    Ok((table, trace))
}
