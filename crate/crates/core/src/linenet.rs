//! Two-way exchange over a line of `N` nodes.
//!
//! Node 1 sources stream `a` for node `N`; node `N` sources `b` for node 1.
//! Endpoints broadcast their own source symbol. Relay `m` broadcasts
//! `P_m(t) = a(t-m+1) + b(t-(N-m))`, obtained causally from
//!
//! ```text
//! P_m(t) = P_{m-1}(t-1) + P_{m+1}(t-1) + P_m(t-2)
//! ```
//!
//! where an endpoint neighbor `e` stands in with `P_e(t-1) + P_m(t-2) + P_e(t-3)`.
//! That is the value `e` would carry if it followed the relay formula.
//! Each endpoint decodes one symbol per slot with delay `N-1`. A round costs
//! `N` transmissions against `2(N-1)` for routing.

use num_rational::Ratio;

use crate::engine::{Behavior, Part, View};
use crate::error::{Error, Result};
use crate::gf2::Payload;
use crate::topology::{
    build_line, line_port, line_sessions, SessionId, SessionKind, SessionPlacement, Topology,
};

pub const SESSION_A: SessionId = SessionId::new(SessionKind::A, 1);
pub const SESSION_B: SessionId = SessionId::new(SessionKind::B, 1);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineConfig {
    pub n: u32,
}

impl LineConfig {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("N must be >= 2, got {n}")));
        }
        Ok(Self { n })
    }
}

/// Behavior of node `m` of the line.
#[derive(Debug, Clone, Copy)]
pub struct LineNode {
    m: u32,
    n: u32,
}

pub fn line_behavior(m: u32, n: u32) -> Result<LineNode> {
    if n < 2 || m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "node {m} outside line of {n}"
        )));
    }
    Ok(LineNode { m, n })
}

impl LineNode {
    fn is_endpoint(&self, m: u32) -> bool {
        m == 1 || m == self.n
    }

    /// Neighbor value as seen by the relay recurrence.
    fn stand_in<P: Payload>(&self, view: &View<'_, P>, port: usize, other: u32) -> Result<P> {
        let t = view.slot();
        let mut v = view.neighbor(port, Part::Whole, t - 1)?;
        if self.is_endpoint(other) {
            v.add_assign_ref(&view.own(Part::Whole, t - 2)?);
            v.add_assign_ref(&view.neighbor(port, Part::Whole, t - 3)?);
        }
        Ok(v)
    }
}

impl<P: Payload> Behavior<P> for LineNode {
    fn step(&self, view: &View<'_, P>) -> Result<Vec<(Part, P)>> {
        let t = view.slot();
        let value = if self.m == 1 {
            view.source(SESSION_A, t)?
        } else if self.m == self.n {
            view.source(SESSION_B, t)?
        } else {
            let mut v = self.stand_in(view, line_port::PREV, self.m - 1)?;
            v.add_assign_ref(&self.stand_in(view, line_port::NEXT, self.m + 1)?);
            v.add_assign_ref(&view.own(Part::Whole, t - 2)?);
            v
        };
        Ok(vec![(Part::Whole, value)])
    }

    fn decode(&self, view: &View<'_, P>) -> Result<Vec<(SessionId, P)>> {
        let t = view.slot();
        let (port, own, wanted) = if self.m == 1 {
            (line_port::NEXT, SESSION_A, SESSION_B)
        } else if self.m == self.n {
            (line_port::PREV, SESSION_B, SESSION_A)
        } else {
            return Ok(Vec::new());
        };
        let mut v = view.neighbor(port, Part::Whole, t - 1)?;
        if self.n > 2 {
            v.add_assign_ref(&view.source(own, t - 2)?);
        }
        Ok(vec![(wanted, v)])
    }
}

/// Topology, sessions and behaviors of an `N`-node line.
pub struct LineNetwork {
    pub config: LineConfig,
    pub topology: Topology,
    pub placements: Vec<SessionPlacement>,
}

impl LineNetwork {
    pub fn new(n: u32) -> Result<Self> {
        Ok(Self {
            config: LineConfig::new(n)?,
            topology: build_line(n)?,
            placements: line_sessions(n)?,
        })
    }

    pub fn behaviors<P: Payload>(&self) -> Vec<Box<dyn Behavior<P>>> {
        (1..=self.config.n)
            .map(|m| {
                Box::new(LineNode {
                    m,
                    n: self.config.n,
                }) as Box<dyn Behavior<P>>
            })
            .collect()
    }
}

/// Routing over coding energy per exchanged pair: `2(N-1)/N`.
pub fn line_benefit(n: u32) -> Result<Ratio<u64>> {
    LineConfig::new(n)?;
    let n = u64::from(n);
    Ok(Ratio::new(2 * (n - 1), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{energy, run, RunConfig, SymbolicSources, ZeroSources};
    use crate::gf2::{Bit, LinComb};

    #[test]
    fn benefit_values() {
        assert_eq!(line_benefit(3).unwrap(), Ratio::new(4, 3));
        assert_eq!(line_benefit(2).unwrap(), Ratio::from_integer(1));
        assert_eq!(line_benefit(100).unwrap(), Ratio::new(198, 100));
        assert!(line_benefit(1).is_err());
        let mut prev = Ratio::from_integer(0);
        for n in 2..5000 {
            let b = line_benefit(n).unwrap();
            assert!(b > prev && b < Ratio::from_integer(2));
            prev = b;
        }
    }

    #[test]
    fn bad_node_index() {
        assert!(line_behavior(0, 3).is_err());
        assert!(line_behavior(4, 3).is_err());
        assert!(line_behavior(2, 3).is_ok());
    }

    #[test]
    fn three_node_relay_sends_xor() {
        let net = LineNetwork::new(3).unwrap();
        let trace = run(
            &net.topology,
            &net.placements,
            &net.behaviors::<LinComb>(),
            &SymbolicSources,
            RunConfig::new(5),
        )
        .unwrap();
        assert_eq!(
            energy(&trace, 0).unwrap().transmissions_per_slot,
            vec![3; 5]
        );
        let relay = trace.get(1, 4, Part::Whole).unwrap();
        assert_eq!(
            relay,
            &(LinComb::term(SESSION_A, 3) + LinComb::term(SESSION_B, 3))
        );
    }

    #[test]
    fn five_node_closed_form_example() {
        let net = LineNetwork::new(5).unwrap();
        let trace = run(
            &net.topology,
            &net.placements,
            &net.behaviors::<LinComb>(),
            &SymbolicSources,
            RunConfig::new(12),
        )
        .unwrap();
        let p3 = trace.get(2, 12, Part::Whole).unwrap();
        assert_eq!(
            p3,
            &(LinComb::term(SESSION_A, 10) + LinComb::term(SESSION_B, 10))
        );
    }

    #[test]
    fn zero_streams_zero_emissions() {
        let net = LineNetwork::new(6).unwrap();
        let trace = run(
            &net.topology,
            &net.placements,
            &net.behaviors::<Bit>(),
            &ZeroSources,
            RunConfig::new(20),
        )
        .unwrap();
        assert!(trace.transmissions().all(|t| t.payload == &Bit::ZERO));
    }
}
