//! Deterministic slot-synchronous simulator and verifier for a
//! multiple-unicast network code on a triangular lattice, with a
//! shortest-path routing baseline and a two-way line network.

pub mod analysis;
pub mod engine;
pub mod error;
pub mod gf2;
pub mod hexcode;
pub mod linenet;
pub mod routing;
pub mod sweep;
pub mod topology;
pub mod verify;

pub use engine::{EnergyReport, Part, Trace, Transmission};
pub use error::{Error, Result};
pub use gf2::{Bit, LinComb, Payload, SymbolTerm};
pub use hexcode::{HexNetwork, NodeConstants};
pub use linenet::LineNetwork;
pub use sweep::SweepRow;
pub use topology::{
    Direction, NodeClass, NodeId, Role, SessionId, SessionKind, SessionPlacement, Topology,
    TriCoord,
};
pub use verify::VerificationReport;
