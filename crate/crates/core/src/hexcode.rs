//! The triangular-lattice network code.
//!
//! Every node `P` has constants `(i, j, k, δx, δy, δz)` and, in slot `t`,
//! carries `x̃_i(t-δx) + ỹ_j(t-δy) + z̃_k(t-δz)` where
//! `x̃_i(t) = Σ_{τ=0}^{i-1} x_{i-τ}(t-τ)`. Internal nodes send that sum as one
//! symbol; border nodes send its three terms as three separate symbols.
//!
//! Nodes never evaluate the closed form. They compute it causally from what
//! they overheard, using the transmit rules below. Rules are written once for
//! an internal node, a left-edge node and the top corner; the remaining border
//! classes reuse them through the three-fold rotation of the triangle.

use crate::engine::{Behavior, Part, View};
use crate::error::{Error, Result};
use crate::gf2::{LinComb, Payload};
use crate::topology::{
    build_triangle, classify, place_sessions, Direction, NodeClass, NodeId, Role, SessionId,
    SessionKind, SessionPlacement, Topology, TriCoord,
};

/// Per-node index and delay constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct NodeConstants {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub dx: u32,
    pub dy: u32,
    pub dz: u32,
}

impl NodeConstants {
    /// `(index, delay)` for one role.
    pub fn role(&self, role: Role) -> (u32, u32) {
        match role {
            Role::X => (self.i, self.dx),
            Role::Y => (self.j, self.dy),
            Role::Z => (self.k, self.dz),
        }
    }
}

/// Closed form: `i=c, j=r, k=s, δx=K-s, δy=K-c, δz=K-r`.
pub fn node_constants(p: TriCoord, k: u32) -> NodeConstants {
    let s = p.s(k);
    NodeConstants {
        i: p.c,
        j: p.r,
        k: s,
        dx: k - s,
        dy: k - p.c,
        dz: k - p.r,
    }
}

/// `x̃_index(t)` (or the y/z analogue): the diagonal partial sum of the
/// `role` streams, with zero terms at slots `<= 0` dropped.
pub fn tilde(role: Role, index: u32, t: i64, k: u32) -> Result<LinComb> {
    if index < 1 || index > k {
        return Err(Error::InvalidParameter(format!(
            "tilde index {index} outside 1..={k}"
        )));
    }
    let kind = SessionKind::from(role);
    Ok(LinComb::from_terms((0..index).filter_map(|tau| {
        let time = t - i64::from(tau);
        (time >= 1).then(|| crate::gf2::SymbolTerm::new(SessionId::new(kind, index - tau), time))
    })))
}

/// Which value of a node an operand reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Select {
    /// The node's whole symbol (sum of parts on the border).
    Whole,
    Role(Role),
}

/// One summand of a transmit or decode rule, relative to the current slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    Neighbor {
        dir: Direction,
        select: Select,
        lag: i64,
    },
    Own {
        select: Select,
        lag: i64,
    },
    /// The node's own source stream of this role, at `t - δ_role`.
    Source(Role),
}

impl Operand {
    fn rotate(self, n: u32) -> Operand {
        let sel = |s: Select| match s {
            Select::Whole => Select::Whole,
            Select::Role(r) => Select::Role(r.rotate_n(n)),
        };
        match self {
            Operand::Neighbor { dir, select, lag } => Operand::Neighbor {
                dir: dir.rotate_n(n),
                select: sel(select),
                lag,
            },
            Operand::Own { select, lag } => Operand::Own {
                select: sel(select),
                lag,
            },
            Operand::Source(r) => Operand::Source(r.rotate_n(n)),
        }
    }
}

/// `part(t) = Σ terms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmitRule {
    pub part: Part,
    pub terms: Vec<Operand>,
}

/// Output for `session` at slot `t` equals `Σ terms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeRule {
    pub session: SessionId,
    pub terms: Vec<Operand>,
}

fn nb(dir: Direction, select: Select, lag: i64) -> Operand {
    Operand::Neighbor { dir, select, lag }
}

const W: Select = Select::Whole;
const SX: Select = Select::Role(Role::X);
const SY: Select = Select::Role(Role::Y);
const SZ: Select = Select::Role(Role::Z);

fn internal_rule() -> Vec<TransmitRule> {
    use Direction::*;
    vec![TransmitRule {
        part: Part::Whole,
        terms: vec![
            nb(A, W, 2),
            nb(B, W, 1),
            nb(C, W, 2),
            nb(D, W, 1),
            nb(E, W, 2),
            nb(F, W, 1),
            Operand::Own { select: W, lag: 3 },
        ],
    }]
}

fn left_edge_rules() -> Vec<TransmitRule> {
    use Direction::*;
    vec![
        TransmitRule {
            part: Part::Role(Role::X),
            terms: vec![Operand::Source(Role::X), nb(E, SX, 2)],
        },
        TransmitRule {
            part: Part::Role(Role::Y),
            terms: vec![nb(B, SY, 1)],
        },
        TransmitRule {
            part: Part::Role(Role::Z),
            terms: vec![
                nb(B, SZ, 1),
                nb(C, W, 2),
                nb(D, W, 1),
                nb(E, SX, 2),
                Operand::Own { select: SX, lag: 3 },
            ],
        },
    ]
}

fn top_corner_rules() -> Vec<TransmitRule> {
    use Direction::*;
    vec![
        TransmitRule {
            part: Part::Role(Role::X),
            terms: vec![Operand::Source(Role::X), nb(E, SX, 2)],
        },
        TransmitRule {
            part: Part::Role(Role::Y),
            terms: vec![Operand::Source(Role::Y)],
        },
        TransmitRule {
            part: Part::Role(Role::Z),
            terms: vec![nb(D, SZ, 1)],
        },
    ]
}

fn rotate_rules(rules: Vec<TransmitRule>, n: u32) -> Vec<TransmitRule> {
    let mut out: Vec<TransmitRule> = rules
        .into_iter()
        .map(|r| TransmitRule {
            part: match r.part {
                Part::Role(role) => Part::Role(role.rotate_n(n)),
                other => other,
            },
            terms: r.terms.into_iter().map(|o| o.rotate(n)).collect(),
        })
        .collect();
    out.sort_by_key(|r| r.part);
    out
}

/// Transmit rules for the node at `p`.
pub fn transmit_rules(p: TriCoord, k: u32) -> Vec<TransmitRule> {
    match classify(p, k) {
        NodeClass::Internal => internal_rule(),
        NodeClass::EdgeLeft => left_edge_rules(),
        NodeClass::EdgeDiagonal => rotate_rules(left_edge_rules(), 1),
        NodeClass::EdgeBottom => rotate_rules(left_edge_rules(), 2),
        NodeClass::CornerTop => top_corner_rules(),
        NodeClass::CornerBottomRight => rotate_rules(top_corner_rules(), 1),
        NodeClass::CornerBottomLeft => rotate_rules(top_corner_rules(), 2),
    }
}

/// Decode rules at `p`, one per session received there.
///
/// A z-receiver outputs `Q_z(t) + B_z(t-1)`, or just `Q_z(t)` for `z_1`.
/// The x- and y-receivers use the rotated rule.
pub fn decode_rules(p: TriCoord, k: u32) -> Result<Vec<DecodeRule>> {
    let rules: Vec<DecodeRule> = place_sessions(k)?
        .into_iter()
        .filter(|pl| pl.receiver == NodeId::Tri(p))
        .map(|pl| {
            let role = pl.session.kind.role().expect("triangle session");
            let mut terms = vec![Operand::Own { select: SZ, lag: 0 }];
            if pl.session.index > 1 {
                terms.push(nb(Direction::B, SZ, 1));
            }
            let n = (0..3).find(|n| Role::Z.rotate_n(*n) == role).unwrap_or(0);
            DecodeRule {
                session: pl.session,
                terms: terms.into_iter().map(|o| o.rotate(n)).collect(),
            }
        })
        .collect();
    if rules.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "{p} is not a receiver for K={k}"
        )));
    }
    Ok(rules)
}

/// Engine behavior of one node of the code.
#[derive(Debug, Clone)]
pub struct HexNode {
    coord: TriCoord,
    constants: NodeConstants,
    transmit: Vec<TransmitRule>,
    decode: Vec<DecodeRule>,
}

impl HexNode {
    pub fn new(p: TriCoord, k: u32) -> Result<Self> {
        if !p.is_valid(k) {
            return Err(Error::InvalidParameter(format!(
                "{p} outside the K={k} triangle"
            )));
        }
        Ok(Self {
            coord: p,
            constants: node_constants(p, k),
            transmit: transmit_rules(p, k),
            decode: decode_rules(p, k).unwrap_or_default(),
        })
    }

    pub fn coord(&self) -> TriCoord {
        self.coord
    }

    pub fn transmit_rules(&self) -> &[TransmitRule] {
        &self.transmit
    }

    pub fn decode_rules(&self) -> &[DecodeRule] {
        &self.decode
    }

    fn eval<P: Payload>(&self, view: &View<'_, P>, op: Operand) -> Result<P> {
        let t = view.slot();
        match op {
            Operand::Neighbor {
                dir,
                select: Select::Whole,
                lag,
            } => view.neighbor_whole(dir.port(), t - lag),
            Operand::Neighbor {
                dir,
                select: Select::Role(r),
                lag,
            } => view.neighbor(dir.port(), Part::Role(r), t - lag),
            Operand::Own {
                select: Select::Whole,
                lag,
            } => view.own_whole(t - lag),
            Operand::Own {
                select: Select::Role(r),
                lag,
            } => view.own(Part::Role(r), t - lag),
            Operand::Source(role) => {
                let (index, delay) = self.constants.role(role);
                let session = SessionId::new(role.into(), index);
                view.source(session, t - i64::from(delay))
            }
        }
    }

    fn sum<P: Payload>(&self, view: &View<'_, P>, terms: &[Operand]) -> Result<P> {
        let mut acc = P::zero();
        for op in terms {
            acc.add_assign_ref(&self.eval(view, *op)?);
        }
        Ok(acc)
    }
}

impl<P: Payload> Behavior<P> for HexNode {
    fn step(&self, view: &View<'_, P>) -> Result<Vec<(Part, P)>> {
        self.transmit
            .iter()
            .map(|rule| Ok((rule.part, self.sum(view, &rule.terms)?)))
            .collect()
    }

    fn decode(&self, view: &View<'_, P>) -> Result<Vec<(SessionId, P)>> {
        self.decode
            .iter()
            .map(|rule| Ok((rule.session, self.sum(view, &rule.terms)?)))
            .collect()
    }
}

/// Topology, sessions and behaviors of the `K`-triangle code.
pub struct HexNetwork {
    pub topology: Topology,
    pub placements: Vec<SessionPlacement>,
    nodes: Vec<HexNode>,
}

impl HexNetwork {
    pub fn new(k: u32) -> Result<Self> {
        let topology = build_triangle(k)?;
        let placements = place_sessions(k)?;
        let nodes = topology
            .nodes()
            .iter()
            .map(|n| HexNode::new(n.tri().expect("triangle node"), k))
            .collect::<Result<_>>()?;
        Ok(Self {
            topology,
            placements,
            nodes,
        })
    }

    pub fn k(&self) -> u32 {
        self.topology.k().expect("triangle")
    }

    pub fn nodes(&self) -> &[HexNode] {
        &self.nodes
    }

    pub fn behaviors<P: Payload>(&self) -> Vec<Box<dyn Behavior<P>>> {
        self.nodes
            .iter()
            .map(|n| Box::new(n.clone()) as Box<dyn Behavior<P>>)
            .collect()
    }

    pub fn sessions(&self) -> impl Iterator<Item = SessionId> + '_ {
        self.placements.iter().map(|p| p.session)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::coords;

    fn term(kind: SessionKind, i: u32, t: i64) -> LinComb {
        LinComb::term(SessionId::new(kind, i), t)
    }

    #[test]
    fn corner_constants() {
        let c = node_constants(TriCoord::new(1, 1), 4);
        assert_eq!((c.i, c.dx), (1, 0));
        for k in 2..=9 {
            let c = node_constants(TriCoord::new(k, 1), k);
            assert_eq!((c.i, c.j, c.dx, c.dy), (k, 1, k - 1, 0));
            let c = node_constants(TriCoord::new(1, k), k);
            assert_eq!((c.k, c.dz), (1, 0));
        }
        let c = node_constants(TriCoord::new(2, 2), 4);
        assert_eq!(
            c,
            NodeConstants {
                i: 2,
                j: 2,
                k: 2,
                dx: 2,
                dy: 2,
                dz: 2
            }
        );
    }

    #[test]
    fn tilde_examples() {
        let k = 5;
        for t in 1..6 {
            assert_eq!(tilde(Role::X, 1, t, k).unwrap(), term(SessionKind::X, 1, t));
        }
        let want = term(SessionKind::X, 2, 5) + term(SessionKind::X, 1, 4);
        assert_eq!(tilde(Role::X, 2, 5, k).unwrap(), want);
        assert!(tilde(Role::Z, 3, 0, k).unwrap().is_empty());
        assert!(tilde(Role::Y, 0, 3, k).is_err());
        assert!(tilde(Role::Y, 6, 3, k).is_err());
        // partially dropped: x̃_3(2) = x_3(2) + x_2(1)
        assert_eq!(tilde(Role::X, 3, 2, k).unwrap().len(), 2);
    }

    #[test]
    fn tilde_recursion() {
        // x̃_i(t) = x_i(t) + x̃_{i-1}(t-1)
        for i in 2..=6 {
            for t in -1..10 {
                let lhs = tilde(Role::Y, i, t, 6).unwrap();
                let rhs = term(SessionKind::Y, i, t) + tilde(Role::Y, i - 1, t - 1, 6).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn border_nodes_have_three_rules_internal_one() {
        for k in 2..=7 {
            for p in coords(k) {
                let rules = transmit_rules(p, k);
                if classify(p, k).is_border() {
                    let parts: Vec<Part> = rules.iter().map(|r| r.part).collect();
                    assert_eq!(
                        parts,
                        vec![
                            Part::Role(Role::X),
                            Part::Role(Role::Y),
                            Part::Role(Role::Z)
                        ]
                    );
                } else {
                    assert_eq!(rules.len(), 1);
                    assert_eq!(rules[0].part, Part::Whole);
                }
            }
        }
    }

    #[test]
    fn rules_only_reference_present_neighbors() {
        for k in 2..=9 {
            for p in coords(k) {
                let mut ops: Vec<Operand> = transmit_rules(p, k)
                    .into_iter()
                    .flat_map(|r| r.terms)
                    .collect();
                if let Ok(d) = decode_rules(p, k) {
                    ops.extend(d.into_iter().flat_map(|r| r.terms));
                }
                for op in ops {
                    if let Operand::Neighbor { dir, select, .. } = op {
                        let q = p.step(dir, k).unwrap_or_else(|| panic!("K={k} {p} {dir}"));
                        if let Select::Role(_) = select {
                            assert!(classify(q, k).is_border(), "K={k} {p} reads part of {q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn receivers_and_non_receivers() {
        let k = 4;
        assert!(matches!(
            decode_rules(TriCoord::new(2, 2), k),
            Err(Error::InvalidParameter(_))
        ));
        // left-edge z receiver: Q_z(t) + B_z(t-1)
        let r = decode_rules(TriCoord::new(2, 1), k).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].session, SessionId::new(SessionKind::Z, 3));
        assert_eq!(
            r[0].terms,
            vec![Operand::Own { select: SZ, lag: 0 }, nb(Direction::B, SZ, 1)]
        );
        // top corner decodes z_1 directly and x_K through D
        let r = decode_rules(TriCoord::new(k, 1), k).unwrap();
        let z1 = r.iter().find(|d| d.session.kind == SessionKind::Z).unwrap();
        assert_eq!(z1.terms, vec![Operand::Own { select: SZ, lag: 0 }]);
        let xk = r.iter().find(|d| d.session.kind == SessionKind::X).unwrap();
        assert_eq!(
            xk.terms,
            vec![Operand::Own { select: SX, lag: 0 }, nb(Direction::D, SX, 1)]
        );
        // y_1 at (1,1) directly
        let r = decode_rules(TriCoord::new(1, 1), k).unwrap();
        let y1 = r.iter().find(|d| d.session.kind == SessionKind::Y).unwrap();
        assert_eq!(y1.terms, vec![Operand::Own { select: SY, lag: 0 }]);
        assert!(HexNode::new(TriCoord::new(4, 4), 4).is_err());
    }
}
