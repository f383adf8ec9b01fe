//! Triangular lattice and line topologies.
//!
//! A triangle with `K` nodes per edge uses coordinates `(c, r)` with
//! `c, r >= 1` and `c + r <= K + 1`. The third coordinate is
//! `s = K + 2 - c - r`. The three edges are `r = 1` (left), `c = 1`
//! (bottom) and `s = 1` (diagonal); the corners are `(1,1)`, `(K,1)` and
//! `(1,K)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a node in the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriCoord {
    pub c: u32,
    pub r: u32,
}

impl TriCoord {
    pub const fn new(c: u32, r: u32) -> Self {
        Self { c, r }
    }

    pub fn is_valid(self, k: u32) -> bool {
        self.c >= 1 && self.r >= 1 && self.c + self.r <= k + 1
    }

    /// Third coordinate; `c + r + s = K + 2`.
    pub fn s(self, k: u32) -> u32 {
        k + 2 - self.c - self.r
    }

    /// Adds a direction displacement; `None` if the result leaves the triangle.
    pub fn step(self, d: Direction, k: u32) -> Option<TriCoord> {
        let (dc, dr) = d.displacement();
        let c = i64::from(self.c) + dc;
        let r = i64::from(self.r) + dr;
        if c < 1 || r < 1 {
            return None;
        }
        let p = TriCoord::new(c as u32, r as u32);
        p.is_valid(k).then_some(p)
    }
}

impl fmt::Display for TriCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.r)
    }
}

/// Neighbor labels around a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::A,
        Direction::B,
        Direction::C,
        Direction::D,
        Direction::E,
        Direction::F,
    ];

    /// Displacement on `(c, r)`.
    pub const fn displacement(self) -> (i64, i64) {
        match self {
            Direction::A => (1, -1),
            Direction::B => (1, 0),
            Direction::C => (0, 1),
            Direction::D => (-1, 1),
            Direction::E => (-1, 0),
            Direction::F => (0, -1),
        }
    }

    pub const fn inverse(self) -> Direction {
        match self {
            Direction::A => Direction::D,
            Direction::B => Direction::E,
            Direction::C => Direction::F,
            Direction::D => Direction::A,
            Direction::E => Direction::B,
            Direction::F => Direction::C,
        }
    }

    /// Direction induced by one step of [`rotate`]: A→C→E→A, B→D→F→B.
    pub const fn rotate(self) -> Direction {
        match self {
            Direction::A => Direction::C,
            Direction::B => Direction::D,
            Direction::C => Direction::E,
            Direction::D => Direction::F,
            Direction::E => Direction::A,
            Direction::F => Direction::B,
        }
    }

    pub fn rotate_n(self, n: u32) -> Direction {
        (0..n % 3).fold(self, |d, _| d.rotate())
    }

    pub const fn port(self) -> usize {
        self as usize
    }

    pub fn from_displacement(dc: i64, dr: i64) -> Option<Direction> {
        Self::ALL.into_iter().find(|d| d.displacement() == (dc, dr))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Position class of a node in the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeClass {
    Internal,
    EdgeLeft,
    EdgeBottom,
    EdgeDiagonal,
    CornerBottomLeft,
    CornerTop,
    CornerBottomRight,
}

impl NodeClass {
    pub fn is_border(self) -> bool {
        self != NodeClass::Internal
    }
}

/// Classifies `p` in the `K`-triangle.
pub fn classify(p: TriCoord, k: u32) -> NodeClass {
    let s = p.s(k);
    match (p.c, p.r) {
        (1, 1) => NodeClass::CornerBottomLeft,
        (c, 1) if c == k => NodeClass::CornerTop,
        (1, r) if r == k => NodeClass::CornerBottomRight,
        (_, 1) => NodeClass::EdgeLeft,
        (1, _) => NodeClass::EdgeBottom,
        _ if s == 1 => NodeClass::EdgeDiagonal,
        _ => NodeClass::Internal,
    }
}

/// The three-fold symmetry `(c, r) -> (s, c)`.
pub fn rotate(p: TriCoord, k: u32) -> TriCoord {
    TriCoord::new(p.s(k), p.c)
}

pub fn rotate_n(p: TriCoord, k: u32, n: u32) -> TriCoord {
    (0..n % 3).fold(p, |q, _| rotate(q, k))
}

/// Node identity across topology kinds. Line nodes are indexed `1..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeId {
    Tri(TriCoord),
    Line(u32),
}

impl NodeId {
    pub fn tri(self) -> Option<TriCoord> {
        match self {
            NodeId::Tri(p) => Some(p),
            NodeId::Line(_) => None,
        }
    }

    /// `(c, r)` columns of the trace format. Line node `m` is written `(m, 0)`.
    pub fn columns(self) -> (u32, u32) {
        match self {
            NodeId::Tri(p) => (p.c, p.r),
            NodeId::Line(m) => (m, 0),
        }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Tri(p) => p.fmt(f),
            NodeId::Line(m) => write!(f, "#{m}"),
        }
    }
}

/// Ports of a line node.
pub mod line_port {
    pub const PREV: usize = 0;
    pub const NEXT: usize = 1;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Triangle { k: u32 },
    Line { n: u32 },
}

/// Immutable network: nodes plus precomputed port adjacency.
#[derive(Debug, Clone)]
pub struct Topology {
    shape: Shape,
    nodes: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    ports: Vec<Vec<Option<usize>>>,
}

impl Topology {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `K` for a triangle.
    pub fn k(&self) -> Option<u32> {
        match self.shape {
            Shape::Triangle { k } => Some(k),
            Shape::Line { .. } => None,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> NodeId {
        self.nodes[idx]
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Neighbor of `idx` at `port` (a [`Direction::port`] or a [`line_port`]).
    pub fn port(&self, idx: usize, port: usize) -> Option<usize> {
        self.ports[idx].get(port).copied().flatten()
    }

    pub fn neighbors(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        self.ports[idx].iter().filter_map(|p| *p)
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).any(|n| n == b)
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.neighbors(idx).count()
    }
}

/// All valid coordinates of the `K`-triangle, ordered by `(c, r)`.
pub fn coords(k: u32) -> impl Iterator<Item = TriCoord> {
    (1..=k).flat_map(move |c| (1..=k + 1 - c).map(move |r| TriCoord::new(c, r)))
}

pub fn build_triangle(k: u32) -> Result<Topology> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("K must be >= 2, got {k}")));
    }
    let nodes: Vec<NodeId> = coords(k).map(NodeId::Tri).collect();
    let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let ports = nodes
        .iter()
        .map(|n| {
            let p = n.tri().expect("triangle node");
            Direction::ALL
                .iter()
                .map(|d| p.step(*d, k).map(|q| index[&NodeId::Tri(q)]))
                .collect()
        })
        .collect();
    Ok(Topology {
        shape: Shape::Triangle { k },
        nodes,
        index,
        ports,
    })
}

pub fn build_line(n: u32) -> Result<Topology> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("N must be >= 2, got {n}")));
    }
    let nodes: Vec<NodeId> = (1..=n).map(NodeId::Line).collect();
    let index = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let len = nodes.len();
    let ports = (0..len)
        .map(|i| {
            let mut p = vec![None; 2];
            p[line_port::PREV] = i.checked_sub(1);
            p[line_port::NEXT] = (i + 1 < len).then_some(i + 1);
            p
        })
        .collect();
    Ok(Topology {
        shape: Shape::Line { n },
        nodes,
        index,
        ports,
    })
}

/// Transmit roles of border nodes, and the three session families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    X,
    Y,
    Z,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::X, Role::Y, Role::Z];

    /// Role permutation induced by one step of [`rotate`]: x→y→z→x.
    pub const fn rotate(self) -> Role {
        match self {
            Role::X => Role::Y,
            Role::Y => Role::Z,
            Role::Z => Role::X,
        }
    }

    pub fn rotate_n(self, n: u32) -> Role {
        (0..n % 3).fold(self, |r, _| r.rotate())
    }
}

/// Session family. `X`, `Y`, `Z` live on the triangle; `A` (node 1 → N) and
/// `B` (node N → 1) on the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SessionKind {
    X,
    Y,
    Z,
    A,
    B,
}

impl From<Role> for SessionKind {
    fn from(r: Role) -> Self {
        match r {
            Role::X => SessionKind::X,
            Role::Y => SessionKind::Y,
            Role::Z => SessionKind::Z,
        }
    }
}

impl SessionKind {
    pub fn role(self) -> Option<Role> {
        match self {
            SessionKind::X => Some(Role::X),
            SessionKind::Y => Some(Role::Y),
            SessionKind::Z => Some(Role::Z),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            SessionKind::X => 'x',
            SessionKind::Y => 'y',
            SessionKind::Z => 'z',
            SessionKind::A => 'a',
            SessionKind::B => 'b',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'x' => SessionKind::X,
            'y' => SessionKind::Y,
            'z' => SessionKind::Z,
            'a' => SessionKind::A,
            'b' => SessionKind::B,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SessionId {
    pub kind: SessionKind,
    pub index: u32,
}

impl SessionId {
    pub const fn new(kind: SessionKind, index: u32) -> Self {
        Self { kind, index }
    }
}

impl fmt::Display for SessionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionPlacement {
    pub session: SessionId,
    pub source: NodeId,
    pub receiver: NodeId,
}

/// The `3K` unicast sessions of the triangle.
pub fn place_sessions(k: u32) -> Result<Vec<SessionPlacement>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("K must be >= 2, got {k}")));
    }
    let tri = |c, r| NodeId::Tri(TriCoord::new(c, r));
    let mut out = Vec::with_capacity(3 * k as usize);
    for i in 1..=k {
        out.push(SessionPlacement {
            session: SessionId::new(SessionKind::X, i),
            source: tri(i, 1),
            receiver: tri(i, k + 1 - i),
        });
    }
    for j in 1..=k {
        out.push(SessionPlacement {
            session: SessionId::new(SessionKind::Y, j),
            source: tri(k + 1 - j, j),
            receiver: tri(1, j),
        });
    }
    for s in 1..=k {
        out.push(SessionPlacement {
            session: SessionId::new(SessionKind::Z, s),
            source: tri(1, k + 1 - s),
            receiver: tri(k + 1 - s, 1),
        });
    }
    Ok(out)
}

/// The two sessions of an `N`-node line.
pub fn line_sessions(n: u32) -> Result<Vec<SessionPlacement>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("N must be >= 2, got {n}")));
    }
    Ok(vec![
        SessionPlacement {
            session: SessionId::new(SessionKind::A, 1),
            source: NodeId::Line(1),
            receiver: NodeId::Line(n),
        },
        SessionPlacement {
            session: SessionId::new(SessionKind::B, 1),
            source: NodeId::Line(n),
            receiver: NodeId::Line(1),
        },
    ])
}
