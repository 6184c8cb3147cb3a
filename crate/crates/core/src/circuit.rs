//! Resistor networks and the equivalence-preserving transformations:
//! series, parallel and Δ-Y.
//!
//! Every transformation keeps the effective resistance between any two
//! surviving original nodes unchanged. [`ResistorNetwork::reduce_to_terminals`]
//! strings them together greedily (series, then parallel, then dangling-node
//! pruning, then Δ-Y on the lowest-labelled triangle) and records each step in
//! a [`ReductionTrace`] that can be replayed.
//!
//! The greedy loop always terminates: series, parallel and pruning each remove
//! an edge, and Δ-Y keeps the edge count while removing a triangle without
//! creating one (the new star node sits on no triangle).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::chain::{ChainGraph, Vertex};
use crate::graph;
use crate::number::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("node {0} is not in the network")]
    UnknownNode(String),
    #[error("resistor {0}-{0} would be a self-loop")]
    SelfLoop(String),
    #[error("resistance must be positive, got {0}")]
    NonPositiveWeight(String),
    #[error("node {0} does not have exactly two incident resistors to two distinct neighbours")]
    NotSeriesNode(String),
    #[error("node {0} is a terminal and cannot be eliminated")]
    TerminalNode(String),
    #[error("fewer than two resistors join {0} and {1}")]
    NoParallelEdges(String, String),
    #[error("{0}, {1}, {2} do not form a triangle")]
    NotATriangle(String, String, String),
    #[error("triangle {0}, {1}, {2} has parallel resistors on a side; merge them first")]
    AmbiguousTriangle(String, String, String),
    #[error("no transformation applies and {remaining} non-terminal node(s) remain")]
    Irreducible { remaining: usize },
    #[error("at least two terminals are required")]
    TooFewTerminals,
    #[error("network is disconnected")]
    Disconnected,
    #[error("polygon index {index} is outside 2..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("{0} is not a base vertex of the first polygon")]
    InvalidBase(String),
    #[error("replayed step {index} does not match the recorded weights")]
    ReplayMismatch { index: usize },
}

/// Node label of a resistor network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    /// A vertex of a chain graph.
    Chain(Vertex),
    /// Star centre created by a Δ-Y step, `Z1`, `Z2`, ... in creation order.
    Star(usize),
    /// Generic numbered node, `N0`, `N1`, ...
    Aux(usize),
    /// Vertex of the longer pendant path of a transmission gadget.
    PendantU(usize),
    /// Vertex of the shorter pendant path of a transmission gadget.
    PendantV(usize),
}

impl Node {
    pub fn is_synthetic(&self) -> bool {
        matches!(self, Node::Star(_))
    }
}

impl From<Vertex> for Node {
    fn from(v: Vertex) -> Self {
        Node::Chain(v)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Chain(v) => v.fmt(f),
            Node::Star(i) => write!(f, "Z{i}"),
            Node::Aux(i) => write!(f, "N{i}"),
            Node::PendantU(i) => write!(f, "U{i}"),
            Node::PendantV(i) => write!(f, "V{i}"),
        }
    }
}

impl FromStr for Node {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CircuitError::UnknownNode(s.to_string());
        let tagged = |prefix: char, make: fn(usize) -> Node| {
            s.strip_prefix(prefix)
                .and_then(|rest| rest.parse::<usize>().ok())
                .map(make)
        };
        tagged('Z', Node::Star)
            .or_else(|| tagged('N', Node::Aux))
            .or_else(|| tagged('U', Node::PendantU))
            .or_else(|| tagged('V', Node::PendantV))
            .map(Ok)
            .unwrap_or_else(|| s.parse::<Vertex>().map(Node::Chain).map_err(|_| bad()))
    }
}

/// Strictly positive exact resistance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Rational);

impl Weight {
    pub fn new(value: Rational) -> Result<Weight, CircuitError> {
        if value.is_positive() {
            Ok(Weight(value))
        } else {
            Err(CircuitError::NonPositiveWeight(value.to_string()))
        }
    }

    pub fn one() -> Weight {
        Weight(Rational::one())
    }

    /// `n / d`; panics unless the value is positive.
    pub fn ratio(n: i64, d: i64) -> Weight {
        Weight::new(crate::number::ratio(n, d)).expect("positive resistance")
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn conductance(&self) -> Rational {
        self.0.recip()
    }

    fn series(&self, other: &Weight) -> Weight {
        Weight(&self.0 + &other.0)
    }

    fn parallel<'a>(weights: impl IntoIterator<Item = &'a Weight>) -> Weight {
        let total: Rational = weights.into_iter().map(Weight::conductance).sum();
        Weight(total.recip())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One resistor; endpoints are stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Resistor {
    pub a: Node,
    pub b: Node,
    pub weight: Weight,
}

impl Resistor {
    fn joins(&self, x: &Node, y: &Node) -> bool {
        (self.a == *x && self.b == *y) || (self.a == *y && self.b == *x)
    }

    fn touches(&self, x: &Node) -> bool {
        self.a == *x || self.b == *x
    }

    fn other(&self, x: &Node) -> Node {
        if self.a == *x {
            self.b
        } else {
            self.a
        }
    }
}

/// One logged transformation with the weights it consumed and produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    Series { removed: Node, ends: [Node; 2], before: [Weight; 2], after: Weight },
    Parallel { ends: [Node; 2], before: Vec<Weight>, after: Weight },
    /// `before[k]` is the side opposite `triangle[k]`; `after[k]` is the arm
    /// from `star` to `triangle[k]`.
    DeltaY { triangle: [Node; 3], before: [Weight; 3], star: Node, after: [Weight; 3] },
    /// A non-terminal hanging off a single neighbour carries no current.
    Prune { removed: Node, neighbor: Node, before: Weight },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub terminals: BTreeSet<Node>,
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    /// Re-applies every step to `initial`, checking the recorded weights.
    pub fn replay(&self, initial: &ResistorNetwork) -> Result<ResistorNetwork, CircuitError> {
        let mut net = initial.clone();
        net.terminals = self.terminals.clone();
        for (index, step) in self.steps.iter().enumerate() {
            let redone = match step {
                ReductionStep::Series { removed, .. } => net.apply_series(removed)?,
                ReductionStep::Parallel { ends, .. } => net.apply_parallel(&ends[0], &ends[1])?,
                ReductionStep::DeltaY { triangle, .. } => {
                    net.apply_delta_y(&triangle[0], &triangle[1], &triangle[2])?
                }
                ReductionStep::Prune { removed, .. } => net.apply_prune(removed)?,
            };
            if redone != *step {
                return Err(CircuitError::ReplayMismatch { index });
            }
        }
        Ok(net)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn delta_y_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ReductionStep::DeltaY { .. }))
            .count()
    }
}

/// Weighted multigraph of resistors with an optional protected terminal set.
///
/// Equality ignores the order in which resistors were added.
#[derive(Debug, Clone, Default)]
pub struct ResistorNetwork {
    nodes: BTreeSet<Node>,
    edges: Vec<Resistor>,
    terminals: BTreeSet<Node>,
}

impl PartialEq for ResistorNetwork {
    fn eq(&self, other: &Self) -> bool {
        let sorted = |edges: &[Resistor]| {
            let mut e = edges.to_vec();
            e.sort();
            e
        };
        self.nodes == other.nodes
            && self.terminals == other.terminals
            && self.edges.len() == other.edges.len()
            && sorted(&self.edges) == sorted(&other.edges)
    }
}

impl Eq for ResistorNetwork {}

impl ResistorNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a network from `(a, b, weight)` triples; endpoints become nodes.
    pub fn from_resistors(
        resistors: impl IntoIterator<Item = (Node, Node, Weight)>,
    ) -> Result<Self, CircuitError> {
        let mut net = ResistorNetwork::new();
        for (a, b, w) in resistors {
            net.add_resistor(a, b, w)?;
        }
        Ok(net)
    }

    pub fn add_node(&mut self, node: Node) {
        self.nodes.insert(node);
    }

    pub fn add_resistor(&mut self, a: Node, b: Node, weight: Weight) -> Result<(), CircuitError> {
        if a == b {
            return Err(CircuitError::SelfLoop(a.to_string()));
        }
        self.nodes.insert(a);
        self.nodes.insert(b);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.push(Resistor { a, b, weight });
        Ok(())
    }

    /// Removes one resistor between `a` and `b`; returns its weight.
    pub fn remove_resistor(&mut self, a: &Node, b: &Node) -> Option<Weight> {
        let pos = self.edges.iter().position(|e| e.joins(a, b))?;
        Some(self.edges.remove(pos).weight)
    }

    pub fn nodes(&self) -> &BTreeSet<Node> {
        &self.nodes
    }

    pub fn resistors(&self) -> &[Resistor] {
        &self.edges
    }

    pub fn terminals(&self) -> &BTreeSet<Node> {
        &self.terminals
    }

    pub fn set_terminals(&mut self, terminals: BTreeSet<Node>) -> Result<(), CircuitError> {
        if let Some(t) = terminals.iter().find(|t| !self.nodes.contains(t)) {
            return Err(CircuitError::UnknownNode(t.to_string()));
        }
        self.terminals = terminals;
        Ok(())
    }

    pub fn contains(&self, node: &Node) -> bool {
        self.nodes.contains(node)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn resistors_between(&self, a: &Node, b: &Node) -> Vec<&Weight> {
        self.edges.iter().filter(|e| e.joins(a, b)).map(|e| &e.weight).collect()
    }

    /// Number of incident resistors, counting parallel ones separately.
    pub fn degree(&self, node: &Node) -> usize {
        self.edges.iter().filter(|e| e.touches(node)).count()
    }

    /// Distinct neighbours in label order.
    pub fn neighbors(&self, node: &Node) -> Vec<Node> {
        let set: BTreeSet<Node> =
            self.edges.iter().filter(|e| e.touches(node)).map(|e| e.other(node)).collect();
        set.into_iter().collect()
    }

    /// Nodes in label order with simple-graph adjacency (parallel resistors collapsed).
    pub fn adjacency_lists(&self) -> (Vec<Node>, Vec<Vec<usize>>) {
        let nodes: Vec<Node> = self.nodes.iter().copied().collect();
        let index: BTreeMap<Node, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        for e in &self.edges {
            let (a, b) = (index[&e.a], index[&e.b]);
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
            nb.dedup();
        }
        (nodes, adj)
    }

    pub fn is_connected(&self) -> bool {
        graph::is_connected(&self.adjacency_lists().1)
    }

    /// The nodes in `keep` with the resistors running between them.
    pub fn subnetwork(&self, keep: &BTreeSet<Node>) -> ResistorNetwork {
        ResistorNetwork {
            nodes: self.nodes.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(&e.a) && keep.contains(&e.b))
                .cloned()
                .collect(),
            terminals: self.terminals.intersection(keep).copied().collect(),
        }
    }

    fn require(&self, node: &Node) -> Result<(), CircuitError> {
        if self.nodes.contains(node) {
            Ok(())
        } else {
            Err(CircuitError::UnknownNode(node.to_string()))
        }
    }

    fn fresh_star(&self) -> Node {
        let next = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Star(i) => Some(*i),
                _ => None,
            })
            .max()
            .map_or(1, |i| i + 1);
        Node::Star(next)
    }

    /// Replaces `x-y-z` by one resistor `x-z` of the summed weight. Any
    /// existing `x-z` resistor is left in parallel with it.
    pub fn series_reduce(&self, y: &Node) -> Result<ResistorNetwork, CircuitError> {
        let mut net = self.clone();
        net.apply_series(y)?;
        Ok(net)
    }

    /// Merges every resistor between `x` and `y` into one.
    pub fn parallel_reduce(&self, x: &Node, y: &Node) -> Result<ResistorNetwork, CircuitError> {
        let mut net = self.clone();
        net.apply_parallel(x, y)?;
        Ok(net)
    }

    /// Replaces triangle `x, y, z` by a star on a fresh node.
    pub fn delta_y(&self, x: &Node, y: &Node, z: &Node) -> Result<ResistorNetwork, CircuitError> {
        let mut net = self.clone();
        net.apply_delta_y(x, y, z)?;
        Ok(net)
    }

    pub(crate) fn apply_series(&mut self, y: &Node) -> Result<ReductionStep, CircuitError> {
        self.require(y)?;
        if self.terminals.contains(y) {
            return Err(CircuitError::TerminalNode(y.to_string()));
        }
        let incident: Vec<usize> =
            (0..self.edges.len()).filter(|&i| self.edges[i].touches(y)).collect();
        let not_series = || CircuitError::NotSeriesNode(y.to_string());
        let [i, j] = incident[..] else {
            return Err(not_series());
        };
        let (x, z) = (self.edges[i].other(y), self.edges[j].other(y));
        if x == z {
            return Err(not_series());
        }
        let (wx, wz) = (self.edges[i].weight.clone(), self.edges[j].weight.clone());
        let merged = wx.series(&wz);
        self.edges.remove(j);
        self.edges.remove(i);
        self.nodes.remove(y);
        self.add_resistor(x, z, merged.clone())?;
        Ok(ReductionStep::Series { removed: *y, ends: [x, z], before: [wx, wz], after: merged })
    }

    pub(crate) fn apply_parallel(&mut self, x: &Node, y: &Node) -> Result<ReductionStep, CircuitError> {
        self.require(x)?;
        self.require(y)?;
        let before: Vec<Weight> = self.resistors_between(x, y).into_iter().cloned().collect();
        if before.len() < 2 {
            return Err(CircuitError::NoParallelEdges(x.to_string(), y.to_string()));
        }
        let merged = Weight::parallel(&before);
        self.edges.retain(|e| !e.joins(x, y));
        self.add_resistor(*x, *y, merged.clone())?;
        let ends = if x < y { [*x, *y] } else { [*y, *x] };
        Ok(ReductionStep::Parallel { ends, before, after: merged })
    }

    pub(crate) fn apply_delta_y(
        &mut self,
        x: &Node,
        y: &Node,
        z: &Node,
    ) -> Result<ReductionStep, CircuitError> {
        for n in [x, y, z] {
            self.require(n)?;
        }
        let names = || (x.to_string(), y.to_string(), z.to_string());
        if x == y || y == z || x == z {
            let (a, b, c) = names();
            return Err(CircuitError::NotATriangle(a, b, c));
        }
        // Sides opposite x, y, z respectively.
        let mut sides = Vec::with_capacity(3);
        for (p, q) in [(y, z), (x, z), (x, y)] {
            let w = self.resistors_between(p, q);
            match w.len() {
                0 => {
                    let (a, b, c) = names();
                    return Err(CircuitError::NotATriangle(a, b, c));
                }
                1 => sides.push(w[0].clone()),
                _ => {
                    let (a, b, c) = names();
                    return Err(CircuitError::AmbiguousTriangle(a, b, c));
                }
            }
        }
        let [ra, rb, rc]: [Weight; 3] = sides.try_into().expect("three sides");
        let sum = ra.value() + rb.value() + rc.value();
        let arm = |p: &Weight, q: &Weight| Weight(p.value() * q.value() / &sum);
        let after = [arm(&rb, &rc), arm(&ra, &rc), arm(&ra, &rb)];

        let star = self.fresh_star();
        self.edges
            .retain(|e| !(e.joins(y, z) || e.joins(x, z) || e.joins(x, y)));
        self.nodes.insert(star);
        for (end, w) in [x, y, z].into_iter().zip(after.iter()) {
            self.add_resistor(star, *end, w.clone())?;
        }
        Ok(ReductionStep::DeltaY { triangle: [*x, *y, *z], before: [ra, rb, rc], star, after })
    }

    pub(crate) fn apply_prune(&mut self, node: &Node) -> Result<ReductionStep, CircuitError> {
        self.require(node)?;
        if self.terminals.contains(node) {
            return Err(CircuitError::TerminalNode(node.to_string()));
        }
        let incident: Vec<usize> =
            (0..self.edges.len()).filter(|&i| self.edges[i].touches(node)).collect();
        let [i] = incident[..] else {
            return Err(CircuitError::NotSeriesNode(node.to_string()));
        };
        let e = self.edges.remove(i);
        self.nodes.remove(node);
        Ok(ReductionStep::Prune { removed: *node, neighbor: e.other(node), before: e.weight })
    }

    /// Collapses the network onto `terminals`, keeping every pairwise
    /// effective resistance among them.
    ///
    /// Succeeds once every original non-terminal node has been eliminated;
    /// star nodes created by Δ-Y may remain. Returns
    /// [`CircuitError::Irreducible`] when the greedy schedule gets stuck, in
    /// which case the Laplacian engine has to be used instead.
    pub fn reduce_to_terminals(
        &self,
        terminals: &BTreeSet<Node>,
    ) -> Result<(ResistorNetwork, ReductionTrace), CircuitError> {
        if terminals.len() < 2 {
            return Err(CircuitError::TooFewTerminals);
        }
        let mut net = self.clone();
        net.set_terminals(terminals.clone())?;
        if !net.is_connected() {
            return Err(CircuitError::Disconnected);
        }
        let mut trace = ReductionTrace { terminals: terminals.clone(), steps: Vec::new() };
        while let Some(step) = net.greedy_step()? {
            trace.steps.push(step);
        }
        let remaining = net
            .nodes
            .iter()
            .filter(|n| !n.is_synthetic() && !net.terminals.contains(n))
            .count();
        if remaining > 0 {
            return Err(CircuitError::Irreducible { remaining });
        }
        Ok((net, trace))
    }

    /// Effective resistance between `u` and `v` by reducing to a single resistor.
    pub fn two_terminal_resistance(&self, u: &Node, v: &Node) -> Result<Rational, CircuitError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Ok(Rational::zero());
        }
        let terminals: BTreeSet<Node> = [*u, *v].into_iter().collect();
        let (net, _) = self.reduce_to_terminals(&terminals)?;
        match net.edges.as_slice() {
            [only] if only.joins(u, v) && net.node_count() == 2 => Ok(only.weight.value().clone()),
            _ => Err(CircuitError::Irreducible { remaining: net.node_count() - 2 }),
        }
    }

    fn greedy_step(&mut self) -> Result<Option<ReductionStep>, CircuitError> {
        let mut incident: BTreeMap<Node, Vec<usize>> =
            self.nodes.iter().map(|&n| (n, Vec::new())).collect();
        for (i, e) in self.edges.iter().enumerate() {
            incident.get_mut(&e.a).expect("endpoint").push(i);
            incident.get_mut(&e.b).expect("endpoint").push(i);
        }
        let free = |n: &Node| !self.terminals.contains(n);

        let series = incident.iter().find(|(n, ids)| {
            free(n)
                && ids.len() == 2
                && self.edges[ids[0]].other(n) != self.edges[ids[1]].other(n)
        });
        if let Some((&y, _)) = series {
            return self.apply_series(&y).map(Some);
        }

        let mut pairs: Vec<(Node, Node)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            let (x, y) = w[0];
            return self.apply_parallel(&x, &y).map(Some);
        }

        let dangling = incident.iter().find(|(n, ids)| free(n) && ids.len() == 1);
        if let Some((&n, _)) = dangling {
            return self.apply_prune(&n).map(Some);
        }

        let neighbours: BTreeMap<Node, BTreeSet<Node>> = incident
            .iter()
            .map(|(n, ids)| (*n, ids.iter().map(|&i| self.edges[i].other(n)).collect()))
            .collect();
        for (x, nx) in &neighbours {
            for y in nx.range(x..).skip_while(|y| *y == x) {
                for z in neighbours[y].range(y..).skip_while(|z| *z == y) {
                    if nx.contains(z) && (free(x) || free(y) || free(z)) {
                        return self.apply_delta_y(x, y, z).map(Some);
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Collapses polygons `H_1 .. H_(j-1)` of `g` into a path of star nodes,
/// starting from the first-polygon vertex next to `T1` (which is `T0`).
pub fn frontier_reduce(
    g: &ChainGraph,
    keep_polygon: usize,
) -> Result<(ResistorNetwork, ReductionTrace), CircuitError> {
    frontier_reduce_from(g, keep_polygon, Vertex::Top(0))
}

/// As [`frontier_reduce`], from any `base` on polygon `H_1` other than `T1`, `B1`.
///
/// Polygon by polygon, the free degree-2 vertices of `H_i` are removed by
/// series steps, which leaves a triangle on the previous star (or `base`),
/// `T(i)` and `B(i)`; a Δ-Y step turns it into the next star `Z(i)`. The
/// result holds `base-Z1-…-Z(j-1)`, the arms `Z(j-1)-T(j-1)` and
/// `Z(j-1)-B(j-1)`, and polygons `H_j .. H_n` without the rung `T(j-1)-B(j-1)`.
pub fn frontier_reduce_from(
    g: &ChainGraph,
    keep_polygon: usize,
    base: Vertex,
) -> Result<(ResistorNetwork, ReductionTrace), CircuitError> {
    let n = g.n();
    if n < 2 || !(2..=n).contains(&keep_polygon) {
        return Err(CircuitError::IndexOutOfRange { index: keep_polygon, max: n });
    }
    if !g.polygon(1).contains(&base) || base == Vertex::Top(1) || base == Vertex::Bottom(1) {
        return Err(CircuitError::InvalidBase(base.to_string()));
    }

    let mut net = g.to_network();
    let mut terminals: BTreeSet<Node> = BTreeSet::new();
    terminals.insert(Node::Chain(base));
    for i in keep_polygon..=n {
        terminals.extend(g.polygon(i).iter().map(|&v| Node::Chain(v)));
    }
    net.set_terminals(terminals.clone())?;
    let mut trace = ReductionTrace { terminals, steps: Vec::new() };

    let mut prev = Node::Chain(base);
    for i in 1..keep_polygon {
        loop {
            let next = g.polygon(i).iter().map(|&v| Node::Chain(v)).find(|v| {
                net.contains(v)
                    && !net.terminals.contains(v)
                    && net.degree(v) == 2
                    && net.neighbors(v).len() == 2
            });
            match next {
                Some(v) => trace.steps.push(net.apply_series(&v)?),
                None => break,
            }
        }
        let (t, b) = (Node::Chain(Vertex::Top(i)), Node::Chain(Vertex::Bottom(i)));
        for (p, q) in [(prev, t), (prev, b), (t, b)] {
            if net.resistors_between(&p, &q).len() > 1 {
                trace.steps.push(net.apply_parallel(&p, &q)?);
            }
        }
        let step = net.apply_delta_y(&prev, &t, &b)?;
        if let ReductionStep::DeltaY { star, .. } = &step {
            prev = *star;
        }
        trace.steps.push(step);
    }
    Ok((net, trace))
}

/// Convenience: effective resistance by circuit reduction, as used by tests
/// comparing the two engines.
pub fn reduced_resistance(net: &ResistorNetwork, u: &Node, v: &Node) -> Result<Rational, CircuitError> {
    net.two_terminal_resistance(u, v)
}
