//! S,T-isomers and the comparison checks built on them.
//!
//! Two graphs are S,T-isomers when one arises from the other by swapping a
//! 2-edge cut `{u-x, v-y}` for `{u-y, v-x}`, where `u, v` lie on one side `A`
//! of the cut and `x, y` on the other side `B`. The Kirchhoff indices then
//! differ by
//!
//! ```text
//! Kf(S) - Kf(T) = [R_A(u) - R_A(v)] [R_B(y) - R_B(x)] / (r_A(u,v) + r_B(x,y) + 2)
//! ```
//!
//! with transmissions `R` and resistances `r` taken inside `A` and `B` on
//! their own. Flipping a chain at the edges next to a shared rung moves one
//! subdivision vertex across polygon `H_i` and turns the rest of the chain
//! upside down, which is what [`lower_flip`] and [`raise_flip`] encode.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::chain::{ChainError, ChainGraph, ChainSpec, ValidatedChainSpec, Vertex};
use crate::circuit::{frontier_reduce_from, CircuitError, Node, ResistorNetwork, Weight};
use crate::graph;
use crate::kirchhoff::{kirchhoff_index, resistance_oracle, KirchhoffError, ResistanceOracle};
use crate::number::{integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsomerError {
    #[error("removing {0} does not separate the network into the two sides")]
    NotACut(String),
    #[error("cut endpoints must be distinct on each side")]
    DegenerateEndpoints,
    #[error("cut edge {0}-{1} is missing")]
    MissingEdge(String, String),
    #[error("cut edge {0}-{1} must be a single unit resistor")]
    NonUnitCutEdge(String, String),
    #[error("a side of the cut is disconnected")]
    ComponentDisconnected,
    #[error("index {index} is not an interior polygon of a chain with {n} polygons")]
    NotInterior { index: usize, n: usize },
    #[error("w_{index} = {value} does not meet the flip condition for k = {size}")]
    ConditionNotMet { index: usize, value: usize, size: usize },
    #[error("{0} is not a first-polygon vertex away from the first rung")]
    BadBaseVertex(String),
    #[error("need at least {needed} polygons, found {found}")]
    TooFewPolygons { needed: usize, found: usize },
    #[error("invalid pendant gadget: {0}")]
    InvalidGadget(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Kirchhoff(#[from] KirchhoffError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// A validated 2-edge cut `{u-x, v-y}` with sides `a ∋ u, v` and `b ∋ x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomerCut {
    pub a: BTreeSet<Node>,
    pub b: BTreeSet<Node>,
    pub u: Node,
    pub v: Node,
    pub x: Node,
    pub y: Node,
}

impl IsomerCut {
    pub fn new(net: &ResistorNetwork, u: Node, v: Node, x: Node, y: Node) -> Result<IsomerCut, IsomerError> {
        if u == v || x == y {
            return Err(IsomerError::DegenerateEndpoints);
        }
        for (p, q) in [(u, x), (v, y)] {
            match net.resistors_between(&p, &q).as_slice() {
                [] => return Err(IsomerError::MissingEdge(p.to_string(), q.to_string())),
                [w] if w.value().is_one() => {}
                _ => return Err(IsomerError::NonUnitCutEdge(p.to_string(), q.to_string())),
            }
        }
        let cut = [(u, x), (v, y)];
        let a = side_from(net, u, &cut);
        if a.contains(&x) || a.contains(&y) {
            return Err(IsomerError::NotACut(format!("{{{u}-{x}, {v}-{y}}}")));
        }
        if !a.contains(&v) {
            return Err(IsomerError::ComponentDisconnected);
        }
        let b = side_from(net, x, &cut);
        if !b.contains(&y) || a.len() + b.len() != net.node_count() {
            return Err(IsomerError::ComponentDisconnected);
        }
        Ok(IsomerCut { a, b, u, v, x, y })
    }

    /// The cut seen from the flipped network, where it undoes the flip.
    pub fn reverse(&self) -> IsomerCut {
        IsomerCut { x: self.y, y: self.x, ..self.clone() }
    }
}

fn side_from(net: &ResistorNetwork, start: Node, cut: &[(Node, Node); 2]) -> BTreeSet<Node> {
    let crosses = |p: &Node, q: &Node| cut.iter().any(|&(a, b)| (a == *p && b == *q) || (a == *q && b == *p));
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut stack = alloc::vec![start];
    while let Some(p) = stack.pop() {
        for q in net.neighbors(&p) {
            if !crosses(&p, &q) && seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen
}

/// Deletes `u-x`, `v-y` and adds `u-y`, `v-x`.
pub fn st_flip(net: &ResistorNetwork, cut: &IsomerCut) -> Result<ResistorNetwork, IsomerError> {
    let mut t = net.clone();
    let ux = t.remove_resistor(&cut.u, &cut.x).ok_or_else(|| missing(cut.u, cut.x))?;
    let vy = t.remove_resistor(&cut.v, &cut.y).ok_or_else(|| missing(cut.v, cut.y))?;
    t.add_resistor(cut.u, cut.y, ux)?;
    t.add_resistor(cut.v, cut.x, vy)?;
    Ok(t)
}

fn missing(p: Node, q: Node) -> IsomerError {
    IsomerError::MissingEdge(p.to_string(), q.to_string())
}

/// `Kf(S) - Kf(T)` from the two sides of the cut alone.
pub fn kf_delta(net: &ResistorNetwork, cut: &IsomerCut) -> Result<Rational, IsomerError> {
    let side = |nodes: &BTreeSet<Node>| -> Result<ResistanceOracle, IsomerError> {
        resistance_oracle(&net.subnetwork(nodes)).map_err(|e| match e {
            KirchhoffError::DisconnectedNetwork => IsomerError::ComponentDisconnected,
            other => other.into(),
        })
    };
    let (a, b) = (side(&cut.a)?, side(&cut.b)?);
    let numerator = (a.transmission(&cut.u)? - a.transmission(&cut.v)?)
        * (b.transmission(&cut.y)? - b.transmission(&cut.x)?);
    let denominator = a.resistance(&cut.u, &cut.v)? + b.resistance(&cut.x, &cut.y)? + integer(2);
    Ok(numerator / denominator)
}

fn chain(v: Vertex) -> Node {
    Node::Chain(v)
}

fn second_last(path: &[Vertex]) -> Vertex {
    path[path.len() - 2]
}

/// Both 2-edge cuts beside every shared rung `T(i)-B(i)`, `1 <= i < n`:
/// first the pair of edges entering the rung from `H_i`, then the pair
/// leaving it into `H_(i+1)`.
pub fn rung_flanking_cuts(g: &ChainGraph) -> Result<Vec<IsomerCut>, IsomerError> {
    let net = g.to_network();
    let mut cuts = Vec::with_capacity(2 * g.n().saturating_sub(1));
    for i in 1..g.n() {
        let (t, b) = (Vertex::Top(i), Vertex::Bottom(i));
        let (top, bottom) = (g.top_path(i), g.bottom_path(i));
        cuts.push(IsomerCut::new(
            &net,
            chain(second_last(&top)),
            chain(second_last(&bottom)),
            chain(t),
            chain(b),
        )?);
        let (top, bottom) = (g.top_path(i + 1), g.bottom_path(i + 1));
        cuts.push(IsomerCut::new(&net, chain(t), chain(b), chain(top[1]), chain(bottom[1]))?);
    }
    Ok(cuts)
}

/// Which way a flip moves a subdivision vertex of `H_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlipDirection {
    /// Top to bottom: `w_i - 1`; needs `2 w_i - (k_i - 4) >= 2`.
    Lower,
    /// Bottom to top: `w_i + 1`; needs `(k_i - 4) - 2 w_i >= 2`.
    Raise,
}

fn check_interior(spec: &ValidatedChainSpec, i: usize) -> Result<(), IsomerError> {
    let n = spec.n();
    if n < 3 || !(2..n).contains(&i) {
        return Err(IsomerError::NotInterior { index: i, n });
    }
    Ok(())
}

/// Encoding after flipping at the rung between `H_i` and `H_(i+1)`:
/// `w_i` moves by one and every later placement is complemented.
pub fn flip(spec: &ValidatedChainSpec, i: usize, direction: FlipDirection) -> Result<ValidatedChainSpec, IsomerError> {
    check_interior(spec, i)?;
    let (k, wi) = (spec.sizes[i - 1], spec.w[i - 2]);
    let free = k - 4;
    let eligible = match direction {
        FlipDirection::Lower => 2 * wi >= free + 2,
        FlipDirection::Raise => free >= 2 * wi + 2,
    };
    if !eligible {
        return Err(IsomerError::ConditionNotMet { index: i, value: wi, size: k });
    }
    let mut w = spec.w.clone();
    w[i - 2] = match direction {
        FlipDirection::Lower => wi - 1,
        FlipDirection::Raise => wi + 1,
    };
    for j in i + 1..spec.n() {
        w[j - 2] = spec.sizes[j - 1] - 4 - w[j - 2];
    }
    Ok(ChainSpec::new(spec.sizes.clone(), w).validate()?)
}

pub fn lower_flip(spec: &ValidatedChainSpec, i: usize) -> Result<ValidatedChainSpec, IsomerError> {
    flip(spec, i, FlipDirection::Lower)
}

pub fn raise_flip(spec: &ValidatedChainSpec, i: usize) -> Result<ValidatedChainSpec, IsomerError> {
    flip(spec, i, FlipDirection::Raise)
}

/// The concrete cut realizing [`flip`] on the graph.
///
/// For [`FlipDirection::Lower`], `x` is the top neighbour of `T(i)` in `H_i`,
/// `u` the other neighbour of `x`, `v` the bottom neighbour of `B(i)` in
/// `H_i` and `y = B(i)`. The raising cut is the same with top and bottom
/// exchanged.
pub fn flip_cut(g: &ChainGraph, i: usize, direction: FlipDirection) -> Result<IsomerCut, IsomerError> {
    flip(g.spec(), i, direction)?;
    let (top, bottom) = (g.top_path(i), g.bottom_path(i));
    let (moving, staying, y) = match direction {
        FlipDirection::Lower => (top, bottom, Vertex::Bottom(i)),
        FlipDirection::Raise => (bottom, top, Vertex::Top(i)),
    };
    let x = moving[moving.len() - 2];
    let u = moving[moving.len() - 3];
    IsomerCut::new(&g.to_network(), chain(u), chain(second_last(&staying)), chain(x), chain(y))
}

/// Name of an executable check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// `kf_delta` against the direct difference of Kirchhoff indices.
    CutDifference,
    /// `Kf(P(w)) < Kf(P(w'))` for a lowering flip.
    LowerFlip,
    /// `Kf(P(w)) < Kf(P(w'))` for a raising flip.
    RaiseFlip,
    /// The longer pendant path ends at the larger transmission.
    PendantTransmission,
    /// Resistance from the first polygon grows along the last polygon.
    LastPolygonMonotone,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::CutDifference => "cut-difference",
            Check::LowerFlip => "lower-flip",
            Check::RaiseFlip => "raise-flip",
            Check::PendantTransmission => "pendant-transmission",
            Check::LastPolygonMonotone => "last-polygon-monotone",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated comparison: `holds` records whether the expected relation
/// between `lhs` and `rhs` is true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub check: Check,
    pub instance: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// Kirchhoff indices around the cut: `lhs = kf_delta`, `rhs = Kf(S) - Kf(T)`.
pub fn cut_difference_check(net: &ResistorNetwork, cut: &IsomerCut) -> Result<LemmaReport, IsomerError> {
    let predicted = kf_delta(net, cut)?;
    let direct = kirchhoff_index(net)? - kirchhoff_index(&st_flip(net, cut)?)?;
    Ok(LemmaReport {
        check: Check::CutDifference,
        instance: format!("cut {{{}-{}, {}-{}}}", cut.u, cut.x, cut.v, cut.y),
        holds: predicted == direct,
        lhs: predicted,
        rhs: direct,
    })
}

/// Outcome of a flip at both the encoding and the graph level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipReport {
    /// `lhs = Kf(P(w))`, `rhs = Kf(P(w'))`, holding when `lhs < rhs`.
    pub ordering: LemmaReport,
    pub flipped: ValidatedChainSpec,
    /// The graph flipped at [`flip_cut`] is isomorphic to `P(w')`.
    pub graph_matches: bool,
    /// `kf_delta` at that cut equals `Kf(P(w)) - Kf(P(w'))`.
    pub delta_matches: bool,
}

impl FlipReport {
    pub fn passed(&self) -> bool {
        self.ordering.holds && self.graph_matches && self.delta_matches
    }
}

pub fn flip_check(spec: &ValidatedChainSpec, i: usize, direction: FlipDirection) -> Result<FlipReport, IsomerError> {
    let flipped = flip(spec, i, direction)?;
    let g = spec.build_graph();
    let net = g.to_network();
    let cut = flip_cut(&g, i, direction)?;
    let realized = st_flip(&net, &cut)?;
    let target = flipped.build_graph();
    let graph_matches = graph::are_isomorphic(&realized.adjacency_lists().1, target.adjacency());

    let before = kirchhoff_index(&net)?;
    let after = kirchhoff_index(&target.to_network())?;
    let delta_matches = kf_delta(&net, &cut)? == &before - &after;
    let check = match direction {
        FlipDirection::Lower => Check::LowerFlip,
        FlipDirection::Raise => Check::RaiseFlip,
    };
    Ok(FlipReport {
        ordering: LemmaReport {
            check,
            instance: format!("{} at i={} -> {}", spec, i, flipped),
            holds: before < after,
            lhs: before,
            rhs: after,
        },
        flipped,
        graph_matches,
        delta_matches,
    })
}

/// Every `(i, direction)` whose flip condition holds for `spec`.
pub fn eligible_flips(spec: &ValidatedChainSpec) -> Vec<(usize, FlipDirection)> {
    let mut out = Vec::new();
    for i in 2..spec.n() {
        for d in [FlipDirection::Lower, FlipDirection::Raise] {
            if flip(spec, i, d).is_ok() {
                out.push((i, d));
            }
        }
    }
    out
}

/// A chain with two pendant paths hung from adjacent degree-2 vertices of
/// its last polygon: `u_i = attach_u, u_(i-1), .., u_0` and
/// `v_j = attach_v, .., v_0`, with `i > j >= 0`.
#[derive(Debug, Clone)]
pub struct PendantPathGadget {
    graph: ChainGraph,
    long: usize,
    short: usize,
    attach_u: Vertex,
    attach_v: Vertex,
}

impl PendantPathGadget {
    pub fn new(
        graph: ChainGraph,
        long: usize,
        short: usize,
        attach_u: Vertex,
        attach_v: Vertex,
    ) -> Result<Self, IsomerError> {
        if long <= short {
            return Err(IsomerError::InvalidGadget(format!("path lengths need i > j, got i={long}, j={short}")));
        }
        if !eligible_attachments(&graph).contains(&(attach_u, attach_v)) {
            return Err(IsomerError::InvalidGadget(format!(
                "{attach_u} and {attach_v} are not adjacent degree-2 vertices of the last polygon"
            )));
        }
        Ok(PendantPathGadget { graph, long, short, attach_u, attach_v })
    }

    /// Attached at `T(n)` and `B(n)`.
    pub fn at_end(graph: ChainGraph, long: usize, short: usize) -> Result<Self, IsomerError> {
        let n = graph.n();
        Self::new(graph, long, short, Vertex::Top(n), Vertex::Bottom(n))
    }

    /// Far end `u_0` of the longer path.
    pub fn u0(&self) -> Node {
        Node::PendantU(0)
    }

    /// Far end `v_0` of the shorter path, the attachment itself when `j = 0`.
    pub fn v0(&self) -> Node {
        if self.short == 0 {
            chain(self.attach_v)
        } else {
            Node::PendantV(0)
        }
    }

    pub fn network(&self) -> ResistorNetwork {
        let mut net = self.graph.to_network();
        let mut hang = |attach: Vertex, len: usize, node: fn(usize) -> Node| {
            let mut prev = chain(attach);
            for t in (0..len).rev() {
                let next = node(t);
                net.add_resistor(prev, next, Weight::one()).expect("pendant nodes are fresh");
                prev = next;
            }
        };
        hang(self.attach_u, self.long, Node::PendantU);
        hang(self.attach_v, self.short, Node::PendantV);
        net
    }
}

/// Ordered pairs of adjacent vertices on the last polygon that both have degree 2.
pub fn eligible_attachments(g: &ChainGraph) -> Vec<(Vertex, Vertex)> {
    let cycle = g.polygon(g.n());
    let deg2 = |v: Vertex| g.degree(v) == Ok(2);
    let mut out = Vec::new();
    for (k, &a) in cycle.iter().enumerate() {
        let b = cycle[(k + 1) % cycle.len()];
        if deg2(a) && deg2(b) {
            out.push((a, b));
            out.push((b, a));
        }
    }
    out.sort();
    out
}

/// `lhs = R_N(u_0)`, `rhs = R_N(v_0)`, holding when `lhs > rhs`.
pub fn pendant_check(gadget: &PendantPathGadget) -> Result<LemmaReport, IsomerError> {
    let oracle = resistance_oracle(&gadget.network())?;
    let lhs = oracle.transmission(&gadget.u0())?;
    let rhs = oracle.transmission(&gadget.v0())?;
    Ok(LemmaReport {
        check: Check::PendantTransmission,
        instance: format!(
            "{} with i={} at {}, j={} at {}",
            gadget.graph.spec(),
            gadget.long,
            gadget.attach_u,
            gadget.short,
            gadget.attach_v
        ),
        holds: lhs > rhs,
        lhs,
        rhs,
    })
}

/// Vertices of `H_1` other than `T1` and `B1`.
pub fn first_polygon_bases(g: &ChainGraph) -> Vec<Vertex> {
    g.polygon(1).iter().copied().filter(|&v| v != Vertex::Top(1) && v != Vertex::Bottom(1)).collect()
}

/// `u_1 .. u_(k_n - 2)`: the last polygon walked from `T(n-1)` over the top to
/// `B(n-1)`, without those two.
pub fn last_polygon_walk(g: &ChainGraph) -> Vec<Vertex> {
    let cycle = g.polygon(g.n());
    cycle[1..cycle.len() - 1].to_vec()
}

fn require_base(g: &ChainGraph, z: Vertex) -> Result<(), IsomerError> {
    if g.n() < 2 {
        return Err(IsomerError::TooFewPolygons { needed: 2, found: g.n() });
    }
    if !first_polygon_bases(g).contains(&z) {
        return Err(IsomerError::BadBaseVertex(z.to_string()));
    }
    Ok(())
}

/// `r(z, u_i) < r(z, u_(i+1))` for `1 <= i <= floor((k_n - 3) / 2)`, one report
/// per inequality.
pub fn last_polygon_check(spec: &ValidatedChainSpec, z: Vertex) -> Result<Vec<LemmaReport>, IsomerError> {
    let g = spec.build_graph();
    require_base(&g, z)?;
    let oracle = resistance_oracle(&g.to_network())?;
    let walk = last_polygon_walk(&g);
    let k = spec.sizes[spec.n() - 1];
    let mut out = Vec::new();
    for i in 1..=(k - 3) / 2 {
        let lhs = oracle.resistance(&chain(z), &chain(walk[i - 1]))?;
        let rhs = oracle.resistance(&chain(z), &chain(walk[i]))?;
        out.push(LemmaReport {
            check: Check::LastPolygonMonotone,
            instance: format!("{spec} from {z}: u{i}={} vs u{}={}", walk[i - 1], i + 1, walk[i]),
            holds: lhs < rhs,
            lhs,
            rhs,
        });
    }
    Ok(out)
}

/// For every `u_i`, the resistance `r(z, u_i)` from the Laplacian oracle next
/// to the value obtained by collapsing `H_1 .. H_(n-1)` onto a path of stars
/// ending in `Z` with arms `R1` to `T(n-1)` and `R2` to `B(n-1)`:
///
/// ```text
/// r(z, Z) + (R1 + i)(R2 + k_n - 1 - i) / (R1 + R2 + k_n - 1)
/// ```
pub fn last_polygon_profile(g: &ChainGraph, z: Vertex) -> Result<Vec<(Rational, Rational)>, IsomerError> {
    require_base(g, z)?;
    let n = g.n();
    let (reduced, _) = frontier_reduce_from(g, n, z)?;
    let star = reduced
        .neighbors(&chain(Vertex::Top(n - 1)))
        .into_iter()
        .find(|p| matches!(p, Node::Star(_)))
        .ok_or(IsomerError::ComponentDisconnected)?;
    let arm = |p: Vertex| -> Rational {
        reduced.resistors_between(&star, &chain(p)).into_iter().map(|w| w.value().clone()).sum()
    };
    let (r1, r2) = (arm(Vertex::Top(n - 1)), arm(Vertex::Bottom(n - 1)));

    // Series path z - Z1 - … - Z.
    let mut to_star = Rational::zero();
    let mut prev = chain(z);
    let mut seen = BTreeSet::from([prev]);
    while prev != star {
        let next = reduced
            .neighbors(&prev)
            .into_iter()
            .find(|p| matches!(p, Node::Star(_)) && !seen.contains(p))
            .ok_or(IsomerError::ComponentDisconnected)?;
        to_star += reduced.resistors_between(&prev, &next)[0].value();
        seen.insert(next);
        prev = next;
    }

    let oracle = resistance_oracle(&g.to_network())?;
    let k = integer(g.spec().sizes[n - 1] as i64);
    let loop_len = &r1 + &r2 + &k - integer(1);
    last_polygon_walk(g)
        .into_iter()
        .enumerate()
        .map(|(idx, u)| {
            let i = integer(idx as i64 + 1);
            let closed = &to_star + (&r1 + &i) * (&r2 + &k - integer(1) - &i) / &loop_len;
            Ok((oracle.resistance(&chain(z), &chain(u))?, closed))
        })
        .collect()
}
