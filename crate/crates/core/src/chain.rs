//! Chain encodings and the graphs they describe.
//!
//! A chain with `n` polygons is built on a ladder: two paths `T0..Tn` and
//! `B0..Bn` joined by the rungs `Ti-Bi`, giving `n` squares. Polygon `H_i`
//! grows out of square `i` by subdividing its top edge `T(i-1)-Ti` with `a_i`
//! vertices and its bottom edge `B(i-1)-Bi` with `k_i - 4 - a_i` vertices.
//! The end polygons always carry their extras on the bottom; interior
//! polygons take `a_i = w_i` from the placement vector.
//!
//! Subdivision vertices are labelled `D{i}{t|b}{p}` with `p` counted from the
//! left end of the subdivided edge.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use crate::circuit::{Node, ResistorNetwork, Weight};
use crate::graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("a chain needs at least one polygon")]
    Empty,
    #[error("polygon {index} has size {size}; every polygon needs at least 4 sides")]
    PolygonTooSmall { index: usize, size: usize },
    #[error("placement w_{index} = {value} is outside 0..={max}")]
    PlacementOutOfRange { index: usize, value: usize, max: usize },
    #[error("placement vector has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} is not in the chain")]
    VertexNotFound(String),
}

/// Which edge of a ladder square a subdivision vertex sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    fn letter(self) -> char {
        match self {
            Side::Top => 't',
            Side::Bottom => 'b',
        }
    }
}

/// Structural vertex label of a chain graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    /// Top ladder vertex `T(i)`, `0 <= i <= n`.
    Top(usize),
    /// Bottom ladder vertex `B(i)`, `0 <= i <= n`.
    Bottom(usize),
    /// Subdivision vertex `pos` (1-based, from the left) on the `side` edge of square `polygon`.
    Sub { polygon: usize, side: Side, pos: usize },
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Vertex::Top(i) => write!(f, "T{i}"),
            Vertex::Bottom(i) => write!(f, "B{i}"),
            Vertex::Sub { polygon, side, pos } => write!(f, "D{polygon}{}{pos}", side.letter()),
        }
    }
}

impl FromStr for Vertex {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ChainError::VertexNotFound(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('T') {
            return Ok(Vertex::Top(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('B') {
            return Ok(Vertex::Bottom(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('D') {
            let split = rest.find(['t', 'b']).ok_or_else(bad)?;
            let side = if rest.as_bytes()[split] == b't' { Side::Top } else { Side::Bottom };
            return Ok(Vertex::Sub {
                polygon: num(&rest[..split])?,
                side,
                pos: num(&rest[split + 1..])?,
            });
        }
        Err(bad())
    }
}

/// Polygon sizes plus the interior placement vector.
///
/// `w[j]` belongs to polygon `j + 2` (polygons are numbered from 1), so `w`
/// has `n - 2` entries and is empty for chains of one or two polygons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainSpec {
    pub sizes: Vec<usize>,
    pub w: Vec<usize>,
}

impl ChainSpec {
    pub fn new(sizes: Vec<usize>, w: Vec<usize>) -> Self {
        ChainSpec { sizes, w }
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn validate(self) -> Result<ValidatedChainSpec, ChainError> {
        check_sizes(&self.sizes)?;
        let expected = self.sizes.len().saturating_sub(2);
        if self.w.len() != expected {
            return Err(ChainError::LengthMismatch { expected, found: self.w.len() });
        }
        for (j, &value) in self.w.iter().enumerate() {
            let max = self.sizes[j + 1] - 4;
            if value > max {
                return Err(ChainError::PlacementOutOfRange { index: j + 2, value, max });
            }
        }
        Ok(ValidatedChainSpec(self))
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sizes={:?} w={:?}", self.sizes, self.w)
    }
}

pub(crate) fn check_sizes(sizes: &[usize]) -> Result<(), ChainError> {
    if sizes.is_empty() {
        return Err(ChainError::Empty);
    }
    match sizes.iter().position(|&k| k < 4) {
        Some(i) => Err(ChainError::PolygonTooSmall { index: i + 1, size: sizes[i] }),
        None => Ok(()),
    }
}

/// A [`ChainSpec`] whose invariants have been checked.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValidatedChainSpec(ChainSpec);

impl Deref for ValidatedChainSpec {
    type Target = ChainSpec;

    fn deref(&self) -> &ChainSpec {
        &self.0
    }
}

impl fmt::Display for ValidatedChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl ValidatedChainSpec {
    pub fn into_inner(self) -> ChainSpec {
        self.0
    }

    /// Subdivision vertices on the top edge of square `i` (1-based).
    pub fn top_count(&self, i: usize) -> usize {
        if i == 1 || i == self.n() {
            0
        } else {
            self.0.w[i - 2]
        }
    }

    pub fn bottom_count(&self, i: usize) -> usize {
        self.sizes[i - 1] - 4 - self.top_count(i)
    }

    /// Vertical mirror image: every interior `w_i` becomes `k_i - 4 - w_i`.
    pub fn complement(&self) -> ValidatedChainSpec {
        let w = self
            .w
            .iter()
            .enumerate()
            .map(|(j, &x)| self.sizes[j + 1] - 4 - x)
            .collect();
        ValidatedChainSpec(ChainSpec::new(self.sizes.clone(), w))
    }

    /// Left-right mirror image. Only meaningful as a symmetry when the size
    /// vector is a palindrome; otherwise it lands in another family.
    pub fn reversed(&self) -> ValidatedChainSpec {
        let sizes = self.sizes.iter().rev().copied().collect();
        let w = self.w.iter().rev().copied().collect();
        ValidatedChainSpec(ChainSpec::new(sizes, w))
    }

    pub fn is_palindromic(&self) -> bool {
        self.sizes.iter().eq(self.sizes.iter().rev())
    }

    /// All encodings of the same chain under the symmetries kept inside a family.
    pub fn orbit(&self) -> ChainOrbit {
        let mut members = vec![self.clone(), self.complement()];
        if self.is_palindromic() {
            let r = self.reversed();
            members.push(r.complement());
            members.push(r);
        }
        members.sort();
        members.dedup();
        ChainOrbit { members }
    }

    /// Lexicographically least member of the orbit.
    pub fn canonicalize(&self) -> ValidatedChainSpec {
        self.orbit().members.swap_remove(0)
    }

    pub fn build_graph(&self) -> ChainGraph {
        ChainGraph::build(self.clone())
    }
}

/// Encodings equivalent under vertical complement and, for palindromic size
/// vectors, horizontal reversal. Sorted, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOrbit {
    pub members: Vec<ValidatedChainSpec>,
}

impl ChainOrbit {
    pub fn representative(&self) -> &ValidatedChainSpec {
        &self.members[0]
    }

    pub fn contains(&self, spec: &ChainSpec) -> bool {
        self.members.iter().any(|m| **m == *spec)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn validate(spec: ChainSpec) -> Result<ValidatedChainSpec, ChainError> {
    spec.validate()
}

pub fn build_graph(spec: &ValidatedChainSpec) -> ChainGraph {
    spec.build_graph()
}

/// The all-zero encoding: every kink turns the same way.
pub fn helicene(sizes: &[usize]) -> Result<ValidatedChainSpec, ChainError> {
    check_sizes(sizes)?;
    ChainSpec::new(sizes.to_vec(), vec![0; sizes.len().saturating_sub(2)]).validate()
}

/// Every encoding with each interior `w_i` in `{floor((k_i-4)/2), ceil((k_i-4)/2)}`,
/// in lexicographic order.
pub fn linear_set(sizes: &[usize]) -> Result<Vec<ValidatedChainSpec>, ChainError> {
    check_sizes(sizes)?;
    let interior = sizes.get(1..sizes.len().saturating_sub(1)).unwrap_or(&[]);
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &k in interior {
        let lo = (k - 4) / 2;
        let hi = (k - 3) / 2;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                let mut choices = vec![lo];
                if hi != lo {
                    choices.push(hi);
                }
                choices.into_iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|w| ChainSpec::new(sizes.to_vec(), w).validate())
        .collect()
}

pub fn canonicalize(spec: &ValidatedChainSpec) -> ValidatedChainSpec {
    spec.canonicalize()
}

/// Unit-weight polygonal chain with structural vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainGraph {
    spec: ValidatedChainSpec,
    vertices: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    polygons: Vec<Vec<Vertex>>,
}

impl ChainGraph {
    fn build(spec: ValidatedChainSpec) -> ChainGraph {
        let n = spec.n();
        let mut polygons = Vec::with_capacity(n);
        let mut edge_list: Vec<(Vertex, Vertex)> = Vec::new();
        for i in 0..=n {
            edge_list.push((Vertex::Top(i), Vertex::Bottom(i)));
        }
        for i in 1..=n {
            let top = side_path(i, Side::Top, spec.top_count(i));
            let bottom = side_path(i, Side::Bottom, spec.bottom_count(i));
            edge_list.extend(top.windows(2).map(|p| (p[0], p[1])));
            edge_list.extend(bottom.windows(2).map(|p| (p[0], p[1])));
            // T(i-1) .. T(i), then back along the bottom to B(i-1).
            let mut cycle = top;
            cycle.extend(bottom.into_iter().rev());
            polygons.push(cycle);
        }

        let mut vertices: Vec<Vertex> = edge_list.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.sort();
        vertices.dedup();
        let index: BTreeMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges: Vec<(usize, usize)> = edge_list
            .iter()
            .map(|(a, b)| {
                let (x, y) = (index[a], index[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        ChainGraph { spec, vertices, index, adjacency, edges, polygons }
    }

    pub fn spec(&self) -> &ValidatedChainSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices in label order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().map(|&(a, b)| (self.vertices[a], self.vertices[b]))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn index_of(&self, v: Vertex) -> Result<usize, ChainError> {
        self.index
            .get(&v)
            .copied()
            .ok_or_else(|| ChainError::VertexNotFound(v.to_string()))
    }

    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>, ChainError> {
        let i = self.index_of(v)?;
        Ok(self.adjacency[i].iter().map(|&j| self.vertices[j]).collect())
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, ChainError> {
        Ok(self.adjacency[self.index_of(v)?].len())
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(&x), Some(&y)) => self.adjacency[x].binary_search(&y).is_ok(),
            _ => false,
        }
    }

    /// Boundary cycle of polygon `i` (1-based): `T(i-1)`, the top path,
    /// `T(i)`, `B(i)`, the bottom path right to left, `B(i-1)`.
    pub fn polygon(&self, i: usize) -> &[Vertex] {
        &self.polygons[i - 1]
    }

    /// `T(i-1), D(i,t,1), .., T(i)`.
    pub fn top_path(&self, i: usize) -> Vec<Vertex> {
        side_path(i, Side::Top, self.spec.top_count(i))
    }

    /// `B(i-1), D(i,b,1), .., B(i)`.
    pub fn bottom_path(&self, i: usize) -> Vec<Vertex> {
        side_path(i, Side::Bottom, self.spec.bottom_count(i))
    }

    /// Polygons (1-based) whose boundary contains `v`.
    pub fn polygons_of(&self, v: Vertex) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.polygon(i).contains(&v)).collect()
    }

    /// Hop distance by breadth-first search.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<usize, ChainError> {
        let (a, b) = (self.index_of(u)?, self.index_of(v)?);
        let dist = graph::bfs_distances(&self.adjacency, a);
        Ok(dist[b].expect("chain graphs are connected"))
    }

    /// The same graph as a unit-resistor network.
    pub fn to_network(&self) -> ResistorNetwork {
        let mut net = ResistorNetwork::new();
        for &v in &self.vertices {
            net.add_node(Node::Chain(v));
        }
        for (a, b) in self.edges() {
            net.add_resistor(Node::Chain(a), Node::Chain(b), Weight::one())
                .expect("chain edges join distinct vertices");
        }
        net
    }
}

pub fn graph_distance(g: &ChainGraph, u: Vertex, v: Vertex) -> Result<usize, ChainError> {
    g.distance(u, v)
}

fn side_path(i: usize, side: Side, count: usize) -> Vec<Vertex> {
    let (start, end) = match side {
        Side::Top => (Vertex::Top(i - 1), Vertex::Top(i)),
        Side::Bottom => (Vertex::Bottom(i - 1), Vertex::Bottom(i)),
    };
    let mut path = Vec::with_capacity(count + 2);
    path.push(start);
    path.extend((1..=count).map(|pos| Vertex::Sub { polygon: i, side, pos }));
    path.push(end);
    path
}
