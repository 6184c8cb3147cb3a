//! Ground-truth resistance engine.
//!
//! One node is grounded and the reduced weighted Laplacian is inverted by
//! fraction-free Gauss–Jordan elimination. With integer conductances the
//! elimination yields the adjugate and determinant exactly, so
//! `r(u, v) = scale · (A_uu + A_vv − 2·A_uv) / det` where `scale` is the
//! common denominator used to make the conductances integral.
//!
//! Elimination is attempted in `i64`, then `i128`, and finally in `BigInt`
//! when an intermediate overflows.

mod float;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::circuit::{Node, ResistorNetwork};
use crate::number::Rational;

pub use float::{float_kirchhoff_index, float_resistance_oracle, FloatOracle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KirchhoffError {
    #[error("network is disconnected")]
    DisconnectedNetwork,
    #[error("network has no nodes")]
    EmptyNetwork,
    #[error("node {0} is not in the network")]
    VertexNotFound(String),
    #[error("resistance table must be square over {0} nodes")]
    BadTable(usize),
}

/// Exact pairwise effective resistances of a connected network.
///
/// Entries share one positive denominator, so comparisons and sums work on
/// the numerators directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistanceOracle {
    nodes: Vec<Node>,
    index: BTreeMap<Node, usize>,
    table: Table,
    denom: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Table {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

// Small tables keep every entry below this so pairwise sums cannot overflow.
const SMALL_LIMIT: i128 = 1 << 120;

impl Table {
    fn from_big(entries: Vec<BigInt>) -> Table {
        let small: Option<Vec<i128>> = entries
            .iter()
            .map(|e| e.to_i128().filter(|v| v.abs() < SMALL_LIMIT))
            .collect();
        match small {
            Some(s) => Table::Small(s),
            None => Table::Big(entries),
        }
    }

    fn get(&self, k: usize) -> BigInt {
        match self {
            Table::Small(t) => BigInt::from(t[k]),
            Table::Big(t) => t[k].clone(),
        }
    }

    fn sum(&self, range: impl Iterator<Item = usize>) -> BigInt {
        match self {
            Table::Small(t) => {
                let mut acc: i128 = 0;
                let mut big = BigInt::zero();
                for k in range {
                    match acc.checked_add(t[k]) {
                        Some(v) => acc = v,
                        None => {
                            big += acc;
                            acc = t[k];
                        }
                    }
                }
                big + acc
            }
            Table::Big(t) => range.map(|k| &t[k]).sum(),
        }
    }
}

impl ResistanceOracle {
    /// Builds an oracle from an explicit `n × n` row-major table. No metric
    /// property is checked; see [`metric_check`].
    pub fn from_table(nodes: Vec<Node>, entries: Vec<Rational>) -> Result<Self, KirchhoffError> {
        let n = nodes.len();
        if entries.len() != n * n {
            return Err(KirchhoffError::BadTable(n));
        }
        let denom = entries.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let numer = entries
            .iter()
            .map(|r| r.numer() * (&denom / r.denom()))
            .collect();
        let index = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Ok(ResistanceOracle { nodes, index, table: Table::from_big(numer), denom })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, node: &Node) -> Result<usize, KirchhoffError> {
        self.index
            .get(node)
            .copied()
            .ok_or_else(|| KirchhoffError::VertexNotFound(node.to_string()))
    }

    pub fn resistance(&self, u: &Node, v: &Node) -> Result<Rational, KirchhoffError> {
        Ok(self.resistance_at(self.index_of(u)?, self.index_of(v)?))
    }

    pub fn resistance_at(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.table.get(i * self.len() + j), self.denom.clone())
    }

    /// Sum of resistances from `x` to every other node.
    pub fn transmission(&self, x: &Node) -> Result<Rational, KirchhoffError> {
        Ok(self.transmission_at(self.index_of(x)?))
    }

    pub fn transmission_at(&self, i: usize) -> Rational {
        let n = self.len();
        Rational::new(self.table.sum(i * n..(i + 1) * n), self.denom.clone())
    }

    pub fn kirchhoff_index(&self) -> Rational {
        let n = self.len();
        let upper = (0..n).flat_map(|i| (i + 1..n).map(move |j| i * n + j));
        Rational::new(self.table.sum(upper), self.denom.clone())
    }

    /// Unordered pairs `u < v` with their resistance.
    pub fn pairs(&self) -> impl Iterator<Item = (Node, Node, Rational)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| {
            (i + 1..n).map(move |j| (self.nodes[i], self.nodes[j], self.resistance_at(i, j)))
        })
    }

    /// Corrupts one entry; only for exercising [`metric_check`].
    #[doc(hidden)]
    pub fn with_entry(mut self, i: usize, j: usize, value: &Rational) -> Self {
        let n = self.len();
        let mut all: Vec<Rational> = (0..n * n).map(|k| self.resistance_at(k / n, k % n)).collect();
        all[i * n + j] = value.clone();
        let nodes = core::mem::take(&mut self.nodes);
        ResistanceOracle::from_table(nodes, all).expect("square table")
    }
}

/// Exact resistance table, grounding the least node.
pub fn resistance_oracle(net: &ResistorNetwork) -> Result<ResistanceOracle, KirchhoffError> {
    let ground = *net.nodes().iter().next().ok_or(KirchhoffError::EmptyNetwork)?;
    resistance_oracle_grounded(net, &ground)
}

/// Exact resistance table with an explicit ground; the result does not
/// depend on the choice.
pub fn resistance_oracle_grounded(
    net: &ResistorNetwork,
    ground: &Node,
) -> Result<ResistanceOracle, KirchhoffError> {
    let nodes: Vec<Node> = net.nodes().iter().copied().collect();
    let index: BTreeMap<Node, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let g = *index
        .get(ground)
        .ok_or_else(|| KirchhoffError::VertexNotFound(ground.to_string()))?;
    if !net.is_connected() {
        return Err(KirchhoffError::DisconnectedNetwork);
    }
    let n = nodes.len();

    // Integer conductances: c_e * scale.
    let conductances: Vec<Rational> = net.resistors().iter().map(|e| e.weight.conductance()).collect();
    let scale = conductances.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let reduced = |i: usize| if i < g { Some(i) } else if i > g { Some(i - 1) } else { None };
    let m = n - 1;
    let mut lap = vec![BigInt::zero(); m * m];
    for (e, c) in net.resistors().iter().zip(&conductances) {
        let c = c.numer() * (&scale / c.denom());
        let (a, b) = (reduced(index[&e.a]), reduced(index[&e.b]));
        if let Some(a) = a {
            lap[a * m + a] += &c;
        }
        if let Some(b) = b {
            lap[b * m + b] += &c;
        }
        if let (Some(a), Some(b)) = (a, b) {
            lap[a * m + b] -= &c;
            lap[b * m + a] -= &c;
        }
    }

    let (adj, det) = adjugate_any(&lap, m).ok_or(KirchhoffError::DisconnectedNetwork)?;
    let diag = |i: usize| reduced(i).map_or_else(BigInt::zero, |a| adj.get(a * m + a));
    let off = |i: usize, j: usize| match (reduced(i), reduced(j)) {
        (Some(a), Some(b)) => adj.get(a * m + b),
        _ => BigInt::zero(),
    };
    let diagonal: Vec<BigInt> = (0..n).map(diag).collect();
    let mut numer = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let q = &diagonal[i] + &diagonal[j] - (off(i, j) << 1u8);
            let v = q * &scale;
            numer[j * n + i] = v.clone();
            numer[i * n + j] = v;
        }
    }
    let common = numer.iter().fold(det.clone(), |acc, x| acc.gcd(x));
    let (numer, denom) = if common.is_one() || common.is_zero() {
        (numer, det)
    } else {
        (numer.into_iter().map(|x| x / &common).collect(), det / &common)
    };
    Ok(ResistanceOracle { nodes, index, table: Table::from_big(numer), denom })
}

pub fn kirchhoff_index(net: &ResistorNetwork) -> Result<Rational, KirchhoffError> {
    Ok(resistance_oracle(net)?.kirchhoff_index())
}

pub fn transmission(net: &ResistorNetwork, x: &Node) -> Result<Rational, KirchhoffError> {
    resistance_oracle(net)?.transmission(x)
}

/// First metric-axiom violation found, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricViolation {
    Negative { u: Node, v: Node },
    NonzeroDiagonal { u: Node },
    ZeroDistance { u: Node, v: Node },
    Asymmetric { u: Node, v: Node },
    Triangle { x: Node, y: Node, z: Node },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub triples_checked: usize,
    pub violation: Option<MetricViolation>,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks nonnegativity, identity of indiscernibles, symmetry and the
/// triangle inequality `r(x,y) + r(y,z) >= r(x,z)` over all ordered triples.
pub fn metric_check(oracle: &ResistanceOracle) -> MetricReport {
    match &oracle.table {
        Table::Small(t) => check_table(&oracle.nodes, t, |a, b| a + b),
        Table::Big(t) => check_table(&oracle.nodes, t, |a, b| a + b),
    }
}

fn check_table<T: Ord + Zero + Clone>(
    nodes: &[Node],
    t: &[T],
    add: impl Fn(&T, &T) -> T,
) -> MetricReport {
    let n = nodes.len();
    let at = |i: usize, j: usize| &t[i * n + j];
    let done = |violation| MetricReport { triples_checked: 0, violation: Some(violation) };
    for i in 0..n {
        if !at(i, i).is_zero() {
            return done(MetricViolation::NonzeroDiagonal { u: nodes[i] });
        }
        for j in 0..n {
            let (u, v) = (nodes[i], nodes[j]);
            if *at(i, j) < T::zero() {
                return done(MetricViolation::Negative { u, v });
            }
            if i != j && at(i, j).is_zero() {
                return done(MetricViolation::ZeroDistance { u, v });
            }
            if at(i, j) != at(j, i) {
                return done(MetricViolation::Asymmetric { u, v });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = at(x, y);
            for z in 0..n {
                if add(xy, at(y, z)) < *at(x, z) {
                    return MetricReport {
                        triples_checked: x * n * n + y * n + z + 1,
                        violation: Some(MetricViolation::Triangle {
                            x: nodes[x],
                            y: nodes[y],
                            z: nodes[z],
                        }),
                    };
                }
            }
        }
    }
    MetricReport { triples_checked: n * n * n, violation: None }
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

trait ExactInt: Clone + Sized {
    fn int_zero() -> Self;
    fn int_one() -> Self;
    fn int_is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
}

macro_rules! machine_int {
    ($t:ty) => {
        impl ExactInt for $t {
            fn int_zero() -> Self {
                0
            }
            fn int_one() -> Self {
                1
            }
            fn int_is_zero(&self) -> bool {
                *self == 0
            }
            fn mul(&self, o: &Self) -> Option<Self> {
                self.checked_mul(*o)
            }
            fn sub(&self, o: &Self) -> Option<Self> {
                self.checked_sub(*o)
            }
            fn div_exact(&self, o: &Self) -> Self {
                self / o
            }
        }
    };
}

machine_int!(i64);
machine_int!(i128);

impl ExactInt for BigInt {
    fn int_zero() -> Self {
        Zero::zero()
    }
    fn int_one() -> Self {
        One::one()
    }
    fn int_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

enum Adjugate {
    I64(Vec<i64>),
    I128(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Adjugate {
    fn get(&self, k: usize) -> BigInt {
        match self {
            Adjugate::I64(a) => BigInt::from(a[k]),
            Adjugate::I128(a) => BigInt::from(a[k]),
            Adjugate::Big(a) => a[k].clone(),
        }
    }
}

enum Outcome<T> {
    Done(Vec<T>, T),
    Singular,
    Overflow,
}

/// Adjugate and determinant of a symmetric positive definite integer matrix,
/// or `None` when it is singular.
fn adjugate_any(matrix: &[BigInt], m: usize) -> Option<(Adjugate, BigInt)> {
    if m == 0 {
        return Some((Adjugate::Big(Vec::new()), BigInt::one()));
    }
    if let Some(small) = matrix.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<i64>>>() {
        match adjugate(small, m) {
            Outcome::Done(a, d) => return Some((Adjugate::I64(a), BigInt::from(d))),
            Outcome::Singular => return None,
            Outcome::Overflow => {}
        }
    }
    if let Some(wide) = matrix.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<i128>>>() {
        match adjugate(wide, m) {
            Outcome::Done(a, d) => return Some((Adjugate::I128(a), BigInt::from(d))),
            Outcome::Singular => return None,
            Outcome::Overflow => {}
        }
    }
    match adjugate(matrix.to_vec(), m) {
        Outcome::Done(a, d) => Some((Adjugate::Big(a), d)),
        _ => None,
    }
}

/// Fraction-free Gauss–Jordan on `[M | I]` without pivoting (every leading
/// principal minor of a positive definite matrix is nonzero). On completion
/// the left block is `det · I` and the right block is `adj(M)`.
fn adjugate<T: ExactInt>(matrix: Vec<T>, m: usize) -> Outcome<T> {
    let w = 2 * m;
    let mut aug = vec![T::int_zero(); m * w];
    for i in 0..m {
        aug[i * w..i * w + m].clone_from_slice(&matrix[i * m..(i + 1) * m]);
        aug[i * w + m + i] = T::int_one();
    }
    let mut prev = T::int_one();
    for k in 0..m {
        let pivot = aug[k * w + k].clone();
        if pivot.int_is_zero() {
            return Outcome::Singular;
        }
        let (head, rest) = aug.split_at_mut(k * w);
        let (pivot_row, tail) = rest.split_at_mut(w);
        for (i, row) in head.chunks_mut(w).chain(tail.chunks_mut(w)).enumerate() {
            let i = if i < k { i } else { i + 1 };
            let factor = row[k].clone();
            for j in k + 1..w {
                if row[j].int_is_zero() && pivot_row[j].int_is_zero() {
                    continue;
                }
                let a = match pivot.mul(&row[j]) {
                    Some(a) => a,
                    None => return Outcome::Overflow,
                };
                let b = match factor.mul(&pivot_row[j]) {
                    Some(b) => b,
                    None => return Outcome::Overflow,
                };
                row[j] = match a.sub(&b) {
                    Some(d) => d.div_exact(&prev),
                    None => return Outcome::Overflow,
                };
            }
            row[k] = T::int_zero();
            if i < k {
                row[i] = pivot.clone();
            }
        }
        prev = pivot;
    }
    let adj = aug
        .chunks(w)
        .flat_map(|row| row[m..].iter().cloned())
        .collect();
    Outcome::Done(adj, prev)
}
