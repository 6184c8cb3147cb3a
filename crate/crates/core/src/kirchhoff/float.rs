//! `f64` resistance table for networks too large for exact elimination.
//!
//! Comparisons on these values need a relative tolerance; exact mode is the
//! one to use whenever two encodings may be close.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::KirchhoffError;
use crate::circuit::{Node, ResistorNetwork};
use crate::number::to_f64;

#[derive(Debug, Clone, PartialEq)]
pub struct FloatOracle {
    nodes: Vec<Node>,
    index: BTreeMap<Node, usize>,
    table: Vec<f64>,
}

impl FloatOracle {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn resistance(&self, u: &Node, v: &Node) -> Result<f64, KirchhoffError> {
        let n = self.nodes.len();
        Ok(self.table[self.index_of(u)? * n + self.index_of(v)?])
    }

    pub fn transmission(&self, x: &Node) -> Result<f64, KirchhoffError> {
        let n = self.nodes.len();
        let i = self.index_of(x)?;
        Ok(self.table[i * n..(i + 1) * n].iter().sum())
    }

    pub fn kirchhoff_index(&self) -> f64 {
        self.table.iter().sum::<f64>() / 2.0
    }

    fn index_of(&self, node: &Node) -> Result<usize, KirchhoffError> {
        self.index
            .get(node)
            .copied()
            .ok_or_else(|| KirchhoffError::VertexNotFound(alloc::string::ToString::to_string(node)))
    }
}

/// Grounds the least node and inverts the reduced Laplacian with partial pivoting.
pub fn float_resistance_oracle(net: &ResistorNetwork) -> Result<FloatOracle, KirchhoffError> {
    let nodes: Vec<Node> = net.nodes().iter().copied().collect();
    if nodes.is_empty() {
        return Err(KirchhoffError::EmptyNetwork);
    }
    if !net.is_connected() {
        return Err(KirchhoffError::DisconnectedNetwork);
    }
    let index: BTreeMap<Node, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = nodes.len();
    let m = n - 1;
    // Ground is node 0; reduced index = index - 1.
    let mut a = vec![0.0f64; m * m];
    for e in net.resistors() {
        let c = to_f64(&e.weight.conductance());
        let (i, j) = (index[&e.a], index[&e.b]);
        if i > 0 {
            a[(i - 1) * m + (i - 1)] += c;
        }
        if j > 0 {
            a[(j - 1) * m + (j - 1)] += c;
        }
        if i > 0 && j > 0 {
            a[(i - 1) * m + (j - 1)] -= c;
            a[(j - 1) * m + (i - 1)] -= c;
        }
    }
    let inv = invert(a, m).ok_or(KirchhoffError::DisconnectedNetwork)?;
    let g = |i: usize, j: usize| if i == 0 || j == 0 { 0.0 } else { inv[(i - 1) * m + (j - 1)] };
    let mut table = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let r = g(i, i) + g(j, j) - 2.0 * g(i, j);
            table[i * n + j] = r;
            table[j * n + i] = r;
        }
    }
    Ok(FloatOracle { nodes, index, table })
}

pub fn float_kirchhoff_index(net: &ResistorNetwork) -> Result<f64, KirchhoffError> {
    Ok(float_resistance_oracle(net)?.kirchhoff_index())
}

fn invert(mut a: Vec<f64>, m: usize) -> Option<Vec<f64>> {
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    for k in 0..m {
        let p = (k..m).max_by(|&x, &y| a[x * m + k].abs().total_cmp(&a[y * m + k].abs()))?;
        if a[p * m + k] == 0.0 {
            return None;
        }
        if p != k {
            for j in 0..m {
                a.swap(p * m + j, k * m + j);
                inv.swap(p * m + j, k * m + j);
            }
        }
        let d = a[k * m + k];
        for j in 0..m {
            a[k * m + j] /= d;
            inv[k * m + j] /= d;
        }
        for i in 0..m {
            if i == k {
                continue;
            }
            let f = a[i * m + k];
            if f == 0.0 {
                continue;
            }
            for j in 0..m {
                a[i * m + j] -= f * a[k * m + j];
                inv[i * m + j] -= f * inv[k * m + j];
            }
        }
    }
    Some(inv)
}
