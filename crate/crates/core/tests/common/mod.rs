//! Random instances shared by the integration targets.

#![allow(dead_code)]

use kch_core::circuit::{Node, ResistorNetwork, Weight};
use kch_core::isomer::IsomerCut;
use rand::seq::SliceRandom;
use rand::Rng;

/// Hamiltonian cycle on `offset..offset + n` plus random chords; 2-connected
/// for `n >= 3`, a single edge for `n == 2`.
pub fn two_connected(rng: &mut impl Rng, offset: usize, n: usize, chords: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    if n == 2 {
        edges.push((offset, offset + 1));
        return edges;
    }
    for i in 0..n {
        let (a, b) = (i, (i + 1) % n);
        edges.push((offset + a.min(b), offset + a.max(b)));
    }
    for _ in 0..chords {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (offset + a.min(b), offset + a.max(b));
        if a != b && !edges.contains(&e) {
            edges.push(e);
        }
    }
    edges
}

pub fn unit_network(edges: &[(usize, usize)]) -> ResistorNetwork {
    ResistorNetwork::from_resistors(edges.iter().map(|&(a, b)| (Node::Aux(a), Node::Aux(b), Weight::one()))).unwrap()
}

/// Connected network on up to `max_nodes` nodes with random small rational weights.
pub fn weighted_network(rng: &mut impl Rng, max_nodes: usize) -> ResistorNetwork {
    let n = rng.gen_range(2..=max_nodes);
    let mut net = ResistorNetwork::new();
    let weight = |rng: &mut _| Weight::ratio(Rng::gen_range(rng, 1..=6), Rng::gen_range(rng, 1..=4));
    // Random spanning tree, then extra edges (parallel ones allowed).
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        let w = weight(rng);
        net.add_resistor(Node::Aux(parent), Node::Aux(i), w).unwrap();
    }
    for _ in 0..rng.gen_range(0..=2 * n) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let w = weight(rng);
            net.add_resistor(Node::Aux(a), Node::Aux(b), w).unwrap();
        }
    }
    net
}

/// Two 2-connected blocks joined by two disjoint unit edges, at most
/// `max_nodes` nodes in total, with the joining cut.
pub fn random_cut(rng: &mut impl Rng, max_nodes: usize) -> (ResistorNetwork, IsomerCut) {
    let a_size = rng.gen_range(2..=max_nodes - 2);
    let b_size = rng.gen_range(2..=max_nodes - a_size);
    let (a_chords, b_chords) = (rng.gen_range(0..=a_size), rng.gen_range(0..=b_size));
    let mut edges = two_connected(rng, 0, a_size, a_chords);
    edges.extend(two_connected(rng, a_size, b_size, b_chords));
    let a_nodes: Vec<usize> = (0..a_size).collect();
    let b_nodes: Vec<usize> = (a_size..a_size + b_size).collect();
    let uv: Vec<usize> = a_nodes.choose_multiple(rng, 2).copied().collect();
    let xy: Vec<usize> = b_nodes.choose_multiple(rng, 2).copied().collect();
    edges.push((uv[0], xy[0]));
    edges.push((uv[1], xy[1]));
    let net = unit_network(&edges);
    let cut = IsomerCut::new(&net, Node::Aux(uv[0]), Node::Aux(uv[1]), Node::Aux(xy[0]), Node::Aux(xy[1])).unwrap();
    (net, cut)
}
