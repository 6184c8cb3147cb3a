//! Small adjacency-list utilities: BFS and a brute-force isomorphism test.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub fn bfs_distances(adjacency: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.len()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap_or(0);
        for &v in &adjacency[u] {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn is_connected(adjacency: &[Vec<usize>]) -> bool {
    adjacency.is_empty() || bfs_distances(adjacency, 0).iter().all(Option::is_some)
}

/// Exhaustive isomorphism test for simple graphs.
///
/// Vertices of `a` are matched in BFS order so that every vertex after the
/// first in a component has an already-mapped neighbour; candidates are then
/// restricted to the image's neighbourhood. Fine for the few dozen vertices
/// of a chain, exponential in general.
pub fn are_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let edges = |g: &[Vec<usize>]| g.iter().map(Vec::len).sum::<usize>();
    if edges(a) != edges(b) {
        return false;
    }
    let mut deg_a: Vec<usize> = a.iter().map(Vec::len).collect();
    let mut deg_b: Vec<usize> = b.iter().map(Vec::len).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    if n == 0 {
        return true;
    }

    let matrix = |g: &[Vec<usize>]| {
        let mut m = vec![false; n * n];
        for (u, nb) in g.iter().enumerate() {
            for &v in nb {
                m[u * n + v] = true;
            }
        }
        m
    };
    let (ma, mb) = (matrix(a), matrix(b));

    // BFS order over every component of `a`, remembering a mapped parent.
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in &a[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    order.push(v);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let ctx = Search { a, b, ma: &ma, mb: &mb, order: &order, parent: &parent, n };
    ctx.extend(0, &mut map, &mut used)
}

struct Search<'a> {
    a: &'a [Vec<usize>],
    b: &'a [Vec<usize>],
    ma: &'a [bool],
    mb: &'a [bool],
    order: &'a [usize],
    parent: &'a [Option<usize>],
    n: usize,
}

impl Search<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.n {
            return true;
        }
        let u = self.order[depth];
        let candidates: Vec<usize> = match self.parent[u] {
            Some(p) => self.b[map[p]].clone(),
            None => (0..self.n).collect(),
        };
        for c in candidates {
            if used[c] || self.b[c].len() != self.a[u].len() {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&prev| {
                self.ma[u * self.n + prev] == self.mb[c * self.n + map[prev]]
            });
            if !consistent {
                continue;
            }
            map[u] = c;
            used[c] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            used[c] = false;
            map[u] = usize::MAX;
        }
        false
    }
}
