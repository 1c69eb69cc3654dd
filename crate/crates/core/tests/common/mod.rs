//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use zarank::{BipartiteGraph, LayeredGraph};

/// Adjacency matrix `adj[v][w]`.
pub type Matrix = Vec<Vec<bool>>;

pub fn random_matrix<R: Rng>(rng: &mut R, n_left: usize, n_right: usize, density: f64) -> Matrix {
    (0..n_left)
        .map(|_| (0..n_right).map(|_| rng.gen::<f64>() < density).collect())
        .collect()
}

pub fn to_graph(adj: &Matrix, n_right: usize) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(v, row)| row.iter().enumerate().filter(|(_, &e)| e).map(move |(w, _)| (v, w)))
        .collect();
    BipartiteGraph::from_edges(adj.len(), n_right, &edges).unwrap()
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Naive `C(n_left,k)·C(n_right,k)` enumeration.
pub fn naive_kxk(adj: &Matrix, n_right: usize, k: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let lefts = subsets(adj.len(), k);
    let rights = subsets(n_right, k);
    for s in &lefts {
        for t in &rights {
            if s.iter().all(|&v| t.iter().all(|&w| !adj[v][w])) {
                return Some((s.clone(), t.clone()));
            }
        }
    }
    None
}

/// Whether the simple graph on `n` vertices has an independent `k`-set.
pub fn naive_general_independent(adj: &Matrix, k: usize) -> bool {
    subsets(adj.len(), k)
        .iter()
        .any(|s| s.iter().all(|&u| s.iter().all(|&v| u == v || !adj[u][v])))
}

/// `C(n, k)` exactly.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Every subset `A ⊆ mids` has at least `|A|` neighbours in `side` (Hall).
fn hall(mids: &[usize], nbrs: &dyn Fn(usize) -> u64, side: u64) -> bool {
    let r = mids.len();
    (1u32..(1 << r)).all(|mask| {
        let mut union = 0u64;
        for (i, &x) in mids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                union |= nbrs(x);
            }
        }
        (union & side).count_ones() >= mask.count_ones()
    })
}

/// Maximum vertex-disjoint `S → M → T` paths: the largest `M' ⊆ M` that can be
/// matched into `S` and, independently, into `T`.
pub fn brute_disjoint_paths(g: &LayeredGraph, s: &[usize], t: &[usize]) -> usize {
    assert!(g.m() <= 12 && g.n() <= 64);
    let s_mask: u64 = s.iter().map(|&v| 1u64 << v).sum();
    let t_mask: u64 = t.iter().map(|&w| 1u64 << w).sum();
    let inn = |x: usize| g.in_neighbors(x).iter().map(|v| 1u64 << v).sum::<u64>();
    let out = |x: usize| g.out_neighbors(x).iter().map(|w| 1u64 << w).sum::<u64>();
    let mut best = 0;
    for mask in 0u32..(1 << g.m()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mids: Vec<usize> = (0..g.m()).filter(|&x| mask >> x & 1 == 1).collect();
        if hall(&mids, &inn, s_mask) && hall(&mids, &out, t_mask) {
            best = size;
        }
    }
    best
}

pub fn random_layered<R: Rng>(rng: &mut R, n: usize, m: usize, density: f64) -> LayeredGraph {
    let mut g = LayeredGraph::empty(n, m);
    for x in 0..m {
        for v in 0..n {
            if rng.gen::<f64>() < density {
                g.add_vm(v, x);
            }
            if rng.gen::<f64>() < density {
                g.add_mw(x, v);
            }
        }
    }
    g
}
