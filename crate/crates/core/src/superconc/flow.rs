//! Unit-capacity maximum flow (Dinic).

use std::collections::VecDeque;

use crate::graph::LayeredGraph;

#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        let mut f = FlowNetwork::default();
        f.reset(nodes);
        f
    }

    /// Clears all arcs, keeping allocations.
    pub fn reset(&mut self, nodes: usize) {
        self.head.iter_mut().for_each(Vec::clear);
        self.head.resize_with(nodes, Vec::new);
        self.to.clear();
        self.cap.clear();
    }

    pub fn add_arc(&mut self, u: usize, v: usize, cap: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        let nodes = self.head.len();
        let mut flow = 0;
        loop {
            self.level.clear();
            self.level.resize(nodes, -1);
            self.level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && self.level[v] < 0 {
                        self.level[v] = self.level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if self.level[t] < 0 {
                return flow;
            }
            self.cursor.clear();
            self.cursor.resize(nodes, 0);
            loop {
                let pushed = self.augment(s, t, u32::MAX);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    fn augment(&mut self, u: usize, t: usize, limit: u32) -> u32 {
        if u == t {
            return limit;
        }
        while self.cursor[u] < self.head[u].len() {
            let e = self.head[u][self.cursor[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let pushed = self.augment(v, t, limit.min(self.cap[e]));
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }
}

/// Maximum number of vertex-disjoint `S → M → T` paths.
///
/// Nodes: source, `S`, `M_in`, `M_out`, `T`, sink; every vertex has capacity 1.
pub fn max_disjoint_paths(g: &LayeredGraph, s: &[usize], t: &[usize]) -> usize {
    let mut net = FlowNetwork::default();
    disjoint_paths_with(&mut net, g, s, t)
}

/// As [`max_disjoint_paths`], reusing `net`'s allocations.
pub fn disjoint_paths_with(net: &mut FlowNetwork, g: &LayeredGraph, s: &[usize], t: &[usize]) -> usize {
    let (n, m) = (g.n(), g.m());
    let source = 0;
    let sink = 1;
    let v_node = |v: usize| 2 + v;
    let m_in = |x: usize| 2 + n + x;
    let m_out = |x: usize| 2 + n + m + x;
    let w_node = |w: usize| 2 + n + 2 * m + w;
    net.reset(2 + 2 * n + 2 * m);
    let mut in_t = vec![false; n];
    for &w in t {
        in_t[w] = true;
        net.add_arc(w_node(w), sink, 1);
    }
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
        net.add_arc(source, v_node(v), 1);
    }
    for x in 0..m {
        let from: Vec<usize> = g.in_neighbors(x).iter().filter(|&v| in_s[v]).collect();
        if from.is_empty() {
            continue;
        }
        let to: Vec<usize> = g.out_neighbors(x).iter().filter(|&w| in_t[w]).collect();
        if to.is_empty() {
            continue;
        }
        net.add_arc(m_in(x), m_out(x), 1);
        for v in from {
            net.add_arc(v_node(v), m_in(x), 1);
        }
        for w in to {
            net.add_arc(m_out(x), w_node(w), 1);
        }
    }
    net.max_flow(source, sink) as usize
}
