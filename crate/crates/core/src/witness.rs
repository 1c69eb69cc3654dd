//! Detection of `k×k` bipartite independent sets.
//!
//! The branch-and-bound search is complete: within its node budget it either
//! returns a witness or proves none exists. Running out of budget yields an
//! incomplete result, never a false "absent".

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, SimpleGraph};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const DEFAULT_GENERAL_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    BranchBound,
    Counting,
    Randomized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessConfig {
    /// Maximum search nodes (branch-and-bound) or pairs (exhaustive).
    pub node_budget: u64,
    pub method: Method,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            method: Method::BranchBound,
        }
    }
}

impl WitnessConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        WitnessConfig {
            node_budget,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Found,
    Absent,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub found: bool,
    /// False when the search stopped on its budget; `found = false` is then "unknown".
    pub complete: bool,
    /// Left side of the witness, ascending.
    pub s: Vec<usize>,
    /// Right side of the witness, ascending.
    pub t: Vec<usize>,
    pub method: Method,
    pub nodes_explored: u64,
}

impl WitnessResult {
    pub fn verdict(&self) -> Verdict {
        match (self.found, self.complete) {
            (true, _) => Verdict::Found,
            (false, true) => Verdict::Absent,
            (false, false) => Verdict::Unknown,
        }
    }

    fn absent(method: Method, nodes: u64) -> Self {
        WitnessResult {
            found: false,
            complete: true,
            s: Vec::new(),
            t: Vec::new(),
            method,
            nodes_explored: nodes,
        }
    }
}

/// Searches the whole graph. Requires `1 ≤ k ≤ min(n_left, n_right)`.
pub fn has_kxk_independent_set(g: &BipartiteGraph, k: usize, config: &WitnessConfig) -> Result<WitnessResult> {
    if k == 0 || k > g.n_left().min(g.n_right()) {
        return Err(Error::param(format!(
            "k={k} must lie in [1, {}]",
            g.n_left().min(g.n_right())
        )));
    }
    let left = Bitset::full(g.n_left());
    let right = Bitset::full(g.n_right());
    has_kxk_independent_set_within(g, k, &left, &right, config)
}

/// Searches for `S ⊆ left_allowed`, `T ⊆ right_allowed`; too-small masks give "absent".
pub fn has_kxk_independent_set_within(
    g: &BipartiteGraph,
    k: usize,
    left_allowed: &Bitset,
    right_allowed: &Bitset,
    config: &WitnessConfig,
) -> Result<WitnessResult> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    if left_allowed.universe() != g.n_left() || right_allowed.universe() != g.n_right() {
        return Err(Error::param("allowed-vertex masks do not match the graph"));
    }
    if left_allowed.count() < k || right_allowed.count() < k {
        return Ok(WitnessResult::absent(config.method, 0));
    }
    let result = match config.method {
        Method::Exhaustive => exhaustive(g, k, left_allowed, right_allowed, config.node_budget),
        _ => branch_and_bound(g, k, left_allowed, right_allowed, config.node_budget),
    };
    if result.found {
        assert!(
            result.s.len() == k && result.t.len() == k && g.is_independent(&result.s, &result.t),
            "search returned an invalid witness"
        );
    }
    Ok(result)
}

fn branch_and_bound(
    g: &BipartiteGraph,
    k: usize,
    left_allowed: &Bitset,
    right_allowed: &Bitset,
    budget: u64,
) -> WitnessResult {
    // Branch over the side with the smaller average degree; tie goes right.
    let edges = g.edges_between(left_allowed, right_allowed) as f64;
    let avg_left = edges / left_allowed.count() as f64;
    let avg_right = edges / right_allowed.count() as f64;
    if avg_left < avg_right {
        let t = g.transpose();
        let mut r = RightSearch::new(&t, k, right_allowed, left_allowed, budget).run();
        std::mem::swap(&mut r.s, &mut r.t);
        r
    } else {
        RightSearch::new(g, k, left_allowed, right_allowed, budget).run()
    }
}

/// Picks `T` on the right side, keeping `N = ∩_{w∈T} nonneighbors(w)`.
struct RightSearch {
    k: usize,
    budget: u64,
    nodes: u64,
    aborted: bool,
    /// Allowed non-neighbours on the left of each right vertex.
    nonnbr: Vec<Bitset>,
    left_allowed: Bitset,
    order: Vec<usize>,
    chosen: Vec<usize>,
    witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl RightSearch {
    fn new(g: &BipartiteGraph, k: usize, left_allowed: &Bitset, right_allowed: &Bitset, budget: u64) -> Self {
        let mut nonnbr = vec![left_allowed.clone(); g.n_right()];
        for v in left_allowed.iter() {
            for w in g.neighbors(v).iter() {
                nonnbr[w].remove(v);
            }
        }
        let mut order: Vec<usize> = right_allowed.iter().collect();
        // ascending degree = descending non-degree; ties by index
        order.sort_by_key(|&w| (std::cmp::Reverse(nonnbr[w].count()), w));
        RightSearch {
            k,
            budget,
            nodes: 0,
            aborted: false,
            nonnbr,
            left_allowed: left_allowed.clone(),
            order,
            chosen: Vec::with_capacity(k),
            witness: None,
        }
    }

    fn run(mut self) -> WitnessResult {
        let k = self.k;
        let cands: Vec<usize> = self
            .order
            .iter()
            .copied()
            .filter(|&w| self.nonnbr[w].count() >= k)
            .collect();
        let common = self.left_allowed.clone();
        if cands.len() >= k {
            self.descend(&cands, &common);
        } else {
            self.nodes = 1;
        }
        match self.witness {
            Some((mut s, mut t)) => {
                s.sort_unstable();
                t.sort_unstable();
                WitnessResult {
                    found: true,
                    complete: true,
                    s,
                    t,
                    method: Method::BranchBound,
                    nodes_explored: self.nodes,
                }
            }
            None => WitnessResult {
                found: false,
                complete: !self.aborted,
                s: Vec::new(),
                t: Vec::new(),
                method: Method::BranchBound,
                nodes_explored: self.nodes,
            },
        }
    }

    /// Every candidate already has at least `k` common non-neighbours with `chosen`.
    fn descend(&mut self, cands: &[usize], common: &Bitset) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return false;
        }
        let need = self.k - self.chosen.len();
        for (idx, &w) in cands.iter().enumerate() {
            if cands.len() - idx < need {
                break;
            }
            let next_common = common.intersection(&self.nonnbr[w]);
            if need == 1 {
                self.chosen.push(w);
                self.witness = Some((next_common.first_n(self.k), self.chosen.clone()));
                return true;
            }
            let next: Vec<usize> = cands[idx + 1..]
                .iter()
                .copied()
                .filter(|&x| next_common.intersection_count(&self.nonnbr[x]) >= self.k)
                .collect();
            if next.len() >= need - 1 {
                self.chosen.push(w);
                if self.descend(&next, &next_common) {
                    return true;
                }
                self.chosen.pop();
                if self.aborted {
                    return false;
                }
            }
        }
        false
    }
}

/// All `k`-subset pairs in lexicographic order; the budget counts pairs.
fn exhaustive(g: &BipartiteGraph, k: usize, left_allowed: &Bitset, right_allowed: &Bitset, budget: u64) -> WitnessResult {
    let left: Vec<usize> = left_allowed.iter().collect();
    let right: Vec<usize> = right_allowed.iter().collect();
    let mut nodes = 0u64;
    let mut s_idx: Vec<usize> = (0..k).collect();
    loop {
        let s: Vec<usize> = s_idx.iter().map(|&i| left[i]).collect();
        let mut blocked = Bitset::new(g.n_right());
        for &v in &s {
            blocked.union_with(g.neighbors(v));
        }
        let mut t_idx: Vec<usize> = (0..k).collect();
        loop {
            nodes += 1;
            if nodes > budget {
                return WitnessResult {
                    found: false,
                    complete: false,
                    s: Vec::new(),
                    t: Vec::new(),
                    method: Method::Exhaustive,
                    nodes_explored: nodes,
                };
            }
            if t_idx.iter().all(|&j| !blocked.contains(right[j])) {
                return WitnessResult {
                    found: true,
                    complete: true,
                    s,
                    t: t_idx.iter().map(|&j| right[j]).collect(),
                    method: Method::Exhaustive,
                    nodes_explored: nodes,
                };
            }
            if !next_combination(&mut t_idx, right.len()) {
                break;
            }
        }
        if !next_combination(&mut s_idx, left.len()) {
            return WitnessResult::absent(Method::Exhaustive, nodes);
        }
    }
}

/// Advances `idx` to the next `idx.len()`-combination of `0..n` in lexicographic order.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Pigeonhole refuter: if `Σ_v C(n - deg v, k) > (k-1)·C(n, k)`, some `k`-subset
/// of the right side has `k` common non-neighbours.
///
/// The subset is found by the method of conditional expectations, with exact
/// integer scores. `None` means inconclusive, never absence.
pub fn counting_refuter(g: &BipartiteGraph, k: usize) -> Option<WitnessResult> {
    let n_right = g.n_right();
    if k == 0 || k > n_right || k > g.n_left() {
        return None;
    }
    let nonnbr: Vec<Bitset> = g.rows().iter().map(Bitset::complement).collect();
    let total: BigUint = nonnbr.iter().map(|s| binomial(s.count(), k)).sum();
    let threshold = BigUint::from(k - 1) * binomial(n_right, k);
    if total <= threshold {
        return None;
    }

    // live = left vertices whose non-neighbourhood contains every chosen w
    let mut live: Vec<usize> = (0..g.n_left()).collect();
    let mut chosen = Bitset::new(n_right);
    let mut t = Vec::with_capacity(k);
    let mut steps = 0u64;
    for j in 0..k {
        let weights: Vec<BigUint> = live
            .iter()
            .map(|&v| binomial(nonnbr[v].count() - j - 1, k - j - 1))
            .collect();
        let mut best: Option<(usize, BigUint)> = None;
        for w in 0..n_right {
            if chosen.contains(w) {
                continue;
            }
            steps += 1;
            let score: BigUint = live
                .iter()
                .zip(&weights)
                .filter(|(&v, _)| nonnbr[v].contains(w))
                .map(|(_, b)| b)
                .sum();
            if best.as_ref().is_none_or(|(_, s)| score > *s) {
                best = Some((w, score));
            }
        }
        let (w, _) = best?;
        chosen.insert(w);
        t.push(w);
        live.retain(|&v| nonnbr[v].contains(w));
    }
    if live.len() < k {
        return None;
    }
    let s: Vec<usize> = live[..k].to_vec();
    t.sort_unstable();
    if !g.is_independent(&s, &t) {
        return None;
    }
    Some(WitnessResult {
        found: true,
        complete: true,
        s,
        t,
        method: Method::Counting,
        nodes_explored: steps,
    })
}

/// Complete search for an independent set of size `k` in a simple graph.
pub fn general_graph_has_independent_set(g: &SimpleGraph, k: usize, limit: usize) -> Result<Option<Vec<usize>>> {
    if g.n() > limit {
        return Err(Error::param(format!(
            "general-graph search limited to n <= {limit}, got n={}",
            g.n()
        )));
    }
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let nonnbr: Vec<Bitset> = (0..g.n())
        .map(|u| {
            let mut s = g.neighbors(u).complement();
            s.remove(u);
            s
        })
        .collect();
    let mut chosen = Vec::with_capacity(k);
    let found = independent_rec(&nonnbr, k, &Bitset::full(g.n()), &mut chosen);
    Ok(found.then_some(chosen))
}

fn independent_rec(nonnbr: &[Bitset], k: usize, cands: &Bitset, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    if chosen.len() + cands.count() < k {
        return false;
    }
    let mut rest = cands.clone();
    for u in cands.iter() {
        rest.remove(u);
        let next = rest.intersection(&nonnbr[u]);
        chosen.push(u);
        if independent_rec(nonnbr, k, &next, chosen) {
            return true;
        }
        chosen.pop();
        if chosen.len() + rest.count() < k {
            break;
        }
    }
    false
}
