//! Bipartite and layered graphs, bicliques and biclique families.
//!
//! Vertices are dense indices `0..n` on each side. Every set is a [`Bitset`];
//! biclique edges are never materialized per edge.

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Middle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    pub side: Side,
    pub members: Bitset,
}

impl VertexSet {
    pub fn empty(side: Side, n: usize) -> Self {
        VertexSet {
            side,
            members: Bitset::new(n),
        }
    }

    pub fn from_indices<I>(side: Side, n: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let members = Bitset::from_indices(n, indices).map_err(|index| Error::IndexOutOfRange {
            context: format!("{side:?} vertex set"),
            index,
            bound: n,
        })?;
        Ok(VertexSet { side, members })
    }

    pub fn cardinality(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }
}

/// `left × right`, a complete bipartite subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Biclique {
    pub fn new(n: usize, left: &[usize], right: &[usize]) -> Result<Self> {
        Ok(Biclique {
            left: VertexSet::from_indices(Side::Left, n, left.iter().copied())?,
            right: VertexSet::from_indices(Side::Right, n, right.iter().copied())?,
        })
    }

    /// Side sizes `(|V_i|, |W_i|)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.left.cardinality(), self.right.cardinality())
    }

    /// A biclique with an empty side contributes no edges.
    pub fn is_empty(&self) -> bool {
        self.left.members.is_empty() || self.right.members.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueFamily {
    n: usize,
    k: usize,
    bicliques: Vec<Biclique>,
}

impl BicliqueFamily {
    pub fn new(n: usize, k: usize, bicliques: Vec<Biclique>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::param(format!("k must satisfy 1 <= k <= n, got k={k}, n={n}")));
        }
        for (i, b) in bicliques.iter().enumerate() {
            if b.left.members.universe() != n || b.right.members.universe() != n {
                return Err(Error::param(format!(
                    "biclique {i} is defined over a ground set different from n={n}"
                )));
            }
        }
        Ok(BicliqueFamily { n, k, bicliques })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bicliques(&self) -> &[Biclique] {
        &self.bicliques
    }

    pub fn len(&self) -> usize {
        self.bicliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bicliques.is_empty()
    }

    pub fn sizes(&self) -> Vec<(usize, usize)> {
        self.bicliques.iter().map(Biclique::dims).collect()
    }

    /// Same family with a different target `k`.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        BicliqueFamily::new(self.n, k, self.bicliques.clone())
    }

    pub fn push(&mut self, biclique: Biclique) -> Result<()> {
        if biclique.left.members.universe() != self.n || biclique.right.members.universe() != self.n {
            return Err(Error::param("biclique ground set does not match family n"));
        }
        self.bicliques.push(biclique);
        Ok(())
    }

    /// Indices of bicliques with an empty side.
    pub fn lint_empty(&self) -> Vec<usize> {
        self.bicliques
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_empty())
            .map(|(i, _)| i)
            .collect()
    }

    /// The subfamily at the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> BicliqueFamily {
        BicliqueFamily {
            n: self.n,
            k: self.k,
            bicliques: indices.iter().map(|&i| self.bicliques[i].clone()).collect(),
        }
    }
}

/// Dense bipartite graph stored as one right-neighbourhood bitset per left vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    adj: Vec<Bitset>,
}

impl BipartiteGraph {
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        BipartiteGraph {
            n_left,
            n_right,
            adj: vec![Bitset::new(n_right); n_left],
        }
    }

    pub fn complete(n_left: usize, n_right: usize) -> Self {
        BipartiteGraph {
            n_left,
            n_right,
            adj: vec![Bitset::full(n_right); n_left],
        }
    }

    pub fn from_edges(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = BipartiteGraph::empty(n_left, n_right);
        for (i, &(v, w)) in edges.iter().enumerate() {
            if v >= n_left {
                return Err(Error::IndexOutOfRange {
                    context: format!("edge {i} left endpoint"),
                    index: v,
                    bound: n_left,
                });
            }
            if w >= n_right {
                return Err(Error::IndexOutOfRange {
                    context: format!("edge {i} right endpoint"),
                    index: w,
                    bound: n_right,
                });
            }
            g.add_edge(v, w);
        }
        Ok(g)
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn add_edge(&mut self, v: usize, w: usize) {
        self.adj[v].insert(w);
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.adj[v].contains(w)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn rows(&self) -> &[Bitset] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(v, row)| row.iter().map(move |w| (v, w)))
            .collect()
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Bitset::count).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_right];
        for row in &self.adj {
            for w in row.iter() {
                deg[w] += 1;
            }
        }
        deg
    }

    /// Adds every edge of `left × right`.
    pub fn add_biclique(&mut self, b: &Biclique) {
        if b.right.members.is_empty() {
            return;
        }
        for v in b.left.members.iter() {
            self.adj[v].union_with(&b.right.members);
        }
    }

    pub fn transpose(&self) -> BipartiteGraph {
        let mut t = BipartiteGraph::empty(self.n_right, self.n_left);
        for (v, row) in self.adj.iter().enumerate() {
            for w in row.iter() {
                t.adj[w].insert(v);
            }
        }
        t
    }

    /// True when `S × T` contains no edge.
    pub fn is_independent(&self, s: &[usize], t: &[usize]) -> bool {
        s.iter().all(|&v| t.iter().all(|&w| !self.adj[v].contains(w)))
    }

    /// Number of edges inside `left_mask × right_mask`.
    pub fn edges_between(&self, left_mask: &Bitset, right_mask: &Bitset) -> usize {
        left_mask
            .iter()
            .map(|v| self.adj[v].intersection_count(right_mask))
            .sum()
    }
}

/// Union of the bicliques of `family`: `(v,w)` is an edge iff some biclique contains it.
pub fn union_of(family: &BicliqueFamily) -> BipartiteGraph {
    let mut g = BipartiteGraph::empty(family.n(), family.n());
    for b in family.bicliques() {
        g.add_biclique(b);
    }
    g
}

/// Simple undirected graph on `n` vertices, used for Hansel-type placements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Bitset>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![Bitset::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &Bitset {
        &self.adj[u]
    }

    /// Places the complete bipartite graph between two disjoint vertex sets.
    pub fn add_biclique(&mut self, a: &Bitset, b: &Bitset) -> Result<()> {
        if !a.is_disjoint(b) {
            return Err(Error::param("biclique sides must be disjoint in a simple graph"));
        }
        for u in a.iter() {
            for v in b.iter() {
                self.add_edge(u, v);
            }
        }
        Ok(())
    }
}

/// Depth-two graph `V → M → W` with `|V| = |W| = n`, `|M| = m`.
///
/// Stored per middle vertex: `inn[x] ⊆ V` and `out[x] ⊆ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredGraph {
    n: usize,
    m: usize,
    inn: Vec<Bitset>,
    out: Vec<Bitset>,
}

impl LayeredGraph {
    pub fn empty(n: usize, m: usize) -> Self {
        LayeredGraph {
            n,
            m,
            inn: vec![Bitset::new(n); m],
            out: vec![Bitset::new(n); m],
        }
    }

    /// Every `V–M` and `M–W` edge present.
    pub fn complete(n: usize, m: usize) -> Self {
        LayeredGraph {
            n,
            m,
            inn: vec![Bitset::full(n); m],
            out: vec![Bitset::full(n); m],
        }
    }

    pub fn from_edges(
        n: usize,
        m: usize,
        edges_vm: &[(usize, usize)],
        edges_mw: &[(usize, usize)],
    ) -> Result<Self> {
        let mut g = LayeredGraph::empty(n, m);
        let check = |ctx: &str, i: usize, idx: usize, bound: usize| {
            if idx >= bound {
                Err(Error::IndexOutOfRange {
                    context: format!("{ctx} {i}"),
                    index: idx,
                    bound,
                })
            } else {
                Ok(())
            }
        };
        for (i, &(v, x)) in edges_vm.iter().enumerate() {
            check("edges_vm", i, v, n)?;
            check("edges_vm", i, x, m)?;
            g.add_vm(v, x);
        }
        for (i, &(x, w)) in edges_mw.iter().enumerate() {
            check("edges_mw", i, x, m)?;
            check("edges_mw", i, w, n)?;
            g.add_mw(x, w);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_vm(&mut self, v: usize, x: usize) -> bool {
        self.inn[x].insert(v)
    }

    pub fn add_mw(&mut self, x: usize, w: usize) -> bool {
        self.out[x].insert(w)
    }

    pub fn in_neighbors(&self, x: usize) -> &Bitset {
        &self.inn[x]
    }

    pub fn out_neighbors(&self, x: usize) -> &Bitset {
        &self.out[x]
    }

    /// `deg_V(x)`: edges from `V` into middle vertex `x`.
    pub fn in_degree(&self, x: usize) -> usize {
        self.inn[x].count()
    }

    /// `deg_W(x)`: edges from middle vertex `x` into `W`.
    pub fn out_degree(&self, x: usize) -> usize {
        self.out[x].count()
    }

    pub fn vm_edge_count(&self) -> usize {
        self.inn.iter().map(Bitset::count).sum()
    }

    pub fn mw_edge_count(&self) -> usize {
        self.out.iter().map(Bitset::count).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.vm_edge_count() + self.mw_edge_count()
    }

    pub fn edges_vm(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .inn
            .iter()
            .enumerate()
            .flat_map(|(x, s)| s.iter().map(move |v| (v, x)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn edges_mw(&self) -> Vec<(usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(x, s)| s.iter().map(move |w| (x, w)))
            .collect()
    }

    /// Middle vertices adjacent to `v ∈ V`.
    pub fn v_to_middle(&self) -> Vec<Bitset> {
        let mut adj = vec![Bitset::new(self.m); self.n];
        for (x, s) in self.inn.iter().enumerate() {
            for v in s.iter() {
                adj[v].insert(x);
            }
        }
        adj
    }

    /// Swaps the roles of `V` and `W` (reverses every path).
    pub fn reversed(&self) -> LayeredGraph {
        LayeredGraph {
            n: self.n,
            m: self.m,
            inn: self.out.clone(),
            out: self.inn.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(n: usize, k: usize, bs: &[(&[usize], &[usize])]) -> BicliqueFamily {
        let bicliques = bs.iter().map(|(l, r)| Biclique::new(n, l, r).unwrap()).collect();
        BicliqueFamily::new(n, k, bicliques).unwrap()
    }

    #[test]
    fn union_of_single_biclique() {
        let g = union_of(&family(3, 1, &[(&[0, 1], &[0, 1])]));
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(1, 0) && !g.has_edge(2, 2));
    }

    #[test]
    fn union_is_idempotent() {
        let one = union_of(&family(5, 2, &[(&[0, 3], &[1, 2, 4])]));
        let two = union_of(&family(5, 2, &[(&[0, 3], &[1, 2, 4]), (&[0, 3], &[1, 2, 4])]));
        assert_eq!(one, two);
    }

    #[test]
    fn union_of_disjoint_singletons_is_matching() {
        let g = union_of(&family(2, 1, &[(&[0], &[0]), (&[1], &[1])]));
        assert_eq!(g.edges(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn empty_family_gives_empty_graph() {
        let g = union_of(&family(4, 2, &[]));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn transpose_small_cases() {
        let e = BipartiteGraph::empty(3, 2);
        assert_eq!(e.transpose(), BipartiteGraph::empty(2, 3));
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 1)]).unwrap();
        assert_eq!(g.transpose().edges(), vec![(1, 0)]);
    }

    #[test]
    fn family_rejects_bad_k() {
        assert!(BicliqueFamily::new(4, 0, vec![]).is_err());
        assert!(BicliqueFamily::new(4, 5, vec![]).is_err());
    }

    #[test]
    fn vertex_set_rejects_out_of_range() {
        let err = Biclique::new(3, &[0, 3], &[0]).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { index: 3, bound: 3, .. }));
    }

    #[test]
    fn lint_flags_empty_bicliques() {
        let f = family(4, 2, &[(&[0], &[1]), (&[], &[2]), (&[], &[])]);
        assert_eq!(f.lint_empty(), vec![1, 2]);
    }

    #[test]
    fn layered_degrees() {
        let g = LayeredGraph::from_edges(3, 2, &[(0, 0), (1, 0), (2, 1)], &[(0, 2)]).unwrap();
        assert_eq!(g.in_degree(0), 2);
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.out_degree(1), 0);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.reversed().in_degree(0), 1);
        assert!(LayeredGraph::from_edges(3, 2, &[(0, 2)], &[]).is_err());
    }
}
