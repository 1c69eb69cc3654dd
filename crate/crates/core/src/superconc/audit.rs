//! Degree-class decomposition of the middle layer and the two edge audits.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bounds::{asymmetric_condition, asymmetric_terms_for, symmetric_condition, NormalizedProfile, SymmetricCheck};
use crate::error::{Error, Result};
use crate::graph::{Biclique, BicliqueFamily, LayeredGraph, Side, VertexSet};
use crate::math::le_tol;

/// Which middle-vertex degree the thresholds compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMeasure {
    /// `deg_V = deg_W`, required to agree.
    Balanced,
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeClass {
    High,
    Medium,
    Low,
}

/// `High: deg ≥ (n/k)·t`, `Low: deg < (n/k)/t`, `Medium` otherwise.
pub fn classify_degree(deg: usize, n: usize, k: usize, t: f64) -> DegreeClass {
    let scale = n as f64 / k as f64;
    let d = deg as f64;
    if d >= scale * t {
        DegreeClass::High
    } else if d >= scale / t {
        DegreeClass::Medium
    } else {
        DegreeClass::Low
    }
}

/// Inclusive range of degrees in `0..=n` classified Medium, if any.
pub fn medium_degree_range(n: usize, k: usize, t: f64) -> Option<(usize, usize)> {
    let mut range: Option<(usize, usize)> = None;
    for d in 0..=n {
        if classify_degree(d, n, k, t) == DegreeClass::Medium {
            range = Some(range.map_or((d, d), |(lo, _)| (lo, d)));
        }
    }
    range
}

/// One biclique `(in-neighbours, out-neighbours)` per listed middle vertex.
pub fn middle_bicliques(g: &LayeredGraph, restrict: &[usize], k: usize) -> Result<BicliqueFamily> {
    let mut bicliques = Vec::with_capacity(restrict.len());
    for &x in restrict {
        if x >= g.m() {
            return Err(Error::IndexOutOfRange {
                context: "middle vertex".into(),
                index: x,
                bound: g.m(),
            });
        }
        bicliques.push(Biclique {
            left: VertexSet {
                side: Side::Left,
                members: g.in_neighbors(x).clone(),
            },
            right: VertexSet {
                side: Side::Right,
                members: g.out_neighbors(x).clone(),
            },
        });
    }
    BicliqueFamily::new(g.n(), k, bicliques)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEdges {
    pub vm: usize,
    pub mw: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MiddleDecomposition {
    pub k: usize,
    pub threshold_base: f64,
    pub measure: DegreeMeasure,
    /// `(n/k)·t`.
    pub upper: f64,
    /// `(n/k)/t`.
    pub lower: f64,
    pub high: Vec<usize>,
    pub medium: Vec<usize>,
    pub low: Vec<usize>,
    pub high_edges: ClassEdges,
    pub medium_edges: ClassEdges,
    pub low_edges: ClassEdges,
}

impl MiddleDecomposition {
    /// `Medium ∪ Low`, ascending.
    pub fn medium_and_low(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.medium.iter().chain(&self.low).copied().collect();
        v.sort_unstable();
        v
    }
}

fn degree(g: &LayeredGraph, x: usize, measure: DegreeMeasure) -> usize {
    match measure {
        DegreeMeasure::In => g.in_degree(x),
        DegreeMeasure::Out | DegreeMeasure::Balanced => g.out_degree(x),
    }
}

pub fn decompose(g: &LayeredGraph, k: usize, threshold_base: f64, measure: DegreeMeasure) -> Result<MiddleDecomposition> {
    if k == 0 || k > g.n() {
        return Err(Error::param(format!("k={k} must lie in [1, {}]", g.n())));
    }
    if !(threshold_base.is_finite() && threshold_base > 0.0) {
        return Err(Error::param(format!("threshold base must be positive, got {threshold_base}")));
    }
    if measure == DegreeMeasure::Balanced {
        if let Some(x) = (0..g.m()).find(|&x| g.in_degree(x) != g.out_degree(x)) {
            return Err(Error::Unbalanced(format!(
                "middle vertex {x} has deg_V={} and deg_W={}",
                g.in_degree(x),
                g.out_degree(x)
            )));
        }
    }
    let n = g.n();
    let scale = n as f64 / k as f64;
    let mut d = MiddleDecomposition {
        k,
        threshold_base,
        measure,
        upper: scale * threshold_base,
        lower: scale / threshold_base,
        high: Vec::new(),
        medium: Vec::new(),
        low: Vec::new(),
        high_edges: ClassEdges::default(),
        medium_edges: ClassEdges::default(),
        low_edges: ClassEdges::default(),
    };
    for x in 0..g.m() {
        let (set, edges) = match classify_degree(degree(g, x, measure), n, k, threshold_base) {
            DegreeClass::High => (&mut d.high, &mut d.high_edges),
            DegreeClass::Medium => (&mut d.medium, &mut d.medium_edges),
            DegreeClass::Low => (&mut d.low, &mut d.low_edges),
        };
        set.push(x);
        edges.vm += g.in_degree(x);
        edges.mw += g.out_degree(x);
    }
    Ok(d)
}

/// Integer `k` values `k_0 = ⌈n^{1/4}⌉`, `k_{i+1} = ⌈k_i·t²⌉` while `k ≤ n^{3/4}`.
///
/// Each step grows by at least `t²`, so the Medium bands of distinct rungs are
/// disjoint. With `t² ≤ 1` the ladder has at most one rung.
pub fn k_ladder(n: u64, t: f64) -> Vec<u64> {
    let big = |x: u64| BigUint::from(x);
    let n3 = big(n).pow(3);
    let within = |k: u64| big(k).pow(4) <= n3;
    // smallest k with k⁴ ≥ n
    let mut k = (n as f64).powf(0.25).floor() as u64;
    while big(k).pow(4) < big(n) {
        k += 1;
    }
    while k > 1 && big(k - 1).pow(4) >= big(n) {
        k -= 1;
    }
    let ratio = t * t;
    let mut ladder = Vec::new();
    while k >= 1 && within(k) {
        ladder.push(k);
        if ratio.is_nan() || ratio <= 1.0 {
            break;
        }
        let next = (k as f64 * ratio * (1.0 + 1e-12)).ceil();
        if next >= u64::MAX as f64 {
            break;
        }
        k = next as u64;
    }
    ladder
}

/// `⌊(1/10)·log₂n / log₂log₂n⌋`, `None` when `log₂log₂n ≤ 0`.
pub fn ladder_length_lower_bound(n: u64) -> Option<u64> {
    let lg = (n as f64).log2();
    let llg = lg.log2();
    (llg > 0.0).then(|| (lg / (10.0 * llg)).floor() as u64)
}

/// True when the Medium degree ranges of all rungs are pairwise disjoint.
pub fn medium_bands_disjoint(n: usize, ladder: &[usize], t: f64) -> bool {
    let mut bands: Vec<(usize, usize)> = ladder.iter().filter_map(|&k| medium_degree_range(n, k, t)).collect();
    bands.sort_unstable();
    bands.windows(2).all(|w| w[0].1 < w[1].0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceOutcome {
    pub graph: LayeredGraph,
    pub vm_before: usize,
    pub mw_before: usize,
    pub added_vm: usize,
    pub added_mw: usize,
    /// Middle vertices that received at least one edge.
    pub padded_vertices: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceSummary {
    pub vm_before: usize,
    pub mw_before: usize,
    pub added_vm: usize,
    pub added_mw: usize,
    pub padded_vertices: usize,
}

impl BalanceOutcome {
    pub fn summary(&self) -> BalanceSummary {
        BalanceSummary {
            vm_before: self.vm_before,
            mw_before: self.mw_before,
            added_vm: self.added_vm,
            added_mw: self.added_mw,
            padded_vertices: self.padded_vertices,
        }
    }
}

fn ceil_tol(x: f64) -> usize {
    (x - 1e-9 * x.abs().max(1.0)).ceil().max(0.0) as usize
}

/// Pads the deficient side of every middle vertex so `deg_V : deg_W ≈ a : b`.
///
/// The deficient degree is raised to the ceiling of its target, using the
/// lowest-index non-neighbours. No edge is removed.
pub fn balance_degrees(g: &LayeredGraph, a: f64, b: f64) -> Result<BalanceOutcome> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(Error::param(format!("target ratio needs a, b > 0, got {a}:{b}")));
    }
    let n = g.n();
    let mut out = g.clone();
    let (mut added_vm, mut added_mw, mut padded) = (0, 0, 0);
    for x in 0..g.m() {
        let (dv, dw) = (g.in_degree(x), g.out_degree(x));
        let (lhs, rhs) = (dv as f64 * b, dw as f64 * a);
        if le_tol(lhs, rhs) && le_tol(rhs, lhs) {
            continue;
        }
        if lhs < rhs {
            let need = ceil_tol(dw as f64 * a / b);
            if need > n {
                return Err(Error::Infeasible { vertex: x, required: need, n });
            }
            let fill: Vec<usize> = (0..n).filter(|&v| !g.in_neighbors(x).contains(v)).take(need - dv).collect();
            for v in fill {
                out.add_vm(v, x);
            }
            added_vm += need - dv;
        } else {
            let need = ceil_tol(dv as f64 * b / a);
            if need > n {
                return Err(Error::Infeasible { vertex: x, required: need, n });
            }
            let fill: Vec<usize> = (0..n).filter(|&w| !g.out_neighbors(x).contains(w)).take(need - dw).collect();
            for w in fill {
                out.add_mw(x, w);
            }
            added_mw += need - dw;
        }
        padded += 1;
    }
    let (vm, mw) = (g.vm_edge_count(), g.mw_edge_count());
    if a == b {
        assert!(out.edge_count() <= 2 * g.edge_count(), "1:1 balancing more than doubled the edges");
    }
    let (ef_vm, ef_mw) = (vm as f64, mw as f64);
    if (a * ef_mw - b * ef_vm).abs() <= 1e-9 * (a * ef_mw).max(b * ef_vm).max(1.0) {
        assert!(
            out.vm_edge_count() <= 2 * vm + padded && out.mw_edge_count() <= 2 * mw + padded,
            "balancing to the average ratio more than doubled a layer"
        );
    }
    Ok(BalanceOutcome {
        graph: out,
        vm_before: vm,
        mw_before: mw,
        added_vm,
        added_mw,
        padded_vertices: padded,
    })
}

/// `β·log₂((α+β)/β) ≤ α/ln 2`, i.e. `(1 + α/β)^β ≤ e^α`.
pub fn entropy_split_bound_holds(alpha: f64, beta: f64) -> bool {
    if beta <= 0.0 {
        return true;
    }
    le_tol(beta * ((alpha + beta) / beta).log2(), alpha / std::f64::consts::LN_2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRung {
    pub k: usize,
    pub high: usize,
    pub medium: usize,
    pub low: usize,
    /// `|High(k)| < k`.
    pub high_premise_holds: bool,
    /// Symmetric condition on the `Medium ∪ Low` bicliques.
    pub symmetric: SymmetricCheck,
    /// `Σ_{Low} α_v²`.
    pub low_term: f64,
    /// `Σ_{Medium} α_v`.
    pub medium_term: f64,
    /// `Σ_{Medium} deg(v)`.
    pub medium_degree_sum: usize,
    pub medium_meets_target: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeLowerBoundAudit {
    pub n: usize,
    pub m: usize,
    pub constant: f64,
    pub edges: usize,
    pub balanced_edges: usize,
    pub balance: BalanceSummary,
    /// `(log₂ n)²`.
    pub threshold_base: f64,
    pub ladder: Vec<usize>,
    /// `⌊(1/10)·log₂n/log₂log₂n⌋`.
    pub ladder_length_lower_bound: Option<u64>,
    pub ladder_disjoint: bool,
    /// `(B/2)·n·log₂n` per rung.
    pub medium_target: f64,
    /// `(B/100)·n·(log₂n)²/log₂log₂n`.
    pub few_edges_threshold: Option<f64>,
    /// `(B/20)·n·(log₂n)²/log₂log₂n`.
    pub total_target: Option<f64>,
    pub rungs: Vec<EdgeRung>,
    pub notes: Vec<String>,
}

/// Edge-count audit for a (verified or assumed) superconcentrator with constant `B`.
pub fn edge_lower_bound_audit(g: &LayeredGraph, constant: f64) -> Result<EdgeLowerBoundAudit> {
    let n = g.n();
    if n < 2 {
        return Err(Error::param("the audit needs n >= 2"));
    }
    let balance = balance_degrees(g, 1.0, 1.0)?;
    let bg = &balance.graph;
    let lg = (n as f64).log2();
    let llg = lg.log2();
    let t = lg * lg;
    let ladder: Vec<usize> = k_ladder(n as u64, t).into_iter().map(|k| k as usize).collect();
    let ladder_disjoint = medium_bands_disjoint(n, &ladder, t);
    assert!(ladder_disjoint, "Medium bands overlap on the ladder");
    let medium_target = constant / 2.0 * n as f64 * lg;
    let (few_edges_threshold, total_target) = if llg > 0.0 {
        let core = n as f64 * lg * lg / llg;
        (Some(constant / 100.0 * core), Some(constant / 20.0 * core))
    } else {
        (None, None)
    };

    let mut rungs = Vec::with_capacity(ladder.len());
    let mut seen = vec![false; g.m()];
    for &k in &ladder {
        let d = decompose(bg, k, t, DegreeMeasure::Balanced)?;
        for &x in &d.medium {
            assert!(!seen[x], "middle vertex {x} is Medium on two rungs");
            seen[x] = true;
        }
        let family = middle_bicliques(bg, &d.medium_and_low(), k)?;
        let symmetric = symmetric_condition(&NormalizedProfile::from_family(&family), constant)?;
        let scale = k as f64 / n as f64;
        let low_term = d.low.iter().map(|&x| (bg.in_degree(x) as f64 * scale).powi(2)).sum();
        let medium_degree_sum: usize = d.medium.iter().map(|&x| bg.in_degree(x)).sum();
        rungs.push(EdgeRung {
            k,
            high: d.high.len(),
            medium: d.medium.len(),
            low: d.low.len(),
            high_premise_holds: d.high.len() < k,
            symmetric,
            low_term,
            medium_term: medium_degree_sum as f64 * scale,
            medium_degree_sum,
            medium_meets_target: medium_degree_sum as f64 >= medium_target,
        });
    }

    let mut notes = Vec::new();
    if ladder.len() <= 1 {
        notes.push(format!("ladder has {} value(s) at n={n}", ladder.len()));
    }
    if rungs.iter().any(|r| !r.high_premise_holds) {
        notes.push("|High(k)| >= k on some rung: the graph is edge-rich at this scale".into());
    }
    if let Some(th) = few_edges_threshold {
        if bg.edge_count() as f64 > th {
            notes.push("edge count exceeds the few-edges assumption".into());
        }
    }
    Ok(EdgeLowerBoundAudit {
        n,
        m: g.m(),
        constant,
        edges: g.edge_count(),
        balanced_edges: bg.edge_count(),
        balance: balance.summary(),
        threshold_base: t,
        ladder_length_lower_bound: ladder_length_lower_bound(n as u64),
        ladder,
        ladder_disjoint,
        medium_target,
        few_edges_threshold,
        total_target,
        rungs,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeoffRung {
    pub k: usize,
    pub high: usize,
    pub medium: usize,
    pub low: usize,
    /// Edges from `V` into `Medium(k)`.
    pub v_edges_into_medium: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K0Analysis {
    pub k0: usize,
    pub high: usize,
    pub high_premise_holds: bool,
    /// `Σ_{Low} α_vβ_v`.
    pub low_term: f64,
    /// `Σ_{Medium} (α_v+β_v)·H(α_v/(α_v+β_v))`.
    pub medium_term: f64,
    /// `D·k₀·log₂ n`.
    pub rhs: f64,
    pub satisfied: bool,
    /// Minimum over every marked set, for comparison.
    pub min_over_x: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeoffReport {
    pub n: usize,
    pub m: usize,
    pub constant: f64,
    /// `V` and `W` were swapped so that `a ≤ b`.
    pub reversed: bool,
    pub balance: Option<BalanceSummary>,
    /// Average degree of `V` in the balanced graph.
    pub a: f64,
    /// Average degree of `W` in the balanced graph.
    pub b: f64,
    /// `b²`.
    pub threshold_base: f64,
    pub ladder: Vec<usize>,
    #[serde(rename = "L")]
    pub l: usize,
    pub rungs: Vec<TradeoffRung>,
    pub k0: Option<usize>,
    pub vm_edges: usize,
    /// `Σ` over the ladder of `V`-edges into Medium; at most `vm_edges`.
    pub ladder_v_edges: usize,
    /// `min·L ≤ ladder_v_edges ≤ a·n`, checked in integers.
    pub pigeonhole_holds: bool,
    /// `a·n/L`.
    pub an_over_l: Option<f64>,
    pub at_k0: Option<K0Analysis>,
    /// `a·log₂((a+b)/a)·log₂ b`.
    pub lhs: f64,
    /// `(log₂ n)²`.
    pub rhs_scale: f64,
    pub notes: Vec<String>,
}

/// Ratio audit with constant `D`. Unbalanced input is balanced to its own
/// average ratio first, or rejected when `require_balanced` is set.
pub fn tradeoff_audit(g: &LayeredGraph, constant: f64, require_balanced: bool) -> Result<TradeoffReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::param("the audit needs n >= 2"));
    }
    let (vm, mw) = (g.vm_edge_count(), g.mw_edge_count());
    if vm == 0 || mw == 0 {
        return Err(Error::domain("both layers need at least one edge"));
    }
    let unbalanced = (0..g.m()).find(|&x| g.in_degree(x) * mw != g.out_degree(x) * vm);
    let (mut graph, balance) = match unbalanced {
        None => (g.clone(), None),
        Some(x) if require_balanced => {
            return Err(Error::Unbalanced(format!(
                "middle vertex {x} has deg_V:deg_W = {}:{}, average ratio is {vm}:{mw}",
                g.in_degree(x),
                g.out_degree(x)
            )))
        }
        Some(_) => {
            let out = balance_degrees(g, vm as f64 / n as f64, mw as f64 / n as f64)?;
            let s = out.summary();
            (out.graph, Some(s))
        }
    };
    let mut reversed = false;
    if graph.vm_edge_count() > graph.mw_edge_count() {
        graph = graph.reversed();
        reversed = true;
    }
    let vm_edges = graph.vm_edge_count();
    let a = vm_edges as f64 / n as f64;
    let b = graph.mw_edge_count() as f64 / n as f64;
    let t = b * b;
    let lg = (n as f64).log2();

    let ladder: Vec<usize> = k_ladder(n as u64, t).into_iter().map(|k| k as usize).collect();
    assert!(medium_bands_disjoint(n, &ladder, t), "Medium bands overlap on the ladder");
    let mut rungs = Vec::with_capacity(ladder.len());
    let mut decomps = Vec::with_capacity(ladder.len());
    for &k in &ladder {
        let d = decompose(&graph, k, t, DegreeMeasure::Out)?;
        rungs.push(TradeoffRung {
            k,
            high: d.high.len(),
            medium: d.medium.len(),
            low: d.low.len(),
            v_edges_into_medium: d.medium_edges.vm,
        });
        decomps.push(d);
    }
    let l = ladder.len();
    let ladder_v_edges: usize = rungs.iter().map(|r| r.v_edges_into_medium).sum();
    let best = rungs
        .iter()
        .enumerate()
        .min_by_key(|(i, r)| (r.v_edges_into_medium, *i))
        .map(|(i, _)| i);
    let pigeonhole_holds = match best {
        Some(i) => rungs[i].v_edges_into_medium * l <= ladder_v_edges && ladder_v_edges <= vm_edges,
        None => true,
    };
    assert!(pigeonhole_holds, "pigeonhole bound failed on a disjoint ladder");

    let at_k0 = match best {
        Some(i) => Some(analyse_k0(&graph, &decomps[i], constant)?),
        None => None,
    };
    let lhs = if a > 0.0 { a * ((a + b) / a).log2() * b.log2() } else { 0.0 };

    let mut notes = Vec::new();
    if l <= 1 {
        notes.push(format!("ladder has {l} value(s) at n={n}, b={b:.4}"));
    }
    if b <= lg {
        notes.push("b <= log2 n: the edge-count bound already applies".into());
    }
    Ok(TradeoffReport {
        n,
        m: g.m(),
        constant,
        reversed,
        balance,
        a,
        b,
        threshold_base: t,
        ladder,
        l,
        rungs,
        k0: best.map(|i| decomps[i].k),
        vm_edges,
        ladder_v_edges,
        pigeonhole_holds,
        an_over_l: (l > 0).then(|| a * n as f64 / l as f64),
        at_k0,
        lhs,
        rhs_scale: lg * lg,
        notes,
    })
}

fn analyse_k0(g: &LayeredGraph, d: &MiddleDecomposition, constant: f64) -> Result<K0Analysis> {
    let n = g.n();
    let k0 = d.k;
    let members = d.medium_and_low();
    let family = middle_bicliques(g, &members, k0)?;
    let full = NormalizedProfile::from_family(&family);
    // isolated middle vertices contribute nothing to either sum
    let live: Vec<usize> = (0..full.len()).filter(|&i| !full.entries[i].degenerate).collect();
    let profile = NormalizedProfile {
        entries: live.iter().map(|&i| full.entries[i]).collect(),
        ..full
    };
    let marked: Vec<usize> = live
        .iter()
        .enumerate()
        .filter(|(_, &i)| d.low.binary_search(&members[i]).is_ok())
        .map(|(j, _)| j)
        .collect();
    let (low_term, medium_term) = asymmetric_terms_for(&profile, &marked)?;
    let min = asymmetric_condition(&profile, constant)?;
    let rhs = constant * k0 as f64 * (n as f64).log2();
    Ok(K0Analysis {
        k0,
        high: d.high.len(),
        high_premise_holds: d.high.len() < k0,
        low_term,
        medium_term,
        rhs,
        satisfied: low_term + medium_term >= rhs,
        min_over_x: min.min_over_x,
    })
}
