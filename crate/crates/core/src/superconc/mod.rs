//! Depth-two superconcentrators: exact verification and the degree-class audits.
//!
//! A layered graph `V → M → W` with `|V| = |W| = n` is a depth-two
//! `n`-superconcentrator when every pair of `k`-subsets `S ⊆ V`, `T ⊆ W` is
//! joined by `k` vertex-disjoint paths, for every `k`. Each pair is checked by a
//! unit-capacity max flow with split middle vertices.

mod audit;
mod flow;

pub use audit::*;
pub use flow::{disjoint_paths_with, max_disjoint_paths, FlowNetwork};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LayeredGraph;
use crate::rng::{sample_subset, RandomSource};
use crate::witness::next_combination;

/// Default cap on `Σ_k C(n,k)²` in exhaustive mode; covers every `k` at `n = 14`.
pub const DEFAULT_PAIR_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KSelection {
    All,
    List(Vec<usize>),
}

impl KSelection {
    fn resolve(&self, n: usize) -> Result<Vec<usize>> {
        match self {
            KSelection::All => Ok((1..=n).collect()),
            KSelection::List(ks) => {
                let mut ks = ks.clone();
                ks.sort_unstable();
                ks.dedup();
                if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > n) {
                    return Err(Error::param(format!("k={k} must lie in [1, {n}]")));
                }
                Ok(ks)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every pair `(S, T)`; fails if `Σ_k C(n,k)²` exceeds `budget`.
    Exhaustive { budget: u64 },
    /// `samples` uniform pairs per `k`; can refute but never certify.
    Sampled { samples: u64, source: RandomSource },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub k: usize,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub max_flow: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScVerdict {
    /// No checked pair fell short of `k` paths.
    pub is_superconcentrator: bool,
    /// Exhaustive over every `k ∈ 1..=n` with no failure.
    pub certified: bool,
    pub mode: ScMode,
    pub k_range: Vec<usize>,
    pub pairs_checked: u64,
    pub samples_per_k: Option<u64>,
    /// First failing pair in `(k, S, T)` order (exhaustive) or sample order.
    pub failing: Option<Counterexample>,
    pub note: String,
}

/// `C(n, k)` or `None` on `u64` overflow.
fn binomial_u64(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Number of pairs an exhaustive check of `ks` visits, `None` on overflow.
pub fn exhaustive_pair_count(n: usize, ks: &[usize]) -> Option<u64> {
    ks.iter().try_fold(0u64, |acc, &k| {
        let c = binomial_u64(n, k)?;
        acc.checked_add(c.checked_mul(c)?)
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        if !next_combination(&mut idx, n) {
            return out;
        }
    }
}

pub fn verify_superconcentrator(g: &LayeredGraph, ks: &KSelection, mode: VerifyMode) -> Result<ScVerdict> {
    let n = g.n();
    let k_range = ks.resolve(n)?;
    match mode {
        VerifyMode::Exhaustive { budget } => {
            let total = exhaustive_pair_count(n, &k_range);
            if total.is_none_or(|t| t > budget) {
                return Err(Error::BudgetExceeded { budget });
            }
            exhaustive(g, k_range)
        }
        VerifyMode::Sampled { samples, source } => {
            if samples == 0 {
                return Err(Error::param("samples must be at least 1"));
            }
            Ok(sampled(g, k_range, samples, source))
        }
    }
}

fn exhaustive(g: &LayeredGraph, k_range: Vec<usize>) -> Result<ScVerdict> {
    let n = g.n();
    let mut pairs = 0u64;
    for &k in &k_range {
        let subsets = combinations(n, k);
        let hit = subsets
            .par_iter()
            .enumerate()
            .map_init(FlowNetwork::default, |net, (i, s)| {
                subsets.iter().enumerate().find_map(|(j, t)| {
                    let flow = disjoint_paths_with(net, g, s, t);
                    (flow < k).then(|| (i, j, t.clone(), flow))
                })
                .map(|(i, j, t, flow)| (i, j, s.clone(), t, flow))
            })
            .find_map_first(|x| x);
        let per_side = subsets.len() as u64;
        match hit {
            Some((i, j, s, t, max_flow)) => {
                pairs += i as u64 * per_side + j as u64 + 1;
                return Ok(ScVerdict {
                    is_superconcentrator: false,
                    certified: false,
                    mode: ScMode::Exhaustive,
                    k_range,
                    pairs_checked: pairs,
                    samples_per_k: None,
                    failing: Some(Counterexample { k, s, t, max_flow }),
                    note: format!("{k} vertex-disjoint paths do not exist for the returned pair"),
                });
            }
            None => pairs += per_side * per_side,
        }
    }
    let certified = k_range.len() == n;
    let note = if certified {
        "every pair of equal-size subsets is joined by disjoint paths".to_string()
    } else {
        format!("all pairs pass for k in {k_range:?}; other k not checked")
    };
    Ok(ScVerdict {
        is_superconcentrator: true,
        certified,
        mode: ScMode::Exhaustive,
        k_range,
        pairs_checked: pairs,
        samples_per_k: None,
        failing: None,
        note,
    })
}

fn sampled(g: &LayeredGraph, k_range: Vec<usize>, samples: u64, source: RandomSource) -> ScVerdict {
    let n = g.n();
    let mut pairs = 0u64;
    for &k in &k_range {
        let mut rng = source.child(k as u64).rng();
        let draws: Vec<(Vec<usize>, Vec<usize>)> = (0..samples)
            .map(|_| (sample_subset(&mut rng, n, k).to_vec(), sample_subset(&mut rng, n, k).to_vec()))
            .collect();
        let hit = draws
            .par_iter()
            .enumerate()
            .map_init(FlowNetwork::default, |net, (i, (s, t))| {
                let flow = disjoint_paths_with(net, g, s, t);
                (flow < k).then_some((i, flow))
            })
            .find_map_first(|x| x);
        if let Some((i, max_flow)) = hit {
            pairs += i as u64 + 1;
            let (s, t) = draws[i].clone();
            return ScVerdict {
                is_superconcentrator: false,
                certified: false,
                mode: ScMode::Sampled,
                k_range,
                pairs_checked: pairs,
                samples_per_k: Some(samples),
                failing: Some(Counterexample { k, s, t, max_flow }),
                note: format!("counterexample found at sample {i} for k={k}"),
            };
        }
        pairs += samples;
    }
    ScVerdict {
        is_superconcentrator: true,
        certified: false,
        mode: ScMode::Sampled,
        note: format!("no counterexample in {samples} samples per k"),
        k_range,
        pairs_checked: pairs,
        samples_per_k: Some(samples),
        failing: None,
    }
}
