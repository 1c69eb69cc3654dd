//! Random side-deletion refuter.
//!
//! Bicliques are split into *attacked* ones, which lose one whole side at
//! random, and *kept* ones, which stay intact. A vertex survives only if every
//! attacked biclique it belongs to lost its other side, so no attacked biclique
//! has an edge between the survivors. A `k×k` independent set among survivors
//! in the kept subgraph is therefore independent in the full union.
//!
//! For biclique `i` the right side `W_i` is deleted with probability
//! `p_i = α_i/(α_i+β_i)` (`1/2` in symmetric mode), so `v ∈ V` survives with
//! probability `2^{-d_v}`, `d_v = Σ_{i attacked, v∈V_i} log₂(1/p_i)`, and
//! `w ∈ W` with `2^{-d_w}`, `d_w = Σ log₂(1/(1-p_i))`. Survivors are then
//! restricted to `V'`, `W'` (half of each side with `d_v ≤ d`) and thinned so
//! each one survives with probability exactly `2^{-d}`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::bounds::{asymmetric_condition, NormalizedProfile};
use crate::error::{Error, Result};
use crate::graph::{union_of, BicliqueFamily, BipartiteGraph};
use crate::rng::RandomSource;
use crate::witness::{has_kxk_independent_set_within, Method, WitnessConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackMode {
    /// Attack `α_i > 1`, fair coins.
    Symmetric,
    /// Attack the complement of the marked set, biased coins.
    Asymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// Thin each `V'` survivor so it survives with probability exactly `2^{-d}`.
    #[serde(rename = "exact_2_to_minus_d")]
    Exact,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "bits")]
pub enum Threshold {
    /// `d` is the larger of the two per-side `⌈n/2⌉`-th smallest `d_v`.
    Median,
    /// A fixed `d` in bits.
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackConfig {
    pub mode: AttackMode,
    /// Marked (kept) indices in asymmetric mode; defaults to the asymmetric argmin.
    pub marked: Option<Vec<usize>>,
    pub trials: usize,
    pub truncation: Truncation,
    pub threshold: Threshold,
    pub source: RandomSource,
    pub witness: WitnessConfig,
}

impl AttackConfig {
    pub fn new(mode: AttackMode, trials: usize, source: RandomSource) -> Self {
        AttackConfig {
            mode,
            marked: None,
            trials,
            truncation: Truncation::Exact,
            threshold: Threshold::Median,
            source,
            witness: WitnessConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub attacked: Vec<usize>,
    pub kept: Vec<usize>,
}

/// Splits biclique indices into attacked and kept.
pub fn classify(profile: &NormalizedProfile, mode: AttackMode, marked: Option<&[usize]>) -> Result<Classification> {
    let r = profile.len();
    let mut keep = vec![false; r];
    match mode {
        AttackMode::Symmetric => {
            for (i, e) in profile.entries.iter().enumerate() {
                keep[i] = e.alpha <= 1.0;
            }
        }
        AttackMode::Asymmetric => match marked {
            Some(x) => {
                for &i in x {
                    if i >= r {
                        return Err(Error::IndexOutOfRange {
                            context: "marked set".into(),
                            index: i,
                            bound: r,
                        });
                    }
                    keep[i] = true;
                }
            }
            None => {
                // degenerate entries have no edges; keep them
                let live: Vec<usize> = (0..r).filter(|&i| !profile.entries[i].degenerate).collect();
                let sub = NormalizedProfile {
                    n: profile.n,
                    k: profile.k,
                    entries: live.iter().map(|&i| profile.entries[i]).collect(),
                    in_theorem_regime: profile.in_theorem_regime,
                };
                for j in asymmetric_condition(&sub, 0.0)?.argmin_x {
                    keep[live[j]] = true;
                }
                for i in profile.degenerate_indices() {
                    keep[i] = true;
                }
            }
        },
    }
    let (kept, attacked): (Vec<usize>, Vec<usize>) = (0..r).partition(|&i| keep[i]);
    Ok(Classification { attacked, kept })
}

/// Everything about an attack that does not depend on the coins.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackPlan {
    pub n: usize,
    pub k: usize,
    pub mode: AttackMode,
    pub truncation: Truncation,
    pub attacked: Vec<usize>,
    pub kept: Vec<usize>,
    /// Probability of deleting the right side, per attacked biclique.
    pub delete_right_probability: Vec<f64>,
    /// `d_v` in bits for each left vertex.
    pub d_left: Vec<f64>,
    /// `d_w` in bits for each right vertex.
    pub d_right: Vec<f64>,
    /// `|S_v|`: attacked bicliques containing each left vertex.
    pub attacked_count_left: Vec<usize>,
    pub attacked_count_right: Vec<usize>,
    pub d: f64,
    pub v_prime: Vec<usize>,
    pub w_prime: Vec<usize>,
    /// Expected kept-biclique edges (with multiplicity) between the survivors.
    pub expected_kept_edges: f64,
    /// `Σ_{i kept} m_i·n_i·2^{-2d}`.
    pub kept_edge_upper_bound: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeletedSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackWitness {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub method: Method,
    /// Re-checked against the union of all bicliques.
    pub verified_in_full_graph: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionTrace {
    pub trial: usize,
    pub source: RandomSource,
    /// Side deleted from each attacked biclique, in `plan.attacked` order.
    pub deleted: Vec<DeletedSide>,
    pub x_surv: Vec<usize>,
    pub y_surv: Vec<usize>,
    /// Kept-biclique edges between survivors, with multiplicity.
    pub kept_edges_surviving: usize,
    /// Distinct union edges between survivors.
    pub distinct_edges_surviving: usize,
    /// Attacked-biclique edges between survivors; always 0.
    pub attacked_edges_surviving: usize,
    pub witness: Option<AttackWitness>,
    pub search_complete: bool,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurvivorSummary {
    pub trials: usize,
    pub d: f64,
    /// `n·2^{-d}`.
    pub scale: f64,
    pub mean_left_ratio: f64,
    pub mean_right_ratio: f64,
    pub min_left_ratio: f64,
    pub min_right_ratio: f64,
    /// Trials with both `|X|, |Y| ≥ (n/4)·2^{-d}`.
    pub fraction_meeting_quarter: f64,
    pub mean_kept_edges: f64,
    pub expected_kept_edges: f64,
    pub kept_edge_upper_bound: f64,
    pub successes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub plan: AttackPlan,
    pub trials_run: usize,
    pub success_trial: Option<usize>,
    /// First successful trial, or the last trial run.
    pub trace: DeletionTrace,
    /// Present when truncation is on.
    pub summary: Option<SurvivorSummary>,
}

/// Internal working state for one family.
pub struct Attack<'a> {
    family: &'a BicliqueFamily,
    plan: AttackPlan,
    full: BipartiteGraph,
    kept_graph: BipartiteGraph,
    v_prime: Bitset,
    w_prime: Bitset,
    witness: WitnessConfig,
}

impl<'a> Attack<'a> {
    pub fn prepare(family: &'a BicliqueFamily, config: &AttackConfig) -> Result<Self> {
        if config.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        let n = family.n();
        let profile = NormalizedProfile::from_family(family);
        let class = classify(&profile, config.mode, config.marked.as_deref())?;

        let mut delete_right_probability = Vec::with_capacity(class.attacked.len());
        for &i in &class.attacked {
            let e = profile.entries[i];
            let p = match config.mode {
                AttackMode::Symmetric => 0.5,
                AttackMode::Asymmetric => {
                    if e.degenerate {
                        return Err(Error::domain(format!("attacked biclique {i} has alpha + beta = 0")));
                    }
                    e.p
                }
            };
            delete_right_probability.push(p);
        }

        let mut d_left = vec![0.0; n];
        let mut d_right = vec![0.0; n];
        let mut count_left = vec![0usize; n];
        let mut count_right = vec![0usize; n];
        for (&i, &p) in class.attacked.iter().zip(&delete_right_probability) {
            let b = &family.bicliques()[i];
            // p = 0 or 1 only when the matching side is empty
            let (cost_left, cost_right) = (bits(p), bits(1.0 - p));
            for v in b.left.members.iter() {
                d_left[v] += cost_left;
                count_left[v] += 1;
            }
            for w in b.right.members.iter() {
                d_right[w] += cost_right;
                count_right[w] += 1;
            }
        }

        let half = n.div_ceil(2);
        let d = match config.threshold {
            Threshold::Median => kth_smallest(&d_left, half).max(kth_smallest(&d_right, half)),
            Threshold::Fixed(bits) => {
                if bits.is_nan() || bits < 0.0 {
                    return Err(Error::param(format!("fixed d must be >= 0, got {bits}")));
                }
                bits
            }
        };
        let pick = |dv: &[f64]| -> Vec<usize> { (0..n).filter(|&v| dv[v] <= d).take(half).collect() };
        let v_prime_list = pick(&d_left);
        let w_prime_list = pick(&d_right);
        let v_prime = Bitset::from_indices(n, v_prime_list.iter().copied()).expect("in range");
        let w_prime = Bitset::from_indices(n, w_prime_list.iter().copied()).expect("in range");

        let full = union_of(family);
        let kept_graph = union_of(&family.select(&class.kept));

        let survival = |dv: f64| match config.truncation {
            Truncation::Exact => (-d).exp2(),
            Truncation::None => (-dv).exp2(),
        };
        // w ∈ W_j, v ∈ V_j for an attacked j ⇒ v and w never both survive
        let mut conflict = vec![Bitset::new(n); n];
        for &j in &class.attacked {
            let b = &family.bicliques()[j];
            for v in b.left.members.iter() {
                conflict[v].union_with(&b.right.members);
            }
        }
        let mut expected_kept_edges = 0.0;
        let mut kept_edge_upper_bound = 0.0;
        for &i in &class.kept {
            let b = &family.bicliques()[i];
            let (m, m2) = b.dims();
            kept_edge_upper_bound += (m * m2) as f64 * (-2.0 * d).exp2();
            let right = b.right.members.intersection(&w_prime);
            for v in b.left.members.iter().filter(|&v| v_prime.contains(v)) {
                let mut partners = right.clone();
                partners.difference_with(&conflict[v]);
                let mass: f64 = partners.iter().map(|w| survival(d_right[w])).sum();
                expected_kept_edges += survival(d_left[v]) * mass;
            }
        }

        let plan = AttackPlan {
            n,
            k: family.k(),
            mode: config.mode,
            truncation: config.truncation,
            attacked: class.attacked,
            kept: class.kept,
            delete_right_probability,
            d_left,
            d_right,
            attacked_count_left: count_left,
            attacked_count_right: count_right,
            d,
            v_prime: v_prime_list,
            w_prime: w_prime_list,
            expected_kept_edges,
            kept_edge_upper_bound,
        };
        Ok(Attack {
            family,
            plan,
            full,
            kept_graph,
            v_prime,
            w_prime,
            witness: config.witness,
        })
    }

    pub fn plan(&self) -> &AttackPlan {
        &self.plan
    }

    /// One deletion trial driven by `source`.
    pub fn trial(&self, trial: usize, source: RandomSource, search: bool) -> Result<DeletionTrace> {
        let plan = &self.plan;
        let n = plan.n;
        let mut rng = source.rng();
        let mut dead_left = Bitset::new(n);
        let mut dead_right = Bitset::new(n);
        let mut deleted = Vec::with_capacity(plan.attacked.len());
        for (&i, &p) in plan.attacked.iter().zip(&plan.delete_right_probability) {
            let b = &self.family.bicliques()[i];
            if rng.gen::<f64>() < p {
                dead_right.union_with(&b.right.members);
                deleted.push(DeletedSide::Right);
            } else {
                dead_left.union_with(&b.left.members);
                deleted.push(DeletedSide::Left);
            }
        }

        let mut x = self.v_prime.clone();
        x.difference_with(&dead_left);
        let mut y = self.w_prime.clone();
        y.difference_with(&dead_right);
        if plan.truncation == Truncation::Exact {
            thin(&mut x, &plan.d_left, plan.d, &mut rng);
            thin(&mut y, &plan.d_right, plan.d, &mut rng);
        }

        let mut attacked_edges = 0;
        for &i in &plan.attacked {
            let b = &self.family.bicliques()[i];
            attacked_edges += b.left.members.intersection_count(&x) * b.right.members.intersection_count(&y);
        }
        assert_eq!(attacked_edges, 0, "an attacked biclique kept both sides among survivors");
        let kept_edges = plan
            .kept
            .iter()
            .map(|&i| {
                let b = &self.family.bicliques()[i];
                b.left.members.intersection_count(&x) * b.right.members.intersection_count(&y)
            })
            .sum();

        let (witness, complete, nodes) = if search {
            let r = has_kxk_independent_set_within(&self.kept_graph, plan.k, &x, &y, &self.witness)?;
            let w = r.found.then(|| AttackWitness {
                verified_in_full_graph: self.full.is_independent(&r.s, &r.t),
                s: r.s.clone(),
                t: r.t.clone(),
                method: Method::Randomized,
            });
            (w, r.complete, r.nodes_explored)
        } else {
            (None, false, 0)
        };

        Ok(DeletionTrace {
            trial,
            source,
            deleted,
            distinct_edges_surviving: self.full.edges_between(&x, &y),
            x_surv: x.to_vec(),
            y_surv: y.to_vec(),
            kept_edges_surviving: kept_edges,
            attacked_edges_surviving: attacked_edges,
            witness,
            search_complete: complete,
            nodes_explored: nodes,
        })
    }
}

/// `log₂(1/p)`, 0 when `p ≥ 1`.
fn bits(p: f64) -> f64 {
    if p >= 1.0 {
        0.0
    } else {
        -p.log2()
    }
}

fn kth_smallest(values: &[f64], k: usize) -> f64 {
    if values.is_empty() || k == 0 {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v[k.min(v.len()) - 1]
}

/// Keeps each member `v` with probability `2^{-(d - d_v)}`.
fn thin<R: Rng>(set: &mut Bitset, dv: &[f64], d: f64, rng: &mut R) {
    for v in set.to_vec() {
        let keep = (-(d - dv[v])).exp2();
        if keep < 1.0 && rng.gen::<f64>() >= keep {
            set.remove(v);
        }
    }
}

/// Source for trial `t`: a child of the configured source.
pub fn trial_source(config: &AttackConfig, t: usize) -> RandomSource {
    config.source.child(t as u64)
}

/// Runs every trial (no early stop), in parallel, ordered by trial index.
pub fn run_trials(family: &BicliqueFamily, config: &AttackConfig, search: bool) -> Result<(AttackPlan, Vec<DeletionTrace>)> {
    let attack = Attack::prepare(family, config)?;
    let traces = (0..config.trials)
        .into_par_iter()
        .map(|t| attack.trial(t, trial_source(config, t), search))
        .collect::<Result<Vec<_>>>()?;
    Ok((attack.plan, traces))
}

/// Runs trials until the first verified witness or `config.trials`.
pub fn run_attack(family: &BicliqueFamily, config: &AttackConfig) -> Result<AttackReport> {
    let attack = Attack::prepare(family, config)?;
    let chunk = rayon::current_num_threads().max(1) * 2;
    let mut traces: Vec<DeletionTrace> = Vec::new();
    let mut start = 0;
    let mut success = None;
    while start < config.trials && success.is_none() {
        let end = (start + chunk).min(config.trials);
        let batch = (start..end)
            .into_par_iter()
            .map(|t| attack.trial(t, trial_source(config, t), true))
            .collect::<Result<Vec<_>>>()?;
        for trace in batch {
            if success.is_some() {
                break;
            }
            if trace.witness.as_ref().is_some_and(|w| w.verified_in_full_graph) {
                success = Some(trace.trial);
            }
            traces.push(trace);
        }
        start = end;
    }
    let summary = match attack.plan.truncation {
        Truncation::Exact => Some(survivor_statistics(&attack.plan, &traces)?),
        Truncation::None => None,
    };
    let trace = traces.last().cloned().expect("at least one trial");
    Ok(AttackReport {
        trials_run: traces.len(),
        success_trial: success,
        trace,
        summary,
        plan: attack.plan,
    })
}

/// Survivor sizes and kept-edge counts against their predicted values.
pub fn survivor_statistics(plan: &AttackPlan, traces: &[DeletionTrace]) -> Result<SurvivorSummary> {
    if traces.is_empty() {
        return Err(Error::param("survivor statistics need at least one trace"));
    }
    if plan.truncation != Truncation::Exact {
        return Err(Error::param("survivor statistics need exact 2^-d truncation"));
    }
    let scale = plan.n as f64 * (-plan.d).exp2();
    let count = traces.len() as f64;
    let left: Vec<f64> = traces.iter().map(|t| t.x_surv.len() as f64 / scale).collect();
    let right: Vec<f64> = traces.iter().map(|t| t.y_surv.len() as f64 / scale).collect();
    let meeting = left.iter().zip(&right).filter(|(l, r)| **l >= 0.25 && **r >= 0.25).count();
    Ok(SurvivorSummary {
        trials: traces.len(),
        d: plan.d,
        scale,
        mean_left_ratio: left.iter().sum::<f64>() / count,
        mean_right_ratio: right.iter().sum::<f64>() / count,
        min_left_ratio: left.iter().copied().fold(f64::INFINITY, f64::min),
        min_right_ratio: right.iter().copied().fold(f64::INFINITY, f64::min),
        fraction_meeting_quarter: meeting as f64 / count,
        mean_kept_edges: traces.iter().map(|t| t.kept_edges_surviving as f64).sum::<f64>() / count,
        expected_kept_edges: plan.expected_kept_edges,
        kept_edge_upper_bound: plan.kept_edge_upper_bound,
        successes: traces.iter().filter(|t| t.witness.is_some()).count(),
    })
}
