//! Closed-form size conditions for biclique unions.
//!
//! All logarithms are base 2. Normalized sizes are `α = |V_i|·k/n` and
//! `β = |W_i|·k/n`, so `α = 1` means a side of exactly `n/k` vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{union_of, BicliqueFamily, BipartiteGraph};
use crate::math::{binomial_ratio, le_tol};

/// `H(p) = -p log₂ p - (1-p) log₂(1-p)` with `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("entropy argument {p} outside [0, 1]")));
    }
    Ok(xlog_inv(p) + xlog_inv(1.0 - p))
}

/// `x · log₂(1/x)`, continuous at 0.
fn xlog_inv(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Constants `A`–`D` of the four `C · k · log₂ n` thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Symmetric sufficient condition.
    pub a: f64,
    /// Symmetric necessary condition.
    pub b: f64,
    /// Asymmetric sufficient condition.
    pub c: f64,
    /// Asymmetric necessary condition.
    pub d: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { a: 2.0, b: 0.01, c: 2.0, d: 0.01 }
    }
}

/// Outcome of a `lhs` vs `rhs` comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KstCheck {
    pub average_degree: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

/// Counting inequality `n · C(n - d̄, k) / C(n, k) ≤ k - 1` that every graph
/// without a `k×k` independent set obeys.
///
/// `d̄` is the average left degree; `n - d̄ < k` gives `lhs = 0`.
pub fn kst_check(g: &BipartiteGraph, k: usize) -> KstCheck {
    let n_left = g.n_left() as f64;
    let n_right = g.n_right() as f64;
    let avg = if g.n_left() == 0 {
        0.0
    } else {
        g.edge_count() as f64 / n_left
    };
    let lhs = n_left * binomial_ratio(n_right - avg, n_right, k);
    let rhs = k as f64 - 1.0;
    KstCheck {
        average_degree: avg,
        lhs,
        rhs,
        satisfied: le_tol(lhs, rhs),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeBound {
    /// Lower bound on the average degree.
    pub degree: f64,
    /// `n · degree`, the implied edge count.
    pub edges: f64,
}

/// `d̄ ≥ (n-k+1)·log₂(n/(k-1)) / (k + log₂(n/(k-1)))`.
pub fn kst_degree_lower_bound(n: usize, k: usize) -> Result<DegreeBound> {
    if k < 2 {
        return Err(Error::domain(format!("degree bound needs k >= 2, got {k}")));
    }
    if k > n {
        return Err(Error::domain(format!("k={k} exceeds n={n}")));
    }
    let nf = n as f64;
    let kf = k as f64;
    let l = (nf / (kf - 1.0)).log2();
    let degree = (nf - kf + 1.0) * l / (kf + l);
    Ok(DegreeBound { degree, edges: nf * degree })
}

/// `Σ sizes ≥ n · log₂(n/(k-1))`.
///
/// `sizes[i]` is the number of vertices `|A_i| + |B_i|` of the i-th biclique
/// placed on an `n`-vertex ground set.
pub fn hansel_check(sizes: &[usize], n: usize, k: usize) -> Result<Check> {
    if k < 2 {
        return Err(Error::domain(format!("Hansel bound needs k >= 2, got {k}")));
    }
    let lhs = sizes.iter().sum::<usize>() as f64;
    let rhs = n as f64 * (n as f64 / (k as f64 - 1.0)).log2();
    Ok(Check {
        lhs,
        rhs,
        satisfied: le_tol(rhs, lhs),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub alpha: f64,
    pub beta: f64,
    /// `α / (α + β)`, 0 for a degenerate entry.
    pub p: f64,
    /// `(α + β) · H(p)` in bits.
    pub entropy_term: f64,
    /// `α · β`.
    pub product_term: f64,
    pub degenerate: bool,
}

impl ProfileEntry {
    pub fn new(alpha: f64, beta: f64) -> Self {
        let total = alpha + beta;
        let degenerate = total <= 0.0;
        let p = if degenerate { 0.0 } else { alpha / total };
        // α log(1/p) + β log(1/(1-p)) avoids cancellation in (α+β)·H(p)
        let entropy_term = if degenerate {
            0.0
        } else {
            xlog_ratio(alpha, total) + xlog_ratio(beta, total)
        };
        ProfileEntry {
            alpha,
            beta,
            p,
            entropy_term,
            product_term: alpha * beta,
            degenerate,
        }
    }
}

/// `x · log₂(total / x)`, 0 at `x = 0`.
fn xlog_ratio(x: f64, total: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * (total / x).log2()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedProfile {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<ProfileEntry>,
    pub in_theorem_regime: bool,
}

impl NormalizedProfile {
    pub fn from_pairs(n: usize, k: usize, pairs: &[(f64, f64)]) -> Self {
        let entries: Vec<_> = pairs.iter().map(|&(a, b)| ProfileEntry::new(a, b)).collect();
        let in_theorem_regime = regime(n, k, &entries);
        NormalizedProfile { n, k, entries, in_theorem_regime }
    }

    /// Symmetric profile, `β = α`.
    pub fn from_alphas(n: usize, k: usize, alphas: &[f64]) -> Self {
        let pairs: Vec<_> = alphas.iter().map(|&a| (a, a)).collect();
        NormalizedProfile::from_pairs(n, k, &pairs)
    }

    /// Normalizes integer side sizes by `n/k`.
    pub fn from_sizes(n: usize, k: usize, sizes: &[(usize, usize)]) -> Self {
        let scale = k as f64 / n as f64;
        let pairs: Vec<_> = sizes
            .iter()
            .map(|&(m, m2)| (m as f64 * scale, m2 as f64 * scale))
            .collect();
        NormalizedProfile::from_pairs(n, k, &pairs)
    }

    pub fn from_family(family: &BicliqueFamily) -> Self {
        NormalizedProfile::from_sizes(family.n(), family.k(), &family.sizes())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|e| e.alpha == e.beta)
    }

    pub fn degenerate_indices(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.degenerate)
            .map(|(i, _)| i)
            .collect()
    }

    /// `C · k · log₂ n`.
    pub fn threshold(&self, constant: f64) -> f64 {
        constant * self.k as f64 * (self.n as f64).log2()
    }
}

fn regime(n: usize, k: usize, entries: &[ProfileEntry]) -> bool {
    let nf = n as f64;
    let kf = k as f64;
    let (lo, hi) = (nf.powf(-0.01), nf.powf(0.01));
    let in_range = |x: f64| x >= lo && x <= hi;
    kf >= nf.powf(0.1)
        && kf <= nf.powf(0.9)
        && entries.iter().all(|e| in_range(e.alpha) && in_range(e.beta))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricCheck {
    /// `Σ_{α ≤ 1} α²`.
    pub first_term: f64,
    /// `Σ_{α > 1} α`.
    pub second_term: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

/// `Σ_{α_i ≤ 1} α_i² + Σ_{α_i > 1} α_i ≥ C · k · log₂ n` on a symmetric profile.
pub fn symmetric_condition(profile: &NormalizedProfile, constant: f64) -> Result<SymmetricCheck> {
    if let Some(i) = profile.entries.iter().position(|e| e.alpha != e.beta) {
        return Err(Error::domain(format!(
            "symmetric condition needs beta == alpha, entry {i} has alpha={} beta={}",
            profile.entries[i].alpha, profile.entries[i].beta
        )));
    }
    let mut first_term = 0.0;
    let mut second_term = 0.0;
    for e in &profile.entries {
        if e.alpha <= 1.0 {
            first_term += e.alpha * e.alpha;
        } else {
            second_term += e.alpha;
        }
    }
    let lhs = first_term + second_term;
    let rhs = profile.threshold(constant);
    Ok(SymmetricCheck {
        first_term,
        second_term,
        lhs,
        rhs,
        satisfied: lhs >= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymmetricCheck {
    /// `min_X [Σ_{i∈X} α_iβ_i + Σ_{i∉X} (α_i+β_i)H(p_i)]`.
    pub min_over_x: f64,
    pub argmin_x: Vec<usize>,
    /// Product part at the minimizer.
    pub first_term: f64,
    /// Entropy part at the minimizer.
    pub second_term: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

/// Minimum of the marked/unmarked split over every index subset `X`.
///
/// The objective is separable, so the minimum takes the smaller term per index;
/// ties go into `X`. The "for every X" condition holds iff the minimum clears
/// `C · k · log₂ n`.
pub fn asymmetric_condition(profile: &NormalizedProfile, constant: f64) -> Result<AsymmetricCheck> {
    check_nondegenerate(profile)?;
    let mut min_over_x = 0.0;
    let mut first_term = 0.0;
    let mut second_term = 0.0;
    let mut argmin_x = Vec::new();
    for (i, e) in profile.entries.iter().enumerate() {
        if e.product_term <= e.entropy_term {
            argmin_x.push(i);
            min_over_x += e.product_term;
            first_term += e.product_term;
        } else {
            min_over_x += e.entropy_term;
            second_term += e.entropy_term;
        }
    }
    let rhs = profile.threshold(constant);
    Ok(AsymmetricCheck {
        min_over_x,
        argmin_x,
        first_term,
        second_term,
        rhs,
        satisfied: min_over_x >= rhs,
    })
}

/// `(Σ_{i∈X} α_iβ_i, Σ_{i∉X} (α_i+β_i)H(p_i))` for a fixed marked set.
pub fn asymmetric_terms_for(profile: &NormalizedProfile, marked: &[usize]) -> Result<(f64, f64)> {
    check_nondegenerate(profile)?;
    let mut in_x = vec![false; profile.len()];
    for &i in marked {
        if i >= profile.len() {
            return Err(Error::IndexOutOfRange {
                context: "marked set".into(),
                index: i,
                bound: profile.len(),
            });
        }
        in_x[i] = true;
    }
    let mut first = 0.0;
    let mut second = 0.0;
    for (e, marked) in profile.entries.iter().zip(in_x) {
        if marked {
            first += e.product_term;
        } else {
            second += e.entropy_term;
        }
    }
    Ok((first, second))
}

fn check_nondegenerate(profile: &NormalizedProfile) -> Result<()> {
    match profile.entries.iter().position(|e| e.degenerate) {
        Some(i) => Err(Error::domain(format!("profile entry {i} has alpha + beta = 0"))),
        None => Ok(()),
    }
}

/// Every inequality evaluated on one family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub constants: Constants,
    pub in_theorem_regime: bool,
    pub degenerate_indices: Vec<usize>,
    pub edge_count: usize,
    pub kst_average_degree: f64,
    pub kst_lhs: f64,
    pub kst_rhs: f64,
    pub kst_satisfied: bool,
    /// `None` when `k < 2`.
    pub kst_degree_bound: Option<f64>,
    pub kst_edge_bound: Option<f64>,
    /// Hansel form with sizes `|V_i| + |W_i|` on the `n`-vertex sides.
    pub hansel_lhs: Option<f64>,
    pub hansel_rhs: Option<f64>,
    /// `None` when some biclique has `|V_i| != |W_i|`.
    pub symmetric: Option<SymmetricCheck>,
    /// Computed over non-degenerate entries; indices refer to the family.
    pub asymmetric_min: f64,
    pub asymmetric_argmin_x: Vec<usize>,
    pub asymmetric_first_term: f64,
    pub asymmetric_second_term: f64,
    pub asymmetric_rhs: f64,
    pub asymmetric_satisfied: bool,
    /// `A · k · log₂ n` and `B · k · log₂ n`.
    pub symmetric_sufficient_threshold: f64,
    pub symmetric_necessary_threshold: f64,
    /// `C · k · log₂ n` and `D · k · log₂ n`.
    pub asymmetric_sufficient_threshold: f64,
    pub asymmetric_necessary_threshold: f64,
}

impl BoundReport {
    /// `asymmetric_*` fields use constant `D`; `symmetric.rhs` uses `B`.
    pub fn evaluate(family: &BicliqueFamily, constants: Constants) -> BoundReport {
        let n = family.n();
        let k = family.k();
        let g = union_of(family);
        let kst = kst_check(&g, k);
        let degree_bound = kst_degree_lower_bound(n, k).ok();
        let side_sums: Vec<usize> = family.sizes().iter().map(|&(a, b)| a + b).collect();
        let hansel = hansel_check(&side_sums, n, k).ok();
        let profile = NormalizedProfile::from_family(family);
        let symmetric = symmetric_condition(&profile, constants.b).ok();

        let degenerate = profile.degenerate_indices();
        let live: Vec<usize> = (0..profile.len()).filter(|i| !profile.entries[*i].degenerate).collect();
        let live_profile = NormalizedProfile {
            n,
            k,
            entries: live.iter().map(|&i| profile.entries[i]).collect(),
            in_theorem_regime: profile.in_theorem_regime,
        };
        let asym = asymmetric_condition(&live_profile, constants.d)
            .expect("degenerate entries were filtered");

        BoundReport {
            n,
            k,
            r: family.len(),
            constants,
            in_theorem_regime: profile.in_theorem_regime,
            degenerate_indices: degenerate,
            edge_count: g.edge_count(),
            kst_average_degree: kst.average_degree,
            kst_lhs: kst.lhs,
            kst_rhs: kst.rhs,
            kst_satisfied: kst.satisfied,
            kst_degree_bound: degree_bound.map(|b| b.degree),
            kst_edge_bound: degree_bound.map(|b| b.edges),
            hansel_lhs: hansel.map(|h| h.lhs),
            hansel_rhs: hansel.map(|h| h.rhs),
            symmetric,
            asymmetric_min: asym.min_over_x,
            asymmetric_argmin_x: asym.argmin_x.iter().map(|&j| live[j]).collect(),
            asymmetric_first_term: asym.first_term,
            asymmetric_second_term: asym.second_term,
            asymmetric_rhs: asym.rhs,
            asymmetric_satisfied: asym.satisfied,
            symmetric_sufficient_threshold: profile.threshold(constants.a),
            symmetric_necessary_threshold: profile.threshold(constants.b),
            asymmetric_sufficient_threshold: profile.threshold(constants.c),
            asymmetric_necessary_threshold: profile.threshold(constants.d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Biclique, BipartiteGraph};

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // 2 - (3/4)·log₂3
        assert!((binary_entropy(0.25).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-15);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.0001).is_err());
    }

    #[test]
    fn kst_on_complete_empty_and_matching() {
        let c = kst_check(&BipartiteGraph::complete(4, 4), 2);
        assert_eq!(c.lhs, 0.0);
        assert!(c.satisfied);

        let e = kst_check(&BipartiteGraph::empty(4, 4), 2);
        assert_eq!(e.lhs, 4.0);
        assert!(!e.satisfied);

        let m = BipartiteGraph::from_edges(3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let c = kst_check(&m, 2);
        assert!((c.lhs - 1.0).abs() < 1e-12);
        assert!(c.satisfied);
    }

    #[test]
    fn degree_bound_values() {
        let b = kst_degree_lower_bound(10_000, 100).unwrap();
        assert!((b.degree - 618.1).abs() < 0.05, "{}", b.degree);
        assert_eq!(b.edges, 10_000.0 * b.degree);
        // n = k: (n-k+1) = 1
        let l = (10.0f64 / 9.0).log2();
        let b = kst_degree_lower_bound(10, 10).unwrap();
        assert!((b.degree - l / (10.0 + l)).abs() < 1e-15);
        assert!(kst_degree_lower_bound(10, 1).is_err());
    }

    #[test]
    fn hansel_values() {
        let c = hansel_check(&[], 16, 2).unwrap();
        assert_eq!(c.rhs, 64.0);
        assert!(!c.satisfied);
        let c = hansel_check(&[2], 2, 2).unwrap();
        assert_eq!((c.lhs, c.rhs), (2.0, 2.0));
        assert!(c.satisfied);
        assert!(hansel_check(&[1], 4, 1).is_err());
    }

    #[test]
    fn symmetric_condition_branches() {
        let p = NormalizedProfile::from_alphas(100, 10, &[0.5, 2.0]);
        assert_eq!(symmetric_condition(&p, 1.0).unwrap().lhs, 2.25);
        let ones = NormalizedProfile::from_alphas(100, 10, &[1.0; 5]);
        assert_eq!(symmetric_condition(&ones, 1.0).unwrap().lhs, 5.0);
        let empty = NormalizedProfile::from_alphas(100, 10, &[]);
        let c = symmetric_condition(&empty, 1.0).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert!(!c.satisfied);
        let asym = NormalizedProfile::from_pairs(100, 10, &[(1.0, 2.0)]);
        assert!(symmetric_condition(&asym, 1.0).is_err());
    }

    #[test]
    fn asymmetric_single_entry() {
        let p = NormalizedProfile::from_pairs(100, 10, &[(1.0, 1.0)]);
        let c = asymmetric_condition(&p, 0.01).unwrap();
        assert_eq!(c.min_over_x, 1.0);
        assert_eq!(c.argmin_x, vec![0]);
        assert_eq!(p.entries[0].entropy_term, 2.0);
    }

    #[test]
    fn asymmetric_tie_goes_into_x() {
        // α = β = 2: product 4, entropy (α+β)·H(1/2) = 4
        let p = NormalizedProfile::from_pairs(100, 10, &[(2.0, 2.0)]);
        assert_eq!(asymmetric_condition(&p, 0.01).unwrap().argmin_x, vec![0]);
    }

    #[test]
    fn asymmetric_rejects_degenerate() {
        let p = NormalizedProfile::from_pairs(100, 10, &[(1.0, 1.0), (0.0, 0.0)]);
        assert!(asymmetric_condition(&p, 1.0).is_err());
        assert!(asymmetric_terms_for(&p, &[0]).is_err());
    }

    #[test]
    fn profile_from_family_values() {
        let b = Biclique::new(100, &(0..5).collect::<Vec<_>>(), &(0..20).collect::<Vec<_>>()).unwrap();
        let sq = Biclique::new(100, &(0..10).collect::<Vec<_>>(), &(10..20).collect::<Vec<_>>()).unwrap();
        let empty = Biclique::new(100, &[], &[]).unwrap();
        let f = BicliqueFamily::new(100, 10, vec![sq, b, empty]).unwrap();
        let p = NormalizedProfile::from_family(&f);
        assert_eq!((p.entries[0].alpha, p.entries[0].beta), (1.0, 1.0));
        assert_eq!((p.entries[1].alpha, p.entries[1].beta), (0.5, 2.0));
        assert!((p.entries[1].p - 0.2).abs() < 1e-15);
        let e = p.entries[2];
        assert!(e.degenerate && e.p == 0.0 && e.entropy_term == 0.0);
        assert_eq!(p.degenerate_indices(), vec![2]);
    }

    #[test]
    fn regime_flag() {
        // n = 10^6: k ∈ [3.98, 251188], α ∈ [0.871, 1.148]
        assert!(NormalizedProfile::from_alphas(1_000_000, 1000, &[1.0, 1.1]).in_theorem_regime);
        assert!(!NormalizedProfile::from_alphas(1_000_000, 1000, &[2.0]).in_theorem_regime);
        assert!(!NormalizedProfile::from_alphas(1_000_000, 2, &[1.0]).in_theorem_regime);
    }

    #[test]
    fn report_maps_argmin_back_to_family_indices() {
        let n = 40;
        let full: Vec<usize> = (0..n).collect();
        let f = BicliqueFamily::new(
            n,
            4,
            vec![
                Biclique::new(n, &[], &[]).unwrap(),
                Biclique::new(n, &[0, 1], &[0, 1]).unwrap(),
                Biclique::new(n, &full, &full[..30]).unwrap(),
            ],
        )
        .unwrap();
        let r = BoundReport::evaluate(&f, Constants::default());
        assert_eq!(r.degenerate_indices, vec![0]);
        assert!(r.asymmetric_argmin_x.iter().all(|&i| i != 0));
        // α=β=0.2 ⇒ product 0.04 < entropy 0.4
        assert!(r.asymmetric_argmin_x.contains(&1));
        assert!(r.symmetric.is_none());
    }
}
