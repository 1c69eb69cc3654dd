//! Random placement of bicliques and the union-bound certificate.
//!
//! Each biclique `i` takes a uniform `m_i`-subset of `V` and an independent
//! uniform `n_i`-subset of `W`. A fixed `k×k` rectangle `(S, T)` is missed by
//! biclique `i` with probability
//!
//! ```text
//! miss_i = 1 - (1 - C(n-k, m_i)/C(n, m_i)) · (1 - C(n-k, n_i)/C(n, n_i))
//!        ≤ 1 - (1 - e^{-α_i}) · (1 - e^{-β_i})
//! ```
//!
//! and if `Π miss_i · C(n,k)² < 1` some placement has no `k×k` independent set.

use std::f64::consts::LN_2;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{union_of, Biclique, BicliqueFamily, Side, VertexSet};
use crate::math::{binomial_ratio, log2_binomial};
use crate::rng::{sample_subset, RandomSource};
use crate::witness::{has_kxk_independent_set, Verdict, WitnessConfig, WitnessResult};

/// `C(n-k, m) / C(n, m)`: a uniform `m`-subset avoids a fixed `k`-subset.
pub fn avoid_probability(n: usize, k: usize, m: usize) -> f64 {
    if k > n || m > n {
        return 0.0;
    }
    binomial_ratio((n - k) as f64, n as f64, m)
}

/// Exact probability that a random `m × n2` biclique puts no edge in a fixed `k×k` rectangle.
pub fn miss_probability_exact(n: usize, k: usize, m: usize, n2: usize) -> f64 {
    let a = avoid_probability(n, k, m);
    let b = avoid_probability(n, k, n2);
    // 1 - (1-a)(1-b) without cancellation when a, b are small
    a + b - a * b
}

/// `1 - (1 - e^{-α})(1 - e^{-β})`.
pub fn miss_probability_relaxed(alpha: f64, beta: f64) -> f64 {
    let a = (-alpha).exp();
    let b = (-beta).exp();
    a + b - a * b
}

/// Two-branch upper bound on the symmetric relaxed miss probability:
/// `exp(-α²/3)` for `α ≤ 1`, `exp(-(1 - ln 2)·α)` for `α > 1`.
pub fn miss_probability_bound(alpha: f64) -> f64 {
    if alpha <= 1.0 {
        (-alpha * alpha / 3.0).exp()
    } else {
        (-(1.0 - LN_2) * alpha).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MissProbability {
    pub exact: f64,
    pub relaxed: f64,
    /// Only for square bicliques.
    pub bound: Option<f64>,
}

pub fn miss_probability(n: usize, k: usize, m: usize, n2: usize) -> MissProbability {
    let scale = k as f64 / n as f64;
    let (alpha, beta) = (m as f64 * scale, n2 as f64 * scale);
    MissProbability {
        exact: miss_probability_exact(n, k, m, n2),
        relaxed: miss_probability_relaxed(alpha, beta),
        bound: (m == n2).then(|| miss_probability_bound(alpha)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateMode {
    Exact,
    Relaxed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub n: usize,
    pub k: usize,
    pub mode: CertificateMode,
    /// `Σ log₂ miss_i + 2·log₂ C(n, k)`; `-inf` when some biclique always hits.
    #[serde(with = "crate::nonfinite")]
    pub log2_failure_bound: f64,
    /// `2·log₂ C(n, k)`, the log-count of rectangles.
    pub log2_rectangles: f64,
    pub certified: bool,
    pub miss: Vec<f64>,
}

fn check_sizes(n: usize, sizes: &[(usize, usize)]) -> Result<()> {
    for (i, &(m, m2)) in sizes.iter().enumerate() {
        if m > n || m2 > n {
            return Err(Error::param(format!(
                "biclique {i} has size {m}x{m2}, exceeding n={n}"
            )));
        }
    }
    Ok(())
}

/// Union-bound certificate in log space; `certified ⟺ log2_failure_bound < 0`.
pub fn certify_union_bound(
    n: usize,
    k: usize,
    sizes: &[(usize, usize)],
    mode: CertificateMode,
) -> Result<ConstructionCertificate> {
    if k == 0 || k > n {
        return Err(Error::param(format!("k must satisfy 1 <= k <= n, got k={k}, n={n}")));
    }
    check_sizes(n, sizes)?;
    let scale = k as f64 / n as f64;
    let miss: Vec<f64> = sizes
        .iter()
        .map(|&(m, m2)| match mode {
            CertificateMode::Exact => miss_probability_exact(n, k, m, m2),
            CertificateMode::Relaxed => miss_probability_relaxed(m as f64 * scale, m2 as f64 * scale),
        })
        .collect();
    let log2_rectangles = 2.0 * log2_binomial(n, k);
    let log2_failure_bound = miss.iter().map(|p| p.log2()).sum::<f64>() + log2_rectangles;
    Ok(ConstructionCertificate {
        n,
        k,
        mode,
        log2_failure_bound,
        log2_rectangles,
        certified: log2_failure_bound < 0.0,
        miss,
    })
}

pub fn random_family_with<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    sizes: &[(usize, usize)],
    rng: &mut R,
) -> Result<BicliqueFamily> {
    check_sizes(n, sizes)?;
    let bicliques = sizes
        .iter()
        .map(|&(m, m2)| Biclique {
            left: VertexSet {
                side: Side::Left,
                members: sample_subset(rng, n, m),
            },
            right: VertexSet {
                side: Side::Right,
                members: sample_subset(rng, n, m2),
            },
        })
        .collect();
    BicliqueFamily::new(n, k, bicliques)
}

/// Independent uniform placement of every biclique; deterministic in `source`.
pub fn random_family(n: usize, k: usize, sizes: &[(usize, usize)], source: &RandomSource) -> Result<BicliqueFamily> {
    random_family_with(n, k, sizes, &mut source.rng())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionStatus {
    /// The witness search proved there is no `k×k` independent set.
    Verified,
    /// The witness search ran out of budget.
    Unverified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub family: BicliqueFamily,
    pub attempts: usize,
    pub status: ConstructionStatus,
    pub verification: WitnessResult,
    pub source: RandomSource,
}

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("no verified family after {attempts} attempts")]
    Exhausted {
        attempts: usize,
        family: Box<BicliqueFamily>,
        witness: Box<WitnessResult>,
    },
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Draws families until one has no `k×k` independent set.
///
/// An attempt whose search runs out of budget is returned as
/// [`ConstructionStatus::Unverified`].
pub fn construct_until_verified(
    n: usize,
    k: usize,
    sizes: &[(usize, usize)],
    source: &RandomSource,
    max_attempts: usize,
    witness: &WitnessConfig,
) -> Result<Construction, ConstructError> {
    if max_attempts == 0 {
        return Err(Error::param("max_attempts must be at least 1").into());
    }
    let mut rng = source.rng();
    let mut last = None;
    for attempt in 1..=max_attempts {
        let family = random_family_with(n, k, sizes, &mut rng)?;
        let result = has_kxk_independent_set(&union_of(&family), k, witness)?;
        let status = match result.verdict() {
            Verdict::Absent => ConstructionStatus::Verified,
            Verdict::Unknown => ConstructionStatus::Unverified,
            Verdict::Found => {
                last = Some((family, result));
                continue;
            }
        };
        return Ok(Construction {
            family,
            attempts: attempt,
            status,
            verification: result,
            source: *source,
        });
    }
    let (family, witness) = last.expect("at least one attempt ran");
    Err(ConstructError::Exhausted {
        attempts: max_attempts,
        family: Box::new(family),
        witness: Box::new(witness),
    })
}
