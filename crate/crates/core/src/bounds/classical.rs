//! Exact classical bounds over deterministic hidden-variable strategies.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::ProductOrbit;
use crate::scalar::Real;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Bob assignments per parallel work unit.
const CHUNK: u64 = 4096;

/// One outcome per observable for each party: `alice[α]`, `bob[β]` in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DeterministicStrategy {
    pub alice: Vec<usize>,
    pub bob: Vec<usize>,
}

/// The orbit terms `(α, l; β, l')` reduced to labels.
#[derive(Clone, Debug)]
pub struct TermTable {
    num_observables: usize,
    num_outcomes: usize,
    /// `targets[α·m + l]`: Bob labels `(β, l')` paired with Alice's `(α, l)`, over all orbits.
    targets: Vec<Vec<(usize, usize)>>,
}

impl TermTable {
    pub fn new<T: Real>(orbits: &[ProductOrbit<T>]) -> Result<Self> {
        let first = orbits
            .first()
            .ok_or_else(|| Error::Config("at least one orbit is required".into()))?;
        let (k, m) = (first.num_blocks(), first.block_size());
        let mut targets = vec![Vec::with_capacity(orbits.len()); k * m];
        for orbit in orbits {
            if (orbit.num_blocks(), orbit.block_size()) != (k, m) {
                return Err(Error::Dimension(
                    "orbits use different coset labelings".into(),
                ));
            }
            for ((a, l), (b, lb)) in orbit.pairs().iter() {
                targets[a * m + l].push((b, lb));
            }
        }
        Ok(Self {
            num_observables: k,
            num_outcomes: m,
            targets,
        })
    }

    pub fn num_observables(&self) -> usize {
        self.num_observables
    }

    pub fn num_outcomes(&self) -> usize {
        self.num_outcomes
    }

    /// `c(a, b)`: number of orbit terms hit by the joint configuration.
    pub fn hits(&self, strategy: &DeterministicStrategy) -> usize {
        let m = self.num_outcomes;
        (0..self.num_observables)
            .map(|a| {
                let l = strategy.alice[a];
                self.targets[a * m + l]
                    .iter()
                    .filter(|&&(b, lb)| strategy.bob[b] == lb)
                    .count()
            })
            .sum()
    }

    fn check_strategy(&self, s: &DeterministicStrategy) -> Result<()> {
        let k = self.num_observables;
        let ok = s.alice.len() == k
            && s.bob.len() == k
            && s.alice.iter().chain(&s.bob).all(|&l| l < self.num_outcomes);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidDistribution(format!(
                "strategy must assign an outcome in 0..{} to each of {k} observables per party",
                self.num_outcomes
            )))
        }
    }

    /// Best Alice response to a fixed Bob assignment, smallest outcome on ties.
    fn best_response(&self, bob: &[usize], alice: &mut [usize]) -> usize {
        let m = self.num_outcomes;
        let mut total = 0;
        for (a, slot) in alice.iter_mut().enumerate() {
            let mut best = (0, 0);
            for l in 0..m {
                let c = self.targets[a * m + l]
                    .iter()
                    .filter(|&&(b, lb)| bob[b] == lb)
                    .count();
                if c > best.0 {
                    best = (c, l);
                }
            }
            *slot = best.1;
            total += best.0;
        }
        total
    }
}

fn count(m: usize, k: usize) -> f64 {
    (m as f64).powi(k as i32)
}

fn decode(mut index: u64, m: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % m as u64) as usize;
        index /= m as u64;
    }
}

/// Maximum number of orbit terms a deterministic strategy can hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalBound {
    pub value: usize,
    pub strategy: DeterministicStrategy,
}

/// Enumerates all `m^k` Bob assignments and answers each with Alice's best
/// response. Ties go to the lexicographically smallest Bob assignment, then
/// the smallest Alice outcomes.
pub fn classical_bound<T: Real>(orbits: &[ProductOrbit<T>], budget: u64) -> Result<ClassicalBound> {
    let table = TermTable::new(orbits)?;
    let (k, m) = (table.num_observables, table.num_outcomes);
    let total = count(m, k);
    if total > budget as f64 {
        return Err(Error::Budget {
            count: total,
            budget,
            detail: format!("m^k Bob assignments with m = {m} outcomes and k = {k} observables"),
        });
    }
    let total = total as u64;
    let chunks = total.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut bob = vec![0; k];
            let mut alice = vec![0; k];
            let mut best: Option<(usize, u64)> = None;
            for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
                decode(index, m, &mut bob);
                let score = table.best_response(&bob, &mut alice);
                if best.is_none_or(|(s, _)| score > s) {
                    best = Some((score, index));
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }),
                (x, None) => x,
                (None, y) => y,
            },
        )
        .expect("at least one Bob assignment");
    let mut bob = vec![0; k];
    decode(best.1, m, &mut bob);
    let mut alice = vec![0; k];
    let value = table.best_response(&bob, &mut alice);
    debug_assert_eq!(value, best.0);
    Ok(ClassicalBound {
        value,
        strategy: DeterministicStrategy { alice, bob },
    })
}

/// Cross-check: maximizes `c(a, b)` over all `m^{2k}` joint configurations.
pub fn classical_bound_exhaustive<T: Real>(
    orbits: &[ProductOrbit<T>],
    budget: u64,
) -> Result<ClassicalBound> {
    let table = TermTable::new(orbits)?;
    let (k, m) = (table.num_observables, table.num_outcomes);
    let total = count(m, 2 * k);
    if total > budget as f64 {
        return Err(Error::Budget {
            count: total,
            budget,
            detail: format!("m^(2k) joint configurations with m = {m}, k = {k}"),
        });
    }
    let mut joint = vec![0; 2 * k];
    let mut best: Option<ClassicalBound> = None;
    for index in 0..total as u64 {
        decode(index, m, &mut joint);
        // Bob's digits are the more significant half.
        let strategy = DeterministicStrategy {
            alice: joint[k..].to_vec(),
            bob: joint[..k].to_vec(),
        };
        let value = table.hits(&strategy);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(ClassicalBound { value, strategy });
        }
    }
    Ok(best.expect("at least one configuration"))
}

/// Sparse joint distribution over deterministic configurations; omitted ones have probability 0.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    pub support: Vec<(DeterministicStrategy, f64)>,
}

impl JointDistribution {
    pub fn point_mass(strategy: DeterministicStrategy) -> Self {
        Self {
            support: vec![(strategy, 1.0)],
        }
    }
}

/// `S = Σ c(a, b) p(a, b)`.
pub fn evaluate_classical_s<T: Real>(
    orbits: &[ProductOrbit<T>],
    p: &JointDistribution,
) -> Result<f64> {
    let table = TermTable::new(orbits)?;
    let mut total = 0.0;
    let mut s = 0.0;
    for (strategy, prob) in &p.support {
        if !(prob.is_finite() && *prob >= 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "probability {prob} is not a nonnegative number"
            )));
        }
        table.check_strategy(strategy)?;
        total += prob;
        s += *prob * table.hits(strategy) as f64;
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {total}, expected 1"
        )));
    }
    Ok(s)
}
