//! Hall-matching certificate that a single orbit reaches the classical bound `k`.
//!
//! The bipartite graph Γ has Alice's cosets on one side and Bob's on the
//! other; `α ~ β` when some `(α, l)` is sent into coset `β` by the pair
//! permutation. A perfect matching picks one outcome per observable so that
//! the `k` chosen terms land on distinct Bob observables.

use crate::bounds::classical::DeterministicStrategy;
use crate::error::{Error, Result};
use crate::orbit::ProductOrbit;
use crate::scalar::Real;

/// Subsets are enumerated only up to this many cosets.
pub const HALL_SUBSET_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallMatching {
    /// `(α, l^(α))` for each Alice observable.
    pub pairs: Vec<(usize, usize)>,
    /// Bob observable matched to each `α`.
    pub partner: Vec<usize>,
    /// Configuration `{(α, l^(α)), (α, l^(α))·g̃}` saturating the bound.
    pub strategy: DeterministicStrategy,
}

fn adjacency<T: Real>(orbit: &ProductOrbit<T>) -> Vec<Vec<usize>> {
    let (k, m) = (orbit.num_blocks(), orbit.block_size());
    (0..k)
        .map(|a| {
            let mut nbrs: Vec<usize> = (0..m).map(|l| orbit.bob_label(a, l).0).collect();
            nbrs.sort_unstable();
            nbrs.dedup();
            nbrs
        })
        .collect()
}

fn augment(
    a: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    match_of_b: &mut [Option<usize>],
) -> bool {
    for &b in &adj[a] {
        if visited[b] {
            continue;
        }
        visited[b] = true;
        if match_of_b[b].is_none_or(|other| augment(other, adj, visited, match_of_b)) {
            match_of_b[b] = Some(a);
            return true;
        }
    }
    false
}

/// Maximum matching by augmenting paths; errors if it is not perfect.
pub fn hall_matching<T: Real>(orbit: &ProductOrbit<T>) -> Result<HallMatching> {
    let k = orbit.num_blocks();
    let m = orbit.block_size();
    let adj = adjacency(orbit);
    let mut match_of_b: Vec<Option<usize>> = vec![None; k];
    let mut size = 0;
    for a in 0..k {
        let mut visited = vec![false; k];
        if augment(a, &adj, &mut visited, &mut match_of_b) {
            size += 1;
        }
    }
    if size < k {
        return Err(Error::Matching {
            found: size,
            expected: k,
        });
    }
    let mut partner = vec![0; k];
    for (b, a) in match_of_b.iter().enumerate() {
        partner[a.expect("perfect matching")] = b;
    }
    let mut alice = vec![0; k];
    let mut bob = vec![0; k];
    let mut pairs = Vec::with_capacity(k);
    for a in 0..k {
        let l = (0..m)
            .find(|&l| orbit.bob_label(a, l).0 == partner[a])
            .expect("edge exists");
        let (b, lb) = orbit.bob_label(a, l);
        alice[a] = l;
        bob[b] = lb;
        pairs.push((a, l));
    }
    Ok(HallMatching {
        pairs,
        partner,
        strategy: DeterministicStrategy { alice, bob },
    })
}

/// Checks `|C| ≤ |N_Γ(C)|` for every nonempty subset `C` of Alice's cosets.
/// Returns the first violating subset as a bitmask.
pub fn hall_condition<T: Real>(orbit: &ProductOrbit<T>) -> Result<Option<u64>> {
    let k = orbit.num_blocks();
    if k > HALL_SUBSET_LIMIT {
        return Err(Error::Budget {
            count: 2f64.powi(k as i32) - 1.0,
            budget: (1u64 << HALL_SUBSET_LIMIT) - 1,
            detail: format!("Hall subsets of {k} cosets"),
        });
    }
    let masks: Vec<u64> = adjacency(orbit)
        .iter()
        .map(|nbrs| nbrs.iter().fold(0u64, |acc, &b| acc | (1 << b)))
        .collect();
    for subset in 1u64..(1 << k) {
        let neighbourhood = (0..k)
            .filter(|&a| subset >> a & 1 == 1)
            .fold(0u64, |acc, a| acc | masks[a]);
        if neighbourhood.count_ones() < subset.count_ones() {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}
