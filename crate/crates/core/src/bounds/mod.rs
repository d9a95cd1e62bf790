//! Classical and quantum bounds on the orbit probability sum `S`.

pub mod classical;
pub mod matching;
pub mod quantum;

pub use classical::{
    classical_bound, classical_bound_exhaustive, evaluate_classical_s, ClassicalBound,
    DeterministicStrategy, JointDistribution, TermTable, DEFAULT_BUDGET,
};
pub use matching::{hall_condition, hall_matching, HallMatching};
pub use quantum::{
    chi_eigenvalue, eigenvalues_by_irrep, evaluate_quantum_s, irrep_spectrum, BellOperator,
    IrrepEigenvalue,
};

use crate::error::{Error, Result};
use crate::orbit::ProductOrbit;
use crate::representation::Representation;
use crate::scalar::Real;

/// Both bounds for a set of product orbits, with their certificates.
#[derive(Clone, Debug)]
pub struct BoundsReport<T> {
    pub classical_bound: usize,
    pub optimal_strategy: DeterministicStrategy,
    /// Present for single-orbit scenarios.
    pub hall_matching: Option<HallMatching>,
    pub quantum_bound: T,
    pub witness: Vec<T>,
    pub spectrum: Vec<T>,
    /// Closed-form per-irrep eigenvalues, when `D ⊗ D` is multiplicity-free and characters are known.
    pub irrep_eigenvalues: Option<Vec<IrrepEigenvalue<T>>>,
    /// Why `irrep_eigenvalues` is missing.
    pub irrep_note: Option<String>,
    pub chi_eigenvalue: T,
    pub violation: bool,
    pub margin: T,
}

pub fn analyze<T: Real>(
    rep: &Representation<T>,
    orbits: &[ProductOrbit<T>],
    budget: u64,
) -> Result<BoundsReport<T>> {
    analyze_with_threshold(rep, orbits, budget, T::violation_threshold())
}

pub fn analyze_with_threshold<T: Real>(
    rep: &Representation<T>,
    orbits: &[ProductOrbit<T>],
    budget: u64,
    violation_threshold: T,
) -> Result<BoundsReport<T>> {
    let operator = BellOperator::assemble(orbits).map_err(|e| e.at("quantum bound"))?;
    let (quantum_bound, witness) = operator.quantum_bound();
    let hall = match orbits {
        [single] => Some(hall_matching(single).map_err(|e| e.at("Hall matching"))?),
        _ => None,
    };
    // A single orbit hits at most one term per Alice observable, so a perfect
    // matching is already optimal and no enumeration is needed.
    let classical = match &hall {
        Some(h) => ClassicalBound {
            value: h.pairs.len(),
            strategy: h.strategy.clone(),
        },
        None => classical_bound(orbits, budget).map_err(|e| e.at("classical bound"))?,
    };
    let (irrep_eigenvalues, irrep_note) = match eigenvalues_by_irrep(orbits, rep) {
        Ok(values) => (Some(values), None),
        Err(e @ (Error::Multiplicity { .. } | Error::Character(_))) => (None, Some(e.to_string())),
        Err(e) => return Err(e.at("irrep eigenvalues")),
    };
    let margin = quantum_bound - T::lit(classical.value as f64);
    Ok(BoundsReport {
        classical_bound: classical.value,
        optimal_strategy: classical.strategy,
        hall_matching: hall,
        quantum_bound,
        witness,
        spectrum: operator.eigenvalues().to_vec(),
        irrep_eigenvalues,
        irrep_note,
        chi_eigenvalue: chi_eigenvalue(orbits),
        violation: margin > violation_threshold,
        margin,
    })
}
