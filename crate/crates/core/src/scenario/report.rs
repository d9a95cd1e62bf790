//! JSON report documents. Reals are rounded to 15 significant digits and all
//! labels are 1-based.

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use super::{Scenario, SCHEMA_VERSION};
use crate::bounds::{BoundsReport, DeterministicStrategy, HallMatching};
use crate::orbit::LabeledOrbit;
use crate::perm_group::GroupTable;

/// Rounds to `digits` significant digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub(crate) fn real<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x, 15))
}

pub(crate) fn reals<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round_sig(x, 15)))
}

fn opt_reals<S: Serializer>(xs: &Option<Vec<f64>>, s: S) -> Result<S::Ok, S::Error> {
    match xs {
        Some(xs) => reals(xs, s),
        None => s.serialize_none(),
    }
}

/// SHA-256 over the labeled orbit: generator, coset representatives,
/// then every `v_{αl}` at 12 significant digits.
pub fn orbit_hash(orbit: &LabeledOrbit<f64>) -> String {
    let group = orbit.group();
    let decomposition = orbit.decomposition();
    let mut hasher = Sha256::new();
    hasher.update(format!(
        "{:?}\n",
        group.element(decomposition.subgroup().generator()).images()
    ));
    for &r in decomposition.representatives() {
        hasher.update(format!("{:?}\n", group.element(r).images()));
    }
    for v in orbit.vectors() {
        let line: Vec<String> = v
            .iter()
            .map(|&x| format!("{:.11e}", round_sig(x, 12)))
            .collect();
        hasher.update(line.join(" "));
        hasher.update("\n");
    }
    hex::encode(hasher.finalize())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftDoc {
    pub cycles: String,
    /// 1-based one-line notation.
    pub one_line: Vec<usize>,
    pub order: usize,
}

impl ShiftDoc {
    pub fn new(group: &GroupTable, element: usize) -> Self {
        let p = group.element(element);
        Self {
            cycles: p.to_string(),
            one_line: p.images().iter().map(|i| i + 1).collect(),
            order: group.element_order(element),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeedDoc {
    #[serde(serialize_with = "opt_reals", skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<f64>>,
    #[serde(serialize_with = "reals")]
    pub coordinates: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub degree: usize,
    pub group_order: usize,
    pub generator: String,
    pub dim: usize,
    pub observables: usize,
    pub outcomes: usize,
    pub coset_representatives: Vec<String>,
    pub seed: SeedDoc,
    pub orbits: Vec<ShiftDoc>,
    pub orbit_hash: String,
}

impl ScenarioSummary {
    pub fn new(scenario: &Scenario, orbit: &LabeledOrbit<f64>, shifts: &[usize]) -> Self {
        let group = scenario.group();
        let decomposition = scenario.decomposition();
        Self {
            degree: group.degree(),
            group_order: group.order(),
            generator: group.element(scenario.subgroup().generator()).to_string(),
            dim: scenario.representation().dim(),
            observables: decomposition.num_cosets(),
            outcomes: decomposition.coset_size(),
            coset_representatives: decomposition
                .representatives()
                .iter()
                .map(|&r| group.element(r).to_string())
                .collect(),
            seed: SeedDoc {
                ambient: orbit.seed().ambient.clone(),
                coordinates: orbit.seed().coordinates.clone(),
            },
            orbits: shifts.iter().map(|&s| ShiftDoc::new(group, s)).collect(),
            orbit_hash: orbit_hash(orbit),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ObservableOutcome {
    pub observable: usize,
    pub outcome: usize,
}

/// Observable → outcome for each party.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyDoc {
    pub alice: Vec<ObservableOutcome>,
    pub bob: Vec<ObservableOutcome>,
}

impl From<&DeterministicStrategy> for StrategyDoc {
    fn from(s: &DeterministicStrategy) -> Self {
        let map = |xs: &[usize]| {
            xs.iter()
                .enumerate()
                .map(|(a, &l)| ObservableOutcome {
                    observable: a + 1,
                    outcome: l + 1,
                })
                .collect()
        };
        Self {
            alice: map(&s.alice),
            bob: map(&s.bob),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HallPairDoc {
    pub alice: ObservableOutcome,
    pub bob: ObservableOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalSection {
    pub bound: usize,
    pub strategy: StrategyDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hall_matching: Option<Vec<HallPairDoc>>,
}

fn hall_pairs(h: &HallMatching) -> Vec<HallPairDoc> {
    h.pairs
        .iter()
        .zip(&h.partner)
        .map(|(&(a, l), &b)| HallPairDoc {
            alice: ObservableOutcome {
                observable: a + 1,
                outcome: l + 1,
            },
            bob: ObservableOutcome {
                observable: b + 1,
                outcome: h.strategy.bob[b] + 1,
            },
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrrepDoc {
    pub label: String,
    pub degree: usize,
    #[serde(serialize_with = "real")]
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantumSection {
    #[serde(serialize_with = "real")]
    pub bound: f64,
    #[serde(serialize_with = "reals")]
    pub witness: Vec<f64>,
    #[serde(serialize_with = "reals")]
    pub spectrum: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irrep_eigenvalues: Option<Vec<IrrepDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irrep_note: Option<String>,
    #[serde(serialize_with = "real")]
    pub chi_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsDocument {
    pub schema_version: u32,
    pub scenario: ScenarioSummary,
    pub classical: ClassicalSection,
    pub quantum: QuantumSection,
    #[serde(serialize_with = "real")]
    pub margin: f64,
    #[serde(serialize_with = "real")]
    pub violation_threshold: f64,
    pub violation: bool,
}

impl BoundsDocument {
    pub fn new(scenario: &Scenario, orbit: &LabeledOrbit<f64>, report: &BoundsReport<f64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            scenario: ScenarioSummary::new(scenario, orbit, scenario.shifts()),
            classical: ClassicalSection {
                bound: report.classical_bound,
                strategy: (&report.optimal_strategy).into(),
                hall_matching: report.hall_matching.as_ref().map(hall_pairs),
            },
            quantum: QuantumSection {
                bound: report.quantum_bound,
                witness: report.witness.clone(),
                spectrum: report.spectrum.clone(),
                irrep_eigenvalues: report.irrep_eigenvalues.as_ref().map(|xs| {
                    xs.iter()
                        .map(|x| IrrepDoc {
                            label: x.label.clone(),
                            degree: x.degree,
                            value: x.value,
                        })
                        .collect()
                }),
                irrep_note: report.irrep_note.clone(),
                chi_eigenvalue: report.chi_eigenvalue,
            },
            margin: report.margin,
            violation_threshold: scenario.violation_threshold(),
            violation: report.violation,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2, 15), 0.3);
        assert_eq!(round_sig(-0.0, 15), 0.0);
        assert_eq!(round_sig(1.0e-300, 15), 1.0e-300);
        assert_eq!(round_sig(2.0 / 3.0, 3), 0.667);
        assert!(round_sig(f64::NAN, 15).is_nan());
    }
}
