//! Pass/fail ledger of every invariant the pipeline relies on.

use serde::Serialize;

use super::report::round_sig;
use super::{Scenario, SCHEMA_VERSION};
use crate::bounds::{
    classical_bound, classical_bound_exhaustive, eigenvalues_by_irrep, evaluate_classical_s,
    hall_condition, hall_matching, irrep_spectrum, BellOperator, JointDistribution,
};
use crate::linalg::{max_abs_diff_vec, norm};
use crate::orbit::{check_regular, seed_constraint_rank, seed_constraints, ProductOrbit};
use crate::perm_group::Permutation;

/// Joint configurations the brute-force cross-check may enumerate.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Largest group whose every shift is checked.
pub const ALL_SHIFTS_LIMIT: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub detail: String,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn within(name: &str, value: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        let status = if value <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name: name.into(),
            status,
            value: Some(round_sig(value, 6)),
            tolerance: Some(tolerance),
            detail: detail.into(),
        }
    }

    pub fn boolean(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name: name.into(),
            status,
            value: None,
            tolerance: None,
            detail: detail.into(),
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        Self::boolean(name, false, detail)
    }

    pub fn skip(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Skip,
            value: None,
            tolerance: None,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyLedger {
    pub schema_version: u32,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyLedger {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            passed: checks.iter().all(Check::passed),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}

fn max_over<I: IntoIterator<Item = (String, f64)>>(items: I) -> (String, f64) {
    items
        .into_iter()
        .fold((String::new(), f64::NEG_INFINITY), |best, x| {
            if x.1 > best.1 {
                x
            } else {
                best
            }
        })
}

pub(super) fn run(scenario: &Scenario) -> VerifyLedger {
    let tol = scenario.tolerance();
    let rep = scenario.representation();
    let group = scenario.group();
    let n = group.degree();
    let order = group.order();
    let mut checks = Vec::new();

    let ((a, b), dev) = rep.homomorphism_deviation();
    checks.push(Check::within(
        "representation.homomorphism",
        dev,
        tol,
        format!(
            "max ‖D(ab) − D(a)D(b)‖ at a = {}, b = {}",
            group.element(a),
            group.element(b)
        ),
    ));
    let (g, dev) = rep.orthogonality_deviation();
    checks.push(Check::within(
        "representation.orthogonality",
        dev,
        tol,
        format!("max ‖D(g)ᵀD(g) − I‖ at g = {}", group.element(g)),
    ));

    let seed = scenario.seed();
    let default_generator = Permutation::cycle(n, &(0..n - 1).collect::<Vec<_>>())
        .ok()
        .and_then(|p| group.index_of(&p).ok())
        .is_some_and(|g| g == scenario.subgroup().generator());
    match (&seed.ambient, default_generator && rep.dim() + 1 == n) {
        (Some(x), true) => {
            let residual = seed_constraints(x)
                .iter()
                .fold(0.0f64, |acc, r| acc.max(r.abs()));
            checks.push(Check::within(
                "seed.constraints",
                residual,
                tol,
                "max seed-equation residual",
            ));
            let expected = (n - 1) / 2;
            match seed_constraint_rank(x) {
                Ok(rank) => checks.push(Check::boolean(
                    "seed.constraint_rank",
                    rank == expected,
                    format!("rank {rank}, expected {expected}"),
                )),
                Err(e) => checks.push(Check::fail("seed.constraint_rank", e.to_string())),
            }
        }
        _ => {
            checks.push(Check::skip(
                "seed.constraints",
                "only defined for the standard representation and default generator",
            ));
            checks.push(Check::skip(
                "seed.constraint_rank",
                "only defined for the standard representation and default generator",
            ));
        }
    }

    let regularity = check_regular(rep, seed);
    checks.push(match regularity.collision {
        None => Check::boolean(
            "orbit.regularity",
            true,
            match regularity.min_distance {
                Some(d) => format!("{order} distinct images, min distance {d:.3e}"),
                None => format!("{order} distinct images"),
            },
        ),
        Some((a, b, d)) => Check::fail(
            "orbit.regularity",
            format!(
                "images of {} and {} coincide (distance {d:.3e})",
                group.element(a),
                group.element(b)
            ),
        ),
    });

    let orbit = match scenario.orbit() {
        Ok(orbit) => orbit,
        Err(e) => {
            checks.push(Check::fail("orbit.build", e.to_string()));
            return VerifyLedger::from_checks(checks);
        }
    };
    let (block, i, j, dev) = orbit.worst_gram_entry().unwrap_or((0, 0, 0, 0.0));
    checks.push(Check::within(
        "orbit.gram",
        dev,
        tol,
        format!(
            "{} blocks of {}; worst entry ({}, {}) in block {}",
            orbit.num_blocks(),
            orbit.block_size(),
            i + 1,
            j + 1,
            block + 1
        ),
    ));

    let k = orbit.num_blocks();
    let m = orbit.block_size();
    // every shift for small groups, else the identity and the configured ones
    let mut scanned: Vec<usize> = if order <= ALL_SHIFTS_LIMIT {
        (0..order).collect()
    } else {
        [0].into_iter()
            .chain(scenario.shifts().iter().copied())
            .collect()
    };
    scanned.sort_unstable();
    scanned.dedup();
    let singles: Vec<ProductOrbit<f64>> = scanned.iter().map(|&g| orbit.product_orbit(g)).collect();
    let operators: Vec<BellOperator<f64>> = match singles
        .iter()
        .map(|o| BellOperator::assemble(std::slice::from_ref(o)))
        .collect()
    {
        Ok(ops) => ops,
        Err(e) => {
            checks.push(Check::fail("quantum.eigensolve", e.to_string()));
            return VerifyLedger::from_checks(checks);
        }
    };
    let label = |g: usize| group.element(g).to_string();

    let (at, dev) = max_over(
        (0..singles.len()).map(|g| (label(scanned[g]), operators[g].symmetry_commutator(rep))),
    );
    checks.push(Check::within(
        "bell.symmetry_commutator",
        dev,
        tol,
        format!("max_g,g̃ ‖[X(g̃), D(g)⊗D(g)]‖, worst g̃ = {at}"),
    ));
    let (at, dev) = max_over((0..singles.len()).map(|g| {
        (
            label(scanned[g]),
            operators[0]
                .matrix()
                .commutator(operators[g].matrix())
                .max_abs(),
        )
    }));
    checks.push(Check::within(
        "bell.shift_commutator",
        dev,
        tol,
        format!("max_g̃ ‖[X(e), X(g̃)]‖, worst g̃ = {at}"),
    ));
    let (at, dev) = max_over((0..singles.len()).map(|g| {
        let x = &operators[g];
        (
            label(scanned[g]),
            (x.matrix().trace() - x.expected_trace()).abs(),
        )
    }));
    checks.push(Check::within(
        "bell.trace",
        dev,
        tol,
        format!("|Tr X(g̃) − |G||, worst g̃ = {at}"),
    ));

    if k <= crate::bounds::matching::HALL_SUBSET_LIMIT {
        let failures: Vec<String> = singles
            .iter()
            .filter(|o| !matches!(hall_condition(o), Ok(None)))
            .map(|o| label(o.shift()))
            .collect();
        checks.push(Check::boolean(
            "classical.hall_condition",
            failures.is_empty(),
            format!("{} shifts failing: {failures:?}", failures.len()),
        ));
    } else {
        checks.push(Check::skip(
            "classical.hall_condition",
            format!("{k} cosets exceed the subset limit"),
        ));
    }
    let mut bad = Vec::new();
    for o in &singles {
        let ok = hall_matching(o).ok().is_some_and(|h| {
            h.pairs.len() == k
                && evaluate_classical_s(
                    std::slice::from_ref(o),
                    &JointDistribution::point_mass(h.strategy),
                )
                .ok()
                    == Some(k as f64)
        });
        if !ok {
            bad.push(label(o.shift()));
        }
    }
    checks.push(Check::boolean(
        "classical.hall_matching",
        bad.is_empty(),
        format!("perfect matchings saturating S = {k}; failing: {bad:?}"),
    ));

    let configured: Vec<ProductOrbit<f64>> = scenario
        .shifts()
        .iter()
        .map(|&s| orbit.product_orbit(s))
        .collect();
    let joint = (m as f64).powi(2 * k as i32);
    if joint <= BRUTE_FORCE_LIMIT as f64 {
        let mut scenarios: Vec<Vec<ProductOrbit<f64>>> =
            singles.iter().map(|o| vec![o.clone()]).collect();
        scenarios.extend(singles.iter().map(|o| vec![singles[0].clone(), o.clone()]));
        scenarios.push(configured.clone());
        let mismatches = scenarios
            .iter()
            .filter(|os| {
                let smart = classical_bound(os, u64::MAX);
                let brute = classical_bound_exhaustive(os, u64::MAX);
                !matches!((smart, brute), (Ok(a), Ok(b)) if a == b)
            })
            .count();
        checks.push(Check::boolean(
            "classical.brute_force",
            mismatches == 0,
            format!(
                "{} scenarios × {joint} joint configurations, {mismatches} mismatches",
                scenarios.len()
            ),
        ));
    } else {
        checks.push(Check::skip(
            "classical.brute_force",
            format!("{joint:e} joint configurations exceed {BRUTE_FORCE_LIMIT}"),
        ));
    }

    match BellOperator::assemble(&configured) {
        Ok(x) => {
            let (lambda, w) = x.quantum_bound();
            let xw = x.matrix().mul_vec(&w);
            let r: Vec<f64> = xw.iter().zip(&w).map(|(a, b)| a - lambda * b).collect();
            checks.push(Check::within(
                "quantum.witness",
                norm(&r),
                tol,
                format!("‖Xw − λw‖ with λ = {lambda:.12}"),
            ));
            let (res, chi) = x.chi_residual(&configured);
            checks.push(Check::within(
                "quantum.chi_residual",
                res,
                tol,
                format!("‖Xχ − λχ‖ with λ = {chi:.12}"),
            ));
            match eigenvalues_by_irrep(&configured, rep) {
                Ok(values) => {
                    let spectrum = irrep_spectrum(&values);
                    let dev = if spectrum.len() == x.eigenvalues().len() {
                        max_abs_diff_vec(&spectrum, x.eigenvalues())
                    } else {
                        f64::INFINITY
                    };
                    checks.push(Check::within(
                        "quantum.spectrum",
                        dev,
                        tol,
                        "per-irrep eigenvalues vs direct eigensolve",
                    ));
                    let weighted: f64 = values.iter().map(|v| v.degree as f64 * v.value).sum();
                    checks.push(Check::within(
                        "quantum.spectrum_trace",
                        (weighted - x.expected_trace()).abs(),
                        tol,
                        "Σ d_s x_s vs |G| × #orbits",
                    ));
                }
                Err(e) => {
                    checks.push(Check::skip("quantum.spectrum", e.to_string()));
                    checks.push(Check::skip("quantum.spectrum_trace", e.to_string()));
                }
            }
        }
        Err(e) => checks.push(Check::fail("quantum.eigensolve", e.to_string())),
    }

    let kf = k as f64;
    let (at, worst) = max_over((0..singles.len()).map(|g| {
        (
            label(scanned[g]),
            crate::bounds::chi_eigenvalue(std::slice::from_ref(&singles[g])) - kf,
        )
    }));
    checks.push(Check::within(
        "quantum.chi_bound",
        worst,
        tol,
        format!("max_g̃ λ_χ − k, worst g̃ = {at}"),
    ));
    let (at, worst) = max_over(
        (0..singles.len()).map(|g| (label(scanned[g]), operators[g].quantum_bound().0 - kf)),
    );
    checks.push(Check::within(
        "bounds.single_orbit",
        worst,
        scenario.violation_threshold(),
        format!("max_g̃ λ_max(X(g̃)) − k, worst g̃ = {at}"),
    ));

    VerifyLedger::from_checks(checks)
}
