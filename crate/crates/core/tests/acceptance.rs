//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line before asserting.

use std::sync::Arc;
use std::time::{Duration, Instant};

use orbitbell::bounds::{
    analyze, chi_eigenvalue, classical_bound, classical_bound_exhaustive, eigenvalues_by_irrep,
    evaluate_classical_s, hall_matching, irrep_spectrum, BellOperator, JointDistribution,
    DEFAULT_BUDGET,
};
use orbitbell::linalg::max_abs_diff_vec;
use orbitbell::orbit::{seed_constraint_rank, seed_constraints, solve_seed, LabeledOrbit};
use orbitbell::perm_group::{CosetDecomposition, CyclicSubgroup, Permutation};
use orbitbell::representation::Representation;
use orbitbell::scenario::{CheckStatus, Scenario, ScenarioConfig};

const TOL: f64 = 1e-9;
const VIOLATION: f64 = 1e-7;

fn setup(n: usize) -> (Representation<f64>, LabeledOrbit<f64>) {
    let rep = Representation::<f64>::standard(n).unwrap();
    let g = rep.group();
    let cycle: Vec<usize> = (0..n - 1).collect();
    let h = CyclicSubgroup::generated_by(g, &Permutation::cycle(n, &cycle).unwrap()).unwrap();
    let dec = Arc::new(CosetDecomposition::new(g, &h));
    let orbit = LabeledOrbit::build(&rep, solve_seed(n).unwrap(), dec).unwrap();
    (rep, orbit)
}

fn verdict(id: u32, name: &str, failures: &[String], elapsed: Duration, limit: Duration) {
    let mut failures = failures.to_vec();
    if elapsed > limit {
        failures.push(format!("runtime {elapsed:?} exceeds {limit:?}"));
    }
    if failures.is_empty() {
        println!("criterion {id} PASS {name} ({elapsed:.2?})");
    } else {
        println!(
            "criterion {id} FAIL {name} ({elapsed:.2?}): {}",
            failures.join("; ")
        );
    }
    assert!(
        failures.is_empty(),
        "criterion {id} failed: {}",
        failures.join("; ")
    );
}

#[test]
fn criterion_1_s3_single_orbit_no_violation() {
    let start = Instant::now();
    let (rep, o) = setup(3);
    let g = rep.group();
    let mut failures = Vec::new();
    for shift in 0..g.order() {
        let orbits = [o.product_orbit(shift)];
        let enumerated = classical_bound(&orbits, DEFAULT_BUDGET).unwrap().value;
        let report = analyze(&rep, &orbits, DEFAULT_BUDGET).unwrap();
        if enumerated != 3 || report.classical_bound != 3 {
            failures.push(format!("{}: classical {enumerated}", g.element(shift)));
        }
        if (report.quantum_bound - 3.0).abs() > TOL {
            failures.push(format!(
                "{}: quantum {:.12}",
                g.element(shift),
                report.quantum_bound
            ));
        }
        if report.violation {
            failures.push(format!("{}: violation", g.element(shift)));
        }
    }
    verdict(
        1,
        "S_3 single orbit: classical 3, quantum 3",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_s4_single_orbit_no_violation() {
    let start = Instant::now();
    let (rep, o) = setup(4);
    let g = rep.group();
    let mut failures = Vec::new();
    for shift in 0..g.order() {
        let orbits = [o.product_orbit(shift)];
        let classical = classical_bound(&orbits, DEFAULT_BUDGET).unwrap().value;
        let quantum = BellOperator::assemble(&orbits).unwrap().quantum_bound().0;
        if classical != 8 {
            failures.push(format!("{}: classical {classical}", g.element(shift)));
        }
        if quantum > 8.0 + TOL {
            failures.push(format!("{}: quantum {quantum:.12}", g.element(shift)));
        }
    }
    verdict(
        2,
        "S_4 single orbit: classical 8, quantum ≤ 8",
        &failures,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_3_hall_saturation() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [3, 4] {
        let (rep, o) = setup(n);
        let k = o.num_blocks();
        for shift in 0..rep.group().order() {
            let p = o.product_orbit(shift);
            match hall_matching(&p) {
                Ok(h) => {
                    let s = evaluate_classical_s(
                        std::slice::from_ref(&p),
                        &JointDistribution::point_mass(h.strategy),
                    )
                    .unwrap();
                    if h.pairs.len() != k || s != k as f64 {
                        failures.push(format!(
                            "S_{n} {}: size {}, S = {s}",
                            rep.group().element(shift),
                            h.pairs.len()
                        ));
                    }
                }
                Err(e) => failures.push(format!("S_{n} {}: {e}", rep.group().element(shift))),
            }
        }
    }
    verdict(
        3,
        "Hall matching saturates S = k",
        &failures,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_4_irrep_eigenvalues_match_spectrum() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [3, 4] {
        let (rep, o) = setup(n);
        let order = rep.group().order();
        let mut scenarios: Vec<Vec<usize>> = (0..order).map(|s| vec![s]).collect();
        scenarios.extend((0..order).map(|s| vec![0, s]));
        for shifts in scenarios {
            let orbits: Vec<_> = shifts.iter().map(|&s| o.product_orbit(s)).collect();
            let x = BellOperator::assemble(&orbits).unwrap();
            let values = match eigenvalues_by_irrep(&orbits, &rep) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("S_{n} {shifts:?}: {e}"));
                    continue;
                }
            };
            let dev = max_abs_diff_vec(&irrep_spectrum(&values), x.eigenvalues());
            let weighted: f64 = values.iter().map(|v| v.degree as f64 * v.value).sum();
            let trace = (order * orbits.len()) as f64;
            if dev > TOL || (weighted - trace).abs() > TOL {
                failures.push(format!(
                    "S_{n} {shifts:?}: spectrum deviation {dev:e}, Σ d x = {weighted}"
                ));
            }
        }
    }
    verdict(
        4,
        "per-irrep eigenvalues reproduce the spectrum",
        &failures,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_5_chi_witness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [3, 4] {
        let (rep, o) = setup(n);
        let k = o.num_blocks() as f64;
        for shift in 0..rep.group().order() {
            let orbits = [o.product_orbit(shift)];
            let x = BellOperator::assemble(&orbits).unwrap();
            let (residual, lambda) = x.chi_residual(&orbits);
            if residual >= TOL || lambda > k + TOL || (lambda - chi_eigenvalue(&orbits)).abs() > 0.0
            {
                failures.push(format!(
                    "S_{n} {}: residual {residual:e}, λ = {lambda}",
                    rep.group().element(shift)
                ));
            }
        }
    }
    verdict(
        5,
        "χ is an eigenvector with λ ≤ k",
        &failures,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_6_two_orbit_s3_scan() {
    let start = Instant::now();
    let scenario = Scenario::new(ScenarioConfig::symmetric(3)).unwrap();
    let scan = scenario.run_scan().unwrap();
    let orbit = scenario.orbit().unwrap();
    let mut failures = Vec::new();
    if scan.rows.len() != 6 {
        failures.push(format!("{} rows", scan.rows.len()));
    }
    for row in &scan.rows {
        let orbits = [orbit.product_orbit(0), orbit.product_orbit(row.element)];
        let brute = classical_bound_exhaustive(&orbits, DEFAULT_BUDGET)
            .unwrap()
            .value;
        if brute != row.classical {
            failures.push(format!(
                "{}: scan classical {} vs brute force {brute}",
                row.shift.cycles, row.classical
            ));
        }
        if (row.margin - (row.quantum - row.classical as f64)).abs() > 0.0
            || row.violation != (row.margin > VIOLATION)
        {
            failures.push(format!("{}: inconsistent margin", row.shift.cycles));
        }
    }
    let violating: Vec<&str> = scan.violating().map(|r| r.shift.cycles.as_str()).collect();
    if violating.is_empty() {
        failures.push("no violating shift".into());
    }
    let classes: Vec<_> = scan.classes.iter().filter(|c| c.violation).collect();
    if classes.len() != 1 || classes[0].members.len() != violating.len() {
        failures.push(format!(
            "violating shifts {violating:?} form {} classes",
            classes.len()
        ));
    }
    println!("  violating shifts {violating:?}");
    for row in &scan.rows {
        println!(
            "  {:<8} classical {} quantum {:.12}",
            row.shift.cycles, row.classical, row.quantum
        );
    }
    verdict(
        6,
        "S_3 two-orbit scan: one violating class",
        &failures,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_7_property_suites() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [3, 4] {
        let ledger = Scenario::new(ScenarioConfig::symmetric(n))
            .unwrap()
            .run_verify();
        for check in &ledger.checks {
            if check.status == CheckStatus::Fail {
                failures.push(format!("S_{n} {}: {}", check.name, check.detail));
            }
        }
        let required = [
            "representation.homomorphism",
            "representation.orthogonality",
            "orbit.gram",
            "bell.shift_commutator",
            "bell.symmetry_commutator",
        ];
        for name in required {
            if ledger.check(name).map(|c| c.status) != Some(CheckStatus::Pass) {
                failures.push(format!("S_{n} {name} did not pass"));
            }
        }
        if n == 3
            && ledger.check("classical.brute_force").map(|c| c.status) != Some(CheckStatus::Pass)
        {
            failures.push("S_3 brute-force cross-check did not run".into());
        }
    }
    for n in 3..=6 {
        let x = solve_seed::<f64>(n).unwrap().ambient.unwrap();
        let residual = seed_constraints(&x)
            .iter()
            .fold(0.0f64, |a, r| a.max(r.abs()));
        let rank = seed_constraint_rank(&x).unwrap();
        if residual >= TOL || rank != (n - 1) / 2 {
            failures.push(format!("n = {n}: residual {residual:e}, rank {rank}"));
        }
    }
    verdict(
        7,
        "property suites",
        &failures,
        start.elapsed(),
        Duration::from_secs(10),
    );
}
