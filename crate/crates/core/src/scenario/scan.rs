//! Two-orbit scans `{O_v(base), O_v(g̃)}` over every `g̃ ∈ G`.
//!
//! Equivalence of shifts is this crate's own definition. Two shifts are
//! related when one is the inverse of the other (swapping the parties) or
//! when they are conjugate by an element normalizing `H` (a relabeling that
//! maps cosets to cosets). A relation joins two classes only if both bounds
//! agree within tolerance; relations that fail that test are listed
//! separately instead.

use rayon::prelude::*;
use serde::Serialize;

use super::report::{real, ScenarioSummary, ShiftDoc};
use super::{Scenario, SCHEMA_VERSION};
use crate::bounds::{classical_bound, BellOperator};
use crate::error::Result;

pub const EQUIVALENCE_DEFINITION: &str =
    "shifts related by inversion (party swap) or by conjugation with an \
element of the normalizer of H, joined only when both bounds agree within tolerance";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    /// Group element index of `g̃`.
    #[serde(skip)]
    pub element: usize,
    pub shift: ShiftDoc,
    pub classical: usize,
    #[serde(serialize_with = "real")]
    pub quantum: f64,
    #[serde(serialize_with = "real")]
    pub margin: f64,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceClass {
    pub members: Vec<String>,
    pub classical: usize,
    #[serde(serialize_with = "real")]
    pub quantum: f64,
    pub violation: bool,
}

/// A detected symmetry whose two shifts nevertheless have different bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnconfirmedRelation {
    pub kind: &'static str,
    pub a: String,
    pub b: String,
    #[serde(serialize_with = "real")]
    pub quantum_difference: f64,
    pub classical_difference: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub schema_version: u32,
    pub scenario: ScenarioSummary,
    pub base: ShiftDoc,
    /// Sorted by margin, largest first; ties in group element order.
    pub rows: Vec<ScanRow>,
    pub equivalence_definition: &'static str,
    pub classes: Vec<EquivalenceClass>,
    pub violating_classes: usize,
    pub unconfirmed_relations: Vec<UnconfirmedRelation>,
}

impl ScanResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("shift,order,classical,quantum,margin,violation\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.shift.cycles,
                row.shift.order,
                row.classical,
                fmt_real(row.quantum),
                fmt_real(row.margin),
                row.violation
            ));
        }
        out
    }

    pub fn row(&self, cycles: &str) -> Option<&ScanRow> {
        self.rows.iter().find(|r| r.shift.cycles == cycles)
    }

    pub fn violating(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.violation)
    }
}

/// Plain decimal, switching to exponent form for tiny or huge magnitudes.
fn fmt_real(x: f64) -> String {
    let r = super::round_sig(x, 15);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = x;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

pub(super) fn run(scenario: &Scenario) -> Result<ScanResult> {
    let orbit = scenario.orbit()?;
    let group = scenario.group();
    let base = scenario.shifts()[0];
    let base_orbit = orbit.product_orbit(base);

    let by_element: Vec<ScanRow> = (0..group.order())
        .into_par_iter()
        .map(|g| -> Result<ScanRow> {
            let orbits = [base_orbit.clone(), orbit.product_orbit(g)];
            let classical =
                classical_bound(&orbits, scenario.budget()).map_err(|e| e.at("classical bound"))?;
            let quantum = BellOperator::assemble(&orbits)
                .map_err(|e| e.at("quantum bound"))?
                .quantum_bound()
                .0;
            let margin = quantum - classical.value as f64;
            Ok(ScanRow {
                element: g,
                shift: ShiftDoc::new(group, g),
                classical: classical.value,
                quantum,
                margin,
                violation: margin > scenario.violation_threshold(),
            })
        })
        .collect::<Result<_>>()?;

    let tol = scenario.tolerance();
    let agree = |a: usize, b: usize| {
        let (x, y) = (&by_element[a], &by_element[b]);
        (
            x.classical as i64 - y.classical as i64,
            y.quantum - x.quantum,
        )
    };
    let mut relations: Vec<(&'static str, usize, usize)> = Vec::new();
    for g in 0..group.order() {
        relations.push(("inverse", g, group.inverse(g)));
    }
    for h in group.normalizer(scenario.subgroup().elements()) {
        for g in 0..group.order() {
            relations.push(("normalizer conjugation", g, group.conjugate(h, g)));
        }
    }
    let mut parent: Vec<usize> = (0..group.order()).collect();
    let mut unconfirmed = Vec::new();
    for (kind, a, b) in relations {
        if a >= b {
            continue;
        }
        let (dc, dq) = agree(a, b);
        if dc == 0 && dq.abs() <= tol {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        } else if !unconfirmed.iter().any(|u: &UnconfirmedRelation| {
            u.a == group.element(a).to_string() && u.b == group.element(b).to_string()
        }) {
            unconfirmed.push(UnconfirmedRelation {
                kind,
                a: group.element(a).to_string(),
                b: group.element(b).to_string(),
                quantum_difference: dq,
                classical_difference: dc,
            });
        }
    }

    // classes in order of their smallest element
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    for g in 0..group.order() {
        let root = find(&mut parent, g);
        match classes.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(g),
            None => classes.push((root, vec![g])),
        }
    }
    let classes: Vec<EquivalenceClass> = classes
        .into_iter()
        .map(|(root, members)| {
            let row = &by_element[root];
            EquivalenceClass {
                members: members
                    .iter()
                    .map(|&g| group.element(g).to_string())
                    .collect(),
                classical: row.classical,
                quantum: row.quantum,
                violation: members.iter().any(|&g| by_element[g].violation),
            }
        })
        .collect();

    let mut rows = by_element;
    // compare rounded margins so that round-off cannot reorder ties
    let key = |r: &ScanRow| super::round_sig(r.margin, 12);
    rows.sort_by(|a, b| key(b).total_cmp(&key(a)).then(a.element.cmp(&b.element)));
    let violating_classes = classes.iter().filter(|c| c.violation).count();
    Ok(ScanResult {
        schema_version: SCHEMA_VERSION,
        scenario: ScenarioSummary::new(scenario, &orbit, &[base]),
        base: ShiftDoc::new(group, base),
        rows,
        equivalence_definition: EQUIVALENCE_DEFINITION,
        classes,
        violating_classes,
        unconfirmed_relations: unconfirmed,
    })
}
