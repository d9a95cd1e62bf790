//! Scenario runner: config → seed → labeled orbit → bounds.
//!
//! A scenario is described by a JSON file:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "group": {"symmetric": 3},
//!   "generator": "(1 2)",
//!   "seed": "auto",
//!   "orbits": ["()", "(1 3)"],
//!   "mode": "bounds",
//!   "budget": 100000000,
//!   "tolerance": 1e-9
//! }
//! ```
//!
//! Everything but `group` is optional. The defaults are the running example:
//! `H = ⟨(1 2 … n−1)⟩`, the solved seed, a single orbit with `g̃ = e`.
//! `group` may instead be `{"representation_file": "rep.json"}`, resolved
//! relative to the config file. `seed` may be `{"ambient": [...]}` (a sum-zero
//! vector in `R^n`) or `{"coordinates": [...]}`. Cycle notation is 1-based.

mod report;
mod scan;
mod verify;

pub use report::{
    orbit_hash, round_sig, BoundsDocument, ClassicalSection, HallPairDoc, IrrepDoc,
    ObservableOutcome, QuantumSection, ScenarioSummary, SeedDoc, ShiftDoc, StrategyDoc,
};
pub use scan::{EquivalenceClass, ScanResult, ScanRow, UnconfirmedRelation};
pub use verify::{Check, CheckStatus, VerifyLedger};

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::{analyze_with_threshold, BoundsReport, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::orbit::{solve_seed, LabeledOrbit, ProductOrbit, SeedVector};
use crate::perm_group::{CosetDecomposition, CyclicSubgroup, GroupTable, Permutation};
use crate::representation::Representation;
use crate::scalar::Real;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    /// `S_n` acting through its standard representation.
    Symmetric(usize),
    RepresentationFile(PathBuf),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSpec {
    #[default]
    Auto,
    Ambient(Vec<f64>),
    Coordinates(Vec<f64>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Bounds,
    Scan,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "schema_v1")]
    pub schema_version: u32,
    pub group: GroupSpec,
    /// Generator of `H` in cycle notation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default)]
    pub seed: SeedSpec,
    /// Shifts `g̃` in cycle notation, one product orbit each.
    #[serde(default = "default_orbits")]
    pub orbits: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Tolerance of the consistency checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Margin above which a scenario counts as violating.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation_threshold: Option<f64>,
}

fn schema_v1() -> u32 {
    SCHEMA_VERSION
}

fn default_orbits() -> Vec<String> {
    vec!["()".to_string()]
}

impl ScenarioConfig {
    pub fn symmetric(n: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            group: GroupSpec::Symmetric(n),
            generator: None,
            seed: SeedSpec::Auto,
            orbits: default_orbits(),
            mode: Mode::Bounds,
            budget: None,
            tolerance: None,
            violation_threshold: None,
        }
    }

    pub fn with_orbits<S: Into<String>>(mut self, orbits: impl IntoIterator<Item = S>) -> Self {
        self.orbits = orbits.into_iter().map(Into::into).collect();
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if config.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                config.schema_version
            )));
        }
        Ok(config)
    }

    /// Reads a config file; a relative representation path is taken relative to it.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_json(&text)?;
        if let GroupSpec::RepresentationFile(file) = &mut config.group {
            if file.is_relative() {
                if let Some(dir) = path.parent() {
                    *file = dir.join(&*file);
                }
            }
        }
        Ok(config)
    }
}

/// A validated scenario with its seed solved.
#[derive(Clone, Debug)]
pub struct Scenario {
    config: ScenarioConfig,
    rep: Representation<f64>,
    subgroup: CyclicSubgroup,
    decomposition: Arc<CosetDecomposition>,
    seed: SeedVector<f64>,
    shifts: Vec<usize>,
    budget: u64,
    tolerance: f64,
    violation_threshold: f64,
}

fn config_error(e: Error) -> Error {
    match e {
        Error::Config(_) | Error::Stage { .. } => e.at("config"),
        other => Error::Config(other.to_string()).at("config"),
    }
}

impl Scenario {
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        let rep = match &config.group {
            GroupSpec::Symmetric(n) => Representation::<f64>::standard(*n).map_err(config_error)?,
            GroupSpec::RepresentationFile(path) => {
                Representation::load(path, f64::identity_tolerance())
                    .map_err(|e| e.at("representation"))?
            }
        };
        let group = Arc::clone(rep.group());
        let n = group.degree();
        let m = rep.dim();

        let generator = match &config.generator {
            Some(text) => group.parse_element(text).map_err(config_error)?,
            None => {
                let points: Vec<usize> = (0..n - 1).collect();
                let g = Permutation::cycle(n, &points).map_err(config_error)?;
                group.index_of(&g).map_err(config_error)?
            }
        };
        let order = group.element_order(generator);
        if order != m {
            return Err(Error::Config(format!(
                "generator {} has order {order} but the representation has dimension {m}",
                group.element(generator)
            ))
            .at("config"));
        }
        let subgroup = CyclicSubgroup::generated_by_index(&group, generator);
        let decomposition = Arc::new(CosetDecomposition::new(&group, &subgroup));

        if config.orbits.is_empty() {
            return Err(Error::Config("at least one orbit shift is required".into()).at("config"));
        }
        let shifts = config
            .orbits
            .iter()
            .map(|s| group.parse_element(s))
            .collect::<Result<Vec<_>>>()
            .map_err(config_error)?;

        let seed = match &config.seed {
            SeedSpec::Auto => {
                if rep.ambient_basis().is_none() || m + 1 != n {
                    return Err(Error::Config(
                        "automatic seeds need the standard representation; give an explicit seed"
                            .into(),
                    )
                    .at("config"));
                }
                let solved = solve_seed::<f64>(n).map_err(|e| e.at("seed"))?;
                let ambient = solved.ambient.expect("solver returns ambient coordinates");
                SeedVector::from_ambient(&rep, ambient).map_err(|e| e.at("seed"))?
            }
            SeedSpec::Ambient(x) => {
                SeedVector::from_ambient(&rep, x.clone()).map_err(config_error)?
            }
            SeedSpec::Coordinates(v) => {
                SeedVector::from_coordinates(&rep, v.clone()).map_err(config_error)?
            }
        };

        let tolerance = config.tolerance.unwrap_or_else(f64::identity_tolerance);
        let violation_threshold = config
            .violation_threshold
            .unwrap_or_else(f64::violation_threshold);
        for (name, value) in [
            ("tolerance", tolerance),
            ("violation_threshold", violation_threshold),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(
                    Error::Config(format!("{name} must be positive, got {value}")).at("config"),
                );
            }
        }
        let budget = config.budget.unwrap_or(DEFAULT_BUDGET);
        Ok(Self {
            config,
            rep,
            subgroup,
            decomposition,
            seed,
            shifts,
            budget,
            tolerance,
            violation_threshold,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn representation(&self) -> &Representation<f64> {
        &self.rep
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        self.rep.group()
    }

    pub fn subgroup(&self) -> &CyclicSubgroup {
        &self.subgroup
    }

    pub fn decomposition(&self) -> &Arc<CosetDecomposition> {
        &self.decomposition
    }

    pub fn seed(&self) -> &SeedVector<f64> {
        &self.seed
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn violation_threshold(&self) -> f64 {
        self.violation_threshold
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }

    pub fn set_tolerance(&mut self, tolerance: f64) {
        self.tolerance = tolerance;
    }

    pub fn orbit(&self) -> Result<LabeledOrbit<f64>> {
        LabeledOrbit::build(
            &self.rep,
            self.seed.clone(),
            Arc::clone(&self.decomposition),
        )
        .map_err(|e| e.at("orbit"))
    }

    fn product_orbits(&self, orbit: &LabeledOrbit<f64>) -> Vec<ProductOrbit<f64>> {
        self.shifts
            .iter()
            .map(|&s| orbit.product_orbit(s))
            .collect()
    }

    /// Bounds for the configured orbits.
    pub fn run_bounds(&self) -> Result<BoundsReport<f64>> {
        let orbit = self.orbit()?;
        analyze_with_threshold(
            &self.rep,
            &self.product_orbits(&orbit),
            self.budget,
            self.violation_threshold,
        )
    }

    /// [`Self::run_bounds`] plus the metadata needed to reproduce it.
    pub fn bounds_document(&self) -> Result<BoundsDocument> {
        let orbit = self.orbit()?;
        let report = analyze_with_threshold(
            &self.rep,
            &self.product_orbits(&orbit),
            self.budget,
            self.violation_threshold,
        )?;
        Ok(BoundsDocument::new(self, &orbit, &report))
    }

    pub fn run_scan(&self) -> Result<ScanResult> {
        scan::run(self)
    }

    pub fn run_verify(&self) -> VerifyLedger {
        verify::run(self)
    }
}

pub fn run_bounds(config: &ScenarioConfig) -> Result<BoundsReport<f64>> {
    Scenario::new(config.clone())?.run_bounds()
}

pub fn run_scan(config: &ScenarioConfig) -> Result<ScanResult> {
    Scenario::new(config.clone())?.run_scan()
}

/// A config that fails validation yields a ledger with a single failed check.
pub fn run_verify(config: &ScenarioConfig) -> VerifyLedger {
    match Scenario::new(config.clone()) {
        Ok(s) => s.run_verify(),
        Err(e) => VerifyLedger::from_checks(vec![Check::fail("scenario", e.to_string())]),
    }
}

/// Process exit status for a failed run: 3 for budget overruns, 1 for
/// internal inconsistencies, 2 for anything attributable to the input.
pub fn exit_code(error: &Error) -> i32 {
    match error.root() {
        Error::Budget { .. } => 3,
        Error::EigenNonConvergence { .. } | Error::Matching { .. } => 1,
        _ => 2,
    }
}
