use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("unsupported group size n = {n} (supported {min}..={max})")]
    GroupSize { n: usize, min: usize, max: usize },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a group: {0}")]
    NotGroup(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix for {element} is not orthogonal (max deviation {deviation:e})")]
    NotOrthogonal { element: String, deviation: f64 },

    #[error("homomorphism violated at ({a}, {b}) (max deviation {deviation:e})")]
    NotHomomorphism {
        a: String,
        b: String,
        deviation: f64,
    },

    #[error("inconsistent character data: {0}")]
    Character(String),

    #[error("tensor square has multiplicity {multiplicity} for irrep {label}; closed-form eigenvalues unavailable, use the direct eigensolve")]
    Multiplicity { label: String, multiplicity: usize },

    #[error("seed solver did not converge for n = {n} (residual {residual:e})")]
    SeedNonConvergence { n: usize, residual: f64 },

    #[error("orbit is not regular: images of {a} and {b} coincide (distance {distance:e})")]
    NotRegular { a: String, b: String, distance: f64 },

    #[error("basis condition violated in block {block}: Gram entry ({i}, {j}) = {value:e}")]
    BasisCondition {
        block: usize,
        i: usize,
        j: usize,
        value: f64,
    },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    EigenNonConvergence { sweeps: usize, residual: f64 },

    #[error("enumeration of {count:.4e} strategies exceeds the budget of {budget} ({detail}); reduce the group size or the number of orbits")]
    Budget {
        count: f64,
        budget: u64,
        detail: String,
    },

    #[error("Hall matching has size {found} < {expected}; the orbit labeling is inconsistent")]
    Matching { found: usize, expected: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn at(self, stage: &'static str) -> Self {
        match self {
            Error::Stage { .. } => self,
            other => Error::Stage {
                stage,
                source: Box::new(other),
            },
        }
    }

    /// The innermost error, skipping pipeline-stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}
