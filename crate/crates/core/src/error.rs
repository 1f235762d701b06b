use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyInput,

    #[error("malformed arc: {0}")]
    MalformedArc(String),

    #[error("DegenerateThickness: arc thickness {thickness:e} is below tolerance {eps_abs:e}")]
    DegenerateThickness { thickness: f64, eps_abs: f64 },

    #[error("parameter position ({seg}, {frac}) is outside the arc")]
    ParamOutOfRange { seg: usize, frac: f64 },

    /// No antipodal pair of the arc carries a consecutive triple. Every valid
    /// arc has one, so this indicates either a bug or a counterexample.
    #[error("TheoremViolation: {0}")]
    TheoremViolation(String),

    #[error("unknown fixture `{name}`; valid names: {}", valid.join(", "))]
    UnknownFixture { name: String, valid: Vec<String> },

    #[error("invalid generator spec: {0}")]
    InvalidGenSpec(String),

    #[error("generator gave up after {attempts} attempts for seed {seed}")]
    GenerationFailed { seed: u64, attempts: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
