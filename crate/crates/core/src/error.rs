use thiserror::Error;

use crate::lattice::{LatticePoint, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice knot: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("coordinate overflow while {0}")]
    Overflow(&'static str),

    #[error("scale factor must be positive")]
    ZeroScale,

    #[error("point {0} is not a vertex or midpoint of the knot")]
    NotOnKnot(LatticePoint),

    #[error("point {0} is not a midpoint of the knot")]
    NotAMidpoint(LatticePoint),

    #[error("pair must consist of two distinct points, got {0} twice")]
    DegeneratePair(LatticePoint),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid generator parameters: {0}")]
    Generator(String),

    /// `attempts` lists the scales (torus knots) or seeds (random polygons) tried.
    #[error("{kind} generator failed after attempts {attempts:?}")]
    GeneratorExhausted {
        kind: &'static str,
        attempts: Vec<u64>,
    },
}

impl Error {
    /// Whether the failure is caused by bad input, as opposed to an internal limit.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Overflow(_) | Error::GeneratorExhausted { .. })
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
