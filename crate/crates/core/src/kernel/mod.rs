//! Exact arithmetic kernel: polynomials, linear-form denominators, residues
//! and truncated graded series.

pub mod iterated;
pub mod laurent;
pub mod linear;
pub mod monomial;
pub mod poly;
pub mod ratexpr;
pub mod rational;
pub mod residue;
pub mod series;

pub use iterated::{iterated_residue, PoleSpec, ResidueMethod, ResidueStep};
pub use laurent::laurent_residue;
pub use linear::{LinearCombination, LinearForm};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::{Coeff, Poly};
pub use ratexpr::RatExpr;
pub use rational::{format_rational, parse_rational, Integer, Rational};
pub use residue::{residue, residue_at_zero};
pub use series::{GradedSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("linear form is identically zero")]
    ZeroForm,
    #[error("denominator factor vanishes identically")]
    ZeroDenominator,
    #[error("{requested} variables requested, at most {max} supported")]
    TooManyVariables { requested: usize, max: usize },
    #[error("form has {found} coefficients, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("pole does not involve variable {var}")]
    PoleMissingVariable { var: usize },
    #[error("factor {factor} vanishes identically at pole {pole}")]
    DegenerateCollision { pole: String, factor: String },
    #[error("expansion order {order} below pole multiplicity {needed}")]
    InsufficientOrder { order: usize, needed: usize },
    #[error("variables remain after the last residue: {expr}")]
    NotFullyReduced { expr: String },
}
