use thiserror::Error;

use crate::extensions::{ExtensionSpec, ValidationReport};
use crate::potentials::Family;
use crate::special_functions::JacobiSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("inadmissible Jacobi parameters (n = {}, alpha = {}, beta = {}): zero-count formulas are undefined", .0.n, .0.alpha, .0.beta)]
    InadmissibleParameters(JacobiSpec),

    #[error("zero rules disagree for n = {}, alpha = {}, beta = {}: case enumeration says {rule}, zero count is {count}", .spec.n, .spec.alpha, .spec.beta)]
    RuleInconsistency {
        spec: JacobiSpec,
        rule: bool,
        count: usize,
    },

    #[error("x = {x} lies outside the domain of the {family} potential")]
    Domain { family: Family, x: f64 },

    #[error("invalid {family} parameters A = {a}, B = {b}: {reason}")]
    InvalidParameters {
        family: Family,
        a: f64,
        b: f64,
        reason: String,
    },

    #[error("level index {nu} is outside the allowed range {allowed}")]
    LevelIndex { nu: i64, allowed: String },

    #[error("invalid extension {spec}: {report}")]
    InvalidExtension {
        spec: ExtensionSpec,
        report: ValidationReport,
    },

    #[error("no closed form is tabulated for {0}")]
    UnsupportedClosedForm(ExtensionSpec),

    #[error("ground-state deletion is only defined for type I and II extensions, got {0}")]
    NotIsospectral(ExtensionSpec),

    #[error("shape-invariance chain leaves the admissible region: {spec} maps to {partner}, which fails: {report}")]
    ChainExit {
        spec: ExtensionSpec,
        partner: ExtensionSpec,
        report: ValidationReport,
    },

    #[error("denominator polynomial vanishes at z = {z}")]
    Pole { z: f64 },

    #[error("sample length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("potential is not finite at x = {x}")]
    NonFinitePotential { x: f64 },

    #[error("bisection failed to converge on [{lo}, {hi}]")]
    Convergence { lo: f64, hi: f64 },
}
