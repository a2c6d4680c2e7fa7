use thiserror::Error;

use crate::exact_math::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("the model has no rational 2-torsion point")]
    NoRational2Torsion,
    #[error("quadratic with a = b = 0 and c != 0 has no solutions")]
    InconsistentEquation,
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("prime {0} cannot be used for point counting")]
    BadPrime(u64),
    #[error("degenerate parameter {param}: {reason}")]
    DegenerateParameter { param: Rational, reason: String },
    #[error("claimed x-coordinate {index} of {entry} gives a non-square y^2 at {param}")]
    NonSquareY { entry: String, index: usize, param: Rational },
    #[error("{entry}: claimed point {index} is not on the family: x^3+Ax^2+Bx = {witness} is not a square")]
    SymbolicFailure { entry: String, index: usize, witness: String },
    #[error("{entry}: torsion at {param} is {found}, expected {expected}")]
    TorsionMismatch { entry: String, param: Rational, found: String, expected: String },
    #[error("points are dependent: regulator {regulator:e} <= {eps:e}")]
    DependentPoints { regulator: f64, eps: f64 },
    #[error("height computation needs the affine point, got infinity")]
    InfinityPoint,
    #[error("quartic is a perfect square (genus 0)")]
    DegenerateQuartic,
    #[error("search exhausted after {attempts} candidates, found {found} of {wanted}")]
    ExhaustedSearch { attempts: usize, found: usize, wanted: usize },
    #[error("no independent triple found among {0} candidates")]
    IndependenceFailure(usize),
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
