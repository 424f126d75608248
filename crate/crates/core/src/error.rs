use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tensor rank {found} not accepted here (expected {expected})")]
    Rank { expected: &'static str, found: usize },

    #[error("slot {slot} out of range for a rank-{rank} tensor")]
    Slot { slot: usize, rank: usize },

    #[error("2-form is not antisymmetric (|F + F^T| = {residual:e})")]
    Symmetry { residual: f64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("structure constants are not antisymmetric (violation {residual:e})")]
    NotAntisymmetric { residual: f64 },

    #[error("structure constants violate the Jacobi identity (residual {residual:e})")]
    JacobiViolation { residual: f64 },

    #[error("curvature formula is only available at weight 0 (requested weight {weight})")]
    FormulaUnavailable { weight: f64 },

    #[error("geometry is not Gauduchon-Tod at tolerance {tolerance:e} (max normalized residual {residual:e})")]
    NotGt { residual: f64, tolerance: f64 },

    #[error("Killing connection is not flat (curvature residual {residual:e}, tolerance {tolerance:e})")]
    NotFlat { residual: f64, tolerance: f64 },

    #[error("arc sequence does not close in the group (deviation {deviation:e})")]
    OpenPath { deviation: f64 },

    #[error("no group model for these structure constants: {0}")]
    UnsupportedGroup(String),

    #[error("Newton search did not converge after {iterations} iterations (best residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },
}
