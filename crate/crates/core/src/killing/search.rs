//! Damped Gauss–Newton search for Gauduchon–Tod parameters in the family
//! `λ = (λ₁, λ₂, λ₃)`, `θ = (0, 0, θ₃)`, `β`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::homgeo::{analyze, gt_residual_vector, GtReport, HomogeneousWeylGeometry, WeightedDensity, DEFAULT_GT_TOL};

/// Parameter vector `(λ₁, λ₂, λ₃, θ₃, β)`.
pub type GtParameters = [f64; 5];

pub const PARAMETER_NAMES: [&str; 5] = ["lambda1", "lambda2", "lambda3", "theta3", "beta"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub fd_step: f64,
    pub max_halvings: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_iterations: 50,
            fd_step: 1e-6,
            max_halvings: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub parameters: GtParameters,
    pub residual_norm: f64,
    pub iterations: usize,
    pub report: GtReport<f64>,
}

pub fn family_geometry(x: &GtParameters) -> (HomogeneousWeylGeometry<f64>, WeightedDensity<f64>) {
    (
        HomogeneousWeylGeometry::milnor([x[0], x[1], x[2]], [0.0, 0.0, x[3]]),
        WeightedDensity::beta(x[4]),
    )
}

pub fn family_residual(x: &GtParameters) -> DVector<f64> {
    let (g, b) = family_geometry(x);
    DVector::from_vec(gt_residual_vector(&g, &b))
}

/// Minimizes the stacked GT residual over the four free parameters; `pinned`
/// (an index into [`GtParameters`], one of the `λ`) quotients out the
/// conformal scaling and stays at its value in `x0`.
pub fn find_gt_parameters(x0: GtParameters, pinned: usize, options: &SearchOptions) -> Result<SearchOutcome> {
    if pinned > 2 {
        return Err(Error::Shape(format!("pinned index {pinned} is not a Milnor parameter")));
    }
    let free: Vec<usize> = (0..5).filter(|&i| i != pinned).collect();
    let mut x = x0;
    let mut r = family_residual(&x);
    let mut norm = r.norm();
    let done = |x: GtParameters, norm: f64, iterations: usize| {
        let (g, b) = family_geometry(&x);
        SearchOutcome {
            parameters: x,
            residual_norm: norm,
            iterations,
            report: analyze(&g, &b, DEFAULT_GT_TOL),
        }
    };

    for iteration in 0..options.max_iterations {
        if norm < options.tolerance {
            return Ok(done(x, norm, iteration));
        }
        let mut jac = DMatrix::zeros(r.len(), free.len());
        for (col, &p) in free.iter().enumerate() {
            let mut fwd = x;
            let mut bwd = x;
            fwd[p] += options.fd_step;
            bwd[p] -= options.fd_step;
            let d = (family_residual(&fwd) - family_residual(&bwd)) / (2.0 * options.fd_step);
            jac.set_column(col, &d);
        }
        // minimum-norm least-squares step; the root set is a curve, so J is rank deficient
        let svd = jac.svd(true, true);
        let cutoff = svd.singular_values.max() * 1e-10;
        let step = svd
            .solve(&(-&r), cutoff)
            .map_err(|e| Error::Shape(format!("least-squares solve failed: {e}")))?;

        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..=options.max_halvings {
            let mut trial = x;
            for (col, &p) in free.iter().enumerate() {
                trial[p] += alpha * step[col];
            }
            let tr = family_residual(&trial);
            let tn = tr.norm();
            if tn < norm {
                x = trial;
                r = tr;
                norm = tn;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if norm < options.tolerance {
        return Ok(done(x, norm, options.max_iterations));
    }
    Err(Error::NoConvergence {
        iterations: options.max_iterations,
        residual: norm,
        best: x.to_vec(),
    })
}
