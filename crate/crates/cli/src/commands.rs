use std::path::Path;

use killing_weyl::cliff::j_commutator_residual;
use killing_weyl::homgeo::{analyze, curvature_package};
use killing_weyl::identities::algebra_suite;
use killing_weyl::killing::search::PARAMETER_NAMES;
use killing_weyl::killing::{
    find_gt_parameters, killing_basis_with_tol, killing_residual, loop_holonomy, path_matrix, GroupArc, SearchOptions,
};
use killing_weyl::sampling;
use killing_weyl::spincurv::killing_curvature;
use killing_weyl::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::geometry::load_geometry;
use crate::report::{Num, Section};

/// The one random stream of a run.
pub type RunRng = ChaCha8Rng;

pub fn run_rng(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const HOLONOMY_TOL: f64 = 1e-9;
pub const FD_TOL: f64 = 1e-7;
pub const PATH_TOL: f64 = 1e-9;
pub const MIN_SIGMA: f64 = 0.1;
pub const J_TOL: f64 = 1e-10;

pub fn verify_algebra(trials: usize, tol: f64, rng: &mut RunRng) -> Result<Vec<Section>, CliError> {
    Ok(algebra_suite(trials, tol, rng)?.iter().map(Section::from).collect())
}

pub fn analyze_file(path: &Path, tol: f64) -> Result<Vec<Section>, CliError> {
    let (g, beta) = load_geometry(path)?;
    let pkg = curvature_package(&g);
    let report = analyze(&g, &beta, tol);
    let flat = killing_curvature(&g, &beta).residual;
    let s2 = report.scale * report.scale;
    let flat_normalized = if s2 > 0.0 { flat / s2 } else { flat };
    let [ew, scal, star] = report.normalized;
    Ok(vec![
        Section::below("r_EW", ew, tol).value("raw", Num(report.r_ew)),
        Section::below("r_scal", scal, tol)
            .value("raw", Num(report.r_scal))
            .value("scalar_curvature", Num(pkg.scalar))
            .value("beta", Num(beta.value)),
        Section::below("r_star", star, tol).value("raw", Num(report.r_star)),
        Section::below("flatness", flat_normalized, tol)
            .value("raw", Num(flat))
            .value("scale", Num(report.scale)),
    ])
}

pub struct KillingFlags {
    pub loops: usize,
    pub fd_step: f64,
    pub flat_tol: f64,
}

fn random_path(rng: &mut RunRng, arcs: usize) -> Vec<GroupArc<f64>> {
    (0..arcs)
        .map(|_| GroupArc::from_vector(sampling::vector::<f64, _>(rng)))
        .collect()
}

pub fn killing_file(path: &Path, flags: &KillingFlags, rng: &mut RunRng) -> Result<Vec<Section>, CliError> {
    let (g, beta) = load_geometry(path)?;
    let basis = match killing_basis_with_tol(&g, &beta, flags.flat_tol) {
        Ok(b) => b,
        Err(Error::NotFlat { residual, tolerance }) => {
            eprintln!("warning: Killing connection is not flat; no basis constructed");
            return Ok(vec![Section::below("flatness", residual, tolerance)]);
        }
        Err(e) => return Err(e.into()),
    };
    let flat = killing_curvature(&g, &beta).residual;
    let model = *basis.model();

    let mut holonomy = 0.0f64;
    for _ in 0..flags.loops {
        let x = sampling::vector::<f64, _>(rng);
        let y = sampling::vector::<f64, _>(rng);
        holonomy = holonomy.max(loop_holonomy(&g, &beta, &model.triangle_loop(x, y))?.deviation);
    }

    let paths: Vec<_> = (0..flags.loops.max(1)).map(|_| random_path(rng, 3)).collect();
    let fd = killing_residual(&basis, &paths, flags.fd_step);
    let (mut independence, mut sigma, mut j) = (0.0f64, f64::INFINITY, 0.0f64);
    for p in &paths {
        independence = independence.max(basis.path_independence(p));
        sigma = sigma.min(basis.min_singular_value(&model.endpoint(p)));
        j = j.max(j_commutator_residual(&path_matrix(basis.connection(), p)));
    }
    Ok(vec![
        Section::below("flatness", flat, flags.flat_tol),
        Section::below("holonomy", holonomy, HOLONOMY_TOL).trials(flags.loops),
        Section::below("fd_residual", fd, FD_TOL)
            .trials(paths.len())
            .value("fd_step", Num(flags.fd_step)),
        Section::below("path_independence", independence, PATH_TOL).trials(paths.len()),
        Section::above("min_singular_value", sigma, MIN_SIGMA).trials(paths.len()),
        Section::below("j_equivariance", j, J_TOL).trials(paths.len()),
    ])
}

pub fn search_gt(x0: [f64; 5], pinned: usize, options: &SearchOptions) -> Result<Vec<Section>, CliError> {
    let named = |x: &[f64]| -> Vec<(&str, Num)> { PARAMETER_NAMES.iter().copied().zip(x.iter().map(|&v| Num(v))).collect() };
    let as_map = |x: &[f64]| {
        named(x)
            .into_iter()
            .map(|(k, v)| (k.to_string(), serde_json::to_value(v).expect("number")))
            .collect::<serde_json::Map<_, _>>()
    };
    match find_gt_parameters(x0, pinned, options) {
        Ok(out) => Ok(vec![
            Section::below("gt_residual", out.residual_norm, options.tolerance)
                .value("iterations", out.iterations)
                .value("parameters", as_map(&out.parameters))
                .value("pinned", PARAMETER_NAMES[pinned])
                .value("normalized", out.report.normalized.map(Num)),
        ]),
        Err(Error::NoConvergence { iterations, residual, best }) => {
            eprintln!("warning: search did not converge in {iterations} iterations");
            Ok(vec![Section::below("gt_residual", residual, options.tolerance)
                .value("iterations", iterations)
                .value("parameters", as_map(&best))
                .value("pinned", PARAMETER_NAMES[pinned])])
        }
        Err(e) => Err(e.into()),
    }
}
