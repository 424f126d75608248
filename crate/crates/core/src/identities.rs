//! Residual evaluators for the algebraic identities of the Killing-spinor calculus.
//!
//! The pointwise identities are checked with a free 2-form `F` and the derived
//! `∇β := ¼ *F`, independently of any geometry. [`check_integrability`] is the one
//! geometric check and needs a certified Gauduchon–Tod instance.

use rand::Rng;

use crate::cliff::{clifford_matrix, gamma, levi_civita, Spinor};
use crate::error::{Error, Result};
use crate::homgeo::{analyze_with, density_derivative, CurvaturePackage, HomogeneousWeylGeometry, WeightedDensity};
use crate::multilin::{
    clifford_two_form, covector_outer, hodge_star, kulkarni_nomizu, mu_contract, nu, nu_embed, sym0, FrameTensor,
    SpinorTensor, DIM,
};
use crate::sampling;
use crate::scalar::Real;

/// How a residual is judged against its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Pass when `residual < tolerance`.
    Below,
    /// Pass when `residual > tolerance` (negative controls).
    Above,
}

impl Comparison {
    pub fn holds(self, residual: f64, tolerance: f64) -> bool {
        match self {
            Comparison::Below => residual < tolerance,
            Comparison::Above => residual > tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    /// Max-norm residual (worst case over all trials).
    pub residual: f64,
    pub trials: usize,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, residual: f64, trials: usize, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            trials,
            tolerance,
            comparison: Comparison::Below,
            pass: residual < tolerance,
        }
    }

    /// A report that passes when the residual *exceeds* the threshold (negative controls).
    pub fn exceeding(name: impl Into<String>, residual: f64, trials: usize, threshold: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            trials,
            tolerance: threshold,
            comparison: Comparison::Above,
            pass: residual > threshold,
        }
    }

    /// Folds another trial into this report, keeping the worst residual.
    pub fn merge(mut self, other: &IdentityReport) -> Self {
        self.residual = self.residual.max(other.residual);
        self.trials += other.trials;
        self.pass = self.comparison.holds(self.residual, self.tolerance);
        self
    }
}

/// `max_{i,j} |e_i e_j ψ + Σ_k ε_ijk e_k ψ|` for `i ≠ j`, together with
/// `|e_i e_i ψ + ψ|`.
pub fn clifford_relation_residual<T: Real>(psi: &Spinor<T>) -> T {
    let e = gamma::<T>();
    let mut worst = T::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            let lhs = e[i].apply(&e[j].apply(psi));
            let rhs = if i == j {
                -*psi
            } else {
                let mut v = [T::zero(); 3];
                for (k, vk) in v.iter_mut().enumerate() {
                    *vk = -T::lit(levi_civita(i, j, k) as f64);
                }
                clifford_matrix(&v).apply(psi)
            };
            worst = worst.max((lhs - rhs).max_abs());
        }
    }
    worst
}

/// Both sides of `μ^{34}(ω△c ⊗ ψ) = 2 Alt νμ²(ω⊗ψ) − 2 Alt(ω)⊗ψ`.
pub fn kn_contraction_sides<T: Real>(omega: &FrameTensor<T>, psi: &Spinor<T>) -> Result<(SpinorTensor<T>, SpinorTensor<T>)> {
    let c = FrameTensor::metric();
    let lhs = mu_contract(&[3, 4], &kulkarni_nomizu(omega, &c)?.with_spinor(psi))?;
    let two = T::lit(2.0);
    let rhs = nu(&mu_contract(&[2], &omega.with_spinor(psi))?).alt()?.scale(two)
        - omega.alt()?.with_spinor(psi).scale(two);
    Ok((lhs, rhs))
}

pub fn check_kn_contraction<T: Real>(omega: &FrameTensor<T>, psi: &Spinor<T>, tolerance: f64) -> Result<IdentityReport> {
    let (lhs, rhs) = kn_contraction_sides(omega, psi)?;
    Ok(IdentityReport::new("kulkarni_nomizu_contraction", (lhs - rhs).max_abs().as_f64(), 1, tolerance))
}

fn monopole_derivative<T: Real>(f: &FrameTensor<T>) -> Result<[T; 3]> {
    hodge_star(f)?.scale(T::lit(0.25)).to_vector()
}

/// `F·ψ + 8 ∇β·ψ` with `∇β = ¼*F`.
pub fn monopole_expression<T: Real>(f: &FrameTensor<T>, psi: &Spinor<T>) -> Result<Spinor<T>> {
    let db = monopole_derivative(f)?;
    Ok(clifford_two_form(f)?.apply(psi) + clifford_matrix(&db).apply(psi) * T::lit(8.0))
}

pub fn check_monopole<T: Real>(f: &FrameTensor<T>, psi: &Spinor<T>, tolerance: f64) -> Result<IdentityReport> {
    let db = monopole_derivative(f)?;
    // 8 ∇_k β = Σ ε_ijk F_ij
    let mut frame = T::zero();
    for (k, d) in db.iter().enumerate() {
        let mut s = T::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                s = s + T::lit(levi_civita(i, j, k) as f64) * f.get(&[i, j]);
            }
        }
        frame = frame.max((T::lit(8.0) * *d - s).abs() * psi.max_abs());
    }
    let spin = monopole_expression(f, psi)?.max_abs();
    Ok(IdentityReport::new("monopole", frame.max(spin).as_f64(), 1, tolerance))
}

/// `¼ Alt νμ²(F⊗ψ) − Alt(∇β⊗νψ) − ½ F⊗ψ` for an explicit `∇β`.
pub fn first_identity_expression<T: Real>(f: &FrameTensor<T>, db: &[T; 3], psi: &Spinor<T>) -> Result<SpinorTensor<T>> {
    let a = nu(&mu_contract(&[2], &f.with_spinor(psi))?).alt()?.scale(T::lit(0.25));
    let b = covector_outer(db, &nu_embed(psi)).alt()?;
    let c = f.with_spinor(psi).scale(T::lit(0.5));
    Ok(a - b - c)
}

pub fn check_first_identity<T: Real>(f: &FrameTensor<T>, psi: &Spinor<T>, tolerance: f64) -> Result<IdentityReport> {
    let db = monopole_derivative(f)?;
    let r = first_identity_expression(f, &db, psi)?.max_abs();
    Ok(IdentityReport::new("first_identity", r.as_f64(), 1, tolerance))
}

/// `(ν∇β − ∇β·ν)·ψ − ½μ²(F⊗ψ)`, where `(ν∇β·ψ)_k = e_k ∇β·ψ` and
/// `(∇β·νψ)_k = ∇β·e_k ψ`.
pub fn second_identity_expression<T: Real>(f: &FrameTensor<T>, db: &[T; 3], psi: &Spinor<T>) -> Result<SpinorTensor<T>> {
    let dbm = clifford_matrix(db);
    let nu_db = nu_embed(&dbm.apply(psi));
    let db_nu = nu_embed(psi).left_mul(&dbm);
    let half_mu = mu_contract(&[2], &f.with_spinor(psi))?.scale(T::lit(0.5));
    Ok(nu_db - db_nu - half_mu)
}

pub fn check_second_identity<T: Real>(f: &FrameTensor<T>, psi: &Spinor<T>, tolerance: f64) -> Result<IdentityReport> {
    let db = monopole_derivative(f)?;
    let r = second_identity_expression(f, &db, psi)?.max_abs();
    Ok(IdentityReport::new("second_identity", r.as_f64(), 1, tolerance))
}

/// `max |μ²(first) − ½ second|`: contracting the rank-2 identity by Clifford
/// multiplication yields half of the rank-1 identity.
pub fn contraction_consistency<T: Real>(f: &FrameTensor<T>, psi: &Spinor<T>) -> Result<T> {
    let db = monopole_derivative(f)?;
    let first = first_identity_expression(f, &db, psi)?;
    let second = second_identity_expression(f, &db, psi)?;
    Ok((mu_contract(&[2], &first)? - second.scale(T::lit(0.5))).max_abs())
}

/// `max |μ²νS + νμ¹S + 2S|` over a rank-1 spinor-valued tensor `S`.
pub fn mu2_nu_residual<T: Real>(s: &SpinorTensor<T>) -> Result<T> {
    let lhs = mu_contract(&[2], &nu(s))?;
    let rhs = -nu(&mu_contract(&[1], s)?) - s.scale(T::lit(2.0));
    Ok((lhs - rhs).max_abs())
}

/// Dimension-dependent coefficients of the integrability relation at `n = 3`.
pub fn integrability_coefficients(n: f64) -> (f64, f64, f64, f64) {
    let grad = 2.0 * (n - 1.0 - (n - 1.0) / (n - 2.0));
    let alt = 1.0 - (n - 1.0) / (n - 2.0);
    let scalar = 4.0 * n * (n - 1.0);
    let monopole = 4.0 * (n - 1.0) / (n - 2.0);
    (grad, alt, scalar, monopole)
}

/// The four integrability residuals at `n = 3` for the spinor value `psi`:
/// the full relation for `μ²Ric′⊗ψ`, its trace-free reduction,
/// `(R − 4n(n−1)β²)ψ` and `F·ψ + 4(n−1)/(n−2) ∇β·ψ`.
pub fn integrability_residuals<T: Real>(
    g: &HomogeneousWeylGeometry<T>,
    beta: &WeightedDensity<T>,
    psi: &Spinor<T>,
    pkg: &CurvaturePackage<T>,
) -> Result<[T; 4]> {
    let (c_grad, c_alt, c_scal, c_mono) = integrability_coefficients(3.0);
    let db = density_derivative(g, beta);
    let dbv = db.to_vector()?;
    let metric = FrameTensor::metric();

    let lhs = mu_contract(&[2], &pkg.ric_prime.with_spinor(psi))?;
    let grad_term = db.with_spinor(psi).scale(T::lit(c_grad));
    let alt_term = mu_contract(&[1, 2], &db.outer(&metric).alt()?.with_spinor(psi))?.scale(T::lit(c_alt));
    let scalar_term = nu_embed(psi).scale(pkg.scalar / T::lit(3.0));
    let f_term = mu_contract(&[2], &pkg.faraday.with_spinor(psi))?;
    let full = (lhs - (grad_term + alt_term + scalar_term - f_term)).max_abs();

    // μ² sym₀Ric′⊗ψ = −(∇β·ν − ν∇β)·ψ − ½μ²F⊗ψ
    let lhs0 = mu_contract(&[2], &sym0(&pkg.ric_prime)?.with_spinor(psi))?;
    let rhs0 = second_identity_expression(&pkg.faraday, &dbv, psi)?;
    let reduced = (lhs0 - rhs0).max_abs();

    let scalar = (*psi * (pkg.scalar - T::lit(c_scal) * beta.value * beta.value)).max_abs();

    let mono = (clifford_two_form(&pkg.faraday)?.apply(psi) + clifford_matrix(&dbv).apply(psi) * T::lit(c_mono)).max_abs();
    Ok([full, reduced, scalar, mono])
}

/// [`integrability_residuals`] gated on the geometry being Gauduchon–Tod at `tolerance`;
/// the relations are only asserted for Killing spinors.
pub fn check_integrability<T: Real>(
    g: &HomogeneousWeylGeometry<T>,
    beta: &WeightedDensity<T>,
    psi: &Spinor<T>,
    pkg: &CurvaturePackage<T>,
    tolerance: f64,
) -> Result<IdentityReport> {
    let gt = analyze_with(g, beta, pkg, T::lit(tolerance));
    if !gt.verdict {
        return Err(Error::NotGt {
            residual: gt.max_normalized().as_f64(),
            tolerance,
        });
    }
    let worst = integrability_residuals(g, beta, psi, pkg)?
        .iter()
        .fold(T::zero(), |m, &r| m.max(r));
    Ok(IdentityReport::new("integrability", worst.as_f64(), 1, tolerance))
}

/// Runs `trial` `trials` times and keeps the worst residual.
pub fn sweep<R: Rng + ?Sized>(
    name: &str,
    trials: usize,
    tolerance: f64,
    rng: &mut R,
    mut trial: impl FnMut(&mut R) -> Result<f64>,
) -> Result<IdentityReport> {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let r = trial(rng)?;
        worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
        if worst.is_nan() {
            break;
        }
    }
    Ok(IdentityReport::new(name, worst, trials, tolerance))
}

/// Relative size of the constraint break used by the non-vacuity control.
pub const CONSTRAINT_BREAK: f64 = 0.1;
/// Residual the broken first identity must exceed.
pub const NON_VACUITY_THRESHOLD: f64 = 0.1;

/// The pointwise algebra suite over random `(ω, F, ψ)`.
pub fn algebra_suite<R: Rng + ?Sized>(trials: usize, tolerance: f64, rng: &mut R) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    out.push(sweep("clifford_relations", trials, tolerance, rng, |r| {
        Ok(clifford_relation_residual::<f64>(&sampling::spinor(r)))
    })?);
    out.push(sweep("j_equivariance", trials, tolerance, rng, |r| {
        let v = sampling::vector::<f64, _>(r);
        let psi = sampling::spinor(r);
        let a = crate::cliff::j_structure(&crate::cliff::act(&v, &psi));
        let b = crate::cliff::act(&v, &crate::cliff::j_structure(&psi));
        Ok((a - b).max_abs())
    })?);
    out.push(sweep("kulkarni_nomizu_contraction", trials, tolerance, rng, |r| {
        let (l, rh) = kn_contraction_sides::<f64>(&sampling::matrix(r), &sampling::spinor(r))?;
        Ok((l - rh).max_abs())
    })?);
    out.push(sweep("mu2_nu", trials, tolerance, rng, |r| {
        let s = SpinorTensor::from_fn(1, |_| sampling::spinor::<f64, _>(r));
        mu2_nu_residual(&s)
    })?);
    out.push(sweep("monopole", trials, tolerance, rng, |r| {
        Ok(check_monopole::<f64>(&sampling::two_form(r), &sampling::spinor(r), tolerance)?.residual)
    })?);
    out.push(sweep("first_identity", trials, tolerance, rng, |r| {
        Ok(check_first_identity::<f64>(&sampling::two_form(r), &sampling::spinor(r), tolerance)?.residual)
    })?);
    out.push(sweep("second_identity", trials, tolerance, rng, |r| {
        Ok(check_second_identity::<f64>(&sampling::two_form(r), &sampling::spinor(r), tolerance)?.residual)
    })?);
    out.push(sweep("contraction_consistency", trials, tolerance, rng, |r| {
        contraction_consistency::<f64>(&sampling::two_form(r), &sampling::spinor(r))
    })?);
    let broken = sweep("first_identity_broken_constraint", trials, f64::INFINITY, rng, |r| {
        let f = sampling::two_form::<f64, _>(r);
        let db = monopole_derivative(&f)?.map(|x| x * (1.0 + CONSTRAINT_BREAK));
        Ok(first_identity_expression(&f, &db, &sampling::spinor(r))?.max_abs())
    })?;
    out.push(IdentityReport::exceeding(broken.name, broken.residual, broken.trials, NON_VACUITY_THRESHOLD));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliff::j_structure;
    use crate::homgeo::curvature_package;

    fn f12() -> FrameTensor<f64> {
        FrameTensor::from_matrix([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    }

    fn psi() -> Spinor<f64> {
        Spinor::from_re_im([0.6, -0.3], [0.2, 1.4])
    }

    #[test]
    fn kn_contraction_examples() {
        let z = FrameTensor::<f64>::zeros(2);
        assert_eq!(check_kn_contraction(&z, &psi(), 1e-13).unwrap().residual, 0.0);
        let r = check_kn_contraction(&FrameTensor::metric(), &psi(), 1e-13).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn monopole_examples() {
        let z = FrameTensor::<f64>::zeros(2);
        assert_eq!(check_monopole(&z, &psi(), 1e-13).unwrap().residual, 0.0);
        // F·ψ = 2e₁e₂ψ = −2e₃ψ = −8∇β·ψ with ∇β = ¼σ₃
        let up = Spinor::up();
        let e = gamma::<f64>();
        let f_psi = clifford_two_form(&f12()).unwrap().apply(&up);
        assert!((f_psi - e[2].apply(&up) * -2.0).max_abs() < 1e-15);
        assert!(check_monopole(&f12(), &up, 1e-13).unwrap().pass);
        let sym = FrameTensor::metric();
        assert!(matches!(check_monopole(&sym, &up, 1e-13), Err(Error::Symmetry { .. })));
    }

    #[test]
    fn identity_examples() {
        let z = FrameTensor::<f64>::zeros(2);
        assert_eq!(check_first_identity(&z, &psi(), 1e-13).unwrap().residual, 0.0);
        assert_eq!(check_second_identity(&z, &psi(), 1e-13).unwrap().residual, 0.0);
        assert!(check_first_identity(&f12(), &psi(), 1e-13).unwrap().pass);
        assert!(check_second_identity(&f12(), &psi(), 1e-13).unwrap().pass);
        assert!(contraction_consistency(&f12(), &psi()).unwrap() < 1e-15);
    }

    #[test]
    fn broken_constraint_is_detected() {
        let f = FrameTensor::from_matrix([[0.0, 1.2, -0.7], [-1.2, 0.0, 2.1], [0.7, -2.1, 0.0]]);
        let db = monopole_derivative(&f).unwrap().map(|x| x * 1.1);
        let broken = first_identity_expression(&f, &db, &psi()).unwrap().max_abs();
        // exactly the 10% surplus of the Alt(∇β⊗νψ) term survives
        let exact = monopole_derivative(&f).unwrap().map(|x| x * 0.1);
        let surplus = covector_outer(&exact, &nu_embed(&psi())).alt().unwrap().max_abs();
        assert!((broken - surplus).abs() < 1e-14);
        assert!(broken > 0.01);
    }

    #[test]
    fn quaternionic_and_homogeneous() {
        let f = FrameTensor::from_matrix([[0.0, 0.3, -0.7], [-0.3, 0.0, 0.9], [0.7, -0.9, 0.0]]);
        let db = monopole_derivative(&f).unwrap().map(|x| x * 1.3);
        let a = first_identity_expression(&f, &db, &psi()).unwrap();
        let b = first_identity_expression(&f, &db, &j_structure(&psi())).unwrap();
        assert!((a.map_spinors(j_structure) - b).max_abs() < 1e-15);
        let c = first_identity_expression(&f, &db, &(psi() * 2.5)).unwrap();
        assert!((c.max_abs() - 2.5 * a.max_abs()).abs() < 1e-14);
    }

    #[test]
    fn coefficients_at_three() {
        assert_eq!(integrability_coefficients(3.0), (0.0, -1.0, 24.0, 8.0));
    }

    #[test]
    fn integrability_on_flat_and_round() {
        let flat = HomogeneousWeylGeometry::<f64>::flat();
        let b0 = WeightedDensity::beta(0.0);
        let r = check_integrability(&flat, &b0, &Spinor::up(), &curvature_package(&flat), 1e-9).unwrap();
        assert_eq!(r.residual, 0.0);
        let round = HomogeneousWeylGeometry::milnor([2.0, 2.0, 2.0], [0.0; 3]);
        let b = WeightedDensity::beta(0.5);
        let r = check_integrability(&round, &b, &psi(), &curvature_package(&round), 1e-9).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
        let off = WeightedDensity::beta(0.3);
        assert!(matches!(
            check_integrability(&round, &off, &psi(), &curvature_package(&round), 1e-9),
            Err(Error::NotGt { .. })
        ));
    }

    #[test]
    fn integrability_relation_is_not_vacuous() {
        // scalar relation fails off the R = 24β² locus
        let round = HomogeneousWeylGeometry::milnor([2.0, 2.0, 2.0], [0.0; 3]);
        let r = integrability_residuals(&round, &WeightedDensity::beta(0.3), &psi(), &curvature_package(&round)).unwrap();
        assert!(r[2] > 1.0);
        // trace-free reduction fails on a non-Einstein-Weyl Berger sphere
        let g = HomogeneousWeylGeometry::milnor([2.0, 2.0, 1.0], [0.0; 3]);
        let r = integrability_residuals(&g, &WeightedDensity::beta(0.25), &psi(), &curvature_package(&g)).unwrap();
        assert!(r[1] > 0.1 && r[0] > 0.1, "{r:?}");
    }
}

#[cfg(test)]
mod suite_tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn algebra_suite_passes() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0);
        let reports = algebra_suite(200, 1e-12, &mut rng).unwrap();
        for r in &reports {
            eprintln!("{r:?}");
            assert!(r.pass, "{r:?}");
        }
    }
}
