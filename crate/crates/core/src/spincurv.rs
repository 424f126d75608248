//! Spinor connections on homogeneous Weyl geometries and their curvature.
//!
//! Spinor fields are written in the left-invariant frame trivialization, so
//! `∇_{e_i}ψ = e_i(ψ) + M_i ψ` with constant matrices `M_i` and curvature
//! `R_ij = [M_i, M_j] − Σ_k c^k_ij M_k`.

use num_complex::Complex;

use crate::cliff::{gamma, j_commutator_residual, Mat2, Spinor};
use crate::error::{Error, Result};
use crate::homgeo::{curvature_package, density_derivative, weyl_connection, CurvaturePackage, HomogeneousWeylGeometry, WeightedDensity};
use crate::multilin::{endomorphism_form, kulkarni_nomizu, mu_contract, FrameTensor, DIM};
use crate::scalar::Real;

/// A 2-form with values in `End(ℂ²)`, indexed `[i][j]`.
pub type EndTwoForm<T> = [[Mat2<T>; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    /// `∇^{S,w}`.
    Plain,
    /// `∇^β = ∇^{S,0} − β⊗ν`.
    Killing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConnection<T> {
    pub matrices: [Mat2<T>; 3],
    pub weight: T,
    pub kind: ConnectionKind,
}

impl<T: Real> SpinConnection<T> {
    /// `Σ d_i M_i`.
    pub fn along(&self, direction: &[T; 3]) -> Mat2<T> {
        (0..DIM).fold(Mat2::zero(), |m, i| m + self.matrices[i].scale(direction[i]))
    }

    /// `∇_{e_i}ψ − e_i(ψ)`.
    pub fn apply(&self, i: usize, psi: &Spinor<T>) -> Spinor<T> {
        self.matrices[i].apply(psi)
    }
}

/// Spin lift of the Weyl connection at weight `w`:
/// `A_i = ¼ Σ_{j,k} ω^{(i)}_{jk} e_j e_k + w θ_i Id`.
pub fn spin_connection<T: Real>(g: &HomogeneousWeylGeometry<T>, weight: T) -> SpinConnection<T> {
    let conn = weyl_connection(g);
    let e = gamma::<T>();
    let quarter = T::lit(0.25);
    let theta = g.theta();
    let matrices = std::array::from_fn(|i| {
        let w = conn.rotation_part(i);
        let mut m = Mat2::scalar(Complex::new(weight * theta[i], T::zero()));
        for j in 0..DIM {
            for k in 0..DIM {
                m = m + (e[j] * e[k]).scale(quarter * w[j][k]);
            }
        }
        m
    });
    SpinConnection {
        matrices,
        weight,
        kind: ConnectionKind::Plain,
    }
}

/// `max_{i,l} |[A_i, e_l·] − (∇_{e_i} e_l)·|` with `∇` restricted to its metric part.
pub fn leibniz_residual<T: Real>(g: &HomogeneousWeylGeometry<T>, conn: &SpinConnection<T>) -> T {
    let wc = weyl_connection(g);
    let e = gamma::<T>();
    let mut worst = T::zero();
    for i in 0..DIM {
        let w = wc.rotation_part(i);
        for l in 0..DIM {
            let lhs = conn.matrices[i].commutator(&e[l]);
            let rhs = (0..DIM).fold(Mat2::zero(), |m, k| m + e[k].scale(w[l][k]));
            worst = worst.max((lhs - rhs).max_abs());
        }
    }
    worst
}

/// Curvature of a frame-constant connection, `[M_i, M_j] − Σ c^k_ij M_k`.
pub fn commutator_curvature<T: Real>(g: &HomogeneousWeylGeometry<T>, conn: &SpinConnection<T>) -> EndTwoForm<T> {
    let c = g.structure_constants();
    let m = &conn.matrices;
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let torsion = (0..DIM).fold(Mat2::zero(), |acc, k| acc + m[k].scale(c[k][i][j]));
            m[i].commutator(&m[j]) - torsion
        })
    })
}

pub fn two_form_max<T: Real>(r: &EndTwoForm<T>) -> T {
    r.iter().flatten().fold(T::zero(), |acc, m| acc.max(m.max_abs()))
}

pub fn two_form_diff<T: Real>(a: &EndTwoForm<T>, b: &EndTwoForm<T>) -> T {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).max_abs()))
}

/// `¼ μ^{34}(Ric^N △ c ⊗ ψ)` read as a 2-form of endomorphisms.
pub fn curvature_formula_weight0<T: Real>(pkg: &CurvaturePackage<T>) -> Result<EndTwoForm<T>> {
    let kn = kulkarni_nomizu(&pkg.ric_n, &FrameTensor::metric())?;
    let quarter = T::lit(0.25);
    endomorphism_form(|psi| Ok(mu_contract(&[3, 4], &kn.with_spinor(psi))?.scale(quarter)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinCurvature<T> {
    pub commutator: EndTwoForm<T>,
    pub formula: EndTwoForm<T>,
    pub mismatch: T,
}

/// Weight-0 spinor curvature by both routes.
pub fn spin_curvature<T: Real>(g: &HomogeneousWeylGeometry<T>, weight: T) -> Result<SpinCurvature<T>> {
    if weight != T::zero() {
        return Err(Error::FormulaUnavailable { weight: weight.as_f64() });
    }
    let conn = spin_connection(g, weight);
    let commutator = commutator_curvature(g, &conn);
    let formula = curvature_formula_weight0(&curvature_package(g))?;
    let mismatch = two_form_diff(&commutator, &formula);
    Ok(SpinCurvature {
        commutator,
        formula,
        mismatch,
    })
}

/// `B_i = A_i(w=0) − β e_i`.
pub fn killing_connection<T: Real>(g: &HomogeneousWeylGeometry<T>, beta: &WeightedDensity<T>) -> SpinConnection<T> {
    let a = spin_connection(g, T::zero());
    let e = gamma::<T>();
    SpinConnection {
        matrices: std::array::from_fn(|i| a.matrices[i] - e[i].scale(beta.value)),
        weight: T::zero(),
        kind: ConnectionKind::Killing,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KillingCurvature<T> {
    pub two_form: EndTwoForm<T>,
    /// `max_ij |R^β_ij|`.
    pub residual: T,
    /// `ℛ^{S,0} − Alt(∇β)ν + β² Alt ν^{12}`, from the curvature formula.
    pub expansion: EndTwoForm<T>,
    /// `max |expansion − two_form|`.
    pub expansion_deviation: T,
}

pub fn killing_curvature<T: Real>(g: &HomogeneousWeylGeometry<T>, beta: &WeightedDensity<T>) -> KillingCurvature<T> {
    let conn = killing_connection(g, beta);
    let two_form = commutator_curvature(g, &conn);
    let residual = two_form_max(&two_form);

    let pkg = curvature_package(g);
    let base = curvature_formula_weight0(&pkg).expect("rank-2 curvature data");
    let db = density_derivative(g, beta).to_vector().expect("rank 1");
    let e = gamma::<T>();
    let b2 = beta.value * beta.value;
    let expansion = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let alt_db_nu = e[j].scale(db[i]) - e[i].scale(db[j]);
            let alt_nu12 = e[i] * e[j] - e[j] * e[i];
            base[i][j] - alt_db_nu + alt_nu12.scale(b2)
        })
    });
    let expansion_deviation = two_form_diff(&expansion, &two_form);
    KillingCurvature {
        two_form,
        residual,
        expansion,
        expansion_deviation,
    }
}

/// `max_i |[B_i, J]|` as antilinear operators.
pub fn j_equivariance_residual<T: Real>(conn: &SpinConnection<T>) -> T {
    conn.matrices
        .iter()
        .fold(T::zero(), |m, b| m.max(j_commutator_residual(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round() -> HomogeneousWeylGeometry<f64> {
        HomogeneousWeylGeometry::milnor([2.0, 2.0, 2.0], [0.0; 3])
    }

    #[test]
    fn connection_examples() {
        let flat = spin_connection(&HomogeneousWeylGeometry::<f64>::flat(), 0.0);
        assert!(flat.matrices.iter().all(|m| m.max_abs() == 0.0));
        let a = spin_connection(&round(), 0.0);
        let e = gamma::<f64>();
        for i in 0..3 {
            assert!((a.matrices[i] - e[i].scale(-0.5)).max_abs() < 1e-15);
        }
        assert!(leibniz_residual(&round(), &a) < 1e-15);
    }

    #[test]
    fn curvature_routes_agree() {
        let s = spin_curvature(&HomogeneousWeylGeometry::<f64>::flat(), 0.0).unwrap();
        assert_eq!(two_form_max(&s.commutator), 0.0);
        assert_eq!(two_form_max(&s.formula), 0.0);
        let s = spin_curvature(&round(), 0.0).unwrap();
        assert!(s.mismatch < 1e-12);
        let g = HomogeneousWeylGeometry::milnor([1.7, -0.3, 0.9], [0.4, -0.6, 0.2]);
        assert!(spin_curvature(&g, 0.0).unwrap().mismatch < 1e-13);
        assert!(matches!(spin_curvature(&g, 1.0), Err(Error::FormulaUnavailable { .. })));
    }

    #[test]
    fn killing_connection_examples() {
        let e = gamma::<f64>();
        let g = HomogeneousWeylGeometry::milnor([1.0, 0.5, -0.2], [0.1, 0.2, 0.3]);
        let b0 = killing_connection(&g, &WeightedDensity::beta(0.0));
        assert_eq!(b0.matrices, spin_connection(&g, 0.0).matrices);
        let minus = killing_connection(&round(), &WeightedDensity::beta(-0.5));
        assert!(minus.matrices.iter().all(|m| m.max_abs() < 1e-15));
        let plus = killing_connection(&round(), &WeightedDensity::beta(0.5));
        for i in 0..3 {
            assert!((plus.matrices[i] + e[i]).max_abs() < 1e-15);
        }
    }

    #[test]
    fn killing_curvature_examples() {
        let k = killing_curvature(&HomogeneousWeylGeometry::<f64>::flat(), &WeightedDensity::beta(0.0));
        assert_eq!(k.residual, 0.0);
        for b in [0.5, -0.5] {
            let k = killing_curvature(&round(), &WeightedDensity::beta(b));
            assert!(k.residual < 1e-12);
            assert!(k.expansion_deviation < 1e-12);
        }
        let k = killing_curvature(&round(), &WeightedDensity::beta(0.3));
        assert!(k.residual > 1e-2);
    }

    #[test]
    fn expansion_matches_commutator_off_shell() {
        let g = HomogeneousWeylGeometry::milnor([0.8, 1.9, -1.1], [0.5, -0.2, 0.9]);
        let k = killing_curvature(&g, &WeightedDensity::beta(0.37));
        assert!(k.residual > 1e-2);
        assert!(k.expansion_deviation < 1e-13);
    }

    #[test]
    fn killing_connection_commutes_with_j() {
        let g = HomogeneousWeylGeometry::milnor([0.8, 1.9, -1.1], [0.5, -0.2, 0.9]);
        let b = killing_connection(&g, &WeightedDensity::beta(-0.7));
        assert!(j_equivariance_residual(&b) < 1e-15);
        // a nonzero weight adds a real multiple of Id, still J-equivariant
        assert!(j_equivariance_residual(&spin_connection(&g, 1.0)) < 1e-15);
    }
}
