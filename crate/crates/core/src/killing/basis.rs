//! The space of Killing spinors on a flat (Gauduchon–Tod) homogeneous geometry.

use crate::cliff::{gamma, j_structure, Mat2, Spinor};
use crate::error::{Error, Result};
use crate::homgeo::{HomogeneousWeylGeometry, WeightedDensity};
use crate::killing::group::{GroupArc, GroupModel, GroupPoint};
use crate::killing::transport::{arc_matrix, path_matrix};
use crate::scalar::Real;
use crate::spincurv::{killing_connection, killing_curvature, spin_connection, SpinConnection};

/// Default flatness tolerance for [`killing_basis`].
pub const FLATNESS_TOL: f64 = 1e-10;

/// Two Killing spinors `ψ₁ = transport of (1,0)` and `ψ₂ = J ψ₁`, defined on the
/// whole simply connected group by parallel transport of the flat Killing connection.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingBasis<T> {
    geometry: HomogeneousWeylGeometry<T>,
    beta: WeightedDensity<T>,
    killing: SpinConnection<T>,
    plain: SpinConnection<T>,
    model: GroupModel<T>,
    base_values: [Spinor<T>; 2],
}

pub fn killing_basis<T: Real>(g: &HomogeneousWeylGeometry<T>, beta: &WeightedDensity<T>) -> Result<KillingBasis<T>> {
    killing_basis_with_tol(g, beta, T::lit(FLATNESS_TOL))
}

pub fn killing_basis_with_tol<T: Real>(
    g: &HomogeneousWeylGeometry<T>,
    beta: &WeightedDensity<T>,
    tolerance: T,
) -> Result<KillingBasis<T>> {
    let curvature = killing_curvature(g, beta);
    if !(curvature.residual < tolerance) {
        return Err(Error::NotFlat {
            residual: curvature.residual.as_f64(),
            tolerance: tolerance.as_f64(),
        });
    }
    let model = GroupModel::from_geometry(g)?;
    let up = Spinor::up();
    Ok(KillingBasis {
        geometry: *g,
        beta: *beta,
        killing: killing_connection(g, beta),
        plain: spin_connection(g, T::zero()),
        model,
        base_values: [up, j_structure(&up)],
    })
}

impl<T: Real> KillingBasis<T> {
    pub fn base_values(&self) -> [Spinor<T>; 2] {
        self.base_values
    }

    pub fn model(&self) -> &GroupModel<T> {
        &self.model
    }

    pub fn geometry(&self) -> &HomogeneousWeylGeometry<T> {
        &self.geometry
    }

    pub fn beta(&self) -> &WeightedDensity<T> {
        &self.beta
    }

    pub fn connection(&self) -> &SpinConnection<T> {
        &self.killing
    }

    fn apply(&self, m: &Mat2<T>) -> [Spinor<T>; 2] {
        self.base_values.map(|s| m.apply(&s))
    }

    /// Values at the endpoint of `arcs`, transported along `arcs`.
    pub fn transporter(&self, arcs: &[GroupArc<T>]) -> [Spinor<T>; 2] {
        self.apply(&path_matrix(&self.killing, arcs))
    }

    /// Values at `p`, transported along the one-parameter arc `exp(t·log p)`.
    pub fn value_at(&self, p: &GroupPoint<T>) -> [Spinor<T>; 2] {
        let arc = GroupArc::from_vector(self.model.log(p));
        self.apply(&arc_matrix(&self.killing, &arc))
    }

    /// `max |transporter(arcs) − value_at(endpoint)|`.
    pub fn path_independence(&self, arcs: &[GroupArc<T>]) -> T {
        let along = self.transporter(arcs);
        let direct = self.value_at(&self.model.endpoint(arcs));
        along
            .iter()
            .zip(&direct)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).max_abs()))
    }

    /// Smallest singular value of the matrix of normalized basis values at `p`.
    pub fn min_singular_value(&self, p: &GroupPoint<T>) -> T {
        let [a, b] = self.value_at(p);
        Mat2::from_columns(a * (T::one() / a.norm()), b * (T::one() / b.norm())).min_singular_value()
    }

    /// `max_i |e_i(ψ) + A_i ψ − β e_i ψ| / |ψ|` at `p` for both basis spinors, with
    /// `e_i(ψ)` from central differences over `p·exp(±h e_i)`.
    pub fn residual_at(&self, p: &GroupPoint<T>, h: T) -> T {
        let e = gamma::<T>();
        let here = self.value_at(p);
        let mut worst = T::zero();
        for i in 0..3 {
            let mut step = [T::zero(); 3];
            step[i] = h;
            let fwd = self.value_at(&self.model.mul(p, &self.model.exp(&step)));
            step[i] = -h;
            let bwd = self.value_at(&self.model.mul(p, &self.model.exp(&step)));
            for n in 0..2 {
                let deriv = (fwd[n] - bwd[n]) * (T::one() / (T::lit(2.0) * h));
                let psi = here[n];
                let r = deriv + self.plain.apply(i, &psi) - e[i].apply(&psi) * self.beta.value;
                worst = worst.max(r.norm() / psi.norm());
            }
        }
        worst
    }
}

/// Worst finite-difference Killing residual over the endpoints of `samples`.
pub fn killing_residual<T: Real>(basis: &KillingBasis<T>, samples: &[Vec<GroupArc<T>>], h: T) -> T {
    samples.iter().fold(T::zero(), |m, arcs| {
        m.max(basis.residual_at(&basis.model().endpoint(arcs), h))
    })
}
