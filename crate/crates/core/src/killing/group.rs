//! Simply connected group models for Milnor frames.
//!
//! Only the groups needed for Killing-spinor construction are modelled: the
//! abelian group `ℝ³` (all `λ = 0`) and `SU(2)` as unit quaternions (all `λ`
//! nonzero and of one sign). In the latter case the frame is
//! `e_i = s·μ_i·u_i` with `[u_i, u_j] = 2ε_ijk u_k` the quaternion units,
//! `μ_k = ½ sqrt(λ_i λ_j)` and `s = sign λ`.

use crate::error::{Error, Result};
use crate::homgeo::HomogeneousWeylGeometry;
use crate::scalar::Real;

/// Tolerance on off-diagonal structure constants when recognizing a Milnor frame.
pub const MILNOR_TOL: f64 = 1e-12;
/// Group elements closer than this count as equal when closing loops.
pub const CLOSURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupModel<T> {
    Abelian,
    Spherical { mu: [T; 3], orientation: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupPoint<T> {
    Translation([T; 3]),
    /// `(w, x, y, z)`, unit norm.
    Quaternion([T; 4]),
}

/// A one-parameter arc `t ↦ g·exp(t Σ d_i e_i)`, `t ∈ [0, length]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupArc<T> {
    direction: [T; 3],
    length: T,
}

impl<T: Real> GroupArc<T> {
    /// Normalizes `direction`; a zero direction becomes `e₁` with zero length.
    pub fn new(direction: [T; 3], length: T) -> Self {
        let n = norm3(&direction);
        if n == T::zero() {
            return Self {
                direction: [T::one(), T::zero(), T::zero()],
                length: T::zero(),
            };
        }
        Self {
            direction: direction.map(|x| x / n),
            length,
        }
    }

    /// The arc `exp(Σ x_i e_i)` from a frame vector.
    pub fn from_vector(x: [T; 3]) -> Self {
        let n = norm3(&x);
        if n == T::zero() {
            return Self::new(x, T::zero());
        }
        Self {
            direction: x.map(|v| v / n),
            length: n,
        }
    }

    pub fn direction(&self) -> [T; 3] {
        self.direction
    }

    pub fn length(&self) -> T {
        self.length
    }

    /// `length · direction`.
    pub fn vector(&self) -> [T; 3] {
        self.direction.map(|d| d * self.length)
    }

    pub fn reversed(&self) -> Self {
        Self {
            direction: self.direction,
            length: -self.length,
        }
    }
}

pub(crate) fn norm3<T: Real>(v: &[T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn qmul<T: Real>(a: &[T; 4], b: &[T; 4]) -> [T; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

impl<T: Real> GroupModel<T> {
    pub fn from_geometry(g: &HomogeneousWeylGeometry<T>) -> Result<Self> {
        let lambda = g
            .milnor_lambda(T::lit(MILNOR_TOL))
            .ok_or_else(|| Error::UnsupportedGroup("structure constants are not Milnor-diagonal".into()))?;
        if lambda.iter().all(|&l| l == T::zero()) {
            return Ok(Self::Abelian);
        }
        let positive = lambda.iter().all(|&l| l > T::zero());
        let negative = lambda.iter().all(|&l| l < T::zero());
        if !(positive || negative) {
            return Err(Error::UnsupportedGroup(format!(
                "Milnor parameters {lambda:?} do not describe SU(2) or the abelian group"
            )));
        }
        let half = T::lit(0.5);
        let mu = [
            half * (lambda[1] * lambda[2]).sqrt(),
            half * (lambda[2] * lambda[0]).sqrt(),
            half * (lambda[0] * lambda[1]).sqrt(),
        ];
        let orientation = if positive { T::one() } else { -T::one() };
        Ok(Self::Spherical { mu, orientation })
    }

    pub fn identity(&self) -> GroupPoint<T> {
        match self {
            Self::Abelian => GroupPoint::Translation([T::zero(); 3]),
            Self::Spherical { .. } => GroupPoint::Quaternion([T::one(), T::zero(), T::zero(), T::zero()]),
        }
    }

    /// Group exponential of the frame vector `Σ x_i e_i`.
    pub fn exp(&self, x: &[T; 3]) -> GroupPoint<T> {
        match self {
            Self::Abelian => GroupPoint::Translation(*x),
            Self::Spherical { mu, orientation } => {
                let v = [0, 1, 2].map(|i| *orientation * mu[i] * x[i]);
                let n = norm3(&v);
                if n == T::zero() {
                    return self.identity();
                }
                let s = n.sin() / n;
                GroupPoint::Quaternion([n.cos(), v[0] * s, v[1] * s, v[2] * s])
            }
        }
    }

    /// Group logarithm as frame coefficients; for SU(2) the rotation angle lies in `[0, 2π]`.
    pub fn log(&self, p: &GroupPoint<T>) -> [T; 3] {
        match (self, p) {
            (Self::Abelian, GroupPoint::Translation(v)) => *v,
            (Self::Spherical { mu, orientation }, GroupPoint::Quaternion(q)) => {
                let vec = [q[1], q[2], q[3]];
                let s = norm3(&vec);
                let phi = s.atan2(q[0]);
                let axis = if s > T::zero() {
                    vec.map(|x| x / s)
                } else {
                    [T::one(), T::zero(), T::zero()]
                };
                [0, 1, 2].map(|i| phi * axis[i] / (*orientation * mu[i]))
            }
            _ => panic!("group point does not belong to this model"),
        }
    }

    pub fn mul(&self, a: &GroupPoint<T>, b: &GroupPoint<T>) -> GroupPoint<T> {
        match (a, b) {
            (GroupPoint::Translation(x), GroupPoint::Translation(y)) => {
                GroupPoint::Translation([x[0] + y[0], x[1] + y[1], x[2] + y[2]])
            }
            (GroupPoint::Quaternion(p), GroupPoint::Quaternion(q)) => GroupPoint::Quaternion(qmul(p, q)),
            _ => panic!("mixed group point types"),
        }
    }

    pub fn inverse(&self, a: &GroupPoint<T>) -> GroupPoint<T> {
        match a {
            GroupPoint::Translation(x) => GroupPoint::Translation(x.map(|v| -v)),
            GroupPoint::Quaternion(q) => GroupPoint::Quaternion([q[0], -q[1], -q[2], -q[3]]),
        }
    }

    pub fn distance(&self, a: &GroupPoint<T>, b: &GroupPoint<T>) -> T {
        match (a, b) {
            (GroupPoint::Translation(x), GroupPoint::Translation(y)) => {
                norm3(&[x[0] - y[0], x[1] - y[1], x[2] - y[2]])
            }
            (GroupPoint::Quaternion(p), GroupPoint::Quaternion(q)) => {
                (0..4).fold(T::zero(), |s, i| s + (p[i] - q[i]) * (p[i] - q[i])).sqrt()
            }
            _ => T::infinity(),
        }
    }

    /// Endpoint of an arc sequence started at the identity.
    pub fn endpoint(&self, arcs: &[GroupArc<T>]) -> GroupPoint<T> {
        arcs.iter()
            .fold(self.identity(), |p, arc| self.mul(&p, &self.exp(&arc.vector())))
    }

    /// Closed loop `exp(X)·exp(Y)·exp(Z)` with `Z = log((exp X exp Y)⁻¹)`.
    pub fn triangle_loop(&self, x: [T; 3], y: [T; 3]) -> Vec<GroupArc<T>> {
        let p = self.mul(&self.exp(&x), &self.exp(&y));
        let z = self.log(&self.inverse(&p));
        vec![GroupArc::from_vector(x), GroupArc::from_vector(y), GroupArc::from_vector(z)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_sphere_model_is_unit_quaternions() {
        let g = HomogeneousWeylGeometry::milnor([2.0, 2.0, 2.0], [0.0; 3]);
        let m = GroupModel::from_geometry(&g).unwrap();
        assert_eq!(m, GroupModel::Spherical { mu: [1.0; 3], orientation: 1.0 });
        // exp(π e₃) = −1 in SU(2)
        let p = m.exp(&[0.0, 0.0, std::f64::consts::PI]);
        assert!(m.distance(&p, &GroupPoint::Quaternion([-1.0, 0.0, 0.0, 0.0])) < 1e-15);
    }

    #[test]
    fn log_inverts_exp() {
        for lambda in [[2.0, 2.0, 2.0], [1.0, 3.0, 0.5], [-1.0, -2.0, -0.7]] {
            let m = GroupModel::from_geometry(&HomogeneousWeylGeometry::milnor(lambda, [0.0; 3])).unwrap();
            let x: [f64; 3] = [0.3, -0.4, 0.2];
            let back = m.log(&m.exp(&x));
            for i in 0..3 {
                assert!((back[i] - x[i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn triangle_loops_close() {
        let m = GroupModel::from_geometry(&HomogeneousWeylGeometry::milnor([1.0, 3.0, 0.5], [0.0; 3])).unwrap();
        let arcs = m.triangle_loop([0.9, -1.3, 0.4], [-0.2, 2.1, 1.7]);
        assert!(m.distance(&m.endpoint(&arcs), &m.identity()) < 1e-14);
        let flat = GroupModel::<f64>::Abelian;
        let arcs = flat.triangle_loop([1.0, 2.0, 3.0], [0.5, 0.5, -1.0]);
        assert_eq!(arcs[2].vector(), [-1.5, -2.5, -2.0]);
    }

    #[test]
    fn unsupported_groups() {
        let sol = HomogeneousWeylGeometry::milnor([1.0, -1.0, 0.0], [0.0; 3]);
        assert!(matches!(GroupModel::from_geometry(&sol), Err(Error::UnsupportedGroup(_))));
    }
}
