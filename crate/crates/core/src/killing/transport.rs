//! Parallel transport along group arcs and holonomy of closed loops.

use crate::cliff::{Mat2, Spinor};
use crate::error::{Error, Result};
use crate::homgeo::{HomogeneousWeylGeometry, WeightedDensity};
use crate::killing::group::{GroupArc, GroupModel, CLOSURE_TOL};
use crate::scalar::Real;
use crate::spincurv::{killing_connection, SpinConnection};

/// `exp(−t Σ d_i M_i)`: parallel sections along `t ↦ g·exp(t d)` solve
/// `ψ' = −(Σ d_i M_i) ψ` in the frame trivialization.
pub fn arc_matrix<T: Real>(conn: &SpinConnection<T>, arc: &GroupArc<T>) -> Mat2<T> {
    conn.along(&arc.direction()).scale(-arc.length()).exp()
}

/// Ordered product `M_n ⋯ M_1` of the arc transports.
pub fn path_matrix<T: Real>(conn: &SpinConnection<T>, arcs: &[GroupArc<T>]) -> Mat2<T> {
    arcs.iter()
        .fold(Mat2::identity(), |acc, arc| arc_matrix(conn, arc) * acc)
}

/// Killing-connection transport of `psi0` along one arc.
pub fn transport_arc<T: Real>(
    g: &HomogeneousWeylGeometry<T>,
    beta: &WeightedDensity<T>,
    arc: &GroupArc<T>,
    psi0: &Spinor<T>,
) -> Spinor<T> {
    arc_matrix(&killing_connection(g, beta), arc).apply(psi0)
}

/// Adaptive RK4 with step doubling for `ψ' = −(Σ d_i M_i) ψ`; an independent
/// check on [`arc_matrix`]. `tol` bounds the local error per step.
pub fn integrate_arc<T: Real>(conn: &SpinConnection<T>, arc: &GroupArc<T>, psi0: &Spinor<T>, tol: T) -> Spinor<T> {
    let m = -conn.along(&arc.direction());
    let total = arc.length();
    if total == T::zero() {
        return *psi0;
    }
    let sign = total.signum();
    let span = total.abs();
    let rhs = |psi: &Spinor<T>| m.apply(psi) * sign;
    let rk4 = |psi: &Spinor<T>, h: T| {
        let half = T::lit(0.5);
        let k1 = rhs(psi);
        let k2 = rhs(&(*psi + k1 * (h * half)));
        let k3 = rhs(&(*psi + k2 * (h * half)));
        let k4 = rhs(&(*psi + k3 * h));
        *psi + (k1 + k2 * T::lit(2.0) + k3 * T::lit(2.0) + k4) * (h / T::lit(6.0))
    };
    let mut t = T::zero();
    let mut h = span.min(T::lit(0.1));
    let mut psi = *psi0;
    let fifteenth = T::lit(1.0 / 15.0);
    while t < span {
        h = h.min(span - t);
        let full = rk4(&psi, h);
        let halves = rk4(&rk4(&psi, h * T::lit(0.5)), h * T::lit(0.5));
        let err = (halves - full).max_abs() * fifteenth;
        if err <= tol || h < T::lit(1e-12) {
            t = t + h;
            psi = halves + (halves - full) * fifteenth;
            let grow = if err > T::zero() {
                (T::lit(0.9) * (tol / err).powf(T::lit(0.2))).min(T::lit(4.0))
            } else {
                T::lit(4.0)
            };
            h = h * grow;
        } else {
            h = h * (T::lit(0.9) * (tol / err).powf(T::lit(0.2))).max(T::lit(0.1));
        }
    }
    psi
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Holonomy<T> {
    pub matrix: Mat2<T>,
    /// `max |matrix − Id|`.
    pub deviation: T,
}

/// Holonomy of the Killing connection around a closed arc sequence.
pub fn loop_holonomy<T: Real>(
    g: &HomogeneousWeylGeometry<T>,
    beta: &WeightedDensity<T>,
    arcs: &[GroupArc<T>],
) -> Result<Holonomy<T>> {
    if arcs.is_empty() {
        return Ok(Holonomy {
            matrix: Mat2::identity(),
            deviation: T::zero(),
        });
    }
    let model = GroupModel::from_geometry(g)?;
    let closure = model.distance(&model.endpoint(arcs), &model.identity());
    if closure >= T::lit(CLOSURE_TOL) {
        return Err(Error::OpenPath {
            deviation: closure.as_f64(),
        });
    }
    let matrix = path_matrix(&killing_connection(g, beta), arcs);
    Ok(Holonomy {
        matrix,
        deviation: (matrix - Mat2::identity()).max_abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliff::{gamma, j_structure};
    use num_complex::Complex;

    fn round() -> HomogeneousWeylGeometry<f64> {
        HomogeneousWeylGeometry::milnor([2.0, 2.0, 2.0], [0.0; 3])
    }

    fn psi() -> Spinor<f64> {
        Spinor::from_re_im([0.5, -1.0], [0.25, 0.75])
    }

    #[test]
    fn transport_examples() {
        let b = WeightedDensity::beta(0.5);
        let arc0 = GroupArc::new([0.3, 0.4, 0.5], 0.0);
        assert_eq!(transport_arc(&round(), &b, &arc0, &psi()), psi());
        let flat = HomogeneousWeylGeometry::flat();
        let arc = GroupArc::new([1.0, -2.0, 0.5], 3.0);
        assert_eq!(transport_arc(&flat, &WeightedDensity::beta(0.0), &arc, &psi()), psi());
        // B_i = −e_i, so transport is exp(π e₃) = cos π + sin π e₃ = −1
        let arc = GroupArc::new([0.0, 0.0, 1.0], std::f64::consts::PI);
        let out = transport_arc(&round(), &b, &arc, &psi());
        let e3 = gamma::<f64>()[2];
        let closed = (Mat2::identity().scale(std::f64::consts::PI.cos()) + e3.scale(std::f64::consts::PI.sin())).apply(&psi());
        assert!((out - closed).max_abs() < 1e-15);
        assert!((out + psi()).max_abs() < 1e-15);
    }

    #[test]
    fn integrator_agrees_with_exponential() {
        let g = HomogeneousWeylGeometry::milnor([1.3, 0.7, 2.1], [0.2, -0.4, 0.6]);
        let conn = killing_connection(&g, &WeightedDensity::beta(0.35));
        for (d, t) in [([1.0, 0.0, 0.0], 2.0), ([0.3, -0.5, 0.8], -1.7)] {
            let arc = GroupArc::new(d, t);
            let exact = arc_matrix(&conn, &arc).apply(&psi());
            let num = integrate_arc(&conn, &arc, &psi(), 1e-13);
            assert!((exact - num).max_abs() < 1e-8, "{:e}", (exact - num).max_abs());
        }
    }

    #[test]
    fn collinear_arcs_compose() {
        let g = HomogeneousWeylGeometry::milnor([1.3, 0.7, 2.1], [0.2, -0.4, 0.6]);
        let conn = killing_connection(&g, &WeightedDensity::beta(0.35));
        let d = [0.6, 0.0, -0.8];
        let whole = arc_matrix(&conn, &GroupArc::new(d, 1.9));
        let split = arc_matrix(&conn, &GroupArc::new(d, 0.7)) * arc_matrix(&conn, &GroupArc::new(d, 1.2));
        assert!((whole - split).max_abs() < 1e-12);
    }

    #[test]
    fn transport_commutes_with_j() {
        let g = HomogeneousWeylGeometry::milnor([1.3, 0.7, 2.1], [0.2, -0.4, 0.6]);
        let b = WeightedDensity::beta(-0.8);
        let arc = GroupArc::new([0.1, 0.9, -0.3], 2.4);
        let a = transport_arc(&g, &b, &arc, &j_structure(&psi()));
        let c = j_structure(&transport_arc(&g, &b, &arc, &psi()));
        assert!((a - c).max_abs() < 1e-14);
        let _ = Complex::new(0.0, 1.0);
    }

    #[test]
    fn holonomy_examples() {
        let b = WeightedDensity::beta(0.5);
        let h = loop_holonomy(&round(), &b, &[]).unwrap();
        assert_eq!(h.deviation, 0.0);
        let model = GroupModel::from_geometry(&round()).unwrap();
        let arcs = model.triangle_loop([0.8, -0.2, 0.5], [0.1, 1.1, -0.6]);
        assert!(loop_holonomy(&round(), &b, &arcs).unwrap().deviation < 1e-12);
        let off = loop_holonomy(&round(), &WeightedDensity::beta(0.3), &arcs).unwrap();
        assert!(off.deviation > 1e-3);
        let open = [GroupArc::new([1.0, 0.0, 0.0], 0.5)];
        assert!(matches!(loop_holonomy(&round(), &b, &open), Err(Error::OpenPath { .. })));
    }
}
