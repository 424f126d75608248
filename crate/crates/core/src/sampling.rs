//! Random inputs for property sweeps, and known Gauduchon–Tod instances.
//!
//! All draws go through a caller-supplied [`Rng`], so sweeps are reproducible
//! from a single seed.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::cliff::Spinor;
use crate::homgeo::{HomogeneousWeylGeometry, WeightedDensity};
use crate::multilin::FrameTensor;
use crate::scalar::Real;

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

fn uniform<T: Real, R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> T {
    T::lit(rng.gen_range(lo..hi))
}

/// Spinor with independent standard normal real and imaginary parts.
pub fn spinor<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Spinor<T> {
    Spinor::from_re_im([normal(rng), normal(rng)], [normal(rng), normal(rng)])
}

pub fn vector<T: Real, R: Rng + ?Sized>(rng: &mut R) -> [T; 3] {
    [normal(rng), normal(rng), normal(rng)]
}

pub fn unit_vector<T: Real, R: Rng + ?Sized>(rng: &mut R) -> [T; 3] {
    loop {
        let v: [T; 3] = vector(rng);
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > T::lit(1e-6) {
            return v.map(|x| x / n);
        }
    }
}

/// Rank-2 tensor with standard normal entries.
pub fn matrix<T: Real, R: Rng + ?Sized>(rng: &mut R) -> FrameTensor<T> {
    FrameTensor::from_fn(2, |_| normal(rng))
}

/// Antisymmetric rank-2 tensor with standard normal independent entries.
pub fn two_form<T: Real, R: Rng + ?Sized>(rng: &mut R) -> FrameTensor<T> {
    let (a, b, c): (T, T, T) = (normal(rng), normal(rng), normal(rng));
    FrameTensor::from_matrix([[T::zero(), a, b], [-a, T::zero(), c], [-b, -c, T::zero()]])
}

/// Uniformly distributed rotation in SO(3), from a random unit quaternion.
pub fn rotation<T: Real, R: Rng + ?Sized>(rng: &mut R) -> [[T; 3]; 3] {
    let q: [T; 4] = loop {
        let q: [T; 4] = [normal(rng), normal(rng), normal(rng), normal(rng)];
        let n = q.iter().fold(T::zero(), |s: T, &x| s + x * x).sqrt();
        if n > T::lit(1e-6) {
            break q.map(|x| x / n);
        }
    };
    let [w, x, y, z] = q;
    let one = T::one();
    let two = T::lit(2.0);
    [
        [one - two * (y * y + z * z), two * (x * y - w * z), two * (x * z + w * y)],
        [two * (x * y + w * z), one - two * (x * x + z * z), two * (y * z - w * x)],
        [two * (x * z - w * y), two * (y * z + w * x), one - two * (x * x + y * y)],
    ]
}

/// Milnor geometry with `λ` uniform in `[−lambda_max, lambda_max]³` and `θ` uniform in
/// `[−theta_max, theta_max]³`.
pub fn milnor_geometry<T: Real, R: Rng + ?Sized>(rng: &mut R, lambda_max: f64, theta_max: f64) -> HomogeneousWeylGeometry<T> {
    let l = [(); 3].map(|_| uniform(rng, -lambda_max, lambda_max));
    let t = [(); 3].map(|_| uniform(rng, -theta_max, theta_max));
    HomogeneousWeylGeometry::milnor(l, t)
}

/// Gauduchon–Tod Berger spheres.
///
/// `λ = (a, a, b)` with `0 < b ≤ a` (or `a ≤ b < 0`), `θ = (0, 0, ±sqrt(b(a − b)))`,
/// `β = b/4`. Einstein–Weyl forces `θ₃² = b(a − b)`, then `R = 3b²/2 = 24β²`
/// and `4∇β = *F` reduce to `λ₃ = 4β`. At `b = a` the form vanishes and
/// `β = −b/4` is admissible as well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergerGt<T> {
    pub a: T,
    pub b: T,
    pub theta_sign: T,
}

impl<T: Real> BergerGt<T> {
    pub fn new(a: T, b: T, theta_sign: T) -> Self {
        Self { a, b, theta_sign }
    }

    pub fn theta3(&self) -> T {
        let t2 = (self.b * (self.a - self.b)).max(T::zero());
        self.theta_sign * t2.sqrt()
    }

    pub fn geometry(&self) -> HomogeneousWeylGeometry<T> {
        HomogeneousWeylGeometry::milnor([self.a, self.a, self.b], [T::zero(), T::zero(), self.theta3()])
    }

    pub fn beta(&self) -> WeightedDensity<T> {
        WeightedDensity::beta(self.b / T::lit(4.0))
    }
}

/// Random Berger GT instance with `|a| ∈ [0.5, 3)`, `b/a ∈ [0.05, 1]`.
pub fn berger_gt<T: Real, R: Rng + ?Sized>(rng: &mut R) -> BergerGt<T> {
    let a: f64 = rng.gen_range(0.5..3.0) * if rng.gen_bool(0.8) { 1.0 } else { -1.0 };
    let ratio: f64 = if rng.gen_bool(0.1) { 1.0 } else { rng.gen_range(0.05..1.0) };
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    BergerGt::new(T::lit(a), T::lit(a * ratio), T::lit(sign))
}

/// Cyclic relabeling of the Milnor axes (an orientation-preserving frame change).
pub fn cycle_axes<T: Real>(g: &HomogeneousWeylGeometry<T>, shift: usize) -> HomogeneousWeylGeometry<T> {
    let mut r = [[T::zero(); 3]; 3];
    for (a, row) in r.iter_mut().enumerate() {
        row[(a + shift) % 3] = T::one();
    }
    g.rotate_frame(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homgeo::analyze;
    use crate::spincurv::killing_curvature;
    use rand::SeedableRng;

    #[test]
    fn berger_family_is_gt_and_flat() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let inst = berger_gt::<f64, _>(&mut rng);
            let g = cycle_axes(&inst.geometry(), rng.gen_range(0..3));
            let rep = analyze(&g, &inst.beta(), 1e-12);
            assert!(rep.verdict, "{inst:?} {rep:?}");
            assert!(killing_curvature(&g, &inst.beta()).residual < 1e-12);
        }
    }

    #[test]
    fn rotations_are_orthonormal() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        let r = rotation::<f64, _>(&mut rng);
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = (0..3).map(|k| r[i][k] * r[j][k]).sum();
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }
}
