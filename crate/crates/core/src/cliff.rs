//! Irreducible representation of the real Clifford algebra of ℝ³ on ℂ².
//!
//! Generators are `e_k = i·σ_k` (Pauli matrices), so that
//! `e_i e_j + e_j e_i = −2δ_ij` and `e_i e_j = −Σ_k ε_ijk e_k` for `i ≠ j`.
//! The quaternionic structure is `J ψ = e₂ · conj(ψ)`, which is antilinear,
//! squares to `−1` and commutes with Clifford multiplication by real vectors.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

/// Levi-Civita symbol on 0-based frame indices.
#[inline]
pub fn levi_civita(i: usize, j: usize, k: usize) -> i8 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T> {
    pub c: [Complex<T>; 2],
}

impl<T: Real> Spinor<T> {
    pub fn new(a: Complex<T>, b: Complex<T>) -> Self {
        Self { c: [a, b] }
    }

    pub fn from_re_im(re: [T; 2], im: [T; 2]) -> Self {
        Self::new(Complex::new(re[0], im[0]), Complex::new(re[1], im[1]))
    }

    /// The spinor `(1, 0)`.
    pub fn up() -> Self {
        Self::new(Complex::new(T::one(), T::zero()), Complex::zero())
    }

    /// The spinor `(0, 1)`.
    pub fn down() -> Self {
        Self::new(Complex::zero(), Complex::new(T::one(), T::zero()))
    }

    pub fn norm_sqr(&self) -> T {
        self.c[0].norm_sqr() + self.c[1].norm_sqr()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Largest modulus of the two components.
    pub fn max_abs(&self) -> T {
        self.c[0].norm().max(self.c[1].norm())
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale_complex(self, z: Complex<T>) -> Self {
        Self::new(self.c[0] * z, self.c[1] * z)
    }

    /// Hermitian inner product `⟨self, other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.c[0].conj() * other.c[0] + self.c[1].conj() * other.c[1]
    }
}

impl<T: Real> Add for Spinor<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.c[0] + rhs.c[0], self.c[1] + rhs.c[1])
    }
}

impl<T: Real> AddAssign for Spinor<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> Sub for Spinor<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c[0] - rhs.c[0], self.c[1] - rhs.c[1])
    }
}

impl<T: Real> Neg for Spinor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c[0], -self.c[1])
    }
}

impl<T: Real> Mul<T> for Spinor<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.c[0] * s, self.c[1] * s)
    }
}

impl<T: Real> Zero for Spinor<T> {
    fn zero() -> Self {
        Self::new(Complex::zero(), Complex::zero())
    }
    fn is_zero(&self) -> bool {
        self.c[0].is_zero() && self.c[1].is_zero()
    }
}

/// Complex 2×2 matrix acting on spinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(m: [[Complex<T>; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self::new([[Complex::zero(); 2]; 2])
    }

    pub fn identity() -> Self {
        Self::scalar(Complex::new(T::one(), T::zero()))
    }

    pub fn scalar(z: Complex<T>) -> Self {
        Self::new([[z, Complex::zero()], [Complex::zero(), z]])
    }

    /// Matrix whose columns are the two spinors.
    pub fn from_columns(a: Spinor<T>, b: Spinor<T>) -> Self {
        Self::new([[a.c[0], b.c[0]], [a.c[1], b.c[1]]])
    }

    pub fn column(&self, j: usize) -> Spinor<T> {
        Spinor::new(self.m[0][j], self.m[1][j])
    }

    pub fn apply(&self, psi: &Spinor<T>) -> Spinor<T> {
        Spinor::new(
            self.m[0][0] * psi.c[0] + self.m[0][1] * psi.c[1],
            self.m[1][0] * psi.c[0] + self.m[1][1] * psi.c[1],
        )
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let m = &self.m;
        Self::new([[f(m[0][0]), f(m[0][1])], [f(m[1][0]), f(m[1][1])]])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn max_abs(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn frobenius(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Smallest singular value, via `σ_min = |det| / σ_max`.
    pub fn min_singular_value(&self) -> T {
        let h = self.adjoint() * *self;
        let half_tr = h.trace().re * T::lit(0.5);
        let det_abs = self.det().norm();
        let disc = (half_tr * half_tr - det_abs * det_abs).max(T::zero());
        let smax_sq = half_tr + disc.sqrt();
        if smax_sq <= T::zero() {
            return T::zero();
        }
        det_abs / smax_sq.sqrt()
    }

    /// Matrix exponential in closed form.
    ///
    /// Writes `M = (tr M / 2)·Id + N` with `N` traceless, so `N² = δ·Id` and
    /// `exp M = e^{tr/2} (cosh r · Id + sinh(r)/r · N)` with `r² = δ`.
    pub fn exp(&self) -> Self {
        let half = T::lit(0.5);
        let shift = self.trace() * half;
        let n = *self - Self::scalar(shift);
        let delta = -n.det();
        let r = delta.sqrt();
        let (ch, shc) = if r.norm() < T::lit(1e-4) {
            // even series in r; truncation error ~ r^6 / 5040
            let d = delta;
            let two = T::lit(2.0);
            let one = Complex::new(T::one(), T::zero());
            (
                one + d / two + d * d / T::lit(24.0) + d * d * d / T::lit(720.0),
                one + d / T::lit(6.0) + d * d / T::lit(120.0) + d * d * d / T::lit(5040.0),
            )
        } else {
            (r.cosh(), r.sinh() / r)
        };
        let e = shift.exp();
        (Self::scalar(ch) + n.scale_complex(shc)).scale_complex(e)
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        let mut out = [[Complex::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::new(out)
    }
}

impl<T: Real> Mul<Spinor<T>> for Mat2<T> {
    type Output = Spinor<T>;
    fn mul(self, psi: Spinor<T>) -> Spinor<T> {
        self.apply(&psi)
    }
}

impl<T: Real> Zero for Mat2<T> {
    fn zero() -> Self {
        Mat2::zero()
    }
    fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|z| z.is_zero())
    }
}

/// One of the three Clifford generators together with its frame index (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordGenerator<T> {
    pub index: usize,
    pub matrix: Mat2<T>,
}

/// The pinned generators `e₁ = iσ₁`, `e₂ = iσ₂`, `e₃ = iσ₃`.
pub fn generators<T: Real>() -> [CliffordGenerator<T>; 3] {
    let o = T::zero();
    let l = T::one();
    let c = |re: T, im: T| Complex::new(re, im);
    let e1 = Mat2::new([[c(o, o), c(o, l)], [c(o, l), c(o, o)]]);
    let e2 = Mat2::new([[c(o, o), c(l, o)], [c(-l, o), c(o, o)]]);
    let e3 = Mat2::new([[c(o, l), c(o, o)], [c(o, o), c(o, -l)]]);
    [
        CliffordGenerator { index: 0, matrix: e1 },
        CliffordGenerator { index: 1, matrix: e2 },
        CliffordGenerator { index: 2, matrix: e3 },
    ]
}

/// Generator matrices only.
pub fn gamma<T: Real>() -> [Mat2<T>; 3] {
    generators::<T>().map(|g| g.matrix)
}

/// `Σ v_k e_k` as a matrix.
pub fn clifford_matrix<T: Real>(v: &[T; 3]) -> Mat2<T> {
    let e = gamma::<T>();
    e[0].scale(v[0]) + e[1].scale(v[1]) + e[2].scale(v[2])
}

/// Clifford multiplication `v · ψ` for a real frame vector `v`.
pub fn act<T: Real>(v: &[T; 3], psi: &Spinor<T>) -> Spinor<T> {
    clifford_matrix(v).apply(psi)
}

/// Quaternionic structure `J ψ = (conj ψ₂, −conj ψ₁)`.
pub fn j_structure<T: Real>(psi: &Spinor<T>) -> Spinor<T> {
    Spinor::new(psi.c[1].conj(), -psi.c[0].conj())
}

/// `max |J∘M − M∘J|` as antilinear operators, i.e. `|e₂·conj(M) − M·e₂|`.
pub fn j_commutator_residual<T: Real>(m: &Mat2<T>) -> T {
    let c = gamma::<T>()[1];
    (c * m.conj() - *m * c).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn close(a: &Spinor<f64>, b: &Spinor<f64>, tol: f64) -> bool {
        (*a - *b).max_abs() < tol
    }

    #[test]
    fn generator_relations_exact() {
        let e = gamma::<f64>();
        for i in 0..3 {
            for j in 0..3 {
                let anti = e[i] * e[j] + e[j] * e[i];
                let want = if i == j { Mat2::scalar(C::new(-2.0, 0.0)) } else { Mat2::zero() };
                assert_eq!(anti, want, "anticommutator ({i},{j})");
                if i != j {
                    let mut rhs = Mat2::zero();
                    for k in 0..3 {
                        rhs = rhs - e[k].scale(levi_civita(i, j, k) as f64);
                    }
                    assert_eq!(e[i] * e[j], rhs);
                }
            }
        }
    }

    #[test]
    fn e1_e2_on_up_spinor() {
        let e = gamma::<f64>();
        let psi = Spinor::up();
        assert_eq!(e[0].apply(&e[1].apply(&psi)), -e[2].apply(&psi));
        assert_eq!(e[0] * e[0], -Mat2::identity());
    }

    #[test]
    fn act_examples() {
        let psi = Spinor::from_re_im([0.3, -1.2], [0.7, 0.1]);
        assert_eq!(act(&[0.0, 0.0, 0.0], &psi), Spinor::zero());
        let x = [1.0, 0.0, 0.0];
        assert!(close(&act(&x, &act(&x, &psi)), &(-psi), 1e-15));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [s, s, 0.0];
        assert!(close(&act(&v, &act(&v, &psi)), &(-psi), 1e-15));
    }

    #[test]
    fn j_examples() {
        let up = Spinor::<f64>::up();
        assert_eq!(j_structure(&j_structure(&up)), -up);
        let psi = Spinor::from_re_im([0.4, 1.0], [-0.2, 0.5]);
        let i = C::new(0.0, 1.0);
        assert!(close(
            &j_structure(&psi.scale_complex(i)),
            &j_structure(&psi).scale_complex(-i),
            1e-15
        ));
        // ψ = (1, i)
        let psi = Spinor::new(C::new(1.0, 0.0), C::new(0.0, 1.0));
        let e2 = [0.0, 1.0, 0.0];
        assert!(close(&j_structure(&act(&e2, &psi)), &act(&e2, &j_structure(&psi)), 1e-15));
        for g in gamma::<f64>() {
            assert_eq!(j_commutator_residual(&g), 0.0);
        }
        assert!(j_commutator_residual(&Mat2::<f64>::scalar(i)) > 1.0);
    }

    #[test]
    fn exp_matches_series() {
        let m = Mat2::new([
            [C::new(0.3, -0.1), C::new(1.1, 0.4)],
            [C::new(-0.7, 0.2), C::new(0.05, 0.9)],
        ]);
        let mut term = Mat2::identity();
        let mut sum = Mat2::identity();
        for n in 1..40 {
            term = (term * m).scale(1.0 / n as f64);
            sum = sum + term;
        }
        assert!((m.exp() - sum).max_abs() < 1e-13);
        // near-scalar branch
        let small = Mat2::scalar(C::new(0.2, 0.3)) + Mat2::new([[C::new(1e-6, 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new(-1e-6, 0.0)]]);
        let mut term = Mat2::identity();
        let mut sum = Mat2::identity();
        for n in 1..40 {
            term = (term * small).scale(1.0 / n as f64);
            sum = sum + term;
        }
        assert!((small.exp() - sum).max_abs() < 1e-15);
    }

    #[test]
    fn min_singular_value_of_unitary_and_singular() {
        let e = gamma::<f64>();
        assert!((e[0].min_singular_value() - 1.0).abs() < 1e-15);
        let rank1 = Mat2::<f64>::from_columns(Spinor::up(), Spinor::up());
        assert!(rank1.min_singular_value() < 1e-15);
    }

    #[test]
    fn generators_in_f32() {
        let e = gamma::<f32>();
        assert_eq!(e[1] * e[2], -e[0]);
    }
}
