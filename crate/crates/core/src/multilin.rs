//! Dense tensor calculus over a 3-dimensional orthonormal frame.
//!
//! Slot numbers in this module are 1-based, matching the superscript notation
//! `μ²`, `μ^{34}`, `(12)(24)(34)`. Frame indices inside entries are 0-based.
//!
//! Conventions:
//! * `Alt` antisymmetrizes the first two slots without normalization: `T − (12)T`.
//! * `ν` inserts a new *first* slot: `(νS)_{i,…} = e_i · S_…`.
//! * `μ^{ab…}` contracts the listed slots against the frame, composing the Clifford
//!   factors left to right in the listed order: `μ^{34}T = Σ e_a e_b T(…, e_a, e_b)`.
//! * A permutation `p` acts by relabeling slots: `(p·T)(v₁,…,v_r) = T(v_{p(1)},…,v_{p(r)})`;
//!   products of transpositions compose as operators (rightmost acts first).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::cliff::{gamma, levi_civita, Mat2, Spinor};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DIM: usize = 3;

/// Dense tensor with `3^rank` entries of type `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<E> {
    rank: usize,
    data: Vec<E>,
}

/// Real covariant tensor in the frame.
pub type FrameTensor<T> = DenseTensor<T>;

/// Covariant tensor with spinor values.
pub type SpinorTensor<T> = DenseTensor<Spinor<T>>;

fn decode(mut flat: usize, rank: usize, out: &mut [usize]) {
    for slot in (0..rank).rev() {
        out[slot] = flat % DIM;
        flat /= DIM;
    }
}

fn encode(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * DIM + i)
}

impl<E: Copy + Zero> DenseTensor<E> {
    pub fn zeros(rank: usize) -> Self {
        Self {
            rank,
            data: vec![E::zero(); DIM.pow(rank as u32)],
        }
    }

    pub fn from_fn(rank: usize, mut f: impl FnMut(&[usize]) -> E) -> Self {
        let mut idx = vec![0; rank];
        let data = (0..DIM.pow(rank as u32))
            .map(|flat| {
                decode(flat, rank, &mut idx);
                f(&idx)
            })
            .collect();
        Self { rank, data }
    }

    pub fn scalar(value: E) -> Self {
        Self { rank: 0, data: vec![value] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> E {
        debug_assert_eq!(idx.len(), self.rank);
        self.data[encode(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: E) {
        debug_assert_eq!(idx.len(), self.rank);
        self.data[encode(idx)] = value;
    }

    /// Visits every `(index, entry)` pair in lexicographic order.
    pub fn for_each(&self, mut f: impl FnMut(&[usize], E)) {
        let mut idx = vec![0; self.rank];
        for (flat, &v) in self.data.iter().enumerate() {
            decode(flat, self.rank, &mut idx);
            f(&idx, v);
        }
    }

    pub fn map<F: Copy + Zero>(&self, f: impl Fn(E) -> F) -> DenseTensor<F> {
        DenseTensor {
            rank: self.rank,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot == 0 || slot > self.rank {
            return Err(Error::Slot { slot, rank: self.rank });
        }
        Ok(())
    }

    /// Action of the slot permutation `perm` (1-based image list, `perm[a-1] = p(a)`).
    pub fn permute_slots(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rank {
            return Err(Error::Shape(format!(
                "permutation of length {} applied to rank {}",
                perm.len(),
                self.rank
            )));
        }
        let mut seen = vec![false; self.rank];
        for &p in perm {
            self.check_slot(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Shape(format!("{perm:?} is not a permutation")));
            }
        }
        let mut src = vec![0; self.rank];
        Ok(Self::from_fn(self.rank, |idx| {
            for (a, &p) in perm.iter().enumerate() {
                src[a] = idx[p - 1];
            }
            self.get(&src)
        }))
    }

    /// Action of the transposition `(a b)`.
    pub fn transpose_slots(&self, a: usize, b: usize) -> Result<Self> {
        self.check_slot(a)?;
        self.check_slot(b)?;
        let mut perm: Vec<usize> = (1..=self.rank).collect();
        perm.swap(a - 1, b - 1);
        self.permute_slots(&perm)
    }

    /// Action of a product of transpositions written left to right, e.g.
    /// `[(1,2),(2,4),(3,4)]` for `(12)(24)(34)`.
    pub fn apply_transpositions(&self, product: &[(usize, usize)]) -> Result<Self> {
        product
            .iter()
            .rev()
            .try_fold(self.clone(), |t, &(a, b)| t.transpose_slots(a, b))
    }
}

impl<E> DenseTensor<E>
where
    E: Copy + Zero + Sub<Output = E>,
{
    /// Unnormalized antisymmetrization of the first two slots.
    pub fn alt(&self) -> Result<Self> {
        if self.rank < 2 {
            return Err(Error::Rank {
                expected: ">= 2",
                found: self.rank,
            });
        }
        let swapped = self.transpose_slots(1, 2)?;
        Ok(self.clone() - swapped)
    }
}

impl<E: Copy + Zero> DenseTensor<E> {
    pub fn scale<S: Copy>(&self, s: S) -> Self
    where
        E: Mul<S, Output = E>,
    {
        self.map(|x| x * s)
    }
}

fn zip<E: Copy + Zero>(a: &DenseTensor<E>, b: &DenseTensor<E>, f: impl Fn(E, E) -> E) -> DenseTensor<E> {
    assert_eq!(a.rank, b.rank, "rank mismatch in elementwise tensor operation");
    DenseTensor {
        rank: a.rank,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect(),
    }
}

impl<E: Copy + Zero + Add<Output = E>> Add for DenseTensor<E> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        zip(&self, &rhs, |x, y| x + y)
    }
}

impl<E: Copy + Zero + Sub<Output = E>> Sub for DenseTensor<E> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        zip(&self, &rhs, |x, y| x - y)
    }
}

impl<E: Copy + Zero + Neg<Output = E>> Neg for DenseTensor<E> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<T: Real> FrameTensor<T> {
    pub fn from_vector(v: [T; 3]) -> Self {
        Self::from_fn(1, |i| v[i[0]])
    }

    pub fn from_matrix(m: [[T; 3]; 3]) -> Self {
        Self::from_fn(2, |i| m[i[0]][i[1]])
    }

    /// The conformal metric `c`, the identity in the frame.
    pub fn metric() -> Self {
        Self::from_fn(2, |i| if i[0] == i[1] { T::one() } else { T::zero() })
    }

    pub fn to_vector(&self) -> Result<[T; 3]> {
        expect_rank(self.rank, 1)?;
        Ok([self.data[0], self.data[1], self.data[2]])
    }

    pub fn to_matrix(&self) -> Result<[[T; 3]; 3]> {
        expect_rank(self.rank, 2)?;
        let d = &self.data;
        Ok([[d[0], d[1], d[2]], [d[3], d[4], d[5]], [d[6], d[7], d[8]]])
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m + x * x).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Tensor product `self ⊗ other`.
    pub fn outer(&self, other: &Self) -> Self {
        Self {
            rank: self.rank + other.rank,
            data: self
                .data
                .iter()
                .flat_map(|&a| other.data.iter().map(move |&b| a * b))
                .collect(),
        }
    }

    /// Trace over the first two slots of a rank-2 tensor.
    pub fn trace(&self) -> Result<T> {
        expect_rank(self.rank, 2)?;
        Ok(self.data[0] + self.data[4] + self.data[8])
    }

    /// `T ⊗ ψ`.
    pub fn with_spinor(&self, psi: &Spinor<T>) -> SpinorTensor<T> {
        self.map(|x| *psi * x)
    }
}

impl<T: Real> SpinorTensor<T> {
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, s| m.max(s.max_abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|s| s.is_finite())
    }

    /// Applies the matrix `m` to every spinor entry.
    pub fn left_mul(&self, m: &Mat2<T>) -> Self {
        self.map(|s| m.apply(&s))
    }

    /// Applies an antilinear or other entrywise map to every spinor.
    pub fn map_spinors(&self, f: impl Fn(&Spinor<T>) -> Spinor<T>) -> Self {
        self.map(|s| f(&s))
    }
}

fn expect_rank(found: usize, want: usize) -> Result<()> {
    if found != want {
        let expected = match want {
            1 => "1",
            2 => "2",
            4 => "4",
            _ => "other",
        };
        return Err(Error::Rank { expected, found });
    }
    Ok(())
}

/// Symmetric trace-free part `(S + Sᵀ)/2 − (tr S / 3) c`.
pub fn sym0<T: Real>(s: &FrameTensor<T>) -> Result<FrameTensor<T>> {
    expect_rank(s.rank(), 2)?;
    let third = s.trace()? / T::lit(3.0);
    let half = T::lit(0.5);
    Ok(FrameTensor::from_fn(2, |i| {
        let sym = (s.get(&[i[0], i[1]]) + s.get(&[i[1], i[0]])) * half;
        if i[0] == i[1] {
            sym - third
        } else {
            sym
        }
    }))
}

/// The four permutation terms of the Kulkarni–Nomizu product with their signs.
pub const KULKARNI_NOMIZU_TERMS: [(i8, &[(usize, usize)]); 4] = [
    (1, &[(2, 3)]),
    (1, &[(1, 2), (2, 4), (3, 4)]),
    (-1, &[(2, 4)]),
    (-1, &[(1, 2), (2, 3)]),
];

/// `ω △ η = [(23) + (12)(24)(34) − (24) − (12)(23)] ω⊗η`.
pub fn kulkarni_nomizu<T: Real>(omega: &FrameTensor<T>, eta: &FrameTensor<T>) -> Result<FrameTensor<T>> {
    expect_rank(omega.rank(), 2)?;
    expect_rank(eta.rank(), 2)?;
    let base = omega.outer(eta);
    let mut out = FrameTensor::zeros(4);
    for (sign, product) in KULKARNI_NOMIZU_TERMS {
        let term = base.apply_transpositions(product)?;
        out = out + term.scale(T::lit(sign as f64));
    }
    Ok(out)
}

/// Clifford contraction `μ^{slots}`; removes the listed slots.
pub fn mu_contract<T: Real>(slots: &[usize], t: &SpinorTensor<T>) -> Result<SpinorTensor<T>> {
    let rank = t.rank();
    for (n, &s) in slots.iter().enumerate() {
        t.check_slot(s)?;
        if slots[..n].contains(&s) {
            return Err(Error::Slot { slot: s, rank });
        }
    }
    let e = gamma::<T>();
    let kept: Vec<usize> = (1..=rank).filter(|s| !slots.contains(s)).collect();
    let mut out = SpinorTensor::zeros(kept.len());
    let mut out_idx = vec![0; kept.len()];
    t.for_each(|idx, value| {
        let mut m = Mat2::identity();
        for &s in slots {
            m = m * e[idx[s - 1]];
        }
        for (o, &s) in out_idx.iter_mut().zip(&kept) {
            *o = idx[s - 1];
        }
        let flat = encode(&out_idx);
        out.data[flat] += m.apply(&value);
    });
    Ok(out)
}

/// `ν`: prepends a slot, `(νS)_{i,…} = e_i · S_…`.
pub fn nu<T: Real>(s: &SpinorTensor<T>) -> SpinorTensor<T> {
    let e = gamma::<T>();
    SpinorTensor::from_fn(s.rank() + 1, |idx| e[idx[0]].apply(&s.get(&idx[1..])))
}

/// `νψ` with entries `e_i ψ`.
pub fn nu_embed<T: Real>(psi: &Spinor<T>) -> SpinorTensor<T> {
    nu(&SpinorTensor::scalar(*psi))
}

/// `ν^{12}ψ` with entries `e_i e_j ψ`.
pub fn nu12<T: Real>(psi: &Spinor<T>) -> SpinorTensor<T> {
    nu(&nu_embed(psi))
}

/// Prepends a covector slot: `(v ⊗ S)_{i,…} = v_i S_…`.
pub fn covector_outer<T: Real>(v: &[T; 3], s: &SpinorTensor<T>) -> SpinorTensor<T> {
    SpinorTensor::from_fn(s.rank() + 1, |idx| s.get(&idx[1..]) * v[idx[0]])
}

/// `‖F + Fᵀ‖_max` for a rank-2 tensor.
pub fn antisymmetry_defect<T: Real>(f: &FrameTensor<T>) -> Result<T> {
    expect_rank(f.rank(), 2)?;
    let mut worst = T::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            worst = worst.max((f.get(&[i, j]) + f.get(&[j, i])).abs());
        }
    }
    Ok(worst)
}

pub const ANTISYMMETRY_TOL: f64 = 1e-12;

fn require_two_form<T: Real>(f: &FrameTensor<T>) -> Result<()> {
    let defect = antisymmetry_defect(f)?;
    if defect >= T::lit(ANTISYMMETRY_TOL) {
        return Err(Error::Symmetry { residual: defect.as_f64() });
    }
    Ok(())
}

/// Hodge star of a 2-form, `(*F)_k = ½ Σ ε_ijk F_ij`.
pub fn hodge_star<T: Real>(f: &FrameTensor<T>) -> Result<FrameTensor<T>> {
    require_two_form(f)?;
    let half = T::lit(0.5);
    let mut out = [T::zero(); 3];
    for (k, o) in out.iter_mut().enumerate() {
        for i in 0..DIM {
            for j in 0..DIM {
                let eps = levi_civita(i, j, k);
                if eps != 0 {
                    *o = *o + half * T::lit(eps as f64) * f.get(&[i, j]);
                }
            }
        }
    }
    Ok(FrameTensor::from_vector(out))
}

/// Inverse of [`hodge_star`]: the 2-form `Σ_k ε_ijk v_k`.
pub fn hodge_star_vector<T: Real>(v: &[T; 3]) -> FrameTensor<T> {
    FrameTensor::from_fn(2, |i| {
        (0..DIM).fold(T::zero(), |acc, k| acc + T::lit(levi_civita(i[0], i[1], k) as f64) * v[k])
    })
}

/// Clifford action of a rank-2 tensor, `F· = Σ F_ij e_i e_j`.
pub fn clifford_two_form<T: Real>(f: &FrameTensor<T>) -> Result<Mat2<T>> {
    expect_rank(f.rank(), 2)?;
    let e = gamma::<T>();
    let mut m = Mat2::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            m = m + (e[i] * e[j]).scale(f.get(&[i, j]));
        }
    }
    Ok(m)
}

/// Reads a rank-2 endomorphism-valued tensor from its action on a spinor basis:
/// `X ↦ [ f(X, (1,0)) | f(X, (0,1)) ]` for a map `f` linear in the spinor.
pub fn endomorphism_form<T: Real>(
    f: impl Fn(&Spinor<T>) -> Result<SpinorTensor<T>>,
) -> Result<[[Mat2<T>; 3]; 3]> {
    let up = f(&Spinor::up())?;
    let down = f(&Spinor::down())?;
    expect_rank(up.rank(), 2)?;
    let mut out = [[Mat2::zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, m) in row.iter_mut().enumerate() {
            *m = Mat2::from_columns(up.get(&[i, j]), down.get(&[i, j]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliff::act;
    use num_complex::Complex;

    fn mat(m: [[f64; 3]; 3]) -> FrameTensor<f64> {
        FrameTensor::from_matrix(m)
    }

    fn sample_psi() -> Spinor<f64> {
        Spinor::from_re_im([0.3, -0.8], [1.1, 0.25])
    }

    #[test]
    fn alt_examples() {
        let s = mat([[1.0, 2.0, 3.0], [2.0, 5.0, 6.0], [3.0, 6.0, 9.0]]);
        assert_eq!(s.alt().unwrap().max_abs(), 0.0);
        let s1 = FrameTensor::from_vector([1.0, 0.0, 0.0]);
        let s2 = FrameTensor::from_vector([0.0, 1.0, 0.0]);
        let t = s1.outer(&s2);
        let want = t.clone() - s2.outer(&s1);
        assert_eq!(t.alt().unwrap(), want);
        let a = t.alt().unwrap();
        assert_eq!(a.alt().unwrap(), a.scale(2.0));
        assert!(matches!(s1.alt(), Err(Error::Rank { found: 1, .. })));
    }

    #[test]
    fn sym0_examples() {
        assert_eq!(sym0(&FrameTensor::<f64>::metric()).unwrap().max_abs(), 0.0);
        let anti = mat([[0.0, 1.0, -2.0], [-1.0, 0.0, 0.5], [2.0, -0.5, 0.0]]);
        assert_eq!(sym0(&anti).unwrap().max_abs(), 0.0);
        let d = sym0(&mat([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])).unwrap();
        let want = mat([[2.0 / 3.0, 0.0, 0.0], [0.0, -1.0 / 3.0, 0.0], [0.0, 0.0, -1.0 / 3.0]]);
        assert!((d - want).max_abs() < 1e-15);
        assert!(sym0(&FrameTensor::from_vector([1.0, 2.0, 3.0])).is_err());
    }

    #[test]
    fn kulkarni_nomizu_of_metric() {
        let c = FrameTensor::<f64>::metric();
        let cc = kulkarni_nomizu(&c, &c).unwrap();
        cc.for_each(|i, v| {
            let d = |a: usize, b: usize| if i[a] == i[b] { 1.0 } else { 0.0 };
            assert_eq!(v, 2.0 * (d(0, 2) * d(1, 3) - d(0, 3) * d(1, 2)));
        });
        let z = FrameTensor::<f64>::zeros(2);
        assert_eq!(kulkarni_nomizu(&z, &z).unwrap().max_abs(), 0.0);
        assert!(kulkarni_nomizu(&FrameTensor::from_vector([1.0, 0.0, 0.0]), &c).is_err());
    }

    #[test]
    fn permutation_errors_and_involution() {
        let t = FrameTensor::<f64>::from_fn(4, |i| (i[0] * 27 + i[1] * 9 + i[2] * 3 + i[3]) as f64);
        assert_eq!(t.transpose_slots(1, 2).unwrap().transpose_slots(1, 2).unwrap(), t);
        assert!(matches!(t.transpose_slots(0, 2), Err(Error::Slot { .. })));
        assert!(matches!(t.transpose_slots(1, 5), Err(Error::Slot { slot: 5, rank: 4 })));
        assert!(t.permute_slots(&[1, 1, 2, 3]).is_err());
    }

    #[test]
    fn mu_of_metric_is_nu() {
        let psi = sample_psi();
        let c = FrameTensor::metric().with_spinor(&psi);
        let lhs = mu_contract(&[2], &c).unwrap();
        assert_eq!(lhs, nu_embed(&psi));
        assert!(matches!(mu_contract(&[3], &c), Err(Error::Slot { slot: 3, rank: 2 })));
        assert!(mu_contract(&[1, 1], &c).is_err());
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_embed(&Spinor::<f64>::zero()).max_abs(), 0.0);
        let psi = sample_psi();
        let contracted = mu_contract(&[1], &nu_embed(&psi)).unwrap().get(&[]);
        assert!((contracted - psi * -3.0).max_abs() < 1e-15);
        // Alt ν^{12}ψ off-diagonal equals −2 Σ ε_ijk e_k ψ
        let a = nu12(&psi).alt().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut v = [0.0; 3];
                for k in 0..3 {
                    v[k] = -2.0 * levi_civita(i, j, k) as f64;
                }
                assert!((a.get(&[i, j]) - act(&v, &psi)).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn hodge_examples() {
        let f = mat([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert_eq!(hodge_star(&f).unwrap().to_vector().unwrap(), [0.0, 0.0, 1.0]);
        assert_eq!(hodge_star(&FrameTensor::<f64>::zeros(2)).unwrap().max_abs(), 0.0);
        let v = [0.3, -1.2, 0.7];
        assert_eq!(hodge_star(&hodge_star_vector(&v)).unwrap().to_vector().unwrap(), v);
        let bad = mat([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!(matches!(hodge_star(&bad), Err(Error::Symmetry { .. })));
    }

    #[test]
    fn two_form_action() {
        let f = mat([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let m = clifford_two_form(&f).unwrap();
        let e = gamma::<f64>();
        assert_eq!(m, (e[2]).scale(-2.0));
        let i = Complex::new(0.0, 1.0);
        assert!((m.apply(&Spinor::up()) - Spinor::up().scale_complex(i * -2.0)).max_abs() < 1e-15);
    }
}
