//! Homogeneous 3-dimensional Weyl geometries in a fixed gauge.
//!
//! A geometry is given by the structure constants of an orthonormal frame of the
//! gauge metric, `[e_i, e_j] = Σ_k c^k_ij e_k`, and the frame components `θ_i` of
//! the Weyl 1-form. Everything is frame-constant, so every derivative of a
//! coefficient vanishes.
//!
//! Conventions (pinned by the curvature decomposition and by the flatness
//! equivalence checked in the test suites):
//! * `∇g = −2θ⊗g`, i.e. `∇_X Y = ∇^{LC}_X Y + θ(X)Y + θ(Y)X − g(X,Y)θ♯`.
//! * `ℛ_ijkl = g(ℛ(e_i,e_j)e_k, e_l)` with `ℛ(X,Y) = [∇_X,∇_Y] − ∇_{[X,Y]}`.
//! * `Ric(X,Y) = tr(Z ↦ ℛ(Z,X)Y)`, `R = tr_c Ric`, `F = dθ`.
//! * A weight-`w` density `β` has `∇β = w·β·θ`.
//!
//! With these choices `ℛ = Ric^N △ c + F⊗c` holds identically and the
//! antisymmetric part of `Ric` equals `−3/2·F`.

use crate::cliff::levi_civita;
use crate::error::{Error, Result};
use crate::multilin::{hodge_star, kulkarni_nomizu, sym0, FrameTensor, DIM};
use crate::scalar::Real;

/// `c[k][i][j] = c^k_ij`.
pub type StructureConstants<T> = [[[T; 3]; 3]; 3];

/// Tolerance below which antisymmetry defects of raw structure constants are repaired.
pub const ANTISYMMETRY_REPAIR_TOL: f64 = 1e-12;
/// Jacobi identity tolerance for validation.
pub const JACOBI_TOL: f64 = 1e-10;
/// Default tolerance on normalized GT residuals.
pub const DEFAULT_GT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousWeylGeometry<T> {
    structure: StructureConstants<T>,
    theta: [T; 3],
}

/// Representative of a density of weight `weight` in the working gauge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedDensity<T> {
    pub value: T,
    pub weight: T,
}

impl<T: Real> WeightedDensity<T> {
    pub fn new(value: T, weight: T) -> Self {
        Self { value, weight }
    }

    /// A density of weight −1, the type of the Killing number `β`.
    pub fn beta(value: T) -> Self {
        Self::new(value, -T::one())
    }
}

fn zero3<T: Real>() -> StructureConstants<T> {
    [[[T::zero(); 3]; 3]; 3]
}

/// Milnor-diagonal structure constants `c^k_ij = λ_k ε_ijk`.
pub fn milnor_constants<T: Real>(lambda: [T; 3]) -> StructureConstants<T> {
    let mut c = zero3();
    for (k, ck) in c.iter_mut().enumerate() {
        for (i, row) in ck.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = lambda[k] * T::lit(levi_civita(i, j, k) as f64);
            }
        }
    }
    c
}

/// Max over `l, i, j, k` of the cyclic Jacobi sum `Σ_m c^m_ij c^l_mk + cyclic`.
pub fn jacobi_residual<T: Real>(c: &StructureConstants<T>) -> T {
    let mut worst = T::zero();
    for l in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let mut s = T::zero();
                    for m in 0..DIM {
                        s = s + c[m][i][j] * c[l][m][k] + c[m][j][k] * c[l][m][i] + c[m][k][i] * c[l][m][j];
                    }
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    worst
}

impl<T: Real> HomogeneousWeylGeometry<T> {
    /// Milnor frame `[e_i, e_j] = λ_k ε_ijk e_k` with Weyl form `θ`.
    pub fn milnor(lambda: [T; 3], theta: [T; 3]) -> Self {
        Self {
            structure: milnor_constants(lambda),
            theta,
        }
    }

    /// Flat abelian geometry (`ℝ³`, exact Weyl structure).
    pub fn flat() -> Self {
        Self::milnor([T::zero(); 3], [T::zero(); 3])
    }

    /// Checks raw structure constants, repairing antisymmetry defects below
    /// [`ANTISYMMETRY_REPAIR_TOL`].
    pub fn validate(raw: StructureConstants<T>, theta: [T; 3]) -> Result<Self> {
        let finite = raw.iter().flatten().flatten().chain(theta.iter()).all(|x| x.is_finite());
        if !finite {
            return Err(Error::Shape("non-finite structure constant or theta entry".into()));
        }
        let half = T::lit(0.5);
        let mut defect = T::zero();
        let mut c = zero3();
        for k in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    defect = defect.max((raw[k][i][j] + raw[k][j][i]).abs());
                    c[k][i][j] = (raw[k][i][j] - raw[k][j][i]) * half;
                }
            }
        }
        if defect >= T::lit(ANTISYMMETRY_REPAIR_TOL) {
            return Err(Error::NotAntisymmetric { residual: defect.as_f64() });
        }
        let jac = jacobi_residual(&c);
        if jac >= T::lit(JACOBI_TOL) {
            return Err(Error::JacobiViolation { residual: jac.as_f64() });
        }
        Ok(Self { structure: c, theta })
    }

    pub fn structure_constants(&self) -> &StructureConstants<T> {
        &self.structure
    }

    pub fn theta(&self) -> [T; 3] {
        self.theta
    }

    /// The Milnor parameters if the constants are diagonal in this frame.
    pub fn milnor_lambda(&self, tol: T) -> Option<[T; 3]> {
        let lambda = [self.structure[0][1][2], self.structure[1][2][0], self.structure[2][0][1]];
        let back = milnor_constants(lambda);
        let off = (0..DIM)
            .flat_map(|k| (0..DIM).flat_map(move |i| (0..DIM).map(move |j| (k, i, j))))
            .fold(T::zero(), |m, (k, i, j)| m.max((back[k][i][j] - self.structure[k][i][j]).abs()));
        (off <= tol).then_some(lambda)
    }

    /// Re-expresses the geometry in the rotated orthonormal frame `e'_a = Σ_i r[a][i] e_i`
    /// (`r` in SO(3)).
    pub fn rotate_frame(&self, r: &[[T; 3]; 3]) -> Self {
        let c = &self.structure;
        let mut out = zero3();
        for (cc, out_c) in out.iter_mut().enumerate() {
            for (a, row) in out_c.iter_mut().enumerate() {
                for (b, v) in row.iter_mut().enumerate() {
                    let mut s = T::zero();
                    for k in 0..DIM {
                        for i in 0..DIM {
                            for j in 0..DIM {
                                s = s + r[a][i] * r[b][j] * c[k][i][j] * r[cc][k];
                            }
                        }
                    }
                    *v = s;
                }
            }
        }
        let mut theta = [T::zero(); 3];
        for (a, t) in theta.iter_mut().enumerate() {
            *t = (0..DIM).fold(T::zero(), |s, i| s + r[a][i] * self.theta[i]);
        }
        Self { structure: out, theta }
    }

    /// Characteristic inverse length `sqrt(‖c‖² + ‖θ‖² + β²)`, used to make residuals
    /// scale invariant.
    pub fn scale(&self, beta: &WeightedDensity<T>) -> T {
        let c2 = self.structure.iter().flatten().flatten().fold(T::zero(), |s, &x| s + x * x);
        let t2 = self.theta.iter().fold(T::zero(), |s, &x| s + x * x);
        (c2 + t2 + beta.value * beta.value).sqrt()
    }
}

/// Christoffel symbols of the Weyl connection, `∇_{e_i} e_j = Σ_k Γ^k_ij e_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylConnection<T> {
    /// `gamma[k][i][j] = Γ^k_ij`.
    pub gamma: [[[T; 3]; 3]; 3],
}

impl<T: Real> WeylConnection<T> {
    /// `ω^{(i)}_{jk} = ½(Γ^k_ij − Γ^j_ik)`, the metric (so(3)) part of `∇_{e_i}`.
    pub fn rotation_part(&self, i: usize) -> [[T; 3]; 3] {
        let g = &self.gamma;
        let half = T::lit(0.5);
        let mut w = [[T::zero(); 3]; 3];
        for (j, row) in w.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                *v = (g[k][i][j] - g[j][i][k]) * half;
            }
        }
        w
    }
}

pub fn weyl_connection<T: Real>(g: &HomogeneousWeylGeometry<T>) -> WeylConnection<T> {
    let c = &g.structure;
    let th = &g.theta;
    let half = T::lit(0.5);
    let delta = |a: usize, b: usize| if a == b { T::one() } else { T::zero() };
    let mut gamma = zero3();
    for (k, gk) in gamma.iter_mut().enumerate() {
        for (i, row) in gk.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let koszul = (c[k][i][j] - c[i][j][k] + c[j][k][i]) * half;
                let weyl = th[i] * delta(j, k) + th[j] * delta(i, k) - delta(i, j) * th[k];
                *v = koszul + weyl;
            }
        }
    }
    WeylConnection { gamma }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvaturePackage<T> {
    /// Rank 4, `ℛ_ijkl = g(ℛ(e_i,e_j)e_k, e_l)`.
    pub full_curvature: FrameTensor<T>,
    pub ricci: FrameTensor<T>,
    pub sym0_ricci: FrameTensor<T>,
    pub scalar: T,
    pub faraday: FrameTensor<T>,
    /// `Ric^N = −sym₀Ric − R/12·c + F/2`.
    pub ric_n: FrameTensor<T>,
    /// `Ric′ = sym₀Ric + R/3·c − F/2`.
    pub ric_prime: FrameTensor<T>,
}

impl<T: Real> CurvaturePackage<T> {
    /// `max |ℛ − (Ric^N △ c + F⊗c)|`.
    pub fn decomposition_residual(&self) -> T {
        let c = FrameTensor::metric();
        let kn = kulkarni_nomizu(&self.ric_n, &c).expect("rank-2 inputs");
        let model = kn + self.faraday.outer(&c);
        (self.full_curvature.clone() - model).max_abs()
    }
}

pub fn curvature_package<T: Real>(g: &HomogeneousWeylGeometry<T>) -> CurvaturePackage<T> {
    let gam = weyl_connection(g).gamma;
    let c = &g.structure;
    let full = FrameTensor::from_fn(4, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        (0..DIM).fold(T::zero(), |s, m| {
            s + gam[m][j][k] * gam[l][i][m] - gam[m][i][k] * gam[l][j][m] - c[m][i][j] * gam[l][m][k]
        })
    });
    let ricci = FrameTensor::from_fn(2, |x| {
        (0..DIM).fold(T::zero(), |s, a| s + full.get(&[a, x[0], x[1], a]))
    });
    let scalar = ricci.trace().expect("rank 2");
    let th = g.theta;
    let faraday = FrameTensor::from_fn(2, |x| {
        -(0..DIM).fold(T::zero(), |s, k| s + th[k] * c[k][x[0]][x[1]])
    });
    let sym0_ricci = sym0(&ricci).expect("rank 2");
    let metric = FrameTensor::metric();
    let half = T::lit(0.5);
    let ric_n = -sym0_ricci.clone() - metric.scale(scalar / T::lit(12.0)) + faraday.scale(half);
    let ric_prime = sym0_ricci.clone() + metric.scale(scalar / T::lit(3.0)) - faraday.scale(half);
    CurvaturePackage {
        full_curvature: full,
        ricci,
        sym0_ricci,
        scalar,
        faraday,
        ric_n,
        ric_prime,
    }
}

/// `∇β = w·β·θ` for a frame-constant density.
pub fn density_derivative<T: Real>(g: &HomogeneousWeylGeometry<T>, beta: &WeightedDensity<T>) -> FrameTensor<T> {
    let f = beta.weight * beta.value;
    FrameTensor::from_vector(g.theta.map(|t| f * t))
}

/// Constant gauge change `g ↦ e^{2s} g`.
pub fn gauge_rescale<T: Real>(
    g: &HomogeneousWeylGeometry<T>,
    beta: &WeightedDensity<T>,
    s: T,
) -> (HomogeneousWeylGeometry<T>, WeightedDensity<T>) {
    let shrink = (-s).exp();
    let structure = g.structure.map(|a| a.map(|r| r.map(|x| x * shrink)));
    let theta = g.theta.map(|x| x * shrink);
    let rescaled = WeightedDensity::new(beta.value * (beta.weight * s).exp(), beta.weight);
    (HomogeneousWeylGeometry { structure, theta }, rescaled)
}

/// Residuals of the three Gauduchon–Tod conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GtReport<T> {
    /// `max |sym₀Ric|`.
    pub r_ew: T,
    /// `|R − 24β²|`.
    pub r_scal: T,
    /// `max |4∇β − *F|`.
    pub r_star: T,
    /// Inverse length used for normalization (see [`HomogeneousWeylGeometry::scale`]).
    pub scale: T,
    /// Residuals divided by `scale²` (each has gauge weight −2).
    pub normalized: [T; 3],
    pub tolerance: T,
    pub verdict: bool,
}

impl<T: Real> GtReport<T> {
    pub fn max_normalized(&self) -> T {
        self.normalized.iter().fold(T::zero(), |m, &x| m.max(x))
    }
}

pub fn analyze<T: Real>(g: &HomogeneousWeylGeometry<T>, beta: &WeightedDensity<T>, tolerance: T) -> GtReport<T> {
    let pkg = curvature_package(g);
    analyze_with(g, beta, &pkg, tolerance)
}

pub fn analyze_with<T: Real>(
    g: &HomogeneousWeylGeometry<T>,
    beta: &WeightedDensity<T>,
    pkg: &CurvaturePackage<T>,
    tolerance: T,
) -> GtReport<T> {
    let r_ew = pkg.sym0_ricci.max_abs();
    let r_scal = (pkg.scalar - T::lit(24.0) * beta.value * beta.value).abs();
    let star = hodge_star(&pkg.faraday).expect("faraday is antisymmetric");
    let r_star = (density_derivative(g, beta).scale(T::lit(4.0)) - star).max_abs();
    let scale = g.scale(beta);
    let normalized = if scale > T::zero() {
        let s2 = scale * scale;
        [r_ew / s2, r_scal / s2, r_star / s2]
    } else {
        [r_ew, r_scal, r_star]
    };
    let verdict = normalized.iter().all(|&r| r < tolerance);
    GtReport {
        r_ew,
        r_scal,
        r_star,
        scale,
        normalized,
        tolerance,
        verdict,
    }
}

/// Stacked raw residual vector: the six upper-triangular entries of `sym₀Ric`,
/// `R − 24β²`, and the three components of `4∇β − *F`.
pub fn gt_residual_vector<T: Real>(g: &HomogeneousWeylGeometry<T>, beta: &WeightedDensity<T>) -> Vec<T> {
    let pkg = curvature_package(g);
    let mut out = Vec::with_capacity(10);
    for i in 0..DIM {
        for j in i..DIM {
            out.push(pkg.sym0_ricci.get(&[i, j]));
        }
    }
    out.push(pkg.scalar - T::lit(24.0) * beta.value * beta.value);
    let star = hodge_star(&pkg.faraday).expect("faraday is antisymmetric");
    let d = density_derivative(g, beta).scale(T::lit(4.0)) - star;
    out.extend_from_slice(d.entries());
    out
}

/// `κ = −4β` with the working gauge taken as the distinguished one.
pub fn kappa_from_beta<T: Real>(beta: &WeightedDensity<T>) -> T {
    -T::lit(4.0) * beta.value
}
