//! Helmholtz kernels, exact reference fields, evaluation grids, and error
//! metrics.
//!
//! The free-space kernel is `G(x,y) = e^{ik|x-y|} / (4 pi |x-y|)`; its
//! normal derivatives up to the hypersingular second derivative are closed
//! forms in `r`, `r_hat . n(x)`, `r_hat . n(y)` and are cross-checked
//! against finite differences in the tests.

use crate::geometry::vec3;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error)]
pub enum FieldsError {
    #[error("kernel evaluated at coincident points")]
    CoincidentPoints,
    #[error("error metric needs a nonzero reference field")]
    ZeroReference,
    #[error("error metric needs a nonempty grid")]
    EmptyGrid,
}

/// Shared pieces of all four kernels for one point pair.
#[derive(Clone, Copy, Debug)]
pub struct KernelPair {
    pub r: f64,
    pub rhat: [f64; 3],
    pub g: Complex64,
    /// dG/dr.
    pub g1: Complex64,
    /// d2G/dr2.
    pub g2: Complex64,
}

impl KernelPair {
    /// Kernel data for target `x` and source `y`; `x != y`.
    #[inline]
    pub fn new(k: f64, x: [f64; 3], y: [f64; 3]) -> KernelPair {
        let d = vec3::sub(x, y);
        let r = vec3::norm(d);
        let (s, c) = (k * r).sin_cos();
        let g = Complex64::new(c, s) / (4.0 * PI * r);
        let ikm = Complex64::new(-1.0 / r, k);
        KernelPair {
            r,
            rhat: vec3::scale(d, 1.0 / r),
            g,
            g1: g * ikm,
            g2: g * (ikm * ikm + 1.0 / (r * r)),
        }
    }

    /// `dG/dn(y)`.
    #[inline]
    pub fn dn_source(&self, ny: [f64; 3]) -> Complex64 {
        -self.g1 * vec3::dot(self.rhat, ny)
    }

    /// `dG/dn(x)`.
    #[inline]
    pub fn dn_target(&self, nx: [f64; 3]) -> Complex64 {
        self.g1 * vec3::dot(self.rhat, nx)
    }

    /// `d2G/dn(x)dn(y)`.
    #[inline]
    pub fn dn_both(&self, nx: [f64; 3], ny: [f64; 3]) -> Complex64 {
        let rx = vec3::dot(self.rhat, nx);
        let ry = vec3::dot(self.rhat, ny);
        -self.g2 * rx * ry - self.g1 * (vec3::dot(nx, ny) - rx * ry) / self.r
    }

    /// `grad_x G`.
    #[inline]
    pub fn grad_target(&self) -> [Complex64; 3] {
        let mut out = [Complex64::default(); 3];
        for i in 0..3 {
            out[i] = self.g1 * self.rhat[i];
        }
        out
    }

    /// Surface curl of `G` in the target point: `-n(x) x grad_x G`.
    #[inline]
    pub fn surface_curl_target(&self, nx: [f64; 3]) -> [Complex64; 3] {
        let cr = vec3::cross(nx, self.rhat);
        let mut out = [Complex64::default(); 3];
        for i in 0..3 {
            out[i] = -self.g1 * cr[i];
        }
        out
    }
}

/// All four kernel values at once (library surface for one-off queries).
pub fn kernel_eval(
    k: f64,
    x: [f64; 3],
    y: [f64; 3],
    nx: Option<[f64; 3]>,
    ny: Option<[f64; 3]>,
) -> Result<(Complex64, Option<Complex64>, Option<Complex64>, Option<Complex64>), FieldsError> {
    if vec3::dist(x, y) == 0.0 {
        return Err(FieldsError::CoincidentPoints);
    }
    let pair = KernelPair::new(k, x, y);
    let dny = ny.map(|n| pair.dn_source(n));
    let dnx = nx.map(|n| pair.dn_target(n));
    let dd = match (nx, ny) {
        (Some(a), Some(b)) => Some(pair.dn_both(a, b)),
        _ => None,
    };
    Ok((pair.g, dny, dnx, dd))
}

// ---------------------------------------------------------------------------
// Reference fields
// ---------------------------------------------------------------------------

/// Superposition of free-space monopoles `w e^{ik|x - x0|} / |x - x0|`
/// with sources strictly inside the scatterer; an exact exterior solution.
#[derive(Clone, Debug)]
pub struct InteriorSources {
    pub k: f64,
    pub sources: Vec<([f64; 3], f64)>,
}

impl InteriorSources {
    /// The reference pair used throughout the experiments: unit-weight
    /// monopoles of opposite sign inside the unit sphere.
    pub fn reference_pair(k: f64) -> Self {
        InteriorSources {
            k,
            sources: vec![([0.2, 0.1, 0.1], 1.0), ([-0.1, 0.3, -0.1], -1.0)],
        }
    }

    pub fn eval(&self, x: [f64; 3]) -> Complex64 {
        let mut acc = Complex64::default();
        for &(p, w) in &self.sources {
            let r = vec3::dist(x, p);
            let (s, c) = (self.k * r).sin_cos();
            acc += w * Complex64::new(c, s) / r;
        }
        acc
    }

    pub fn gradient(&self, x: [f64; 3]) -> [Complex64; 3] {
        let mut acc = [Complex64::default(); 3];
        for &(p, w) in &self.sources {
            let d = vec3::sub(x, p);
            let r = vec3::norm(d);
            let (s, c) = (self.k * r).sin_cos();
            let f = w * Complex64::new(c, s) / r * Complex64::new(-1.0 / r, self.k) / r;
            for i in 0..3 {
                acc[i] += f * d[i];
            }
        }
        acc
    }

    pub fn normal_trace(&self, x: [f64; 3], n: [f64; 3]) -> Complex64 {
        let g = self.gradient(x);
        g[0] * n[0] + g[1] * n[1] + g[2] * n[2]
    }
}

/// Incident planewave `e^{ik x.d}` with a unit direction.
#[derive(Clone, Debug)]
pub struct PlanewaveIncident {
    pub k: f64,
    pub dir: [f64; 3],
}

impl PlanewaveIncident {
    pub fn new(k: f64, dir: [f64; 3]) -> Self {
        PlanewaveIncident {
            k,
            dir: vec3::normalize(dir),
        }
    }

    pub fn eval(&self, x: [f64; 3]) -> Complex64 {
        Complex64::from_polar(1.0, self.k * vec3::dot(x, self.dir))
    }

    pub fn normal_trace(&self, x: [f64; 3], n: [f64; 3]) -> Complex64 {
        I * self.k * vec3::dot(self.dir, n) * self.eval(x)
    }
}

/// Any incident/reference field the solvers consume.
#[derive(Clone, Debug)]
pub enum Field {
    Planewave(PlanewaveIncident),
    Sources(InteriorSources),
}

impl Field {
    pub fn eval(&self, x: [f64; 3]) -> Complex64 {
        match self {
            Field::Planewave(p) => p.eval(x),
            Field::Sources(s) => s.eval(x),
        }
    }

    pub fn normal_trace(&self, x: [f64; 3], n: [f64; 3]) -> Complex64 {
        match self {
            Field::Planewave(p) => p.normal_trace(x, n),
            Field::Sources(s) => s.normal_trace(x, n),
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation grids and the error metric
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridRole {
    FarSphere,
    NearCube,
}

#[derive(Clone, Debug)]
pub struct EvalGrid {
    pub role: GridRole,
    pub points: Vec<[f64; 3]>,
}

pub const FAR_RADIUS: f64 = 10.0;
pub const FAR_POLAR: usize = 12;
pub const FAR_AZIMUTH: usize = 24;
pub const NEAR_FACE_SIDE: usize = 17;

/// Azimuth/polar lattice on the sphere of radius 10.
pub fn far_sphere_grid() -> EvalGrid {
    let mut points = Vec::with_capacity(FAR_POLAR * FAR_AZIMUTH);
    for i in 0..FAR_POLAR {
        let theta = PI * (i as f64 + 0.5) / FAR_POLAR as f64;
        for j in 0..FAR_AZIMUTH {
            let phi = 2.0 * PI * j as f64 / FAR_AZIMUTH as f64;
            points.push([
                FAR_RADIUS * theta.sin() * phi.cos(),
                FAR_RADIUS * theta.sin() * phi.sin(),
                FAR_RADIUS * theta.cos(),
            ]);
        }
    }
    EvalGrid {
        role: GridRole::FarSphere,
        points,
    }
}

/// 17 x 17 lattice on each face of the cube `[-1,1]^3`, which touches the
/// unit sphere at the six face centers.
pub fn near_cube_grid() -> EvalGrid {
    let m = NEAR_FACE_SIDE;
    let mut points = Vec::with_capacity(6 * m * m);
    let line: Vec<f64> = (0..m)
        .map(|i| -1.0 + 2.0 * i as f64 / (m - 1) as f64)
        .collect();
    for face in 0..6 {
        for &u in &line {
            for &v in &line {
                let p = match face {
                    0 => [1.0, u, v],
                    1 => [-1.0, u, v],
                    2 => [u, 1.0, v],
                    3 => [u, -1.0, v],
                    4 => [u, v, 1.0],
                    _ => [u, v, -1.0],
                };
                points.push(p);
            }
        }
    }
    EvalGrid {
        role: GridRole::NearCube,
        points,
    }
}

/// Max-norm relative error over a grid.
pub fn relative_max_error(
    numeric: &[Complex64],
    exact: &[Complex64],
) -> Result<f64, FieldsError> {
    if numeric.is_empty() || numeric.len() != exact.len() {
        return Err(FieldsError::EmptyGrid);
    }
    let denom = exact.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if denom == 0.0 {
        return Err(FieldsError::ZeroReference);
    }
    let num = numeric
        .iter()
        .zip(exact)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(num / denom)
}
