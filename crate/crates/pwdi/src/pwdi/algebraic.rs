//! Purely algebraic planewave interpolants of order 0 to 3.
//!
//! A fixed grid of unit directions (independent of the anchor) spans the
//! planewave space. The point conditions become the linear systems
//! `C(p) a_j = delta_j` and `C(p) b_j = delta_{j+N/2}` whose entries follow
//! recursive relations in the chart derivatives of the surface point and
//! unit normal; the least-norm solutions come from the pseudoinverse
//! `C^* (C C^*)^{-1}`. Because the directions are global, the resulting
//! interpolant is separable: the per-direction coefficients multiply fixed
//! planewaves, which is what makes the coefficient sets reusable across
//! solver iterations.

use super::{DensityJet, Interpolant, PlanewaveSum, PwTerm, PwdiError, I};
use crate::geometry::{vec3, SurfaceJet};
use crate::multi_index::count_upto;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Global planewave direction set for one interpolation order.
#[derive(Clone, Debug)]
pub struct DirectionGrid {
    pub order: usize,
    pub dirs: Vec<[f64; 3]>,
}

/// Uniform spherical direction grid; `(L_theta, L_phi)` per order are
/// (2,2), (4,3), (5,4), (6,5) for orders 0 to 3.
pub fn direction_grid(order: usize) -> Result<DirectionGrid, PwdiError> {
    let (lt, lp) = match order {
        0 => (2, 2),
        1 => (4, 3),
        2 => (5, 4),
        3 => (6, 5),
        other => return Err(PwdiError::UnsupportedOrder(other)),
    };
    let mut dirs = Vec::with_capacity(lt * lp);
    for m in 1..=lt {
        let theta = 2.0 * PI * (m as f64 - 0.5) / lt as f64;
        for n in 1..=lp {
            let phi = PI * (n as f64 - 0.5) / lp as f64;
            dirs.push([
                theta.cos() * phi.sin(),
                theta.sin() * phi.sin(),
                phi.cos(),
            ]);
        }
    }
    Ok(DirectionGrid { order, dirs })
}

/// The `N x L` point-condition matrix at one anchor; Dirichlet rows first.
#[derive(Clone, Debug)]
pub struct PointConditionMatrix {
    pub order: usize,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<Complex64>,
}

impl PointConditionMatrix {
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }
}

/// Entries of one column of `C(p)`: derivatives of the planewave trace and
/// its Neumann trace at the anchor, by the recursive relations.
fn column(jet: &SurfaceJet, dir: [f64; 3], k: f64) -> ([Complex64; 10], [Complex64; 10]) {
    let ik = I * k;
    let t = |flat: usize| ik * vec3::dot(dir, jet.dx[flat]);
    let v = |flat: usize| ik * vec3::dot(dir, jet.dn[flat]);

    let mut c = [Complex64::default(); 10];
    c[0] = Complex64::new(1.0, 0.0);
    c[1] = t(1);
    c[2] = t(2);
    c[3] = t(3) + c[1] * c[1];
    c[4] = t(4) + c[1] * c[2];
    c[5] = t(5) + c[2] * c[2];
    c[6] = t(6) + 3.0 * c[1] * c[3] - 2.0 * c[1] * c[1] * c[1];
    c[7] = t(7) + 2.0 * c[1] * (c[4] - c[1] * c[2]) + c[2] * c[3];
    c[8] = t(8) + 2.0 * c[2] * (c[4] - c[1] * c[2]) + c[1] * c[5];
    c[9] = t(9) + 3.0 * c[2] * c[5] - 2.0 * c[2] * c[2] * c[2];

    let mut e = [Complex64::default(); 10];
    e[0] = v(0);
    e[1] = v(1) + c[1] * e[0];
    e[2] = v(2) + c[2] * e[0];
    e[3] = v(3) + 2.0 * c[1] * (e[1] - c[1] * e[0]) + c[3] * e[0];
    e[4] = v(4) - 2.0 * c[1] * c[2] * e[0] + c[2] * e[1] + c[1] * e[2] + c[4] * e[0];
    e[5] = v(5) + 2.0 * c[2] * (e[2] - c[2] * e[0]) + c[5] * e[0];
    e[6] = v(6)
        + 3.0 * (c[1] * e[3] + c[3] * e[1])
        + 6.0 * c[1] * (c[1] * c[1] * e[0] - c[1] * e[1] - c[3] * e[0])
        + c[6] * e[0];
    e[7] = v(7) + 6.0 * c[1] * c[1] * c[2] * e[0] - 4.0 * c[1] * (c[2] * e[1] + c[4] * e[0])
        + 2.0 * (c[1] * (e[4] - c[1] * e[2]) + c[4] * e[1] - c[2] * c[3] * e[0])
        + c[2] * e[3]
        + c[3] * e[2]
        + c[7] * e[0];
    e[8] = v(8) + 6.0 * c[1] * c[2] * c[2] * e[0] - 4.0 * c[2] * (c[1] * e[2] + c[4] * e[0])
        + 2.0 * (c[2] * (e[4] - c[2] * e[1]) + c[4] * e[2] - c[1] * c[5] * e[0])
        + c[1] * e[5]
        + c[5] * e[1]
        + c[8] * e[0];
    e[9] = v(9)
        + 3.0 * (c[2] * e[5] + c[5] * e[2])
        + 6.0 * c[2] * (c[2] * c[2] * e[0] - c[2] * e[2] - c[5] * e[0])
        + c[9] * e[0];

    (c, e)
}

/// Builds `C(p)` from the surface jet for interpolation order `m`.
pub fn build_c(
    jet: &SurfaceJet,
    dirs: &DirectionGrid,
    k: f64,
    order: usize,
) -> Result<PointConditionMatrix, PwdiError> {
    if order > 3 {
        return Err(PwdiError::UnsupportedOrder(order));
    }
    let half = count_upto(order);
    let rows = 2 * half;
    let cols = dirs.dirs.len();
    let mut entries = vec![Complex64::default(); rows * cols];
    for (l, &dir) in dirs.dirs.iter().enumerate() {
        let (c, e) = column(jet, dir, k);
        for r in 0..half {
            entries[r * cols + l] = c[r];
            entries[(r + half) * cols + l] = e[r];
        }
    }
    Ok(PointConditionMatrix {
        order,
        rows,
        cols,
        entries,
    })
}

/// Pseudoinverse coefficient vectors for one anchor: `a[j][l]` solves the
/// Dirichlet conditions, `b[j][l]` the Neumann conditions.
#[derive(Clone, Debug)]
pub struct CoefficientSet {
    pub order: usize,
    pub a: Vec<Vec<Complex64>>,
    pub b: Vec<Vec<Complex64>>,
    /// Worst residual `max_j |C x_j - delta_j|_inf`.
    pub residual: f64,
    /// True when the normal equations needed a ridge to factor.
    pub ridged: bool,
}

/// Solves the point-condition systems through `C^* (C C^*)^{-1}`, with a
/// small ridge fallback when the normal equations are near singular.
pub fn solve_coefficients(c: &PointConditionMatrix) -> Result<CoefficientSet, PwdiError> {
    let (n, l) = (c.rows, c.cols);
    let cm = DMatrix::from_fn(n, l, |r, col| c.at(r, col));
    let h = &cm * cm.adjoint();

    let factor = |h: &DMatrix<Complex64>| -> Option<(DMatrix<Complex64>, f64)> {
        let chol = h.clone().cholesky()?;
        let hinv = chol.inverse();
        let norm1 = |m: &DMatrix<Complex64>| -> f64 {
            (0..m.ncols())
                .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max)
        };
        let cond = norm1(h) * norm1(&hinv);
        Some((hinv, cond))
    };

    let trace_avg = (0..n).map(|i| h[(i, i)].re).sum::<f64>() / n as f64;
    let (hinv, ridged) = match factor(&h) {
        Some((hinv, cond)) if cond <= 1e12 => (hinv, false),
        first => {
            let lambda = 1e-12 * trace_avg;
            let mut hr = h.clone();
            for i in 0..n {
                hr[(i, i)] += Complex64::new(lambda, 0.0);
            }
            match factor(&hr) {
                Some((hinv, _)) => (hinv, true),
                None => {
                    let cond = first.map(|(_, c)| c).unwrap_or(f64::INFINITY);
                    return Err(PwdiError::RankDeficient { cond });
                }
            }
        }
    };

    let pinv = cm.adjoint() * &hinv; // L x N
    let mut residual = 0.0f64;
    let check = &cm * &pinv;
    for j in 0..n {
        for r in 0..n {
            let want = if r == j { 1.0 } else { 0.0 };
            residual = residual.max((check[(r, j)] - Complex64::new(want, 0.0)).norm());
        }
    }
    if residual > 1e-8 {
        return Err(PwdiError::ResidualTooLarge { residual });
    }

    let half = n / 2;
    let col = |j: usize| -> Vec<Complex64> { (0..l).map(|r| pinv[(r, j)]).collect() };
    Ok(CoefficientSet {
        order: c.order,
        a: (0..half).map(col).collect(),
        b: (half..n).map(col).collect(),
        residual,
        ridged,
    })
}

/// Convenience: build and solve at one anchor.
pub fn coefficients_at(
    jet: &SurfaceJet,
    dirs: &DirectionGrid,
    k: f64,
    order: usize,
) -> Result<CoefficientSet, PwdiError> {
    solve_coefficients(&build_c(jet, dirs, k, order)?)
}

/// Combined per-direction coefficients for general Dirichlet/Neumann data.
pub fn combined_coefficients(
    coeffs: &CoefficientSet,
    dirs: &DirectionGrid,
    dirichlet: &DensityJet,
    neumann: &DensityJet,
) -> Vec<Complex64> {
    let half = coeffs.a.len();
    let mut out = vec![Complex64::default(); dirs.dirs.len()];
    for j in 0..half {
        let (dj, nj) = (dirichlet[j], neumann[j]);
        if dj == Complex64::default() && nj == Complex64::default() {
            continue;
        }
        for (l, slot) in out.iter_mut().enumerate() {
            *slot += dj * coeffs.a[j][l] + nj * coeffs.b[j][l];
        }
    }
    out
}

/// Interpolant with Dirichlet trace matching the density jet and Neumann
/// trace matching `i eta` times it.
pub fn build_algebraic(
    jet: &SurfaceJet,
    density: &DensityJet,
    k: f64,
    eta: f64,
    order: usize,
    dirs: &DirectionGrid,
    coeffs: &CoefficientSet,
) -> Interpolant {
    let mut neumann = super::zero_jet();
    for (n, d) in neumann.iter_mut().zip(density.iter()) {
        *n = I * eta * d;
    }
    build_algebraic_traces(jet.point(), k, density, &neumann, dirs, coeffs)
}

pub fn build_algebraic_traces(
    anchor: [f64; 3],
    k: f64,
    dirichlet: &DensityJet,
    neumann: &DensityJet,
    dirs: &DirectionGrid,
    coeffs: &CoefficientSet,
) -> Interpolant {
    let combined = combined_coefficients(coeffs, dirs, dirichlet, neumann);
    let terms = combined
        .into_iter()
        .zip(&dirs.dirs)
        .map(|(amp, &dir)| PwTerm { amp, dir })
        .collect();
    Interpolant::Terms(PlanewaveSum {
        anchor,
        wavenumber: k,
        terms,
    })
}

/// Separable coefficients `phi_l(p)`: with the global direction grid the
/// interpolant factors as `sum_l phi_l(p) conj(w_l(p)) W_l(x)` where
/// `w_l(x) = e^{ik d_l.x}`; the coefficients are exactly the per-direction
/// amplitudes of the anchored sum.
pub fn separable_coefficients(interp: &PlanewaveSum) -> Vec<Complex64> {
    interp.terms.iter().map(|t| t.amp).collect()
}
