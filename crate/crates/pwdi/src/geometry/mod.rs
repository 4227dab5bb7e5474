//! Parametric patch surfaces, their differential data, and triangle meshes.
//!
//! Smooth closed surfaces are represented as six non-overlapping coordinate
//! patches mapping `[-1,1]^2` into R^3, with outward unit normals. Every
//! discretization node carries a [`SurfaceJet`]: the chart derivatives of
//! the surface point and unit normal up to third order together with the
//! first and second fundamental forms, which is exactly what the planewave
//! interpolants consume.

pub mod trimesh;

use crate::cheb::{fejer_rule, FejerRule};
use crate::jet::{jet3_cross, jet3_dot, Jet, Jet3};
use crate::multi_index::{count_upto, flat_index};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("degenerate metric (g = {g:.3e}) at patch parameter ({xi1}, {xi2})")]
    DegenerateMetric { g: f64, xi1: f64, xi2: f64 },
    #[error("mesh parse error: {0}")]
    Parse(String),
    #[error("mesh is not a closed orientable surface: {0}")]
    NotClosed(String),
    #[error("mesh orientation is inconsistent or inward: {0}")]
    Orientation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Vector helpers over `[f64; 3]`.
pub mod vec3 {
    pub fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }
    pub fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }
    pub fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
        [a[0] * s, a[1] * s, a[2] * s]
    }
    pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }
    pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }
    pub fn norm(a: [f64; 3]) -> f64 {
        dot(a, a).sqrt()
    }
    pub fn normalize(a: [f64; 3]) -> [f64; 3] {
        scale(a, 1.0 / norm(a))
    }
    pub fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
        norm(sub(a, b))
    }
}

/// Per-point differential data of a surface chart.
#[derive(Clone, Debug)]
pub struct SurfaceJet {
    /// Chart derivatives `d^a x`, flat multi-index order; entry 0 is the point.
    pub dx: [[f64; 3]; 10],
    /// Normal derivatives `d^a n`; entry 0 is the unit normal.
    pub dn: [[f64; 3]; 10],
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    /// Metric determinant `g11 g22 - g12^2`.
    pub g: f64,
    /// Unitary contravariant tangents.
    pub tau1: [f64; 3],
    pub tau2: [f64; 3],
    /// Second fundamental form coefficients `(L, M, N)`.
    pub ff2: (f64, f64, f64),
}

impl SurfaceJet {
    pub fn point(&self) -> [f64; 3] {
        self.dx[0]
    }

    pub fn normal(&self) -> [f64; 3] {
        self.dn[0]
    }

    pub fn e1(&self) -> [f64; 3] {
        self.dx[1]
    }

    pub fn e2(&self) -> [f64; 3] {
        self.dx[2]
    }

    /// Jet of a planar patch with orthonormal in-plane frame `(e1, e2)`.
    pub fn planar(point: [f64; 3], e1: [f64; 3], e2: [f64; 3], normal: [f64; 3]) -> Self {
        let mut dx = [[0.0; 3]; 10];
        let mut dn = [[0.0; 3]; 10];
        dx[0] = point;
        dx[1] = e1;
        dx[2] = e2;
        dn[0] = normal;
        SurfaceJet {
            dx,
            dn,
            g11: 1.0,
            g12: 0.0,
            g22: 1.0,
            g: 1.0,
            tau1: e1,
            tau2: e2,
            ff2: (0.0, 0.0, 0.0),
        }
    }
}

/// First fundamental form `(g11, g12, g22, g)`.
pub fn first_fundamental_form(jet: &SurfaceJet) -> (f64, f64, f64, f64) {
    (jet.g11, jet.g12, jet.g22, jet.g)
}

/// Second fundamental form coefficients `(L, M, N)`.
pub fn second_fundamental_form(jet: &SurfaceJet) -> (f64, f64, f64) {
    jet.ff2
}

/// A smooth coordinate chart from `[-1,1]^2` into R^3, evaluated in jet
/// arithmetic so derivatives come out exactly.
pub trait Chart: Send + Sync {
    fn eval_jet(&self, xi: [f64; 2]) -> Jet3;
}

/// A chart together with jet extraction.
pub struct ParametricPatch {
    chart: Box<dyn Chart>,
}

impl ParametricPatch {
    pub fn new(chart: Box<dyn Chart>) -> Self {
        ParametricPatch { chart }
    }

    pub fn point(&self, xi: [f64; 2]) -> [f64; 3] {
        let j = self.chart.eval_jet(xi);
        [j[0].value(), j[1].value(), j[2].value()]
    }

    /// Full differential data at `xi`, plus the surface measure `|e1 x e2|`.
    pub fn jet(&self, xi: [f64; 2]) -> Result<(SurfaceJet, f64), GeometryError> {
        let xj = self.chart.eval_jet(xi);
        let e1: Jet3 = [xj[0].shift(0), xj[1].shift(0), xj[2].shift(0)];
        let e2: Jet3 = [xj[0].shift(1), xj[1].shift(1), xj[2].shift(1)];
        let cross = jet3_cross(&e1, &e2);
        let norm2 = jet3_dot(&cross, &cross);
        if norm2.value() <= 0.0 {
            return Err(GeometryError::DegenerateMetric {
                g: norm2.value(),
                xi1: xi[0],
                xi2: xi[1],
            });
        }
        let norm = norm2.sqrt();
        let inv = norm.recip();
        let njet: Jet3 = [cross[0].mul(&inv), cross[1].mul(&inv), cross[2].mul(&inv)];

        let mut dx = [[0.0; 3]; 10];
        let mut dn = [[0.0; 3]; 10];
        for flat in 0..count_upto(3) {
            for c in 0..3 {
                dx[flat][c] = xj[c].derivative(flat);
                dn[flat][c] = njet[c].derivative(flat);
            }
        }

        let g11 = vec3::dot(dx[1], dx[1]);
        let g12 = vec3::dot(dx[1], dx[2]);
        let g22 = vec3::dot(dx[2], dx[2]);
        let g = g11 * g22 - g12 * g12;
        let scale2 = g11.max(g22);
        if g <= 1e-14 * scale2 * scale2 {
            return Err(GeometryError::DegenerateMetric {
                g,
                xi1: xi[0],
                xi2: xi[1],
            });
        }
        let n = [njet[0].value(), njet[1].value(), njet[2].value()];
        let tau1 = vec3::scale(
            vec3::sub(vec3::scale(dx[1], g22), vec3::scale(dx[2], g12)),
            1.0 / (g * g22).sqrt(),
        );
        let tau2 = vec3::scale(
            vec3::sub(vec3::scale(dx[2], g11), vec3::scale(dx[1], g12)),
            1.0 / (g * g11).sqrt(),
        );
        let l = vec3::dot(dx[flat_index(2, 0)], n);
        let m = vec3::dot(dx[flat_index(1, 1)], n);
        let nn = vec3::dot(dx[flat_index(0, 2)], n);

        Ok((
            SurfaceJet {
                dx,
                dn,
                g11,
                g12,
                g22,
                g,
                tau1,
                tau2,
                ff2: (l, m, nn),
            },
            norm.value(),
        ))
    }

    /// One Newton step refining the squared-distance minimizer from `xi0`,
    /// clamped to the patch. Returns the refined parameter.
    pub fn refine_nearest(&self, xi0: [f64; 2], x: [f64; 3]) -> [f64; 2] {
        let xj = self.chart.eval_jet(xi0);
        let p = [xj[0].value(), xj[1].value(), xj[2].value()];
        let d = vec3::sub(x, p);
        let e = |flat: usize| -> [f64; 3] {
            [
                xj[0].derivative(flat),
                xj[1].derivative(flat),
                xj[2].derivative(flat),
            ]
        };
        let e1 = e(1);
        let e2 = e(2);
        let grad = [-vec3::dot(d, e1), -vec3::dot(d, e2)];
        let h11 = vec3::dot(e1, e1) - vec3::dot(d, e(flat_index(2, 0)));
        let h12 = vec3::dot(e1, e2) - vec3::dot(d, e(flat_index(1, 1)));
        let h22 = vec3::dot(e2, e2) - vec3::dot(d, e(flat_index(0, 2)));
        let det = h11 * h22 - h12 * h12;
        if det.abs() < 1e-14 * (h11.abs() + h22.abs()).powi(2) {
            return xi0;
        }
        let dxi = [
            -(h22 * grad[0] - h12 * grad[1]) / det,
            -(h11 * grad[1] - h12 * grad[0]) / det,
        ];
        [
            (xi0[0] + dxi[0]).clamp(-1.0, 1.0),
            (xi0[1] + dxi[1]).clamp(-1.0, 1.0),
        ]
    }
}

// ---------------------------------------------------------------------------
// Built-in charts
// ---------------------------------------------------------------------------

/// Maps `[-1,1]^2` onto one face of the cube `[-1,1]^3` so that
/// `d1 c x d2 c` points along the outward face axis.
#[derive(Clone, Copy, Debug)]
pub struct CubeFace(usize);

impl CubeFace {
    fn embed(&self, u: Jet, v: Jet) -> Jet3 {
        let one = Jet::constant(1.0);
        let neg = Jet::constant(-1.0);
        match self.0 {
            0 => [one, u, v],  // +x
            1 => [neg, v, u],  // -x
            2 => [v, one, u],  // +y
            3 => [u, neg, v],  // -y
            4 => [u, v, one],  // +z
            _ => [v, u, neg],  // -z
        }
    }
}

fn sphere_point(face: CubeFace, xi: [f64; 2]) -> Jet3 {
    let u = Jet::variable(xi[0], 0);
    let v = Jet::variable(xi[1], 1);
    let c = face.embed(u, v);
    let inv = jet3_dot(&c, &c).sqrt().recip();
    [c[0].mul(&inv), c[1].mul(&inv), c[2].mul(&inv)]
}

struct SphereFaceChart {
    face: CubeFace,
    radius: f64,
    center: [f64; 3],
}

impl Chart for SphereFaceChart {
    fn eval_jet(&self, xi: [f64; 2]) -> Jet3 {
        let s = sphere_point(self.face, xi);
        let mut out = s.map(|j| j.scale(self.radius));
        for c in 0..3 {
            out[c] = out[c].add(&Jet::constant(self.center[c]));
        }
        out
    }
}

struct EllipsoidFaceChart {
    face: CubeFace,
    semi: [f64; 3],
}

impl Chart for EllipsoidFaceChart {
    fn eval_jet(&self, xi: [f64; 2]) -> Jet3 {
        let s = sphere_point(self.face, xi);
        [
            s[0].scale(self.semi[0]),
            s[1].scale(self.semi[1]),
            s[2].scale(self.semi[2]),
        ]
    }
}

/// Bean surface: the radial graph `r(s) s` over the unit sphere with
/// `r(s) = 0.6 (1 + 1.2 s_z^2 + 0.25 s_x s_z)`. The `s_z^2` term pinches a
/// waist at the equator (non-convex), the mixed term breaks the symmetry.
struct BeanFaceChart {
    face: CubeFace,
}

impl Chart for BeanFaceChart {
    fn eval_jet(&self, xi: [f64; 2]) -> Jet3 {
        let s = sphere_point(self.face, xi);
        let r = Jet::constant(1.0)
            .add(&s[2].mul(&s[2]).scale(1.2))
            .add(&s[0].mul(&s[2]).scale(0.25))
            .scale(0.6);
        [s[0].mul(&r), s[1].mul(&r), s[2].mul(&r)]
    }
}

struct CubeFaceChart {
    face: CubeFace,
    half: f64,
}

impl Chart for CubeFaceChart {
    fn eval_jet(&self, xi: [f64; 2]) -> Jet3 {
        let u = Jet::variable(xi[0], 0);
        let v = Jet::variable(xi[1], 1);
        self.face.embed(u, v).map(|j| j.scale(self.half))
    }
}

// ---------------------------------------------------------------------------
// Sampled grids
// ---------------------------------------------------------------------------

/// One patch of a [`SurfaceGrid`]: jets and surface-measure weights on the
/// tensor Chebyshev-zero grid, row-major with `i` indexing `xi1`.
pub struct PatchGrid {
    pub patch: ParametricPatch,
    pub jets: Vec<SurfaceJet>,
    pub weights: Vec<f64>,
}

/// A closed surface sampled on per-patch Chebyshev grids.
pub struct SurfaceGrid {
    pub n: usize,
    pub rule: FejerRule,
    pub patches: Vec<PatchGrid>,
}

impl SurfaceGrid {
    fn build(charts: Vec<Box<dyn Chart>>, n: usize) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::InvalidParameter(
                "grid needs at least 2 nodes per side".into(),
            ));
        }
        let rule = fejer_rule(n);
        let mut patches = Vec::with_capacity(charts.len());
        for chart in charts {
            let patch = ParametricPatch::new(chart);
            let mut jets = Vec::with_capacity(n * n);
            let mut weights = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let xi = [rule.nodes[i], rule.nodes[j]];
                    let (jet, measure) = patch.jet(xi)?;
                    jets.push(jet);
                    weights.push(measure * rule.weights[i] * rule.weights[j]);
                }
            }
            patches.push(PatchGrid {
                patch,
                jets,
                weights,
            });
        }
        Ok(SurfaceGrid { n, rule, patches })
    }

    pub fn num_nodes(&self) -> usize {
        self.patches.len() * self.n * self.n
    }

    pub fn jet(&self, flat: usize) -> &SurfaceJet {
        let per = self.n * self.n;
        &self.patches[flat / per].jets[flat % per]
    }

    pub fn weight(&self, flat: usize) -> f64 {
        let per = self.n * self.n;
        self.patches[flat / per].weights[flat % per]
    }

    /// Index of the grid node closest to `x`.
    pub fn nearest_node(&self, x: [f64; 3]) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for idx in 0..self.num_nodes() {
            let d = vec3::dist(self.jet(idx).point(), x);
            if d < best_d {
                best_d = d;
                best = idx;
            }
        }
        best
    }

    /// Nearest-point anchor for near-surface evaluation: nearest node, then
    /// one Newton refinement on its chart.
    pub fn anchor_near(&self, x: [f64; 3]) -> Result<SurfaceJet, GeometryError> {
        let per = self.n * self.n;
        let idx = self.nearest_node(x);
        let (pi, local) = (idx / per, idx % per);
        let (i, j) = (local / self.n, local % self.n);
        let xi0 = [self.rule.nodes[i], self.rule.nodes[j]];
        let patch = &self.patches[pi].patch;
        let xi = patch.refine_nearest(xi0, x);
        Ok(patch.jet(xi)?.0)
    }

    /// True when `x` lies outside the closed surface (boundary counts as
    /// outside). Uses the refined nearest point: for a closed surface the
    /// offset from the true nearest point is exactly aligned with the
    /// outward normal.
    pub fn is_outside(&self, x: [f64; 3]) -> bool {
        let anchor = match self.anchor_near(x) {
            Ok(a) => a,
            Err(_) => return true,
        };
        vec3::dot(vec3::sub(x, anchor.point()), anchor.normal()) >= 0.0
    }

    pub fn total_area(&self) -> f64 {
        self.patches
            .iter()
            .map(|p| p.weights.iter().sum::<f64>())
            .sum()
    }
}

fn six_faces<F>(make: F) -> Vec<Box<dyn Chart>>
where
    F: Fn(CubeFace) -> Box<dyn Chart>,
{
    (0..6).map(|f| make(CubeFace(f))).collect()
}

/// Six-patch cube-to-sphere grid with outward normals.
pub fn make_sphere(radius: f64, center: [f64; 3], n: usize) -> Result<SurfaceGrid, GeometryError> {
    if radius <= 0.0 {
        return Err(GeometryError::InvalidParameter("radius must be positive".into()));
    }
    SurfaceGrid::build(
        six_faces(|face| {
            Box::new(SphereFaceChart {
                face,
                radius,
                center,
            })
        }),
        n,
    )
}

/// Smooth non-convex bean-shaped surface (see [`BeanFaceChart`]).
pub fn make_bean(n: usize) -> Result<SurfaceGrid, GeometryError> {
    SurfaceGrid::build(six_faces(|face| Box::new(BeanFaceChart { face })), n)
}

pub fn make_ellipsoid(a: f64, b: f64, c: f64, n: usize) -> Result<SurfaceGrid, GeometryError> {
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Err(GeometryError::InvalidParameter(
            "semi-axes must be positive".into(),
        ));
    }
    SurfaceGrid::build(
        six_faces(|face| {
            Box::new(EllipsoidFaceChart {
                face,
                semi: [a, b, c],
            })
        }),
        n,
    )
}

/// Cube of the given side length centered at the origin, six flat patches.
pub fn make_cube(side: f64, n: usize) -> Result<SurfaceGrid, GeometryError> {
    if side <= 0.0 {
        return Err(GeometryError::InvalidParameter("side must be positive".into()));
    }
    SurfaceGrid::build(
        six_faces(|face| {
            Box::new(CubeFaceChart {
                face,
                half: side / 2.0,
            })
        }),
        n,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn sphere_normals_are_radial() {
        let g = make_sphere(1.0, [0.0; 3], 8).unwrap();
        let idx = g.nearest_node([1.0, 0.0, 0.0]);
        let jet = g.jet(idx);
        for c in 0..3 {
            assert!((jet.normal()[c] - jet.point()[c]).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_nodes_on_radius() {
        let g = make_sphere(2.5, [1.0, 0.0, -3.0], 6).unwrap();
        for idx in 0..g.num_nodes() {
            let p = vec3::sub(g.jet(idx).point(), [1.0, 0.0, -3.0]);
            assert!((vec3::norm(p) - 2.5).abs() < 1e-13);
        }
    }

    #[test]
    fn sphere_area_and_moments() {
        let g = make_sphere(1.0, [0.0; 3], 24).unwrap();
        assert!((g.total_area() - 4.0 * PI).abs() < 1e-10);
        // closed-surface identities: integral of n vanishes, of x.n is 3V
        let mut n_int = [0.0; 3];
        let mut xn = 0.0;
        for idx in 0..g.num_nodes() {
            let jet = g.jet(idx);
            let w = g.weight(idx);
            for c in 0..3 {
                n_int[c] += jet.normal()[c] * w;
            }
            xn += vec3::dot(jet.point(), jet.normal()) * w;
        }
        for c in 0..3 {
            assert!(n_int[c].abs() < 1e-10);
        }
        assert!((xn - 4.0 * PI).abs() < 1e-9, "3V mismatch: {xn}");
    }

    #[test]
    fn jets_are_orthonormal_frames() {
        for g in [
            make_sphere(1.0, [0.0; 3], 6).unwrap(),
            make_bean(6).unwrap(),
            make_ellipsoid(1.0, 0.7, 1.3, 6).unwrap(),
        ] {
            for idx in 0..g.num_nodes() {
                let jet = g.jet(idx);
                let n = jet.normal();
                assert!((vec3::norm(n) - 1.0).abs() < 1e-12);
                assert!(vec3::dot(n, jet.e1()).abs() < 1e-12 * vec3::norm(jet.e1()));
                assert!(vec3::dot(n, jet.e2()).abs() < 1e-12 * vec3::norm(jet.e2()));
                assert!((vec3::norm(jet.tau1) - 1.0).abs() < 1e-12);
                assert!((vec3::norm(jet.tau2) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sphere_curvature_identities() {
        let r = 1.0;
        let g = make_sphere(r, [0.0; 3], 8).unwrap();
        for idx in 0..g.num_nodes() {
            let jet = g.jet(idx);
            let (l, m, n) = jet.ff2;
            let gauss = (l * n - m * m) / jet.g;
            assert!((gauss - 1.0 / (r * r)).abs() < 1e-8, "K = {gauss}");
            let mean = (jet.g22 * l - 2.0 * jet.g12 * m + jet.g11 * n) / (2.0 * jet.g);
            assert!((mean.abs() - 1.0 / r).abs() < 1e-8, "H = {mean}");
        }
    }

    #[test]
    fn cube_patches_are_flat() {
        let g = make_cube(2.0, 5).unwrap();
        for idx in 0..g.num_nodes() {
            let jet = g.jet(idx);
            let (l, m, n) = jet.ff2;
            assert!(l.abs() + m.abs() + n.abs() < 1e-13);
            assert!(jet.g12.abs() < 1e-13);
            assert_relative_eq!(jet.g11, jet.g22, epsilon = 1e-13);
        }
        assert!((g.total_area() - 24.0).abs() < 1e-10);
        // outward normals
        for idx in 0..g.num_nodes() {
            let jet = g.jet(idx);
            assert!(vec3::dot(jet.point(), jet.normal()) > 0.0);
        }
    }

    #[test]
    fn degenerate_ellipsoid_is_sphere() {
        let s = make_sphere(1.0, [0.0; 3], 5).unwrap();
        let e = make_ellipsoid(1.0, 1.0, 1.0, 5).unwrap();
        for idx in 0..s.num_nodes() {
            assert!(vec3::dist(s.jet(idx).point(), e.jet(idx).point()) < 1e-14);
        }
    }

    #[test]
    fn bean_is_closed() {
        let g = make_bean(24).unwrap();
        let mut n_int = [0.0; 3];
        for idx in 0..g.num_nodes() {
            let w = g.weight(idx);
            for c in 0..3 {
                n_int[c] += g.jet(idx).normal()[c] * w;
            }
        }
        for c in 0..3 {
            assert!(n_int[c].abs() < 1e-8, "component {c}: {}", n_int[c]);
        }
    }

    #[test]
    fn flat_planar_jet_forms() {
        let jet = SurfaceJet::planar([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
        assert_eq!(first_fundamental_form(&jet), (1.0, 0.0, 1.0, 1.0));
        assert_eq!(second_fundamental_form(&jet), (0.0, 0.0, 0.0));
    }

    #[test]
    fn chart_jets_match_finite_differences() {
        // metric from analytic jets vs central differences of the chart
        let g = make_bean(4).unwrap();
        let patch = &g.patches[2].patch;
        let xi = [0.3, -0.55];
        let (jet, _) = patch.jet(xi).unwrap();
        let h = 1e-5;
        let e1_fd = vec3::scale(
            vec3::sub(
                patch.point([xi[0] + h, xi[1]]),
                patch.point([xi[0] - h, xi[1]]),
            ),
            0.5 / h,
        );
        let e2_fd = vec3::scale(
            vec3::sub(
                patch.point([xi[0], xi[1] + h]),
                patch.point([xi[0], xi[1] - h]),
            ),
            0.5 / h,
        );
        assert!((vec3::dot(e1_fd, e1_fd) - jet.g11).abs() < 1e-6);
        assert!((vec3::dot(e1_fd, e2_fd) - jet.g12).abs() < 1e-6);
        assert!((vec3::dot(e2_fd, e2_fd) - jet.g22).abs() < 1e-6);
        // third derivative spot check, nested central differences
        let f = |u: f64, v: f64| patch.point([u, v])[0];
        let d21 = |v: f64| {
            (f(xi[0] + h, v) - 2.0 * f(xi[0], v) + f(xi[0] - h, v)) / (h * h)
        };
        let fd = (d21(xi[1] + h) - d21(xi[1] - h)) / (2.0 * h);
        assert!(
            (fd - jet.dx[flat_index(2, 1)][0]).abs() < 1e-4 * (1.0 + fd.abs()),
            "fd {fd} vs jet {}",
            jet.dx[flat_index(2, 1)][0]
        );
    }

    #[test]
    fn newton_refinement_improves_nearest_point() {
        let g = make_sphere(1.0, [0.0; 3], 8).unwrap();
        let x = [1.4, 0.3, 0.2];
        let anchor = g.anchor_near(x).unwrap();
        // true nearest point on the sphere is x/|x|
        let truth = vec3::normalize(x);
        let node = g.jet(g.nearest_node(x)).point();
        assert!(vec3::dist(anchor.point(), truth) < vec3::dist(node, truth));
        assert!(g.is_outside(x));
        assert!(!g.is_outside([0.2, -0.1, 0.0]));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(make_sphere(-1.0, [0.0; 3], 8).is_err());
        assert!(make_sphere(1.0, [0.0; 3], 1).is_err());
    }
}
