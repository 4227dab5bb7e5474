//! Triangle surface meshes: loaders, built-in generators, per-triangle
//! frames, nearest-point queries, and the solid-angle inside test.
//!
//! Every mesh is validated on construction: each edge must be shared by
//! exactly two triangles with opposite directions (closed, consistently
//! oriented) and the enclosed volume must be positive (outward normals).

use super::{vec3, GeometryError, SurfaceJet};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::Path;

/// Precomputed frame data of one mesh triangle.
#[derive(Clone, Debug)]
pub struct TriFrame {
    pub area: f64,
    pub normal: [f64; 3],
    /// Unit edge tangents: `tau_j` is parallel to the edge opposite vertex `j`.
    pub tau: [[f64; 3]; 3],
    /// In-plane edge normals `nu_j = tau_j x n`.
    pub nu: [[f64; 3]; 3],
    /// Heights `h_j = (p_i - p_j) . nu_j > 0`.
    pub h: [f64; 3],
    /// Interior Gauss points (barycentric 2/3,1/6,1/6 permutations).
    pub gauss: [[f64; 3]; 3],
}

#[derive(Clone)]
pub struct TriMesh {
    pub nodes: Vec<[f64; 3]>,
    pub tris: Vec<[usize; 3]>,
    pub frames: Vec<TriFrame>,
    /// Longest edge in the mesh.
    pub max_edge: f64,
}

impl TriMesh {
    pub fn new(nodes: Vec<[f64; 3]>, tris: Vec<[usize; 3]>) -> Result<Self, GeometryError> {
        validate_closed_oriented(&nodes, &tris)?;
        let mut frames = Vec::with_capacity(tris.len());
        let mut max_edge = 0.0f64;
        for t in &tris {
            let frame = build_frame(&nodes, *t)?;
            for j in 0..3 {
                max_edge = max_edge.max(vec3::dist(nodes[t[j]], nodes[t[(j + 1) % 3]]));
            }
            frames.push(frame);
        }
        Ok(TriMesh {
            nodes,
            tris,
            frames,
            max_edge,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn total_area(&self) -> f64 {
        self.frames.iter().map(|f| f.area).sum()
    }

    pub fn translated(&self, shift: [f64; 3]) -> TriMesh {
        let nodes = self.nodes.iter().map(|&p| vec3::add(p, shift)).collect();
        TriMesh::new(nodes, self.tris.clone()).expect("translation preserves validity")
    }

    /// Planar surface jet anchored at `point` inside triangle `tri`, with
    /// the frame `e1 = nu_1, e2 = tau_1`.
    pub fn planar_jet(&self, tri: usize, point: [f64; 3]) -> SurfaceJet {
        let f = &self.frames[tri];
        SurfaceJet::planar(point, f.nu[0], f.tau[0], f.normal)
    }

    /// P1 basis values `(v_{tau_1}, v_{tau_2}, v_{tau_3})` at `p` in `tri`.
    pub fn basis_values(&self, tri: usize, p: [f64; 3]) -> [f64; 3] {
        let f = &self.frames[tri];
        let t = &self.tris[tri];
        let mut out = [0.0; 3];
        for j in 0..3 {
            out[j] = 1.0 - vec3::dot(vec3::sub(p, self.nodes[t[j]]), f.nu[j]) / f.h[j];
        }
        out
    }

    /// Chart derivatives `(d^(1,0) v_j, d^(0,1) v_j)` in the triangle frame.
    pub fn basis_gradients(&self, tri: usize) -> [[f64; 2]; 3] {
        let f = &self.frames[tri];
        let e1 = f.nu[0];
        let e2 = f.tau[0];
        let mut out = [[0.0; 2]; 3];
        for j in 0..3 {
            out[j][0] = -vec3::dot(e1, f.nu[j]) / f.h[j];
            out[j][1] = -vec3::dot(e2, f.nu[j]) / f.h[j];
        }
        out
    }

    /// Surface gradient vector of basis function `j` on triangle `tri`.
    pub fn basis_surface_gradient(&self, tri: usize, j: usize) -> [f64; 3] {
        let f = &self.frames[tri];
        vec3::scale(f.nu[j], -1.0 / f.h[j])
    }

    /// Nearest point on the mesh to `x`. Ties within `1e-9 * max_edge` are
    /// broken by lowest triangle index and flagged.
    pub fn nearest_point(&self, x: [f64; 3]) -> NearestPoint {
        let mut best = NearestPoint {
            tri: 0,
            point: self.nodes[self.tris[0][0]],
            distance: f64::INFINITY,
            ambiguous: false,
        };
        for (ti, t) in self.tris.iter().enumerate() {
            let q = closest_point_on_triangle(
                x,
                self.nodes[t[0]],
                self.nodes[t[1]],
                self.nodes[t[2]],
            );
            let d = vec3::dist(x, q);
            if d + 1e-9 * self.max_edge < best.distance {
                best = NearestPoint {
                    tri: ti,
                    point: q,
                    distance: d,
                    ambiguous: false,
                };
            } else if (d - best.distance).abs() <= 1e-9 * self.max_edge {
                // distinct nearest locations within tolerance get flagged;
                // coincident ones (shared edges/vertices) do not
                if vec3::dist(q, best.point) > 1e-9 * self.max_edge {
                    best.ambiguous = true;
                }
            }
        }
        best
    }

    /// Winding number of the closed mesh around `x`: 1 inside, 0 outside.
    /// Exact (up to roundoff) for the polyhedral surface.
    pub fn winding_number(&self, x: [f64; 3]) -> f64 {
        let mut total = 0.0;
        for t in &self.tris {
            total += solid_angle(
                vec3::sub(self.nodes[t[0]], x),
                vec3::sub(self.nodes[t[1]], x),
                vec3::sub(self.nodes[t[2]], x),
            );
        }
        total / (4.0 * PI)
    }

    pub fn is_inside(&self, x: [f64; 3]) -> bool {
        self.winding_number(x) > 0.5
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NearestPoint {
    pub tri: usize,
    pub point: [f64; 3],
    pub distance: f64,
    pub ambiguous: bool,
}

fn build_frame(nodes: &[[f64; 3]], t: [usize; 3]) -> Result<TriFrame, GeometryError> {
    let p = [nodes[t[0]], nodes[t[1]], nodes[t[2]]];
    let cross = vec3::cross(vec3::sub(p[1], p[0]), vec3::sub(p[2], p[0]));
    let two_area = vec3::norm(cross);
    if two_area <= 0.0 {
        return Err(GeometryError::Parse(format!(
            "degenerate triangle {:?}",
            t
        )));
    }
    let normal = vec3::scale(cross, 1.0 / two_area);
    // tau_1 along edge 3->2 direction p3 - p2, opposite vertex 1, and so on
    let tau = [
        vec3::normalize(vec3::sub(p[2], p[1])),
        vec3::normalize(vec3::sub(p[0], p[2])),
        vec3::normalize(vec3::sub(p[1], p[0])),
    ];
    let nu = [
        vec3::cross(tau[0], normal),
        vec3::cross(tau[1], normal),
        vec3::cross(tau[2], normal),
    ];
    let mut h = [0.0; 3];
    for j in 0..3 {
        let i = (j + 1) % 3;
        h[j] = vec3::dot(vec3::sub(p[i], p[j]), nu[j]);
        if h[j] <= 0.0 {
            return Err(GeometryError::Orientation(format!(
                "non-positive height in triangle {:?}",
                t
            )));
        }
    }
    let gauss = [
        combine(p, [2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]),
        combine(p, [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]),
        combine(p, [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0]),
    ];
    Ok(TriFrame {
        area: 0.5 * two_area,
        normal,
        tau,
        nu,
        h,
        gauss,
    })
}

fn combine(p: [[f64; 3]; 3], w: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for c in 0..3 {
        out[c] = w[0] * p[0][c] + w[1] * p[1][c] + w[2] * p[2][c];
    }
    out
}

fn validate_closed_oriented(
    nodes: &[[f64; 3]],
    tris: &[[usize; 3]],
) -> Result<(), GeometryError> {
    if tris.is_empty() {
        return Err(GeometryError::Parse("mesh has no triangles".into()));
    }
    // per undirected edge: (occurrences, net direction count)
    let mut edges: HashMap<(usize, usize), (i32, i32)> = HashMap::new();
    for t in tris {
        for j in 0..3 {
            let (a, b) = (t[j], t[(j + 1) % 3]);
            if a >= nodes.len() || b >= nodes.len() || a == b {
                return Err(GeometryError::Parse(format!("bad triangle {:?}", t)));
            }
            let entry = edges.entry((a.min(b), a.max(b))).or_insert((0, 0));
            entry.0 += 1;
            entry.1 += if a < b { 1 } else { -1 };
        }
    }
    for (key, (count, net)) in &edges {
        if *count != 2 {
            return Err(GeometryError::NotClosed(format!(
                "edge ({}, {}) belongs to {count} triangles",
                key.0, key.1
            )));
        }
        if *net != 0 {
            return Err(GeometryError::Orientation(format!(
                "edge ({}, {}) traversed twice in the same direction",
                key.0, key.1
            )));
        }
    }
    // signed volume must be positive for outward orientation
    let mut vol6 = 0.0;
    for t in tris {
        vol6 += vec3::dot(
            nodes[t[0]],
            vec3::cross(nodes[t[1]], nodes[t[2]]),
        );
    }
    if vol6 <= 0.0 {
        return Err(GeometryError::Orientation(format!(
            "signed volume {} is not positive",
            vol6 / 6.0
        )));
    }
    Ok(())
}

/// Van Oosterom-Strackee signed solid angle of a triangle seen from origin.
fn solid_angle(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let la = vec3::norm(a);
    let lb = vec3::norm(b);
    let lc = vec3::norm(c);
    let num = vec3::dot(a, vec3::cross(b, c));
    let den =
        la * lb * lc + vec3::dot(a, b) * lc + vec3::dot(b, c) * la + vec3::dot(c, a) * lb;
    2.0 * num.atan2(den)
}

/// Closest point on triangle `(a, b, c)` to `p` (Ericson).
pub fn closest_point_on_triangle(
    p: [f64; 3],
    a: [f64; 3],
    b: [f64; 3],
    c: [f64; 3],
) -> [f64; 3] {
    let ab = vec3::sub(b, a);
    let ac = vec3::sub(c, a);
    let ap = vec3::sub(p, a);
    let d1 = vec3::dot(ab, ap);
    let d2 = vec3::dot(ac, ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = vec3::sub(p, b);
    let d3 = vec3::dot(ab, bp);
    let d4 = vec3::dot(ac, bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return vec3::add(a, vec3::scale(ab, v));
    }
    let cp = vec3::sub(p, c);
    let d5 = vec3::dot(ab, cp);
    let d6 = vec3::dot(ac, cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return vec3::add(a, vec3::scale(ac, w));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return vec3::add(b, vec3::scale(vec3::sub(c, b), w));
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    vec3::add(a, vec3::add(vec3::scale(ab, v), vec3::scale(ac, w)))
}

// ---------------------------------------------------------------------------
// File loaders
// ---------------------------------------------------------------------------

/// Loads an OFF or Gmsh MSH v2 ASCII mesh, selected by file extension
/// (`.off` / `.msh`); anything else is rejected.
pub fn load_trimesh(path: &Path) -> Result<TriMesh, GeometryError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GeometryError::Parse(format!("{}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("off") => parse_off(&text),
        Some("msh") => parse_msh2(&text),
        other => Err(GeometryError::Parse(format!(
            "unsupported mesh format {:?} (expected .off or .msh)",
            other
        ))),
    }
}

pub fn parse_off(text: &str) -> Result<TriMesh, GeometryError> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .map(str::to_owned)
        .collect::<Vec<_>>()
        .into_iter();
    let magic = tokens.next().ok_or_else(|| GeometryError::Parse("empty OFF file".into()))?;
    if magic != "OFF" {
        return Err(GeometryError::Parse("missing OFF header".into()));
    }
    let mut next_usize = |what: &str| -> Result<usize, GeometryError> {
        tokens
            .next()
            .ok_or_else(|| GeometryError::Parse(format!("unexpected EOF reading {what}")))?
            .parse()
            .map_err(|e| GeometryError::Parse(format!("bad {what}: {e}")))
    };
    let nv = next_usize("vertex count")?;
    let nf = next_usize("face count")?;
    let _ne = next_usize("edge count")?;
    let mut nodes = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut p = [0.0; 3];
        for coord in &mut p {
            *coord = tokens
                .next()
                .ok_or_else(|| GeometryError::Parse(format!("EOF in vertex {i}")))?
                .parse()
                .map_err(|e| GeometryError::Parse(format!("bad coordinate: {e}")))?;
        }
        nodes.push(p);
    }
    let mut tris = Vec::with_capacity(nf);
    for f in 0..nf {
        let arity: usize = tokens
            .next()
            .ok_or_else(|| GeometryError::Parse(format!("EOF in face {f}")))?
            .parse()
            .map_err(|e| GeometryError::Parse(format!("bad face arity: {e}")))?;
        if arity != 3 {
            return Err(GeometryError::Parse(format!(
                "face {f} has {arity} vertices; only triangles supported"
            )));
        }
        let mut t = [0usize; 3];
        for v in &mut t {
            *v = tokens
                .next()
                .ok_or_else(|| GeometryError::Parse(format!("EOF in face {f}")))?
                .parse()
                .map_err(|e| GeometryError::Parse(format!("bad vertex index: {e}")))?;
        }
        tris.push(t);
    }
    TriMesh::new(nodes, tris)
}

pub fn parse_msh2(text: &str) -> Result<TriMesh, GeometryError> {
    let mut lines = text.lines().map(str::trim);
    let mut id_map: HashMap<usize, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut tris = Vec::new();
    while let Some(line) = lines.next() {
        match line {
            "$Nodes" => {
                let count: usize = lines
                    .next()
                    .ok_or_else(|| GeometryError::Parse("EOF after $Nodes".into()))?
                    .parse()
                    .map_err(|e| GeometryError::Parse(format!("bad node count: {e}")))?;
                for _ in 0..count {
                    let l = lines
                        .next()
                        .ok_or_else(|| GeometryError::Parse("EOF in $Nodes".into()))?;
                    let mut it = l.split_whitespace();
                    let id: usize = it
                        .next()
                        .ok_or_else(|| GeometryError::Parse("empty node line".into()))?
                        .parse()
                        .map_err(|e| GeometryError::Parse(format!("bad node id: {e}")))?;
                    let mut p = [0.0; 3];
                    for coord in &mut p {
                        *coord = it
                            .next()
                            .ok_or_else(|| GeometryError::Parse("short node line".into()))?
                            .parse()
                            .map_err(|e| GeometryError::Parse(format!("bad coord: {e}")))?;
                    }
                    id_map.insert(id, nodes.len());
                    nodes.push(p);
                }
            }
            "$Elements" => {
                let count: usize = lines
                    .next()
                    .ok_or_else(|| GeometryError::Parse("EOF after $Elements".into()))?
                    .parse()
                    .map_err(|e| GeometryError::Parse(format!("bad element count: {e}")))?;
                for _ in 0..count {
                    let l = lines
                        .next()
                        .ok_or_else(|| GeometryError::Parse("EOF in $Elements".into()))?;
                    let fields: Vec<usize> = l
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<usize>().map_err(|e| {
                                GeometryError::Parse(format!("bad element field: {e}"))
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    if fields.len() < 3 {
                        return Err(GeometryError::Parse("short element line".into()));
                    }
                    let etype = fields[1];
                    let ntags = fields[2];
                    match etype {
                        2 => {
                            let idx = &fields[3 + ntags..];
                            if idx.len() != 3 {
                                return Err(GeometryError::Parse(
                                    "triangle element needs 3 nodes".into(),
                                ));
                            }
                            let mut t = [0usize; 3];
                            for (slot, id) in t.iter_mut().zip(idx) {
                                *slot = *id_map.get(id).ok_or_else(|| {
                                    GeometryError::Parse(format!("unknown node id {id}"))
                                })?;
                            }
                            tris.push(t);
                        }
                        1 | 15 => {} // stray line/point elements are skipped
                        other => {
                            return Err(GeometryError::Parse(format!(
                                "unsupported element type {other}"
                            )))
                        }
                    }
                }
            }
            _ => {}
        }
    }
    if nodes.is_empty() {
        return Err(GeometryError::Parse("no $Nodes section".into()));
    }
    TriMesh::new(nodes, tris)
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Regular tetrahedron inscribed in a sphere of the given radius.
pub fn make_trimesh_tetrahedron(radius: f64) -> TriMesh {
    let s = radius / 3.0f64.sqrt();
    let nodes = vec![
        [s, s, s],
        [s, -s, -s],
        [-s, s, -s],
        [-s, -s, s],
    ];
    let tris = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    TriMesh::new(nodes, tris).expect("regular tetrahedron is valid")
}

/// Icosphere whose maximum edge length is closest (in log scale) to
/// `h_target` among the subdivision levels.
pub fn make_trimesh_sphere(radius: f64, h_target: f64) -> Result<TriMesh, GeometryError> {
    if radius <= 0.0 || h_target <= 0.0 {
        return Err(GeometryError::InvalidParameter(
            "radius and h_target must be positive".into(),
        ));
    }
    // base icosahedron edge for unit circumradius
    let base_edge = 4.0 / (10.0f64 + 2.0 * 5.0f64.sqrt()).sqrt();
    let ratio = base_edge * radius / h_target;
    let level = ratio.log2().round().max(0.0) as usize;
    Ok(icosphere(radius, level))
}

pub fn icosphere(radius: f64, level: usize) -> TriMesh {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut nodes: Vec<[f64; 3]> = vec![
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    for p in &mut nodes {
        *p = vec3::scale(vec3::normalize(*p), radius);
    }
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut new_tris = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let mut mid = [0usize; 3];
            for j in 0..3 {
                let (a, b) = (t[j], t[(j + 1) % 3]);
                let key = (a.min(b), a.max(b));
                mid[j] = *midpoint.entry(key).or_insert_with(|| {
                    let m = vec3::scale(vec3::add(nodes[a], nodes[b]), 0.5);
                    nodes.push(vec3::scale(vec3::normalize(m), radius));
                    nodes.len() - 1
                });
            }
            new_tris.push([t[0], mid[0], mid[2]]);
            new_tris.push([t[1], mid[1], mid[0]]);
            new_tris.push([t[2], mid[2], mid[1]]);
            new_tris.push([mid[0], mid[1], mid[2]]);
        }
        tris = new_tris;
    }
    TriMesh::new(nodes, tris).expect("icosphere is valid")
}

/// Closed hemisphere (spherical dome over `z >= 0` plus flat disk base),
/// centered at the origin, outward oriented.
pub fn make_trimesh_hemisphere(radius: f64, h_target: f64) -> Result<TriMesh, GeometryError> {
    if radius <= 0.0 || h_target <= 0.0 {
        return Err(GeometryError::InvalidParameter(
            "radius and h_target must be positive".into(),
        ));
    }
    // rings chosen so both polar steps and azimuthal steps are ~h
    let n_polar = ((0.5 * PI * radius / h_target).ceil() as usize).max(2);
    let n_azim = ((2.0 * PI * radius / h_target).ceil() as usize).max(6);
    let mut nodes: Vec<[f64; 3]> = Vec::new();
    let mut tris: Vec<[usize; 3]> = Vec::new();

    // dome: ring 0 is the pole
    nodes.push([0.0, 0.0, radius]);
    let mut rings: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..=n_polar {
        let theta = 0.5 * PI * i as f64 / n_polar as f64;
        let mut ring = Vec::with_capacity(n_azim);
        for m in 0..n_azim {
            let phi = 2.0 * PI * m as f64 / n_azim as f64;
            ring.push(nodes.len());
            nodes.push([
                radius * theta.sin() * phi.cos(),
                radius * theta.sin() * phi.sin(),
                radius * theta.cos(),
            ]);
        }
        rings.push(ring);
    }
    // pole fan (counter-clockwise seen from +z => outward)
    for m in 0..n_azim {
        let a = rings[1][m];
        let b = rings[1][(m + 1) % n_azim];
        tris.push([0, a, b]);
    }
    for i in 1..n_polar {
        let (up, lo) = (&rings[i], &rings[i + 1]);
        for m in 0..n_azim {
            let m1 = (m + 1) % n_azim;
            tris.push([up[m], lo[m], lo[m1]]);
            tris.push([up[m], lo[m1], up[m1]]);
        }
    }

    // disk base: rings shrinking from the equator to the center, normal -z
    let equator = rings[n_polar].clone();
    let n_radial = ((radius / h_target).ceil() as usize).max(1);
    let mut disk_rings: Vec<Vec<usize>> = vec![equator];
    for j in 1..n_radial {
        let r = radius * (1.0 - j as f64 / n_radial as f64);
        let mut ring = Vec::with_capacity(n_azim);
        for m in 0..n_azim {
            let phi = 2.0 * PI * m as f64 / n_azim as f64;
            ring.push(nodes.len());
            nodes.push([r * phi.cos(), r * phi.sin(), 0.0]);
        }
        disk_rings.push(ring);
    }
    let center = nodes.len();
    nodes.push([0.0, 0.0, 0.0]);
    for j in 0..disk_rings.len() - 1 {
        let (outer, inner) = (&disk_rings[j], &disk_rings[j + 1]);
        for m in 0..n_azim {
            let m1 = (m + 1) % n_azim;
            // clockwise seen from +z => outward normal -z
            tris.push([outer[m], outer[m1], inner[m1]]);
            tris.push([outer[m], inner[m1], inner[m]]);
        }
    }
    let last = disk_rings.last().unwrap();
    for m in 0..n_azim {
        let m1 = (m + 1) % n_azim;
        tris.push([last[m], last[m1], center]);
    }

    TriMesh::new(nodes, tris)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_is_valid_and_outward() {
        let m = make_trimesh_tetrahedron(1.0);
        assert_eq!(m.tris.len(), 4);
        for (t, f) in m.tris.iter().zip(&m.frames) {
            let centroid = combine([m.nodes[t[0]], m.nodes[t[1]], m.nodes[t[2]]], [1.0 / 3.0; 3]);
            assert!(vec3::dot(centroid, f.normal) > 0.0);
        }
    }

    #[test]
    fn flipped_triangle_is_rejected() {
        let s = 1.0 / 3.0f64.sqrt();
        let nodes = vec![[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
        let tris = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 2, 3]]; // last flipped
        match TriMesh::new(nodes, tris) {
            Err(GeometryError::Orientation(_)) => {}
            other => panic!("expected orientation error, got {other:?}"),
        }
    }

    #[test]
    fn open_surface_is_rejected() {
        let nodes = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        match TriMesh::new(nodes, vec![[0, 1, 2]]) {
            Err(GeometryError::NotClosed(_)) => {}
            other => panic!("expected not-closed error, got {other:?}"),
        }
    }

    #[test]
    fn icosphere_area_converges() {
        let m = make_trimesh_sphere(1.0, 0.07).unwrap();
        assert!(m.max_edge < 0.12, "max edge {}", m.max_edge);
        let ratio = m.total_area() / (4.0 * PI);
        assert!((ratio - 1.0).abs() < 2e-3, "area ratio {ratio}");
    }

    #[test]
    fn hemisphere_closed_and_outward() {
        let m = make_trimesh_hemisphere(1.5, 0.3).unwrap();
        // area: dome 2 pi r^2 + disk pi r^2 (polyhedral, so a few percent low)
        let exact = 3.0 * PI * 1.5 * 1.5;
        assert!((m.total_area() - exact).abs() / exact < 0.02);
        assert!(m.is_inside([0.0, 0.0, 0.5]));
        assert!(!m.is_inside([0.0, 0.0, -0.5]));
        assert!(!m.is_inside([2.0, 0.0, 0.5]));
    }

    #[test]
    fn gauss_points_are_interior_and_basis_sums_to_one() {
        let m = make_trimesh_tetrahedron(1.0);
        for ti in 0..m.tris.len() {
            for l in 0..3 {
                let p = m.frames[ti].gauss[l];
                let v = m.basis_values(ti, p);
                assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-13);
                for (j, val) in v.iter().enumerate() {
                    let want = if j == l { 2.0 / 3.0 } else { 1.0 / 6.0 };
                    assert!((val - want).abs() < 1e-13);
                }
            }
            // gradients sum to zero
            let g = m.basis_gradients(ti);
            for c in 0..2 {
                let s: f64 = g.iter().map(|row| row[c]).sum();
                assert!(s.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn nearest_point_and_winding() {
        let m = icosphere(1.0, 2);
        let x = [1.5, 0.2, -0.1];
        let np = m.nearest_point(x);
        let want = vec3::normalize(x);
        assert!(vec3::dist(np.point, want) < 0.05);
        assert!(!m.is_inside(x));
        assert!(m.is_inside([0.1, 0.0, 0.0]));
        assert!((m.winding_number([0.0, 0.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!(m.winding_number([3.0, 0.0, 0.0]).abs() < 1e-12);
    }

    #[test]
    fn off_roundtrip() {
        let m = make_trimesh_tetrahedron(1.0);
        let mut text = String::from("OFF\n4 4 0\n");
        for p in &m.nodes {
            text.push_str(&format!("{} {} {}\n", p[0], p[1], p[2]));
        }
        for t in &m.tris {
            text.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
        }
        let parsed = parse_off(&text).unwrap();
        assert_eq!(parsed.tris.len(), 4);
        assert!(parse_off("NOFF\n").is_err());
    }

    #[test]
    fn msh2_parses_triangles() {
        let text = "\
$MeshFormat
2.2 0 8
$EndMeshFormat
$Nodes
4
1 0.57735 0.57735 0.57735
2 0.57735 -0.57735 -0.57735
3 -0.57735 0.57735 -0.57735
4 -0.57735 -0.57735 0.57735
$EndNodes
$Elements
5
1 15 2 0 1 1
2 2 2 0 1 1 2 3
3 2 2 0 1 1 4 2
4 2 2 0 1 1 3 4
5 2 2 0 1 2 4 3
$EndElements
";
        let m = parse_msh2(text).unwrap();
        assert_eq!(m.num_nodes(), 4);
        assert_eq!(m.tris.len(), 4);
        // tetrahedra elements rejected
        let bad = text.replace("2 2 2 0 1 1 2 3", "2 4 2 0 1 1 2 3 4");
        assert!(parse_msh2(&bad).is_err());
    }
}
