//! Planewave density interpolants.
//!
//! An interpolant is a finite sum of planewaves `sum_l c_l e^{ik d_l.(x-p)}`
//! with unit directions, anchored at a surface point `p`. By construction it
//! solves the Helmholtz equation exactly in all of space, and the two
//! builders ([`analytic`] for closed-form orders 0 and 1, [`algebraic`] for
//! orders up to 3) choose the coefficients so the Dirichlet trace matches a
//! prescribed surface jet and the Neumann trace matches a second one, at the
//! anchor, to the requested order.

pub mod algebraic;
pub mod analytic;

use crate::geometry::vec3;
use num_complex::Complex64;
use thiserror::Error;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Derivatives `d^a phi` of a surface density in flat multi-index order.
pub type DensityJet = [Complex64; 10];

pub fn zero_jet() -> DensityJet {
    [Complex64::default(); 10]
}

#[derive(Debug, Error)]
pub enum PwdiError {
    #[error("interpolation order {0} unsupported here (analytic: 0-1, algebraic: 0-3)")]
    UnsupportedOrder(usize),
    #[error("point-condition matrix is rank deficient (condition estimate {cond:.3e})")]
    RankDeficient { cond: f64 },
    #[error("pseudoinverse residual {residual:.3e} exceeds 1e-8")]
    ResidualTooLarge { residual: f64 },
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// One planewave term `amp * e^{ik d.(x - anchor)}`.
#[derive(Clone, Copy, Debug)]
pub struct PwTerm {
    pub amp: Complex64,
    pub dir: [f64; 3],
}

/// A planewave sum anchored at a surface point; an exact Helmholtz solution.
#[derive(Clone, Debug)]
pub struct PlanewaveSum {
    pub anchor: [f64; 3],
    pub wavenumber: f64,
    pub terms: Vec<PwTerm>,
}

impl PlanewaveSum {
    pub fn eval(&self, x: [f64; 3]) -> Complex64 {
        let d = vec3::sub(x, self.anchor);
        let mut acc = Complex64::default();
        for t in &self.terms {
            let (s, c) = (self.wavenumber * vec3::dot(t.dir, d)).sin_cos();
            acc += t.amp * Complex64::new(c, s);
        }
        acc
    }

    pub fn gradient(&self, x: [f64; 3]) -> [Complex64; 3] {
        let d = vec3::sub(x, self.anchor);
        let mut acc = [Complex64::default(); 3];
        for t in &self.terms {
            let (s, c) = (self.wavenumber * vec3::dot(t.dir, d)).sin_cos();
            let f = t.amp * Complex64::new(c, s) * I * self.wavenumber;
            for i in 0..3 {
                acc[i] += f * t.dir[i];
            }
        }
        acc
    }

    /// Value and Neumann trace (w.r.t. `normal`) in one pass.
    pub fn eval_and_normal(&self, x: [f64; 3], normal: [f64; 3]) -> (Complex64, Complex64) {
        let d = vec3::sub(x, self.anchor);
        let mut val = Complex64::default();
        let mut dn = Complex64::default();
        for t in &self.terms {
            let (s, c) = (self.wavenumber * vec3::dot(t.dir, d)).sin_cos();
            let e = t.amp * Complex64::new(c, s);
            val += e;
            dn += e * vec3::dot(t.dir, normal);
        }
        (val, dn * I * self.wavenumber)
    }

    pub fn normal_trace(&self, x: [f64; 3], normal: [f64; 3]) -> Complex64 {
        self.eval_and_normal(x, normal).1
    }
}

/// Compact closed-form evaluator of the analytic order-0/1 interpolant.
///
/// Holds the six trigonometric building blocks of the closed-form family
/// directly, which keeps the per-pair cost in forward maps at six sincos
/// evaluations instead of fourteen planewave terms.
#[derive(Clone, Debug)]
pub struct CompactAnalytic {
    pub anchor: [f64; 3],
    pub wavenumber: f64,
    pub order: usize,
    pub frame_n: [f64; 3],
    pub frame_t1: [f64; 3],
    pub frame_t2: [f64; 3],
    /// Coefficients of cos(k n.d), sin(k n.d), sin(k t1.d), sin(k t2.d),
    /// sin(k n.d/sqrt2) sin(k t1.d/sqrt2), sin(k n.d/sqrt2) sin(k t2.d/sqrt2).
    pub c_cn: Complex64,
    pub c_sn: Complex64,
    pub c_s1: Complex64,
    pub c_s2: Complex64,
    pub c_p1: Complex64,
    pub c_p2: Complex64,
}

const SQRT2_INV: f64 = std::f64::consts::FRAC_1_SQRT_2;

impl CompactAnalytic {
    #[inline]
    pub fn eval(&self, x: [f64; 3]) -> Complex64 {
        self.eval_and_normal_opt(x, None).0
    }

    #[inline]
    pub fn eval_and_normal(&self, x: [f64; 3], normal: [f64; 3]) -> (Complex64, Complex64) {
        let (v, d) = self.eval_and_normal_opt(x, Some(normal));
        (v, d.unwrap())
    }

    fn eval_and_normal_opt(
        &self,
        x: [f64; 3],
        normal: Option<[f64; 3]>,
    ) -> (Complex64, Option<Complex64>) {
        let d = vec3::sub(x, self.anchor);
        let k = self.wavenumber;
        let u = k * vec3::dot(self.frame_n, d);
        let (su, cu) = u.sin_cos();
        let mut val = self.c_cn * cu + self.c_sn * su;
        let mut grad_n = -self.c_cn * su + self.c_sn * cu; // coefficient of k*n
        let mut grad_t1 = Complex64::default();
        let mut grad_t2 = Complex64::default();
        if self.order >= 1 {
            let v = k * vec3::dot(self.frame_t1, d);
            let w = k * vec3::dot(self.frame_t2, d);
            let (sv, cv) = v.sin_cos();
            let (sw, cw) = w.sin_cos();
            let (su2, cu2) = (u * SQRT2_INV).sin_cos();
            let (sv2, cv2) = (v * SQRT2_INV).sin_cos();
            let (sw2, cw2) = (w * SQRT2_INV).sin_cos();
            val += self.c_s1 * sv + self.c_s2 * sw;
            val += self.c_p1 * (su2 * sv2) + self.c_p2 * (su2 * sw2);
            grad_n += (self.c_p1 * sv2 + self.c_p2 * sw2) * (cu2 * SQRT2_INV);
            grad_t1 = self.c_s1 * cv + self.c_p1 * (su2 * cv2 * SQRT2_INV);
            grad_t2 = self.c_s2 * cw + self.c_p2 * (su2 * cw2 * SQRT2_INV);
        }
        let dn = normal.map(|ny| {
            k * (grad_n * vec3::dot(self.frame_n, ny)
                + grad_t1 * vec3::dot(self.frame_t1, ny)
                + grad_t2 * vec3::dot(self.frame_t2, ny))
        });
        (val, dn)
    }

    pub fn gradient(&self, x: [f64; 3]) -> [Complex64; 3] {
        // assemble from the frame-aligned components
        let d = vec3::sub(x, self.anchor);
        let k = self.wavenumber;
        let u = k * vec3::dot(self.frame_n, d);
        let (su, cu) = u.sin_cos();
        let mut gn = -self.c_cn * su + self.c_sn * cu;
        let mut g1 = Complex64::default();
        let mut g2 = Complex64::default();
        if self.order >= 1 {
            let v = k * vec3::dot(self.frame_t1, d);
            let w = k * vec3::dot(self.frame_t2, d);
            let (_sv, cv) = v.sin_cos();
            let (_sw, cw) = w.sin_cos();
            let (su2, cu2) = (u * SQRT2_INV).sin_cos();
            let (sv2, cv2) = (v * SQRT2_INV).sin_cos();
            let (sw2, cw2) = (w * SQRT2_INV).sin_cos();
            gn += (self.c_p1 * sv2 + self.c_p2 * sw2) * (cu2 * SQRT2_INV);
            g1 = self.c_s1 * cv + self.c_p1 * (su2 * cv2 * SQRT2_INV);
            g2 = self.c_s2 * cw + self.c_p2 * (su2 * cw2 * SQRT2_INV);
        }
        let mut out = [Complex64::default(); 3];
        for i in 0..3 {
            out[i] = k
                * (gn * self.frame_n[i] + g1 * self.frame_t1[i] + g2 * self.frame_t2[i]);
        }
        out
    }

    /// Expansion into explicit planewave terms (14 unit directions).
    pub fn to_terms(&self) -> PlanewaveSum {
        let n = self.frame_n;
        let t1 = self.frame_t1;
        let t2 = self.frame_t2;
        let half = Complex64::new(0.5, 0.0);
        let ih = I * 0.5;
        let mut terms = Vec::with_capacity(14);
        let mut push = |amp: Complex64, dir: [f64; 3]| {
            if amp != Complex64::default() {
                terms.push(PwTerm { amp, dir });
            }
        };
        // cos(k n.d) and sin(k n.d)
        push(self.c_cn * half - self.c_sn * ih, n);
        push(self.c_cn * half + self.c_sn * ih, vec3::scale(n, -1.0));
        // sin(k t.d)
        push(-self.c_s1 * ih, t1);
        push(self.c_s1 * ih, vec3::scale(t1, -1.0));
        push(-self.c_s2 * ih, t2);
        push(self.c_s2 * ih, vec3::scale(t2, -1.0));
        // sin sin products: -(1/4)(e+ - e-)(e+ - e-) expansion
        let quarter = Complex64::new(0.25, 0.0);
        for (cp, t) in [(self.c_p1, t1), (self.c_p2, t2)] {
            let plus = vec3::scale(vec3::add(n, t), SQRT2_INV);
            let minus = vec3::scale(vec3::sub(n, t), SQRT2_INV);
            push(-cp * quarter, plus);
            push(cp * quarter, minus);
            push(cp * quarter, vec3::scale(minus, -1.0));
            push(-cp * quarter, vec3::scale(plus, -1.0));
        }
        PlanewaveSum {
            anchor: self.anchor,
            wavenumber: self.wavenumber,
            terms,
        }
    }
}

/// Either interpolant flavor behind one evaluation interface.
#[derive(Clone, Debug)]
pub enum Interpolant {
    Analytic(CompactAnalytic),
    Terms(PlanewaveSum),
}

impl Interpolant {
    #[inline]
    pub fn eval(&self, x: [f64; 3]) -> Complex64 {
        match self {
            Interpolant::Analytic(c) => c.eval(x),
            Interpolant::Terms(t) => t.eval(x),
        }
    }

    #[inline]
    pub fn eval_and_normal(&self, x: [f64; 3], normal: [f64; 3]) -> (Complex64, Complex64) {
        match self {
            Interpolant::Analytic(c) => c.eval_and_normal(x, normal),
            Interpolant::Terms(t) => t.eval_and_normal(x, normal),
        }
    }

    pub fn gradient(&self, x: [f64; 3]) -> [Complex64; 3] {
        match self {
            Interpolant::Analytic(c) => c.gradient(x),
            Interpolant::Terms(t) => t.gradient(x),
        }
    }

    pub fn anchor(&self) -> [f64; 3] {
        match self {
            Interpolant::Analytic(c) => c.anchor,
            Interpolant::Terms(t) => t.anchor,
        }
    }

    pub fn to_terms(&self) -> PlanewaveSum {
        match self {
            Interpolant::Analytic(c) => c.to_terms(),
            Interpolant::Terms(t) => t.clone(),
        }
    }
}

/// Interpolant construction scheme selector used by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterpKind {
    Analytic,
    Algebraic,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec3;

    /// 2nd-order FD Laplacian plus k^2, should vanish at O(h^2).
    pub fn helmholtz_residual<F: Fn([f64; 3]) -> Complex64>(
        f: &F,
        x: [f64; 3],
        k: f64,
        h: f64,
    ) -> Complex64 {
        let mut lap = -6.0 * f(x);
        for axis in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[axis] += h;
            xm[axis] -= h;
            lap += f(xp) + f(xm);
        }
        lap / (h * h) + k * k * f(x)
    }

    #[test]
    fn planewave_sum_is_helmholtz_solution() {
        let k = 2.3;
        let sum = PlanewaveSum {
            anchor: [0.1, 0.2, -0.3],
            wavenumber: k,
            terms: vec![
                PwTerm {
                    amp: Complex64::new(1.0, -0.5),
                    dir: vec3::normalize([1.0, 2.0, -1.0]),
                },
                PwTerm {
                    amp: Complex64::new(0.3, 0.8),
                    dir: vec3::normalize([-1.0, 0.5, 2.0]),
                },
            ],
        };
        let x = [0.7, -0.4, 0.9];
        let r1 = helmholtz_residual(&|y| sum.eval(y), x, k, 1e-3);
        let r2 = helmholtz_residual(&|y| sum.eval(y), x, k, 5e-4);
        assert!(r1.norm() < 1e-4);
        // second-order decay
        let rate = (r1.norm() / r2.norm()).log2();
        assert!(rate > 1.5 && rate < 2.5, "rate {rate}");
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let sum = PlanewaveSum {
            anchor: [0.0; 3],
            wavenumber: 1.7,
            terms: vec![PwTerm {
                amp: Complex64::new(0.4, 1.1),
                dir: vec3::normalize([0.3, -1.0, 0.2]),
            }],
        };
        let x = [0.2, 0.5, -0.1];
        let g = sum.gradient(x);
        let h = 1e-6;
        for axis in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[axis] += h;
            xm[axis] -= h;
            let fd = (sum.eval(xp) - sum.eval(xm)) / (2.0 * h);
            assert!((fd - g[axis]).norm() < 1e-8);
        }
    }
}
