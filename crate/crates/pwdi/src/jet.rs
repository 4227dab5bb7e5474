//! Truncated bivariate Taylor arithmetic of order 4.
//!
//! A [`Jet`] stores the scaled derivatives `c_a = d^a f / a!` of a smooth
//! function of two chart parameters at a fixed expansion point, for all
//! multi-indices `|a| <= 4`. Propagating jets through a coordinate chart
//! yields machine-accurate chart derivatives up to third order for the
//! surface point and, after one differentiation shift, up to third order
//! for the unit normal as well. This avoids hand-deriving third
//! derivatives of cube-to-sphere maps and keeps every built-in geometry on
//! the same code path.

use crate::multi_index::{flat_index, MULTI_INDICES};

pub const JET_LEN: usize = 15;
pub const JET_ORDER: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    /// Scaled derivatives `d^a f / a!` in flat multi-index order.
    pub c: [f64; JET_LEN],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet { c }
    }

    /// Seed for the chart parameter `xi_axis` (axis 0 or 1) at value `v`.
    pub fn variable(v: f64, axis: usize) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        c[if axis == 0 { 1 } else { 2 }] = 1.0;
        Jet { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Unscaled derivative `d^a f` for the multi-index at `flat`.
    pub fn derivative(&self, flat: usize) -> f64 {
        self.c[flat] * crate::multi_index::alpha_factorial(flat)
    }

    /// Jet of `d f / d xi_axis`, valid to order 3 (order-4 slots zeroed).
    pub fn shift(&self, axis: usize) -> Jet {
        let mut out = [0.0; JET_LEN];
        for (i, &(a1, a2)) in MULTI_INDICES.iter().enumerate() {
            if a1 + a2 > JET_ORDER - 1 {
                continue;
            }
            let (b1, b2) = if axis == 0 { (a1 + 1, a2) } else { (a1, a2 + 1) };
            let scale = if axis == 0 { a1 + 1 } else { a2 + 1 } as f64;
            out[i] = self.c[flat_index(b1, b2)] * scale;
        }
        Jet { c: out }
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut c = self.c;
        for v in &mut c {
            *v *= s;
        }
        Jet { c }
    }

    pub fn mul(&self, rhs: &Jet) -> Jet {
        let mut out = [0.0; JET_LEN];
        for (i, &(a1, a2)) in MULTI_INDICES.iter().enumerate() {
            let ai = self.c[i];
            if ai == 0.0 {
                continue;
            }
            for (j, &(b1, b2)) in MULTI_INDICES.iter().enumerate() {
                if a1 + a2 + b1 + b2 > JET_ORDER {
                    continue;
                }
                out[flat_index(a1 + b1, a2 + b2)] += ai * rhs.c[j];
            }
        }
        Jet { c: out }
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        let mut c = self.c;
        for (v, r) in c.iter_mut().zip(rhs.c.iter()) {
            *v += r;
        }
        Jet { c }
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        let mut c = self.c;
        for (v, r) in c.iter_mut().zip(rhs.c.iter()) {
            *v -= r;
        }
        Jet { c }
    }

    /// Reciprocal via the triangular recurrence; requires nonzero value.
    pub fn recip(&self) -> Jet {
        let a0 = self.c[0];
        assert!(a0 != 0.0, "jet reciprocal of zero");
        let mut b = [0.0; JET_LEN];
        b[0] = 1.0 / a0;
        for (g, &(g1, g2)) in MULTI_INDICES.iter().enumerate().skip(1) {
            let mut acc = 0.0;
            for (j, &(b1, b2)) in MULTI_INDICES.iter().enumerate().skip(1) {
                if b1 > g1 || b2 > g2 {
                    continue;
                }
                acc += self.c[j] * b[flat_index(g1 - b1, g2 - b2)];
            }
            b[g] = -acc / a0;
        }
        Jet { c: b }
    }

    pub fn div(&self, rhs: &Jet) -> Jet {
        self.mul(&rhs.recip())
    }

    /// Square root via the triangular recurrence; requires positive value.
    pub fn sqrt(&self) -> Jet {
        let a0 = self.c[0];
        assert!(a0 > 0.0, "jet sqrt of non-positive value");
        let mut s = [0.0; JET_LEN];
        s[0] = a0.sqrt();
        for (g, &(g1, g2)) in MULTI_INDICES.iter().enumerate().skip(1) {
            let mut acc = 0.0;
            for (j, &(b1, b2)) in MULTI_INDICES.iter().enumerate().skip(1) {
                if b1 > g1 || b2 > g2 {
                    continue;
                }
                let k = flat_index(g1 - b1, g2 - b2);
                if k == 0 || k == g {
                    continue;
                }
                acc += s[j] * s[k];
            }
            s[g] = (self.c[g] - acc) / (2.0 * s[0]);
        }
        Jet { c: s }
    }

    /// Powers of the zero-constant part, used by sin/cos composition.
    fn nilpotent_powers(&self) -> (Jet, Jet, Jet, Jet) {
        let mut g = *self;
        g.c[0] = 0.0;
        let g2 = g.mul(&g);
        let g3 = g2.mul(&g);
        let g4 = g3.mul(&g);
        (g, g2, g3, g4)
    }

    pub fn sin(&self) -> Jet {
        let (s0, c0) = self.c[0].sin_cos();
        let (g, g2, g3, g4) = self.nilpotent_powers();
        // sin(c0 + g) = sin c0 * cos g + cos c0 * sin g
        let cos_g = Jet::constant(1.0).sub(&g2.scale(0.5)).add(&g4.scale(1.0 / 24.0));
        let sin_g = g.sub(&g3.scale(1.0 / 6.0));
        cos_g.scale(s0).add(&sin_g.scale(c0))
    }

    pub fn cos(&self) -> Jet {
        let (s0, c0) = self.c[0].sin_cos();
        let (g, g2, g3, g4) = self.nilpotent_powers();
        let cos_g = Jet::constant(1.0).sub(&g2.scale(0.5)).add(&g4.scale(1.0 / 24.0));
        let sin_g = g.sub(&g3.scale(1.0 / 6.0));
        cos_g.scale(c0).sub(&sin_g.scale(s0))
    }
}

/// Component-wise helpers for R^3-valued jets.
pub type Jet3 = [Jet; 3];

pub fn jet3_cross(a: &Jet3, b: &Jet3) -> Jet3 {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn jet3_dot(a: &Jet3, b: &Jet3) -> Jet {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn jet3_scale(a: &Jet3, s: &Jet) -> Jet3 {
    [a[0].mul(s), a[1].mul(s), a[2].mul(s)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn eval_f(x: f64, y: f64) -> f64 {
        (3.0 * x).sin() * (1.0 + x * y).sqrt() / (2.0 + (2.0 * y).cos())
    }

    fn jet_f(x: f64, y: f64) -> Jet {
        let xj = Jet::variable(x, 0);
        let yj = Jet::variable(y, 1);
        let a = xj.scale(3.0).sin();
        let b = Jet::constant(1.0).add(&xj.mul(&yj)).sqrt();
        let c = Jet::constant(2.0).add(&yj.scale(2.0).cos());
        a.mul(&b).div(&c)
    }

    /// Nested central differences of order |a| <= 3 against jet output.
    #[test]
    fn derivatives_match_finite_differences() {
        let (x, y) = (0.3, -0.4);
        let j = jet_f(x, y);
        let h = 1e-4;
        let fd = |a1: usize, a2: usize| -> f64 {
            // central stencils composed per axis
            let f1 = |xx: f64| -> f64 {
                match a2 {
                    0 => eval_f(xx, y),
                    1 => (eval_f(xx, y + h) - eval_f(xx, y - h)) / (2.0 * h),
                    2 => (eval_f(xx, y + h) - 2.0 * eval_f(xx, y) + eval_f(xx, y - h)) / (h * h),
                    3 => {
                        (eval_f(xx, y + 2.0 * h) - 2.0 * eval_f(xx, y + h)
                            + 2.0 * eval_f(xx, y - h)
                            - eval_f(xx, y - 2.0 * h))
                            / (2.0 * h * h * h)
                    }
                    _ => unreachable!(),
                }
            };
            match a1 {
                0 => f1(x),
                1 => (f1(x + h) - f1(x - h)) / (2.0 * h),
                2 => (f1(x + h) - 2.0 * f1(x) + f1(x - h)) / (h * h),
                3 => {
                    (f1(x + 2.0 * h) - 2.0 * f1(x + h) + 2.0 * f1(x - h) - f1(x - 2.0 * h))
                        / (2.0 * h * h * h)
                }
                _ => unreachable!(),
            }
        };
        for (flat, &(a1, a2)) in MULTI_INDICES.iter().enumerate() {
            if a1 + a2 > 3 {
                continue;
            }
            let exact = j.derivative(flat);
            let approx = fd(a1, a2);
            let tol = 1e-5 * (1.0 + exact.abs());
            assert!(
                (exact - approx).abs() < tol,
                "d^({a1},{a2}): jet {exact} vs fd {approx}"
            );
        }
    }

    #[test]
    fn shift_is_partial_derivative() {
        let j = jet_f(0.2, 0.5);
        let d1 = j.shift(0);
        assert_relative_eq!(d1.value(), j.derivative(1), max_relative = 1e-14);
        assert_relative_eq!(
            d1.derivative(2),
            j.derivative(4),
            max_relative = 1e-13
        );
    }

    #[test]
    fn polynomial_exact() {
        // f = (2 + x)^2 * y
        let x = Jet::variable(1.5, 0);
        let y = Jet::variable(-2.0, 1);
        let b = Jet::constant(2.0).add(&x);
        let f = b.mul(&b).mul(&y);
        assert_relative_eq!(f.value(), (3.5f64).powi(2) * -2.0);
        // d^(1,1) f = 2(2+x)
        assert_relative_eq!(f.derivative(4), 2.0 * 3.5);
        // d^(2,1) f = 2
        assert_relative_eq!(f.derivative(7), 2.0);
    }
}
