//! Fejér quadrature and Chebyshev spectral differentiation on the open
//! zero-point grid.
//!
//! The quadrature nodes are the Chebyshev zero points
//! `t_j = cos((2j-1)pi/2N)` and the weights are Fejér's first rule, which
//! integrates smooth functions on `[-1,1]` with spectral accuracy and never
//! places a node on the boundary. Tangential derivatives of grid samples
//! are computed by transforming to Chebyshev coefficients (type-II DCT via
//! FFT), applying the coefficient recurrence for the derivative series, and
//! transforming back.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::multi_index::{count_upto, MULTI_INDICES};

/// Fejér's first quadrature rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct FejerRule {
    pub n: usize,
    /// Nodes in decreasing order, `t_j = cos((2j-1)pi/2N)`.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Builds the `N`-point Fejér first rule.
pub fn fejer_rule(n: usize) -> FejerRule {
    assert!(n >= 1, "fejer_rule requires N >= 1");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for j in 1..=n {
        let theta = (2 * j - 1) as f64 * PI / (2.0 * n as f64);
        nodes.push(theta.cos());
        let mut s = 0.0;
        for l in 1..=(n / 2) {
            s += (2.0 * l as f64 * theta).cos() / (4.0 * (l * l) as f64 - 1.0);
        }
        weights.push(2.0 / n as f64 * (1.0 - 2.0 * s));
    }
    FejerRule { n, nodes, weights }
}

/// Chebyshev analysis/synthesis transforms for one grid size, FFT backed.
pub struct ChebTransform {
    n: usize,
    fwd: Arc<dyn rustfft::Fft<f64>>,
    /// Twiddles `e^{-i pi m / 2N}`.
    twiddle: Vec<Complex64>,
}

impl ChebTransform {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(2 * n);
        let twiddle = (0..n)
            .map(|m| Complex64::from_polar(1.0, -PI * m as f64 / (2.0 * n as f64)))
            .collect();
        ChebTransform { n, fwd, twiddle }
    }

    /// Chebyshev coefficients `a_m` with `f(t) = sum a_m T_m(t)` from
    /// samples on the zero grid (node order of [`fejer_rule`]).
    pub fn analyze(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        assert_eq!(values.len(), n);
        // mirrored extension makes the 2N FFT a type-II DCT for complex data
        let mut buf = vec![Complex64::default(); 2 * n];
        buf[..n].copy_from_slice(values);
        for j in 0..n {
            buf[2 * n - 1 - j] = values[j];
        }
        self.fwd.process(&mut buf);
        let mut a = Vec::with_capacity(n);
        for m in 0..n {
            let y = 0.5 * self.twiddle[m] * buf[m];
            let norm = if m == 0 { 1.0 } else { 2.0 } / n as f64;
            a.push(y * norm);
        }
        a
    }

    /// Samples `sum_m a_m T_m(t_j)` on the zero grid.
    pub fn synthesize(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        assert_eq!(coeffs.len(), n);
        let mut minus = vec![Complex64::default(); 2 * n];
        let mut plus = vec![Complex64::default(); 2 * n];
        for m in 0..n {
            minus[m] = coeffs[m] * self.twiddle[m];
            plus[m] = coeffs[m] * self.twiddle[m].conj();
        }
        self.fwd.process(&mut minus);
        // forward FFT of the conjugate-twiddled coefficients, read backwards,
        // evaluates the positive-frequency half
        self.fwd.process(&mut plus);
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let a = if j == 0 { plus[0] } else { plus[2 * n - j] };
            out.push(0.5 * (a + minus[j]));
        }
        out
    }

    /// Derivative samples `f'(t_j)` from samples `f(t_j)`.
    pub fn differentiate(&self, values: &[Complex64]) -> Vec<Complex64> {
        let a = self.analyze(values);
        let b = derivative_coeffs(&a);
        self.synthesize(&b)
    }
}

/// Chebyshev coefficients of `f'` from those of `f`.
fn derivative_coeffs(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let mut b = vec![Complex64::default(); n];
    if n < 2 {
        return b;
    }
    b[n - 1] = Complex64::default();
    if n >= 2 {
        b[n - 2] = 2.0 * (n - 1) as f64 * a[n - 1];
    }
    for m in (0..n.saturating_sub(2)).rev() {
        let high = if m + 2 < n { b[m + 2] } else { Complex64::default() };
        b[m] = high + 2.0 * (m + 1) as f64 * a[m + 1];
    }
    b[0] *= 0.5;
    b
}

/// All chart derivatives `d^a f` for `|a| <= order` of an `n x n` grid
/// sample, flat multi-index order. Entry 0 is a copy of the input. The
/// grid is row-major with `values[i * n + j] = f(t_i, t_j)`.
pub fn grid_derivatives(
    values: &[Complex64],
    n: usize,
    order: usize,
) -> Vec<Vec<Complex64>> {
    assert!(order <= 3);
    assert_eq!(values.len(), n * n);
    let tr = ChebTransform::new(n);
    let d_axis = |f: &[Complex64], axis: usize| -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); n * n];
        let mut line = vec![Complex64::default(); n];
        if axis == 1 {
            for i in 0..n {
                line.copy_from_slice(&f[i * n..(i + 1) * n]);
                let d = tr.differentiate(&line);
                out[i * n..(i + 1) * n].copy_from_slice(&d);
            }
        } else {
            for j in 0..n {
                for i in 0..n {
                    line[i] = f[i * n + j];
                }
                let d = tr.differentiate(&line);
                for i in 0..n {
                    out[i * n + j] = d[i];
                }
            }
        }
        out
    };

    let count = count_upto(order);
    let mut result: Vec<Option<Vec<Complex64>>> = vec![None; count];
    result[0] = Some(values.to_vec());
    // raise the total degree one multi-index at a time, differentiating the
    // already-computed parent along axis 1 when possible (fewer transposes)
    for flat in 1..count {
        let (a1, a2) = MULTI_INDICES[flat];
        let (parent, axis) = if a2 > 0 {
            (crate::multi_index::flat_index(a1, a2 - 1), 1)
        } else {
            (crate::multi_index::flat_index(a1 - 1, a2), 0)
        };
        let p = result[parent].as_ref().expect("parents computed in order").clone();
        result[flat] = Some(d_axis(&p, axis));
    }
    result.into_iter().map(|v| v.unwrap()).collect()
}
