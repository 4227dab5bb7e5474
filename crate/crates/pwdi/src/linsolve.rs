//! Matrix-free GMRES over complex vectors.
//!
//! Full (non-restarted) by default, with modified Gram-Schmidt and one
//! reorthogonalization pass per Arnoldi step; the Hessenberg least-squares
//! problem is updated by complex Givens rotations, whose running residual
//! also provides the (monotone) residual history.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct KrylovConfig {
    /// Relative residual tolerance.
    pub tol: f64,
    pub max_iter: usize,
    /// Restart length; `None` means full GMRES.
    pub restart: Option<usize>,
}

impl Default for KrylovConfig {
    fn default() -> Self {
        KrylovConfig {
            tol: 1e-8,
            max_iter: 300,
            restart: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum GmresError {
    #[error("non-finite value encountered at iteration {iteration}")]
    NonFinite { iteration: usize },
    #[error("config invalid: {0}")]
    BadConfig(String),
}

#[derive(Clone, Debug)]
pub struct GmresResult {
    pub x: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
    /// Relative residual after each iteration.
    pub residual_history: Vec<f64>,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [Complex64], alpha: Complex64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Solves `apply(x) = rhs` by GMRES.
pub fn gmres<F>(apply: F, rhs: &[Complex64], cfg: &KrylovConfig) -> Result<GmresResult, GmresError>
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    if !(cfg.tol > 0.0 && cfg.tol < 1.0) {
        return Err(GmresError::BadConfig(format!(
            "tolerance {} outside (0,1)",
            cfg.tol
        )));
    }
    if cfg.max_iter == 0 {
        return Err(GmresError::BadConfig("max_iter must be >= 1".into()));
    }
    let n = rhs.len();
    let b_norm = norm(rhs);
    if b_norm == 0.0 {
        return Ok(GmresResult {
            x: vec![Complex64::default(); n],
            iterations: 0,
            converged: true,
            residual_history: vec![0.0],
        });
    }

    let mut x = vec![Complex64::default(); n];
    let mut history = Vec::new();
    let mut total_iters = 0;
    let cycle_len = cfg.restart.unwrap_or(cfg.max_iter).min(cfg.max_iter);

    'outer: loop {
        // residual of the current iterate
        let ax = apply(&x);
        let mut r: Vec<Complex64> = rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
        let r_norm = norm(&r);
        if !r_norm.is_finite() {
            return Err(GmresError::NonFinite {
                iteration: total_iters,
            });
        }
        if r_norm / b_norm <= cfg.tol {
            if history.is_empty() {
                history.push(r_norm / b_norm);
            }
            return Ok(GmresResult {
                x,
                iterations: total_iters,
                converged: true,
                residual_history: history,
            });
        }

        for v in &mut r {
            *v /= r_norm;
        }
        let mut basis: Vec<Vec<Complex64>> = vec![r];
        let m = cycle_len;
        let mut h = vec![vec![Complex64::default(); m]; m + 1];
        // Givens rotations and the rotated rhs
        let mut cs = vec![Complex64::default(); m];
        let mut sn = vec![Complex64::default(); m];
        let mut g = vec![Complex64::default(); m + 1];
        g[0] = Complex64::new(r_norm, 0.0);
        let mut converged = false;
        let mut steps = 0;

        for j in 0..m {
            steps = j + 1;
            total_iters += 1;
            let mut w = apply(&basis[j]);
            // modified Gram-Schmidt with one reorthogonalization pass
            for pass in 0..2 {
                for (i, v) in basis.iter().enumerate() {
                    let hij = dot(v, &w);
                    axpy(&mut w, -hij, v);
                    h[i][j] += hij;
                    let _ = pass;
                }
            }
            let wn = norm(&w);
            if !wn.is_finite() {
                return Err(GmresError::NonFinite {
                    iteration: total_iters,
                });
            }
            h[j + 1][j] = Complex64::new(wn, 0.0);

            // apply accumulated rotations to the new column
            for i in 0..j {
                let tmp = cs[i].conj() * h[i][j] + sn[i].conj() * h[i + 1][j];
                h[i + 1][j] = -sn[i] * h[i][j] + cs[i] * h[i + 1][j];
                h[i][j] = tmp;
            }
            let rho = (h[j][j].norm_sqr() + h[j + 1][j].norm_sqr()).sqrt();
            if rho == 0.0 {
                // exact breakdown with a zero column: solution already spanned
                converged = true;
                steps = j;
                total_iters -= 1;
                break;
            }
            cs[j] = h[j][j] / rho;
            sn[j] = h[j + 1][j] / rho;
            h[j][j] = Complex64::new(rho, 0.0);
            h[j + 1][j] = Complex64::default();
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j].conj() * g[j];

            let rel = g[j + 1].norm() / b_norm;
            history.push(rel);
            if rel <= cfg.tol {
                converged = true;
                break;
            }
            // happy breakdown: the new basis vector is negligible
            if wn <= 1e-14 * b_norm {
                converged = true;
                break;
            }
            if total_iters >= cfg.max_iter {
                break;
            }
            let mut v = w;
            for vi in &mut v {
                *vi /= wn;
            }
            basis.push(v);
        }

        // back substitution on the triangular system
        let mut y = vec![Complex64::default(); steps];
        for i in (0..steps).rev() {
            let mut acc = g[i];
            for l in (i + 1)..steps {
                acc -= h[i][l] * y[l];
            }
            if h[i][i].norm() > 0.0 {
                y[i] = acc / h[i][i];
            }
        }
        for (i, yi) in y.iter().enumerate() {
            axpy(&mut x, *yi, &basis[i]);
        }

        if converged {
            return Ok(GmresResult {
                x,
                iterations: total_iters,
                converged: true,
                residual_history: history,
            });
        }
        if total_iters >= cfg.max_iter {
            // report the best iterate with its true residual
            let ax = apply(&x);
            let r: Vec<Complex64> = rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
            history.push(norm(&r) / b_norm);
            return Ok(GmresResult {
                x,
                iterations: total_iters,
                converged: false,
                residual_history: history,
            });
        }
        continue 'outer;
    }
}
