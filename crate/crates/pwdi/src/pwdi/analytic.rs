//! Closed-form planewave interpolants of order 0 and 1.
//!
//! The expansion functions are trigonometric combinations of planewaves in
//! the local frame `{tau1, tau2, n}`: the value family pairs `cos(k n.d)`
//! with tangential sines corrected by second-fundamental-form terms, the
//! normal-derivative family pairs `sin(k n.d)/k` with mixed sine products.
//! Their traces satisfy the point conditions at the anchor by construction;
//! the sphere tests verify this numerically through spectral
//! differentiation rather than trusting the transcription.

use super::{CompactAnalytic, DensityJet, Interpolant, PwdiError, I};
use crate::geometry::SurfaceJet;
use num_complex::Complex64;

/// Builds the interpolant whose Dirichlet trace matches `dirichlet` and
/// Neumann trace matches `neumann` (jets in flat order, entries `0..3`
/// used) at the anchor, to the given order.
pub fn build_analytic_traces(
    jet: &SurfaceJet,
    dirichlet: &[Complex64; 3],
    neumann: &[Complex64; 3],
    k: f64,
    order: usize,
) -> Result<Interpolant, PwdiError> {
    if order > 1 {
        return Err(PwdiError::UnsupportedOrder(order));
    }
    let (g11, g12, g22, g) = (jet.g11, jet.g12, jet.g22, jet.g);
    let (l, m, n2) = jet.ff2;
    let s22 = (g22 / g).sqrt();
    let s11 = (g11 / g).sqrt();

    let d00 = dirichlet[0];
    let n00 = neumann[0];
    let (d10, d01, n10, n01) = if order == 1 {
        (dirichlet[1], dirichlet[2], neumann[1], neumann[2])
    } else {
        Default::default()
    };

    // curvature couplings of the value family into the sine products
    let a1 = (g12 * m - g22 * l) / g;
    let a2 = (g12 * n2 - g22 * m) / g;
    let b1 = (g12 * l - g11 * m) / g;
    let b2 = (g12 * m - g11 * n2) / g;

    let c_cn = d00;
    let c_sn = n00 / k;
    let c_s1 = d10 * (s22 / k);
    let c_s2 = d01 * (s11 / k);
    let c_p1 = (n10 - a1 * d10 - b1 * d01) * (2.0 * s22 / (k * k));
    let c_p2 = (n01 - a2 * d10 - b2 * d01) * (2.0 * s11 / (k * k));

    Ok(Interpolant::Analytic(CompactAnalytic {
        anchor: jet.point(),
        wavenumber: k,
        order,
        frame_n: jet.normal(),
        frame_t1: jet.tau1,
        frame_t2: jet.tau2,
        c_cn,
        c_sn,
        c_s1,
        c_s2,
        c_p1,
        c_p2,
    }))
}

/// Combined-field interpolant: Dirichlet trace matches the density jet,
/// Neumann trace matches `i eta` times it.
pub fn build_analytic(
    jet: &SurfaceJet,
    density: &DensityJet,
    k: f64,
    eta: f64,
    order: usize,
) -> Result<Interpolant, PwdiError> {
    let d = [density[0], density[1], density[2]];
    let ie = I * eta;
    let n = [ie * density[0], ie * density[1], ie * density[2]];
    build_analytic_traces(jet, &d, &n, k, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_sphere, vec3, SurfaceJet};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn order_zero_closed_form() {
        // M=0: Phi = phi(p) cos(k n.d) + i eta phi(p) sin(k n.d)/k
        let jet = SurfaceJet::planar(
            [0.5, -0.2, 1.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        );
        let (k, eta) = (2.0, 1.5);
        let phi = c(0.7, -0.3);
        let mut density = super::super::zero_jet();
        density[0] = phi;
        let interp = build_analytic(&jet, &density, k, eta, 0).unwrap();
        let x = [0.9, 0.1, 1.7];
        let d = vec3::sub(x, jet.point());
        let arg = k * d[2];
        let want = phi * arg.cos() + I * eta * phi * arg.sin() / k;
        assert!((interp.eval(x) - want).norm() < 1e-14);
        // interpolation conditions at the anchor
        assert!((interp.eval(jet.point()) - phi).norm() < 1e-15);
        let (_, dn) = interp.eval_and_normal(jet.point(), jet.normal());
        assert!((dn - I * eta * phi).norm() < 1e-15);
    }

    #[test]
    fn flat_patch_value_family_reduces_to_tangential_sine() {
        // orthonormal flat frame: the d^(1,0) expansion function is sin(k t1.d)/k
        let jet = SurfaceJet::planar(
            [0.0; 3],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        );
        let k = 3.0;
        let dirichlet = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let neumann = [c(0.0, 0.0); 3];
        let interp = build_analytic_traces(&jet, &dirichlet, &neumann, k, 1).unwrap();
        let x = [0.3, -0.8, 0.25];
        let want = (k * x[0]).sin() / k;
        assert!((interp.eval(x) - want).norm() < 1e-14);
    }

    #[test]
    fn compact_and_term_expansion_agree() {
        let grid = make_sphere(1.0, [0.0; 3], 6).unwrap();
        let jet = grid.jet(17);
        let mut density = super::super::zero_jet();
        density[0] = c(0.4, 0.2);
        density[1] = c(-0.3, 0.9);
        density[2] = c(0.8, -0.1);
        let interp = build_analytic(jet, &density, 1.3, 1.3, 1).unwrap();
        let terms = interp.to_terms();
        assert!(terms.terms.len() <= 14);
        for x in [[1.2, 0.1, -0.4], [0.2, 0.9, 0.6], [-1.5, 0.3, 0.1]] {
            assert!((interp.eval(x) - terms.eval(x)).norm() < 1e-13);
            let ny = vec3::normalize([0.2, -1.0, 0.4]);
            let (v1, d1) = interp.eval_and_normal(x, ny);
            let (v2, d2) = terms.eval_and_normal(x, ny);
            assert!((v1 - v2).norm() < 1e-13);
            assert!((d1 - d2).norm() < 1e-13);
            // gradient assembly matches the term expansion
            let g1 = interp.gradient(x);
            let g2 = terms.gradient(x);
            for i in 0..3 {
                assert!((g1[i] - g2[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn anchor_conditions_on_curved_surface() {
        // value and Neumann trace at the anchor are exact for any jet
        let grid = make_sphere(1.0, [0.0; 3], 8).unwrap();
        for idx in [3, 40, 170, 333] {
            let jet = grid.jet(idx);
            let mut density = super::super::zero_jet();
            density[0] = c(0.3, 0.6);
            density[1] = c(1.1, -0.2);
            density[2] = c(-0.5, 0.4);
            let (k, eta) = (2.0, 2.0);
            let interp = build_analytic(jet, &density, k, eta, 1).unwrap();
            assert!((interp.eval(jet.point()) - density[0]).norm() < 1e-14);
            let (_, dn) = interp.eval_and_normal(jet.point(), jet.normal());
            assert!((dn - I * eta * density[0]).norm() < 1e-13);
        }
    }

    #[test]
    fn zero_density_gives_zero_interpolant() {
        let jet = SurfaceJet::planar(
            [0.0; 3],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        );
        let interp = build_analytic(&jet, &super::super::zero_jet(), 1.0, 1.0, 1).unwrap();
        assert_relative_eq!(interp.eval([0.4, 0.2, 0.3]).norm(), 0.0);
        assert!(interp.to_terms().terms.is_empty());
    }

    #[test]
    fn order_two_rejected() {
        let jet = SurfaceJet::planar(
            [0.0; 3],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        );
        assert!(matches!(
            build_analytic(&jet, &super::super::zero_jet(), 1.0, 1.0, 2),
            Err(PwdiError::UnsupportedOrder(2))
        ));
    }
}
