//! Boundary integral solvers for exterior 3D Helmholtz scattering with
//! planewave density interpolation.
//!
//! The library regularizes the singular, hypersingular, and nearly singular
//! kernels of the combined-field (Brakhage-Werner and Burton-Miller)
//! integral equations at the continuous level: the density is locally
//! replaced by a planewave expansion matching its surface jet, and Green's
//! identity cancels the kernel singularity before any quadrature happens.
//! Two discretizations share that machinery: a Chebyshev-patch Nystrom
//! method on smooth parametric surfaces and a P1 Galerkin boundary element
//! method on triangle meshes, including a multiple-scattering formulation
//! for composite obstacles.

pub mod cheb;
pub mod cli;
pub mod fields;
pub mod geometry;
pub mod jet;
pub mod linsolve;
pub mod multi_index;
pub mod nystrom;
pub mod pwdi;

pub mod bem;

pub use fields::{relative_max_error, Field, InteriorSources, PlanewaveIncident};
pub use geometry::{make_bean, make_cube, make_ellipsoid, make_sphere, SurfaceGrid, SurfaceJet};
pub use linsolve::{gmres, KrylovConfig};
pub use pwdi::{InterpKind, Interpolant};
