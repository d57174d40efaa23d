//! Generating curves, regime classification and meshes for constant mean
//! curvature surfaces invariant under rotational, parabolic and screw-motion
//! isometries of the fibered homogeneous space over the hyperbolic plane with
//! bundle curvature `tau` (the product space when `tau = 0`).
//!
//! The crate is organized around three layers:
//!
//! * [`ambient`] - the two conformal models of the hyperbolic base, the
//!   fibered metric, the adapted orthonormal frame and the lifted isometries.
//! * [`rot_profiles`] / [`par_profiles`] - first-integral integrands of the
//!   generating-curve ODEs, singular quadrature, closed forms, regime
//!   classification and end-growth asymptotics.
//! * [`surface_builder`] - sweeping generating curves through one-parameter
//!   isometry groups into meshes, symmetric completion, OBJ/CSV/JSON export.
//!
//! Everything the crate produces can be verified independently through
//! [`curvature`], which measures the mean curvature of a vertical graph by
//! finite differences against the ambient metric in two algebraically
//! unrelated ways.

pub mod ambient;
pub mod curvature;
pub mod exec;
pub mod par_profiles;
pub mod profile;
pub mod quad;
pub mod regime;
pub mod rot_profiles;
pub mod surface_builder;

pub use ambient::{AmbientSpace, Frame, GeometryError, MobiusSpec, Model, Point3};
pub use curvature::{FdOptions, FluxField, GraphFunction};
pub use par_profiles::ParScrewParams;
pub use profile::{EndpointKind, ParamAxis, ProfileCurve, ProfileError, ProfileSample};
pub use regime::{Family, Regime, RegimeReport};
pub use rot_profiles::RotScrewParams;
pub use surface_builder::{PlanarCurve, SurfaceMesh};
