//! Two independent mean-curvature oracles for vertical graphs `t = u(x, y)`.
//!
//! The divergence-form oracle measures
//!
//! ```text
//! 2H = div(alpha/W e1 + beta/W e2),
//! alpha = u_x/lambda + 2 tau lambda_y/lambda^2,
//! beta  = u_y/lambda - 2 tau lambda_x/lambda^2,
//! W = sqrt(1 + alpha^2 + beta^2),
//! ```
//!
//! expanding the divergence against the conformal base metric as
//! `div X = (1/lambda^2) (d/dx (lambda X1) + d/dy (lambda X2))` for a field
//! `X = X1 e1 + X2 e2` in the orthonormal base frame `e_i = lambda^{-1} d_i`.
//! The outer derivatives are central differences, Richardson-extrapolated
//! once.
//!
//! The PDE-form oracle, valid on the half-plane model only, solves the
//! quasilinear graph equation for `H` from finite-difference second
//! derivatives, with `m = sqrt(lambda^2 + (2 tau lambda - u_x)^2 + u_y^2)`
//! (the last term enters squared). The two routes share no algebra beyond
//! the flux coefficients, so their agreement is a genuine cross-check.
//!
//! Orientation is fixed by the formulas above: the unit normal has positive
//! vertical component, and an upward-bowing rotational graph of positive mean
//! curvature reports `H > 0`.

use crate::ambient::{AmbientSpace, GeometryError, Model};
use crate::exec;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurvatureError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("graph or gradient not finite at ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("finite-difference step too large: Richardson error estimate {estimate:e} exceeds {tolerance:e}")]
    StepTooLarge { estimate: f64, tolerance: f64 },
    #[error("oracle requires the {required:?} model")]
    WrongModel { required: Model },
}

/// Finite-difference configuration for the oracles.
#[derive(Debug, Clone, Copy)]
pub struct FdOptions {
    /// Central-difference step in model coordinates.
    pub step: f64,
    /// Reject the measurement when the Richardson error estimate exceeds this.
    pub max_fd_error: f64,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions { step: 1e-4, max_fd_error: 1e-5 }
    }
}

/// A graph `t = u(x, y)` over part of the base, with an optional analytic
/// gradient. Without one, gradients fall back to central differences.
pub struct GraphFunction {
    u: Box<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    grad: Option<Box<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>>,
}

impl GraphFunction {
    pub fn new(u: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        GraphFunction { u: Box::new(u), grad: None }
    }

    pub fn with_gradient(
        u: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        grad: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    ) -> Self {
        GraphFunction { u: Box::new(u), grad: Some(Box::new(grad)) }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.u)(x, y)
    }

    /// Analytic gradient when present, otherwise central differences with the
    /// given step.
    pub fn gradient(&self, x: f64, y: f64, step: f64) -> (f64, f64) {
        match &self.grad {
            Some(g) => g(x, y),
            None => {
                let ux = ((self.u)(x + step, y) - (self.u)(x - step, y)) / (2.0 * step);
                let uy = ((self.u)(x, y + step) - (self.u)(x, y - step)) / (2.0 * step);
                (ux, uy)
            }
        }
    }
}

/// Normalized flux `(alpha/W, beta/W)` in the orthonormal base frame. Its
/// norm is strictly below one.
#[derive(Debug, Clone, Copy)]
pub struct FluxField {
    pub e1: f64,
    pub e2: f64,
}

impl FluxField {
    pub fn norm(&self) -> f64 {
        self.e1.hypot(self.e2)
    }
}

fn flux_at(
    space: &AmbientSpace,
    u: &GraphFunction,
    x: f64,
    y: f64,
    step: f64,
) -> Result<(f64, f64, f64), CurvatureError> {
    space.check_point(x, y)?;
    let (l, lx, ly) = space.lambda_with_grad(x, y)?;
    let (ux, uy) = u.gradient(x, y, step);
    if !(ux.is_finite() && uy.is_finite()) {
        return Err(CurvatureError::NonFinite { x, y });
    }
    let alpha = ux / l + 2.0 * space.tau * ly / (l * l);
    let beta = uy / l - 2.0 * space.tau * lx / (l * l);
    let w = (1.0 + alpha * alpha + beta * beta).sqrt();
    Ok((alpha / w, beta / w, l))
}

/// The normalized flux field of the graph at `(x, y)`.
pub fn flux_field(
    space: &AmbientSpace,
    u: &GraphFunction,
    x: f64,
    y: f64,
) -> Result<FluxField, CurvatureError> {
    flux_field_with(space, u, x, y, &FdOptions::default())
}

pub fn flux_field_with(
    space: &AmbientSpace,
    u: &GraphFunction,
    x: f64,
    y: f64,
    opts: &FdOptions,
) -> Result<FluxField, CurvatureError> {
    let (e1, e2, _) = flux_at(space, u, x, y, opts.step)?;
    Ok(FluxField { e1, e2 })
}

/// One central-difference evaluation of the conformal divergence at step `h`.
fn divergence_once(
    space: &AmbientSpace,
    u: &GraphFunction,
    x: f64,
    y: f64,
    h: f64,
) -> Result<f64, CurvatureError> {
    let lf1 = |x: f64, y: f64| -> Result<f64, CurvatureError> {
        let (f1, _, l) = flux_at(space, u, x, y, h)?;
        Ok(l * f1)
    };
    let lf2 = |x: f64, y: f64| -> Result<f64, CurvatureError> {
        let (_, f2, l) = flux_at(space, u, x, y, h)?;
        Ok(l * f2)
    };
    let ddx = (lf1(x + h, y)? - lf1(x - h, y)?) / (2.0 * h);
    let ddy = (lf2(x, y + h)? - lf2(x, y - h)?) / (2.0 * h);
    let l = space.lambda(x, y)?;
    Ok((ddx + ddy) / (2.0 * l * l))
}

/// Mean curvature by the divergence-form oracle, Richardson-extrapolated
/// from steps `h` and `h/2`.
pub fn mean_curvature_div(
    space: &AmbientSpace,
    u: &GraphFunction,
    x: f64,
    y: f64,
    opts: &FdOptions,
) -> Result<f64, CurvatureError> {
    let coarse = divergence_once(space, u, x, y, opts.step)?;
    let fine = divergence_once(space, u, x, y, 0.5 * opts.step)?;
    let estimate = (fine - coarse).abs() / 3.0;
    if estimate > opts.max_fd_error {
        return Err(CurvatureError::StepTooLarge { estimate, tolerance: opts.max_fd_error });
    }
    let value = (4.0 * fine - coarse) / 3.0;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CurvatureError::NonFinite { x, y })
    }
}

/// One PDE-form evaluation at step `h` (half-plane only).
fn pde_once(
    space: &AmbientSpace,
    u: &GraphFunction,
    x: f64,
    y: f64,
    h: f64,
) -> Result<f64, CurvatureError> {
    for (px, py) in [(x + h, y), (x - h, y), (x, y + h), (x, y - h)] {
        space.check_point(px, py)?;
    }
    let l = space.lambda(x, y)?;
    let tau = space.tau;
    let (ux, uy) = u.gradient(x, y, h);
    let uc = u.eval(x, y);
    let uxx = (u.eval(x + h, y) - 2.0 * uc + u.eval(x - h, y)) / (h * h);
    let uyy = (u.eval(x, y + h) - 2.0 * uc + u.eval(x, y - h)) / (h * h);
    let uxy = (u.eval(x + h, y + h) - u.eval(x + h, y - h) - u.eval(x - h, y + h)
        + u.eval(x - h, y - h))
        / (4.0 * h * h);
    if ![ux, uy, uxx, uyy, uxy].iter().all(|v| v.is_finite()) {
        return Err(CurvatureError::NonFinite { x, y });
    }
    let a = ux - 2.0 * tau * l;
    let m2 = l * l + a * a + uy * uy;
    let rhs = uxx * (l.powi(3) + l * uy * uy) + uyy * l * (l * l + a * a)
        - 2.0 * uxy * l * a * uy
        - ux * uy * l * l * a
        - l * l * uy.powi(3);
    Ok(rhs / (2.0 * l * l * m2.powf(1.5)))
}

/// Mean curvature by the quasilinear graph equation (half-plane model),
/// solved for `H` from finite-difference derivatives of `u`, Richardson-
/// extrapolated once.
pub fn mean_curvature_pde(
    space: &AmbientSpace,
    u: &GraphFunction,
    x: f64,
    y: f64,
    opts: &FdOptions,
) -> Result<f64, CurvatureError> {
    if space.model != Model::HalfPlane {
        return Err(CurvatureError::WrongModel { required: Model::HalfPlane });
    }
    let coarse = pde_once(space, u, x, y, opts.step)?;
    let fine = pde_once(space, u, x, y, 0.5 * opts.step)?;
    let estimate = (fine - coarse).abs() / 3.0;
    if estimate > opts.max_fd_error {
        return Err(CurvatureError::StepTooLarge { estimate, tolerance: opts.max_fd_error });
    }
    let value = (4.0 * fine - coarse) / 3.0;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CurvatureError::NonFinite { x, y })
    }
}

/// Which oracle(s) a batched verification should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Divergence,
    Pde,
}

/// Measure `H` at a batch of base points; evaluation is data-parallel with
/// the `parallel` feature. Results keep the input order.
pub fn verify_grid(
    space: &AmbientSpace,
    u: &GraphFunction,
    points: &[(f64, f64)],
    oracle: Oracle,
    opts: &FdOptions,
) -> Vec<Result<f64, CurvatureError>> {
    exec::map_indexed(points.len(), |i| {
        let (x, y) = points[i];
        match oracle {
            Oracle::Divergence => mean_curvature_div(space, u, x, y, opts),
            Oracle::Pde => mean_curvature_pde(space, u, x, y, opts),
        }
    })
}
