//! The ambient geometry: both conformal models of the hyperbolic plane, the
//! fibered metric
//!
//! ```text
//! g = lambda^2 (dx^2 + dy^2) + (2 tau (lambda_y/lambda dx - lambda_x/lambda dy) + dt)^2
//! ```
//!
//! over them, the orthonormal frame adapted to the fibration, polar/Cartesian
//! conversions on the disk, and the orientation-preserving isometries
//! `F(z,t) = (f(z), t - 2 tau arg f'(z) + c)` lifted from Moebius maps of the
//! base.

use num_complex::Complex64;
use thiserror::Error;

/// Conformal model of the hyperbolic base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Model {
    /// Unit disk, `lambda = 2/(1 - x^2 - y^2)`.
    Disk,
    /// Upper half-plane, `lambda = 1/y`.
    HalfPlane,
}

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("point ({x}, {y}) outside the {model:?} model domain")]
    OutsideDomain { model: Model, x: f64, y: f64 },
    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),
}

/// The fibered homogeneous space over one model of the hyperbolic plane,
/// with bundle curvature `tau`. `tau = 0` is the product space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientSpace {
    pub model: Model,
    pub tau: f64,
}

/// Point in coordinates `(x, y, t)`; `(x, y)` in the base model, `t` along the fiber.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Point3 { x, y, t }
    }
}

/// Orthonormal frame at a point, components in the coordinate basis
/// `(d/dx, d/dy, d/dt)`. `e3` is the unit vertical Killing field.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub e3: [f64; 3],
}

impl AmbientSpace {
    pub fn new(model: Model, tau: f64) -> Self {
        AmbientSpace { model, tau }
    }

    pub fn disk(tau: f64) -> Self {
        Self::new(Model::Disk, tau)
    }

    pub fn half_plane(tau: f64) -> Self {
        Self::new(Model::HalfPlane, tau)
    }

    /// Strict interior test; boundary points are rejected, not clamped.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self.model {
            Model::Disk => x * x + y * y < 1.0,
            Model::HalfPlane => y > 0.0,
        }
    }

    pub fn check_point(&self, x: f64, y: f64) -> Result<(), GeometryError> {
        if self.contains(x, y) && x.is_finite() && y.is_finite() {
            Ok(())
        } else {
            Err(GeometryError::OutsideDomain { model: self.model, x, y })
        }
    }

    /// Conformal factor of the base metric.
    pub fn lambda(&self, x: f64, y: f64) -> Result<f64, GeometryError> {
        self.check_point(x, y)?;
        Ok(self.lambda_unchecked(x, y))
    }

    pub(crate) fn lambda_unchecked(&self, x: f64, y: f64) -> f64 {
        match self.model {
            Model::Disk => 2.0 / (1.0 - x * x - y * y),
            Model::HalfPlane => 1.0 / y,
        }
    }

    /// `(lambda, d lambda/dx, d lambda/dy)`, derivatives in closed form.
    pub fn lambda_with_grad(&self, x: f64, y: f64) -> Result<(f64, f64, f64), GeometryError> {
        self.check_point(x, y)?;
        Ok(self.lambda_grad_unchecked(x, y))
    }

    pub(crate) fn lambda_grad_unchecked(&self, x: f64, y: f64) -> (f64, f64, f64) {
        match self.model {
            Model::Disk => {
                let l = 2.0 / (1.0 - x * x - y * y);
                // lambda_x = x lambda^2, lambda_y = y lambda^2
                (l, x * l * l, y * l * l)
            }
            Model::HalfPlane => (1.0 / y, 0.0, -1.0 / (y * y)),
        }
    }

    /// Coefficients of the connection one-form `omega = p dx + q dy + dt`,
    /// i.e. `p = 2 tau lambda_y / lambda`, `q = -2 tau lambda_x / lambda`.
    fn connection(&self, x: f64, y: f64) -> (f64, f64) {
        let (l, lx, ly) = self.lambda_grad_unchecked(x, y);
        (2.0 * self.tau * ly / l, -2.0 * self.tau * lx / l)
    }

    /// Metric tensor at `p` in coordinates `(x, y, t)`. Symmetric, positive
    /// definite, `g_tt = 1`.
    pub fn metric_tensor(&self, p: Point3) -> Result<[[f64; 3]; 3], GeometryError> {
        self.check_point(p.x, p.y)?;
        let l = self.lambda_unchecked(p.x, p.y);
        let (cp, cq) = self.connection(p.x, p.y);
        let l2 = l * l;
        Ok([
            [l2 + cp * cp, cp * cq, cp],
            [cp * cq, l2 + cq * cq, cq],
            [cp, cq, 1.0],
        ])
    }

    /// Orthonormal frame adapted to the fibration:
    /// `e1 = lambda^-1 d/dx - 2 tau lambda_y/lambda^2 d/dt`,
    /// `e2 = lambda^-1 d/dy + 2 tau lambda_x/lambda^2 d/dt`, `e3 = d/dt`.
    pub fn frame(&self, p: Point3) -> Result<Frame, GeometryError> {
        self.check_point(p.x, p.y)?;
        let (l, lx, ly) = self.lambda_grad_unchecked(p.x, p.y);
        let l2 = l * l;
        Ok(Frame {
            e1: [1.0 / l, 0.0, -2.0 * self.tau * ly / l2],
            e2: [0.0, 1.0 / l, 2.0 * self.tau * lx / l2],
            e3: [0.0, 0.0, 1.0],
        })
    }

    /// Applies a lifted isometry to a point. The base map must be an
    /// orientation-preserving Moebius automorphism of this space's model.
    pub fn isometry_apply(
        &self,
        f: &MobiusSpec,
        c: f64,
        p: Point3,
    ) -> Result<Point3, GeometryError> {
        self.check_point(p.x, p.y)?;
        if f.model != self.model {
            return Err(GeometryError::InvalidIsometry(format!(
                "map is for the {:?} model, space uses {:?}",
                f.model, self.model
            )));
        }
        f.validate()?;
        let z = Complex64::new(p.x, p.y);
        let w = f.apply(z);
        if !self.contains(w.re, w.im) {
            return Err(GeometryError::OutsideDomain { model: self.model, x: w.re, y: w.im });
        }
        let t = p.t - 2.0 * self.tau * f.arg_derivative(z) + c;
        Ok(Point3::new(w.re, w.im, t))
    }
}

/// Evaluate the quadratic form `g` on a pair of tangent vectors.
pub fn metric_dot(g: &[[f64; 3]; 3], v: &[f64; 3], w: &[f64; 3]) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += g[i][j] * v[i] * w[j];
        }
    }
    s
}

/// Disk polar coordinates: `rho` is the hyperbolic distance from the origin.
/// `x = tanh(rho/2) cos(theta)`, `y = tanh(rho/2) sin(theta)`.
pub fn polar_to_cartesian(rho: f64, theta: f64) -> (f64, f64) {
    let r = (rho / 2.0).tanh();
    (r * theta.cos(), r * theta.sin())
}

/// Inverse of [`polar_to_cartesian`]. Errors on points outside the open disk.
pub fn cartesian_to_polar(x: f64, y: f64) -> Result<(f64, f64), GeometryError> {
    let r = x.hypot(y);
    if r >= 1.0 || !r.is_finite() {
        return Err(GeometryError::OutsideDomain { model: Model::Disk, x, y });
    }
    Ok((2.0 * r.atanh(), y.atan2(x)))
}

/// A Moebius map `z -> (a z + b)/(c z + d)` together with the model it acts
/// on. Disk maps have complex coefficients; half-plane maps real ones with
/// `ad - bc > 0`. Orientation-reversing maps (conjugations) are not
/// representable and are rejected by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusSpec {
    pub model: Model,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    /// Exact rotation angle when the map is `z -> e^{i theta} z`; lets the
    /// lift use `arg f' = theta` beyond the principal branch (the fiber is a
    /// line, not a circle).
    rotation_angle: Option<f64>,
}

impl MobiusSpec {
    /// Rotation of the disk about the origin by `theta`.
    pub fn rotation(theta: f64) -> Self {
        MobiusSpec {
            model: Model::Disk,
            a: Complex64::from_polar(1.0, theta),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            rotation_angle: Some(theta),
        }
    }

    /// Disk automorphism `z -> e^{i theta} (z - a)/(1 - conj(a) z)`, `|a| < 1`.
    pub fn disk_automorphism(a: Complex64, theta: f64) -> Result<Self, GeometryError> {
        if a.norm() >= 1.0 {
            return Err(GeometryError::InvalidIsometry(format!(
                "disk automorphism needs |a| < 1, got |a| = {}",
                a.norm()
            )));
        }
        let u = Complex64::from_polar(1.0, theta);
        Ok(MobiusSpec {
            model: Model::Disk,
            a: u,
            b: -u * a,
            c: -a.conj(),
            d: Complex64::new(1.0, 0.0),
            rotation_angle: None,
        })
    }

    /// Half-plane horizontal translation `z -> z + b`.
    pub fn translation(b: f64) -> Self {
        MobiusSpec {
            model: Model::HalfPlane,
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            rotation_angle: None,
        }
    }

    /// Half-plane dilation `z -> k z`, `k > 0`.
    pub fn dilation(k: f64) -> Result<Self, GeometryError> {
        if k <= 0.0 {
            return Err(GeometryError::InvalidIsometry(format!(
                "dilation factor must be positive, got {k}"
            )));
        }
        Ok(MobiusSpec {
            model: Model::HalfPlane,
            a: Complex64::new(k, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            rotation_angle: None,
        })
    }

    /// General half-plane map with real coefficients, `ad - bc > 0`.
    pub fn half_plane(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GeometryError> {
        if a * d - b * c <= 0.0 {
            return Err(GeometryError::InvalidIsometry(format!(
                "half-plane map needs ad - bc > 0, got {}",
                a * d - b * c
            )));
        }
        Ok(MobiusSpec {
            model: Model::HalfPlane,
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(c, 0.0),
            d: Complex64::new(d, 0.0),
            rotation_angle: None,
        })
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// `arg f'(z)` with `f' = det/(cz + d)^2`. Principal branch except for
    /// pure rotations, whose stored angle is used verbatim.
    pub fn arg_derivative(&self, z: Complex64) -> f64 {
        if let Some(theta) = self.rotation_angle {
            return theta;
        }
        (self.det() / (self.c * z + self.d).powi(2)).arg()
    }

    fn validate(&self) -> Result<(), GeometryError> {
        let det = self.det();
        if det.norm() == 0.0 {
            return Err(GeometryError::InvalidIsometry("singular coefficient matrix".into()));
        }
        match self.model {
            Model::HalfPlane => {
                let imag = self.a.im.abs() + self.b.im.abs() + self.c.im.abs() + self.d.im.abs();
                if imag > 1e-12 * (1.0 + det.norm()) {
                    return Err(GeometryError::InvalidIsometry(
                        "half-plane map must have real coefficients".into(),
                    ));
                }
                if det.re <= 0.0 {
                    return Err(GeometryError::InvalidIsometry(
                        "half-plane map must have positive determinant".into(),
                    ));
                }
            }
            Model::Disk => {
                // A Moebius disk automorphism satisfies (c, d) = s (conj b, conj a).
                let s = if self.a.norm() > self.b.norm() {
                    self.d / self.a.conj()
                } else {
                    self.c / self.b.conj()
                };
                let err = (self.c - s * self.b.conj()).norm() + (self.d - s * self.a.conj()).norm();
                if err > 1e-10 * (1.0 + det.norm()) {
                    return Err(GeometryError::InvalidIsometry(
                        "map does not preserve the unit disk".into(),
                    ));
                }
                if self.a.norm_sqr() <= self.b.norm_sqr() {
                    return Err(GeometryError::InvalidIsometry(
                        "map swaps the disk with its exterior".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
