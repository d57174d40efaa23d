//! Generating curves of rotational and rotational-screw CMC surfaces.
//!
//! A surface swept from the curve `t = u(rho)` in the `xt`-plane by rotations
//! (composed with a vertical translation rate `pitch`) has constant mean
//! curvature `H` exactly when
//!
//! ```text
//! du/drho = (2 H cosh(rho) + d) sqrt(1 + B(rho)^2) / sqrt(f(rho)),
//! B(rho)  = pitch/sinh(rho) - 2 tau tanh(rho/2),
//! f(rho)  = sinh^2(rho) - (2 H cosh(rho) + d)^2,
//! ```
//!
//! with `d` the first-integral constant. The module evaluates this integrand,
//! classifies `(H, d)` pairs into their qualitative regimes, integrates
//! profiles with endpoint-singularity-aware quadrature, evaluates the
//! `tau = -1/2, d = -2H` closed forms, and measures the exponential growth of
//! the `H = 1/2` ends.

use crate::exec;
use crate::profile::{
    CurveSource, EndpointKind, ParamAxis, ProfileCurve, ProfileError, ProfileSample,
};
use crate::quad::{self, Quadrature};
use crate::regime::{CriticalValues, Family, Regime, RegimeReport};

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Error budget above which profile generation reports failure.
pub const PROFILE_ERROR_BUDGET: f64 = 1e-9;
/// Default truncation radius for profiles whose domain is unbounded.
pub const DEFAULT_RHO_MAX: f64 = 5.0;

/// Parameters of a rotational (screw) generating curve. `pitch = 0` is the
/// pure rotational case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotScrewParams {
    pub h: f64,
    pub d: f64,
    pub tau: f64,
    pub pitch: f64,
}

impl RotScrewParams {
    pub fn new(h: f64, d: f64, tau: f64, pitch: f64) -> Self {
        RotScrewParams { h, d, tau, pitch }
    }

    pub fn rotational(h: f64, d: f64, tau: f64) -> Self {
        Self::new(h, d, tau, 0.0)
    }

    pub fn source(&self) -> CurveSource {
        CurveSource {
            family: Family::Rotational,
            h: self.h,
            d: self.d,
            tau: self.tau,
            pitch: self.pitch,
        }
    }
}

/// `g(rho) = d + 2 H cosh(rho)`, the sign of the height derivative.
pub fn g_fun(h: f64, d: f64, rho: f64) -> f64 {
    d + 2.0 * h * rho.cosh()
}

/// `f(rho) = sinh^2(rho) - g(rho)^2`, the radicand of the integrand
/// denominator. The profile domain is `{f > 0}`.
///
/// Evaluated in the factored form
/// `(sinh - 2H cosh - d)(sinh + 2H cosh + d)` with
/// `sinh -/+ 2H cosh = ((1 -/+ 2H) e^rho - (1 +/- 2H) e^-rho)/2`, which stays
/// accurate at large radii where the naive difference of squares cancels
/// catastrophically (for `H = 1/2` the first factor is exactly
/// `-e^-rho - d`).
pub fn f_poly(h: f64, d: f64, rho: f64) -> f64 {
    let ep = rho.exp();
    let em = (-rho).exp();
    let minus = 0.5 * ((1.0 - 2.0 * h) * ep - (1.0 + 2.0 * h) * em) - d;
    let plus = 0.5 * ((1.0 + 2.0 * h) * ep - (1.0 - 2.0 * h) * em) + d;
    minus * plus
}

/// `f` expanded as a quadratic in `cosh(rho)`; equals [`f_poly`] identically.
pub fn f_poly_expanded(h: f64, d: f64, rho: f64) -> f64 {
    let c = rho.cosh();
    (1.0 - 4.0 * h * h) * c * c - 4.0 * d * h * c - (1.0 + d * d)
}

/// The screw/bundle factor `sqrt(1 + B^2)` with
/// `B = pitch/sinh(rho) - 2 tau tanh(rho/2)`. Identically `1` for
/// `tau = pitch = 0`, recovering the product-space integrand.
pub fn screw_factor(tau: f64, pitch: f64, rho: f64) -> f64 {
    if tau == 0.0 && pitch == 0.0 {
        return 1.0;
    }
    let b = pitch / rho.sinh() - 2.0 * tau * (0.5 * rho).tanh();
    (1.0 + b * b).sqrt()
}

/// Height derivative `du/drho`; `NaN` outside `{f > 0}`.
pub(crate) fn integrand_raw(p: &RotScrewParams, rho: f64) -> f64 {
    let f = f_poly(p.h, p.d, rho);
    g_fun(p.h, p.d, rho) * screw_factor(p.tau, p.pitch, rho) / f.sqrt()
}

/// Height derivative `du/drho` of the generating curve at `rho`.
pub fn rot_integrand(p: &RotScrewParams, rho: f64) -> Result<f64, ProfileError> {
    let f = f_poly(p.h, p.d, rho);
    if f <= 0.0 || !f.is_finite() {
        return Err(ProfileError::OutsideDomain {
            param: rho,
            reason: format!("f(rho) = {f} must be positive"),
        });
    }
    Ok(integrand_raw(p, rho))
}

/// Newton-polish a root of `f` so the reported radius satisfies the defining
/// equation to near machine precision.
fn polish_f_root(h: f64, d: f64, rho_guess: f64) -> f64 {
    let mut rho = rho_guess;
    for _ in 0..3 {
        let fv = f_poly(h, d, rho);
        let fp = 2.0 * rho.sinh() * (rho.cosh() - 2.0 * h * g_fun(h, d, rho));
        if fp == 0.0 || !fp.is_finite() {
            break;
        }
        let step = fv / fp;
        if !step.is_finite() || step.abs() > 0.5 * (1.0 + rho.abs()) {
            break;
        }
        rho -= step;
        if rho < 0.0 {
            rho = 0.0;
            break;
        }
    }
    rho
}

fn acosh_clamped(c: f64) -> f64 {
    if c <= 1.0 {
        0.0
    } else {
        c.acosh()
    }
}

/// Radius of the neck/inner boundary: smaller root of `f`.
fn rho1_of(h: f64, d: f64) -> f64 {
    let c = if h == 0.5 {
        (1.0 + d * d) / (-2.0 * d)
    } else {
        (2.0 * d * h + (1.0 - 4.0 * h * h + d * d).sqrt()) / (1.0 - 4.0 * h * h)
    };
    polish_f_root(h, d, acosh_clamped(c))
}

/// Outer radius: larger root of `f`, present only for `H > 1/2`.
fn rho2_of(h: f64, d: f64) -> f64 {
    let c = (2.0 * d * h - (1.0 - 4.0 * h * h + d * d).sqrt()) / (1.0 - 4.0 * h * h);
    polish_f_root(h, d, acosh_clamped(c))
}

/// Radius where the derivative vanishes: `g(rho0) = 0`.
fn rho0_of(h: f64, d: f64) -> f64 {
    acosh_clamped(-d / (2.0 * h))
}

fn check_params(h: f64, d: f64) -> Result<(), ProfileError> {
    if !h.is_finite() || h < 0.0 {
        return Err(ProfileError::InvalidParameter {
            name: "H",
            value: h,
            requirement: "H >= 0 and finite",
        });
    }
    if !d.is_finite() {
        return Err(ProfileError::InvalidParameter {
            name: "d",
            value: d,
            requirement: "d finite",
        });
    }
    Ok(())
}

/// Classify an `(H, d)` pair into its rotational regime and report the
/// critical radii. Comparisons against the regime boundaries (`d = -2H`,
/// `d = -sqrt(4H^2-1)`) are exact in the given floats.
pub fn classify_rotational(h: f64, d: f64) -> Result<RegimeReport, ProfileError> {
    check_params(h, d)?;
    let report = |regime, rho1: Option<f64>, rho0: Option<f64>, rho2: Option<f64>, neck, notes: String| RegimeReport {
        schema_version: 1,
        family: Family::Rotational,
        regime,
        h,
        d,
        critical_radii: CriticalValues::rotational(rho1, rho0, rho2),
        neck_distance: neck,
        embedded: !matches!(regime, Regime::ImmersedAnnulus | Regime::Nodoid),
        notes,
    };

    if h == 0.0 {
        return Ok(if d == 0.0 {
            report(Regime::Slice, None, None, None, None, "totally geodesic slice t = const".into())
        } else {
            let rho1 = polish_f_root(0.0, d, d.abs().asinh());
            let mirror = if d < 0.0 { "; decreasing mirror of the d > 0 profile" } else { "" };
            report(
                Regime::Catenoid,
                Some(rho1),
                None,
                None,
                Some(rho1),
                format!("embedded minimal annulus, inner radius arcsinh(|d|){mirror}"),
            )
        });
    }

    if h < 0.5 {
        return Ok(if d > -2.0 * h {
            let rho1 = rho1_of(h, d);
            report(
                Regime::EmbeddedAnnulus,
                Some(rho1),
                None,
                None,
                Some(rho1),
                "properly embedded annulus, symmetric about t = 0, vertical tangent at the neck".into(),
            )
        } else if d == -2.0 * h {
            report(
                Regime::EntireGraph,
                Some(0.0),
                None,
                None,
                None,
                "entire vertical graph tangent to the slice at the axis".into(),
            )
        } else {
            let rho1 = rho1_of(h, d);
            report(
                Regime::ImmersedAnnulus,
                Some(rho1),
                Some(rho0_of(h, d)),
                None,
                Some(rho1),
                "properly immersed (nonembedded) annulus, symmetric about t = 0".into(),
            )
        });
    }

    if h == 0.5 {
        if d >= 0.0 {
            return Err(ProfileError::EmptyFamily { condition: "d<0 required for H=1/2".into() });
        }
        return Ok(if d > -1.0 {
            let rho1 = rho1_of(h, d);
            report(
                Regime::EmbeddedAnnulus,
                Some(rho1),
                None,
                None,
                Some(rho1),
                "properly embedded annulus, symmetric about t = 0, vertical tangent at the neck".into(),
            )
        } else if d == -1.0 {
            report(
                Regime::EntireGraph,
                Some(0.0),
                None,
                None,
                None,
                "entire vertical graph, asymptotic to the ideal boundary".into(),
            )
        } else {
            let rho1 = rho1_of(h, d);
            report(
                Regime::ImmersedAnnulus,
                Some(rho1),
                Some(rho0_of(h, d)),
                None,
                Some(rho1),
                "properly immersed (nonembedded) annulus, symmetric about t = 0".into(),
            )
        });
    }

    // H > 1/2: the family is nonempty only for d <= -sqrt(4H^2 - 1).
    let d_cyl = -(4.0 * h * h - 1.0).sqrt();
    if d > d_cyl {
        return Err(ProfileError::EmptyFamily {
            condition: "d<=-sqrt(4H^2-1) required for H>1/2".into(),
        });
    }
    Ok(if d == d_cyl {
        let rho = (2.0 * h / (4.0 * h * h - 1.0).sqrt()).acosh();
        report(
            Regime::Cylinder,
            Some(rho),
            None,
            Some(rho),
            None,
            "vertical cylinder over the circle of that radius; the two radicand roots coincide".into(),
        )
    } else if d == -2.0 * h {
        let rho2 = ((4.0 * h * h + 1.0) / (4.0 * h * h - 1.0)).acosh();
        report(
            Regime::Sphere,
            Some(0.0),
            Some(0.0),
            Some(rho2),
            None,
            "embedded rotational sphere; rho2 is the maximal distance from the axis".into(),
        )
    } else if d < -2.0 * h {
        report(
            Regime::Nodoid,
            Some(rho1_of(h, d)),
            Some(rho0_of(h, d)),
            Some(rho2_of(h, d)),
            None,
            "immersed annulus, vertically periodic between the two bounding cylinders".into(),
        )
    } else {
        report(
            Regime::Unduloid,
            Some(rho1_of(h, d)),
            None,
            Some(rho2_of(h, d)),
            None,
            "embedded annulus, vertically periodic between the two bounding cylinders".into(),
        )
    })
}

/// Quadrature domain of a profile: endpoints, their behavior, and the radius
/// where the height is normalized to zero.
#[derive(Debug, Clone, Copy)]
pub struct RotDomain {
    pub lo: f64,
    pub lo_kind: EndpointKind,
    pub hi: Option<f64>,
    pub hi_kind: EndpointKind,
    pub reference: f64,
}

/// Domain and normalization radius for the `(H, d)` profile.
pub fn rot_domain(h: f64, d: f64) -> Result<RotDomain, ProfileError> {
    let report = classify_rotational(h, d)?;
    let c = &report.critical_radii;
    Ok(match report.regime {
        Regime::Slice => RotDomain {
            lo: 0.0,
            lo_kind: EndpointKind::ZeroDerivative,
            hi: None,
            hi_kind: EndpointKind::Asymptotic,
            reference: 0.0,
        },
        Regime::Catenoid | Regime::EmbeddedAnnulus => {
            let rho1 = c.rho1().unwrap();
            RotDomain {
                lo: rho1,
                lo_kind: EndpointKind::VerticalTangent,
                hi: None,
                hi_kind: EndpointKind::Asymptotic,
                reference: rho1,
            }
        }
        Regime::EntireGraph => RotDomain {
            lo: 0.0,
            lo_kind: EndpointKind::ZeroDerivative,
            hi: None,
            hi_kind: EndpointKind::Asymptotic,
            reference: 0.0,
        },
        Regime::ImmersedAnnulus => RotDomain {
            lo: c.rho1().unwrap(),
            lo_kind: EndpointKind::VerticalTangent,
            hi: None,
            hi_kind: EndpointKind::Asymptotic,
            reference: c.rho0().unwrap(),
        },
        Regime::Sphere => RotDomain {
            lo: 0.0,
            lo_kind: EndpointKind::ZeroDerivative,
            hi: c.rho2(),
            hi_kind: EndpointKind::VerticalTangent,
            reference: 0.0,
        },
        Regime::Nodoid => RotDomain {
            lo: c.rho1().unwrap(),
            lo_kind: EndpointKind::VerticalTangent,
            hi: c.rho2(),
            hi_kind: EndpointKind::VerticalTangent,
            reference: c.rho0().unwrap(),
        },
        Regime::Unduloid => RotDomain {
            lo: c.rho1().unwrap(),
            lo_kind: EndpointKind::VerticalTangent,
            hi: c.rho2(),
            hi_kind: EndpointKind::VerticalTangent,
            reference: c.rho1().unwrap(),
        },
        Regime::Cylinder => return Err(ProfileError::DegenerateCylinder),
    })
}

/// Radicand measured from a root: `f(rho_e + delta) - f(rho_e)`, expanded so
/// no catastrophic cancellation occurs for small `delta`. Uses
/// `sinh^2(rho) - sinh^2(rho_e) = sinh(delta) sinh(2 rho_e + delta)` and
/// `g - g_e = 4H sinh(rho_e + delta/2) sinh(delta/2)`.
fn radicand_from_root(h: f64, d: f64, rho_e: f64, delta: f64) -> f64 {
    let g = g_fun(h, d, rho_e + delta);
    let ge = g_fun(h, d, rho_e);
    let dg = 4.0 * h * (rho_e + 0.5 * delta).sinh() * (0.5 * delta).sinh();
    delta.sinh() * (2.0 * rho_e + delta).sinh() - dg * (g + ge)
}

/// Integrand at `rho_e + delta` where `rho_e` is a radicand root. The
/// difference form wins close to the root; past it the factored [`f_poly`]
/// is the accurate one.
fn integrand_from_root(p: &RotScrewParams, rho_e: f64, delta: f64) -> f64 {
    let rho = rho_e + delta;
    let f = if delta.abs() <= 1e-3 * (1.0 + rho_e) {
        radicand_from_root(p.h, p.d, rho_e, delta)
    } else {
        f_poly(p.h, p.d, rho)
    };
    g_fun(p.h, p.d, rho) * screw_factor(p.tau, p.pitch, rho) / f.sqrt()
}

/// Integrate the profile integrand over `[a, b]` inside the domain. Segments
/// touching a radicand root substitute `rho = root +/- s^2`, turning the
/// inverse-square-root endpoint into an analytic integrand evaluated through
/// the cancellation-free radicand above.
fn integrate_segment(
    p: &RotScrewParams,
    a: f64,
    b: f64,
    a_singular: bool,
    b_singular: bool,
    tol: f64,
) -> Result<f64, ProfileError> {
    let q = match (a_singular, b_singular) {
        (false, false) => quad::integrate(|r| integrand_raw(p, r), a, b, tol)?,
        (true, false) => {
            quad::integrate(|s| 2.0 * s * integrand_from_root(p, a, s * s), 0.0, (b - a).sqrt(), tol)?
        }
        (false, true) => {
            quad::integrate(|s| 2.0 * s * integrand_from_root(p, b, -(s * s)), 0.0, (b - a).sqrt(), tol)?
        }
        (true, true) => {
            let mid = 0.5 * (a + b);
            let left = quad::integrate(
                |s| 2.0 * s * integrand_from_root(p, a, s * s),
                0.0,
                (mid - a).sqrt(),
                0.5 * tol,
            )?;
            let right = quad::integrate(
                |s| 2.0 * s * integrand_from_root(p, b, -(s * s)),
                0.0,
                (b - mid).sqrt(),
                0.5 * tol,
            )?;
            Quadrature { value: left.value + right.value, error: left.error + right.error }
        }
    };
    Ok(q.value)
}

/// Height `u(rho)` of the generating curve, normalized to zero at the
/// regime's reference radius, via adaptive quadrature.
pub fn rot_height(p: &RotScrewParams, rho: f64, tol: f64) -> Result<f64, ProfileError> {
    let dom = rot_domain(p.h, p.d)?;
    if p.h == 0.0 && p.d == 0.0 {
        return Ok(0.0);
    }
    let hi_ok = dom.hi.map(|hi| rho <= hi).unwrap_or(true);
    if rho < dom.lo || !hi_ok {
        return Err(ProfileError::OutsideDomain {
            param: rho,
            reason: format!("profile domain starts at rho = {}", dom.lo),
        });
    }
    let lo_sing = dom.lo_kind == EndpointKind::VerticalTangent;
    let hi_sing = |x: f64| dom.hi == Some(x) && dom.hi_kind == EndpointKind::VerticalTangent;
    let r = dom.reference;
    if rho == r {
        return Ok(0.0);
    }
    if rho > r {
        integrate_segment(p, r, rho, r == dom.lo && lo_sing, hi_sing(rho), tol)
    } else {
        Ok(-integrate_segment(p, rho, r, rho == dom.lo && lo_sing, hi_sing(r), tol)?)
    }
}

/// Options for profile sampling.
#[derive(Debug, Clone, Copy)]
pub struct RotSampleOptions {
    /// Truncation radius for domains that extend to infinity.
    pub rho_max: f64,
    /// Absolute quadrature tolerance per sampled curve.
    pub tol: f64,
}

impl Default for RotSampleOptions {
    fn default() -> Self {
        RotSampleOptions { rho_max: DEFAULT_RHO_MAX, tol: DEFAULT_TOL }
    }
}

/// Sample the generating curve on `n` uniformly spaced radii covering the
/// regime's domain (truncated at `rho_max` when unbounded), heights by
/// accumulated quadrature, normalized to zero at the reference radius.
pub fn profile_numeric(p: &RotScrewParams, n: usize) -> Result<ProfileCurve, ProfileError> {
    profile_numeric_with(p, n, &RotSampleOptions::default())
}

pub fn profile_numeric_with(
    p: &RotScrewParams,
    n: usize,
    opts: &RotSampleOptions,
) -> Result<ProfileCurve, ProfileError> {
    let n = n.max(2);
    let dom = rot_domain(p.h, p.d)?;

    // The slice is flat; no quadrature involved.
    if p.h == 0.0 && p.d == 0.0 {
        let hi = opts.rho_max.max(1.0);
        let samples = (0..n)
            .map(|i| {
                let rho = hi * i as f64 / (n - 1) as f64;
                ProfileSample { param: rho, u: 0.0, du: 0.0 }
            })
            .collect();
        let curve = ProfileCurve {
            axis: ParamAxis::Rho,
            samples,
            start: EndpointKind::ZeroDerivative,
            end: EndpointKind::Asymptotic,
            source: p.source(),
        };
        curve.debug_validate();
        return Ok(curve);
    }

    let hi = match dom.hi {
        Some(hi) => hi,
        None => {
            if opts.rho_max > dom.lo {
                opts.rho_max
            } else {
                dom.lo + DEFAULT_RHO_MAX
            }
        }
    };
    let lo = dom.lo;
    let step = (hi - lo) / (n - 1) as f64;
    let rho_at = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };

    let lo_sing = dom.lo_kind == EndpointKind::VerticalTangent;
    let hi_sing = dom.hi.is_some() && dom.hi_kind == EndpointKind::VerticalTangent;
    let seg_tol = (opts.tol / n as f64).max(1e-14);

    let increments = exec::map_indexed(n - 1, |i| {
        integrate_segment(
            p,
            rho_at(i),
            rho_at(i + 1),
            i == 0 && lo_sing,
            i == n - 2 && hi_sing,
            seg_tol,
        )
    });

    let mut u = Vec::with_capacity(n);
    u.push(0.0);
    for inc in increments {
        let last = *u.last().unwrap();
        u.push(last + inc?);
    }

    // Shift so the height vanishes at the reference radius.
    let offset = if dom.reference == lo {
        0.0
    } else {
        integrate_segment(p, lo, dom.reference, lo_sing, false, seg_tol)?
    };

    let samples: Vec<ProfileSample> = (0..n)
        .map(|i| {
            let rho = rho_at(i);
            let du = if i == 0 {
                match dom.lo_kind {
                    EndpointKind::VerticalTangent => {
                        f64::INFINITY.copysign(g_fun(p.h, p.d, rho))
                    }
                    EndpointKind::ZeroDerivative => 0.0,
                    EndpointKind::Asymptotic => integrand_raw(p, rho),
                }
            } else if i == n - 1 && hi_sing {
                f64::INFINITY.copysign(g_fun(p.h, p.d, rho))
            } else {
                integrand_raw(p, rho)
            };
            ProfileSample { param: rho, u: u[i] - offset, du }
        })
        .collect();

    let curve = ProfileCurve {
        axis: ParamAxis::Rho,
        samples,
        start: dom.lo_kind,
        end: if dom.hi.is_some() { dom.hi_kind } else { EndpointKind::Asymptotic },
        source: p.source(),
    };
    curve.debug_validate();
    Ok(curve)
}

/// Which of the `tau = -1/2, d = -2H` closed forms applies, by the sign of
/// `4H^2 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormBranch {
    /// `0 < H < 1/2`: logarithm plus arctangent, defined for all radii.
    Subcritical,
    /// `H = 1/2`: `u = 2 sqrt(cosh rho) - 2 arctan(sqrt(cosh rho))`.
    Critical,
    /// `H > 1/2`: arcsine plus arctangent, defined while
    /// `cosh rho <= (4H^2+1)/(4H^2-1)`.
    Supercritical,
}

pub fn closed_form_branch(h: f64) -> Option<ClosedFormBranch> {
    if h <= 0.0 || !h.is_finite() {
        None
    } else if h < 0.5 {
        Some(ClosedFormBranch::Subcritical)
    } else if h == 0.5 {
        Some(ClosedFormBranch::Critical)
    } else {
        Some(ClosedFormBranch::Supercritical)
    }
}

/// Antiderivative of the `tau = -1/2`, `d = -2H` integrand in closed form.
///
/// The supercritical branch is the corrected expression
/// `A asin(sqrt(c/K)) - 2 atan(sqrt(K+1) sqrt(c) / sqrt(K - c))` with
/// `c = cosh rho`, `K = (4H^2+1)/(4H^2-1)` and `A = 4 sqrt(2) H / sqrt(4H^2-1)`:
/// the first inner denominator carries a square root, which differentiation
/// against the integrand confirms. All branches are continuous on their
/// domains with principal inverse trigonometric functions; the supercritical
/// arctangent tends to `pi/2` at the outer radius.
pub fn rot_closed_form(h: f64, rho: f64, branch: ClosedFormBranch) -> Result<f64, ProfileError> {
    let c = rho.cosh();
    match branch {
        ClosedFormBranch::Critical => {
            if h != 0.5 {
                return Err(ProfileError::InvalidParameter {
                    name: "H",
                    value: h,
                    requirement: "H = 1/2 for the critical closed form",
                });
            }
            Ok(2.0 * c.sqrt() - 2.0 * c.sqrt().atan())
        }
        ClosedFormBranch::Supercritical => {
            if !(h > 0.5) {
                return Err(ProfileError::InvalidParameter {
                    name: "H",
                    value: h,
                    requirement: "H > 1/2 for the supercritical closed form",
                });
            }
            let k = (4.0 * h * h + 1.0) / (4.0 * h * h - 1.0);
            if c > k * (1.0 + 1e-12) {
                return Err(ProfileError::OutsideDomain {
                    param: rho,
                    reason: format!("cosh(rho) = {c} exceeds the maximal value {k}"),
                });
            }
            let a = 4.0 * 2.0f64.sqrt() * h / (4.0 * h * h - 1.0).sqrt();
            let first = a * (c / k).sqrt().min(1.0).asin();
            let second = if c >= k {
                std::f64::consts::FRAC_PI_2
            } else {
                ((k + 1.0).sqrt() * c.sqrt() / (k - c).sqrt()).atan()
            };
            Ok(first - 2.0 * second)
        }
        ClosedFormBranch::Subcritical => {
            if !(h > 0.0 && h < 0.5) {
                return Err(ProfileError::InvalidParameter {
                    name: "H",
                    value: h,
                    requirement: "0 < H < 1/2 for the subcritical closed form",
                });
            }
            let kp = (1.0 + 4.0 * h * h) / (1.0 - 4.0 * h * h);
            let a = 4.0 * 2.0f64.sqrt() * h / (1.0 - 4.0 * h * h).sqrt();
            let first = a * (c.sqrt() + (c + kp).sqrt()).ln();
            let second = ((kp - 1.0).sqrt() * c.sqrt() / (c + kp).sqrt()).atan();
            Ok(first - 2.0 * second)
        }
    }
}

/// Growth measurement of an `H = 1/2` rotational end with `d = -alpha`.
#[derive(Debug, Clone, Copy)]
pub struct EndGrowth {
    /// Height `u(rho)` relative to the profile reference.
    pub height: f64,
    /// Empirical ratio `u(rho) e^{-rho/2}`.
    pub ratio: f64,
    /// The limiting growth coefficient `sqrt(1 + 4 tau^2) / sqrt(alpha)`.
    pub predicted: f64,
}

/// Integrate the `H = 1/2, d = -alpha` profile out to `rho` and compare the
/// height against the exponential growth law of the end.
pub fn end_growth(alpha: f64, tau: f64, rho: f64) -> Result<EndGrowth, ProfileError> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(ProfileError::InvalidParameter {
            name: "alpha",
            value: alpha,
            requirement: "alpha > 0",
        });
    }
    let p = RotScrewParams::rotational(0.5, -alpha, tau);
    let height = rot_height(&p, rho, DEFAULT_TOL)?;
    Ok(EndGrowth {
        height,
        ratio: height * (-rho / 2.0).exp(),
        predicted: (1.0 + 4.0 * tau * tau).sqrt() / alpha.sqrt(),
    })
}

/// The profile surface as a vertical graph over the disk: heights by
/// quadrature from the reference radius (plus `pitch * theta` for screw
/// motions), gradient from the integrand in closed form. Outside the profile
/// domain the graph evaluates to NaN, which the curvature oracles report as
/// contamination.
pub fn profile_graph(p: &RotScrewParams, tol: f64) -> crate::curvature::GraphFunction {
    let pv = *p;
    crate::curvature::GraphFunction::with_gradient(
        move |x, y| {
            let r = x.hypot(y);
            if r >= 1.0 {
                return f64::NAN;
            }
            let rho = 2.0 * r.atanh();
            match rot_height(&pv, rho, tol) {
                Ok(u) => u + pv.pitch * y.atan2(x),
                Err(_) => f64::NAN,
            }
        },
        move |x, y| {
            let r = x.hypot(y);
            if r < 1e-12 {
                return (0.0, 0.0);
            }
            let rho = 2.0 * r.atanh();
            let du = match rot_integrand(&pv, rho) {
                Ok(v) => v,
                Err(_) => {
                    // zero-derivative endpoints (entire graphs, sphere poles)
                    // are inside the domain even though f vanishes there
                    if (pv.d + 2.0 * pv.h) == 0.0 && rho < 1e-8 {
                        0.0
                    } else {
                        return (f64::NAN, f64::NAN);
                    }
                }
            };
            let lam = 2.0 / (1.0 - r * r);
            let (tx, ty) = (-y / (r * r), x / (r * r));
            (du * lam * x / r + pv.pitch * tx, du * lam * y / r + pv.pitch * ty)
        },
    )
}

/// The compact rotational sphere (`d = -2H`) for `H > 1/2`: the barrier ruling
/// out entire graphs of that mean curvature. Returns its maximal radius and
/// the sampled half-profile.
pub fn sphere_barrier(
    h: f64,
    tau: f64,
    n: usize,
) -> Result<(f64, ProfileCurve), ProfileError> {
    if !(h > 0.5) {
        return Err(ProfileError::InvalidParameter {
            name: "H",
            value: h,
            requirement: "H > 1/2",
        });
    }
    let report = classify_rotational(h, -2.0 * h)?;
    let rho2 = report.critical_radii.rho2().expect("sphere regime has an outer radius");
    let profile = profile_numeric(&RotScrewParams::rotational(h, -2.0 * h, tau), n)?;
    Ok((rho2, profile))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN3: f64 = 1.0986122886681098;

    #[test]
    fn f_and_g_special_cases() {
        for rho in [0.0, 0.3, 1.7, 4.0] {
            assert_eq!(g_fun(0.0, 0.0, rho), 0.0);
            let want = rho.sinh().powi(2);
            assert!((f_poly(0.0, 0.0, rho) - want).abs() < 1e-13 * (1.0 + want));
            // H = 1/2, d = -1: f = 2 cosh(rho) - 2
            let want = 2.0 * rho.cosh() - 2.0;
            assert!((f_poly(0.5, -1.0, rho) - want).abs() < 1e-12 * (1.0 + want));
        }
    }

    #[test]
    fn expanded_form_agrees_with_defining_form() {
        for (h, d) in [(0.1, 0.7), (0.25, -1.3), (0.5, -2.0), (0.9, -3.1), (0.0, 1.0)] {
            for i in 0..40 {
                let rho = 0.1 * i as f64;
                let a = f_poly(h, d, rho);
                let b = f_poly_expanded(h, d, rho);
                assert!((a - b).abs() < 1e-9 * (1.0 + a.abs().max(b.abs())), "({h},{d},{rho}): {a} vs {b}");
            }
        }
    }

    #[test]
    fn rho1_formula_and_bisection_agree() {
        // H = 0.25, d = 0: cosh(rho1) = 1/sqrt(3/4), rho1 = ln(sqrt(3)).
        let r = classify_rotational(0.25, 0.0).unwrap();
        let rho1 = r.critical_radii.rho1().unwrap();
        assert!((rho1.cosh() - 1.1547005383792515).abs() < 1e-12);
        assert!((rho1 - 0.5493061443340549).abs() < 1e-12);

        // independent bisection on f
        let (mut a, mut b) = (0.0, 2.0);
        assert!(f_poly(0.25, 0.0, a) < 0.0 && f_poly(0.25, 0.0, b) > 0.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f_poly(0.25, 0.0, m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        assert!((0.5 * (a + b) - rho1).abs() < 1e-12);
    }

    #[test]
    fn classification_reference_points() {
        let r = classify_rotational(1.0, -2.0).unwrap();
        assert_eq!(r.regime, Regime::Sphere);
        assert!((r.critical_radii.rho2().unwrap() - LN3).abs() < 1e-12);

        let r = classify_rotational(1.0, -3.0f64.sqrt()).unwrap();
        assert_eq!(r.regime, Regime::Cylinder);
        assert!((r.critical_radii.rho1().unwrap() - 0.5493061443340549).abs() < 1e-12);

        let r = classify_rotational(0.5, -1.0).unwrap();
        assert_eq!(r.regime, Regime::EntireGraph);

        let r = classify_rotational(0.0, 0.0).unwrap();
        assert_eq!(r.regime, Regime::Slice);

        let r = classify_rotational(0.0, 1.0).unwrap();
        assert_eq!(r.regime, Regime::Catenoid);
        assert!((r.critical_radii.rho1().unwrap() - 1.0f64.asinh()).abs() < 1e-12);

        let r = classify_rotational(0.3, 0.0).unwrap();
        assert_eq!(r.regime, Regime::EmbeddedAnnulus);
        assert!((r.critical_radii.rho1().unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn empty_families_name_the_condition() {
        match classify_rotational(0.5, 0.5) {
            Err(ProfileError::EmptyFamily { condition }) => {
                assert!(condition.contains("d<0 required for H=1/2"), "{condition}");
            }
            other => panic!("expected EmptyFamily, got {other:?}"),
        }
        match classify_rotational(1.0, -1.0) {
            Err(ProfileError::EmptyFamily { condition }) => {
                assert!(condition.contains("d<=-sqrt(4H^2-1)"), "{condition}");
            }
            other => panic!("expected EmptyFamily, got {other:?}"),
        }
        assert!(classify_rotational(-0.1, 0.0).is_err());
    }

    #[test]
    fn root_conditions_hold_to_1e10() {
        let grid_h = [0.0, 0.25, 0.5, 0.75, 1.0];
        let grid_d = [-3.0, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5];
        for &h in &grid_h {
            for &d in &grid_d {
                let Ok(r) = classify_rotational(h, d) else { continue };
                if let Some(rho1) = r.critical_radii.rho1() {
                    assert!(f_poly(h, d, rho1).abs() < 1e-10, "f(rho1) for ({h},{d})");
                }
                if let Some(rho2) = r.critical_radii.rho2() {
                    if r.regime != Regime::Cylinder {
                        assert!(f_poly(h, d, rho2).abs() < 1e-10, "f(rho2) for ({h},{d})");
                    }
                }
                if let Some(rho0) = r.critical_radii.rho0() {
                    if h > 0.0 {
                        assert!(g_fun(h, d, rho0).abs() < 1e-10, "g(rho0) for ({h},{d})");
                    }
                }
            }
        }
    }

    #[test]
    fn integrand_special_values() {
        // Minimal with d = 0: numerator vanishes.
        let p = RotScrewParams::rotational(0.0, 0.0, -0.5);
        for rho in [0.5, 1.0, 3.0] {
            assert_eq!(rot_integrand(&p, rho).unwrap(), 0.0);
        }

        // H = 1/2, d = -1, tau = -1/2: u' = sqrt((c-1)(1 + tanh^2(rho/2)))/sqrt(2).
        let p = RotScrewParams::rotational(0.5, -1.0, -0.5);
        for rho in [0.3f64, 1.1, 2.4] {
            let c = rho.cosh();
            let want = ((c - 1.0) * (1.0 + (0.5 * rho).tanh().powi(2))).sqrt() / 2.0f64.sqrt();
            let got = rot_integrand(&p, rho).unwrap();
            assert!((got - want).abs() < 1e-13 * (1.0 + want), "{got} vs {want}");
        }

        // tau = 0 (pitch 0) collapses the screw factor to exactly 1.
        for rho in [0.2, 1.0, 5.0] {
            assert_eq!(screw_factor(0.0, 0.0, rho), 1.0);
        }

        // outside the domain
        let p = RotScrewParams::rotational(0.0, 1.0, 0.0);
        assert!(matches!(
            rot_integrand(&p, 0.5),
            Err(ProfileError::OutsideDomain { .. })
        ));
    }

    #[test]
    fn catenoid_profile_matches_reference_quadrature() {
        // u(2) with u(arcsinh 1) = 0, tau = -1/2: independent reference value.
        let p = RotScrewParams::rotational(0.0, 1.0, -0.5);
        let u2 = rot_height(&p, 2.0, 1e-12).unwrap();
        assert!((u2 - 1.1730822569996826).abs() < 1e-10, "{u2}");
        // tau = 0 reduction reference
        let p0 = RotScrewParams::rotational(0.0, 1.0, 0.0);
        let u2 = rot_height(&p0, 2.0, 1e-12).unwrap();
        assert!((u2 - 1.0351484796736075).abs() < 1e-10, "{u2}");
    }

    #[test]
    fn catenoid_profile_shape() {
        let p = RotScrewParams::rotational(0.0, 1.0, -0.5);
        let curve = profile_numeric(&p, 400).unwrap();
        assert_eq!(curve.start, EndpointKind::VerticalTangent);
        assert!(curve.samples[0].du.is_infinite() && curve.samples[0].du > 0.0);
        // strictly increasing heights, u' > 0, u'' < 0 past the neck
        for w in curve.samples.windows(2) {
            assert!(w[1].u > w[0].u);
        }
        for i in 2..curve.samples.len() - 1 {
            let du0 = curve.samples[i - 1].du;
            let du1 = curve.samples[i].du;
            assert!(du1 > 0.0);
            assert!(du1 < du0, "u'' should be negative past the neck");
        }
    }

    #[test]
    fn entire_graph_profile_matches_closed_form() {
        let p = RotScrewParams::rotational(0.5, -1.0, -0.5);
        let base = rot_closed_form(0.5, 0.0, ClosedFormBranch::Critical).unwrap();
        for rho in [0.1, 0.7, 1.9, 4.2] {
            let numeric = rot_height(&p, rho, 1e-12).unwrap();
            let closed = rot_closed_form(0.5, rho, ClosedFormBranch::Critical).unwrap() - base;
            assert!((numeric - closed).abs() < 1e-9, "rho={rho}: {numeric} vs {closed}");
        }
        // frozen spot value: u(0) of the closed form itself is 2 - pi/2
        assert!((base - 0.42920367320510344).abs() < 1e-15);
    }

    #[test]
    fn supercritical_closed_form_matches_quadrature() {
        let h = 3.0f64.sqrt() / 2.0;
        let p = RotScrewParams::rotational(h, -2.0 * h, -0.5);
        let base = rot_closed_form(h, 0.0, ClosedFormBranch::Supercritical).unwrap();
        let closed = rot_closed_form(h, 1.0, ClosedFormBranch::Supercritical).unwrap() - base;
        assert!((closed - 0.5559868858467142).abs() < 1e-12, "{closed}");
        let numeric = rot_height(&p, 1.0, 1e-12).unwrap();
        assert!((numeric - closed).abs() < 1e-10);
        // domain ends at cosh(rho) = 2 for this H
        assert!(rot_closed_form(h, 1.45, ClosedFormBranch::Supercritical).is_err());
    }

    #[test]
    fn subcritical_closed_form_matches_quadrature() {
        let h = 0.3;
        let p = RotScrewParams::rotational(h, -2.0 * h, -0.5);
        let base = rot_closed_form(h, 0.0, ClosedFormBranch::Subcritical).unwrap();
        let closed = rot_closed_form(h, 1.0, ClosedFormBranch::Subcritical).unwrap() - base;
        assert!((closed - 0.15508170179526766).abs() < 1e-12, "{closed}");
        let numeric = rot_height(&p, 1.0, 1e-12).unwrap();
        assert!((numeric - closed).abs() < 1e-10);
    }

    #[test]
    fn immersed_profile_dips_then_rises() {
        // H = 0.3, d = -1: rho0 with g(rho0) = 0 between rho1 and infinity.
        let p = RotScrewParams::rotational(0.3, -1.0, -0.5);
        let curve = profile_numeric(&p, 600).unwrap();
        let report = classify_rotational(0.3, -1.0).unwrap();
        let rho0 = report.critical_radii.rho0().unwrap();
        // normalized to zero at rho0, negative nowhere (minimum there)
        let min = curve.samples.iter().map(|s| s.u).fold(f64::INFINITY, f64::min);
        assert!(min > -1e-8, "minimum {min} should sit at the normalization level");
        // derivative changes sign exactly at rho0
        for s in &curve.samples[1..curve.samples.len() - 1] {
            if s.param < rho0 - 1e-9 {
                assert!(s.du <= 0.0, "nonincreasing before rho0 (rho={})", s.param);
            } else if s.param > rho0 + 1e-9 {
                assert!(s.du >= 0.0, "nondecreasing after rho0 (rho={})", s.param);
            }
        }
    }

    #[test]
    fn nodoid_profile_covers_the_closed_interval() {
        let p = RotScrewParams::rotational(1.0, -3.0, -0.5);
        let curve = profile_numeric(&p, 300).unwrap();
        let r = classify_rotational(1.0, -3.0).unwrap();
        assert!((curve.samples.first().unwrap().param - 0.5969096904465340).abs() < 1e-10);
        assert!((curve.samples.last().unwrap().param - 1.6955219791146437).abs() < 1e-10);
        assert!((r.critical_radii.rho0().unwrap() - 0.9624236501192069).abs() < 1e-10);
        assert_eq!(curve.start, EndpointKind::VerticalTangent);
        assert_eq!(curve.end, EndpointKind::VerticalTangent);
        assert!(curve.samples[0].du == f64::NEG_INFINITY);
        assert!(curve.samples.last().unwrap().du == f64::INFINITY);
    }

    #[test]
    fn heights_diverge_for_positive_h() {
        // u -> infinity along the end for 0 < H <= 1/2, with increasing gaps.
        for (h, d) in [(0.25, 0.4), (0.5, -0.7), (0.4, -1.0)] {
            let p = RotScrewParams::rotational(h, d, -0.5);
            let u5 = rot_height(&p, 5.0, 1e-10).unwrap();
            let u10 = rot_height(&p, 10.0, 1e-10).unwrap();
            let u20 = rot_height(&p, 20.0, 1e-10).unwrap();
            assert!(u20 > u10 && u10 > u5, "({h},{d}): {u5} {u10} {u20}");
            assert!(u20 - u10 > u10 - u5, "gaps must grow");
        }
        // the minimal catenoid is the exception: its height saturates
        let p = RotScrewParams::rotational(0.0, 1.0, -0.5);
        let u5 = rot_height(&p, 5.0, 1e-10).unwrap();
        let u10 = rot_height(&p, 10.0, 1e-10).unwrap();
        let u20 = rot_height(&p, 20.0, 1e-10).unwrap();
        assert!(u20 > u10 && u10 > u5);
        assert!(u20 - u10 < u10 - u5, "catenoid height converges");
    }

    #[test]
    fn end_growth_reaches_the_predicted_coefficient() {
        let g = end_growth(1.0, 0.0, 20.0).unwrap();
        assert!((g.ratio - 0.9999092022016287).abs() < 1e-9, "{}", g.ratio);
        assert_eq!(g.predicted, 1.0);
        // normalized at rho0 = arccosh(4), where the profile bottoms out
        let g = end_growth(4.0, 0.0, 20.0).unwrap();
        assert!((g.ratio - 0.4998844197740333).abs() < 1e-9, "{}", g.ratio);
        let g = end_growth(1.0, -0.5, 20.0).unwrap();
        assert!((g.ratio - g.predicted).abs() < 0.01 * g.predicted);
        assert!((g.predicted - 2.0f64.sqrt()).abs() < 1e-15);
        assert!(end_growth(-1.0, 0.0, 20.0).is_err());
    }

    #[test]
    fn sphere_barrier_radii() {
        let (rho2, profile) = sphere_barrier(1.0, -0.5, 64).unwrap();
        assert!((rho2 - LN3).abs() < 1e-12);
        assert_eq!(profile.samples.len(), 64);
        let (rho2, _) = sphere_barrier(3.0f64.sqrt() / 2.0, -0.5, 8).unwrap();
        assert!((rho2 - 1.3169578969248166).abs() < 1e-12);
        // radius blows up as H approaches 1/2 from above
        let (big, _) = sphere_barrier(0.5001, 0.0, 8).unwrap();
        assert!(big > 5.0);
        assert!(sphere_barrier(0.5, 0.0, 8).is_err());
    }
}
