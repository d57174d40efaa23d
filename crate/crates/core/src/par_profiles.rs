//! Generating curves of parabolic and parabolic-screw CMC surfaces in the
//! half-plane model.
//!
//! The surface swept from the curve `t = u(y)` in the `yt`-plane by
//! horizontal translations `x -> x + s` (composed with vertical translation
//! rate `pitch`) has constant mean curvature `H` exactly when
//!
//! ```text
//! du/dy = (d y - 2H) sqrt(1 + (pitch * y - 2 tau)^2) / (y sqrt(1 - (d y - 2H)^2)).
//! ```
//!
//! The domain is cut out by `|d y - 2H| < 1` and `y > 0`. Near `y -> 0` with
//! `0 < H < 1/2` the integrand behaves like a smooth function divided by `y`;
//! those segments integrate the logarithmic part in closed form and the
//! remainder numerically.

use crate::exec;
use crate::profile::{
    CurveSource, EndpointKind, ParamAxis, ProfileCurve, ProfileError, ProfileSample,
};
use crate::quad;
use crate::regime::{CriticalValues, Family, Regime, RegimeReport};
use crate::rot_profiles::{DEFAULT_TOL, PROFILE_ERROR_BUDGET};

/// Below this height, `0 < H < 1/2` segments split off the `1/y` part
/// analytically.
const LOG_SPLIT: f64 = 1e-3;

/// Parameters of a parabolic (screw) generating curve. `pitch = 0` is the
/// pure parabolic case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParScrewParams {
    pub h: f64,
    pub d: f64,
    pub tau: f64,
    pub pitch: f64,
}

impl ParScrewParams {
    pub fn new(h: f64, d: f64, tau: f64, pitch: f64) -> Self {
        ParScrewParams { h, d, tau, pitch }
    }

    pub fn parabolic(h: f64, d: f64, tau: f64) -> Self {
        Self::new(h, d, tau, 0.0)
    }

    pub fn source(&self) -> CurveSource {
        CurveSource {
            family: Family::Parabolic,
            h: self.h,
            d: self.d,
            tau: self.tau,
            pitch: self.pitch,
        }
    }
}

/// `g(y) = d y - 2H`, the sign of the height derivative.
pub fn g_par(h: f64, d: f64, y: f64) -> f64 {
    d * y - 2.0 * h
}

/// `f(y) = 1 - g(y)^2`; the profile domain is `{y > 0, f > 0}`.
pub fn f_par(h: f64, d: f64, y: f64) -> f64 {
    let g = g_par(h, d, y);
    1.0 - g * g
}

/// The screw/bundle factor `sqrt(1 + (pitch * y - 2 tau)^2)`; the constant
/// `sqrt(1 + 4 tau^2)` in the pure parabolic case and exactly `1` for
/// `tau = pitch = 0`.
pub fn par_screw_factor(tau: f64, pitch: f64, y: f64) -> f64 {
    if tau == 0.0 && pitch == 0.0 {
        return 1.0;
    }
    let b = pitch * y - 2.0 * tau;
    (1.0 + b * b).sqrt()
}

pub(crate) fn integrand_raw(p: &ParScrewParams, y: f64) -> f64 {
    let f = f_par(p.h, p.d, y);
    g_par(p.h, p.d, y) * par_screw_factor(p.tau, p.pitch, y) / (y * f.sqrt())
}

/// Height derivative `du/dy` of the generating curve at `y`.
pub fn par_integrand(p: &ParScrewParams, y: f64) -> Result<f64, ProfileError> {
    if y <= 0.0 {
        return Err(ProfileError::OutsideDomain { param: y, reason: "y must be positive".into() });
    }
    let f = f_par(p.h, p.d, y);
    if f <= 0.0 || !f.is_finite() {
        return Err(ProfileError::OutsideDomain {
            param: y,
            reason: format!("1 - (dy - 2H)^2 = {f} must be positive"),
        });
    }
    Ok(integrand_raw(p, y))
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

/// Classify an `(H, d)` pair into its parabolic regime. Critical heights are
/// the explicit rational expressions; vertical-tangent endpoints satisfy
/// `|d y - 2H| = 1`.
pub fn classify_parabolic(h: f64, d: f64) -> Result<RegimeReport, ProfileError> {
    check_params(h, d)?;
    let report = |regime, y1: Option<f64>, y0: Option<f64>, y2: Option<f64>, embedded, notes: String| RegimeReport {
        schema_version: 1,
        family: Family::Parabolic,
        regime,
        h,
        d,
        critical_radii: CriticalValues::parabolic(y1, y0, y2),
        neck_distance: None,
        embedded,
        notes,
    };

    if h == 0.0 {
        return Ok(if d == 0.0 {
            report(Regime::Slice, None, None, None, true, "totally geodesic slice t = const".into())
        } else {
            report(
                Regime::Catenoid,
                None,
                None,
                Some(1.0 / d.abs()),
                true,
                "minimal graph over the strip 0 < y <= 1/|d|, reaching the ideal boundary at finite height; complete and embedded after doubling across the vertical tangent".into(),
            )
        });
    }

    if h < 0.5 {
        return Ok(if d > 0.0 {
            report(
                Regime::ImmersedAnnulus,
                None,
                Some(2.0 * h / d),
                Some((2.0 * h + 1.0) / d),
                false,
                "properly immersed (nonembedded) annulus, symmetric about t = 0, maximal height y2, unbounded toward the ideal boundary".into(),
            )
        } else if d == 0.0 {
            report(
                Regime::EntireGraph,
                None,
                None,
                None,
                true,
                "logarithmic entire graph over the half-plane; the limit of the d > 0 and d < 0 families".into(),
            )
        } else {
            report(
                Regime::EmbeddedAnnulus,
                None,
                None,
                Some((1.0 - 2.0 * h) / (-d)),
                true,
                "properly embedded annulus, symmetric about t = 0, strictly monotone profile, maximal height y2".into(),
            )
        });
    }

    if h == 0.5 {
        if d <= 0.0 {
            return Err(ProfileError::EmptyFamily { condition: "d>0 required for H=1/2".into() });
        }
        return Ok(report(
            Regime::ImmersedAnnulus,
            None,
            Some(1.0 / d),
            Some(2.0 / d),
            false,
            "properly immersed (nonembedded) annulus, symmetric about t = 0; the radicand has a single positive root, reported as the maximal height y2".into(),
        ));
    }

    if d <= 0.0 {
        return Err(ProfileError::EmptyFamily { condition: "d>0 required for H>1/2".into() });
    }
    Ok(report(
        Regime::ImmersedAnnulus,
        Some((2.0 * h - 1.0) / d),
        Some(2.0 * h / d),
        Some((2.0 * h + 1.0) / d),
        false,
        "vertically periodic immersed annulus between the cylinders y = y1 and y = y2".into(),
    ))
}

/// Quadrature domain of a parabolic profile. `lo = 0` means the domain is
/// open at the ideal boundary.
#[derive(Debug, Clone, Copy)]
pub struct ParDomain {
    pub lo: f64,
    pub lo_kind: EndpointKind,
    pub hi: Option<f64>,
    pub hi_kind: EndpointKind,
    pub reference: f64,
    pub y0: Option<f64>,
}

/// Domain bounds, critical heights and normalization height for `(H, d)`.
pub fn par_domain(h: f64, d: f64) -> Result<ParDomain, ProfileError> {
    let report = classify_parabolic(h, d)?;
    let c = &report.critical_radii;
    Ok(match report.regime {
        Regime::Slice => ParDomain {
            lo: 0.0,
            lo_kind: EndpointKind::Asymptotic,
            hi: None,
            hi_kind: EndpointKind::Asymptotic,
            reference: 1.0,
            y0: None,
        },
        Regime::Catenoid => ParDomain {
            lo: 0.0,
            lo_kind: EndpointKind::Asymptotic,
            hi: c.y2(),
            hi_kind: EndpointKind::VerticalTangent,
            reference: c.y2().unwrap(),
            y0: None,
        },
        Regime::EntireGraph => ParDomain {
            lo: 0.0,
            lo_kind: EndpointKind::Asymptotic,
            hi: None,
            hi_kind: EndpointKind::Asymptotic,
            reference: 1.0,
            y0: None,
        },
        Regime::EmbeddedAnnulus => ParDomain {
            lo: 0.0,
            lo_kind: EndpointKind::Asymptotic,
            hi: c.y2(),
            hi_kind: EndpointKind::VerticalTangent,
            reference: c.y2().unwrap(),
            y0: None,
        },
        Regime::ImmersedAnnulus => {
            let lo = c.y1().unwrap_or(0.0);
            ParDomain {
                lo,
                lo_kind: if lo > 0.0 {
                    EndpointKind::VerticalTangent
                } else {
                    EndpointKind::Asymptotic
                },
                hi: c.y2(),
                hi_kind: EndpointKind::VerticalTangent,
                reference: c.y0().unwrap(),
                y0: c.y0(),
            }
        }
        _ => unreachable!("parabolic classification emits no other regime"),
    })
}

/// Integrand at `y_e + delta` where `y_e` is a radicand root; the radicand is
/// computed as `f(y) - f(y_e) = -d delta (g(y) + g(y_e))`, which is exact.
fn par_integrand_from_root(p: &ParScrewParams, y_e: f64, delta: f64) -> f64 {
    let y = y_e + delta;
    let g = g_par(p.h, p.d, y);
    let f = -(p.d * delta) * (g + g_par(p.h, p.d, y_e));
    g * par_screw_factor(p.tau, p.pitch, y) / (y * f.sqrt())
}

/// Integrate the `1/y`-weighted integrand over `[a, b]` with the logarithmic
/// part handled in closed form when the segment reaches below [`LOG_SPLIT`]
/// (only arises for `0 < H < 1/2`, where the smooth factor has a finite limit
/// at `y = 0`). Segments touching a radicand root substitute `y = root +/- s^2`.
fn integrate_par_segment(
    p: &ParScrewParams,
    a: f64,
    b: f64,
    a_singular: bool,
    b_singular: bool,
    tol: f64,
) -> Result<f64, ProfileError> {
    debug_assert!(a > 0.0 && b >= a);
    let plain = |a: f64, b: f64, a_sing: bool, b_sing: bool, tol: f64| {
        let q = match (a_sing, b_sing) {
            (false, false) => quad::integrate(|y| integrand_raw(p, y), a, b, tol)?,
            (true, false) => quad::integrate(
                |s| 2.0 * s * par_integrand_from_root(p, a, s * s),
                0.0,
                (b - a).sqrt(),
                tol,
            )?,
            (false, true) => quad::integrate(
                |s| 2.0 * s * par_integrand_from_root(p, b, -(s * s)),
                0.0,
                (b - a).sqrt(),
                tol,
            )?,
            (true, true) => {
                let mid = 0.5 * (a + b);
                let left = quad::integrate(
                    |s| 2.0 * s * par_integrand_from_root(p, a, s * s),
                    0.0,
                    (mid - a).sqrt(),
                    0.5 * tol,
                )?;
                let right = quad::integrate(
                    |s| 2.0 * s * par_integrand_from_root(p, b, -(s * s)),
                    0.0,
                    (b - mid).sqrt(),
                    0.5 * tol,
                )?;
                quad::Quadrature {
                    value: left.value + right.value,
                    error: left.error + right.error,
                }
            }
        };
        Ok::<f64, ProfileError>(q.value)
    };

    let splittable = p.h > 0.0 && p.h < 0.5 && !a_singular && a < LOG_SPLIT;
    if !splittable {
        return plain(a, b, a_singular, b_singular, tol);
    }

    // u' = G(y)/y with G smooth at 0; G(0) = -2H sqrt(1 + 4 tau^2)/sqrt(1 - 4H^2).
    let g0 = -2.0 * p.h * par_screw_factor(p.tau, p.pitch, 0.0)
        / (1.0 - 4.0 * p.h * p.h).sqrt();
    let smooth_over_y = |y: f64| (integrand_raw(p, y) * y - g0) / y;
    let cut = LOG_SPLIT.min(b);
    let log_part = g0 * (cut / a).ln()
        + quad::integrate(smooth_over_y, a, cut, 0.5 * tol)?.value;
    if cut == b {
        // A vertical tangent cannot sit below the split for H < 1/2 with the
        // segment starting off it, so b_singular is false here.
        debug_assert!(!b_singular);
        Ok(log_part)
    } else {
        Ok(log_part + plain(cut, b, false, b_singular, 0.5 * tol)?)
    }
}

/// Height difference `u(b) - u(a)` between two heights inside the domain.
pub fn par_height_between(
    p: &ParScrewParams,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, ProfileError> {
    let dom = par_domain(p.h, p.d)?;
    let (lo, hi) = (dom.lo, dom.hi);
    let inside = |y: f64| {
        y > lo - 1e-15 && y > 0.0 && hi.map(|h| y <= h).unwrap_or(true)
    };
    if !inside(a) || !inside(b) {
        return Err(ProfileError::OutsideDomain {
            param: if inside(a) { b } else { a },
            reason: format!("domain is ({lo}, {hi:?}]"),
        });
    }
    if a == b {
        return Ok(0.0);
    }
    let (x0, x1, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let a_sing = x0 == lo && dom.lo_kind == EndpointKind::VerticalTangent;
    let b_sing = Some(x1) == hi && dom.hi_kind == EndpointKind::VerticalTangent;
    Ok(sign * integrate_par_segment(p, x0, x1, a_sing, b_sing, tol)?)
}

/// Height `u(y)` normalized to zero at the regime's reference height (`y0`
/// when the derivative vanishes inside the domain, the vertical-tangent
/// endpoint otherwise, `y = 1` for the unbounded `d = 0` profile).
pub fn par_height(p: &ParScrewParams, y: f64, tol: f64) -> Result<f64, ProfileError> {
    if p.h == 0.0 && p.d == 0.0 {
        return Ok(0.0);
    }
    let dom = par_domain(p.h, p.d)?;
    par_height_between(p, dom.reference, y, tol)
}

/// Options for parabolic profile sampling.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParSampleOptions {
    /// Truncation height for domains open at the ideal boundary `y = 0`.
    pub y_min: Option<f64>,
    /// Truncation height for domains unbounded above.
    pub y_max: Option<f64>,
    /// Absolute quadrature tolerance per sampled curve (default 1e-10).
    pub tol: Option<f64>,
}

/// Sample the parabolic generating curve on `n` uniformly spaced heights.
pub fn par_profile_numeric(p: &ParScrewParams, n: usize) -> Result<ProfileCurve, ProfileError> {
    par_profile_numeric_with(p, n, &ParSampleOptions::default())
}

pub fn par_profile_numeric_with(
    p: &ParScrewParams,
    n: usize,
    opts: &ParSampleOptions,
) -> Result<ProfileCurve, ProfileError> {
    let n = n.max(2);
    let tol = opts.tol.unwrap_or(DEFAULT_TOL);
    let dom = par_domain(p.h, p.d)?;

    if p.h == 0.0 && p.d == 0.0 {
        let lo = opts.y_min.unwrap_or(0.05);
        let hi = opts.y_max.unwrap_or(4.0).max(lo * 2.0);
        let samples = (0..n)
            .map(|i| {
                let y = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                ProfileSample { param: y, u: 0.0, du: 0.0 }
            })
            .collect();
        let curve = ProfileCurve {
            axis: ParamAxis::Y,
            samples,
            start: EndpointKind::Asymptotic,
            end: EndpointKind::Asymptotic,
            source: p.source(),
        };
        curve.debug_validate();
        return Ok(curve);
    }

    let lo = if dom.lo > 0.0 {
        dom.lo
    } else {
        opts.y_min.unwrap_or_else(|| dom.hi.map(|h| h * 1e-3).unwrap_or(0.05))
    };
    let hi = dom.hi.unwrap_or_else(|| opts.y_max.unwrap_or(4.0));
    if !(hi > lo) {
        return Err(ProfileError::OutsideDomain {
            param: hi,
            reason: "sampling range is empty".into(),
        });
    }
    let step = (hi - lo) / (n - 1) as f64;
    let y_at = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };

    let lo_sing = lo == dom.lo && dom.lo_kind == EndpointKind::VerticalTangent;
    let hi_sing = Some(hi) == dom.hi && dom.hi_kind == EndpointKind::VerticalTangent;
    let seg_tol = (tol / n as f64).max(1e-14);

    let increments = exec::map_indexed(n - 1, |i| {
        integrate_par_segment(
            p,
            y_at(i),
            y_at(i + 1),
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

    let offset = if dom.reference == lo {
        0.0
    } else {
        let (a, b, sign) = if dom.reference > lo {
            (lo, dom.reference, 1.0)
        } else {
            (dom.reference, lo, -1.0)
        };
        sign * integrate_par_segment(p, a, b, a == lo && lo_sing, Some(b) == dom.hi && hi_sing, seg_tol)?
    };

    let samples: Vec<ProfileSample> = (0..n)
        .map(|i| {
            let y = y_at(i);
            let du = if (i == 0 && lo_sing) || (i == n - 1 && hi_sing) {
                f64::INFINITY.copysign(g_par(p.h, p.d, y))
            } else {
                integrand_raw(p, y)
            };
            ProfileSample { param: y, u: u[i] - offset, du }
        })
        .collect();

    let curve = ProfileCurve {
        axis: ParamAxis::Y,
        samples,
        start: if lo_sing { EndpointKind::VerticalTangent } else { EndpointKind::Asymptotic },
        end: if hi_sing { EndpointKind::VerticalTangent } else { EndpointKind::Asymptotic },
        source: p.source(),
    };
    curve.debug_validate();
    Ok(curve)
}

/// The printed antiderivatives of the pure parabolic integrand, available for
/// `H = 0`, `H = 1/2` and `H > 1/2`. Principal inverse trigonometric branches
/// are continuous across each domain; the `H = 1/2` expression genuinely
/// diverges at `y -> 0` (the profile is asymptotic to the ideal boundary).
pub fn par_closed_form(h: f64, d: f64, tau: f64, y: f64) -> Result<f64, ProfileError> {
    let s = (1.0 + 4.0 * tau * tau).sqrt();
    if y <= 0.0 {
        return Err(ProfileError::OutsideDomain { param: y, reason: "y must be positive".into() });
    }
    if h == 0.0 {
        let a = d * y;
        if a.abs() > 1.0 + 1e-12 {
            return Err(ProfileError::OutsideDomain {
                param: y,
                reason: format!("|d y| = {} exceeds 1", a.abs()),
            });
        }
        return Ok(s * a.clamp(-1.0, 1.0).asin());
    }
    if h == 0.5 {
        let a = d * y - 1.0;
        if a.abs() > 1.0 + 1e-12 {
            return Err(ProfileError::OutsideDomain {
                param: y,
                reason: format!("|d y - 1| = {} exceeds 1", a.abs()),
            });
        }
        let phi = a.clamp(-1.0, 1.0).asin();
        return Ok(s * phi + 2.0 * s / ((0.5 * phi).tan() + 1.0));
    }
    if h > 0.5 {
        let a = d * y - 2.0 * h;
        if a.abs() > 1.0 + 1e-12 {
            return Err(ProfileError::OutsideDomain {
                param: y,
                reason: format!("|d y - 2H| = {} exceeds 1", a.abs()),
            });
        }
        let phi = a.clamp(-1.0, 1.0).asin();
        let r = (4.0 * h * h - 1.0).sqrt();
        return Ok(s * phi - (4.0 * s * h / r) * ((2.0 * h * (0.5 * phi).tan() + 1.0) / r).atan());
    }
    Err(ProfileError::InvalidParameter {
        name: "H",
        value: h,
        requirement: "closed forms exist for H = 0, H = 1/2 and H > 1/2",
    })
}

/// The profile surface as a vertical graph over the half-plane: heights by
/// quadrature from the reference height (plus `pitch * x` for screw motions),
/// gradient from the integrand. NaN outside the profile domain.
pub fn profile_graph(p: &ParScrewParams, tol: f64) -> crate::curvature::GraphFunction {
    let pv = *p;
    crate::curvature::GraphFunction::with_gradient(
        move |x, y| match par_height(&pv, y, tol) {
            Ok(u) => u + pv.pitch * x,
            Err(_) => f64::NAN,
        },
        move |_, y| match par_integrand(&pv, y) {
            Ok(du) => (pv.pitch, du),
            Err(_) => (f64::NAN, f64::NAN),
        },
    )
}

/// The logarithmic limit surface `F(y) = -2 sqrt(1 + 4 tau^2) H ln(y) / sqrt(1 - 4H^2)`
/// toward which the `0 < H < 1/2` profiles converge as `d -> 0`.
pub fn par_limit_surface(h: f64, tau: f64, y: f64) -> Result<f64, ProfileError> {
    if !(h > 0.0 && h < 0.5) {
        return Err(ProfileError::InvalidParameter {
            name: "H",
            value: h,
            requirement: "0 < H < 1/2",
        });
    }
    if y <= 0.0 {
        return Err(ProfileError::OutsideDomain { param: y, reason: "y must be positive".into() });
    }
    Ok(-2.0 * (1.0 + 4.0 * tau * tau).sqrt() * h * y.ln() / (1.0 - 4.0 * h * h).sqrt())
}

/// Budget check helper shared with the rotational module.
#[allow(dead_code)]
fn error_budget() -> f64 {
    PROFILE_ERROR_BUDGET
}
