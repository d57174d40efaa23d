//! Sampled generating curves and the errors their construction can raise.

use crate::quad::QuadError;
use crate::regime::Family;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("empty family: {condition}")]
    EmptyFamily { condition: String },
    #[error("parameter {param} outside the profile domain: {reason}")]
    OutsideDomain { param: f64, reason: String },
    #[error("quadrature failure: {0}")]
    Quadrature(#[from] QuadError),
    #[error("{name} = {value} invalid: {requirement}")]
    InvalidParameter { name: &'static str, value: f64, requirement: &'static str },
    #[error("the cylinder regime has a vertical generating line, not a graph profile")]
    DegenerateCylinder,
}

/// Which base coordinate parameterizes the curve: hyperbolic radius `rho` for
/// rotational families, the half-plane height `y` for parabolic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ParamAxis {
    Rho,
    Y,
}

impl ParamAxis {
    /// CSV column headers for curves over this axis.
    pub fn csv_header(&self) -> &'static str {
        match self {
            ParamAxis::Rho => "rho,u,dudrho",
            ParamAxis::Y => "y,u,dudy",
        }
    }
}

/// Behavior of the height function at a domain endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum EndpointKind {
    /// `du -> +/- infinity`; the curve meets the endpoint vertically.
    VerticalTangent,
    /// `du = 0` at the endpoint (axis point of an entire graph or sphere pole).
    ZeroDerivative,
    /// The curve continues past the sampled end (toward infinity or the
    /// asymptotic boundary); sampling was truncated there.
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ProfileSample {
    pub param: f64,
    pub u: f64,
    pub du: f64,
}

/// Parameters a curve was generated from, kept for provenance checks when the
/// curve is swept into a mesh.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CurveSource {
    pub family: Family,
    pub h: f64,
    pub d: f64,
    pub tau: f64,
    pub pitch: f64,
}

/// A sampled generating curve `u = u(param)` with strictly increasing
/// parameter, finite heights on the interior, and endpoint behavior flags.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProfileCurve {
    pub axis: ParamAxis,
    pub samples: Vec<ProfileSample>,
    pub start: EndpointKind,
    pub end: EndpointKind,
    pub source: CurveSource,
}

impl ProfileCurve {
    pub fn domain(&self) -> (f64, f64) {
        (
            self.samples.first().map(|s| s.param).unwrap_or(f64::NAN),
            self.samples.last().map(|s| s.param).unwrap_or(f64::NAN),
        )
    }

    /// Panics in debug builds if the structural invariants are violated;
    /// used internally after construction.
    pub(crate) fn debug_validate(&self) {
        debug_assert!(self.samples.len() >= 2);
        for w in self.samples.windows(2) {
            debug_assert!(w[0].param < w[1].param, "parameter must be strictly increasing");
        }
        for (i, s) in self.samples.iter().enumerate() {
            let interior = i != 0 && i != self.samples.len() - 1;
            debug_assert!(s.u.is_finite(), "height must be finite");
            if interior {
                debug_assert!(s.du.is_finite(), "interior derivative must be finite");
            }
        }
    }

    /// Translate all heights so `u = 0` at the first (`false`) or last
    /// (`true`) sample.
    pub fn renormalized_at_end(&self, last: bool) -> ProfileCurve {
        let offset = if last {
            self.samples.last().map(|s| s.u).unwrap_or(0.0)
        } else {
            self.samples.first().map(|s| s.u).unwrap_or(0.0)
        };
        let mut out = self.clone();
        for s in &mut out.samples {
            s.u -= offset;
        }
        out
    }
}
