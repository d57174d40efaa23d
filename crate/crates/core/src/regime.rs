//! Classification reports: which qualitative regime an `(H, d)` pair falls
//! in, together with its critical radii/heights.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Rotational,
    Parabolic,
}

/// Qualitative shape of the invariant surface generated by an `(H, d)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Slice,
    Catenoid,
    EmbeddedAnnulus,
    EntireGraph,
    ImmersedAnnulus,
    Sphere,
    Nodoid,
    Unduloid,
    Cylinder,
}

/// Critical parameter values, keyed per family: radii `rho1 <= rho0 <= rho2`
/// for rotational regimes, heights `y1 < y0 < y2` for parabolic ones. Only
/// the values that exist for the regime are present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CriticalValues {
    Rotational {
        #[serde(skip_serializing_if = "Option::is_none")]
        rho1: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        rho0: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        rho2: Option<f64>,
    },
    Parabolic {
        #[serde(skip_serializing_if = "Option::is_none")]
        y1: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        y0: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        y2: Option<f64>,
    },
}

impl CriticalValues {
    pub fn rotational(rho1: Option<f64>, rho0: Option<f64>, rho2: Option<f64>) -> Self {
        CriticalValues::Rotational { rho1, rho0, rho2 }
    }

    pub fn parabolic(y1: Option<f64>, y0: Option<f64>, y2: Option<f64>) -> Self {
        CriticalValues::Parabolic { y1, y0, y2 }
    }

    pub fn rho1(&self) -> Option<f64> {
        match self {
            CriticalValues::Rotational { rho1, .. } => *rho1,
            CriticalValues::Parabolic { .. } => None,
        }
    }

    pub fn rho0(&self) -> Option<f64> {
        match self {
            CriticalValues::Rotational { rho0, .. } => *rho0,
            CriticalValues::Parabolic { .. } => None,
        }
    }

    pub fn rho2(&self) -> Option<f64> {
        match self {
            CriticalValues::Rotational { rho2, .. } => *rho2,
            CriticalValues::Parabolic { .. } => None,
        }
    }

    pub fn y1(&self) -> Option<f64> {
        match self {
            CriticalValues::Parabolic { y1, .. } => *y1,
            CriticalValues::Rotational { .. } => None,
        }
    }

    pub fn y0(&self) -> Option<f64> {
        match self {
            CriticalValues::Parabolic { y0, .. } => *y0,
            CriticalValues::Rotational { .. } => None,
        }
    }

    pub fn y2(&self) -> Option<f64> {
        match self {
            CriticalValues::Parabolic { y2, .. } => *y2,
            CriticalValues::Rotational { .. } => None,
        }
    }
}

/// Outcome of classifying an `(H, d)` pair. Serialized as the versioned JSON
/// report emitted by the `classify` command.
#[derive(Debug, Clone, Serialize)]
pub struct RegimeReport {
    pub schema_version: u32,
    pub family: Family,
    pub regime: Regime,
    pub h: f64,
    pub d: f64,
    pub critical_radii: CriticalValues,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neck_distance: Option<f64>,
    pub embedded: bool,
    pub notes: String,
}

impl RegimeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}
