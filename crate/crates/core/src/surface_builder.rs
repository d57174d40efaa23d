//! Sweeping generating curves through one-parameter isometry groups into
//! triangle meshes, symmetric completion across the slice `t = 0`, periodic
//! extension of the annular profiles, and OBJ/CSV/JSON export.
//!
//! Rotational sweeps place vertices at
//! `(tanh(rho/2) cos(theta), tanh(rho/2) sin(theta), t + pitch * theta)`;
//! parabolic sweeps at `(x, y, t + pitch * x)`. Ambient coordinates `(x, y, t)`
//! map directly to OBJ `(x, y, z)`.

use std::collections::HashSet;
use std::io::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use thiserror::Error;

use crate::ambient::Point3;
use crate::exec;
use crate::par_profiles::{self, ParSampleOptions, ParScrewParams};
use crate::profile::{CurveSource, ParamAxis, ProfileCurve, ProfileError};
use crate::regime::{Family, Regime, RegimeReport};
use crate::rot_profiles::{self, RotSampleOptions, RotScrewParams};

/// Below this radius a rotational sweep collapses the whole circle to an
/// axis vertex.
const POLE_EPS: f64 = 1e-9;
/// Tolerance for "the height vanishes at this endpoint".
const NORMALIZED_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("curve parameters do not match the sweep parameters: {0}")]
    ParamMismatch(String),
    #[error("curve is not normalized to u = 0 at either endpoint")]
    NotNormalized,
    #[error("mesh has no vertices or no faces")]
    EmptyMesh,
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// A polyline in the profile plane: pairs `(base parameter, height)`. Unlike
/// [`ProfileCurve`] the base parameter may run back and forth, which is what
/// reflected and periodically extended generating curves do.
#[derive(Debug, Clone)]
pub struct PlanarCurve {
    pub axis: ParamAxis,
    pub points: Vec<(f64, f64)>,
    pub source: CurveSource,
}

impl From<&ProfileCurve> for PlanarCurve {
    fn from(c: &ProfileCurve) -> Self {
        PlanarCurve {
            axis: c.axis,
            points: c.samples.iter().map(|s| (s.param, s.u)).collect(),
            source: c.source,
        }
    }
}

/// Join a profile with its mirror across the slice `t = 0`.
///
/// The input must already vanish at one endpoint; the doubled curve is C^1
/// through the junction (the tangent there is either vertical or horizontal
/// on both branches). Entire graphs reflect into the union of the graph and
/// its mirror image; annulus profiles close up into their symmetric
/// completion; for the compact profiles this closes the generating loop.
pub fn reflect_union(curve: &ProfileCurve) -> Result<PlanarCurve, MeshError> {
    let pts: Vec<(f64, f64)> = curve.samples.iter().map(|s| (s.param, s.u)).collect();
    if pts.len() < 2 {
        return Err(MeshError::ParamMismatch("curve has fewer than two samples".into()));
    }
    if pts.iter().all(|&(_, u)| u.abs() < NORMALIZED_EPS) {
        // flat profile: the mirror is the curve itself
        return Ok(PlanarCurve { axis: curve.axis, points: pts, source: curve.source });
    }
    let first_zero = pts.first().unwrap().1.abs() < NORMALIZED_EPS;
    let last_zero = pts.last().unwrap().1.abs() < NORMALIZED_EPS;
    let points = if first_zero {
        let mut points: Vec<(f64, f64)> =
            pts.iter().skip(1).rev().map(|&(p, u)| (p, -u)).collect();
        points.extend(pts.iter().copied());
        points
    } else if last_zero {
        let mut points = pts.clone();
        points.extend(pts.iter().rev().skip(1).map(|&(p, u)| (p, -u)));
        points
    } else {
        return Err(MeshError::NotNormalized);
    };
    Ok(PlanarCurve { axis: curve.axis, points, source: curve.source })
}

/// Tile `copies` vertical translates of one period of a generating curve.
/// The translation is the height difference between the curve's endpoints.
pub fn periodic_extension(curve: &PlanarCurve, copies: usize) -> PlanarCurve {
    let mut points = curve.points.clone();
    if copies <= 1 || curve.points.len() < 2 {
        return PlanarCurve { axis: curve.axis, points, source: curve.source };
    }
    let period = curve.points.last().unwrap().1 - curve.points.first().unwrap().1;
    for k in 1..copies {
        let shift = period * k as f64;
        points.extend(curve.points.iter().skip(1).map(|&(p, u)| (p, u + shift)));
    }
    PlanarCurve { axis: curve.axis, points, source: curve.source }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MeshMetadata {
    pub family: Family,
    pub h: f64,
    pub d: f64,
    pub tau: f64,
    pub pitch: f64,
    /// How the generating curve was normalized/completed before sweeping.
    pub normalization: String,
    /// Wall-clock generation time; never serialized into exported artifacts,
    /// which stay byte-identical across runs.
    #[serde(skip)]
    pub generated_unix_s: u64,
}

/// Triangle mesh in ambient coordinates.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<[usize; 3]>,
    pub metadata: MeshMetadata,
}

impl SurfaceMesh {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() || self.faces.is_empty()
    }

    /// `V - E + F` with edges counted once per undirected pair.
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.vertices.len() as i64 - edges.len() as i64 + self.faces.len() as i64
    }
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn metadata(source: &CurveSource, normalization: &str) -> MeshMetadata {
    MeshMetadata {
        family: source.family,
        h: source.h,
        d: source.d,
        tau: source.tau,
        pitch: source.pitch,
        normalization: normalization.to_string(),
        generated_unix_s: timestamp(),
    }
}

/// Triangulate the strip between two vertex rows. `wrap` closes the seam.
fn stitch_rows(faces: &mut Vec<[usize; 3]>, row_a: &[usize], row_b: &[usize], wrap: bool) {
    match (row_a.len(), row_b.len()) {
        (1, 1) => {}
        (1, _) => {
            let pole = row_a[0];
            let n = row_b.len();
            let last = if wrap { n } else { n - 1 };
            for j in 0..last {
                faces.push([pole, row_b[j], row_b[(j + 1) % n]]);
            }
        }
        (_, 1) => {
            let pole = row_b[0];
            let n = row_a.len();
            let last = if wrap { n } else { n - 1 };
            for j in 0..last {
                faces.push([row_a[j], row_a[(j + 1) % n], pole]);
            }
        }
        (n, _) => {
            let last = if wrap { n } else { n - 1 };
            for j in 0..last {
                let jn = (j + 1) % n;
                let (a, b, c, d) = (row_a[j], row_b[j], row_b[jn], row_a[jn]);
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
    }
}

fn check_source(curve: &PlanarCurve, expected: CurveSource, axis: ParamAxis) -> Result<(), MeshError> {
    if curve.axis != axis {
        return Err(MeshError::ParamMismatch(format!(
            "curve is parameterized over {:?}, sweep needs {:?}",
            curve.axis, axis
        )));
    }
    if curve.source != expected {
        return Err(MeshError::ParamMismatch(format!(
            "curve was generated from {:?}, sweep given {:?}",
            curve.source, expected
        )));
    }
    Ok(())
}

/// Sweep a generating curve through the rotational (screw, for nonzero
/// pitch) one-parameter group. Pure rotations close the seam; a nonzero
/// pitch leaves the helicoidal strip open with `theta` spanning one turn.
/// Rows within [`POLE_EPS`] of the axis collapse to pole vertices.
pub fn sweep_rotational_curve(
    curve: &PlanarCurve,
    p: &RotScrewParams,
    n_theta: usize,
) -> Result<SurfaceMesh, MeshError> {
    check_source(curve, p.source(), ParamAxis::Rho)?;
    let n_theta = n_theta.max(3);
    let wrap = p.pitch == 0.0;
    let n_cols = if wrap { n_theta } else { n_theta + 1 };
    let full_turn = 2.0 * std::f64::consts::PI;

    let rows: Vec<Vec<Point3>> = exec::map_indexed(curve.points.len(), |i| {
        let (rho, t) = curve.points[i];
        if wrap && rho.abs() < POLE_EPS {
            return vec![Point3::new(0.0, 0.0, t)];
        }
        let r = (rho / 2.0).tanh();
        (0..n_cols)
            .map(|j| {
                let theta = full_turn * j as f64 / n_theta as f64;
                Point3::new(r * theta.cos(), r * theta.sin(), t + p.pitch * theta)
            })
            .collect()
    });

    let mut vertices = Vec::new();
    let mut row_indices: Vec<Vec<usize>> = Vec::with_capacity(rows.len());
    for row in rows {
        let base = vertices.len();
        row_indices.push((base..base + row.len()).collect());
        vertices.extend(row);
    }
    let mut faces = Vec::new();
    for w in row_indices.windows(2) {
        stitch_rows(&mut faces, &w[0], &w[1], wrap);
    }

    let mesh = SurfaceMesh {
        vertices,
        faces,
        metadata: metadata(&curve.source, "as provided"),
    };
    if mesh.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    Ok(mesh)
}

/// Sweep a profile directly (without symmetric completion); the graph case.
pub fn sweep_rotational(
    curve: &ProfileCurve,
    p: &RotScrewParams,
    n_theta: usize,
) -> Result<SurfaceMesh, MeshError> {
    sweep_rotational_curve(&PlanarCurve::from(curve), p, n_theta)
}

/// Sweep a parabolic generating curve through horizontal translations over
/// `x_range`, shearing the height by `pitch * x`.
pub fn sweep_parabolic_curve(
    curve: &PlanarCurve,
    p: &ParScrewParams,
    x_range: (f64, f64),
    n_x: usize,
) -> Result<SurfaceMesh, MeshError> {
    check_source(curve, p.source(), ParamAxis::Y)?;
    let n_x = n_x.max(2);
    let (x0, x1) = x_range;
    if !(x1 > x0) {
        return Err(MeshError::ParamMismatch(format!("empty x range [{x0}, {x1}]")));
    }

    let rows: Vec<Vec<Point3>> = exec::map_indexed(curve.points.len(), |i| {
        let (y, t) = curve.points[i];
        (0..n_x)
            .map(|j| {
                let x = x0 + (x1 - x0) * j as f64 / (n_x - 1) as f64;
                Point3::new(x, y, t + p.pitch * x)
            })
            .collect()
    });

    let mut vertices = Vec::new();
    let mut row_indices: Vec<Vec<usize>> = Vec::with_capacity(rows.len());
    for row in rows {
        let base = vertices.len();
        row_indices.push((base..base + row.len()).collect());
        vertices.extend(row);
    }
    let mut faces = Vec::new();
    for w in row_indices.windows(2) {
        stitch_rows(&mut faces, &w[0], &w[1], false);
    }

    let mesh = SurfaceMesh {
        vertices,
        faces,
        metadata: metadata(&curve.source, "as provided"),
    };
    if mesh.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    Ok(mesh)
}

pub fn sweep_parabolic(
    curve: &ProfileCurve,
    p: &ParScrewParams,
    x_range: (f64, f64),
    n_x: usize,
) -> Result<SurfaceMesh, MeshError> {
    sweep_parabolic_curve(&PlanarCurve::from(curve), p, x_range, n_x)
}

/// Mesh construction options for the end-to-end rotational pipeline.
#[derive(Debug, Clone, Copy)]
pub struct RotMeshOptions {
    pub n_profile: usize,
    pub n_theta: usize,
    pub rho_max: f64,
    pub tol: f64,
    /// Periods to tile for the vertically periodic regimes.
    pub periods: usize,
}

impl Default for RotMeshOptions {
    fn default() -> Self {
        RotMeshOptions {
            n_profile: 128,
            n_theta: 128,
            rho_max: rot_profiles::DEFAULT_RHO_MAX,
            tol: rot_profiles::DEFAULT_TOL,
            periods: 1,
        }
    }
}

/// Classify, sample, complete and sweep a rotational surface in one call.
///
/// Entire graphs and slices sweep their profile directly; annuli and spheres
/// reflect across `t = 0` first; the periodic regimes additionally tile
/// `periods` translates. The cylinder regime has no graph profile and is
/// meshed directly.
pub fn build_rotational_mesh(
    p: &RotScrewParams,
    opts: &RotMeshOptions,
) -> Result<SurfaceMesh, MeshError> {
    let report = rot_profiles::classify_rotational(p.h, p.d)?;
    let sample = RotSampleOptions { rho_max: opts.rho_max, tol: opts.tol };
    let normalization;
    let curve = match report.regime {
        Regime::Cylinder => {
            let rho = report.critical_radii.rho1().expect("cylinder radius");
            let height = 2.0;
            let n = opts.n_profile.max(2);
            let points: Vec<(f64, f64)> = (0..n)
                .map(|i| (rho, -height / 2.0 + height * i as f64 / (n - 1) as f64))
                .collect();
            normalization = "vertical cylinder, t in [-1, 1]".to_string();
            PlanarCurve { axis: ParamAxis::Rho, points, source: p.source() }
        }
        Regime::Slice | Regime::EntireGraph => {
            let profile = rot_profiles::profile_numeric_with(p, opts.n_profile, &sample)?;
            normalization = "graph of the profile, u = 0 at the axis".to_string();
            PlanarCurve::from(&profile)
        }
        Regime::Catenoid | Regime::EmbeddedAnnulus => {
            let profile = rot_profiles::profile_numeric_with(p, opts.n_profile, &sample)?;
            normalization = "reflected across t = 0 at the neck".to_string();
            reflect_union(&profile)?
        }
        Regime::ImmersedAnnulus => {
            let profile = rot_profiles::profile_numeric_with(p, opts.n_profile, &sample)?
                .renormalized_at_end(false);
            normalization = "renormalized at the neck, reflected across t = 0".to_string();
            reflect_union(&profile)?
        }
        Regime::Sphere => {
            let profile = rot_profiles::profile_numeric_with(p, opts.n_profile, &sample)?
                .renormalized_at_end(true);
            normalization = "renormalized at the equator, closed by reflection".to_string();
            reflect_union(&profile)?
        }
        Regime::Unduloid => {
            let profile = rot_profiles::profile_numeric_with(p, opts.n_profile, &sample)?;
            normalization = format!("one period by reflection, {} period(s) tiled", opts.periods);
            periodic_extension(&reflect_union(&profile)?, opts.periods)
        }
        Regime::Nodoid => {
            let profile = rot_profiles::profile_numeric_with(p, opts.n_profile, &sample)?
                .renormalized_at_end(true);
            normalization = format!("one period by reflection, {} period(s) tiled", opts.periods);
            periodic_extension(&reflect_union(&profile)?, opts.periods)
        }
    };
    let mut mesh = sweep_rotational_curve(&curve, p, opts.n_theta)?;
    mesh.metadata.normalization = normalization;
    Ok(mesh)
}

/// Mesh construction options for the parabolic pipeline.
#[derive(Debug, Clone, Copy)]
pub struct ParMeshOptions {
    pub n_profile: usize,
    pub n_x: usize,
    pub x_range: (f64, f64),
    pub y_min: Option<f64>,
    pub y_max: Option<f64>,
    pub tol: f64,
    pub periods: usize,
}

impl Default for ParMeshOptions {
    fn default() -> Self {
        ParMeshOptions {
            n_profile: 128,
            n_x: 128,
            x_range: (-2.0, 2.0),
            y_min: None,
            y_max: None,
            tol: rot_profiles::DEFAULT_TOL,
            periods: 1,
        }
    }
}

/// Classify, sample, complete and sweep a parabolic surface in one call.
pub fn build_parabolic_mesh(
    p: &ParScrewParams,
    opts: &ParMeshOptions,
) -> Result<SurfaceMesh, MeshError> {
    let report = par_profiles::classify_parabolic(p.h, p.d)?;
    let sample = ParSampleOptions { y_min: opts.y_min, y_max: opts.y_max, tol: Some(opts.tol) };
    let profile = par_profiles::par_profile_numeric_with(p, opts.n_profile, &sample)?;
    let normalization;
    let curve = match report.regime {
        Regime::Slice | Regime::Catenoid | Regime::EntireGraph => {
            normalization = "graph strip of the profile".to_string();
            PlanarCurve::from(&profile)
        }
        Regime::EmbeddedAnnulus => {
            normalization = "reflected across t = 0 at the vertical tangent".to_string();
            reflect_union(&profile)?
        }
        Regime::ImmersedAnnulus => {
            let vertically_periodic = report.critical_radii.y1().is_some();
            let renorm = profile.renormalized_at_end(true);
            if vertically_periodic {
                normalization =
                    format!("one period by reflection, {} period(s) tiled", opts.periods);
                periodic_extension(&reflect_union(&renorm)?, opts.periods)
            } else {
                normalization = "renormalized at the vertical tangent, reflected across t = 0"
                    .to_string();
                reflect_union(&renorm)?
            }
        }
        _ => unreachable!("parabolic classification emits no other regime"),
    };
    let mut mesh = sweep_parabolic_curve(&curve, p, opts.x_range, opts.n_x)?;
    mesh.metadata.normalization = normalization;
    Ok(mesh)
}

/// OBJ serialization: `v x y t` vertices (ambient coordinates as OBJ x y z)
/// and 1-based `f i j k` faces. Deterministic: floats print as their
/// shortest round-trip decimal.
pub fn obj_to_string(mesh: &SurfaceMesh) -> Result<String, MeshError> {
    if mesh.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    let m = &mesh.metadata;
    let mut out = String::new();
    out.push_str("# invariant CMC surface mesh\n");
    out.push_str(&format!(
        "# family={:?} H={} d={} tau={} pitch={}\n",
        m.family, m.h, m.d, m.tau, m.pitch
    ));
    out.push_str(&format!("# normalization: {}\n", m.normalization));
    for v in &mesh.vertices {
        out.push_str(&format!("v {} {} {}\n", v.x, v.y, v.t));
    }
    for f in &mesh.faces {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    Ok(out)
}

pub fn export_obj(mesh: &SurfaceMesh, path: &Path) -> Result<(), MeshError> {
    let body = obj_to_string(mesh)?;
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    file.write_all(body.as_bytes())?;
    Ok(())
}

/// CSV serialization of a sampled profile: header `rho,u,dudrho` (or
/// `y,u,dudy`), one row per sample.
pub fn csv_to_string(curve: &ProfileCurve) -> String {
    let mut out = String::with_capacity(32 * (curve.samples.len() + 1));
    out.push_str(curve.axis.csv_header());
    out.push('\n');
    for s in &curve.samples {
        out.push_str(&format!("{},{},{}\n", s.param, s.u, s.du));
    }
    out
}

pub fn export_csv(curve: &ProfileCurve, path: &Path) -> Result<(), MeshError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    file.write_all(csv_to_string(curve).as_bytes())?;
    Ok(())
}

pub fn export_json(report: &RegimeReport, path: &Path) -> Result<(), MeshError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    file.write_all(report.to_json().as_bytes())?;
    file.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rot_profiles::profile_numeric;

    fn slice_mesh() -> SurfaceMesh {
        let p = RotScrewParams::rotational(0.0, 0.0, -0.5);
        build_rotational_mesh(&p, &RotMeshOptions { n_profile: 16, n_theta: 24, ..Default::default() })
            .unwrap()
    }

    #[test]
    fn slice_sweeps_to_a_flat_disk() {
        let mesh = slice_mesh();
        assert!(mesh.vertices.iter().all(|v| v.t == 0.0));
        assert!(mesh.vertices.iter().all(|v| v.x * v.x + v.y * v.y < 1.0));
        // disk topology
        assert_eq!(mesh.euler_characteristic(), 1);
    }

    #[test]
    fn sphere_mesh_is_closed() {
        let p = RotScrewParams::rotational(1.0, -2.0, -0.5);
        let mesh = build_rotational_mesh(
            &p,
            &RotMeshOptions { n_profile: 48, n_theta: 48, ..Default::default() },
        )
        .unwrap();
        assert_eq!(mesh.euler_characteristic(), 2);
        // symmetric about t = 0 as a vertex set
        let mut ts: Vec<f64> = mesh.vertices.iter().map(|v| v.t).collect();
        ts.sort_by(f64::total_cmp);
        let mut neg: Vec<f64> = mesh.vertices.iter().map(|v| -v.t).collect();
        neg.sort_by(f64::total_cmp);
        for (a, b) in ts.iter().zip(neg.iter()) {
            assert!((a - b).abs() < 1e-9, "vertex set not symmetric: {a} vs {b}");
        }
    }

    #[test]
    fn annulus_mesh_reflection_symmetry() {
        let p = RotScrewParams::rotational(0.3, 0.2, -0.5);
        let mesh = build_rotational_mesh(
            &p,
            &RotMeshOptions { n_profile: 32, n_theta: 16, rho_max: 2.5, ..Default::default() },
        )
        .unwrap();
        let set: Vec<(f64, f64, f64)> =
            mesh.vertices.iter().map(|v| (v.x, v.y, v.t)).collect();
        for v in &mesh.vertices {
            let mirrored = (v.x, v.y, -v.t);
            assert!(
                set.iter().any(|&(x, y, t)| {
                    (x - mirrored.0).abs() < 1e-9
                        && (y - mirrored.1).abs() < 1e-9
                        && (t - mirrored.2).abs() < 1e-9
                }),
                "missing mirror of {v:?}"
            );
        }
    }

    #[test]
    fn reflect_union_cases() {
        // entire graph: u = 0 at the first endpoint, reflection allowed
        let p = RotScrewParams::rotational(0.5, -1.0, -0.5);
        let profile = profile_numeric(&p, 32).unwrap();
        let doubled = reflect_union(&profile).unwrap();
        assert_eq!(doubled.points.len(), 63);
        assert!((doubled.points.first().unwrap().1 + profile.samples.last().unwrap().u).abs() < 1e-12);

        // sphere profile renormalized at the equator closes up
        let p = RotScrewParams::rotational(1.0, -2.0, -0.5);
        let profile = profile_numeric(&p, 32).unwrap().renormalized_at_end(true);
        let closed = reflect_union(&profile).unwrap();
        assert!(closed.points.first().unwrap().0.abs() < 1e-12);
        assert!(closed.points.last().unwrap().0.abs() < 1e-12);

        // an unnormalized curve is rejected
        let p = RotScrewParams::rotational(0.3, -1.0, -0.5);
        let profile = profile_numeric(&p, 32).unwrap(); // u = 0 at rho0, interior
        assert!(matches!(reflect_union(&profile), Err(MeshError::NotNormalized)));
    }

    #[test]
    fn unduloid_period_translation() {
        let p = RotScrewParams::rotational(1.0, -1.8, -0.5);
        let profile = profile_numeric(&p, 64).unwrap();
        let one = reflect_union(&profile).unwrap();
        let period = one.points.last().unwrap().1 - one.points.first().unwrap().1;
        // 2 (u(rho2) - u(rho1)), independently computed
        assert!((period - 2.0 * 1.7758980726890687).abs() < 1e-8, "{period}");
        let three = periodic_extension(&one, 3);
        assert_eq!(three.points.len(), 3 * (one.points.len() - 1) + 1);
        let total = three.points.last().unwrap().1 - three.points.first().unwrap().1;
        assert!((total - 3.0 * period).abs() < 1e-9);
    }

    #[test]
    fn parabolic_strip_mesh() {
        let p = ParScrewParams::parabolic(0.0, 1.0, -0.5);
        let mesh = build_parabolic_mesh(
            &p,
            &ParMeshOptions { n_profile: 24, n_x: 12, ..Default::default() },
        )
        .unwrap();
        assert_eq!(mesh.euler_characteristic(), 1);
        assert!(mesh.vertices.iter().all(|v| v.y > 0.0));

        // nonzero pitch shears the strip by t = pitch * x
        let ps = ParScrewParams::new(0.0, 1.0, -0.5, 0.7);
        let profile = par_profiles::par_profile_numeric(&ps, 8).unwrap();
        let sheared = sweep_parabolic(&profile, &ps, (0.0, 1.0), 3).unwrap();
        let flat = par_profiles::par_profile_numeric(
            &ParScrewParams::parabolic(0.0, 1.0, -0.5),
            8,
        )
        .unwrap();
        let _ = flat;
        for v in sheared.vertices.chunks(3) {
            // within a row, t increases linearly with x at rate pitch
            let dt = v[1].t - v[0].t;
            let dx = v[1].x - v[0].x;
            assert!((dt / dx - 0.7).abs() < 1e-12);
        }
    }

    #[test]
    fn screw_sweep_leaves_seam_open() {
        let p = RotScrewParams::new(0.0, 1.0, -0.5, 0.3);
        let profile = profile_numeric(&p, 8).unwrap();
        let mesh = sweep_rotational(&profile, &p, 16).unwrap();
        // 17 columns per row, no wraparound: strip topology
        assert_eq!(mesh.vertices.len(), 8 * 17);
        assert_eq!(mesh.euler_characteristic(), 1);
        // helicoidal offset: t grows by pitch * 2 pi across the strip
        let t0 = mesh.vertices[0].t;
        let t1 = mesh.vertices[16].t;
        assert!((t1 - t0 - 0.3 * 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn param_mismatch_is_rejected() {
        let p = RotScrewParams::rotational(0.0, 1.0, -0.5);
        let profile = profile_numeric(&p, 8).unwrap();
        let other = RotScrewParams::rotational(0.0, 2.0, -0.5);
        assert!(matches!(
            sweep_rotational(&profile, &other, 8),
            Err(MeshError::ParamMismatch(_))
        ));
        let par = ParScrewParams::parabolic(0.0, 1.0, -0.5);
        assert!(matches!(
            sweep_parabolic_curve(&PlanarCurve::from(&profile), &par, (0.0, 1.0), 4),
            Err(MeshError::ParamMismatch(_))
        ));
    }

    #[test]
    fn obj_round_trip() {
        let mesh = slice_mesh();
        let body = obj_to_string(&mesh).unwrap();
        let mut vertices = Vec::new();
        let mut faces = Vec::new();
        for line in body.lines() {
            let mut it = line.split_whitespace();
            match it.next() {
                Some("v") => {
                    let vals: Vec<f64> = it.map(|s| s.parse().unwrap()).collect();
                    vertices.push(Point3::new(vals[0], vals[1], vals[2]));
                }
                Some("f") => {
                    let idx: Vec<usize> = it.map(|s| s.parse::<usize>().unwrap() - 1).collect();
                    faces.push([idx[0], idx[1], idx[2]]);
                }
                _ => {}
            }
        }
        assert_eq!(vertices.len(), mesh.vertices.len());
        assert_eq!(faces, mesh.faces);
        for (a, b) in vertices.iter().zip(mesh.vertices.iter()) {
            assert_eq!((a.x, a.y, a.t), (b.x, b.y, b.t));
        }
    }

    #[test]
    fn empty_mesh_is_an_error() {
        let p = RotScrewParams::rotational(0.0, 0.0, 0.0);
        let mesh = SurfaceMesh {
            vertices: vec![],
            faces: vec![],
            metadata: metadata(&p.source(), "empty"),
        };
        assert!(matches!(obj_to_string(&mesh), Err(MeshError::EmptyMesh)));
    }

    #[test]
    fn csv_format() {
        let p = RotScrewParams::rotational(0.0, 1.0, -0.5);
        let profile = profile_numeric(&p, 4).unwrap();
        let body = csv_to_string(&profile);
        let mut lines = body.lines();
        assert_eq!(lines.next(), Some("rho,u,dudrho"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("0.881373587019543"), "{first}");
        assert!(first.ends_with(",inf"), "vertical tangent row: {first}");
    }
}
