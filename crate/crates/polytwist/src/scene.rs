//! Scene documents: every lifted curve, root, slice and classification for
//! one polynomial, as a single versioned JSON file.
//!
//! ```text
//! {
//!   "format": "polytwist-scene",
//!   "version": "1",
//!   "polynomial": [a0, a1, ..., an],          // ascending powers
//!   "meta": { "coefficient_order": "ascending", "x_min", "x_max", "samples",
//!             "locus_tol", "root_tol", "z_clip" },
//!   "branches": [ { "kind": "real_axis" | "off_axis" | "vertical_line",
//!                 "mirrored": bool,
//!                 "points": [ { "x", "y", "z", "clipped"? }, ... ] } ],
//!   "roots": [ { "location": { "re", "im" }, "multiplicity",
//!                "residual", "locus_residual" } ],
//!   "slice": null | { "level", "intersections": [root...], "total_multiplicity" },
//!   "classification": null | { "category", "inflection_x", "inflection_slope" }
//! }
//! ```
//!
//! A coefficient list `[c, b, a]` is the quadratic `az² + bz + c`.
//! Points whose height exceeds `z_clip` in magnitude are stored at
//! `±z_clip` with `"clipped": true`.

use polytwist_core::{
    expand_real_imag, BivariatePoly, BranchKind, ComplexPoint, CubicClassification,
    RealPolynomial, RootInfo, SliceResult, SpaceCurve,
};
use serde::{Deserialize, Serialize};

pub const FORMAT_NAME: &str = "polytwist-scene";
pub const FORMAT_VERSION: &str = "1";
pub const DEFAULT_Z_CLIP: f64 = 1e6;

/// Relative tolerance for `z = P(x, y)` when checking curve provenance.
const HEIGHT_TOL: f64 = 1e-8;
/// Relative residual above which a root cannot belong to the polynomial.
const ROOT_PROVENANCE_TOL: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("{0} does not belong to the scene polynomial")]
    MixedProvenance(String),
    #[error("unsupported scene format {found:?} (expected {FORMAT_NAME} version {FORMAT_VERSION})")]
    Version { found: String },
    #[error("malformed scene document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneMeta {
    pub coefficient_order: String,
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
    pub locus_tol: f64,
    pub root_tol: f64,
    pub z_clip: f64,
}

impl SceneMeta {
    pub fn new(x_min: f64, x_max: f64, samples: usize) -> Self {
        Self {
            coefficient_order: "ascending".to_string(),
            x_min,
            x_max,
            samples,
            locus_tol: polytwist_core::locus::DEFAULT_LOCUS_TOL,
            root_tol: polytwist_core::roots::DEFAULT_ROOT_TOL,
            z_clip: DEFAULT_Z_CLIP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub clipped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneCurve {
    pub kind: BranchKind,
    pub mirrored: bool,
    pub points: Vec<ScenePoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub format: String,
    pub version: String,
    pub polynomial: RealPolynomial,
    pub meta: SceneMeta,
    pub branches: Vec<SceneCurve>,
    pub roots: Vec<RootInfo>,
    pub slice: Option<SliceResult>,
    pub classification: Option<CubicClassification>,
}

fn height_matches(p: &BivariatePoly, x: f64, y: f64, z: f64) -> bool {
    let want = p.eval(x, y);
    (z - want).abs() <= HEIGHT_TOL * (1.0 + p.magnitude(x, y))
}

fn root_belongs(f: &RealPolynomial, z: ComplexPoint) -> bool {
    let value = f.eval_complex(z).map(|w| w.abs()).unwrap_or(f64::INFINITY);
    value <= ROOT_PROVENANCE_TOL * f.magnitude_at(z).max(f64::MIN_POSITIVE)
}

/// Assembles a scene, checking every part against `f` and ordering curves
/// as real axis, off-axis by smallest x, then vertical lines by x.
pub fn build_scene(
    f: &RealPolynomial,
    curves: &[SpaceCurve],
    roots: &[RootInfo],
    slice: Option<&SliceResult>,
    classification: Option<&CubicClassification>,
    meta: SceneMeta,
) -> Result<Scene, SceneError> {
    let (p, _) = expand_real_imag(f);
    for (i, c) in curves.iter().enumerate() {
        if let Some(&(x, y, z)) = c.points.iter().find(|&&(x, y, z)| !height_matches(&p, x, y, z)) {
            return Err(SceneError::MixedProvenance(format!(
                "curve {i} point ({x}, {y}, {z})"
            )));
        }
    }
    for r in roots {
        if !root_belongs(f, r.location) {
            return Err(SceneError::MixedProvenance(format!("root {}", r.location)));
        }
    }
    if let Some(s) = slice {
        let shifted = f.shifted(s.level);
        if s.total_multiplicity != f.degree()
            || s.intersections.iter().any(|r| !root_belongs(&shifted, r.location))
        {
            return Err(SceneError::MixedProvenance(format!("slice at level {}", s.level)));
        }
    }
    if let Some(k) = classification {
        let expected = polytwist_core::classify_cubic(f)
            .map_err(|_| SceneError::MixedProvenance("cubic classification".into()))?;
        if (k.inflection_x - expected.inflection_x).abs() > 1e-12 * (1.0 + expected.inflection_x.abs())
            || k.category != expected.category
        {
            return Err(SceneError::MixedProvenance("cubic classification".into()));
        }
    }

    let clip = meta.z_clip;
    let mut curves: Vec<SceneCurve> = curves
        .iter()
        .map(|c| SceneCurve {
            kind: c.source_kind,
            mirrored: c.mirrored,
            points: c
                .points
                .iter()
                .map(|&(x, y, z)| {
                    if z.abs() > clip {
                        ScenePoint { x, y, z: clip.copysign(z), clipped: true }
                    } else {
                        ScenePoint { x, y, z, clipped: false }
                    }
                })
                .collect(),
        })
        .collect();
    let min_x = |c: &SceneCurve| c.points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    curves.sort_by(|a, b| a.kind.cmp(&b.kind).then(min_x(a).total_cmp(&min_x(b))));

    Ok(Scene {
        format: FORMAT_NAME.to_string(),
        version: FORMAT_VERSION.to_string(),
        polynomial: f.clone(),
        meta,
        branches: curves,
        roots: roots.to_vec(),
        slice: slice.cloned(),
        classification: classification.copied(),
    })
}

impl Scene {
    pub fn point_count(&self) -> usize {
        self.branches.iter().map(|c| c.points.len()).sum()
    }

    /// Checks the load-time invariants: version, finite values and
    /// `z = P(x, y)` on every unclipped point.
    pub fn validate(&self) -> Result<(), SceneError> {
        if self.format != FORMAT_NAME || self.version != FORMAT_VERSION {
            return Err(SceneError::Version {
                found: format!("{} {}", self.format, self.version),
            });
        }
        let (p, _) = expand_real_imag(&self.polynomial);
        for (i, c) in self.branches.iter().enumerate() {
            for pt in &c.points {
                if !(pt.x.is_finite() && pt.y.is_finite() && pt.z.is_finite()) {
                    return Err(SceneError::Invariant(format!("curve {i} has a non-finite point")));
                }
                let ok = if pt.clipped {
                    let h = p.eval(pt.x, pt.y);
                    pt.z.abs() == self.meta.z_clip && h.abs() >= self.meta.z_clip && h.signum() == pt.z.signum()
                } else {
                    height_matches(&p, pt.x, pt.y, pt.z)
                };
                if !ok {
                    return Err(SceneError::Invariant(format!(
                        "curve {i} point ({}, {}) has height {} but P gives {}",
                        pt.x,
                        pt.y,
                        pt.z,
                        p.eval(pt.x, pt.y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Field-by-field comparison with every float allowed to differ by `tol`
    /// relative to its magnitude.
    pub fn approx_eq(&self, other: &Scene, tol: f64) -> bool {
        let num = |a: f64, b: f64| a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
        let nums = |a: &[f64], b: &[f64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| num(*x, *y));
        let root = |a: &RootInfo, b: &RootInfo| {
            a.multiplicity == b.multiplicity
                && num(a.location.re, b.location.re)
                && num(a.location.im, b.location.im)
                && num(a.residual, b.residual)
                && num(a.locus_residual, b.locus_residual)
        };
        let roots = |a: &[RootInfo], b: &[RootInfo]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| root(x, y));
        let curve = |a: &SceneCurve, b: &SceneCurve| {
            a.kind == b.kind
                && a.mirrored == b.mirrored
                && a.points.len() == b.points.len()
                && a.points.iter().zip(&b.points).all(|(p, q)| {
                    p.clipped == q.clipped && num(p.x, q.x) && num(p.y, q.y) && num(p.z, q.z)
                })
        };
        let m = (&self.meta, &other.meta);
        self.format == other.format
            && self.version == other.version
            && nums(self.polynomial.coeffs(), other.polynomial.coeffs())
            && m.0.coefficient_order == m.1.coefficient_order
            && m.0.samples == m.1.samples
            && nums(
                &[m.0.x_min, m.0.x_max, m.0.locus_tol, m.0.root_tol, m.0.z_clip],
                &[m.1.x_min, m.1.x_max, m.1.locus_tol, m.1.root_tol, m.1.z_clip],
            )
            && self.branches.len() == other.branches.len()
            && self.branches.iter().zip(&other.branches).all(|(a, b)| curve(a, b))
            && roots(&self.roots, &other.roots)
            && match (&self.slice, &other.slice) {
                (None, None) => true,
                (Some(a), Some(b)) => {
                    num(a.level, b.level)
                        && a.total_multiplicity == b.total_multiplicity
                        && roots(&a.intersections, &b.intersections)
                }
                _ => false,
            }
            && match (&self.classification, &other.classification) {
                (None, None) => true,
                (Some(a), Some(b)) => {
                    a.category == b.category
                        && num(a.inflection_x, b.inflection_x)
                        && num(a.inflection_slope, b.inflection_slope)
                }
                _ => false,
            }
    }
}

pub fn to_scene_file(scene: &Scene) -> String {
    let mut s = serde_json::to_string_pretty(scene).expect("scene values are finite");
    s.push('\n');
    s
}

pub fn from_scene_file(text: &str) -> Result<Scene, SceneError> {
    let header: serde_json::Value = serde_json::from_str(text)?;
    let format = header.get("format").and_then(|v| v.as_str()).unwrap_or("");
    let version = header.get("version").and_then(|v| v.as_str()).unwrap_or("");
    if format != FORMAT_NAME || version != FORMAT_VERSION {
        return Err(SceneError::Version {
            found: format!("{format} {version}").trim().to_string(),
        });
    }
    let scene: Scene = serde_json::from_value(header)?;
    scene.validate()?;
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polytwist_core::locus::lift_branches;
    use polytwist_core::{find_roots, sweep_locus};

    fn z2_plus_4_scene() -> Scene {
        let f = RealPolynomial::new(vec![4.0, 0.0, 1.0]).unwrap();
        let (p, _) = expand_real_imag(&f);
        let branches = sweep_locus(&f, -3.0, 3.0, 61, 1e-8).unwrap();
        let curves = lift_branches(&branches, &p);
        let roots = find_roots(&f, 1e-9).unwrap();
        build_scene(&f, &curves, &roots, None, None, SceneMeta::new(-3.0, 3.0, 61)).unwrap()
    }

    #[test]
    fn z2_plus_4_has_two_curve_kinds() {
        let s = z2_plus_4_scene();
        let kinds: Vec<_> = s.branches.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![BranchKind::RealAxis, BranchKind::VerticalLine]);
        assert_eq!(s.roots.len(), 2);
    }

    #[test]
    fn round_trip() {
        let s = z2_plus_4_scene();
        let text = to_scene_file(&s);
        let back = from_scene_file(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn corrupted_height_is_rejected() {
        let mut s = z2_plus_4_scene();
        s.branches[0].points[5].z += 0.5;
        let text = to_scene_file(&s);
        assert!(matches!(from_scene_file(&text), Err(SceneError::Invariant(_))));
    }

    #[test]
    fn version_and_garbage() {
        let s = z2_plus_4_scene();
        let text = to_scene_file(&s).replace("\"version\": \"1\"", "\"version\": \"9\"");
        assert!(matches!(from_scene_file(&text), Err(SceneError::Version { .. })));
        assert!(matches!(from_scene_file("{not json"), Err(SceneError::Malformed(_))));
        assert!(matches!(
            from_scene_file(r#"{"format": "polytwist-scene", "version": "1"}"#),
            Err(SceneError::Malformed(_))
        ));
    }

    #[test]
    fn mixed_provenance() {
        let f = RealPolynomial::new(vec![4.0, 0.0, 1.0]).unwrap();
        let g = RealPolynomial::new(vec![-4.0, 0.0, 1.0]).unwrap();
        let (pg, _) = expand_real_imag(&g);
        let curves = lift_branches(&sweep_locus(&g, -3.0, 3.0, 32, 1e-8).unwrap(), &pg);
        let meta = SceneMeta::new(-3.0, 3.0, 32);
        assert!(matches!(
            build_scene(&f, &curves, &[], None, None, meta.clone()),
            Err(SceneError::MixedProvenance(_))
        ));
        let roots = find_roots(&g, 1e-9).unwrap();
        assert!(matches!(
            build_scene(&f, &[], &roots, None, None, meta),
            Err(SceneError::MixedProvenance(_))
        ));
    }

    #[test]
    fn tall_points_are_clipped() {
        let f = RealPolynomial::new(vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let (p, _) = expand_real_imag(&f);
        let curves = lift_branches(&sweep_locus(&f, -20.0, 20.0, 41, 1e-8).unwrap(), &p);
        let s = build_scene(&f, &curves, &[], None, None, SceneMeta::new(-20.0, 20.0, 41)).unwrap();
        let clipped: Vec<_> = s.branches[0].points.iter().filter(|p| p.clipped).collect();
        assert!(!clipped.is_empty());
        assert!(clipped.iter().all(|p| p.z == DEFAULT_Z_CLIP));
        let back = from_scene_file(&to_scene_file(&s)).unwrap();
        assert_eq!(back, s);
    }
}
