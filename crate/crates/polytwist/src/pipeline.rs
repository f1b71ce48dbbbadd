//! From a polynomial and a window to a finished scene.

use polytwist_core::locus::{lift_branches, DEFAULT_LOCUS_TOL, MIN_SAMPLES};
use polytwist_core::roots::DEFAULT_ROOT_TOL;
use polytwist_core::{
    classify_cubic, expand_real_imag, find_roots, slice, sweep_locus, LocusError, RealPolynomial,
    RootError,
};

use crate::scene::{build_scene, Scene, SceneError, SceneMeta, DEFAULT_Z_CLIP};

pub const MAX_SAMPLES: usize = 100_000;
pub const DEFAULT_SAMPLES: usize = 400;

#[derive(Clone, Debug, PartialEq)]
pub struct SceneRequest {
    pub polynomial: RealPolynomial,
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
    pub locus_tol: f64,
    pub root_tol: f64,
    pub slice: Option<f64>,
    pub z_clip: f64,
}

impl SceneRequest {
    pub fn new(polynomial: RealPolynomial, x_min: f64, x_max: f64) -> Self {
        Self {
            polynomial,
            x_min,
            x_max,
            samples: DEFAULT_SAMPLES,
            locus_tol: DEFAULT_LOCUS_TOL,
            root_tol: DEFAULT_ROOT_TOL,
            slice: None,
            z_clip: DEFAULT_Z_CLIP,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("samples must be between {MIN_SAMPLES} and {MAX_SAMPLES}, got {0}")]
    Samples(usize),
    #[error("tolerances and clip height must be positive and finite")]
    Tolerance,
    #[error("slice level must be finite")]
    Level,
    #[error(transparent)]
    Locus(#[from] LocusError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Scene(#[from] SceneError),
}

pub fn compute_scene(req: &SceneRequest) -> Result<Scene, PipelineError> {
    if !(MIN_SAMPLES..=MAX_SAMPLES).contains(&req.samples) {
        return Err(PipelineError::Samples(req.samples));
    }
    let positive = |v: f64| v.is_finite() && v > 0.0;
    if !(positive(req.locus_tol) && positive(req.root_tol) && positive(req.z_clip)) {
        return Err(PipelineError::Tolerance);
    }
    if req.slice.is_some_and(|w| !w.is_finite()) {
        return Err(PipelineError::Level);
    }
    let f = &req.polynomial;
    let (p, _) = expand_real_imag(f);
    let branches = sweep_locus(f, req.x_min, req.x_max, req.samples, req.locus_tol)?;
    let curves = lift_branches(&branches, &p);
    let roots = find_roots(f, req.root_tol)?;
    let cut = req.slice.map(|w| slice(f, w, req.root_tol)).transpose()?;
    let classification = if f.degree() == 3 { Some(classify_cubic(f)?) } else { None };
    let meta = SceneMeta {
        samples: req.samples,
        locus_tol: req.locus_tol,
        root_tol: req.root_tol,
        z_clip: req.z_clip,
        ..SceneMeta::new(req.x_min, req.x_max, req.samples)
    };
    Ok(build_scene(f, &curves, &roots, cut.as_ref(), classification.as_ref(), meta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polytwist_core::{BranchKind, CubicCategory};

    fn req(c: &[f64]) -> SceneRequest {
        SceneRequest::new(RealPolynomial::new(c.to_vec()).unwrap(), -3.0, 3.0)
    }

    #[test]
    fn degree_one_has_only_the_real_axis() {
        let s = compute_scene(&req(&[1.0, 2.0])).unwrap();
        assert_eq!(s.branches.len(), 1);
        assert_eq!(s.branches[0].kind, BranchKind::RealAxis);
        assert_eq!(s.roots.len(), 1);
        assert!(s.classification.is_none());
    }

    #[test]
    fn cube_carries_zero_slope() {
        let s = compute_scene(&req(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(s.classification.unwrap().category, CubicCategory::ZeroSlope);
    }

    #[test]
    fn slice_of_z2_plus_4() {
        let mut r = req(&[4.0, 0.0, 1.0]);
        r.slice = Some(0.0);
        let s = compute_scene(&r).unwrap();
        let cut = s.slice.unwrap();
        assert_eq!(cut.total_multiplicity, 2);
        let ims: Vec<f64> = cut.intersections.iter().map(|r| r.location.im).collect();
        assert_eq!(ims, vec![-2.0, 2.0]);
    }

    #[test]
    fn rejects_bad_requests() {
        let mut r = req(&[4.0, 0.0, 1.0]);
        r.samples = 3;
        assert!(matches!(compute_scene(&r), Err(PipelineError::Samples(3))));
        let mut r = req(&[4.0, 0.0, 1.0]);
        r.root_tol = 0.0;
        assert!(matches!(compute_scene(&r), Err(PipelineError::Tolerance)));
        let mut r = req(&[4.0, 0.0, 1.0]);
        r.slice = Some(f64::NAN);
        assert!(matches!(compute_scene(&r), Err(PipelineError::Level)));
    }
}
