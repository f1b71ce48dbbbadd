//! The restricted domain of a real polynomial: every `x + iy` at which
//! `f` takes a real value.
//!
//! It always contains the real axis. The remaining points solve
//! `R(x, y²) = 0` (see [`crate::expand`]) and are reported as branches in the
//! upper half plane with an implied mirror image below the axis, plus whole
//! vertical lines at abscissas where `R(x₀, ·)` vanishes identically.

use alloc::vec::Vec;

use crate::expand::ReducedImagPoly;
use crate::roots::real_roots;

mod closed_form;
mod cubic;
mod lift;
mod sweep;

pub use closed_form::closed_form_locus;
pub use cubic::{classify_cubic, cubic_hyperbola_check, ConicCheck, CubicCategory, CubicClassification};
pub use lift::{lift_branches, lift_to_space, SpaceCurve};
pub use sweep::sweep_locus;

pub const MIN_SAMPLES: usize = 16;
pub const DEFAULT_LOCUS_TOL: f64 = 1e-8;
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;
/// Relative threshold under which every coefficient of `R(x₀, ·)` counts as zero.
pub const FULL_LINE_TOL: f64 = 1e-10;
/// Width below which endpoint bisection stops, relative to `max(1, |x|)`.
pub const ENDPOINT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BranchKind {
    RealAxis,
    OffAxis,
    VerticalLine,
}

impl BranchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchKind::RealAxis => "real_axis",
            BranchKind::OffAxis => "off_axis",
            BranchKind::VerticalLine => "vertical_line",
        }
    }
}

/// One sampled component of the restricted domain.
///
/// `OffAxis` branches store only `y ≥ 0` and set `mirror`; their `y → −y`
/// twin is implied. Branch endpoints that meet the real axis sit at `y = 0`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocusBranch {
    pub kind: BranchKind,
    pub points: Vec<(f64, f64)>,
    pub mirror: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum LocusError {
    #[error("invalid x range [{0}, {1}]")]
    InvalidRange(f64, f64),
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("closed forms exist for degrees 2 to 4 only, got degree {0}")]
    UnsupportedDegree(usize),
    #[error("expected a cubic, got degree {0}")]
    NotCubic(usize),
}

/// Off-axis solutions above a single abscissa.
#[derive(Clone, Debug, PartialEq)]
pub enum OffAxis {
    /// Heights `y ≥ 0`, ascending.
    Points(Vec<f64>),
    /// `R(x, ·)` vanishes identically: the whole vertical line is in the locus.
    FullLine,
}

/// Every `y = √u` with `u ≥ −tol` a real root of `R(x, ·)`; small negative
/// roots are clamped to `y = 0`.
pub fn solve_offaxis_at(r: &ReducedImagPoly, x: f64, tol: f64) -> OffAxis {
    match offaxis_u(r, x, tol) {
        None => OffAxis::FullLine,
        Some(us) => {
            let mut ys: Vec<f64> = us.into_iter().map(libm::sqrt).collect();
            ys.dedup();
            OffAxis::Points(ys)
        }
    }
}

/// Nonnegative `u`-roots at `x`, or `None` on a full line.
pub(crate) fn offaxis_u(r: &ReducedImagPoly, x: f64, tol: f64) -> Option<Vec<f64>> {
    let c = r.at_x(x);
    if is_full_line_coeffs(r, x, &c) {
        return None;
    }
    Some(
        real_roots(&c)
            .into_iter()
            .filter(|&u| u >= -tol)
            .map(|u| u.max(0.0))
            .collect(),
    )
}

pub fn is_full_line(r: &ReducedImagPoly, x: f64) -> bool {
    is_full_line_coeffs(r, x, &r.at_x(x))
}

fn is_full_line_coeffs(r: &ReducedImagPoly, x: f64, c: &[f64]) -> bool {
    let base = 1.0 + r.max_abs_coeff();
    let mags = r.magnitudes_at_x(x);
    c.iter()
        .zip(mags)
        .all(|(ck, mk)| libm::fabs(*ck) <= FULL_LINE_TOL * base.max(mk))
}

/// Abscissas in `[x_min, x_max]` whose whole vertical line lies in the locus.
///
/// Candidates are the real roots of the lowest-degree nonzero `u`-coefficient
/// of `R`; each is kept only if every other coefficient vanishes there too.
pub fn full_line_abscissas(r: &ReducedImagPoly, x_min: f64, x_max: f64) -> Vec<f64> {
    let trimmed = |k: usize| {
        let mut c = r.u_coefficient(k);
        while c.last() == Some(&0.0) {
            c.pop();
        }
        c
    };
    let Some(pivot) = (0..=r.u_degree())
        .map(trimmed)
        .filter(|c| !c.is_empty())
        .min_by_key(|c| c.len())
    else {
        return Vec::new();
    };
    let slack = ENDPOINT_TOL * (x_max - x_min);
    let mut xs: Vec<f64> = real_roots(&pivot)
        .into_iter()
        .filter(|&x| x >= x_min - slack && x <= x_max + slack)
        .filter(|&x| is_full_line(r, x))
        .collect();
    xs.dedup();
    xs
}

/// `VerticalLine` branch at `x0`, sampled symmetrically in `y`.
pub(crate) fn vertical_line(x0: f64, half_height: f64, samples: usize) -> LocusBranch {
    let n = samples.max(2);
    let points = (0..n)
        .map(|i| {
            let t = -half_height + 2.0 * half_height * i as f64 / (n - 1) as f64;
            (x0, t)
        })
        .collect();
    LocusBranch {
        kind: BranchKind::VerticalLine,
        points,
        mirror: false,
    }
}

pub(crate) fn real_axis(xs: &[f64]) -> LocusBranch {
    LocusBranch {
        kind: BranchKind::RealAxis,
        points: xs.iter().map(|&x| (x, 0.0)).collect(),
        mirror: false,
    }
}

pub(crate) fn grid(x_min: f64, x_max: f64, samples: usize) -> Result<Vec<f64>, LocusError> {
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(LocusError::InvalidRange(x_min, x_max));
    }
    if samples < MIN_SAMPLES {
        return Err(LocusError::TooFewSamples(samples));
    }
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            if i == samples - 1 {
                x_max
            } else {
                x_min + (x_max - x_min) * i as f64 / last
            }
        })
        .collect())
}

/// Canonical ordering: real axis, off-axis by smallest x, vertical lines by x.
pub fn sort_branches(branches: &mut [LocusBranch]) {
    let key = |b: &LocusBranch| {
        let x = b
            .points
            .iter()
            .map(|p| p.0)
            .fold(f64::INFINITY, f64::min);
        (b.kind, x)
    };
    branches.sort_by(|a, b| {
        let (ka, xa) = key(a);
        let (kb, xb) = key(b);
        ka.cmp(&kb).then(xa.total_cmp(&xb))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::reduce_imag;
    use crate::poly::RealPolynomial;
    use alloc::vec;

    fn r_of(c: &[f64]) -> ReducedImagPoly {
        reduce_imag(&RealPolynomial::new(c.to_vec()).unwrap())
    }

    #[test]
    fn offaxis_examples() {
        // z³ − 3z at x = 2: u = 3·4 − 3 = 9
        assert_eq!(
            solve_offaxis_at(&r_of(&[0.0, -3.0, 0.0, 1.0]), 2.0, 1e-8),
            OffAxis::Points(vec![3.0])
        );
        assert_eq!(
            solve_offaxis_at(&r_of(&[4.0, 0.0, 1.0]), 0.0, 1e-8),
            OffAxis::FullLine
        );
        assert_eq!(
            solve_offaxis_at(&r_of(&[0.0, 0.0, 0.0, 0.0, 1.0]), 1.0, 1e-8),
            OffAxis::Points(vec![1.0])
        );
        assert_eq!(
            solve_offaxis_at(&r_of(&[0.0, 0.0, 0.0, 0.0, 1.0]), 0.0, 1e-8),
            OffAxis::FullLine
        );
    }

    #[test]
    fn offaxis_empty_and_clamped() {
        // z³ − 3z at x = 0: u = −3, nothing above
        assert_eq!(
            solve_offaxis_at(&r_of(&[0.0, -3.0, 0.0, 1.0]), 0.0, 1e-8),
            OffAxis::Points(vec![])
        );
        // linear: R is a nonzero constant
        assert_eq!(
            solve_offaxis_at(&r_of(&[1.0, 2.0]), 0.3, 1e-8),
            OffAxis::Points(vec![])
        );
        // z³ − 3z slightly inside x = 1: u ≈ −6e-10 clamps to 0
        let x = 1.0 - 1e-10;
        assert_eq!(
            solve_offaxis_at(&r_of(&[0.0, -3.0, 0.0, 1.0]), x, 1e-8),
            OffAxis::Points(vec![0.0])
        );
    }

    #[test]
    fn full_lines() {
        assert_eq!(full_line_abscissas(&r_of(&[4.0, 0.0, 1.0]), -3.0, 3.0), vec![0.0]);
        assert_eq!(full_line_abscissas(&r_of(&[8.0, 4.0, 1.0]), -6.0, 2.0), vec![-2.0]);
        assert_eq!(full_line_abscissas(&r_of(&[8.0, 4.0, 1.0]), 0.0, 2.0), Vec::<f64>::new());
        assert_eq!(
            full_line_abscissas(&r_of(&[0.0, 0.0, 0.0, 0.0, 1.0]), -2.0, 2.0),
            vec![0.0]
        );
        assert!(full_line_abscissas(&r_of(&[0.0, -3.0, 0.0, 1.0]), -3.0, 3.0).is_empty());
        assert!(full_line_abscissas(&r_of(&[1.0, 2.0]), -3.0, 3.0).is_empty());
    }

    #[test]
    fn grid_validation() {
        assert_eq!(grid(1.0, 1.0, 32), Err(LocusError::InvalidRange(1.0, 1.0)));
        assert_eq!(grid(0.0, 1.0, 15), Err(LocusError::TooFewSamples(15)));
        assert!(matches!(grid(f64::NAN, 1.0, 32), Err(LocusError::InvalidRange(..))));
        let g = grid(-3.0, 3.0, 61).unwrap();
        assert_eq!(g[0], -3.0);
        assert_eq!(g[30], 0.0);
        assert_eq!(g[60], 3.0);
    }
}
