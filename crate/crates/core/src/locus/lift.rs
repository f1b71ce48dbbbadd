use alloc::vec::Vec;

use super::{BranchKind, LocusBranch};
use crate::expand::BivariatePoly;

/// A branch lifted into space as `(x, y, P(x, y))`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpaceCurve {
    pub points: Vec<(f64, f64, f64)>,
    pub source_kind: BranchKind,
    /// True for the `y → −y` image of a mirrored branch.
    pub mirrored: bool,
}

/// Lifts one branch. Mirrored branches produce two curves: the stored half
/// and its reflection, both with `z = P(x, y)` (P is even in `y`).
pub fn lift_to_space(branch: &LocusBranch, p: &BivariatePoly) -> Vec<SpaceCurve> {
    let lift = |sign: f64| SpaceCurve {
        points: branch
            .points
            .iter()
            .map(|&(x, y)| {
                let y = sign * y;
                (x, y, p.eval(x, y))
            })
            .collect(),
        source_kind: branch.kind,
        mirrored: sign < 0.0,
    };
    let mut out = Vec::with_capacity(2);
    out.push(lift(1.0));
    if branch.mirror && branch.kind == BranchKind::OffAxis {
        out.push(lift(-1.0));
    }
    out
}

pub fn lift_branches(branches: &[LocusBranch], p: &BivariatePoly) -> Vec<SpaceCurve> {
    branches.iter().flat_map(|b| lift_to_space(b, p)).collect()
}
