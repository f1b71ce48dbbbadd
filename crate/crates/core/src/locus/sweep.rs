use alloc::vec::Vec;

use super::{
    full_line_abscissas, grid, offaxis_u, real_axis, sort_branches, vertical_line, BranchKind,
    LocusBranch, LocusError, ENDPOINT_TOL,
};
use crate::expand::{reduce_imag, ReducedImagPoly};
use crate::poly::RealPolynomial;

/// Factor over the median step beyond which a `u` jump splits a branch.
const JUMP_FACTOR: f64 = 10.0;
const MAX_BISECTIONS: usize = 64;

/// Numeric restricted domain of `f` over `[x_min, x_max]`, any degree.
///
/// Solves `R(x, ·)` on a uniform grid, stitches `u`-roots of consecutive
/// samples into branches by nearest `u`, and bisects each branch end down to
/// the abscissa where its root count changes.
pub fn sweep_locus(
    f: &RealPolynomial,
    x_min: f64,
    x_max: f64,
    samples: usize,
    tol: f64,
) -> Result<Vec<LocusBranch>, LocusError> {
    let xs = grid(x_min, x_max, samples)?;
    let r = reduce_imag(f);

    let mut branches = Vec::new();
    branches.push(real_axis(&xs));
    branches.extend(trace_offaxis(&r, &xs, tol));
    let half_height = 0.5 * (x_max - x_min);
    branches.extend(
        full_line_abscissas(&r, x_min, x_max)
            .into_iter()
            .map(|x0| vertical_line(x0, half_height, samples)),
    );
    sort_branches(&mut branches);
    Ok(branches)
}

struct Track {
    points: Vec<(f64, f64)>,
    last_u: f64,
    steps: Vec<f64>,
}

impl Track {
    fn push(&mut self, x: f64, u: f64) {
        if let Some(&(px, _)) = self.points.last() {
            if px == x {
                return;
            }
            self.steps.push(libm::fabs(u - self.last_u));
        }
        self.points.push((x, libm::sqrt(u)));
        self.last_u = u;
    }

    fn median_step(&self) -> Option<f64> {
        if self.steps.len() < 3 {
            return None;
        }
        let mut s = self.steps.clone();
        s.sort_by(f64::total_cmp);
        Some(s[s.len() / 2])
    }

    fn is_jump(&self, du: f64, u: f64) -> bool {
        match self.median_step() {
            Some(m) => du > JUMP_FACTOR * m && du > 1e-9 * (1.0 + libm::fabs(u)),
            None => false,
        }
    }

    /// How far a refined endpoint may sit from the last tracked value.
    /// Excludes ends chasing a pole of `u`.
    fn accepts_endpoint(&self, u: f64) -> bool {
        let slack = self.median_step().unwrap_or(0.0) * JUMP_FACTOR;
        libm::fabs(u - self.last_u) <= libm::fabs(self.last_u) + slack
    }
}

fn trace_offaxis(r: &ReducedImagPoly, xs: &[f64], tol: f64) -> Vec<LocusBranch> {
    let count = |x: f64| offaxis_u(r, x, tol).map(|us| us.len());
    let nearest = |x: f64, target: f64| -> Option<f64> {
        offaxis_u(r, x, tol)?
            .into_iter()
            .min_by(|a, b| libm::fabs(a - target).total_cmp(&libm::fabs(b - target)))
    };

    let mut open: Vec<Track> = Vec::new();
    let mut done: Vec<Track> = Vec::new();
    let mut prev: Option<(f64, usize)> = None;

    for &x in xs {
        let Some(us) = offaxis_u(r, x, tol) else {
            // Full vertical line; emitted separately.
            continue;
        };

        let mut pairs: Vec<(f64, usize, usize)> = open
            .iter()
            .enumerate()
            .flat_map(|(ti, t)| {
                us.iter()
                    .enumerate()
                    .map(move |(ri, &u)| (libm::fabs(u - t.last_u), ti, ri))
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut track_hit = alloc::vec![None; open.len()];
        let mut root_used = alloc::vec![false; us.len()];
        for (du, ti, ri) in pairs {
            if track_hit[ti].is_some() || root_used[ri] {
                continue;
            }
            if open[ti].is_jump(du, us[ri]) {
                continue;
            }
            track_hit[ti] = Some(ri);
            root_used[ri] = true;
        }

        let counts_differ = |n_here: usize| prev.map(|(_, n)| n != n_here).unwrap_or(false);

        let mut still_open = Vec::with_capacity(open.len());
        for (ti, mut track) in open.drain(..).enumerate() {
            match track_hit[ti] {
                Some(ri) => {
                    track.push(x, us[ri]);
                    still_open.push(track);
                }
                None => {
                    if let Some((px, pn)) = prev {
                        if counts_differ(us.len()) {
                            let end = bisect(px, x, |m| count(m) == Some(pn), true);
                            if let Some(u) = nearest(end, track.last_u) {
                                if track.accepts_endpoint(u) {
                                    track.push(end, u);
                                }
                            }
                        }
                    }
                    done.push(track);
                }
            }
        }
        open = still_open;

        for (ri, &u) in us.iter().enumerate() {
            if root_used[ri] {
                continue;
            }
            let mut track = Track {
                points: Vec::new(),
                last_u: u,
                steps: Vec::new(),
            };
            if let Some((px, _)) = prev {
                if counts_differ(us.len()) {
                    let start = bisect(px, x, |m| count(m) == Some(us.len()), false);
                    if let Some(u0) = nearest(start, u) {
                        if libm::fabs(u0 - u) <= libm::fabs(u) {
                            track.push(start, u0);
                        }
                    }
                }
            }
            track.push(x, u);
            open.push(track);
        }

        prev = Some((x, us.len()));
    }
    done.extend(open);

    done.into_iter()
        .filter(|t| t.points.len() >= 2)
        .map(|t| LocusBranch {
            kind: BranchKind::OffAxis,
            points: t.points,
            mirror: true,
        })
        .collect()
}

/// Bisection on `[lo, hi]` for the point where `same_as_end` flips.
///
/// With `keep_lo`, `same_as_end` describes `lo` and the returned abscissa is
/// the last one still matching it; otherwise it describes `hi`.
fn bisect(mut lo: f64, mut hi: f64, same_as_end: impl Fn(f64) -> bool, keep_lo: bool) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ENDPOINT_TOL * f64::max(1.0, libm::fabs(lo)) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let matches = same_as_end(mid);
        if matches == keep_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if keep_lo {
        lo
    } else {
        hi
    }
}
