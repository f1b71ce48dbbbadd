//! Explicit formulas for the off-axis locus of quadratics, cubics and quartics.
//!
//! * degree 2: the vertical line `x = −b/(2a)`;
//! * degree 3: `y² = (3ax² + 2bx + c)/a`;
//! * degree 4: `y² = (4ax³ + 3bx² + 2cx + d)/(4ax + b)`, which is evaluated
//!   only away from `4ax + b = 0`; that abscissa is a vertical line of the
//!   locus exactly when the numerator vanishes there too.

use alloc::vec::Vec;

use super::{
    grid, is_full_line, real_axis, sort_branches, vertical_line, BranchKind, LocusBranch,
    LocusError,
};
use crate::expand::reduce_imag;
use crate::poly::RealPolynomial;
use crate::roots::real_roots;

/// Half-width of the excluded band around the quartic's singular abscissa,
/// as a fraction of the x range.
const SINGULAR_BAND: f64 = 1e-6;

pub fn closed_form_locus(
    f: &RealPolynomial,
    x_min: f64,
    x_max: f64,
    samples: usize,
) -> Result<Vec<LocusBranch>, LocusError> {
    let n = f.degree();
    if !(2..=4).contains(&n) {
        return Err(LocusError::UnsupportedDegree(n));
    }
    let xs = grid(x_min, x_max, samples)?;
    let half_height = 0.5 * (x_max - x_min);
    let mut branches = Vec::new();
    branches.push(real_axis(&xs));

    match n {
        2 => {
            let (b, a) = (f.coeff(1), f.coeff(2));
            let x0 = -b / (2.0 * a);
            if x0 >= x_min && x0 <= x_max {
                branches.push(vertical_line(x0, half_height, samples));
            }
        }
        3 => {
            let (c, b, a) = (f.coeff(1), f.coeff(2), f.coeff(3));
            let numer = [c, 2.0 * b, 3.0 * a];
            let radicand = |x: f64| (3.0 * a * x * x + 2.0 * b * x + c) / a;
            branches.extend(runs(&xs, &real_roots(&numer), radicand, None));
        }
        _ => {
            let (d, c, b, a) = (f.coeff(1), f.coeff(2), f.coeff(3), f.coeff(4));
            let numer = [d, 2.0 * c, 3.0 * b, 4.0 * a];
            let singular = -b / (4.0 * a);
            let radicand = |x: f64| {
                (4.0 * a * x * x * x + 3.0 * b * x * x + 2.0 * c * x + d) / (4.0 * a * x + b)
            };
            let band = SINGULAR_BAND * (x_max - x_min);
            let zeros: Vec<f64> = real_roots(&numer)
                .into_iter()
                .filter(|z| libm::fabs(z - singular) > band)
                .collect();
            branches.extend(runs(&xs, &zeros, radicand, Some((singular, band))));
            if singular >= x_min && singular <= x_max && is_full_line(&reduce_imag(f), singular) {
                branches.push(vertical_line(singular, half_height, samples));
            }
        }
    }
    sort_branches(&mut branches);
    Ok(branches)
}

/// Contiguous stretches where `radicand ≥ 0`, with its zeros inserted as
/// exact `y = 0` endpoints.
fn runs(
    xs: &[f64],
    zeros: &[f64],
    radicand: impl Fn(f64) -> f64,
    excluded: Option<(f64, f64)>,
) -> Vec<LocusBranch> {
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let mut pts: Vec<(f64, Option<f64>)> = xs
        .iter()
        .map(|&x| (x, None))
        .chain(
            zeros
                .iter()
                .filter(|&&z| z >= lo && z <= hi)
                .map(|&z| (z, Some(0.0))),
        )
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 = a.1.or(b.1);
            true
        } else {
            false
        }
    });

    let mut out = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    let mut flush = |current: &mut Vec<(f64, f64)>| {
        if current.len() >= 2 {
            out.push(LocusBranch {
                kind: BranchKind::OffAxis,
                points: core::mem::take(current),
                mirror: true,
            });
        } else {
            current.clear();
        }
    };
    for (x, forced) in pts {
        if let Some((s, band)) = excluded {
            if libm::fabs(x - s) <= band {
                flush(&mut current);
                continue;
            }
            // Crossing the singular line always separates branches.
            if let Some(&(px, _)) = current.last() {
                if (px - s) * (x - s) < 0.0 {
                    flush(&mut current);
                }
            }
        }
        let y = match forced {
            Some(y) => Some(y),
            None => {
                let v = radicand(x);
                (v >= 0.0).then(|| libm::sqrt(v))
            }
        };
        match y {
            Some(y) => current.push((x, y)),
            None => flush(&mut current),
        }
    }
    flush(&mut current);
    out
}
