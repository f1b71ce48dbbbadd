//! All complex roots of a real polynomial, with multiplicities, and the
//! horizontal-plane slices `f(z) = w`.
//!
//! Roots come from simultaneous iteration (Ehrlich–Aberth, with a
//! Durand–Kerner fallback when Aberth stalls) started from a deterministic
//! circle of guesses. Iterates are then grouped into clusters using
//! Weierstrass inclusion discs: a connected group of `m` overlapping discs
//! holds exactly `m` roots, and is reported as one root of multiplicity `m`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::complex::ComplexPoint;
use crate::expand::{expand_real_imag, BivariatePoly};
use crate::poly::RealPolynomial;

pub const MAX_ITERATIONS: usize = 500;
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

/// Angular offset of the first initial guess. Any value that is not a
/// multiple of π/n breaks the conjugate symmetry of the starting circle.
const START_ANGLE: f64 = 0.4;
/// Iterations without a newly converged root before switching to Durand–Kerner.
const STALL_WINDOW: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOptions {
    /// Bound on the relative residual `|f(z)| / Σ|aₖ||z|ᵏ` of every reported root.
    pub tol: f64,
    /// Iterates closer than `cluster_tol·(1 + |z|)` are merged.
    pub cluster_tol: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_ROOT_TOL,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            max_iterations: MAX_ITERATIONS,
        }
    }
}

impl RootOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RootInfo {
    pub location: ComplexPoint,
    pub multiplicity: usize,
    /// `|f(root)| / Σ|aₖ||root|ᵏ`.
    pub residual: f64,
    /// `|Q(x, y)|` relative to the magnitude of `Q`'s terms at the root.
    pub locus_residual: f64,
}

impl RootInfo {
    pub fn is_real(&self) -> bool {
        self.location.im == 0.0
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("root iteration did not converge after {iterations} iterations (worst residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        best: Vec<ComplexPoint>,
        residual: f64,
    },
}

/// The intersections of the lifted graph with the horizontal plane at height `level`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SliceResult {
    pub level: f64,
    pub intersections: Vec<RootInfo>,
    pub total_multiplicity: usize,
}

/// All roots of `f` with default clustering; `tol` bounds each relative residual.
pub fn find_roots(f: &RealPolynomial, tol: f64) -> Result<Vec<RootInfo>, RootError> {
    find_roots_with(f, &RootOptions::with_tol(tol))
}

pub fn find_roots_with(
    f: &RealPolynomial,
    opts: &RootOptions,
) -> Result<Vec<RootInfo>, RootError> {
    let (_, q) = expand_real_imag(f);
    let locations = root_clusters(f, opts)?;
    Ok(locations
        .into_iter()
        .map(|(z, multiplicity)| RootInfo {
            location: z,
            multiplicity,
            residual: relative_residual(f, z),
            locus_residual: q.relative_residual(z.re, z.im),
        })
        .collect())
}

/// Roots of `f − level`. Since `level` is real, `Q` is unchanged and every
/// intersection lies on the restricted domain of `f`.
pub fn slice(f: &RealPolynomial, level: f64, tol: f64) -> Result<SliceResult, RootError> {
    let shifted = f.shifted(level);
    let intersections = find_roots(&shifted, tol)?;
    let total_multiplicity = intersections.iter().map(|r| r.multiplicity).sum();
    Ok(SliceResult {
        level,
        intersections,
        total_multiplicity,
    })
}

/// `|Q(re, im)| / scale` for each root.
pub fn verify_roots_on_locus(roots: &[RootInfo], q: &BivariatePoly) -> Vec<f64> {
    roots
        .iter()
        .map(|r| q.relative_residual(r.location.re, r.location.im))
        .collect()
}

pub(crate) fn relative_residual(f: &RealPolynomial, z: ComplexPoint) -> f64 {
    let m = f.magnitude_at(z);
    if m == 0.0 {
        0.0
    } else {
        f.horner(z).abs() / m
    }
}

/// Raw simultaneous iteration; returns the `n` iterates and the iteration count.
fn iterate(f: &RealPolynomial, opts: &RootOptions) -> Result<(Vec<ComplexPoint>, usize), RootError> {
    let n = f.degree();
    let monic = RealPolynomial::new(f.monic_coeffs()).expect("monic copy of a valid polynomial");
    let df = monic.derivative(1);

    let radius = 1.0
        + monic.coeffs()[..n]
            .iter()
            .fold(0.0, |m: f64, c| m.max(libm::fabs(*c)));
    let mut z: Vec<ComplexPoint> = (0..n)
        .map(|k| ComplexPoint::from_polar(radius, START_ANGLE + TAU * k as f64 / n as f64))
        .collect();

    let eps = f64::EPSILON;
    let mut done = vec![false; n];
    let mut use_aberth = true;
    let mut last_progress = 0;
    let mut iterations = 0;

    while iterations < opts.max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        let mut progressed = false;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let zk = z[k];
            let value = monic.horner(zk);
            if value.abs() <= 4.0 * n as f64 * eps * monic.magnitude_at(zk) {
                done[k] = true;
                progressed = true;
                continue;
            }
            let step = if use_aberth {
                let ratio = value / df.horner(zk);
                let repulsion = z
                    .iter()
                    .enumerate()
                    .filter(|&(j, zj)| j != k && *zj != zk)
                    .fold(ComplexPoint::ZERO, |acc, (_, &zj)| acc + (zk - zj).recip());
                ratio / (ComplexPoint::ONE - ratio * repulsion)
            } else {
                let denom = z
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .fold(ComplexPoint::ONE, |acc, (_, &zj)| acc * (zk - zj));
                value / denom
            };
            if !step.is_finite() {
                // Perturb off a critical point or a coincidence and retry next sweep.
                z[k] = zk + ComplexPoint::new(1e-3, 1e-3).scale(1.0 + zk.abs());
                continue;
            }
            z[k] = zk - step;
            if step.abs() <= eps * zk.abs() {
                done[k] = true;
                progressed = true;
            }
        }
        if progressed {
            last_progress = iterations;
        } else if use_aberth && iterations - last_progress >= STALL_WINDOW {
            use_aberth = false;
            last_progress = iterations;
        }
    }

    let worst = z
        .iter()
        .map(|&zk| relative_residual(f, zk))
        .fold(0.0, f64::max);
    if worst.is_nan() || worst > opts.tol {
        return Err(RootError::NoConvergence {
            iterations,
            best: z,
            residual: worst,
        });
    }
    Ok((z, iterations))
}

/// Clustered root locations with multiplicities, sorted by (re, im).
fn root_clusters(
    f: &RealPolynomial,
    opts: &RootOptions,
) -> Result<Vec<(ComplexPoint, usize)>, RootError> {
    let n = f.degree();
    if n == 1 {
        let c = f.coeffs();
        return Ok(vec![(ComplexPoint::real(-c[0] / c[1]), 1)]);
    }
    let (z, _) = iterate(f, opts)?;

    // Weierstrass inclusion radii.
    let lead = f.leading();
    let radii: Vec<f64> = (0..n)
        .map(|k| {
            let denom = (0..n)
                .filter(|&j| j != k && z[j] != z[k])
                .fold(ComplexPoint::real(lead), |acc, j| acc * (z[k] - z[j]));
            let w = (f.horner(z[k]) / denom).abs() * n as f64;
            let floor = opts.cluster_tol * (1.0 + z[k].abs());
            if w.is_finite() {
                w.max(floor)
            } else {
                floor
            }
        })
        .collect();

    // Union of overlapping discs.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).abs() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[r]].push(i);
    }

    let mut clusters: Vec<Cluster> = groups
        .iter()
        .map(|members| {
            let m = members.len();
            let mean = members
                .iter()
                .fold(ComplexPoint::ZERO, |acc, &i| acc + z[i])
                .scale(1.0 / m as f64);
            let spread = members
                .iter()
                .map(|&i| (z[i] - mean).abs() + radii[i])
                .fold(0.0, f64::max);
            Cluster {
                center: mean,
                multiplicity: m,
                radius: spread,
            }
        })
        .collect();

    for c in clusters.iter_mut() {
        if libm::fabs(c.center.im) <= c.radius {
            c.center = ComplexPoint::real(c.center.re);
        }
        c.center = refine(f, c.center, c.multiplicity, c.radius);
    }
    pair_conjugates(&mut clusters);

    let mut out: Vec<(ComplexPoint, usize)> = clusters
        .into_iter()
        .map(|c| (c.center, c.multiplicity))
        .collect();
    out.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then(a.0.im.total_cmp(&b.0.im))
    });
    Ok(out)
}

struct Cluster {
    center: ComplexPoint,
    multiplicity: usize,
    radius: f64,
}

/// Newton on `f^(m−1)`, whose root is simple where `f` has a root of
/// multiplicity `m`. The result is kept only if it improves the residual and
/// stays inside the cluster disc.
fn refine(f: &RealPolynomial, start: ComplexPoint, m: usize, radius: f64) -> ComplexPoint {
    let g = f.derivative(m - 1);
    let dg = g.derivative(1);
    if dg.is_zero() {
        return start;
    }
    let mut z = start;
    for _ in 0..30 {
        let step = g.horner(z) / dg.horner(z);
        if !step.is_finite() {
            break;
        }
        z = z - step;
        if start.im == 0.0 {
            z.im = 0.0;
        }
        if step.abs() <= f64::EPSILON * (1.0 + z.abs()) {
            break;
        }
    }
    let inside = (z - start).abs() <= radius;
    let mag = |p: ComplexPoint| f.magnitude_at(p).max(f64::MIN_POSITIVE);
    let better = f.horner(z).abs() / mag(z) <= f.horner(start).abs() / mag(start);
    if inside && better && z.is_finite() {
        z
    } else {
        start
    }
}

/// Forces non-real clusters into exact conjugate pairs.
fn pair_conjugates(clusters: &mut [Cluster]) {
    let upper: Vec<usize> = (0..clusters.len())
        .filter(|&i| clusters[i].center.im > 0.0)
        .collect();
    let mut taken = vec![false; clusters.len()];
    for i in upper {
        let target = clusters[i].center.conj();
        let best = (0..clusters.len())
            .filter(|&j| {
                !taken[j]
                    && clusters[j].center.im < 0.0
                    && clusters[j].multiplicity == clusters[i].multiplicity
            })
            .min_by(|&a, &b| {
                (clusters[a].center - target)
                    .abs()
                    .total_cmp(&(clusters[b].center - target).abs())
            });
        if let Some(j) = best {
            taken[j] = true;
            let avg = (clusters[i].center + clusters[j].center.conj()).scale(0.5);
            clusters[i].center = avg;
            clusters[j].center = avg.conj();
        }
    }
}

/// Distinct real roots of `Σ coeffs[k]·tᵏ`, ascending. Coefficients that are
/// negligible against the largest are dropped from the top first.
pub(crate) fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0, |m: f64, c| m.max(libm::fabs(*c)));
    let mut len = coeffs.len();
    while len > 0 && libm::fabs(coeffs[len - 1]) <= 1e-15 * scale {
        len -= 1;
    }
    let c = &coeffs[..len];
    let mut roots = match len {
        0 | 1 => Vec::new(),
        2 => vec![-c[0] / c[1]],
        3 => quadratic_real_roots(c[2], c[1], c[0]),
        _ => {
            let p = RealPolynomial::new(c.to_vec()).expect("stripped coefficients form a valid polynomial");
            match root_clusters(&p, &RootOptions::default()) {
                Ok(rs) => rs
                    .into_iter()
                    .filter(|(z, _)| z.im == 0.0)
                    .map(|(z, _)| polish_real(c, z.re))
                    .collect(),
                Err(RootError::NoConvergence { best, .. }) => best
                    .into_iter()
                    .filter(|z| libm::fabs(z.im) <= 1e-8 * (1.0 + libm::fabs(z.re)))
                    .map(|z| polish_real(c, z.re))
                    .collect(),
            }
        }
    };
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

fn quadratic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    let disc_scale = b * b + libm::fabs(4.0 * a * c);
    if disc < 0.0 && -disc > 1e-12 * disc_scale {
        return Vec::new();
    }
    if disc <= 1e-12 * disc_scale {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + libm::copysign(libm::sqrt(disc), b));
    let mut r = vec![q / a, c / q];
    r.sort_by(f64::total_cmp);
    r
}

fn polish_real(c: &[f64], mut t: f64) -> f64 {
    let eval = |t: f64| {
        c.iter().enumerate().rev().fold((0.0, 0.0), |(v, d), (_, &ck)| (v * t + ck, d * t + v))
    };
    let start = t;
    let (v0, _) = eval(t);
    for _ in 0..8 {
        let (v, d) = eval(t);
        if v == 0.0 || d == 0.0 {
            break;
        }
        let next = t - v / d;
        if !next.is_finite() {
            break;
        }
        let step = libm::fabs(next - t);
        t = next;
        if step <= f64::EPSILON * (1.0 + libm::fabs(t)) {
            break;
        }
    }
    if libm::fabs(eval(t).0) <= libm::fabs(v0) {
        t
    } else {
        start
    }
}
