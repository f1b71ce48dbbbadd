//! Complex inputs with real outputs for real-coefficient polynomials.
//!
//! For `f` with real coefficients, the points `z = x + iy` where `f(z)` is
//! real form the real axis plus a family of curves off the axis. Lifting
//! each such point to `(x, y, f(z))` yields a set of space curves that every
//! horizontal plane `height = w` meets in exactly `deg f` points counted with
//! multiplicity, so the non-real roots of `f − w` become visible.
//!
//! * [`poly`] and [`expand`]: polynomial values, derivatives and the split
//!   `f(x + iy) = P(x, y) + iQ(x, y)` with `Q = y·R(x, y²)`.
//! * [`locus`]: the restricted domain as labelled branches, closed forms for
//!   degrees 2 to 4, cubic classification and lifting into space.
//! * [`roots`]: all roots with multiplicities and horizontal slices.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod complex;
pub mod expand;
pub mod locus;
pub mod poly;
pub mod roots;

pub use complex::ComplexPoint;
pub use expand::{expand_real_imag, reduce_imag, BivariatePoly, ReducedImagPoly};
pub use locus::{
    classify_cubic, closed_form_locus, cubic_hyperbola_check, lift_to_space, solve_offaxis_at,
    sweep_locus, BranchKind, ConicCheck, CubicCategory, CubicClassification, LocusBranch,
    LocusError, OffAxis, SpaceCurve,
};
pub use poly::{PolyError, RealPolynomial, MAX_DEGREE};
pub use roots::{
    find_roots, find_roots_with, slice, verify_roots_on_locus, RootError, RootInfo, RootOptions,
    SliceResult,
};
