//! Dense univariate polynomials with real coefficients.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` multiplies `z^k`.
//! Textbook notation `az² + bz + c` therefore maps to `[c, b, a]`.

use alloc::vec::Vec;
use core::fmt;

use crate::complex::ComplexPoint;

/// Highest degree accepted by [`RealPolynomial::new`].
///
/// Binomial coefficients for the real/imaginary expansion stay exact well
/// past this point; the cap keeps locus sweeps fast.
pub const MAX_DEGREE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("polynomial degree {0} exceeds the maximum of {MAX_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("evaluation overflowed")]
    Overflow,
}

/// A real-coefficient polynomial `a₀ + a₁z + … + aₙzⁿ`.
///
/// Values built through [`RealPolynomial::new`] have degree in
/// `1..=MAX_DEGREE` and a nonzero leading coefficient. [`derivative`]
/// is the one operation allowed to produce constants or the zero polynomial.
///
/// [`derivative`]: RealPolynomial::derivative
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(into = "Vec<f64>", try_from = "Vec<f64>"))]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Result<Self, PolyError> {
        let mut coeffs = coeffs.into();
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(PolyError::NonFinite { index });
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 | 1 => Err(PolyError::DegreeTooLow),
            n if n - 1 > MAX_DEGREE => Err(PolyError::DegreeTooHigh(n - 1)),
            _ => Ok(Self { coeffs }),
        }
    }

    /// Builds from coefficients written highest power first, as in `az² + bz + c`.
    pub fn from_descending(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().rev().copied().collect::<Vec<_>>())
    }

    /// Polynomial with the given roots and leading coefficient 1.
    pub fn from_roots(roots: &[f64]) -> Result<Self, PolyError> {
        let mut coeffs = alloc::vec![1.0];
        for &r in roots {
            coeffs.push(0.0);
            for k in (0..coeffs.len()).rev() {
                let lower = if k > 0 { coeffs[k - 1] } else { 0.0 };
                coeffs[k] = lower - r * coeffs[k];
            }
        }
        Self::new(coeffs)
    }

    fn from_raw(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Ascending coefficients `a₀..aₙ`. Empty for the zero polynomial.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `f(z)` by Horner's rule in complex arithmetic.
    pub fn eval_complex(&self, z: ComplexPoint) -> Result<ComplexPoint, PolyError> {
        let w = self.horner(z);
        if w.is_finite() {
            Ok(w)
        } else {
            Err(PolyError::Overflow)
        }
    }

    pub(crate) fn horner(&self, z: ComplexPoint) -> ComplexPoint {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexPoint::ZERO, |acc, &c| acc * z + ComplexPoint::real(c))
    }

    /// `Σ |aₖ|·|z|ᵏ`, the magnitude scale used for relative residuals.
    pub fn magnitude_at(&self, z: ComplexPoint) -> f64 {
        let r = z.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + libm::fabs(c))
    }

    /// The `order`-th formal derivative. Orders above the degree give the
    /// zero polynomial.
    pub fn derivative(&self, order: usize) -> RealPolynomial {
        if order >= self.coeffs.len() {
            return Self { coeffs: Vec::new() };
        }
        let coeffs = (order..self.coeffs.len())
            .map(|k| {
                let falling: f64 = (k + 1 - order..=k).map(|j| j as f64).product();
                self.coeffs[k] * falling
            })
            .collect();
        Self::from_raw(coeffs)
    }

    /// `f − w`, the polynomial whose roots are the inputs mapped to level `w`.
    pub fn shifted(&self, w: f64) -> RealPolynomial {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        coeffs[0] -= w;
        Self::from_raw(coeffs)
    }

    /// Same polynomial scaled to a monic one; used internally by root finding.
    pub(crate) fn monic_coeffs(&self) -> Vec<f64> {
        let lead = self.leading();
        self.coeffs.iter().map(|c| c / lead).collect()
    }
}

impl TryFrom<Vec<f64>> for RealPolynomial {
    type Error = PolyError;

    fn try_from(coeffs: Vec<f64>) -> Result<Self, PolyError> {
        Self::new(coeffs)
    }
}

impl From<RealPolynomial> for Vec<f64> {
    fn from(p: RealPolynomial) -> Vec<f64> {
        p.coeffs
    }
}

impl fmt::Display for RealPolynomial {
    /// Highest power first, e.g. `z^3 - 3z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let mag = libm::fabs(c);
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            }
            first = false;
            if mag != 1.0 || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}
