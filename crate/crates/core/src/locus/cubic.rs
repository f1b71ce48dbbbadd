//! The three shapes of a cubic's restricted domain.
//!
//! Completing the square in `3ax² + 2bx + c − ay² = 0` gives the central
//! conic
//!
//! ```text
//! 3a²(x + b/(3a))² − a²y² = (b² − 3ac)/3
//! ```
//!
//! a hyperbola centred on the inflection point `x = −b/(3a)` whose axis
//! orientation follows the sign of the inflection slope `(3ac − b²)/(3a)`.
//! When `b² = 3ac` it collapses to the line pair `y = ±√3·(x + b/(3a))`.
//! Its semi-axis denominators are `(b² − 3ac)/(9a²)` in x and
//! `(b² − 3ac)/(3a²)` in y.

use super::{LocusError, DEFAULT_CLASS_TOL};
use crate::poly::RealPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CubicCategory {
    NegativeSlope,
    ZeroSlope,
    PositiveSlope,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CubicClassification {
    pub category: CubicCategory,
    pub inflection_x: f64,
    pub inflection_slope: f64,
}

impl CubicClassification {
    /// `b² = 3ac`: the off-axis conic is a pair of lines.
    pub fn is_degenerate(&self) -> bool {
        self.category == CubicCategory::ZeroSlope
    }
}

fn cubic_parts(f: &RealPolynomial) -> Result<(f64, f64, f64), LocusError> {
    if f.degree() != 3 {
        return Err(LocusError::NotCubic(f.degree()));
    }
    Ok((f.coeff(3), f.coeff(2), f.coeff(1)))
}

/// Zero band for the inflection slope, relative to the size of its terms.
fn slope_band(a: f64, b: f64, c: f64) -> f64 {
    DEFAULT_CLASS_TOL * (1.0 + (b * b) / libm::fabs(3.0 * a) + libm::fabs(c))
}

pub fn classify_cubic(f: &RealPolynomial) -> Result<CubicClassification, LocusError> {
    let (a, b, c) = cubic_parts(f)?;
    let inflection_x = -b / (3.0 * a);
    let inflection_slope = (3.0 * a * c - b * b) / (3.0 * a);
    let category = if libm::fabs(inflection_slope) <= slope_band(a, b, c) {
        CubicCategory::ZeroSlope
    } else if inflection_slope < 0.0 {
        CubicCategory::NegativeSlope
    } else {
        CubicCategory::PositiveSlope
    };
    Ok(CubicClassification {
        category,
        inflection_x,
        inflection_slope,
    })
}

/// Value of the central-conic identity at a point; zero exactly on the
/// off-axis locus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConicCheck {
    Hyperbola { residual: f64 },
    /// `b² = 3ac`; the conic is the line pair `y = ±√3·(x + b/(3a))`.
    DegenerateLines { residual: f64 },
}

impl ConicCheck {
    pub fn residual(self) -> f64 {
        match self {
            ConicCheck::Hyperbola { residual } | ConicCheck::DegenerateLines { residual } => {
                residual
            }
        }
    }
}

/// `3a²(x + b/(3a))² − a²y² − (b² − 3ac)/3` at `(x, y)`.
pub fn cubic_hyperbola_check(f: &RealPolynomial, pt: (f64, f64)) -> Result<ConicCheck, LocusError> {
    let (a, b, c) = cubic_parts(f)?;
    let (x, y) = pt;
    let shifted = x + b / (3.0 * a);
    let residual = 3.0 * a * a * shifted * shifted - a * a * y * y - (b * b - 3.0 * a * c) / 3.0;
    let degenerate = libm::fabs(3.0 * a * c - b * b) <= libm::fabs(3.0 * a) * slope_band(a, b, c);
    Ok(if degenerate {
        ConicCheck::DegenerateLines { residual }
    } else {
        ConicCheck::Hyperbola { residual }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> RealPolynomial {
        RealPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn three_categories() {
        let neg = classify_cubic(&p(&[0.0, -3.0, 0.0, 1.0])).unwrap();
        assert_eq!(neg.category, CubicCategory::NegativeSlope);
        assert_eq!(neg.inflection_slope, -3.0);
        assert_eq!(neg.inflection_x, 0.0);

        let zero = classify_cubic(&p(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(zero.category, CubicCategory::ZeroSlope);
        assert!(zero.is_degenerate());
        assert_eq!(zero.inflection_x, 0.0);

        let pos = classify_cubic(&p(&[0.0, 3.0, 0.0, 1.0])).unwrap();
        assert_eq!(pos.category, CubicCategory::PositiveSlope);
        assert_eq!(pos.inflection_slope, 3.0);
    }

    #[test]
    fn slope_matches_derivative() {
        let f = p(&[1.0, -2.0, 3.0, 0.5]);
        let k = classify_cubic(&f).unwrap();
        assert!(libm::fabs(k.inflection_x - (-3.0 / 1.5)) < 1e-15);
        let slope = f.derivative(1).eval_real(k.inflection_x);
        assert!(libm::fabs(k.inflection_slope - slope) < 1e-12);
        assert_eq!(f.derivative(2).eval_real(k.inflection_x), 0.0);
    }

    #[test]
    fn wrong_degree() {
        assert_eq!(classify_cubic(&p(&[1.0, 0.0, 1.0])), Err(LocusError::NotCubic(2)));
        assert!(cubic_hyperbola_check(&p(&[1.0, 0.0, 1.0]), (0.0, 0.0)).is_err());
    }

    #[test]
    fn hyperbola_examples() {
        let f = p(&[0.0, -3.0, 0.0, 1.0]);
        assert_eq!(
            cubic_hyperbola_check(&f, (2.0, 3.0)).unwrap(),
            ConicCheck::Hyperbola { residual: 0.0 }
        );
        let centre = cubic_hyperbola_check(&f, (0.0, 0.0)).unwrap();
        assert_eq!(centre.residual(), -3.0);

        let cube = p(&[0.0, 0.0, 0.0, 1.0]);
        for x in [-2.0, -0.5, 0.0, 0.25, 3.0] {
            for y in [libm::sqrt(3.0) * x, -libm::sqrt(3.0) * x] {
                match cubic_hyperbola_check(&cube, (x, y)).unwrap() {
                    ConicCheck::DegenerateLines { residual } => assert!(libm::fabs(residual) < 1e-12),
                    other => panic!("expected degenerate, got {other:?}"),
                }
            }
        }
    }
}
