//! Splitting `f(x + iy)` into its real part `P(x, y)` and imaginary part
//! `Q(x, y)`, and factoring `Q = y·R(x, y²)`.
//!
//! For real coefficients every monomial of `Q` carries an odd power of `y`,
//! so the division by `y` is exact. The zero set of `R` (together with the
//! real axis `y = 0`) is the set of complex inputs with real outputs.
//!
//! For the general cubic `az³ + bz² + cz + d` this gives
//! `R(x, u) = 3ax² + 2bx + c − a·u`. The textbook derivation is sometimes
//! printed with `ay³` in place of `ay²`; the square is the correct power.

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::{RealPolynomial, MAX_DEGREE};

/// Rows of Pascal's triangle up to `MAX_DEGREE`, exact in `u64`.
fn binomials() -> [[u64; MAX_DEGREE + 1]; MAX_DEGREE + 1] {
    let mut t = [[0u64; MAX_DEGREE + 1]; MAX_DEGREE + 1];
    for n in 0..=MAX_DEGREE {
        t[n][0] = 1;
        for k in 1..=n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
        }
    }
    t
}

/// Dense real polynomial in two variables, `coeff(j, k)` multiplying `x^j y^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePoly {
    dim: usize,
    coeffs: Vec<f64>,
}

impl BivariatePoly {
    fn zeros(degree: usize) -> Self {
        let dim = degree + 1;
        Self {
            dim,
            coeffs: vec![0.0; dim * dim],
        }
    }

    /// Highest power stored in either variable.
    pub fn degree_bound(&self) -> usize {
        self.dim - 1
    }

    pub fn coeff(&self, j: usize, k: usize) -> f64 {
        if j < self.dim && k < self.dim {
            self.coeffs[j * self.dim + k]
        } else {
            0.0
        }
    }

    fn coeff_mut(&mut self, j: usize, k: usize) -> &mut f64 {
        &mut self.coeffs[j * self.dim + k]
    }

    /// Nonzero terms as `(j, k, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim)
            .flat_map(move |j| (0..self.dim).map(move |k| (j, k, self.coeff(j, k))))
            .filter(|t| t.2 != 0.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (0..self.dim).rev().fold(0.0, |acc, j| {
            let row = (0..self.dim)
                .rev()
                .fold(0.0, |r, k| r * y + self.coeff(j, k));
            acc * x + row
        })
    }

    /// `Σ |c_jk·x^j·y^k|`, the natural scale for a residual at `(x, y)`.
    pub fn magnitude(&self, x: f64, y: f64) -> f64 {
        let (ax, ay) = (libm::fabs(x), libm::fabs(y));
        (0..self.dim).rev().fold(0.0, |acc, j| {
            let row = (0..self.dim)
                .rev()
                .fold(0.0, |r, k| r * ay + libm::fabs(self.coeff(j, k)));
            acc * ax + row
        })
    }

    /// `|value| / magnitude`, or 0 when the magnitude vanishes.
    pub fn relative_residual(&self, x: f64, y: f64) -> f64 {
        let m = self.magnitude(x, y);
        if m == 0.0 {
            0.0
        } else {
            libm::fabs(self.eval(x, y)) / m
        }
    }
}

/// `R(x, u)` with `Q(x, y) = y·R(x, y²)`; `coeff(j, k)` multiplies `x^j u^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedImagPoly {
    x_dim: usize,
    u_dim: usize,
    coeffs: Vec<f64>,
}

impl ReducedImagPoly {
    pub fn coeff(&self, j: usize, k: usize) -> f64 {
        if j < self.x_dim && k < self.u_dim {
            self.coeffs[j * self.u_dim + k]
        } else {
            0.0
        }
    }

    /// Degree in `u`, always `⌊(n − 1)/2⌋` for a degree-`n` source.
    pub fn u_degree(&self) -> usize {
        self.u_dim - 1
    }

    /// Degree bound in `x`, `n − 1` for a degree-`n` source.
    pub fn x_degree(&self) -> usize {
        self.x_dim - 1
    }

    pub fn eval(&self, x: f64, u: f64) -> f64 {
        let c = self.at_x(x);
        c.iter().rev().fold(0.0, |acc, &ck| acc * u + ck)
    }

    /// Coefficients of the univariate polynomial `u ↦ R(x, u)`, ascending.
    pub fn at_x(&self, x: f64) -> Vec<f64> {
        (0..self.u_dim)
            .map(|k| (0..self.x_dim).rev().fold(0.0, |acc, j| acc * x + self.coeff(j, k)))
            .collect()
    }

    /// `Σ_j |coeff(j, k)·x^j|` for each `k`; per-coefficient scale of [`at_x`].
    ///
    /// [`at_x`]: ReducedImagPoly::at_x
    pub fn magnitudes_at_x(&self, x: f64) -> Vec<f64> {
        let ax = libm::fabs(x);
        (0..self.u_dim)
            .map(|k| {
                (0..self.x_dim)
                    .rev()
                    .fold(0.0, |acc, j| acc * ax + libm::fabs(self.coeff(j, k)))
            })
            .collect()
    }

    /// Coefficients (ascending in `x`) of the polynomial multiplying `u^k`.
    pub fn u_coefficient(&self, k: usize) -> Vec<f64> {
        (0..self.x_dim).map(|j| self.coeff(j, k)).collect()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| f64::max(m, libm::fabs(*c)))
    }
}

/// `P + iQ ≡ f(x + iy)` via the binomial expansion of each power.
pub fn expand_real_imag(f: &RealPolynomial) -> (BivariatePoly, BivariatePoly) {
    let n = f.degree();
    let binom = binomials();
    let mut p = BivariatePoly::zeros(n);
    let mut q = BivariatePoly::zeros(n);
    for (power, &a) in f.coeffs().iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        // (x + iy)^power = Σ_m C(power, m) x^(power-m) (iy)^m
        for (m, &nck) in binom[power].iter().enumerate().take(power + 1) {
            let c = a * nck as f64;
            let j = power - m;
            match m % 4 {
                0 => *p.coeff_mut(j, m) += c,
                1 => *q.coeff_mut(j, m) += c,
                2 => *p.coeff_mut(j, m) -= c,
                _ => *q.coeff_mut(j, m) -= c,
            }
        }
    }
    (p, q)
}

/// `R` with `Q(x, y) = y·R(x, y²)`.
///
/// Built directly from the coefficients: the constant term of `f` never
/// reaches `R`, so `reduce_imag(f)` and `reduce_imag(f + r)` agree bit for bit.
pub fn reduce_imag(f: &RealPolynomial) -> ReducedImagPoly {
    let (_, q) = expand_real_imag(f);
    let n = f.degree().max(1);
    let x_dim = n;
    let u_dim = (n - 1) / 2 + 1;
    let mut coeffs = vec![0.0; x_dim * u_dim];
    for (j, k, c) in q.terms() {
        debug_assert!(k % 2 == 1, "Q has an even power of y");
        coeffs[j * u_dim + (k - 1) / 2] = c;
    }
    ReducedImagPoly {
        x_dim,
        u_dim,
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> RealPolynomial {
        RealPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn pascal_rows() {
        let t = binomials();
        assert_eq!(t[4], [1, 4, 6, 4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(t[20][10], 184_756);
    }

    #[test]
    fn z_squared_plus_four() {
        let (re, im) = expand_real_imag(&p(&[4.0, 0.0, 1.0]));
        let re_terms: Vec<_> = re.terms().collect();
        assert_eq!(re_terms, vec![(0, 0, 4.0), (0, 2, -1.0), (2, 0, 1.0)]);
        let im_terms: Vec<_> = im.terms().collect();
        assert_eq!(im_terms, vec![(1, 1, 2.0)]);
    }

    #[test]
    fn general_quadratic_imag_part() {
        let (a, b, c) = (3.0, -2.0, 7.0);
        let (_, im) = expand_real_imag(&p(&[c, b, a]));
        let im_terms: Vec<_> = im.terms().collect();
        // 2axy + by
        assert_eq!(im_terms, vec![(0, 1, b), (1, 1, 2.0 * a)]);
    }

    #[test]
    fn general_quartic_imag_part() {
        let (a, b, c, d, e) = (2.0, 3.0, 5.0, 7.0, 11.0);
        let (_, im) = expand_real_imag(&p(&[e, d, c, b, a]));
        let mut im_terms: Vec<_> = im.terms().collect();
        im_terms.sort_by_key(|t| (t.0, t.1));
        // 4ax³y − 4axy³ + 3bx²y − by³ + 2cxy + dy
        assert_eq!(
            im_terms,
            vec![
                (0, 1, d),
                (0, 3, -b),
                (1, 1, 2.0 * c),
                (1, 3, -4.0 * a),
                (2, 1, 3.0 * b),
                (3, 1, 4.0 * a),
            ]
        );
    }

    #[test]
    fn reduced_forms_for_low_degrees() {
        let (a, b, c, d, e) = (2.0, 3.0, 5.0, 7.0, 11.0);

        let r2 = reduce_imag(&p(&[c, b, a]));
        assert_eq!(r2.u_degree(), 0);
        assert_eq!(r2.u_coefficient(0), vec![b, 2.0 * a]);

        let r3 = reduce_imag(&p(&[d, c, b, a]));
        assert_eq!(r3.u_degree(), 1);
        assert_eq!(r3.u_coefficient(0), vec![c, 2.0 * b, 3.0 * a]);
        assert_eq!(r3.u_coefficient(1), vec![-a, 0.0, 0.0]);

        let r4 = reduce_imag(&p(&[e, d, c, b, a]));
        assert_eq!(r4.u_degree(), 1);
        assert_eq!(r4.u_coefficient(0), vec![d, 2.0 * c, 3.0 * b, 4.0 * a]);
        assert_eq!(r4.u_coefficient(1), vec![-b, -4.0 * a, 0.0, 0.0]);
    }

    #[test]
    fn u_degree_formula() {
        for n in 1..=MAX_DEGREE {
            let mut c = vec![0.0; n + 1];
            c[n] = 1.0;
            assert_eq!(reduce_imag(&p(&c)).u_degree(), (n - 1) / 2, "degree {n}");
        }
    }

    #[test]
    fn linear_has_constant_r() {
        let r = reduce_imag(&p(&[5.0, -2.0]));
        assert_eq!(r.u_degree(), 0);
        assert_eq!(r.at_x(123.0), vec![-2.0]);
    }
}
