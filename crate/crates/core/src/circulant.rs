//! Circulant matrices: associated polynomials, eigenvalues at roots of unity
//! and the cyclotomic singularity test. This is the whole solver for Cayley
//! graphs over `C_n`.

use num_complex::Complex64;

use crate::matrix::IntMatrix;
use crate::nullity::{cyclotomic_contributions, NullityReport, Source};
use crate::poly::{evaluate_at_root_of_unity, IntPolynomial};

/// `circ(y)`: row `i` is the first row rotated `i` places to the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantMatrix {
    first_row: Vec<i64>,
}

impl CirculantMatrix {
    pub fn new(first_row: Vec<i64>) -> Self {
        assert!(!first_row.is_empty(), "circulant of order 0");
        Self { first_row }
    }

    pub fn order(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[i64] {
        &self.first_row
    }

    pub fn expand(&self) -> IntMatrix {
        let n = self.order();
        IntMatrix::from_fn(n, n, |i, j| self.first_row[(j + n - i) % n])
    }

    /// `Ψ*(x) = y_0 + y_1 x + ... + y_{n-1} x^{n-1}`.
    pub fn associated_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.first_row.iter().copied())
    }

    /// `Ψ*(ω^j)` for `j = 0..n`, `ω = e^{2πi/n}`, in index order.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let poly = self.associated_polynomial();
        let n = self.order();
        (0..n)
            .map(|j| evaluate_at_root_of_unity(&poly, n, j))
            .collect()
    }

    /// Nullity as `Σ φ(d)` over the `d | n` with `Φ_d | Ψ*`. Exact.
    pub fn nullity(&self) -> NullityReport {
        self.nullity_tagged(Source::PsiPrime)
    }

    pub(crate) fn nullity_tagged(&self, source: Source) -> NullityReport {
        NullityReport::from_contributions(cyclotomic_contributions(
            &self.associated_polynomial(),
            self.order(),
            source,
        ))
    }
}
