//! The cyclotomic pipeline for Cayley graphs over `D_n`: the polynomials
//! `Ψ'`, `Ψ''`, `Δ⁺`, `Δ⁻`, the `[M N; N M]` block split, the per-divisor
//! nullity formula, the prime-power non-singularity criterion, and the
//! dispatch between the `n`-vertex and `2n`-vertex transitive cases.
//!
//! Nothing here is trusted blindly: [`crate::audit`] checks every output
//! against [`crate::oracle`].

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::circulant::CirculantMatrix;
use crate::error::{Error, Result};
use crate::group::{build_cyclic_adjacency, BlockAdjacency, ConnectingSet};
use crate::matrix::IntMatrix;
use crate::nullity::{cyclotomic_contributions, NullityReport, Source};
use crate::oracle::{exact_nullity, symmetric_eigenvalues, JACOBI_TOL};
use crate::poly::IntPolynomial;

/// Per-eigenvalue tolerance when comparing spectra.
pub const SPECTRUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaPair {
    pub psi_prime: IntPolynomial,
    pub psi_double_prime: IntPolynomial,
    pub delta_plus: IntPolynomial,
    pub delta_minus: IntPolynomial,
}

pub fn build_deltas(cs: &ConnectingSet) -> DeltaPair {
    let psi_prime = IntPolynomial::from_exponents(cs.rotations().iter().copied());
    let psi_double_prime = IntPolynomial::from_exponents(cs.reflections().iter().copied());
    DeltaPair {
        delta_plus: &psi_prime + &psi_double_prime,
        delta_minus: &psi_prime - &psi_double_prime,
        psi_prime,
        psi_double_prime,
    }
}

/// Dense `M + N` and `M - N`.
pub fn split_blocks(adj: &BlockAdjacency) -> (IntMatrix, IntMatrix) {
    let m = adj.m();
    let nb = adj.n_block();
    (&m + &nb, &m - &nb)
}

/// Outcome of comparing `A` against its two diagonal blocks `M ± N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSplit {
    /// Largest gap between sorted `eig(A)` and sorted `eig(M+N) ⊎ eig(M-N)`.
    pub max_eigen_gap: f64,
    pub nullity_a: usize,
    pub nullity_plus: usize,
    pub nullity_minus: usize,
}

impl SpectrumSplit {
    pub fn eigen_match(&self) -> bool {
        self.max_eigen_gap <= SPECTRUM_TOL
    }

    pub fn nullity_additive(&self) -> bool {
        self.nullity_a == self.nullity_plus + self.nullity_minus
    }

    pub fn holds(&self) -> bool {
        self.eigen_match() && self.nullity_additive()
    }
}

/// Checks `eig(A) = eig(M+N) ⊎ eig(M-N)` numerically and
/// `null(A) = null(M+N) + null(M-N)` exactly.
pub fn spectrum_split_check(adj: &BlockAdjacency) -> Result<SpectrumSplit> {
    let a = adj.expand();
    let (plus, minus) = split_blocks(adj);
    let eig_a = symmetric_eigenvalues(&a.to_real(), JACOBI_TOL)?;
    let mut eig_blocks = symmetric_eigenvalues(&plus.to_real(), JACOBI_TOL)?;
    eig_blocks.extend(symmetric_eigenvalues(&minus.to_real(), JACOBI_TOL)?);
    eig_blocks.sort_by(f64::total_cmp);
    let max_eigen_gap = eig_a
        .iter()
        .zip(&eig_blocks)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumSplit {
        max_eigen_gap,
        nullity_a: exact_nullity(&a)?.nullity,
        nullity_plus: exact_nullity(&plus)?.nullity,
        nullity_minus: exact_nullity(&minus)?.nullity,
    })
}

/// `Σ φ(d)` over `d | n` and over both `Δ⁺` and `Δ⁻`; a `d` whose cyclotomic
/// divides both polynomials is counted once for each.
pub fn paper_nullity_dihedral(cs: &ConnectingSet) -> NullityReport {
    let deltas = build_deltas(cs);
    let mut hits = cyclotomic_contributions(&deltas.delta_plus, cs.n(), Source::DeltaPlus);
    hits.extend(cyclotomic_contributions(
        &deltas.delta_minus,
        cs.n(),
        Source::DeltaMinus,
    ));
    NullityReport::from_contributions(hits)
}

/// Nullity of `Cay(C_n, H')` from the circulant adjacency matrix.
pub fn paper_nullity_cyclic(cs: &ConnectingSet) -> Result<NullityReport> {
    let row = build_cyclic_adjacency(cs, false)?;
    Ok(CirculantMatrix::new(row).nullity_tagged(Source::PsiPrime))
}

/// The two conditions of the `D_{p^s}` non-singularity criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPowerCriterion {
    pub p: usize,
    pub s: u32,
    /// `|H ∩ C_n| ≠ |H ∩ C_n b|`.
    pub size_unbalanced: bool,
    /// `|H| < p`.
    pub small: bool,
    pub criterion_met: bool,
}

/// Evaluates the criterion for `n = p^s`. A met criterion predicts a
/// non-singular graph; it is a claim to audit, not a verdict.
pub fn p_power_criterion(cs: &ConnectingSet) -> Result<PPowerCriterion> {
    let (p, s) = prime_power(cs.n()).ok_or(Error::NotPrimePower(cs.n()))?;
    let size_unbalanced = cs.rotations().len() != cs.reflections().len();
    let small = cs.len() < p;
    Ok(PPowerCriterion {
        p,
        s,
        size_unbalanced,
        small,
        criterion_met: size_unbalanced && small,
    })
}

/// The two orbit shapes of a faithful transitive `D_n` action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitiveCase {
    /// `|V| = n`: `C_n` acts regularly, the graph is `Cay(C_n, H')`.
    Cyclic,
    /// `|V| = 2n`: `D_n` acts regularly, the graph is `Cay(D_n, H)`.
    Dihedral,
}

pub fn dispatch_transitive_case(vertices: usize, n: usize) -> Result<TransitiveCase> {
    if vertices == n {
        Ok(TransitiveCase::Cyclic)
    } else if vertices == 2 * n {
        Ok(TransitiveCase::Dihedral)
    } else {
        Err(Error::UnsupportedOrbitSize { vertices, n })
    }
}

/// Routes to [`paper_nullity_cyclic`] or [`paper_nullity_dihedral`].
pub fn paper_nullity(cs: &ConnectingSet, case: TransitiveCase) -> Result<NullityReport> {
    match case {
        TransitiveCase::Cyclic => paper_nullity_cyclic(cs),
        TransitiveCase::Dihedral => Ok(paper_nullity_dihedral(cs)),
    }
}
