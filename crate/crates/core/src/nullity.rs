//! Per-divisor cyclotomic nullity reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, totient};
use crate::poly::{cyclotomic, divides, IntPolynomial};

/// Which polynomial a cyclotomic factor was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// `Δ⁺ = Ψ' + Ψ''`, associated with `M + N`.
    DeltaPlus,
    /// `Δ⁻ = Ψ' - Ψ''`, associated with `M - N`.
    DeltaMinus,
    /// `Ψ'`, the associated polynomial of a circulant.
    PsiPrime,
}

impl Source {
    /// `+1` for `Δ⁺` and `Ψ'`, `-1` for `Δ⁻`.
    pub fn sign(self) -> f64 {
        match self {
            Source::DeltaMinus => -1.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::DeltaPlus => "delta_plus",
            Source::DeltaMinus => "delta_minus",
            Source::PsiPrime => "psi_prime",
        })
    }
}

impl std::str::FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "delta_plus" | "delta-plus" | "plus" | "+" => Ok(Source::DeltaPlus),
            "delta_minus" | "delta-minus" | "minus" | "-" => Ok(Source::DeltaMinus),
            "psi_prime" | "psi-prime" | "psi" => Ok(Source::PsiPrime),
            other => Err(format!(
                "unknown source `{other}` (expected delta_plus, delta_minus or psi_prime)"
            )),
        }
    }
}

/// `Φ_d` divides the polynomial named by `source`, contributing `φ(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Contribution {
    pub d: usize,
    pub source: Source,
    pub phi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NullityReport {
    pub singular: bool,
    pub total: usize,
    pub contributions: Vec<Contribution>,
}

impl NullityReport {
    pub fn from_contributions(contributions: Vec<Contribution>) -> Self {
        let total = contributions.iter().map(|c| c.phi).sum();
        Self {
            singular: total > 0,
            total,
            contributions,
        }
    }

    pub fn merge(mut self, other: NullityReport) -> Self {
        self.contributions.extend(other.contributions);
        Self::from_contributions(self.contributions)
    }
}

/// Every `d | n` with `Φ_d | poly`, tagged with `source`.
pub fn cyclotomic_contributions(poly: &IntPolynomial, n: usize, source: Source) -> Vec<Contribution> {
    divisors(n)
        .into_iter()
        .filter(|&d| divides(&cyclotomic(d), poly).expect("cyclotomic polynomials are monic"))
        .map(|d| Contribution {
            d,
            source,
            phi: totient(d),
        })
        .collect()
}
