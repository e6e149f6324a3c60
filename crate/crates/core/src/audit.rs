//! Per-instance audit: the cyclotomic formula against the exact-rank oracle,
//! plus the heavier consistency probes (spectrum split, null-vector
//! certificates, eigensolver self-checks).

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circulant::CirculantMatrix;
use crate::error::{Error, Result};
use crate::group::{build_block_adjacency, cayley_adjacency, ConnectingSet, Mode};
use crate::matrix::IntMatrix;
use crate::method::{build_deltas, paper_nullity_cyclic, paper_nullity_dihedral, split_blocks, SpectrumSplit};
use crate::nullity::{NullityReport, Source};
use crate::oracle::{
    count_zero_eigenvalues, exact_nullity, symmetric_eigenvalues, JACOBI_TOL, ZERO_EIGENVALUE_TOL,
};
use crate::poly::{cyclotomic, divides};

/// Relative residual bound for null-vector certificates: `‖Av‖ < tol·‖v‖`.
pub const NULL_VECTOR_TOL: f64 = 1e-8;
/// Trace identities: `|Σλ - tr A| ≤ tol·dim`, `|Σλ² - tr A²| ≤ tol·dim²`.
pub const TRACE_TOL: f64 = 1e-8;

/// How the cyclotomic total compares with the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Equal,
    /// Formula total below the true nullity. Expected; recorded as data.
    PaperUndercounts,
    /// Formula total above the true nullity. Must never happen.
    Violation,
}

impl Agreement {
    pub fn classify(paper_total: usize, oracle_nullity: usize) -> Self {
        use std::cmp::Ordering::*;
        match paper_total.cmp(&oracle_nullity) {
            Equal => Agreement::Equal,
            Less => Agreement::PaperUndercounts,
            Greater => Agreement::Violation,
        }
    }
}

impl std::fmt::Display for Agreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Agreement::Equal => "equal",
            Agreement::PaperUndercounts => "paper_undercounts",
            Agreement::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub rank: usize,
    pub nullity: usize,
}

/// Exact nullities of the two diagonal blocks, kept for disagreements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub nullity_plus: usize,
    pub nullity_minus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub mode: Mode,
    pub n: usize,
    pub rot: Vec<usize>,
    #[serde(rename = "ref")]
    pub refl: Vec<usize>,
    pub paper: NullityReport,
    pub oracle: OracleSummary,
    pub agreement: Agreement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AuditRecord {
    pub fn connecting_set(&self) -> Result<ConnectingSet> {
        ConnectingSet::new(self.n, self.rot.iter().copied(), self.refl.iter().copied())
    }

    pub fn csv_header() -> &'static str {
        "mode,n,rot,ref,paper_total,oracle_nullity,agreement"
    }

    /// One CSV row. Exponent lists are space-separated.
    pub fn csv_row(&self) -> String {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "{},{},{},{},{},{},{}",
            self.mode,
            self.n,
            join(&self.rot),
            join(&self.refl),
            self.paper.total,
            self.oracle.nullity,
            self.agreement
        )
    }
}

/// Adjacency matrix of the Cayley graph, built from the block formulas
/// (dihedral) or the circulant first row (cyclic).
pub fn adjacency(cs: &ConnectingSet, mode: Mode) -> IntMatrix {
    match mode {
        Mode::Cyclic => {
            let row = (0..cs.n())
                .map(|k| i64::from(cs.rotations().contains(&k)))
                .collect();
            CirculantMatrix::new(row).expand()
        }
        Mode::Dihedral => build_block_adjacency(cs).expand(),
    }
}

/// Validates `cs`, computes the formula and oracle nullities, and classifies.
pub fn audit_instance(cs: &ConnectingSet, mode: Mode, require_generation: bool) -> Result<AuditRecord> {
    cs.validate(mode, require_generation)?;
    let paper = match mode {
        Mode::Cyclic => paper_nullity_cyclic(cs)?,
        Mode::Dihedral => paper_nullity_dihedral(cs),
    };
    let oracle = exact_nullity(&adjacency(cs, mode))?;
    let agreement = Agreement::classify(paper.total, oracle.nullity);
    let witness = match (mode, agreement) {
        (Mode::Dihedral, Agreement::PaperUndercounts | Agreement::Violation) => {
            let (plus, minus) = split_blocks(&build_block_adjacency(cs));
            Some(Witness {
                nullity_plus: exact_nullity(&plus)?.nullity,
                nullity_minus: exact_nullity(&minus)?.nullity,
            })
        }
        _ => None,
    };
    Ok(AuditRecord {
        mode,
        n: cs.n(),
        rot: cs.rotations().iter().copied().collect(),
        refl: cs.reflections().iter().copied().collect(),
        paper,
        oracle: OracleSummary {
            rank: oracle.rank,
            nullity: oracle.nullity,
        },
        agreement,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NullVectorCheck {
    pub d: usize,
    pub source: Source,
    pub residual: f64,
    pub norm: f64,
}

impl NullVectorCheck {
    pub fn passes(&self) -> bool {
        self.residual < NULL_VECTOR_TOL * self.norm
    }
}

/// Builds the kernel vector certified by `Φ_d | source` and measures `‖Av‖`.
///
/// With `ω = e^{2πi/d}` the vector is `(ω^j)_j` in the cyclic case and
/// `(ω^j ; ±ω^{-j})_j` in the dihedral case, the sign following `Δ±`. The
/// reflection half is conjugated because `N` is anti-circulant:
/// `(N x)_i = Σ_{k∈S} x_{k-i}`.
pub fn null_vector_check(
    cs: &ConnectingSet,
    mode: Mode,
    d: usize,
    source: Source,
) -> Result<NullVectorCheck> {
    let n = cs.n();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::Precondition(format!("{d} does not divide n = {n}")));
    }
    let poly = match (mode, source) {
        (Mode::Cyclic, Source::PsiPrime) => build_deltas(cs).psi_prime,
        (Mode::Dihedral, Source::DeltaPlus) => build_deltas(cs).delta_plus,
        (Mode::Dihedral, Source::DeltaMinus) => build_deltas(cs).delta_minus,
        _ => {
            return Err(Error::Precondition(format!(
                "source {source} does not apply in {mode} mode"
            )))
        }
    };
    if !divides(&cyclotomic(d), &poly)? {
        return Err(Error::Precondition(format!(
            "Φ_{d} does not divide {source} = {poly}"
        )));
    }

    let root = |k: usize| Complex64::from_polar(1.0, TAU * (k % d) as f64 / d as f64);
    let mut v: Vec<Complex64> = (0..n).map(root).collect();
    if mode == Mode::Dihedral {
        let sign = source.sign();
        v.extend((0..n).map(|j| root((d - j % d) % d) * sign));
    }
    let a = adjacency(cs, mode);
    let residual = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .zip(&v)
                .filter(|(&x, _)| x != 0)
                .map(|(&x, z)| z * x as f64)
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    Ok(NullVectorCheck {
        d,
        source,
        residual,
        norm,
    })
}

/// Eigensolver self-check on one matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyCheck {
    pub dimension: usize,
    pub exact_nullity: usize,
    pub zero_eigenvalues: usize,
    pub trace_error: f64,
    pub trace_square_error: f64,
}

impl ConsistencyCheck {
    pub fn passes(&self) -> bool {
        let dim = self.dimension.max(1) as f64;
        self.exact_nullity == self.zero_eigenvalues
            && self.trace_error <= TRACE_TOL * dim
            && self.trace_square_error <= TRACE_TOL * dim * dim
    }
}

struct Probe {
    eigenvalues: Vec<f64>,
    check: ConsistencyCheck,
}

fn probe(mat: &IntMatrix) -> Result<Probe> {
    let eigenvalues = symmetric_eigenvalues(&mat.to_real(), JACOBI_TOL)?;
    let exact = exact_nullity(mat)?;
    let trace = mat.trace() as f64;
    let trace_sq = (mat * mat).trace() as f64;
    let check = ConsistencyCheck {
        dimension: mat.rows(),
        exact_nullity: exact.nullity,
        zero_eigenvalues: count_zero_eigenvalues(&eigenvalues, ZERO_EIGENVALUE_TOL),
        trace_error: (eigenvalues.iter().sum::<f64>() - trace).abs(),
        trace_square_error: (eigenvalues.iter().map(|x| x * x).sum::<f64>() - trace_sq).abs(),
    };
    Ok(Probe { eigenvalues, check })
}

/// Everything [`deep_check`] measured on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceChecks {
    /// Adjacency from `v u^-1 ∈ H` equals the block/circulant construction.
    pub definition_match: bool,
    /// Dihedral only.
    pub spectrum: Option<SpectrumSplit>,
    pub null_vectors: Vec<NullVectorCheck>,
    pub consistency: Vec<ConsistencyCheck>,
}

impl InstanceChecks {
    pub fn spectrum_ok(&self) -> bool {
        self.spectrum.as_ref().is_none_or(SpectrumSplit::holds)
    }

    pub fn null_vectors_ok(&self) -> bool {
        self.null_vectors.iter().all(NullVectorCheck::passes)
    }

    pub fn consistency_ok(&self) -> bool {
        self.consistency.iter().all(ConsistencyCheck::passes)
    }

    pub fn passes(&self) -> bool {
        self.definition_match && self.spectrum_ok() && self.null_vectors_ok() && self.consistency_ok()
    }
}

/// Runs the heavier probes for an already audited record.
pub fn deep_check(record: &AuditRecord) -> Result<InstanceChecks> {
    let cs = record.connecting_set()?;
    let mode = record.mode;
    let a = adjacency(&cs, mode);
    let definition_match = cayley_adjacency(&cs, mode)? == a;

    let probe_a = probe(&a)?;
    let mut consistency = vec![probe_a.check];
    let spectrum = match mode {
        Mode::Cyclic => None,
        Mode::Dihedral => {
            let (plus, minus) = split_blocks(&build_block_adjacency(&cs));
            let probe_plus = probe(&plus)?;
            let probe_minus = probe(&minus)?;
            let mut blocks = probe_plus.eigenvalues.clone();
            blocks.extend_from_slice(&probe_minus.eigenvalues);
            blocks.sort_by(f64::total_cmp);
            let max_eigen_gap = probe_a
                .eigenvalues
                .iter()
                .zip(&blocks)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            consistency.push(probe_plus.check);
            consistency.push(probe_minus.check);
            Some(SpectrumSplit {
                max_eigen_gap,
                nullity_a: probe_a.check.exact_nullity,
                nullity_plus: probe_plus.check.exact_nullity,
                nullity_minus: probe_minus.check.exact_nullity,
            })
        }
    };

    let null_vectors = record
        .paper
        .contributions
        .iter()
        .map(|c| null_vector_check(&cs, mode, c.d, c.source))
        .collect::<Result<Vec<_>>>()?;

    Ok(InstanceChecks {
        definition_match,
        spectrum,
        null_vectors,
        consistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: usize, r: &[usize], s: &[usize]) -> ConnectingSet {
        ConnectingSet::new(n, r.iter().copied(), s.iter().copied()).unwrap()
    }

    #[test]
    fn named_instances() {
        let r = audit_instance(&cs(4, &[1, 3], &[0, 2]), Mode::Dihedral, true).unwrap();
        assert_eq!((r.paper.total, r.oracle.nullity), (6, 6));
        assert_eq!(r.agreement, Agreement::Equal);
        assert_eq!(r.witness, None);

        let r = audit_instance(&cs(8, &[1, 7], &[0, 2]), Mode::Dihedral, true).unwrap();
        assert_eq!((r.paper.total, r.oracle.nullity), (6, 10));
        assert_eq!(r.agreement, Agreement::PaperUndercounts);
        let w = r.witness.unwrap();
        assert_eq!(w.nullity_plus + w.nullity_minus, 10);

        let r = audit_instance(&cs(4, &[1, 3], &[]), Mode::Cyclic, true).unwrap();
        assert_eq!((r.paper.total, r.oracle.nullity), (2, 2));
    }

    #[test]
    fn classify() {
        assert_eq!(Agreement::classify(3, 3), Agreement::Equal);
        assert_eq!(Agreement::classify(2, 3), Agreement::PaperUndercounts);
        assert_eq!(Agreement::classify(4, 3), Agreement::Violation);
    }

    #[test]
    fn null_vector_examples() {
        let c = null_vector_check(&cs(4, &[1, 3], &[0, 2]), Mode::Dihedral, 4, Source::DeltaPlus).unwrap();
        assert!(c.passes());
        let c = null_vector_check(&cs(3, &[1, 2], &[0, 1]), Mode::Dihedral, 1, Source::DeltaMinus).unwrap();
        assert!(c.passes());
        assert!(c.residual < 1e-12);
        // D_9, R={}, S={0,1} has no hit at all
        let inst = cs(9, &[], &[0, 1]);
        for d in [1, 3, 9] {
            for s in [Source::DeltaPlus, Source::DeltaMinus] {
                assert!(matches!(
                    null_vector_check(&inst, Mode::Dihedral, d, s),
                    Err(Error::Precondition(_))
                ));
            }
        }
    }

    #[test]
    fn null_vector_needs_conjugated_reflection_half() {
        // Δ⁻ ≡ 0 and Ψ''(ω) = -1 at d = 3: the unconjugated vector
        // (ω^j ; -ω^j) is not in the kernel, the conjugated one is.
        let inst = cs(3, &[1, 2], &[1, 2]);
        let c = null_vector_check(&inst, Mode::Dihedral, 3, Source::DeltaMinus).unwrap();
        assert!(c.passes(), "{c:?}");

        let a = adjacency(&inst, Mode::Dihedral);
        let w = Complex64::from_polar(1.0, TAU / 3.0);
        let naive: Vec<Complex64> = (0..3)
            .map(|j| w.powu(j))
            .chain((0..3).map(|j| -w.powu(j)))
            .collect();
        let residual: f64 = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| naive[j] * a[(i, j)] as f64)
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum::<f64>()
            .sqrt();
        assert!(residual > 1.0);
    }

    #[test]
    fn deep_check_d8() {
        let r = audit_instance(&cs(8, &[1, 7], &[0, 2]), Mode::Dihedral, true).unwrap();
        let checks = deep_check(&r).unwrap();
        assert!(checks.passes(), "{checks:?}");
        assert_eq!(checks.null_vectors.len(), r.paper.contributions.len());
        assert_eq!(checks.consistency.len(), 3);
    }

    #[test]
    fn json_schema_field_names() {
        let r = audit_instance(&cs(4, &[1, 3], &[0, 2]), Mode::Dihedral, true).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["mode", "n", "rot", "ref", "paper", "oracle", "agreement"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["mode"], "dihedral");
        assert_eq!(v["agreement"], "equal");
        assert_eq!(v["paper"]["contributions"][0]["source"], "delta_plus");
        assert_eq!(v["oracle"]["rank"], 2);
        assert!(v.get("witness").is_none());
    }

    #[test]
    fn csv_row_format() {
        let r = audit_instance(&cs(8, &[1, 7], &[0, 2]), Mode::Dihedral, true).unwrap();
        assert_eq!(r.csv_row(), "dihedral,8,1 7,0 2,6,10,paper_undercounts");
    }
}
