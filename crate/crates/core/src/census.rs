//! Enumeration and sampling of connecting sets, audited in parallel.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::audit::{audit_instance, deep_check, Agreement, AuditRecord, InstanceChecks};
use crate::error::{Error, Result};
use crate::group::{ConnectingSet, Mode};
use crate::method::p_power_criterion;

/// Largest `n` enumerated exhaustively under [`Sampling::Auto`].
pub const AUTO_EXHAUSTIVE_DIHEDRAL: usize = 10;
pub const AUTO_EXHAUSTIVE_CYCLIC: usize = 24;
pub const DEFAULT_MAX_INSTANCES: u128 = 2_000_000;
pub const DEFAULT_SAMPLES_PER_N: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    Exhaustive,
    /// Seeded uniform draws, with replacement.
    Sample { per_n: usize },
    /// Exhaustive up to the default bounds, sampled above them.
    Auto { per_n: usize },
}

/// Restricts which valid instances enter the census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusFilter {
    All,
    /// `n = p^s` with `|R| ≠ |S|` and `|H| < p`.
    PPowerCriterion,
    /// `|R| = |S|`.
    Balanced,
}

impl CensusFilter {
    fn admits(self, cs: &ConnectingSet) -> bool {
        match self {
            CensusFilter::All => true,
            CensusFilter::PPowerCriterion => {
                p_power_criterion(cs).is_ok_and(|c| c.criterion_met)
            }
            CensusFilter::Balanced => cs.rotations().len() == cs.reflections().len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSpec {
    pub mode: Mode,
    pub n_min: usize,
    pub n_max: usize,
    pub sampling: Sampling,
    pub seed: u64,
    /// Cap on candidates in exhaustive enumeration.
    pub max_instances: u128,
    pub allow_disconnected: bool,
    pub filter: CensusFilter,
}

impl CensusSpec {
    pub fn exhaustive(mode: Mode, n_min: usize, n_max: usize) -> Self {
        Self {
            mode,
            n_min,
            n_max,
            sampling: Sampling::Exhaustive,
            seed: 0,
            max_instances: DEFAULT_MAX_INSTANCES,
            allow_disconnected: false,
            filter: CensusFilter::All,
        }
    }

    pub fn with_filter(mut self, filter: CensusFilter) -> Self {
        self.filter = filter;
        self
    }

    fn is_exhaustive_at(&self, n: usize) -> bool {
        match self.sampling {
            Sampling::Exhaustive => true,
            Sampling::Sample { .. } => false,
            Sampling::Auto { .. } => {
                n <= match self.mode {
                    Mode::Cyclic => AUTO_EXHAUSTIVE_CYCLIC,
                    Mode::Dihedral => AUTO_EXHAUSTIVE_DIHEDRAL,
                }
            }
        }
    }
}

/// Inverse pairs `{k, n-k}` for `k = 1..=n/2`; the self-paired `n/2`
/// appears alone.
pub fn rotation_pairs(n: usize) -> Vec<Vec<usize>> {
    (1..=n / 2)
        .map(|k| if 2 * k == n { vec![k] } else { vec![k, n - k] })
        .collect()
}

fn rotations_from_mask(pairs: &[Vec<usize>], mask: u128) -> Vec<usize> {
    pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .flat_map(|(_, p)| p.iter().copied())
        .collect()
}

fn bits(n: usize, mask: u128) -> Vec<usize> {
    (0..n).filter(|k| mask >> k & 1 == 1).collect()
}

/// Number of candidates an exhaustive pass over `n` visits, before the
/// generation and filter checks.
pub fn candidate_count(mode: Mode, n: usize) -> u128 {
    let pairs = (n / 2) as u32;
    let rot = 1u128.checked_shl(pairs).unwrap_or(u128::MAX);
    match mode {
        Mode::Cyclic => rot - 1,
        Mode::Dihedral => {
            let refl = 1u128.checked_shl(n as u32).map_or(u128::MAX, |x| x - 1);
            rot.saturating_mul(refl)
        }
    }
}

fn keep(spec: &CensusSpec, cs: &ConnectingSet) -> bool {
    cs.validate(spec.mode, !spec.allow_disconnected).is_ok() && spec.filter.admits(cs)
}

fn enumerate_exhaustive(spec: &CensusSpec, n: usize, out: &mut Vec<ConnectingSet>) {
    let pairs = rotation_pairs(n);
    let refl_masks: Box<dyn Iterator<Item = u128>> = match spec.mode {
        Mode::Cyclic => Box::new(std::iter::once(0)),
        Mode::Dihedral => Box::new(1..1u128 << n),
    };
    let refl_masks: Vec<u128> = refl_masks.collect();
    for rot_mask in 0..1u128 << pairs.len() {
        let rot = rotations_from_mask(&pairs, rot_mask);
        for &refl_mask in &refl_masks {
            let cs = ConnectingSet::new(n, rot.iter().copied(), bits(n, refl_mask))
                .expect("exponents in range");
            if keep(spec, &cs) {
                out.push(cs);
            }
        }
    }
}

fn enumerate_sampled(spec: &CensusSpec, n: usize, per_n: usize, out: &mut Vec<ConnectingSet>) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let pairs = rotation_pairs(n);
    let max_attempts = per_n.saturating_mul(1000).max(1000);
    let mut drawn = 0;
    for _ in 0..max_attempts {
        if drawn == per_n {
            break;
        }
        let rot: Vec<usize> = pairs
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .flat_map(|p| p.iter().copied())
            .collect();
        let refl: Vec<usize> = match spec.mode {
            Mode::Cyclic => Vec::new(),
            Mode::Dihedral => (0..n).filter(|_| rng.random_bool(0.5)).collect(),
        };
        if spec.mode == Mode::Dihedral && refl.is_empty() {
            continue;
        }
        let cs = ConnectingSet::new(n, rot, refl).expect("exponents in range");
        if keep(spec, &cs) {
            out.push(cs);
            drawn += 1;
        }
    }
}

/// The connecting sets a census visits, in deterministic order: by `n`, then
/// rotation mask, then reflection mask (exhaustive) or draw order (sampled).
pub fn enumerate(spec: &CensusSpec) -> Result<Vec<ConnectingSet>> {
    if spec.n_min < 3 {
        return Err(Error::OrderTooSmall(spec.n_min));
    }
    let exhaustive_total = (spec.n_min..=spec.n_max)
        .filter(|&n| spec.is_exhaustive_at(n))
        .map(|n| candidate_count(spec.mode, n))
        .fold(0u128, u128::saturating_add);
    if exhaustive_total > spec.max_instances {
        return Err(Error::InstanceCapExceeded {
            count: exhaustive_total,
            cap: spec.max_instances,
        });
    }
    let mut out = Vec::new();
    for n in spec.n_min..=spec.n_max {
        if spec.is_exhaustive_at(n) {
            enumerate_exhaustive(spec, n, &mut out);
        } else {
            let per_n = match spec.sampling {
                Sampling::Sample { per_n } | Sampling::Auto { per_n } => per_n,
                Sampling::Exhaustive => unreachable!(),
            };
            enumerate_sampled(spec, n, per_n, &mut out);
        }
    }
    Ok(out)
}

/// Conformance of the `D_{p^s}` criterion and of the balanced-set rule for
/// one prime-power `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PPowerRow {
    pub n: usize,
    pub p: usize,
    pub s: u32,
    /// Instances meeting both conditions.
    pub criterion_met: usize,
    /// ... of which the oracle found non-singular.
    pub criterion_met_nonsingular: usize,
    /// Instances with `|R| = |S|`.
    pub balanced: usize,
    /// ... of which the oracle found singular.
    pub balanced_singular: usize,
}

impl PPowerRow {
    pub fn conforms(&self) -> bool {
        self.criterion_met == self.criterion_met_nonsingular && self.balanced == self.balanced_singular
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DeepSummary {
    pub definition_failures: usize,
    pub spectrum_failures: usize,
    pub null_vector_checks: usize,
    pub null_vector_failures: usize,
    pub consistency_checks: usize,
    pub consistency_failures: usize,
}

impl DeepSummary {
    pub fn passes(&self) -> bool {
        self.definition_failures == 0
            && self.spectrum_failures == 0
            && self.null_vector_failures == 0
            && self.consistency_failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CensusSummary {
    pub instances: usize,
    pub equal: usize,
    pub paper_undercounts: usize,
    pub violations: usize,
    pub singular: usize,
    pub min_nullity: Option<usize>,
    pub max_nullity: Option<usize>,
    /// Only in dihedral mode, one row per prime-power `n`.
    pub p_power: Vec<PPowerRow>,
    pub deep: Option<DeepSummary>,
}

impl CensusSummary {
    pub fn passes(&self) -> bool {
        self.violations == 0
            && self.p_power.iter().all(PPowerRow::conforms)
            && self.deep.as_ref().is_none_or(DeepSummary::passes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusOutcome {
    pub records: Vec<AuditRecord>,
    pub checks: Option<Vec<InstanceChecks>>,
    pub summary: CensusSummary,
}

/// Audits every instance of the census on the rayon pool. Records come back
/// in enumeration order. With `deep`, each instance also runs
/// [`deep_check`].
pub fn run_census(spec: &CensusSpec, deep: bool) -> Result<CensusOutcome> {
    let instances = enumerate(spec)?;
    let require_generation = !spec.allow_disconnected;
    let results: Vec<(AuditRecord, Option<InstanceChecks>)> = instances
        .par_iter()
        .map(|cs| {
            let record = audit_instance(cs, spec.mode, require_generation)?;
            let checks = if deep { Some(deep_check(&record)?) } else { None };
            Ok((record, checks))
        })
        .collect::<Result<_>>()?;
    let (records, checks): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let checks: Option<Vec<InstanceChecks>> = deep.then(|| checks.into_iter().flatten().collect());
    let summary = summarize(&records, checks.as_deref());
    Ok(CensusOutcome {
        records,
        checks,
        summary,
    })
}

pub fn summarize(records: &[AuditRecord], checks: Option<&[InstanceChecks]>) -> CensusSummary {
    let mut s = CensusSummary {
        instances: records.len(),
        ..Default::default()
    };
    let mut rows: BTreeMap<usize, PPowerRow> = BTreeMap::new();
    for r in records {
        match r.agreement {
            Agreement::Equal => s.equal += 1,
            Agreement::PaperUndercounts => s.paper_undercounts += 1,
            Agreement::Violation => s.violations += 1,
        }
        let null = r.oracle.nullity;
        s.singular += usize::from(null > 0);
        s.min_nullity = Some(s.min_nullity.map_or(null, |m| m.min(null)));
        s.max_nullity = Some(s.max_nullity.map_or(null, |m| m.max(null)));

        if r.mode != Mode::Dihedral {
            continue;
        }
        let Some((p, e)) = prime_power(r.n) else {
            continue;
        };
        let row = rows.entry(r.n).or_insert(PPowerRow {
            n: r.n,
            p,
            s: e,
            ..Default::default()
        });
        let balanced = r.rot.len() == r.refl.len();
        if balanced {
            row.balanced += 1;
            row.balanced_singular += usize::from(null > 0);
        } else if r.rot.len() + r.refl.len() < p {
            row.criterion_met += 1;
            row.criterion_met_nonsingular += usize::from(null == 0);
        }
    }
    s.p_power = rows.into_values().collect();
    s.deep = checks.map(|checks| {
        let mut d = DeepSummary::default();
        for c in checks {
            d.definition_failures += usize::from(!c.definition_match);
            d.spectrum_failures += usize::from(!c.spectrum_ok());
            d.null_vector_checks += c.null_vectors.len();
            d.null_vector_failures += c.null_vectors.iter().filter(|v| !v.passes()).count();
            d.consistency_checks += c.consistency.len();
            d.consistency_failures += c.consistency.iter().filter(|v| !v.passes()).count();
        }
        d
    });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(rotation_pairs(5), vec![vec![1, 4], vec![2, 3]]);
        assert_eq!(rotation_pairs(4), vec![vec![1, 3], vec![2]]);
    }

    #[test]
    fn counts_match_enumeration() {
        let mut spec = CensusSpec::exhaustive(Mode::Dihedral, 4, 4);
        spec.allow_disconnected = true;
        let all = enumerate(&spec).unwrap();
        // every candidate is valid once generation is waived
        assert_eq!(all.len() as u128, candidate_count(Mode::Dihedral, 4));
        let connected = enumerate(&CensusSpec::exhaustive(Mode::Dihedral, 4, 4)).unwrap();
        assert!(connected.iter().all(|cs| cs.closure_size() == 8));
        assert!(connected.len() < all.len());
    }

    #[test]
    fn cap_is_enforced() {
        let mut spec = CensusSpec::exhaustive(Mode::Dihedral, 3, 12);
        spec.max_instances = 1000;
        assert!(matches!(
            enumerate(&spec),
            Err(Error::InstanceCapExceeded { cap: 1000, .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = CensusSpec {
            sampling: Sampling::Sample { per_n: 25 },
            seed: 7,
            ..CensusSpec::exhaustive(Mode::Dihedral, 20, 22)
        };
        let a = enumerate(&spec).unwrap();
        let b = enumerate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 75);
        let other = enumerate(&CensusSpec { seed: 8, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn auto_switches_to_sampling() {
        let spec = CensusSpec {
            sampling: Sampling::Auto { per_n: 5 },
            ..CensusSpec::exhaustive(Mode::Dihedral, 10, 11)
        };
        assert!(spec.is_exhaustive_at(10));
        assert!(!spec.is_exhaustive_at(11));
    }

    #[test]
    fn d3_census() {
        let out = run_census(&CensusSpec::exhaustive(Mode::Dihedral, 3, 3), true).unwrap();
        assert!(out.summary.passes(), "{:?}", out.summary);
        assert_eq!(out.summary.violations, 0);
        let row = out.summary.p_power[0];
        assert_eq!(row.balanced, row.balanced_singular);
        assert!(row.balanced > 0);
    }
}
