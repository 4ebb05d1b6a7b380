//! Serializable reports and the compute/certify pipelines behind the CLI.

use serde::{Deserialize, Serialize};

use crate::algebra::TwistedAlgebra;
use crate::decomposition::{all_twists, TwistSummary};
use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::nonschur::{certify_nonvanishing, Witness, WitnessKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Ok,
    Skipped,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub rep: usize,
    pub regular: bool,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistEntry {
    pub i: usize,
    pub dim: usize,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub sum_rule: bool,
    pub symmetry: bool,
    pub oracle: OracleStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeReport {
    pub group: String,
    pub cover: String,
    pub p: u64,
    pub m: usize,
    /// `dim HH^1(kĜ)`.
    pub cover_dim: usize,
    pub twists: Vec<TwistEntry>,
    pub checks: Checks,
}

impl ComputeReport {
    pub fn dims(&self) -> Vec<usize> {
        self.twists.iter().map(|t| t.dim).collect()
    }

    pub fn consistent(&self) -> bool {
        self.checks.sum_rule && self.checks.symmetry && self.checks.oracle != OracleStatus::Mismatch
    }
}

/// Oracle values for one twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleValues {
    pub hh1: usize,
    pub center: usize,
}

#[derive(Clone, Debug)]
pub struct ComputeOutcome {
    pub report: ComputeReport,
    pub summary: TwistSummary,
    /// Per reported twist; `None` when the oracle did not run.
    pub oracle: Vec<Option<OracleValues>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ComputeRequest {
    pub prime: u64,
    /// `None` reports every twist.
    pub twist: Option<usize>,
    /// `Some(cap)` runs the oracle on algebras of dimension at most `cap`.
    pub oracle_cap: Option<usize>,
}

/// Runs the decomposition for all twists (the sum rule and symmetry need
/// them), reports the requested ones and optionally cross-checks them.
pub fn compute(ext: &CentralExtension, group: &str, cover: &str, req: ComputeRequest) -> Result<ComputeOutcome> {
    let m = ext.m();
    if let Some(i) = req.twist {
        if i >= m {
            return Err(Error::Precondition(format!("twist {i} is out of range 0..{m}")));
        }
    }
    let summary = all_twists(ext, req.prime)?;
    let selected: Vec<usize> = match req.twist {
        Some(i) => vec![i],
        None => (0..m).collect(),
    };
    let mut oracle = Vec::with_capacity(selected.len());
    let mut status = OracleStatus::Skipped;
    if let Some(cap) = req.oracle_cap {
        if ext.group().order() <= cap {
            status = OracleStatus::Ok;
            for &i in &selected {
                let a = TwistedAlgebra::new(ext, i, req.prime)?;
                let values = OracleValues { hh1: a.hh1_oracle(cap)?, center: a.center_dim() };
                let r = &summary.reports[i];
                if values.hh1 != r.dim || values.center != r.hh0() {
                    status = OracleStatus::Mismatch;
                }
                oracle.push(Some(values));
            }
        }
    }
    oracle.resize(selected.len(), None);
    let twists = selected
        .iter()
        .map(|&i| {
            let r = &summary.reports[i];
            TwistEntry {
                i,
                dim: r.dim,
                classes: r.classes.iter().map(|c| ClassEntry { rep: c.rep, regular: c.regular, dim: c.dim }).collect(),
            }
        })
        .collect();
    let report = ComputeReport {
        group: group.into(),
        cover: cover.into(),
        p: req.prime,
        m,
        cover_dim: summary.cover_dim,
        twists,
        checks: Checks { sum_rule: summary.sum_rule, symmetry: summary.symmetry, oracle: status },
    };
    Ok(ComputeOutcome { report, summary, oracle })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub x: usize,
    pub kind: WitnessKind,
    pub hom_rank: usize,
    pub regular_all_twists: bool,
}

impl WitnessEntry {
    pub fn from_witness(w: &Witness, m: usize) -> Self {
        WitnessEntry { x: w.x, kind: w.kind, hom_rank: w.hom_rank, regular_all_twists: w.regular_all_twists(m) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub group: String,
    pub cover: String,
    pub p: u64,
    pub m: usize,
    pub witnesses: Vec<WitnessEntry>,
}

pub fn certify(ext: &CentralExtension, group: &str, cover: &str, p: u64) -> Result<CertifyReport> {
    let witnesses = certify_nonvanishing(ext, p)?.iter().map(|w| WitnessEntry::from_witness(w, ext.m())).collect();
    Ok(CertifyReport { group: group.into(), cover: cover.into(), p, m: ext.m(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_cover;

    #[test]
    fn sl25_all_twists_with_oracle() {
        let ext = builtin_cover("SL25").unwrap();
        let out = compute(&ext, "A5", "SL25", ComputeRequest { prime: 3, twist: None, oracle_cap: Some(256) }).unwrap();
        assert_eq!(out.report.dims(), vec![1, 1]);
        assert_eq!(out.report.checks, Checks { sum_rule: true, symmetry: true, oracle: OracleStatus::Ok });
        assert!(out.oracle.iter().all(Option::is_some));
    }

    #[test]
    fn single_twist_and_cap() {
        let ext = builtin_cover("SL25").unwrap();
        let out =
            compute(&ext, "A5", "SL25", ComputeRequest { prime: 5, twist: Some(1), oracle_cap: Some(10) }).unwrap();
        assert_eq!(out.report.twists.len(), 1);
        assert_eq!(out.report.twists[0].i, 1);
        assert_eq!(out.report.checks.oracle, OracleStatus::Skipped);
        assert!(compute(&ext, "A5", "SL25", ComputeRequest { prime: 5, twist: Some(2), oracle_cap: None }).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let ext = builtin_cover("Q8").unwrap();
        let out = compute(&ext, "V4", "Q8", ComputeRequest { prime: 3, twist: None, oracle_cap: None }).unwrap();
        let json = serde_json::to_string(&out.report).unwrap();
        assert!(json.contains("\"oracle\":\"skipped\""));
        let back: ComputeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, out.report);
        let c = certify(&ext, "V4", "Q8", 2);
        assert!(c.is_err());
    }
}
