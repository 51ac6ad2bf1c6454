//! JSON report schema for verify-paper. Field names are frozen; the
//! top-level keys are {reportVersion, schemes, summary} and reportVersion
//! is bumped on any schema change. Serialization order follows struct
//! declaration order, so a report is byte-identical across runs on the
//! same catalog.

use serde::Serialize;

use amorph_core::amorphic::{AmorphicVerdict, CanonicalOutcome, OracleOutcome, StatementOutcome};
use amorph_core::fusegraph::{FusingGraph, GraphProfile};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub report_version: u32,
    pub schemes: Vec<SchemeReport>,
    pub summary: Summary,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub total_checks: u64,
    pub violations: u64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SchemeReport {
    pub id: String,
    pub source: String,
    pub v: Option<usize>,
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graphs: Option<GraphsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_counts: Option<PairCounts>,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub name: String,
    pub checks: u64,
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictReport {
    pub canonical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_reason: Option<String>,
    pub oracle: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_dual: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_dual_permutation: Option<Vec<usize>>,
    pub per_theorem: Vec<TheoremReport>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremReport {
    pub name: String,
    pub applicable: bool,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub consistent: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphsReport {
    pub relations: GraphReport,
    pub idempotents: GraphReport,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub connected: bool,
    pub is_path: bool,
    pub max_degree: usize,
    pub has_claw: bool,
    pub hamiltonian: Option<bool>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairCounts {
    pub relation_pairs: usize,
    pub idempotent_pairs: usize,
}

impl TheoremReport {
    pub fn from_outcome(o: &StatementOutcome) -> TheoremReport {
        TheoremReport {
            name: o.name.to_string(),
            applicable: o.applicable,
            hypothesis: o.hypothesis,
            conclusion: o.conclusion,
            consistent: o.consistent,
        }
    }
}

impl VerdictReport {
    pub fn from_verdict(v: &AmorphicVerdict) -> VerdictReport {
        let (canonical, canonical_reason) = match &v.canonical {
            CanonicalOutcome::Canonical { .. } => (true, None),
            CanonicalOutcome::NotCanonical { reason } => (false, Some(reason.clone())),
        };
        let (oracle, oracle_witness) = match &v.oracle {
            OracleOutcome::Amorphic => ("yes".to_string(), None),
            OracleOutcome::NotAmorphic { witness } => ("no".to_string(), Some(witness.to_string())),
            OracleOutcome::Skipped => ("skipped".to_string(), None),
        };
        VerdictReport {
            canonical,
            canonical_reason,
            oracle,
            oracle_witness,
            self_dual: if canonical {
                Some(v.self_dual.is_some())
            } else {
                None
            },
            self_dual_permutation: v.self_dual.clone(),
            per_theorem: v
                .per_theorem
                .iter()
                .map(TheoremReport::from_outcome)
                .collect(),
        }
    }
}

impl GraphReport {
    pub fn from_graph(g: &FusingGraph, profile: &GraphProfile) -> GraphReport {
        let edges = g
            .edges()
            .map(|(a, b)| {
                [
                    *g.labels()[a].first().expect("nonempty label"),
                    *g.labels()[b].first().expect("nonempty label"),
                ]
            })
            .collect();
        GraphReport {
            vertices: g.vertex_count(),
            edges,
            connected: profile.connected,
            is_path: profile.is_path,
            max_degree: profile.max_degree,
            has_claw: profile.has_claw,
            hamiltonian: profile.hamiltonian,
        }
    }
}
