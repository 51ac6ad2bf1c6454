//! Amorphicity decisions and the theorem audit.
//!
//! Two independent deciders: the canonical-form criterion on the principal
//! part of the eigenmatrix, and a brute-force oracle that enumerates every
//! partition of the non-trivial classes (restricted growth strings,
//! lexicographic) and runs the Bannai-Muzychuk check on each. The audit
//! evaluates each named statement of the theory as an implication over a
//! concrete scheme; an inconsistent implication is a build failure, never
//! a property of the scheme.

use std::fmt;

use thiserror::Error;

use crate::exact::RatMatrix;
use crate::fusegraph::{fusing_graph, graph_profile, FusingGraph, GraphProfile};
use crate::fusion::{bm_check, IndexPartition};
use crate::scheme::{SchemeCore, SpectralData};
use crate::srg::{classify_srg, sr_column_data, sr_detect, TypeTag};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AmorphicError {
    #[error("too many classes for the all-partitions oracle: d = {d} > {max}")]
    TooManyClasses { d: usize, max: usize },
}

/// Class-count bound for the brute-force oracle (Bell(8) = 4140 partitions).
pub const ORACLE_CLASS_LIMIT: usize = 8;

/// Canonical-form decision on the principal part of an eigenmatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalOutcome {
    /// Permutations (0-based, over principal indices) realizing the
    /// canonical shape: row_perm[j] is the original principal row moved to
    /// position j, so entry j of every permuted column lands on b_j.
    Canonical {
        row_perm: Vec<usize>,
        col_perm: Vec<usize>,
    },
    NotCanonical {
        reason: String,
    },
}

impl CanonicalOutcome {
    pub fn is_canonical(&self) -> bool {
        matches!(self, CanonicalOutcome::Canonical { .. })
    }
}

/// Decides amorphicity by the canonical-form criterion: for d >= 3, every
/// principal column must take exactly two distinct values, one of which
/// occurs in exactly one row, and the column -> unique-row map must be a
/// bijection. d <= 2 is amorphic outright (every partition is trivially a
/// fusion, which the oracle confirms).
pub fn canonical_check(p: &RatMatrix) -> CanonicalOutcome {
    let d = p.rows() - 1;
    if d <= 2 {
        return CanonicalOutcome::Canonical {
            row_perm: (0..d).collect(),
            col_perm: (0..d).collect(),
        };
    }
    let pp = p.principal_part();
    let mut unique_row_of_col = Vec::with_capacity(d);
    for col in 0..d {
        let mut values: Vec<(&crate::exact::Rat, usize)> = Vec::new();
        for row in 0..d {
            let x = pp.at(row, col);
            match values.iter_mut().find(|(v, _)| *v == x) {
                Some((_, count)) => *count += 1,
                None => values.push((x, 1)),
            }
        }
        if values.len() != 2 {
            return CanonicalOutcome::NotCanonical {
                reason: format!(
                    "principal column {} has {} distinct values, need exactly 2",
                    col + 1,
                    values.len()
                ),
            };
        }
        let singles: Vec<&crate::exact::Rat> = values
            .iter()
            .filter(|(_, c)| *c == 1)
            .map(|(v, _)| *v)
            .collect();
        if singles.len() != 1 {
            return CanonicalOutcome::NotCanonical {
                reason: format!(
                    "principal column {} has no value occurring in exactly one row",
                    col + 1
                ),
            };
        }
        let unique_row = (0..d).find(|&r| pp.at(r, col) == singles[0]).unwrap();
        unique_row_of_col.push(unique_row);
    }
    let mut seen = vec![false; d];
    for &r in &unique_row_of_col {
        if seen[r] {
            return CanonicalOutcome::NotCanonical {
                reason: format!("principal row {} is the special row of two columns", r + 1),
            };
        }
        seen[r] = true;
    }
    CanonicalOutcome::Canonical {
        row_perm: unique_row_of_col,
        col_perm: (0..d).collect(),
    }
}

/// Iterator over all set partitions of {1..n} as [`IndexPartition`]s, in
/// restricted-growth-string lexicographic order.
pub struct SetPartitions {
    n: usize,
    rgs: Vec<usize>,
    done: bool,
}

pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        n,
        rgs: vec![0; n],
        done: n == 0,
    }
}

impl Iterator for SetPartitions {
    type Item = IndexPartition;

    fn next(&mut self) -> Option<IndexPartition> {
        if self.done {
            return None;
        }
        let current = partition_from_rgs(self.n, &self.rgs);
        // Successor: bump the rightmost position not exceeding its prefix
        // maximum, zero the suffix.
        let mut advanced = false;
        for i in (1..self.n).rev() {
            let prefix_max = *self.rgs[..i].iter().max().unwrap();
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                self.rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.done = true;
        }
        Some(current)
    }
}

fn partition_from_rgs(n: usize, rgs: &[usize]) -> IndexPartition {
    let nblocks = rgs.iter().max().map_or(0, |m| m + 1);
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
    for (i, &b) in rgs.iter().enumerate() {
        parts[b].push(i + 1);
    }
    IndexPartition::new(n, parts).expect("restricted growth strings cover 1..=n")
}

/// Oracle verdict for [`brute_force_amorphic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Amorphic,
    NotAmorphic { witness: IndexPartition },
    Skipped,
}

impl OracleOutcome {
    pub fn is_amorphic(&self) -> Option<bool> {
        match self {
            OracleOutcome::Amorphic => Some(true),
            OracleOutcome::NotAmorphic { .. } => Some(false),
            OracleOutcome::Skipped => None,
        }
    }
}

/// Enumerates every partition of {1..d} and runs the Bannai-Muzychuk check
/// on the eigenmatrix; the first failing partition (in enumeration order)
/// is the witness. This is the independent oracle for [`canonical_check`].
pub fn brute_force_amorphic(p: &RatMatrix) -> Result<OracleOutcome, AmorphicError> {
    let d = p.rows() - 1;
    if d > ORACLE_CLASS_LIMIT {
        return Err(AmorphicError::TooManyClasses {
            d,
            max: ORACLE_CLASS_LIMIT,
        });
    }
    for pi in set_partitions(d) {
        if bm_check(p, &pi).is_err() {
            return Ok(OracleOutcome::NotAmorphic { witness: pi });
        }
    }
    Ok(OracleOutcome::Amorphic)
}

/// Formal self-duality: a permutation sigma of {0..d} fixing 0 such that
/// renumbering the idempotents by sigma turns P into Q, i.e.
/// P[sigma(a)][b] = Q[a][sigma(b)] for all a, b. (Renumbering permutes the
/// rows of P and the columns of Q simultaneously; with the deterministic
/// idempotent ordering the two sides rarely align under a row permutation
/// alone.) Returns the first witness in lexicographic assignment order.
pub fn self_duality_check(p: &RatMatrix, q: &RatMatrix) -> Option<Vec<usize>> {
    let n = p.rows();
    let mut sigma: Vec<usize> = vec![0; n];
    let mut used = vec![false; n];
    used[0] = true;
    fn consistent(p: &RatMatrix, q: &RatMatrix, sigma: &[usize], assigned: usize) -> bool {
        let a = assigned;
        for b in 0..=assigned {
            if p.at(sigma[a], b) != q.at(a, sigma[b]) || p.at(sigma[b], a) != q.at(b, sigma[a]) {
                return false;
            }
        }
        true
    }
    fn search(
        p: &RatMatrix,
        q: &RatMatrix,
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = p.rows();
        if next == n {
            return true;
        }
        for cand in 1..n {
            if used[cand] {
                continue;
            }
            sigma[next] = cand;
            used[cand] = true;
            if consistent(p, q, sigma, next) && search(p, q, sigma, used, next + 1) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
    if !consistent(p, q, &sigma, 0) {
        return None;
    }
    if search(p, q, &mut sigma, &mut used, 1) {
        Some(sigma)
    } else {
        None
    }
}

/// Everything the audit statements inspect about one scheme, computed once.
pub struct SchemeContext {
    pub core: Option<SchemeCore>,
    pub spectral: SpectralData,
    pub graph_p: FusingGraph,
    pub graph_q: FusingGraph,
    pub profile_p: GraphProfile,
    pub profile_q: GraphProfile,
    pub canonical: CanonicalOutcome,
    pub oracle: OracleOutcome,
    pub self_dual: Option<Vec<usize>>,
    /// relation_tags[i-1]: classification tags of relation i when it is
    /// strongly regular with valid parameters.
    pub relation_tags: Vec<Vec<TypeTag>>,
    pub idempotent_tags: Vec<Vec<TypeTag>>,
}

impl SchemeContext {
    pub fn build(core: Option<SchemeCore>, spectral: SpectralData) -> SchemeContext {
        let graph_p = fusing_graph(spectral.p());
        let graph_q = fusing_graph(spectral.q());
        let profile_p = graph_profile(&graph_p);
        let profile_q = graph_profile(&graph_q);
        let canonical = canonical_check(spectral.p());
        let oracle = match brute_force_amorphic(spectral.p()) {
            Ok(o) => o,
            Err(AmorphicError::TooManyClasses { .. }) => OracleOutcome::Skipped,
        };
        let self_dual = self_duality_check(spectral.p(), spectral.q());
        let tags_of = |m: &RatMatrix| -> Vec<Vec<TypeTag>> {
            let v = spectral.v() as u64;
            let sr = sr_detect(m);
            (1..=spectral.d())
                .map(|i| {
                    if !sr.contains(&i) {
                        return Vec::new();
                    }
                    match sr_column_data(m, i) {
                        Some((size, big, small)) => {
                            classify_srg(v, size, &big, &small).unwrap_or_default()
                        }
                        None => Vec::new(),
                    }
                })
                .collect()
        };
        let relation_tags = tags_of(spectral.p());
        let idempotent_tags = tags_of(spectral.q());
        SchemeContext {
            core,
            spectral,
            graph_p,
            graph_q,
            profile_p,
            profile_q,
            canonical,
            oracle,
            self_dual,
            relation_tags,
            idempotent_tags,
        }
    }

    pub fn d(&self) -> usize {
        self.spectral.d()
    }

    /// The audited "is amorphic" conclusion: the canonical criterion, with
    /// oracle agreement enforced separately by the decider-agreement check.
    pub fn amorphic(&self) -> bool {
        self.canonical.is_canonical()
    }

    fn typed(tags: &[TypeTag]) -> bool {
        tags.iter().any(|t| t.is_latin() || t.is_negative_latin())
    }

    pub fn untyped_relation_count(&self) -> usize {
        self.relation_tags
            .iter()
            .filter(|t| !Self::typed(t))
            .count()
    }

    pub fn untyped_idempotent_count(&self) -> usize {
        self.idempotent_tags
            .iter()
            .filter(|t| !Self::typed(t))
            .count()
    }

    /// True when one of the two Latin variants covers every relation
    /// (conference graphs carry both variants, so they never obstruct).
    pub fn relations_same_type(&self) -> bool {
        let all_of = |latin: bool| {
            self.relation_tags.iter().all(|tags| {
                tags.iter().any(|t| {
                    if latin {
                        t.is_latin()
                    } else {
                        t.is_negative_latin()
                    }
                })
            })
        };
        all_of(true) || all_of(false)
    }
}

/// One audited statement: a named hypothesis/conclusion pair over a scheme.
pub trait Statement: Sync {
    fn name(&self) -> &'static str;
    /// Whether the statement's stated shape covers this scheme at all.
    fn applies(&self, cx: &SchemeContext) -> bool;
    fn hypothesis(&self, cx: &SchemeContext) -> bool;
    fn conclusion(&self, cx: &SchemeContext) -> bool;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementOutcome {
    pub name: &'static str,
    pub applicable: bool,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub consistent: bool,
}

impl fmt::Display for StatementOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.applicable {
            return write!(f, "{}: not applicable", self.name);
        }
        write!(
            f,
            "{}: hypothesis {}, conclusion {}, {}",
            self.name,
            self.hypothesis,
            self.conclusion,
            if self.consistent {
                "consistent"
            } else {
                "INCONSISTENT"
            }
        )
    }
}

macro_rules! statement {
    ($ty:ident, $name:literal, $applies:expr, $hyp:expr, $concl:expr) => {
        struct $ty;
        impl Statement for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn applies(&self, cx: &SchemeContext) -> bool {
                let f: fn(&SchemeContext) -> bool = $applies;
                f(cx)
            }
            fn hypothesis(&self, cx: &SchemeContext) -> bool {
                let f: fn(&SchemeContext) -> bool = $hyp;
                f(cx)
            }
            fn conclusion(&self, cx: &SchemeContext) -> bool {
                let f: fn(&SchemeContext) -> bool = $concl;
                f(cx)
            }
        }
    };
}

fn complete_edges(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

statement!(
    AllRelationPairsFuse,
    "all-relation-pairs-fuse-implies-amorphic",
    |_| true,
    |cx| cx.graph_p.edge_count() == complete_edges(cx.d()),
    |cx| cx.amorphic()
);

statement!(
    AtMostOneUntypedRelation,
    "at-most-one-untyped-relation-implies-amorphic",
    |_| true,
    |cx| cx.untyped_relation_count() <= 1,
    |cx| cx.amorphic()
);

statement!(
    HamiltonianImpliesAmorphic,
    "hamiltonian-fusing-graph-implies-amorphic",
    |cx| cx.d() >= 3 && cx.profile_p.hamiltonian.is_some(),
    |cx| cx.profile_p.hamiltonian == Some(true),
    |cx| cx.amorphic()
);

statement!(
    ClawAtFourClasses,
    "claw-in-fusing-graph-at-d4-implies-amorphic",
    |cx| cx.d() == 4,
    |cx| cx.profile_p.has_claw,
    |cx| cx.amorphic()
);

statement!(
    ConnectedNotPath,
    "connected-not-path-implies-amorphic",
    |cx| cx.d() >= 3,
    |cx| cx.profile_p.connected && !cx.profile_p.is_path,
    |cx| cx.amorphic()
);

// Audited from d = 4 only: on 3 vertices a path already has more than
// C(2,2) = 1 edges, so the d = 3 case is defeated by the path chains and
// the edge-count argument needs d >= 4 (a disconnected graph on d vertices
// has at most C(d-1,2) edges, and C(d-1,2) >= d-1 only from d = 4 up).
statement!(
    EdgeCountBound,
    "edge-count-above-binomial-implies-amorphic",
    |cx| cx.d() >= 4,
    |cx| cx.graph_p.edge_count() > complete_edges(cx.d() - 1),
    |cx| cx.amorphic()
);

statement!(
    AllIdempotentPairsFuse,
    "all-idempotent-pairs-fuse-implies-amorphic",
    |_| true,
    |cx| cx.graph_q.edge_count() == complete_edges(cx.d()),
    |cx| cx.amorphic()
);

statement!(
    AtMostOneUntypedIdempotent,
    "at-most-one-untyped-idempotent-implies-amorphic",
    |_| true,
    |cx| cx.untyped_idempotent_count() <= 1,
    |cx| cx.amorphic()
);

statement!(
    DualConnectedNotPath,
    "dual-connected-not-path-implies-amorphic",
    |cx| cx.d() >= 3,
    |cx| cx.profile_q.connected && !cx.profile_q.is_path,
    |cx| cx.amorphic()
);

statement!(
    AmorphicGraphsComplete,
    "amorphic-implies-complete-fusing-graphs",
    |_| true,
    |cx| cx.amorphic(),
    |cx| {
        cx.graph_p.edge_count() == complete_edges(cx.d())
            && cx.graph_q.edge_count() == complete_edges(cx.d())
    }
);

statement!(
    AmorphicSameType,
    "amorphic-implies-relations-of-one-type",
    |cx| cx.d() >= 3,
    |cx| cx.amorphic(),
    |cx| cx.relations_same_type()
);

// Gated at d >= 3: with d <= 2 counting as amorphic by convention, a plain
// 2-class scheme (valencies 3,2 but ranks 1,4, say) need not be self-dual.
statement!(
    AmorphicSelfDual,
    "amorphic-implies-formally-self-dual",
    |cx| cx.d() >= 3,
    |cx| cx.amorphic(),
    |cx| cx.self_dual.is_some()
);

/// The audited statements, in report order.
pub fn statement_registry() -> &'static [&'static dyn Statement] {
    &[
        &AllRelationPairsFuse,
        &AtMostOneUntypedRelation,
        &HamiltonianImpliesAmorphic,
        &ClawAtFourClasses,
        &ConnectedNotPath,
        &EdgeCountBound,
        &AllIdempotentPairsFuse,
        &AtMostOneUntypedIdempotent,
        &DualConnectedNotPath,
        &AmorphicGraphsComplete,
        &AmorphicSameType,
        &AmorphicSelfDual,
    ]
}

/// Evaluates every registered statement over the scheme.
pub fn theorem_audit(cx: &SchemeContext) -> Vec<StatementOutcome> {
    statement_registry()
        .iter()
        .map(|st| {
            let applicable = st.applies(cx);
            let hypothesis = applicable && st.hypothesis(cx);
            let conclusion = applicable && st.conclusion(cx);
            StatementOutcome {
                name: st.name(),
                applicable,
                hypothesis,
                conclusion,
                consistent: !applicable || !hypothesis || conclusion,
            }
        })
        .collect()
}

/// Combined amorphicity verdict for reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmorphicVerdict {
    pub canonical: CanonicalOutcome,
    pub oracle: OracleOutcome,
    /// Row permutation witnessing P = Q; only sought on amorphic schemes.
    pub self_dual: Option<Vec<usize>>,
    pub per_theorem: Vec<StatementOutcome>,
}

pub fn amorphic_verdict(cx: &SchemeContext) -> AmorphicVerdict {
    AmorphicVerdict {
        canonical: cx.canonical.clone(),
        oracle: cx.oracle.clone(),
        self_dual: if cx.amorphic() {
            cx.self_dual.clone()
        } else {
            None
        },
        per_theorem: theorem_audit(cx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, latin_scheme, wreath, wreath_chain};
    use crate::scheme::{spectrum, validate_table, RelationTable};

    fn context_for(table: &RelationTable) -> SchemeContext {
        let core = validate_table(table).unwrap();
        let spectral = spectrum(&core).unwrap();
        SchemeContext::build(Some(core), spectral)
    }

    #[test]
    fn canonical_grid_yes() {
        let cx = context_for(&latin_scheme(3, 2).unwrap());
        assert!(cx.canonical.is_canonical());
    }

    #[test]
    fn canonical_chain_no() {
        let cx = context_for(&wreath_chain(&[2, 2, 2]).unwrap().0);
        match &cx.canonical {
            CanonicalOutcome::NotCanonical { reason } => {
                assert!(reason.contains("3 distinct values"), "{reason}");
            }
            other => panic!("expected NotCanonical, got {other:?}"),
        }
    }

    #[test]
    fn canonical_one_class_trivially_yes() {
        let cx = context_for(&complete(4).unwrap());
        assert!(cx.canonical.is_canonical());
    }

    #[test]
    fn rgs_enumeration_order_and_counts() {
        let parts: Vec<String> = set_partitions(3).map(|p| p.to_string()).collect();
        assert_eq!(parts, vec!["1,2,3", "1,2|3", "1,3|2", "1|2,3", "1|2|3"]);
        // Bell numbers.
        assert_eq!(set_partitions(1).count(), 1);
        assert_eq!(set_partitions(4).count(), 15);
        assert_eq!(set_partitions(5).count(), 52);
        assert_eq!(set_partitions(6).count(), 203);
    }

    #[test]
    fn oracle_grid_amorphic() {
        let cx = context_for(&latin_scheme(3, 2).unwrap());
        assert_eq!(cx.oracle, OracleOutcome::Amorphic);
    }

    #[test]
    fn oracle_chain_witness_is_first_failure() {
        let cx = context_for(&wreath_chain(&[2, 2, 2]).unwrap().0);
        match &cx.oracle {
            OracleOutcome::NotAmorphic { witness } => assert_eq!(witness.to_string(), "1,3|2"),
            other => panic!("expected NotAmorphic, got {other:?}"),
        }
    }

    #[test]
    fn oracle_one_class_vacuous() {
        let cx = context_for(&complete(3).unwrap());
        assert_eq!(cx.oracle, OracleOutcome::Amorphic);
    }

    #[test]
    fn oracle_rejects_too_many_classes() {
        // Any 10x10 matrix stands in for a d = 9 eigenmatrix here; the
        // class bound is checked before anything else.
        let m = RatMatrix::identity(10);
        assert_eq!(
            brute_force_amorphic(&m),
            Err(AmorphicError::TooManyClasses {
                d: 9,
                max: ORACLE_CLASS_LIMIT
            })
        );
    }

    #[test]
    fn deciders_agree_on_small_families() {
        for table in [
            complete(2).unwrap(),
            complete(5).unwrap(),
            latin_scheme(3, 2).unwrap(),
            latin_scheme(5, 3).unwrap(),
            wreath_chain(&[2, 2]).unwrap().0,
            wreath_chain(&[2, 2, 2]).unwrap().0,
            wreath_chain(&[3, 2, 2]).unwrap().0,
            wreath(2, &latin_scheme(3, 2).unwrap()).unwrap(),
            crate::generators::johnson3(7).unwrap(),
        ] {
            let cx = context_for(&table);
            assert_eq!(
                Some(cx.canonical.is_canonical()),
                cx.oracle.is_amorphic(),
                "deciders disagree on v={}",
                table.v()
            );
        }
    }

    #[test]
    fn self_duality_of_grid() {
        // Product labeling gives P = Q outright; under the deterministic
        // lexicographic idempotent order the witness becomes [0,2,3,1]
        // (worked out by hand from the product scheme).
        let cx = context_for(&latin_scheme(3, 2).unwrap());
        assert_eq!(cx.self_dual, Some(vec![0, 2, 3, 1]));
    }

    #[test]
    fn self_duality_of_latin_5_3_matches_permutation_oracle() {
        let cx = context_for(&latin_scheme(5, 3).unwrap());
        let sigma = cx
            .self_dual
            .clone()
            .expect("amorphic scheme must be self-dual");
        // Oracle: exhaustive search over all permutations of {1..d} for the
        // first one satisfying P[s(a)][b] = Q[a][s(b)] everywhere.
        let d = cx.d();
        let p = cx.spectral.p();
        let q = cx.spectral.q();
        let mut found = None;
        let mut perm: Vec<usize> = (1..=d).collect();
        'outer: loop {
            let cand: Vec<usize> = std::iter::once(0).chain(perm.iter().copied()).collect();
            if (0..=d).all(|a| (0..=d).all(|b| p.at(cand[a], b) == q.at(a, cand[b]))) {
                found = Some(cand);
                break;
            }
            // Next lexicographic permutation.
            let mut i = d - 1;
            while i > 0 && perm[i - 1] >= perm[i] {
                i -= 1;
            }
            if i == 0 {
                break 'outer;
            }
            let mut j = d - 1;
            while perm[j] <= perm[i - 1] {
                j -= 1;
            }
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        assert_eq!(Some(sigma), found);
    }

    #[test]
    fn self_duality_fails_on_johnson() {
        // J(7,3) has valencies (12,18,4) but multiplicities (6,14,14); no
        // renumbering can match them, so it is not formally self-dual.
        let cx = context_for(&crate::generators::johnson3(7).unwrap());
        assert_eq!(cx.self_dual, None);
    }

    #[test]
    fn audit_grid_consistent() {
        let cx = context_for(&latin_scheme(3, 2).unwrap());
        for out in theorem_audit(&cx) {
            assert!(out.consistent, "{out}");
        }
    }

    #[test]
    fn audit_example2_shape() {
        // Wreath of 2 copies over the grid: Theorem-5-shaped hypotheses are
        // false (the graph is disconnected), and so is the conclusion.
        let cx = context_for(&wreath(2, &latin_scheme(3, 2).unwrap()).unwrap());
        let outs = theorem_audit(&cx);
        let t5 = outs
            .iter()
            .find(|o| o.name == "connected-not-path-implies-amorphic")
            .unwrap();
        assert!(t5.applicable && !t5.hypothesis && !t5.conclusion && t5.consistent);
        for out in &outs {
            assert!(out.consistent, "{out}");
        }
    }

    #[test]
    fn audit_chain_path_consistent() {
        let cx = context_for(&wreath_chain(&[2, 2, 2, 2]).unwrap().0);
        let outs = theorem_audit(&cx);
        let t5 = outs
            .iter()
            .find(|o| o.name == "connected-not-path-implies-amorphic")
            .unwrap();
        assert!(t5.applicable && !t5.hypothesis);
        for out in &outs {
            assert!(out.consistent, "{out}");
        }
    }

    #[test]
    fn audit_all_pairs_on_amorphic_latin() {
        let cx = context_for(&latin_scheme(5, 4).unwrap());
        let outs = theorem_audit(&cx);
        let t2 = outs
            .iter()
            .find(|o| o.name == "all-relation-pairs-fuse-implies-amorphic")
            .unwrap();
        assert!(t2.hypothesis && t2.conclusion && t2.consistent);
    }
}
