//! The verify-paper battery: a registry of named checks, each run against
//! every catalog scheme. A violation anywhere is a build failure; partial
//! catalog failures (corrupt files) are recorded per scheme without
//! aborting the run.

use std::collections::BTreeMap;

use amorph_core::amorphic::{amorphic_verdict, SchemeContext};
use amorph_core::exact::{rat, Rat, RatMatrix};
use amorph_core::fusegraph::lemma4_check_with;
use amorph_core::fusion::{bm_check, pair_bijection_check, IndexPartition};
use amorph_core::scheme::{rowcol_check, RelationTable, SchemeCore, SpectralData};
use amorph_core::srg::{
    classify_srg, complement_type, dual_railway_on_scheme, railway, smith_check, sr_column_data,
    sr_detect, sr_idempotent_two_class, union_type, TypeTag,
};
use num_traits::{Signed, Zero};

use crate::catalog::{CatalogEntry, Expectation};
use crate::report::{
    AuditReport, CheckReport, GraphReport, GraphsReport, PairCounts, SchemeReport, Summary,
    VerdictReport, REPORT_VERSION,
};

/// One catalog scheme with everything precomputed for the checks.
pub struct SchemeData {
    pub id: String,
    pub source: String,
    pub table: Option<RelationTable>,
    pub core: Option<SchemeCore>,
    pub spectral: SpectralData,
    pub cx: SchemeContext,
    pub expectation: Option<Expectation>,
}

#[derive(Debug, Default)]
pub struct CheckOutcome {
    pub checks: u64,
    pub violations: Vec<String>,
}

impl CheckOutcome {
    fn pass(&mut self) {
        self.checks += 1;
    }

    fn assert(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(msg());
        }
    }
}

/// A named paper check run against one scheme.
pub trait PaperCheck: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, s: &SchemeData) -> CheckOutcome;
}

struct SpectralStructure;
impl PaperCheck for SpectralStructure {
    fn name(&self) -> &'static str {
        "spectral-structure"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        let spec = &s.spectral;
        let d = spec.d();
        let v = rat(spec.v() as i64);
        let pq = spec.p().mul(spec.q());
        out.assert(pq == RatMatrix::identity(d + 1).scale(&v), || {
            "PQ differs from vI".into()
        });
        let msum: Rat = (0..=d)
            .map(|j| Rat::from_integer(spec.multiplicity(j).clone()))
            .sum();
        out.assert(msum == v, || "multiplicities do not sum to v".into());
        for l in 0..=d {
            out.assert(spec.p().at(l, 0) == &rat(1), || {
                format!("P[{l}][0] is not 1")
            });
            out.assert(spec.q().at(l, 0) == &rat(1), || {
                format!("Q[{l}][0] is not 1")
            });
        }
        if let Some(core) = &s.core {
            for i in 1..=d {
                out.assert(spec.p().at(0, i) == &rat(core.valency(i) as i64), || {
                    format!("P[0][{i}] differs from the valency")
                });
            }
        }
        for h in 0..=d {
            for i in 0..=d {
                for j in 0..=i {
                    let q = spec.krein(h, i, j);
                    out.assert(!q.is_negative(), || {
                        format!("Krein q^{h}_{{{i},{j}}} negative")
                    });
                    out.assert(q == spec.krein(h, j, i), || {
                        format!("Krein q^{h} not symmetric at ({i},{j})")
                    });
                }
            }
        }
        for i in 0..=d {
            for j in 0..=d {
                let expected = if i == j {
                    Rat::from_integer(spec.multiplicity(i).clone())
                } else {
                    Rat::zero()
                };
                out.assert(spec.krein(0, i, j) == &expected, || {
                    format!("q^0_{{{i},{j}}} differs from m_i delta_ij")
                });
            }
        }
        out
    }
}

struct Lemma1RowCol;
impl PaperCheck for Lemma1RowCol {
    fn name(&self) -> &'static str {
        "lemma1-rowcol"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        if s.spectral.d() > 10 {
            return out;
        }
        for (label, m) in [("P", s.spectral.p()), ("Q", s.spectral.q())] {
            out.assert(rowcol_check(m, false).is_ok(), || {
                let err = rowcol_check(m, false).unwrap_err();
                format!(
                    "{label}: rows {:?} have only {} non-constant columns",
                    err.rows, err.nonconstant_cols
                )
            });
        }
        out
    }
}

struct Lemma3Bijection;
impl PaperCheck for Lemma3Bijection {
    fn name(&self) -> &'static str {
        "lemma3-pair-bijection"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        match pair_bijection_check(s.spectral.p(), s.spectral.q()) {
            Ok(()) => out.pass(),
            Err(e) => out.assert(false, || e.detail),
        }
        out.assert(
            s.cx.graph_p.edge_count() == s.cx.graph_q.edge_count(),
            || "fusing graphs of P and Q have different edge counts".into(),
        );
        // Duality round-trip: accepting pi on P yields rho; accepting rho
        // on Q must yield pi back.
        let d = s.spectral.d();
        for fp in amorph_core::fusion::fusing_pairs(s.spectral.p()) {
            let pi = IndexPartition::pair(d, fp.pair.0, fp.pair.1).expect("valid pair");
            let rho = IndexPartition::pair(d, fp.dual.0, fp.dual.1).expect("valid pair");
            match bm_check(s.spectral.q(), &rho) {
                Ok(back) => out.assert(back.rho == pi, || {
                    format!(
                        "pair {{{},{}}}: round-trip through Q gave {} instead of {}",
                        fp.pair.0, fp.pair.1, back.rho, pi
                    )
                }),
                Err(e) => out.assert(false, || {
                    format!(
                        "pair {{{},{}}}: dual partition rejected on Q: {e}",
                        fp.pair.0, fp.pair.1
                    )
                }),
            }
        }
        out
    }
}

struct Lemma4Contraction;
impl PaperCheck for Lemma4Contraction {
    fn name(&self) -> &'static str {
        "lemma4-contraction"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        let Some(table) = &s.table else {
            return out;
        };
        let edges: Vec<(usize, usize)> =
            s.cx.graph_p
                .edges()
                .map(|(a, b)| {
                    (
                        *s.cx.graph_p.labels()[a].first().unwrap(),
                        *s.cx.graph_p.labels()[b].first().unwrap(),
                    )
                })
                .collect();
        for (i, j) in edges {
            match lemma4_check_with(table, &s.spectral, &s.cx.graph_p, i, j) {
                Ok(_) => out.pass(),
                Err(e) => out.assert(false, || format!("edge {{{i},{j}}}: {e}")),
            }
        }
        out
    }
}

/// Aggregates (theta, multiplicity) pairs by eigenvalue, dropping zeros.
fn aggregate(pairs: impl IntoIterator<Item = (Rat, Rat)>) -> BTreeMap<Rat, Rat> {
    let mut map: BTreeMap<Rat, Rat> = BTreeMap::new();
    for (theta, m) in pairs {
        *map.entry(theta).or_insert_with(Rat::zero) += m;
    }
    map.retain(|_, m| !m.is_zero());
    map
}

struct RailwayPairs;
impl PaperCheck for RailwayPairs {
    fn name(&self) -> &'static str {
        "lemma2-railway"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        let spec = &s.spectral;
        let d = spec.d();
        let v = spec.v() as u64;
        let sr = sr_detect(spec.p());
        for (x, &i) in sr.iter().enumerate() {
            for &j in &sr[x + 1..] {
                let (k1, a1, b1) = sr_column_data(spec.p(), i).expect("sr relation");
                let (k2, a2, b2) = sr_column_data(spec.p(), j).expect("sr relation");
                let formula = match railway(v, k1, &a1, &b1, k2, &a2, &b2) {
                    Ok(f) => f,
                    Err(e) => {
                        out.assert(false, || format!("pair {{{i},{j}}}: {e}"));
                        continue;
                    }
                };
                // Direct spectrum of A_i + A_j: eigenvalue P[l][i]+P[l][j]
                // with multiplicity m_l, over the restricted rows.
                let direct = aggregate((1..=d).map(|l| {
                    (
                        spec.p().at(l, i) + spec.p().at(l, j),
                        Rat::from_integer(spec.multiplicity(l).clone()),
                    )
                }));
                let predicted = aggregate(formula);
                out.assert(direct == predicted, || {
                    format!("pair {{{i},{j}}}: railway spectrum differs from the scheme")
                });
            }
        }
        out
    }
}

struct DualRailwayPairs;
impl PaperCheck for DualRailwayPairs {
    fn name(&self) -> &'static str {
        "lemma9-dual-railway"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        let spec = &s.spectral;
        let sr = sr_detect(spec.q());
        for (x, &j1) in sr.iter().enumerate() {
            for &j2 in &sr[x + 1..] {
                match dual_railway_on_scheme(spec, j1, j2) {
                    Ok(o) => {
                        let total: Rat = o.ells.iter().cloned().sum();
                        out.assert(total == rat(spec.v() as i64 - 1), || {
                            format!("idempotents {{{j1},{j2}}}: l values do not sum to v-1")
                        });
                    }
                    Err(e) => out.assert(false, || format!("idempotents {{{j1},{j2}}}: {e}")),
                }
            }
        }
        out
    }
}

struct SmithIdempotents;
impl PaperCheck for SmithIdempotents {
    fn name(&self) -> &'static str {
        "lemma8-smith"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        let spec = &s.spectral;
        let d = spec.d();
        if d < 2 {
            return out;
        }
        for j in sr_detect(spec.q()) {
            // The idempotent generates a 2-class fusion of the idempotents.
            let rest: Vec<usize> = (1..=d).filter(|&x| x != j).collect();
            let rho =
                IndexPartition::new(d, vec![vec![j], rest]).expect("valid two-part partition");
            out.assert(bm_check(spec.q(), &rho).is_ok(), || {
                format!("idempotent {j}: its 2-class fusion is rejected")
            });
            match sr_idempotent_two_class(spec, j) {
                Ok((ide, q111, q211)) => match smith_check(&ide, &q111, &q211) {
                    Ok(()) => out.pass(),
                    Err(e) => out.assert(false, || format!("idempotent {j}: {}", e.detail)),
                },
                Err(e) => out.assert(false, || format!("idempotent {j}: {e}")),
            }
        }
        out
    }
}

struct DeciderAgreement;
impl PaperCheck for DeciderAgreement {
    fn name(&self) -> &'static str {
        "decider-agreement"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        if let Some(oracle_says) = s.cx.oracle.is_amorphic() {
            // Every enumerated partition was one Bannai-Muzychuk check.
            out.checks += bell(s.spectral.d()) as u64;
            out.assert(oracle_says == s.cx.canonical.is_canonical(), || {
                format!(
                    "canonical says {}, oracle says {oracle_says}",
                    s.cx.canonical.is_canonical()
                )
            });
        }
        out
    }
}

fn bell(n: usize) -> usize {
    // Bell numbers via the triangle; n stays below 13 here.
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

struct TheoremAudit;
impl PaperCheck for TheoremAudit {
    fn name(&self) -> &'static str {
        "theorem-audit"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        for st in amorph_core::amorphic::theorem_audit(&s.cx) {
            if !st.applicable {
                continue;
            }
            out.assert(st.consistent, || format!("{st}"));
        }
        out
    }
}

struct TypeClosure;
impl PaperCheck for TypeClosure {
    fn name(&self) -> &'static str {
        "lemma7-type-closure"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        let spec = &s.spectral;
        let d = spec.d();
        let v = spec.v() as u64;
        let typed: Vec<(usize, u64, Vec<TypeTag>)> = sr_detect(spec.p())
            .into_iter()
            .filter_map(|i| {
                let (k, a, b) = sr_column_data(spec.p(), i)?;
                let tags: Vec<TypeTag> = classify_srg(v, k, &a, &b)
                    .ok()?
                    .into_iter()
                    .filter(|t| t.is_latin() || t.is_negative_latin())
                    .collect();
                if tags.is_empty() {
                    None
                } else {
                    Some((i, k, tags))
                }
            })
            .collect();
        // Complement closure: the complement of relation i is the union of
        // everything else; its column values are -1-x.
        for (i, k, tags) in &typed {
            let comp_k = v - 1 - k;
            if comp_k == 0 || comp_k >= v - 1 {
                continue;
            }
            let (_, a, b) = sr_column_data(spec.p(), *i).expect("typed relation");
            let (ca, cb) = (-rat(1) - &b, -rat(1) - &a);
            let comp_tags = match classify_srg(v, comp_k, &ca, &cb) {
                Ok(t) => t,
                Err(e) => {
                    out.assert(false, || format!("complement of relation {i}: {e}"));
                    continue;
                }
            };
            for tag in tags {
                match complement_type(v, *k, tag) {
                    Ok((_, ctag)) => out.assert(comp_tags.contains(&ctag), || {
                        format!("complement of relation {i}: {ctag} missing from {comp_tags:?}")
                    }),
                    Err(e) => out.assert(false, || format!("complement of relation {i}: {e}")),
                }
            }
        }
        // Union closure on same-type pairs whose union is strongly regular.
        for (x, (i, k1, tags1)) in typed.iter().enumerate() {
            for (j, k2, tags2) in &typed[x + 1..] {
                let union_vals =
                    aggregate((1..=d).map(|l| (spec.p().at(l, *i) + spec.p().at(l, *j), rat(1))));
                if union_vals.len() != 2 {
                    continue;
                }
                let mut vals: Vec<Rat> = union_vals.into_keys().collect();
                vals.sort();
                for t1 in tags1 {
                    for t2 in tags2 {
                        let same_variant = t1.is_latin() == t2.is_latin();
                        if !same_variant {
                            continue;
                        }
                        let Ok((params, utag)) = union_type(v, t1, t2) else {
                            continue;
                        };
                        out.assert(
                            params.k == k1 + k2
                                && params.s == vals[0]
                                && params.r == vals[1]
                                && classify_srg(v, params.k, &params.r, &params.s)
                                    .map(|ts| ts.contains(&utag))
                                    .unwrap_or(false),
                            || format!("union of relations {{{i},{j}}}: closure mismatch"),
                        );
                    }
                }
            }
        }
        out
    }
}

struct ExampleShapes;
impl PaperCheck for ExampleShapes {
    fn name(&self) -> &'static str {
        "example-shapes"
    }

    fn run(&self, s: &SchemeData) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        let Some(expectation) = &s.expectation else {
            return out;
        };
        let d = s.spectral.d();
        let path_edges: Vec<(usize, usize)> = (1..d).map(|i| (i, i + 1)).collect();
        let clique_edges = |top: usize| -> Vec<(usize, usize)> {
            let mut e = Vec::new();
            for i in 1..=top {
                for j in i + 1..=top {
                    e.push((i, j));
                }
            }
            e
        };
        let graph_edges = |g: &amorph_core::fusegraph::FusingGraph| -> Vec<(usize, usize)> {
            g.edges()
                .map(|(a, b)| {
                    let x = *g.labels()[a].first().unwrap();
                    let y = *g.labels()[b].first().unwrap();
                    (x.min(y), x.max(y))
                })
                .collect()
        };
        match expectation {
            Expectation::ChainShape { predicted_p } => {
                out.assert(s.spectral.p() == predicted_p, || {
                    "computed P differs from the closed-form prediction".into()
                });
                out.assert(graph_edges(&s.cx.graph_p) == path_edges, || {
                    "fusing-relations graph is not the consecutive path".into()
                });
                out.assert(graph_edges(&s.cx.graph_q) == path_edges, || {
                    "fusing-idempotents graph is not the consecutive path".into()
                });
            }
            Expectation::WreathShape {
                isolated_eigenvalue,
            } => {
                let expected = clique_edges(d - 1);
                out.assert(graph_edges(&s.cx.graph_p) == expected, || {
                    "fusing-relations graph is not K_{d-1} plus an isolated vertex".into()
                });
                out.assert(graph_edges(&s.cx.graph_q) == expected, || {
                    "fusing-idempotents graph is not K_{d-1} plus an isolated vertex".into()
                });
                // The isolated relation is the multipartite one (label d);
                // the isolated idempotent is the row whose last entry is
                // -v_inner.
                let iso = rat(*isolated_eigenvalue);
                let idx = (1..=d).find(|&l| s.spectral.p().at(l, d) == &iso);
                match idx {
                    Some(l) => out.assert(
                        s.cx.graph_q
                            .vertex_of(l)
                            .map(|vtx| s.cx.graph_q.degree(vtx))
                            == Some(0),
                        || format!("idempotent {l} (the multipartite one) is not isolated"),
                    ),
                    None => out.assert(false, || "no idempotent row carries -v_inner".into()),
                }
            }
            Expectation::LatinAmorphic => {
                out.assert(s.cx.canonical.is_canonical(), || {
                    "canonical check says no".into()
                });
                out.assert(s.cx.oracle.is_amorphic() == Some(true), || {
                    "oracle says not amorphic".into()
                });
                for (idx, tags) in s.cx.relation_tags.iter().enumerate() {
                    out.assert(tags.iter().any(|t| t.is_latin()), || {
                        format!("relation {} is not of Latin square type", idx + 1)
                    });
                }
            }
        }
        out
    }
}

/// All checks, in report order.
pub fn check_registry() -> &'static [&'static dyn PaperCheck] {
    &[
        &SpectralStructure,
        &Lemma1RowCol,
        &Lemma3Bijection,
        &Lemma4Contraction,
        &RailwayPairs,
        &DualRailwayPairs,
        &SmithIdempotents,
        &DeciderAgreement,
        &TheoremAudit,
        &TypeClosure,
        &ExampleShapes,
    ]
}

/// Builds the precomputed data for one entry, or records its error.
pub fn build_scheme_data(entry: CatalogEntry) -> Result<SchemeData, Box<SchemeReport>> {
    let CatalogEntry {
        id,
        source,
        expectation,
        loaded,
    } = entry;
    match loaded {
        Ok(loaded) => {
            let cx = SchemeContext::build(loaded.core.clone(), loaded.spectral.clone());
            Ok(SchemeData {
                id,
                source,
                table: loaded.table,
                core: loaded.core,
                spectral: loaded.spectral,
                cx,
                expectation,
            })
        }
        Err(e) => Err(Box::new(SchemeReport {
            id,
            source,
            v: None,
            d: None,
            error: Some(e.to_string()),
            verdicts: None,
            graphs: None,
            pair_counts: None,
            checks: Vec::new(),
        })),
    }
}

/// Runs every check against every entry and assembles the report.
pub fn run_battery(entries: Vec<CatalogEntry>) -> AuditReport {
    let mut schemes = Vec::new();
    let mut total_checks = 0u64;
    let mut total_violations = 0u64;
    for entry in entries {
        match build_scheme_data(entry) {
            Ok(data) => {
                let mut checks = Vec::new();
                for check in check_registry() {
                    let outcome = check.run(&data);
                    total_checks += outcome.checks;
                    total_violations += outcome.violations.len() as u64;
                    checks.push(CheckReport {
                        name: check.name().to_string(),
                        checks: outcome.checks,
                        violations: outcome.violations,
                    });
                }
                let verdict = amorphic_verdict(&data.cx);
                schemes.push(SchemeReport {
                    id: data.id,
                    source: data.source,
                    v: Some(data.spectral.v()),
                    d: Some(data.spectral.d()),
                    error: None,
                    verdicts: Some(VerdictReport::from_verdict(&verdict)),
                    graphs: Some(GraphsReport {
                        relations: GraphReport::from_graph(&data.cx.graph_p, &data.cx.profile_p),
                        idempotents: GraphReport::from_graph(&data.cx.graph_q, &data.cx.profile_q),
                    }),
                    pair_counts: Some(PairCounts {
                        relation_pairs: data.cx.graph_p.edge_count(),
                        idempotent_pairs: data.cx.graph_q.edge_count(),
                    }),
                    checks,
                });
            }
            Err(report) => {
                // A corrupt entry is not itself a violation of the paper's
                // statements, but it is recorded verbatim.
                schemes.push(*report);
            }
        }
    }
    AuditReport {
        report_version: REPORT_VERSION,
        schemes,
        summary: Summary {
            total_checks,
            violations: total_violations,
        },
    }
}
