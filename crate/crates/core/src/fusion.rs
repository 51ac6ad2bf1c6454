//! Fusions of relations and idempotents via the Bannai-Muzychuk criterion.
//!
//! The criterion is a pure statement about one eigenmatrix, so [`bm_check`]
//! takes a matrix and a partition and never touches a relation table;
//! table-level fusion is the separate [`fuse_relations`]. Running the
//! check on P decides fusions of relations, running it on Q decides
//! fusions of idempotents, with the roles of the two partitions swapped.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact::{Rat, RatMatrix};
use crate::scheme::{
    spectrum, validate_table, RelationTable, SchemeCore, SchemeError, SpectralData,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error("no fusion: {groups} distinct block row-sum classes (need {needed})")]
    NoFusion { groups: usize, needed: usize },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("fused eigenmatrix fails spectral invariants: {0}")]
    DegenerateFusion(String),
    #[error("table fusion disagrees with the Bannai-Muzychuk block sums (internal)")]
    InternalMismatch,
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// A partition of the relation (or idempotent) indices {1..d}; class 0 is
/// always implicitly its own part. Parts are stored sorted by smallest
/// contained index, each part ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexPartition {
    d: usize,
    parts: Vec<Vec<usize>>,
}

impl IndexPartition {
    pub fn new(d: usize, parts: Vec<Vec<usize>>) -> Result<Self, FusionError> {
        let mut seen = vec![false; d + 1];
        let mut norm: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for part in parts {
            if part.is_empty() {
                return Err(FusionError::BadPartition("empty part".into()));
            }
            let mut sorted = part;
            sorted.sort_unstable();
            for &i in &sorted {
                if i == 0 || i > d {
                    return Err(FusionError::BadPartition(format!(
                        "index {i} out of range 1..={d}"
                    )));
                }
                if seen[i] {
                    return Err(FusionError::BadPartition(format!("index {i} repeated")));
                }
                seen[i] = true;
            }
            norm.push(sorted);
        }
        if let Some(missing) = (1..=d).find(|&i| !seen[i]) {
            return Err(FusionError::BadPartition(format!(
                "index {missing} not covered"
            )));
        }
        norm.sort();
        Ok(IndexPartition { d, parts: norm })
    }

    pub fn singletons(d: usize) -> Self {
        IndexPartition {
            d,
            parts: (1..=d).map(|i| vec![i]).collect(),
        }
    }

    pub fn coarsest(d: usize) -> Self {
        IndexPartition {
            d,
            parts: vec![(1..=d).collect()],
        }
    }

    /// The pair {i,j} merged, everything else a singleton.
    pub fn pair(d: usize, i: usize, j: usize) -> Result<Self, FusionError> {
        if i == j {
            return Err(FusionError::BadPartition(
                "pair needs two distinct indices".into(),
            ));
        }
        let mut parts = vec![vec![i.min(j), i.max(j)]];
        parts.extend((1..=d).filter(|&h| h != i && h != j).map(|h| vec![h]));
        IndexPartition::new(d, parts)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_singletons(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1)
    }

    /// Part index (1-based) containing class i.
    pub fn part_of(&self, i: usize) -> Option<usize> {
        self.parts
            .iter()
            .position(|p| p.contains(&i))
            .map(|x| x + 1)
    }

    /// Parses the CLI syntax: parts separated by `|`, indices by `,`,
    /// class 0 never written. E.g. "1,2|3".
    pub fn parse(d: usize, s: &str) -> Result<Self, FusionError> {
        let mut parts = Vec::new();
        for chunk in s.split('|') {
            let mut part = Vec::new();
            for tok in chunk.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(FusionError::BadPartition(format!("empty index in {s:?}")));
                }
                let idx: usize = tok
                    .parse()
                    .map_err(|_| FusionError::BadPartition(format!("bad index {tok:?}")))?;
                part.push(idx);
            }
            parts.push(part);
        }
        IndexPartition::new(d, parts)
    }
}

impl fmt::Display for IndexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| {
                p.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Accepted fusion: the partition pair, the fused first eigenmatrix, and
/// the fused core when the fusion was carried out on a relation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionOutcome {
    /// Partition of the input matrix's column indices.
    pub pi: IndexPartition,
    /// Partition of the input matrix's row indices (the dual partition).
    pub rho: IndexPartition,
    /// Deduplicated block row-sum matrix, class-0 column first, rows
    /// ordered [row-0 group, rho parts by smallest index].
    pub fused_p: RatMatrix,
    pub fused_core: Option<SchemeCore>,
}

/// Bannai-Muzychuk criterion on one eigenmatrix. The partition is accepted
/// iff grouping rows by their block row-sum vectors yields exactly
/// |pi| + 1 groups with row 0 alone in its own group.
pub fn bm_check(m: &RatMatrix, pi: &IndexPartition) -> Result<FusionOutcome, FusionError> {
    let d = m.rows() - 1;
    if pi.d() != d {
        return Err(FusionError::BadPartition(format!(
            "partition is over 1..={}, matrix has d = {d}",
            pi.d()
        )));
    }
    let nparts = pi.len();
    // Block sums per row: class-0 column first.
    let mut sums: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    for l in 0..=d {
        let mut row = Vec::with_capacity(nparts + 1);
        row.push(m.at(l, 0).clone());
        for part in pi.parts() {
            row.push(part.iter().map(|&i| m.at(l, i)).sum());
        }
        sums.push(row);
    }
    let mut groups: BTreeMap<&[Rat], Vec<usize>> = BTreeMap::new();
    for (l, row) in sums.iter().enumerate() {
        groups.entry(row.as_slice()).or_default().push(l);
    }
    let needed = nparts + 1;
    if groups.len() != needed {
        return Err(FusionError::NoFusion {
            groups: groups.len(),
            needed,
        });
    }
    let row0_group = groups.values().find(|g| g.contains(&0)).unwrap();
    if row0_group.len() != 1 {
        return Err(FusionError::NoFusion {
            groups: groups.len(),
            needed,
        });
    }
    let rho_parts: Vec<Vec<usize>> = groups
        .values()
        .filter(|g| !g.contains(&0))
        .cloned()
        .collect();
    let rho = IndexPartition::new(d, rho_parts)?;
    let mut fused_rows = vec![sums[0].clone()];
    for part in rho.parts() {
        fused_rows.push(sums[part[0]].clone());
    }
    let fused_p = RatMatrix::from_rows(fused_rows).expect("at least one part");
    // The fused matrix must itself satisfy the spectral invariants.
    SpectralData::from_eigenmatrix(fused_p.clone())
        .map_err(|e| FusionError::DegenerateFusion(e.to_string()))?;
    Ok(FusionOutcome {
        pi: pi.clone(),
        rho,
        fused_p,
        fused_core: None,
    })
}

/// The relabeled table together with its re-validated core, spectrum, and
/// the accepting [`FusionOutcome`] (with `fused_core` filled in).
#[derive(Debug, Clone)]
pub struct FusedScheme {
    pub table: RelationTable,
    pub core: SchemeCore,
    pub spectral: SpectralData,
    pub outcome: FusionOutcome,
}

/// Fuses the relations of a table along an accepted partition: relabels
/// every cell by its 1-based part index, re-validates, and cross-checks
/// the fused spectrum against the block-sum matrix from [`bm_check`].
pub fn fuse_relations(
    table: &RelationTable,
    pi: &IndexPartition,
) -> Result<RelationTable, FusionError> {
    let core = validate_table(table)?;
    let spec = spectrum(&core)?;
    Ok(fuse_table_checked(table, pi, &spec)?.table)
}

/// Same as [`fuse_relations`] but reuses the caller's spectral data of the
/// input table and hands back everything computed for the fused scheme.
pub fn fuse_table_checked(
    table: &RelationTable,
    pi: &IndexPartition,
    spec: &SpectralData,
) -> Result<FusedScheme, FusionError> {
    let mut outcome = bm_check(spec.p(), pi)?;
    let mut label = vec![0u16; table.d() + 1];
    for (p_idx, part) in pi.parts().iter().enumerate() {
        for &i in part {
            label[i] = (p_idx + 1) as u16;
        }
    }
    let fused =
        RelationTable::from_fn(table.v(), pi.len(), |x, y| label[table.cell(x, y) as usize]);
    let fused_core = validate_table(&fused).map_err(|_| FusionError::InternalMismatch)?;
    let fused_spec = spectrum(&fused_core).map_err(|_| FusionError::InternalMismatch)?;
    // Same rows up to the deterministic ordering.
    let mut expected = outcome.fused_p.row_vecs();
    expected[1..].sort();
    if fused_spec.p().row_vecs() != expected {
        return Err(FusionError::InternalMismatch);
    }
    outcome.fused_core = Some(fused_core.clone());
    Ok(FusedScheme {
        table: fused,
        core: fused_core,
        spectral: fused_spec,
        outcome,
    })
}

/// A fusing pair with its dual pair under the Bannai-Muzychuk
/// correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FusingPair {
    pub pair: (usize, usize),
    pub dual: (usize, usize),
}

/// Every 2-subset {i,j} whose pair partition is accepted, with the unique
/// non-singleton part of rho as the dual pair. Sorted lexicographically.
pub fn fusing_pairs(m: &RatMatrix) -> Vec<FusingPair> {
    let d = m.rows() - 1;
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            let pi = IndexPartition::pair(d, i, j).expect("distinct indices");
            if let Ok(outcome) = bm_check(m, &pi) {
                let dual_part = outcome
                    .rho
                    .parts()
                    .iter()
                    .find(|p| p.len() == 2)
                    .expect("pair fusion has exactly one non-singleton dual part");
                out.push(FusingPair {
                    pair: (i, j),
                    dual: (dual_part[0], dual_part[1]),
                });
            }
        }
    }
    out.sort();
    out
}

/// A violation of the pair correspondence (an upstream bug, not a property
/// of the scheme).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionViolation {
    pub detail: String,
}

/// Asserts that pair -> dual pair from `fusing_pairs(P)` is a bijection
/// onto the fusing pairs of Q.
pub fn pair_bijection_check(p: &RatMatrix, q: &RatMatrix) -> Result<(), BijectionViolation> {
    let rel = fusing_pairs(p);
    let ide = fusing_pairs(q);
    let mut images: Vec<(usize, usize)> = rel.iter().map(|fp| fp.dual).collect();
    images.sort();
    let before = images.len();
    images.dedup();
    if images.len() != before {
        return Err(BijectionViolation {
            detail: "two fusing pairs of relations share a dual pair".into(),
        });
    }
    let ide_pairs: Vec<(usize, usize)> = ide.iter().map(|fp| fp.pair).collect();
    if images != ide_pairs {
        return Err(BijectionViolation {
            detail: format!("dual images {images:?} differ from fusing pairs of Q {ide_pairs:?}"),
        });
    }
    Ok(())
}
