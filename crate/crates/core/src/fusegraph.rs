//! Fusing-relations and fusing-idempotents graphs, edge contraction, and
//! the structural predicates (connectivity, path shape, claw, small-graph
//! Hamiltonicity) that drive the theorem audit.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::exact::RatMatrix;
use crate::fusion::{fuse_table_checked, fusing_pairs, FusionError, IndexPartition};
use crate::scheme::{spectrum, validate_table, RelationTable};

/// Vertex limit for the exhaustive Hamiltonicity search.
pub const HAMILTONIAN_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuseGraphError {
    #[error("{{{a},{b}}} is not an edge")]
    NotAnEdge { a: usize, b: usize },
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

/// Simple graph on relation or idempotent indices. Each vertex carries a
/// label: the set of original indices it stands for ({i} initially, merged
/// sets after contractions). Vertices are kept sorted by smallest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusingGraph {
    labels: Vec<BTreeSet<usize>>,
    /// Edges as (a,b) vertex positions with a < b.
    edges: BTreeSet<(usize, usize)>,
}

impl FusingGraph {
    pub fn new(labels: Vec<BTreeSet<usize>>, edge_labels: &[(usize, usize)]) -> Self {
        let mut g = FusingGraph {
            labels,
            edges: BTreeSet::new(),
        };
        g.sort_labels();
        for &(i, j) in edge_labels {
            let a = g
                .vertex_of(i)
                .expect("edge endpoint must be a label member");
            let b = g
                .vertex_of(j)
                .expect("edge endpoint must be a label member");
            assert_ne!(a, b, "loops are not allowed");
            g.edges.insert((a.min(b), a.max(b)));
        }
        g
    }

    fn sort_labels(&mut self) {
        self.labels
            .sort_by_key(|l| *l.first().expect("labels are nonempty"));
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[BTreeSet<usize>] {
        &self.labels
    }

    /// Vertex position whose label contains the original index i.
    pub fn vertex_of(&self, i: usize) -> Option<usize> {
        self.labels.iter().position(|l| l.contains(&i))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Edges as pairs of vertex positions.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Contracts the edge between the vertices at positions `a` and `b`:
    /// their labels are unioned and parallel edges deduplicated.
    pub fn contract(&self, a: usize, b: usize) -> Result<FusingGraph, FuseGraphError> {
        if !self.has_edge(a, b) {
            return Err(FuseGraphError::NotAnEdge { a, b });
        }
        let merged: BTreeSet<usize> = self.labels[a].union(&self.labels[b]).copied().collect();
        let mut labels: Vec<BTreeSet<usize>> = Vec::with_capacity(self.labels.len() - 1);
        labels.push(merged);
        for (i, l) in self.labels.iter().enumerate() {
            if i != a && i != b {
                labels.push(l.clone());
            }
        }
        let mut g = FusingGraph {
            labels,
            edges: BTreeSet::new(),
        };
        g.sort_labels();
        for &(x, y) in &self.edges {
            if (x, y) == (a.min(b), a.max(b)) {
                continue;
            }
            let map = |v: usize| {
                let idx = if v == a || v == b {
                    *self.labels[a].first().unwrap()
                } else {
                    *self.labels[v].first().unwrap()
                };
                g.vertex_of(idx).unwrap()
            };
            let (nx, ny) = (map(x), map(y));
            g.edges.insert((nx.min(ny), nx.max(ny)));
        }
        Ok(g)
    }

    /// Deterministic DOT export: undirected graph, vertices labeled by
    /// comma-joined index sets, sorted by smallest index.
    pub fn to_dot(&self, name: &str) -> String {
        let label = |v: usize| {
            self.labels[v]
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for v in 0..self.labels.len() {
            writeln!(out, "  \"{}\";", label(v)).unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  \"{}\" -- \"{}\";", label(a), label(b)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The fusing graph of an eigenmatrix: vertices {1}..{d}, an edge per
/// accepted fusing pair. Pass P for the fusing-relations graph, Q for the
/// fusing-idempotents graph.
pub fn fusing_graph(m: &RatMatrix) -> FusingGraph {
    let d = m.rows() - 1;
    let labels = (1..=d).map(|i| BTreeSet::from([i])).collect();
    let edges: Vec<(usize, usize)> = fusing_pairs(m).iter().map(|fp| fp.pair).collect();
    FusingGraph::new(labels, &edges)
}

/// Structural profile of a fusing graph. `hamiltonian` is None when the
/// graph exceeds [`HAMILTONIAN_VERTEX_LIMIT`] (everything else is still
/// reported); it is defined false for graphs on at most 2 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProfile {
    pub connected: bool,
    pub is_path: bool,
    pub max_degree: usize,
    pub has_claw: bool,
    pub hamiltonian: Option<bool>,
    pub edge_count: usize,
}

pub fn graph_profile(g: &FusingGraph) -> GraphProfile {
    let n = g.vertex_count();
    let connected = is_connected(g);
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let deg1 = degrees.iter().filter(|&&d| d == 1).count();
    // P_1 (a single vertex) and P_2 count as paths.
    let is_path = connected && max_degree <= 2 && (n == 1 || deg1 == 2);
    // K_{1,3} as a subgraph (not induced) is exactly a degree condition.
    let has_claw = max_degree >= 3;
    let hamiltonian = if n > HAMILTONIAN_VERTEX_LIMIT {
        None
    } else {
        Some(has_hamiltonian_cycle(g))
    };
    GraphProfile {
        connected,
        is_path,
        max_degree,
        has_claw,
        hamiltonian,
        edge_count: g.edge_count(),
    }
}

fn is_connected(g: &FusingGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Exhaustive backtracking for a Hamiltonian cycle; false for graphs on
/// at most 2 vertices.
fn has_hamiltonian_cycle(g: &FusingGraph) -> bool {
    let n = g.vertex_count();
    if n <= 2 {
        return false;
    }
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut path = vec![0usize];
    extend_cycle(g, &mut path, &mut visited)
}

fn extend_cycle(g: &FusingGraph, path: &mut Vec<usize>, visited: &mut [bool]) -> bool {
    let n = g.vertex_count();
    let last = *path.last().unwrap();
    if path.len() == n {
        return g.has_edge(last, path[0]);
    }
    for w in g.neighbors(last) {
        if !visited[w] {
            visited[w] = true;
            path.push(w);
            if extend_cycle(g, path, visited) {
                return true;
            }
            path.pop();
            visited[w] = false;
        }
    }
    false
}

/// Outcome of the contraction-subgraph check on one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionContainment {
    /// True when the fused scheme's graph has strictly more edges than the
    /// contraction.
    pub strict: bool,
}

/// A missing edge found by [`lemma4_check`]; this reports an upstream bug,
/// never a property of the scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionViolation {
    pub missing_edge: (BTreeSet<usize>, BTreeSet<usize>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Lemma4Error {
    #[error(transparent)]
    Graph(#[from] FuseGraphError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("containment violated: contraction edge {0:?} missing from the fused scheme's graph")]
    Violation(ContractionViolation),
}

/// Fuses the pair {i,j}, rebuilds the fusing-relations graph, and checks
/// that every edge of the contraction appears in it under the label map.
pub fn lemma4_check(
    table: &RelationTable,
    i: usize,
    j: usize,
) -> Result<ContractionContainment, Lemma4Error> {
    let core = validate_table(table).map_err(FusionError::from)?;
    let spec = spectrum(&core).map_err(FusionError::from)?;
    let gamma = fusing_graph(spec.p());
    lemma4_check_with(table, &spec, &gamma, i, j)
}

/// [`lemma4_check`] with the input scheme's spectrum and graph precomputed.
pub fn lemma4_check_with(
    table: &RelationTable,
    spec: &crate::scheme::SpectralData,
    gamma: &FusingGraph,
    i: usize,
    j: usize,
) -> Result<ContractionContainment, Lemma4Error> {
    let (a, b) = (
        gamma.vertex_of(i).expect("index in range"),
        gamma.vertex_of(j).expect("index in range"),
    );
    let contracted = gamma.contract(a, b)?;
    let pi = IndexPartition::pair(table.d(), i, j)?;
    let fused = fuse_table_checked(table, &pi, spec)?;
    let fused_gamma = fusing_graph(fused.spectral.p());
    // Old index -> fused class = 1-based position of its part.
    let to_new = |old: usize| pi.part_of(old).expect("old index covered");
    for (x, y) in contracted.edges() {
        let lx = &contracted.labels()[x];
        let ly = &contracted.labels()[y];
        let nx = to_new(*lx.first().unwrap());
        let ny = to_new(*ly.first().unwrap());
        let fx = fused_gamma.vertex_of(nx).expect("class in range");
        let fy = fused_gamma.vertex_of(ny).expect("class in range");
        if !fused_gamma.has_edge(fx, fy) {
            return Err(Lemma4Error::Violation(ContractionViolation {
                missing_edge: (lx.clone(), ly.clone()),
            }));
        }
    }
    Ok(ContractionContainment {
        strict: fused_gamma.edge_count() > contracted.edge_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{johnson3, latin_scheme, wreath_chain};

    fn path_graph(n: usize) -> FusingGraph {
        let labels = (1..=n).map(|i| BTreeSet::from([i])).collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        FusingGraph::new(labels, &edges)
    }

    fn complete_graph(n: usize) -> FusingGraph {
        let labels = (1..=n).map(|i| BTreeSet::from([i])).collect();
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        FusingGraph::new(labels, &edges)
    }

    #[test]
    fn chain_graph_is_path() {
        let (t, _) = wreath_chain(&[2, 2, 2, 2]).unwrap();
        let core = validate_table(&t).unwrap();
        let s = spectrum(&core).unwrap();
        let g = fusing_graph(s.p());
        assert_eq!(g, path_graph(4));
        let gq = fusing_graph(s.q());
        assert_eq!(gq, path_graph(4));
    }

    #[test]
    fn grid_graph_is_triangle() {
        let t = latin_scheme(3, 2).unwrap();
        let core = validate_table(&t).unwrap();
        let s = spectrum(&core).unwrap();
        assert_eq!(fusing_graph(s.p()), complete_graph(3));
    }

    #[test]
    fn contract_path_and_triangle() {
        let p3 = path_graph(3);
        let c = p3.contract(0, 1).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 1);
        assert_eq!(c.labels()[0], BTreeSet::from([1, 2]));
        let k3 = complete_graph(3);
        let ck = k3.contract(0, 1).unwrap();
        assert_eq!((ck.vertex_count(), ck.edge_count()), (2, 1));
    }

    #[test]
    fn contract_star_spoke_gives_p3() {
        // K_{1,3} with center 1; contracting a spoke leaves a path on 3.
        let labels = (1..=4).map(|i| BTreeSet::from([i])).collect();
        let star = FusingGraph::new(labels, &[(1, 2), (1, 3), (1, 4)]);
        let c = star.contract(0, 1).unwrap();
        let profile = graph_profile(&c);
        assert_eq!(c.vertex_count(), 3);
        assert!(profile.is_path);
    }

    #[test]
    fn contract_requires_an_edge() {
        let p3 = path_graph(3);
        assert_eq!(
            p3.contract(0, 2),
            Err(FuseGraphError::NotAnEdge { a: 0, b: 2 })
        );
    }

    #[test]
    fn profile_p5() {
        let p = graph_profile(&path_graph(5));
        assert_eq!(
            p,
            GraphProfile {
                connected: true,
                is_path: true,
                max_degree: 2,
                has_claw: false,
                hamiltonian: Some(false),
                edge_count: 4,
            }
        );
    }

    #[test]
    fn profile_k3_plus_isolated() {
        let mut labels: Vec<BTreeSet<usize>> = (1..=4).map(|i| BTreeSet::from([i])).collect();
        labels.rotate_left(0);
        let g = FusingGraph::new(labels, &[(1, 2), (1, 3), (2, 3)]);
        let p = graph_profile(&g);
        assert!(!p.connected);
        assert!(!p.is_path);
        assert_eq!(p.max_degree, 2);
        assert_eq!(p.edge_count, 3);
    }

    #[test]
    fn profile_k4() {
        let p = graph_profile(&complete_graph(4));
        assert!(p.connected && !p.is_path);
        assert_eq!(p.max_degree, 3);
        assert!(p.has_claw);
        assert_eq!(p.hamiltonian, Some(true));
        assert_eq!(p.edge_count, 6);
    }

    #[test]
    fn hamiltonian_unknown_above_the_bound() {
        let g = path_graph(HAMILTONIAN_VERTEX_LIMIT + 1);
        let p = graph_profile(&g);
        assert_eq!(p.hamiltonian, None);
        assert!(p.is_path);
    }

    #[test]
    fn contract_edge_count_and_connectivity_invariants() {
        let graphs = vec![
            path_graph(5),
            complete_graph(4),
            complete_graph(5),
            FusingGraph::new(
                (1..=5).map(|i| BTreeSet::from([i])).collect(),
                &[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (1, 5)],
            ),
        ];
        for g in graphs {
            let before = g.edge_count();
            let connected_before = graph_profile(&g).connected;
            for (a, b) in g.edges().collect::<Vec<_>>() {
                let common = (0..g.vertex_count())
                    .filter(|&w| w != a && w != b && g.has_edge(a, w) && g.has_edge(b, w))
                    .count();
                let c = g.contract(a, b).unwrap();
                assert_eq!(c.edge_count(), before - 1 - common);
                assert!(c.edge_count() < before);
                if connected_before {
                    assert!(graph_profile(&c).connected);
                }
            }
        }
    }

    #[test]
    fn profile_single_vertex_and_edge() {
        let p1 = graph_profile(&path_graph(1));
        assert!(p1.is_path && p1.connected);
        assert_eq!(p1.hamiltonian, Some(false));
        let p2 = graph_profile(&path_graph(2));
        assert!(p2.is_path);
        assert_eq!(p2.hamiltonian, Some(false));
    }

    #[test]
    fn claw_matches_naive_subgraph_search() {
        // Oracle: enumerate every candidate embedding of K_{1,3} (a center
        // with three distinct leaves, all three spokes present).
        fn naive_has_claw(g: &FusingGraph) -> bool {
            let n = g.vertex_count();
            for c in 0..n {
                for x in 0..n {
                    for y in x + 1..n {
                        for z in y + 1..n {
                            if x != c
                                && y != c
                                && z != c
                                && g.has_edge(c, x)
                                && g.has_edge(c, y)
                                && g.has_edge(c, z)
                            {
                                return true;
                            }
                        }
                    }
                }
            }
            false
        }
        let star = FusingGraph::new(
            (1..=4).map(|i| BTreeSet::from([i])).collect(),
            &[(1, 2), (1, 3), (1, 4)],
        );
        for g in [
            path_graph(5),
            complete_graph(3),
            complete_graph(4),
            complete_graph(5),
            star,
        ] {
            assert_eq!(graph_profile(&g).has_claw, naive_has_claw(&g));
        }
    }

    #[test]
    fn lemma4_on_chain_edge() {
        let (t, _) = wreath_chain(&[2, 2, 2]).unwrap();
        let out = lemma4_check(&t, 1, 2).unwrap();
        // Fused scheme is 2-class: its graph is K_2, the contraction too.
        assert!(!out.strict);
    }

    #[test]
    fn lemma4_on_grid_edges() {
        let t = latin_scheme(3, 2).unwrap();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            lemma4_check(&t, i, j).unwrap();
        }
    }

    #[test]
    fn lemma4_johnson_strict_containment() {
        // J(7,3) has exactly one strongly regular relation; its graph is
        // K_2 plus an isolated vertex, and fusing the edge pair gives a
        // 2-class scheme whose graph K_2 strictly contains the contraction
        // K_1 + K_1.
        let t = johnson3(7).unwrap();
        let core = validate_table(&t).unwrap();
        let s = spectrum(&core).unwrap();
        let g = fusing_graph(s.p());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges.len(), 1);
        let (a, b) = edges[0];
        let (i, j) = (
            *g.labels()[a].first().unwrap(),
            *g.labels()[b].first().unwrap(),
        );
        assert_eq!((i, j), (1, 3));
        let out = lemma4_check(&t, i, j).unwrap();
        assert!(out.strict);
    }

    #[test]
    fn dot_export_is_deterministic() {
        let g = complete_graph(3);
        let dot = g.to_dot("fusing");
        assert_eq!(
            dot,
            "graph fusing {\n  \"1\";\n  \"2\";\n  \"3\";\n  \"1\" -- \"2\";\n  \"1\" -- \"3\";\n  \"2\" -- \"3\";\n}\n"
        );
    }
}
