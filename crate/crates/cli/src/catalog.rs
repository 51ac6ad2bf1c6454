//! The default verification catalog and user-supplied additions.

use std::path::Path;

use amorph_core::exact::RatMatrix;
use amorph_core::generators::{complete, johnson3, latin_scheme, wreath, wreath_chain};
use amorph_core::scheme::RelationTable;

use crate::input::{CliError, LoadedScheme};

/// Shape claims attached to generated schemes, verified by the battery.
#[derive(Debug, Clone)]
pub enum Expectation {
    /// Computed P equals the closed-form prediction and both fusing graphs
    /// are the path 1-2-...-d.
    ChainShape { predicted_p: RatMatrix },
    /// Both fusing graphs are K_{d-1} plus an isolated vertex; the
    /// isolated relation is the multipartite one (index d) and the
    /// isolated idempotent is the row with entry `isolated_eigenvalue` in
    /// the last column.
    WreathShape { isolated_eigenvalue: i64 },
    /// Amorphic by both deciders, with every relation of Latin square type.
    LatinAmorphic,
}

pub struct CatalogEntry {
    pub id: String,
    pub source: String,
    pub expectation: Option<Expectation>,
    /// The loaded scheme, or the loading error for corrupt entries.
    pub loaded: Result<LoadedScheme, CliError>,
}

fn generated(id: String, table: RelationTable, expectation: Option<Expectation>) -> CatalogEntry {
    CatalogEntry {
        source: format!("generated:{id}"),
        id,
        expectation,
        loaded: LoadedScheme::from_table(table),
    }
}

/// The default catalog: complete graphs, every {2,3}-chain of length 2..=5
/// with at most 300 vertices, wreath products over the grid scheme,
/// Latin-square schemes, and the Johnson control.
pub fn default_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push(generated(
            format!("complete-{n}"),
            complete(n).expect("n >= 2"),
            None,
        ));
    }
    for len in 2..=5usize {
        for mask in 0..(1u32 << len) {
            let ns: Vec<usize> = (0..len)
                .map(|i| if mask >> (len - 1 - i) & 1 == 0 { 2 } else { 3 })
                .collect();
            let v: usize = ns.iter().product();
            if v > 300 {
                continue;
            }
            let (table, predicted_p) = wreath_chain(&ns).expect("factors >= 2");
            let id = format!(
                "chain-{}",
                ns.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            out.push(generated(
                id,
                table,
                Some(Expectation::ChainShape { predicted_p }),
            ));
        }
    }
    let grid = latin_scheme(3, 2).expect("3 is prime");
    for m in 2..=3usize {
        let table = wreath(m, &grid).expect("m >= 2");
        out.push(generated(
            format!("wreath-{m}-latin-3-2"),
            table,
            Some(Expectation::WreathShape {
                isolated_eigenvalue: -(grid.v() as i64),
            }),
        ));
    }
    out.push(generated(
        "latin-3-2".into(),
        grid.clone(),
        Some(Expectation::LatinAmorphic),
    ));
    for t in 2..=5 {
        out.push(generated(
            format!("latin-5-{t}"),
            latin_scheme(5, t).expect("5 is prime, t in range"),
            Some(Expectation::LatinAmorphic),
        ));
    }
    out.push(generated(
        "johnson3-7".into(),
        johnson3(7).expect("7 >= 7"),
        None,
    ));
    out
}

/// Loads every `.scheme` / `.eigen` file in a directory, sorted by file
/// name for deterministic reports.
pub fn load_directory(dir: &Path) -> Result<Vec<CatalogEntry>, CliError> {
    let mut names: Vec<String> = Vec::new();
    let entries =
        std::fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.ends_with(".scheme") || name.ends_with(".eigen") {
            names.push(name);
        }
    }
    names.sort();
    Ok(names
        .into_iter()
        .map(|name| {
            let path = dir.join(&name);
            CatalogEntry {
                id: name.clone(),
                source: format!("file:{name}"),
                expectation: None,
                loaded: crate::input::load_path(&path),
            }
        })
        .collect())
}
