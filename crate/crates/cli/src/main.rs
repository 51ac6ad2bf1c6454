//! Command-line surface for the association scheme engine.
//!
//! Exit codes: 0 on success, 1 on a property violation (invalid scheme,
//! NoFusion for `fuse`, verify-paper violations), 2 on usage or parse
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use amorph_cli::battery::run_battery;
use amorph_cli::catalog::{default_catalog, load_directory};
use amorph_cli::genreg::find_generator;
use amorph_cli::input::{load_path, CliError};
use amorph_core::amorphic::{
    brute_force_amorphic, canonical_check, CanonicalOutcome, OracleOutcome,
};
use amorph_core::exact::RatMatrix;
use amorph_core::fusegraph::{fusing_graph, graph_profile};
use amorph_core::fusion::{bm_check, fuse_relations, fusing_pairs, FusionError, IndexPartition};
use amorph_core::srg::{classify_srg, sr_column_data, sr_detect};
use amorph_core::text::{render_eigenmatrix, render_scheme};

#[derive(Parser)]
#[command(
    name = "amorph",
    about = "Exact toolkit for symmetric association schemes: spectra, fusions, fusing graphs, amorphicity",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a relation table (or the invariants of an eigenmatrix).
    Validate { file: PathBuf },
    /// Print the exact eigenmatrices, multiplicities and Krein status.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Fuse classes along a partition such as "1,2|3".
    Fuse {
        file: PathBuf,
        #[arg(long)]
        parts: String,
    },
    /// List fusing pairs with their dual pairs.
    Pairs {
        file: PathBuf,
        /// Work on the second eigenmatrix (fusing idempotents).
        #[arg(long)]
        dual: bool,
    },
    /// Print a fusing graph profile and optionally export DOT.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: GraphKind,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide amorphicity by the canonical-form criterion.
    Amorphic {
        file: PathBuf,
        /// Also run the all-partitions oracle and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Classify strongly regular relations and idempotents by type.
    Classify { file: PathBuf },
    /// Generate a scheme: complete N | wreath M FILE | chain N1,N2,... |
    /// latin N T | johnson3 N.
    Gen {
        kind: String,
        args: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run the full verification battery over the scheme catalog.
    VerifyPaper {
        /// Directory of extra .scheme/.eigen files to audit.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Relations,
    Idempotents,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Validate { file } => {
            let loaded = load_path(&file)?;
            match (&loaded.table, &loaded.core) {
                (Some(_), Some(core)) => {
                    println!(
                        "valid association scheme: v={} d={} k={:?}",
                        core.v(),
                        core.d(),
                        core.valencies()
                    );
                }
                _ => {
                    let s = &loaded.spectral;
                    println!(
                        "valid eigenmatrix: v={} d={} integral={}",
                        s.v(),
                        s.d(),
                        s.integral()
                    );
                }
            }
            Ok(())
        }
        Command::Spectrum { file, json } => {
            let loaded = load_path(&file)?;
            let s = &loaded.spectral;
            if json {
                let render = |m: &RatMatrix| -> Vec<Vec<String>> {
                    (0..m.rows())
                        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
                        .collect()
                };
                let doc = serde_json::json!({
                    "v": s.v(),
                    "d": s.d(),
                    "p": render(s.p()),
                    "q": render(s.q()),
                    "multiplicities": s.multiplicities().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "integral": s.integral(),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            } else {
                println!("v = {}, d = {}", s.v(), s.d());
                print!("P:\n{}", render_eigenmatrix(s.p()));
                print!("Q:\n{}", render_eigenmatrix(s.q()));
                let ms: Vec<String> = s.multiplicities().iter().map(|m| m.to_string()).collect();
                println!("multiplicities: {}", ms.join(" "));
                println!("integral: {}", s.integral());
            }
            Ok(())
        }
        Command::Fuse { file, parts } => {
            let loaded = load_path(&file)?;
            let d = loaded.spectral.d();
            let pi =
                IndexPartition::parse(d, &parts).map_err(|e| CliError::Input(e.to_string()))?;
            let outcome = bm_check(loaded.spectral.p(), &pi).map_err(|e| match e {
                FusionError::NoFusion { .. } => CliError::Violation(format!("no fusion: {e}")),
                other => CliError::Input(other.to_string()),
            })?;
            println!("fusion: pi = {}  <->  rho = {}", outcome.pi, outcome.rho);
            print!("fused P:\n{}", render_eigenmatrix(&outcome.fused_p));
            if let Some(table) = &loaded.table {
                let fused =
                    fuse_relations(table, &pi).map_err(|e| CliError::Violation(e.to_string()))?;
                let core =
                    amorph_core::scheme::validate_table(&fused).expect("fused table re-validates");
                println!(
                    "fused scheme: v={} d={} k={:?}",
                    core.v(),
                    core.d(),
                    core.valencies()
                );
            }
            Ok(())
        }
        Command::Pairs { file, dual } => {
            let loaded = load_path(&file)?;
            let m = if dual {
                loaded.spectral.q()
            } else {
                loaded.spectral.p()
            };
            let pairs = fusing_pairs(m);
            if pairs.is_empty() {
                println!("no fusing pairs");
            }
            for fp in pairs {
                println!(
                    "{{{},{}}} <-> {{{},{}}}",
                    fp.pair.0, fp.pair.1, fp.dual.0, fp.dual.1
                );
            }
            Ok(())
        }
        Command::Graph { file, kind, dot } => {
            let loaded = load_path(&file)?;
            let m = match kind {
                GraphKind::Relations => loaded.spectral.p(),
                GraphKind::Idempotents => loaded.spectral.q(),
            };
            let g = fusing_graph(m);
            let profile = graph_profile(&g);
            let edges: Vec<String> = g
                .edges()
                .map(|(a, b)| {
                    format!(
                        "{}-{}",
                        g.labels()[a].first().unwrap(),
                        g.labels()[b].first().unwrap()
                    )
                })
                .collect();
            println!(
                "vertices={} edges=[{}] connected={} path={} maxDegree={} claw={} hamiltonian={}",
                g.vertex_count(),
                edges.join(", "),
                profile.connected,
                profile.is_path,
                profile.max_degree,
                profile.has_claw,
                profile
                    .hamiltonian
                    .map_or("unknown".to_string(), |h| h.to_string()),
            );
            if let Some(path) = dot {
                let name = match kind {
                    GraphKind::Relations => "relations",
                    GraphKind::Idempotents => "idempotents",
                };
                std::fs::write(&path, g.to_dot(name))
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Amorphic { file, oracle } => {
            let loaded = load_path(&file)?;
            let canonical = canonical_check(loaded.spectral.p());
            let oracle_outcome = if oracle {
                brute_force_amorphic(loaded.spectral.p())
                    .map_err(|e| CliError::Input(e.to_string()))?
            } else {
                OracleOutcome::Skipped
            };
            match (&canonical, &oracle_outcome) {
                (CanonicalOutcome::Canonical { .. }, OracleOutcome::Amorphic) => {
                    println!("amorphic: yes (canonical+oracle agree)");
                }
                (CanonicalOutcome::Canonical { .. }, OracleOutcome::Skipped) => {
                    println!("amorphic: yes (canonical)");
                }
                (
                    CanonicalOutcome::NotCanonical { reason },
                    OracleOutcome::NotAmorphic { witness },
                ) => {
                    println!("amorphic: no ({reason}; first failing partition {witness})");
                }
                (CanonicalOutcome::NotCanonical { reason }, OracleOutcome::Skipped) => {
                    println!("amorphic: no ({reason})");
                }
                (canonical, oracle) => {
                    return Err(CliError::Violation(format!(
                        "deciders disagree: canonical {:?} vs oracle {:?}",
                        canonical.is_canonical(),
                        oracle.is_amorphic()
                    )));
                }
            }
            Ok(())
        }
        Command::Classify { file } => {
            let loaded = load_path(&file)?;
            let s = &loaded.spectral;
            let v = s.v() as u64;
            for (label, m) in [("relation", s.p()), ("idempotent", s.q())] {
                let sr = sr_detect(m);
                for i in 1..=s.d() {
                    let size_name = if label == "relation" { "k" } else { "m" };
                    if !sr.contains(&i) {
                        println!("{label} {i}: not strongly regular");
                        continue;
                    }
                    let (size, a, b) = sr_column_data(m, i).expect("two-valued column");
                    let tags = classify_srg(v, size, &a, &b)
                        .map(|tags| {
                            if tags.is_empty() {
                                "untyped".to_string()
                            } else {
                                tags.iter()
                                    .map(|t| t.to_string())
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            }
                        })
                        .unwrap_or_else(|e| format!("invalid parameters ({e})"));
                    println!(
                        "{label} {i}: strongly regular, {size_name}={size}, eigenvalues {a}, {b}: {tags}"
                    );
                }
            }
            Ok(())
        }
        Command::Gen { kind, args, out } => {
            let generator = find_generator(&kind)?;
            let table = generator.generate(&args)?;
            let core = amorph_core::scheme::validate_table(&table)
                .expect("generated tables always validate");
            std::fs::write(&out, render_scheme(&table))
                .map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            println!("wrote {} (v={} d={})", out.display(), core.v(), core.d());
            Ok(())
        }
        Command::VerifyPaper { catalog, report } => {
            let mut entries = default_catalog();
            if let Some(dir) = catalog {
                entries.extend(load_directory(&dir)?);
            }
            let audit = run_battery(entries);
            for scheme in &audit.schemes {
                let status = match &scheme.error {
                    Some(e) => format!("ERROR ({e})"),
                    None => {
                        let violations: u64 = scheme
                            .checks
                            .iter()
                            .map(|c| c.violations.len() as u64)
                            .sum();
                        let checks: u64 = scheme.checks.iter().map(|c| c.checks).sum();
                        if violations == 0 {
                            format!("ok ({checks} checks)")
                        } else {
                            format!("{violations} VIOLATIONS in {checks} checks")
                        }
                    }
                };
                println!("{}: {status}", scheme.id);
            }
            println!(
                "total: {} checks, {} violations, {} schemes",
                audit.summary.total_checks,
                audit.summary.violations,
                audit.schemes.len()
            );
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&audit).expect("serializable report");
                std::fs::write(&path, json + "\n")
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            if audit.summary.violations > 0 {
                return Err(CliError::Violation(format!(
                    "{} violations",
                    audit.summary.violations
                )));
            }
            Ok(())
        }
    }
}
