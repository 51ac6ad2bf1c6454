//! Generator registry: every scheme family sits behind a common trait and
//! is selected by name from the `gen` subcommand.

use std::path::Path;

use amorph_core::generators::{complete, johnson3, latin_scheme, wreath, wreath_chain};
use amorph_core::scheme::RelationTable;
use amorph_core::text::parse_scheme;

use crate::input::CliError;

pub trait SchemeGenerator: Sync {
    fn name(&self) -> &'static str;
    fn usage(&self) -> &'static str;
    fn generate(&self, args: &[String]) -> Result<RelationTable, CliError>;
}

fn parse_count(tok: &str, what: &str) -> Result<usize, CliError> {
    tok.parse()
        .map_err(|_| CliError::Input(format!("bad {what} {tok:?}")))
}

fn expect_args(args: &[String], n: usize, usage: &str) -> Result<(), CliError> {
    if args.len() != n {
        return Err(CliError::Input(format!(
            "expected {n} argument(s): usage `{usage}`"
        )));
    }
    Ok(())
}

struct Complete;
impl SchemeGenerator for Complete {
    fn name(&self) -> &'static str {
        "complete"
    }
    fn usage(&self) -> &'static str {
        "gen complete N -o OUT"
    }
    fn generate(&self, args: &[String]) -> Result<RelationTable, CliError> {
        expect_args(args, 1, self.usage())?;
        let n = parse_count(&args[0], "vertex count")?;
        complete(n).map_err(|e| CliError::Input(e.to_string()))
    }
}

struct Wreath;
impl SchemeGenerator for Wreath {
    fn name(&self) -> &'static str {
        "wreath"
    }
    fn usage(&self) -> &'static str {
        "gen wreath M INNER.scheme -o OUT"
    }
    fn generate(&self, args: &[String]) -> Result<RelationTable, CliError> {
        expect_args(args, 2, self.usage())?;
        let m = parse_count(&args[0], "copy count")?;
        let text = std::fs::read_to_string(Path::new(&args[1]))
            .map_err(|e| CliError::Input(format!("{}: {e}", args[1])))?;
        let inner = parse_scheme(&text).map_err(|e| CliError::Input(e.to_string()))?;
        wreath(m, &inner).map_err(|e| CliError::Input(e.to_string()))
    }
}

struct Chain;
impl SchemeGenerator for Chain {
    fn name(&self) -> &'static str {
        "chain"
    }
    fn usage(&self) -> &'static str {
        "gen chain N1,N2,... -o OUT"
    }
    fn generate(&self, args: &[String]) -> Result<RelationTable, CliError> {
        expect_args(args, 1, self.usage())?;
        let ns: Vec<usize> = args[0]
            .split(',')
            .map(|tok| parse_count(tok.trim(), "chain factor"))
            .collect::<Result<_, _>>()?;
        let (table, _) = wreath_chain(&ns).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(table)
    }
}

struct Latin;
impl SchemeGenerator for Latin {
    fn name(&self) -> &'static str {
        "latin"
    }
    fn usage(&self) -> &'static str {
        "gen latin N T -o OUT"
    }
    fn generate(&self, args: &[String]) -> Result<RelationTable, CliError> {
        expect_args(args, 2, self.usage())?;
        let n = parse_count(&args[0], "field size")?;
        let t = parse_count(&args[1], "direction count")?;
        latin_scheme(n, t).map_err(|e| CliError::Input(e.to_string()))
    }
}

struct Johnson3;
impl SchemeGenerator for Johnson3 {
    fn name(&self) -> &'static str {
        "johnson3"
    }
    fn usage(&self) -> &'static str {
        "gen johnson3 N -o OUT"
    }
    fn generate(&self, args: &[String]) -> Result<RelationTable, CliError> {
        expect_args(args, 1, self.usage())?;
        let n = parse_count(&args[0], "ground-set size")?;
        johnson3(n).map_err(|e| CliError::Input(e.to_string()))
    }
}

/// All generators, in help order.
pub fn generator_registry() -> &'static [&'static dyn SchemeGenerator] {
    &[&Complete, &Wreath, &Chain, &Latin, &Johnson3]
}

pub fn find_generator(name: &str) -> Result<&'static dyn SchemeGenerator, CliError> {
    generator_registry()
        .iter()
        .copied()
        .find(|g| g.name() == name)
        .ok_or_else(|| {
            let names: Vec<&str> = generator_registry().iter().map(|g| g.name()).collect();
            CliError::Input(format!(
                "unknown generator {name:?}; known: {}",
                names.join(", ")
            ))
        })
}
