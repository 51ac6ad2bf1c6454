//! Text formats for schemes and eigenmatrices.
//!
//! Scheme format: line 1 is `v d`, followed by v lines of v space-separated
//! integers in 0..=d. Eigenmatrix format: line 1 is `d`, followed by d+1
//! lines of d+1 entries, each `a` or `a/b` in lowest terms. Lines starting
//! with `#` are comments in both formats. Rendering then parsing is the
//! identity, byte for byte.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::exact::{Rat, RatMatrix};
use crate::scheme::{RelationTable, SchemeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

fn data_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the scheme text format.
pub fn parse_scheme(input: &str) -> Result<RelationTable, TextError> {
    let mut lines = data_lines(input);
    let (lno, header) = lines.next().ok_or_else(|| TextError::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    let mut it = header.split_whitespace();
    let parse_usize = |tok: Option<&str>, what: &str| -> Result<usize, TextError> {
        tok.ok_or_else(|| TextError::Parse {
            line: lno,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| TextError::Parse {
            line: lno,
            msg: format!("bad {what}"),
        })
    };
    let v = parse_usize(it.next(), "vertex count")?;
    let d = parse_usize(it.next(), "class count")?;
    if it.next().is_some() {
        return Err(TextError::Parse {
            line: lno,
            msg: "trailing tokens after `v d`".into(),
        });
    }
    if v < 2 || d < 1 || d > u16::MAX as usize {
        return Err(TextError::Parse {
            line: lno,
            msg: format!("need v >= 2 and 1 <= d <= {}, got v={v} d={d}", u16::MAX),
        });
    }
    let mut cells = Vec::with_capacity(v * v);
    for row in 0..v {
        let (lno, line) = lines.next().ok_or_else(|| TextError::Parse {
            line: 0,
            msg: format!("missing table row {row} (expected {v} rows)"),
        })?;
        let mut count = 0;
        for tok in line.split_whitespace() {
            let c: u16 = tok.parse().map_err(|_| TextError::Parse {
                line: lno,
                msg: format!("bad cell {tok:?}"),
            })?;
            if c as usize > d {
                return Err(TextError::Parse {
                    line: lno,
                    msg: format!("cell {c} exceeds d = {d}"),
                });
            }
            cells.push(c);
            count += 1;
        }
        if count != v {
            return Err(TextError::Parse {
                line: lno,
                msg: format!("row has {count} cells, expected {v}"),
            });
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(TextError::Parse {
            line: lno,
            msg: "trailing data after the table".into(),
        });
    }
    Ok(RelationTable::new(v, d, cells)?)
}

/// Renders the scheme text format.
pub fn render_scheme(table: &RelationTable) -> String {
    let v = table.v();
    let mut out = String::new();
    writeln!(out, "{} {}", v, table.d()).unwrap();
    for x in 0..v {
        for y in 0..v {
            if y > 0 {
                out.push(' ');
            }
            write!(out, "{}", table.cell(x, y)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses the eigenmatrix text format into a (d+1)x(d+1) matrix.
pub fn parse_eigenmatrix(input: &str) -> Result<RatMatrix, TextError> {
    let mut lines = data_lines(input);
    let (lno, header) = lines.next().ok_or_else(|| TextError::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    let d: usize = header.trim().parse().map_err(|_| TextError::Parse {
        line: lno,
        msg: "bad class count".into(),
    })?;
    if d < 1 {
        return Err(TextError::Parse {
            line: lno,
            msg: "need d >= 1".into(),
        });
    }
    let n = d + 1;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (lno, line) = lines.next().ok_or_else(|| TextError::Parse {
            line: 0,
            msg: format!("missing matrix row {r} (expected {n} rows)"),
        })?;
        let mut row = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            let x = Rat::from_str(tok).map_err(|_| TextError::Parse {
                line: lno,
                msg: format!("bad rational {tok:?}"),
            })?;
            row.push(x);
        }
        if row.len() != n {
            return Err(TextError::Parse {
                line: lno,
                msg: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        rows.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(TextError::Parse {
            line: lno,
            msg: "trailing data after the matrix".into(),
        });
    }
    Ok(RatMatrix::from_rows(rows).expect("rows validated non-empty"))
}

/// Renders the eigenmatrix text format (entries in lowest terms).
pub fn render_eigenmatrix(m: &RatMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{}", m.rows() - 1).unwrap();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if c > 0 {
                out.push(' ');
            }
            write!(out, "{}", m.at(r, c)).unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::generators::latin_scheme;

    #[test]
    fn scheme_round_trip() {
        let t = latin_scheme(3, 2).unwrap();
        let text = render_scheme(&t);
        assert!(text.starts_with("9 3\n"));
        let back = parse_scheme(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(render_scheme(&back), text);
    }

    #[test]
    fn scheme_comments_and_blanks_ignored() {
        let text = "# complete graph on 3 vertices\n3 1\n\n0 1 1\n1 0 1\n# middle comment\n1 1 0\n";
        let t = parse_scheme(text).unwrap();
        assert_eq!(t.v(), 3);
    }

    #[test]
    fn scheme_rejects_malformed() {
        assert!(parse_scheme("").is_err());
        assert!(parse_scheme("3\n0 1 1\n1 0 1\n1 1 0\n").is_err());
        assert!(parse_scheme("3 1\n0 1\n1 0 1\n1 1 0\n").is_err());
        assert!(parse_scheme("3 1\n0 1 2\n1 0 1\n2 1 0\n").is_err());
        assert!(parse_scheme("2 1\n0 1\n1 0\nextra\n").is_err());
    }

    #[test]
    fn eigenmatrix_round_trip_with_fractions() {
        let m =
            RatMatrix::from_rows(vec![vec![rat(1), rat(4)], vec![rat(1), ratio(-1, 2)]]).unwrap();
        let text = render_eigenmatrix(&m);
        assert_eq!(text, "1\n1 4\n1 -1/2\n");
        assert_eq!(parse_eigenmatrix(&text).unwrap(), m);
    }

    #[test]
    fn eigenmatrix_rejects_malformed() {
        assert!(parse_eigenmatrix("1\n1 4\n").is_err());
        assert!(parse_eigenmatrix("1\n1 4 9\n1 -1\n").is_err());
        assert!(parse_eigenmatrix("1\n1 x\n1 -1\n").is_err());
    }
}
