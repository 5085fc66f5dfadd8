//! DIMACS CNF reading and writing.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::literal::Literal;

/// Strict mode requires a well-formed header whose counts match, rejects
/// duplicate clauses and an unterminated last clause. Lenient mode warns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    Strict,
    #[default]
    Lenient,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn finish_clause(
    lits: &[(Literal, Pos)],
    end: Pos,
    seen: &mut HashSet<Clause>,
    out: &mut Vec<Clause>,
    mode: ParseMode,
) -> Result<()> {
    for (i, (l, pos)) in lits.iter().enumerate() {
        if lits[..i].iter().any(|(m, _)| *m == l.complement()) {
            return Err(err(
                pos.line,
                pos.column,
                format!("tautological clause: {l} and its complement"),
            ));
        }
    }
    let clause = Clause::new(lits.iter().map(|(l, _)| *l)).expect("clash checked above");
    if !seen.insert(clause.clone()) {
        match mode {
            ParseMode::Strict => {
                return Err(err(end.line, end.column, format!("duplicate clause {clause}")))
            }
            ParseMode::Lenient => log::warn!("line {}: duplicate clause {clause} dropped", end.line),
        }
    }
    out.push(clause);
    Ok(())
}

pub fn parse_dimacs(text: &str, mode: ParseMode) -> Result<ClauseSet> {
    let mut header: Option<(u64, usize, Pos)> = None;
    let mut clauses = Vec::new();
    let mut seen = HashSet::new();
    let mut current: Vec<(Literal, Pos)> = Vec::new();
    let mut raw_count = 0usize;
    let mut last = Pos { line: 1, column: 1 };
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim_start();
        if trimmed.starts_with('c') || trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let column = line.len() - trimmed.len() + 1;
            let pos = Pos { line: lineno, column };
            if header.is_some() {
                return Err(err(lineno, column, "second header line"));
            }
            if raw_count > 0 || !current.is_empty() {
                return Err(err(lineno, column, "header after clauses"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let bad = || err(lineno, column, "expected `p cnf <maxvar> <clauses>`");
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(bad());
            }
            let v = parts[2].parse::<u64>().map_err(|_| bad())?;
            let c = parts[3].parse::<usize>().map_err(|_| bad())?;
            header = Some((v, c, pos));
            continue;
        }
        if header.is_none() && mode == ParseMode::Strict {
            return Err(err(lineno, 1, "clause before header"));
        }
        let mut offset = 0;
        for token in line.split_whitespace() {
            let start = line[offset..].find(token).unwrap() + offset;
            offset = start + token.len();
            let pos = Pos {
                line: lineno,
                column: start + 1,
            };
            last = pos;
            let value: i64 = token
                .parse()
                .map_err(|_| err(lineno, start + 1, format!("not an integer: {token:?}")))?;
            if value == 0 {
                finish_clause(&current, pos, &mut seen, &mut clauses, mode)?;
                current.clear();
                raw_count += 1;
                continue;
            }
            let value = i32::try_from(value)
                .map_err(|_| err(lineno, start + 1, format!("literal out of range: {value}")))?;
            if let Some((maxvar, _, _)) = header {
                if value.unsigned_abs() as u64 > maxvar {
                    let msg = format!("variable {} exceeds header maximum {maxvar}", value.unsigned_abs());
                    match mode {
                        ParseMode::Strict => return Err(err(lineno, start + 1, msg)),
                        ParseMode::Lenient => log::warn!("line {lineno}: {msg}"),
                    }
                }
            }
            current.push((Literal::new(value)?, pos));
        }
    }
    if !current.is_empty() {
        match mode {
            ParseMode::Strict => return Err(err(last.line, last.column, "last clause not terminated by 0")),
            ParseMode::Lenient => {
                finish_clause(&current, last, &mut seen, &mut clauses, mode)?;
                raw_count += 1;
            }
        }
    }
    match header {
        Some((_, c, pos)) if c != raw_count => {
            let msg = format!("header announces {c} clauses, found {raw_count}");
            match mode {
                ParseMode::Strict => return Err(err(pos.line, pos.column, msg)),
                ParseMode::Lenient => log::warn!("{msg}"),
            }
        }
        None if mode == ParseMode::Strict => return Err(err(1, 1, "missing header")),
        _ => {}
    }
    Ok(ClauseSet::new(clauses))
}

pub fn read_dimacs(path: &Path, mode: ParseMode) -> Result<ClauseSet> {
    let text = std::fs::read_to_string(path)?;
    parse_dimacs(&text, mode)
}

/// `p cnf <maxvar> <c>` followed by one zero-terminated line per clause.
pub fn to_dimacs(f: &ClauseSet) -> String {
    let mut s = String::new();
    writeln!(s, "p cnf {} {}", f.max_var(), f.c()).unwrap();
    for c in f.iter() {
        for l in c.literals() {
            write!(s, "{l} ").unwrap();
        }
        s.push_str("0\n");
    }
    s
}

pub fn write_dimacs(path: &Path, f: &ClauseSet) -> Result<()> {
    std::fs::write(path, to_dimacs(f))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const DT3: &str = "c Dt3\np cnf 3 5\n1 2 3 0\n-1 -2 -3 0\n-1 2 0\n-2 3 0\n-3 1 0\n";

    #[test]
    fn reads_dt3() {
        let f = parse_dimacs(DT3, ParseMode::Strict).unwrap();
        assert_eq!(f.c(), 5);
        assert!(f.is_uhit());
    }

    #[test]
    fn round_trip() {
        let f = parse_dimacs(DT3, ParseMode::Strict).unwrap();
        assert_eq!(parse_dimacs(&to_dimacs(&f), ParseMode::Strict).unwrap(), f);
        assert_eq!(to_dimacs(&ClauseSet::top()), "p cnf 0 0\n");
        let b = ClauseSet::bottom();
        assert_eq!(parse_dimacs(&to_dimacs(&b), ParseMode::Strict).unwrap(), b);
    }

    #[test]
    fn multi_line_clauses_and_duplicate_literals() {
        let f = parse_dimacs("p cnf 2 2\n1 1\n 2 0 -1\n0\n", ParseMode::Strict).unwrap();
        assert_eq!(f, ClauseSet::from_ints(&[&[1, 2], &[-1]]).unwrap());
    }

    #[test]
    fn tautology_position() {
        let e = parse_dimacs("p cnf 2 1\n1  2 -1 0\n", ParseMode::Lenient).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 6,
                message: "tautological clause: -1 and its complement".into()
            }
        );
    }

    #[test]
    fn duplicate_clauses() {
        let text = "p cnf 1 2\n1 0\n1 0\n";
        assert!(matches!(
            parse_dimacs(text, ParseMode::Strict),
            Err(Error::Parse { line: 3, .. })
        ));
        assert_eq!(parse_dimacs(text, ParseMode::Lenient).unwrap().c(), 1);
    }

    #[test]
    fn strict_checks() {
        assert!(parse_dimacs("1 0\n", ParseMode::Strict).is_err());
        assert!(parse_dimacs("1 0\n", ParseMode::Lenient).is_ok());
        assert!(parse_dimacs("p cnf 1 2\n1 0\n", ParseMode::Strict).is_err());
        assert!(parse_dimacs("p cnf 1 1\n2 0\n", ParseMode::Strict).is_err());
        assert!(parse_dimacs("p cnf 1 1\n1\n", ParseMode::Strict).is_err());
        assert_eq!(parse_dimacs("p cnf 1 1\n1\n", ParseMode::Lenient).unwrap().c(), 1);
        assert!(matches!(
            parse_dimacs("p cnf 1 1\n1 x 0\n", ParseMode::Lenient),
            Err(Error::Parse { line: 2, column: 3, .. })
        ));
        assert!(parse_dimacs("p dnf 1 1\n", ParseMode::Lenient).is_err());
    }
}
