//! `.sgp` and `.prs` files.

use std::fs;
use std::path::Path;

use invcong::{Pair, PartialPerm};

use crate::CliError;

/// Degree and generators from a semigroup file: `degree n`, then one
/// generator per line. Blank lines and `#` comments are ignored.
pub fn read_semigroup(path: &Path) -> Result<(usize, Vec<PartialPerm>), CliError> {
    let text = read(path)?;
    let mut lines = content_lines(&text);
    let Some((line_no, header)) = lines.next() else {
        return Err(parse_error(path, 1, "missing `degree n` header"));
    };
    let degree = header
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| parse_error(path, line_no, "expected `degree n`"))?;
    let mut gens = Vec::new();
    for (line_no, line) in lines {
        gens.push(
            PartialPerm::parse(line, degree)
                .map_err(|e| parse_error(path, line_no, &e.to_string()))?,
        );
    }
    if gens.is_empty() {
        return Err(parse_error(path, line_no, "no generators"));
    }
    Ok((degree, gens))
}

/// One tab-separated pair per line.
pub fn read_pairs(path: &Path, degree: usize) -> Result<Vec<Pair>, CliError> {
    let text = read(path)?;
    let mut pairs = Vec::new();
    for (line_no, line) in content_lines(&text) {
        let (a, b) = line.split_once('\t').ok_or_else(|| {
            parse_error(path, line_no, "expected two elements separated by a tab")
        })?;
        let parse = |t: &str| {
            PartialPerm::parse(t.trim(), degree)
                .map_err(|e| parse_error(path, line_no, &e.to_string()))
        };
        pairs.push((parse(a)?, parse(b)?));
    }
    Ok(pairs)
}

pub fn parse_element(text: &str, degree: usize) -> Result<PartialPerm, CliError> {
    PartialPerm::parse(text, degree).map_err(|e| CliError::Parse(format!("element `{text}`: {e}")))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line
            .split('#')
            .next()
            .unwrap_or("")
            .trim_end_matches(['\r', ' ']);
        (!line.trim().is_empty()).then_some((i + 1, line.trim_start_matches(' ')))
    })
}

fn parse_error(path: &Path, line: usize, msg: &str) -> CliError {
    CliError::Parse(format!("{}:{line}: {msg}", path.display()))
}
