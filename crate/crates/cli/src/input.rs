//! Reading matrix, hypergraph and Lawrence spec files and parsing inline vectors and index lists.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use bouquet_core::{Error, Hypergraph, IntMatrix, LawrenceSpec, Matching, SignedVector};
use num_bigint::BigInt;

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: Error) -> Failure {
    Failure::Error(format!("{}: {e}", path.display()))
}

pub fn matrix_file(path: &Path) -> Result<IntMatrix, Failure> {
    IntMatrix::parse(&read(path)?).map_err(|e| located(path, e))
}

pub fn hypergraph_file(path: &Path) -> Result<Hypergraph, Failure> {
    Hypergraph::parse(&read(path)?).map_err(|e| located(path, e))
}

/// "m s" followed, for each pair, by a line holding `a_i` and a line holding `c_i`.
pub fn lawrence_spec_file(path: &Path) -> Result<LawrenceSpec, Failure> {
    parse_lawrence_spec(&read(path)?).map_err(|e| located(path, e))
}

fn integers(line: usize, text: &str) -> Result<Vec<BigInt>, Error> {
    text.split_whitespace()
        .map(|t| {
            BigInt::from_str(t).map_err(|_| Error::Parse {
                line,
                message: format!("invalid integer '{t}'"),
            })
        })
        .collect()
}

pub fn parse_lawrence_spec(text: &str) -> Result<LawrenceSpec, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"m s\"".into(),
    })?;
    let dims = integers(line, header)?;
    let [m, s] = &dims[..] else {
        return Err(Error::Parse {
            line,
            message: format!("header: expected 2 entries \"m s\", found {}", dims.len()),
        });
    };
    let (m, s) = match (usize::try_from(m), usize::try_from(s)) {
        (Ok(m), Ok(s)) if m > 0 && s > 0 => (m, s),
        _ => {
            return Err(Error::Parse {
                line,
                message: "header: m and s must be positive".into(),
            })
        }
    };
    let mut a_list = Vec::with_capacity(s);
    let mut c_list = Vec::with_capacity(s);
    for k in 1..=s {
        let (line, text) = lines.next().ok_or(Error::Parse {
            line,
            message: format!("pair {k}: missing line for a_{k}"),
        })?;
        let a = integers(line, text)?;
        if a.len() != m {
            return Err(Error::Parse {
                line,
                message: format!("a_{k}: expected {m} entries, found {}", a.len()),
            });
        }
        let (line, text) = lines.next().ok_or(Error::Parse {
            line,
            message: format!("pair {k}: missing line for c_{k}"),
        })?;
        a_list.push(SignedVector::new(a));
        c_list.push(SignedVector::new(integers(line, text)?));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            message: format!("expected {s} pairs, found more"),
        });
    }
    LawrenceSpec::new(a_list, c_list)
}

/// Integers separated by commas or whitespace, optionally wrapped in parentheses.
pub fn vector(text: &str) -> Result<SignedVector, Failure> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            BigInt::from_str(t)
                .map_err(|_| Failure::Error(format!("invalid integer '{t}' in vector '{text}'")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(SignedVector::new)
}

/// A comma-separated list of one-based indices, returned zero-based.
pub fn index_list(text: &str) -> Result<Vec<usize>, Failure> {
    let mut out: Vec<usize> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i > 0 => Ok(i - 1),
            _ => Err(Failure::Error(format!(
                "invalid index '{t}': expected a positive integer"
            ))),
        })
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Blocks separated by ';', each a one-based index list.
pub fn blocks(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';').map(index_list).collect()
}

pub fn matching(text: &str) -> Result<Matching, Failure> {
    match text {
        "cyclic" => Ok(Matching::CyclicPerSunflower),
        "across" => Ok(Matching::CyclicAcross),
        "pairs" => Ok(Matching::Pairs),
        _ => text
            .split(',')
            .map(|pair| {
                let bad = || {
                    Failure::Error(format!(
                        "invalid matching pair '{pair}': expected 'x-y' with one-based vertices"
                    ))
                };
                let (x, y) = pair.trim().split_once('-').ok_or_else(bad)?;
                match (x.trim().parse::<usize>(), y.trim().parse::<usize>()) {
                    (Ok(x), Ok(y)) if x > 0 && y > 0 => Ok((x - 1, y - 1)),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<_, _>>()
            .map(Matching::Explicit),
    }
}
