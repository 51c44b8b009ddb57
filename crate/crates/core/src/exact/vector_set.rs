//! The "k n" text format for sets of vectors of length `n`.

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, SignedVector};

/// Writes the "k n" header and one row per vector.
pub fn vectors_to_text(n: usize, set: &[SignedVector]) -> String {
    let mut out = format!("{} {n}\n", set.len());
    for u in set {
        let row: Vec<String> = u.coords().iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the "k n" format; returns `n` with the vectors so that empty sets keep their length.
pub fn parse_vectors(text: &str) -> Result<(usize, Vec<SignedVector>)> {
    let first = text.lines().enumerate().find(|(_, l)| !l.trim().is_empty());
    if let Some((k, header)) = first {
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if let [count, n] = tokens[..] {
            if count == "0" {
                let n = n.parse::<usize>().map_err(|_| Error::Parse {
                    line: k + 1,
                    message: format!("header: invalid length '{n}'"),
                })?;
                return match text
                    .lines()
                    .enumerate()
                    .skip(k + 1)
                    .find(|(_, l)| !l.trim().is_empty())
                {
                    Some((extra, _)) => Err(Error::Parse {
                        line: extra + 1,
                        message: "expected 0 rows, found more".into(),
                    }),
                    None => Ok((n, Vec::new())),
                };
            }
        }
    }
    let m = IntMatrix::parse(text)?;
    Ok((
        m.cols(),
        m.row_vecs().into_iter().map(SignedVector::new).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let set = vec![
            SignedVector::from_i64s(&[3, -1, -1]),
            SignedVector::from_i64s(&[1, -2, 1]),
        ];
        let text = vectors_to_text(3, &set);
        assert_eq!(text, "2 3\n3 -1 -1\n1 -2 1\n");
        assert_eq!(parse_vectors(&text).unwrap(), (3, set));
    }

    #[test]
    fn empty_set_keeps_its_length() {
        assert_eq!(vectors_to_text(4, &[]), "0 4\n");
        assert_eq!(parse_vectors("0 4\n").unwrap(), (4, Vec::new()));
        assert!(parse_vectors("0 4\n1 2 3 4\n").is_err());
    }
}
