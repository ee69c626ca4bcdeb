//! On-disk formats for incidence structures.
//!
//! Text matrix:
//!
//! ```text
//! 3 4
//! 1100
//! 0 1 1 0
//! 1001
//! ```
//!
//! Line 1 is `n theta`, followed by `n` rows of `theta` characters from
//! `{0,1}`. Single spaces between characters are ignored.
//!
//! Block list (JSON): `{"theta": 4, "blocks": [[0,1],[1,2],[0,3]]}`, with an
//! optional `"t"` field when the structure is a design. Points are 0-indexed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockList {
    pub theta: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

impl BlockList {
    pub fn from_structure(s: &IncidenceStructure) -> Self {
        Self {
            theta: s.theta(),
            blocks: s.blocks().to_vec(),
            t: None,
        }
    }

    pub fn to_structure(&self) -> Result<IncidenceStructure> {
        IncidenceStructure::from_blocks(self.theta, self.blocks.iter().cloned())
    }
}

pub fn parse_block_list(text: &str) -> Result<BlockList> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_block_list(s: &IncidenceStructure) -> String {
    serde_json::to_string(&BlockList::from_structure(s)).expect("block list serializes")
}

fn parse_row(line: &str, lineno: usize) -> Result<Vec<u8>> {
    let bytes = line.as_bytes();
    let mut row = Vec::with_capacity(bytes.len());
    let mut prev_space = true;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'0' | b'1' => {
                row.push(c - b'0');
                prev_space = false;
            }
            b' ' if !prev_space && i + 1 < bytes.len() => prev_space = true,
            _ => {
                return Err(Error::Parse(format!(
                    "line {lineno}: unexpected character {:?} at column {}",
                    c as char,
                    i + 1
                )))
            }
        }
    }
    Ok(row)
}

pub fn parse_text_matrix(text: &str) -> Result<IncidenceStructure> {
    let mut lines = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (n, theta) = match dims.as_slice() {
        [n, t] => (
            n.parse::<usize>()
                .map_err(|e| Error::Parse(format!("line 1: n: {e}")))?,
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("line 1: theta: {e}")))?,
        ),
        _ => return Err(Error::Parse("line 1: expected `n theta`".into())),
    };
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} rows, found {i}")))?;
        let row = parse_row(line, i + 2)?;
        if row.len() != theta {
            return Err(Error::Parse(format!(
                "line {}: expected {theta} entries, found {}",
                i + 2,
                row.len()
            )));
        }
        rows.push(row);
    }
    if lines.any(|l| !l.is_empty()) {
        return Err(Error::Parse("trailing data after matrix".into()));
    }
    IncidenceStructure::from_matrix(&rows)
}

pub fn write_text_matrix(s: &IncidenceStructure) -> String {
    let mut out = format!("{} {}\n", s.num_blocks(), s.theta());
    for row in s.to_matrix() {
        out.extend(row.iter().map(|&v| if v == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// Parses either format: JSON when the first non-blank character is `{`.
pub fn parse_any(text: &str) -> Result<BlockList> {
    if text.trim_start().starts_with('{') {
        parse_block_list(text)
    } else {
        Ok(BlockList::from_structure(&parse_text_matrix(text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_matrix_with_optional_spaces() {
        let s = parse_text_matrix("3 4\n1100\n0 1 1 0\n1001\n").unwrap();
        assert_eq!(s.blocks(), &[vec![0, 1], vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn text_matrix_rejects_garbage() {
        assert!(parse_text_matrix("1 2\n10\nxyz\n").is_err());
        assert!(parse_text_matrix("1 2\n10\n\n01\n").is_err());
        assert!(parse_text_matrix("1 2\n1  0\n").is_err());
        assert!(parse_text_matrix("1 2\n1 0 \n").is_err());
        assert!(parse_text_matrix("1 2\n102\n").is_err());
        assert!(parse_text_matrix("2 2\n10\n").is_err());
        assert!(parse_text_matrix("2\n10\n").is_err());
        // trailing blank lines are fine
        assert!(parse_text_matrix("1 2\n11\n\n").is_ok());
    }

    #[test]
    fn block_list_rejects_garbage() {
        assert!(parse_block_list(r#"{"theta":2,"blocks":[[0,1]]} x"#).is_err());
        assert!(parse_block_list(r#"{"theta":2,"blocks":[[0,1]],"extra":1}"#).is_err());
        let bl = parse_block_list(r#"{"theta":2,"blocks":[[1,0]],"t":1}"#).unwrap();
        assert_eq!(bl.t, Some(1));
        assert_eq!(bl.to_structure().unwrap().block(0), &[0, 1]);
    }

    #[test]
    fn parse_any_dispatch() {
        let a = parse_any("  {\"theta\":1,\"blocks\":[[0]]}").unwrap();
        let b = parse_any("1 1\n1\n").unwrap();
        assert_eq!(a, b);
    }

    fn structure() -> impl Strategy<Value = IncidenceStructure> {
        (1usize..12, 1usize..10).prop_flat_map(|(theta, n)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), theta), n)
                .prop_map(move |rows| {
                    let rows: Vec<Vec<u8>> = rows
                        .into_iter()
                        .map(|r| r.into_iter().map(u8::from).collect())
                        .collect();
                    IncidenceStructure::from_matrix(&rows).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn matrix_and_block_views_roundtrip(s in structure()) {
            let m = s.to_matrix();
            prop_assert_eq!(IncidenceStructure::from_matrix(&m).unwrap().to_matrix(), m.clone());
            prop_assert_eq!(&parse_text_matrix(&write_text_matrix(&s)).unwrap(), &s);
            prop_assert_eq!(&parse_block_list(&write_block_list(&s)).unwrap().to_structure().unwrap(), &s);
            prop_assert_eq!(s.transpose().transpose(), s);
        }
    }
}
