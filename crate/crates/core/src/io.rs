//! Line-oriented text format for maps.
//!
//! ```text
//! # comments run to the end of the line
//! map 4
//! f 0 1 2
//! f 0 1 3
//! f 0 2 3
//! f 1 2 3
//! ```

use std::fmt::Write as _;

use strum::IntoStaticStr;
use thiserror::Error;

use crate::map::{MapError, PolyhedralMap};

#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum ParseError {
    #[error("line {line}: expected `map <vertex count>` header")]
    MissingHeader { line: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("input ends before any face")]
    NoFaces,
    #[error(transparent)]
    Invalid(#[from] MapError),
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Invalid(e) => e.kind(),
            other => other.into(),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| ParseError::Syntax { line, message: format!("`{token}` is not a vertex id") })
}

/// Parses the text format and validates the resulting map.
pub fn parse_map(text: &str) -> Result<PolyhedralMap, ParseError> {
    let mut header: Option<usize> = None;
    let mut faces = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = strip_comment(raw).split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        match (keyword, header) {
            ("map", None) => {
                let count = tokens.next().ok_or(ParseError::MissingHeader { line })?;
                let count = count.parse::<usize>().map_err(|_| ParseError::Syntax {
                    line,
                    message: format!("`{count}` is not a vertex count"),
                })?;
                if let Some(extra) = tokens.next() {
                    return Err(ParseError::Syntax { line, message: format!("unexpected `{extra}` after header") });
                }
                header = Some(count);
            }
            (_, None) => return Err(ParseError::MissingHeader { line }),
            ("f", Some(_)) => {
                let face = tokens.map(|t| parse_id(t, line)).collect::<Result<Vec<_>, _>>()?;
                faces.push(face);
            }
            (other, Some(_)) => {
                return Err(ParseError::Syntax { line, message: format!("unexpected `{other}`") });
            }
        }
    }
    let count = header.ok_or(ParseError::MissingHeader { line: 1 })?;
    if faces.is_empty() {
        return Err(ParseError::NoFaces);
    }
    Ok(PolyhedralMap::new(count, faces)?)
}

/// Serializes a map; `parse_map` of the output rebuilds an equal map.
pub fn write_map(m: &PolyhedralMap) -> String {
    let mut out = format!("map {}\n", m.vertex_count());
    for face in m.faces() {
        out.push('f');
        for v in face {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str = "# tetrahedron\nmap 4\nf 0 1 2\nf 0 1 3  # side\n\nf 0 2 3\nf 1 2 3\n";

    #[test]
    fn round_trip() {
        let m = parse_map(TETRA).unwrap();
        assert_eq!(m.face_count(), 4);
        let text = write_map(&m);
        assert_eq!(parse_map(&text).unwrap(), m);
        assert!(text.starts_with("map 4\nf 0 1 2\n"));
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_map("f 0 1 2\n").unwrap_err().kind(), "MissingHeader");
        assert_eq!(parse_map("map 4 x\n").unwrap_err().kind(), "Syntax");
        let trailing = format!("{TETRA}end\n");
        assert_eq!(parse_map(&trailing).unwrap_err().kind(), "Syntax");
        assert_eq!(parse_map("map 3\nf 0 1 -2\n").unwrap_err().kind(), "Syntax");
        assert_eq!(parse_map("map 3\n").unwrap_err().kind(), "NoFaces");
        assert_eq!(parse_map("map 3\nf 0 1 2\nf 0 1 2\n").unwrap_err().kind(), "EdgeDegreeNotTwo");
        assert_eq!(parse_map("map 4\nmap 4\n").unwrap_err().kind(), "Syntax");
    }
}
