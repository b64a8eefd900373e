//! Facet-file ingestion.
//!
//! Format: an optional header line `m <integer>`, then one facet per line
//! as whitespace-separated 1-based vertex indices. `#` starts a comment,
//! blank lines are ignored. Without a header, `m` is the largest vertex
//! index that appears.

use std::fmt;
use std::fs;
use std::path::Path;

use moment_angle::{Error as CoreError, SimplicialComplex, VertexSet};

#[derive(Debug)]
pub enum ParseError {
    Io(String),
    Line { line: usize, message: String },
    Complex(CoreError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Io(e) => write!(f, "cannot read facet file: {e}"),
            ParseError::Line { line, message } => write!(f, "parse error at line {line}: {message}"),
            ParseError::Complex(e) => write!(f, "invalid complex: {e}"),
        }
    }
}

pub fn parse_facets(path: &Path) -> Result<SimplicialComplex, ParseError> {
    let text = fs::read_to_string(path).map_err(|e| ParseError::Io(format!("{}: {e}", path.display())))?;
    parse_facets_str(&text)
}

pub fn parse_facets_str(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut header_m: Option<u32> = None;
    let mut facets: Vec<Vec<u32>> = Vec::new();
    let mut saw_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !saw_content && tokens[0] == "m" {
            if tokens.len() != 2 {
                return Err(ParseError::Line { line, message: "header must be `m <integer>`".into() });
            }
            let m: u32 = tokens[1].parse().map_err(|_| ParseError::Line {
                line,
                message: format!("invalid vertex count {:?}", tokens[1]),
            })?;
            header_m = Some(m);
            saw_content = true;
            continue;
        }
        saw_content = true;
        let mut facet = Vec::with_capacity(tokens.len());
        for t in &tokens {
            let v: u32 = t.parse().map_err(|_| ParseError::Line {
                line,
                message: format!("invalid vertex index {t:?}"),
            })?;
            if v == 0 {
                return Err(ParseError::Line { line, message: "vertex indices are 1-based".into() });
            }
            facet.push(v);
        }
        facets.push(facet);
    }
    if facets.is_empty() {
        return Err(ParseError::Line { line: 0, message: "facet file contains no facets".into() });
    }
    let m = header_m.unwrap_or_else(|| facets.iter().flatten().copied().max().unwrap_or(0));
    let sets: Vec<VertexSet> = facets
        .iter()
        .map(|f| VertexSet::from_vertices(f, m))
        .collect::<Result<_, _>>()
        .map_err(ParseError::Complex)?;
    SimplicialComplex::from_facets(&sets, m).map_err(ParseError::Complex)
}
