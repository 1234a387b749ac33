//! Text descriptors for foliation families.
//!
//! ```text
//! family   := kind "(" ("n" | INT) (";" | ",") args ")"
//!           | "FOLIATION" "{" "base" ":" "edges" edges ";" "fibers" ":" "[" fiber ("," fiber)* "]" "}"
//! fiber    := "[" (INT ("," INT)*)? "]" | "∅" | INT
//! edges    := "[" (edge ("," edge)*)? "]"
//! edge     := "(" INT "," INT ")" (":" INT)?
//! base     := ("K" | "P" | "C") "(" INT ")" | "edges" edges
//! ```
//!
//! Arguments per kind: `C` takes jumps (`C(n;1,2)`), `GP` one jump, `I` two,
//! `T` the cycle length, `SW` two or more fibers, `Y` three, `H` four, and
//! `X` a base followed by one fiber. A number in place of `n` binds it.
//! Edge endpoints are 1-based.

mod lexer;
mod parser;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::family::{BaseDescriptor, Edge, Family, FamilyDescriptor};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum ParseError {
    /// Unexpected token. `line` and `col` are 1-based, `offset` in bytes.
    Syntax {
        line: usize,
        col: usize,
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    /// Well-formed text describing an invalid family.
    Semantic {
        line: usize,
        col: usize,
        offset: usize,
        error: Error,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. } | ParseError::Semantic { line, col, .. } => {
                (*line, *col)
            }
        }
    }

    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::Semantic { offset, .. } => *offset,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                line,
                col,
                found,
                expected,
                ..
            } => {
                write!(f, "{line}:{col}: expected ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        f.write_str(if i + 1 == expected.len() {
                            " or "
                        } else {
                            ", "
                        })?;
                    }
                    f.write_str(e)?;
                }
                write!(f, ", found {found}")
            }
            ParseError::Semantic {
                line, col, error, ..
            } => write!(f, "{line}:{col}: {error}"),
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses a family descriptor such as `GP(n,2)` or `Y(n;1,1,1)`.
pub fn parse_family(text: &str) -> Result<FamilyDescriptor, ParseError> {
    parser::parse(text)
}

/// Canonical text of a descriptor; [`parse_family`] reads it back unchanged.
pub fn format_family(desc: &FamilyDescriptor) -> String {
    let mut out = String::new();
    let n = match desc.n {
        Some(v) => alloc::format!("{v}"),
        None => "n".into(),
    };
    // Writing to a String cannot fail.
    let _ = match &desc.family {
        Family::Circulant { jumps } if jumps.is_empty() => write!(out, "C({n};[])"),
        Family::Circulant { jumps } => write!(out, "C({n};{})", join(jumps)),
        Family::Petersen { k } => write!(out, "GP({n},{k})"),
        Family::IGraph { k, l } if *l == 1 => write!(out, "GP({n},{k})"),
        Family::IGraph { k, l } => write!(out, "I({n},{k},{l})"),
        Family::Torus { m } => write!(out, "T({n},{m})"),
        Family::Sandwich { fibers } => {
            let parts: Vec<String> = fibers.iter().map(|f| bracketed(f)).collect();
            write!(out, "SW({n};{})", parts.join(","))
        }
        Family::Y { fibers } => write!(out, "Y({n};{})", shorthand(fibers)),
        Family::H { fibers } => write!(out, "H({n};{})", shorthand(fibers)),
        Family::Product { base, jumps } => {
            write!(out, "X({n};{},{})", format_base(base), bracketed(jumps))
        }
        Family::Foliation { edges, fibers } => {
            let parts: Vec<String> = fibers.iter().map(|f| bracketed(f)).collect();
            write!(
                out,
                "FOLIATION{{base:edges{};fibers:[{}]}}",
                format_edges(edges),
                parts.join(",")
            )
        }
    };
    out
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_family(self))
    }
}

fn join(jumps: &[u32]) -> String {
    let parts: Vec<String> = jumps.iter().map(|j| alloc::format!("{j}")).collect();
    parts.join(",")
}

fn bracketed(jumps: &[u32]) -> String {
    alloc::format!("[{}]", join(jumps))
}

/// Single jumps written bare, as in `Y(n;1,1,1)`.
fn shorthand(fibers: &[Vec<u32>]) -> String {
    let parts: Vec<String> = fibers
        .iter()
        .map(|f| if f.len() == 1 { join(f) } else { bracketed(f) })
        .collect();
    parts.join(",")
}

fn format_edges(edges: &[Edge]) -> String {
    let parts: Vec<String> = edges
        .iter()
        .map(|&(i, j, m)| alloc::format!("({},{}):{m}", i + 1, j + 1))
        .collect();
    alloc::format!("[{}]", parts.join(","))
}

fn format_base(base: &BaseDescriptor) -> String {
    match base {
        BaseDescriptor::Complete(m) => alloc::format!("K({m})"),
        BaseDescriptor::Path(m) => alloc::format!("P({m})"),
        BaseDescriptor::Cycle(m) => alloc::format!("C({m})"),
        BaseDescriptor::Edges(edges) => alloc::format!("edges{}", format_edges(edges)),
    }
}
