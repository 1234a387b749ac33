use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::lexer::{tokenize, Token, TokenKind};
use super::ParseError;
use crate::family::{build_family_with, BaseDescriptor, Edge, Family, FamilyDescriptor, Span};
use crate::graph::FiberSpec;
use crate::Error;

type PResult<T> = core::result::Result<T, ParseError>;

const KINDS: [&str; 9] = ["C", "GP", "I", "SW", "Y", "H", "T", "X", "FOLIATION"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

pub(crate) fn parse(text: &str) -> PResult<FamilyDescriptor> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
    };
    let first = p.peek().clone();
    let family = p.family()?;
    p.expect(TokenKind::End, "end of input")?;
    let last = &p.toks[p.pos.saturating_sub(1)];
    let desc = FamilyDescriptor {
        family: family.0,
        n: family.1,
        span: Span {
            start: first.start,
            end: last.end.max(first.end),
        },
    };
    // Connectivity is left to the caller, which may choose to allow it.
    build_family_with(&desc, true).map_err(|e| semantic(&first, e))?;
    Ok(desc)
}

fn semantic(at: &Token, error: Error) -> ParseError {
    ParseError::Semantic {
        line: at.line,
        col: at.col,
        offset: at.start,
        error,
    }
}

fn out_of_range(at: &Token, detail: String) -> ParseError {
    semantic(at, Error::ValueOutOfRange { detail })
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &[&'static str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            offset: t.start,
            found: t.kind.describe(),
            expected: expected.to_vec(),
        }
    }

    fn at(&self, kind: &TokenKind) -> bool {
        self.peek().kind == *kind
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, label: &'static str) -> PResult<Token> {
        if self.at(&kind) {
            Ok(self.bump())
        } else {
            Err(self.syntax(&[label]))
        }
    }

    fn keyword(&mut self, word: &'static str, label: &'static str) -> PResult<Token> {
        match &self.peek().kind {
            TokenKind::Ident(s) if s == word => Ok(self.bump()),
            _ => Err(self.syntax(&[label])),
        }
    }

    fn int(&mut self) -> PResult<(u64, Token)> {
        match &self.peek().kind {
            TokenKind::Int(s) => {
                let s = s.clone();
                let tok = self.bump();
                s.parse::<u64>()
                    .map(|v| (v, tok.clone()))
                    .map_err(|_| out_of_range(&tok, format!("{s} does not fit in 64 bits")))
            }
            _ => Err(self.syntax(&["integer"])),
        }
    }

    fn u32(&mut self) -> PResult<u32> {
        let (v, tok) = self.int()?;
        u32::try_from(v).map_err(|_| out_of_range(&tok, format!("{v} does not fit in 32 bits")))
    }

    fn usize(&mut self) -> PResult<usize> {
        Ok(self.u32()? as usize)
    }

    fn family(&mut self) -> PResult<(Family, Option<u64>)> {
        let name_tok = self.peek().clone();
        let name = match &name_tok.kind {
            TokenKind::Ident(s) => s.clone(),
            _ => return Err(self.syntax(&KINDS)),
        };
        self.bump();
        match name.as_str() {
            "FOLIATION" => Ok((self.foliation()?, None)),
            "C" | "GP" | "I" | "SW" | "Y" | "H" | "T" | "X" => self.call(&name, &name_tok),
            _ => Err(semantic(&name_tok, Error::UnknownFamily { name })),
        }
    }

    fn call(&mut self, kind: &str, name_tok: &Token) -> PResult<(Family, Option<u64>)> {
        self.expect(TokenKind::LParen, "`(`")?;
        let n = match &self.peek().kind {
            TokenKind::Ident(s) if s == "n" => {
                self.bump();
                None
            }
            TokenKind::Int(_) => {
                let (v, tok) = self.int()?;
                if v == 0 {
                    return Err(semantic(&tok, Error::InvalidN));
                }
                Some(v)
            }
            _ => return Err(self.syntax(&["`n`", "integer"])),
        };
        if !self.eat(&TokenKind::Semi) && !self.eat(&TokenKind::Comma) {
            return Err(self.syntax(&["`;`", "`,`"]));
        }
        let family = match kind {
            "GP" => Family::Petersen { k: self.u32()? },
            "I" => {
                let k = self.u32()?;
                self.expect(TokenKind::Comma, "`,`")?;
                Family::i_graph(k, self.u32()?)
            }
            "T" => Family::Torus { m: self.usize()? },
            "C" => Family::Circulant {
                jumps: self.circulant_jumps()?,
            },
            "X" => {
                let base = self.base()?;
                self.expect(TokenKind::Comma, "`,`")?;
                Family::Product {
                    base,
                    jumps: self.fiber()?,
                }
            }
            _ => {
                let lists = self.fiber_list()?;
                let found = lists.len();
                let arity = |expected: &'static str, family: &'static str| {
                    semantic(
                        name_tok,
                        Error::BadArity {
                            family,
                            expected,
                            found,
                        },
                    )
                };
                match kind {
                    "SW" if lists.len() < 2 => return Err(arity("at least 2 fibers", "SW")),
                    "SW" => Family::Sandwich { fibers: lists },
                    "Y" => Family::Y {
                        fibers: <[Vec<u32>; 3]>::try_from(lists)
                            .map_err(|_| arity("exactly 3 fibers", "Y"))?,
                    },
                    _ => Family::H {
                        fibers: <[Vec<u32>; 4]>::try_from(lists)
                            .map_err(|_| arity("exactly 4 fibers", "H"))?,
                    },
                }
            }
        };
        self.expect(TokenKind::RParen, "`)`")?;
        Ok((family, n))
    }

    /// `1,2,3`, `[1,2,3]`, `[]` or `∅`.
    fn circulant_jumps(&mut self) -> PResult<Vec<u32>> {
        if matches!(self.peek().kind, TokenKind::Int(_)) {
            let start = self.peek().clone();
            let mut jumps = vec![self.u32()?];
            while self.eat(&TokenKind::Comma) {
                jumps.push(self.u32()?);
            }
            check_jumps(&start, &jumps)?;
            Ok(jumps)
        } else {
            self.fiber()
        }
    }

    /// A single jump list: `[..]`, `∅`, or a bare integer standing for a
    /// one-element list.
    fn fiber(&mut self) -> PResult<Vec<u32>> {
        let start = self.peek().clone();
        match start.kind {
            TokenKind::Int(_) => {
                let jumps = vec![self.u32()?];
                check_jumps(&start, &jumps)?;
                Ok(jumps)
            }
            TokenKind::Empty => {
                self.bump();
                Ok(Vec::new())
            }
            TokenKind::LBracket => {
                self.bump();
                let mut jumps = Vec::new();
                if !self.at(&TokenKind::RBracket) {
                    jumps.push(self.u32()?);
                    while self.eat(&TokenKind::Comma) {
                        jumps.push(self.u32()?);
                    }
                }
                if !self.eat(&TokenKind::RBracket) {
                    return Err(self.syntax(&["`,`", "`]`"]));
                }
                check_jumps(&start, &jumps)?;
                Ok(jumps)
            }
            _ => Err(self.syntax(&["`[`", "integer", "`∅`"])),
        }
    }

    fn fiber_list(&mut self) -> PResult<Vec<Vec<u32>>> {
        let mut lists = vec![self.fiber()?];
        while self.eat(&TokenKind::Comma) {
            lists.push(self.fiber()?);
        }
        Ok(lists)
    }

    fn base(&mut self) -> PResult<BaseDescriptor> {
        let tok = self.peek().clone();
        let name = match &tok.kind {
            TokenKind::Ident(s) => s.clone(),
            _ => return Err(self.syntax(&["`K`", "`P`", "`C`", "`edges`"])),
        };
        match name.as_str() {
            "K" | "P" | "C" => {
                self.bump();
                self.expect(TokenKind::LParen, "`(`")?;
                let m = self.usize()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(match name.as_str() {
                    "K" => BaseDescriptor::Complete(m),
                    "P" => BaseDescriptor::Path(m),
                    _ => BaseDescriptor::Cycle(m),
                })
            }
            "edges" => {
                self.bump();
                Ok(BaseDescriptor::Edges(self.edge_list()?))
            }
            _ => Err(self.syntax(&["`K`", "`P`", "`C`", "`edges`"])),
        }
    }

    /// `[(i,j):m, ...]` with 1-based endpoints; `:m` defaults to 1 and
    /// repeated pairs add up.
    fn edge_list(&mut self) -> PResult<Vec<Edge>> {
        self.expect(TokenKind::LBracket, "`[`")?;
        let mut acc: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        if !self.at(&TokenKind::RBracket) {
            loop {
                let open = self.expect(TokenKind::LParen, "`(`")?;
                let a = self.usize()?;
                self.expect(TokenKind::Comma, "`,`")?;
                let b = self.usize()?;
                self.expect(TokenKind::RParen, "`)`")?;
                let mult = if self.eat(&TokenKind::Colon) {
                    self.u32()?
                } else {
                    1
                };
                if a == 0 || b == 0 {
                    return Err(out_of_range(&open, "vertices are numbered from 1".into()));
                }
                if a == b {
                    return Err(semantic(&open, Error::LoopInBase { vertex: a - 1 }));
                }
                if mult == 0 {
                    return Err(out_of_range(
                        &open,
                        "edge multiplicity must be positive".into(),
                    ));
                }
                let key = (a.min(b) - 1, a.max(b) - 1);
                let slot = acc.entry(key).or_insert(0);
                *slot = slot
                    .checked_add(mult)
                    .ok_or_else(|| out_of_range(&open, "edge multiplicity overflows".into()))?;
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        if !self.eat(&TokenKind::RBracket) {
            return Err(self.syntax(&["`,`", "`]`"]));
        }
        Ok(acc.into_iter().map(|((i, j), m)| (i, j, m)).collect())
    }

    fn foliation(&mut self) -> PResult<Family> {
        self.expect(TokenKind::LBrace, "`{`")?;
        self.keyword("base", "`base`")?;
        self.expect(TokenKind::Colon, "`:`")?;
        self.keyword("edges", "`edges`")?;
        let edges_tok = self.peek().clone();
        let edges = self.edge_list()?;
        self.expect(TokenKind::Semi, "`;`")?;
        self.keyword("fibers", "`fibers`")?;
        self.expect(TokenKind::Colon, "`:`")?;
        self.expect(TokenKind::LBracket, "`[`")?;
        let fibers = self.fiber_list()?;
        if !self.eat(&TokenKind::RBracket) {
            return Err(self.syntax(&["`,`", "`]`"]));
        }
        self.expect(TokenKind::RBrace, "`}`")?;
        let order = edges.iter().map(|&(_, j, _)| j + 1).max().unwrap_or(0);
        if order > fibers.len() {
            return Err(semantic(
                &edges_tok,
                Error::FiberCountMismatch {
                    vertices: order,
                    fibers: fibers.len(),
                },
            ));
        }
        Ok(Family::Foliation { edges, fibers })
    }
}

fn check_jumps(at: &Token, jumps: &[u32]) -> PResult<()> {
    FiberSpec::new(jumps.to_vec())
        .map(|_| ())
        .map_err(|e| semantic(at, e))
}
