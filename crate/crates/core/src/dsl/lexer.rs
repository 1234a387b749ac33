use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Int(String),
    /// `∅`, the empty jump list.
    Empty,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Unknown(char),
    End,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) | TokenKind::Int(s) => alloc::format!("`{s}`"),
            TokenKind::Empty => "`∅`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Unknown(c) => alloc::format!("`{c}`"),
            TokenKind::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    /// Byte offsets.
    pub start: usize,
    pub end: usize,
    /// 1-based.
    pub line: usize,
    pub col: usize,
}

/// Splits the input into tokens, always ending with `End`. Identifiers and
/// integers take the longest run of matching characters.
pub(crate) fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    let mut col = 1;
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            continue;
        }
        let (tok_line, tok_col) = (line, col);
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            TokenKind::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            TokenKind::Int(s)
        } else {
            chars.next();
            col += 1;
            match c {
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                ',' => TokenKind::Comma,
                ';' => TokenKind::Semi,
                ':' => TokenKind::Colon,
                '∅' => TokenKind::Empty,
                other => TokenKind::Unknown(other),
            }
        };
        let end = chars.peek().map_or(text.len(), |&(i, _)| i);
        out.push(Token {
            kind,
            start,
            end,
            line: tok_line,
            col: tok_col,
        });
    }
    out.push(Token {
        kind: TokenKind::End,
        start: text.len(),
        end: text.len(),
        line,
        col,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = tokenize("GP(n,\n  12)");
        let kinds: Vec<_> = toks.iter().map(|t| t.kind.clone()).collect();
        assert_eq!(
            kinds,
            [
                TokenKind::Ident("GP".into()),
                TokenKind::LParen,
                TokenKind::Ident("n".into()),
                TokenKind::Comma,
                TokenKind::Int("12".into()),
                TokenKind::RParen,
                TokenKind::End,
            ]
        );
        assert_eq!((toks[4].line, toks[4].col), (2, 3));
        assert_eq!((toks[4].start, toks[4].end), (8, 10));
    }

    #[test]
    fn empty_set_symbol() {
        let toks = tokenize("[∅]");
        assert_eq!(toks[1].kind, TokenKind::Empty);
        assert_eq!(toks[2].start, 1 + '∅'.len_utf8());
    }
}
