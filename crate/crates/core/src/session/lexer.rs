use crate::error::{Error, Result};

/// Position of a token, 1-based.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

// Spans are diagnostics only; two nodes parsed from differently laid out
// text are the same node.
impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Bar,
    DotDot,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(s) => format!("'{s}'"),
            Tok::Eof => "end of input".into(),
            t => format!("'{}'", t.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Slash => "/",
            Tok::Bar => "|",
            Tok::DotDot => "..",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Splits session text into tokens. `#` starts a comment running to the
/// end of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '|' => Tok::Bar,
                '.' if chars.get(i) == Some(&'.') => {
                    i += 1;
                    Tok::DotDot
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {line}, col {col}: unexpected character '{c}'"
                    )))
                }
            }
        };
        col += i - start;
        out.push(Token { tok, span });
    }
    let span = out.last().map(|t| t.span).unwrap_or(Span { line: 1, col: 1 });
    out.push(Token {
        tok: Tok::Eof,
        span,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_ranges() {
        let toks = tokenize("ring R = QQ[x0..x2];\n  ideal").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("ring".into()));
        assert_eq!((toks[5].span.line, toks[5].span.col), (1, 13));
        assert_eq!(toks[6].tok, Tok::DotDot);
        let last = &toks[toks.len() - 2];
        assert_eq!((last.span.line, last.span.col), (2, 3));
    }

    #[test]
    fn comments_are_skipped() {
        let toks = tokenize("# header\nsegre I; # trailing").unwrap();
        assert_eq!(toks.len(), 4);
    }

    #[test]
    fn stray_character() {
        let err = tokenize("ideal I = (x0 $ 1)").unwrap_err();
        assert_eq!(
            err,
            Error::Parse("line 1, col 15: unexpected character '$'".into())
        );
    }
}
