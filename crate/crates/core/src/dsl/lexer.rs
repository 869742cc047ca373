use num_bigint::BigInt;

use super::ast::Pos;
use super::{SchemeError, SchemeErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Scheme,
    Param,
    State,
    Step,
    Let,
    Guard,
    Else,
    Terminate,
    Min,
    Max,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Eof,
}

impl Tok {
    /// How the token is named in "expected ..." messages.
    pub fn describe(&self) -> String {
        let s = match self {
            Tok::Ident(_) => "identifier",
            Tok::Int(_) => "integer",
            Tok::Scheme => "`scheme`",
            Tok::Param => "`param`",
            Tok::State => "`state`",
            Tok::Step => "`step`",
            Tok::Let => "`let`",
            Tok::Guard => "`guard`",
            Tok::Else => "`else`",
            Tok::Terminate => "`terminate`",
            Tok::Min => "`min`",
            Tok::Max => "`max`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Semi => "`;`",
            Tok::Comma => "`,`",
            Tok::Assign => "`=`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
            Tok::Lt => "`<`",
            Tok::Le => "`<=`",
            Tok::Gt => "`>`",
            Tok::Ge => "`>=`",
            Tok::EqEq => "`==`",
            Tok::Eof => "end of input",
        };
        s.to_string()
    }
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "scheme" => Tok::Scheme,
        "param" => Tok::Param,
        "state" => Tok::State,
        "step" => Tok::Step,
        "let" => Tok::Let,
        "guard" => Tok::Guard,
        "else" => Tok::Else,
        "terminate" => Tok::Terminate,
        "min" => Tok::Min,
        "max" => Tok::Max,
        _ => return None,
    })
}

pub fn is_keyword(word: &str) -> bool {
    keyword(word).is_some()
}

pub fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, SchemeError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
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
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((keyword(&word).unwrap_or(Tok::Ident(word)), pos));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, width) = match (c, next) {
            ('<', Some('=')) => (Tok::Le, 2),
            ('>', Some('=')) => (Tok::Ge, 2),
            ('=', Some('=')) => (Tok::EqEq, 2),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            ('=', _) => (Tok::Assign, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (';', _) => (Tok::Semi, 1),
            (',', _) => (Tok::Comma, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            _ => {
                return Err(SchemeError::new(
                    SchemeErrorKind::Lexical(format!("unexpected character `{c}`")),
                    pos,
                ))
            }
        };
        out.push((tok, pos));
        i += width;
        col += width;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("# head\nstate q = 1/2; # tail\n  q <= 3").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|(t, _)| t).collect();
        assert_eq!(kinds[0], &Tok::State);
        assert_eq!(toks[0].1.line, 2);
        assert_eq!(toks[0].1.col, 1);
        let le = toks.iter().find(|(t, _)| *t == Tok::Le).unwrap();
        assert_eq!((le.1.line, le.1.col), (3, 5));
        assert_eq!(kinds.last().unwrap(), &&Tok::Eof);
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("state q = 1.5;").unwrap_err();
        assert_eq!((err.line, err.col), (1, 12));
    }
}
