//! Tokenizer for the TPTP TFF/THF surface syntax.

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Semicolon,
    Assign,
    Star,
    Arrow,
    Plus,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Implies,
    RevImplies,
    Iff,
    Xor,
    Nor,
    Nand,
    Forall,
    Exists,
    At,
    Lambda,
    Lower(String),
    Upper(String),
    Dollar(String),
    DollarDollar(String),
    Quoted(String),
    Distinct(String),
    Integer(String),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Dollar(s) | Tok::DollarDollar(s) => s.clone(),
            Tok::Integer(s) => s.clone(),
            Tok::Quoted(s) => format!("'{s}'"),
            Tok::Distinct(s) => format!("\"{s}\""),
            Tok::Eof => "end of input".into(),
            other => punct(other).into(),
        }
    }
}

fn punct(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBracket => "[",
        Tok::RBracket => "]",
        Tok::Comma => ",",
        Tok::Dot => ".",
        Tok::Colon => ":",
        Tok::Semicolon => ";",
        Tok::Assign => ":=",
        Tok::Star => "*",
        Tok::Arrow => ">",
        Tok::Plus => "+",
        Tok::Eq => "=",
        Tok::Neq => "!=",
        Tok::Not => "~",
        Tok::And => "&",
        Tok::Or => "|",
        Tok::Implies => "=>",
        Tok::RevImplies => "<=",
        Tok::Iff => "<=>",
        Tok::Xor => "<~>",
        Tok::Nor => "~|",
        Tok::Nand => "~&",
        Tok::Forall => "!",
        Tok::Exists => "?",
        Tok::At => "@",
        Tok::Lambda => "^",
        _ => "?",
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// Byte offset of the token in the source.
    pub start: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut line_start = 0;
    let err = |line: usize, col: usize, msg: &str| ParseError::Syntax {
        line,
        col,
        expected: msg.to_string(),
        found: String::new(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            line += 1;
            line_start = i + 1;
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'%' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'*') {
            let (l0, c0) = (line, i - line_start + 1);
            i += 2;
            loop {
                if i + 1 >= bytes.len() {
                    return Err(err(l0, c0, "end of block comment"));
                }
                if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                    i += 2;
                    break;
                }
                if bytes[i] == b'\n' {
                    line += 1;
                    line_start = i + 1;
                }
                i += 1;
            }
            continue;
        }
        let start = i;
        let col = i - line_start + 1;
        let next = |k: usize| bytes.get(i + k).copied();
        let (tok, len) = match c {
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'[' => (Tok::LBracket, 1),
            b']' => (Tok::RBracket, 1),
            b',' => (Tok::Comma, 1),
            b'.' => (Tok::Dot, 1),
            b';' => (Tok::Semicolon, 1),
            b'*' => (Tok::Star, 1),
            b'>' => (Tok::Arrow, 1),
            b'&' => (Tok::And, 1),
            b'|' => (Tok::Or, 1),
            b'@' => (Tok::At, 1),
            b'^' => (Tok::Lambda, 1),
            b'?' => (Tok::Exists, 1),
            b':' if next(1) == Some(b'=') => (Tok::Assign, 2),
            b':' => (Tok::Colon, 1),
            b'=' if next(1) == Some(b'>') => (Tok::Implies, 2),
            b'=' => (Tok::Eq, 1),
            b'!' if next(1) == Some(b'=') => (Tok::Neq, 2),
            b'!' => (Tok::Forall, 1),
            b'~' if next(1) == Some(b'|') => (Tok::Nor, 2),
            b'~' if next(1) == Some(b'&') => (Tok::Nand, 2),
            b'~' => (Tok::Not, 1),
            b'<' if next(1) == Some(b'=') && next(2) == Some(b'>') => (Tok::Iff, 3),
            b'<' if next(1) == Some(b'~') && next(2) == Some(b'>') => (Tok::Xor, 3),
            b'<' if next(1) == Some(b'=') => (Tok::RevImplies, 2),
            b'+' | b'-' if next(1).is_some_and(|d| d.is_ascii_digit()) => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let text = if c == b'+' {
                    &src[i + 1..j]
                } else {
                    &src[i..j]
                };
                (Tok::Integer(text.to_string()), j - i)
            }
            b'+' => (Tok::Plus, 1),
            b'\'' | b'"' => {
                let mut j = i + 1;
                let mut s = String::new();
                loop {
                    match bytes.get(j) {
                        None => return Err(err(line, col, "closing quote")),
                        Some(b'\\') if j + 1 < bytes.len() => {
                            s.push(bytes[j + 1] as char);
                            j += 2;
                        }
                        Some(&q) if q == c => break,
                        Some(_) => {
                            let ch = src[j..].chars().next().unwrap();
                            s.push(ch);
                            j += ch.len_utf8();
                        }
                    }
                }
                let t = if c == b'\'' {
                    Tok::Quoted(s)
                } else {
                    Tok::Distinct(s)
                };
                (t, j + 1 - i)
            }
            b'$' => {
                let dd = next(1) == Some(b'$');
                let mut j = i + if dd { 2 } else { 1 };
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let text = src[i..j].to_string();
                let t = if dd {
                    Tok::DollarDollar(text)
                } else {
                    Tok::Dollar(text)
                };
                (t, j - i)
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                (Tok::Integer(src[i..j].to_string()), j - i)
            }
            a if a.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let text = src[i..j].to_string();
                let t = if a.is_ascii_uppercase() {
                    Tok::Upper(text)
                } else {
                    Tok::Lower(text)
                };
                (t, j - i)
            }
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: "a TPTP token".into(),
                    found: src[i..].chars().next().unwrap().to_string(),
                })
            }
        };
        i += len;
        out.push(Token {
            tok,
            line,
            col,
            start,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col: i - line_start + 1,
        start: i,
    });
    Ok(out)
}
