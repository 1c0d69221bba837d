//! Tokenizer for the expression language.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

/// A lexical token borrowing its text from the source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// 0-based byte offset of the first character.
    pub position: usize,
}

impl Token<'_> {
    /// Numeric value of a `Number` token. Always finite for tokens
    /// produced by [`tokenize`].
    pub fn number(&self) -> Option<f64> {
        match self.kind {
            TokenKind::Number => self.text.parse().ok(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("unexpected character {found:?} at position {position}")]
    UnexpectedChar { position: usize, found: char },
    #[error("numeric literal at position {position} is out of range")]
    NumberOutOfRange { position: usize },
}

impl LexError {
    pub fn position(&self) -> usize {
        match *self {
            LexError::UnexpectedChar { position, .. } | LexError::NumberOutOfRange { position } => {
                position
            }
        }
    }
}

/// Splits `source` into tokens, skipping whitespace.
///
/// Numbers are matched greedily: digits, an optional fraction and an
/// optional exponent. An exponent marker is only consumed when digits
/// follow it, so `2e` lexes as the number `2` followed by the identifier `e`.
pub fn tokenize(source: &str) -> Result<Vec<Token<'_>>, LexError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;

    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }

        let start = pos;
        let kind = match b {
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b',' => TokenKind::Comma,
            b'0'..=b'9' | b'.' => {
                pos = scan_number(bytes, pos);
                if pos == start {
                    return Err(unexpected(source, start));
                }
                let text = &source[start..pos];
                let finite = text.parse::<f64>().map(f64::is_finite).unwrap_or(false);
                if !finite {
                    return Err(LexError::NumberOutOfRange { position: start });
                }
                tokens.push(Token {
                    kind: TokenKind::Number,
                    text,
                    position: start,
                });
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                    pos += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Identifier,
                    text: &source[start..pos],
                    position: start,
                });
                continue;
            }
            _ => return Err(unexpected(source, start)),
        };
        pos += 1;
        tokens.push(Token {
            kind,
            text: &source[start..pos],
            position: start,
        });
    }

    Ok(tokens)
}

fn unexpected(source: &str, position: usize) -> LexError {
    let found = source[position..].chars().next().unwrap_or('\0');
    LexError::UnexpectedChar { position, found }
}

/// Returns the end of the longest numeric literal starting at `start`,
/// or `start` itself if there is none (a lone `.`).
fn scan_number(bytes: &[u8], start: usize) -> usize {
    let digits = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        i
    };

    let mut pos = digits(start);
    let int_len = pos - start;
    let mut frac_len = 0;
    if pos < bytes.len() && bytes[pos] == b'.' {
        let after = digits(pos + 1);
        frac_len = after - pos - 1;
        if int_len > 0 || frac_len > 0 {
            pos = after;
        }
    }
    if int_len == 0 && frac_len == 0 {
        return start;
    }

    if pos < bytes.len() && matches!(bytes[pos], b'e' | b'E') {
        let mut exp = pos + 1;
        if exp < bytes.len() && matches!(bytes[exp], b'+' | b'-') {
            exp += 1;
        }
        let end = digits(exp);
        if end > exp {
            pos = end;
        }
    }
    pos
}
