//! Recursive descent parser producing [`Expr`] trees.

use std::f64::consts::{E, PI};

use thiserror::Error;

use super::lexer::{tokenize, LexError, Token, TokenKind};
use super::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("expected {expected} at position {position}")]
    Syntax {
        position: usize,
        expected: &'static str,
    },
    #[error("unknown identifier {name:?} at position {position}")]
    UnknownIdentifier { position: usize, name: String },
}

impl ParseError {
    /// Byte offset in the source where the error was detected. For errors
    /// at end of input this equals the source length.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Lex(e) => e.position(),
            ParseError::Syntax { position, .. }
            | ParseError::UnknownIdentifier { position, .. } => *position,
        }
    }
}

/// Parses `source` into an expression tree.
///
/// `pi` and `e` become constants, and a unary minus applied directly to a
/// constant is folded into it.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: source.len(),
    };
    let expr = parser.expr()?;
    if parser.pos < tokens.len() {
        return Err(parser.error("operator or end of input"));
    }
    Ok(expr)
}

struct Parser<'t, 'a> {
    tokens: &'t [Token<'a>],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'_, 'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            position: self.position(),
            expected,
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &'static str) -> Result<(), ParseError> {
        if self.peek_kind() == Some(kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek_kind() == Some(TokenKind::Minus) {
            self.pos += 1;
            return Ok(match self.unary()? {
                Expr::Constant(v) => Expr::Constant(-v),
                other => Expr::neg(other),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek_kind() == Some(TokenKind::Caret) {
            self.pos += 1;
            // the exponent may itself start with a unary minus: 2^-3
            let exponent = self.unary()?;
            return Ok(Expr::pow(base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let Some(&tok) = self.peek() else {
            return Err(self.error("number, identifier or '('"));
        };
        match tok.kind {
            TokenKind::Number => {
                self.pos += 1;
                let value = tok.number().expect("lexer only emits finite numbers");
                Ok(Expr::Constant(value))
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(inner)
            }
            TokenKind::Identifier => {
                self.pos += 1;
                match tok.text {
                    "x" => Ok(Expr::Variable),
                    "pi" => Ok(Expr::Constant(PI)),
                    "e" => Ok(Expr::Constant(E)),
                    name => {
                        let Some(func) = Func::from_name(name) else {
                            return Err(ParseError::UnknownIdentifier {
                                position: tok.position,
                                name: name.to_string(),
                            });
                        };
                        self.expect(TokenKind::LParen, "'(' after function name")?;
                        let arg = self.expr()?;
                        self.expect(TokenKind::RParen, "')'")?;
                        Ok(Expr::call(func, arg))
                    }
                }
            }
            _ => Err(self.error("number, identifier or '('")),
        }
    }
}
