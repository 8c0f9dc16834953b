//! Lexer and Pratt parser for the input grammar: integer literals, the binary
//! operators + - * / ^, unary minus, parentheses, and sqrt(...), which
//! desugars to ^(1/2). Binding strength: ^ over unary minus over * and / over
//! + and -, with ^ right-associative and everything else left-associative.

use num_bigint::BigInt;

use crate::numkernel::Rational;

use super::{Expr, ExprError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Sqrt,
    Eof,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => { toks.push((Tok::Plus, start)); i += 1; }
            b'-' => { toks.push((Tok::Minus, start)); i += 1; }
            b'*' => { toks.push((Tok::Star, start)); i += 1; }
            b'/' => { toks.push((Tok::Slash, start)); i += 1; }
            b'^' => { toks.push((Tok::Caret, start)); i += 1; }
            b'(' => { toks.push((Tok::LParen, start)); i += 1; }
            b')' => { toks.push((Tok::RParen, start)); i += 1; }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digit run parses");
                toks.push((Tok::Int(n), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                if &src[start..i] == "sqrt" {
                    toks.push((Tok::Sqrt, start));
                } else {
                    return Err(ExprError::Syntax { pos: start });
                }
            }
            _ => return Err(ExprError::Syntax { pos: start }),
        }
    }
    toks.push((Tok::Eof, bytes.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

// Unary minus binds between * and ^, so -2^2 is -(2^2) while -2*3 is (-2)*3.
const UNARY_BP: u8 = 5;

impl Parser {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.i]
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ExprError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(ExprError::Syntax { pos })
        }
    }

    fn parse_expr(&mut self, min_bp: u8) -> Result<Expr, ExprError> {
        let (tok, pos) = self.next();
        let mut lhs = match tok {
            Tok::Int(n) => Expr::Number(Rational::from_integer(n)),
            Tok::Minus => Expr::Neg(Box::new(self.parse_expr(UNARY_BP)?)),
            Tok::LParen => {
                let e = self.parse_expr(0)?;
                self.expect(Tok::RParen)?;
                e
            }
            Tok::Sqrt => {
                self.expect(Tok::LParen)?;
                let e = self.parse_expr(0)?;
                self.expect(Tok::RParen)?;
                Expr::Pow(
                    Box::new(e),
                    Box::new(Expr::Number(Rational::new(BigInt::from(1), BigInt::from(2)))),
                )
            }
            _ => return Err(ExprError::Syntax { pos }),
        };
        loop {
            let (lbp, rbp) = match self.peek().0 {
                Tok::Plus | Tok::Minus => (1, 2),
                Tok::Star | Tok::Slash => (3, 4),
                Tok::Caret => (8, 7),
                _ => break,
            };
            if lbp < min_bp {
                break;
            }
            let (op, _) = self.next();
            let rhs = self.parse_expr(rbp)?;
            lhs = match op {
                Tok::Plus => Expr::Add(Box::new(lhs), Box::new(rhs)),
                Tok::Minus => Expr::Sub(Box::new(lhs), Box::new(rhs)),
                Tok::Star => Expr::Mul(Box::new(lhs), Box::new(rhs)),
                Tok::Slash => Expr::Div(Box::new(lhs), Box::new(rhs)),
                Tok::Caret => Expr::Pow(Box::new(lhs), Box::new(rhs)),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }
}

pub(super) fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0 };
    let e = p.parse_expr(0)?;
    let (tok, pos) = p.peek().clone();
    if tok == Tok::Eof {
        Ok(e)
    } else {
        Err(ExprError::Syntax { pos })
    }
}
