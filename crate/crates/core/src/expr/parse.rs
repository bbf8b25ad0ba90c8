use super::{ExprError, Resolved, SymbolTable};
use crate::algebra::{Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Int(i64),
    Ident(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Gen { name: String, args: Vec<Arg>, pos: Pos },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, table: &dyn SymbolTable) -> Result<Polynomial, ExprError> {
        let ring = table.ring();
        Ok(match self {
            Expr::Lit(c) => Polynomial::constant(ring, c.clone()),
            Expr::Gen { name, args, pos } => match table.resolve(name, args) {
                Resolved::Value(p) => p,
                Resolved::Unknown => {
                    return Err(ExprError::UnknownGenerator {
                        name: name.clone(),
                        line: pos.line,
                        col: pos.col,
                    })
                }
                Resolved::Arity(expected) => {
                    return Err(ExprError::Arity {
                        name: name.clone(),
                        expected,
                        got: args.len(),
                    })
                }
                Resolved::Invalid(msg) => {
                    return Err(ExprError::Argument {
                        name: name.clone(),
                        msg,
                    })
                }
            },
            Expr::Neg(a) => -a.eval(table)?,
            Expr::Add(a, b) => a.eval(table)? + b.eval(table)?,
            Expr::Sub(a, b) => a.eval(table)? - b.eval(table)?,
            Expr::Mul(a, b) => a.eval(table)? * b.eval(table)?,
            Expr::Pow(a, e) => a.eval(table)?.pow(*e),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
}

fn lex(text: &str) -> Result<Lexer, ExprError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
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
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Num(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if "+-*^(),/".contains(c) {
            toks.push((Tok::Sym(c), pos));
            i += 1;
            col += 1;
            continue;
        }
        return Err(ExprError::Syntax {
            line,
            col,
            msg: format!("unexpected character '{c}'"),
        });
    }
    toks.push((Tok::End, Pos { line, col }));
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        let p = self.pos();
        Err(ExprError::Syntax {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected '{c}', found {}", describe(self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = if self.peek() == &Tok::Sym('-') {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while self.peek() == &Tok::Sym('*') {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => match u32::try_from(n) {
                Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                Err(_) => Err(ExprError::Syntax {
                    line: pos.line,
                    col: pos.col,
                    msg: "exponent too large".into(),
                }),
            },
            Tok::Sym('-') => Err(ExprError::NegativeExponent {
                line: pos.line,
                col: pos.col,
            }),
            t => Err(ExprError::Syntax {
                line: pos.line,
                col: pos.col,
                msg: format!("expected a natural-number exponent, found {}", describe(&t)),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                if self.peek() == &Tok::Sym('/') {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Num(d) if !d.is_zero() => Ok(Expr::Lit(Rational::new(n, d))),
                        _ => Err(ExprError::Syntax {
                            line: dpos.line,
                            col: dpos.col,
                            msg: "expected a nonzero denominator".into(),
                        }),
                    }
                } else {
                    Ok(Expr::Lit(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                self.bump();
                let mut args = Vec::new();
                if self.peek() == &Tok::Sym('(') {
                    self.bump();
                    loop {
                        args.push(self.arg()?);
                        match self.peek() {
                            Tok::Sym(',') => {
                                self.bump();
                            }
                            _ => break,
                        }
                    }
                    self.expect(')')?;
                }
                Ok(Expr::Gen { name, args, pos })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            t => self.err(format!("expected an operand, found {}", describe(&t))),
        }
    }

    fn arg(&mut self) -> Result<Arg, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => i64::try_from(n).map(Arg::Int).map_err(|_| ExprError::Syntax {
                line: pos.line,
                col: pos.col,
                msg: "argument too large".into(),
            }),
            Tok::Ident(s) => Ok(Arg::Ident(s)),
            t => Err(ExprError::Syntax {
                line: pos.line,
                col: pos.col,
                msg: format!("expected an argument, found {}", describe(&t)),
            }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

/// Parses text into an unevaluated syntax tree.
pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let lexer = lex(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        at: 0,
    };
    if p.peek() == &Tok::End {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}
