//! Lexer and element parser for the textual Lie element grammar:
//!
//! ```text
//! element  := ['-'] term { ('+' | '-') term }
//! term     := [rational] monomial | rational
//! rational := INT [ '/' INT ]
//! monomial := NAME | '[' element ',' element ']'
//! ```
//!
//! A term that is a bare rational must be `0`; it stands for the zero element.

use num_bigint::BigInt;

use crate::lie::{bracket, FreeLie, LieElement};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

const SYMBOLS: [&str; 12] = ["->", "{", "}", "[", "]", ",", ";", ":", "=", "+", "-", "/"];

/// Splits `src` into tokens. `#` and `//` start comments running to the end of the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (lno, col) = (li + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
                break;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Ident(s), line: lno, col });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n: BigInt = s.parse().expect("digits");
                out.push(Token { tok: Tok::Int(n), line: lno, col });
                continue;
            }
            let rest: String = chars[i..].iter().take(2).collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(*s)) {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), line: lno, col });
                    i += s.len();
                }
                None => {
                    return Err(SyntaxError {
                        line: lno,
                        col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        }
    }
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        let end = toks.last().map_or((1, 1), |t| (t.line, t.col + 1));
        Cursor { toks, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub fn advance(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    /// Index of the next token.
    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn set_position(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Position of the next token (or just past the end).
    pub fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.col))
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        let (line, col) = self.here();
        SyntaxError {
            line,
            col,
            message: message.into(),
        }
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(x), .. }) if *x == s)
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.is_sym(s) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, usize, usize), SyntaxError> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), line, col }) => {
                self.pos += 1;
                Ok((s.clone(), *line, *col))
            }
            _ => Err(self.error("expected a name")),
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`"))),
        }
    }

    /// Optionally signed integer.
    pub fn expect_int(&mut self) -> Result<BigInt, SyntaxError> {
        let neg = if self.is_sym("-") {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(Token { tok: Tok::Int(n), .. }) => {
                self.pos += 1;
                Ok(if neg { -n.clone() } else { n.clone() })
            }
            _ => Err(self.error("expected an integer")),
        }
    }
}

/// Parses an element at the cursor. A literal zero comes back with degree 0.
pub fn parse_element(lie: &FreeLie, cur: &mut Cursor) -> Result<LieElement, SyntaxError> {
    let mut acc: Option<LieElement> = None;
    let mut first = true;
    loop {
        let sign = if cur.is_sym("-") {
            cur.advance();
            Q::from_int(-1)
        } else if !first && cur.is_sym("+") {
            cur.advance();
            Q::one()
        } else if first {
            Q::one()
        } else {
            break;
        };
        first = false;
        let here = cur.here();
        let term = parse_term(lie, cur)?.scale(&sign);
        acc = Some(match acc {
            None => term,
            Some(a) => combine_terms(a, term).map_err(|m| SyntaxError {
                line: here.0,
                col: here.1,
                message: m,
            })?,
        });
    }
    Ok(acc.expect("at least one term"))
}

fn combine_terms(a: LieElement, b: LieElement) -> Result<LieElement, String> {
    if a.degree() == 0 {
        return Ok(b);
    }
    if b.degree() == 0 {
        return Ok(a);
    }
    if a.degree() != b.degree() {
        return Err(format!(
            "inhomogeneous element: degrees {} and {}",
            a.degree(),
            b.degree()
        ));
    }
    Ok(&a + &b)
}

fn parse_term(lie: &FreeLie, cur: &mut Cursor) -> Result<LieElement, SyntaxError> {
    let coeff = match cur.peek() {
        Some(Token { tok: Tok::Int(n), .. }) => {
            cur.advance();
            let num = Q::from_bigint(n.clone());
            if cur.is_sym("/") {
                cur.advance();
                let den = match cur.advance() {
                    Some(Token { tok: Tok::Int(d), .. }) if *d != BigInt::from(0) => {
                        Q::from_bigint(d.clone())
                    }
                    _ => return Err(cur.error("expected a nonzero denominator")),
                };
                Some(&num / &den)
            } else {
                Some(num)
            }
        }
        _ => None,
    };
    let starts_monomial = cur.is_sym("[") || matches!(cur.peek(), Some(Token { tok: Tok::Ident(_), .. }));
    match (coeff, starts_monomial) {
        (Some(c), false) => {
            if c.is_zero() {
                Ok(LieElement::zero(0))
            } else {
                Err(cur.error("a nonzero coefficient must be followed by a monomial"))
            }
        }
        (c, true) => {
            let m = parse_monomial(lie, cur)?;
            Ok(match c {
                Some(c) => m.scale(&c),
                None => m,
            })
        }
        (None, false) => Err(cur.error("expected a term")),
    }
}

fn parse_monomial(lie: &FreeLie, cur: &mut Cursor) -> Result<LieElement, SyntaxError> {
    if cur.is_sym("[") {
        let (line, col) = cur.here();
        cur.advance();
        let a = parse_element(lie, cur)?;
        cur.expect_sym(",")?;
        let b = parse_element(lie, cur)?;
        cur.expect_sym("]")?;
        if a.degree() == 0 || b.degree() == 0 {
            // bracket with a literal zero
            return Ok(LieElement::zero(0));
        }
        let degree = a.degree() + b.degree();
        if degree > lie.max_degree() {
            return Err(SyntaxError {
                line,
                col,
                message: format!(
                    "bracket of degree {degree} exceeds the truncation degree {}",
                    lie.max_degree()
                ),
            });
        }
        return Ok(bracket(&a, &b));
    }
    let (name, line, col) = cur.expect_ident()?;
    lie.gen_by_name(&name).map_err(|_| SyntaxError {
        line,
        col,
        message: format!("unknown generator `{name}`"),
    })
}

/// Parses a whole string as one element.
pub fn parse_element_str(lie: &FreeLie, src: &str) -> Result<LieElement, SyntaxError> {
    let toks = tokenize(src)?;
    let mut cur = Cursor::new(&toks);
    let e = parse_element(lie, &mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(e)
}
