//! Polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ['^' integer]
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::polynomial::{Poly, PolyRing};
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn err(column: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^/()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character {c:?}")));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Int(n) => format!("unexpected number {n}"),
            Tok::Ident(s) => format!("unexpected identifier {s}"),
            Tok::Sym(c) => format!("unexpected '{c}'"),
            Tok::End => "unexpected end of input".into(),
        }
    }
}

pub(crate) fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly, AlgebraError> {
    let mut lx = Lexer { toks: lex(text)?, pos: 0 };
    let p = expr(ring, &mut lx)?;
    if *lx.peek() != Tok::End {
        return Err(err(lx.col(), lx.describe()));
    }
    Ok(p)
}

fn expr(ring: &PolyRing, lx: &mut Lexer) -> Result<Poly, AlgebraError> {
    let mut negate_first = false;
    match lx.peek() {
        Tok::Sym('+') => {
            lx.bump();
        }
        Tok::Sym('-') => {
            lx.bump();
            negate_first = true;
        }
        _ => {}
    }
    let mut acc = term(ring, lx)?;
    if negate_first {
        acc = ring.neg(&acc);
    }
    loop {
        match lx.peek() {
            Tok::Sym('+') => {
                lx.bump();
                let t = term(ring, lx)?;
                acc = ring.add(&acc, &t);
            }
            Tok::Sym('-') => {
                lx.bump();
                let t = term(ring, lx)?;
                acc = ring.sub(&acc, &t);
            }
            _ => return Ok(acc),
        }
    }
}

fn term(ring: &PolyRing, lx: &mut Lexer) -> Result<Poly, AlgebraError> {
    let mut acc = factor(ring, lx)?;
    while *lx.peek() == Tok::Sym('*') {
        lx.bump();
        let f = factor(ring, lx)?;
        acc = ring.mul(&acc, &f);
    }
    Ok(acc)
}

fn factor(ring: &PolyRing, lx: &mut Lexer) -> Result<Poly, AlgebraError> {
    if *lx.peek() == Tok::Sym('-') {
        lx.bump();
        let f = factor(ring, lx)?;
        return Ok(ring.neg(&f));
    }
    let base = atom(ring, lx)?;
    if *lx.peek() == Tok::Sym('^') {
        lx.bump();
        let col = lx.col();
        match lx.bump() {
            (Tok::Int(n), _) => {
                let e: u32 = n.try_into().map_err(|_| err(col, "exponent too large"))?;
                return Ok(ring.pow(&base, e));
            }
            _ => return Err(err(col, "exponent must be a nonnegative integer literal")),
        }
    }
    Ok(base)
}

fn atom(ring: &PolyRing, lx: &mut Lexer) -> Result<Poly, AlgebraError> {
    let col = lx.col();
    match lx.peek().clone() {
        Tok::Int(n) => {
            lx.bump();
            if *lx.peek() == Tok::Sym('/') {
                lx.bump();
                let dcol = lx.col();
                match lx.bump() {
                    (Tok::Int(d), _) => {
                        let c = ring
                            .field()
                            .from_fraction(&n, &d)
                            .map_err(|_| err(dcol, "denominator vanishes in the coefficient field"))?;
                        Ok(ring.constant(c))
                    }
                    _ => Err(err(dcol, "expected integer denominator")),
                }
            } else {
                Ok(ring.constant(ring.field().from_bigint(&n)))
            }
        }
        Tok::Ident(name) => {
            lx.bump();
            match ring.var_index(&name) {
                Some(i) => Ok(ring.var(i)),
                None => Err(err(col, format!("unknown variable {name}"))),
            }
        }
        Tok::Sym('(') => {
            lx.bump();
            let e = expr(ring, lx)?;
            if *lx.peek() != Tok::Sym(')') {
                return Err(err(lx.col(), format!("expected ')', {}", lx.describe())));
            }
            lx.bump();
            Ok(e)
        }
        _ => Err(err(col, lx.describe())),
    }
}

#[cfg(test)]
mod tests {
    use crate::poly::{Field, MonomialOrder, PolyRing};
    use crate::AlgebraError;

    fn ring() -> PolyRing {
        PolyRing::new(&["x", "y", "z"], Field::Rational, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn precedence_and_rationals() {
        let r = ring();
        let p = r.parse("3*x^2*y - 1/2*z").unwrap();
        assert_eq!(r.format(&p), "3*x^2*y - 1/2*z");
        assert_eq!(r.parse("-x^2").unwrap(), r.neg(&r.parse("x^2").unwrap()));
        assert_eq!(r.parse("(x+y)^2 - x*(x+2*y)").unwrap(), r.parse("y^2").unwrap());
        assert_eq!(r.parse("2 - 2").unwrap(), r.zero());
    }

    #[test]
    fn double_star_is_rejected_at_second_star() {
        let r = ring();
        match r.parse("x**y") {
            Err(AlgebraError::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variables_and_garbage() {
        let r = ring();
        assert!(matches!(r.parse("x + w"), Err(AlgebraError::Parse { column: 5, .. })));
        assert!(r.parse("x +").is_err());
        assert!(r.parse("2x").is_err());
        assert!(r.parse("x^y").is_err());
        assert!(r.parse("(x").is_err());
    }

    #[test]
    fn prime_field_literals() {
        let r = PolyRing::new(&["x"], Field::prime(7).unwrap(), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.parse("1/2*x").unwrap(), r.parse("4*x").unwrap());
        assert!(r.parse("1/7").is_err());
        assert_eq!(r.format(&r.parse("6*x").unwrap()), "-x");
    }
}
