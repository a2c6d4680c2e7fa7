//! Parser for univariate rational expressions such as
//! `16 (-1 + v)^4 v^4` or `(1 + 3 w^2)/(3 + w^2)`.
//!
//! Juxtaposition means multiplication, `^` takes a non-negative integer
//! exponent, and unary minus binds looser than `^` (so `-u^2` is −(u²)).

use num_bigint::BigInt;

use super::{Poly, RatFunc, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut t = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    t.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Tok::Num(t.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let mut t = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    t.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Tok::Ident(t));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            chars.next();
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    var: &'a str,
    bindings: &'a [(&'a str, RatFunc)],
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = &acc / &d;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.to_string().parse::<i32>().map_err(|_| self.err("exponent too large"))?,
                Some(Tok::Op('(')) => {
                    // allow ^(-1) style exponents
                    self.pos += 1;
                    let neg = matches!(self.peek(), Some(Tok::Op('-')));
                    if neg {
                        self.pos += 1;
                    }
                    let e = match self.peek() {
                        Some(Tok::Num(n)) => n.to_string().parse::<i32>().map_err(|_| self.err("bad exponent"))?,
                        _ => return Err(self.err("expected exponent")),
                    };
                    self.pos += 1;
                    if self.peek() != Some(&Tok::Op(')')) {
                        return Err(self.err("expected ')'"));
                    }
                    if neg {
                        -e
                    } else {
                        e
                    }
                }
                _ => return Err(self.err("expected exponent")),
            };
            self.pos += 1;
            if e < 0 && base.is_zero() {
                return Err(self.err("zero to a negative power"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == self.var {
                    return Ok(RatFunc::x());
                }
                match self.bindings.iter().find(|(n, _)| *n == name) {
                    Some((_, f)) => Ok(f.clone()),
                    None => {
                        self.pos -= 1;
                        Err(self.err(&format!("unknown variable {name:?}, expected {:?}", self.var)))
                    }
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses a rational expression in the single variable `var`.
pub fn parse_ratfunc(src: &str, var: &str) -> Result<RatFunc> {
    parse_ratfunc_with(src, var, &[])
}

/// Parses with extra names bound to fixed rational functions of `var`, so a
/// formula written in `v` can be read directly as a function of `w` once
/// `v = v(w)` is bound.
pub fn parse_ratfunc_with(src: &str, var: &str, bindings: &[(&str, RatFunc)]) -> Result<RatFunc> {
    let mut p = Parser { toks: lex(src)?, pos: 0, var, bindings, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Like [`parse_ratfunc`] but requires the result to be a polynomial.
pub fn parse_poly(src: &str, var: &str) -> Result<Poly> {
    let f = parse_ratfunc(src, var)?;
    if !f.is_polynomial() {
        return Err(Error::Parse(format!("{src:?} is not a polynomial")));
    }
    Ok(f.num().scale(&f.den().leading().recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{frac, rat};

    #[test]
    fn juxtaposition_and_powers() {
        let b8 = parse_poly("16 (-1 + v)^4 v^4", "v").unwrap();
        assert_eq!(b8.eval(&rat(2)), rat(256));
        let a8 = parse_poly("1 - 8 v + 16 v^2 - 16 v^3 + 8 v^4", "v").unwrap();
        assert_eq!(a8.eval(&rat(2)), rat(49));
        assert_eq!(parse_poly("-u^2", "u").unwrap(), Poly::from_ints(&[0, 0, -1]));
        assert_eq!(parse_poly("2^3 u", "u").unwrap(), Poly::from_ints(&[0, 8]));
    }

    #[test]
    fn quotients() {
        let v3 = parse_ratfunc("(1 + 3 w^2)/(3 + w^2)", "w").unwrap();
        assert_eq!(v3.eval(&rat(1)), Some(rat(1)));
        let x = parse_ratfunc("-(-1 + v)^4 (-5 + 8 v) (-5 + 18 v)/(4 (-2 + 3 v)^2)", "v").unwrap();
        assert_eq!(x.eval(&rat(2)), Some(frac(-341, 64)));
        assert_eq!(parse_ratfunc("u^(-2)", "u").unwrap().eval(&rat(2)), Some(frac(1, 4)));
    }

    #[test]
    fn bound_names() {
        let v3 = parse_ratfunc("(1 + 3 w^2)/(3 + w^2)", "w").unwrap();
        let x = parse_ratfunc_with("4 v^4", "w", &[("v", v3.clone())]).unwrap();
        assert_eq!(x, v3.pow(4).scale(&rat(4)));
        assert!(parse_ratfunc_with("4 a", "w", &[("v", v3)]).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_ratfunc("1 + x", "u").is_err());
        assert!(parse_ratfunc("(1 + u", "u").is_err());
        assert!(parse_ratfunc("1/0", "u").is_err());
        assert!(parse_poly("1/u", "u").is_err());
    }
}
