//! Text I/O for polynomials over `F_q`.
//!
//! Coefficients in the prime field are decimal; other coefficients are
//! polynomials in the generator symbol `a`, parenthesized when they have more
//! than one term: `(a+1)*t^2+a`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::field::{Elem, FieldDesc};
use super::poly::FieldPoly;

pub(crate) fn coeff_string(field: &FieldDesc, c: Elem) -> String {
    let s = field.elem_to_string(c);
    if field.term_count(c) > 1 {
        format!("({s})")
    } else {
        s
    }
}

fn mono_string(vars: &[(char, u32)]) -> String {
    vars.iter()
        .filter(|(_, e)| *e > 0)
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

pub(crate) fn term_string(field: &FieldDesc, c: Elem, vars: &[(char, u32)]) -> String {
    let mono = mono_string(vars);
    if mono.is_empty() {
        coeff_string(field, c)
    } else if c == 1 {
        mono
    } else {
        format!("{}*{}", coeff_string(field, c), mono)
    }
}

pub fn format_poly(p: &FieldPoly, var: char) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let f = p.field();
    let mut parts = Vec::new();
    for i in (0..p.coeffs().len()).rev() {
        let c = p.coeff(i);
        if c != 0 {
            parts.push(term_string(f, c, &[(var, i as u32)]));
        }
    }
    parts.join("+")
}

/// Sparse multivariate polynomial as a map from exponent vectors to
/// coefficients.
pub type Terms = BTreeMap<Vec<u32>, Elem>;

struct Parser<'a> {
    s: Vec<char>,
    pos: usize,
    field: &'a FieldDesc,
    vars: &'a [char],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at position {} in '{}'",
            self.pos,
            self.s.iter().collect::<String>()
        ))
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected number"));
        }
        self.s[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut out = Terms::new();
        let mut sign_neg = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign_neg = true;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            for (e, c) in t {
                let c = if sign_neg { self.field.neg(c) } else { c };
                let slot = out.entry(e).or_insert(0);
                *slot = self.field.add(*slot, c);
            }
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign_neg = false;
                }
                Some('-') => {
                    self.pos += 1;
                    sign_neg = true;
                }
                _ => break,
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.unit();
        loop {
            let f = self.factor()?;
            acc = mul_terms(self.field, &acc, &f);
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c == '(' || c.is_ascii_alphabetic() => {}
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unit(&self) -> Terms {
        let mut t = Terms::new();
        t.insert(vec![0; self.vars.len()], 1);
        t
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let braced = self.peek() == Some('{');
            if braced {
                self.pos += 1;
            }
            let n = self.number()?;
            if braced {
                if self.peek() != Some('}') {
                    return Err(self.err("expected '}'"));
                }
                self.pos += 1;
            }
            u32::try_from(n).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn constant(&self, c: Elem) -> Terms {
        let mut t = Terms::new();
        if c != 0 {
            t.insert(vec![0; self.vars.len()], c);
        }
        t
    }

    fn factor(&mut self) -> Result<Terms> {
        let f = self.field;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(self.constant((n % f.p()) as Elem))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                let mut acc = self.unit();
                for _ in 0..e {
                    acc = mul_terms(f, &acc, &inner);
                }
                Ok(acc)
            }
            Some(c) if c == f.symbol() && !self.vars.contains(&c) => {
                if f.is_prime_field() {
                    return Err(self.err("generator symbol used over a prime field"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(self.constant(f.pow(f.p(), e as u64)))
            }
            Some(c) if self.vars.contains(&c) => {
                self.pos += 1;
                let e = self.exponent()?;
                let i = self.vars.iter().position(|&v| v == c).unwrap();
                let mut exps = vec![0; self.vars.len()];
                exps[i] = e;
                let mut t = Terms::new();
                t.insert(exps, 1);
                Ok(t)
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

pub(crate) fn mul_terms(f: &FieldDesc, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = f.add(*slot, f.mul(ca, cb));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Parse a sum of terms in the given variables.
pub fn parse_terms(field: &FieldDesc, s: &str, vars: &[char]) -> Result<Terms> {
    let cleaned: Vec<char> = s
        .replace("\\,", "")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if cleaned == ['0'] {
        return Ok(Terms::new());
    }
    let mut p = Parser {
        s: cleaned,
        pos: 0,
        field,
        vars,
    };
    let t = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

pub fn parse_poly(field: &FieldDesc, s: &str, var: char) -> Result<FieldPoly> {
    let terms = parse_terms(field, s, &[var])?;
    let deg = terms.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let mut v = vec![0; deg + 1];
    for (k, c) in terms {
        v[k[0] as usize] = c;
    }
    Ok(FieldPoly::new(field, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::make_field;

    #[test]
    fn round_trip_prime() {
        let f = make_field(2, 1).unwrap();
        let p = parse_poly(&f, "t^4+t+1", 't').unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 0, 0, 1]);
        assert_eq!(format_poly(&p, 't'), "t^4+t+1");
    }

    #[test]
    fn round_trip_extension() {
        let f = make_field(2, 2).unwrap();
        let p = parse_poly(&f, "(a+1)*t^2+a", 't').unwrap();
        assert_eq!(format_poly(&p, 't'), "(a+1)*t^2+a");
        let q = parse_poly(&f, "a*t^3+(a+1)", 't').unwrap();
        assert_eq!(format_poly(&q, 't'), "a*t^3+(a+1)");
    }

    #[test]
    fn odd_characteristic_minus() {
        let f = make_field(3, 1).unwrap();
        let p = parse_poly(&f, "x^3-x+2", 'x').unwrap();
        assert_eq!(format_poly(&p, 'x'), "x^3+2*x+2");
    }

    #[test]
    fn rejects_garbage() {
        let f = make_field(2, 1).unwrap();
        assert!(parse_poly(&f, "t^^2", 't').is_err());
        assert!(parse_poly(&f, "a*t", 't').is_err());
        assert!(parse_poly(&f, "", 't').is_err());
    }
}
