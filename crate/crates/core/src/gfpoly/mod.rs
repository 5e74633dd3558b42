//! Finite fields, polynomials and rational functions over `F_q`, irreducible
//! enumeration, distinct-degree factorization and valuations at places of
//! `F_q(t)`.

mod field;
mod poly;
mod ratfunc;
pub mod text;

pub use field::{make_field, Elem, Embedding, FieldDesc, FIELD_LIMIT};
pub use poly::FieldPoly;
pub use ratfunc::{poly_inverse_mod, RatFunc};
pub use text::{format_poly, parse_poly, parse_terms, Terms};

use std::collections::BTreeMap;
use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// A place of `F_q(t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    Finite(FieldPoly),
    Infinity,
}

impl Place {
    pub fn finite(pi: FieldPoly) -> Result<Self> {
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(Error::Validation(format!("{pi} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "1/t"),
        }
    }
}

/// Valuation of a rational function; the zero function has valuation `+∞`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(i64),
    PlusInfinity,
}

impl Valuation {
    pub fn value(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::PlusInfinity => None,
        }
    }
    pub fn at_least(self, n: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= n,
            Valuation::PlusInfinity => true,
        }
    }
}

pub fn ord_at(f: &RatFunc, v: &Place) -> Valuation {
    if f.is_zero() {
        return Valuation::PlusInfinity;
    }
    match v {
        Place::Finite(pi) => {
            Valuation::Finite(f.num().valuation(pi) as i64 - f.den().valuation(pi) as i64)
        }
        Place::Infinity => Valuation::Finite(f.den().deg() - f.num().deg()),
    }
}

pub const IRREDUCIBLE_LIMIT: u64 = 1 << 24;

/// Number of monic irreducibles of degree `d` over `F_q`.
pub fn irreducible_count(q: u64, d: u32) -> u128 {
    let mut s: i128 = 0;
    for e in arith::divisors(d as u64) {
        s += arith::mobius(e) as i128 * (q as i128).pow(d / e as u32);
    }
    (s / d as i128) as u128
}

/// All monic irreducible polynomials of degree `d`, sorted.
pub fn irreducibles(field: &FieldDesc, d: usize) -> Result<Vec<FieldPoly>> {
    if d == 0 {
        return Err(Error::Validation("degree must be at least 1".into()));
    }
    let q = field.q();
    let total = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > IRREDUCIBLE_LIMIT as u128 {
        return Err(Error::SizeLimit(format!("q^d = {q}^{d} exceeds 2^24")));
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut p = FieldPoly::from_code(field, code, d);
        let mut c = p.coeffs().to_vec();
        c.resize(d, 0);
        c.push(1);
        p = FieldPoly::new(field, c);
        if d > 1 && p.coeff(0) == 0 {
            continue;
        }
        if p.is_irreducible() {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// All monic polynomials of degree exactly `d`.
pub fn monics(field: &FieldDesc, d: usize) -> impl Iterator<Item = FieldPoly> + '_ {
    let total = (field.q() as u128).pow(d as u32);
    (0..total).map(move |code| {
        let p = FieldPoly::from_code(field, code, d);
        let mut c = p.coeffs().to_vec();
        c.resize(d, 0);
        c.push(1);
        FieldPoly::new(field, c)
    })
}

/// Monic irreducible factorization with multiplicities, sorted by factor.
pub fn factor(f: &FieldPoly) -> Result<Vec<(FieldPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::Validation("zero polynomial".into()));
    }
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg() >= 2 * d as i64 {
        for pi in irreducibles(f.field(), d)? {
            let mut e = 0;
            while let Some(r) = rest.div_exact(&pi) {
                rest = r;
                e += 1;
            }
            if e > 0 {
                out.push((pi, e));
            }
        }
        d += 1;
    }
    if rest.deg() > 0 {
        match out.iter_mut().find(|(p, _)| *p == rest) {
            Some(slot) => slot.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort();
    Ok(out)
}

/// All monic divisors of `prod pi^e`, given the factorization.
pub fn monic_divisors(factors: &[(FieldPoly, u32)]) -> Vec<FieldPoly> {
    let Some((first, _)) = factors.first() else {
        return vec![];
    };
    let mut out = vec![FieldPoly::one(first.field())];
    for (pi, e) in factors {
        let mut next = Vec::new();
        for d in &out {
            let mut cur = d.clone();
            for _ in 0..=*e {
                next.push(cur.clone());
                cur = cur.mul(pi);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Distinct-degree factorization profile `{degree: count}` of a squarefree polynomial.
pub fn ddf_degrees(f: &FieldPoly) -> Result<BTreeMap<usize, usize>> {
    ddf_degrees_upto(f, usize::MAX)
}

/// Same as [`ddf_degrees`] but stops after factors of degree `kmax`; the
/// remaining cofactor (if any) is reported under key `0`.
pub fn ddf_degrees_upto(f: &FieldPoly, kmax: usize) -> Result<BTreeMap<usize, usize>> {
    if f.is_zero() {
        return Err(Error::Validation("zero polynomial".into()));
    }
    let mut out = BTreeMap::new();
    let mut rest = f.monic();
    let x = FieldPoly::x(f.field());
    let q = f.field().q() as u128;
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.deg() >= 2 * d as i64 && d <= kmax {
        h = h.powmod(q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            let gd = g.degree().unwrap();
            out.insert(d, gd / d);
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
        }
        d += 1;
    }
    if let Some(r) = rest.degree().filter(|&r| r > 0) {
        if r <= kmax {
            *out.entry(r).or_insert(0) += 1;
        } else {
            out.insert(0, r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldDesc {
        make_field(2, 1).unwrap()
    }

    #[test]
    fn factor_small() {
        let f = f2();
        let m = parse_poly(&f, "(t^6+t+1)^2*t*(t+1)^3", 't').unwrap();
        let fs = factor(&m).unwrap();
        let shown: Vec<(String, u32)> = fs.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        assert_eq!(shown, vec![("t".into(), 1), ("t+1".into(), 3), ("t^6+t+1".into(), 2)]);
        assert_eq!(monic_divisors(&fs).len(), 2 * 4 * 3);
    }

    #[test]
    fn irreducibles_f2() {
        let f = f2();
        let l1 = irreducibles(&f, 1).unwrap();
        assert_eq!(
            l1.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            vec!["t", "t+1"]
        );
        let l4 = irreducibles(&f, 4).unwrap();
        assert_eq!(l4.len(), 3);
        assert!(l4.iter().any(|p| p.to_string() == "t^4+t+1"));
        let l6 = irreducibles(&f, 6).unwrap();
        assert_eq!(l6.len(), 9);
        assert!(l6.iter().any(|p| p.to_string() == "t^6+t+1"));
    }

    #[test]
    fn ddf_examples() {
        let f = f2();
        let p = text::parse_poly(&f, "x^2+x", 'x').unwrap();
        assert_eq!(ddf_degrees(&p).unwrap(), BTreeMap::from([(1, 2)]));
        let p = text::parse_poly(&f, "x^2+x+1", 'x').unwrap();
        assert_eq!(ddf_degrees(&p).unwrap(), BTreeMap::from([(2, 1)]));
        let p = text::parse_poly(&f, "x^7+x^3+x+1", 'x').unwrap();
        let sq = p.gcd(&p.derivative());
        let core = p.div_exact(&sq).unwrap();
        assert!(ddf_degrees(&core).unwrap().contains_key(&2));
        let c = text::parse_poly(&f, "x^2+x+1", 'x').unwrap();
        assert!(c.divides(&p));
    }

    #[test]
    fn valuations() {
        let f = f2();
        let u = RatFunc::parse(&f, "t(t+1)^2/(t^3+t+1)", 't').unwrap();
        let t = Place::finite(text::parse_poly(&f, "t", 't').unwrap()).unwrap();
        assert_eq!(ord_at(&u, &t), Valuation::Finite(1));
        assert_eq!(ord_at(&u, &Place::Infinity), Valuation::Finite(0));
        assert_eq!(ord_at(&RatFunc::one(&f), &t), Valuation::Finite(0));
        assert_eq!(ord_at(&RatFunc::zero(&f), &t), Valuation::PlusInfinity);
    }

    #[test]
    fn ratfunc_round_trip() {
        let f = f2();
        let u = RatFunc::parse(&f, "t(t^2+t+1)/(t^3+t+1)", 't').unwrap();
        let s = u.to_string();
        assert_eq!(s, "(t^3+t^2+t)/(t^3+t+1)");
        assert_eq!(RatFunc::parse(&f, &s, 't').unwrap(), u);
    }
}
