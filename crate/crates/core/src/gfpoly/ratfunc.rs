use std::fmt;

use crate::error::{Error, Result};

use super::field::{Elem, FieldDesc};
use super::poly::FieldPoly;
use super::text;

/// Rational function `num/den` over `F_q` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FieldPoly,
    den: FieldPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('t'))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('t'))
    }
}

impl RatFunc {
    pub fn new(num: FieldPoly, den: FieldPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Validation("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: FieldPoly, den: FieldPoly) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if n.is_zero() {
            d = FieldPoly::one(d.field());
        }
        let l = d.lead();
        if l != 1 {
            let inv = d.field().inv(l);
            n = n.scale(inv);
            d = d.scale(inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: FieldPoly) -> Self {
        let one = FieldPoly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn constant(field: &FieldDesc, c: Elem) -> Self {
        Self::from_poly(FieldPoly::constant(field, c))
    }
    pub fn zero(field: &FieldDesc) -> Self {
        Self::from_poly(FieldPoly::zero(field))
    }
    pub fn one(field: &FieldDesc) -> Self {
        Self::from_poly(FieldPoly::one(field))
    }

    pub fn num(&self) -> &FieldPoly {
        &self.num
    }
    pub fn den(&self) -> &FieldPoly {
        &self.den
    }
    pub fn field(&self) -> &FieldDesc {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Apply `t -> t^n` to numerator and denominator.
    pub fn inflate(&self, n: usize) -> Self {
        Self::normalized(self.num.inflate(n), self.den.inflate(n))
    }

    pub fn to_string_var(&self, var: char) -> String {
        let n = self.num.to_string_var(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |p: &FieldPoly, s: String| {
            let terms = p.coeffs().iter().filter(|&&c| c != 0).count();
            if terms > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(&self.num, n),
            wrap(&self.den, self.den.to_string_var(var))
        )
    }

    pub fn parse(field: &FieldDesc, s: &str, var: char) -> Result<Self> {
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::Parse(format!("more than one '/' in '{s}'")));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        match split {
            None => Ok(Self::from_poly(text::parse_poly(field, s, var)?)),
            Some(i) => {
                let n = text::parse_poly(field, &s[..i], var)?;
                let d = text::parse_poly(field, &s[i + 1..], var)?;
                Self::new(n, d)
            }
        }
    }

    /// Reduce modulo an irreducible `pi` into the residue field, given as a
    /// polynomial of degree below `deg pi`; `None` if `pi` divides the denominator.
    pub fn reduce_mod(&self, pi: &FieldPoly) -> Option<FieldPoly> {
        let d = self.den.rem(pi);
        if d.is_zero() {
            return None;
        }
        let inv = poly_inverse_mod(&d, pi)?;
        Some(self.num.rem(pi).mulmod(&inv, pi))
    }
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn poly_inverse_mod(a: &FieldPoly, m: &FieldPoly) -> Option<FieldPoly> {
    let f = a.field();
    let (mut r0, mut r1) = (m.clone(), a.rem(m));
    let (mut s0, mut s1) = (FieldPoly::zero(f), FieldPoly::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    Some(s0.scale(f.inv(r0.lead())).rem(m))
}
