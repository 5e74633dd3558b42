//! Dense univariate polynomials over a finite field.

use std::fmt;

use crate::arith;

use super::field::{Elem, FieldDesc};

/// Polynomial over `F_q`, coefficients from the constant term upwards.
/// The coefficient vector never ends in a zero.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldPoly {
    field: FieldDesc,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('t'))
    }
}

impl FieldPoly {
    pub fn new(field: &FieldDesc, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldDesc) -> Self {
        Self::new(field, vec![])
    }
    pub fn one(field: &FieldDesc) -> Self {
        Self::new(field, vec![1])
    }
    pub fn constant(field: &FieldDesc, c: Elem) -> Self {
        Self::new(field, vec![c])
    }
    pub fn x(field: &FieldDesc) -> Self {
        Self::new(field, vec![0, 1])
    }
    pub fn monomial(field: &FieldDesc, c: Elem, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::new(field, v)
    }

    /// Integer coefficients reduced into the prime field.
    pub fn from_ints(field: &FieldDesc, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            f,
            (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            f,
            (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut qt = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let m = f.mul(c, inv);
            qt[i - dd] = m;
            for j in 0..=dd {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(m, d.coeffs[j]));
            }
        }
        r.truncate(dd);
        (Self::new(f, qt), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(&self.field, c));
        }
        acc
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// `x^(q^n) mod m` by repeated `q`-th powering.
    pub fn x_pow_q_pow(&self, n: u32) -> Self {
        let q = self.field.q() as u128;
        let mut r = Self::x(&self.field).rem(self);
        for _ in 0..n {
            r = r.powmod(q, self);
        }
        r
    }

    /// Irreducibility over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            Some(0) | None => return false,
            Some(1) => return true,
            Some(d) => d as u32,
        };
        let f = self.monic();
        let x = Self::x(&self.field);
        let q = self.field.q() as u128;
        let mut pows = vec![x.rem(&f)];
        for _ in 0..d {
            let last = pows.last().unwrap().clone();
            pows.push(last.powmod(q, &f));
        }
        if pows[d as usize] != x.rem(&f) {
            return false;
        }
        arith::factorize(d as u64).into_iter().all(|(l, _)| {
            let e = d as usize / l as usize;
            pows[e].sub(&x).gcd(&f).is_one()
        })
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// Roots in the coefficient field, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<Elem> {
        self.field.elements().filter(|&a| self.eval(a) == 0).collect()
    }

    /// Evaluate a polynomial with coefficients in a subfield at a point of
    /// a larger field through an embedding.
    pub fn eval_in(&self, big: &FieldDesc, emb: &super::field::Embedding, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| big.add(big.mul(acc, x), emb.map(c)))
    }

    /// Map coefficients into a larger field.
    pub fn lift(&self, big: &FieldDesc, emb: &super::field::Embedding) -> Self {
        Self::new(big, self.coeffs.iter().map(|&c| emb.map(c)).collect())
    }

    /// Substitute `t -> t^n`.
    pub fn inflate(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; (self.coeffs.len() - 1) * n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * n] = c;
        }
        Self::new(&self.field, v)
    }

    /// Apply the `p`-power Frobenius to each coefficient.
    pub fn map_coeffs(&self, g: impl Fn(Elem) -> Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// Integer code: coefficients as base-`q` digits, constant term lowest.
    pub fn code(&self) -> u128 {
        let q = self.field.q() as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * q + c as u128)
    }

    pub fn from_code(field: &FieldDesc, mut code: u128, len: usize) -> Self {
        let q = field.q() as u128;
        let v = (0..len)
            .map(|_| {
                let c = (code % q) as Elem;
                code /= q;
                c
            })
            .collect();
        Self::new(field, v)
    }

    pub fn to_string_var(&self, var: char) -> String {
        super::text::format_poly(self, var)
    }

    /// Multiplicity of the irreducible `pi` in `self` (nonzero).
    pub fn valuation(&self, pi: &Self) -> u32 {
        let mut v = 0;
        let mut a = self.clone();
        loop {
            let (q, r) = a.divrem(pi);
            if !r.is_zero() {
                return v;
            }
            a = q;
            v += 1;
        }
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('t'))
    }
}

impl PartialOrd for FieldPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl std::hash::Hash for FieldPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.coeffs.hash(state);
    }
}
