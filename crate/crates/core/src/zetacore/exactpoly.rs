//! Dense univariate polynomials with arbitrary-precision rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q_int(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

/// Polynomial over the rationals, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<Q>,
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('x'))
    }
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| q_int(v)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|v| Q::from_integer(v.clone())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::from_ints(&[1])
    }
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }
    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Integer coefficients, or `None` if some coefficient is not integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Integer view that names the first non-integral index.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::NotACurve(format!("coefficient {i} = {c} is not an integer")));
            }
        }
        Ok(self.to_integers().unwrap())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lead = d.lead();
        let mut r = self.coeffs.clone();
        let mut qt = vec![Q::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let m = &r[i] / &lead;
            for j in 0..=dd {
                let t = &m * &d.coeffs[j];
                r[i - dd + j] -= t;
            }
            qt[i - dd] = m;
        }
        r.truncate(dd);
        (Self::new(qt), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead();
        self.scale(&(Q::one() / l))
    }

    /// Scale by a positive rational so that coefficients are coprime integers.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(ints.into_iter().map(|c| Q::from_integer(c / &g)).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q_int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Q) -> i32 {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            let (n, d) = (x.numer(), x.denom());
            let mut acc = BigInt::zero();
            let mut dp = BigInt::one();
            for c in self.coeffs.iter().rev() {
                acc = acc * n + c.numer() * &dp;
                dp *= d;
            }
            return match acc.sign() {
                num_bigint::Sign::Plus => 1,
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
            };
        }
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Squarefree part `p / gcd(p, p')` (monic).
    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Enclosure of `{p(x) : lo <= x <= hi}` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &Q, hi: &Q) -> (Q, Q) {
        if self.is_zero() {
            return (Q::zero(), Q::zero());
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let d = lo.denom().lcm(hi.denom());
        let nl = lo.numer() * (&d / lo.denom());
        let nh = hi.numer() * (&d / hi.denom());
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        let mut dp = BigInt::one();
        for c in ints.iter().rev() {
            let cands = [&a * &nl, &a * &nh, &b * &nl, &b * &nh];
            let mn = cands.iter().min().unwrap();
            let mx = cands.iter().max().unwrap();
            let add = c * &dp;
            a = mn + &add;
            b = mx + &add;
            dp *= &d;
        }
        let den = l * (dp / &d);
        (Q::new(a, den.clone()), Q::new(b, den))
    }

    /// `x -> x + c`.
    pub fn shift(&self, c: &Q) -> Self {
        let lin = ExactPoly::new(vec![c.clone(), Q::one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(a.clone()));
        }
        acc
    }

    pub fn to_string_var(&self, var: char) -> String {
        format_terms(&self.coeffs, var)
    }

    pub fn parse(s: &str, var: char) -> Result<Self> {
        parse_int_poly(s, var).map(|v| Self::new(v.into_iter().map(Q::from_integer).collect()))
    }
}

/// Render `c_n*v^n+...+c_0`, highest degree first.
pub fn format_terms(coeffs: &[Q], var: char) -> String {
    let mut out = String::new();
    for i in (0..coeffs.len()).rev() {
        let c = &coeffs[i];
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_int_poly(coeffs: &[BigInt], var: char) -> String {
    let q: Vec<Q> = coeffs.iter().map(|c| Q::from_integer(c.clone())).collect();
    format_terms(&q, var)
}

/// Parse an integer polynomial such as `32*t^10+96*t^9-8*t+1`.
pub fn parse_int_poly(s: &str, var: char) -> Result<Vec<BigInt>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut out: Vec<BigInt> = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b.to_string()),
            None => (1, t.trim_start_matches('+').to_string()),
        };
        let bad = || Error::Parse(format!("bad term '{t}'"));
        let (coef, mono) = match body.find(var) {
            None => (body.as_str(), ""),
            Some(p) => {
                let c = body[..p].trim_end_matches('*');
                (c, &body[p..])
            }
        };
        let c: BigInt = if coef.is_empty() {
            BigInt::one()
        } else {
            coef.parse().map_err(|_| bad())?
        };
        let e: usize = if mono.is_empty() {
            0
        } else if mono.len() == 1 {
            1
        } else {
            mono[1..]
                .strip_prefix('^')
                .ok_or_else(bad)?
                .trim_matches(|c| c == '{' || c == '}')
                .parse()
                .map_err(|_| bad())?
        };
        if out.len() <= e {
            out.resize(e + 1, BigInt::zero());
        }
        out[e] += c * sign;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        let s = "32*t^10+96*t^9+160*t^8+192*t^7+184*t^6+144*t^5+92*t^4+48*t^3+20*t^2+6*t+1";
        let v = parse_int_poly(s, 't').unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(format_int_poly(&v, 't'), s);
        let h = ExactPoly::from_ints(&[0, -8, 0, 10, 6, 1]);
        assert_eq!(h.to_string_var('x'), "x^5+6*x^4+10*x^3-8*x");
        assert_eq!(ExactPoly::parse("x^5+6*x^4+10*x^3-8*x", 'x').unwrap(), h);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = ExactPoly::from_ints(&[1, 1]);
        let b = ExactPoly::from_ints(&[-2, 1]);
        let p = a.mul(&a).mul(&b);
        assert_eq!(p.squarefree_part(), a.mul(&b));
    }

    #[test]
    fn interval_enclosure_contains_values() {
        let p = ExactPoly::from_ints(&[3, -5, 0, 2]);
        let lo = Q::new(1.into(), 3.into());
        let hi = Q::new(1.into(), 2.into());
        let (a, b) = p.eval_interval(&lo, &hi);
        for x in [&lo, &hi] {
            let v = p.eval(x);
            assert!(a <= v && v <= b);
        }
    }
}
