use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gfpoly::{factor, monic_divisors, parse_terms, Elem, FieldDesc, FieldPoly, RatFunc};

/// `sum c_i tau^i` over `F_q(t)`, with `tau c = c^q tau`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    field: FieldDesc,
    coeffs: Vec<RatFunc>,
}

/// `c^(q^i)`; over `F_q` this is `t -> t^(q^i)`.
fn twist(c: &RatFunc, q: u64, i: usize) -> RatFunc {
    if i == 0 || c.is_zero() {
        return c.clone();
    }
    c.inflate(q.pow(i as u32) as usize)
}

impl LinearizedPoly {
    pub fn new(field: &FieldDesc, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinearizedPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldDesc) -> Self {
        Self::new(field, vec![])
    }

    pub fn scalar(field: &FieldDesc, c: RatFunc) -> Self {
        Self::new(field, vec![c])
    }

    /// `t x` plus `sum u_i x^(q^i)`.
    pub fn generator(field: &FieldDesc, u: &[RatFunc]) -> Self {
        let mut c = vec![RatFunc::from_poly(FieldPoly::x(field))];
        c.extend(u.iter().cloned());
        Self::new(field, c)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    /// Degree in `tau`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    /// Composition `self o other`.
    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero(&self.field);
        }
        let q = self.field.q();
        let mut out = vec![RatFunc::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(&twist(b, q, i)));
            }
        }
        Self::new(&self.field, out)
    }

    /// The action of `M` for the module sending `t` to `gen`.
    pub fn action(gen: &Self, m: &FieldPoly) -> Self {
        let f = &gen.field;
        let mut acc = Self::zero(f);
        for &c in m.coeffs().iter().rev() {
            acc = acc.mul(gen).add(&Self::scalar(f, RatFunc::constant(f, c)));
        }
        acc
    }

    pub fn to_xpoly(&self) -> XPoly {
        let q = self.field.q() as usize;
        let Some(d) = self.degree() else {
            return XPoly::zero(&self.field);
        };
        let mut c = vec![RatFunc::zero(&self.field); q.pow(d as u32) + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[q.pow(i as u32)] = a.clone();
        }
        XPoly::new(&self.field, c)
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.to_xpoly())
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

/// Polynomial in `x` over `F_q(t)`.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    field: FieldDesc,
    coeffs: Vec<RatFunc>,
}

impl XPoly {
    pub fn new(field: &FieldDesc, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldDesc) -> Self {
        Self::new(field, vec![])
    }

    pub fn x(field: &FieldDesc) -> Self {
        Self::new(field, vec![RatFunc::zero(field), RatFunc::one(field)])
    }

    /// Parse a polynomial in `x` with coefficients in `F_q[t]`.
    pub fn parse(field: &FieldDesc, s: &str) -> Result<Self> {
        let terms = parse_terms(field, s, &['x', 't'])?;
        let mut by_x: BTreeMap<usize, Vec<Elem>> = BTreeMap::new();
        for (e, c) in terms {
            let v = by_x.entry(e[0] as usize).or_default();
            let dt = e[1] as usize;
            if v.len() <= dt {
                v.resize(dt + 1, 0);
            }
            v[dt] = field.add(v[dt], c);
        }
        let deg = by_x.keys().max().copied().unwrap_or(0);
        let mut c = vec![RatFunc::zero(field); deg + 1];
        for (i, v) in by_x {
            c[i] = RatFunc::from_poly(FieldPoly::new(field, v));
        }
        Ok(Self::new(field, c))
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![RatFunc::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(&self.field, out)
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or_else(|| Error::Validation("division by zero".into()))?;
        let inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let mut quo = vec![RatFunc::zero(&self.field); n - dd];
        for i in (dd..n).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = r[i].mul(&inv);
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[i - dd + j] = r[i - dd + j].sub(&c.mul(dj));
                }
            }
            quo[i - dd] = c;
        }
        Ok((Self::new(&self.field, quo), Self::new(&self.field, r)))
    }

    /// True when every coefficient is a polynomial in `t`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_poly())
    }

    /// Coefficients reduced modulo an irreducible `pi` of `F_p[t]`, as a
    /// polynomial over the residue field `F_p[t]/pi`.
    pub fn reduce_mod(&self, pi: &FieldPoly) -> Result<Option<FieldPoly>> {
        let f = &self.field;
        if !f.is_prime_field() {
            return Err(Error::Precondition("reduction needs a prime base field".into()));
        }
        let mut modulus = pi.monic().coeffs().to_vec();
        modulus.resize(pi.coeffs().len(), 0);
        let res = FieldDesc::with_modulus(f.p(), modulus)?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let Some(r) = c.reduce_mod(pi) else {
                return Ok(None);
            };
            out.push(res.from_digits(r.coeffs()));
        }
        Ok(Some(FieldPoly::new(&res, out)))
    }

    /// Map coefficients through `F_q -> F_Q` on their `t`-coefficients.
    pub fn map_field(&self, big: &FieldDesc, emb: &crate::gfpoly::Embedding) -> Self {
        let lift = |p: &FieldPoly| p.lift(big, emb);
        let c = self
            .coeffs
            .iter()
            .map(|r| RatFunc::new(lift(r.num()), lift(r.den())).expect("nonzero denominator"))
            .collect();
        Self::new(big, c)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            let cs = c.to_string();
            let simple = c.is_poly() && c.num().coeffs().iter().filter(|&&v| v != 0).count() == 1;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(out, "{cs}")?;
            } else if c.is_poly() && c.num().is_one() {
                write!(out, "{mono}")?;
            } else if simple {
                write!(out, "{cs}*{mono}")?;
            } else {
                write!(out, "({cs})*{mono}")?;
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

/// `Phi_M = [M] / prod_{Q | M, Q != M} Phi_Q` for the action `act`, `Phi_1 = x`.
pub fn torsion_poly(m: &FieldPoly, act: impl Fn(&FieldPoly) -> LinearizedPoly) -> Result<XPoly> {
    if m.is_zero() || !m.is_monic() {
        return Err(Error::Validation("M must be monic and nonzero".into()));
    }
    let field = m.field();
    if m.is_one() {
        return Ok(XPoly::x(field));
    }
    let divs = monic_divisors(&factor(m)?);
    let mut done: Vec<(FieldPoly, XPoly)> = Vec::new();
    let mut order = divs.clone();
    order.sort_by_key(|d| d.deg());
    for d in order {
        let phi = if d.is_one() {
            XPoly::x(field)
        } else {
            let mut den = XPoly::new(field, vec![RatFunc::one(field)]);
            for (e, pe) in &done {
                if e.divides(&d) {
                    den = den.mul(pe);
                }
            }
            let (quo, rem) = act(&d).to_xpoly().divrem(&den)?;
            if !rem.is_zero() {
                return Err(Error::Internal(format!("torsion division for {d} left a remainder")));
            }
            quo
        };
        done.push((d, phi));
    }
    Ok(done.into_iter().find(|(d, _)| d == m).unwrap().1)
}
