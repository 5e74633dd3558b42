//! Finite fields `F_{p^k}` with elements packed as base-`p` digit integers.
//!
//! An element `c_0 + c_1 a + ... + c_{k-1} a^{k-1}` is stored as the `u64`
//! value `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Fields of size up to `2^20`
//! carry exp/log tables; larger fields multiply through the modulus.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};

use super::poly::FieldPoly;

pub type Elem = u64;

const TABLE_LIMIT: u64 = 1 << 20;
pub const FIELD_LIMIT: u64 = 1 << 40;

/// Standard (Conway) polynomials for the non-prime fields of size at most 64,
/// coefficients from the constant term upwards.
const CONWAY: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

pub(crate) fn conway_entry(p: u64, k: u32) -> Option<&'static [u64]> {
    CONWAY
        .iter()
        .find(|&&(pp, kk, _)| pp == p && kk == k)
        .map(|&(_, _, c)| c)
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    symbol: char,
    gen: Elem,
    tables: Option<Tables>,
}

/// Description of `F_q`, `q = p^k`. Cloning is cheap.
#[derive(Clone)]
pub struct FieldDesc(Arc<Inner>);

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

/// Build `F_{p^k}` using the shipped table when possible, else the
/// lexicographically least primitive irreducible polynomial.
pub fn make_field(p: u64, k: u32) -> Result<FieldDesc> {
    if !arith::is_prime(p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    if k == 0 || k > 16 {
        return Err(Error::Validation(format!("extension degree {k} outside 1..=16")));
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= FIELD_LIMIT)
        .ok_or_else(|| Error::Validation(format!("field {p}^{k} exceeds 2^40")))?;
    if k == 1 {
        return Ok(FieldDesc::build(p, 1, vec![0, 1]));
    }
    let prime = FieldDesc::prime(p)?;
    if let Some(c) = conway_entry(p, k) {
        let f = FieldPoly::new(&prime, c.to_vec());
        if !f.is_irreducible() || !is_primitive_modulus(&f, q) {
            return Err(Error::Internal(format!("table modulus for {p}^{k} failed verification")));
        }
        return Ok(FieldDesc::build(p, k, c.to_vec()));
    }
    let mut low = vec![0u64; k as usize];
    loop {
        let mut c = low.clone();
        c.push(1);
        if c[0] != 0 {
            let f = FieldPoly::new(&prime, c.clone());
            if f.is_irreducible() && is_primitive_modulus(&f, q) {
                return Ok(FieldDesc::build(p, k, c));
            }
        }
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            if i == low.len() {
                return Err(Error::Internal("no primitive polynomial found".into()));
            }
        }
    }
}

fn is_primitive_modulus(f: &FieldPoly, q: u64) -> bool {
    let x = FieldPoly::x(f.field());
    let one = FieldPoly::one(f.field());
    arith::factorize(q - 1)
        .into_iter()
        .all(|(r, _)| x.powmod(((q - 1) / r) as u128, f) != one)
}

impl FieldDesc {
    pub fn prime(p: u64) -> Result<FieldDesc> {
        make_field(p, 1)
    }

    /// `F_p[a]/(modulus)` for an arbitrary irreducible `modulus` over `F_p`.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<FieldDesc> {
        let prime = FieldDesc::prime(p)?;
        let f = FieldPoly::new(&prime, modulus);
        let k = f.degree().unwrap_or(0) as u32;
        if k == 0 {
            return Err(Error::Validation("modulus must have positive degree".into()));
        }
        if k == 1 {
            return Ok(prime);
        }
        if p.checked_pow(k).is_none_or(|q| q > FIELD_LIMIT) {
            return Err(Error::Validation("residue field exceeds 2^40".into()));
        }
        if !f.is_irreducible() {
            return Err(Error::Validation("modulus is reducible".into()));
        }
        let f = f.monic();
        Ok(FieldDesc::build(p, k, f.coeffs().to_vec()))
    }

    fn build(p: u64, k: u32, modulus: Vec<u64>) -> FieldDesc {
        let q = p.pow(k);
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            symbol: 'a',
            gen: 0,
            tables: None,
        };
        let tmp = FieldDesc(Arc::new(Inner {
            p,
            k,
            q,
            modulus: inner.modulus.clone(),
            symbol: 'a',
            gen: 0,
            tables: None,
        }));
        let gen = tmp.find_primitive();
        inner.gen = gen;
        if q <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x: Elem = 1;
            for i in 0..n {
                exp[i] = x as u32;
                exp[i + n] = x as u32;
                log[x as usize] = i as u32;
                x = tmp.mul_slow(x, gen);
            }
            inner.tables = Some(Tables { exp, log });
        }
        FieldDesc(Arc::new(inner))
    }

    fn find_primitive(&self) -> Elem {
        let q = self.q();
        if q == 2 {
            return 1;
        }
        let fac = arith::factorize(q - 1);
        let start = if self.k() > 1 { self.p() } else { 2 };
        let mut cand = start;
        loop {
            if cand >= q {
                cand = 2;
            }
            if fac.iter().all(|&(r, _)| self.pow_slow(cand, (q - 1) / r) != 1) {
                return cand;
            }
            cand += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn symbol(&self) -> char {
        self.0.symbol
    }
    /// Monic modulus over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    /// A fixed primitive element.
    pub fn generator(&self) -> Elem {
        self.0.gen
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    pub fn digits(&self, mut a: Elem) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> Elem {
        let p = self.0.p;
        d.iter().rev().fold(0, |acc, &c| acc * p + c % p)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.0.k {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.0.k {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let i = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[i] as Elem;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            return ((a as u128 * b as u128) % p as u128) as Elem;
        }
        let k = self.0.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.0.modulus;
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                prod[i - k + j] = (prod[i - k + j] + (p - m[j]) * c) % p;
            }
            prod[i] = 0;
        }
        self.from_digits(&prod[..k])
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.q - 1;
            let l = (t.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return t.exp[l] as Elem;
        }
        let mut base = a;
        let mut acc = 1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        if let Some(t) = &self.0.tables {
            let n = (self.0.q - 1) as usize;
            let l = t.log[a as usize] as usize;
            return t.exp[(n - l) % n] as Elem;
        }
        self.pow(a, self.0.q - 2)
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p)
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: Elem) -> u64 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.k {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// Quadratic character for odd `q`: 1, -1 or 0.
    pub fn legendre(&self, a: Elem) -> i32 {
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.0.q - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: Elem) -> bool {
        if self.0.p == 2 {
            return true;
        }
        self.legendre(a) >= 0
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> u64 {
        assert!(a != 0);
        let mut n = self.0.q - 1;
        for (r, e) in arith::factorize(n) {
            for _ in 0..e {
                if self.pow(a, n / r) == 1 {
                    n /= r;
                } else {
                    break;
                }
            }
        }
        n
    }

    /// The element of `F_p` inside this field, if `a` lies in the prime field.
    pub fn as_prime(&self, a: Elem) -> Option<u64> {
        (a < self.0.p).then_some(a)
    }

    pub fn elem_to_string(&self, a: Elem) -> String {
        if a < self.0.p {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut parts = Vec::new();
        for i in (0..d.len()).rev() {
            let c = d[i];
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.0.symbol.to_string(),
                _ => format!("{}^{}", self.0.symbol, i),
            };
            parts.push(if i == 0 {
                c.to_string()
            } else if c == 1 {
                mono
            } else {
                format!("{c}*{mono}")
            });
        }
        parts.join("+")
    }

    /// Number of `+`-separated terms in the printed form.
    pub(crate) fn term_count(&self, a: Elem) -> usize {
        if a < self.0.p {
            return 1;
        }
        self.digits(a).iter().filter(|&&c| c != 0).count()
    }

    /// A field embedding from `sub` (same characteristic, `sub.k | self.k`).
    pub fn embedding_from(&self, sub: &FieldDesc) -> Result<Embedding> {
        if sub.p() != self.p() || !self.k().is_multiple_of(sub.k()) {
            return Err(Error::Validation(format!(
                "{:?} does not embed in {:?}",
                sub, self
            )));
        }
        if sub.k() == 1 {
            return Ok(Embedding {
                table: (0..sub.q()).collect(),
            });
        }
        let m = sub.modulus();
        let eval = |x: Elem| {
            m.iter()
                .rev()
                .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
        };
        let step = (self.q() - 1) / (sub.q() - 1);
        let conway_root = self.pow(self.generator(), step);
        let root = if eval(conway_root) == 0 {
            conway_root
        } else {
            (1..self.q())
                .find(|&x| eval(x) == 0)
                .ok_or_else(|| Error::Internal("subfield modulus has no root".into()))?
        };
        let table = (0..sub.q())
            .map(|a| {
                sub.digits(a)
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| self.add(self.mul(acc, root), c))
            })
            .collect();
        Ok(Embedding { table })
    }
}

/// Precomputed image table of a subfield inside a larger field.
#[derive(Clone, Debug)]
pub struct Embedding {
    table: Vec<Elem>,
}

impl Embedding {
    pub fn map(&self, a: Elem) -> Elem {
        self.table[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_modulus() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.q(), 4);
    }

    #[test]
    fn table_moduli_verify() {
        for &(p, k, _) in CONWAY {
            let f = make_field(p, k).unwrap();
            assert_eq!(f.order(f.p()), f.q() - 1, "{p}^{k}");
        }
    }

    #[test]
    fn searched_field() {
        let f = make_field(5, 3).unwrap();
        assert_eq!(f.q(), 125);
        assert_eq!(f.order(f.generator()), 124);
        let g = make_field(2, 16).unwrap();
        let a = 12345;
        assert_eq!(g.mul(g.inv(a), a), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(make_field(4, 1).is_err());
        assert!(make_field(2, 41).is_err());
        assert!(make_field(3, 0).is_err());
    }

    #[test]
    fn embedding_is_homomorphism() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = f16.embedding_from(&f4).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.map(f4.mul(a, b)), f16.mul(e.map(a), e.map(b)));
                assert_eq!(e.map(f4.add(a, b)), f16.add(e.map(a), e.map(b)));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = make_field(3, 14).unwrap();
        let a = 1234567;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.pow(a, f.q() - 1), 1);
    }
}
