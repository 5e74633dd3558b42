use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{Code, ModulusGroup};
use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly::{monic_divisors, monics, FieldPoly};
use crate::zetacore::ZetaData;

/// Largest degree of `P_H` assembled by [`zeta_numerator`].
pub const ZETA_DEGREE_LIMIT: usize = 20_000;

/// `Phi_n` with integer coefficients, constant term first.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in arith::divisors(n) {
        let mut f = vec![BigInt::zero(); d as usize + 1];
        f[0] = -BigInt::one();
        f[d as usize] = BigInt::one();
        match arith::mobius(n / d) {
            1 => num = int_mul(&num, &f),
            -1 => den = int_mul(&den, &f),
            _ => {}
        }
    }
    int_div_exact(&num, &den).expect("cyclotomic division is exact")
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a polynomial with leading coefficient `+-1`.
pub(crate) fn int_div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    let lead = &d[dd];
    let mut r = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    if r.len() <= dd {
        return r.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let mut quo = vec![BigInt::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i - dd + j] -= &c * dj;
        }
        quo[i - dd] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(quo)
}

/// `Z[zeta_o]` as integer vectors modulo `Phi_o`.
#[derive(Clone, Debug)]
pub struct CycloRing {
    o: u64,
    phi: Vec<BigInt>,
}

/// An element of `Z[zeta_o]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterValue {
    pub o: u64,
    pub coeffs: Vec<BigInt>,
}

impl CycloRing {
    pub fn new(o: u64) -> Self {
        CycloRing { o, phi: cyclotomic(o) }
    }

    pub fn dim(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.dim();
        for i in (d..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = v[i].clone();
            for (j, pj) in self.phi.iter().enumerate() {
                v[i - d + j] -= &c * pj;
            }
        }
        v.resize(d, BigInt::zero());
        v
    }

    /// `sum_k counts[k] zeta^k`.
    pub fn from_counts(&self, counts: &[i64]) -> CharacterValue {
        let v: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        CharacterValue {
            o: self.o,
            coeffs: self.reduce(v),
        }
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce(int_mul(a, b))
    }
}

impl CharacterValue {
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = crate::zetacore::format_int_poly(&self.coeffs, 'z');
        write!(out, "{s}")
    }
}

/// A character of `G`, `chi(b_j) = zeta_{n_j}^{c_j}` on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub c: Vec<u64>,
}

/// Cached logarithms and lifts for evaluating characters of one group.
pub struct CharacterTable<'a> {
    g: &'a ModulusGroup,
    n: Vec<u64>,
    exp: u64,
    logs: HashMap<Code, Vec<u64>>,
    divisors: Vec<FieldPoly>,
    kernels: Vec<Vec<Vec<u64>>>,
    lifts: Vec<HashMap<Code, Code>>,
}

impl<'a> CharacterTable<'a> {
    pub fn new(g: &'a ModulusGroup) -> Result<Self> {
        let n = g.invariants();
        let exp = g.exponent();
        let mut logs = HashMap::new();
        let units: Vec<FieldPoly> = g.units().collect();
        for u in &units {
            logs.insert(g.code(u), g.dlog(u)?);
        }
        let m = g.modulus();
        let divisors = monic_divisors(g.factors());
        let mut kernels = Vec::new();
        let mut lifts = Vec::new();
        for d in &divisors {
            let mut ker = Vec::new();
            let mut lift: HashMap<Code, Code> = HashMap::new();
            for u in &units {
                let r = u.rem(d);
                if r.is_one() || d.is_one() {
                    ker.push(logs[&g.code(u)].clone());
                }
                lift.entry(r.code() as Code).or_insert(g.code(u));
            }
            kernels.push(ker);
            lifts.push(lift);
            let _ = m;
        }
        Ok(CharacterTable {
            g,
            n,
            exp,
            logs,
            divisors,
            kernels,
            lifts,
        })
    }

    pub fn group(&self) -> &ModulusGroup {
        self.g
    }

    /// Exponent `e` with `chi(x) = zeta_N^e`, `N` the group exponent.
    fn exponent_of(&self, chi: &Character, log: &[u64]) -> u64 {
        let mut e: u128 = 0;
        for ((c, l), n) in chi.c.iter().zip(log).zip(&self.n) {
            e += (*c as u128) * (*l as u128) * (self.exp / n) as u128;
        }
        (e % self.exp as u128) as u64
    }

    pub fn order(&self, chi: &Character) -> u64 {
        chi.c
            .iter()
            .zip(&self.n)
            .fold(1, |acc, (c, n)| arith::lcm_u64(acc, n / arith::gcd_u64(*c, *n)))
    }

    /// All nontrivial characters trivial on `H`.
    pub fn characters_trivial_on_h(&self) -> Result<Vec<Character>> {
        let h_logs: Vec<Vec<u64>> = self
            .g
            .h_generators()
            .iter()
            .map(|h| self.g.dlog(h))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        let total: u64 = self.n.iter().product();
        for idx in 1..total {
            let mut c = Vec::with_capacity(self.n.len());
            let mut r = idx;
            for n in &self.n {
                c.push(r % n);
                r /= n;
            }
            let chi = Character { c };
            if h_logs.iter().all(|l| self.exponent_of(&chi, l) == 0) {
                out.push(chi);
            }
        }
        Ok(out)
    }

    /// `chi(x)` as a power `k` of `zeta_o`, `o` the order of `chi`; `None` off the units.
    pub fn value(&self, chi: &Character, x: &FieldPoly) -> Option<u64> {
        let log = self.logs.get(&self.g.code(x))?;
        let o = self.order(chi);
        Some(self.exponent_of(chi, log) / (self.exp / o))
    }

    pub fn is_even(&self, chi: &Character) -> bool {
        let f = self.g.field();
        let c = FieldPoly::constant(f, f.generator());
        self.value(chi, &c) == Some(0)
    }

    /// Index into the divisor list of the conductor of `chi`.
    fn conductor_index(&self, chi: &Character) -> usize {
        let mut best = self.divisors.len() - 1;
        for (i, d) in self.divisors.iter().enumerate() {
            if d.deg() < self.divisors[best].deg()
                && self.kernels[i].iter().all(|l| self.exponent_of(chi, l) == 0)
            {
                best = i;
            }
        }
        best
    }

    pub fn conductor(&self, chi: &Character) -> FieldPoly {
        self.divisors[self.conductor_index(chi)].clone()
    }

    /// `counts[n][k] = #{f monic, deg f = n : chi(f) = zeta_o^k}` for `n < deg D`,
    /// with `D = M` (imprimitive) or the conductor (primitive).
    fn sums(&self, chi: &Character, primitive: bool) -> (FieldPoly, Vec<Vec<i64>>) {
        let o = self.order(chi) as usize;
        let di = if primitive {
            self.conductor_index(chi)
        } else {
            self.divisors.len() - 1
        };
        let d = self.divisors[di].clone();
        let f = self.g.field();
        let mut out = Vec::new();
        for n in 0..d.deg().max(0) as usize {
            let mut counts = vec![0i64; o];
            for p in monics(f, n) {
                let r = p.rem(&d);
                let Some(&u) = self.lifts[di].get(&(r.code() as Code)) else {
                    continue;
                };
                if !r.gcd(&d).is_one() {
                    continue;
                }
                let k = self.value(chi, &self.g.decode(u)).unwrap();
                counts[k as usize] += 1;
            }
            out.push(counts);
        }
        (d, out)
    }
}

/// `L(chi, u) = sum_{n < deg M} A(n, chi) u^n`, with `chi(f) = 0` when `gcd(f, M) != 1`.
pub fn char_l_poly(table: &CharacterTable, chi: &Character) -> Result<Vec<CharacterValue>> {
    if chi.c.iter().all(|&c| c == 0) {
        return Err(Error::Validation("trivial character".into()));
    }
    let ring = CycloRing::new(table.order(chi));
    let (_, sums) = table.sums(chi, false);
    Ok(sums.iter().map(|c| ring.from_counts(c)).collect())
}

/// The same sum over the conductor of `chi`.
pub fn primitive_l_poly(table: &CharacterTable, chi: &Character) -> Result<(FieldPoly, Vec<CharacterValue>)> {
    if chi.c.iter().all(|&c| c == 0) {
        return Err(Error::Validation("trivial character".into()));
    }
    let ring = CycloRing::new(table.order(chi));
    let (d, sums) = table.sums(chi, true);
    Ok((d, sums.iter().map(|c| ring.from_counts(c)).collect()))
}

/// Product of `L(chi^a, u)` over `a in (Z/o)^*`, as integers.
fn orbit_product(ring: &CycloRing, sums: &[Vec<i64>], o: u64) -> Result<Vec<BigInt>> {
    let mut acc: Vec<Vec<BigInt>> = vec![ring.from_counts(&[1]).coeffs];
    for a in 1..o {
        if arith::gcd_u64(a, o) != 1 {
            continue;
        }
        let conj: Vec<Vec<BigInt>> = sums
            .iter()
            .map(|c| {
                let mut p = vec![0i64; o as usize];
                for (k, v) in c.iter().enumerate() {
                    p[((k as u64 * a) % o) as usize] += v;
                }
                ring.from_counts(&p).coeffs
            })
            .collect();
        let mut next = vec![vec![BigInt::zero(); ring.dim()]; acc.len() + conj.len() - 1];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in conj.iter().enumerate() {
                let prod = ring.mul(x, y);
                for (s, t) in next[i + j].iter_mut().zip(prod) {
                    *s += t;
                }
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|v| {
            CharacterValue { o, coeffs: v }
                .as_integer()
                .ok_or_else(|| Error::Internal("orbit product is not integral".into()))
        })
        .collect()
}

/// `P_H(u)`: the product over nontrivial characters trivial on `H` of the
/// complete `L`-functions of the primitive characters.
pub fn zeta_numerator(g: &ModulusGroup) -> Result<ZetaData> {
    let table = CharacterTable::new(g)?;
    let chars = table.characters_trivial_on_h()?;
    let mut seen: HashSet<Character> = HashSet::new();
    let mut p = vec![BigInt::one()];
    for chi in &chars {
        if seen.contains(chi) {
            continue;
        }
        let o = table.order(chi);
        let mut size = 0u64;
        for a in 1..o {
            if arith::gcd_u64(a, o) == 1 {
                let c = chi.c.iter().zip(&table.n).map(|(c, n)| (c * a) % n).collect();
                seen.insert(Character { c });
                size += 1;
            }
        }
        let (d, sums) = table.sums(chi, true);
        let deg_bound = p.len() + size as usize * d.deg() as usize;
        if deg_bound > ZETA_DEGREE_LIMIT {
            return Err(Error::SizeLimit(format!("P_H degree exceeds {ZETA_DEGREE_LIMIT}")));
        }
        let ring = CycloRing::new(o);
        let mut orbit = orbit_product(&ring, &sums, o)?;
        if table.is_even(chi) {
            let mut lin = vec![BigInt::one()];
            for _ in 0..size {
                lin = int_mul(&lin, &[BigInt::one(), -BigInt::one()]);
            }
            orbit = int_div_exact(&orbit, &lin)
                .ok_or_else(|| Error::Internal("(1-u) does not divide an even L-function".into()))?;
        }
        p = int_mul(&p, &orbit);
    }
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let deg = p.len() - 1;
    if deg % 2 == 1 {
        return Err(Error::Internal(format!("P_H has odd degree {deg}")));
    }
    ZetaData::new(g.field().q(), deg / 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zetacore::to_big;

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), to_big(&[-1, 1]));
        assert_eq!(cyclotomic(6), to_big(&[1, -1, 1]));
        assert_eq!(cyclotomic(15), to_big(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
    }
}
