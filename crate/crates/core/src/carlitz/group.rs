use std::collections::{HashMap, HashSet};

use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly::{factor, FieldDesc, FieldPoly};

/// Largest group order handled with explicit tables.
pub const GROUP_ORDER_LIMIT: u64 = 1 << 22;

/// Residue code of a polynomial of degree below `n` (base `q` digits).
pub(crate) type Code = u64;

/// `(F_q[t]/M)^*` with a basis, discrete logarithms and a subgroup `H`.
#[derive(Clone, Debug)]
pub struct ModulusGroup {
    field: FieldDesc,
    m: FieldPoly,
    factors: Vec<(FieldPoly, u32)>,
    order: u64,
    /// Basis elements and their orders; `G = prod Z/n_j`.
    basis: Vec<(FieldPoly, u64)>,
    sylow: Vec<Sylow>,
    h_gens: Vec<FieldPoly>,
    h: HashSet<Code>,
}

#[derive(Clone, Debug)]
struct Sylow {
    /// Idempotent exponent projecting onto this component.
    idem: u64,
    /// Index of the first basis element of this component.
    offset: usize,
    table: HashMap<Code, Vec<u64>>,
}

/// `|(F_q[t]/M)^*|` from the factorization.
pub fn unit_count(q: u64, factors: &[(FieldPoly, u32)]) -> u64 {
    factors
        .iter()
        .map(|(p, a)| {
            let d = p.deg() as u32;
            (q.pow(d) - 1) * q.pow(d * (a - 1))
        })
        .product()
}

impl ModulusGroup {
    pub fn new(m: &FieldPoly, h_gens: &[FieldPoly]) -> Result<Self> {
        if m.deg() < 1 || !m.is_monic() {
            return Err(Error::Validation("M must be monic of positive degree".into()));
        }
        let field = m.field().clone();
        let n = m.deg() as u32;
        if (field.q() as u128).pow(n) > u64::MAX as u128 {
            return Err(Error::SizeLimit("q^deg M exceeds 64 bits".into()));
        }
        let factors = factor(m)?;
        let order = unit_count(field.q(), &factors);
        if order > GROUP_ORDER_LIMIT {
            return Err(Error::SizeLimit(format!("group order {order} exceeds 2^22")));
        }
        let mut g = ModulusGroup {
            field,
            m: m.clone(),
            factors,
            order,
            basis: vec![],
            sylow: vec![],
            h_gens: vec![],
            h: HashSet::new(),
        };
        g.build_basis()?;
        let mut hs = Vec::new();
        for x in h_gens {
            let r = x.rem(m);
            if !r.gcd(m).is_one() {
                return Err(Error::Validation(format!("H generator {x} is not coprime to M")));
            }
            hs.push(r);
        }
        g.h = g.closure(&hs);
        g.h_gens = hs;
        Ok(g)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }
    pub fn modulus(&self) -> &FieldPoly {
        &self.m
    }
    pub fn factors(&self) -> &[(FieldPoly, u32)] {
        &self.factors
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn h_order(&self) -> u64 {
        self.h.len() as u64
    }
    pub fn h_generators(&self) -> &[FieldPoly] {
        &self.h_gens
    }
    pub fn index(&self) -> u64 {
        self.order / self.h_order()
    }
    /// Orders `n_j` of the basis elements.
    pub fn invariants(&self) -> Vec<u64> {
        self.basis.iter().map(|(_, n)| *n).collect()
    }
    pub fn basis(&self) -> &[(FieldPoly, u64)] {
        &self.basis
    }
    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.basis.iter().fold(1, |acc, (_, n)| arith::lcm_u64(acc, *n))
    }

    pub(crate) fn code(&self, x: &FieldPoly) -> Code {
        x.rem(&self.m).code() as Code
    }

    pub(crate) fn decode(&self, c: Code) -> FieldPoly {
        FieldPoly::from_code(&self.field, c as u128, self.m.deg() as usize)
    }

    pub fn mul(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        a.mulmod(b, &self.m)
    }

    pub fn pow(&self, a: &FieldPoly, e: u64) -> FieldPoly {
        a.powmod(e as u128, &self.m)
    }

    pub fn is_unit(&self, x: &FieldPoly) -> bool {
        let r = x.rem(&self.m);
        !r.is_zero() && r.gcd(&self.m).is_one()
    }

    pub fn units(&self) -> impl Iterator<Item = FieldPoly> + '_ {
        let total = self.field.q().pow(self.m.deg() as u32);
        (1..total)
            .map(|c| self.decode(c))
            .filter(|p| p.gcd(&self.m).is_one())
    }

    /// Subgroup generated by `gens`, as residue codes.
    pub(crate) fn closure(&self, gens: &[FieldPoly]) -> HashSet<Code> {
        closure_mod(&self.m, gens)
    }

    pub fn in_h(&self, x: &FieldPoly) -> bool {
        self.h.contains(&self.code(x))
    }

    pub(crate) fn h_codes(&self) -> &HashSet<Code> {
        &self.h
    }

    /// Multiplicative order of a unit.
    pub fn element_order(&self, x: &FieldPoly) -> Result<u64> {
        if !self.is_unit(x) {
            return Err(Error::Validation(format!("{x} is not a unit mod {}", self.m)));
        }
        let mut n = self.order;
        for (r, e) in arith::factorize(self.order) {
            for _ in 0..e {
                if self.pow(x, n / r).is_one() {
                    n /= r;
                } else {
                    break;
                }
            }
        }
        Ok(n)
    }

    /// Order of the class of `x` in `G/H`.
    pub fn order_mod_h(&self, x: &FieldPoly) -> Result<u64> {
        if !self.is_unit(x) {
            return Err(Error::Validation(format!("{x} is not a unit mod {}", self.m)));
        }
        let x = x.rem(&self.m);
        let mut z = x.clone();
        let mut f = 1;
        while !self.in_h(&z) {
            z = self.mul(&z, &x);
            f += 1;
        }
        Ok(f)
    }

    /// Exponent vector of a unit in the basis.
    pub fn dlog(&self, x: &FieldPoly) -> Result<Vec<u64>> {
        if !self.is_unit(x) {
            return Err(Error::Validation(format!("{x} is not a unit mod {}", self.m)));
        }
        let mut out = vec![0; self.basis.len()];
        for s in &self.sylow {
            let y = self.pow(x, s.idem);
            let v = s
                .table
                .get(&self.code(&y))
                .ok_or_else(|| Error::Internal("discrete log table miss".into()))?;
            out[s.offset..s.offset + v.len()].copy_from_slice(v);
        }
        Ok(out)
    }

    fn build_basis(&mut self) -> Result<()> {
        let units: Vec<FieldPoly> = self.units().collect();
        if units.len() as u64 != self.order {
            return Err(Error::Internal("unit count mismatch".into()));
        }
        for (r, e) in arith::factorize(self.order) {
            let re = r.pow(e);
            let cof = self.order / re;
            let inv = modinv(cof % re, re);
            let idem = ((cof as u128 * inv as u128) % self.order as u128) as u64;
            let offset = self.basis.len();
            let one = FieldPoly::one(&self.field);
            let mut table: HashMap<Code, Vec<u64>> = HashMap::new();
            table.insert(self.code(&one), vec![]);
            let mut gens: Vec<(FieldPoly, u64)> = Vec::new();
            while (table.len() as u64) < re {
                let mut best: Option<(FieldPoly, u32)> = None;
                for u in &units {
                    let y = self.pow(u, cof);
                    let mut z = y.clone();
                    let mut k = 0;
                    while !table.contains_key(&self.code(&z)) {
                        z = self.pow(&z, r);
                        k += 1;
                    }
                    if best.as_ref().is_none_or(|(_, bk)| k > *bk) {
                        best = Some((y, k));
                    }
                }
                let (y, k) = best.unwrap();
                let o = r.pow(k);
                let s = self.pow(&y, o);
                let js = table[&self.code(&s)].clone();
                let mut fix = y;
                for (i, j) in js.iter().enumerate() {
                    if j % o != 0 {
                        return Err(Error::Internal("basis correction not divisible".into()));
                    }
                    let (b, nb) = &gens[i];
                    let back = (nb - (j / o) % nb) % nb;
                    fix = self.mul(&fix, &self.pow(b, back));
                }
                if !self.pow(&fix, o).is_one() {
                    return Err(Error::Internal("basis element has wrong order".into()));
                }
                let mut next = HashMap::with_capacity(table.len() * o as usize);
                for (c, v) in &table {
                    let mut z = self.decode(*c);
                    for t in 0..o {
                        let mut w = v.clone();
                        w.resize(gens.len(), 0);
                        w.push(t);
                        next.insert(self.code(&z), w);
                        z = self.mul(&z, &fix);
                    }
                }
                table = next;
                gens.push((fix, o));
            }
            for v in table.values_mut() {
                v.resize(gens.len(), 0);
            }
            self.basis.extend(gens);
            self.sylow.push(Sylow { idem, offset, table });
        }
        Ok(())
    }
}

/// Subgroup of `(F_q[t]/m)^*` generated by `gens`, as residue codes.
pub(crate) fn closure_mod(m: &FieldPoly, gens: &[FieldPoly]) -> HashSet<Code> {
    let one = FieldPoly::one(m.field()).rem(m);
    let mut seen: HashSet<Code> = HashSet::new();
    seen.insert(one.code() as Code);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mulmod(g, m);
            if seen.insert(y.code() as Code) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn modinv(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::{make_field, parse_poly};

    fn group(q: u64, m: &str) -> ModulusGroup {
        let (p, k) = arith::prime_power(q).unwrap();
        let f = make_field(p, k).unwrap();
        ModulusGroup::new(&parse_poly(&f, m, 't').unwrap(), &[]).unwrap()
    }

    #[test]
    fn orders() {
        let g = group(2, "t^4+t+1");
        assert_eq!(g.order(), 15);
        assert_eq!(g.invariants().iter().product::<u64>(), 15);
        assert_eq!(g.exponent(), 15);
        assert_eq!(group(2, "(t^6+t+1)^2").order(), 4032);
        assert_eq!(group(3, "t").order(), 2);
    }

    #[test]
    fn dlog_round_trip() {
        let g = group(3, "t^2*(t+1)^2");
        for u in g.units() {
            let v = g.dlog(&u).unwrap();
            let mut z = FieldPoly::one(g.field());
            for ((b, _), e) in g.basis().iter().zip(&v) {
                z = g.mul(&z, &g.pow(b, *e));
            }
            assert_eq!(z, u.rem(g.modulus()));
        }
    }
}
