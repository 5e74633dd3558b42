//! Rank-n Drinfeld torsion polynomials, the rank-3 stability checks, base
//! change to the Carlitz module and descent of zero place counts.

mod audit;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith;
use crate::carlitz::{carlitz_phi, place_counts, torsion_poly, LinearizedPoly, ModulusGroup, XPoly};
use crate::error::{Error, Result};
use crate::gfpoly::{factor, make_field, FieldDesc, FieldPoly, RatFunc};

pub use audit::{
    newton_polygon, place_audit_rank3, rank3_check, AuditPlace, PlaceAudit, Rank3Audit, Rank3Verdict, Segment,
};

/// The module sending `t` to `t + u_1 tau + ... + u_n tau^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldAction {
    field: FieldDesc,
    u: Vec<RatFunc>,
}

impl DrinfeldAction {
    pub fn new(field: &FieldDesc, u: Vec<RatFunc>) -> Result<Self> {
        match u.last() {
            Some(c) if !c.is_zero() => Ok(DrinfeldAction {
                field: field.clone(),
                u,
            }),
            _ => Err(Error::Validation("top coefficient u_n must be nonzero".into())),
        }
    }

    /// `t -> t + tau^n`.
    pub fn standard(field: &FieldDesc, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("rank must be positive".into()));
        }
        let mut u = vec![RatFunc::zero(field); n];
        u[n - 1] = RatFunc::one(field);
        Self::new(field, u)
    }

    /// Parse `u_1;u_2;...;u_n` as rational functions in `t`.
    pub fn parse(field: &FieldDesc, s: &str) -> Result<Self> {
        let u = s
            .split(';')
            .map(|p| RatFunc::parse(field, p.trim(), 't'))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, u)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[RatFunc] {
        &self.u
    }

    pub fn generator(&self) -> LinearizedPoly {
        LinearizedPoly::generator(&self.field, &self.u)
    }
}

pub fn drinfeld_action(d: &DrinfeldAction, m: &FieldPoly) -> LinearizedPoly {
    LinearizedPoly::action(&d.generator(), m)
}

pub fn drinfeld_phi(d: &DrinfeldAction, m: &FieldPoly) -> Result<XPoly> {
    let gen = d.generator();
    torsion_poly(m, |x| LinearizedPoly::action(&gen, x))
}

/// Result of comparing the rank-`n` torsion polynomial over `F_q` with the
/// Carlitz one over `F_{q^n}`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub phi: XPoly,
    pub equal: bool,
    pub integral: bool,
}

/// Irreducible factors of `m` over `F_q` that split over `F_{q^n}`, with their factorizations.
pub fn basechange_witness(m: &FieldPoly, n: u32) -> Result<Vec<(FieldPoly, Vec<FieldPoly>)>> {
    let small = m.field();
    let big = make_field(small.p(), small.k() * n)?;
    let emb = big.embedding_from(small)?;
    let mut out = Vec::new();
    for (pi, _) in factor(m)? {
        if arith::gcd_u64(pi.deg() as u64, n as u64) != 1 {
            let parts = factor(&pi.lift(&big, &emb))?.into_iter().map(|(p, _)| p).collect();
            out.push((pi, parts));
        }
    }
    Ok(out)
}

pub fn basechange_phi(q: u64, n: u32, m: &FieldPoly) -> Result<BaseChange> {
    let small = m.field();
    if small.q() != q {
        return Err(Error::Validation(format!("M is not over F_{q}")));
    }
    if n == 0 {
        return Err(Error::Validation("n must be positive".into()));
    }
    let witness = basechange_witness(m, n)?;
    if let Some((pi, parts)) = witness.first() {
        let shown: Vec<String> = parts.iter().map(|p| format!("({p})")).collect();
        return Err(Error::Precondition(format!(
            "{pi} splits over F_{}: {}",
            q.pow(n),
            shown.join("*")
        )));
    }
    let big = make_field(small.p(), small.k() * n)?;
    let emb = big.embedding_from(small)?;
    let phi = drinfeld_phi(&DrinfeldAction::standard(small, n as usize)?, m)?;
    let carlitz = carlitz_phi(&m.lift(&big, &emb))?;
    Ok(BaseChange {
        equal: phi.map_field(&big, &emb) == carlitz,
        integral: phi.is_integral(),
        phi,
    })
}

/// Indices `j` with `a_j(X_{M,1}) = 0` certified from zeros `a_k(X_{M,l}) = 0`
/// with `l | k`, `j = l k`; keys are `j`, values the witnessing `k`.
pub fn descent_zero_places(q: u64, ell: u64, m: &FieldPoly) -> Result<BTreeMap<usize, usize>> {
    let small = m.field();
    if small.q() != q {
        return Err(Error::Validation(format!("M is not over F_{q}")));
    }
    if !arith::is_prime(ell) {
        return Err(Error::Validation(format!("{ell} is not prime")));
    }
    let d = m.deg() as u64;
    if d <= ell {
        return Err(Error::Precondition(format!("deg M = {d} must exceed {ell}")));
    }
    if !m.is_monic() || !m.is_irreducible() || arith::gcd_u64(d, ell) != 1 {
        return Err(Error::Precondition(format!("{m} is not irreducible over F_{}", q.pow(ell as u32))));
    }
    let big = make_field(small.p(), small.k() * ell as u32)?;
    let emb = big.embedding_from(small)?;
    let grp = ModulusGroup::new(&m.lift(&big, &emb), &[])?;
    let mut kmax = 1;
    while (big.q() as u128).pow(kmax as u32 + 1) <= 1 << 16 && kmax < 2 * d as usize {
        kmax += 1;
    }
    let a = place_counts(&grp, kmax)?;
    let l = ell as usize;
    Ok((1..=kmax)
        .filter(|k| k % l == 0 && a[k - 1].is_zero())
        .map(|k| (l * k, k))
        .collect())
}

/// `a_k` over `F_{q^n}` from `a_1` over `F_{q^{nk/d}}`, `d | k`.
pub fn constant_extension_places(a1: &BTreeMap<u64, BigInt>, n: u64, k: u64) -> Result<BigInt> {
    if k == 0 || n == 0 {
        return Err(Error::Validation("n and k must be positive".into()));
    }
    let mut s = BigInt::zero();
    for dd in arith::divisors(k) {
        let mu = arith::mobius(dd);
        if mu == 0 {
            continue;
        }
        let idx = n * k / dd;
        let v = a1
            .get(&idx)
            .ok_or_else(|| Error::Validation(format!("missing a_1 over F_q^{idx}")))?;
        s += v * mu;
    }
    let (quo, rem) = s.div_rem(&BigInt::from(k));
    if !rem.is_zero() {
        return Err(Error::NotACurve(format!("Mobius sum {s} is not divisible by {k}")));
    }
    Ok(quo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::carlitz_action;
    use crate::gfpoly::parse_poly;

    fn f2() -> FieldDesc {
        make_field(2, 1).unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(&f2(), s, 't').unwrap()
    }

    #[test]
    fn rank_three_at_t() {
        let d = DrinfeldAction::new(&f2(), vec![rf("t"), rf("t+1"), rf("1/(t+1)")]).unwrap();
        let phi = drinfeld_phi(&d, &parse_poly(&f2(), "t", 't').unwrap()).unwrap();
        assert_eq!(phi.to_string(), "(1/(t+1))*x^7+(t+1)*x^3+t*x+t");
    }

    #[test]
    fn rank_one_is_carlitz() {
        let d = DrinfeldAction::new(&f2(), vec![rf("1")]).unwrap();
        let m = parse_poly(&f2(), "t^3+t+1", 't').unwrap();
        assert_eq!(drinfeld_action(&d, &m), carlitz_action(&m));
    }

    #[test]
    fn base_change_small() {
        let m = parse_poly(&f2(), "t", 't').unwrap();
        let b = basechange_phi(2, 2, &m).unwrap();
        assert!(b.equal && b.integral);
        assert_eq!(b.phi.to_string(), "x^3+t");
        let bad = parse_poly(&f2(), "t^2+t+1", 't').unwrap();
        assert!(matches!(basechange_phi(2, 2, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn mobius_identity() {
        let a1: BTreeMap<u64, BigInt> = (1..=6).map(|i| (i, BigInt::from(7))).collect();
        assert_eq!(constant_extension_places(&a1, 1, 1).unwrap(), BigInt::from(7));
        assert_eq!(constant_extension_places(&a1, 2, 3).unwrap(), BigInt::zero());
    }
}
