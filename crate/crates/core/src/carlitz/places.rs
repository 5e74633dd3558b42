use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{closure_mod, unit_count, ModulusGroup};
use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly::{irreducibles, FieldPoly};

/// Splitting data of one place of `F_q(t)` in the subfield fixed by `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSplitting {
    /// `None` for the place at infinity.
    pub pi: Option<FieldPoly>,
    pub degree: usize,
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

impl PlaceSplitting {
    pub fn ramified(&self) -> bool {
        self.e > 1
    }
    /// Degree of each place above this one.
    pub fn residue_degree(&self) -> usize {
        self.degree * self.f as usize
    }
}

/// `(e, f, g)` at a finite prime `pi`.
pub fn splitting_at(grp: &ModulusGroup, pi: &FieldPoly) -> Result<PlaceSplitting> {
    let m = grp.modulus();
    let pi = pi.monic();
    let degree = pi.deg() as usize;
    if !pi.divides(m) {
        let f = grp.order_mod_h(&pi)?;
        return Ok(PlaceSplitting {
            pi: Some(pi),
            degree,
            e: 1,
            f,
            g: grp.index() / f,
        });
    }
    let mut rest = m.clone();
    while pi.divides(&rest) {
        rest = rest.div_exact(&pi).unwrap();
    }
    let q = grp.field().q();
    let rest_factors: Vec<_> = grp.factors().iter().filter(|(p, _)| *p != pi).cloned().collect();
    let (g_rest, proj) = if rest.deg() == 0 {
        (1, 1)
    } else {
        let gens: Vec<FieldPoly> = grp.h_generators().iter().map(|h| h.rem(&rest)).collect();
        (unit_count(q, &rest_factors), closure_mod(&rest, &gens).len() as u64)
    };
    let num = grp.order() * proj;
    let den = g_rest * grp.h_order();
    if !num.is_multiple_of(den) {
        return Err(Error::Internal("ramification index is not integral".into()));
    }
    let e = num / den;
    let f = if rest.deg() == 0 {
        1
    } else {
        let gens: Vec<FieldPoly> = grp.h_generators().iter().map(|h| h.rem(&rest)).collect();
        let ph = closure_mod(&rest, &gens);
        let x = pi.rem(&rest);
        let mut z = x.clone();
        let mut f = 1;
        while !ph.contains(&(z.code() as u64)) {
            z = z.mulmod(&x, &rest);
            f += 1;
        }
        f
    };
    if !grp.index().is_multiple_of(e * f) {
        return Err(Error::Internal("splitting numbers do not divide the degree".into()));
    }
    Ok(PlaceSplitting {
        pi: Some(pi),
        degree,
        e,
        f,
        g: grp.index() / (e * f),
    })
}

/// The place at infinity: totally ramified over `F_q^* H / H`, then split.
pub fn splitting_at_infinity(grp: &ModulusGroup) -> PlaceSplitting {
    let f = grp.field();
    let mut gens = grp.h_generators().to_vec();
    gens.push(FieldPoly::constant(f, f.generator()).rem(grp.modulus()));
    let big = closure_mod(grp.modulus(), &gens).len() as u64;
    let g = grp.order() / big;
    PlaceSplitting {
        pi: None,
        degree: 1,
        e: grp.index() / g,
        f: 1,
        g,
    }
}

/// Every prime of degree `<= d_max` and infinity, with their splitting.
pub fn splittings(grp: &ModulusGroup, d_max: usize) -> Result<Vec<PlaceSplitting>> {
    let mut out = vec![splitting_at_infinity(grp)];
    for d in 1..=d_max {
        for pi in irreducibles(grp.field(), d)? {
            out.push(splitting_at(grp, &pi)?);
        }
    }
    Ok(out)
}

/// Place counts `a_1..a_{d_max}` of the subfield fixed by `H`.
pub fn place_counts(grp: &ModulusGroup, d_max: usize) -> Result<Vec<BigInt>> {
    let mut a = vec![BigInt::zero(); d_max];
    for s in splittings(grp, d_max)? {
        let k = s.residue_degree();
        if k >= 1 && k <= d_max {
            a[k - 1] += s.g;
        }
    }
    Ok(a)
}

/// Order of `pi` in `G/H` for `pi` coprime to `M`.
pub fn residual_degree(grp: &ModulusGroup, pi: &FieldPoly) -> Result<u64> {
    if pi.gcd(grp.modulus()).deg() > 0 {
        return Err(Error::Precondition(format!("{pi} divides M")));
    }
    grp.order_mod_h(pi)
}

/// Sufficient condition for `a_ell = 0` at a prime `ell`: no prime factor of `M`
/// has degree 1 or `ell`, no degree-1 prime has order `ell` in `G/H`, and no
/// degree-`ell` prime lies in `H`.
pub fn ds_criterion(grp: &ModulusGroup, ell: u64) -> Result<bool> {
    if !arith::is_prime(ell) {
        return Err(Error::Validation(format!("{ell} is not prime")));
    }
    if grp.factors().iter().any(|(p, _)| p.deg() == 1 || p.deg() as u64 == ell) {
        return Ok(false);
    }
    for pi in irreducibles(grp.field(), 1)? {
        if grp.order_mod_h(&pi)? == ell {
            return Ok(false);
        }
    }
    for pi in irreducibles(grp.field(), ell as usize)? {
        if grp.in_h(&pi) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `H` inside `F_q^*`, `a_k = 0` for `2 <= k < deg M` unless some prime
/// factor `pi` of `M` has `deg pi * f_pi = k`.
pub fn zero_place_criterion(grp: &ModulusGroup, k: usize) -> Result<bool> {
    let n = grp.modulus().deg() as usize;
    if k < 2 || k >= n {
        return Err(Error::Precondition(format!("k = {k} outside 2..{n}")));
    }
    let f = grp.field();
    let consts = closure_mod(grp.modulus(), &[FieldPoly::constant(f, f.generator())]);
    if !grp.h_codes().is_subset(&consts) {
        return Err(Error::Precondition("H is not contained in F_q^*".into()));
    }
    for (pi, _) in grp.factors() {
        if splitting_at(grp, pi)?.residue_degree() == k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degrees `k` with `a_k = 0` guaranteed for `M = pi^r` and `H = 1`.
pub fn prime_power_zero_range(m: &FieldPoly) -> Result<Vec<usize>> {
    let fs = crate::gfpoly::factor(m)?;
    if fs.len() != 1 {
        return Err(Error::Precondition(format!("{m} is not a prime power")));
    }
    let d = fs[0].0.deg() as usize;
    let n = m.deg() as usize;
    Ok((2..n).filter(|&k| k != d).collect())
}
