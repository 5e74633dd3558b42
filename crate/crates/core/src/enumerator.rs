//! Depth-first search for real Weil polynomials indexed by place counts.
//!
//! A node at depth `i` fixes `a_1 .. a_i`, which determine `H_1 .. H_i`.
//! The `(g-i)`-th derivative of `h` is a degree-`i` polynomial whose constant
//! term `(g-i)! H_i` is affine in `a_i`; the rest, `T_i`, depends only on the
//! prefix. All roots of `h` lie in `[-2 sqrt q, 2 sqrt q]` only if the same
//! holds for every derivative, which bounds `a_i` and prunes the tree.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith;
use crate::error::{Error, Result};
use crate::zetacore::sturm::{isolate_real_roots, two_sqrt_bounds};
use crate::zetacore::{frobenius_from_real_weil, hws_interval, is_weil_valid, ExactPoly, ZetaData, Q};

pub const GENUS_LIMIT: usize = 8;
pub const ROOT_BITS: u32 = 32;

/// Coefficients `A_0 .. A_i` of `(1-t)(1-qt) prod_d (1-t^d)^(-a_d)` mod `t^(i+1)`.
fn frobenius_prefix(q: u64, a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let qb = BigInt::from(q);
    let mut lin = vec![BigInt::zero(); n + 1];
    lin[0] = BigInt::one();
    if n >= 1 {
        lin[1] = -(BigInt::one() + &qb);
    }
    if n >= 2 {
        lin[2] = qb.clone();
    }
    let mut s = lin;
    for (idx, ad) in a.iter().enumerate() {
        let d = idx + 1;
        if ad.is_zero() {
            continue;
        }
        let mut series = vec![BigInt::zero(); n + 1];
        let mut coef = BigInt::one();
        let mut j = 0usize;
        while d * j <= n {
            series[d * j] = coef.clone();
            coef = coef * (ad + BigInt::from(j as u64)) / BigInt::from(j as u64 + 1);
            j += 1;
        }
        let mut out = vec![BigInt::zero(); n + 1];
        for (x, sx) in s.iter().enumerate() {
            if sx.is_zero() {
                continue;
            }
            for (y, sy) in series.iter().enumerate().take(n + 1 - x) {
                if !sy.is_zero() {
                    out[x + y] += sx * sy;
                }
            }
        }
        s = out;
    }
    s
}

fn tri(q: u64, g: usize, n: usize, k: usize) -> BigInt {
    if k > n || (n - k) % 2 == 1 {
        return BigInt::zero();
    }
    let j = (n - k) / 2;
    arith::binomial((g - k) as i64, j as i64) * BigInt::from(q).pow(j as u32)
}

/// `H_1 .. H_i` for a prefix `a_1 .. a_i`, together with `dH_i/da_i`.
pub fn h_coefficients(q: u64, g: usize, prefix: &[BigInt]) -> Result<(Vec<BigInt>, BigInt)> {
    let i = prefix.len();
    if i == 0 || i > g {
        return Err(Error::Validation(format!("prefix length {i} outside 1..={g}")));
    }
    let h = solve_h(q, g, prefix);
    let mut bumped = prefix.to_vec();
    bumped[i - 1] += 1;
    let h1 = solve_h(q, g, &bumped);
    let slope = &h1[i] - &h[i];
    Ok((h[1..].to_vec(), slope))
}

/// `H_0 .. H_i`.
fn solve_h(q: u64, g: usize, prefix: &[BigInt]) -> Vec<BigInt> {
    let a = frobenius_prefix(q, prefix);
    let mut h: Vec<BigInt> = Vec::with_capacity(a.len());
    for (n, an) in a.iter().enumerate() {
        let mut v = an.clone();
        for (k, hk) in h.iter().enumerate() {
            v -= tri(q, g, n, k) * hk;
        }
        h.push(v);
    }
    h
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// `h^(g-i)` as a polynomial in `x`, given `H_0 .. H_i`.
fn derivative_poly(g: usize, h: &[BigInt]) -> ExactPoly {
    let i = h.len() - 1;
    let mut c = vec![Q::zero(); i + 1];
    for (k, hk) in h.iter().enumerate() {
        let f = factorial(g - k) / factorial(i - k);
        c[i - k] = Q::from_integer(hk * f);
    }
    ExactPoly::new(c)
}

/// A node of the search tree: the prefix `a_1 .. a_i` and `H_0 .. H_i`.
#[derive(Clone, Debug)]
pub struct PartialCandidate {
    pub q: u64,
    pub g: usize,
    pub prefix: Vec<BigInt>,
    pub h: Vec<BigInt>,
}

impl PartialCandidate {
    pub fn root(q: u64, g: usize) -> Self {
        PartialCandidate {
            q,
            g,
            prefix: vec![],
            h: vec![BigInt::one()],
        }
    }

    pub fn from_prefix(q: u64, g: usize, prefix: &[BigInt]) -> Self {
        let h = if prefix.is_empty() {
            vec![BigInt::one()]
        } else {
            solve_h(q, g, prefix)
        };
        PartialCandidate {
            q,
            g,
            prefix: prefix.to_vec(),
            h,
        }
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    fn child(&self, ai: BigInt) -> Self {
        let mut prefix = self.prefix.clone();
        prefix.push(ai);
        Self::from_prefix(self.q, self.g, &prefix)
    }

    /// `T_i`: the next derivative `h^(g-i)` without its constant term, for `i = depth + 1`.
    pub fn shifted_derivative(&self) -> ExactPoly {
        let mut hh = self.h.clone();
        hh.push(BigInt::zero());
        derivative_poly(self.g, &hh)
    }

    /// `H_i` at `a_i = 0` and its slope in `a_i`, for `i = depth + 1`.
    fn next_affine(&self) -> (BigInt, BigInt) {
        let mut p0 = self.prefix.clone();
        p0.push(BigInt::zero());
        let h0 = solve_h(self.q, self.g, &p0);
        let mut p1 = self.prefix.clone();
        p1.push(BigInt::one());
        let h1 = solve_h(self.q, self.g, &p1);
        let i = p0.len();
        (h0[i].clone(), &h1[i] - &h0[i])
    }
}

/// Upper bound on `a_i` from `i a_i <= N_i <= 1 + q^i + g floor(2 sqrt(q^i))`.
pub fn weil_cap(q: u64, g: usize, i: usize) -> BigInt {
    let hi = BigInt::one() + BigInt::from(q).pow(i as u32) + arith::floor_two_sqrt_pow(q, i as u32) * g;
    hi / BigInt::from(i as u64)
}

/// A range `[lo, hi]` certified to contain every `a_{i}` (`i = depth + 1`)
/// that can pass [`accept`].
pub fn prune_range(node: &PartialCandidate) -> Result<(BigInt, BigInt)> {
    let i = node.depth() + 1;
    if i > node.g {
        return Err(Error::Validation("node is already complete".into()));
    }
    let cap = weil_cap(node.q, node.g, i);
    let t = node.shifted_derivative();
    let crit = isolate_real_roots(&t.derivative(), ROOT_BITS);
    let (wlo, whi) = two_sqrt_bounds(node.q, ROOT_BITS);
    let mut points: Vec<(usize, Q, Q)> = vec![(0, -whi.clone(), -wlo.clone()), (i, wlo, whi)];
    if crit.len() == i - 1 {
        for (j, e) in crit.iter().enumerate() {
            points.push((j + 1, e.lo.clone(), e.hi.clone()));
        }
    }
    let mut t_lo: Option<Q> = None;
    let mut t_hi: Option<Q> = None;
    for (j, lo, hi) in &points {
        let (vlo, vhi) = t.eval_interval(lo, hi);
        if (i - j).is_multiple_of(2) {
            let b = -vhi;
            if t_lo.as_ref().is_none_or(|cur| &b > cur) {
                t_lo = Some(b);
            }
        } else {
            let b = -vlo;
            if t_hi.as_ref().is_none_or(|cur| &b < cur) {
                t_hi = Some(b);
            }
        }
    }
    let (h0, slope) = node.next_affine();
    if !slope.is_positive() {
        return Err(Error::Internal(format!("nonpositive slope {slope} for H_{i}")));
    }
    let fact = Q::from_integer(factorial(node.g - i));
    let to_a = |tv: &Q| (tv / &fact - Q::from_integer(h0.clone())) / Q::from_integer(slope.clone());
    let lo = t_lo
        .map(|v| to_a(&v).ceil().to_integer())
        .unwrap_or_else(BigInt::zero)
        .max(BigInt::zero());
    let hi = t_hi.map(|v| to_a(&v).floor().to_integer()).unwrap_or_else(|| cap.clone()).min(cap);
    Ok((lo, hi))
}

/// Exact test that `h^(g-i)` has all roots real in the window, `i = depth + 1`.
pub fn accept(node: &PartialCandidate, ai: &BigInt) -> bool {
    let child = node.child(ai.clone());
    let p = derivative_poly(node.g, &child.h);
    is_weil_valid(&p, node.q)
}

/// Search constraints.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    pub a1: Option<BigInt>,
    pub zeros: BTreeSet<usize>,
    pub ds_m: Option<usize>,
    /// Disable the interlacing bound and use only the Weil cap on `a_i`.
    pub no_prune: bool,
}

impl Constraints {
    pub fn ds(m: usize) -> Self {
        Constraints {
            ds_m: Some(m),
            ..Default::default()
        }
    }
}

/// A complete survivor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub a: Vec<BigInt>,
    pub h: ExactPoly,
    pub zeta: ZetaData,
}

#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub candidates: Vec<Candidate>,
    pub nodes: u64,
}

fn explore(
    node: PartialCandidate,
    zeros: &BTreeSet<usize>,
    no_prune: bool,
    out: &mut Enumeration,
) -> Result<()> {
    out.nodes += 1;
    let i = node.depth() + 1;
    if i > node.g {
        let h = ExactPoly::from_bigints(&node.h.iter().rev().cloned().collect::<Vec<_>>());
        let zeta = frobenius_from_real_weil(&h, node.q, node.g)?;
        out.candidates.push(Candidate {
            a: node.prefix.clone(),
            h,
            zeta,
        });
        return Ok(());
    }
    let (lo, hi) = if no_prune {
        (BigInt::zero(), weil_cap(node.q, node.g, i))
    } else {
        prune_range(&node)?
    };
    let values: Vec<BigInt> = if zeros.contains(&i) {
        if lo.is_zero() {
            vec![BigInt::zero()]
        } else {
            vec![]
        }
    } else {
        let mut v = Vec::new();
        let mut x = lo;
        while x <= hi {
            v.push(x.clone());
            x += 1;
        }
        v
    };
    for ai in values {
        if accept(&node, &ai) {
            explore(node.child(ai), zeros, no_prune, out)?;
        }
    }
    Ok(())
}

/// All candidates `[a_1 .. a_g]` in lexicographic order. `jobs > 1` explores
/// the depth-1 subtrees in parallel; the output does not depend on `jobs`.
pub fn enumerate(q: u64, g: usize, c: &Constraints, jobs: usize) -> Result<Enumeration> {
    if g == 0 || g > GENUS_LIMIT {
        return Err(Error::Validation(format!("genus {g} outside 1..={GENUS_LIMIT}")));
    }
    let mut zeros = c.zeros.clone();
    if let Some(m) = c.ds_m {
        if m < 2 {
            return Err(Error::Validation("DS modulus must be at least 2".into()));
        }
        for d in arith::divisors(m as u64) {
            if d > 1 && d as usize <= g {
                zeros.insert(d as usize);
            }
        }
    }
    if zeros.contains(&1) {
        return Err(Error::Validation("a_1 cannot be forced to zero".into()));
    }
    let (lo, hi) = hws_interval(q, g)?;
    let root = PartialCandidate::root(q, g);
    let firsts: Vec<BigInt> = match &c.a1 {
        Some(v) => vec![v.clone()],
        None => {
            let mut v = Vec::new();
            let mut x = lo;
            while x <= hi {
                v.push(x.clone());
                x += 1;
            }
            v
        }
    };
    let run = |a1: &BigInt| -> Result<Enumeration> {
        let mut e = Enumeration::default();
        if a1.is_negative() || !accept(&root, a1) {
            return Ok(e);
        }
        explore(root.child(a1.clone()), &zeros, c.no_prune, &mut e)?;
        Ok(e)
    };
    let parts: Vec<Result<Enumeration>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| firsts.par_iter().map(run).collect())
    } else {
        firsts.iter().map(run).collect()
    };
    let mut all = Enumeration {
        candidates: vec![],
        nodes: 1,
    };
    for p in parts {
        let p = p?;
        all.nodes += p.nodes;
        all.candidates.extend(p.candidates);
    }
    if let Some(m) = c.ds_m {
        all.candidates.retain(|cand| cand.zeta.ds(m).unwrap_or(false));
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zetacore::to_big;

    #[test]
    fn elephant_h() {
        let (h, slope) = h_coefficients(2, 5, &to_big(&[9, 0, 0, 2, 0])).unwrap();
        assert_eq!(h, to_big(&[6, 10, 0, -8, 0]));
        assert!(slope.is_one());
        let (h, _) = h_coefficients(2, 5, &to_big(&[9])).unwrap();
        assert_eq!(h, to_big(&[6]));
    }

    #[test]
    fn elephant_bound_on_a2() {
        let node = PartialCandidate::from_prefix(2, 5, &to_big(&[9]));
        let (lo, hi) = prune_range(&node).unwrap();
        assert_eq!(lo, BigInt::zero());
        assert_eq!(hi, BigInt::from(4));
    }

    #[test]
    fn elephant_last_step() {
        let node = PartialCandidate::from_prefix(2, 5, &to_big(&[9, 0, 0, 2]));
        let (lo, hi) = prune_range(&node).unwrap();
        let mut ok = vec![];
        let mut x = lo;
        while x <= hi {
            if accept(&node, &x) {
                ok.push(x.clone());
            }
            x += 1;
        }
        assert_eq!(ok, to_big(&[0]));
        assert!(!accept(&node, &BigInt::one()));
    }

    #[test]
    fn genus_one_root() {
        let root = PartialCandidate::root(2, 1);
        assert!(accept(&root, &BigInt::from(5)));
        let e = enumerate(2, 1, &Constraints::default(), 1).unwrap();
        let a1: Vec<BigInt> = e.candidates.iter().map(|c| c.a[0].clone()).collect();
        assert_eq!(a1, to_big(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn ds_search_at_seven_cubed() {
        let e = enumerate(7, 3, &Constraints::ds(2), 2).unwrap();
        assert_eq!(e.candidates.len(), 1);
        let want = ExactPoly::from_ints(&[7, 5, 1]).mul(&ExactPoly::from_ints(&[49, 0, -13, 0, 1]));
        assert_eq!(e.candidates[0].zeta.l_coeffs(), want.integer_coeffs().unwrap());
    }
}
