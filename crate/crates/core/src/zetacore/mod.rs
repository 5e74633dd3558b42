//! Zeta data of curves over `F_q`: point counts, place counts, the
//! Frobenius polynomial `P(t)` and the real Weil polynomial `h(x)`.
//!
//! `P(t) = sum A_n t^n` has degree `2g` with `A_0 = 1`, and
//! `P(t) = t^g h((q t^2 + 1)/t)` with `h = sum H_k x^(g-k)`.

pub mod exactpoly;
pub mod sturm;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

pub use exactpoly::{format_int_poly, parse_int_poly, ExactPoly, Q};
pub use sturm::{is_weil_valid, isolate_real_roots, RootEnclosure, Sturm};

/// `(q, g, P)` with `P` the integer Frobenius polynomial of degree `2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    q: u64,
    g: usize,
    p: Vec<BigInt>,
}

fn big(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

fn q_pow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

impl ZetaData {
    /// Checks the shape invariants (`deg P = 2g`, `P(0) = 1`, functional
    /// equation). Weil validity is checked separately by [`ZetaData::validate_weil`].
    pub fn new(q: u64, g: usize, p: Vec<BigInt>) -> Result<Self> {
        if arith::prime_power(q).is_none() {
            return Err(Error::Validation(format!("q = {q} is not a prime power")));
        }
        let mut p = p;
        while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        if p.len() != 2 * g + 1 {
            return Err(Error::Validation(format!(
                "P has degree {} but genus {g} needs {}",
                p.len() as i64 - 1,
                2 * g
            )));
        }
        if !p[0].is_one() {
            return Err(Error::Validation("P(0) must be 1".into()));
        }
        for k in g + 1..=2 * g {
            if p[k] != q_pow(q, k - g) * &p[2 * g - k] {
                return Err(Error::NotWeil(format!("functional equation fails at A_{k}")));
            }
        }
        Ok(ZetaData { q, g, p })
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn g(&self) -> usize {
        self.g
    }
    /// `A_0 .. A_2g`.
    pub fn p_coeffs(&self) -> &[BigInt] {
        &self.p
    }
    pub fn p_poly(&self) -> ExactPoly {
        ExactPoly::from_bigints(&self.p)
    }
    /// Monic reciprocal `L(t) = t^(2g) P(1/t)`.
    pub fn l_coeffs(&self) -> Vec<BigInt> {
        self.p.iter().rev().cloned().collect()
    }

    pub fn p_string(&self) -> String {
        format_int_poly(&self.p, 't')
    }

    /// Power sums `S_1 .. S_m` of the inverse roots of `P`.
    pub fn power_sums(&self, m: usize) -> Vec<BigInt> {
        let a = |n: usize| self.p.get(n).cloned().unwrap_or_else(BigInt::zero);
        let mut s: Vec<BigInt> = Vec::with_capacity(m);
        for n in 1..=m {
            let mut v = -big(n as u64) * a(n);
            let lo = n.saturating_sub(2 * self.g).max(1);
            for k in lo..n {
                v -= &s[k - 1] * a(n - k);
            }
            s.push(v);
        }
        s
    }

    /// `N_1 .. N_m`.
    pub fn point_counts(&self, m: usize) -> Vec<BigInt> {
        self.power_sums(m)
            .into_iter()
            .enumerate()
            .map(|(i, s)| BigInt::one() + q_pow(self.q, i + 1) - s)
            .collect()
    }

    /// `a_1 .. a_m`.
    pub fn place_counts(&self, m: usize) -> Result<Vec<BigInt>> {
        places_from_points(&self.point_counts(m))
    }

    pub fn real_weil(&self) -> Result<ExactPoly> {
        real_weil_from_frobenius(self)
    }

    pub fn validate_weil(&self) -> Result<()> {
        let h = self.real_weil()?;
        if !is_weil_valid(&h, self.q) {
            return Err(Error::NotWeil(format!(
                "h(x) = {} has a root outside [-2 sqrt(q), 2 sqrt(q)]",
                h.to_string_var('x')
            )));
        }
        Ok(())
    }

    /// Diophantine stability for `F_{q^m}/F_q`.
    pub fn ds(&self, m: usize) -> Result<bool> {
        ds_check_places(&self.place_counts(m)?, m)
    }
}

/// Möbius inversion `a_d = (1/d) sum_{e | d} mu(e) N_{d/e}`.
pub fn places_from_points(n: &[BigInt]) -> Result<Vec<BigInt>> {
    if n.is_empty() {
        return Err(Error::Validation("empty point-count vector".into()));
    }
    let mut out = Vec::with_capacity(n.len());
    for d in 1..=n.len() {
        let mut s = BigInt::zero();
        for e in arith::divisors(d as u64) {
            let mu = arith::mobius(e);
            if mu != 0 {
                s += &n[d / e as usize - 1] * mu;
            }
        }
        let (a, r) = s.div_rem(&big(d as u64));
        if !r.is_zero() {
            return Err(Error::NotACurve(format!("a_{d} = {s}/{d} is not an integer")));
        }
        if a.is_negative() {
            return Err(Error::NotACurve(format!("a_{d} = {a} is negative")));
        }
        out.push(a);
    }
    Ok(out)
}

/// `N_m = sum_{d | m} d a_d`.
pub fn points_from_places(a: &[BigInt]) -> Vec<BigInt> {
    (1..=a.len())
        .map(|m| {
            arith::divisors(m as u64)
                .into_iter()
                .map(|d| &a[d as usize - 1] * d)
                .sum()
        })
        .collect()
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Recover `P(t)` from `N_1 .. N_k`, `k >= g`, by Newton's identities and
/// the functional equation.
pub fn frobenius_from_counts(q: u64, g: usize, n: &[BigInt]) -> Result<ZetaData> {
    if arith::prime_power(q).is_none() {
        return Err(Error::Validation(format!("q = {q} is not a prime power")));
    }
    if g == 0 {
        return Err(Error::Validation("genus must be at least 1".into()));
    }
    if n.len() < g {
        return Err(Error::Validation(format!(
            "need at least {g} point counts, got {}",
            n.len()
        )));
    }
    let s: Vec<BigInt> = (0..g)
        .map(|i| BigInt::one() + q_pow(q, i + 1) - &n[i])
        .collect();
    let mut a = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            acc += &s[j - 1] * &a[k - j];
        }
        let (v, r) = (-acc).div_rem(&big(k as u64));
        if !r.is_zero() {
            return Err(Error::NotACurve(format!("A_{k} is not an integer")));
        }
        a.push(v);
    }
    for k in g + 1..=2 * g {
        let v = q_pow(q, k - g) * &a[2 * g - k];
        a.push(v);
    }
    let z = ZetaData::new(q, g, a)?;
    z.validate_weil()?;
    let ext = z.point_counts(n.len());
    for (i, (want, got)) in n.iter().zip(&ext).enumerate().skip(g) {
        if want != got {
            return Err(Error::NotWeil(format!(
                "N_{} = {want} disagrees with the value {got} forced by N_1..N_{g}",
                i + 1
            )));
        }
    }
    Ok(z)
}

/// `N_m` of the curve with zeta data `z`.
pub fn extend_counts(z: &ZetaData, m: usize) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::Validation("m must be at least 1".into()));
    }
    Ok(z.point_counts(m).pop().unwrap())
}

/// Coefficient of `H_k` in `A_n`: `C(g-k, (n-k)/2) q^((n-k)/2)` for `n - k` even.
fn triangular_entry(q: u64, g: usize, n: usize, k: usize) -> BigInt {
    if k > n || (n - k) % 2 == 1 {
        return BigInt::zero();
    }
    let j = (n - k) / 2;
    arith::binomial((g - k) as i64, j as i64) * q_pow(q, j)
}

/// `h(x)` from `P(t)` via the lower-triangular system in `H_0 .. H_g`.
pub fn real_weil_from_frobenius(z: &ZetaData) -> Result<ExactPoly> {
    let g = z.g;
    let mut hk: Vec<BigInt> = Vec::with_capacity(g + 1);
    for n in 0..=g {
        let mut v = z.p[n].clone();
        for (k, hv) in hk.iter().enumerate() {
            v -= triangular_entry(z.q, g, n, k) * hv;
        }
        hk.push(v);
    }
    let h = ExactPoly::from_bigints(&hk.iter().rev().cloned().collect::<Vec<_>>());
    let back = frobenius_coeffs(&hk, z.q, g);
    if back != z.p {
        return Err(Error::NotWeil("P(t) is not of the form t^g h((qt^2+1)/t)".into()));
    }
    Ok(h)
}

fn frobenius_coeffs(hk: &[BigInt], q: u64, g: usize) -> Vec<BigInt> {
    (0..=2 * g)
        .map(|n| {
            (0..=g.min(n))
                .map(|k| triangular_entry(q, g, n, k) * &hk[k])
                .sum()
        })
        .collect()
}

/// `H_0 .. H_g` read off a monic degree-`g` polynomial.
pub fn h_coeffs(h: &ExactPoly, g: usize) -> Result<Vec<BigInt>> {
    if h.degree() != Some(g) || h.lead() != Q::one() {
        return Err(Error::Validation(format!("h must be monic of degree {g}")));
    }
    let ints = h
        .to_integers()
        .ok_or_else(|| Error::Validation("h must have integer coefficients".into()))?;
    Ok(ints.into_iter().rev().collect())
}

/// `P(t) = t^g h((q t^2 + 1)/t)`.
pub fn frobenius_from_real_weil(h: &ExactPoly, q: u64, g: usize) -> Result<ZetaData> {
    let hk = h_coeffs(h, g)?;
    ZetaData::new(q, g, frobenius_coeffs(&hk, q, g))
}

/// True iff `a_d = 0` for every divisor `d > 1` of `m`.
pub fn ds_check_places(a: &[BigInt], m: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::Validation("m must be at least 1".into()));
    }
    if a.len() < m {
        return Err(Error::Validation(format!(
            "insufficient data: need a_1..a_{m}, have {}",
            a.len()
        )));
    }
    Ok(arith::divisors(m as u64)
        .into_iter()
        .filter(|&d| d > 1)
        .all(|d| a[d as usize - 1].is_zero()))
}

pub fn ds_check_counts(n: &[BigInt], m: usize) -> Result<bool> {
    if n.len() < m {
        return Err(Error::Validation(format!(
            "insufficient data: need N_1..N_{m}, have {}",
            n.len()
        )));
    }
    ds_check_places(&places_from_points(&n[..m.max(1)])?, m)
}

/// Hasse–Weil–Serre interval for `#C(F_{q^m})`, clamped at zero.
pub fn hws_interval_pow(q: u64, m: u32, g: usize) -> Result<(BigInt, BigInt)> {
    if arith::prime_power(q).is_none() {
        return Err(Error::Validation(format!("q = {q} is not a prime power")));
    }
    let c = BigInt::one() + BigInt::from(q).pow(m);
    let r = arith::floor_two_sqrt_pow(q, m) * g;
    let lo = (&c - &r).max(BigInt::zero());
    Ok((lo, c + r))
}

pub fn hws_interval(q: u64, g: usize) -> Result<(BigInt, BigInt)> {
    hws_interval_pow(q, 1, g)
}

pub const ADMISSIBLE_GENUS_LIMIT: usize = 12;

/// Pairs `(q, m)`, `m > 1`, whose intervals for `F_q` and `F_{q^m}` meet.
pub fn admissible_pairs(g: usize) -> Result<Vec<(u64, u32)>> {
    if g == 0 || g > ADMISSIBLE_GENUS_LIMIT {
        return Err(Error::Validation(format!("genus {g} outside 1..=12")));
    }
    let gb = BigInt::from(g as u64);
    let mut out = Vec::new();
    let mut q = 2u64;
    loop {
        let hi1 = BigInt::one() + q + &gb * arith::floor_two_sqrt_pow(q, 1);
        let lo2_raw = BigInt::one() + BigInt::from(q).pow(2) - &gb * arith::floor_two_sqrt_pow(q, 2);
        if q >= 2 * g as u64 + 2 && lo2_raw > hi1 {
            break;
        }
        if arith::prime_power(q).is_some() {
            let mut m = 2u32;
            loop {
                let qm = BigInt::from(q).pow(m);
                let lo_raw = BigInt::one() + &qm - &gb * arith::floor_two_sqrt_pow(q, m);
                if lo_raw <= hi1 {
                    out.push((q, m));
                } else {
                    let past_min = arith::isqrt_big(&qm) > gb;
                    if past_min {
                        break;
                    }
                }
                m += 1;
            }
        }
        q += 1;
    }
    out.sort();
    Ok(out)
}

/// `a + b sqrt(q)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: Q,
    pub b: Q,
    q: u64,
}

impl Surd {
    pub fn new(a: Q, b: Q, q: u64) -> Self {
        Surd { a, b, q }
    }
    pub fn zero(q: u64) -> Self {
        Surd::new(Q::zero(), Q::zero(), q)
    }
    /// `q^(n/2)` for any integer `n`.
    pub fn half_power(q: u64, n: i64) -> Self {
        let e = n.div_euclid(2);
        let base = if e >= 0 {
            Q::from_integer(BigInt::from(q).pow(e as u32))
        } else {
            Q::one() / Q::from_integer(BigInt::from(q).pow((-e) as u32))
        };
        if n.rem_euclid(2) == 0 {
            Surd::new(base, Q::zero(), q)
        } else {
            Surd::new(Q::zero(), base, q)
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        Surd::new(&self.a + &o.a, &self.b + &o.b, self.q)
    }
    pub fn sub(&self, o: &Self) -> Self {
        Surd::new(&self.a - &o.a, &self.b - &o.b, self.q)
    }
    pub fn scale(&self, c: &Q) -> Self {
        Surd::new(&self.a * c, &self.b * c, self.q)
    }
    /// Exact sign.
    pub fn sign(&self) -> i32 {
        let qq = BigInt::from(self.q);
        let sgn = |x: &Q| {
            if x.is_positive() {
                1
            } else if x.is_negative() {
                -1
            } else {
                0
            }
        };
        if arith::is_square_big(&qq) {
            let r = Q::from_integer(arith::isqrt_big(&qq));
            return sgn(&(&self.a + &self.b * r));
        }
        let (sa, sb) = (sgn(&self.a), sgn(&self.b));
        if sa >= 0 && sb >= 0 {
            return i32::from(sa > 0 || sb > 0);
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        let a2 = &self.a * &self.a;
        let b2q = &self.b * &self.b * Q::from_integer(qq);
        let d = sgn(&(a2 - b2q));
        if sa > 0 {
            d
        } else {
            -d
        }
    }
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (self.q as f64).sqrt()
    }
}

pub const GRID_POINTS: usize = 4096;
pub const GRID_TOLERANCE: f64 = 1e-9;

/// Minimum of `1 + 2 sum c_n cos(n t)` on a uniform grid (heuristic check).
pub fn weight_grid_minimum(c: &[Q]) -> f64 {
    let cf: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    (0..GRID_POINTS)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / GRID_POINTS as f64;
            1.0 + 2.0
                * cf
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * ((i + 1) as f64 * t).cos())
                    .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Decide the explicit-formula inequality for place counts `a` and weights
/// `c_1 .. c_k` exactly.
pub fn explicit_formula_filter(q: u64, g: usize, a: &[BigInt], c: &[Q]) -> Result<bool> {
    if c.is_empty() || c[0].is_zero() {
        return Err(Error::Validation("c_1 must be nonzero".into()));
    }
    if a.is_empty() {
        return Err(Error::Validation("need at least a_1".into()));
    }
    let min = weight_grid_minimum(c);
    if min.is_nan() || min < -GRID_TOLERANCE {
        return Err(Error::Validation(format!(
            "weight function takes the negative value {min:.3e} on the grid"
        )));
    }
    let inv_sum = |pred: &dyn Fn(usize) -> bool| {
        c.iter()
            .enumerate()
            .filter(|(i, _)| pred(i + 1))
            .fold(Surd::zero(q), |acc, (i, cn)| {
                acc.add(&Surd::half_power(q, -((i + 1) as i64)).scale(cn))
            })
    };
    let mut lhs = Surd::zero(q);
    for (i, ad) in a.iter().enumerate().skip(1) {
        let d = i + 1;
        if ad.is_zero() {
            continue;
        }
        let inner = inv_sum(&|n| n % d == 0);
        lhs = lhs.add(&inner.scale(&Q::from_integer(ad * d)));
    }
    let pos = c.iter().enumerate().fold(Surd::zero(q), |acc, (i, cn)| {
        acc.add(&Surd::half_power(q, (i + 1) as i64).scale(cn))
    });
    let one_minus_a1 = Q::from_integer(BigInt::one() - &a[0]);
    let rhs = Surd::new(Q::from_integer(BigInt::from(g as u64)), Q::zero(), q)
        .add(&pos)
        .add(&inv_sum(&|_| true).scale(&one_minus_a1));
    Ok(rhs.sub(&lhs).sign() >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[i64]) -> Vec<BigInt> {
        to_big(v)
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(places_from_points(&bv(&[1, 1, 1])).unwrap(), bv(&[1, 0, 0]));
        assert_eq!(places_from_points(&bv(&[5, 5])).unwrap(), bv(&[5, 0]));
        assert_eq!(points_from_places(&bv(&[9, 0, 0, 2, 0])), bv(&[9, 9, 9, 17, 9]));
        assert!(places_from_points(&bv(&[5, 4])).is_err());
        assert!(places_from_points(&bv(&[5, 6])).is_err());
    }

    #[test]
    fn elliptic_from_counts() {
        let z = frobenius_from_counts(2, 1, &bv(&[5])).unwrap();
        assert_eq!(z.p_coeffs(), &bv(&[1, 2, 2])[..]);
        let z = frobenius_from_counts(2, 1, &bv(&[1])).unwrap();
        assert_eq!(z.p_coeffs(), &bv(&[1, -2, 2])[..]);
        assert!(matches!(
            frobenius_from_counts(2, 1, &bv(&[7])),
            Err(Error::NotWeil(_))
        ));
    }

    #[test]
    fn real_weil_round_trip() {
        let z = ZetaData::new(2, 1, bv(&[1, 2, 2])).unwrap();
        let h = real_weil_from_frobenius(&z).unwrap();
        assert_eq!(h, ExactPoly::from_ints(&[2, 1]));
        assert_eq!(frobenius_from_real_weil(&h, 2, 1).unwrap(), z);
        let z = ZetaData::new(4, 1, bv(&[1, 4, 4])).unwrap();
        assert_eq!(real_weil_from_frobenius(&z).unwrap(), ExactPoly::from_ints(&[4, 1]));
    }

    #[test]
    fn hws_examples() {
        assert_eq!(hws_interval(2, 1).unwrap(), (big(1), big(5)));
        assert_eq!(hws_interval(2, 5).unwrap(), (big(0), big(13)));
        assert_eq!(hws_interval(4, 1).unwrap(), (big(1), big(9)));
        assert!(hws_interval(6, 1).is_err());
    }

    #[test]
    fn admissible_g1() {
        assert_eq!(admissible_pairs(1).unwrap(), vec![(2, 2), (2, 3), (3, 2), (4, 2)]);
    }

    #[test]
    fn surd_sign() {
        let s = Surd::new(Q::from_integer(big(3)), Q::from_integer(big(-2)), 2);
        assert_eq!(s.sign(), 1);
        let s = Surd::new(Q::from_integer(big(2)), Q::from_integer(big(-2)), 2);
        assert_eq!(s.sign(), -1);
        let s = Surd::new(Q::from_integer(big(4)), Q::from_integer(big(-2)), 4);
        assert_eq!(s.sign(), 0);
    }

    #[test]
    fn explicit_formula_examples() {
        let c = vec![Q::new(big(1), big(2))];
        assert!(explicit_formula_filter(2, 1, &bv(&[5]), &c).unwrap());
        assert!(!explicit_formula_filter(2, 1, &bv(&[6]), &c).unwrap());
        assert!(explicit_formula_filter(3, 2, &bv(&[0, 0, 0]), &c).unwrap());
        let bad = vec![Q::from_integer(big(2))];
        assert!(explicit_formula_filter(2, 1, &bv(&[5]), &bad).is_err());
    }
}
