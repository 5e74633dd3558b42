use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AffineCurve, CurveModel, MultiPoly, PlaneCurve};
use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly::{make_field, Elem, FieldDesc};
use crate::zetacore::{frobenius_from_counts, ZetaData};

/// Largest `q^g` for which the Drinfeld family zeta is computed from counts.
pub const DRINFELD_DL_ZETA_LIMIT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `x^{q0+1} + y^{q0+1} + z^{q0+1}` over `F_{q0^2}`.
    Hermitian { q0: u64 },
    /// `q = 2^{2e+1}`.
    Suzuki { e: u32 },
    /// `q = 3^{2s+1}`.
    Ree { s: u32 },
    /// `y^q - y = z^{q+1}` over `F_q`, `q` odd.
    DrinfeldDL { q: u64 },
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Hermitian { q0 } => {
                if arith::prime_power(q0).is_none() {
                    return Err(Error::Validation(format!("q0 = {q0} is not a prime power")));
                }
            }
            Family::Suzuki { e } => {
                if !(1..=15).contains(&e) {
                    return Err(Error::Validation(format!("Suzuki e = {e} outside 1..=15")));
                }
            }
            Family::Ree { s } => {
                if !(1..=6).contains(&s) {
                    return Err(Error::Validation(format!("Ree s = {s} outside 1..=6")));
                }
            }
            Family::DrinfeldDL { q } => match arith::prime_power(q) {
                Some((p, _)) if p != 2 => {}
                _ => return Err(Error::Validation(format!("q = {q} is not an odd prime power"))),
            },
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        match *self {
            Family::Hermitian { q0 } => q0 * q0,
            Family::Suzuki { e } => 1 << (2 * e + 1),
            Family::Ree { s } => 3u64.pow(2 * s + 1),
            Family::DrinfeldDL { q } => q,
        }
    }

    pub fn q0(&self) -> u64 {
        match *self {
            Family::Hermitian { q0 } => q0,
            Family::Suzuki { e } => 1 << e,
            Family::Ree { s } => 3u64.pow(s),
            Family::DrinfeldDL { q } => q,
        }
    }

    pub fn genus(&self) -> u64 {
        let (q, q0) = (self.q(), self.q0());
        match self {
            Family::Hermitian { .. } => (q - q0) / 2,
            Family::Suzuki { .. } => q0 * (q - 1),
            Family::Ree { .. } => 3 * q0 * (q - 1) * (q + q0 + 1) / 2,
            Family::DrinfeldDL { .. } => q * (q - 1) / 2,
        }
    }

    /// `hermitian:2`, `suzuki:1`, `ree:1`, `drinfeld:3`.
    pub fn parse(s: &str) -> Result<Self> {
        let (name, v) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("family '{s}' needs NAME:PARAM")))?;
        let n: u64 = v.parse().map_err(|_| Error::Parse(format!("bad family parameter '{v}'")))?;
        let small = |n: u64| u32::try_from(n).map_err(|_| Error::Validation(format!("parameter {n} too large")));
        let f = match name.to_ascii_lowercase().as_str() {
            "hermitian" => Family::Hermitian { q0: n },
            "suzuki" => Family::Suzuki { e: small(n)? },
            "ree" => Family::Ree { s: small(n)? },
            "drinfeld" | "drinfeld-dl" | "drinfelddl" => Family::DrinfeldDL { q: n },
            other => return Err(Error::Parse(format!("unknown family '{other}'"))),
        };
        f.validate()?;
        Ok(f)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hermitian { q0 } => write!(out, "hermitian:{q0}"),
            Family::Suzuki { e } => write!(out, "suzuki:{e}"),
            Family::Ree { s } => write!(out, "ree:{s}"),
            Family::DrinfeldDL { q } => write!(out, "drinfeld:{q}"),
        }
    }
}

/// `prod f_i^{e_i}` for integer polynomials with `f_i(0) = 1`, from the
/// linear recurrence `D P' = N P`, `D = prod f_i`.
pub(crate) fn power_product(factors: &[(Vec<BigInt>, u64)]) -> Vec<BigInt> {
    let mut d = vec![BigInt::one()];
    for (f, _) in factors {
        d = poly_mul(&d, f);
    }
    let mut n = vec![BigInt::zero()];
    for (i, (f, e)) in factors.iter().enumerate() {
        let mut term: Vec<BigInt> = derivative(f).into_iter().map(|c| c * *e).collect();
        for (j, (g, _)) in factors.iter().enumerate() {
            if j != i {
                term = poly_mul(&term, g);
            }
        }
        n = poly_add(&n, &term);
    }
    let deg: usize = factors.iter().map(|(f, e)| (f.len() - 1) * *e as usize).sum();
    let mut p = vec![BigInt::zero(); deg + 1];
    p[0] = BigInt::one();
    for k in 0..deg {
        let mut acc = BigInt::zero();
        for (j, nj) in n.iter().enumerate() {
            if j <= k {
                acc += nj * &p[k - j];
            }
        }
        for (j, dj) in d.iter().enumerate().skip(1) {
            if j <= k + 1 {
                acc -= dj * &p[k + 1 - j] * (k + 1 - j);
            }
        }
        p[k + 1] = acc / (k + 1);
    }
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn derivative(a: &[BigInt]) -> Vec<BigInt> {
    if a.len() <= 1 {
        return vec![BigInt::zero()];
    }
    a.iter().enumerate().skip(1).map(|(i, c)| c * i).collect()
}

/// Zeta data of the family member.
pub fn family_zeta(fam: &Family) -> Result<ZetaData> {
    fam.validate()?;
    let (q, q0, g) = (fam.q(), fam.q0(), fam.genus());
    let b = |v: u64| BigInt::from(v);
    let p = match fam {
        Family::Hermitian { .. } => power_product(&[(vec![b(1), b(q0)], 2 * g)]),
        Family::Suzuki { .. } => power_product(&[(vec![b(1), b(2 * q0), b(q)], g)]),
        Family::Ree { .. } => {
            let bexp = q0 * (q * q - 1);
            let aexp = g - bexp;
            power_product(&[(vec![b(1), b(0), b(q)], aexp), (vec![b(1), b(3 * q0), b(q)], bexp)])
        }
        Family::DrinfeldDL { q } => {
            let size = (*q as u128).checked_pow(g as u32).unwrap_or(u128::MAX);
            if size > DRINFELD_DL_ZETA_LIMIT as u128 {
                return Err(Error::SizeLimit(format!(
                    "Drinfeld curve zeta needs counts over F_{q}^{g}"
                )));
            }
            let n: Vec<BigInt> = (1..=g as u32)
                .map(|m| drinfeld_dl_trace_count(*q, m).map(BigInt::from))
                .collect::<Result<_>>()?;
            return frobenius_from_counts(*q, g as usize, &n);
        }
    };
    ZetaData::new(q, g as usize, p)
}

fn field_of(q: u64, m: u32) -> Result<(FieldDesc, FieldDesc)> {
    let (p, k) = arith::prime_power(q).ok_or_else(|| Error::Validation(format!("{q} is not a prime power")))?;
    Ok((make_field(p, k)?, make_field(p, k * m)?))
}

/// `Tr_{F_{q^m}/F_q}`.
fn relative_trace(big: &FieldDesc, q: u64, m: u32, c: Elem) -> Elem {
    let mut acc = 0;
    let mut x = c;
    for _ in 0..m {
        acc = big.add(acc, x);
        x = big.pow(x, q);
    }
    acc
}

/// `#C(F_{q^m})` for `y^q - y = z^{q+1}` from the relative trace of `z^{q+1}`.
fn drinfeld_dl_trace_count(q: u64, m: u32) -> Result<u64> {
    let (_, big) = field_of(q, m)?;
    let zeros = big
        .elements()
        .filter(|&z| relative_trace(&big, q, m, big.pow(z, q + 1)) == 0)
        .count() as u64;
    Ok(1 + q * zeros)
}

/// Plane model used for brute-force cross-checks, when the family has one.
pub fn family_model(fam: &Family) -> Result<Option<CurveModel>> {
    fam.validate()?;
    let (q, q0) = (fam.q(), fam.q0());
    let (p, k) = arith::prime_power(q).unwrap();
    let field = make_field(p, k)?;
    Ok(match fam {
        Family::Hermitian { .. } => {
            let e = q0 + 1;
            let f = format!("x^{e}+y^{e}+z^{e}");
            Some(CurveModel::PlaneProjective(PlaneCurve::new(MultiPoly::parse(
                &field,
                &f,
                &['x', 'y', 'z'],
            )?)?))
        }
        Family::Suzuki { .. } => {
            let f = format!("y^{q}-y-x^{q0}*(x^{q}-x)");
            Some(CurveModel::PlaneAffinePlus(AffineCurve::new(
                MultiPoly::parse(&field, &f, &['x', 'y'])?,
                vec![1],
            )?))
        }
        Family::DrinfeldDL { .. } => {
            let f = format!("y^{q}-y-x^{}", q + 1);
            Some(CurveModel::PlaneAffinePlus(AffineCurve::new(
                MultiPoly::parse(&field, &f, &['x', 'y'])?,
                vec![1],
            )?))
        }
        Family::Ree { .. } => None,
    })
}

/// `#C(F_{q^m})` for `y^q - y = z^{q+1}`: affine scan plus one point at infinity.
pub fn drinfeld_dl_counts(q: u64, m: u32) -> Result<u64> {
    let model = family_model(&Family::DrinfeldDL { q })?.unwrap();
    super::count_points(&model, m)
}

/// Affine points of `y^q - y = x^{q0}(x^q - x)`, `z^q - z = x^{q0}(y^q - y)`
/// over `F_{q^m}`, plus one point at infinity.
pub fn ree_affine_count(s: u32, m: u32) -> Result<u64> {
    let fam = Family::Ree { s };
    fam.validate()?;
    let (q, q0) = (fam.q(), fam.q0());
    let qm = (q as u128).pow(m);
    if qm * qm > super::PLANE_SCAN_LIMIT as u128 {
        return Err(Error::SizeLimit(format!("Ree scan over F_{qm} is too large")));
    }
    let (_, big) = field_of(q, m)?;
    let mut n = 1u64;
    for x in big.elements() {
        let c1 = big.mul(big.pow(x, q0), big.sub(big.pow(x, q), x));
        for y in big.elements() {
            let yq = big.sub(big.pow(y, q), y);
            if yq != c1 {
                continue;
            }
            let c2 = big.mul(big.pow(x, q0), yq);
            if relative_trace(&big, q, m, c2) == 0 {
                n += q;
            }
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zetacore::extend_counts;

    #[test]
    fn product_recurrence() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let p = power_product(&[(b(&[1, 2]), 3), (b(&[1, 0, 5]), 2)]);
        let mut want = b(&[1]);
        for _ in 0..3 {
            want = poly_mul(&want, &b(&[1, 2]));
        }
        for _ in 0..2 {
            want = poly_mul(&want, &b(&[1, 0, 5]));
        }
        assert_eq!(p, want);
    }

    #[test]
    fn hermitian_counts() {
        let z = family_zeta(&Family::Hermitian { q0: 2 }).unwrap();
        assert_eq!(z.g(), 1);
        assert_eq!(extend_counts(&z, 1).unwrap(), BigInt::from(9));
        assert_eq!(extend_counts(&z, 2).unwrap(), BigInt::from(9));
    }

    #[test]
    fn drinfeld_small() {
        assert_eq!(drinfeld_dl_counts(3, 1).unwrap(), 4);
        assert_eq!(drinfeld_dl_counts(3, 2).unwrap(), 4);
        for m in 1..=2 {
            assert_eq!(drinfeld_dl_trace_count(3, m).unwrap(), 4);
        }
    }

    #[test]
    fn ree_base_field() {
        assert_eq!(ree_affine_count(1, 1).unwrap(), 19684);
    }
}
