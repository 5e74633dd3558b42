use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{count_points, CurveModel, Hyperelliptic};
use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly::{make_field, Elem, FieldDesc, FieldPoly};

pub const HOWE_RETRY_LIMIT: u64 = 2000;

/// A Howe curve with its certificate counts.
#[derive(Clone, Debug)]
pub struct HoweCurve {
    pub curve: Hyperelliptic,
    /// `(m, N_m)` pairs that certify the stability claim.
    pub certificate: Vec<(u32, u64)>,
    pub attempts: u64,
}

fn odd_field(q: u64) -> Result<(u64, u32)> {
    match arith::prime_power(q) {
        Some((p, k)) if p != 2 => Ok((p, k)),
        _ => Err(Error::Validation(format!("q = {q} is not an odd prime power"))),
    }
}

/// `y^2 = x^{q^3} - x + n` for a nonsquare `n`, with `N_1 = N_3 = 1` verified.
pub fn howe_cubic(q: u64, n: Elem) -> Result<HoweCurve> {
    let (p, k) = odd_field(q)?;
    let field = make_field(p, k)?;
    if n >= q {
        return Err(Error::Validation(format!("{n} is not an element of F_{q}")));
    }
    if field.is_square(n) {
        return Err(Error::Validation(format!("{n} is a square in F_{q}")));
    }
    let big_deg = q.checked_pow(3).ok_or_else(|| Error::SizeLimit("q^3 overflows".into()))?;
    if big_deg > super::HYPERELLIPTIC_SCAN_LIMIT {
        return Err(Error::SizeLimit(format!("q^3 = {big_deg} too large to verify")));
    }
    let mut c = vec![0; big_deg as usize + 1];
    c[0] = n;
    c[1] = field.neg(1);
    c[big_deg as usize] = 1;
    let f = FieldPoly::new(&field, c);
    let curve = Hyperelliptic::new(FieldPoly::zero(&field), f)?;
    let model = CurveModel::Hyperelliptic(curve.clone());
    let n1 = count_points(&model, 1)?;
    let n3 = count_points(&model, 3)?;
    if n1 != 1 || n3 != 1 {
        return Err(Error::Internal(format!("unexpected counts N_1 = {n1}, N_3 = {n3}")));
    }
    Ok(HoweCurve {
        curve,
        certificate: vec![(1, n1), (3, n3)],
        attempts: 1,
    })
}

/// A random `y^2 = g(x)` over `F_q` with `N_1 = N_2`, found by interpolating
/// square values on `F_q` and nonsquare values on `F_{q^2} \ F_q`.
pub fn howe_interpolation(q: u64, seed: u64) -> Result<HoweCurve> {
    let (p, k) = odd_field(q)?;
    if q > 13 {
        return Err(Error::SizeLimit(format!("q = {q} above 13")));
    }
    let base = make_field(p, k)?;
    let big = make_field(p, 2 * k)?;
    let emb = big.embedding_from(&base)?;
    let back = |x: Elem| (0..base.q()).find(|&a| emb.map(a) == x);
    let sub: Vec<Elem> = (0..base.q()).map(|a| emb.map(a)).collect();
    let squares: Vec<Elem> = (0..base.q()).filter(|&a| base.is_square(a)).map(|a| emb.map(a)).collect();
    let nonsquares: Vec<Elem> = big.elements().filter(|&v| big.legendre(v) == -1).collect();
    let qq = big.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=HOWE_RETRY_LIMIT {
        let mut values = vec![0; qq as usize];
        for &z in &sub {
            values[z as usize] = *squares.choose(&mut rng).unwrap();
        }
        for z in big.elements() {
            if sub.contains(&z) || values[z as usize] != 0 {
                continue;
            }
            let v = *nonsquares.choose(&mut rng).unwrap();
            values[z as usize] = v;
            values[big.pow(z, q) as usize] = big.pow(v, q);
        }
        let f = interpolate(&big, &values);
        let Some(coeffs) = f.coeffs().iter().map(|&c| back(c)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let f = FieldPoly::new(&base, coeffs);
        if f.deg() < 1 || f.deg() % 2 == 0 {
            continue;
        }
        let g = squarefree_kernel(&f);
        if g.deg() < 3 {
            continue;
        }
        let Ok(curve) = Hyperelliptic::new(FieldPoly::zero(&base), g) else {
            continue;
        };
        let model = CurveModel::Hyperelliptic(curve.clone());
        let n1 = count_points(&model, 1)?;
        let n2 = count_points(&model, 2)?;
        if n1 == n2 {
            return Ok(HoweCurve {
                curve,
                certificate: vec![(1, n1), (2, n2)],
                attempts: attempt,
            });
        }
    }
    Err(Error::RetryExhausted(HOWE_RETRY_LIMIT))
}

/// The polynomial of degree `< Q` taking the given value at each element of `F_Q`.
fn interpolate(big: &FieldDesc, values: &[Elem]) -> FieldPoly {
    let qq = big.q();
    let mut c = vec![0; qq as usize];
    c[0] = values[0];
    for (kk, slot) in c.iter_mut().enumerate().skip(1) {
        let mut acc = if kk as u64 == qq - 1 { values[0] } else { 0 };
        for z in 1..qq {
            let v = values[z as usize];
            if v != 0 {
                acc = big.add(acc, big.mul(v, big.pow(z, qq - 1 - kk as u64)));
            }
        }
        *slot = big.neg(acc);
    }
    FieldPoly::new(big, c)
}

/// `f` with every square factor divided out.
fn squarefree_kernel(f: &FieldPoly) -> FieldPoly {
    let mut g = f.clone();
    loop {
        let d = g.gcd(&g.derivative());
        if d.deg() < 1 {
            return g;
        }
        let Some(rad) = g.div_exact(&d) else {
            return g;
        };
        let s = d.gcd(&rad);
        if s.deg() < 1 {
            return g;
        }
        match g.div_exact(&s.mul(&s)) {
            Some(h) => g = h,
            None => return g,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_examples() {
        assert_eq!(howe_cubic(3, 2).unwrap().certificate, vec![(1, 1), (3, 1)]);
        assert!(howe_cubic(3, 1).is_err());
    }

    #[test]
    fn interpolation_is_seeded() {
        let a = howe_interpolation(3, 7).unwrap();
        let b = howe_interpolation(3, 7).unwrap();
        assert_eq!(a.curve, b.curve);
        assert!(a.curve.genus() <= 3);
        assert_eq!(a.certificate[0].1, a.certificate[1].1);
    }

    #[test]
    fn interpolation_hits_values() {
        let f = make_field(3, 2).unwrap();
        let vals: Vec<Elem> = (0..9).map(|i| (i * 5 + 1) % 9).collect();
        let p = interpolate(&f, &vals);
        for z in 0..9 {
            assert_eq!(p.eval(z), vals[z as usize]);
        }
    }
}
