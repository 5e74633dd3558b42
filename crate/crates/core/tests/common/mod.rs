#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dstab::carlitz::{carlitz_phi, splitting_at, ModulusGroup};
use dstab::curvelab::{counts, CurveModel, Hyperelliptic};
use dstab::enumerator::{enumerate, Constraints};
use dstab::gfpoly::{ddf_degrees_upto, irreducibles, make_field, monics, FieldDesc, FieldPoly};
use dstab::zetacore::{
    frobenius_from_real_weil, places_from_points, points_from_places, real_weil_from_frobenius, ExactPoly,
};

pub type Check = Result<(), String>;

pub fn field(q: u64) -> FieldDesc {
    let (p, k) = dstab::arith::prime_power(q).unwrap();
    make_field(p, k).unwrap()
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn mobius_round_trips(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let len = rng.gen_range(1..=12);
        let a: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.gen_range(0..10_000u64))).collect();
        let n = points_from_places(&a);
        let back = places_from_points(&n).map_err(|e| e.to_string())?;
        ensure(back == a, || format!("places -> points -> places changed {a:?}"))?;
    }
    Ok(())
}

/// Products of `x - r` with integer `|r| <= 2 sqrt q` are real Weil polynomials.
pub fn weil_round_trips(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16];
    for _ in 0..cases {
        let q = qs[rng.gen_range(0..qs.len())];
        let g = rng.gen_range(1..=5);
        let r = dstab::arith::isqrt_u128(4 * q as u128) as i64;
        let mut h = ExactPoly::one();
        for _ in 0..g {
            let root = rng.gen_range(-r..=r);
            h = h.mul(&ExactPoly::from_ints(&[-root, 1]));
        }
        let z = frobenius_from_real_weil(&h, q, g).map_err(|e| e.to_string())?;
        z.validate_weil().map_err(|e| format!("{h:?}: {e}"))?;
        let back = real_weil_from_frobenius(&z).map_err(|e| e.to_string())?;
        ensure(back == h, || format!("q={q}: {h:?} came back as {back:?}"))?;
    }
    Ok(())
}

fn poly_from_code(f: &FieldDesc, code: u64, len: usize) -> FieldPoly {
    FieldPoly::from_code(f, code as u128, len)
}

/// Every smooth genus-2 curve `y^2 + h y = f` over `F_2` with `deg h <= 3`,
/// `deg f <= 6` has its `[a_1, a_2]` among the enumerated candidates.
pub fn enumerator_completeness_2_2() -> Check {
    let f2 = field(2);
    let found: BTreeSet<Vec<BigInt>> = enumerate(2, 2, &Constraints::default(), 1)
        .map_err(|e| e.to_string())?
        .candidates
        .into_iter()
        .map(|c| c.a)
        .collect();
    let mut seen = BTreeSet::new();
    for hc in 1..16u64 {
        for fc in 0..128u64 {
            let h = poly_from_code(&f2, hc, 4);
            let f = poly_from_code(&f2, fc, 7);
            let Ok(c) = Hyperelliptic::new(h, f) else { continue };
            if c.genus() != 2 {
                continue;
            }
            let n = counts(&CurveModel::Hyperelliptic(c.clone()), 2).map_err(|e| e.to_string())?;
            let a = places_from_points(&n).map_err(|e| e.to_string())?;
            ensure(found.contains(&a), || format!("{a:?} from {c:?} not enumerated"))?;
            seen.insert(a);
        }
    }
    ensure(!seen.is_empty(), || "no genus-2 curves scanned".into())
}

/// For monic `M` with `deg M <= max_deg` and `pi` not dividing `M`, the
/// residual degree `f` of `pi` predicted by the group matches the factor
/// degrees of `Phi_M mod pi`, for `f deg pi <= d_max`.
pub fn carlitz_oracle(q: u64, max_deg: usize, d_max: usize) -> Check {
    let f = field(q);
    for dm in 1..=max_deg {
        for m in monics(&f, dm) {
            let grp = ModulusGroup::new(&m, &[]).map_err(|e| e.to_string())?;
            let phi = carlitz_phi(&m).map_err(|e| e.to_string())?;
            ensure(phi.degree() == Some(grp.order() as usize), || format!("deg Phi_{m}"))?;
            for dp in 1..=d_max {
                for pi in irreducibles(&f, dp).map_err(|e| e.to_string())? {
                    if pi.divides(&m) {
                        continue;
                    }
                    let s = splitting_at(&grp, &pi).map_err(|e| e.to_string())?;
                    let kmax = d_max / dp;
                    let red = phi
                        .reduce_mod(&pi)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("Phi_{m} not integral at {pi}"))?;
                    let prof = ddf_degrees_upto(&red, kmax).map_err(|e| e.to_string())?;
                    let small: Vec<(usize, usize)> = prof.into_iter().filter(|(d, _)| *d != 0).collect();
                    let expect = if (s.f as usize) <= kmax {
                        vec![(s.f as usize, (grp.order() / s.f) as usize)]
                    } else {
                        vec![]
                    };
                    ensure(small == expect, || {
                        format!("M={m}, pi={pi}: factor degrees {small:?}, expected {expect:?}")
                    })?;
                }
            }
        }
    }
    Ok(())
}
