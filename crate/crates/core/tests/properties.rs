mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::field;
use dstab::carlitz::{ds_criterion, place_counts, zeta_numerator, ModulusGroup};
use dstab::curvelab::{count_points, count_points_naive, CurveModel, Hyperelliptic};
use dstab::drinfeld::{drinfeld_action, DrinfeldAction};
use dstab::gfpoly::{factor, FieldPoly, RatFunc};
use dstab::zetacore::{places_from_points, points_from_places};

fn poly(q: u64, code: u64, len: usize) -> FieldPoly {
    FieldPoly::from_code(&field(q), code as u128, len)
}

fn monic(q: u64, code: u64, deg: usize) -> FieldPoly {
    let f = field(q);
    poly(q, code % q.pow(deg as u32), deg).add(&FieldPoly::monomial(&f, 1, deg))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn places_points_round_trip(a in prop::collection::vec(0u64..1_000_000, 1..14)) {
        let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(places_from_points(&points_from_places(&a)).unwrap(), a);
    }

    #[test]
    fn factorization_multiplies_back(q in prop::sample::select(vec![2u64, 3, 4, 5]), code in 1u64..100_000, deg in 1usize..9) {
        let m = monic(q, code, deg);
        let mut prod = FieldPoly::one(m.field());
        for (p, e) in factor(&m).unwrap() {
            prop_assert!(p.is_irreducible() && p.is_monic());
            prod = prod.mul(&p.pow(e as u64));
        }
        prop_assert_eq!(prod, m);
    }

    #[test]
    fn action_is_multiplicative(
        q in prop::sample::select(vec![2u64, 3]),
        rank in 1usize..4,
        ucodes in prop::collection::vec(0u64..64, 3),
        c1 in 0u64..1000, c2 in 0u64..1000,
        d1 in 1usize..3, d2 in 1usize..3,
    ) {
        let f = field(q);
        let mut u: Vec<RatFunc> = ucodes[..rank].iter().map(|&c| RatFunc::from_poly(poly(q, c, 3))).collect();
        if u[rank - 1].is_zero() {
            u[rank - 1] = RatFunc::one(&f);
        }
        let d = DrinfeldAction::new(&f, u).unwrap();
        let (m1, m2) = (monic(q, c1, d1), monic(q, c2, d2));
        let lhs = drinfeld_action(&d, &m1.mul(&m2));
        let rhs = drinfeld_action(&d, &m1).mul(&drinfeld_action(&d, &m2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn naive_and_fast_counts_agree(
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7]),
        hcode in 0u64..1_000_000, fcode in 0u64..1_000_000_000,
        hdeg in 0usize..4, fdeg in 3usize..8,
    ) {
        let h = if q % 2 == 0 { poly(q, hcode % q.pow(hdeg as u32 + 1), hdeg + 1) } else { FieldPoly::zero(&field(q)) };
        let f = monic(q, fcode, fdeg);
        if let Ok(c) = Hyperelliptic::new(h, f) {
            let model = CurveModel::Hyperelliptic(c.clone());
            for m in 1..=2 {
                prop_assert_eq!(count_points(&model, m).unwrap(), count_points_naive(&c, m).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn carlitz_zeta_matches_place_counts(q in prop::sample::select(vec![2u64, 3]), code in 0u64..10_000, deg in 1usize..4) {
        let m = monic(q, code, deg);
        let grp = ModulusGroup::new(&m, &[]).unwrap();
        let z = zeta_numerator(&grp).unwrap();
        prop_assert!(z.validate_weil().is_ok());
        let d = 6;
        prop_assert_eq!(z.place_counts(d).unwrap(), place_counts(&grp, d).unwrap());
    }

    #[test]
    fn carlitz_subfield_zeta_matches(code in 0u64..10_000, deg in 2usize..5, hcode in 1u64..10_000) {
        let m = monic(2, code, deg);
        let hgen = poly(2, hcode % 2u64.pow(deg as u32), deg);
        prop_assume!(hgen.gcd(&m).is_one());
        let grp = ModulusGroup::new(&m, &[hgen]).unwrap();
        let z = zeta_numerator(&grp).unwrap();
        prop_assert_eq!(z.place_counts(6).unwrap(), place_counts(&grp, 6).unwrap());
    }

    #[test]
    fn stability_criterion_is_sound(code in 0u64..100_000, deg in 2usize..7, ell in prop::sample::select(vec![2u64, 3, 5])) {
        let m = monic(2, code, deg);
        let grp = ModulusGroup::new(&m, &[]).unwrap();
        if ds_criterion(&grp, ell).unwrap() {
            prop_assert_eq!(place_counts(&grp, ell as usize).unwrap()[ell as usize - 1].clone(), BigInt::from(0));
        }
    }
}
