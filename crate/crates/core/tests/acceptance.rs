mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;

use common::*;
use dstab::carlitz::{
    ds_criterion, place_counts, zero_place_criterion, zeta_numerator, ModulusGroup, XPoly,
};
use dstab::curvelab::{
    counts, drinfeld_dl_counts, family_model, family_zeta, howe_cubic, howe_interpolation, ree_affine_count,
    CurveModel, Family,
};
use dstab::drinfeld::{basechange_phi, descent_zero_places, drinfeld_phi, rank3_check, DrinfeldAction};
use dstab::enumerator::{accept, enumerate, prune_range, Constraints, PartialCandidate};
use dstab::gfpoly::{parse_poly, RatFunc};
use dstab::zetacore::{
    admissible_pairs, ds_check_counts, extend_counts, frobenius_from_counts, places_from_points,
    points_from_places, real_weil_from_frobenius, to_big, ExactPoly,
};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn curve_counts(eq: &str, k: usize) -> Result<Vec<BigInt>, String> {
    counts(&CurveModel::parse(eq).map_err(err)?, k).map_err(err)
}

fn admissible_tables() -> Check {
    let tables: [&[(u64, &[u32])]; 5] = [
        &[(2, &[2, 3]), (3, &[2]), (4, &[2])],
        &[(2, &[2, 3, 4]), (3, &[2, 3]), (4, &[2]), (5, &[2])],
        &[(2, &[2, 3, 4, 5]), (3, &[2, 3]), (4, &[2, 3]), (5, &[2]), (7, &[2]), (8, &[2]), (9, &[2])],
        &[
            (2, &[2, 3, 4, 5, 6]),
            (3, &[2, 3, 4]),
            (4, &[2, 3]),
            (5, &[2]),
            (7, &[2]),
            (8, &[2]),
            (9, &[2]),
            (11, &[2]),
        ],
        &[
            (2, &[2, 3, 4, 5, 6]),
            (3, &[2, 3, 4]),
            (4, &[2, 3]),
            (5, &[2, 3]),
            (7, &[2]),
            (8, &[2]),
            (9, &[2]),
            (11, &[2]),
            (13, &[2]),
        ],
    ];
    for (i, t) in tables.iter().enumerate() {
        let g = i + 1;
        let expect: Vec<(u64, u32)> = t.iter().flat_map(|(q, ms)| ms.iter().map(|m| (*q, *m))).collect();
        let got = admissible_pairs(g).map_err(err)?;
        ensure(got == expect, || format!("g={g}: {got:?}"))?;
    }
    Ok(())
}

fn table_rows(rows: &[(u64, u32, &str, u64)]) -> Check {
    for &(q, m, eq, n) in rows {
        let c = curve_counts(&format!("hyp q={q} {eq}"), m as usize)?;
        ensure(c[0] == BigInt::from(n) && c[m as usize - 1] == BigInt::from(n), || {
            format!("{eq} over F_{q}: {c:?}, expected N = {n}")
        })?;
        ensure(ds_check_counts(&c, m as usize).map_err(err)?, || format!("{eq}: not DS for m={m}"))?;
    }
    Ok(())
}

fn genus_one_table() -> Check {
    table_rows(&[
        (2, 2, "y^2+y=x^3+x", 5),
        (2, 3, "y^2+y=x^3+1", 4),
        (2, 3, "y^2+y=x^3+x", 5),
        (3, 2, "y^2=x^3+2*x+1", 7),
        (4, 2, "y^2+y=x^3", 9),
    ])?;
    let over4 = curve_counts("hyp q=4 y^2+y=x^3", 2)?;
    let over2 = curve_counts("hyp q=2 y^2+y=x^3", 1)?;
    ensure(over4 == to_big(&[9, 9]) && over2 == to_big(&[3]), || {
        format!("y^2+y=x^3: F_4,F_16 {over4:?}, F_2 {over2:?}")
    })
}

fn genus_one_corrected() -> Check {
    table_rows(&[(2, 3, "y^2+x*y=x^3+1", 4)])
}

fn genus_two_table() -> Check {
    table_rows(&[
        (2, 2, "y^2+(x^2+x)*y=x^5+x^3+x^2+x", 3),
        (2, 2, "y^2+x*y=x^5+x", 4),
        (2, 2, "y^2+y=x^5+x^3", 5),
        (2, 2, "y^2+(x^3+x+1)*y=x^5+x^4+x^3+x", 6),
        (2, 3, "y^2+y=x^5+x^3+1", 1),
        (2, 3, "y^2+x*y=x^5+x^2+x", 2),
        (2, 3, "y^2+y=x^5+x^4", 5),
        (3, 2, "y^2=x^5+2*x^4+2*x^3+2*x", 5),
        (3, 3, "y^2=x^6+x^4+x^2+1", 8),
        (5, 2, "y^2=x^5+4*x", 6),
    ])?;
    let c = curve_counts("hyp q=4 y^2+(x^2+x)*y=a*(x^5+x^3+x^2+x)", 2)?;
    ensure(&c[1] - &c[0] == BigInt::from(2), || format!("remark curve: {c:?}"))
}

fn elephant() -> Check {
    let a = to_big(&[9, 0, 0, 2, 0]);
    let n = points_from_places(&a);
    ensure(n == to_big(&[9, 9, 9, 17, 9]), || format!("N = {n:?}"))?;
    let z = frobenius_from_counts(2, 5, &n).map_err(err)?;
    let p = to_big(&[1, 6, 20, 48, 92, 144, 184, 192, 160, 96, 32]);
    ensure(z.p_coeffs() == p.as_slice(), || format!("P = {}", z.p_string()))?;
    let h = real_weil_from_frobenius(&z).map_err(err)?;
    ensure(h == ExactPoly::from_ints(&[0, -8, 0, 10, 6, 1]), || format!("h = {h:?}"))?;
    let (lo, hi) = prune_range(&PartialCandidate::from_prefix(2, 5, &to_big(&[9]))).map_err(err)?;
    ensure(lo == BigInt::from(0) && hi == BigInt::from(4), || format!("a_2 range {lo}..{hi}"))?;
    let node = PartialCandidate::from_prefix(2, 5, &to_big(&[9, 0, 0, 2]));
    let (lo, hi) = prune_range(&node).map_err(err)?;
    let mut survivors = vec![];
    let mut x = lo;
    while x <= hi {
        if accept(&node, &x) {
            survivors.push(x.clone());
        }
        x += 1;
    }
    ensure(survivors == to_big(&[0]), || format!("a_5 survivors {survivors:?}"))?;
    let c = Constraints {
        a1: Some(BigInt::from(9)),
        ..Default::default()
    };
    let e = enumerate(2, 5, &c, 1).map_err(err)?;
    ensure(e.candidates.iter().any(|c| c.a == a), || "elephant not enumerated".into())
}

fn genus_six() -> Check {
    let n = curve_counts("hyp q=2 y^2+(x^6+x^5+x^4+x^3+x^2+x+1)*y=x^13+x^5+x+1", 16)?;
    let expect_n = to_big(&[
        3, 5, 9, 17, 33, 11, 129, 257, 513, 1025, 2049, 4379, 8193, 16385, 32769, 65537,
    ]);
    ensure(n == expect_n, || format!("N = {n:?}"))?;
    let a = places_from_points(&n).map_err(err)?;
    let expect_a = to_big(&[3, 1, 2, 3, 6, 0, 18, 30, 56, 99, 186, 363, 630, 1161, 2182, 4080]);
    ensure(a == expect_a, || format!("a = {a:?}"))?;
    for (q, m) in admissible_pairs(6).map_err(err)? {
        if q == 2 {
            ensure(!ds_check_counts(&n, m as usize).map_err(err)?, || format!("DS at m={m}"))?;
        }
    }
    Ok(())
}

fn deligne_lusztig() -> Check {
    for q0 in [2u64, 3] {
        let fam = Family::Hermitian { q0 };
        let z = family_zeta(&fam).map_err(err)?;
        let want = BigInt::from(q0.pow(3) + 1);
        for m in 1..=2 {
            let v = extend_counts(&z, m).map_err(err)?;
            ensure(v == want, || format!("Hermitian q0={q0}, m={m}: {v}"))?;
        }
        let model = family_model(&fam).map_err(err)?.ok_or("no Hermitian model")?;
        let c = counts(&model, 2).map_err(err)?;
        ensure(c == vec![want.clone(), want.clone()], || format!("Hermitian scan {c:?}"))?;
    }
    let suz = Family::Suzuki { e: 1 };
    let z = family_zeta(&suz).map_err(err)?;
    let p = ExactPoly::from_ints(&[1, 4, 8]).pow(14);
    ensure(ExactPoly::from_bigints(z.p_coeffs()) == p, || "Suzuki P".into())?;
    for m in 1..=3 {
        let v = extend_counts(&z, m).map_err(err)?;
        ensure(v == BigInt::from(65), || format!("Suzuki N_{m} = {v}"))?;
    }
    let model = family_model(&suz).map_err(err)?.ok_or("no Suzuki model")?;
    let c = counts(&model, 2).map_err(err)?;
    ensure(c == to_big(&[65, 65]), || format!("Suzuki scan {c:?}"))?;
    let z = family_zeta(&Family::Ree { s: 1 }).map_err(err)?;
    for m in 1..=5 {
        let v = extend_counts(&z, m).map_err(err)?;
        ensure(v == BigInt::from(19684), || format!("Ree N_{m} = {v}"))?;
    }
    let scan = ree_affine_count(1, 1).map_err(err)?;
    ensure(scan == 19684, || format!("Ree scan {scan}"))?;
    for q in [3u64, 5] {
        for m in 1..=2 {
            let v = drinfeld_dl_counts(q, m).map_err(err)?;
            ensure(v == q + 1, || format!("DL q={q}, m={m}: {v}"))?;
        }
    }
    Ok(())
}

fn carlitz_example_one() -> Check {
    let f2 = field(2);
    let grp = ModulusGroup::new(&parse_poly(&f2, "t^4+t+1", 't').map_err(err)?, &[]).map_err(err)?;
    let z = zeta_numerator(&grp).map_err(err)?;
    let p = ExactPoly::from_ints(&[1, 0, -1, 0, 4])
        .mul(&ExactPoly::from_ints(&[1, 1, 3, 2, 4]).pow(2))
        .mul(&ExactPoly::from_ints(&[1, 5, 13, 25, 39, 50, 52, 40, 16]).pow(2));
    ensure(ExactPoly::from_bigints(z.p_coeffs()) == p, || format!("P = {}", z.p_string()))?;
    ensure(z.g() == 14, || format!("genus {}", z.g()))?;
    let want = to_big(&[15, 0, 0, 1, 0, 5, 30, 30, 60, 45, 210, 345, 690, 1095]);
    let via_points = places_from_points(&z.point_counts(14)).map_err(err)?;
    ensure(via_points == want, || format!("from P: {via_points:?}"))?;
    let direct = place_counts(&grp, 14).map_err(err)?;
    ensure(direct == want, || format!("place_counts: {direct:?}"))
}

fn carlitz_example_two() -> Check {
    let f2 = field(2);
    let grp = ModulusGroup::new(&parse_poly(&f2, "(t^6+t+1)^2", 't').map_err(err)?, &[]).map_err(err)?;
    let a = place_counts(&grp, 11).map_err(err)?;
    ensure(a == to_big(&[4032, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0]), || format!("a = {a:?}"))?;
    ensure(ds_criterion(&grp, 5).map_err(err)?, || "criterion false at 5".into())?;
    for k in [2, 3, 4, 5, 7, 8, 9, 10, 11] {
        ensure(zero_place_criterion(&grp, k).map_err(err)?, || format!("no guarantee at k={k}"))?;
    }
    Ok(())
}

fn drinfeld_checks() -> Check {
    let f2 = field(2);
    let rf = |s: &str| RatFunc::parse(&f2, s, 't').map_err(err);
    let t = parse_poly(&f2, "t", 't').map_err(err)?;
    for u in [["t^2", "t+1", "1/(t^2+t+1)"], ["1/t", "t^3", "t^2+1"]] {
        let u = u.iter().map(|s| rf(s)).collect::<Result<Vec<_>, _>>()?;
        let phi = drinfeld_phi(&DrinfeldAction::new(&f2, u.clone()).map_err(err)?, &t).map_err(err)?;
        let mut want = vec![RatFunc::zero(&f2); 8];
        want[0] = rf("t")?;
        want[1] = u[0].clone();
        want[3] = u[1].clone();
        want[7] = u[2].clone();
        ensure(phi.coeffs() == want.as_slice(), || format!("Phi_t = {phi}"))?;
    }
    let stable = ["t*(t^2+t+1)/(t^3+t+1)", "t*(t+1)^2/(t^3+t+1)", "1"];
    let check = |u: [&str; 3]| -> Result<bool, String> {
        let u = u.iter().map(|s| rf(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(rank3_check(&u).map_err(err)?.overall())
    };
    ensure(check(stable)?, || "stable example rejected".into())?;
    ensure(!check(["1", "1", "1"])?, || "u = (1,1,1) accepted".into())?;
    ensure(!check(["t", "t", "1"])?, || "u = (t,t,1) accepted".into())?;
    let m = parse_poly(&f2, "t^3+t+1", 't').map_err(err)?;
    let b = basechange_phi(2, 2, &m).map_err(err)?;
    let printed = XPoly::parse(&f2, "x^63+(t^16+t^4+t)*x^15+(t^8+t^5+t^2)*x^3+(t^3+t+1)").map_err(err)?;
    ensure(b.equal && b.integral && b.phi == printed, || format!("Phi = {}", b.phi))?;
    let zeros = descent_zero_places(2, 2, &m).map_err(err)?;
    ensure(zeros.contains_key(&4), || format!("descent gave {zeros:?}"))?;
    let direct = place_counts(&ModulusGroup::new(&m, &[]).map_err(err)?, 4).map_err(err)?;
    ensure(direct[3] == BigInt::from(0), || format!("a_4 over F_2 = {}", direct[3]))?;
    Ok(())
}

fn basechange_corrected() -> Check {
    let f2 = field(2);
    let m = parse_poly(&f2, "t^3+t+1", 't').map_err(err)?;
    let b = basechange_phi(2, 2, &m).map_err(err)?;
    let fixed = XPoly::parse(&f2, "x^63+(t^16+t^4+t)*x^15+(t^8+t^5+t^2+1)*x^3+(t^3+t+1)").map_err(err)?;
    ensure(b.equal && b.phi == fixed, || format!("Phi = {}", b.phi))
}

fn howe() -> Check {
    for q in [3u64, 5] {
        let h = howe_cubic(q, 2).map_err(err)?;
        ensure(h.certificate == vec![(1, 1), (3, 1)], || format!("q={q}: {:?}", h.certificate))?;
    }
    let h = howe_interpolation(3, 0).map_err(err)?;
    let (n1, n2) = (h.certificate[0].1, h.certificate[1].1);
    ensure(n1 == n2 && h.curve.genus() <= 3, || format!("N_1={n1}, N_2={n2}, g={}", h.curve.genus()))
}

fn properties() -> Check {
    mobius_round_trips(1000, 11)?;
    weil_round_trips(500, 12)?;
    enumerator_completeness_2_2()?;
    carlitz_oracle(2, 4, 6)?;
    carlitz_oracle(3, 4, 6)
}

/// Criteria whose printed reference data are inconsistent with the
/// computation, each with a check on the corrected data.
type Run = fn() -> Check;

const KNOWN: [(usize, &str, Run); 2] = [
    (
        2,
        "y^2+y=x^3+1 has N_1 = 3 over F_2; the class with N_1 = N_3 = 4 is y^2+x*y=x^3+1",
        genus_one_corrected,
    ),
    (
        9,
        "expanding (tau+t)^3+(tau+t)+1 over F_4 gives t^8+t^5+t^2+1 as the x^3 coefficient",
        basechange_corrected,
    ),
];

fn timed(run: Run) -> (Check, f64) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
    (outcome, start.elapsed().as_secs_f64())
}

fn main() -> ExitCode {
    let criteria: [(&str, Run); 11] = [
        ("admissible-pair tables", admissible_tables),
        ("genus-1 table", genus_one_table),
        ("genus-2 table", genus_two_table),
        ("elephant pipeline", elephant),
        ("non-DS genus-6 curve", genus_six),
        ("Deligne-Lusztig families", deligne_lusztig),
        ("Carlitz modulus t^4+t+1", carlitz_example_one),
        ("Carlitz modulus (t^6+t+1)^2", carlitz_example_two),
        ("Drinfeld torsion and descent", drinfeld_checks),
        ("Howe curves", howe),
        ("property suites", properties),
    ];
    let mut failed = 0;
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let (outcome, secs) = timed(*run);
        match outcome {
            Ok(()) => println!("criterion {id} ({name}): PASS [{secs:.2}s]"),
            Err(e) => {
                failed += 1;
                println!("criterion {id} ({name}): FAIL [{secs:.2}s] {e}");
                match KNOWN.iter().find(|k| k.0 == id) {
                    Some((_, why, fix)) => {
                        let (fixed, _) = timed(*fix);
                        let verdict = if fixed.is_ok() { "passes" } else { "fails" };
                        println!("    known: {why}; the corrected data {verdict}");
                    }
                    None => unexpected += 1,
                }
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
