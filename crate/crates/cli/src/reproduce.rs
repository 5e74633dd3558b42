use num_bigint::BigInt;
use serde_json::{json, Value};

use dstab::carlitz::{ds_criterion, place_counts, zero_place_criterion, zeta_numerator, ModulusGroup, XPoly};
use dstab::curvelab::{counts, drinfeld_dl_counts, family_zeta, howe_cubic, CurveModel, Family};
use dstab::drinfeld::{basechange_phi, rank3_check, place_audit_rank3};
use dstab::enumerator::{enumerate, Constraints};
use dstab::gfpoly::{make_field, parse_poly, RatFunc};
use dstab::zetacore::{
    admissible_pairs, ds_check_counts, extend_counts, frobenius_from_counts, places_from_points, points_from_places,
    real_weil_from_frobenius, to_big, ExactPoly,
};

use crate::report::{int, ints, Report};
use crate::Failure;

pub const TARGETS: [&str; 19] = [
    "admissible-g1",
    "admissible-g2",
    "admissible-g3",
    "admissible-g4",
    "admissible-g5",
    "genus1-table",
    "genus2-table",
    "elephant",
    "nonds-genus6",
    "hermitian",
    "suzuki",
    "ree",
    "drinfeld-dl",
    "carlitz-ex1",
    "carlitz-ex2",
    "basechange",
    "rank3-footnote",
    "howe-cubic",
    "all",
];

struct Outcome {
    pass: bool,
    expected: Value,
    computed: Value,
}

type Res = Result<Outcome, Failure>;

fn outcome(expected: Value, computed: Value) -> Outcome {
    Outcome {
        pass: expected == computed,
        expected,
        computed,
    }
}

fn admissible(g: usize) -> Res {
    let want: &[(u64, &[u32])] = match g {
        1 => &[(2, &[2, 3]), (3, &[2]), (4, &[2])],
        2 => &[(2, &[2, 3, 4]), (3, &[2, 3]), (4, &[2]), (5, &[2])],
        3 => &[(2, &[2, 3, 4, 5]), (3, &[2, 3]), (4, &[2, 3]), (5, &[2]), (7, &[2]), (8, &[2]), (9, &[2])],
        4 => &[(2, &[2, 3, 4, 5, 6]), (3, &[2, 3, 4]), (4, &[2, 3]), (5, &[2]), (7, &[2]), (8, &[2]), (9, &[2]), (11, &[2])],
        _ => &[
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
    };
    let pairs = |v: Vec<(u64, u32)>| json!(v.into_iter().map(|(q, m)| json!([q, m])).collect::<Vec<_>>());
    let expected = pairs(want.iter().flat_map(|(q, ms)| ms.iter().map(|m| (*q, *m))).collect());
    Ok(outcome(expected, pairs(admissible_pairs(g)?)))
}

fn table(rows: &[(u64, u32, &str, u64)]) -> Res {
    let mut expected = vec![];
    let mut computed = vec![];
    for &(q, m, eq, n) in rows {
        let c = counts(&CurveModel::parse(&format!("hyp q={q} {eq}"))?, m as usize)?;
        let ds = ds_check_counts(&c, m as usize)?;
        expected.push(json!({"curve": eq, "q": q, "m": m, "N1": n, "Nm": n, "ds": true}));
        computed.push(json!({"curve": eq, "q": q, "m": m, "N1": int(&c[0]),
            "Nm": int(&c[m as usize - 1]), "ds": ds}));
    }
    Ok(outcome(json!(expected), json!(computed)))
}

fn genus_one() -> Res {
    table(&[
        (2, 2, "y^2+y=x^3+x", 5),
        (2, 3, "y^2+y=x^3+1", 4),
        (2, 3, "y^2+y=x^3+x", 5),
        (3, 2, "y^2=x^3+2*x+1", 7),
        (4, 2, "y^2+y=x^3", 9),
    ])
}

fn genus_two() -> Res {
    table(&[
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
    ])
}

fn elephant() -> Res {
    let n = points_from_places(&to_big(&[9, 0, 0, 2, 0]));
    let z = frobenius_from_counts(2, 5, &n)?;
    let h = real_weil_from_frobenius(&z)?;
    let c = Constraints {
        a1: Some(BigInt::from(9)),
        ..Default::default()
    };
    let found = enumerate(2, 5, &c, 1)?.candidates.into_iter().find(|c| c.a == to_big(&[9, 0, 0, 2, 0]));
    let expected = json!({
        "candidate": [9, 0, 0, 2, 0],
        "N": [9, 9, 9, 17, 9],
        "h": "x^5+6*x^4+10*x^3-8*x",
        "P": "32*t^10+96*t^9+160*t^8+192*t^7+184*t^6+144*t^5+92*t^4+48*t^3+20*t^2+6*t+1",
    });
    let computed = json!({
        "candidate": found.map(|c| ints(&c.a)),
        "N": ints(&n),
        "h": h.to_string_var('x'),
        "P": z.p_string(),
    });
    Ok(outcome(expected, computed))
}

fn nonds_genus6() -> Res {
    let c = CurveModel::parse("hyp q=2 y^2+(x^6+x^5+x^4+x^3+x^2+x+1)*y=x^13+x^5+x+1")?;
    let n = counts(&c, 16)?;
    let a = places_from_points(&n)?;
    let mut ds = vec![];
    let mut none = vec![];
    for (q, m) in admissible_pairs(6)? {
        if q == 2 {
            ds.push(json!([m, ds_check_counts(&n, m as usize)?]));
            none.push(json!([m, false]));
        }
    }
    let expected = json!({
        "N": [3, 5, 9, 17, 33, 11, 129, 257, 513, 1025, 2049, 4379, 8193, 16385, 32769, 65537],
        "a": [3, 1, 2, 3, 6, 0, 18, 30, 56, 99, 186, 363, 630, 1161, 2182, 4080],
        "ds": none,
    });
    Ok(outcome(expected, json!({"N": ints(&n), "a": ints(&a), "ds": ds})))
}

fn family_counts(fam: Family, ms: usize, want: u64) -> Res {
    let z = family_zeta(&fam)?;
    let n = (1..=ms).map(|m| extend_counts(&z, m)).collect::<dstab::Result<Vec<_>>>()?;
    Ok(outcome(json!({fam.to_string(): vec![want; ms]}), json!({fam.to_string(): ints(&n)})))
}

fn combine(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        pass: parts.iter().all(|o| o.pass),
        expected: json!(parts.iter().map(|o| o.expected.clone()).collect::<Vec<_>>()),
        computed: json!(parts.iter().map(|o| o.computed.clone()).collect::<Vec<_>>()),
    }
}

fn hermitian() -> Res {
    Ok(combine(vec![
        family_counts(Family::Hermitian { q0: 2 }, 2, 9)?,
        family_counts(Family::Hermitian { q0: 3 }, 2, 28)?,
    ]))
}

fn suzuki() -> Res {
    let z = family_zeta(&Family::Suzuki { e: 1 })?;
    let p = ExactPoly::from_ints(&[1, 4, 8]).pow(14);
    let mut o = family_counts(Family::Suzuki { e: 1 }, 3, 65)?;
    o.pass &= ExactPoly::from_bigints(z.p_coeffs()) == p;
    Ok(o)
}

fn drinfeld_dl() -> Res {
    let mut expected = vec![];
    let mut computed = vec![];
    for q in [3u64, 5] {
        let n = (1..=2).map(|m| drinfeld_dl_counts(q, m)).collect::<dstab::Result<Vec<_>>>()?;
        expected.push(json!({"q": q, "N": [q + 1, q + 1]}));
        computed.push(json!({"q": q, "N": n}));
    }
    Ok(outcome(json!(expected), json!(computed)))
}

fn carlitz_ex1() -> Res {
    let f2 = make_field(2, 1)?;
    let grp = ModulusGroup::new(&parse_poly(&f2, "t^4+t+1", 't')?, &[])?;
    let z = zeta_numerator(&grp)?;
    let p = ExactPoly::from_ints(&[1, 0, -1, 0, 4])
        .mul(&ExactPoly::from_ints(&[1, 1, 3, 2, 4]).pow(2))
        .mul(&ExactPoly::from_ints(&[1, 5, 13, 25, 39, 50, 52, 40, 16]).pow(2));
    let expected = json!({
        "genus": 14,
        "P": ints(&p.integer_coeffs()?),
        "a": [15, 0, 0, 1, 0, 5, 30, 30, 60, 45, 210, 345, 690, 1095],
    });
    let computed = json!({"genus": z.g(), "P": ints(z.p_coeffs()), "a": ints(&place_counts(&grp, 14)?)});
    Ok(outcome(expected, computed))
}

fn carlitz_ex2() -> Res {
    let f2 = make_field(2, 1)?;
    let grp = ModulusGroup::new(&parse_poly(&f2, "(t^6+t+1)^2", 't')?, &[])?;
    let a = place_counts(&grp, 11)?;
    let mut zero = vec![];
    for k in [2, 3, 4, 5, 7, 8, 9, 10, 11] {
        zero.push(json!([k, zero_place_criterion(&grp, k)?]));
    }
    let all_zero: Vec<Value> = [2, 3, 4, 5, 7, 8, 9, 10, 11].iter().map(|k| json!([k, true])).collect();
    let expected = json!({
        "a": [4032, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        "criterion_at_5": true,
        "zero_places": all_zero,
    });
    let computed = json!({"a": ints(&a), "criterion_at_5": ds_criterion(&grp, 5)?, "zero_places": zero});
    Ok(outcome(expected, computed))
}

fn basechange() -> Res {
    let f2 = make_field(2, 1)?;
    let m = parse_poly(&f2, "t^3+t+1", 't')?;
    let b = basechange_phi(2, 2, &m)?;
    let printed = XPoly::parse(&f2, "x^63+(t^16+t^4+t)*x^15+(t^8+t^5+t^2)*x^3+(t^3+t+1)")?;
    let expected = json!({"phi": printed.to_string(), "equal": true, "integral": true});
    Ok(outcome(expected, json!({"phi": b.phi.to_string(), "equal": b.equal, "integral": b.integral})))
}

fn rank3_stable() -> Res {
    let f2 = make_field(2, 1)?;
    let u = ["t*(t^2+t+1)/(t^3+t+1)", "t*(t+1)^2/(t^3+t+1)", "1"]
        .iter()
        .map(|s| RatFunc::parse(&f2, s, 't'))
        .collect::<dstab::Result<Vec<_>>>()?;
    let v = rank3_check(&u)?;
    let a = place_audit_rank3(&u)?;
    let computed = json!({"verdict": v.overall(), "new_degree_two_places": a.new_places});
    Ok(outcome(json!({"verdict": true, "new_degree_two_places": 0}), computed))
}

fn howe_target() -> Res {
    let mut expected = vec![];
    let mut computed = vec![];
    for q in [3u64, 5] {
        let h = howe_cubic(q, 2)?;
        expected.push(json!({"q": q, "certificate": [[1, 1], [3, 1]]}));
        let cert: Vec<Value> = h.certificate.iter().map(|(m, n)| json!([m, n])).collect();
        computed.push(json!({"q": q, "certificate": cert}));
    }
    Ok(outcome(json!(expected), json!(computed)))
}

fn note(target: &str) -> Option<&'static str> {
    match target {
        "genus1-table" => Some("y^2+y=x^3+1 has N_1 = 3 over F_2; y^2+x*y=x^3+1 has N_1 = N_3 = 4"),
        "basechange" => Some("direct expansion gives t^8+t^5+t^2+1 as the x^3 coefficient"),
        _ => None,
    }
}

fn one(target: &str) -> Res {
    match target {
        "admissible-g1" => admissible(1),
        "admissible-g2" => admissible(2),
        "admissible-g3" => admissible(3),
        "admissible-g4" => admissible(4),
        "admissible-g5" => admissible(5),
        "genus1-table" => genus_one(),
        "genus2-table" => genus_two(),
        "elephant" => elephant(),
        "nonds-genus6" => nonds_genus6(),
        "hermitian" => hermitian(),
        "suzuki" => suzuki(),
        "ree" => family_counts(Family::Ree { s: 1 }, 5, 19684),
        "drinfeld-dl" => drinfeld_dl(),
        "carlitz-ex1" => carlitz_ex1(),
        "carlitz-ex2" => carlitz_ex2(),
        "basechange" => basechange(),
        "rank3-footnote" => rank3_stable(),
        "howe-cubic" => howe_target(),
        other => Err(Failure::Usage(format!("unknown target '{other}'"))),
    }
}

pub fn run(targets: &[String]) -> Result<Report, Failure> {
    let mut list: Vec<&str> = vec![];
    for t in targets {
        if t == "all" {
            list.extend(TARGETS.iter().filter(|s| **s != "all"));
        } else if TARGETS.contains(&t.as_str()) {
            list.push(t);
        } else {
            return Err(Failure::Usage(format!(
                "unknown target '{t}'; expected one of {}",
                TARGETS.join(", ")
            )));
        }
    }
    let mut results = vec![];
    let mut pass = true;
    for t in list {
        let o = one(t)?;
        pass &= o.pass;
        let mut row = json!({"target": t, "pass": o.pass, "expected": o.expected, "computed": o.computed});
        if let (false, Some(n)) = (o.pass, note(t)) {
            row["note"] = json!(n);
        }
        results.push(row);
    }
    let mut r = Report::new("reproduce");
    r.input("targets", targets.to_vec());
    r.output("pass", pass).output("results", results);
    Ok(r)
}
