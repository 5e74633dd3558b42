use std::fmt;

use num_rational::Ratio;

use super::{drinfeld_phi, DrinfeldAction};
use crate::error::{Error, Result};
use crate::gfpoly::{ddf_degrees, parse_poly, Elem, FieldDesc, FieldPoly, RatFunc};

/// A degree-one place `t`, `t+1`, the place `t^2+t+1` or infinity of `F_q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditPlace {
    Finite(FieldPoly),
    Infinity,
}

impl fmt::Display for AuditPlace {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditPlace::Finite(p) => write!(out, "{p}"),
            AuditPlace::Infinity => write!(out, "1/t"),
        }
    }
}

impl AuditPlace {
    pub fn degree(&self) -> usize {
        match self {
            AuditPlace::Finite(p) => p.deg() as usize,
            AuditPlace::Infinity => 1,
        }
    }

    /// Valuation; `None` for zero.
    pub fn ord(&self, r: &RatFunc) -> Option<i64> {
        if r.is_zero() {
            return None;
        }
        Some(match self {
            AuditPlace::Finite(p) => r.num().valuation(p) as i64 - r.den().valuation(p) as i64,
            AuditPlace::Infinity => r.den().deg() - r.num().deg(),
        })
    }

    fn residue_field(&self, base: &FieldDesc) -> Result<FieldDesc> {
        match self {
            AuditPlace::Finite(p) if p.deg() > 1 => {
                let mut modulus = p.monic().coeffs().to_vec();
                modulus.resize(p.coeffs().len(), 0);
                FieldDesc::with_modulus(base.p(), modulus)
            }
            _ => Ok(base.clone()),
        }
    }

    /// Residue of `r * pi^(-v)` where `v = ord(r)`.
    fn leading_residue(&self, r: &RatFunc, res: &FieldDesc) -> Elem {
        let f = r.field();
        let v = self.ord(r).expect("nonzero");
        match self {
            AuditPlace::Finite(p) => {
                let pv = RatFunc::from_poly(p.pow(v.unsigned_abs()));
                let u = if v >= 0 { r.div(&pv).unwrap() } else { r.mul(&pv) };
                let red = u.reduce_mod(p).expect("unit at the place");
                if p.deg() > 1 {
                    res.from_digits(red.coeffs())
                } else {
                    red.coeff(0)
                }
            }
            AuditPlace::Infinity => f.div(r.num().lead(), r.den().lead()),
        }
    }
}

/// One edge of a lower convex hull, from `x = start` to `x = end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub slope: Ratio<i64>,
}

/// Lower convex hull of `(i, ord(c_i))` over the nonzero coefficients.
pub fn newton_polygon(points: &[(usize, i64)]) -> Vec<Segment> {
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as i64 - a.0 as i64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .map(|w| Segment {
            start: w[0].0,
            end: w[1].0,
            slope: Ratio::new(w[1].1 - w[0].1, (w[1].0 - w[0].0) as i64),
        })
        .collect()
}

/// Per-segment data of [`place_audit_rank3`].
#[derive(Clone, Debug)]
pub struct SegmentAudit {
    pub segment: Segment,
    pub residual: FieldPoly,
    /// `{residue degree: count}` of the places above, when the residual is squarefree.
    pub profile: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug)]
pub struct PlaceAudit {
    pub place: AuditPlace,
    pub segments: Vec<SegmentAudit>,
    /// Places of degree one and two above this place; `None` when inconclusive.
    pub degree_one: Option<usize>,
    pub degree_two: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Rank3Audit {
    pub places: Vec<PlaceAudit>,
    /// Degree-two places over all audited places; `None` when any is inconclusive.
    pub new_places: Option<usize>,
}

fn audit_place(phi: &[RatFunc], place: AuditPlace) -> Result<PlaceAudit> {
    let base = phi[phi.len() - 1].field().clone();
    let res = place.residue_field(&base)?;
    let pts: Vec<(usize, i64)> = phi
        .iter()
        .enumerate()
        .filter_map(|(i, c)| place.ord(c).map(|v| (i, v)))
        .collect();
    let b = place.degree();
    let mut segments = Vec::new();
    let (mut one, mut two) = (Some(0usize), Some(0usize));
    for seg in newton_polygon(&pts) {
        let e = *seg.slope.denom() as usize;
        let v0 = pts.iter().find(|p| p.0 == seg.start).unwrap().1;
        let mut coeffs = vec![0; (seg.end - seg.start) / e + 1];
        for (j, slot) in coeffs.iter_mut().enumerate() {
            let i = seg.start + j * e;
            if let Some(&(_, v)) = pts.iter().find(|p| p.0 == i) {
                if Ratio::from_integer(v - v0) == seg.slope * Ratio::from_integer((i - seg.start) as i64) {
                    *slot = place.leading_residue(&phi[i], &res);
                }
            }
        }
        let r = FieldPoly::new(&res, coeffs);
        let profile = if r.is_squarefree() {
            let prof: Vec<(usize, usize)> = ddf_degrees(&r)?.into_iter().collect();
            for &(d, c) in &prof {
                if b * d == 1 {
                    one = one.map(|n| n + c);
                }
                if b * d == 2 {
                    two = two.map(|n| n + c);
                }
            }
            Some(prof)
        } else {
            let y = FieldPoly::x(&res);
            let q = res.q() as u128;
            if b == 1 && !y.powmod(q, &r).sub(&y).gcd(&r).is_one() {
                one = None;
            }
            if b <= 2 && !y.powmod(q.pow((2 / b) as u32), &r).sub(&y).gcd(&r).is_one() {
                two = None;
            }
            None
        };
        segments.push(SegmentAudit {
            segment: seg,
            residual: r,
            profile,
        });
    }
    Ok(PlaceAudit {
        place,
        segments,
        degree_one: one,
        degree_two: two,
    })
}

fn rank3_phi(u: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let f = u[0].field();
    if f.q() != 2 || u.len() != 3 {
        return Err(Error::Precondition("rank-3 checks need three coefficients over F_2(t)".into()));
    }
    let d = DrinfeldAction::new(f, u.to_vec())?;
    let phi = drinfeld_phi(&d, &FieldPoly::x(f))?;
    Ok(phi.coeffs().to_vec())
}

fn audit_places(f: &FieldDesc) -> Vec<AuditPlace> {
    ["t", "t+1", "t^2+t+1"]
        .iter()
        .map(|s| AuditPlace::Finite(parse_poly(f, s, 't').unwrap()))
        .chain([AuditPlace::Infinity])
        .collect()
}

/// Newton polygons and residual factorizations of `Phi_t` at `t`, `t+1`,
/// `t^2+t+1` and infinity, with the places of degree one and two above them.
pub fn place_audit_rank3(u: &[RatFunc]) -> Result<Rank3Audit> {
    let phi = rank3_phi(u)?;
    let places = audit_places(u[0].field())
        .into_iter()
        .map(|p| audit_place(&phi, p))
        .collect::<Result<Vec<_>>>()?;
    let new_places = places.iter().map(|p| p.degree_two).sum();
    Ok(Rank3Audit { places, new_places })
}

/// Hypotheses of the rank-3 stability criterion for `F_4/F_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank3Verdict {
    pub ord_t_u3_zero: bool,
    pub ord_t_u2_positive: bool,
    pub ord_t_u1_positive: bool,
    pub integral_at_infinity: bool,
    pub integral_at_t_plus_1: bool,
    pub integral_at_t2_t_1: bool,
    pub no_root_in_f4_mod_t2_t_1: bool,
    pub no_quadratic_factor_mod_t_plus_1: bool,
}

impl Rank3Verdict {
    pub fn conditions(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("ord_t(u3) = 0", self.ord_t_u3_zero),
            ("ord_t(u2) >= 1", self.ord_t_u2_positive),
            ("ord_t(u1) >= 1", self.ord_t_u1_positive),
            ("integral at 1/t", self.integral_at_infinity),
            ("integral at t+1", self.integral_at_t_plus_1),
            ("integral at t^2+t+1", self.integral_at_t2_t_1),
            ("gcd(x^4+x, Phi mod t^2+t+1) = 1", self.no_root_in_f4_mod_t2_t_1),
            ("x^2+x+1 does not divide Phi mod t+1", self.no_quadratic_factor_mod_t_plus_1),
        ]
    }

    pub fn overall(&self) -> bool {
        self.conditions().iter().all(|c| c.1)
    }
}

pub fn rank3_check(u: &[RatFunc]) -> Result<Rank3Verdict> {
    let phi = rank3_phi(u)?;
    let f = u[0].field();
    let places = audit_places(f);
    let integral = |p: &AuditPlace| u.iter().all(|c| p.ord(c).is_none_or(|v| v >= 0));
    let ord_t = |c: &RatFunc| places[0].ord(c);
    let reduce = |p: &AuditPlace| -> Result<Option<FieldPoly>> {
        let AuditPlace::Finite(pi) = p else { unreachable!() };
        let res = p.residue_field(f)?;
        let mut out = Vec::new();
        for c in &phi {
            let Some(r) = c.reduce_mod(pi) else { return Ok(None) };
            out.push(res.from_digits(r.coeffs()));
        }
        Ok(Some(FieldPoly::new(&res, out)))
    };
    let (t1, t2) = (&places[1], &places[2]);
    let integral_t2 = integral(t2);
    let no_root = integral_t2
        && match reduce(t2)? {
            Some(r) if !r.is_zero() => {
                let x = FieldPoly::x(r.field());
                x.pow(4).sub(&x).gcd(&r).is_one()
            }
            _ => false,
        };
    let integral_t1 = integral(t1);
    let no_quad = integral_t1
        && match reduce(t1)? {
            Some(r) if !r.is_zero() => !parse_poly(f, "t^2+t+1", 't')?.divides(&r),
            _ => false,
        };
    Ok(Rank3Verdict {
        ord_t_u3_zero: ord_t(&u[2]) == Some(0),
        ord_t_u2_positive: ord_t(&u[1]).is_none_or(|v| v >= 1),
        ord_t_u1_positive: ord_t(&u[0]).is_none_or(|v| v >= 1),
        integral_at_infinity: integral(&places[3]),
        integral_at_t_plus_1: integral_t1,
        integral_at_t2_t_1: integral_t2,
        no_root_in_f4_mod_t2_t_1: no_root,
        no_quadratic_factor_mod_t_plus_1: no_quad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::make_field;

    fn us(s: [&str; 3]) -> Vec<RatFunc> {
        let f = make_field(2, 1).unwrap();
        s.iter().map(|x| RatFunc::parse(&f, x, 't').unwrap()).collect()
    }

    #[test]
    fn hull() {
        let segs = newton_polygon(&[(0, 1), (1, 1), (3, 2), (7, 0)]);
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].slope, Ratio::new(-1, 7));
    }

    #[test]
    fn stable_example() {
        let u = us(["t*(t^2+t+1)/(t^3+t+1)", "t*(t+1)^2/(t^3+t+1)", "1"]);
        assert!(rank3_check(&u).unwrap().overall());
        let audit = place_audit_rank3(&u).unwrap();
        assert_eq!(audit.new_places, Some(0));
    }

    #[test]
    fn mutations_fail() {
        let v = rank3_check(&us(["1", "1", "1"])).unwrap();
        assert!(!v.ord_t_u2_positive && !v.overall());
        let v = rank3_check(&us(["t", "t", "1"])).unwrap();
        assert!(!v.no_quadratic_factor_mod_t_plus_1 && !v.overall());
    }
}
