//! Carlitz torsion, ray class subfields and their place counts.

mod characters;
mod group;
mod linearized;
mod places;

pub use characters::{
    char_l_poly, cyclotomic, primitive_l_poly, zeta_numerator, Character, CharacterTable, CharacterValue,
    CycloRing, ZETA_DEGREE_LIMIT,
};
pub use group::{unit_count, ModulusGroup, GROUP_ORDER_LIMIT};
pub use linearized::{torsion_poly, LinearizedPoly, XPoly};
pub use places::{
    place_counts, prime_power_zero_range, residual_degree, splitting_at, splitting_at_infinity, splittings,
    ds_criterion, zero_place_criterion, PlaceSplitting,
};

use crate::error::Result;
use crate::gfpoly::{FieldPoly, RatFunc};

/// `[M]` for the Carlitz module `t -> t + tau`.
pub fn carlitz_action(m: &FieldPoly) -> LinearizedPoly {
    let f = m.field();
    LinearizedPoly::action(&LinearizedPoly::generator(f, &[RatFunc::one(f)]), m)
}

/// The `M`-th Carlitz cyclotomic polynomial.
pub fn carlitz_phi(m: &FieldPoly) -> Result<XPoly> {
    torsion_poly(m, carlitz_action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;
    use crate::gfpoly::{make_field, parse_poly};
    use crate::zetacore::to_big;

    fn poly(q: u64, s: &str) -> FieldPoly {
        let (p, k) = arith::prime_power(q).unwrap();
        parse_poly(&make_field(p, k).unwrap(), s, 't').unwrap()
    }

    #[test]
    fn small_actions() {
        let m = poly(2, "t^2");
        assert_eq!(carlitz_action(&m).to_string(), "x^4+(t^2+t)*x^2+t^2*x");
        assert_eq!(carlitz_phi(&m).unwrap().to_string(), "x^2+t*x+t");
    }

    #[test]
    fn linear_modulus() {
        let g = ModulusGroup::new(&poly(3, "t"), &[]).unwrap();
        assert_eq!(place_counts(&g, 1).unwrap(), to_big(&[4]));
    }

    #[test]
    fn genus_fourteen() {
        let g = ModulusGroup::new(&poly(2, "t^4+t+1"), &[]).unwrap();
        let z = zeta_numerator(&g).unwrap();
        assert_eq!(z.g(), 14);
        let a = place_counts(&g, 14).unwrap();
        assert_eq!(a, to_big(&[15, 0, 0, 1, 0, 5, 30, 30, 60, 45, 210, 345, 690, 1095]));
        assert_eq!(z.place_counts(14).unwrap(), a);
    }

    #[test]
    fn twelve_degree_square() {
        let g = ModulusGroup::new(&poly(2, "(t^6+t+1)^2"), &[]).unwrap();
        let a = place_counts(&g, 11).unwrap();
        assert_eq!(a, to_big(&[4032, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0]));
        assert!(ds_criterion(&g, 5).unwrap());
        for k in [2, 3, 4, 5, 7, 8, 9, 10, 11] {
            assert!(zero_place_criterion(&g, k).unwrap());
        }
    }
}
