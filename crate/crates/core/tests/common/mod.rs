//! Strategies and property bodies shared by the property and acceptance
//! targets.
#![allow(dead_code)]

use cgv_core::algebra::{parse_poly, squarefree_part, upoly_gcd, MPoly, Monomial, NFElem, Ring, UPoly, Var};
use cgv_core::genus::{distinct_points, BinaryForm};
use cgv_core::suites::{run_suite, RunConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type PropResult = std::result::Result<(), TestCaseError>;

pub fn small_rat() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn nf() -> impl Strategy<Value = NFElem> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c)| NFElem::new(a, b, c))
}

pub fn nonzero_nf() -> impl Strategy<Value = NFElem> {
    nf().prop_filter("nonzero", |a| !a.is_zero())
}

pub fn small_int_nf() -> impl Strategy<Value = NFElem> {
    (-4i64..=4, -4i64..=4, -4i64..=4).prop_map(|(a, b, c)| NFElem::from_ints(a, b, c))
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::array::uniform5(0u32..=2).prop_map(Monomial)
}

pub fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((monomial(), small_int_nf()), 0..5).prop_map(MPoly::from_terms)
}

pub fn qpoly() -> impl Strategy<Value = UPoly<BigRational>> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| UPoly::from_ints(&c))
}

pub fn var() -> impl Strategy<Value = Var> {
    prop::sample::select(Var::ALL.to_vec())
}

pub fn binary_quintic() -> impl Strategy<Value = BinaryForm<NFElem>> {
    prop::collection::vec(small_int_nf(), 6)
        .prop_map(BinaryForm::new)
        .prop_filter("nonzero", |f| !f.is_zero())
}

pub fn field_axioms(a: &NFElem, b: &NFElem, c: &NFElem) -> PropResult {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(&(a + &NFElem::from_int(0)), a);
    prop_assert_eq!(&(a * &NFElem::from_int(1)), a);
    prop_assert!((a + &(-a)).is_zero());
    if !a.is_zero() {
        let inv = a.invert().unwrap();
        prop_assert_eq!(a * &inv, NFElem::from_int(1));
    }
    Ok(())
}

pub fn derivative_laws(f: &MPoly, g: &MPoly, v: Var) -> PropResult {
    prop_assert_eq!((f + g).partial(v), &f.partial(v) + &g.partial(v));
    prop_assert_eq!((f * g).partial(v), &(&f.partial(v) * g) + &(f * &g.partial(v)));
    Ok(())
}

pub fn substitution_homomorphism(f: &MPoly, g: &MPoly, v: Var, image: &MPoly) -> PropResult {
    let assignment = [(v, image.clone())];
    let s = |p: &MPoly| p.substitute_map(&assignment);
    prop_assert_eq!(s(&(f * g)), &s(f) * &s(g));
    prop_assert_eq!(s(&(f + g)), &s(f) + &s(g));
    Ok(())
}

pub fn parser_round_trip(f: &MPoly) -> PropResult {
    prop_assert_eq!(&parse_poly(&f.to_string()).unwrap(), f);
    Ok(())
}

pub fn gcd_contract(f: &UPoly<BigRational>, g: &UPoly<BigRational>) -> PropResult {
    if f.is_zero() && g.is_zero() {
        return Ok(());
    }
    let d = upoly_gcd(f, g).unwrap();
    prop_assert_eq!(d.leading().cloned(), Some(<BigRational as Ring>::one()));
    prop_assert!(f.div_rem(&d).unwrap().1.is_zero());
    prop_assert!(g.div_rem(&d).unwrap().1.is_zero());
    Ok(())
}

pub fn common_factor_contract(f: &UPoly<BigRational>, g: &UPoly<BigRational>, h: &UPoly<BigRational>) -> PropResult {
    if h.is_zero() || f.is_zero() || g.is_zero() {
        return Ok(());
    }
    let d = upoly_gcd(&f.mul(h), &g.mul(h)).unwrap();
    prop_assert!(d.div_rem(&h.monic()).unwrap().1.is_zero());
    Ok(())
}

pub fn squarefree_contract(f: &UPoly<BigRational>, g: &UPoly<BigRational>) -> PropResult {
    if f.is_zero() || g.is_zero() {
        return Ok(());
    }
    let p = f.mul(f).mul(g);
    let s = squarefree_part(&p).unwrap();
    // divides p, and equals its own squarefree part
    prop_assert!(p.div_rem(&s).unwrap().1.is_zero());
    prop_assert_eq!(squarefree_part(&s).unwrap(), s.clone());
    // no root of f is lost
    prop_assert_eq!(squarefree_part(&f.mul(&s)).unwrap(), s);
    Ok(())
}

pub fn distinct_points_invariance(f: &BinaryForm<NFElem>, c: &NFElem) -> PropResult {
    let n = distinct_points(f).unwrap();
    prop_assert_eq!(distinct_points(&f.scale(c)).unwrap(), n);
    prop_assert_eq!(distinct_points(&f.swap()).unwrap(), n);
    Ok(())
}

/// Runs each suite twice with the same configuration and requires
/// byte-identical text and JSON, plus a lossless JSON round trip.
pub fn deterministic_reports(suites: &[&str]) -> std::result::Result<(), String> {
    let cfg = RunConfig::default();
    for &suite in suites {
        let first = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
        let second = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
        if first.to_json() != second.to_json() || first.to_text() != second.to_text() {
            return Err(format!("{suite}: repeated runs differ"));
        }
        let parsed = cgv_core::report::SuiteReport::from_json(&first.to_json()).map_err(|e| e.to_string())?;
        if parsed != first {
            return Err(format!("{suite}: JSON round trip changed the report"));
        }
    }
    Ok(())
}
