mod common;

use std::collections::BTreeSet;

use cgv_core::algebra::{nf_reduce, Field, MPoly, NFElem, RingMatrix, UPoly, Var};
use cgv_core::baselocus::{sigma_equivariant, CirculantEntries, Stratum};
use cgv_core::divisor::{DivisorClass, IntersectionForm};
use cgv_core::genus::{
    ci_genus, distinct_points, quintuple_relation, quotient_feasibility, rh_relation, AccountingScenario, BinaryForm,
};
use cgv_core::geometry::CubicFamily;
use cgv_core::tangent::{rank_at, ChartPoint};
use common::*;
use num_rational::BigRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn nf_field_axioms(a in nf(), b in nf(), c in nf()) {
        field_axioms(&a, &b, &c)?;
    }
}

proptest! {
    #[test]
    fn nf_reduce_is_a_ring_homomorphism(f in qpoly(), g in qpoly()) {
        let red = |p: &UPoly<BigRational>| nf_reduce(p.coeffs());
        prop_assert_eq!(red(&f.mul(&g)), &red(&f) * &red(&g));
        prop_assert_eq!(red(&f.add(&g)), &red(&f) + &red(&g));
    }

    #[test]
    fn inverse_is_involutive(a in nonzero_nf()) {
        prop_assert_eq!(a.invert().unwrap().invert().unwrap(), a);
    }

    #[test]
    fn derivative_is_additive_and_obeys_leibniz(f in mpoly(), g in mpoly(), v in var()) {
        derivative_laws(&f, &g, v)?;
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(f in mpoly(), g in mpoly(), v in var(), image in mpoly()) {
        substitution_homomorphism(&f, &g, v, &image)?;
    }

    #[test]
    fn evaluation_commutes_with_products(f in mpoly(), g in mpoly(), vals in prop::array::uniform5(small_int_nf())) {
        let point: Vec<(Var, NFElem)> = Var::ALL.iter().copied().zip(vals).collect();
        let lhs = (&f * &g).eval(&point).unwrap();
        prop_assert_eq!(lhs, &f.eval(&point).unwrap() * &g.eval(&point).unwrap());
    }

    #[test]
    fn printed_polynomials_parse_back(f in mpoly()) {
        parser_round_trip(&f)?;
    }

    #[test]
    fn gcd_divides_both_and_is_monic(f in qpoly(), g in qpoly()) {
        gcd_contract(&f, &g)?;
    }

    #[test]
    fn gcd_keeps_common_factors(f in qpoly(), g in qpoly(), h in qpoly()) {
        common_factor_contract(&f, &g, &h)?;
    }

    #[test]
    fn squarefree_part_is_idempotent_and_divides(f in qpoly(), g in qpoly()) {
        squarefree_contract(&f, &g)?;
    }

    #[test]
    fn determinant_alternates_under_row_swaps(entries in prop::collection::vec(small_int_nf(), 9)) {
        let rows: Vec<Vec<NFElem>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let m = RingMatrix::from_scalars(rows).unwrap();
        let d = m.det().unwrap();
        prop_assert_eq!(m.swap_rows(0, 2).det().unwrap(), -d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn circulant_determinant_formula(a in small_int_nf(), b in small_int_nf(), c in small_int_nf(), d in small_int_nf()) {
        let e = CirculantEntries { a, b, c, d };
        prop_assert_eq!(e.cofactor_det(), e.eigenvalue_product());
    }
}

/// Product of linear forms vanishing at the given points [p : q].
fn linear_product(roots: &[(i64, i64)]) -> BinaryForm<NFElem> {
    roots
        .iter()
        .fold(BinaryForm::new(vec![NFElem::from_int(1)]), |acc, &(p, q)| {
            acc.mul(&BinaryForm::linear(NFElem::from_int(q), NFElem::from_int(-p)))
        })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn projective_key((p, q): (i64, i64)) -> (i64, i64) {
    let g = gcd(p.abs(), q.abs());
    let (p, q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

proptest! {
    #[test]
    fn distinct_points_is_scaling_and_swap_invariant(f in binary_quintic(), c in nonzero_nf()) {
        distinct_points_invariance(&f, &c)?;
    }

    #[test]
    fn distinct_points_matches_constructed_roots(
        roots in prop::collection::vec((-3i64..=3, -3i64..=3).prop_filter("point", |&(p, q)| p != 0 || q != 0), 1..=5)
    ) {
        let expected: BTreeSet<(i64, i64)> = roots.iter().copied().map(projective_key).collect();
        prop_assert_eq!(distinct_points(&linear_product(&roots)).unwrap(), expected.len());
    }

    #[test]
    fn quintuple_relation_is_homogeneous_of_degree_four(f in binary_quintic(), c in nonzero_nf()) {
        let base = quintuple_relation(&f).unwrap();
        prop_assert_eq!(quintuple_relation(&f.scale(&c)).unwrap(), &base * &c.pow(4));
    }

    #[test]
    fn ci_genus_is_symmetric(d1 in 1i64..=12, d2 in 1i64..=12) {
        prop_assert_eq!(ci_genus(d1, d2).unwrap(), ci_genus(d2, d1).unwrap());
    }

    #[test]
    fn feasibility_round_trip(p_a in 0i64..=120, fibers in 0i64..=6, half_ram in 0i64..=10) {
        let ram_deg = 2 * half_ram;
        let f = quotient_feasibility(&AccountingScenario::new(p_a, fibers, ram_deg).unwrap());
        if f.feasible() {
            let sum_delta_p = 4 * i64::try_from(f.s_q.to_integer()).unwrap();
            // the normalization double-covers a rational curve
            let p_cover = p_a - sum_delta_p;
            prop_assert_eq!(rh_relation(p_cover, 0).unwrap(), ram_deg);
        }
    }

    #[test]
    fn intersection_pairing_is_symmetric_and_bilinear(
        h in prop::array::uniform3(-5i64..=5),
        e in prop::array::uniform3(prop::array::uniform4(-5i64..=5)),
        k in -4i64..=4,
    ) {
        let form = IntersectionForm::default();
        let a = DivisorClass::new(h[0], e[0]);
        let b = DivisorClass::new(h[1], e[1]);
        let c = DivisorClass::new(h[2], e[2]);
        prop_assert_eq!(form.pair(&a, &b), form.pair(&b, &a));
        prop_assert_eq!(form.pair(&(a + b), &c), form.pair(&a, &c) + form.pair(&b, &c));
        prop_assert_eq!(form.pair(&(k * a), &c), k * form.pair(&a, &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_at_most_three(coords in prop::array::uniform3(small_int_nf()), m in small_int_nf()) {
        let p = ChartPoint::exact(Var::T, coords).unwrap();
        if let Some(rank) = rank_at(&p, &m).unwrap() {
            prop_assert!((1..=3).contains(&rank));
        }
    }

    #[test]
    fn strata_are_sigma_equivariant(mask in 0u8..16, m in prop::sample::select(vec![1i64, 2, -1, 3])) {
        let s = Stratum::from_mask(mask).unwrap();
        prop_assert!(sigma_equivariant(s, &NFElem::from_int(m)).unwrap());
    }
}

#[test]
fn cubics_satisfy_the_euler_relation() {
    for cubic in &CubicFamily::get().cubics {
        let euler = Var::COORDS
            .iter()
            .fold(MPoly::zero(), |acc, &v| &acc + &(&MPoly::var(v) * &cubic.partial(v)));
        assert_eq!(euler, cubic.scale(&NFElem::from_int(3)));
    }
}

#[test]
fn reports_are_deterministic_and_round_trip_through_json() {
    deterministic_reports(&["sigma", "divisors", "genus", "tangent", "base-locus"]).unwrap();
}

#[test]
fn field_trait_inverse_agrees_with_inherent() {
    let a = NFElem::from_ints(-4, 4, 3);
    assert_eq!(<NFElem as Field>::inv(&a).unwrap(), a.invert().unwrap());
}
