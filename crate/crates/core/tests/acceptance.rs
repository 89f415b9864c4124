//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;

use cgv_core::algebra::{nf_invert, nf_reduce, parse_poly, upoly_gcd, NFElem, QPoly, Var};
use cgv_core::baselocus::{
    classify_stratum, printed_t_matrix, quadric_coefficient_matrix, single_hyperplane_det, single_hyperplane_system,
    CirculantEntries, Stratum, StratumClass,
};
use cgv_core::divisor::{DivisorClass, IntersectionForm};
use cgv_core::genus::{
    ci_genus, distinct_points, quintuple_family, quintuple_relation, quotient_feasibility, rh_relation,
    z4_witness_search, AccountingScenario, Constraint, WitnessPencil,
};
use cgv_core::geometry::{family_permutation, fixes_pointwise, CoordMap, CubicFamily, LineSub, ProjPoint};
use cgv_core::report::{Agreement, CheckReport};
use cgv_core::suites::{run_suite, RunConfig};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn suite_check(suite: &str, id: &str) -> Result<CheckReport, String> {
    let report = run_suite(suite, &RunConfig::default()).map_err(err)?;
    report
        .find(id)
        .cloned()
        .ok_or_else(|| format!("{suite} has no check {id}"))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

/// The real root of r³ + r² − 1.
const R_REAL: f64 = 0.754_877_666_246_692_7;

fn to_f64(a: &NFElem) -> f64 {
    let c = a.coeffs();
    let f = |q: &num_rational::BigRational| q.to_f64().unwrap_or(f64::NAN);
    f(&c[0]) + f(&c[1]) * R_REAL + f(&c[2]) * R_REAL * R_REAL
}

fn criterion_1() -> Outcome {
    let p = QPoly::from_ints(&[10, -25, 11, 6, 4, -12, 9]);
    let red = nf_reduce(p.coeffs());
    ensure(red.is_zero(), || format!("remainder {red}"))
}

fn criterion_2() -> Outcome {
    let g = upoly_gcd(&QPoly::from_ints(&[10, 4, -20]), &QPoly::from_ints(&[-1, 0, 1, 1])).map_err(err)?;
    ensure(g == QPoly::from_ints(&[1]), || format!("gcd {g}"))?;
    let a = NFElem::from_ints(-4, 4, 3);
    let inv = nf_invert(&a).map_err(err)?;
    ensure(&a * &inv == NFElem::from_int(1), || format!("bad inverse {inv}"))
}

fn criterion_3() -> Outcome {
    let small = || (-6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(a, b, c)| NFElem::from_ints(a, b, c));
    runner(200)
        .run(&(small(), small(), small(), small()), |(a, b, c, d)| {
            let e = CirculantEntries { a, b, c, d };
            prop_assert_eq!(e.cofactor_det(), e.eigenvalue_product());
            Ok(())
        })
        .map_err(err)?;
    let e = CirculantEntries::from_quadrics();
    let det = e.cofactor_det();
    ensure(!det.is_zero() && det == e.eigenvalue_product(), || {
        format!("circulant determinant {det}")
    })?;
    let rank = quadric_coefficient_matrix().rank(None).rank;
    ensure(rank == 4, || format!("quadric coefficient rank {rank}"))
}

fn criterion_4() -> Outcome {
    let mut found: Vec<ProjPoint> = Vec::new();
    for s in Stratum::all() {
        let res = classify_stratum(s, None).map_err(err)?;
        match s.hyperplanes().len() {
            3 => match &res.class {
                StratumClass::ReferencePoints(p) if p.len() == 1 => found.extend(p.iter().cloned()),
                other => return Err(format!("{s}: {other:?}")),
            },
            2 => {
                // each quadric must restrict to a unit times a monomial free of m
                ensure(
                    matches!(res.class, StratumClass::ReferencePoints(_) | StratumClass::Empty),
                    || format!("{s}: {}", res.summary()),
                )?;
                ensure(res.points().iter().all(ProjPoint::is_reference), || {
                    format!("{s}: {}", res.summary())
                })?;
            }
            _ => {}
        }
    }
    let refs = ProjPoint::references();
    ensure(
        found.len() == 4 && refs.iter().all(|r| found.iter().any(|p| p.same_as(r))),
        || format!("triple strata gave {found:?}"),
    )?;
    let q3 = &CubicFamily::get().quadrics[3];
    let on_axis = q3.specialize(&[
        (Var::X, NFElem::from_int(0)),
        (Var::Y, NFElem::from_int(0)),
        (Var::T, NFElem::from_int(0)),
    ]);
    ensure(on_axis.is_zero(), || format!("Q3 on the Z axis is {on_axis}"))
}

fn criterion_5() -> Outcome {
    let sys = single_hyperplane_system(Var::T).map_err(err)?;
    ensure(sys.matrix == printed_t_matrix(), || {
        format!("matrix differs:\n{}", sys.matrix)
    })?;
    let d = single_hyperplane_det(Var::T).map_err(err)?;
    // frozen oracle: both parts reduce to exactly zero
    ensure(d.m_coefficient().is_zero(), || {
        format!("m-coefficient {}", d.m_coefficient())
    })?;
    ensure(d.m_free().is_zero(), || format!("m-free part {}", d.m_free()))?;
    // floating-point determinant of the same matrix at the real root
    for m in [1i64, 2] {
        let mut a = [[0f64; 3]; 3];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let entry = sys.matrix.get(i, j).specialize(&[(Var::M, NFElem::from_int(m))]);
                let c = entry
                    .as_constant()
                    .ok_or_else(|| format!("entry {entry} is not a scalar"))?;
                *cell = to_f64(&c);
            }
        }
        let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        ensure(det.abs() < 1e-9, || format!("numeric determinant {det} at m={m}"))?;
    }
    let claimed = parse_poly("-20*r^2+4*r+10")
        .map_err(err)?
        .as_constant()
        .ok_or("claimed value")?;
    ensure(to_f64(&claimed).abs() > 1e-3, || {
        "claimed determinant is numerically zero".into()
    })?;
    let rep = suite_check("base-locus", "base-locus.det-T.m-free")?;
    let expected = if d.m_free() == claimed {
        Agreement::Confirmed
    } else {
        Agreement::Refuted
    };
    ensure(rep.agreement == expected, || {
        format!("flag {:?}, oracle says {expected:?}", rep.agreement)
    })
}

fn criterion_6() -> Outcome {
    let sigma = CoordMap::sigma();
    ensure(sigma.order() == 4, || format!("order {}", sigma.order()))?;
    let s2 = sigma.pow(2);
    ensure(fixes_pointwise(&s2, &LineSub::r()), || "sigma^2 moves r".into())?;
    ensure(fixes_pointwise(&s2, &LineSub::r_prime()), || "sigma^2 moves r'".into())?;
    let perm = family_permutation(CubicFamily::get(), &sigma);
    let mut images: Vec<usize> = perm
        .iter()
        .map(|p| p.ok_or("not closed under sigma"))
        .collect::<Result<_, _>>()?;
    images.sort_unstable();
    ensure(images == [0, 1, 2, 3], || format!("images {perm:?}"))
}

fn criterion_7() -> Outcome {
    let form = IntersectionForm::default();
    for n in [1i64, 2, 3, 5] {
        let mult = form.exceptional_multiplicity(n).map_err(err)?;
        ensure(mult == -n, || format!("multiplicity {mult} for n={n}"))?;
        let k = form.pluricanonical(n).map_err(err)?;
        ensure(form.self_intersection(&k) == n * n, || format!("(nK)^2 for n={n}"))?;
    }
    ensure(form.self_intersection(&DivisorClass::canonical()) == 1, || {
        "K^2 != 1".into()
    })?;
    for i in 0..4 {
        let g = form.adjunction_genus(&DivisorClass::exceptional(i).map_err(err)?);
        ensure(g == num_rational::BigRational::from_integer(1.into()), || {
            format!("genus of E{i} is {g}")
        })?;
    }
    let report = run_suite("divisors", &RunConfig::default()).map_err(err)?;
    ensure(report.count(Agreement::Confirmed) == 4, || {
        "divisors suite confirmed count".into()
    })
}

fn criterion_8() -> Outcome {
    let g = ci_genus(5, 5).map_err(err)?;
    ensure(g == 76, || format!("ci_genus(5,5) = {g}"))?;
    let r = rh_relation(3, 1).map_err(err)?;
    ensure(r == 4, || format!("rh_relation(3,1) = {r}"))
}

fn criterion_9() -> Outcome {
    let four = quotient_feasibility(&AccountingScenario::new(76, 4, 4).map_err(err)?);
    ensure(
        matches!(
            four.violated,
            Some(Constraint::DivisibilityBy4 | Constraint::Integrality)
        ),
        || format!("ram 4 branch: {:?}", four.violated),
    )?;
    let rep4 = suite_check("genus", "genus.ram4.feasibility")?;
    let cite4 = rep4.paper_claim.as_ref().map(|c| c.citation.as_str());
    ensure(cite4 == Some("Since $4$ does not divide $75$"), || {
        format!("ram 4 citation {cite4:?}")
    })?;
    ensure(rep4.computed.starts_with("infeasible"), || rep4.computed.clone())?;
    let rep2 = suite_check("genus", "genus.ram2.feasibility")?;
    let cite2 = rep2.paper_claim.as_ref().map(|c| c.citation.as_str());
    ensure(cite2 == Some("We have to prove that this case does not occur"), || {
        format!("ram 2 citation {cite2:?}")
    })?;
    ensure(rep2.agreement != Agreement::Confirmed, || {
        "ram 2 branch reported as confirmed".into()
    })?;
    let all = run_suite("all", &RunConfig::default()).map_err(err)?;
    ensure(
        all.checks
            .iter()
            .filter(|c| c.check_id.starts_with("genus.ram2"))
            .all(|c| c.agreement != Agreement::Confirmed),
        || "a ram 2 check is confirmed".into(),
    )
}

fn criterion_10() -> Outcome {
    let pencil = WitnessPencil::build().map_err(err)?;
    ensure(pencil.factorization_holds(), || "factorization identity fails".into())?;
    let m = NFElem::from_int(1);
    let (point, count) = z4_witness_search(5, &m)
        .map_err(err)?
        .ok_or("no witness within bound 5")?;
    ensure(count >= 4, || format!("witness {point} has {count} points"))?;
    let replay = distinct_points(&pencil.member(&point, &m).map_err(err)?).map_err(err)?;
    ensure(replay == count, || {
        format!("replay gives {replay}, search gave {count}")
    })
}

fn criterion_11() -> Outcome {
    let rel = quintuple_relation(&quintuple_family()).map_err(err)?;
    ensure(rel.is_zero(), || format!("relation on the family: {rel}"))
}

fn criterion_12() -> Outcome {
    use common::*;
    runner(1000)
        .run(&(nf(), nf(), nf()), |(a, b, c)| field_axioms(&a, &b, &c))
        .map_err(err)?;
    runner(256)
        .run(&(mpoly(), mpoly(), var()), |(f, g, v)| derivative_laws(&f, &g, v))
        .map_err(err)?;
    runner(256)
        .run(&(mpoly(), mpoly(), var(), mpoly()), |(f, g, v, h)| {
            substitution_homomorphism(&f, &g, v, &h)
        })
        .map_err(err)?;
    runner(256)
        .run(&(qpoly(), qpoly()), |(f, g)| gcd_contract(&f, &g))
        .map_err(err)?;
    runner(256)
        .run(&(qpoly(), qpoly(), qpoly()), |(f, g, h)| {
            common_factor_contract(&f, &g, &h)
        })
        .map_err(err)?;
    runner(256)
        .run(&(qpoly(), qpoly()), |(f, g)| squarefree_contract(&f, &g))
        .map_err(err)?;
    runner(256).run(&mpoly(), |f| parser_round_trip(&f)).map_err(err)?;
    runner(256)
        .run(&(binary_quintic(), nonzero_nf()), |(f, c)| {
            distinct_points_invariance(&f, &c)
        })
        .map_err(err)?;
    deterministic_reports(&["all"])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("nf_reduce sends the degree-six vanishing polynomial to 0", criterion_1),
        ("determinant gcd is 1 and 3r^2+4r-4 is invertible", criterion_2),
        (
            "circulant determinant formula, nonsingular orbit block, quadric rank 4",
            criterion_3,
        ),
        (
            "triple strata give the four reference points; double strata are unit monomials",
            criterion_4,
        ),
        (
            "h=T matrix matches the printed one; determinant agrees with the frozen oracle",
            criterion_5,
        ),
        (
            "sigma has order 4, sigma^2 fixes r and r', sigma permutes the cubics",
            criterion_6,
        ),
        (
            "divisor multiplicities, K^2, (nK)^2 and genus of exceptional curves",
            criterion_7,
        ),
        ("ci_genus(5,5) = 76 and rh_relation(3,1) = 4", criterion_8),
        ("ram 4 infeasible by divisibility; ram 2 never confirmed", criterion_9),
        (
            "witness pencil factorization and a 4-point member within bound 5",
            criterion_10,
        ),
        (
            "quintuple relation vanishes on the (X - alpha Y)^5 family",
            criterion_11,
        ),
        ("property suites and byte-identical repeated reports", criterion_12),
    ];
    let mut failed = 0;
    for (i, (desc, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS criterion {}: {desc}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {desc} ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
