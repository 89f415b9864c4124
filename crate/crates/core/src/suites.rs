//! Named check suites and the run configuration shared by the command line.

use std::time::Instant;

use crate::algebra::{parse_poly, MPoly, NFElem, Var};
use crate::baselocus;
use crate::divisor::{self, IntersectionForm};
use crate::error::{Error, Result};
use crate::genus;
use crate::geometry::{family_permutation, fixed_line_check, CoordMap, CubicFamily, LineSub, BRACKET_NOTE};
use crate::report::{CheckReport, ConfigEcho, SuiteReport};
use crate::tangent;

pub const SUITES: [&str; 8] = [
    "sigma",
    "cubics",
    "base-locus",
    "quadric-independence",
    "tangent",
    "divisors",
    "genus",
    "pencil",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Expression for m; checks that need a value fall back to m = 1.
    pub m: Option<String>,
    pub seed: u64,
    pub survey: usize,
    pub bound: i64,
    /// Fill `elapsed` with wall-clock times; off for reproducible reports.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m: None,
            seed: 1,
            survey: 100,
            bound: 5,
            timings: false,
        }
    }
}

impl RunConfig {
    /// The specialized value of m, or `None` when m stays symbolic.
    pub fn m_value(&self) -> Result<Option<NFElem>> {
        let Some(text) = &self.m else { return Ok(None) };
        let p = parse_poly(text)?;
        p.as_constant()
            .map(Some)
            .ok_or_else(|| Error::InvalidInput(format!("m must be a constant in Q(r), got {p}")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.survey < 1 {
            return Err(Error::InvalidInput("survey size must be at least 1".into()));
        }
        if self.bound < 1 {
            return Err(Error::InvalidInput("witness bound must be at least 1".into()));
        }
        self.m_value().map(|_| ())
    }

    fn echo(&self) -> Result<ConfigEcho> {
        Ok(ConfigEcho {
            m: self.m_value()?.map(|v| v.to_string()),
            seed: self.seed.to_string(),
            survey: self.survey.to_string(),
            bound: self.bound.to_string(),
        })
    }
}

/// Parses and prints an expression canonically.
pub fn eval_expr(text: &str) -> Result<String> {
    let p = parse_poly(text)?;
    Ok(match p.as_constant() {
        Some(c) => c.to_string(),
        None => p.to_string(),
    })
}

type Component = Box<dyn Fn() -> Result<Vec<CheckReport>>>;

fn sigma_checks() -> Result<Vec<CheckReport>> {
    let s = CoordMap::sigma();
    let s2 = s.pow(2);
    let fam = CubicFamily::get();
    let perm = family_permutation(fam, &s);
    let perm_text: Vec<String> = perm
        .iter()
        .enumerate()
        .map(|(i, j)| match j {
            Some(j) => format!("C{i}∘σ = C{j}"),
            None => format!("C{i}∘σ not in the family"),
        })
        .collect();
    Ok(vec![
        CheckReport::compare(
            "sigma.order",
            s.order().to_string(),
            "4",
            "Please note that it is of order $4$",
        )
        .with_note("sigma(X,Y,Z,T) = (T,X,Y,Z); -identity counts as identity on P^3"),
        CheckReport::compare(
            "sigma.sigma2-order",
            s2.order().to_string(),
            "2",
            "therefore $\\sigma^2$ is an involution",
        ),
        fixed_line_check(&s2, "sigma2", &LineSub::r()),
        fixed_line_check(&s2, "sigma2", &LineSub::r_prime()),
        fixed_line_check(&s, "sigma", &LineSub::r()),
        CheckReport::observe(
            "sigma.cubic-permutation",
            if perm.iter().all(Option::is_some) {
                "permutes C0..C3"
            } else {
                "does not permute C0..C3"
            },
        )
        .with_note(perm_text.join(", ")),
    ])
}

const T0_EQUATIONS: [(usize, &str); 3] = [
    (1, "X*Y+m*Z*X+(r+1)*Y*Z"),
    (2, "(3*r-2)*(Z*Y+r^2*X*Y)+(-6*r^2+2*r+2)*X*Z"),
    (3, "(3*r-2)*(m*X*Z+r^2*Y*Z)+(-2*r^2-5*r+5)*X*Y"),
];

fn cubic_checks() -> Result<Vec<CheckReport>> {
    let fam = CubicFamily::get();
    let mut out = Vec::new();
    let cof: Vec<String> = fam.cofactors.iter().map(|v| v.to_string()).collect();
    let terms: Vec<String> = fam.cubics.iter().map(|c| c.len().to_string()).collect();
    out.push(
        CheckReport::observe("cubics.cofactors", cof.join(", "))
            .with_note(BRACKET_NOTE)
            .with_note(format!("terms per cubic: {}", terms.join(", "))),
    );
    for i in 0..4 {
        out.push(CheckReport::observe(
            format!("cubics.Q{i}"),
            fam.quadrics[i].to_string(),
        ));
    }
    let zero = |vs: &[Var]| -> Vec<(Var, MPoly)> { vs.iter().map(|&v| (v, MPoly::zero())).collect() };
    let q3_axis = fam.quadrics[3].substitute_map(&zero(&[Var::T, Var::X, Var::Y]));
    out.push(CheckReport::compare(
        "cubics.Q3-on-Z-axis",
        q3_axis.to_string(),
        "0",
        "it satisfies the equation of $Q_3$ for all $Z$",
    ));
    let tx = zero(&[Var::T, Var::X]);
    let q2 = fam.quadrics[2].substitute_map(&tx);
    let q3 = fam.quadrics[3].substitute_map(&tx);
    let yz = MPoly::var(Var::Y) * MPoly::var(Var::Z);
    let both_yz = q2.scalar_ratio(&yz).is_some() && q3.scalar_ratio(&yz).is_some();
    out.push(
        CheckReport::compare(
            "cubics.Q2-Q3-on-T-X",
            if both_yz { "YZ=0" } else { "not a multiple of YZ" },
            "YZ=0",
            "So putting $T=X=0$ in the equation of $Q_2,Q_3$ we get that",
        )
        .with_note(format!("Q2 -> {q2}, Q3 -> {q3}")),
    );
    let sys = baselocus::single_hyperplane_system(Var::T)?;
    for (qi, printed) in T0_EQUATIONS {
        let row = sys.rows.iter().position(|&r| r == qi).expect("row present");
        let computed = (0..3).fold(MPoly::zero(), |acc, k| {
            &acc + &(sys.matrix.get(row, k) * &MPoly::term(NFElem::from_int(1), sys.basis[k]))
        });
        out.push(
            CheckReport::compare(
                format!("cubics.T0-equation[Q{qi}]"),
                computed.to_string(),
                parse_poly(printed)?.to_string(),
                "Putting $T=0$ in the equation we get that",
            )
            .with_note(if sys.scaled_rows.contains(&qi) {
                "divided by 3r-2"
            } else {
                "as restricted"
            }),
        );
    }
    Ok(out)
}

fn components(name: &str, cfg: &RunConfig, m_fallback: NFElem) -> Result<Vec<(&'static str, Component)>> {
    let m = m_fallback;
    let (seed, survey, bound) = (cfg.seed, cfg.survey, cfg.bound);
    let out: Vec<(&'static str, Component)> = match name {
        "sigma" => vec![("sigma", Box::new(sigma_checks))],
        "cubics" => vec![("cubics", Box::new(cubic_checks))],
        "base-locus" => vec![
            (
                "base-locus.single-hyperplane",
                Box::new(baselocus::single_hyperplane_checks),
            ),
            ("base-locus.strata", Box::new(move || baselocus::base_locus_checks(&m))),
        ],
        "quadric-independence" => vec![("quadric-independence", Box::new(baselocus::quadric_independence))],
        "tangent" => vec![("tangent", Box::new(move || tangent::tangent_checks(&m, survey, seed)))],
        "divisors" => vec![(
            "divisors",
            Box::new(|| divisor::divisor_checks(&IntersectionForm::default())),
        )],
        "genus" => vec![("genus", Box::new(genus::genus_checks))],
        "pencil" => vec![("pencil", Box::new(move || genus::pencil_checks(&m, bound)))],
        other => return Err(Error::InvalidInput(format!("unknown suite '{other}'"))),
    };
    Ok(out)
}

/// Runs a suite. Configuration problems are errors; failures inside a check
/// become error entries in the report.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let given = cfg.m_value()?;
    let m = given.clone().unwrap_or_else(|| NFElem::from_int(1));
    let mut checks = Vec::new();
    for suite in names {
        for (id, run) in components(suite, cfg, m.clone())? {
            let start = Instant::now();
            let result = run();
            let ms = start.elapsed().as_millis().to_string();
            let mut batch = match result {
                Ok(b) => b,
                Err(e) => vec![CheckReport::error(id, e.to_string())],
            };
            if given.is_none() && matches!(suite, "base-locus" | "tangent" | "pencil") {
                for c in &mut batch {
                    if c.notes.iter().any(|n| n.contains("m=1")) {
                        c.notes.push("m not specified; specialized computations use m=1".into());
                    }
                }
            }
            if cfg.timings {
                for c in &mut batch {
                    c.elapsed = Some(ms.clone());
                }
            }
            checks.extend(batch);
        }
    }
    Ok(SuiteReport::new(name, cfg.echo()?, checks))
}
