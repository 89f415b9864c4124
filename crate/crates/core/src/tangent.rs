//! Tangent forms of the cubics C₀..C₃ and independence of their rows.
//!
//! In the affine chart where one coordinate is 1, the tangent plane of Cᵢ at
//! P is given by the partial derivatives with respect to the three free
//! coordinates. Symbolic chart points reuse the free coordinate variables
//! themselves, so a symbolic tangent row is a polynomial in those variables
//! and m.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{parse_poly, MPoly, Minor, NFElem, RingMatrix, Var};
use crate::error::{Error, Result};
use crate::geometry::{three_r_minus_two, CubicFamily, ProjPoint};
use crate::report::CheckReport;

/// A point in the affine chart `chart = 1`; `None` marks a symbolic coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint {
    chart: Var,
    coords: [Option<NFElem>; 3],
}

impl ChartPoint {
    pub fn symbolic(chart: Var) -> Result<Self> {
        Self::new(chart, [None, None, None])
    }

    pub fn exact(chart: Var, coords: [NFElem; 3]) -> Result<Self> {
        Self::new(chart, coords.map(Some))
    }

    pub fn new(chart: Var, coords: [Option<NFElem>; 3]) -> Result<Self> {
        if chart == Var::M {
            return Err(Error::InvalidInput("m is not a coordinate".into()));
        }
        Ok(ChartPoint { chart, coords })
    }

    pub fn chart(&self) -> Var {
        self.chart
    }

    /// The three coordinates other than the chart coordinate, in X, Y, Z, T order.
    pub fn free_vars(&self) -> [Var; 3] {
        let v: Vec<Var> = Var::COORDS.into_iter().filter(|&v| v != self.chart).collect();
        [v[0], v[1], v[2]]
    }

    pub fn substitution(&self) -> Vec<(Var, MPoly)> {
        let mut out = vec![(self.chart, MPoly::from_int(1))];
        for (v, c) in self.free_vars().into_iter().zip(&self.coords) {
            out.push((
                v,
                c.as_ref().map_or_else(|| MPoly::var(v), |c| MPoly::constant(c.clone())),
            ));
        }
        out
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(Option::is_some)
    }

    pub fn to_proj(&self) -> Option<ProjPoint> {
        let mut c = [
            NFElem::default(),
            NFElem::default(),
            NFElem::default(),
            NFElem::default(),
        ];
        c[self.chart.index()] = NFElem::from_int(1);
        for (v, x) in self.free_vars().into_iter().zip(&self.coords) {
            c[v.index()] = x.clone()?;
        }
        Some(ProjPoint(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentForm {
    pub chart: Var,
    /// ∂Cᵢ/∂X, ∂Cᵢ/∂Y, ∂Cᵢ/∂Z, ∂Cᵢ/∂T at the point.
    pub gradient: [MPoly; 4],
}

impl TangentForm {
    /// Coefficients of the affine tangent equation in the chart.
    pub fn chart_row(&self) -> [MPoly; 3] {
        let free: Vec<Var> = Var::COORDS.into_iter().filter(|&v| v != self.chart).collect();
        [0, 1, 2].map(|k| self.gradient[free[k].index()].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.gradient.iter().all(MPoly::is_zero)
    }
}

/// ∂Cᵢ/∂X..∂Cᵢ/∂T for every cubic, computed once.
fn gradients() -> &'static [[MPoly; 4]; 4] {
    static GRADIENTS: OnceLock<[[MPoly; 4]; 4]> = OnceLock::new();
    GRADIENTS.get_or_init(|| {
        CubicFamily::get()
            .cubics
            .clone()
            .map(|c| Var::COORDS.map(|v| c.partial(v)))
    })
}

pub fn tangent_form(i: usize, p: &ChartPoint) -> Result<TangentForm> {
    let grad = gradients()
        .get(i)
        .ok_or_else(|| Error::InvalidInput(format!("cubic index {i} out of range")))?;
    let sub = p.substitution();
    let gradient = grad.clone().map(|g| g.substitute_map(&sub));
    Ok(TangentForm {
        chart: p.chart,
        gradient,
    })
}

/// The printed tangent displays for C₀, C₁, C₂ in the chart T = 1, with the
/// affine coordinates x, y, z written as X, Y, Z.
pub const PRINTED_TANGENT_ROWS: [[&str; 3]; 3] = [
    [
        "(3*r-2)+(r+1)*(3*r-2)*Y+(-6*r^2+2*r+2)*Z",
        "(3*r-2)*m+(3*r-2)*(r+1)*X+(-2*r^2-5*r+5)*Z",
        "(3*r-2)*r^2+(-6*r^2+2*r+2)*X+(-2*r^2-5*r+5)*Y",
    ],
    [
        "(3*r-2)*(Y+m*Z+r^2)*(1+X)+(r+1)*(3*r-2)*Y*Z+(-6*r^2+2*r+2)*Y+(-2*r^2-5*r+5)*Z",
        "(3*r-2)*X^2+(3*r-2)*(r+1)*X*Z+(-6*r^2+2*r+2)*X",
        "(3*r-2)*m*X^2+(r+1)*(3*r-2)*X*Y+(-2*r^2-5*r+5)*X",
    ],
    [
        "(3*r-2)*r^2*Y^2+(-6*r^2+2*r+2)*Y*Z+(-2*r^2-5*r+5)*Y",
        "(3*r-2)*(Z+m+r^2*X)*(1+Y)+(3*r-2)*(r+1)*Z+(-6*r^2+2*r+2)*Z*X+(-2*r^2-5*r+5)*X",
        "(3*r-2)*Y^2+(3*r-2)*(r+1)*Y+(-6*r^2+2*r+2)*X*Y",
    ],
];

const DISPLAY_CITATIONS: [&str; 3] = [
    "we compute the tangent space $T_P (C_0)$",
    "Similarly we have the equation for $T_P(C_1)$ given by",
    "The equation of $T_P(C_2)$ is given by",
];

/// Componentwise comparison of a computed tangent row with its printed display.
pub fn display_agreement(i: usize) -> Result<[bool; 3]> {
    let printed = PRINTED_TANGENT_ROWS
        .get(i)
        .ok_or_else(|| Error::InvalidInput(format!("no printed display for C{i}")))?;
    let row = tangent_form(i, &ChartPoint::symbolic(Var::T)?)?.chart_row();
    let mut out = [false; 3];
    for k in 0..3 {
        out[k] = parse_poly(printed[k])? == row[k];
    }
    Ok(out)
}

fn agreement_text(flags: &[bool; 3]) -> String {
    let parts: Vec<String> = ["X", "Y", "Z"]
        .iter()
        .zip(flags)
        .map(|(v, ok)| format!("d/d{v}: {}", if *ok { "agrees" } else { "differs" }))
        .collect();
    parts.join(", ")
}

pub fn display_check(i: usize) -> Result<CheckReport> {
    let flags = display_agreement(i)?;
    let row = tangent_form(i, &ChartPoint::symbolic(Var::T)?)?.chart_row();
    let mut rep = CheckReport::compare(
        format!("tangent.display-C{i}"),
        agreement_text(&flags),
        agreement_text(&[true; 3]),
        DISPLAY_CITATIONS[i],
    )
    .with_note("chart T=1; affine coordinates written X, Y, Z");
    for k in 0..3 {
        if !flags[k] {
            let printed = parse_poly(PRINTED_TANGENT_ROWS[i][k])?;
            rep = rep
                .with_note(format!("component {k}: differentiation gives {}", row[k]))
                .with_note(format!("component {k}: printed form expands to {printed}"))
                .with_note(format!("component {k}: difference {}", &row[k] - &printed));
        }
    }
    Ok(rep)
}

/// Symbolic tangent rows of Cᵢ and Cⱼ in the chart T = 1.
pub fn symbolic_pair(i: usize, j: usize) -> Result<RingMatrix> {
    let p = ChartPoint::symbolic(Var::T)?;
    let a = tangent_form(i, &p)?.chart_row().to_vec();
    let b = tangent_form(j, &p)?.chart_row().to_vec();
    RingMatrix::from_rows(vec![a, b])
}

/// Generic independence of two tangent rows: some 2×2 minor is a nonzero
/// polynomial in the chart coordinates and m.
pub fn generically_independent(i: usize, j: usize) -> Result<Option<Minor>> {
    Ok(symbolic_pair(i, j)?.minors(2).into_iter().find(|(_, d)| !d.is_zero()))
}

pub fn pairwise_independence(i: usize, j: usize) -> Result<CheckReport> {
    let witness = generically_independent(i, j)?;
    let computed = if witness.is_some() { "independent" } else { "dependent" };
    let id = format!("tangent.pairwise[C{i},C{j}]");
    let (lo, hi) = (i.min(j), i.max(j));
    let citation = match (lo, hi) {
        (0, 1) => Some("there does not exists a polynomial $\\lambda(x,y,z)$"),
        (0, 2) => Some("Similarly $T_P(C_0)$ intersects $T_P(C_2)$ in a line"),
        (1, 2) => Some("we prove that $T_P(C_1)$ intersects $T_P(C_2)$ in a line"),
        _ => None,
    };
    let rep = match citation {
        Some(c) => CheckReport::compare(id, computed, "independent", c),
        None => CheckReport::observe(id, computed),
    };
    Ok(match witness {
        Some(((_, cols), d)) => rep.with_note(format!(
            "nonzero 2x2 minor on chart columns {:?}: {} terms, degree {}",
            cols,
            d.len(),
            d.total_degree().unwrap_or(0)
        )),
        None => rep.with_note("every 2x2 minor vanishes identically"),
    })
}

/// The obstruction left by the ansatz λ = ax + bz + c:
/// (−2r²−5r+5) − (r+1)²(3r−2), which must be nonzero.
pub fn lambda_obstruction() -> NFElem {
    let d = NFElem::from_ints(5, -5, -2);
    let r1 = NFElem::from_ints(1, 1, 0);
    &d - &(&(&r1 * &r1) * &three_r_minus_two())
}

pub fn lambda_replay() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let p = ChartPoint::symbolic(Var::T)?;
    let row0 = tangent_form(0, &p)?.chart_row();
    let row1 = tangent_form(1, &p)?.chart_row();
    let lhs = parse_poly("X*(3*r-2)*(r+1)+(3*r-2)*m+(-2*r^2-5*r+5)*Z")?;
    let rhs = parse_poly("X^2*(3*r-2)+X*Z*(r+1)*(3*r-2)+(-6*r^2+2*r+2)*X")?;
    let setup_ok = lhs == row0[1] && rhs == row1[1];
    out.push(
        CheckReport::compare(
            "tangent.lambda-setup",
            if setup_ok {
                "d/dY entries of C0 and C1"
            } else {
                "not the d/dY entries"
            },
            "d/dY entries of C0 and C1",
            "there does not exists a polynomial $\\lambda(x,y,z)$",
        )
        .with_note("the two sides of the proportionality equation against the computed rows"),
    );

    let expanded = &(&NFElem::from_ints(1, 1, 0) * &NFElem::from_ints(1, 1, 0)) * &three_r_minus_two();
    out.push(
        CheckReport::compare(
            "tangent.lambda-expansion",
            expanded.to_string(),
            NFElem::from_ints(1, -1, 1).to_string(),
            "=3r^3+4r^2-r-2=r^2-r+1",
        )
        .with_note("(r+1)^2(3r-2) reduced modulo r^3+r^2-1"),
    );

    let obstruction = lambda_obstruction();
    let claimed = NFElem::from_ints(-4, 4, 3);
    let inverse = obstruction.invert();
    let mut rep = CheckReport::compare(
        "tangent.lambda-obstruction",
        if inverse.is_ok() { "nonzero" } else { "zero" },
        "nonzero",
        "which is not true",
    )
    .with_note(format!("(-2r^2-5r+5) - (r+1)^2(3r-2) = {obstruction}"));
    if obstruction == -&claimed {
        rep = rep.with_note(format!("equals -({claimed}), the negative of the printed element"));
    }
    if let Ok(inv) = inverse {
        rep = rep.with_note(format!("inverse {inv}"));
    }
    out.push(rep);
    Ok(out)
}

/// Rank of the stacked projective gradients of C₁, C₂, C₃ at [0:0:0:1].
pub fn reference_point_check(m_value: Option<&NFElem>) -> Result<CheckReport> {
    let p = ChartPoint::exact(Var::T, [NFElem::default(), NFElem::default(), NFElem::default()])?;
    let mut rows = Vec::new();
    for i in 1..4 {
        let tf = tangent_form(i, &p)?;
        rows.push(tf.gradient.to_vec());
    }
    let mat = RingMatrix::from_rows(rows)?;
    let rank = mat.rank(m_value).rank;
    let g0 = tangent_form(0, &p)?;
    let g0_text: Vec<String> = g0.gradient.iter().map(|g| g.to_string()).collect();
    Ok(CheckReport::compare(
        "tangent.reference-point",
        format!("rank {rank}"),
        "rank 3",
        "we get that the equations are $X=Y=Z=0$",
    )
    .with_note(format!("gradients of C1, C2, C3 at [0:0:0:1]: {mat}"))
    .with_note(format!("gradient of C0 there: ({})", g0_text.join(", ")))
    .with_note("reference points are excluded from the separation statement itself"))
}

/// 64-bit linear congruential generator used for the rank survey.
#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    /// A nonzero integer in [−20, 20].
    pub fn coordinate(&mut self) -> i64 {
        loop {
            let v = (self.next_u64() % 41) as i64 - 20;
            if v != 0 {
                return v;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub seed: u64,
    pub requested: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub skipped_zero_gradient: usize,
    pub skipped_reference: usize,
}

impl SurveyReport {
    pub fn histogram_text(&self) -> String {
        let parts: Vec<String> = self.histogram.iter().map(|(k, v)| format!("rank {k}: {v}")).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn ranked(&self) -> usize {
        self.histogram.values().sum()
    }
}

/// Exact rank of the chart rows of C₀, C₁, C₂ at a point; `None` when one
/// of the gradients vanishes there.
pub fn rank_at(p: &ChartPoint, m_value: &NFElem) -> Result<Option<usize>> {
    let proj = p
        .to_proj()
        .ok_or_else(|| Error::InvalidInput("rank survey needs an exact point".into()))?;
    let mut assign = proj.assignment();
    assign.push((Var::M, m_value.clone()));
    let free = p.free_vars();
    let mut rows = Vec::new();
    for grad in &gradients()[..3] {
        let row = free
            .iter()
            .map(|v| grad[v.index()].eval(&assign))
            .collect::<Result<Vec<NFElem>>>()?;
        if row.iter().all(NFElem::is_zero) {
            return Ok(None);
        }
        rows.push(row);
    }
    Ok(Some(RingMatrix::from_scalars(rows)?.rank(None).rank))
}

pub fn rank_survey(n: usize, seed: u64, m_value: &NFElem) -> Result<SurveyReport> {
    if n == 0 {
        return Err(Error::InvalidInput("survey size must be at least 1".into()));
    }
    let mut rng = Lcg::new(seed);
    let mut rep = SurveyReport {
        seed,
        requested: n,
        histogram: BTreeMap::new(),
        skipped_zero_gradient: 0,
        skipped_reference: 0,
    };
    for _ in 0..n {
        let c = [rng.coordinate(), rng.coordinate(), rng.coordinate()].map(NFElem::from_int);
        let p = ChartPoint::exact(Var::T, c)?;
        if p.to_proj().is_some_and(|q| q.is_reference()) {
            rep.skipped_reference += 1;
            continue;
        }
        match rank_at(&p, m_value)? {
            Some(k) => *rep.histogram.entry(k).or_insert(0) += 1,
            None => rep.skipped_zero_gradient += 1,
        }
    }
    Ok(rep)
}

pub fn survey_check(n: usize, seed: u64, m_value: &NFElem) -> Result<CheckReport> {
    let s = rank_survey(n, seed, m_value)?;
    let all_full = s.histogram.keys().all(|&k| k == 3) && s.ranked() > 0;
    let computed = if all_full {
        "rank 3 at every sampled point".to_string()
    } else {
        format!("rank histogram {}", s.histogram_text())
    };
    Ok(CheckReport::compare(
        "tangent.rank-survey",
        computed,
        "rank 3 at every sampled point",
        "intersects only at one point by dimension counting",
    )
    .with_note(format!(
        "{} points with coordinates in [-20,20]\\{{0}}, seed {}, m={m_value}",
        s.requested, s.seed
    ))
    .with_note(format!("histogram {}", s.histogram_text()))
    .with_note(format!(
        "skipped: {} with a vanishing gradient, {} reference points",
        s.skipped_zero_gradient, s.skipped_reference
    )))
}

pub fn tangent_checks(m_value: &NFElem, survey: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for i in 0..3 {
        out.push(display_check(i)?);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        out.push(pairwise_independence(i, j)?);
    }
    out.extend(lambda_replay()?);
    out.push(reference_point_check(None)?);
    out.push(survey_check(survey, seed, m_value)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Agreement;

    #[test]
    fn c0_display_matches() {
        assert_eq!(display_agreement(0).unwrap(), [true, true, true]);
    }

    #[test]
    fn c1_c2_display_flags() {
        assert_eq!(display_agreement(1).unwrap(), [false, true, true]);
        assert_eq!(display_agreement(2).unwrap(), [true, false, true]);
    }

    #[test]
    fn obstruction_is_nonzero() {
        assert_eq!(lambda_obstruction(), NFElem::from_ints(4, -4, -3));
        assert!(lambda_obstruction().invert().is_ok());
    }

    #[test]
    fn identical_rows_dependent() {
        assert!(generically_independent(1, 1).unwrap().is_none());
        assert!(generically_independent(0, 1).unwrap().is_some());
    }

    #[test]
    fn reference_point_gradients_vanish() {
        let rep = reference_point_check(None).unwrap();
        assert_eq!(rep.computed, "rank 0");
        assert_eq!(rep.agreement, Agreement::Refuted);
    }

    #[test]
    fn generic_point_has_full_rank() {
        let p = ChartPoint::exact(Var::T, [1, 2, 3].map(NFElem::from_int)).unwrap();
        assert_eq!(rank_at(&p, &NFElem::from_int(1)).unwrap(), Some(3));
    }

    #[test]
    fn lcg_first_values() {
        let mut g = Lcg::new(1);
        assert_eq!(g.next_u64(), 6364136223846793005u64.wrapping_add(1442695040888963407));
    }

    #[test]
    fn zero_survey_rejected() {
        assert!(rank_survey(0, 1, &NFElem::from_int(1)).is_err());
    }
}
