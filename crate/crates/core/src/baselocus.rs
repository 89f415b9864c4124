//! Base locus of the linear system spanned by C₀..C₃.
//!
//! Each Cᵢ factors as (coordinate)·Qᵢ, so a common zero lies on one of the
//! 16 strata obtained by choosing, for every i, either the coordinate
//! hyperplane or the quadric. None of the Qᵢ contains a square of a
//! coordinate, which turns the strata with few hyperplanes into linear
//! algebra on products of coordinates: a point with all remaining
//! coordinates nonzero exists iff some kernel vector has no zero entry and
//! satisfies the multiplicative relations among those products. Points
//! with an extra zero coordinate belong to a stratum with more hyperplanes.

use std::fmt;

use crate::algebra::{squarefree_part, upoly_gcd, MPoly, Monomial, NFElem, RingMatrix, UPoly, Var};
use crate::error::{Error, Result};
use crate::geometry::{format_point_set, three_r_minus_two, CoordMap, CubicFamily, ProjPoint};
use crate::report::CheckReport;

/// Bit i set: Cᵢ contributes its quadric Qᵢ; clear: its coordinate cofactor.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct Stratum(u8);

impl Stratum {
    pub fn all() -> Vec<Stratum> {
        (0..16).map(Stratum).collect()
    }

    pub fn from_mask(mask: u8) -> Result<Stratum> {
        if mask < 16 {
            Ok(Stratum(mask))
        } else {
            Err(Error::InvalidInput(format!("stratum mask {mask} out of range")))
        }
    }

    /// Builds the stratum from its parts, rejecting shapes that do not match
    /// the cofactor split of the cubics.
    pub fn from_parts(hyperplanes: &[Var], quadrics: &[usize]) -> Result<Stratum> {
        let mut mask = 0u8;
        for &q in quadrics {
            if q >= 4 || mask & (1 << q) != 0 {
                return Err(Error::InvalidInput(format!("bad quadric index {q}")));
            }
            mask |= 1 << q;
        }
        let s = Stratum(mask);
        let mut expected = s.hyperplanes();
        let mut given = hyperplanes.to_vec();
        expected.sort();
        given.sort();
        if given != expected {
            return Err(Error::InvalidInput(format!(
                "hyperplanes {:?} do not complement quadrics {:?}",
                hyperplanes, quadrics
            )));
        }
        Ok(s)
    }

    pub fn mask(&self) -> u8 {
        self.0
    }

    pub fn quadrics(&self) -> Vec<usize> {
        (0..4).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn hyperplanes(&self) -> Vec<Var> {
        let fam = CubicFamily::get();
        (0..4)
            .filter(|i| self.0 & (1 << i) == 0)
            .map(|i| fam.cofactors[i])
            .collect()
    }

    /// The stratum whose zero set is the σ-preimage of this one.
    pub fn sigma_preimage(&self) -> Stratum {
        // Qᵢ∘σ = Q_{i-1}
        let mut mask = 0;
        for i in self.quadrics() {
            mask |= 1 << ((i + 3) % 4);
        }
        Stratum(mask)
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyperplanes().iter().map(|v| v.to_string()).collect();
        let qs: Vec<String> = self.quadrics().iter().map(|i| format!("Q{i}")).collect();
        write!(f, "{};{}", hs.join(","), qs.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StratumClass {
    Empty,
    ReferencePoints(Vec<ProjPoint>),
    /// Common zeros off the coordinate points.
    ExtraPoints {
        witnesses: Vec<ProjPoint>,
        description: String,
    },
    Inconclusive(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StratumResult {
    pub stratum: Stratum,
    pub class: StratumClass,
    pub identities: Vec<String>,
}

impl StratumResult {
    pub fn points(&self) -> Vec<ProjPoint> {
        match &self.class {
            StratumClass::ReferencePoints(p) => p.clone(),
            StratumClass::ExtraPoints { witnesses, .. } => witnesses.clone(),
            _ => Vec::new(),
        }
    }

    pub fn summary(&self) -> String {
        match &self.class {
            StratumClass::Empty => "empty".to_string(),
            StratumClass::ReferencePoints(p) if p.is_empty() => "empty".to_string(),
            StratumClass::ReferencePoints(p) => format_point_set(p),
            StratumClass::ExtraPoints { description, .. } => format!("non-reference points: {description}"),
            StratumClass::Inconclusive(why) => format!("inconclusive: {why}"),
        }
    }
}

fn quadrics_at(m_value: Option<&NFElem>) -> [MPoly; 4] {
    let fam = CubicFamily::get();
    fam.quadrics.clone().map(|q| specialize(&q, m_value))
}

fn specialize(p: &MPoly, m_value: Option<&NFElem>) -> MPoly {
    match m_value {
        Some(v) => p.specialize(&[(Var::M, v.clone())]),
        None => p.clone(),
    }
}

fn zero_out(p: &MPoly, vars: &[Var]) -> MPoly {
    let assign: Vec<(Var, MPoly)> = vars.iter().map(|&v| (v, MPoly::zero())).collect();
    p.substitute_map(&assign)
}

fn has_square(p: &MPoly) -> bool {
    p.terms().any(|(mono, _)| Var::COORDS.iter().any(|&v| mono.exp(v) >= 2))
}

/// Coefficient of a coordinate monomial, as a polynomial in m.
pub fn coord_coefficient(p: &MPoly, mono: &Monomial) -> MPoly {
    MPoly::from_terms(p.terms().filter_map(|(mm, c)| {
        let same = Var::COORDS.iter().all(|&v| mm.exp(v) == mono.exp(v));
        same.then(|| (Monomial::var(Var::M).with_exp(Var::M, mm.exp(Var::M)), c.clone()))
    }))
}

pub fn classify_stratum(s: Stratum, m_value: Option<&NFElem>) -> Result<StratumResult> {
    let hs = s.hyperplanes();
    let qs = s.quadrics();
    match hs.len() {
        4 => Ok(stratum_all_hyperplanes()),
        3 => stratum_triple_hyperplane([hs[0], hs[1], hs[2]], qs[0], m_value),
        2 => stratum_double_hyperplane([hs[0], hs[1]], [qs[0], qs[1]], m_value),
        1 => match m_value {
            Some(v) => monomial_kernel_lift(hs[0], v),
            None => Ok(StratumResult {
                stratum: s,
                class: StratumClass::Inconclusive("kernel lifting needs a value of m".into()),
                identities: Vec::new(),
            }),
        },
        _ => match m_value {
            Some(v) => quadric_torus_stratum(v),
            None => Ok(StratumResult {
                stratum: s,
                class: StratumClass::Inconclusive("torus analysis needs a value of m".into()),
                identities: Vec::new(),
            }),
        },
    }
}

/// X = Y = Z = T = 0 has no projective solution.
pub fn stratum_all_hyperplanes() -> StratumResult {
    let rows: Vec<Vec<NFElem>> = (0..4)
        .map(|i| (0..4).map(|j| NFElem::from_int(i64::from(i == j))).collect())
        .collect();
    let rank = RingMatrix::from_scalars(rows).expect("square").rank(None).rank;
    StratumResult {
        stratum: Stratum(0),
        class: if rank == 4 {
            StratumClass::Empty
        } else {
            StratumClass::Inconclusive("coordinate forms dependent".into())
        },
        identities: vec![format!("rank of the coefficient matrix of X, Y, Z, T = {rank}")],
    }
}

/// Three coordinate hyperplanes and one quadric: the only candidate is the
/// remaining reference point, which lies on the stratum iff the quadric
/// vanishes identically on that coordinate axis.
pub fn stratum_triple_hyperplane(
    hyperplanes: [Var; 3],
    quadric: usize,
    m_value: Option<&NFElem>,
) -> Result<StratumResult> {
    let s = Stratum::from_parts(&hyperplanes, &[quadric])?;
    let w = Var::COORDS
        .into_iter()
        .find(|v| !hyperplanes.contains(v))
        .expect("one coordinate remains");
    let q = &quadrics_at(m_value)[quadric];
    let restricted = zero_out(q, &hyperplanes);
    let names: Vec<&str> = hyperplanes.iter().map(|v| v.name()).collect();
    let identity = format!("Q{quadric}|{{{}=0}} = {restricted}", names.join("="));
    let class = if restricted.is_zero() {
        StratumClass::ReferencePoints(vec![ProjPoint::reference(w)])
    } else if restricted.as_single_term().is_some_and(|(_, c)| !c.is_zero()) && !restricted.mentions(Var::M) {
        StratumClass::Empty
    } else {
        StratumClass::Inconclusive(format!("restriction {restricted} depends on m"))
    };
    Ok(StratumResult {
        stratum: s,
        class,
        identities: vec![identity],
    })
}

/// Zero set on the line {h₁ = h₂ = 0} of a unit multiple of uᵃvᵇ.
fn monomial_zero_set(mono: &Monomial, u: Var, v: Var) -> Vec<Var> {
    let mut pts = Vec::new();
    if mono.exp(u) > 0 {
        pts.push(v);
    }
    if mono.exp(v) > 0 {
        pts.push(u);
    }
    pts
}

/// Two hyperplanes and two quadrics: both restrictions must be unit
/// multiples of a single monomial in the two remaining coordinates.
pub fn stratum_double_hyperplane(
    hyperplanes: [Var; 2],
    quadrics: [usize; 2],
    m_value: Option<&NFElem>,
) -> Result<StratumResult> {
    let s = Stratum::from_parts(&hyperplanes, &quadrics)?;
    let rest: Vec<Var> = Var::COORDS.into_iter().filter(|v| !hyperplanes.contains(v)).collect();
    let (u, v) = (rest[0], rest[1]);
    let qs = quadrics_at(m_value);
    let mut identities = Vec::new();
    let mut zero_sets = Vec::new();
    for &qi in &quadrics {
        let restricted = zero_out(&qs[qi], &hyperplanes);
        identities.push(format!(
            "Q{qi}|{{{}={}=0}} = {restricted}",
            hyperplanes[0], hyperplanes[1]
        ));
        match restricted.as_single_term() {
            Some((mono, c)) if !c.is_zero() && mono.exp(Var::M) == 0 => {
                zero_sets.push(monomial_zero_set(&mono, u, v));
            }
            // with m left symbolic, c·m^k is a unit for every m ≠ 0
            Some((mono, c)) if !c.is_zero() && m_value.is_none() => {
                identities.push(format!("Q{qi}: coefficient is a unit for m != 0"));
                zero_sets.push(monomial_zero_set(&mono, u, v));
            }
            _ => {
                let why = if restricted.is_zero() {
                    format!("Q{qi} vanishes on the whole line")
                } else {
                    format!("Q{qi} restricts to {restricted}, not a unit times a monomial")
                };
                return Ok(StratumResult {
                    stratum: s,
                    class: StratumClass::Inconclusive(why),
                    identities,
                });
            }
        }
    }
    let common: Vec<ProjPoint> = zero_sets[0]
        .iter()
        .filter(|p| zero_sets[1].contains(p))
        .map(|&p| ProjPoint::reference(p))
        .collect();
    let class = if common.is_empty() {
        StratumClass::Empty
    } else {
        StratumClass::ReferencePoints(common)
    };
    Ok(StratumResult {
        stratum: s,
        class,
        identities,
    })
}

/// The monomial system of the three quadrics not paired with `h`, restricted
/// to h = 0.
#[derive(Clone, Debug)]
pub struct MonomialSystem {
    pub hyperplane: Var,
    /// Indices of the quadrics, one per row.
    pub rows: Vec<usize>,
    /// Remaining coordinates (u₀, u₁, u₂) in cyclic order.
    pub coords: [Var; 3],
    /// Column monomials u₀u₁, u₁u₂, u₂u₀.
    pub basis: [Monomial; 3],
    pub matrix: RingMatrix,
    /// Rows where the common factor 3r − 2 was removed.
    pub scaled_rows: Vec<usize>,
}

fn product(a: Var, b: Var) -> Monomial {
    Monomial::var(a).mul(&Monomial::var(b))
}

/// Builds the 3×3 coefficient matrix over Q(r)[m]. A row whose quadric
/// reduces to its (3r−2)[...] part on h = 0 is divided by 3r − 2.
pub fn single_hyperplane_system(h: Var) -> Result<MonomialSystem> {
    let fam = CubicFamily::get();
    let k = fam
        .quadric_index_for_cofactor(h)
        .ok_or_else(|| Error::InvalidInput(format!("{h} is not a coordinate hyperplane")))?;
    let rows: Vec<usize> = (1..4).map(|d| (k + d) % 4).collect();
    let coords = [fam.cofactors[rows[0]], fam.cofactors[rows[1]], fam.cofactors[rows[2]]];
    let basis = [
        product(coords[0], coords[1]),
        product(coords[1], coords[2]),
        product(coords[2], coords[0]),
    ];
    let mut entries = Vec::new();
    let mut scaled_rows = Vec::new();
    for &qi in &rows {
        let outside = zero_out(&fam.outsides[qi], &[h]);
        let row_poly = if outside.is_zero() {
            scaled_rows.push(qi);
            zero_out(&fam.brackets[qi], &[h])
        } else {
            zero_out(&fam.quadrics[qi], &[h])
        };
        if has_square(&row_poly) {
            return Err(Error::Invariant(format!("Q{qi} on {h}=0 has a square term")));
        }
        let coeffs: Vec<MPoly> = basis.iter().map(|b| coord_coefficient(&row_poly, b)).collect();
        let rebuilt = basis.iter().zip(&coeffs).fold(MPoly::zero(), |acc, (b, c)| {
            &acc + &(c * &MPoly::term(NFElem::from_int(1), *b))
        });
        if rebuilt != row_poly {
            return Err(Error::Invariant(format!(
                "row for Q{qi} does not reproduce its quadric"
            )));
        }
        entries.extend(coeffs);
    }
    Ok(MonomialSystem {
        hyperplane: h,
        rows,
        coords,
        basis,
        matrix: RingMatrix::new(3, 3, entries)?,
        scaled_rows,
    })
}

/// Entries of the printed 3×3 matrix for T = 0, as expression strings.
pub const PRINTED_T_MATRIX: [[&str; 3]; 3] = [
    ["1", "r+1", "m"],
    ["r^2*(3*r-2)", "3*r-2", "-6*r^2+2*r+2"],
    ["-2*r^2-5*r+5", "r^2*(3*r-2)", "(3*r-2)*m"],
];

pub fn printed_t_matrix() -> RingMatrix {
    let rows = PRINTED_T_MATRIX
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| crate::algebra::parse_poly(e).expect("valid entry"))
                .collect()
        })
        .collect();
    RingMatrix::from_rows(rows).expect("3x3")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetAnalysis {
    pub det: MPoly,
    /// Coefficients of the determinant in m, lowest power first.
    pub m_coeffs: Vec<NFElem>,
}

impl DetAnalysis {
    pub fn m_free(&self) -> NFElem {
        self.m_coeffs.first().cloned().unwrap_or_default()
    }

    pub fn m_coefficient(&self) -> NFElem {
        self.m_coeffs.get(1).cloned().unwrap_or_default()
    }
}

pub fn single_hyperplane_det(h: Var) -> Result<DetAnalysis> {
    let sys = single_hyperplane_system(h)?;
    let det = sys.matrix.det()?;
    let m_coeffs = det
        .coeffs_in(Var::M)
        .iter()
        .map(|c| {
            c.as_constant()
                .ok_or_else(|| Error::Invariant(format!("determinant {det} has stray variables")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DetAnalysis { det, m_coeffs })
}

pub fn single_hyperplane_det_analysis(h: Var) -> Result<Vec<CheckReport>> {
    let d = single_hyperplane_det(h)?;
    let tag = h.name();
    let higher: Vec<String> = d
        .m_coeffs
        .iter()
        .enumerate()
        .skip(2)
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("m^{k}: {c}"))
        .collect();
    let mut m_coef = CheckReport::compare(
        format!("base-locus.det-{tag}.m-coefficient"),
        d.m_coefficient().to_string(),
        "0",
        "m(9r^3+9r^2-9)=0",
    )
    .with_note(format!("determinant of the printed-form matrix: {}", d.det));
    if !higher.is_empty() {
        m_coef = m_coef.with_note(format!("higher powers of m: {}", higher.join(", ")));
    }
    let claimed = NFElem::from_ints(10, 4, -20);
    let nonzero = if d.m_free().is_zero() { "zero" } else { "nonzero" };
    let m_free = CheckReport::compare(
        format!("base-locus.det-{tag}.m-free"),
        d.m_free().to_string(),
        claimed.to_string(),
        "Since the determinant is $-20r^2+4r+10$",
    )
    .with_note(format!("the m-free part is {nonzero} in Q(r)"));
    let m_free = if d.det.is_zero() {
        m_free.with_note("the determinant vanishes identically in m, so this matrix alone does not exclude extra common zeros; see the kernel-lift check")
    } else {
        m_free
    };
    Ok(vec![m_coef, m_free])
}

fn nonzero_combination(basis: &[Vec<NFElem>]) -> Option<Vec<NFElem>> {
    let n = basis.first()?.len();
    for j in 0..n {
        if basis.iter().all(|v| v[j].is_zero()) {
            return None;
        }
    }
    // Three hyperplanes cannot cover a 7^k grid for k ≥ 1 when none of them
    // is the whole space, so this search always succeeds.
    let k = basis.len();
    let mut idx = vec![0i64; k];
    loop {
        let coeffs: Vec<NFElem> = idx.iter().map(|&c| NFElem::from_int(c - 3)).collect();
        let v: Vec<NFElem> = (0..n)
            .map(|j| {
                basis
                    .iter()
                    .zip(&coeffs)
                    .fold(NFElem::default(), |acc, (b, c)| &acc + &(&b[j] * c))
            })
            .collect();
        if v.iter().all(|e| !e.is_zero()) {
            return Some(v);
        }
        let mut p = 0;
        loop {
            if p == k {
                return None;
            }
            idx[p] += 1;
            if idx[p] < 7 {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

fn vec_text(v: &[NFElem]) -> String {
    let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn verify_on_quadrics(point: &ProjPoint, quadrics: &[usize], m_value: &NFElem) -> Result<()> {
    let qs = quadrics_at(Some(m_value));
    for &qi in quadrics {
        if !qs[qi].eval(&point.assignment())?.is_zero() {
            return Err(Error::Invariant(format!("lifted point {point} is not on Q{qi}")));
        }
    }
    Ok(())
}

/// Decides the single-hyperplane stratum at a specialized m by lifting
/// kernel vectors of the monomial system to projective points.
pub fn monomial_kernel_lift(h: Var, m_value: &NFElem) -> Result<StratumResult> {
    let sys = single_hyperplane_system(h)?;
    let stratum = Stratum::from_parts(&[h], &sys.rows)?;
    let mat = sys.matrix.specialize_m(m_value);
    let kernel = mat.kernel()?;
    let basis_names: Vec<String> = sys.basis.iter().map(|b| b.to_string()).collect();
    let mut identities = vec![format!(
        "monomial system on {h}=0 at m={m_value}: {mat}, columns ({})",
        basis_names.join(", ")
    )];
    let coordinate_points: Vec<ProjPoint> = sys.coords.iter().map(|&v| ProjPoint::reference(v)).collect();
    if kernel.is_empty() {
        identities.push("kernel is {0}: every product of two remaining coordinates vanishes".into());
        return Ok(StratumResult {
            stratum,
            class: StratumClass::ReferencePoints(coordinate_points),
            identities,
        });
    }
    for v in &kernel {
        identities.push(format!("kernel vector {}", vec_text(v)));
    }
    match nonzero_combination(&kernel) {
        None => {
            identities.push(
                "some product vanishes on the whole kernel, so a common zero has a further zero coordinate and lies on a stratum with more hyperplanes"
                    .into(),
            );
            Ok(StratumResult {
                stratum,
                class: StratumClass::ReferencePoints(coordinate_points),
                identities,
            })
        }
        Some(v) => {
            // (u0u1, u1u2, u2u0) = (a, b, c) lifts to u0 = ac, u1 = ab, u2 = bc
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let mut coords = [
                NFElem::default(),
                NFElem::default(),
                NFElem::default(),
                NFElem::default(),
            ];
            coords[sys.coords[0].index()] = a * c;
            coords[sys.coords[1].index()] = a * b;
            coords[sys.coords[2].index()] = b * c;
            let point = ProjPoint(coords).normalized();
            verify_on_quadrics(&point, &sys.rows, m_value)?;
            let description = if kernel.len() == 1 {
                format!("{point}")
            } else {
                format!("a {}-parameter family, e.g. {point}", kernel.len() - 1)
            };
            identities.push(format!("lift {point} satisfies the three quadrics exactly"));
            Ok(StratumResult {
                stratum,
                class: StratumClass::ExtraPoints {
                    witnesses: vec![point],
                    description,
                },
                identities,
            })
        }
    }
}

const TORUS_BASIS: [(Var, Var); 6] = [
    (Var::X, Var::Y),
    (Var::X, Var::Z),
    (Var::X, Var::T),
    (Var::Y, Var::Z),
    (Var::Y, Var::T),
    (Var::Z, Var::T),
];

/// Torus points from a monomial-value vector ordered like `TORUS_BASIS`.
fn torus_lift(v: &[NFElem]) -> Option<ProjPoint> {
    if v.iter().any(NFElem::is_zero) {
        return None;
    }
    let consistent = (&v[0] * &v[5] == &v[1] * &v[4]) && (&v[1] * &v[4] == &v[2] * &v[3]);
    if !consistent {
        return None;
    }
    // [v_XY v_XZ : v_XY v_YZ : v_XZ v_YZ : v_XT v_YZ]
    Some(ProjPoint([&v[0] * &v[1], &v[0] * &v[3], &v[1] * &v[3], &v[2] * &v[3]]).normalized())
}

/// Q₀ ∩ Q₁ ∩ Q₂ ∩ Q₃ away from the coordinate hyperplanes, at a specialized m.
pub fn quadric_torus_stratum(m_value: &NFElem) -> Result<StratumResult> {
    let stratum = Stratum(15);
    let qs = quadrics_at(Some(m_value));
    let basis: Vec<Monomial> = TORUS_BASIS.iter().map(|&(a, b)| product(a, b)).collect();
    let mut rows = Vec::new();
    for (i, q) in qs.iter().enumerate() {
        if has_square(q) {
            return Err(Error::Invariant(format!("Q{i} has a square term")));
        }
        let row: Vec<NFElem> = basis
            .iter()
            .map(|b| coord_coefficient(q, b).as_constant().unwrap_or_default())
            .collect();
        rows.push(row);
    }
    let mat = RingMatrix::from_scalars(rows)?;
    let kernel = mat.kernel()?;
    let mut identities = vec![format!(
        "4x6 system over (XY, XZ, XT, YZ, YT, ZT) at m={m_value} has kernel dimension {}",
        kernel.len()
    )];
    let result = |class, identities| {
        Ok(StratumResult {
            stratum,
            class,
            identities,
        })
    };
    match kernel.len() {
        0 => result(StratumClass::Empty, identities),
        1 => match torus_lift(&kernel[0]) {
            Some(p) => {
                verify_on_quadrics(&p, &[0, 1, 2, 3], m_value)?;
                let d = p.to_string();
                result(
                    StratumClass::ExtraPoints {
                        witnesses: vec![p],
                        description: d,
                    },
                    identities,
                )
            }
            None => result(StratumClass::Empty, identities),
        },
        2 => {
            let (k1, k2) = (&kernel[0], &kernel[1]);
            // v(s) = s*k1 + k2
            let lin: Vec<UPoly<NFElem>> = (0..6).map(|j| UPoly::new(vec![k2[j].clone(), k1[j].clone()])).collect();
            let p1 = lin[0].mul(&lin[5]).sub(&lin[1].mul(&lin[4]));
            let p2 = lin[1].mul(&lin[4]).sub(&lin[2].mul(&lin[3]));
            identities.push(format!("consistency XY*ZT - XZ*YT = {}", p1.to_string_in("s")));
            identities.push(format!("consistency XZ*YT - XT*YZ = {}", p2.to_string_in("s")));
            if p1.is_zero() && p2.is_zero() {
                return result(
                    StratumClass::Inconclusive("consistency relations vanish on the whole kernel".into()),
                    identities,
                );
            }
            let mut g = squarefree_part(&upoly_gcd(&p1, &p2)?)?;
            for l in &lin {
                if l.is_zero() {
                    g = UPoly::constant(NFElem::from_int(1));
                    break;
                }
                let common = upoly_gcd(&g, l)?;
                g = g.div_rem(&common)?.0;
            }
            let mut witnesses = Vec::new();
            if let Some(p) = torus_lift(k1) {
                witnesses.push(p);
            }
            let finite = g.degree().unwrap_or(0);
            if finite == 1 {
                let root = (-g.coeff(0)).div(&g.coeff(1))?;
                let v: Vec<NFElem> = lin.iter().map(|l| l.eval(&root)).collect();
                witnesses.extend(torus_lift(&v));
            }
            identities.push(format!(
                "common roots off the zero loci of the products: {} finite, {} at infinity",
                finite,
                usize::from(torus_lift(k1).is_some())
            ));
            for p in &witnesses {
                verify_on_quadrics(p, &[0, 1, 2, 3], m_value)?;
            }
            let count = finite + usize::from(torus_lift(k1).is_some());
            if count == 0 {
                result(StratumClass::Empty, identities)
            } else {
                let description = format!("{count} torus point(s) over the algebraic closure");
                result(StratumClass::ExtraPoints { witnesses, description }, identities)
            }
        }
        n => result(StratumClass::Inconclusive(format!("kernel dimension {n}")), identities),
    }
}

use crate::algebra::Field as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseLocusVerdict {
    ReferencePointsOnly,
    ExtraPoints,
    Indeterminate,
}

pub fn aggregate(results: &[StratumResult]) -> (BaseLocusVerdict, Vec<ProjPoint>) {
    let mut pts = Vec::new();
    let mut verdict = BaseLocusVerdict::ReferencePointsOnly;
    for r in results {
        match &r.class {
            StratumClass::Inconclusive(_) => verdict = BaseLocusVerdict::Indeterminate,
            StratumClass::ExtraPoints { .. } if verdict != BaseLocusVerdict::Indeterminate => {
                verdict = BaseLocusVerdict::ExtraPoints
            }
            _ => {}
        }
        for p in r.points() {
            if !pts.iter().any(|q: &ProjPoint| q.same_as(&p)) {
                pts.push(p);
            }
        }
    }
    if verdict == BaseLocusVerdict::ReferencePointsOnly
        && !(pts.len() == 4 && ProjPoint::references().iter().all(|r| pts.iter().any(|p| p.same_as(r))))
    {
        verdict = BaseLocusVerdict::ExtraPoints;
    }
    (verdict, pts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantEntries {
    pub a: NFElem,
    pub b: NFElem,
    pub c: NFElem,
    pub d: NFElem,
}

impl CirculantEntries {
    /// a = (r+1)(3r−2), b = 3r−2, c = r²(3r−2), d = −2r²−5r+5.
    pub fn from_quadrics() -> Self {
        let b = three_r_minus_two();
        CirculantEntries {
            a: &NFElem::from_ints(1, 1, 0) * &b,
            c: &NFElem::from_ints(0, 0, 1) * &b,
            d: NFElem::from_ints(5, -5, -2),
            b,
        }
    }

    /// Rows (a,b,c,d), (d,a,b,c), (c,d,a,b), (b,c,d,a).
    pub fn matrix(&self) -> RingMatrix {
        let e = [&self.a, &self.b, &self.c, &self.d];
        let rows = (0..4)
            .map(|i| (0..4).map(|j| e[(j + 4 - i) % 4].clone()).collect())
            .collect();
        RingMatrix::from_scalars(rows).expect("4x4")
    }

    /// (a+b+c+d)(a−b+c−d)((a−c)² + (b−d)²)
    pub fn eigenvalue_product(&self) -> NFElem {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let s1 = &(a + b) + &(c + d);
        let s2 = &(a - b) + &(c - d);
        let ac = a - c;
        let bd = b - d;
        &(&s1 * &s2) * &(&(&ac * &ac) + &(&bd * &bd))
    }

    pub fn cofactor_det(&self) -> NFElem {
        self.matrix()
            .det()
            .expect("square")
            .as_constant()
            .expect("scalar entries")
    }
}

/// The ten degree-2 monomials in X, Y, Z, T, in graded-lex order.
pub fn quadric_monomials() -> Vec<Monomial> {
    let mut out = Vec::new();
    for (i, &a) in Var::COORDS.iter().enumerate() {
        for &b in &Var::COORDS[i..] {
            out.push(product(a, b));
        }
    }
    out.sort();
    out.reverse();
    out
}

pub fn quadric_coefficient_matrix() -> RingMatrix {
    let fam = CubicFamily::get();
    let basis = quadric_monomials();
    let rows = fam
        .quadrics
        .iter()
        .map(|q| basis.iter().map(|b| coord_coefficient(q, b)).collect())
        .collect();
    RingMatrix::from_rows(rows).expect("4x10")
}

pub fn quadric_independence() -> Result<Vec<CheckReport>> {
    let ent = CirculantEntries::from_quadrics();
    let det = ent.cofactor_det();
    let formula = ent.eigenvalue_product();
    if det != formula {
        return Err(Error::Invariant(format!(
            "circulant determinant {det} differs from the eigenvalue product {formula}"
        )));
    }
    let mut out = vec![
        CheckReport::observe("quadric-independence.circulant-det", det.to_string())
            .with_note(format!("a = {}, b = {}, c = {}, d = {}", ent.a, ent.b, ent.c, ent.d))
            .with_note("cofactor expansion equals (a+b+c+d)(a-b+c-d)((a-c)^2+(b-d)^2)"),
    ];
    out.push(CheckReport::compare(
        "quadric-independence.circulant-nonsingular",
        if det.is_zero() { "singular" } else { "nonsingular" },
        "nonsingular",
        "it has four distinct eigenvalues",
    ));

    // rows Q0, Q3, Q2, Q1 on the σ-orbit XY, XT, ZT, YZ reproduce the circulant
    let coeffs = quadric_coefficient_matrix();
    let cols: Vec<usize> = [
        product(Var::X, Var::Y),
        product(Var::X, Var::T),
        product(Var::Z, Var::T),
        product(Var::Y, Var::Z),
    ]
    .iter()
    .map(|mono| {
        quadric_monomials()
            .iter()
            .position(|b| b == mono)
            .expect("quadric monomial")
    })
    .collect();
    let block = coeffs.submatrix(&[0, 3, 2, 1], &cols);
    let matches = block == ent.matrix();
    out.push(
        CheckReport::compare(
            "quadric-independence.orbit-block",
            if matches {
                "circulant(a,b,c,d)"
            } else {
                "not circulant(a,b,c,d)"
            },
            "circulant(a,b,c,d)",
            r"a=(r+1)(3r-2),\quad b=3r-2",
        )
        .with_note(format!("rows Q0, Q3, Q2, Q1 on columns XY, XT, ZT, YZ: {block}")),
    );

    let w = coeffs.rank(None);
    let names: Vec<String> = w.cols.iter().map(|&j| quadric_monomials()[j].to_string()).collect();
    out.push(
        CheckReport::compare(
            "quadric-independence.rank",
            w.rank.to_string(),
            "4",
            "they are linearly independent",
        )
        .with_note(format!(
            "rank over Q(r)(m) of the 4x10 coefficient matrix; nonzero minor on columns {}",
            names.join(", ")
        )),
    );
    Ok(out)
}

/// Applies σ to a stratum's point set and compares with the preimage stratum.
pub fn sigma_equivariant(s: Stratum, m_value: &NFElem) -> Result<bool> {
    let here = classify_stratum(s, Some(m_value))?;
    let pre = classify_stratum(s.sigma_preimage(), Some(m_value))?;
    let sigma = CoordMap::sigma();
    let mapped: Vec<ProjPoint> = pre.points().iter().map(|p| sigma.apply_proj(p)).collect();
    let pts = here.points();
    Ok(mapped.len() == pts.len() && mapped.iter().all(|p| pts.iter().any(|q| q.same_as(p))))
}

fn stratum_claim(s: &Stratum) -> Option<(&'static str, &'static str)> {
    let hs = s.hyperplanes();
    match hs.len() {
        4 => Some(("empty", r"Definitely $T\cap X\cap Y\cap Z$ is empty")),
        3 => Some(match s.quadrics()[0] {
            3 => ("{[0:0:1:0]}", "this intersection is $[0:0:1:0]$"),
            0 => (
                "{[0:0:0:1]}",
                "$[1:0:0:0],[0:1:0:0],[0:0:0:1]$ as the point of intersection",
            ),
            1 => (
                "{[1:0:0:0]}",
                "$[1:0:0:0],[0:1:0:0],[0:0:0:1]$ as the point of intersection",
            ),
            _ => (
                "{[0:1:0:0]}",
                "$[1:0:0:0],[0:1:0:0],[0:0:0:1]$ as the point of intersection",
            ),
        }),
        _ => None,
    }
}

/// All base-locus checks at a specialized m.
pub fn base_locus_checks(m_value: &NFElem) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let mut results = Vec::new();
    for s in Stratum::all() {
        let res = classify_stratum(s, Some(m_value))?;
        let id = format!("base-locus.stratum[{s}]");
        let computed = res.summary();
        let rep = match (stratum_claim(&s), s.hyperplanes().len()) {
            (Some((claim, cite)), _) => CheckReport::compare(id, computed, claim, cite),
            (None, 2) => {
                // the claim is that the points lie among the reference points
                let within = matches!(res.class, StratumClass::ReferencePoints(_) | StratumClass::Empty);
                let mut rep = CheckReport::compare(
                    id,
                    if within {
                        "within reference points".to_string()
                    } else {
                        computed.clone()
                    },
                    "within reference points",
                    "either $Y=0$ or $Z=0$",
                );
                rep.notes.push(format!("points: {computed}"));
                rep
            }
            (None, 1) => {
                let within = matches!(res.class, StratumClass::ReferencePoints(_) | StratumClass::Empty);
                let mut rep = CheckReport::compare(
                    id,
                    if within {
                        "within reference points".to_string()
                    } else {
                        computed.clone()
                    },
                    "within reference points",
                    "So the intersection of $T=0$ with $Q_1\\cap Q_2\\cap Q_3$ is",
                );
                rep.notes
                    .push(format!("points: {computed}; decided by kernel lifting at m={m_value}"));
                rep
            }
            _ => CheckReport::observe(id, computed)
                .with_note(format!(
                    "decided on the torus at m={m_value}; points with a zero coordinate belong to other strata"
                ))
                .with_note("independence of Q0..Q3 alone would not exclude common zeros"),
        };
        out.push(rep.with_notes(res.identities.iter().cloned()));
        results.push(res);
    }
    let (verdict, pts) = aggregate(&results);
    let computed = match verdict {
        BaseLocusVerdict::ReferencePointsOnly => "the four reference points".to_string(),
        BaseLocusVerdict::ExtraPoints => format!("extra base points: {}", format_point_set(&pts)),
        BaseLocusVerdict::Indeterminate => "indeterminate".to_string(),
    };
    let agg = CheckReport::compare(
        "base-locus.aggregate",
        computed,
        "the four reference points",
        "has four reference points as four base points",
    )
    .with_note(format!("union over all 16 strata at m={m_value}"))
    .with_note("base-point freeness of 3K_V then rests on the cited codimension argument, which is not recomputed");
    let agg = if verdict == BaseLocusVerdict::Indeterminate {
        CheckReport {
            agreement: crate::report::Agreement::Indeterminate,
            ..agg
        }
    } else {
        agg
    };
    out.push(agg);
    Ok(out)
}

/// Matrix, determinant and field-identity checks for the T = 0 system.
pub fn single_hyperplane_checks() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let sys = single_hyperplane_system(Var::T)?;
    let printed = printed_t_matrix();
    out.push(
        CheckReport::compare(
            "base-locus.matrix-T",
            sys.matrix.to_string(),
            printed.to_string(),
            "which can be written in the matrix form",
        )
        .with_note("columns XY, YZ, ZX; rows Q1, Q2, Q3 restricted to T=0")
        .with_note(format!(
            "rows divided by 3r-2: {}",
            sys.scaled_rows
                .iter()
                .map(|i| format!("Q{i}"))
                .collect::<Vec<_>>()
                .join(", ")
        )),
    );
    let conj: Vec<&str> = [Var::X, Var::Y, Var::Z]
        .into_iter()
        .filter(|&h| {
            single_hyperplane_system(h)
                .map(|s| s.matrix == sys.matrix)
                .unwrap_or(false)
        })
        .map(Var::name)
        .collect();
    out.push(CheckReport::observe(
        "base-locus.matrix-conjugates",
        format!("hyperplanes with the same matrix as T: {}", conj.join(", ")),
    ));
    out.extend(single_hyperplane_det_analysis(Var::T)?);

    let minpoly_multiple = crate::algebra::nf_reduce(&[10, -25, 11, 6, 4, -12, 9].map(|c| crate::algebra::rat(c, 1)));
    out.push(
        CheckReport::compare(
            "base-locus.m-coefficient-identity",
            minpoly_multiple.to_string(),
            "0",
            "m(9r^3+9r^2-9)=0",
        )
        .with_note("9r^6-12r^5+4r^4+6r^3+11r^2-25r+10 reduced modulo r^3+r^2-1"),
    );

    let g = upoly_gcd(
        &crate::algebra::QPoly::from_ints(&[10, 4, -20]),
        &crate::algebra::nf::minimal_polynomial(),
    )?;
    out.push(
        CheckReport::compare(
            "base-locus.claimed-det-coprime",
            g.to_string(),
            "1",
            "it is relatively prime to $r^3+r^2-1$",
        )
        .with_note("monic gcd of -20x^2+4x+10 and x^3+x^2-1; the unit ideal (1) is the gcd 1"),
    );
    Ok(out)
}
