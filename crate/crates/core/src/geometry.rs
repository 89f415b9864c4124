//! The concrete objects on P³: the order-4 automorphism σ, its fixed lines,
//! and the four cubics C₀..C₃ with their quadric cofactors.

use std::fmt;
use std::sync::OnceLock;

use crate::algebra::{parse_poly, MPoly, NFElem, Var};
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// A point of P³ with coordinates in Q(r), in the order (X, Y, Z, T).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint(pub [NFElem; 4]);

impl ProjPoint {
    pub fn from_ints(c: [i64; 4]) -> Self {
        ProjPoint(c.map(NFElem::from_int))
    }

    /// The coordinate point where only `v` is nonzero.
    pub fn reference(v: Var) -> Self {
        let mut c = [0; 4];
        c[v.index()] = 1;
        Self::from_ints(c)
    }

    pub fn references() -> [ProjPoint; 4] {
        Var::COORDS.map(ProjPoint::reference)
    }

    pub fn coord(&self, v: Var) -> &NFElem {
        &self.0[v.index()]
    }

    pub fn assignment(&self) -> Vec<(Var, NFElem)> {
        Var::COORDS.iter().map(|&v| (v, self.coord(v).clone())).collect()
    }

    /// Same projective point: all 2×2 minors vanish.
    pub fn same_as(&self, o: &ProjPoint) -> bool {
        (0..4).all(|i| (0..4).all(|j| (&self.0[i] * &o.0[j] - &self.0[j] * &o.0[i]).is_zero()))
    }

    /// Scaled so that the first nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjPoint {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(lead) => {
                let inv = lead.invert().expect("nonzero");
                ProjPoint(self.0.clone().map(|c| &c * &inv))
            }
            None => self.clone(),
        }
    }

    pub fn is_reference(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| match c.as_rational() {
                Some(q) => q.to_string(),
                None => format!("({c})"),
            })
            .collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Canonical text for a set of points, e.g. `{[0:1:0:0], [0:0:1:0]}`,
/// listed in the order of the reference coordinates X, Y, Z, T (reverse
/// lexicographic on normalized coordinates).
pub fn format_point_set(points: &[ProjPoint]) -> String {
    let mut pts: Vec<ProjPoint> = Vec::new();
    for p in points.iter().map(ProjPoint::normalized) {
        if !pts.iter().any(|q| q.same_as(&p)) {
            pts.push(p);
        }
    }
    let mut text: Vec<(Vec<bool>, String)> = pts
        .iter()
        .map(|p| (p.0.iter().map(|c| c.is_zero()).collect(), p.to_string()))
        .collect();
    text.sort();
    let body: Vec<String> = text.into_iter().map(|(_, s)| s).collect();
    format!("{{{}}}", body.join(", "))
}

/// A signed coordinate permutation: coordinate `v` of the image point is
/// `sign * p[source]`. Composition with a polynomial substitutes each
/// variable by its image, so `X` under σ becomes `T`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoordMap {
    images: [(Var, i8); 4],
}

impl CoordMap {
    pub fn new(images: [(Var, i8); 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for (v, s) in images {
            if v == Var::M || !(s == 1 || s == -1) || seen[v.index()] {
                return Err(Error::InvalidInput("not a signed permutation of X, Y, Z, T".into()));
            }
            seen[v.index()] = true;
        }
        Ok(CoordMap { images })
    }

    pub fn identity() -> Self {
        CoordMap {
            images: Var::COORDS.map(|v| (v, 1)),
        }
    }

    /// σ(X, Y, Z, T) = (T, X, Y, Z).
    pub fn sigma() -> Self {
        CoordMap {
            images: [(Var::T, 1), (Var::X, 1), (Var::Y, 1), (Var::Z, 1)],
        }
    }

    pub fn image(&self, v: Var) -> (Var, i8) {
        self.images[v.index()]
    }

    /// `self ∘ other` as maps on points.
    pub fn compose(&self, other: &CoordMap) -> CoordMap {
        let images = Var::COORDS.map(|v| {
            let (src, s1) = self.image(v);
            let (src2, s2) = other.image(src);
            (src2, s1 * s2)
        });
        CoordMap { images }
    }

    pub fn pow(&self, k: u32) -> CoordMap {
        (0..k).fold(CoordMap::identity(), |acc, _| acc.compose(self))
    }

    /// Smallest k ≥ 1 with selfᵏ = id (at most 8 for signed 4-permutations,
    /// projectively -id counts as id).
    pub fn order(&self) -> u32 {
        let neg_id = CoordMap {
            images: Var::COORDS.map(|v| (v, -1)),
        };
        let mut g = *self;
        for k in 1..=8 {
            if g == CoordMap::identity() || g == neg_id {
                return k;
            }
            g = g.compose(self);
        }
        unreachable!("signed permutations of four coordinates have order dividing 8")
    }

    fn poly_image(&self, v: Var) -> MPoly {
        let (src, s) = self.image(v);
        MPoly::var(src).scale(&NFElem::from_int(i64::from(s)))
    }

    /// Image coordinates of a parametrized point.
    pub fn apply_point(&self, p: &[MPoly; 4]) -> [MPoly; 4] {
        Var::COORDS.map(|v| {
            let (src, s) = self.image(v);
            p[src.index()].scale(&NFElem::from_int(i64::from(s)))
        })
    }

    pub fn apply_proj(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint(Var::COORDS.map(|v| {
            let (src, s) = self.image(v);
            p.coord(src) * &NFElem::from_int(i64::from(s))
        }))
    }
}

/// `f ∘ g`.
pub fn apply_map(f: &MPoly, g: &CoordMap) -> MPoly {
    f.substitute(|v| (v != Var::M).then(|| g.poly_image(v)))
}

/// A line of P³ parametrized by the pair (X, Y), with Z and T eliminated as
/// signed copies of X and Y.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineSub {
    pub name: &'static str,
    z_sign: i8,
    t_sign: i8,
}

impl LineSub {
    /// r = {X + Z = Y + T = 0}.
    pub fn r() -> Self {
        LineSub {
            name: "r",
            z_sign: -1,
            t_sign: -1,
        }
    }

    /// r′ = {X − Z = Y − T = 0}.
    pub fn r_prime() -> Self {
        LineSub {
            name: "r'",
            z_sign: 1,
            t_sign: 1,
        }
    }

    pub fn assignment(&self) -> Vec<(Var, MPoly)> {
        vec![
            (Var::Z, MPoly::var(Var::X).scale(&NFElem::from_int(self.z_sign.into()))),
            (Var::T, MPoly::var(Var::Y).scale(&NFElem::from_int(self.t_sign.into()))),
        ]
    }

    pub fn restrict(&self, f: &MPoly) -> MPoly {
        f.substitute_map(&self.assignment())
    }

    /// (X, Y, ±X, ±Y).
    pub fn parametrization(&self) -> [MPoly; 4] {
        let x = MPoly::var(Var::X);
        let y = MPoly::var(Var::Y);
        [
            x.clone(),
            y.clone(),
            x.scale(&NFElem::from_int(self.z_sign.into())),
            y.scale(&NFElem::from_int(self.t_sign.into())),
        ]
    }

    /// The point of P³ with binary coordinates (x : y).
    pub fn point(&self, x: &NFElem, y: &NFElem) -> ProjPoint {
        ProjPoint([
            x.clone(),
            y.clone(),
            x * &NFElem::from_int(self.z_sign.into()),
            y * &NFElem::from_int(self.t_sign.into()),
        ])
    }
}

/// Whether `g` fixes every point of the line.
pub fn fixes_pointwise(g: &CoordMap, line: &LineSub) -> bool {
    let p = line.parametrization();
    let q = g.apply_point(&p);
    (0..4).all(|i| (0..4).all(|j| (&p[i] * &q[j] - &p[j] * &q[i]).is_zero()))
}

pub fn fixed_line_check(g: &CoordMap, g_name: &str, line: &LineSub) -> CheckReport {
    let fixed = fixes_pointwise(g, line);
    let image: Vec<String> = g
        .apply_point(&line.parametrization())
        .iter()
        .map(|p| p.to_string())
        .collect();
    let computed = if fixed {
        "fixed pointwise"
    } else {
        "not fixed pointwise"
    };
    let id = format!("sigma.{g_name}-on-{}", line.name.replace('\'', "-prime"));
    let rep = match (g_name, line.name) {
        ("sigma2", "r") => CheckReport::compare(id, computed, "fixed pointwise", r"r:=\{X+Z=Y+T=0\}"),
        ("sigma2", "r'") => CheckReport::compare(id, computed, "fixed pointwise", r"r':=\{X-Z=Y-T=0\}"),
        _ => CheckReport::observe(id, computed),
    };
    rep.with_note(format!("image of the parametrization: ({})", image.join(", ")))
}

const A: &str = "(3*r-2)";
const C_SIX: &str = "(-6*r^2+2*r+2)";
const D_FIVE: &str = "(-2*r^2-5*r+5)";

/// Printed data for one cubic: the coordinate cofactor, the part inside the
/// (3r−2)[...] bracket, and the remaining two terms.
struct PrintedCubic {
    cofactor: Var,
    bracket: String,
    outside: String,
}

fn printed_cubics() -> [PrintedCubic; 4] {
    let p = |cofactor, bracket: &str, outside: &str| PrintedCubic {
        cofactor,
        bracket: bracket.to_string(),
        outside: outside.to_string(),
    };
    [
        p(
            Var::T,
            "(X+m*Y+r^2*Z)*T+(r+1)*X*Y",
            &format!("{C_SIX}*X*Z+{D_FIVE}*Y*Z"),
        ),
        p(
            Var::X,
            "(Y+m*Z+r^2*T)*X+(r+1)*Y*Z",
            &format!("{C_SIX}*Y*T+{D_FIVE}*Z*T"),
        ),
        p(
            Var::Y,
            "(Z+m*T+r^2*X)*Y+(r+1)*Z*T",
            &format!("{C_SIX}*Z*X+{D_FIVE}*T*X"),
        ),
        p(
            Var::Z,
            "(T+m*X+r^2*Y)*Z+(r+1)*T*X",
            &format!("{C_SIX}*T*Y+{D_FIVE}*X*Y"),
        ),
    ]
}

/// Reading adopted for the unbalanced printed brackets.
pub const BRACKET_NOTE: &str =
    "printed brackets read as C_i = (coord)*{(3r-2)[(linear)*(coord') + (r+1)(mon)] + (-6r^2+2r+2)(mon) + (-2r^2-5r+5)(mon)}";

#[derive(Clone, Debug)]
pub struct CubicFamily {
    pub cubics: [MPoly; 4],
    pub quadrics: [MPoly; 4],
    pub cofactors: [Var; 4],
    /// Qᵢ = (3r−2)·bracketᵢ + outsideᵢ
    pub brackets: [MPoly; 4],
    pub outsides: [MPoly; 4],
}

impl CubicFamily {
    pub fn quadric_index_for_cofactor(&self, v: Var) -> Option<usize> {
        self.cofactors.iter().position(|&c| c == v)
    }

    /// Cached family; construction is checked once.
    pub fn get() -> &'static CubicFamily {
        static FAMILY: OnceLock<CubicFamily> = OnceLock::new();
        FAMILY.get_or_init(|| build_cubics().expect("printed cubic family is consistent"))
    }
}

pub fn three_r_minus_two() -> NFElem {
    NFElem::from_ints(-2, 3, 0)
}

/// Builds C₀..C₃ from the printed displays and verifies the factorizations
/// Cᵢ = (coord)·Qᵢ and the degrees.
pub fn build_cubics() -> Result<CubicFamily> {
    let printed = printed_cubics();
    let mut cubics = Vec::new();
    let mut quadrics = Vec::new();
    let mut brackets = Vec::new();
    let mut outsides = Vec::new();
    for (i, pc) in printed.iter().enumerate() {
        let bracket = parse_poly(&pc.bracket)?;
        let outside = parse_poly(&pc.outside)?;
        let q = &bracket.scale(&three_r_minus_two()) + &outside;
        let full_text = format!("{}*({A}*({})+{})", pc.cofactor, pc.bracket, pc.outside);
        let cubic = parse_poly(&full_text)?;
        if cubic != &MPoly::var(pc.cofactor) * &q {
            return Err(Error::Invariant(format!("C{i} != {}*Q{i}", pc.cofactor)));
        }
        if !cubic.is_coord_homogeneous(3) || !q.is_coord_homogeneous(2) {
            return Err(Error::Invariant(format!("C{i} or Q{i} has the wrong degree")));
        }
        cubics.push(cubic);
        quadrics.push(q);
        brackets.push(bracket);
        outsides.push(outside);
    }
    let arr = |v: Vec<MPoly>| -> [MPoly; 4] { v.try_into().expect("four entries") };
    Ok(CubicFamily {
        cubics: arr(cubics),
        quadrics: arr(quadrics),
        cofactors: printed.map(|p| p.cofactor),
        brackets: arr(brackets),
        outsides: arr(outsides),
    })
}

/// For each i, the j with Cᵢ ∘ g = Cⱼ exactly (None if no such j).
pub fn family_permutation(family: &CubicFamily, g: &CoordMap) -> [Option<usize>; 4] {
    std::array::from_fn(|i| {
        let img = apply_map(&family.cubics[i], g);
        family.cubics.iter().position(|c| *c == img)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{t, x, y, z};

    #[test]
    fn sigma_sends_x_to_t() {
        assert_eq!(apply_map(&x(), &CoordMap::sigma()), t());
    }

    #[test]
    fn sigma_order_four() {
        let s = CoordMap::sigma();
        assert_eq!(s.order(), 4);
        assert_eq!(s.pow(2).order(), 2);
        let f = &(&x() * &y()) + &(&z() * &z());
        assert_eq!(apply_map(&f, &s.pow(4)), f);
    }

    #[test]
    fn fixed_lines() {
        let s2 = CoordMap::sigma().pow(2);
        assert!(fixes_pointwise(&s2, &LineSub::r()));
        assert!(fixes_pointwise(&s2, &LineSub::r_prime()));
        assert!(!fixes_pointwise(&CoordMap::sigma(), &LineSub::r()));
    }

    #[test]
    fn family_builds_and_factors() {
        let fam = CubicFamily::get();
        assert_eq!(fam.cofactors, [Var::T, Var::X, Var::Y, Var::Z]);
        for i in 0..4 {
            assert_eq!(fam.cubics[i], &MPoly::var(fam.cofactors[i]) * &fam.quadrics[i]);
            // six monomials, as in the independent expansion
            assert_eq!(fam.cubics[i].len(), 6);
        }
    }

    #[test]
    fn q2_on_two_hyperplanes() {
        let fam = CubicFamily::get();
        let restricted = fam.quadrics[2].substitute_map(&[(Var::T, MPoly::zero()), (Var::X, MPoly::zero())]);
        assert_eq!(restricted, (&y() * &z()).scale(&three_r_minus_two()));
    }

    #[test]
    fn sigma_permutes_cubics() {
        let perm = family_permutation(CubicFamily::get(), &CoordMap::sigma());
        assert_eq!(perm, [Some(3), Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn cubics_vanish_at_reference_points() {
        let fam = CubicFamily::get();
        for c in &fam.cubics {
            for p in ProjPoint::references() {
                let mut a = p.assignment();
                a.push((Var::M, NFElem::from_int(7)));
                assert!(c.eval(&a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn point_set_format() {
        let s = format_point_set(&[ProjPoint::reference(Var::Z), ProjPoint::reference(Var::Y)]);
        assert_eq!(s, "{[0:1:0:0], [0:0:1:0]}");
        let p = LineSub::r().point(&NFElem::from_int(1), &NFElem::from_int(0));
        assert_eq!(p.to_string(), "[1:0:-1:0]");
    }
}
