//! Sparse polynomials over Q(r) in the variables X, Y, Z, T and the
//! parameter m.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order with X > Y > Z > T > m. Printing walks the map from
//! the largest monomial down, which fixes the canonical text form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::field;
use super::nf::NFElem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    T,
    M,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X, Var::Y, Var::Z, Var::T, Var::M];
    pub const COORDS: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "X",
            Var::Y => "Y",
            Var::Z => "Z",
            Var::T => "T",
            Var::M => "m",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; 5]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; 5])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn from_coords(x: u32, y: u32, z: u32, t: u32) -> Self {
        Monomial([x, y, z, t, 0])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree in X, Y, Z, T only.
    pub fn coord_degree(&self) -> u32 {
        self.0[..4].iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn with_exp(&self, v: Var, k: u32) -> Monomial {
        let mut e = self.0;
        e[v.index()] = k;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in Var::ALL {
            match self.exp(v) {
                0 => {}
                1 => parts.push(v.name().to_string()),
                k => parts.push(format!("{}^{k}", v.name())),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, NFElem>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: NFElem) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(NFElem::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(NFElem::from_int(1), Monomial::var(v))
    }

    pub fn term(c: NFElem, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, NFElem)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &NFElem) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &NFElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> NFElem {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `Some(c)` if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<NFElem> {
        match self.terms.len() {
            0 => Some(NFElem::default()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// `Some((c, mono))` if the polynomial is a single nonzero term.
    pub fn as_single_term(&self) -> Option<(Monomial, NFElem)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Homogeneous of degree `d` in X, Y, Z, T (m is a parameter and does
    /// not count toward the degree).
    pub fn is_coord_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.coord_degree() == d)
    }

    pub fn scale(&self, c: &NFElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let k = m.exp(v);
            if k == 0 {
                continue;
            }
            out.add_term(m.with_exp(v, k - 1), &(c * &NFElem::from_int(k as i64)));
        }
        out
    }

    /// Ring homomorphism sending each variable `v` to `assign(v)`, or to
    /// itself when `assign` returns `None`.
    pub fn substitute<F>(&self, assign: F) -> MPoly
    where
        F: Fn(Var) -> Option<MPoly>,
    {
        let images: Vec<MPoly> = Var::ALL
            .iter()
            .map(|&v| assign(v).unwrap_or_else(|| MPoly::var(v)))
            .collect();
        // cache powers per variable
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::from_int(1), p.clone()]).collect();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for v in Var::ALL {
                let k = m.exp(v) as usize;
                if k == 0 {
                    continue;
                }
                let pw = &mut powers[v.index()];
                while pw.len() <= k {
                    let next = &pw[pw.len() - 1] * &images[v.index()];
                    pw.push(next);
                }
                t = &t * &pw[k];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Substitution from an explicit list of `(variable, image)` pairs.
    pub fn substitute_map(&self, assignment: &[(Var, MPoly)]) -> MPoly {
        self.substitute(|v| assignment.iter().find(|(w, _)| *w == v).map(|(_, p)| p.clone()))
    }

    /// Sets each listed variable to a scalar.
    pub fn specialize(&self, values: &[(Var, NFElem)]) -> MPoly {
        self.substitute(|v| {
            values
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, c)| MPoly::constant(c.clone()))
        })
    }

    /// Full evaluation; every variable that occurs must be supplied.
    pub fn eval(&self, values: &[(Var, NFElem)]) -> Result<NFElem> {
        let mut table: [Option<&NFElem>; 5] = [None; 5];
        for (v, c) in values {
            table[v.index()] = Some(c);
        }
        let mut acc = NFElem::default();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let x = table[v.index()]
                    .ok_or_else(|| Error::InvalidInput(format!("evaluation left {v} free in {self}")))?;
                term = &term * &x.pow(e);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Coefficients with respect to `v`, lowest power first; each coefficient
    /// is free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].add_term(m.with_exp(v, 0), c);
        }
        out
    }

    /// Exact division by a nonzero scalar.
    pub fn div_scalar(&self, c: &NFElem) -> Result<MPoly> {
        Ok(self.scale(&c.invert()?))
    }

    /// `Some(c)` when `self = c * other` for a scalar `c`.
    pub fn scalar_ratio(&self, other: &MPoly) -> Option<NFElem> {
        let (m, c) = other.terms.iter().next_back()?;
        let ratio = &self.coeff(m) * &c.invert().ok()?;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Splits a coefficient into a sign and a printable magnitude. Rational
/// coefficients carry their own sign; irrational ones are parenthesized and
/// keep the sign inside.
fn coefficient_text(c: &NFElem) -> (bool, Option<String>) {
    match c.as_rational() {
        Some(q) => {
            let mag = q.abs();
            let text = if num_traits::One::is_one(&mag) {
                None
            } else {
                Some(mag.to_string())
            };
            (q.is_negative(), text)
        }
        None => (false, Some(format!("({c})"))),
    }
}

/// Canonical text: terms in descending graded-lex order, e.g.
/// `(-2 + 3*r)*X*T + 2*Y^2 - m`.
impl field::Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }

    fn one() -> Self {
        MPoly::from_int(1)
    }

    fn from_i64(n: i64) -> Self {
        MPoly::from_int(n)
    }

    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn pow(&self, e: u32) -> Self {
        MPoly::pow(self, e)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let first = out.is_empty();
            let is_const = *m == Monomial::one();
            let (neg, mag) = if is_const && c.as_rational().is_none() && self.terms.len() == 1 {
                (false, Some(c.to_string()))
            } else {
                coefficient_text(c)
            };
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mag, is_const) {
                (Some(s), true) => out.push_str(&s),
                (None, true) => out.push('1'),
                (Some(s), false) => out.push_str(&format!("{s}*{m}")),
                (None, false) => out.push_str(&m.to_string()),
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

/// Shorthands for building polynomials in code.
pub fn x() -> MPoly {
    MPoly::var(Var::X)
}
pub fn y() -> MPoly {
    MPoly::var(Var::Y)
}
pub fn z() -> MPoly {
    MPoly::var(Var::Z)
}
pub fn t() -> MPoly {
    MPoly::var(Var::T)
}
pub fn m() -> MPoly {
    MPoly::var(Var::M)
}
pub fn c(e: NFElem) -> MPoly {
    MPoly::constant(e)
}
