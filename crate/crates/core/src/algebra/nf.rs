//! The cubic number field Q(r), r³ + r² − 1 = 0.
//!
//! Elements are kept in the basis (1, r, r²) and are always fully reduced,
//! so structural equality coincides with equality in the field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Coefficients of the minimal polynomial r³ + r² − 1, lowest degree first.
pub fn minimal_polynomial() -> UPoly<BigRational> {
    UPoly::from_ints(&[-1, 0, 1, 1])
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NFElem {
    c: [BigRational; 3],
}

impl NFElem {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational) -> Self {
        NFElem { c: [c0, c1, c2] }
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64) -> Self {
        NFElem::new(
            BigRational::from_integer(c0.into()),
            BigRational::from_integer(c1.into()),
            BigRational::from_integer(c2.into()),
        )
    }

    pub fn from_rational(q: BigRational) -> Self {
        NFElem::new(q, BigRational::zero(), BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0, 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// The generator r.
    pub fn r() -> Self {
        Self::from_ints(0, 1, 0)
    }

    pub fn coeffs(&self) -> &[BigRational; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1].is_zero() && self.c[2].is_zero() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = NFElem::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_upoly(&self) -> UPoly<BigRational> {
        UPoly::new(self.c.to_vec())
    }

    pub fn invert(&self) -> Result<Self> {
        nf_invert(self)
    }
}

/// Reduces a rational polynomial in r (lowest degree first) modulo r³ + r² − 1.
pub fn nf_reduce(p: &[BigRational]) -> NFElem {
    let mut c: Vec<BigRational> = p.to_vec();
    // r^k = r^(k-3) - r^(k-1)
    for k in (3..c.len()).rev() {
        let a = std::mem::replace(&mut c[k], BigRational::zero());
        if a.is_zero() {
            continue;
        }
        c[k - 3] += &a;
        c[k - 1] -= &a;
    }
    c.resize(3, BigRational::zero());
    NFElem::new(c[0].clone(), c[1].clone(), c[2].clone())
}

/// Multiplicative inverse by Cramer's rule on the multiplication matrix of `a`
/// in the basis (1, r, r²); its determinant is the field norm of `a`.
pub fn nf_invert(a: &NFElem) -> Result<NFElem> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = NFElem::r();
    let ar = a * &r;
    let ar2 = &ar * &r;
    // m[i][j] = coefficient of r^i in a·r^j
    let cols = [&a.c, &ar.c, &ar2.c];
    let m = |i: usize, j: usize| &cols[j][i];
    let det2 = |i0: usize, i1: usize, j0: usize, j1: usize| m(i0, j0) * m(i1, j1) - m(i0, j1) * m(i1, j0);
    let norm = m(0, 0) * det2(1, 2, 1, 2) - m(0, 1) * det2(1, 2, 0, 2) + m(0, 2) * det2(1, 2, 0, 1);
    // the minimal polynomial is irreducible, so a nonzero element has nonzero norm
    if norm.is_zero() {
        return Err(Error::Invariant(format!("zero norm for nonzero element {a}")));
    }
    // solving M x = e0: x_j is the (0, j) cofactor divided by the norm
    let x0 = det2(1, 2, 1, 2) / &norm;
    let x1 = -det2(1, 2, 0, 2) / &norm;
    let x2 = det2(1, 2, 0, 1) / &norm;
    Ok(NFElem::new(x0, x1, x2))
}

impl<'a> Add<&'a NFElem> for &'a NFElem {
    type Output = NFElem;
    fn add(self, o: &NFElem) -> NFElem {
        NFElem::new(&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2])
    }
}

impl<'a> Sub<&'a NFElem> for &'a NFElem {
    type Output = NFElem;
    fn sub(self, o: &NFElem) -> NFElem {
        NFElem::new(&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2])
    }
}

impl<'a> Mul<&'a NFElem> for &'a NFElem {
    type Output = NFElem;
    fn mul(self, o: &NFElem) -> NFElem {
        let (a, b) = (&self.c, &o.c);
        let p0 = &a[0] * &b[0];
        let p1 = &a[0] * &b[1] + &a[1] * &b[0];
        let p2 = &a[0] * &b[2] + &a[1] * &b[1] + &a[2] * &b[0];
        let p3 = &a[1] * &b[2] + &a[2] * &b[1];
        let p4 = &a[2] * &b[2];
        // r^3 = 1 - r^2, r^4 = -1 + r + r^2
        NFElem::new(p0 + &p3 - &p4, p1 + &p4, p2 - p3 + p4)
    }
}

impl Neg for &NFElem {
    type Output = NFElem;
    fn neg(self) -> NFElem {
        NFElem::new(-&self.c[0], -&self.c[1], -&self.c[2])
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NFElem {
            type Output = NFElem;
            fn $m(self, o: NFElem) -> NFElem {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NFElem {
    type Output = NFElem;
    fn neg(self) -> NFElem {
        -&self
    }
}

impl field::Ring for NFElem {
    fn zero() -> Self {
        NFElem::default()
    }
    fn one() -> Self {
        NFElem::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        NFElem::from_int(n)
    }
    fn is_zero(&self) -> bool {
        NFElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl field::Field for NFElem {
    fn inv(&self) -> Result<Self> {
        nf_invert(self)
    }
}

fn write_term(out: &mut String, coef: &BigRational, name: &str, first: bool) {
    let neg = coef.is_negative();
    let mag = coef.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if name.is_empty() {
        out.push_str(&mag.to_string());
    } else if mag.is_one() {
        out.push_str(name);
    } else {
        out.push_str(&format!("{mag}*{name}"));
    }
}

/// Canonical form: ascending powers of r, reduced fractions, explicit signs,
/// e.g. `-2 + 3*r` or `17/35 + 29/35*r + 16/35*r^2`.
impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, name) in ["", "r", "r^2"].iter().enumerate() {
            if self.c[k].is_zero() {
                continue;
            }
            let first = out.is_empty();
            write_term(&mut out, &self.c[k], name, first);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElem({self})")
    }
}
