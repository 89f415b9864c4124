//! Dense univariate polynomials over an exact field.

use std::fmt;

use num_rational::BigRational;

use super::field::{Field, Ring};
use crate::error::{Error, Result};

/// Coefficients lowest degree first; the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// x
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| F::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(F::neg).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(F::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&F::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division `self = q * d + rem` with `deg rem < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&dl);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].sub(&c.mul(dc));
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division check: returns the quotient and whether the remainder is zero.
    pub fn divides_into(&self, f: &Self) -> Result<(Self, bool)> {
        let (q, r) = f.div_rem(self)?;
        Ok((q, r.is_zero()))
    }

    /// `(g, s, t)` with `g = s*self + t*other`; `g` is not normalized.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(F::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(F::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("divisor is nonzero");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let text = c.to_string();
            let coeff = if text.contains(' ') { format!("({text})") } else { text };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if c.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{coeff}*{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<F: Field> Ring for UPoly<F> {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::constant(F::one())
    }
    fn from_i64(n: i64) -> Self {
        UPoly::constant(F::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        UPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        UPoly::neg(self)
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

/// Monic gcd. Both inputs zero is rejected.
pub fn upoly_gcd<F: Field>(f: &UPoly<F>, g: &UPoly<F>) -> Result<UPoly<F>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial("gcd of two zero polynomials"));
    }
    // monic remainders keep coefficient growth in check
    let (mut a, mut b) = (f.monic(), g.monic());
    while !b.is_zero() {
        let r = a.div_rem(&b)?.1.monic();
        a = b;
        b = r;
    }
    Ok(a)
}

/// `f / gcd(f, f')`, made monic.
pub fn squarefree_part<F: Field>(f: &UPoly<F>) -> Result<UPoly<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree part of zero"));
    }
    let g = upoly_gcd(f, &f.derivative())?;
    let (q, exact) = g.divides_into(f)?;
    if !exact {
        return Err(Error::Invariant("gcd(f, f') does not divide f".into()));
    }
    Ok(q.monic())
}

/// Number of distinct roots over the algebraic closure.
pub fn distinct_root_count<F: Field>(f: &UPoly<F>) -> Result<usize> {
    Ok(squarefree_part(f)?.degree().unwrap_or(0))
}

pub type QPoly = UPoly<BigRational>;

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn gcd_coprime_with_minimal_polynomial() {
        let f = qp(&[10, 4, -20]);
        let g = qp(&[-1, 0, 1, 1]);
        assert_eq!(upoly_gcd(&f, &g).unwrap(), qp(&[1]));
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = qp(&[2, 4]);
        assert_eq!(upoly_gcd(&f, &QPoly::zero()).unwrap(), qp(&[1, 2]).monic());
        assert_eq!(upoly_gcd(&QPoly::zero(), &f).unwrap(), f.monic());
    }

    #[test]
    fn gcd_both_zero_rejected() {
        assert!(upoly_gcd(&QPoly::zero(), &QPoly::zero()).is_err());
    }

    #[test]
    fn gcd_common_linear_factor() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = qp(&[-1, 1]).pow(2).mul(&qp(&[2, 1]));
        let b = qp(&[-1, 1]).mul(&qp(&[3, 1]));
        assert_eq!(upoly_gcd(&a, &b).unwrap(), qp(&[-1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&qp(&[-1, 1]).pow(3)).unwrap(), qp(&[-1, 1]));
        assert_eq!(squarefree_part(&qp(&[1, 0, 1])).unwrap(), qp(&[1, 0, 1]));
        // x^5 - 2x^4 + x^3 = x^3 (x-1)^2
        let f = qp(&[0, 0, 0, 1, -2, 1]);
        assert_eq!(squarefree_part(&f).unwrap(), qp(&[0, -1, 1]));
        assert!(squarefree_part(&QPoly::zero()).is_err());
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = qp(&[5, -3, 0, 2, 7]);
        let d = qp(&[1, 0, 3]);
        let (q, r) = f.div_rem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
