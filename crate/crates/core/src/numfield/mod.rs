//! Exact arithmetic in Q and in simple number fields Q(a).
//!
//! A [`Field`] is a cheap handle (reference counted) to a [`NumberField`]
//! defined by a monic minimal polynomial over Q. Elements are stored as their
//! canonical representative: a dense vector of `degree` rational coefficients
//! of a polynomial in the generator `a`.

mod roots;
mod upoly;

pub use roots::{find_roots_in_field, rational_roots, RootSet};
pub use upoly::UniPoly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have degree at least 1")]
    DegreeZero,
    #[error("minimal polynomial is reducible over Q (rational root {0})")]
    Reducible(String),
}

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Monic polynomial over Q, coefficients stored from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinimalPolynomial {
    coeffs: Vec<Rational>,
    verified: bool,
}

impl MinimalPolynomial {
    /// Builds a minimal polynomial from its coefficients (constant term first).
    ///
    /// Degree 1 means the field is Q itself. For degree at most 3 the absence
    /// of rational roots is checked, which settles irreducibility; higher
    /// degrees are accepted with [`MinimalPolynomial::irreducibility_verified`]
    /// returning false.
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self, FieldError> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(FieldError::DegreeZero);
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(FieldError::NotMonic);
        }
        let degree = coeffs.len() - 1;
        let mut verified = degree == 1;
        if (2..=3).contains(&degree) {
            if let Some(r) = rational_roots(&coeffs).into_iter().next() {
                return Err(FieldError::Reducible(r.to_string()));
            }
            verified = true;
        }
        Ok(Self { coeffs, verified })
    }

    pub fn linear() -> Self {
        Self {
            coeffs: vec![Rational::zero(), Rational::one()],
            verified: true,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn irreducibility_verified(&self) -> bool {
        self.verified
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational_poly(&self.coeffs, "t"))
    }
}

/// Formats a rational univariate polynomial (constant term first) in `var`.
pub fn format_rational_poly(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug)]
pub struct NumberField {
    minpoly: MinimalPolynomial,
}

/// Shared handle to a number field.
#[derive(Clone, Debug)]
pub struct Field(Arc<NumberField>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly.coeffs == other.0.minpoly.coeffs
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(minpoly: MinimalPolynomial) -> Self {
        Field(Arc::new(NumberField { minpoly }))
    }

    /// The field Q, presented as Q[t]/(t).
    pub fn rationals() -> Self {
        Self::new(MinimalPolynomial::linear())
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.degree()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn minimal_polynomial(&self) -> &MinimalPolynomial {
        &self.0.minpoly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(rat(n))
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }

    /// The generator `a` (for Q this is the root of `t`, i.e. zero).
    pub fn generator(&self) -> FieldElement {
        if self.is_rationals() {
            return self.from_rational(-self.0.minpoly.coeffs[0].clone());
        }
        let mut e = self.zero();
        e.coeffs[1] = Rational::one();
        e
    }

    /// Element with representative `sum coeffs[i] a^i`, reduced if needed.
    pub fn element(&self, coeffs: Vec<Rational>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: self.reduce(coeffs),
        }
    }

    fn reduce(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        let n = self.degree();
        let m = &self.0.minpoly.coeffs;
        while c.len() > n {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - n;
            for (i, mi) in m.iter().take(n).enumerate() {
                c[shift + i] -= &top * mi;
            }
        }
        c.resize(n, Rational::zero());
        c
    }
}

/// An element of a number field, in canonical (reduced) form.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational_poly(&self.coeffs, "a"))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients of the canonical representative, constant term first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the element as a rational number when it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// True when the printed form needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let n = self.coeffs.len();
        if n == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm on the
    /// representative and the minimal polynomial.
    pub fn invert(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        let m = self.field.minimal_polynomial().coeffs().to_vec();
        let (g, s) = qpoly::ext_gcd_left(&self.coeffs, &m);
        // g is a nonzero constant because the minimal polynomial is irreducible
        // (or at least coprime to this representative).
        if g.len() != 1 {
            return Err(FieldError::DivisionByZero);
        }
        let inv = g[0].recip();
        Ok(self.field.element(s.into_iter().map(|c| c * &inv).collect()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        self.try_mul(&other.invert()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The rational matrix of multiplication by this element on the basis
    /// `1, a, ..., a^(n-1)`; column `j` holds the image of `a^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.field.degree();
        let mut cols = Vec::with_capacity(n);
        let mut basis = self.field.one();
        let a = self.field.generator();
        for _ in 0..n {
            cols.push((&basis * self).coeffs);
            basis = &basis * &a;
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        crate::linalg::rational_det(self.multiplication_matrix())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field element arithmetic")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field element arithmetic")
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$checked(rhs).expect("field element arithmetic")
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$checked(&rhs).expect("field element arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        assert!(self.field == rhs.field, "field element arithmetic: mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        assert!(self.field == rhs.field, "field element arithmetic: mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in self.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -(self.clone())
    }
}

/// Dense univariate polynomials over Q, constant term first. Used for the
/// minimal polynomial and for the rational root search.
pub(crate) mod qpoly {
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        trim(out)
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = b.last().unwrap().clone();
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lead;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] -= &c * bi;
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn monic(p: Vec<Rational>) -> Vec<Rational> {
        let p = trim(p);
        match p.last() {
            Some(l) => {
                let l = l.clone();
                p.into_iter().map(|c| c / &l).collect()
            }
            None => p,
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    pub fn derivative(p: &[Rational]) -> Vec<Rational> {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn eval(p: &[Rational], x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Returns `(g, s)` with `g = s*a + t*b` for some `t`.
    pub fn ext_gcd_left(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r0 = trim(a.to_vec());
        let mut r1 = trim(b.to_vec());
        let mut s0 = vec![Rational::from_integer(1.into())];
        let mut s1: Vec<Rational> = Vec::new();
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(coeffs: &[i64]) -> Field {
        Field::new(MinimalPolynomial::new(coeffs.iter().map(|&c| rat(c)).collect()).unwrap())
    }

    #[test]
    fn rational_sum() {
        let q = Field::rationals();
        let s = q.from_rational(ratio(1, 2)) + q.from_rational(ratio(1, 3));
        assert_eq!(s, q.from_rational(ratio(5, 6)));
    }

    #[test]
    fn cube_root_of_unity_square() {
        let k = field(&[1, 1, 1]);
        let a = k.generator();
        assert_eq!(&a * &a, -a.clone() - k.one());
        assert_eq!(a.invert().unwrap(), -a - k.one());
    }

    #[test]
    fn sqrt_five() {
        let k = field(&[-5, 0, 1]);
        let a = k.generator();
        assert_eq!((k.one() + &a) * (k.one() - &a), k.from_int(-4));
        assert_eq!(a.invert().unwrap(), a.scale(&ratio(1, 5)));
    }

    #[test]
    fn invert_rational() {
        let q = Field::rationals();
        assert_eq!(
            q.from_rational(ratio(2, 3)).invert().unwrap(),
            q.from_rational(ratio(3, 2))
        );
        assert_eq!(q.zero().invert(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mismatched_fields() {
        let k1 = field(&[1, 0, 1]);
        let k2 = field(&[-5, 0, 1]);
        assert_eq!(k1.generator().try_add(&k2.generator()), Err(FieldError::FieldMismatch));
    }

    #[test]
    fn rejects_reducible_and_non_monic() {
        assert!(matches!(
            MinimalPolynomial::new(vec![rat(-1), rat(0), rat(1)]),
            Err(FieldError::Reducible(_))
        ));
        assert_eq!(
            MinimalPolynomial::new(vec![rat(1), rat(0), rat(2)]),
            Err(FieldError::NotMonic)
        );
        let quartic = MinimalPolynomial::new(vec![rat(9), rat(0), rat(-14), rat(0), rat(1)]).unwrap();
        assert!(!quartic.irreducibility_verified());
    }

    #[test]
    fn norm_of_gaussian_integer() {
        let k = field(&[1, 0, 1]);
        let z = k.from_int(3) + k.generator().scale(&rat(4));
        assert_eq!(z.norm(), rat(25));
    }

    #[test]
    fn display_elements() {
        let k = field(&[1, 0, 1]);
        let e = k.generator().scale(&rat(8)) - k.one();
        assert_eq!(e.to_string(), "8*a-1");
        assert_eq!(k.from_rational(ratio(-3, 2)).to_string(), "-3/2");
    }
}
