//! Bivariate polynomials in local coordinates (u, v) with coefficients in
//! any K-module, together with the two blow-up charts.
//!
//! The coefficient type is generic so that the same chart code serves both
//! concrete curves (coefficients in K) and generic members of a linear
//! system (coefficients are linear forms in the unknown coefficients).

use std::collections::BTreeMap;

use crate::numfield::{rat, FieldElement};

use super::poly::Poly;

/// A vector space over the base field.
pub trait Coef: Clone {
    fn is_zero_c(&self) -> bool;
    fn add_assign_c(&mut self, o: &Self);
    fn scaled(&self, s: &FieldElement) -> Self;
}

impl Coef for FieldElement {
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_assign_c(&mut self, o: &Self) {
        *self += o;
    }
    fn scaled(&self, s: &FieldElement) -> Self {
        self * s
    }
}

/// Dense vector over K, used as a linear form in unknown coefficients.
impl Coef for Vec<FieldElement> {
    fn is_zero_c(&self) -> bool {
        self.iter().all(|x| x.is_zero())
    }
    fn add_assign_c(&mut self, o: &Self) {
        for (a, b) in self.iter_mut().zip(o) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
    fn scaled(&self, s: &FieldElement) -> Self {
        self.iter().map(|x| x * s).collect()
    }
}

/// Sparse polynomial in (u, v); keys are `(i, j)` for `u^i v^j`.
#[derive(Clone, Debug)]
pub struct LocalPoly<C: Coef> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coef> Default for LocalPoly<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Coef> LocalPoly<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), C> {
        &self.terms
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: C) {
        if c.is_zero_c() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(x) => {
                x.add_assign_c(&c);
                if x.is_zero_c() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order at the origin (lowest total degree); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    /// Largest power of u dividing every term.
    pub fn u_order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).min()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Option<&C> {
        self.terms.get(&(i, j))
    }

    /// Removes and returns all terms of total degree below `k`.
    pub fn split_low(&mut self, k: u32) -> Vec<((u32, u32), C)> {
        let low: Vec<(u32, u32)> = self.terms.keys().filter(|(i, j)| i + j < k).copied().collect();
        low.into_iter()
            .map(|key| {
                let c = self.terms.remove(&key).unwrap();
                (key, c)
            })
            .collect()
    }

    /// Chart 1 of the blow-up: `v = u (w + c)`, new coordinates `(u, w)`.
    pub fn chart1(&self, c: &FieldElement) -> Self {
        let mut out = LocalPoly::new();
        for ((i, j), coef) in &self.terms {
            if c.is_zero() {
                out.add_term(i + j, *j, coef.clone());
                continue;
            }
            // (w + c)^j = sum_k binom(j, k) c^(j-k) w^k
            let mut binom = rat(1);
            for k in 0..=*j {
                out.add_term(i + j, k, coef.scaled(&c.pow(j - k).scale(&binom)));
                binom = binom * rat((j - k) as i64) / rat(k as i64 + 1);
            }
        }
        out
    }

    /// Chart 2 of the blow-up: `u = s v`, new coordinates `(v, s)`.
    pub fn chart2(&self) -> Self {
        let mut out = LocalPoly::new();
        for ((i, j), coef) in &self.terms {
            out.add_term(i + j, *i, coef.clone());
        }
        out
    }

    /// Drops every term of total degree at least `k`.
    pub fn truncate(&mut self, k: u32) {
        self.terms.retain(|(i, j), _| i + j < k);
    }

    /// Multiplies by `u^k` when `k >= 0`, divides by `u^-k` otherwise.
    /// Division assumes exactness.
    pub fn shift_u(&self, k: i64) -> Self {
        let mut out = LocalPoly::new();
        for ((i, j), c) in &self.terms {
            let ni = *i as i64 + k;
            assert!(ni >= 0, "inexact division by a power of u");
            out.add_term(ni as u32, *j, c.clone());
        }
        out
    }
}

/// Affine chart centred at a point of the projective plane.
///
/// The chart dehomogenises by Z when the point has `z != 0`, otherwise by Y,
/// otherwise by X. The two remaining variables, in X, Y, Z order, become the
/// local coordinates `u` and `v` after translating the point to the origin.
#[derive(Clone, Debug)]
pub struct RootChart {
    /// Index of the variable set to one.
    pub hom: usize,
    /// Indices of the variables that become `u` and `v`.
    pub free: [usize; 2],
    /// Coordinates of the point in the affine chart.
    pub shift: [FieldElement; 2],
}

impl RootChart {
    pub fn at(point: &[FieldElement; 3]) -> Self {
        let hom = (0..3).rev().find(|&i| !point[i].is_zero()).expect("nonzero point");
        let free: Vec<usize> = (0..3).filter(|&i| i != hom).collect();
        let inv = point[hom].invert().expect("nonzero");
        RootChart {
            hom,
            free: [free[0], free[1]],
            shift: [&point[free[0]] * &inv, &point[free[1]] * &inv],
        }
    }

    /// Images of X, Y, Z as polynomials in u = X, v = Y.
    pub fn images(&self, field: &crate::numfield::Field) -> [Poly; 3] {
        let mut out: [Poly; 3] = std::array::from_fn(|_| Poly::one(field));
        for k in 0..2 {
            out[self.free[k]] = Poly::var(field, k).add(&Poly::constant(self.shift[k].clone()));
        }
        out
    }

    /// The local expansion of a homogeneous polynomial.
    pub fn localize(&self, p: &Poly) -> LocalPoly<FieldElement> {
        LocalPoly::from_poly(&p.substitute(&self.images(p.field())))
    }
}

impl LocalPoly<FieldElement> {
    /// Converts to a three-variable polynomial with u -> X, v -> Y.
    pub fn to_poly(&self, field: &crate::numfield::Field) -> Poly {
        Poly::from_terms(field, self.terms.iter().map(|((i, j), c)| ([*i, *j, 0], c.clone())))
    }

    /// Inverse of [`LocalPoly::to_poly`]; ignores the Z exponent's presence
    /// (callers pass polynomials without Z).
    pub fn from_poly(p: &Poly) -> Self {
        let mut out = LocalPoly::new();
        for (e, c) in p.terms() {
            debug_assert_eq!(e[2], 0);
            out.add_term(e[0], e[1], c.clone());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &o.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = LocalPoly::new();
        for ((i, j), c) in &self.terms {
            for ((k, l), d) in &o.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }

    /// Multiplies by the monomial `c u^i v^j`.
    pub fn mul_term(&self, i: u32, j: u32, c: &FieldElement) -> Self {
        let mut out = LocalPoly::new();
        for ((a, b), d) in &self.terms {
            out.add_term(a + i, b + j, d * c);
        }
        out
    }

    /// Coefficients of the restriction to `u = 0`, as a polynomial in `v`
    /// (constant term first).
    pub fn restrict_u0(&self, field: &crate::numfield::Field) -> Vec<FieldElement> {
        let deg = self.terms.keys().filter(|(i, _)| *i == 0).map(|(_, j)| *j).max();
        let Some(deg) = deg else { return Vec::new() };
        let mut out = vec![field.zero(); deg as usize + 1];
        for ((i, j), c) in &self.terms {
            if *i == 0 {
                out[*j as usize] = c.clone();
            }
        }
        out
    }

    pub fn constant_term(&self) -> Option<&FieldElement> {
        self.terms.get(&(0, 0))
    }

    pub fn eval(&self, u: &FieldElement, v: &FieldElement) -> FieldElement {
        let mut acc = u.field().zero();
        for ((i, j), c) in &self.terms {
            acc += &(c * &u.pow(*i) * v.pow(*j));
        }
        acc
    }
}
