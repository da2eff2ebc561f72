use std::collections::BTreeMap;
use std::fmt;

use crate::numfield::{Field, FieldElement};

/// Exponent vector for the variables (X, Y, Z).
pub type Exp = [u32; 3];

pub const VAR_NAMES: [&str; 3] = ["X", "Y", "Z"];

/// Sparse polynomial over a number field in the three variables X, Y, Z.
///
/// Terms are kept in a `BTreeMap` keyed by exponent, so the map order is the
/// lexicographic order with X > Y > Z and the last entry is the lex-leading
/// term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Exp, FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&VAR_NAMES))
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut p = Poly::zero(&c.field().clone());
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn one(field: &Field) -> Self {
        Poly::constant(field.one())
    }

    /// The variable with index `i` (0 = X, 1 = Y, 2 = Z).
    pub fn var(field: &Field, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Poly::monomial(field, e, field.one())
    }

    pub fn monomial(field: &Field, e: Exp, c: FieldElement) -> Self {
        let mut p = Poly::zero(field);
        p.add_term(e, c);
        p
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Exp, FieldElement)>) -> Self {
        let mut p = Poly::zero(field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Exp, FieldElement> {
        &self.terms
    }

    pub fn coeff(&self, e: &Exp) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, e: Exp, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial reports `None`.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e[0] + e[1] + e[2] == d)
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    pub fn lex_leading(&self) -> Option<(&Exp, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Leading term for graded lexicographic order with X > Y > Z.
    pub fn grlex_leading(&self) -> Option<(&Exp, &FieldElement)> {
        self.terms.iter().max_by_key(|(e, _)| (e[0] + e[1] + e[2], **e))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }

    pub fn neg(&self) -> Self {
        Poly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        if s.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Poly::zero(&self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        p
    }

    pub fn mul_monomial(&self, e: Exp, c: &FieldElement) -> Self {
        Poly::from_terms(
            &self.field,
            self.terms
                .iter()
                .map(|(t, x)| ([t[0] + e[0], t[1] + e[1], t[2] + e[2]], x * c)),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one(&self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Poly::zero(&self.field);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[v] -= 1;
            p.add_term(ne, c.scale(&crate::numfield::rat(e[v] as i64)));
        }
        p
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (ld, lc) = d.lex_leading()?;
        let (ld, inv) = (*ld, lc.invert().ok()?);
        let mut r = self.clone();
        let mut q = Poly::zero(&self.field);
        while let Some((lr, cr)) = r.lex_leading() {
            if (0..3).any(|i| lr[i] < ld[i]) {
                return None;
            }
            let e = [lr[0] - ld[0], lr[1] - ld[1], lr[2] - ld[2]];
            let c = cr * &inv;
            r = r.sub(&d.mul_monomial(e, &c));
            q.add_term(e, c);
        }
        Some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Coefficients of `self` viewed as a polynomial in variable `v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(&self.field); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[v] = 0;
            out[e[v] as usize].add_term(ne, c.clone());
        }
        out
    }

    /// Evaluates all three variables.
    pub fn eval(&self, pt: &[FieldElement; 3]) -> FieldElement {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    t = &t * &pt[i].pow(e[i]);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes each variable by a polynomial.
    pub fn substitute(&self, images: &[Poly; 3]) -> Poly {
        let mut cache: [Vec<Poly>; 3] = Default::default();
        for i in 0..3 {
            let d = self.degree_in(i).unwrap_or(0);
            let mut pw = vec![Poly::one(&self.field)];
            for k in 1..=d as usize {
                let next = pw[k - 1].mul(&images[i]);
                pw.push(next);
            }
            cache[i] = pw;
        }
        let mut out = Poly::zero(&self.field);
        for (e, c) in &self.terms {
            let t = cache[0][e[0] as usize]
                .mul(&cache[1][e[1] as usize])
                .mul(&cache[2][e[2] as usize])
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Scales so the graded-lex leading coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.grlex_leading() {
            Some((_, c)) => self.scale(&c.invert().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Terms sorted for printing: graded lexicographic, largest first.
    pub fn grlex_terms(&self) -> Vec<(Exp, FieldElement)> {
        let mut v: Vec<(Exp, FieldElement)> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|(e, _)| std::cmp::Reverse((e[0] + e[1] + e[2], *e)));
        v
    }

    /// Prints with custom variable names (the parser reads the result back).
    pub fn format_with(&self, names: &[&str; 3]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.grlex_terms() {
            let mut mono = Vec::new();
            for i in 0..3 {
                match e[i] {
                    0 => {}
                    1 => mono.push(names[i].to_string()),
                    k => mono.push(format!("{}^{}", names[i], k)),
                }
            }
            let mono = mono.join("*");
            let text = c.to_string();
            let compound = c.is_compound();
            let (neg, body) = if !compound && text.starts_with('-') {
                (true, text[1..].to_string())
            } else {
                (false, text)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let body = if compound { format!("({body})") } else { body };
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&body);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}
