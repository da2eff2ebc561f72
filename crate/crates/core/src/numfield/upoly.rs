use std::fmt;

use super::{Field, FieldElement, FieldError, Rational};

/// Dense univariate polynomial over a number field, constant term first.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        UniPoly::new(&field, vec![c])
    }

    /// The monic linear polynomial `t - r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        let f = r.field().clone();
        UniPoly::new(&f, vec![-r, f.one()])
    }

    pub fn from_rationals(field: &Field, coeffs: &[Rational]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|c| field.from_rational(c.clone())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(&self.field, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        UniPoly::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(&self.field, out)
    }

    /// Euclidean division. Fails only when `other` is zero.
    pub fn divrem(&self, other: &Self) -> Result<(Self, Self), FieldError> {
        let lead = other.leading().ok_or(FieldError::DivisionByZero)?;
        let inv = lead.invert()?;
        let mut r = self.coeffs.clone();
        let m = other.coeffs.len();
        if r.len() < m {
            return Ok((UniPoly::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - m + 1];
        while r.len() >= m {
            let shift = r.len() - m;
            let c = r.last().unwrap() * &inv;
            if !c.is_zero() {
                for (i, oi) in other.coeffs.iter().enumerate() {
                    r[shift + i] -= &(&c * oi);
                }
            }
            q[shift] = c;
            r.pop();
        }
        Ok((UniPoly::new(&self.field, q), UniPoly::new(&self.field, r)))
    }

    /// Quotient if `other` divides `self` exactly.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.divrem(other).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.invert().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&super::rat(i as i64)))
                .collect(),
        )
    }

    /// Rational coefficients when every coefficient lies in Q.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }

    /// Formats the polynomial using `var` as the variable name.
    pub fn format_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let text = c.to_string();
            let (neg, body) = if !c.is_compound() && text.starts_with('-') {
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
            let body = if c.is_compound() { format!("({body})") } else { body };
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, MinimalPolynomial};

    #[test]
    fn divrem_and_gcd() {
        let q = Field::rationals();
        let f = UniPoly::from_rationals(&q, &[rat(-1), rat(0), rat(1)]);
        let g = UniPoly::from_rationals(&q, &[rat(1), rat(1)]);
        let (quo, r) = f.divrem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(quo, UniPoly::from_rationals(&q, &[rat(-1), rat(1)]));
        assert_eq!(f.gcd(&g), g);
    }

    #[test]
    fn format_over_extension() {
        let k = Field::new(MinimalPolynomial::new(vec![rat(1), rat(0), rat(1)]).unwrap());
        let a = k.generator();
        let p = UniPoly::new(&k, vec![-k.one(), &a + &k.one(), k.one()]);
        assert_eq!(p.to_string(), "t^2+(a+1)*t-1");
    }
}
