//! Homogeneous forms on the projective plane, projective differential forms
//! and the foliation-theoretic predicates built on them.
//!
//! 2-forms are written in the basis `(dY^dZ, dZ^dX, dX^dY)`.

mod gcd;
pub mod local;
mod poly;

pub use gcd::gcd;
pub use local::{Coef, LocalPoly, RootChart};
pub use poly::{Exp, Poly, VAR_NAMES};

use std::fmt;

use thiserror::Error;

use crate::numfield::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("components of the 1-form have different degrees")]
    DegreeMismatch,
    #[error("Euler condition XA+YB+ZC=0 fails")]
    EulerFails,
    #[error("components share the common factor {0}")]
    CommonFactor(String),
    #[error("1-form is identically zero")]
    ZeroForm,
    #[error("polynomials live over different fields")]
    FieldMismatch,
}

/// A homogeneous polynomial of a declared degree (the zero form is allowed).
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    poly: Poly,
}

impl fmt::Debug for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl HomogeneousForm {
    pub fn new(poly: Poly, degree: u32) -> Result<Self, FormError> {
        if !poly.is_homogeneous_of(degree) {
            return Err(FormError::NotHomogeneous(degree));
        }
        Ok(Self { degree, poly })
    }

    /// Wraps a nonzero homogeneous polynomial, reading the degree off it.
    pub fn from_poly(poly: Poly) -> Result<Self, FormError> {
        let d = poly.total_degree().unwrap_or(0);
        Self::new(poly, d)
    }

    pub fn zero(field: &Field, degree: u32) -> Self {
        Self {
            degree,
            poly: Poly::zero(field),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            degree: self.degree + o.degree,
            poly: self.poly.mul(&o.poly),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, FormError> {
        if self.degree != o.degree {
            return Err(FormError::DegreeMismatch);
        }
        Ok(Self {
            degree: self.degree,
            poly: self.poly.add(&o.poly),
        })
    }

    pub fn scale(&self, c: &crate::numfield::FieldElement) -> Self {
        Self {
            degree: self.degree,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        Self {
            degree: self.degree * n,
            poly: self.poly.pow(n),
        }
    }

    pub fn normalized(&self) -> Self {
        Self {
            degree: self.degree,
            poly: self.poly.normalized(),
        }
    }

    pub fn derivative(&self, v: usize) -> Poly {
        self.poly.derivative(v)
    }
}

/// A triple `(A, B, C)` defining the 1-form `A dX + B dY + C dZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveOneForm {
    comps: [HomogeneousForm; 3],
}

/// Components on `dY^dZ`, `dZ^dX`, `dX^dY`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveTwoForm {
    pub comps: [Poly; 3],
}

impl ProjectiveTwoForm {
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }
}

impl ProjectiveOneForm {
    /// Validates homogeneity, the Euler condition and coprimality.
    pub fn new(a: Poly, b: Poly, c: Poly) -> Result<Self, FormError> {
        let form = Self::new_unchecked_gcd(a, b, c)?;
        let g = form.common_factor();
        if !g.is_constant() {
            return Err(FormError::CommonFactor(g.to_string()));
        }
        Ok(form)
    }

    /// Builds the form after dividing out any common factor of the components.
    pub fn new_reduced(a: Poly, b: Poly, c: Poly) -> Result<Self, FormError> {
        let form = Self::new_unchecked_gcd(a, b, c)?;
        let g = form.common_factor();
        if g.is_constant() {
            return Ok(form);
        }
        let [a, b, c] = form.comps.map(|h| h.poly.exact_div(&g).expect("gcd divides"));
        Self::new_unchecked_gcd(a, b, c)
    }

    fn new_unchecked_gcd(a: Poly, b: Poly, c: Poly) -> Result<Self, FormError> {
        if a.field() != b.field() || b.field() != c.field() {
            return Err(FormError::FieldMismatch);
        }
        let d = [&a, &b, &c]
            .iter()
            .filter_map(|p| p.total_degree())
            .max()
            .ok_or(FormError::ZeroForm)?;
        let comps = [
            HomogeneousForm::new(a, d)?,
            HomogeneousForm::new(b, d)?,
            HomogeneousForm::new(c, d)?,
        ];
        let field = comps[0].field().clone();
        let euler = (0..3).fold(Poly::zero(&field), |acc, i| {
            acc.add(&Poly::var(&field, i).mul(comps[i].poly()))
        });
        if !euler.is_zero() {
            return Err(FormError::EulerFails);
        }
        Ok(Self { comps })
    }

    /// The 1-form `G dF - F dG` whose vanishing wedge with a foliation means
    /// `F/G` is a first integral.
    pub fn derivation_of_quotient(f: &HomogeneousForm, g: &HomogeneousForm) -> [Poly; 3] {
        std::array::from_fn(|i| g.poly().mul(&f.derivative(i)).sub(&f.poly().mul(&g.derivative(i))))
    }

    pub fn common_factor(&self) -> Poly {
        gcd3(&self.comps[0].poly, &self.comps[1].poly, &self.comps[2].poly)
    }

    pub fn a(&self) -> &HomogeneousForm {
        &self.comps[0]
    }
    pub fn b(&self) -> &HomogeneousForm {
        &self.comps[1]
    }
    pub fn c(&self) -> &HomogeneousForm {
        &self.comps[2]
    }

    pub fn components(&self) -> [&Poly; 3] {
        [self.comps[0].poly(), self.comps[1].poly(), self.comps[2].poly()]
    }

    pub fn field(&self) -> &Field {
        self.comps[0].field()
    }

    /// Degree r of the foliation: components have degree r + 1.
    pub fn foliation_degree(&self) -> u32 {
        self.comps[0].degree() - 1
    }
}

/// Wedge product of two 1-forms given by their component triples.
pub fn wedge(eta: &[Poly; 3], omega: [&Poly; 3]) -> ProjectiveTwoForm {
    let [ex, ey, ez] = eta;
    let [a, b, c] = omega;
    ProjectiveTwoForm {
        comps: [
            ey.mul(c).sub(&ez.mul(b)),
            ez.mul(a).sub(&ex.mul(c)),
            ex.mul(b).sub(&ey.mul(a)),
        ],
    }
}

/// `dG ^ Omega`.
pub fn wedge_d(g: &HomogeneousForm, omega: &ProjectiveOneForm) -> ProjectiveTwoForm {
    let dg: [Poly; 3] = std::array::from_fn(|i| g.derivative(i));
    wedge(&dg, omega.components())
}

/// True when the curve `G = 0` is invariant: `G` divides `dG ^ Omega`.
pub fn is_invariant_curve(g: &HomogeneousForm, omega: &ProjectiveOneForm) -> bool {
    wedge_d(g, omega).comps.iter().all(|c| g.poly().divides(c))
}

/// True when `F/G` is a rational first integral: `(G dF - F dG) ^ Omega = 0`.
pub fn is_first_integral(f: &HomogeneousForm, g: &HomogeneousForm, omega: &ProjectiveOneForm) -> bool {
    let eta = ProjectiveOneForm::derivation_of_quotient(f, g);
    wedge(&eta, omega.components()).is_zero()
}

/// Greatest common divisor of three polynomials (monic in graded lex order).
pub fn gcd3(a: &Poly, b: &Poly, c: &Poly) -> Poly {
    gcd(&gcd(a, b), c)
}
