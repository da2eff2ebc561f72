//! Decision procedures for rational first integrals.
//!
//! The entry point is [`pipeline`]. It searches for an independent system of
//! algebraic solutions with [`algorithm3`], then either applies the
//! rational-pencil shortcut [`memo_fastpath`] (when `K.T < 0`) or the bounded
//! search of [`algorithm2`]. [`algorithm1`] decides the existence of an
//! integral of a prescribed degree directly.

mod gamma;
mod integrals;
mod search;

use std::fmt;

use thiserror::Error;

use crate::cluster::{ClusterError, Configuration, Decomposition, DivisorClass, Location};
use crate::linalg::rank;
use crate::linsys::strict_class;
use crate::numfield::FieldElement;
use crate::polyforms::{gcd, is_first_integral, is_invariant_curve, HomogeneousForm, Poly, ProjectiveOneForm};

pub use integrals::{
    algorithm1, algorithm2, classify_conditions, delta_bound, discard_checks, memo_fastpath, w_function, Conditions,
    DeltaBound, SigmaSearch,
};
pub use search::{algorithm3, Algorithm3Outcome, Algorithm3Report};

/// Search limits. Hitting one yields an inconclusive verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest degree of candidate curves examined by [`algorithm3`].
    pub d_max: u32,
    /// Largest multiple of `T` examined when looking for a pencil.
    pub lambda_max: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            d_max: 30,
            lambda_max: 60,
        }
    }
}

/// A verified rational first integral `F/G` with coprime `F`, `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegral {
    f: HomogeneousForm,
    g: HomogeneousForm,
}

impl FirstIntegral {
    /// Cancels common factors and verifies `d(F/G) ^ Omega = 0`. Returns
    /// `None` when the quotient is constant or the check fails.
    pub fn new(f: &HomogeneousForm, g: &HomogeneousForm, omega: &ProjectiveOneForm) -> Option<Self> {
        if f.is_zero() || g.is_zero() || f.degree() != g.degree() {
            return None;
        }
        if f.normalized() == g.normalized() {
            return None;
        }
        let c = gcd(f.poly(), g.poly());
        let (f, g) = if c.is_constant() {
            (f.clone(), g.clone())
        } else {
            let div = |h: &HomogeneousForm| {
                HomogeneousForm::from_poly(h.poly().exact_div(&c).expect("gcd divides"))
                    .expect("quotient is homogeneous")
            };
            (div(f), div(g))
        };
        if f.degree() == 0 || !is_first_integral(&f, &g, omega) {
            return None;
        }
        Some(Self { f, g })
    }

    pub fn numerator(&self) -> &HomogeneousForm {
        &self.f
    }

    pub fn denominator(&self) -> &HomogeneousForm {
        &self.g
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    /// True when `{F, G}` and `{a, b}` span the same pencil.
    pub fn spans(&self, a: &HomogeneousForm, b: &HomogeneousForm) -> bool {
        same_span(&[self.f.clone(), self.g.clone()], &[a.clone(), b.clone()])
    }
}

impl fmt::Display for FirstIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.f, self.g)
    }
}

/// Outcome of a decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Integral(FirstIntegral),
    NoIntegral(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_integral(&self) -> bool {
        matches!(self, Verdict::Integral(_))
    }

    pub fn is_no_integral(&self) -> bool {
        matches!(self, Verdict::NoIntegral(_))
    }

    pub fn integral(&self) -> Option<&FirstIntegral> {
        match self {
            Verdict::Integral(fi) => Some(fi),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Integral(fi) => write!(f, "integral {fi}"),
            Verdict::NoIntegral(why) => write!(f, "no integral ({why})"),
            Verdict::Inconclusive(why) => write!(f, "inconclusive ({why})"),
        }
    }
}

/// An invariant curve together with the class of its strict transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub form: HomogeneousForm,
    pub class: DivisorClass,
}

impl Curve {
    pub fn new(form: HomogeneousForm, config: &Configuration) -> Self {
        let class = strict_class(&form, config);
        Self { form, class }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("{got} curves given, the configuration has {expected} dicritical divisors")]
    WrongCount { expected: usize, got: usize },
    #[error("curve {0} is not invariant")]
    NotInvariant(String),
    #[error("curve {0} has positive strict self-intersection")]
    PositiveSquare(String),
    #[error("classes have rank {rank}, {needed} required")]
    Dependent { rank: usize, needed: usize },
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

/// `s` invariant curves (`s` the number of dicritical divisors) with
/// non-positive strict squares whose classes, together with the strict
/// transforms of the non-dicritical exceptional divisors, are independent.
#[derive(Clone, Debug)]
pub struct IndependentSystem {
    curves: Vec<Curve>,
    config: Configuration,
}

impl IndependentSystem {
    pub fn new(
        omega: &ProjectiveOneForm,
        config: &Configuration,
        forms: Vec<HomogeneousForm>,
    ) -> Result<Self, SystemError> {
        let s = config.dicritical_count();
        if forms.len() != s {
            return Err(SystemError::WrongCount {
                expected: s,
                got: forms.len(),
            });
        }
        let mut curves = Vec::with_capacity(s);
        for f in forms {
            if !is_invariant_curve(&f, omega) {
                return Err(SystemError::NotInvariant(f.to_string()));
            }
            let c = Curve::new(f, config);
            if c.class.square() > 0 {
                return Err(SystemError::PositiveSquare(c.form.to_string()));
            }
            curves.push(c);
        }
        let classes: Vec<DivisorClass> = curves.iter().map(|c| c.class.clone()).collect();
        let r = config.system_rank(&classes);
        if r != config.len() {
            return Err(SystemError::Dependent {
                rank: r,
                needed: config.len(),
            });
        }
        Ok(Self {
            curves,
            config: config.clone(),
        })
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn classes(&self) -> Vec<DivisorClass> {
        self.curves.iter().map(|c| c.class.clone()).collect()
    }

    /// The primitive class `T` orthogonal to the system.
    pub fn t(&self) -> DivisorClass {
        self.config
            .t_from_system(&self.classes())
            .expect("independence checked at construction")
    }

    /// Coefficients of `T` on the strict curve and exceptional classes.
    pub fn decomposition(&self) -> Decomposition {
        self.config
            .decompose(&self.t(), &self.classes())
            .expect("independent classes span the orthogonal of T")
    }
}

/// True when two families of forms of one degree span the same space.
pub fn same_span(a: &[HomogeneousForm], b: &[HomogeneousForm]) -> bool {
    let Some(first) = a.first().or(b.first()) else {
        return true;
    };
    if a.iter().chain(b).any(|h| h.degree() != first.degree()) {
        return false;
    }
    let monos = crate::linsys::monomials(first.degree());
    let row = |h: &HomogeneousForm| -> Vec<FieldElement> { monos.iter().map(|e| h.poly().coeff(e)).collect() };
    let ra: Vec<Vec<FieldElement>> = a.iter().map(row).collect();
    let rb: Vec<Vec<FieldElement>> = b.iter().map(row).collect();
    let both: Vec<Vec<FieldElement>> = ra.iter().chain(&rb).cloned().collect();
    let (x, y, z) = (rank(&ra), rank(&rb), rank(&both));
    x == y && y == z
}

/// Everything [`pipeline`] learned along the way.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub verdict: Verdict,
    pub search: Option<Algorithm3Report>,
    pub system: Option<IndependentSystem>,
    pub t: Option<DivisorClass>,
}

/// Two independent linear forms vanishing at a point of the plane.
fn lines_through(point: &[FieldElement; 3]) -> [HomogeneousForm; 2] {
    let field = point[0].field().clone();
    let nz = (0..3).find(|&i| !point[i].is_zero()).expect("projective point");
    let others: Vec<usize> = (0..3).filter(|&i| i != nz).collect();
    // x_nz * X_j - x_j * X_nz vanishes at the point.
    let mk = |j: usize| {
        let p = Poly::var(&field, j)
            .scale(&point[nz])
            .sub(&Poly::var(&field, nz).scale(&point[j]));
        HomogeneousForm::new(p, 1).expect("linear form")
    };
    [mk(others[0]), mk(others[1])]
}

/// Full decision: small configurations first, then [`algorithm3`], then
/// [`memo_fastpath`] or [`algorithm2`].
pub fn pipeline(omega: &ProjectiveOneForm, config: &Configuration, caps: Caps, trace: bool) -> PipelineReport {
    let report = |verdict, search, system, t| PipelineReport {
        verdict,
        search,
        system,
        t,
    };
    if config.is_empty() {
        return report(Verdict::NoIntegral("no dicritical points".into()), None, None, None);
    }
    if config.len() == 1 {
        let Location::Root(p) = &config.point(0).location else {
            unreachable!("a single point lies in the plane")
        };
        let [l1, l2] = lines_through(p);
        let verdict = match FirstIntegral::new(&l1, &l2, omega) {
            Some(fi) => Verdict::Integral(fi),
            None => {
                Verdict::NoIntegral("the pencil of lines through the only dicritical point is not invariant".into())
            }
        };
        return report(verdict, None, None, None);
    }
    let search = algorithm3(omega, config, caps.d_max, trace);
    let system = match &search.outcome {
        Algorithm3Outcome::System(s) => s.clone(),
        Algorithm3Outcome::NoIntegral => {
            let v = Verdict::NoIntegral(format!(
                "only {} of {} independent invariant curves exist",
                search.curves.len(),
                config.dicritical_count()
            ));
            return report(v, Some(search), None, None);
        }
        Algorithm3Outcome::Inconclusive(why) => {
            let v = Verdict::Inconclusive(why.clone());
            return report(v, Some(search), None, None);
        }
    };
    let t = system.t();
    let forms: Vec<HomogeneousForm> = search.curves.iter().map(|c| c.form.clone()).collect();
    if let Some(v) = discard_checks(omega, config, &forms) {
        return report(v, Some(search), Some(system), Some(t));
    }
    if config.is_p_sufficient() {
        let k = config.canonical_class();
        let holds = t.square() != 0
            || config
                .dicritical()
                .into_iter()
                .any(|q| t.dot(&config.exceptional_strict_class(q)) < 0)
            || k.dot(&t) < 0;
        debug_assert!(
            holds,
            "P-sufficient configuration without any of the expected alternatives"
        );
    }
    let verdict = match memo_fastpath(omega, &system) {
        Some(v) => v,
        None => algorithm2(omega, &system, caps.lambda_max),
    };
    report(verdict, Some(search), Some(system), Some(t))
}

/// The verdict of [`pipeline`] alone.
pub fn decide(omega: &ProjectiveOneForm, config: &Configuration, caps: Caps) -> Verdict {
    pipeline(omega, config, caps, false).verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::parse_configuration;
    use crate::io::parse_foliation;
    use crate::parse::parse_poly;

    fn radial() -> (ProjectiveOneForm, Configuration) {
        let omega = parse_foliation("A = Y\nB = -X\nC = 0\n").unwrap();
        let config = parse_configuration("point p origin=(0:0:1)\ndicritical p\n", Some(omega.field())).unwrap();
        (omega, config)
    }

    fn form(s: &str, omega: &ProjectiveOneForm) -> HomogeneousForm {
        HomogeneousForm::from_poly(parse_poly(s, omega.field()).unwrap()).unwrap()
    }

    #[test]
    fn lines_through_a_single_point() {
        let (omega, config) = radial();
        let v = decide(&omega, &config, Caps::default());
        let fi = v.integral().expect("radial foliation has X/Y");
        assert!(fi.spans(&form("X", &omega), &form("Y", &omega)));
    }

    #[test]
    fn first_integral_cancels_common_factors() {
        let (omega, _) = radial();
        let fi = FirstIntegral::new(&form("X*Z", &omega), &form("Y*Z", &omega), &omega).unwrap();
        assert_eq!(fi.degree(), 1);
        assert!(FirstIntegral::new(&form("X", &omega), &form("2*X", &omega), &omega).is_none());
        assert!(FirstIntegral::new(&form("X", &omega), &form("Z", &omega), &omega).is_none());
    }

    #[test]
    fn spans_compare_subspaces() {
        let (omega, _) = radial();
        let f = |s| form(s, &omega);
        assert!(same_span(&[f("X"), f("Y")], &[f("X+Y"), f("X-Y")]));
        assert!(!same_span(&[f("X"), f("Y")], &[f("X"), f("Z")]));
        assert!(!same_span(&[f("X")], &[f("X^2")]));
    }

    #[test]
    fn independent_system_checks_its_input() {
        let (omega, config) = radial();
        let err = IndependentSystem::new(&omega, &config, vec![]).unwrap_err();
        assert_eq!(err, SystemError::WrongCount { expected: 1, got: 0 });
        let err = IndependentSystem::new(&omega, &config, vec![form("X+Z", &omega)]).unwrap_err();
        assert!(matches!(err, SystemError::NotInvariant(_)));
        let sys = IndependentSystem::new(&omega, &config, vec![form("X", &omega)]).unwrap();
        assert_eq!(sys.t(), DivisorClass::new(1, vec![1]));
    }

    #[test]
    fn empty_configuration_has_no_integral() {
        let omega = parse_foliation("A = Y*Z\nB = -2*X*Z\nC = X*Y\n").unwrap();
        let config = parse_configuration("", Some(omega.field())).unwrap();
        assert!(decide(&omega, &config, Caps::default()).is_no_integral());
    }
}
