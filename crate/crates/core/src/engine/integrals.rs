//! Pencil searches once the lattice data is known: fixed degree, the
//! bounded search along the ray of `T`, and the rational-pencil shortcut.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gamma::pencil_candidates;
use super::{Curve, FirstIntegral, IndependentSystem, Verdict};
use crate::cluster::{Configuration, Decomposition, DivisorClass};
use crate::linsys::ConditionSystem;
use crate::polyforms::{HomogeneousForm, ProjectiveOneForm};

/// Wedge-checks a two-dimensional system.
fn check_pencil(omega: &ProjectiveOneForm, class: &DivisorClass, config: &Configuration) -> Option<FirstIntegral> {
    let sys = ConditionSystem::new(class, config)?;
    if sys.dimension() != 2 {
        return None;
    }
    let b = sys.basis();
    FirstIntegral::new(&b[0], &b[1], omega)
}

/// Integral of degree `d` or a proof that none exists: every class with
/// `D^2 = 0`, orthogonal to the non-dicritical exceptional divisors and
/// positive on the dicritical ones is tried, and each two-dimensional
/// system is wedge-checked.
pub fn algorithm1(omega: &ProjectiveOneForm, config: &Configuration, d: u32) -> Verdict {
    for e in pencil_candidates(config, d as i64) {
        let class = DivisorClass::new(d as i64, e);
        if let Some(fi) = check_pencil(omega, &class, config) {
            return Verdict::Integral(fi);
        }
    }
    Verdict::NoIntegral(format!("no pencil of degree {d} is a first integral"))
}

/// Outcome of the search for the least `lambda` with `h0(lambda T) >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaSearch {
    Found(u32),
    NotWithin(u32),
}

impl SigmaSearch {
    pub fn found(&self) -> Option<u32> {
        match self {
            SigmaSearch::Found(l) => Some(*l),
            SigmaSearch::NotWithin(_) => None,
        }
    }
}

/// Which of the three conditions enabling [`algorithm2`] hold for a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conditions {
    /// `T^2 != 0`.
    pub nonzero_square: bool,
    /// Every coefficient of `T` on the system's classes is positive.
    pub positive_decomposition: bool,
    /// Some multiple of `T` moves in a pencil.
    pub sigma: SigmaSearch,
}

impl Conditions {
    /// The indices (1, 2, 3) of the conditions that hold.
    pub fn holding(&self) -> Vec<u8> {
        let mut out = Vec::new();
        if self.nonzero_square {
            out.push(1);
        }
        if self.positive_decomposition {
            out.push(2);
        }
        if self.sigma.found().is_some() {
            out.push(3);
        }
        out
    }
}

fn least_sigma(t: &DivisorClass, config: &Configuration, upto: u32) -> SigmaSearch {
    for l in 1..=upto {
        if crate::linsys::h0(&t.scale(l as i64), config) >= 2 {
            return SigmaSearch::Found(l);
        }
    }
    SigmaSearch::NotWithin(upto)
}

pub fn classify_conditions(system: &IndependentSystem, lambda_max: u32) -> Conditions {
    let t = system.t();
    Conditions {
        nonzero_square: t.square() != 0,
        positive_decomposition: system.decomposition().all_positive(),
        sigma: least_sigma(&t, system.config(), lambda_max),
    }
}

fn divisors(k: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..)
        .take_while(|i| i * i <= k)
        .filter(|i| k.is_multiple_of(*i))
        .collect();
    let big: Vec<u64> = out.iter().rev().map(|i| k / i).filter(|j| j * j != k).collect();
    out.extend(big);
    out
}

/// Least positive value of `phi(S) = 1 - sum_{s in S} (s-1)/s` (or of its
/// negative) over the subsets `S` of the divisors of `k`; `None` when no
/// value is positive.
pub fn w_function(k: u64, positive: bool) -> Option<BigRational> {
    assert!(k >= 1, "w is defined for positive integers");
    let terms: Vec<BigRational> = divisors(k)
        .into_iter()
        .filter(|&s| s > 1)
        .map(|s| BigRational::new(BigInt::from(s - 1), BigInt::from(s)))
        .collect();
    assert!(terms.len() < 26, "too many divisors for subset enumeration");
    let mut best: Option<BigRational> = None;
    for mask in 0u32..(1 << terms.len()) {
        let mut phi = BigRational::one();
        for (i, t) in terms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                phi -= t;
            }
        }
        let v = if positive { phi } else { -phi };
        if v.is_positive() && best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best
}

/// The bound on the multiple of `T` cutting out the pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaBound {
    Value(BigRational),
    NotWellDefined(String),
}

/// Computes the bound from the degrees of the foliation and of the curves
/// and from the (positive) coefficients of `T` in the system's classes.
pub fn delta_bound(
    omega: &ProjectiveOneForm,
    system: &IndependentSystem,
    decomposition: &Decomposition,
) -> Result<DeltaBound, String> {
    if !decomposition.all_positive() {
        return Err("the decomposition of T has non-positive coefficients".into());
    }
    let coeffs = decomposition
        .alpha
        .iter()
        .chain(decomposition.beta.iter().map(|(_, b)| b));
    let r = coeffs.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let t = system.t();
    let k0 = std::iter::once(t.d)
        .chain(t.e.iter().copied())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&(&r * BigInt::from(x))));
    let degs: Vec<i64> = system.curves().iter().map(|c: &Curve| c.form.degree() as i64).collect();
    let numerator = omega.foliation_degree() as i64 + 2 - degs.iter().sum::<i64>();
    if numerator <= 0 {
        return Ok(DeltaBound::NotWellDefined(format!(
            "deg F + 2 - sum deg C_i = {numerator}"
        )));
    }
    let k0 = k0.to_u64().expect("k0 fits in 64 bits");
    let Some(w) = w_function(k0, numerator > 0) else {
        return Ok(DeltaBound::NotWellDefined(format!("w undefined for k0 = {k0}")));
    };
    let weighted: BigRational = decomposition
        .alpha
        .iter()
        .zip(&degs)
        .map(|(a, d)| a * BigRational::from_integer((*d).into()))
        .sum();
    let delta = BigRational::from_integer(numerator.into()) / (w * weighted);
    Ok(DeltaBound::Value(delta))
}

/// The decision procedure driven by an independent system: rejects when
/// `T^2 != 0`, bounds the multiple of `T` when its decomposition is
/// positive, and otherwise searches up to `lambda_max`.
pub fn algorithm2(omega: &ProjectiveOneForm, system: &IndependentSystem, lambda_max: u32) -> Verdict {
    let config = system.config();
    let t = system.t();
    if t.square() != 0 {
        return Verdict::NoIntegral(format!("T^2 = {} is not zero", t.square()));
    }
    let decomposition = system.decomposition();
    let alpha = if decomposition.all_positive() {
        let bound = match delta_bound(omega, system, &decomposition).expect("positivity checked") {
            DeltaBound::NotWellDefined(why) => {
                return Verdict::NoIntegral(format!("degree bound not well defined: {why}"))
            }
            DeltaBound::Value(v) => v,
        };
        let upto = bound.floor().to_integer();
        let upto = upto.to_u32().unwrap_or(if upto.is_negative() { 0 } else { u32::MAX });
        match least_sigma(&t, config, upto) {
            SigmaSearch::Found(l) => l,
            SigmaSearch::NotWithin(_) => {
                return Verdict::NoIntegral(format!("h0(lambda T) <= 1 for every lambda <= {bound}"))
            }
        }
    } else {
        match least_sigma(&t, config, lambda_max) {
            SigmaSearch::Found(l) => l,
            SigmaSearch::NotWithin(cap) => {
                return Verdict::Inconclusive(format!("h0(lambda T) <= 1 for every lambda <= {cap}"))
            }
        }
    };
    let class = t.scale(alpha as i64);
    let Some(sys) = ConditionSystem::new(&class, config) else {
        unreachable!("T has positive degree")
    };
    if sys.dimension() > 2 {
        return Verdict::NoIntegral(format!("h0({alpha} T) = {} exceeds 2", sys.dimension()));
    }
    let b = sys.basis();
    match FirstIntegral::new(&b[0], &b[1], omega) {
        Some(fi) => Verdict::Integral(fi),
        None => Verdict::NoIntegral(format!("the pencil of {alpha} T is not a first integral")),
    }
}

/// When `K.T < 0` a first integral, if any, is the pencil of `T` itself.
/// Returns `None` otherwise.
pub fn memo_fastpath(omega: &ProjectiveOneForm, system: &IndependentSystem) -> Option<Verdict> {
    let config = system.config();
    let t = system.t();
    if config.canonical_class().dot(&t) >= 0 {
        return None;
    }
    let dim = crate::linsys::h0(&t, config);
    if dim != 2 {
        return Some(Verdict::NoIntegral(format!("h0(T) = {dim}, not 2")));
    }
    Some(match check_pencil(omega, &t, config) {
        Some(fi) => Verdict::Integral(fi),
        None => Verdict::NoIntegral("the pencil of T is not a first integral".into()),
    })
}

/// Quick exclusions from invariant curves: one with positive strict square,
/// or one of square zero meeting another.
pub fn discard_checks(
    omega: &ProjectiveOneForm,
    config: &Configuration,
    curves: &[HomogeneousForm],
) -> Option<Verdict> {
    let cs: Vec<Curve> = curves
        .iter()
        .inspect(|c| debug_assert!(crate::polyforms::is_invariant_curve(c, omega)))
        .map(|c| Curve::new(c.clone(), config))
        .collect();
    if let Some(c) = cs.iter().find(|c| c.class.square() > 0) {
        return Some(Verdict::NoIntegral(format!(
            "invariant curve {} has strict square {}",
            c.form,
            c.class.square()
        )));
    }
    for (i, a) in cs.iter().enumerate() {
        if a.class.square() != 0 {
            continue;
        }
        for (j, b) in cs.iter().enumerate() {
            if i != j && a.class.dot(&b.class) != 0 {
                return Some(Verdict::NoIntegral(format!(
                    "invariant curves {} (square 0) and {} meet",
                    a.form, b.form
                )));
            }
        }
    }
    None
}
