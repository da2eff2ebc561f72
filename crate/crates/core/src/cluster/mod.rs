//! Configurations of infinitely near points, their Picard lattice, and the
//! lattice-theoretic quantities attached to a system of invariant curves.

mod copositive;
mod divisor;
mod format;

pub use copositive::{is_strictly_copositive, projection_norm_sq};
pub use divisor::DivisorClass;
pub use format::{parse_configuration, write_configuration};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{bareiss_det, gcd_all, rank, solve};
use crate::numfield::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("unknown point '{0}'")]
    UnknownPoint(String),
    #[error("duplicate point id '{0}'")]
    DuplicateId(String),
    #[error("point '{0}' is listed before its parent")]
    ParentOrder(String),
    #[error("point ({0}) is not a projective point")]
    ZeroPoint(String),
    #[error("proximity assertion '{0}' disagrees with the chart data")]
    ProximityMismatch(String),
    #[error("point '{0}' has no dicritical point above it")]
    NotDicriticalClosed(String),
    #[error("classes do not form an independent system: {0}")]
    NotIndependent(String),
    #[error("class is not a combination of the given classes")]
    Inconsistent,
    #[error("configuration is not a chain")]
    NotAChain,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Which blow-up chart locates a point on its parent's exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// A point of the projective plane.
    Root([FieldElement; 3]),
    /// `v = u (w + c)`; the point is `u = w = 0`.
    Chart1(FieldElement),
    /// `u = s v`; the point is `s = v = 0`.
    Chart2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitelyNearPoint {
    pub id: String,
    pub parent: Option<usize>,
    pub location: Location,
    pub dicritical: bool,
}

/// A finite forest of infinitely near points, listed parents first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    field: Field,
    points: Vec<InfinitelyNearPoint>,
    /// `proximate_to[p]` lists the points `p` is proximate to.
    proximate_to: Vec<Vec<usize>>,
    /// The older exceptional divisor whose strict transform is the local
    /// curve `v = 0` at the point, if any.
    v_exc: Vec<Option<usize>>,
}

/// Coefficients of a class in terms of the strict transforms of the curves
/// of a system and of the non-dicritical exceptional divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub alpha: Vec<BigRational>,
    /// Pairs `(point index, coefficient)` over the non-dicritical points.
    pub beta: Vec<(usize, BigRational)>,
}

impl Decomposition {
    /// True when every coefficient is strictly positive.
    pub fn all_positive(&self) -> bool {
        self.alpha.iter().all(|a| a.is_positive()) && self.beta.iter().all(|(_, b)| b.is_positive())
    }
}

impl Configuration {
    /// Builds a configuration and derives proximity from the chart data.
    pub fn new(field: Field, points: Vec<InfinitelyNearPoint>) -> Result<Self, ClusterError> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|o| o.id == p.id) {
                return Err(ClusterError::DuplicateId(p.id.clone()));
            }
            match (p.parent, &p.location) {
                (Some(par), Location::Root(_)) | (Some(par), _) if par >= i => {
                    return Err(ClusterError::ParentOrder(p.id.clone()))
                }
                (None, Location::Root(c)) if c.iter().all(|x| x.is_zero()) => {
                    return Err(ClusterError::ZeroPoint(p.id.clone()))
                }
                (None, Location::Root(_)) => {}
                (Some(_), Location::Chart1(_) | Location::Chart2) => {}
                _ => return Err(ClusterError::ParentOrder(p.id.clone())),
            }
        }
        let m = points.len();
        let mut v_exc = vec![None; m];
        let mut proximate_to = vec![Vec::new(); m];
        for i in 0..m {
            let Some(par) = points[i].parent else { continue };
            v_exc[i] = match &points[i].location {
                Location::Chart1(c) if c.is_zero() => v_exc[par],
                Location::Chart1(_) => None,
                Location::Chart2 => points[par].parent,
                Location::Root(_) => unreachable!(),
            };
            proximate_to[i].push(par);
            if let Some(q) = v_exc[i] {
                proximate_to[i].push(q);
            }
            proximate_to[i].sort();
        }
        let config = Self {
            field,
            points,
            proximate_to,
            v_exc,
        };
        for i in 0..m {
            if !config
                .descendants_or_self(i)
                .iter()
                .any(|&d| config.points[d].dicritical)
            {
                return Err(ClusterError::NotDicriticalClosed(config.points[i].id.clone()));
            }
        }
        Ok(config)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[InfinitelyNearPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &InfinitelyNearPoint {
        &self.points[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub fn children(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.points[i].parent == Some(p)).collect()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.points[i].parent.is_none()).collect()
    }

    pub fn descendants_or_self(&self, p: usize) -> Vec<usize> {
        let mut out = vec![p];
        let mut k = 0;
        while k < out.len() {
            out.extend(self.children(out[k]));
            k += 1;
        }
        out
    }

    /// Ancestors from the root down to `p` inclusive.
    pub fn chain_to(&self, p: usize) -> Vec<usize> {
        let mut out = vec![p];
        while let Some(par) = self.points[*out.last().unwrap()].parent {
            out.push(par);
        }
        out.reverse();
        out
    }

    pub fn v_exceptional(&self, p: usize) -> Option<usize> {
        self.v_exc[p]
    }

    /// True when `p` is proximate to `q`.
    pub fn is_proximate(&self, p: usize, q: usize) -> bool {
        self.proximate_to[p].contains(&q)
    }

    pub fn proximate_to(&self, p: usize) -> &[usize] {
        &self.proximate_to[p]
    }

    /// Points proximate to `q`.
    pub fn proximate_points(&self, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.is_proximate(p, q)).collect()
    }

    /// Proximity matrix: unit diagonal, `-1` at `(p, q)` when `p` is
    /// proximate to `q`.
    pub fn proximity_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.len();
        let mut out = vec![vec![0; m]; m];
        for p in 0..m {
            out[p][p] = 1;
            for &q in &self.proximate_to[p] {
                out[p][q] = -1;
            }
        }
        out
    }

    /// Points whose exceptional divisor is non-dicritical.
    pub fn non_dicritical(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.points[i].dicritical).collect()
    }

    pub fn dicritical(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.points[i].dicritical).collect()
    }

    /// Number of dicritical exceptional divisors.
    pub fn dicritical_count(&self) -> usize {
        self.dicritical().len()
    }

    pub fn is_chain(&self) -> bool {
        self.roots().len() == 1 && (0..self.len()).all(|p| self.children(p).len() <= 1)
    }

    // Lattice -----------------------------------------------------------

    pub fn l_star(&self) -> DivisorClass {
        DivisorClass::new(1, vec![0; self.len()])
    }

    pub fn e_star(&self, q: usize) -> DivisorClass {
        let mut e = vec![0; self.len()];
        e[q] = -1;
        DivisorClass::new(0, e)
    }

    /// `[E~_q] = E_q* - sum_{p proximate to q} E_p*`.
    pub fn exceptional_strict_class(&self, q: usize) -> DivisorClass {
        let mut c = self.e_star(q);
        for p in self.proximate_points(q) {
            c.e[p] += 1;
        }
        c
    }

    /// `K = -3 L* + sum E_q*`.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(-3, vec![-1; self.len()])
    }

    /// Multiplicities of the simple ideal divisor `D(p) = sum m_q E_q*`,
    /// indexed by point (zero off the chain of `p`).
    pub fn simple_ideal_multiplicities(&self, p: usize) -> Vec<i64> {
        let chain = self.chain_to(p);
        let mut m = vec![0i64; self.len()];
        m[p] = 1;
        for &q in chain.iter().rev().skip(1) {
            m[q] = chain.iter().filter(|&&r| self.is_proximate(r, q)).map(|&r| m[r]).sum();
        }
        m
    }

    pub fn simple_ideal_divisor(&self, p: usize) -> DivisorClass {
        DivisorClass::new(0, self.simple_ideal_multiplicities(p).iter().map(|x| -x).collect())
    }

    /// The matrix `g_pq = -9 D(p).D(q) - (K.D(p))(K.D(q))`.
    pub fn g_matrix(&self) -> Vec<Vec<i64>> {
        let k = self.canonical_class();
        let ds: Vec<DivisorClass> = (0..self.len()).map(|p| self.simple_ideal_divisor(p)).collect();
        let kd: Vec<i64> = ds.iter().map(|d| k.dot(d)).collect();
        (0..self.len())
            .map(|p| {
                (0..self.len())
                    .map(|q| -9 * ds[p].dot(&ds[q]) - kd[p] * kd[q])
                    .collect()
            })
            .collect()
    }

    /// P-sufficiency: strict copositivity of [`Configuration::g_matrix`].
    ///
    /// Writing `G = 9 M M^T - k k^T` with `M` the multiplicity rows of the
    /// divisors `D(p)`, strict copositivity is equivalent to the projection of
    /// the all-ones vector onto the cone spanned by the rows of `M` having
    /// squared norm below 9.
    pub fn is_p_sufficient(&self) -> bool {
        if self.len() < 9 {
            return true;
        }
        let rows: Vec<Vec<i64>> = (0..self.len()).map(|p| self.simple_ideal_multiplicities(p)).collect();
        let ones = vec![BigRational::from_integer(1.into()); self.len()];
        projection_norm_sq(&rows, &ones) < BigRational::from_integer(9.into())
    }

    /// Sufficient test for chains: the last diagonal entry of the G matrix
    /// is positive.
    pub fn chain_criterion(&self) -> Result<bool, ClusterError> {
        if !self.is_chain() {
            return Err(ClusterError::NotAChain);
        }
        let last = self.len() - 1;
        let d = self.simple_ideal_divisor(last);
        let kd = self.canonical_class().dot(&d);
        Ok(-9 * d.square() - kd * kd > 0)
    }

    fn system_rows(&self, classes: &[DivisorClass]) -> Vec<Vec<i64>> {
        classes
            .iter()
            .cloned()
            .chain(
                self.non_dicritical()
                    .into_iter()
                    .map(|q| self.exceptional_strict_class(q)),
            )
            .map(|c| c.basis_vector())
            .collect()
    }

    /// Rank of `{[C_i]} U {[E~_q] : q in N}` (the set A_S).
    pub fn system_rank(&self, classes: &[DivisorClass]) -> usize {
        let rows: Vec<Vec<BigRational>> = self
            .system_rows(classes)
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
            .collect();
        rank(&rows)
    }

    /// The primitive class orthogonal to the curves of a system and to the
    /// non-dicritical exceptional divisors, from signed maximal minors.
    /// Normalised so that its `L*` coefficient is positive.
    pub fn t_from_system(&self, classes: &[DivisorClass]) -> Result<DivisorClass, ClusterError> {
        let m = self.len();
        let rows = self.system_rows(classes);
        if rows.len() != m {
            return Err(ClusterError::NotIndependent(format!(
                "{} classes given, {} required",
                classes.len(),
                m - self.non_dicritical().len()
            )));
        }
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let cof: Vec<BigInt> = (0..=m)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = big
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let d = bareiss_det(minor);
                if j % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        let g = gcd_all(&cof);
        if g.is_zero() {
            return Err(ClusterError::NotIndependent("rank deficient".into()));
        }
        // T = J v: coefficient v_0 on L*, -v_j on E_j*, i.e. e_j = v_j.
        let mut t: Vec<BigInt> = cof.iter().map(|x| x / &g).collect();
        let lead = t.iter().find(|x| !x.is_zero()).unwrap().clone();
        if lead.is_negative() {
            t.iter_mut().for_each(|x| *x = -x.clone());
        }
        let conv = |x: &BigInt| x.to_i64().expect("class coefficient fits in i64");
        Ok(DivisorClass::new(conv(&t[0]), t[1..].iter().map(conv).collect()))
    }

    /// Solves `T = sum alpha_i [C_i] + sum beta_q [E~_q]` exactly.
    pub fn decompose(&self, t: &DivisorClass, classes: &[DivisorClass]) -> Result<Decomposition, ClusterError> {
        let rows = self.system_rows(classes);
        let n = rows.len();
        let dim = self.len() + 1;
        let a: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| (0..n).map(|j| BigRational::from_integer(rows[j][i].into())).collect())
            .collect();
        let b = t.basis_vector_q();
        if rank(&a) < n {
            return Err(ClusterError::NotIndependent("rank deficient".into()));
        }
        let x = solve(&a, &b).ok_or(ClusterError::Inconsistent)?;
        let s = classes.len();
        Ok(Decomposition {
            alpha: x[..s].to_vec(),
            beta: self.non_dicritical().into_iter().zip(x[s..].iter().cloned()).collect(),
        })
    }
}
