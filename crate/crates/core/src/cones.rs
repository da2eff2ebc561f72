//! Finitely generated rational cones in the Picard lattice, with duality
//! taken with respect to the intersection pairing `diag(1, -1, ..., -1)`.
//!
//! Vectors are integer coordinates in the basis `(L*, E_1*, ..., E_m*)`, as
//! produced by [`DivisorClass::basis_vector`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cluster::DivisorClass;
use crate::linalg::{gcd_all, rank};

pub type Vector = Vec<BigInt>;

/// Intersection pairing of two coordinate vectors.
pub fn pairing(x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut acc = &x[0] * &y[0];
    for (a, b) in x[1..].iter().zip(&y[1..]) {
        acc -= a * b;
    }
    acc
}

/// Self-intersection.
pub fn square(x: &[BigInt]) -> BigInt {
    pairing(x, x)
}

/// Divides by the gcd of the entries; the zero vector is returned as is.
pub fn primitive(v: Vector) -> Vector {
    let g = gcd_all(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

pub fn from_class(c: &DivisorClass) -> Vector {
    c.basis_vector().into_iter().map(BigInt::from).collect()
}

/// A cone given by generators (each primitive and nonzero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    dim: usize,
    generators: Vec<Vector>,
}

impl RationalCone {
    pub fn new(dim: usize, generators: impl IntoIterator<Item = Vector>) -> Self {
        let mut gens: Vec<Vector> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator of the wrong dimension"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .map(primitive)
            .collect();
        let mut seen = std::collections::HashSet::new();
        gens.retain(|g| seen.insert(g.clone()));
        Self { dim, generators: gens }
    }

    pub fn from_classes<'a>(dim: usize, classes: impl IntoIterator<Item = &'a DivisorClass>) -> Self {
        Self::new(dim, classes.into_iter().map(from_class))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Adds a generator.
    pub fn with(&self, g: Vector) -> Self {
        Self::new(self.dim, self.generators.iter().cloned().chain(std::iter::once(g)))
    }

    /// Generators sorted lexicographically, for comparisons.
    pub fn sorted_generators(&self) -> Vec<Vector> {
        let mut g = self.generators.clone();
        g.sort();
        g
    }

    /// The dual cone `{x : x.g >= 0 for every generator g}` under the
    /// intersection pairing, by the double description method. A lineality
    /// space is returned as pairs of opposite generators.
    pub fn dual(&self) -> RationalCone {
        let rows: Vec<Vector> = self
            .generators
            .iter()
            .map(|g| {
                let mut r = g.clone();
                for x in r[1..].iter_mut() {
                    *x = -x.clone();
                }
                r
            })
            .collect();
        let (rays, lineality) = double_description(self.dim, &rows);
        let mut gens = rays;
        for l in lineality {
            gens.push(l.iter().map(|x| -x).collect());
            gens.push(l);
        }
        let mut out = RationalCone::new(self.dim, gens);
        out.generators.sort();
        out
    }

    /// Whether `x` is a nonnegative combination of the generators (exact
    /// phase-one simplex with Bland's rule).
    pub fn contains(&self, x: &[BigInt]) -> bool {
        lp_feasible(&self.generators, x)
    }

    /// True when the cone contains a vector of negative self-intersection.
    ///
    /// A ray of negative square decides at once. Otherwise every ray has
    /// nonzero `L*`-coordinate; two rays of opposite signs that are not
    /// opposite each other span a segment crossing `L*`-coordinate zero away
    /// from the origin, where the square is negative. Without such a pair the
    /// cone lies in one nappe of the light cone or on a single line.
    pub fn exists_negative_square(&self) -> bool {
        if self.generators.iter().any(|g| square(g).is_negative()) {
            return true;
        }
        let pos: Vec<&Vector> = self.generators.iter().filter(|g| g[0].is_positive()).collect();
        let neg: Vec<&Vector> = self.generators.iter().filter(|g| g[0].is_negative()).collect();
        debug_assert_eq!(pos.len() + neg.len(), self.generators.len());
        if pos.is_empty() || neg.is_empty() {
            return false;
        }
        for u in &pos {
            for v in &neg {
                let antipodal = u.iter().zip(v.iter()).all(|(a, b)| *a == -b);
                if !antipodal {
                    return true;
                }
            }
        }
        // Only a single line remains.
        false
    }
}

/// Rank over Q of a family of integer vectors.
pub fn rank_of_classes(vectors: &[Vector]) -> usize {
    let rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    rank(&rows)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays and a lineality basis of `{x : r.x >= 0 for all rows r}`
/// (Euclidean inner product).
fn double_description(dim: usize, rows: &[Vector]) -> (Vec<Vector>, Vec<Vector>) {
    let mut lineality: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::one();
            v
        })
        .collect();
    // Each ray carries the set of processed rows on which it is tight.
    let mut rays: Vec<(Vector, Vec<bool>)> = Vec::new();
    for (k, a) in rows.iter().enumerate() {
        if let Some(pivot) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pivot);
            let mut a0 = dot(a, &l0);
            if a0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                a0 = -a0;
            }
            let project = |v: &Vector| -> Vector {
                let av = dot(a, v);
                if av.is_zero() {
                    return v.clone();
                }
                primitive(v.iter().zip(&l0).map(|(x, y)| &a0 * x - &av * y).collect())
            };
            for l in lineality.iter_mut() {
                *l = project(l);
            }
            for (r, tight) in rays.iter_mut() {
                *r = project(r);
                tight.push(true);
            }
            let mut tight = vec![true; k];
            tight.push(false);
            rays.push((l0, tight));
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let mut next: Vec<(Vector, Vec<bool>)> = Vec::new();
        for (i, (r, t)) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                let mut t = t.clone();
                t.push(vals[i].is_zero());
                next.push((r.clone(), t));
            }
        }
        for (i, (p, tp)) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, (n, tn)) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: Vec<bool> = tp.iter().zip(tn).map(|(x, y)| *x && *y).collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(l, (_, tl))| l == i || l == j || !common.iter().zip(tl).all(|(c, t)| !*c || *t));
                if !adjacent {
                    continue;
                }
                let v: Vector = n.iter().zip(p).map(|(x, y)| &vals[i] * x - &vals[j] * y).collect();
                let mut t = common;
                t.push(true);
                next.push((primitive(v), t));
            }
        }
        rays = next;
    }
    (rays.into_iter().map(|(r, _)| r).collect(), lineality)
}

/// Feasibility of `sum lambda_j g_j = x`, `lambda >= 0`.
fn lp_feasible(gens: &[Vector], x: &[BigInt]) -> bool {
    let m = x.len();
    let n = gens.len();
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    // Tableau rows: [A | I | b] with b >= 0; columns n..n+m are artificial.
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let flip = x[i].is_negative();
            let mut row: Vec<BigRational> = gens.iter().map(|g| if flip { -q(&g[i]) } else { q(&g[i]) }).collect();
            for k in 0..m {
                row.push(if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row.push(q(&x[i].abs()));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let cols = n + m;
    loop {
        // Reduced costs of minimising the sum of artificials.
        let reduced = |j: usize, t: &Vec<Vec<BigRational>>, basis: &Vec<usize>| -> BigRational {
            let cj = if j >= n {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            let mut z = BigRational::zero();
            for (i, &b) in basis.iter().enumerate() {
                if b >= n {
                    z += &t[i][j];
                }
            }
            cj - z
        };
        let Some(enter) = (0..cols).find(|&j| !basis.contains(&j) && reduced(j, &t, &basis).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        basis[r] = enter;
    }
    basis.iter().enumerate().all(|(i, &b)| b < n || t[i][cols].is_zero())
}
