//! Exact dense linear algebra over Q and over number fields.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::numfield::{FieldElement, Rational};

/// Minimal scalar interface shared by rationals and number-field elements.
pub trait Scalar: Clone + PartialEq {
    fn is_zero_s(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_s(&self, o: &Self) -> Self;
    fn sub_s(&self, o: &Self) -> Self;
    fn mul_s(&self, o: &Self) -> Self;
    fn div_s(&self, o: &Self) -> Self;
    fn neg_s(&self) -> Self;
}

impl Scalar for Rational {
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn div_s(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_s(&self) -> Self {
        -self
    }
}

impl Scalar for FieldElement {
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn div_s(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_s(&self) -> Self {
        -self
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_s()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].one_like().div_s(&m[r][c]);
        for x in m[r].iter_mut() {
            if !x.is_zero_s() {
                *x = x.mul_s(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero_s() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero_s() {
                    *x = x.sub_s(&f.mul_s(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : M x = 0}` of a matrix with `cols`
/// columns. `one` supplies the scalar type's unit (needed when `rows` is
/// empty).
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], cols: usize, one: &S) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let zero = one.zero_like();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = m[i][free].neg_s();
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b`. Returns `None` when inconsistent; free variables are
/// set to zero when the solution is not unique.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&cols) {
        return None;
    }
    let zero = b.first()?.zero_like();
    let mut x = vec![zero; cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][cols].clone();
    }
    Some(x)
}

/// Determinant by Gaussian elimination over Q.
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Determinant over any exact field by Gaussian elimination.
pub fn det<S: Scalar>(mut m: Vec<Vec<S>>, one: &S) -> S {
    let n = m.len();
    let mut acc = one.clone();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero_s()) else {
            return one.zero_like();
        };
        if p != c {
            m.swap(p, c);
            acc = acc.neg_s();
        }
        let piv = m[c][c].clone();
        acc = acc.mul_s(&piv);
        for r in c + 1..n {
            if m[r][c].is_zero_s() {
                continue;
            }
            let f = m[r][c].div_s(&piv);
            for k in c..n {
                if !m[c][k].is_zero_s() {
                    let t = f.mul_s(&m[c][k]);
                    m[r][k] = m[r][k].sub_s(&t);
                }
            }
        }
    }
    acc
}

/// Incrementally maintained row-echelon basis of a subspace of K^n; used to
/// accumulate linear conditions without re-eliminating from scratch.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S: Scalar> {
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Default for EchelonBasis<S> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (p, row) in &self.rows {
            if v[*p].is_zero_s() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero_s() {
                    *x = x.sub_s(&f.mul_s(y));
                }
            }
        }
        v
    }

    /// Adds `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: Vec<S>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero_s()) else {
            return false;
        };
        let inv = v[p].one_like().div_s(&v[p]);
        for x in v.iter_mut() {
            if !x.is_zero_s() {
                *x = x.mul_s(&inv);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero_s() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero_s() {
                    *x = x.sub_s(&f.mul_s(y));
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    /// Basis of the orthogonal solution space `{x : r.x = 0 for all rows r}`
    /// in dimension `n`.
    pub fn solution_space(&self, n: usize, one: &S) -> Vec<Vec<S>> {
        let rows: Vec<Vec<S>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        nullspace(&rows, n, one)
    }
}

/// Greatest common divisor of integers, nonnegative.
pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    use num_integer::Integer;
    it.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let a = m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        let ints: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
        assert_eq!(rational_det(a), rat(-54));
        assert_eq!(bareiss_det(ints), BigInt::from(-54));
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let k = nullspace(&a, 3, &rat(1));
        assert_eq!(k.len(), 2);
        for v in k {
            let s: Rational = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[rat(3), rat(1)]), Some(vec![rat(2), rat(1)]));
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&b, &[rat(1), rat(3)]), None);
        assert_eq!(solve(&m(&[&[2]]), &[rat(1)]), Some(vec![ratio(1, 2)]));
    }

    #[test]
    fn echelon_incremental() {
        let mut e = EchelonBasis::new();
        assert!(e.insert(vec![rat(1), rat(2)]));
        assert!(!e.insert(vec![rat(2), rat(4)]));
        assert!(e.insert(vec![rat(0), rat(1)]));
        assert_eq!(e.rank(), 2);
    }
}
