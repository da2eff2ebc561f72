//! Exact tests for strict copositivity.
//!
//! Two independent procedures live here. The generic one enumerates every
//! support of a candidate minimiser of `x^T G x` on the standard simplex and
//! is exponential in the dimension. The structured one applies to the
//! matrices coming from configurations, which have the shape
//! `G = 9 M M^T - k k^T` with `k = -M 1`; there strict copositivity reduces
//! to a nonnegative least squares problem solved exactly.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::solve;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Strict copositivity by support enumeration: for every nonempty support
/// `S` the stationarity system `G_S x = mu 1, 1^T x = 1` is solved; a
/// solution with `x > 0` and `mu <= 0` witnesses failure.
pub fn is_strictly_copositive(g: &[Vec<i64>]) -> bool {
    let n = g.len();
    if (0..n).any(|i| g[i][i] <= 0) {
        return false;
    }
    assert!(n < 31, "support enumeration is limited to small matrices");
    for mask in 1u32..(1u32 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if s.len() == 1 {
            continue;
        }
        let k = s.len();
        let mut a = vec![vec![BigRational::zero(); k + 1]; k + 1];
        let mut b = vec![BigRational::zero(); k + 1];
        for (r, &i) in s.iter().enumerate() {
            for (c, &j) in s.iter().enumerate() {
                a[r][c] = q(g[i][j]);
            }
            a[r][k] = -BigRational::one();
            a[k][r] = BigRational::one();
        }
        b[k] = BigRational::one();
        if crate::linalg::rank(&a) < k + 1 {
            continue;
        }
        let Some(sol) = solve(&a, &b) else { continue };
        if sol[..k].iter().all(|x| x.is_positive()) && !sol[k].is_positive() {
            return false;
        }
    }
    true
}

/// Squared norm of the Euclidean projection of `b` onto the cone generated
/// by the rows of `rows`, which must be linearly independent.
///
/// Solved as `min |A x - b|^2, x >= 0` with `A = rows^T` by the
/// Lawson-Hanson active set method in exact arithmetic; the KKT conditions
/// are re-verified before returning.
pub fn projection_norm_sq(rows: &[Vec<i64>], b: &[BigRational]) -> BigRational {
    let n = rows.len();
    let dim = b.len();
    let col = |j: usize| -> Vec<BigRational> { rows[j].iter().map(|&x| q(x)).collect() };
    let cols: Vec<Vec<BigRational>> = (0..n).map(col).collect();
    let apply = |x: &[BigRational]| -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); dim];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (yi, c) in y.iter_mut().zip(&cols[j]) {
                *yi += xj * c;
            }
        }
        y
    };
    let gradient = |x: &[BigRational]| -> Vec<BigRational> {
        let r: Vec<BigRational> = apply(x).iter().zip(b).map(|(y, bi)| bi - y).collect();
        cols.iter()
            .map(|c| c.iter().zip(&r).map(|(a, b)| a * b).sum())
            .collect()
    };
    let least_squares = |passive: &[usize]| -> Vec<BigRational> {
        let k = passive.len();
        let mut a = vec![vec![BigRational::zero(); k]; k];
        let mut rhs = vec![BigRational::zero(); k];
        for (r, &i) in passive.iter().enumerate() {
            for (c, &j) in passive.iter().enumerate() {
                a[r][c] = cols[i].iter().zip(&cols[j]).map(|(x, y)| x * y).sum();
            }
            rhs[r] = cols[i].iter().zip(b).map(|(x, y)| x * y).sum();
        }
        solve(&a, &rhs).expect("independent generators")
    };

    let mut x = vec![BigRational::zero(); n];
    let mut passive: Vec<usize> = Vec::new();
    let mut iterations = 0;
    loop {
        iterations += 1;
        assert!(iterations < 10_000, "active set method failed to converge");
        let w = gradient(&x);
        let candidate = (0..n)
            .filter(|j| !passive.contains(j) && w[*j].is_positive())
            .max_by(|&i, &j| w[i].cmp(&w[j]).then(j.cmp(&i)));
        let Some(j) = candidate else { break };
        passive.push(j);
        passive.sort();
        loop {
            let z = least_squares(&passive);
            if z.iter().all(|v| v.is_positive()) {
                for (idx, &p) in passive.iter().enumerate() {
                    x[p] = z[idx].clone();
                }
                break;
            }
            let mut alpha: Option<BigRational> = None;
            for (idx, &p) in passive.iter().enumerate() {
                if !z[idx].is_positive() {
                    let t = &x[p] / (&x[p] - &z[idx]);
                    if alpha.as_ref().is_none_or(|a| &t < a) {
                        alpha = Some(t);
                    }
                }
            }
            let alpha = alpha.unwrap();
            for (idx, &p) in passive.iter().enumerate() {
                x[p] = &x[p] + &alpha * (&z[idx] - &x[p]);
            }
            passive.retain(|&p| x[p].is_positive());
            for (p, xp) in x.iter_mut().enumerate() {
                if !passive.contains(&p) {
                    *xp = BigRational::zero();
                }
            }
            if passive.is_empty() {
                break;
            }
        }
    }
    let w = gradient(&x);
    for j in 0..n {
        assert!(!x[j].is_negative() && !w[j].is_positive());
        assert!(x[j].is_zero() || w[j].is_zero(), "complementarity");
    }
    apply(&x).iter().map(|y| y * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        assert!(is_strictly_copositive(&[vec![1, 0], vec![0, 1]]));
        // Nonnegative off-diagonal entries with positive diagonal.
        assert!(is_strictly_copositive(&[vec![1, 5], vec![5, 1]]));
        assert!(!is_strictly_copositive(&[vec![1, -1], vec![-1, 1]]));
        assert!(is_strictly_copositive(&[vec![2, -1], vec![-1, 2]]));
        assert!(!is_strictly_copositive(&[vec![1, -2], vec![-2, 1]]));
    }

    #[test]
    fn projection_of_ones_onto_orthant_and_ray() {
        let id = vec![vec![1, 0], vec![0, 1]];
        let b = vec![q(1), q(1)];
        assert_eq!(projection_norm_sq(&id, &b), q(2));
        let ray = vec![vec![1, 0], vec![1, -1]];
        // cone{(1,0),(1,-1)} is the fourth-quadrant wedge below y=0; the
        // projection of (1,1) is (1,0).
        assert_eq!(projection_norm_sq(&ray, &b), q(1));
    }
}
