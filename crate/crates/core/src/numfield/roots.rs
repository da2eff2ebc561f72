//! Roots of univariate polynomials lying in the base field.
//!
//! Rational roots are found by Hensel lifting a simple root modulo a small
//! prime, which avoids enumerating divisors of possibly huge coefficients.
//! Over a quadratic field `Q(a)` a root `x + y*a` is found by eliminating `x`
//! between the two rational components of `f(x + y*a)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{qpoly, rat, Field, FieldElement, Rational, UniPoly};
use crate::linalg::rational_det;

/// Roots found in the field together with what is left after dividing them
/// out (with multiplicity).
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<FieldElement>,
    pub cofactor: UniPoly,
}

impl RootSet {
    /// Degree of the cofactor; zero means the polynomial splits over the field.
    pub fn remaining_degree(&self) -> usize {
        self.cofactor.degree().unwrap_or(0)
    }
}

/// Distinct rational roots of a polynomial with rational coefficients
/// (constant term first), sorted ascending. The zero polynomial has none.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let f = qpoly::trim(coeffs.to_vec());
    if f.len() < 2 {
        return Vec::new();
    }
    let g = qpoly::gcd(&f, &qpoly::derivative(&f));
    let (mut sq, _) = qpoly::divrem(&f, &g);
    let mut roots = Vec::new();
    if sq[0].is_zero() {
        roots.push(Rational::zero());
        sq.remove(0);
    }
    let ints = primitive_integer(&sq);
    if ints.len() >= 2 {
        roots.extend(hensel_roots(&ints));
    }
    roots.sort();
    roots.dedup();
    roots
}

fn primitive_integer(p: &[Rational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn eval_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Degree of gcd(f, f') over F_p, used to reject primes where f stops being
/// squarefree.
fn squarefree_mod(p: &[BigInt], prime: u64) -> bool {
    let m = prime as i128;
    let red = |v: &[BigInt]| -> Vec<i128> {
        let mut out: Vec<i128> = v
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(prime)).to_i128().unwrap())
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    };
    let f = red(p);
    let df: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let df = red(&df);
    if df.is_empty() {
        return false;
    }
    let inv = |a: i128| -> i128 {
        let mut r = 1i128;
        let mut b = a.rem_euclid(m);
        let mut e = m - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    };
    let mut a = f;
    let mut b = df;
    while !b.is_empty() {
        let lb = inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = a.last().unwrap() * lb % m;
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] - c * bi).rem_euclid(m);
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

fn hensel_roots(g: &[BigInt]) -> Vec<Rational> {
    let lc = g.last().unwrap().clone();
    let a0 = g[0].clone();
    let bound = BigInt::from(2) * lc.abs() * a0.abs() + BigInt::one();
    let dg: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let prime = small_primes()
        .find(|&p| !(&lc % BigInt::from(p)).is_zero() && squarefree_mod(g, p))
        .expect("some prime keeps a squarefree polynomial squarefree");
    let pb = BigInt::from(prime);
    let mut out = Vec::new();
    for r in 0..prime {
        let mut x = BigInt::from(r);
        if !eval_mod(g, &x, &pb).is_zero() {
            continue;
        }
        let mut m = pb.clone();
        while m < bound {
            m = &m * &m;
            let fx = eval_mod(g, &x, &m);
            let dfx = eval_mod(&dg, &x, &m);
            let inv = match modinv(&dfx, &m) {
                Some(v) => v,
                None => break,
            };
            x = (x - fx * inv).mod_floor(&m);
        }
        let mut y = (&lc * &x).mod_floor(&m);
        if &y * BigInt::from(2) > m {
            y -= &m;
        }
        let cand = Rational::new(y, lc.clone());
        let gq: Vec<Rational> = g.iter().map(|c| Rational::from_integer(c.clone())).collect();
        if qpoly::eval(&gq, &cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

/// All roots of `f` that lie in its coefficient field, plus the cofactor
/// left after removing the corresponding linear factors.
///
/// Completeness holds for Q and for quadratic fields. For fields of degree
/// three or more only the rational roots are located; any other root shows
/// up in the cofactor.
pub fn find_roots_in_field(f: &UniPoly) -> RootSet {
    let field = f.field().clone();
    let mut roots: Vec<FieldElement> = match f.degree() {
        None | Some(0) => Vec::new(),
        _ if field.is_rationals() => rational_roots(&f.rational_coeffs().unwrap())
            .into_iter()
            .map(|r| field.from_rational(r))
            .collect(),
        _ if field.degree() == 2 => quadratic_field_roots(f),
        _ => rational_roots_over_extension(f),
    };
    roots.retain(|r| f.eval(r).is_zero());
    let mut unique: Vec<FieldElement> = Vec::new();
    for r in roots {
        if !unique.contains(&r) {
            unique.push(r);
        }
    }
    let mut cofactor = f.clone();
    for r in &unique {
        let lin = UniPoly::linear_root(r);
        while let Some(q) = cofactor.exact_div(&lin) {
            cofactor = q;
        }
    }
    RootSet {
        roots: unique,
        cofactor,
    }
}

fn rational_roots_over_extension(f: &UniPoly) -> Vec<FieldElement> {
    let field = f.field();
    let n = field.degree();
    let mut g: Vec<Rational> = Vec::new();
    for k in 0..n {
        let comp: Vec<Rational> = f.coeffs().iter().map(|c| c.coeffs()[k].clone()).collect();
        g = qpoly::gcd(&g, &comp);
    }
    rational_roots(&g).into_iter().map(|r| field.from_rational(r)).collect()
}

/// Dense bivariate polynomial over Q in (x, y): `c[i][j]` multiplies x^i y^j.
type Bi = Vec<Vec<Rational>>;

fn bi_zero(n: usize) -> Bi {
    vec![vec![Rational::zero(); n + 1]; n + 1]
}

fn bi_mul(a: &Bi, b: &Bi, n: usize) -> Bi {
    let mut out = bi_zero(n);
    for (i, row) in a.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, row2) in b.iter().enumerate() {
                for (l, d) in row2.iter().enumerate() {
                    if !d.is_zero() && i + k <= n && j + l <= n {
                        out[i + k][j + l] += c * d;
                    }
                }
            }
        }
    }
    out
}

fn bi_add(a: &mut Bi, b: &Bi, s: &Rational) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            if !y.is_zero() {
                *x += y * s;
            }
        }
    }
}

fn bi_at_y(a: &Bi, y: &Rational) -> Vec<Rational> {
    qpoly::trim(a.iter().map(|row| qpoly::eval(row, y)).collect())
}

fn sylvester_resultant(p: &[Rational], q: &[Rational], dq: usize) -> Rational {
    let dp = p.len() - 1;
    if dq == 0 {
        let c = q.first().cloned().unwrap_or_else(Rational::zero);
        return num_traits::pow(c, dp);
    }
    let size = dp + dq;
    let mut m = vec![vec![Rational::zero(); size]; size];
    for row in 0..dq {
        for (i, c) in p.iter().enumerate() {
            m[row][row + dp - i] = c.clone();
        }
    }
    for row in 0..dp {
        for i in 0..=dq {
            let c = q.get(i).cloned().unwrap_or_else(Rational::zero);
            m[dq + row][row + dq - i] = c;
        }
    }
    rational_det(m)
}

fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    // Newton divided differences, then expansion to the monomial basis.
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly = vec![coef[n - 1].clone()];
    for i in (0..n - 1).rev() {
        poly = qpoly::mul(&poly, &[-xs[i].clone(), Rational::one()]);
        if poly.is_empty() {
            poly.push(Rational::zero());
        }
        poly[0] += &coef[i];
    }
    qpoly::trim(poly)
}

fn quadratic_field_roots(f: &UniPoly) -> Vec<FieldElement> {
    let field: Field = f.field().clone();
    // Rational roots first; the elimination below only has to find the rest
    // of the roots of the squarefree part.
    let mut rational = rational_roots_over_extension(f);
    let mut f = f.exact_div(&f.gcd(&f.derivative())).expect("gcd divides");
    for r in &rational {
        f = f.exact_div(&UniPoly::linear_root(r)).expect("root divides");
    }
    let f = f.monic();
    if f.degree().unwrap_or(0) < 2 {
        rational.extend(f.degree().is_some_and(|d| d == 1).then(|| -f.coeffs()[0].clone()));
        return rational;
    }
    let n = f.degree().unwrap();
    let mp = field.minimal_polynomial().coeffs();
    let (m0, m1) = (mp[0].clone(), mp[1].clone());
    // beta = x + y*a, represented as P + Q*a with P, Q in Q[x, y].
    let mut bx = bi_zero(n);
    bx[1][0] = Rational::one();
    let mut by = bi_zero(n);
    by[0][1] = Rational::one();
    let (mut accp, mut accq) = (bi_zero(n), bi_zero(n));
    for c in f.coeffs().iter().rev() {
        // acc <- acc * beta + c, with a^2 = -m0 - m1*a.
        let pp = bi_mul(&accp, &bx, n);
        let qq = bi_mul(&accq, &by, n);
        let pq = bi_mul(&accp, &by, n);
        let qp = bi_mul(&accq, &bx, n);
        let mut np = pp;
        bi_add(&mut np, &qq, &(-m0.clone()));
        let mut nq = pq;
        bi_add(&mut nq, &qp, &Rational::one());
        bi_add(&mut nq, &qq, &(-m1.clone()));
        np[0][0] += &c.coeffs()[0];
        nq[0][0] += &c.coeffs()[1];
        accp = np;
        accq = nq;
    }
    let dq = (0..=n)
        .rev()
        .find(|&i| accq[i].iter().any(|c| !c.is_zero()))
        .unwrap_or(0);
    let samples = n * n + 2;
    let xs: Vec<Rational> = (0..samples as i64).map(rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|y| {
            let p = bi_at_y(&accp, y);
            let mut q = bi_at_y(&accq, y);
            q.resize(dq + 1, Rational::zero());
            sylvester_resultant(&p, &q, dq)
        })
        .collect();
    let res = interpolate(&xs, &ys);
    let a = field.generator();
    let mut out = rational;
    if res.is_empty() {
        return out;
    }
    for y in rational_roots(&res) {
        let p = bi_at_y(&accp, &y);
        let q = bi_at_y(&accq, &y);
        let g = qpoly::gcd(&p, &q);
        for x in rational_roots(&g) {
            out.push(field.from_rational(x) + a.scale(&y));
        }
    }
    out
}
