//! Multivariate gcd over a number field by recursive content / primitive
//! part reduction with pseudo-remainder sequences.

use super::poly::Poly;

/// Greatest common divisor, normalised to have graded-lex leading
/// coefficient one. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let Some(v) = (0..3).find(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0) else {
        return Poly::one(a.field());
    };
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() {
        if g.degree_in(v) == Some(0) {
            f = Poly::one(a.field());
            break;
        }
        let r = prem(&f, &g, v);
        f = g;
        g = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
    let h = if f.degree_in(v).unwrap_or(0) == 0 {
        Poly::one(a.field())
    } else {
        primitive_part(&f, v)
    };
    c.mul(&h).normalized()
}

/// Gcd of the coefficients of `p` seen as a polynomial in `v`.
fn content(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.field());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one(p.field());
        }
    }
    g
}

fn primitive_part(p: &Poly, v: usize) -> Poly {
    p.exact_div(&content(p, v)).expect("content divides").normalized()
}

/// Pseudo-remainder of `f` by `g` with respect to variable `v`.
fn prem(f: &Poly, g: &Poly, v: usize) -> Poly {
    let dg = g.degree_in(v).unwrap();
    let lg = g.coefficients_in(v).pop().unwrap();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v).unwrap() >= dg {
        let dr = r.degree_in(v).unwrap();
        let lr = r.coefficients_in(v).pop().unwrap();
        let mut e = [0u32; 3];
        e[v] = dr - dg;
        let shift = lr.mul_monomial(e, &r.field().one());
        r = r.mul(&lg).sub(&g.mul(&shift));
    }
    r
}
