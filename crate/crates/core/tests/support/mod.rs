//! Oracles shared by the property suites and the acceptance run. They avoid
//! the library's own algorithms wherever that is practical.

#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use folint_core::cluster::{parse_configuration, Configuration, DivisorClass};
use folint_core::cones::{square, RationalCone, Vector};
use folint_core::numfield::{Field, FieldElement, MinimalPolynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every configuration fixture, by file name.
pub fn all_fixture_configurations() -> Vec<(String, Configuration)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".cfg"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let c = parse_configuration(&fixture_text(&n), None).unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, c)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// h0 of ordinary points via Taylor coefficients

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn rank_q(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the degree-`d` forms having multiplicity at least `e[i]` at
/// the affine point `(x_i : y_i : 1)`. Multiplicity conditions are the
/// vanishing of the Taylor coefficients of `f(x, y) = F(x, y, 1)` of total
/// order below `e[i]`.
pub fn taylor_h0(d: u32, points: &[(Rational, Rational)], e: &[u32]) -> usize {
    let monos: Vec<(u32, u32)> = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect();
    let mut rows = Vec::new();
    for ((x0, y0), &m) in points.iter().zip(e) {
        for a in 0..m {
            for b in 0..m - a {
                let row = monos
                    .iter()
                    .map(|&(i, j)| {
                        if a > i || b > j {
                            return Rational::zero();
                        }
                        let c = Rational::from_integer(binom(i, a) * binom(j, b));
                        c * pow(x0, i - a) * pow(y0, j - b)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    monos.len() - rank_q(rows)
}

fn pow(x: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * x)
}

/// A configuration of distinct proper points `(x : y : 1)`, all dicritical.
pub fn ordinary_configuration(points: &[(Rational, Rational)]) -> Configuration {
    let mut text = String::new();
    for (i, (x, y)) in points.iter().enumerate() {
        text.push_str(&format!("point p{i} origin=({x}:{y}:1)\n"));
    }
    text.push_str("dicritical");
    for i in 0..points.len() {
        text.push_str(&format!(" p{i}"));
    }
    text.push('\n');
    parse_configuration(&text, None).expect("well-formed configuration")
}

pub fn random_points(rng: &mut impl Rng, n: usize) -> Vec<(Rational, Rational)> {
    let mut pts: Vec<(Rational, Rational)> = Vec::new();
    while pts.len() < n {
        let r = |rng: &mut dyn rand::RngCore| {
            Rational::new(
                BigInt::from(rng.gen_range(-5i64..=5)),
                BigInt::from(rng.gen_range(1i64..=3)),
            )
        };
        let p = (r(rng), r(rng));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// One random case: compares the library's `h0` with [`taylor_h0`].
pub fn h0_case(rng: &mut impl Rng) -> Result<(), String> {
    let d = rng.gen_range(1u32..=6);
    let n = rng.gen_range(1usize..=6);
    let pts = random_points(rng, n);
    let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=d.min(4))).collect();
    let config = ordinary_configuration(&pts);
    let class = DivisorClass::new(d as i64, e.iter().map(|&x| x as i64).collect());
    let got = folint_core::linsys::h0(&class, &config);
    let want = taylor_h0(d, &pts, &e);
    if got == want {
        Ok(())
    } else {
        Err(format!("d={d} e={e:?} points={pts:?}: library {got}, oracle {want}"))
    }
}

// ---------------------------------------------------------------------------
// Cones

pub fn random_vector(rng: &mut impl Rng, dim: usize, bound: i64) -> Vector {
    (0..dim).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

pub fn random_cone(rng: &mut impl Rng, dim: usize, count: usize) -> RationalCone {
    let gens = (0..count)
        .map(|_| random_vector(rng, dim, 3))
        .filter(|v| v.iter().any(|x| !x.is_zero()));
    RationalCone::new(dim, gens)
}

/// Two cones are equal when each contains the other's generators.
pub fn same_cone(a: &RationalCone, b: &RationalCone) -> bool {
    a.generators().iter().all(|g| b.contains(g)) && b.generators().iter().all(|g| a.contains(g))
}

/// One random case for the dual-of-dual identity.
pub fn dual_dual_case(rng: &mut impl Rng) -> Result<(), String> {
    let dim = rng.gen_range(2usize..=8);
    let count = rng.gen_range(1usize..=dim + 3);
    let cone = random_cone(rng, dim, count);
    let dd = cone.dual().dual();
    if same_cone(&cone, &dd) {
        Ok(())
    } else {
        Err(format!("dim {dim}: {:?}", cone.generators()))
    }
}

/// Looks for a nonnegative integer combination of the generators with
/// negative square by random sampling.
pub fn search_negative_witness(rng: &mut impl Rng, cone: &RationalCone, tries: usize) -> Option<Vector> {
    let dim = cone.dim();
    let gens = cone.generators();
    if gens.is_empty() {
        return None;
    }
    (0..tries).find_map(|_| {
        let mut x = vec![BigInt::zero(); dim];
        for g in gens {
            let c = BigInt::from(rng.gen_range(0i64..=6));
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += &c * gi;
            }
        }
        square(&x).is_negative().then_some(x)
    })
}

/// One random Lorentzian cone, taken either as spanned by random vectors or
/// as the dual of such a cone. Returns whether the oracle found a witness.
pub fn negative_square_case(rng: &mut impl Rng) -> Result<bool, String> {
    let dim = rng.gen_range(2usize..=5);
    let count = rng.gen_range(1usize..=dim + 1);
    let mut cone = random_cone(rng, dim, count);
    if rng.gen_bool(0.5) {
        cone = cone.dual();
    }
    match search_negative_witness(rng, &cone, 200) {
        Some(w) if !cone.exists_negative_square() => Err(format!("witness {w:?} missed for {:?}", cone.generators())),
        Some(_) => Ok(true),
        None => Ok(false),
    }
}

// ---------------------------------------------------------------------------
// Cluster invariants

pub fn cluster_invariants(name: &str, c: &Configuration) -> Result<(), String> {
    let m = c.len();
    let fail = |what: String| Err(format!("{name}: {what}"));
    if c.l_star().square() != 1 {
        return fail("L*^2 != 1".into());
    }
    let k = c.canonical_class();
    if k.square() != 9 - m as i64 {
        return fail(format!("K^2 = {}", k.square()));
    }
    let pm = c.proximity_matrix();
    for p in 0..m {
        if c.e_star(p).square() != -1 {
            return fail(format!("E*_{p}^2 != -1"));
        }
        for q in 0..m {
            if p != q && c.e_star(p).dot(&c.e_star(q)) != 0 {
                return fail("E* not orthogonal".into());
            }
            let want = if p == q {
                1
            } else if c.is_proximate(p, q) {
                -1
            } else {
                0
            };
            if pm[p][q] != want {
                return fail(format!("proximity matrix entry ({p},{q})"));
            }
        }
        if c.proximate_to(p).len() > 2 {
            return fail(format!("point {p} proximate to more than two points"));
        }
        if let Some(parent) = c.point(p).parent {
            if !c.is_proximate(p, parent) {
                return fail(format!("point {p} not proximate to its parent"));
            }
        }
        let ep = c.exceptional_strict_class(p);
        let np = c.proximate_points(p).len() as i64;
        if ep.square() != -1 - np {
            return fail(format!("E~_{p}^2 = {}", ep.square()));
        }
        if ep.square() + k.dot(&ep) != -2 {
            return fail(format!("adjunction fails for E~_{p}"));
        }
        for q in 0..m {
            if q != p && ep.dot(&c.exceptional_strict_class(q)) < 0 {
                return fail(format!("E~_{p} . E~_{q} < 0"));
            }
        }
    }
    let again = parse_configuration(&folint_core::cluster::write_configuration(c), Some(c.field()))
        .map_err(|e| format!("{name}: round trip: {e}"))?;
    if again.proximity_matrix() != pm || again.dicritical() != c.dicritical() {
        return fail("round trip changed the configuration".into());
    }
    if c.is_chain() && c.chain_criterion() == Ok(true) && !c.is_p_sufficient() {
        return fail("chain criterion holds but not P-sufficient".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Field axioms

pub fn test_fields() -> Vec<Field> {
    let q = |v: &[i64]| MinimalPolynomial::new(v.iter().map(|&x| Rational::from_integer(x.into())).collect()).unwrap();
    vec![
        Field::rationals(),
        Field::new(q(&[1, 0, 1])),
        Field::new(q(&[1, 1, 1])),
        Field::new(q(&[-2, 0, 0, 1])),
        Field::new(q(&[9, 0, -14, 0, 1])),
    ]
}

pub fn random_element(rng: &mut impl Rng, k: &Field) -> FieldElement {
    let coeffs = (0..k.degree())
        .map(|_| {
            Rational::new(
                BigInt::from(rng.gen_range(-9i64..=9)),
                BigInt::from(rng.gen_range(1i64..=4)),
            )
        })
        .collect();
    k.element(coeffs)
}

pub fn field_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<(), String> {
    let k = a.field();
    let checks = [
        ("a+b = b+a", a + b == b + a),
        ("ab = ba", a * b == b * a),
        ("(a+b)+c = a+(b+c)", (a + b) + c == a + (b + c)),
        ("(ab)c = a(bc)", (a * b) * c == a * (b * c)),
        ("a(b+c) = ab+ac", a * (b + c) == a * b + a * c),
        ("a+0 = a", a + &k.zero() == *a),
        ("a*1 = a", a * &k.one() == *a),
        ("(a+b)-b = a", (a + b) - b == *a),
        ("a + (-a) = 0", (a + &(-a)).is_zero()),
    ];
    for (name, ok) in checks {
        if !ok {
            return Err(format!("{name} fails for {a}, {b}, {c}"));
        }
    }
    if !a.is_zero() {
        let inv = a.invert().map_err(|e| e.to_string())?;
        if !(a * &inv).is_one() {
            return Err(format!("a * a^-1 != 1 for {a}"));
        }
        if b.try_div(a).map_err(|e| e.to_string())? * a.clone() != *b {
            return Err(format!("(b/a)a != b for {a}, {b}"));
        }
    }
    Ok(())
}
