//! Resolution of the singularities of a foliation, restricted to points
//! defined over the base field.
//!
//! Singular points are blown up while they are not simple. The exceptional
//! divisor of each blown-up point is classified as dicritical or not, and
//! the points having a dicritical divisor at or above them form the output
//! configuration.

use thiserror::Error;

use crate::cluster::{ClusterError, Configuration, InfinitelyNearPoint, Location};
use crate::linalg::det;
use crate::numfield::{find_roots_in_field, rat, rational_roots, Field, FieldElement, UniPoly};
use crate::polyforms::{LocalPoly, Poly, ProjectiveOneForm, RootChart};

pub const DEFAULT_DEPTH_CAP: usize = 50;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("a required point is not defined over the base field; irreducible factor: {certificate}")]
    FieldExtensionRequired { certificate: String },
    #[error("resolution did not terminate within {0} blow-ups along a branch")]
    DepthCapExceeded(usize),
    #[error("could not eliminate a variable: components share a factor in an affine chart")]
    DegenerateElimination,
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

/// A germ of foliation `a du + b dv` at the origin of local coordinates.
#[derive(Clone, Debug)]
pub struct LocalFoliation {
    field: Field,
    pub a: LocalPoly<FieldElement>,
    pub b: LocalPoly<FieldElement>,
}

/// Result of blowing up the origin of a [`LocalFoliation`].
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub dicritical: bool,
    /// Singular points on the exceptional divisor with their transformed germs.
    pub points: Vec<(Location, LocalFoliation)>,
    /// Factor of the polynomial locating singular points that has no root in
    /// the base field (absent when all points were found).
    pub missing: Option<UniPoly>,
}

impl LocalFoliation {
    pub fn new(field: &Field, a: LocalPoly<FieldElement>, b: LocalPoly<FieldElement>) -> Self {
        Self {
            field: field.clone(),
            a,
            b,
        }
    }

    /// The germ of `Omega` at a point of the projective plane, in the chart
    /// of [`RootChart::at`].
    pub fn at_point(omega: &ProjectiveOneForm, point: &[FieldElement; 3]) -> Self {
        let chart = RootChart::at(point);
        let comps = omega.components();
        Self::new(
            omega.field(),
            chart.localize(comps[chart.free[0]]),
            chart.localize(comps[chart.free[1]]),
        )
    }

    pub fn is_singular(&self) -> bool {
        self.a.constant_term().is_none() && self.b.constant_term().is_none()
    }

    /// Order of the germ at the origin.
    pub fn order(&self) -> u32 {
        match (self.a.order(), self.b.order()) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => 0,
        }
    }

    /// Trace and determinant of the linear part of the dual vector field
    /// `b d/du - a d/dv`.
    pub fn linear_part(&self) -> (FieldElement, FieldElement) {
        let z = self.field.zero();
        let c = |p: &LocalPoly<FieldElement>, i, j| p.coeff(i, j).cloned().unwrap_or_else(|| z.clone());
        let (au, av) = (c(&self.a, 1, 0), c(&self.a, 0, 1));
        let (bu, bv) = (c(&self.b, 1, 0), c(&self.b, 0, 1));
        let trace = &bu - &av;
        let det = &(&au * &bv) - &(&bu * &av);
        (trace, det)
    }

    /// Simplicity of a singular point: a non-degenerate linear part whose
    /// eigenvalue ratio is not a positive rational, or a saddle-node.
    pub fn is_simple(&self) -> bool {
        let (t, d) = self.linear_part();
        if d.is_zero() {
            return !t.is_zero();
        }
        // r + 1/r = (t^2 - 2 d) / d for the eigenvalue ratio r.
        let c = &(&(&t * &t) - &d.scale(&rat(2))) / &d;
        let Some(c) = c.as_rational() else { return true };
        let roots = rational_roots(&[rat(1), -c.clone(), rat(1)]);
        !roots.iter().any(|r| r > &rat(0))
    }

    fn normalized(field: &Field, a: LocalPoly<FieldElement>, b: LocalPoly<FieldElement>) -> Self {
        let k = match (a.u_order(), b.u_order()) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => 0,
        };
        Self::new(field, a.shift_u(-(k as i64)), b.shift_u(-(k as i64)))
    }

    /// Chart `v = u (w + c)`; the exceptional divisor is `u = 0`.
    pub fn chart1(&self, c: &FieldElement) -> Self {
        let a1 = self.a.chart1(c);
        let b1 = self.b.chart1(c);
        let one = self.field.one();
        let a_new = a1.add(&b1.mul_term(0, 1, &one)).add(&b1.mul_term(0, 0, c));
        let b_new = b1.mul_term(1, 0, &one);
        Self::normalized(&self.field, a_new, b_new)
    }

    /// Chart `u = s v` in coordinates `(v, s)`; the exceptional is `v = 0`.
    pub fn chart2(&self) -> Self {
        let a2 = self.a.chart2();
        let b2 = self.b.chart2();
        let one = self.field.one();
        let a_new = a2.mul_term(0, 1, &one).add(&b2);
        let b_new = a2.mul_term(1, 0, &one);
        Self::normalized(&self.field, a_new, b_new)
    }

    /// True when the curve `u = 0` is not invariant.
    fn exceptional_dicritical(&self) -> bool {
        self.b.terms().keys().any(|(i, _)| *i == 0)
    }

    pub fn blow_up(&self) -> BlowUp {
        let c1 = self.chart1(&self.field.zero());
        let dicritical = c1.exceptional_dicritical();
        debug_assert_eq!(dicritical, self.chart2().exceptional_dicritical());
        let ra = UniPoly::new(&self.field, c1.a.restrict_u0(&self.field));
        let rb = UniPoly::new(&self.field, c1.b.restrict_u0(&self.field));
        let g = ra.gcd(&rb);
        let found = find_roots_in_field(&g);
        let mut points: Vec<(Location, LocalFoliation)> = found
            .roots
            .iter()
            .map(|r| (Location::Chart1(r.clone()), self.chart1(r)))
            .collect();
        points.sort_by_key(|x| location_key(&x.0));
        let c2 = self.chart2();
        if c2.is_singular() {
            points.push((Location::Chart2, c2));
        }
        BlowUp {
            dicritical,
            points,
            missing: (found.remaining_degree() > 0).then_some(found.cofactor),
        }
    }
}

fn location_key(l: &Location) -> String {
    match l {
        Location::Chart1(c) => format!("{:?}", c.coeffs()),
        Location::Chart2 => "~".into(),
        Location::Root(p) => format!("{p:?}"),
    }
}

/// Singular points of a foliation over the base field.
#[derive(Clone, Debug)]
pub struct SingularPoints {
    /// Points normalised so the last nonzero coordinate is one.
    pub points: Vec<[FieldElement; 3]>,
    /// Univariate factors whose roots lie outside the field; empty when the
    /// list of points is complete.
    pub missing: Vec<UniPoly>,
}

impl SingularPoints {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Restriction of `p` under `X -> x0` (if given), with one variable left
/// free; returns the univariate polynomial in the free variable.
fn univariate(p: &Poly, images: &[Poly; 3], free: usize) -> UniPoly {
    let q = p.substitute(images);
    let field = p.field();
    let coeffs: Vec<FieldElement> = q.coefficients_in(free).iter().map(|c| c.coeff(&[0, 0, 0])).collect();
    UniPoly::new(field, coeffs)
}

/// `Res_Y(f, g)` for polynomials in X and Y, by evaluation at integer
/// abscissae and Newton interpolation.
fn resultant_y(f: &Poly, g: &Poly) -> UniPoly {
    let field = f.field().clone();
    let fy = f.coefficients_in(1);
    let gy = g.coefficients_in(1);
    let (m, n) = (fy.len() - 1, gy.len() - 1);
    let bound = (f.total_degree().unwrap_or(0) * g.total_degree().unwrap_or(0)) as i64;
    let xs: Vec<FieldElement> = (0..=bound).map(|i| field.from_int(i)).collect();
    let ys: Vec<FieldElement> = xs
        .iter()
        .map(|x0| {
            let pt = [x0.clone(), field.zero(), field.zero()];
            let fc: Vec<FieldElement> = fy.iter().map(|c| c.eval(&pt)).collect();
            let gc: Vec<FieldElement> = gy.iter().map(|c| c.eval(&pt)).collect();
            let size = m + n;
            let mut mat = vec![vec![field.zero(); size]; size];
            for r in 0..n {
                for (k, c) in fc.iter().rev().enumerate() {
                    mat[r][r + k] = c.clone();
                }
            }
            for r in 0..m {
                for (k, c) in gc.iter().rev().enumerate() {
                    mat[n + r][r + k] = c.clone();
                }
            }
            det(mat, &field.one())
        })
        .collect();
    newton_interpolate(&field, &xs, &ys)
}

fn newton_interpolate(field: &Field, xs: &[FieldElement], ys: &[FieldElement]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
        }
    }
    let mut out = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UniPoly::new(field, vec![-&xs[i], field.one()]);
        out = out.mul(&lin).add(&UniPoly::constant(dd[i].clone()));
    }
    out
}

/// Common zeros of the components of `Omega` that lie over the base field.
pub fn singular_points(omega: &ProjectiveOneForm) -> Result<SingularPoints, ResolveError> {
    let field = omega.field().clone();
    let comps = omega.components();
    let x = Poly::var(&field, 0);
    let y = Poly::var(&field, 1);
    let one = Poly::one(&field);
    let zero = Poly::zero(&field);
    let mut points = Vec::new();
    let mut missing = Vec::new();

    // Affine chart Z = 1.
    let aff: Vec<Poly> = comps
        .iter()
        .map(|c| c.substitute(&[x.clone(), y.clone(), one.clone()]))
        .collect();
    let mut r = UniPoly::zero(&field);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if aff[i].is_zero() || aff[j].is_zero() {
            continue;
        }
        r = r.gcd(&resultant_y(&aff[i], &aff[j]));
    }
    let nonzero: Vec<&Poly> = aff.iter().filter(|p| !p.is_zero()).collect();
    if r.is_zero() && nonzero.len() > 1 {
        return Err(ResolveError::DegenerateElimination);
    }
    let xr = find_roots_in_field(&r);
    if xr.remaining_degree() > 0 {
        missing.push(xr.cofactor.clone());
    }
    for x0 in &xr.roots {
        let images = [Poly::constant(x0.clone()), y.clone(), zero.clone()];
        let g = aff
            .iter()
            .fold(UniPoly::zero(&field), |g, p| g.gcd(&univariate(p, &images, 1)));
        let yr = find_roots_in_field(&g);
        if yr.remaining_degree() > 0 {
            missing.push(yr.cofactor.clone());
        }
        for y0 in yr.roots {
            points.push([x0.clone(), y0, field.one()]);
        }
    }

    // Line at infinity: points (x : 1 : 0), then (1 : 0 : 0).
    let images = [x.clone(), one.clone(), zero.clone()];
    let g = comps
        .iter()
        .fold(UniPoly::zero(&field), |g, p| g.gcd(&univariate(p, &images, 0)));
    let xr = find_roots_in_field(&g);
    if xr.remaining_degree() > 0 {
        missing.push(xr.cofactor.clone());
    }
    for x0 in xr.roots {
        points.push([x0, field.one(), field.zero()]);
    }
    let u = [field.one(), field.zero(), field.zero()];
    if comps.iter().all(|c| c.eval(&u).is_zero()) {
        points.push(u);
    }
    Ok(SingularPoints { points, missing })
}

#[derive(Clone, Debug)]
pub struct ResolveOptions {
    pub depth_cap: usize,
    /// Skip points outside the base field instead of failing.
    pub partial: bool,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        Self {
            depth_cap: DEFAULT_DEPTH_CAP,
            partial: false,
        }
    }
}

/// Output of [`build_configuration`].
#[derive(Clone, Debug)]
pub struct Resolution {
    /// The configuration of points with a dicritical divisor at or above them.
    pub configuration: Configuration,
    /// Number of blown-up points in the full resolution tree.
    pub tree_size: usize,
    /// Polynomials whose roots were skipped in partial mode.
    pub skipped: Vec<UniPoly>,
}

struct Node {
    parent: Option<usize>,
    location: Location,
    dicritical: bool,
}

/// Resolves the singularities of `Omega` over its base field and returns the
/// configuration of dicritical points.
pub fn build_configuration(omega: &ProjectiveOneForm, opts: &ResolveOptions) -> Result<Resolution, ResolveError> {
    let field = omega.field().clone();
    let mut skipped = Vec::new();
    let note = |f: UniPoly, skipped: &mut Vec<UniPoly>| -> Result<(), ResolveError> {
        if opts.partial {
            skipped.push(f);
            Ok(())
        } else {
            Err(ResolveError::FieldExtensionRequired {
                certificate: f.monic().format_in("t"),
            })
        }
    };
    let sing = singular_points(omega)?;
    for f in sing.missing {
        note(f, &mut skipped)?;
    }
    let mut nodes: Vec<Node> = Vec::new();
    // Depth-first, so that every branch is numbered contiguously.
    let mut stack: Vec<(Option<usize>, Location, LocalFoliation, usize)> = Vec::new();
    for pt in sing.points.into_iter().rev() {
        let germ = LocalFoliation::at_point(omega, &pt);
        stack.push((None, Location::Root(pt), germ, 1));
    }
    while let Some((parent, location, germ, depth)) = stack.pop() {
        if germ.is_simple() {
            continue;
        }
        if depth > opts.depth_cap {
            return Err(ResolveError::DepthCapExceeded(opts.depth_cap));
        }
        let bu = germ.blow_up();
        if let Some(f) = bu.missing {
            note(f, &mut skipped)?;
        }
        let idx = nodes.len();
        nodes.push(Node {
            parent,
            location,
            dicritical: bu.dicritical,
        });
        for (loc, g) in bu.points.into_iter().rev() {
            stack.push((Some(idx), loc, g, depth + 1));
        }
    }
    let n = nodes.len();
    let mut keep = vec![false; n];
    for i in (0..n).rev() {
        if nodes[i].dicritical {
            keep[i] = true;
        }
        if keep[i] {
            if let Some(p) = nodes[i].parent {
                keep[p] = true;
            }
        }
    }
    let mut new_index = vec![usize::MAX; n];
    let mut points = Vec::new();
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        new_index[i] = points.len();
        points.push(InfinitelyNearPoint {
            id: format!("q{}", points.len() + 1),
            parent: nodes[i].parent.map(|p| new_index[p]),
            location: nodes[i].location.clone(),
            dicritical: nodes[i].dicritical,
        });
    }
    Ok(Resolution {
        configuration: Configuration::new(field, points)?,
        tree_size: n,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn q() -> Field {
        Field::rationals()
    }

    fn lp(s: &str) -> LocalPoly<FieldElement> {
        // u -> X, v -> Y
        LocalPoly::from_poly(&parse_poly(s, &q()).unwrap())
    }

    fn germ(a: &str, b: &str) -> LocalFoliation {
        LocalFoliation::new(&q(), lp(a), lp(b))
    }

    fn omega(a: &str, b: &str, c: &str) -> ProjectiveOneForm {
        ProjectiveOneForm::new(
            parse_poly(a, &q()).unwrap(),
            parse_poly(b, &q()).unwrap(),
            parse_poly(c, &q()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn radial_is_dicritical() {
        let g = germ("Y", "-X");
        assert!(!g.is_simple());
        let bu = g.blow_up();
        assert!(bu.dicritical);
        assert!(bu.points.is_empty());
    }

    #[test]
    fn saddle_is_not_dicritical() {
        let g = germ("Y", "X");
        assert!(g.is_simple());
        let bu = g.blow_up();
        assert!(!bu.dicritical);
        assert_eq!(bu.points.len(), 2);
        assert_eq!(bu.points[0].0, Location::Chart1(q().zero()));
        assert_eq!(bu.points[1].0, Location::Chart2);
    }

    #[test]
    fn cusp_type_first_blow_up() {
        // Tangent to the curve v^2 = u^3: omega = 3u^2 du - 2v dv.
        let g = germ("3*X^2", "-2*Y");
        let bu = g.blow_up();
        assert!(!bu.dicritical);
    }

    #[test]
    fn simplicity() {
        // Vector field u d/du - v d/dv, i.e. omega = v du + u dv.
        assert!(germ("Y", "X").is_simple());
        // u d/du + 2v d/dv: omega = -2v du + u dv.
        assert!(!germ("-2*Y", "X").is_simple());
        // Nilpotent: v d/du, omega = 0 du + v dv... dual field b d/du = v d/du.
        assert!(!germ("0", "Y").is_simple());
        // Saddle-node u^2 d/du + v d/dv: omega = -v du + u^2 dv.
        assert!(germ("-Y", "X^2").is_simple());
    }

    #[test]
    fn pencil_of_lines() {
        let om = omega("Y", "-X", "0");
        let sp = singular_points(&om).unwrap();
        assert!(sp.complete());
        assert_eq!(sp.points, vec![[q().zero(), q().zero(), q().one()]]);
        let res = build_configuration(&om, &ResolveOptions::default()).unwrap();
        assert_eq!(res.configuration.len(), 1);
        assert!(res.configuration.point(0).dicritical);
    }

    #[test]
    fn irrational_points_are_reported() {
        let om = omega("X*Y", "-X^2+2*Z^2", "-2*Y*Z");
        let sp = singular_points(&om).unwrap();
        assert_eq!(sp.points, vec![[q().zero(), q().one(), q().zero()]]);
        assert_eq!(sp.missing.len(), 1);
        assert_eq!(sp.missing[0].monic().format_in("t"), "t^2-2");
        let err = build_configuration(&om, &ResolveOptions::default()).unwrap_err();
        assert_eq!(
            err,
            ResolveError::FieldExtensionRequired {
                certificate: "t^2-2".into()
            }
        );
        let partial = ResolveOptions {
            partial: true,
            ..Default::default()
        };
        assert!(build_configuration(&om, &partial).is_ok());
    }
}
