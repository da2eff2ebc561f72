//! Linear systems of plane curves with assigned virtual multiplicities at a
//! configuration, and multiplicities of concrete curves along it.
//!
//! A degree-`d` form `F` belongs to the system of `D = d L* - sum e_q E_q*`
//! when the pull-back of `F` minus `sum e_q E_q*` is effective. This is
//! checked on virtual transforms: at a point with `e_p > 0` every term of
//! order below `e_p` must vanish, and the transform handed to the children
//! is the chart substitution divided by `u^{e_p}`. A negative `e_p` multiplies
//! by `u^{-e_p}` instead, which keeps the computation exact for arbitrary
//! classes.

use crate::cluster::{Configuration, DivisorClass, Location};
use crate::linalg::EchelonBasis;
use crate::numfield::{Field, FieldElement};
use crate::polyforms::{Exp, HomogeneousForm, LocalPoly, Poly, RootChart};

type LinForm = Vec<FieldElement>;

/// Monomials of degree `d` in graded lexicographic order, largest first.
pub fn monomials(d: u32) -> Vec<Exp> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// The linear conditions cutting out the system of a class.
#[derive(Clone, Debug)]
pub struct ConditionSystem {
    field: Field,
    degree: u32,
    monomials: Vec<Exp>,
    rows: EchelonBasis<FieldElement>,
}

impl ConditionSystem {
    /// Accumulates the conditions for `class` on `config`; `None` when the
    /// degree is negative (the system is empty).
    pub fn new(class: &DivisorClass, config: &Configuration) -> Option<Self> {
        if class.d < 0 {
            return None;
        }
        let degree = class.d as u32;
        let field = config.field().clone();
        let monomials = monomials(degree);
        let mut sys = ConditionSystem {
            field,
            degree,
            monomials,
            rows: EchelonBasis::new(),
        };
        let bounds = order_bounds(&class.e, config);
        for r in config.roots() {
            if bounds[r] <= 0 {
                continue;
            }
            let Location::Root(pt) = &config.point(r).location else {
                unreachable!()
            };
            let generic = sys.localize_generic(&RootChart::at(pt), bounds[r] as u32);
            sys.descend(r, generic, &class.e, &bounds, config);
        }
        Some(sys)
    }

    fn localize_generic(&self, chart: &RootChart, bound: u32) -> LocalPoly<LinForm> {
        let n = self.monomials.len();
        let zero = self.field.zero();
        let images = chart.images(&self.field);
        let mut out: LocalPoly<LinForm> = LocalPoly::new();
        for (k, e) in self.monomials.iter().enumerate() {
            let mono = Poly::monomial(&self.field, *e, self.field.one());
            let mut local = LocalPoly::from_poly(&mono.substitute(&images));
            local.truncate(bound);
            for ((i, j), c) in local.terms() {
                let mut v = vec![zero.clone(); n];
                v[k] = c.clone();
                out.add_term(*i, *j, v);
            }
        }
        out
    }

    fn descend(&mut self, p: usize, mut f: LocalPoly<LinForm>, e: &[i64], bounds: &[i64], config: &Configuration) {
        let ep = e[p];
        if ep > 0 {
            for (_, row) in f.split_low(ep as u32) {
                self.rows.insert(row);
            }
        }
        for q in config.children(p) {
            if bounds[q] <= 0 {
                continue;
            }
            let mut g = match &config.point(q).location {
                Location::Chart1(c) => f.chart1(c),
                Location::Chart2 => f.chart2(),
                Location::Root(_) => unreachable!(),
            }
            .shift_u(-ep);
            g.truncate(bounds[q] as u32);
            self.descend(q, g, e, bounds, config);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rows.rank()
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len() - self.rows.rank()
    }

    /// A basis of the system as homogeneous forms.
    pub fn basis(&self) -> Vec<HomogeneousForm> {
        self.rows
            .solution_space(self.monomials.len(), &self.field.one())
            .into_iter()
            .map(|v| {
                let p = Poly::from_terms(&self.field, self.monomials.iter().copied().zip(v));
                HomogeneousForm::new(p, self.degree).expect("homogeneous by construction")
            })
            .collect()
    }
}

/// `bound[p]`: terms of the virtual transform at `p` of order at least this
/// value impose no condition at `p` or above it.
fn order_bounds(e: &[i64], config: &Configuration) -> Vec<i64> {
    let mut b = vec![0i64; config.len()];
    for p in (0..config.len()).rev() {
        let mut v = e[p];
        for q in config.children(p) {
            v = v.max(e[p] + b[q]);
        }
        b[p] = v;
    }
    b
}

/// Dimension of the space of degree-`d` forms in the system of `class`.
pub fn h0(class: &DivisorClass, config: &Configuration) -> usize {
    ConditionSystem::new(class, config).map_or(0, |s| s.dimension())
}

/// A basis of the system of `class` (empty when `h0` is zero).
pub fn basis(class: &DivisorClass, config: &Configuration) -> Vec<HomogeneousForm> {
    ConditionSystem::new(class, config).map_or_else(Vec::new, |s| s.basis())
}

/// Multiplicity at each point of the successive strict transforms of `G = 0`.
pub fn effective_multiplicities(g: &HomogeneousForm, config: &Configuration) -> Vec<i64> {
    let mut m = vec![0i64; config.len()];
    fn walk(p: usize, f: LocalPoly<FieldElement>, config: &Configuration, m: &mut [i64]) {
        let mp = f.order().unwrap_or(0);
        m[p] = mp as i64;
        if mp == 0 {
            return;
        }
        for q in config.children(p) {
            let g = match &config.point(q).location {
                Location::Chart1(c) => f.chart1(c),
                Location::Chart2 => f.chart2(),
                Location::Root(_) => unreachable!(),
            }
            .shift_u(-(mp as i64));
            walk(q, g, config, m);
        }
    }
    for r in config.roots() {
        let Location::Root(pt) = &config.point(r).location else {
            unreachable!()
        };
        walk(r, RootChart::at(pt).localize(g.poly()), config, &mut m);
    }
    m
}

/// `deg(G) L* - sum m_q E_q*`.
pub fn strict_class(g: &HomogeneousForm, config: &Configuration) -> DivisorClass {
    DivisorClass::new(g.degree() as i64, effective_multiplicities(g, config))
}
