//! Search for an independent system of algebraic solutions among curves of
//! negative strict square, degree by degree, while the cone they span still
//! leaves room for classes of negative square in its dual.

use super::gamma::negative_curve_candidates;
use super::{Curve, IndependentSystem};
use crate::cluster::{Configuration, DivisorClass};
use crate::cones::{from_class, RationalCone};
use crate::linsys::{strict_class, ConditionSystem};
use crate::polyforms::{is_invariant_curve, ProjectiveOneForm};

#[derive(Clone, Debug)]
pub enum Algorithm3Outcome {
    System(IndependentSystem),
    /// The search ended with too few independent invariant curves.
    NoIntegral,
    Inconclusive(String),
}

/// Result of [`algorithm3`] with the intermediate data.
#[derive(Clone, Debug)]
pub struct Algorithm3Report {
    pub outcome: Algorithm3Outcome,
    /// The cones `V_0 ⊂ V_1 ⊂ ...` in the order they were built.
    pub cones: Vec<RationalCone>,
    /// `duals[i]` is the dual of `cones[i]` when it was computed.
    pub duals: Vec<Option<RationalCone>>,
    /// The accepted invariant curves `G`.
    pub curves: Vec<Curve>,
    /// One line per candidate and per update of `V` or `G` (when tracing).
    pub trace: Vec<String>,
}

fn fmt_e(e: &[i64]) -> String {
    let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Runs the search up to degree `d_max`. Candidates of one degree are taken
/// in ascending lexicographic order of their multiplicities.
pub fn algorithm3(omega: &ProjectiveOneForm, config: &Configuration, d_max: u32, trace: bool) -> Algorithm3Report {
    let dim = config.len() + 1;
    let s = config.dicritical_count();
    let non_dicritical = config.non_dicritical();
    let v0 = RationalCone::from_classes(
        dim,
        (0..config.len())
            .map(|q| config.exceptional_strict_class(q))
            .collect::<Vec<_>>()
            .iter(),
    );
    let mut report = Algorithm3Report {
        outcome: Algorithm3Outcome::NoIntegral,
        cones: vec![v0],
        duals: vec![None],
        curves: Vec::new(),
        trace: Vec::new(),
    };
    let log = |report: &mut Algorithm3Report, line: String| {
        if trace {
            report.trace.push(line);
        }
    };
    // The dual of V_0 always contains nonzero classes orthogonal to L*, and
    // those have negative square, so the loop condition needs no cone
    // computation until V first grows.
    let mut room = true;
    'degrees: for d in 1..=d_max as i64 {
        for e in negative_curve_candidates(config, d) {
            if report.curves.len() >= s || !room {
                break 'degrees;
            }
            let class = DivisorClass::new(d, e.clone());
            let head = format!("{d} {}", fmt_e(&e));
            let v = report.cones.last().unwrap().clone();
            let vec = from_class(&class);
            if v.contains(&vec) {
                log(&mut report, format!("{head} | reject(in V)"));
                continue;
            }
            let sys = ConditionSystem::new(&class, config).expect("positive degree");
            if sys.dimension() != 1 {
                log(&mut report, format!("{head} | reject(h0 = {})", sys.dimension()));
                continue;
            }
            let q = sys.basis().remove(0).normalized();
            let actual = strict_class(&q, config);
            if actual != class {
                log(
                    &mut report,
                    format!("{head} | reject(strict class {})", fmt_e(&actual.e)),
                );
                continue;
            }
            assert!(!v.contains(&vec), "V must grow strictly");
            let grown = v.with(vec);
            report.cones.push(grown);
            report.duals.push(None);
            log(&mut report, format!("{head} | V+"));
            let mut note = String::new();
            if !is_invariant_curve(&q, omega) {
                note = "not invariant".into();
            } else if let Some(r) = report.curves.iter().find(|r| r.form.poly().divides(q.poly())) {
                note = format!("contains {}", r.form);
            } else {
                let mut classes: Vec<DivisorClass> = report.curves.iter().map(|c| c.class.clone()).collect();
                classes.push(class.clone());
                if config.system_rank(&classes) != classes.len() + non_dicritical.len() {
                    note = "dependent".into();
                }
            }
            if note.is_empty() {
                log(&mut report, format!("{head} | G+ {q}"));
                report.curves.push(Curve { form: q, class });
            } else {
                log(&mut report, format!("{head} | G unchanged ({note})"));
            }
            let last = report.cones.len() - 1;
            let dual = report.cones[last].dual();
            room = dual.exists_negative_square();
            report.duals[last] = Some(dual);
        }
        if report.curves.len() >= s || !room {
            break;
        }
        if d == d_max as i64 {
            report.outcome = Algorithm3Outcome::Inconclusive(format!(
                "degree cap {d_max} reached with {} of {s} curves",
                report.curves.len()
            ));
            return report;
        }
    }
    if report.curves.len() < s {
        report.outcome = Algorithm3Outcome::NoIntegral;
        return report;
    }
    let forms = report.curves.iter().map(|c| c.form.clone()).collect();
    report.outcome = match IndependentSystem::new(omega, config, forms) {
        Ok(sys) => Algorithm3Outcome::System(sys),
        Err(err) => unreachable!("accepted curves form an independent system: {err}"),
    };
    report
}
