//! End-to-end acceptance run over the worked examples. Each criterion prints
//! one PASS or FAIL line, and the test fails if any criterion fails.

mod support;

use std::io::Write;
use std::time::{Duration, Instant};

use folint_core::cluster::{parse_configuration, Configuration, DivisorClass};
use folint_core::cones::{from_class, primitive, Vector};
use folint_core::engine::{
    algorithm1, algorithm2, algorithm3, classify_conditions, decide, delta_bound, memo_fastpath, same_span,
    Algorithm3Outcome, Caps, Curve, DeltaBound, IndependentSystem, Verdict,
};
use folint_core::io::parse_foliation;
use folint_core::linsys::{basis, h0};
use folint_core::numfield::{rat, Field};
use folint_core::parse::parse_poly;
use folint_core::polyforms::{is_first_integral, is_invariant_curve, HomogeneousForm, ProjectiveOneForm};
use folint_core::resolve::{build_configuration, ResolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::fixture_text;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> (ProjectiveOneForm, Configuration) {
    let omega = parse_foliation(&fixture_text(&format!("{name}.fol"))).expect("foliation fixture");
    let config =
        parse_configuration(&fixture_text(&format!("{name}.cfg")), Some(omega.field())).expect("configuration fixture");
    (omega, config)
}

fn form(text: &str, k: &Field) -> HomogeneousForm {
    HomogeneousForm::from_poly(parse_poly(text, k).unwrap_or_else(|e| panic!("{text}: {e}"))).expect("homogeneous")
}

fn spans(v: &Verdict, a: &HomogeneousForm, b: &HomogeneousForm) -> Check {
    match v {
        Verdict::Integral(fi) => ensure(fi.spans(a, b), || format!("integral {fi} spans a different pencil")),
        other => Err(format!("expected an integral, got {other}")),
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

/// Two families of forms agree as sets of curves (each form up to scaling).
fn same_curves(got: &[HomogeneousForm], want: &[HomogeneousForm]) -> bool {
    got.len() == want.len()
        && want.iter().all(|w| {
            got.iter()
                .any(|g| same_span(std::slice::from_ref(g), std::slice::from_ref(w)))
        })
}

fn quartic_pencil_example() -> Check {
    let start = Instant::now();
    let (omega, config) = load("quartic_pencil");
    let k = omega.field().clone();
    let line = form("X-Z", &k);
    let conic = form("(8*a-1)*X^2+4*a*X*Y+8*Y^2+(2-8*a)*X*Z-4*a*Y*Z-Z^2", &k);
    let classes = [
        Curve::new(line.clone(), &config).class,
        Curve::new(conic.clone(), &config).class,
    ];
    let t = config.t_from_system(&classes).map_err(|e| e.to_string())?;
    let expected_t = DivisorClass::new(4, vec![2, 2, 1, 1, 1, 1, 1, 1, 1, 1]);
    ensure(t == expected_t, || format!("T = {t}"))?;

    let dec = config.decompose(&t, &classes).map_err(|e| e.to_string())?;
    ensure(dec.alpha == vec![rat(4), rat(0)], || format!("alpha = {:?}", dec.alpha))?;
    let beta_want: Vec<(usize, i64)> = vec![(0, 2), (1, 4), (2, 3), (3, 2), (4, 1), (6, 3), (7, 2), (8, 1)];
    let beta_want: Vec<_> = beta_want.into_iter().map(|(q, b)| (q, rat(b))).collect();
    ensure(dec.beta == beta_want, || format!("beta = {:?}", dec.beta))?;

    ensure(h0(&t, &config) == 2, || "h0(T) != 2".into())?;
    let f = form("X^2*Z^2-2*X^3*Z+X^4+X*Y*Z^2-2*X^2*Y*Z+X^3*Y+Y^4", &k);
    let g = form("X-Z", &k).pow(4);
    ensure(same_span(&basis(&t, &config), &[f.clone(), g.clone()]), || {
        "basis of H0(T) differs".into()
    })?;

    let system = IndependentSystem::new(&omega, &config, vec![line, conic]).map_err(|e| e.to_string())?;
    let verdict = algorithm2(&omega, &system, 60);
    spans(&verdict, &f, &g)?;
    let fi = verdict.integral().unwrap();
    ensure(is_first_integral(fi.numerator(), fi.denominator(), &omega), || {
        "integral fails the wedge test".into()
    })?;
    within(start, Duration::from_secs(10))
}

fn two_chains_resolution_and_pencil() -> Check {
    let start = Instant::now();
    let (omega, fixture) = load("two_chains");
    let res = build_configuration(&omega, &ResolveOptions::default()).map_err(|e| e.to_string())?;
    let config = res.configuration;
    ensure(config.len() == 13, || format!("{} points", config.len()))?;
    ensure(config.proximity_matrix() == fixture.proximity_matrix(), || {
        "proximity graph differs".into()
    })?;
    let parents: Vec<_> = config.points().iter().map(|p| p.parent).collect();
    let fixture_parents: Vec<_> = fixture.points().iter().map(|p| p.parent).collect();
    ensure(parents == fixture_parents, || "tree shape differs".into())?;
    ensure(config.dicritical() == vec![2, 12], || {
        format!("dicritical {:?}", config.dicritical())
    })?;

    let k = omega.field().clone();
    let system =
        IndependentSystem::new(&omega, &config, vec![form("Z", &k), form("Y", &k)]).map_err(|e| e.to_string())?;
    let verdict = memo_fastpath(&omega, &system).ok_or("K.T is not negative")?;
    spans(
        &verdict,
        &form("Y^10-2*X*Y^5*Z^4+2*Y^6*Z^4+X^2*Z^8-2*X*Y*Z^8+Y^2*Z^8", &k),
        &form("Y^3*Z^7", &k),
    )?;
    within(start, Duration::from_secs(30))
}

fn family_cases() -> Check {
    // a = 5/9. Points are ordered W, q1, q2, q3.
    let start = Instant::now();
    let (omega, config) = load("family_a59");
    let report = algorithm3(&omega, &config, 30, false);
    let first = report.duals.get(1).cloned().flatten().ok_or("no dual cone computed")?;
    let printed = [
        DivisorClass::new(1, vec![0, 0, 0, 0]),
        DivisorClass::new(1, vec![1, 0, 0, 0]),
        DivisorClass::new(1, vec![0, 1, 0, 0]),
        DivisorClass::new(2, vec![0, 1, 1, 0]),
        DivisorClass::new(3, vec![0, 2, 1, 1]),
    ];
    let mut want: Vec<Vector> = printed.iter().map(|c| primitive(from_class(c))).collect();
    want.sort();
    ensure(first.sorted_generators() == want, || {
        format!("first dual: {:?}", first.sorted_generators())
    })?;
    ensure(matches!(report.outcome, Algorithm3Outcome::NoIntegral), || {
        "search did not end without a system".into()
    })?;
    let k = omega.field().clone();
    let g: Vec<HomogeneousForm> = report.curves.iter().map(|c| c.form.clone()).collect();
    ensure(same_curves(&g, &[form("X+Z", &k)]), || format!("G = {g:?}"))?;
    let verdict = decide(&omega, &config, Caps::default());
    ensure(verdict.is_no_integral(), || format!("a = 5/9: {verdict}"))?;
    within(start, Duration::from_secs(120))?;

    // a = -861/100.
    let start = Instant::now();
    let (omega, config) = load("family_a861");
    let report = algorithm3(&omega, &config, 30, false);
    let v2 = report
        .duals
        .get(2)
        .cloned()
        .flatten()
        .ok_or("dual of V2 not computed")?;
    ensure(v2.generators().len() == 27, || {
        format!("dual of V2 has {} rays", v2.generators().len())
    })?;
    let verdict = decide(&omega, &config, Caps::default());
    ensure(verdict.is_no_integral(), || format!("a = -861/100: {verdict}"))?;
    within(start, Duration::from_secs(120))?;

    // a = 0.
    let start = Instant::now();
    let (omega, config) = load("family_a0");
    let k = omega.field().clone();
    let verdict = decide(&omega, &config, Caps::default());
    spans(&verdict, &form("(X+Z)*(Z-Y)", &k), &form("Z*(Y-X)", &k))?;
    within(start, Duration::from_secs(120))
}

fn chain19_delta() -> Check {
    let start = Instant::now();
    let (omega, config) = load("chain19");
    let k = omega.field().clone();
    let report = algorithm3(&omega, &config, 30, false);
    let Algorithm3Outcome::System(system) = report.outcome else {
        return Err("no independent system found".into());
    };
    let conditions = classify_conditions(&system, 60);
    ensure(conditions.holding().contains(&2), || {
        format!("conditions {:?}", conditions.holding())
    })?;
    let bound = delta_bound(&omega, &system, &system.decomposition())?;
    ensure(bound == DeltaBound::Value(rat(1)), || format!("delta = {bound:?}"))?;
    let verdict = algorithm2(&omega, &system, 60);
    spans(
        &verdict,
        &form("Y^5-X^3*Y^2+2*X^3*Y*Z-X^3*Z^2", &k),
        &form("(Y-Z)^5", &k),
    )?;
    within(start, Duration::from_secs(60))
}

fn cube_roots_example() -> Check {
    let start = Instant::now();
    let (omega, config) = load("cube_roots");
    ensure(config.is_p_sufficient(), || "configuration not P-sufficient".into())?;
    let k = omega.field().clone();
    let report = algorithm3(&omega, &config, 30, false);
    let Algorithm3Outcome::System(system) = &report.outcome else {
        return Err("no independent system found".into());
    };
    let g: Vec<HomogeneousForm> = system.curves().iter().map(|c| c.form.clone()).collect();
    // j is the generator a, a primitive cube root of unity.
    let printed: Vec<HomogeneousForm> = ["X", "X+Y", "Z", "X*Y+Y^2+X*Z", "a*X*Y+a*Y^2+X*Z"]
        .iter()
        .map(|s| form(s, &k))
        .collect();
    ensure(same_curves(&g, &printed), || format!("G = {g:?}"))?;
    let verdict = memo_fastpath(&omega, system).ok_or("K.T is not negative")?;
    spans(&verdict, &form("(X+Y)^2*X^2*Z^2", &k), &form("(X+Y)^3*Y^3+X^3*Z^3", &k))?;
    within(start, Duration::from_secs(120))
}

fn cubic_pencil_has_no_system() -> Check {
    let start = Instant::now();
    let (omega, config) = load("cubic_pencil");
    let k = omega.field().clone();
    // sqrt(5) = (17a - a^3)/6 in this field.
    let r5 = "(17/6*a-1/6*a^3)";
    let curves: Vec<HomogeneousForm> = [
        "X-Y".to_string(),
        "X+Y".to_string(),
        format!("2*X+({r5}+3)*Y"),
        format!("-2*X+({r5}-3)*Y"),
        "X^2-X*Y+Y^2-4*Z^2".to_string(),
        "X^2+X*Y+Y^2-2*Z^2".to_string(),
        format!("2*X^2+({r5}-3)*X*Y-(3*{r5}-7)*Y^2+(8*{r5}-24)*Z^2"),
        format!("-2*X^2+({r5}+3)*X*Y-(3*{r5}+7)*Y^2+(8*{r5}+24)*Z^2"),
    ]
    .iter()
    .map(|s| form(s, &k))
    .collect();
    for c in &curves {
        ensure(is_invariant_curve(c, &omega), || format!("{c} is not invariant"))?;
    }
    let classes: Vec<DivisorClass> = curves.iter().map(|c| Curve::new(c.clone(), &config).class).collect();
    let needed = config.len();
    let rank = config.system_rank(&classes);
    ensure(rank < needed, || format!("classes have full rank {rank}"))?;
    ensure(config.dicritical_count() > curves.len(), || {
        "enough curves for a system".into()
    })?;
    ensure(IndependentSystem::new(&omega, &config, curves).is_err(), || {
        "system accepted".into()
    })?;
    within(start, Duration::from_secs(60))
}

fn property_suites() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        support::h0_case(&mut rng)?;
    }
    for _ in 0..100 {
        support::dual_dual_case(&mut rng)?;
    }
    let mut witnessed = 0;
    for _ in 0..200 {
        witnessed += support::negative_square_case(&mut rng)? as usize;
    }
    ensure(witnessed > 0, || "the witness search never succeeded".into())?;
    for (name, c) in support::all_fixture_configurations() {
        support::cluster_invariants(&name, &c)?;
    }
    let fields = support::test_fields();
    for i in 0..1000 {
        let k = &fields[i % fields.len()];
        let (a, b, c) = (
            support::random_element(&mut rng, k),
            support::random_element(&mut rng, k),
            support::random_element(&mut rng, k),
        );
        support::field_axioms(&a, &b, &c)?;
    }
    within(start, Duration::from_secs(300))
}

fn quartic_pencil_degree_three() -> Check {
    let (omega, config) = load("quartic_pencil");
    let v = algorithm1(&omega, &config, 3);
    ensure(v.is_no_integral(), || format!("degree 3: {v}"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 quartic pencil of the degree-3 example", quartic_pencil_example),
        (
            "2 resolution and pencil of the degree-5 example",
            two_chains_resolution_and_pencil,
        ),
        ("3 quadratic family at a = 5/9, -861/100, 0", family_cases),
        ("4 bound and pencil of the degree-4 chain example", chain19_delta),
        ("5 five curves over the cube roots of unity", cube_roots_example),
        (
            "6 cubic pencil without an independent system",
            cubic_pencil_has_no_system,
        ),
        ("7 property suites", property_suites),
        (
            "8 degree-3 search on the quartic-pencil example",
            quartic_pencil_degree_three,
        ),
    ];
    let mut failed = Vec::new();
    // Written to the raw stream so the lines survive output capture.
    let mut out = std::io::stdout().lock();
    for (name, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => writeln!(out, "PASS criterion {name} ({:.2?})", start.elapsed()).unwrap(),
            Err(e) => {
                writeln!(out, "FAIL criterion {name}: {e}").unwrap();
                failed.push(name);
            }
        }
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
