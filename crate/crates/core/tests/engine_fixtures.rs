mod support;

use folint_core::cluster::parse_configuration;
use folint_core::cluster::Configuration;
use folint_core::engine::{algorithm1, discard_checks, pipeline, Caps, Verdict};
use folint_core::io::parse_foliation;
use folint_core::parse::parse_poly;
use folint_core::polyforms::{HomogeneousForm, ProjectiveOneForm};
use support::fixture_text;

fn load(name: &str) -> (ProjectiveOneForm, Configuration) {
    let omega = parse_foliation(&fixture_text(&format!("{name}.fol"))).unwrap();
    let config = parse_configuration(&fixture_text(&format!("{name}.cfg")), Some(omega.field())).unwrap();
    (omega, config)
}

fn verdict(name: &str) -> Verdict {
    let (omega, config) = load(name);
    pipeline(&omega, &config, Caps::default(), false).verdict
}

#[test]
fn integrals_are_found_where_they_exist() {
    for (name, degree) in [
        ("quartic_pencil", 4),
        ("two_chains", 10),
        ("cube_roots", 6),
        ("chain19", 5),
        ("family_a0", 2),
    ] {
        let v = verdict(name);
        let fi = v.integral().unwrap_or_else(|| panic!("{name}: {v}"));
        assert_eq!(fi.degree(), degree, "{name}");
    }
}

#[test]
fn family_members_without_integral() {
    for name in ["family_a59", "family_a861", "family_a2"] {
        let v = verdict(name);
        assert!(v.is_no_integral(), "{name}: {v}");
    }
}

#[test]
fn report_carries_t_and_curves() {
    let (omega, config) = load("chain19");
    let report = pipeline(&omega, &config, Caps::default(), true);
    let t = report.t.expect("system found");
    assert_eq!(
        t.to_string(),
        "5L-2E1-2E2-E3-E4-E5-E6-E7-E8-E9-E10-E11-E12-E13-E14-E15-E16-E17-E18-E19"
    );
    let search = report.search.unwrap();
    assert_eq!(search.curves.len(), 1);
    assert!(!search.trace.is_empty());
}

#[test]
fn degree_search_on_the_quartic_example() {
    let (omega, config) = load("quartic_pencil");
    assert!(algorithm1(&omega, &config, 2).is_no_integral());
    assert!(algorithm1(&omega, &config, 3).is_no_integral());
    assert!(algorithm1(&omega, &config, 4).is_integral());
}

#[test]
fn discard_checks_flag_positive_squares() {
    let (omega, config) = load("two_chains");
    let k = omega.field().clone();
    let f = |s: &str| HomogeneousForm::from_poly(parse_poly(s, &k).unwrap()).unwrap();
    assert!(discard_checks(&omega, &config, &[f("Z"), f("Y")]).is_none());

    // XY/Z^2 is constant on the leaves; Z = 0 misses the only point.
    let omega = parse_foliation("A = Y*Z\nB = X*Z\nC = -2*X*Y\n").unwrap();
    let config = parse_configuration("point p origin=(0:0:1)\ndicritical p\n", Some(omega.field())).unwrap();
    let k = omega.field().clone();
    let z = HomogeneousForm::from_poly(parse_poly("Z", &k).unwrap()).unwrap();
    assert!(matches!(
        discard_checks(&omega, &config, &[z]),
        Some(Verdict::NoIntegral(_))
    ));
}
