mod support;

use support::{all_fixture_configurations, cluster_invariants};

#[test]
fn invariants_hold_on_every_fixture() {
    let configs = all_fixture_configurations();
    assert!(configs.len() >= 9);
    for (name, c) in &configs {
        cluster_invariants(name, c).unwrap();
    }
}

#[test]
fn t_is_orthogonal_to_the_system_on_quartic_pencil() {
    use folint_core::cluster::{parse_configuration, DivisorClass};
    let c = parse_configuration(&support::fixture_text("quartic_pencil.cfg"), None).unwrap();
    let line = DivisorClass::new(1, vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let conic = DivisorClass::new(2, vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
    let t = c.t_from_system(&[line.clone(), conic.clone()]).unwrap();
    assert_eq!(t.dot(&line), 0);
    assert_eq!(t.dot(&conic), 0);
    for q in c.non_dicritical() {
        assert_eq!(t.dot(&c.exceptional_strict_class(q)), 0);
    }
}

mod p_sufficiency {
    use folint_core::cluster::{is_strictly_copositive, parse_configuration};
    use proptest::prelude::*;

    /// A chain over (0:0:1) with the given chart choices plus some proper
    /// points elsewhere.
    fn configuration_text(charts: &[u8], extra: usize) -> String {
        let mut text = String::from("point q0 origin=(0:0:1)\n");
        for (i, &c) in charts.iter().enumerate() {
            let (p, q) = (i, i + 1);
            match c {
                0 => text.push_str(&format!("point q{q} parent=q{p} chart=1 c=0\n")),
                1 => text.push_str(&format!("point q{q} parent=q{p} chart=1 c=1\n")),
                _ => text.push_str(&format!("point q{q} parent=q{p} chart=2\n")),
            }
        }
        for j in 0..extra {
            text.push_str(&format!("point r{j} origin=({}:{}:1)\n", j + 1, (j + 1) * (j + 1)));
        }
        text.push_str(&format!("dicritical q{}", charts.len()));
        for j in 0..extra {
            text.push_str(&format!(" r{j}"));
        }
        text.push('\n');
        text
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn projection_test_matches_support_enumeration(
            charts in prop::collection::vec(0u8..3, 8),
            extra in 0usize..=1,
        ) {
            let c = parse_configuration(&configuration_text(&charts, extra), None).unwrap();
            prop_assert_eq!(c.is_p_sufficient(), is_strictly_copositive(&c.g_matrix()));
        }
    }
}
