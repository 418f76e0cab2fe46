use proptest::prelude::*;

use projlink::{
    applicable_relations, apply_relation, isotopic, lift, normal_form, AmbientSpace, Direction,
    Relation, TorusLink,
};

fn space() -> impl Strategy<Value = AmbientSpace> {
    prop_oneof![Just(AmbientSpace::Sphere), Just(AmbientSpace::Projective)]
}

fn triple(radius: i64) -> impl Strategy<Value = TorusLink> {
    (space(), -radius..=radius, -radius..=radius, 0i64..3)
        .prop_map(|(s, p, q, n)| TorusLink::new(s, p, q, n).unwrap())
}

/// Triples that satisfy a reduction side condition more often than uniform
/// sampling would.
fn reducible(radius: i64) -> impl Strategy<Value = TorusLink> {
    (space(), 1..=radius, -radius..=radius, 0i64..2).prop_map(|(s, d, m, n)| {
        let (p, q) = match (s, n) {
            (_, 0) => (d, d * m),
            (AmbientSpace::Sphere, _) => (d * m, d),
            // k = 2q - p = d with d | q.
            (AmbientSpace::Projective, _) => (2 * d * m - d, d * m),
        };
        TorusLink::new(s, p, q, n).unwrap()
    })
}

fn random_walk(start: TorusLink, picks: &[usize]) -> TorusLink {
    let mut at = start;
    for &k in picks {
        let moves = applicable_relations(&at);
        let (rel, dir) = moves[k % moves.len()];
        at = apply_relation(&at, rel, dir).unwrap().after;
    }
    at
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn forward_reductions_shrink(link in prop_oneof![triple(1_000_000), reducible(1_000)]) {
        let size = |t: &TorusLink| t.p.abs() + t.q.abs();
        for rel in [Relation::R3, Relation::R4] {
            if let Ok(step) = apply_relation(&link, rel, Direction::Forward) {
                prop_assert!(size(&step.after) < size(&link), "{step:?}");
            }
        }
    }

    #[test]
    fn every_listed_move_applies_and_replays(link in prop_oneof![triple(200), reducible(60)]) {
        for (rel, dir) in applicable_relations(&link) {
            let step = apply_relation(&link, rel, dir).unwrap();
            prop_assert!(step.replays());
            prop_assert!(step.inverse().replays());
            prop_assert_eq!(step.after.component_count(), link.component_count());
        }
    }

    #[test]
    fn normal_form_is_idempotent(link in prop_oneof![triple(500), reducible(100)]) {
        let (nf, chain) = normal_form(&link);
        prop_assert!(chain.verify(&link, &nf));
        prop_assert_eq!(normal_form(&nf).0, nf);
        prop_assert_eq!(nf.component_count(), link.component_count());
    }

    #[test]
    fn random_walks_stay_in_class(
        link in prop_oneof![triple(40), reducible(20)],
        picks in prop::collection::vec(0usize..8, 0..12),
    ) {
        let end = random_walk(link, &picks);
        let (same, witness) = isotopic(&link, &end).unwrap();
        prop_assert!(same);
        let witness = witness.unwrap();
        prop_assert!(witness.verify(&link, &end));
        let counts = witness.component_counts();
        prop_assert!(counts.iter().all(|&c| c == link.component_count()));
    }

    #[test]
    fn verdicts_respect_component_count(a in triple(30), b in triple(30)) {
        prop_assume!(a.space == b.space);
        let (same, witness) = isotopic(&a, &b).unwrap();
        if a.component_count() != b.component_count() {
            prop_assert!(!same);
        }
        match witness {
            Some(chain) => prop_assert!(same && chain.verify(&a, &b)),
            None => prop_assert!(!same),
        }
    }

    #[test]
    fn lifted_relation_is_one_sphere_move(
        link in prop_oneof![triple(300), reducible(100)]
            .prop_filter("projective", |t| t.space == AmbientSpace::Projective),
    ) {
        let up = lift(&link).unwrap();
        for (rel, dir) in applicable_relations(&link) {
            let step = apply_relation(&link, rel, dir).unwrap();
            let lifted = apply_relation(&up, rel, dir).unwrap();
            prop_assert_eq!(lifted.after, lift(&step.after).unwrap(), "{:?}", step);
            prop_assert!(isotopic(&up, &lifted.after).unwrap().0);
        }
    }

    #[test]
    fn json_round_trip(link in triple(1_000_000)) {
        let json = serde_json::to_string(&link).unwrap();
        prop_assert_eq!(serde_json::from_str::<TorusLink>(&json).unwrap(), link);
    }
}

#[test]
fn unknot_family() {
    let unknot = TorusLink::sphere(0, 0, 1).unwrap();
    for q in -100..=100 {
        let (same, chain) = isotopic(&TorusLink::sphere(1, q, 0).unwrap(), &unknot).unwrap();
        assert!(same, "q = {q}");
        assert!(chain
            .unwrap()
            .verify(&TorusLink::sphere(1, q, 0).unwrap(), &unknot));
    }
}

#[test]
fn core_curves_absorb_into_parallel_family() {
    for p in 0..=50 {
        let a = TorusLink::sphere(p, 0, 1).unwrap();
        let b = TorusLink::sphere(0, p + 1, 0).unwrap();
        assert_eq!(normal_form(&a).0, normal_form(&b).0, "p = {p}");
    }
}
