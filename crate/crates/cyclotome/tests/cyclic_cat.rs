use cyclotome::cyclic_cat::*;
use proptest::prelude::*;

const VARIANTS: [Variant; 4] = [Variant::Simplicial, Variant::Cyclic, Variant::RCyclic(2), Variant::Paracyclic];

#[test]
fn relations_hold_up_to_level_six() {
    for v in VARIANTS {
        let rep = relation_suite(v, 6);
        assert!(rep.passed(), "{}: {:?}", v.name(), &rep.failures[..rep.failures.len().min(5)]);
        assert!(rep.checked > 100);
    }
}

#[test]
fn factorization_is_a_bijection() {
    for v in [Variant::Simplicial, Variant::Cyclic, Variant::RCyclic(2), Variant::RCyclic(3)] {
        for n in 0..=4 {
            for m in 0..=4 {
                assert!(check_factorization_bijection(n, m, v).unwrap(), "{} {n}->{m}", v.name());
            }
        }
    }
}

#[test]
fn cyclic_hom_counts_scale_with_rotations() {
    for n in 0..=4 {
        for m in 0..=4 {
            let s = hom_count(n, m, Variant::Simplicial).unwrap();
            assert_eq!(hom_count(n, m, Variant::Cyclic).unwrap(), (n + 1) * s);
        }
    }
    assert!(hom_count(1, 1, Variant::Paracyclic).is_err());
}

#[test]
fn paracyclic_tau_has_infinite_order() {
    for n in 0..4 {
        let t = CyclicMap::cyclic(Variant::Paracyclic, n, n as i64 + 1).unwrap();
        assert!(!t.is_identity());
        let t = CyclicMap::cyclic(Variant::RCyclic(3), n, n as i64 + 1).unwrap();
        assert!(!t.is_identity());
    }
}

#[test]
fn duality_respects_relations() {
    for v in [Variant::Cyclic, Variant::Paracyclic] {
        let rep = check_duality_well_defined(v, 4);
        assert!(rep.passed(), "{}: {:?}", v.name(), rep.failures);
    }
}

#[test]
fn phi_is_an_involutive_automorphism() {
    for v in VARIANTS {
        let rep = check_phi(v, 5);
        assert!(rep.passed(), "{}: {:?}", v.name(), rep.failures);
    }
}

#[test]
fn duality_squared_is_conjugation_by_tau() {
    // L applied to the opposite of L(g) is τ^{-1} g τ.
    for n in 1..=4 {
        for i in 0..=n {
            let g = GeneratorWord::new(Direction::Covariant, vec![Token::Coface { n, i }]).unwrap();
            let g_op = GeneratorWord { direction: Direction::Contravariant, source: n, tokens: g.tokens.clone() };
            let once = dualize_l(&g_op).unwrap();
            let mut rev = once.tokens.clone();
            rev.reverse();
            let once_op = GeneratorWord { direction: Direction::Contravariant, source: once.target().unwrap(), tokens: rev };
            let twice = dualize_l(&once_op).unwrap().interpret(Variant::Cyclic).unwrap();
            let conj = GeneratorWord::new(
                Direction::Covariant,
                vec![Token::Cyclic { n, k: -1 }, Token::Coface { n, i }, Token::Cyclic { n: n - 1, k: 1 }],
            )
            .unwrap()
            .interpret(Variant::Cyclic)
            .unwrap();
            assert_eq!(twice, conj, "n={n} i={i}");
        }
    }
}

fn arb_map(variant: Variant) -> impl Strategy<Value = CyclicMap> {
    (0usize..5, 0usize..5).prop_flat_map(move |(n, m)| {
        let homs = hom_set(n, m, variant).unwrap();
        (0..homs.len()).prop_map(move |k| homs[k].clone())
    })
}

proptest! {
    #[test]
    fn normal_form_reconstructs(f in arb_map(Variant::Cyclic)) {
        prop_assert_eq!(f.to_word().interpret(Variant::Cyclic).unwrap(), f);
    }

    #[test]
    fn composition_is_associative(
        n in 0usize..4, m in 0usize..4, k in 0usize..4, l in 0usize..4,
        a in 0usize..1000, b in 0usize..1000, c in 0usize..1000,
    ) {
        let v = Variant::Cyclic;
        let f = &hom_set(n, m, v).unwrap()[a % hom_count(n, m, v).unwrap()];
        let g = &hom_set(m, k, v).unwrap()[b % hom_count(m, k, v).unwrap()];
        let h = &hom_set(k, l, v).unwrap()[c % hom_count(k, l, v).unwrap()];
        prop_assert_eq!(h.compose(&g.compose(f).unwrap()).unwrap(), h.compose(g).unwrap().compose(f).unwrap());
    }

    #[test]
    fn word_text_round_trips(f in arb_map(Variant::Cyclic)) {
        let w = f.to_word();
        if !w.tokens.is_empty() {
            let back = GeneratorWord::parse(&w.render_ascii(), Direction::Covariant).unwrap();
            prop_assert_eq!(back.interpret(Variant::Cyclic).unwrap(), f);
        }
    }
}
