use cyclotome::coend::*;
use cyclotome::hopf::*;
use cyclotome::linalg::{Field, LinearMap, TensorShape};
use proptest::prelude::*;
use std::sync::OnceLock;

fn coend(name: &str) -> &'static Coend {
    static CACHE: OnceLock<Vec<(String, Coend)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        bundled_names().into_iter().map(|n| (n.to_string(), Coend::build(&bundled(n).unwrap()).unwrap())).collect()
    });
    &all.iter().find(|(n, _)| n == name).unwrap().1
}

fn int(f: &Field, n: i64) -> cyclotome::linalg::Elem {
    f.from_i64(n)
}

#[test]
fn every_bundled_coend_passes_its_checks() {
    for name in bundled_names() {
        let rep = coend(name).verify();
        assert!(rep.passed(), "{name}:\n{rep}");
    }
}

#[test]
fn symmetric_coend_is_the_function_algebra() {
    let c = coend("z2_trivial");
    assert_eq!(c.dim(), 2);
    assert!(c.carrier.action.iter().enumerate().all(|(k, a)| {
        let e = c.algebra.counit_of(&c.algebra.basis_elem(k));
        *a == LinearMap::identity(c.field(), TensorShape::flat(2)).scale(&e)
    }));
    assert_eq!(c.m, c.m.after(&c.braiding()));
}

#[test]
fn factoring_the_dinatural_map_gives_the_identity() {
    let h = bundled("sweedler_h4").unwrap();
    let i_h = dinatural(&h, &Module::regular(&h));
    assert_eq!(i_h.rank(), 4);
    let id = factor_through_coend(&h, &i_h, 1, "i_H").unwrap();
    assert!(id.is_identity());
    let bad = LinearMap::identity(h.field(), TensorShape(vec![4, 4]));
    assert!(matches!(factor_through_coend(&h, &bad, 1, "bad"), Err(CoendError::Inconsistent(_))));
}

#[test]
fn trivial_module_gives_the_counit_functional() {
    let h = bundled("double_z2").unwrap();
    let i = dinatural(&h, &Module::trivial(&h));
    let eps = h.counit_map();
    assert_eq!(i.reshaped(TensorShape::flat(1), TensorShape::flat(4)), eps.transpose());
}

#[test]
fn integrals_are_normalized() {
    for (name, dim_b) in [("double_z2", 4), ("z2_semion", 16), ("z2_trivial", 2)] {
        let c = coend(name);
        let f = c.field();
        let ints = c.integrals.as_ref().unwrap();
        assert!(ints.unit_normalized);
        assert!(f.is_one(&ints.lambda_of_integral));
        let e = c.eps.after(&ints.integral).get(0, 0);
        assert_eq!(e, int(f, dim_b), "{name}");
    }
    // H4 is not unimodular: no invariant integral exists.
    assert!(matches!(coend("sweedler_h4").integrals, Err(CoendError::IntegralSpace(_, 0))));
}

#[test]
fn omega_of_integrals_is_the_global_dimension() {
    for name in ["double_z2", "z2_semion"] {
        let c = coend(name);
        let dim_b = c.algebra.modular_data().unwrap().global_dim;
        assert_eq!(c.omega_lambda_lambda().unwrap(), dim_b);
        assert_eq!(c.eps.after(&c.integrals.as_ref().unwrap().integral).get(0, 0), dim_b);
    }
    assert_eq!(coend("double_z2").omega_lambda_lambda().unwrap(), int(coend("double_z2").field(), 4));
}

#[test]
fn omega_of_integral_is_a_cointegral() {
    for name in ["double_z2", "z2_semion"] {
        let c = coend(name);
        let ints = c.integrals.as_ref().unwrap();
        let id = LinearMap::identity(c.field(), TensorShape::flat(c.dim()));
        let w = c.omega.after(&ints.integral.tensor(&id)).reshaped(TensorShape::flat(c.dim()), TensorShape::flat(1));
        assert_eq!(w, ints.cointegral.scale(&c.omega_lambda_lambda().unwrap()));
    }
}

#[test]
fn pairing_inverse_formula_matches_matrix_inversion() {
    for name in ["double_z2", "z2_semion"] {
        let c = coend(name);
        let by_matrix = c.omega_inv.clone().unwrap();
        assert!(c.inverts_pairing(&by_matrix));
        let (_, by_formula) = c.lemma_omega_candidate().unwrap();
        assert_eq!(by_formula, by_matrix, "{name}");
        let id = LinearMap::identity(c.field(), TensorShape::flat(c.dim()));
        assert_eq!(c.corollary_composite().unwrap(), id.scale(&c.omega_lambda_lambda().unwrap()));
    }
}

#[test]
fn factorizability_tests_agree() {
    for (name, expected) in [("double_z2", true), ("z2_semion", true), ("z2_trivial", false), ("sweedler_h4", false)] {
        let c = coend(name);
        let end = End::build(c).unwrap();
        let rep = end.verify(c);
        assert!(rep.passed(), "{name}:\n{rep}");
        let fz = c.factorizability(&end);
        assert!(fz.agree(), "{name}: {fz:?}");
        assert_eq!(fz.factorizable(), expected, "{name}");
    }
    let c = coend("z2_trivial");
    assert_eq!(c.pairing_rank(), 1);
    assert_eq!(End::build(c).unwrap().drinfeld.rank(), 1);
    assert!(c.omega_inv.is_none());
}

#[test]
fn drinfeld_map_preserves_units() {
    let c = coend("double_z2");
    let end = End::build(c).unwrap();
    assert_eq!(end.drinfeld.after(&c.u), end.u);
    assert_eq!(end.eps.after(&end.drinfeld), c.eps);
}

#[test]
fn characters_of_simples_span_the_invariants() {
    let c = coend("double_z2");
    let chars: Vec<LinearMap> = c.algebra.simples.iter().map(|v| internal_character(c, v)).collect();
    let stacked = chars.iter().skip(1).fold(chars[0].clone(), |a, b| a.hstack(b));
    assert_eq!(stacked.rank(), 4);
    assert_eq!(c.invariants().dim(), 4);
    assert_eq!(internal_character(c, &Module::trivial(&c.algebra)), c.u);
}

#[test]
fn trace_like_identities_hold() {
    for name in bundled_names() {
        let c = coend(name);
        let h = &c.algebra;
        let mut mods = h.simples.clone();
        mods.push(Module::regular(h));
        let r = TraceConvention::pinned(c);
        for v in &mods {
            let x = internal_character(c, v);
            assert_eq!(r.map.after(&c.delta).after(&x), c.delta.after(&x), "{name}");
            let p = psi(c, v);
            assert_eq!(p.after(&c.m).after(&r.map), p.after(&c.m), "{name}");
        }
    }
}

fn random_intertwiner(h: &HopfAlgebra, x: &Module, y: &Module, coeffs: &[i64]) -> LinearMap {
    let basis = x.hom_space(h, y);
    let mut acc = LinearMap::zero(h.field(), x.shape(), y.shape());
    for (b, k) in basis.iter().zip(coeffs) {
        acc = acc.plus(&b.scale(&h.field().from_i64(*k)));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dinaturality_on_random_intertwiners(coeffs in prop::collection::vec(-3i64..4, 16), which in 0usize..3) {
        let h = bundled("sweedler_h4").unwrap();
        let reg = Module::regular(&h);
        let sum = h.simples[0].direct_sum(&h.simples[1]);
        let (x, y) = match which {
            0 => (reg.clone(), reg.clone()),
            1 => (sum.clone(), reg.clone()),
            _ => (reg.clone(), Module::tensor(&h, &reg, &Module::trivial(&h))),
        };
        let g = random_intertwiner(&h, &x, &y, &coeffs);
        prop_assert!(x.is_intertwiner(&h, &y, &g));
        // d_X (g* ⊗ id_X) = d_Y (id_{Y*} ⊗ g) on Y*⊗X.
        let ix = dinatural(&h, &x);
        let iy = dinatural(&h, &y);
        let idx = LinearMap::identity(h.field(), x.shape());
        let idy = LinearMap::identity(h.field(), y.shape());
        let lhs = ix.after(&g.transpose().tensor(&idx));
        let rhs = iy.after(&idy.tensor(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_a_bialgebra_pairing_on_random_vectors(a in prop::collection::vec(-2i64..3, 4), b in prop::collection::vec(-2i64..3, 4), k in 0usize..4) {
        let c = coend(bundled_names()[k]);
        let f = c.field();
        let d = c.dim();
        let vec_of = |v: &[i64]| LinearMap::from_fn(f, TensorShape::flat(1), TensorShape::flat(d), |_| {
            v.iter().enumerate().filter(|(i, x)| *i < d && **x != 0).map(|(i, x)| (i, f.from_i64(*x))).collect()
        });
        let (x, y) = (vec_of(&a), vec_of(&b));
        // ω(Sx ⊗ y) = ω(x ⊗ Sy)
        prop_assert_eq!(c.omega.after(&c.s.after(&x).tensor(&y)), c.omega.after(&x.tensor(&c.s.after(&y))));
        prop_assert_eq!(c.omega.after(&c.u.tensor(&y)), c.eps.after(&y));
    }
}
