use cyclotome::coend::Coend;
use cyclotome::cyclic_cat::{Token, Variant};
use cyclotome::cyclic_modules::*;
use cyclotome::homology::*;
use cyclotome::hopf::bundled;
use cyclotome::linalg::{CancelToken, LinearMap, Subspace, TensorShape};
use proptest::prelude::*;
use std::sync::OnceLock;

fn coend_module(name: &str, top: usize) -> CyclicModule {
    let c = Coend::build(&bundled(name).unwrap()).unwrap();
    build_from_coalgebra(&CoalgebraObject::from_coend(&c), Rotation::COALGEBRA, top).unwrap()
}

fn coend_modules() -> &'static [(String, CyclicModule)] {
    static M: OnceLock<Vec<(String, CyclicModule)>> = OnceLock::new();
    M.get_or_init(|| [("z2_trivial", 5), ("sweedler_h4", 4)].iter().map(|&(n, t)| (n.to_string(), coend_module(n, t))).collect())
}

fn module(name: &str) -> &'static CyclicModule {
    &coend_modules().iter().find(|(n, _)| n == name).unwrap().1
}

fn gen(m: &CyclicModule, t: Token) -> LinearMap {
    m.gen(&t).unwrap().clone()
}

/// Generators in chain form, transposing a cocyclic module.
fn chain_gen(m: &CyclicModule, t: Token) -> LinearMap {
    match m.chirality {
        Chirality::Cyclic => gen(m, t),
        Chirality::Cocyclic => gen(m, t).transpose(),
    }
}

fn plain_b(m: &CyclicModule, n: usize) -> LinearMap {
    let mut acc = LinearMap::zero(m.field(), TensorShape::flat(m.dim(n)), TensorShape::flat(m.dim(n - 1)));
    for i in 0..=n {
        let d = chain_gen(m, Token::Coface { n, i });
        acc = if i % 2 == 0 { acc.plus(&d) } else { acc.minus(&d) };
    }
    acc
}

/// Cyclic homology as the homology of Connes' complex `C_n / (1 - λ)`
/// (characteristic zero), with none of the mixed-complex machinery.
fn connes_complex_ranks(m: &CyclicModule, max: usize) -> Vec<usize> {
    let f = m.field();
    let one_minus_lambda = |n: usize| {
        let t = chain_gen(m, Token::Cyclic { n, k: 1 });
        let lam = if n.is_multiple_of(2) { t } else { t.neg() };
        LinearMap::identity(f, TensorShape::flat(m.dim(n))).minus(&lam)
    };
    let induced_rank = |n: usize| -> usize {
        if n == 0 {
            return 0;
        }
        let i = one_minus_lambda(n - 1);
        plain_b(m, n).hstack(&i).rank() - i.rank()
    };
    (0..=max).map(|n| m.dim(n) - one_minus_lambda(n).rank() - induced_rank(n) - induced_rank(n + 1)).collect()
}

fn plain_hochschild_ranks(m: &CyclicModule, max: usize) -> Vec<usize> {
    let r = |n: usize| if n == 0 { 0 } else { plain_b(m, n).rank() };
    (0..=max).map(|n| m.dim(n) - r(n) - r(n + 1)).collect()
}

#[test]
fn beta_one_is_the_difference_of_the_cofaces() {
    let m = module("z2_trivial");
    let b1 = hochschild_differential(m, 1).unwrap();
    assert_eq!(b1, gen(m, Token::Coface { n: 1, i: 0 }).minus(&gen(m, Token::Coface { n: 1, i: 1 })));
}

#[test]
fn beta_squares_to_zero_on_h4() {
    let m = module("sweedler_h4");
    for n in 2..=4 {
        assert!(hochschild_differential(m, n).unwrap().after(&hochschild_differential(m, n - 1).unwrap()).is_zero());
    }
}

#[test]
fn b_on_a_cyclic_module_at_level_one() {
    let w = build_w_cyclic(&bundled("sweedler_h4").unwrap(), 2).unwrap();
    let b1 = hochschild_differential(&w, 1).unwrap();
    assert_eq!(b1, gen(&w, Token::Coface { n: 1, i: 0 }).minus(&gen(&w, Token::Coface { n: 1, i: 1 })));
}

#[test]
fn coend_hochschild_cohomology_collapses() {
    for (name, max) in [("z2_trivial", 3), ("sweedler_h4", 2)] {
        let m = module(name);
        let hh = homology_ranks(m, max).unwrap();
        let ker = Subspace::kernel(&hochschild_differential(m, 1).unwrap(), &CancelToken::never()).unwrap().dim();
        assert_eq!(hh[0], ker, "{name}");
        assert!(hh[1..].iter().all(|&x| x == 0), "{name}: {hh:?}");
    }
}

#[test]
fn coend_cyclic_cohomology_alternates() {
    for (name, max) in [("z2_trivial", 3), ("sweedler_h4", 3)] {
        let m = module(name);
        let ker = Subspace::kernel(&hochschild_differential(m, 1).unwrap(), &CancelToken::never()).unwrap().dim();
        let hc = cyclic_ranks(m, max).unwrap();
        let expected: Vec<usize> = (0..=max).map(|n| if n % 2 == 0 { ker } else { 0 }).collect();
        assert_eq!(hc, expected, "{name}");
    }
}

#[test]
fn hh0_matches_the_homotopy_consequence() {
    let c = Coend::build(&bundled("sweedler_h4").unwrap()).unwrap();
    let hmt = contracting_homotopy(&CoalgebraObject::from_coend(&c), &c.u, Rotation::COALGEBRA, 2).unwrap();
    let beta1 = hochschild_differential(&hmt.cocyclic, 1).unwrap();
    let ker = Subspace::kernel(&beta1, &CancelToken::never()).unwrap().dim();
    assert_eq!(homology_ranks(&hmt.cocyclic, 2).unwrap()[0], ker);
}

#[test]
fn hc0_equals_hh0() {
    let h4 = bundled("sweedler_h4").unwrap();
    let w = build_w_cyclic(&h4, 3).unwrap();
    let wco = build_w_cocyclic(&h4, 3).unwrap();
    for m in [module("z2_trivial"), module("sweedler_h4"), &w, &wco] {
        let t = HomologyTable::compute(m, 2).unwrap();
        assert_eq!(t.hh[0], t.hc[0], "{}", m.provenance);
    }
}

#[test]
fn w_model_of_h4_regression_numbers() {
    let w = build_w_cyclic(&bundled("sweedler_h4").unwrap(), 3).unwrap();
    let t = HomologyTable::compute(&w, 2).unwrap();
    assert_eq!(t.hh, vec![1, 3, 2]);
    assert_eq!(t.hc, vec![1, 3, 1]);
}

#[test]
fn classical_z2_values() {
    // Q[Z/2] ≅ Q × Q is separable: HH = (2, 0, 0), HC = (2, 0, 2).
    let w = build_w_cyclic(&bundled("z2_trivial").unwrap(), 3).unwrap();
    let t = HomologyTable::compute(&w, 2).unwrap();
    assert_eq!(t.hh, vec![2, 0, 0]);
    assert_eq!(t.hc, vec![2, 0, 2]);
}

#[test]
fn mixed_complex_identities_on_z2() {
    let w = build_w_cyclic(&bundled("z2_trivial").unwrap(), 4).unwrap();
    for normalized in [true, false] {
        let mc = MixedComplex::build(&w, 4, normalized).unwrap();
        let rep = mc.check_identities();
        assert!(rep.passed(), "{:?}", rep.failed());
    }
    for n in 0..3 {
        let b = connes_b(&w, n).unwrap();
        let b_next = connes_b(&w, n + 1).unwrap();
        assert!(b_next.after(&b).is_zero());
        let mut x = hochschild_differential(&w, n + 1).unwrap().after(&b);
        if n >= 1 {
            x = x.plus(&connes_b(&w, n - 1).unwrap().after(&hochschild_differential(&w, n).unwrap()));
        }
        assert!(x.is_zero(), "level {n}");
    }
}

#[test]
fn paracyclic_input_is_rejected() {
    let c = Coend::build(&bundled("double_z2").unwrap()).unwrap();
    let p = build_paracyclic(&CoalgebraObject::from_coend(&c), Rotation::COALGEBRA, 2).unwrap();
    assert!(matches!(MixedComplex::build(&p.maps, 2, true), Err(HomologyError::NotCyclic(_))));
    assert!(matches!(connes_b(&p.maps, 0), Err(HomologyError::NotCyclic(_))));
}

#[test]
fn truncation_is_reported() {
    let w = build_w_cyclic(&bundled("z2_trivial").unwrap(), 2).unwrap();
    assert!(matches!(cyclic_ranks(&w, 2), Err(HomologyError::Level(3, 2))));
}

#[test]
fn connes_sequence_is_exact() {
    let h4 = bundled("sweedler_h4").unwrap();
    let w = build_w_cyclic(&h4, 3).unwrap();
    for m in [module("z2_trivial"), module("sweedler_h4"), &w] {
        let mc = MixedComplex::build(m, 3, true).unwrap();
        let rep = mc.sbi_check(2).unwrap();
        assert!(rep.passed(), "{}: {:?}", m.provenance, rep.failed());
    }
}

#[test]
fn normalized_and_full_chains_agree() {
    let h4 = bundled("sweedler_h4").unwrap();
    let w = build_w_cyclic(&h4, 3).unwrap();
    for m in [module("sweedler_h4"), &w] {
        let a = MixedComplex::build(m, 3, true).unwrap();
        let b = MixedComplex::build(m, 3, false).unwrap();
        assert!(a.dim(2) < b.dim(2));
        assert_eq!(a.hochschild_ranks(2).unwrap(), b.hochschild_ranks(2).unwrap());
        assert_eq!(a.cyclic_ranks(2).unwrap(), b.cyclic_ranks(2).unwrap());
        assert_eq!(a.hochschild_ranks(2).unwrap(), plain_hochschild_ranks(m, 2));
    }
}

#[test]
fn cyclic_ranks_match_connes_complex() {
    let h4 = bundled("sweedler_h4").unwrap();
    let z2 = bundled("z2_trivial").unwrap();
    let cases = [build_w_cyclic(&z2, 3).unwrap(), build_w_cyclic(&h4, 3).unwrap(), build_w_cocyclic(&h4, 3).unwrap()];
    for m in cases.iter().chain([module("sweedler_h4")]) {
        assert_eq!(cyclic_ranks(m, 2).unwrap(), connes_complex_ranks(m, 2), "{}", m.provenance);
    }
}

#[test]
fn table_json_and_rendering() {
    let t = HomologyTable::compute(module("z2_trivial"), 3).unwrap();
    let v = t.to_json();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cohomology"], true);
    assert_eq!(v["degrees"][2]["HC"], 1);
    assert!(t.render().contains("dim HH^n"));
}

fn algebra_modules() -> &'static Vec<CyclicModule> {
    static M: OnceLock<Vec<CyclicModule>> = OnceLock::new();
    M.get_or_init(|| {
        let mut out = Vec::new();
        for name in ["z2_trivial", "double_z2", "sweedler_h4"] {
            let h = bundled(name).unwrap();
            out.push(build_w_cyclic(&h, 3).unwrap());
            out.push(build_w_cocyclic(&h, 3).unwrap());
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mixed_complex_identities_hold(i in 0usize..6, normalized in any::<bool>(), top in 1usize..=3) {
        let m = &algebra_modules()[i];
        let mc = MixedComplex::build(m, top, normalized).unwrap();
        let rep = mc.check_identities();
        prop_assert!(rep.passed(), "{}: {:?}", m.provenance, rep.failed());
    }

    #[test]
    fn hochschild_and_cyclic_agree_in_degree_zero(i in 0usize..6) {
        let m = &algebra_modules()[i];
        let t = HomologyTable::compute(m, 1).unwrap();
        prop_assert_eq!(t.hh[0], t.hc[0]);
    }
}

#[test]
fn variant_check_accepts_trivial_r() {
    let h = bundled("z2_semion").unwrap();
    let one = cyclotome::hopf::Module::trivial(&h);
    let k = CoalgebraObject::primitive(&h, &h.simples[1], "1 ⊕ x");
    let para = build_paracyclic(&k, Rotation::COALGEBRA, 3).unwrap();
    let r = r_cyclic_from_simple(&para, &one).unwrap();
    assert_eq!(r.module.variant, Variant::RCyclic(1));
    assert!(HomologyTable::compute(&r.module, 2).is_ok());
}
