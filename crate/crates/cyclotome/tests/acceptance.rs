//! One PASS/FAIL line per acceptance criterion, with wall-clock time
//! against the stated budget. Exits non-zero if any criterion fails.

use cyclotome::coend::{internal_character, psi, Coend, End, TraceConvention};
use cyclotome::cyclic_cat::*;
use cyclotome::cyclic_modules::*;
use cyclotome::homology::MixedComplex;
use cyclotome::hopf::{bundled, bundled_names, HopfAlgebra, Module};
use cyclotome::linalg::{LinearMap, TensorShape};
use cyclotome::tqft::{build_rt_cocyclic, build_rt_cyclic, shape_checks, verify_main_theorem};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alg(name: &str) -> HopfAlgebra {
    bundled(name).expect("bundled data parses")
}

fn coend(name: &str) -> Result<Coend, String> {
    Coend::build(&alg(name)).map_err(|e| format!("{name}: {e}"))
}

fn c1_cyclic_category() -> Outcome {
    let mut total = 0;
    for v in [Variant::Simplicial, Variant::Cyclic, Variant::RCyclic(2), Variant::Paracyclic] {
        let rep = relation_suite(v, 6);
        ensure(rep.passed(), || format!("{}: {:?}", v.name(), rep.failures))?;
        total += rep.checked;
    }
    for n in 0..=4 {
        for m in 0..=4 {
            let c = hom_count(n, m, Variant::Cyclic).map_err(|e| e.to_string())?;
            let s = hom_count(n, m, Variant::Simplicial).map_err(|e| e.to_string())?;
            ensure(c == (n + 1) * s, || format!("|Hom({n},{m})| = {c}, expected {}", (n + 1) * s))?;
        }
    }
    Ok(format!("{total} relation instances, 25 hom-set counts"))
}

fn c2_duality_and_phi() -> Outcome {
    let rep = check_duality_well_defined(Variant::Cyclic, 4);
    ensure(rep.passed(), || format!("L: {:?}", rep.failures))?;
    let phi = check_phi(Variant::Cyclic, 5);
    ensure(phi.passed(), || format!("Φ: {:?}", phi.failures))?;
    Ok(format!("{} L-images, {} Φ instances", rep.checked, phi.checked))
}

fn corrupt(name: &str, key: &str, f: impl Fn(&mut serde_json::Value)) -> Vec<String> {
    let mut doc = alg(name).to_json();
    f(&mut doc[key]);
    match HopfAlgebra::from_json(&doc) {
        Ok(h) => h.verify_axioms().failed().into_iter().map(String::from).collect(),
        Err(e) => vec![format!("parse: {e}")],
    }
}

fn c3_hopf_gate() -> Outcome {
    let mut checks = 0;
    for name in ["z2_trivial", "z2_semion", "sweedler_h4", "double_z2"] {
        let rep = alg(name).verify_axioms();
        ensure(rep.passed(), || format!("{name}: {:?}", rep.failed()))?;
        checks += rep.checks.len();
    }
    let f = corrupt("sweedler_h4", "S", |s| *s = serde_json::json!([[0, 0, "1"], [1, 1, "1"], [2, 3, "1"], [3, 2, "-1"]]));
    ensure(f.contains(&"antipode".to_string()), || format!("antipode corruption: {f:?}"))?;
    let f = corrupt("z2_semion", "theta", |t| *t = serde_json::json!([[0, "1"]]));
    ensure(f.iter().any(|n| n.starts_with("twist condition")), || format!("twist corruption: {f:?}"))?;
    let f = corrupt("double_z2", "Delta", |d| {
        d.as_array_mut().unwrap().pop();
    });
    ensure(f.contains(&"counit".to_string()), || format!("coproduct corruption: {f:?}"))?;
    Ok(format!("{checks} axiom checks; antipode, twist and coproduct corruptions named"))
}

fn c4_w_relations() -> Outcome {
    let mut inst = 0;
    for name in bundled_names() {
        let h = alg(name);
        for m in [build_w_cyclic(&h, 3), build_w_cocyclic(&h, 3)] {
            let m = m.map_err(|e| format!("{name}: {e}"))?;
            let rep = m.check_relations(3);
            ensure(rep.passed(), || format!("{}: {:?}", m.provenance, rep.failures))?;
            for n in 0..=3 {
                let t = m.gen(&Token::Cyclic { n, k: 1 }).map_err(|e| e.to_string())?;
                ensure(t.pow(n + 1).is_identity(), || format!("{}: t_{n}^{} ≠ id", m.provenance, n + 1))?;
            }
            inst += rep.checked;
        }
    }
    Ok(format!("{inst} relation instances over {} algebras, both chiralities", bundled_names().len()))
}

fn c5_oracle() -> Outcome {
    let mut out = Vec::new();
    for (name, level) in [("z2_trivial", 3), ("sweedler_h4", 3), ("double_z2", 3), ("z2_semion", 2)] {
        let c = coend(name)?;
        let w = build_w_cyclic(&c.algebra, level).map_err(|e| e.to_string())?;
        let wco = build_w_cocyclic(&c.algebra, level).map_err(|e| e.to_string())?;
        let co = build_from_coalgebra(&CoalgebraObject::from_coend(&c), Rotation::COALGEBRA, level)
            .and_then(|m| m.apply_cyclic_duality())
            .map_err(|e| e.to_string())?;
        let d = co.differences(&w);
        ensure(d.is_empty(), || format!("{name}: C^•∘L vs W_•: {d:?}"))?;
        let al = build_from_algebra(&AlgebraObject::from_coend(&c), Rotation::ALGEBRA, level)
            .and_then(|m| m.apply_cyclic_duality())
            .map_err(|e| e.to_string())?;
        let d = al.differences(&wco);
        ensure(d.is_empty(), || format!("{name}: A_•∘L vs W^•: {d:?}"))?;
        out.push(format!("{name}≤{level}"));
    }
    Ok(format!("exact equality for {}", out.join(", ")))
}

fn c6_collapse() -> Outcome {
    let mut out = Vec::new();
    for (name, top) in [("z2_trivial", 3), ("sweedler_h4", 2)] {
        let c = coend(name)?;
        let k = CoalgebraObject::from_coend(&c);
        let m = build_from_coalgebra(&k, Rotation::COALGEBRA, top + 1).map_err(|e| e.to_string())?;
        let mc = MixedComplex::build(&m, top + 1, true).map_err(|e| e.to_string())?;
        let hh = mc.hochschild_ranks(top).map_err(|e| e.to_string())?;
        let hc = mc.cyclic_ranks(top).map_err(|e| e.to_string())?;
        let ker = hh[0];
        ensure(hh[1..].iter().all(|&x| x == 0), || format!("{name}: HH = {hh:?}"))?;
        let expect: Vec<usize> = (0..=top).map(|n| if n % 2 == 0 { ker } else { 0 }).collect();
        ensure(hc == expect, || format!("{name}: HC = {hc:?}, expected {expect:?}"))?;
        let hmt = contracting_homotopy(&k, &c.u, Rotation::COALGEBRA, top).map_err(|e| e.to_string())?;
        ensure(hmt.report.passed(), || format!("{name}: homotopy {:?}", hmt.report.failed()))?;
        out.push(format!("{name}: HH {hh:?} HC {hc:?}"));
    }
    Ok(out.join("; "))
}

fn c7_coend_identities() -> Outcome {
    for name in ["double_z2", "z2_semion"] {
        let c = coend(name)?;
        let f = c.field();
        let rep = c.verify();
        ensure(rep.passed(), || format!("{name}: {:?}", rep.failed()))?;
        ensure(c.s.after(&c.s) == c.theta, || format!("{name}: S² ≠ θ_C"))?;
        ensure(c.omega.after(&c.s.tensor(&c.id_map())) == c.omega.after(&c.id_map().tensor(&c.s)), || format!("{name}: ω(S⊗id) ≠ ω(id⊗S)"))?;
        let ints = c.integrals.as_ref().map_err(|e| format!("{name}: {e}"))?;
        ensure(f.is_one(&ints.lambda_of_integral), || format!("{name}: λΛ ≠ 1"))?;
        let dim_b = c.algebra.modular_data().map_err(|e| e.to_string())?.global_dim;
        ensure(c.eps.after(&ints.integral).get(0, 0) == dim_b, || format!("{name}: εΛ ≠ dim(B)"))?;
        let wll = c.omega_lambda_lambda().ok_or("no integral")?;
        ensure(wll == dim_b, || format!("{name}: ω(Λ⊗Λ) = {}", f.render(&wll)))?;
        if name == "double_z2" {
            ensure(f.render(&dim_b) == "4", || format!("dim(B) = {}", f.render(&dim_b)))?;
        }
        let (_, formula) = c.lemma_omega_candidate().ok_or_else(|| format!("{name}: no Ω formula inverts ω"))?;
        ensure(Some(&formula) == c.omega_inv.as_ref(), || format!("{name}: Ω formula ≠ matrix inverse"))?;
        let id = c.id_map();
        ensure(c.corollary_composite() == Some(id.scale(&wll)), || format!("{name}: corollary composite"))?;
    }
    Ok("double_z2 (dim(B) = 4) and z2_semion".into())
}

trait IdMap {
    fn id_map(&self) -> LinearMap;
}

impl IdMap for Coend {
    fn id_map(&self) -> LinearMap {
        LinearMap::identity(self.field(), TensorShape::flat(self.dim()))
    }
}

fn c8_factorizability() -> Outcome {
    let mut out = Vec::new();
    for (name, expected) in [("double_z2", true), ("z2_semion", true), ("z2_trivial", false)] {
        let c = coend(name)?;
        let end = End::build(&c).map_err(|e| e.to_string())?;
        let fz = c.factorizability(&end);
        ensure(fz.agree() && fz.factorizable() == expected, || format!("{name}: {fz:?}"))?;
        out.push(format!("{name}: {expected}"));
    }
    Ok(out.join(", "))
}

fn c9_main_theorem() -> Outcome {
    let c = coend("double_z2")?;
    let rep = verify_main_theorem(&c, 2).map_err(|e| e.to_string())?;
    ensure(rep.passed(), || format!("{:?}", rep.failed()))?;
    let co = shape_checks(&build_rt_cocyclic(&c, 2).map_err(|e| e.to_string())?, 2);
    let cy = shape_checks(&build_rt_cyclic(&c, 2).map_err(|e| e.to_string())?, 2);
    ensure(co.checks.passed() && cy.checks.passed(), || "shape checks".into())?;
    Ok(format!("{} checks, {} independent shape checks", rep.checks.len(), co.checks.checks.len() + cy.checks.checks.len()))
}

fn c10_para_r_cyclic() -> Outcome {
    let c = coend("double_z2")?;
    let p = build_paracyclic(&CoalgebraObject::from_coend(&c), Rotation::COALGEBRA, 2).map_err(|e| e.to_string())?;
    for n in 0..=2 {
        ensure(p.twisted_cyclicity(n).map_err(|e| e.to_string())?, || format!("t_{n}^{} ≠ θ^(-1)", n + 1))?;
    }
    let h = alg("z2_semion");
    let f = h.field().clone();
    let i = (0..h.simples.len())
        .find(|&i| {
            let t = h.twist_on(&h.simples[i]).get(0, 0);
            !f.is_one(&f.mul(&t, &t))
        })
        .ok_or("no simple with θ² ≠ 1")?;
    let x = &h.simples[i];
    let para = build_paracyclic(&CoalgebraObject::primitive(&h, x, "1 ⊕ x"), Rotation::COALGEBRA, 2).map_err(|e| e.to_string())?;
    let r = r_cyclic_from_simple(&para, x).map_err(|e| e.to_string())?;
    ensure(r.r == 4, || format!("r = {}", r.r))?;
    let rep = r.module.check_relations(2);
    ensure(rep.passed(), || format!("{:?}", rep.failures))?;
    for n in 0..=2 {
        let t = r.module.gen(&Token::Cyclic { n, k: 1 }).map_err(|e| e.to_string())?;
        ensure(t.pow(4 * (n + 1)).is_identity(), || format!("τ_{n}^{} ≠ id", 4 * (n + 1)))?;
    }
    ensure(!r.module.check_relations_as(Variant::RCyclic(3), 2).passed(), || "3-cyclic control passed".into())?;
    Ok("twisted cyclicity n ≤ 2; r = 4; 3-cyclic control fails".into())
}

fn c11_characters() -> Outcome {
    let c = coend("double_z2")?;
    let chars: Vec<LinearMap> = c.algebra.simples.iter().map(|v| internal_character(&c, v)).collect();
    let stacked = chars.iter().skip(1).fold(chars[0].clone(), |a, b| a.hstack(b));
    ensure(stacked.rank() == 4 && c.invariants().dim() == 4, || format!("rank {}", stacked.rank()))?;
    let c = coend("sweedler_h4")?;
    let r = TraceConvention::pinned(&c);
    let mut mods = c.algebra.simples.clone();
    mods.push(Module::regular(&c.algebra));
    for v in &mods {
        let p = psi(&c, v);
        ensure(p.after(&c.m).after(&r.map) == p.after(&c.m), || "ψ_X trace-like identity".into())?;
    }
    Ok(format!("rank 4 on double_z2; ψ_X on {} H4 modules", mods.len()))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("cyclic-category relations and hom counts", 5, c1_cyclic_category),
        ("L and Φ", 5, c2_duality_and_phi),
        ("Hopf gate and named corruptions", 10, c3_hopf_gate),
        ("W-model relations, levels ≤ 3", 60, c4_w_relations),
        ("generic-vs-explicit oracle", 120, c5_oracle),
        ("homology collapse and contracting homotopy", 120, c6_collapse),
        ("coend identities", 30, c7_coend_identities),
        ("factorizability triad", 60, c8_factorizability),
        ("main theorem on double_z2, levels ≤ 2", 180, c9_main_theorem),
        ("para- and r-cyclic modules", 60, c10_para_r_cyclic),
        ("internal characters", 60, c11_characters),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = run();
        let el = t.elapsed();
        let over = el > Duration::from_secs(*budget);
        let (tag, detail) = match (&res, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {budget} s budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("{tag} [{:>2}] {name} ({:.2} s / {budget} s): {detail}", k + 1, el.as_secs_f64());
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
