//! Para(co)cyclic objects `C_•(K)`, `A_•(K)` of a coalgebra or algebra in
//! `rep(H)`, and the (co)cyclic modules obtained from them with hom-functors.
//!
//! The object level works on `K^{⊗n+1}` with module structure. Composing
//! with `Hom(-, 1)` gives `C^•` (cocyclic) and `A_•` (cyclic); composing
//! with `Hom(-, i)` for a simple `i` gives r-(co)cyclic modules.
//!
//! The only freedom is the braided rotation in the (co)cyclic operator:
//! which end moves, which braiding, and which twist rides on the moving
//! strand. [`pin_coalgebra_rotation`] and [`pin_algebra_rotation`] fix the
//! side by comparing with the explicit model on the coend; the braid and the
//! twist are invisible there and are fixed by [`rotations_with_twist_law`].
//! The results are [`Rotation::COALGEBRA`] and [`Rotation::ALGEBRA`].

use super::{at_slot, build_w_cocyclic, build_w_cyclic, flatten, Chirality, CyclicModule, ModuleError};
use crate::coend::Coend;
use crate::cyclic_cat::{Token, Variant};
use crate::hopf::{HopfAlgebra, Module, Report};
use crate::linalg::{Elem, LinearMap, Subspace, TensorShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `K^{⊗n}⊗K -> K⊗K^{⊗n}`.
    LastToFront,
    /// `K⊗K^{⊗n} -> K^{⊗n}⊗K`.
    FirstToBack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Braid {
    Direct,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    Theta,
    One,
    ThetaInv,
}

/// A braided rotation of `K^{⊗n+1}` carrying one twist on the moving strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub side: Side,
    pub braid: Braid,
    pub twist: Twist,
}

impl Rotation {
    /// The rotation of `C_•`: the last strand passes under the others to the
    /// front and picks up `θ^{-1}`. The side is forced by the comparison with
    /// `W_•`, the braid and twist by `t_n^{n+1} = θ^{-1}` on `1 ⊕ x ⊕ y`.
    pub const COALGEBRA: Rotation = Rotation { side: Side::LastToFront, braid: Braid::Inverse, twist: Twist::ThetaInv };
    /// The rotation of `A_•`, pinned the same way against `W^•`.
    pub const ALGEBRA: Rotation = Rotation { side: Side::FirstToBack, braid: Braid::Inverse, twist: Twist::ThetaInv };

    pub fn candidates() -> Vec<Rotation> {
        let mut out = Vec::new();
        for side in [Side::LastToFront, Side::FirstToBack] {
            for braid in [Braid::Inverse, Braid::Direct] {
                for twist in [Twist::ThetaInv, Twist::Theta, Twist::One] {
                    out.push(Rotation { side, braid, twist });
                }
            }
        }
        out
    }

    pub fn name(&self) -> String {
        let side = match self.side {
            Side::LastToFront => "last to front",
            Side::FirstToBack => "first to back",
        };
        let braid = match self.braid {
            Braid::Direct => "c",
            Braid::Inverse => "c^{-1}",
        };
        let twist = match self.twist {
            Twist::Theta => "θ",
            Twist::One => "no twist",
            Twist::ThetaInv => "θ^{-1}",
        };
        format!("{side}, {braid}, {twist}")
    }

    /// The rotation on `K^{⊗n+1}`, with `rest = K^{⊗n}`.
    pub fn map(&self, h: &HopfAlgebra, base: &Module, rest: &Module) -> LinearMap {
        let f = h.field();
        let tw = match self.twist {
            Twist::Theta => h.twist_on(base),
            Twist::One => LinearMap::identity(f, base.shape()),
            Twist::ThetaInv => h.twist_inv_on(base),
        };
        let id_rest = LinearMap::identity(f, rest.shape());
        let m = match (self.side, self.braid) {
            (Side::LastToFront, Braid::Direct) => h.braiding(rest, base).after(&id_rest.tensor(&tw)),
            (Side::LastToFront, Braid::Inverse) => h.braiding_inv(base, rest).after(&id_rest.tensor(&tw)),
            (Side::FirstToBack, Braid::Direct) => h.braiding(base, rest).after(&tw.tensor(&id_rest)),
            (Side::FirstToBack, Braid::Inverse) => h.braiding_inv(rest, base).after(&tw.tensor(&id_rest)),
        };
        flatten(m)
    }
}

/// A coalgebra in `rep(H)`.
#[derive(Clone, Debug)]
pub struct CoalgebraObject {
    pub algebra: HopfAlgebra,
    pub module: Module,
    pub delta: LinearMap,
    pub eps: LinearMap,
    pub label: String,
}

/// An algebra in `rep(H)`.
#[derive(Clone, Debug)]
pub struct AlgebraObject {
    pub algebra: HopfAlgebra,
    pub module: Module,
    pub m: LinearMap,
    pub u: LinearMap,
    pub label: String,
}

fn intertwines(h: &HopfAlgebra, x: &Module, y: &Module, f: &LinearMap) -> bool {
    x.is_intertwiner(h, y, &f.clone().reshaped(x.shape(), y.shape()))
}

impl CoalgebraObject {
    pub fn from_coend(c: &Coend) -> CoalgebraObject {
        CoalgebraObject {
            algebra: c.algebra.clone(),
            module: c.carrier.clone(),
            delta: c.delta.clone(),
            eps: c.eps.clone(),
            label: format!("coend of {}", c.algebra.name),
        }
    }

    /// `1 ⊕ x` with `Δ(1) = 1⊗1`, `Δ(v) = 1⊗v + v⊗1` and `ε(v) = 0` for
    /// `v ∈ x`. Its tensor powers contain copies of `x`, so `Hom(-, x)` is
    /// nonzero at every level.
    pub fn primitive(h: &HopfAlgebra, x: &Module, label: impl Into<String>) -> CoalgebraObject {
        let f = h.field();
        let module = Module::trivial(h).direct_sum(x);
        let n = module.dim();
        let delta = LinearMap::from_fn(f, TensorShape::flat(n), TensorShape::flat(n * n), |c| {
            if c == 0 {
                vec![(0, f.one())]
            } else {
                let mut v = vec![(c, f.one()), (c * n, f.one())];
                v.sort_by_key(|e| e.0);
                v
            }
        });
        let eps = LinearMap::from_fn(f, TensorShape::flat(n), TensorShape::flat(1), |c| if c == 0 { vec![(0, f.one())] } else { vec![] });
        CoalgebraObject { algebra: h.clone(), module, delta, eps, label: label.into() }
    }

    pub fn check(&self) -> Report {
        let h = &self.algebra;
        let f = h.field();
        let k = &self.module;
        let kk = Module::tensor(h, k, k);
        let id = LinearMap::identity(f, TensorShape::flat(k.dim()));
        let dl = &self.delta;
        let mut rep = Report::default();
        rep.push("Δ is an intertwiner", intertwines(h, k, &kk, dl), "");
        rep.push("ε is an intertwiner", intertwines(h, k, &Module::trivial(h), &self.eps), "");
        rep.push("Δ coassociative", flatten(dl.tensor(&id)).after(dl) == flatten(id.tensor(dl)).after(dl), "");
        rep.push("ε counital", flatten(self.eps.tensor(&id)).after(dl) == id && flatten(id.tensor(&self.eps)).after(dl) == id, "");
        rep
    }
}

impl AlgebraObject {
    pub fn from_coend(c: &Coend) -> AlgebraObject {
        AlgebraObject {
            algebra: c.algebra.clone(),
            module: c.carrier.clone(),
            m: c.m.clone(),
            u: c.u.clone(),
            label: format!("coend of {}", c.algebra.name),
        }
    }

    /// `1 ⊕ x` with unit `1` and `x·x = 0`, the transpose of
    /// [`CoalgebraObject::primitive`].
    pub fn square_zero(h: &HopfAlgebra, x: &Module, label: impl Into<String>) -> AlgebraObject {
        let k = CoalgebraObject::primitive(h, x, label);
        AlgebraObject { algebra: k.algebra, module: k.module, m: k.delta.transpose(), u: k.eps.transpose(), label: k.label }
    }

    pub fn check(&self) -> Report {
        let h = &self.algebra;
        let f = h.field();
        let k = &self.module;
        let kk = Module::tensor(h, k, k);
        let id = LinearMap::identity(f, TensorShape::flat(k.dim()));
        let m = &self.m;
        let mut rep = Report::default();
        rep.push("m is an intertwiner", intertwines(h, &kk, k, m), "");
        rep.push("u is an intertwiner", intertwines(h, &Module::trivial(h), k, &self.u), "");
        rep.push("m associative", m.after(&flatten(m.tensor(&id))) == m.after(&flatten(id.tensor(m))), "");
        rep.push("u unital", m.after(&flatten(self.u.tensor(&id))) == id && m.after(&flatten(id.tensor(&self.u))) == id, "");
        rep
    }
}

/// A para(co)cyclic object of `rep(H)`: the maps live on `objects[n] =
/// K^{⊗n+1}` (full spaces), with the module structures kept alongside.
#[derive(Clone, Debug)]
pub struct ParaObject {
    pub maps: CyclicModule,
    pub objects: Vec<Module>,
    pub algebra: HopfAlgebra,
    pub rotation: Rotation,
}

fn powers(h: &HopfAlgebra, k: &Module, top: usize) -> Vec<Module> {
    let mut out = vec![Module::trivial(h)];
    for i in 1..=top {
        let next = Module::tensor(h, &out[i - 1], k);
        out.push(next);
    }
    out
}

fn full_spaces(h: &HopfAlgebra, objects: &[Module]) -> Vec<Subspace> {
    objects.iter().map(|o| Subspace::full(h.field(), TensorShape::flat(o.dim()))).collect()
}

/// `C_•(K)`: faces apply `ε`, degeneracies `Δ`, and `t_n` is the rotation.
#[allow(clippy::needless_range_loop)]
pub fn build_paracyclic(k: &CoalgebraObject, rotation: Rotation, max_level: usize) -> Result<ParaObject, ModuleError> {
    let rep = k.check();
    if !rep.passed() {
        return Err(ModuleError::Precondition(format!("{} is not a coalgebra in rep(H): {:?}", k.label, rep.failed())));
    }
    let h = &k.algebra;
    let f = h.field();
    let dk = k.module.dim();
    let pw = powers(h, &k.module, max_level + 1);
    let objects: Vec<Module> = pw[1..].to_vec();
    let mut maps = CyclicModule::new(Variant::Paracyclic, Chirality::Cyclic, f, full_spaces(h, &objects), format!("C_•({}), {}", k.label, rotation.name()));
    let p = |e: usize| dk.pow(e as u32);
    for n in 0..=max_level {
        if n >= 1 {
            for i in 0..=n {
                maps.set(Token::Coface { n, i }, at_slot(f, p(i), &k.eps, p(n - i)))?;
            }
        }
        if n < max_level {
            for j in 0..=n {
                maps.set(Token::Codegeneracy { n, j }, at_slot(f, p(j), &k.delta, p(n - j)))?;
            }
        }
        maps.set(Token::Cyclic { n, k: 1 }, rotation.map(h, &k.module, &pw[n]))?;
    }
    Ok(ParaObject { maps, objects, algebra: h.clone(), rotation })
}

/// `A_•(K)`: cofaces insert `u`, codegeneracies apply `m`, and `τ_n` is the
/// rotation.
#[allow(clippy::needless_range_loop)]
pub fn build_paracocyclic(a: &AlgebraObject, rotation: Rotation, max_level: usize) -> Result<ParaObject, ModuleError> {
    let rep = a.check();
    if !rep.passed() {
        return Err(ModuleError::Precondition(format!("{} is not an algebra in rep(H): {:?}", a.label, rep.failed())));
    }
    let h = &a.algebra;
    let f = h.field();
    let dk = a.module.dim();
    let pw = powers(h, &a.module, max_level + 1);
    let objects: Vec<Module> = pw[1..].to_vec();
    let mut maps = CyclicModule::new(Variant::Paracyclic, Chirality::Cocyclic, f, full_spaces(h, &objects), format!("A_•({}), {}", a.label, rotation.name()));
    let p = |e: usize| dk.pow(e as u32);
    for n in 0..=max_level {
        if n >= 1 {
            for i in 0..=n {
                maps.set(Token::Coface { n, i }, at_slot(f, p(i), &a.u, p(n - i)))?;
            }
        }
        if n < max_level {
            for j in 0..=n {
                maps.set(Token::Codegeneracy { n, j }, at_slot(f, p(j), &a.m, p(n - j)))?;
            }
        }
        maps.set(Token::Cyclic { n, k: 1 }, rotation.map(h, &a.module, &pw[n]))?;
    }
    Ok(ParaObject { maps, objects, algebra: h.clone(), rotation })
}

impl ParaObject {
    /// The exponent `e ∈ {-1, 0, 1}` with `t_n^{n+1} = θ^e` on `K^{⊗n+1}`, if
    /// any.
    pub fn cyclicity_twist(&self, n: usize) -> Result<Option<i32>, ModuleError> {
        let h = &self.algebra;
        let t = self.maps.gen(&Token::Cyclic { n, k: 1 })?.pow(n + 1);
        let obj = &self.objects[n];
        for (e, th) in [(-1, h.twist_inv_on(obj)), (0, LinearMap::identity(h.field(), obj.shape())), (1, h.twist_on(obj))] {
            if t == flatten(th) {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// `t_n^{n+1} θ_{K^{⊗n+1}} = id`.
    pub fn twisted_cyclicity(&self, n: usize) -> Result<bool, ModuleError> {
        let h = &self.algebra;
        let t = self.maps.gen(&Token::Cyclic { n, k: 1 })?.pow(n + 1);
        Ok(t.after(&flatten(h.twist_on(&self.objects[n]))).is_identity())
    }

    /// Composition with `Hom_H(-, y)`: precomposition with the object-level
    /// maps, on the intertwiner spaces.
    pub fn hom_into(&self, y: &Module, variant: Variant, label: &str) -> Result<CyclicModule, ModuleError> {
        let h = &self.algebra;
        let f = h.field();
        let spaces: Vec<Subspace> = self.objects.iter().map(|o| o.hom_subspace(h, y)).collect();
        let mut out = CyclicModule::new(variant, self.maps.chirality.flip(), f, spaces, format!("Hom({}, {label})", self.maps.provenance));
        let iy = LinearMap::identity(f, y.shape());
        for t in self.maps.tokens() {
            let g = self.maps.gen(&t)?;
            out.set_ambient(t, &flatten(iy.tensor(&g.transpose())))?;
        }
        Ok(out)
    }
}

/// `C^• = Hom(C_•(K), 1)`.
pub fn build_from_coalgebra(k: &CoalgebraObject, rotation: Rotation, max_level: usize) -> Result<CyclicModule, ModuleError> {
    build_paracyclic(k, rotation, max_level)?.hom_into(&Module::trivial(&k.algebra), Variant::Cyclic, "1")
}

/// `A_• = Hom(A_•(K), 1)`.
pub fn build_from_algebra(a: &AlgebraObject, rotation: Rotation, max_level: usize) -> Result<CyclicModule, ModuleError> {
    build_paracocyclic(a, rotation, max_level)?.hom_into(&Module::trivial(&a.algebra), Variant::Cyclic, "1")
}

/// Every rotation for which `C^•(coend) ∘ L` equals `W_•` up to `level`.
pub fn pin_coalgebra_rotation(c: &Coend, level: usize) -> Result<Vec<Rotation>, ModuleError> {
    let w = build_w_cyclic(&c.algebra, level)?;
    let k = CoalgebraObject::from_coend(c);
    let mut out = Vec::new();
    for rot in Rotation::candidates() {
        let dual = build_from_coalgebra(&k, rot, level)?.apply_cyclic_duality()?;
        if dual.differences(&w).is_empty() {
            out.push(rot);
        }
    }
    if out.is_empty() {
        return Err(ModuleError::NoConvention("the rotation of C^• against W_•".into()));
    }
    Ok(out)
}

/// Every rotation whose para(co)cyclic object on `k` satisfies
/// `t_n^{n+1} = θ^{-1}` up to `level`.
pub fn rotations_with_twist_law(k: &CoalgebraObject, cocyclic_side: bool, level: usize) -> Result<Vec<Rotation>, ModuleError> {
    let mut out = Vec::new();
    for rot in Rotation::candidates() {
        let p = if cocyclic_side {
            let a = AlgebraObject { algebra: k.algebra.clone(), module: k.module.clone(), m: k.delta.transpose(), u: k.eps.transpose(), label: k.label.clone() };
            build_paracocyclic(&a, rot, level)?
        } else {
            build_paracyclic(k, rot, level)?
        };
        let mut ok = true;
        for n in 0..=level {
            ok &= p.twisted_cyclicity(n)?;
        }
        if ok {
            out.push(rot);
        }
    }
    Ok(out)
}

/// Every rotation for which `A_•(coend) ∘ L^op` equals `W^•` up to `level`.
pub fn pin_algebra_rotation(c: &Coend, level: usize) -> Result<Vec<Rotation>, ModuleError> {
    let w = build_w_cocyclic(&c.algebra, level)?;
    let a = AlgebraObject::from_coend(c);
    let mut out = Vec::new();
    for rot in Rotation::candidates() {
        let dual = build_from_algebra(&a, rot, level)?.apply_cyclic_duality()?;
        if dual.differences(&w).is_empty() {
            out.push(rot);
        }
    }
    if out.is_empty() {
        return Err(ModuleError::NoConvention("the rotation of A_• against W^•".into()));
    }
    Ok(out)
}

/// The homotopy `h_n(f) = f(α ⊗ id^{⊗n})` on `C^•`, with its checks.
#[derive(Clone, Debug)]
pub struct Homotopy {
    /// `maps[n - 1] = h_n`, from level `n` to level `n - 1`.
    pub maps: Vec<LinearMap>,
    pub cocyclic: CyclicModule,
    pub report: Report,
}

impl Homotopy {
    pub fn h(&self, n: usize) -> &LinearMap {
        &self.maps[n - 1]
    }
}

/// `β_n = Σ_i (-1)^i δ_i^n`, from level `n - 1` to level `n`.
fn beta(m: &CyclicModule, n: usize) -> Result<LinearMap, ModuleError> {
    let f = m.field();
    let mut acc = LinearMap::zero(f, TensorShape::flat(m.dim(n - 1)), TensorShape::flat(m.dim(n)));
    for i in 0..=n {
        let d = m.gen(&Token::Coface { n, i })?;
        acc = if i % 2 == 0 { acc.plus(d) } else { acc.minus(d) };
    }
    Ok(acc)
}

/// Builds `h_1 … h_{N+1}` and checks `β_n h_n + h_{n+1} β_{n+1} = id` for
/// `1 ≤ n ≤ N` and `h_1 β_1 + Hom(αε, 1) = id`.
pub fn contracting_homotopy(k: &CoalgebraObject, alpha: &LinearMap, rotation: Rotation, max_level: usize) -> Result<Homotopy, ModuleError> {
    let h = &k.algebra;
    let f = h.field();
    if !k.eps.after(alpha).is_identity() {
        return Err(ModuleError::Precondition("εα is not the identity".into()));
    }
    if !intertwines(h, &Module::trivial(h), &k.module, alpha) {
        return Err(ModuleError::Precondition("α is not an intertwiner".into()));
    }
    let c = build_from_coalgebra(k, rotation, max_level + 1)?;
    let dk = k.module.dim();
    let mut maps = Vec::new();
    for n in 1..=max_level + 1 {
        let ins = at_slot(f, 1, alpha, dk.pow(n as u32));
        let m = c.space(n)?.restrict(&ins.transpose(), c.space(n - 1)?)?;
        maps.push(m);
    }
    let mut report = Report::default();
    let id0 = LinearMap::identity(f, TensorShape::flat(c.dim(0)));
    let ae = alpha.after(&k.eps).transpose();
    let hom_ae = c.space(0)?.restrict(&ae, c.space(0)?)?;
    report.push("h_1 β_1 + Hom(αε, 1) = id", maps[0].after(&beta(&c, 1)?).plus(&hom_ae) == id0, "");
    for n in 1..=max_level {
        let id = LinearMap::identity(f, TensorShape::flat(c.dim(n)));
        let lhs = beta(&c, n)?.after(&maps[n - 1]).plus(&maps[n].after(&beta(&c, n + 1)?));
        report.push(format!("β_{n} h_{n} + h_{} β_{} = id", n + 1, n + 1), lhs == id, "");
    }
    Ok(Homotopy { maps, cocyclic: c, report })
}

/// An r-(co)cyclic module with the twist scalar it came from.
#[derive(Clone, Debug)]
pub struct RCyclicModule {
    pub r: u32,
    pub theta: Elem,
    pub module: CyclicModule,
}

/// Largest order searched for the twist scalar.
const MAX_ORDER: u32 = 10_000;

/// Composes a para(co)cyclic object with `Hom(-, i)` for a simple `i` whose
/// twist is a scalar of finite order `r`.
pub fn r_cyclic_from_simple(para: &ParaObject, simple: &Module) -> Result<RCyclicModule, ModuleError> {
    let h = &para.algebra;
    let f = h.field();
    let th = flatten(h.twist_on(simple));
    let c = th.get(0, 0);
    if th != LinearMap::identity(f, TensorShape::flat(simple.dim())).scale(&c) {
        return Err(ModuleError::Precondition("θ does not act on the module by a scalar".into()));
    }
    let mut p = c.clone();
    let mut r = 1;
    while !f.is_one(&p) {
        r += 1;
        if r > MAX_ORDER {
            return Err(ModuleError::Precondition(format!("the twist scalar {} has no order up to {MAX_ORDER}", f.render(&c))));
        }
        p = f.mul(&p, &c);
    }
    let module = para.hom_into(simple, Variant::RCyclic(r), &format!("simple with θ = {}", f.render(&c)))?;
    Ok(RCyclicModule { r, theta: c, module })
}
