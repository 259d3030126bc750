//! The coend `C` of `rep(H)`: the dual space `H*` with the coadjoint action,
//! made into a Hopf algebra in `rep(H)` with a Hopf pairing.
//!
//! Every structure map is obtained from its defining relation on dinatural
//! components by [`factor_through_coend`]: the relation is written out on the
//! regular module and divided by `i_H`. The map `i_H` is onto, with right
//! inverse `φ ↦ φ ⊗ 1`, and the factorization is accepted only if it
//! reproduces the relation exactly.
//!
//! Where the relation admits several braiding or twist placements (the
//! antipode, the pairing), every candidate is factored and the one that
//! satisfies the axioms is kept. [`Coend::conventions`] records the choice.

mod characters;
mod end;

pub use characters::{internal_character, psi, TraceConvention};
pub use end::{End, EndError};

use crate::hopf::{HopfAlgebra, Module, Report};
use crate::linalg::echelon::CancelToken;
use crate::linalg::{LinalgError, LinearMap, SparseVec, Subspace, TensorShape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoendError {
    #[error("the defining relation of {0} does not factor through the coend")]
    Inconsistent(String),
    #[error("no braiding/twist placement for {0} satisfies its axioms")]
    NoConvention(String),
    #[error("the space of {0} has dimension {1}, expected 1")]
    IntegralSpace(&'static str, usize),
    #[error("structure check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn flat(n: usize) -> TensorShape {
    TensorShape::flat(n)
}

fn shape(f: &[usize]) -> TensorShape {
    TensorShape(f.to_vec())
}

/// The coend as a module: `(h·f)(x) = f(S(h_(1)) x h_(2))`.
pub fn carrier_module(h: &HopfAlgebra) -> Module {
    let d = h.dim();
    let action = (0..d)
        .map(|k| {
            let e = h.basis_elem(k);
            LinearMap::from_fn(h.field(), flat(d), flat(d), |c| h.right_coadjoint(&h.basis_elem(c), &e)).transpose()
        })
        .collect();
    Module::new(h.field(), action)
}

/// `i_V: V*⊗V -> C`, `i_V(φ⊗x) = (h ↦ φ(h·x))`.
pub fn dinatural(h: &HopfAlgebra, v: &Module) -> LinearMap {
    let n = v.dim();
    let mut trip = Vec::new();
    for k in 0..h.dim() {
        for (c, col) in v.action[k].columns().iter().enumerate() {
            for (r, x) in col {
                trip.push((k, r * n + c, x.clone()));
            }
        }
    }
    LinearMap::from_triplets(h.field(), shape(&[n, n]), flat(h.dim()), trip).expect("in range")
}

/// `ev_V: V*⊗V -> 1`.
pub fn ev(h: &HopfAlgebra, v: &Module) -> LinearMap {
    let n = v.dim();
    LinearMap::from_triplets(h.field(), shape(&[n, n]), flat(1), (0..n).map(|a| (0, a * n + a, h.field().one()))).unwrap()
}

/// `coev_V: 1 -> V⊗V*`.
pub fn coev(h: &HopfAlgebra, v: &Module) -> LinearMap {
    let n = v.dim();
    LinearMap::from_triplets(h.field(), flat(1), shape(&[n, n]), (0..n).map(|a| (a * n + a, 0, h.field().one()))).unwrap()
}

/// Right coevaluation `1 -> V*⊗V`, `1 ↦ Σ_b e^b(g^{-1}·) ⊗ e_b`.
pub fn coev_right(h: &HopfAlgebra, v: &Module) -> LinearMap {
    let n = v.dim();
    let ginv = v.act(h, &h.pivot_inv());
    let mut trip = Vec::new();
    for b in 0..n {
        // e^b∘ρ(g^{-1}) = Σ_a ρ(g^{-1})[b][a] e^a
        for a in 0..n {
            let x = ginv.get(b, a);
            if !h.field().is_zero(&x) {
                trip.push((a * n + b, 0, x));
            }
        }
    }
    LinearMap::from_triplets(h.field(), flat(1), shape(&[n, n]), trip).unwrap()
}

/// Right inverse of `i_H`: `e^a ↦ e^a ⊗ 1_H`.
pub fn section(h: &HopfAlgebra) -> LinearMap {
    let d = h.dim();
    let unit = h.unit().clone();
    LinearMap::from_fn(h.field(), flat(d), shape(&[d, d]), |a| unit.iter().map(|(u, c)| (a * d + u, c.clone())).collect())
}

fn tensor_power_map(m: &LinearMap, n: usize) -> LinearMap {
    let f = m.field();
    let mut acc = LinearMap::identity(f, TensorShape(Vec::new()).concat(&flat(1)));
    for _ in 0..n {
        acc = acc.tensor(m);
    }
    acc
}

/// Divides a relation on `(H*⊗H)^{⊗n}` by `i_H^{⊗n}`: returns the unique
/// `φ: C^{⊗n} -> target` with `φ ∘ i_H^{⊗n} = rhs`, or an error when `rhs`
/// does not vanish on the kernel of `i_H^{⊗n}`.
pub fn factor_through_coend(h: &HopfAlgebra, rhs: &LinearMap, n: usize, name: &str) -> Result<LinearMap, CoendError> {
    let d = h.dim();
    let i_h = dinatural(h, &Module::regular(h));
    let sec = tensor_power_map(&section(h), n);
    let phi = rhs.compose(&sec)?;
    let ih_n = tensor_power_map(&i_h, n);
    if phi.after(&ih_n) != *rhs {
        return Err(CoendError::Inconsistent(name.to_string()));
    }
    Ok(phi.reshaped(TensorShape::power(d, n), rhs.codomain().clone()))
}

/// The braided comultiplication `Δ^Bd(x) = x_(2) a_i ⊗ S((b_i)_(1)) x_(1) (b_i)_(2)`
/// as a map `H -> H⊗H`.
pub fn braided_coproduct(h: &HopfAlgebra) -> LinearMap {
    let d = h.dim();
    let f = h.field();
    let r = h.r_terms();
    LinearMap::from_fn(f, flat(d), TensorShape::power(d, 2), |k| {
        let mut acc = Vec::new();
        for (x1, x2) in h.split2(&h.comul(&h.basis_elem(k))) {
            for (a, b) in &r {
                acc.extend(h.tensor_elems(&h.mul(&x2, a), &h.right_coadjoint(&x1, b)));
            }
        }
        acc
    })
}

/// Right integral and left cointegral of the coend.
#[derive(Clone, Debug)]
pub struct Integrals {
    /// `Λ: 1 -> C`.
    pub integral: LinearMap,
    /// `λ: C -> 1`.
    pub cointegral: LinearMap,
    /// Whether `λ u = 1` could be imposed (it cannot when `λ u = 0`, as for
    /// non-semisimple `H`); then `λ Λ = 1` is imposed if possible.
    pub unit_normalized: bool,
    pub lambda_of_integral: crate::linalg::Elem,
}

/// The coend with its Hopf structure and pairing.
#[derive(Clone)]
pub struct Coend {
    pub algebra: HopfAlgebra,
    pub carrier: Module,
    pub m: LinearMap,
    pub u: LinearMap,
    pub delta: LinearMap,
    pub eps: LinearMap,
    pub s: LinearMap,
    pub s_inv: LinearMap,
    pub omega: LinearMap,
    pub theta: LinearMap,
    pub theta_inv: LinearMap,
    /// The integrals, or why `Hom(1, C)` holds none (for a non-unimodular
    /// `H` the integral of the coend is not invariant).
    pub integrals: Result<Integrals, CoendError>,
    /// Inverse of the pairing, when `ω` is non-degenerate.
    pub omega_inv: Option<LinearMap>,
    /// Which candidate placement was kept for each convention-dependent map.
    pub conventions: Vec<(String, String)>,
}

impl std::fmt::Debug for Coend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Coend({}, dim {})", self.algebra.name, self.dim())
    }
}

struct Ctx<'a> {
    h: &'a HopfAlgebra,
    reg: Module,
    reg_dual: Module,
    d: usize,
}

impl<'a> Ctx<'a> {
    fn new(h: &'a HopfAlgebra) -> Ctx<'a> {
        let reg = Module::regular(h);
        let reg_dual = Module::dual(h, &reg);
        Ctx { h, reg, reg_dual, d: h.dim() }
    }

    fn id(&self) -> LinearMap {
        LinearMap::identity(self.h.field(), flat(self.d))
    }

    /// `m ∘ (i_X ⊗ i_Y) = i_{Y⊗X} ∘ (id_{X*} ⊗ c_{X, Y*⊗Y})`, with
    /// `(Y⊗X)* = X*⊗Y*`.
    fn mult_rhs(&self) -> LinearMap {
        let (h, d) = (self.h, self.d);
        let yy = Module::tensor(h, &self.reg_dual, &self.reg);
        let c = h.braiding(&self.reg, &yy);
        let step = self.id().tensor(&c).reshaped(TensorShape::power(d, 4), shape(&[d, d, d, d]));
        let perm = LinearMap::permutation(h.field(), &shape(&[d, d, d, d]), &[1, 0, 2, 3]);
        let yx = Module::tensor(h, &self.reg, &self.reg);
        dinatural(h, &yx).after(&perm.after(&step))
    }

    /// `Δ ∘ i_X = (i_X ⊗ i_X)(id_{X*} ⊗ coev_X ⊗ id_X)`.
    fn comult_rhs(&self) -> LinearMap {
        let h = self.h;
        let i = dinatural(h, &self.reg);
        let ins = self.id().tensor(&coev(h, &self.reg)).tensor(&self.id());
        i.tensor(&i).after(&ins)
    }

    /// Candidates `S ∘ i_X = i_{X*} ∘ (ρ(g θ^k) ⊗ id) ∘ b` with `b` the
    /// braiding or inverse braiding `X*⊗X -> X⊗X*`.
    fn antipode_candidates(&self) -> Vec<(String, LinearMap)> {
        let h = self.h;
        let i_dual = dinatural(h, &self.reg_dual);
        let g = h.pivot();
        let mut out = Vec::new();
        let braids = [
            ("c_{X*,X}", h.braiding(&self.reg_dual, &self.reg)),
            ("c^{-1}_{X,X*}", h.braiding_inv(&self.reg, &self.reg_dual)),
        ];
        for (bname, b) in braids {
            for (tname, t) in [("θ", h.theta().clone()), ("1", h.unit().clone()), ("θ^{-1}", h.theta_inv().clone())] {
                let j = self.reg.act(h, &h.mul(&g, &t));
                out.push((format!("{bname}, pivot·{tname}"), i_dual.after(&j.tensor(&self.id()).after(&b))));
            }
        }
        out
    }

    /// Candidates `ω ∘ (i_X ⊗ i_Y) = (ev_X ⊗ ev_Y)(id ⊗ M ⊗ id)` with `M`
    /// the double braiding on `X⊗Y*` or its inverse.
    fn pairing_candidates(&self) -> Vec<(String, LinearMap)> {
        let h = self.h;
        let (x, yd) = (&self.reg, &self.reg_dual);
        let mono = h.braiding(yd, x).after(&h.braiding(x, yd));
        let mono_inv = h.braiding_inv(x, yd).after(&h.braiding_inv(yd, x));
        let evs = ev(h, &self.reg).tensor(&ev(h, &self.reg));
        [("c_{Y*,X} c_{X,Y*}", mono), ("c^{-1}_{X,Y*} c^{-1}_{Y*,X}", mono_inv)]
            .into_iter()
            .map(|(n, m)| (n.to_string(), evs.after(&self.id().tensor(&m).tensor(&self.id()))))
            .collect()
    }
}

impl Coend {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn field(&self) -> &crate::linalg::Field {
        self.algebra.field()
    }

    fn id(&self) -> LinearMap {
        LinearMap::identity(self.field(), flat(self.dim()))
    }

    /// `c_{C,C}`.
    pub fn braiding(&self) -> LinearMap {
        self.algebra.braiding(&self.carrier, &self.carrier)
    }

    pub fn braiding_inv(&self) -> LinearMap {
        self.algebra.braiding_inv(&self.carrier, &self.carrier)
    }

    /// `C^{⊗n}` as a module.
    pub fn power(&self, n: usize) -> Module {
        Module::tensor_power(&self.algebra, &self.carrier, n)
    }

    /// Builds the coend from its defining relations and checks it.
    pub fn build(h: &HopfAlgebra) -> Result<Coend, CoendError> {
        let cx = Ctx::new(h);
        let f = h.field();
        let carrier = carrier_module(h);
        let mut conventions = Vec::new();

        let m = factor_through_coend(h, &cx.mult_rhs(), 2, "multiplication")?;
        let u = dinatural(h, &Module::trivial(h));
        let delta = factor_through_coend(h, &cx.comult_rhs(), 1, "comultiplication")?;
        let eps = factor_through_coend(h, &ev(h, &cx.reg), 1, "counit")?;

        let d = h.dim();
        let unit_eps = u.after(&eps);
        let mut s = None;
        for (name, rhs) in cx.antipode_candidates() {
            let Ok(cand) = factor_through_coend(h, &rhs, 1, "antipode") else { continue };
            let left = m.after(&cand.tensor(&cx.id())).after(&delta);
            let right = m.after(&cx.id().tensor(&cand)).after(&delta);
            if left == unit_eps && right == unit_eps {
                conventions.push(("antipode".to_string(), name));
                s = Some(cand);
                break;
            }
        }
        let s = s.ok_or_else(|| CoendError::NoConvention("the antipode".into()))?;
        let s_inv = s.inverse()?;

        let mut omega = None;
        for (name, rhs) in cx.pairing_candidates() {
            let Ok(cand) = factor_through_coend(h, &rhs, 2, "pairing") else { continue };
            if pairing_axioms(&cand, &m, &u, &delta, &eps, d).passed() {
                conventions.push(("pairing".to_string(), name));
                omega = Some(cand);
                break;
            }
        }
        let omega = omega.ok_or_else(|| CoendError::NoConvention("the pairing".into()))?;

        let theta = h.twist_on(&carrier);
        let theta_inv = h.twist_inv_on(&carrier);
        let integrals = integrals(h, &carrier, &m, &u, &delta, &eps);
        let _ = f;
        let mut c = Coend {
            algebra: h.clone(),
            carrier,
            m,
            u,
            delta,
            eps,
            s,
            s_inv,
            omega,
            theta,
            theta_inv,
            integrals,
            omega_inv: None,
            conventions,
        };
        c.omega_inv = c.pairing_inverse();
        if let Some((name, _)) = c.lemma_omega_candidate() {
            c.conventions.push(("pairing inverse from Λ".to_string(), name));
        }
        Ok(c)
    }

    /// The pairing as a square matrix `W[i][j] = ω(e^i ⊗ e^j)`.
    pub fn pairing_matrix(&self) -> LinearMap {
        let d = self.dim();
        LinearMap::from_fn(self.field(), flat(d), flat(d), |j| {
            (0..d).map(|i| (i, self.omega.get(0, i * d + j))).collect()
        })
    }

    pub fn pairing_rank(&self) -> usize {
        self.pairing_matrix().rank()
    }

    /// `Ω: 1 -> C⊗C` by matrix inversion of `ω`, when it exists.
    pub fn pairing_inverse(&self) -> Option<LinearMap> {
        let d = self.dim();
        let inv = self.pairing_matrix().inverse().ok()?;
        let col: SparseVec = (0..d)
            .flat_map(|k| (0..d).map(move |l| (k, l)))
            .map(|(k, l)| (k * d + l, inv.get(k, l)))
            .filter(|(_, x)| !self.field().is_zero(x))
            .collect();
        Some(LinearMap::from_columns(self.field(), flat(1), TensorShape::power(d, 2), vec![col]))
    }

    /// `ω(Λ⊗Λ)`, when an integral exists.
    pub fn omega_lambda_lambda(&self) -> Option<crate::linalg::Elem> {
        let l = &self.integrals.as_ref().ok()?.integral;
        Some(self.omega.after(&l.tensor(l)).get(0, 0))
    }

    /// The unscaled composites `(id⊗ω⊗id)(A₁⊗A₂⊗A₃⊗A₄)(ΔΛ⊗ΔΛ)` with one
    /// antipode `S^{±1}` placed on a single leg.
    pub fn lemma_omega_numerators(&self) -> Vec<(String, LinearMap)> {
        let Ok(ints) = &self.integrals else { return Vec::new() };
        let dl = self.delta.after(&ints.integral);
        let two = dl.tensor(&dl);
        let id = self.id();
        let contract = id.tensor(&self.omega).tensor(&id);
        let mut out = Vec::new();
        for (sn, s) in [("S", &self.s), ("S^{-1}", &self.s_inv)] {
            for leg in 0..4 {
                let mut legs = ["id"; 4];
                legs[leg] = sn;
                let mut op = LinearMap::identity(self.field(), TensorShape(Vec::new()).concat(&flat(1)));
                for k in 0..4 {
                    op = op.tensor(if k == leg { s } else { &id });
                }
                out.push((format!("(id⊗ω⊗id)({})(ΔΛ⊗ΔΛ)", legs.join("⊗")), contract.after(&op).after(&two)));
            }
        }
        out
    }

    /// The numerators of [`Coend::lemma_omega_numerators`] scaled by `ω(Λ⊗Λ)^{-1}`.
    pub fn lemma_omega_candidates(&self) -> Vec<(String, LinearMap)> {
        let Some(Ok(scale)) = self.omega_lambda_lambda().map(|k| self.field().inv(&k)) else { return Vec::new() };
        self.lemma_omega_numerators().into_iter().map(|(n, m)| (n, m.scale(&scale))).collect()
    }

    /// The candidate from [`Coend::lemma_omega_candidates`] that inverts `ω`.
    pub fn lemma_omega_candidate(&self) -> Option<(String, LinearMap)> {
        self.lemma_omega_candidates().into_iter().find(|(_, o)| self.inverts_pairing(o))
    }

    /// Whether `(ω⊗id)(id⊗Ω) = id = (id⊗ω)(Ω⊗id)`.
    pub fn inverts_pairing(&self, o: &LinearMap) -> bool {
        let id = self.id();
        let d = self.dim();
        self.contract_left(o) == id && id.tensor(&self.omega).after(&o.tensor(&id)).reshaped(flat(d), flat(d)) == id
    }

    /// `(ω⊗id)(id⊗N)` for the unscaled numerator `N` of the pinned formula,
    /// which equals `ω(Λ⊗Λ) id_C` when `ω` is non-degenerate.
    pub fn corollary_composite(&self) -> Option<LinearMap> {
        let (name, _) = self.lemma_omega_candidate()?;
        let (_, n) = self.lemma_omega_numerators().into_iter().find(|(m, _)| *m == name)?;
        Some(self.contract_left(&n))
    }

    /// `(ω⊗id)(id⊗X)` for `X: 1 -> C⊗C`, as an endomorphism of `C`.
    pub fn contract_left(&self, x: &LinearMap) -> LinearMap {
        let id = self.id();
        self.omega.tensor(&id).after(&id.tensor(x)).reshaped(flat(self.dim()), flat(self.dim()))
    }

    /// Hom(1, C): the invariant vectors of the carrier.
    pub fn invariants(&self) -> Subspace {
        self.carrier.invariants(&self.algebra, &CancelToken::never()).expect("not cancelled")
    }

    /// Every structural identity, as named exact checks.
    pub fn verify(&self) -> Report {
        let h = &self.algebra;
        let f = self.field();
        let d = self.dim();
        let id = self.id();
        let mut rep = Report::default();
        let c1 = &self.carrier;
        let c2 = Module::tensor(h, c1, c1);
        let triv = Module::trivial(h);
        let maps: [(&str, &LinearMap, &Module, &Module); 9] = [
            ("m", &self.m, &c2, c1),
            ("u", &self.u, &triv, c1),
            ("Δ", &self.delta, c1, &c2),
            ("ε", &self.eps, c1, &triv),
            ("S", &self.s, c1, c1),
            ("S^{-1}", &self.s_inv, c1, c1),
            ("ω", &self.omega, &c2, &triv),
            ("θ_C", &self.theta, c1, c1),
            ("θ_C^{-1}", &self.theta_inv, c1, c1),
        ];
        for (name, m, a, b) in maps {
            let flat_m = m.clone().reshaped(a.shape(), b.shape());
            rep.push(format!("{name} is an intertwiner"), a.is_intertwiner(h, b, &flat_m), "");
        }
        rep.push("dual of m is the braided coproduct Δ^Bd", self.m == braided_coproduct(h).transpose(), "");
        rep.push("dual of Δ is the product of H", self.delta == h.mult_map().transpose(), "");

        let m = &self.m;
        rep.push("associativity", m.after(&m.tensor(&id)) == m.after(&id.tensor(m)), "");
        rep.push("unit", m.after(&self.u.tensor(&id)) == id && m.after(&id.tensor(&self.u)) == id, "");
        let dl = &self.delta;
        rep.push("coassociativity", dl.tensor(&id).after(dl) == id.tensor(dl).after(dl), "");
        rep.push("counit", self.eps.tensor(&id).after(dl) == id && id.tensor(&self.eps).after(dl) == id, "");
        let mid = id.tensor(&self.braiding()).tensor(&id);
        let lhs = dl.after(m);
        let rhs = m.tensor(m).after(&mid).after(&dl.tensor(dl));
        rep.push("Δm = (m⊗m)(id⊗c⊗id)(Δ⊗Δ)", lhs == rhs, "");
        rep.push("εm = ε⊗ε", self.eps.after(m) == self.eps.tensor(&self.eps), "");
        rep.push("Δu = u⊗u", dl.after(&self.u) == self.u.tensor(&self.u), "");
        rep.push("εu = 1", f.is_one(&self.eps.after(&self.u).get(0, 0)), "");
        let ue = self.u.after(&self.eps);
        rep.push(
            "antipode",
            m.after(&self.s.tensor(&id)).after(dl) == ue && m.after(&id.tensor(&self.s)).after(dl) == ue,
            "",
        );
        rep.push("antipode inverse", self.s.after(&self.s_inv).is_identity(), "");
        rep.push("S² = θ_C", self.s.after(&self.s) == self.theta, "");
        rep.push("ω(S⊗id) = ω(id⊗S)", self.omega.after(&self.s.tensor(&id)) == self.omega.after(&id.tensor(&self.s)), "");
        rep.extend(pairing_axioms(&self.omega, m, &self.u, dl, &self.eps, d));

        if let Ok(ints) = &self.integrals {
            let lam = &ints.integral;
            rep.push("m(Λ⊗id) = Λε", m.after(&lam.tensor(&id)) == lam.after(&self.eps), "");
            let cl = &ints.cointegral;
            rep.push("(id⊗λ)Δ = uλ", id.tensor(cl).after(dl) == self.u.after(cl), "");
        }
        rep
    }
}

/// The four bialgebra-pairing identities.
fn pairing_axioms(w: &LinearMap, m: &LinearMap, u: &LinearMap, dl: &LinearMap, e: &LinearMap, d: usize) -> Report {
    let f = w.field();
    let id = LinearMap::identity(f, flat(d));
    let id2 = id.tensor(&id);
    let mut rep = Report::default();
    let mid = id.tensor(w).tensor(&id);
    rep.push("ω(m⊗id) = ω(id⊗ω⊗id)(id⊗id⊗Δ)", w.after(&m.tensor(&id)) == w.after(&mid).after(&id2.tensor(dl)), "");
    rep.push("ω(id⊗m) = ω(id⊗ω⊗id)(Δ⊗id⊗id)", w.after(&id.tensor(m)) == w.after(&mid).after(&dl.tensor(&id2)), "");
    rep.push("ω(u⊗id) = ε", w.after(&u.tensor(&id)) == *e, "");
    rep.push("ω(id⊗u) = ε", w.after(&id.tensor(u)) == *e, "");
    rep
}

/// Solves for the right integral in `Hom(1, C)` and the left cointegral in
/// `Hom(C, 1)`, then normalizes.
fn integrals(
    h: &HopfAlgebra,
    carrier: &Module,
    m: &LinearMap,
    u: &LinearMap,
    dl: &LinearMap,
    e: &LinearMap,
) -> Result<Integrals, CoendError> {
    let f = h.field();
    let d = h.dim();
    let cancel = CancelToken::never();
    let id = LinearMap::identity(f, flat(d));
    // m(Λ ⊗ e^x) - ε(e^x) Λ = 0 and h·Λ = ε(h) Λ.
    let mut eqs = Vec::new();
    for x in 0..d {
        let mx = LinearMap::from_fn(f, flat(d), flat(d), |i| m.column(i * d + x).clone());
        eqs.push(mx.minus(&id.scale(&e.get(0, x))));
    }
    for k in 0..d {
        eqs.push(carrier.action[k].minus(&id.scale(&h.counit_of(&h.basis_elem(k)))));
    }
    let ints = Subspace::joint_kernel(f, flat(d), &eqs, &cancel)?;
    if ints.dim() != 1 {
        return Err(CoendError::IntegralSpace("right integrals", ints.dim()));
    }
    let mut lam = ints.basis()[0].clone();

    // Σ_j Δ[(i,j),k] l_j - u_i l_k = 0 for all (i,k), and ρ(h)^T l = ε(h) l.
    let mut ceqs = Vec::new();
    let coeq = LinearMap::from_fn(f, flat(d), flat(d * d), |j| {
        let mut col = Vec::new();
        for k in 0..d {
            for (ij, x) in dl.column(k) {
                if ij % d == j {
                    col.push(((ij / d) * d + k, x.clone()));
                }
            }
            for (i, x) in u.column(0) {
                if k == j {
                    col.push((i * d + k, f.neg(x)));
                }
            }
        }
        col
    });
    ceqs.push(coeq);
    for k in 0..d {
        ceqs.push(carrier.action[k].transpose().minus(&id.scale(&h.counit_of(&h.basis_elem(k)))));
    }
    let coints = Subspace::joint_kernel(f, flat(d), &ceqs, &cancel)?;
    if coints.dim() != 1 {
        return Err(CoendError::IntegralSpace("left cointegrals", coints.dim()));
    }
    let mut cl = coints.basis()[0].clone();
    let dot = |a: &SparseVec, b: &SparseVec| {
        let mut acc = f.zero();
        for (i, x) in a {
            if let Ok(p) = b.binary_search_by_key(i, |e| e.0) {
                acc = f.add(&acc, &f.mul(x, &b[p].1));
            }
        }
        acc
    };
    let scale = |v: &SparseVec, c: &crate::linalg::Elem| -> SparseVec { v.iter().map(|(i, x)| (*i, f.mul(x, c))).collect() };
    let lu = dot(&cl, u.column(0));
    let unit_normalized = !f.is_zero(&lu);
    if unit_normalized {
        cl = scale(&cl, &f.inv(&lu)?);
    }
    let ll = dot(&cl, &lam);
    if !f.is_zero(&ll) {
        lam = scale(&lam, &f.inv(&ll)?);
    }
    let lambda_of_integral = dot(&cl, &lam);
    let integral = LinearMap::from_columns(f, flat(1), flat(d), vec![lam]);
    let cointegral = LinearMap::from_columns(f, flat(d), flat(1), (0..d).map(|j| {
        cl.iter().filter(|(i, _)| *i == j).map(|(_, x)| (0, x.clone())).collect()
    }).collect());
    Ok(Integrals { integral, cointegral, unit_normalized, lambda_of_integral })
}
