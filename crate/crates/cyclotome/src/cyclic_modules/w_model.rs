//! The explicit model of the (co)cyclic modules of the coend of `rep(H)` on
//! the coadjoint invariants `V_n(H) ⊂ H^{⊗n}`.
//!
//! Level `n` is `V_{n+1}(H)`. Every generator is first written on the whole
//! tensor power and then restricted; restriction fails loudly if an image
//! leaves the invariants.

use super::{at_slot, flatten, rotate_first_to_back, rotate_last_to_front, Chirality, CyclicModule, ModuleError};
use crate::coend::braided_coproduct;
use crate::cyclic_cat::{Token, Variant};
use crate::hopf::{HopfAlgebra, Module};
use crate::linalg::echelon::CancelToken;
use crate::linalg::{LinearMap, SparseVec, Subspace, TensorShape};

/// `V_n(H) = {X ∈ H^{⊗n} | X◁h = ε(h)X}`.
#[derive(Clone, Debug)]
pub struct VnSpace {
    pub n: usize,
    pub space: Subspace,
}

impl VnSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[SparseVec] {
        self.space.basis()
    }
}

/// The right coadjoint action `x◁h = S(h_(1)) x h_(2)`, stored like a module
/// (`action[k]` is `x ↦ x◁e_k`). Tensor powers then act through the iterated
/// coproduct, factor by factor, which is the action on `H^{⊗n}`.
pub fn right_coadjoint_module(h: &HopfAlgebra) -> Module {
    let d = h.dim();
    let action = (0..d)
        .map(|k| {
            let e = h.basis_elem(k);
            LinearMap::from_fn(h.field(), TensorShape::flat(d), TensorShape::flat(d), |c| h.right_coadjoint(&h.basis_elem(c), &e))
        })
        .collect();
    Module::new(h.field(), action)
}

pub fn vn_basis(h: &HopfAlgebra, n: usize) -> VnSpace {
    let p = Module::tensor_power(h, &right_coadjoint_module(h), n);
    VnSpace { n, space: p.invariants(h, &CancelToken::never()).expect("not cancelled") }
}

/// Which twist and which R-matrix the cyclic operator of `W_•` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WConvention {
    pub theta_inverse: bool,
    pub r_inverse: bool,
}

impl WConvention {
    /// As written: `R = Σ a_i⊗b_i` and `θ`.
    pub const LITERAL: WConvention = WConvention { theta_inverse: false, r_inverse: false };

    pub fn candidates() -> Vec<WConvention> {
        let mut out = Vec::new();
        for r_inverse in [false, true] {
            for theta_inverse in [false, true] {
                out.push(WConvention { theta_inverse, r_inverse });
            }
        }
        out
    }

    pub fn name(&self) -> String {
        format!("{}, {}", if self.r_inverse { "R^{-1}" } else { "R" }, if self.theta_inverse { "θ^{-1}" } else { "θ" })
    }
}

/// The same for `W^•`, plus the order of the two braided-coproduct legs in
/// the last coface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WCoConvention {
    pub theta_inverse: bool,
    pub r_inverse: bool,
    /// `false`: the leg `(h_1)_(1)` ends up last, as in `τ_n δ_0`.
    pub swap_legs: bool,
}

impl WCoConvention {
    /// As written: `R^{-1} = Σ α_i⊗β_i`, `θ^{-1}`, `(h_1)_(2)` first.
    pub const LITERAL: WCoConvention = WCoConvention { theta_inverse: true, r_inverse: true, swap_legs: false };

    pub fn candidates() -> Vec<WCoConvention> {
        let mut out = Vec::new();
        for swap_legs in [false, true] {
            for r_inverse in [true, false] {
                for theta_inverse in [true, false] {
                    out.push(WCoConvention { theta_inverse, r_inverse, swap_legs });
                }
            }
        }
        out
    }

    pub fn name(&self) -> String {
        format!(
            "{}, {}, {}",
            if self.r_inverse { "R^{-1}" } else { "R" },
            if self.theta_inverse { "θ^{-1}" } else { "θ" },
            if self.swap_legs { "legs (1),(2)" } else { "legs (2),(1)" }
        )
    }
}

struct Ctx<'a> {
    h: &'a HopfAlgebra,
    rc: Module,
    /// `powers[k]` is the right coadjoint action on `H^{⊗k}`.
    powers: Vec<Module>,
    /// `v[k] = V_k(H)`.
    v: Vec<Subspace>,
}

impl<'a> Ctx<'a> {
    fn new(h: &'a HopfAlgebra, top: usize) -> Ctx<'a> {
        let rc = right_coadjoint_module(h);
        let mut powers = vec![Module::trivial(h)];
        for k in 1..=top {
            let next = Module::tensor(h, &powers[k - 1], &rc);
            powers.push(next);
        }
        let v = powers.iter().map(|p| p.invariants(h, &CancelToken::never()).expect("not cancelled")).collect();
        Ctx { h, rc, powers, v }
    }

    fn d(&self) -> usize {
        self.h.dim()
    }

    fn dim(&self, k: usize) -> usize {
        self.d().pow(k as u32)
    }

    /// `Σ_i L_i ⊗ P_i` where `(x_i, y_i)` run over `R` or `R^{-1}`, `L_i` is
    /// the action of `x_i·twist` on one factor and `P_i` the action of `y_i`
    /// on `H^{⊗k}`. When the `k`-fold action is through the counit the sum
    /// collapses to one term.
    fn r_action(&self, r_inverse: bool, twist: &SparseVec, k: usize, single_first: bool) -> LinearMap {
        let h = self.h;
        let f = h.field();
        let terms = if r_inverse { h.r_inv_terms() } else { h.r_terms() };
        let pw = &self.powers[k];
        let pieces: Vec<(LinearMap, LinearMap)> = if pw.is_trivial(h) {
            let mut x = Vec::new();
            for (a, b) in &terms {
                x.extend(h.scale(&h.counit_of(b), a));
            }
            let x = crate::linalg::map::normalize(f, x);
            vec![(self.rc.act(h, &h.mul(&x, twist)), LinearMap::identity(f, TensorShape::flat(self.dim(k))))]
        } else {
            terms.iter().map(|(a, b)| (self.rc.act(h, &h.mul(a, twist)), pw.act(h, b))).collect()
        };
        let n = self.d() * self.dim(k);
        let mut acc = LinearMap::zero(f, TensorShape::flat(n), TensorShape::flat(n));
        for (l, p) in pieces {
            let t = if single_first { l.tensor(&p) } else { p.tensor(&l) };
            acc = acc.plus(&flatten(t));
        }
        acc
    }

    fn spaces(&self, top: usize) -> Vec<Subspace> {
        (0..=top).map(|n| self.v[n + 1].clone()).collect()
    }
}

fn twist_elem(h: &HopfAlgebra, inverse: bool) -> SparseVec {
    if inverse {
        h.theta_inv().clone()
    } else {
        h.theta().clone()
    }
}

/// `t_n` on `H^{⊗n+1}`: `h_{n+1}◁a_iθ ⊗ h_1◁(b_i)_(1) ⊗ … ⊗ h_n◁(b_i)_(n)`.
fn w_cyclic_operator(cx: &Ctx, conv: WConvention, n: usize) -> LinearMap {
    let f = cx.h.field();
    let tw = twist_elem(cx.h, conv.theta_inverse);
    cx.r_action(conv.r_inverse, &tw, n, true).after(&rotate_last_to_front(f, cx.d(), n + 1))
}

/// `τ_n` on `H^{⊗n+1}`: `h_2◁(β_i)_(1) ⊗ … ⊗ h_{n+1}◁(β_i)_(n) ⊗ h_1◁α_iθ^{-1}`.
fn w_cocyclic_operator(cx: &Ctx, conv: WCoConvention, n: usize) -> LinearMap {
    let f = cx.h.field();
    let tw = twist_elem(cx.h, conv.theta_inverse);
    cx.r_action(conv.r_inverse, &tw, n, false).after(&rotate_first_to_back(f, cx.d(), n + 1))
}

pub fn build_w_cyclic_with(h: &HopfAlgebra, max_level: usize, conv: WConvention) -> Result<CyclicModule, ModuleError> {
    let cx = Ctx::new(h, max_level + 1);
    let f = h.field();
    let mut m = CyclicModule::new(Variant::Cyclic, Chirality::Cyclic, f, cx.spaces(max_level), format!("W_•({}), {}", h.name, conv.name()));
    let mult = h.mult_map();
    let unit = h.unit_map();
    for n in 0..=max_level {
        let t = w_cyclic_operator(&cx, conv, n);
        if n >= 1 {
            for i in 0..n {
                m.set_ambient(Token::Coface { n, i }, &at_slot(f, cx.dim(i), &mult, cx.dim(n - 1 - i)))?;
            }
            let d0 = at_slot(f, 1, &mult, cx.dim(n - 1));
            m.set_ambient(Token::Coface { n, i: n }, &d0.after(&t))?;
        }
        if n < max_level {
            for j in 0..=n {
                m.set_ambient(Token::Codegeneracy { n, j }, &at_slot(f, cx.dim(j + 1), &unit, cx.dim(n - j)))?;
            }
        }
        m.set_ambient(Token::Cyclic { n, k: 1 }, &t)?;
    }
    if !m.gen(&Token::Cyclic { n: 0, k: 1 })?.is_identity() {
        return Err(ModuleError::Precondition("t_0 is not the identity".into()));
    }
    Ok(m)
}

pub fn build_w_cocyclic_with(h: &HopfAlgebra, max_level: usize, conv: WCoConvention) -> Result<CyclicModule, ModuleError> {
    let cx = Ctx::new(h, max_level + 1);
    let f = h.field();
    let d = h.dim();
    let mut m = CyclicModule::new(Variant::Cyclic, Chirality::Cocyclic, f, cx.spaces(max_level), format!("W^•({}), {}", h.name, conv.name()));
    let dbd = braided_coproduct(h);
    let eps = h.counit_map();
    let swap = flatten(LinearMap::permutation(f, &TensorShape::power(d, 2), &[1, 0]));
    for n in 0..=max_level {
        let tau = w_cocyclic_operator(&cx, conv, n);
        if n >= 1 {
            for i in 0..n {
                m.set_ambient(Token::Coface { n, i }, &at_slot(f, cx.dim(i), &dbd, cx.dim(n - 1 - i)))?;
            }
            let legs = if conv.swap_legs { swap.after(&dbd) } else { dbd.clone() };
            let first = at_slot(f, 1, &legs, cx.dim(n - 1));
            m.set_ambient(Token::Coface { n, i: n }, &tau.after(&first))?;
        }
        if n < max_level {
            for j in 0..=n {
                m.set_ambient(Token::Codegeneracy { n, j }, &at_slot(f, cx.dim(j + 1), &eps, cx.dim(n - j)))?;
            }
        }
        m.set_ambient(Token::Cyclic { n, k: 1 }, &tau)?;
    }
    if !m.gen(&Token::Cyclic { n: 0, k: 1 })?.is_identity() {
        return Err(ModuleError::Precondition("τ_0 is not the identity".into()));
    }
    Ok(m)
}

/// Level at which conventions are told apart; the relations that involve
/// the twist first appear there.
const PIN_LEVEL: usize = 2;

/// `W_•` up to `max_level`, with the first convention whose relations hold.
pub fn build_w_cyclic(h: &HopfAlgebra, max_level: usize) -> Result<CyclicModule, ModuleError> {
    for conv in WConvention::candidates() {
        let Ok(small) = build_w_cyclic_with(h, PIN_LEVEL.min(max_level), conv) else { continue };
        if small.check_relations(PIN_LEVEL).passed() {
            return if max_level <= PIN_LEVEL { Ok(small) } else { build_w_cyclic_with(h, max_level, conv) };
        }
    }
    Err(ModuleError::NoConvention("the cyclic operator of W_•".into()))
}

pub fn build_w_cocyclic(h: &HopfAlgebra, max_level: usize) -> Result<CyclicModule, ModuleError> {
    for conv in WCoConvention::candidates() {
        let Ok(small) = build_w_cocyclic_with(h, PIN_LEVEL.min(max_level), conv) else { continue };
        if small.check_relations(PIN_LEVEL).passed() {
            return if max_level <= PIN_LEVEL { Ok(small) } else { build_w_cocyclic_with(h, max_level, conv) };
        }
    }
    Err(ModuleError::NoConvention("the cocyclic operator of W^•".into()))
}
