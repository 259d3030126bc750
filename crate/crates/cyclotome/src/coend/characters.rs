//! Internal characters `χ_X = i_X coev~_X` and `ψ_X = ω(χ_X ⊗ id)`.

use super::{coev_right, dinatural, Coend};
use crate::hopf::Module;
use crate::linalg::{LinearMap, TensorShape};

pub fn internal_character(c: &Coend, v: &Module) -> LinearMap {
    dinatural(&c.algebra, v).after(&coev_right(&c.algebra, v))
}

pub fn psi(c: &Coend, v: &Module) -> LinearMap {
    let id = LinearMap::identity(c.field(), TensorShape::flat(c.dim()));
    c.omega.after(&internal_character(c, v).tensor(&id))
}

/// A braided rotation `C⊗C -> C⊗C` carrying one twist.
#[derive(Clone, Debug)]
pub struct TraceConvention {
    pub name: String,
    pub map: LinearMap,
}

impl TraceConvention {
    /// The eight placements: braiding or inverse braiding, after a twist or
    /// inverse twist on either leg.
    pub fn candidates(c: &Coend) -> Vec<TraceConvention> {
        let id = LinearMap::identity(c.field(), TensorShape::flat(c.dim()));
        let mut out = Vec::new();
        for (bn, b) in [("c", c.braiding()), ("c^{-1}", c.braiding_inv())] {
            for (tn, t) in [("θ", &c.theta), ("θ^{-1}", &c.theta_inv)] {
                out.push(TraceConvention { name: format!("{bn}({tn}⊗id)"), map: b.after(&t.tensor(&id)) });
                out.push(TraceConvention { name: format!("{bn}(id⊗{tn})"), map: b.after(&id.tensor(t)) });
            }
        }
        out
    }

    /// The placement the crate uses, `c(θ⊗id)`.
    pub fn pinned(c: &Coend) -> TraceConvention {
        TraceConvention::candidates(c).swap_remove(0)
    }

    /// Rotations `r` with `r Δ χ = Δ χ` for every given character.
    pub fn for_characters(c: &Coend, chars: &[LinearMap]) -> Vec<TraceConvention> {
        TraceConvention::candidates(c)
            .into_iter()
            .filter(|r| chars.iter().all(|x| r.map.after(&c.delta).after(x) == c.delta.after(x)))
            .collect()
    }

    /// Rotations `r` with `ψ m r = ψ m` for every given `ψ`.
    pub fn for_psi(c: &Coend, psis: &[LinearMap]) -> Vec<TraceConvention> {
        TraceConvention::candidates(c)
            .into_iter()
            .filter(|r| psis.iter().all(|p| p.after(&c.m).after(&r.map) == p.after(&c.m)))
            .collect()
    }
}
