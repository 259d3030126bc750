//! The end `A` of `rep(H)`, realized as the dual of the coend, and the
//! Drinfeld map `D: C -> A`.
//!
//! `A` is identified with `H` (as `H**`) and acts universally on every
//! module by `α_Y(a ⊗ y) = S^{-1}(a) y`. Its structure maps are the ones the
//! universal action forces: `α_Y(m ⊗ id) = α_Y(id ⊗ α_Y)`, `ε = α_1`, and
//! `α_{X⊗Y} = (α_X ⊗ α_Y)(id ⊗ c_{A,X} ⊗ id)(Δ ⊗ id ⊗ id)`.

use super::{factor_through_coend, ev, Coend, CoendError};
use crate::hopf::{HopfAlgebra, Module, Report};
use crate::linalg::echelon::{solve, CancelToken};
use crate::linalg::{LinearMap, TensorShape};

pub type EndError = CoendError;

fn flat(n: usize) -> TensorShape {
    TensorShape::flat(n)
}

#[derive(Clone, Debug)]
pub struct End {
    pub module: Module,
    pub m: LinearMap,
    pub u: LinearMap,
    pub delta: LinearMap,
    pub eps: LinearMap,
    pub drinfeld: LinearMap,
    /// Which double braiding the Drinfeld relation uses.
    pub convention: String,
}

/// Three equivalent formulations of factorizability, computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorizability {
    pub pairing_nondegenerate: bool,
    pub drinfeld_invertible: bool,
    pub pairing_inverse_exists: bool,
}

impl Factorizability {
    pub fn agree(&self) -> bool {
        self.pairing_nondegenerate == self.drinfeld_invertible && self.drinfeld_invertible == self.pairing_inverse_exists
    }

    pub fn factorizable(&self) -> bool {
        self.agree() && self.pairing_nondegenerate
    }
}

/// `α_Y: A⊗Y -> Y`.
pub fn universal_action(h: &HopfAlgebra, y: &Module) -> LinearMap {
    let d = h.dim();
    let n = y.dim();
    let acts: Vec<LinearMap> = (0..d).map(|a| y.act(h, &h.s_inv(&h.basis_elem(a)))).collect();
    LinearMap::from_fn(h.field(), TensorShape(vec![d, n]), flat(n), |c| acts[c / n].column(c % n).clone())
}

/// `c_{Y,X} c_{X,Y}` on `X⊗Y`, or its inverse.
fn monodromy(h: &HopfAlgebra, x: &Module, y: &Module, inverse: bool) -> LinearMap {
    if inverse {
        h.braiding_inv(y, x).after(&h.braiding_inv(x, y))
    } else {
        h.braiding(y, x).after(&h.braiding(x, y))
    }
}

impl End {
    pub fn build(c: &Coend) -> Result<End, EndError> {
        let h = &c.algebra;
        let f = h.field();
        let d = h.dim();
        let id = LinearMap::identity(f, flat(d));
        let reg = Module::regular(h);
        let module = Module::dual(h, &c.carrier);

        let m = h.mult_map().after(&LinearMap::permutation(f, &TensorShape(vec![d, d]), &[1, 0]));
        let u = h.unit_map();
        let eps = h.counit_map();

        let alpha = universal_action(h, &reg);
        let c_ax = h.braiding(&module, &reg);
        let one = h.unit_map();
        let ins = id.tensor(&id).tensor(&one).tensor(&one);
        let g = alpha.tensor(&alpha).after(&id.tensor(&c_ax).tensor(&id)).after(&ins);
        let target = h.comult_map().after(&h.antipode_inv_map());
        let delta = solve(&g, &target, &CancelToken::never())?.reshaped(flat(d), TensorShape::power(d, 2));

        let mut found = None;
        for inverse in [false, true] {
            let e_full = ev(h, &reg).tensor(&id).after(&id.tensor(&monodromy(h, &reg, &reg, inverse)));
            let rhs = h.antipode_map().after(&e_full).after(&id.tensor(&id).tensor(&one));
            let Ok(dmap) = factor_through_coend(h, &rhs, 1, "the Drinfeld map") else { continue };
            let algebra_ok = dmap.after(&c.m) == m.after(&dmap.tensor(&dmap)) && dmap.after(&c.u) == u;
            let coalgebra_ok = delta.after(&dmap) == dmap.tensor(&dmap).after(&c.delta) && eps.after(&dmap) == c.eps;
            if algebra_ok && coalgebra_ok {
                let name = if inverse { "c^{-1}_{X,Y} c^{-1}_{Y,X}" } else { "c_{Y,X} c_{X,Y}" };
                found = Some((dmap, name.to_string()));
                break;
            }
        }
        let (drinfeld, convention) = found.ok_or_else(|| CoendError::NoConvention("the Drinfeld map".into()))?;
        Ok(End { module, m, u, delta, eps, drinfeld, convention })
    }

    pub fn verify(&self, c: &Coend) -> Report {
        let h = &c.algebra;
        let f = h.field();
        let d = h.dim();
        let id = LinearMap::identity(f, flat(d));
        let reg = Module::regular(h);
        let mut rep = Report::default();
        let a = &self.module;
        let alpha = universal_action(h, &reg);
        let ay = Module::tensor(h, a, &reg);
        rep.push("α_H is an intertwiner", ay.is_intertwiner(h, &reg, &alpha.clone().reshaped(ay.shape(), reg.shape())), "");
        let aa = Module::tensor(h, a, a);
        let triv = Module::trivial(h);
        for (name, m, x, y) in [
            ("m_A", &self.m, &aa, a),
            ("u_A", &self.u, &triv, a),
            ("Δ_A", &self.delta, a, &aa),
            ("ε_A", &self.eps, a, &triv),
            ("D", &self.drinfeld, &c.carrier, a),
        ] {
            rep.push(format!("{name} is an intertwiner"), x.is_intertwiner(h, y, &m.clone().reshaped(x.shape(), y.shape())), "");
        }
        rep.push("α(m_A ⊗ id) = α(id ⊗ α)", alpha.after(&self.m.tensor(&id)) == alpha.after(&id.tensor(&alpha)), "");
        let xy = Module::tensor(h, &reg, &reg);
        let alpha_xy = universal_action(h, &xy);
        let c_ax = h.braiding(a, &reg);
        let rhs = alpha.tensor(&alpha).after(&id.tensor(&c_ax).tensor(&id)).after(&self.delta.tensor(&id).tensor(&id));
        rep.push("α_{X⊗Y} = (α⊗α)(id⊗c⊗id)(Δ_A⊗id⊗id)", alpha_xy == rhs, "");
        let dl = &self.delta;
        rep.push("Δ_A coassociative", dl.tensor(&id).after(dl) == id.tensor(dl).after(dl), "");
        rep.push("Δ_A counital", self.eps.tensor(&id).after(dl) == id && id.tensor(&self.eps).after(dl) == id, "");
        let mid = id.tensor(&h.braiding(a, a)).tensor(&id);
        rep.push(
            "Δ_A m_A = (m_A⊗m_A)(id⊗c⊗id)(Δ_A⊗Δ_A)",
            dl.after(&self.m) == self.m.tensor(&self.m).after(&mid).after(&dl.tensor(dl)),
            "",
        );
        let dm = &self.drinfeld;
        let inverse = self.convention.contains("-1");
        let e_full = ev(h, &reg).tensor(&id).after(&id.tensor(&monodromy(h, &reg, &reg, inverse)));
        let i_x = super::dinatural(h, &reg);
        rep.push("Drinfeld relation α_Y(D i_X ⊗ id) = (ev⊗id)(id⊗monodromy)", alpha.after(&dm.after(&i_x).tensor(&id)) == e_full, "");
        rep.push("D m_C = m_A (D⊗D)", dm.after(&c.m) == self.m.after(&dm.tensor(dm)), "");
        rep.push("D u_C = u_A", dm.after(&c.u) == self.u, "");
        rep.push("Δ_A D = (D⊗D) Δ_C", dl.after(dm) == dm.tensor(dm).after(&c.delta), "");
        rep.push("ε_A D = ε_C", self.eps.after(dm) == c.eps, "");
        rep
    }
}

impl Coend {
    pub fn factorizability(&self, end: &End) -> Factorizability {
        let d = self.dim();
        Factorizability {
            pairing_nondegenerate: self.pairing_rank() == d,
            drinfeld_invertible: end.drinfeld.rank() == d,
            pairing_inverse_exists: self.lemma_omega_candidate().is_some(),
        }
    }
}
