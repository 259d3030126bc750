//! Finite-dimensional ribbon Hopf algebras given by structure constants, and
//! the ribbon category of their finite-dimensional modules.
//!
//! Conventions. With `R = Σ a_i ⊗ b_i`:
//!
//! * the braiding is `c_{V,W}(v ⊗ w) = Σ b_i w ⊗ a_i v`;
//! * the twist on `V` is the action of `θ`, so `Δθ = R21 R (θ ⊗ θ)`;
//! * the pivotal element is `g = u θ` with `u = Σ S(b_i) a_i`, and the right
//!   quantum trace of `f: V -> V` is `Tr(ρ(g) f)`;
//! * the dual module is `(h·φ)(x) = φ(S(h) x)`.

mod data;
mod modules;

pub use data::{bundled, bundled_names, DataError};
pub use modules::Module;

use crate::linalg::map::{axpy, normalize};
use crate::linalg::{Elem, Field, LinearMap, SparseVec, TensorShape};
use std::fmt;

/// One named axiom check.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<AxiomCheck>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(AxiomCheck { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name)?;
            if !c.detail.is_empty() {
                write!(f, "  ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A ribbon Hopf algebra. Elements of `H^{⊗k}` are sparse vectors over the
/// row-major product basis.
#[derive(Clone)]
pub struct HopfAlgebra {
    pub name: String,
    pub description: String,
    field: Field,
    dim: usize,
    pub basis: Vec<String>,
    /// `mult[i][j] = e_i e_j`.
    mult: Vec<Vec<SparseVec>>,
    unit: SparseVec,
    /// `comult[i] = Δ(e_i)` in `H⊗H`.
    comult: Vec<SparseVec>,
    counit: Vec<Elem>,
    antipode: Vec<SparseVec>,
    antipode_inv: Vec<SparseVec>,
    r: SparseVec,
    r_inv: SparseVec,
    theta: SparseVec,
    theta_inv: SparseVec,
    pub simples: Vec<Module>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAlgebra({}, dim {}, over {})", self.name, self.dim, self.field.name())
    }
}

/// Raw structure constants; see [`HopfAlgebra::from_parts`].
pub struct HopfParts {
    pub name: String,
    pub description: String,
    pub field: Field,
    pub basis: Vec<String>,
    pub mult: Vec<Vec<SparseVec>>,
    pub unit: SparseVec,
    pub comult: Vec<SparseVec>,
    pub counit: Vec<Elem>,
    pub antipode: Vec<SparseVec>,
    pub antipode_inv: Vec<SparseVec>,
    pub r: SparseVec,
    pub r_inv: SparseVec,
    pub theta: SparseVec,
    pub theta_inv: SparseVec,
    pub simples: Vec<Vec<LinearMap>>,
}

impl HopfAlgebra {
    pub fn from_parts(p: HopfParts) -> HopfAlgebra {
        let dim = p.basis.len();
        let simples = p.simples.into_iter().map(|a| Module::new(&p.field, a)).collect();
        HopfAlgebra {
            name: p.name,
            description: p.description,
            field: p.field,
            dim,
            basis: p.basis,
            mult: p.mult,
            unit: p.unit,
            comult: p.comult,
            counit: p.counit,
            antipode: p.antipode,
            antipode_inv: p.antipode_inv,
            r: p.r,
            r_inv: p.r_inv,
            theta: p.theta,
            theta_inv: p.theta_inv,
            simples,
        }
    }

    pub fn into_parts(self) -> HopfParts {
        HopfParts {
            name: self.name,
            description: self.description,
            field: self.field,
            basis: self.basis,
            mult: self.mult,
            unit: self.unit,
            comult: self.comult,
            counit: self.counit,
            antipode: self.antipode,
            antipode_inv: self.antipode_inv,
            r: self.r,
            r_inv: self.r_inv,
            theta: self.theta,
            theta_inv: self.theta_inv,
            simples: self.simples.into_iter().map(|m| m.action).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_elem(&self, i: usize) -> SparseVec {
        vec![(i, self.field.one())]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn r(&self) -> &SparseVec {
        &self.r
    }

    pub fn r_inv(&self) -> &SparseVec {
        &self.r_inv
    }

    pub fn theta(&self) -> &SparseVec {
        &self.theta
    }

    pub fn theta_inv(&self) -> &SparseVec {
        &self.theta_inv
    }

    fn lin<F: Fn(usize) -> SparseVec>(&self, x: &SparseVec, f: F) -> SparseVec {
        let mut acc = Vec::new();
        for (i, c) in x {
            for (k, v) in f(i.to_owned()) {
                acc.push((k, self.field.mul(c, &v)));
            }
        }
        normalize(&self.field, acc)
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let f = &self.field;
        let mut acc = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = f.mul(x, y);
                for (k, v) in &self.mult[*i][*j] {
                    acc.push((*k, f.mul(&xy, v)));
                }
            }
        }
        normalize(f, acc)
    }

    pub fn add(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        axpy(&self.field, &self.field.one(), a, b)
    }

    pub fn scale(&self, c: &Elem, a: &SparseVec) -> SparseVec {
        normalize(&self.field, a.iter().map(|(i, x)| (*i, self.field.mul(c, x))).collect())
    }

    pub fn comul(&self, a: &SparseVec) -> SparseVec {
        self.lin(a, |i| self.comult[i].clone())
    }

    pub fn counit_of(&self, a: &SparseVec) -> Elem {
        let f = &self.field;
        a.iter().fold(f.zero(), |acc, (i, x)| f.add(&acc, &f.mul(x, &self.counit[*i])))
    }

    pub fn s(&self, a: &SparseVec) -> SparseVec {
        self.lin(a, |i| self.antipode[i].clone())
    }

    pub fn s_inv(&self, a: &SparseVec) -> SparseVec {
        self.lin(a, |i| self.antipode_inv[i].clone())
    }

    /// Product in `H^{⊗k}`, factorwise.
    pub fn mul_tensor(&self, k: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let shape = TensorShape::power(self.dim, k);
        let f = &self.field;
        let mut acc = Vec::new();
        for (i, a) in x {
            let di = shape.split(*i);
            for (j, b) in y {
                let dj = shape.split(*j);
                // Expand the product factor by factor.
                let mut partial: Vec<(Vec<usize>, Elem)> = vec![(Vec::new(), f.mul(a, b))];
                for t in 0..k {
                    let prod = &self.mult[di[t]][dj[t]];
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (idx, c) in &partial {
                        for (r, v) in prod {
                            let mut ii = idx.clone();
                            ii.push(*r);
                            next.push((ii, f.mul(c, v)));
                        }
                    }
                    partial = next;
                }
                for (idx, c) in partial {
                    acc.push((shape.join(&idx), c));
                }
            }
        }
        normalize(f, acc)
    }

    /// Splits an element of `H⊗H` into simple tensors `(c e_p, e_q)`.
    pub fn split2(&self, x: &SparseVec) -> Vec<(SparseVec, SparseVec)> {
        x.iter().map(|(idx, c)| (vec![(idx / self.dim, c.clone())], self.basis_elem(idx % self.dim))).collect()
    }

    pub fn r_terms(&self) -> Vec<(SparseVec, SparseVec)> {
        self.split2(&self.r)
    }

    pub fn r_inv_terms(&self) -> Vec<(SparseVec, SparseVec)> {
        self.split2(&self.r_inv)
    }

    /// `a ⊗ b` with `b ∈ H`.
    pub fn tensor_elems(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.tensor_elems_k(a, b, 1)
    }

    /// `a ⊗ b` with `b ∈ H^{⊗kb}`.
    pub fn tensor_elems_k(&self, a: &SparseVec, b: &SparseVec, kb: u32) -> SparseVec {
        let f = &self.field;
        let n = self.dim.pow(kb);
        let mut acc = Vec::with_capacity(a.len() * b.len());
        for (i, x) in a {
            for (j, y) in b {
                acc.push((i * n + j, f.mul(x, y)));
            }
        }
        normalize(f, acc)
    }

    /// `Σ a_i ⊗ b_i ↦ Σ b_i ⊗ a_i`.
    pub fn flip2(&self, x: &SparseVec) -> SparseVec {
        let d = self.dim;
        normalize(&self.field, x.iter().map(|(i, c)| ((i % d) * d + i / d, c.clone())).collect())
    }

    /// The Drinfeld element `u = Σ S(b_i) a_i`.
    pub fn drinfeld_u(&self) -> SparseVec {
        let mut acc = Vec::new();
        for (a, b) in self.r_terms() {
            acc.extend(self.mul(&self.s(&b), &a));
        }
        normalize(&self.field, acc)
    }

    /// The pivotal element `g = u θ`.
    pub fn pivot(&self) -> SparseVec {
        self.mul(&self.drinfeld_u(), &self.theta)
    }

    pub fn pivot_inv(&self) -> SparseVec {
        // g is grouplike, so g^{-1} = S(g).
        self.s(&self.pivot())
    }

    /// `R21 R` in `H⊗H`.
    pub fn monodromy(&self) -> SparseVec {
        self.mul_tensor(2, &self.flip2(&self.r), &self.r)
    }

    /// Right coadjoint action `x ◁ h = S(h_(1)) x h_(2)`.
    pub fn right_coadjoint(&self, x: &SparseVec, h: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (p, q) in self.split2(&self.comul(h)) {
            acc.extend(self.mul(&self.mul(&self.s(&p), x), &q));
        }
        normalize(&self.field, acc)
    }

    /// Multiplication as a map `H⊗H -> H`.
    pub fn mult_map(&self) -> LinearMap {
        let d = self.dim;
        LinearMap::from_fn(&self.field, TensorShape::power(d, 2), TensorShape::flat(d), |c| self.mult[c / d][c % d].clone())
    }

    pub fn comult_map(&self) -> LinearMap {
        LinearMap::from_columns(&self.field, TensorShape::flat(self.dim), TensorShape::power(self.dim, 2), self.comult.clone())
    }

    pub fn counit_map(&self) -> LinearMap {
        LinearMap::from_fn(&self.field, TensorShape::flat(self.dim), TensorShape::flat(1), |c| vec![(0, self.counit[c].clone())])
    }

    pub fn unit_map(&self) -> LinearMap {
        LinearMap::from_columns(&self.field, TensorShape::flat(1), TensorShape::flat(self.dim), vec![self.unit.clone()])
    }

    pub fn antipode_map(&self) -> LinearMap {
        LinearMap::from_columns(&self.field, TensorShape::flat(self.dim), TensorShape::flat(self.dim), self.antipode.clone())
    }

    pub fn antipode_inv_map(&self) -> LinearMap {
        LinearMap::from_columns(&self.field, TensorShape::flat(self.dim), TensorShape::flat(self.dim), self.antipode_inv.clone())
    }

    /// Left multiplication by `h` as a matrix.
    pub fn left_mult(&self, h: &SparseVec) -> LinearMap {
        LinearMap::from_fn(&self.field, TensorShape::flat(self.dim), TensorShape::flat(self.dim), |c| self.mul(h, &self.basis_elem(c)))
    }

    pub fn right_mult(&self, h: &SparseVec) -> LinearMap {
        LinearMap::from_fn(&self.field, TensorShape::flat(self.dim), TensorShape::flat(self.dim), |c| self.mul(&self.basis_elem(c), h))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn is_cocommutative(&self) -> bool {
        self.comult.iter().all(|x| self.flip2(x) == *x)
    }

    fn elem_eq(&self, a: &SparseVec, b: &SparseVec) -> bool {
        a == b
    }

    /// Every Hopf, quasitriangular and ribbon axiom, on basis elements.
    pub fn verify_axioms(&self) -> Report {
        let f = &self.field;
        let d = self.dim;
        let e = |i| self.basis_elem(i);
        let mut rep = Report::default();
        let mut check = |name: &str, ok: bool, detail: String| rep.push(name, ok, detail);

        let mut bad = None;
        'a: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.mul(&self.mul(&e(i), &e(j)), &e(k)) != self.mul(&e(i), &self.mul(&e(j), &e(k))) {
                        bad = Some((i, j, k));
                        break 'a;
                    }
                }
            }
        }
        check("associativity", bad.is_none(), bad.map(|b| format!("at {b:?}")).unwrap_or_default());

        let unit_ok = (0..d).all(|i| self.mul(&self.unit, &e(i)) == e(i) && self.mul(&e(i), &self.unit) == e(i));
        check("unit", unit_ok, String::new());

        // (Δ⊗id)Δ = (id⊗Δ)Δ
        let co3 = |x: &SparseVec, left: bool| -> SparseVec {
            let mut acc = Vec::new();
            for (p, q) in self.split2(&self.comul(x)) {
                let t = if left { self.tensor_elems(&self.comul(&p), &q) } else { self.tensor_elems_k(&p, &self.comul(&q), 2) };
                acc.extend(t);
            }
            normalize(f, acc)
        };
        let coassoc = (0..d).find(|&i| co3(&e(i), true) != co3(&e(i), false));
        check("coassociativity", coassoc.is_none(), coassoc.map(|i| format!("at e{i}")).unwrap_or_default());

        let counit_ok = (0..d).all(|i| {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (p, q) in self.split2(&self.comul(&e(i))) {
                l.extend(self.scale(&self.counit_of(&p), &q));
                r.extend(self.scale(&self.counit_of(&q), &p));
            }
            normalize(f, l) == e(i) && normalize(f, r) == e(i)
        });
        check("counit", counit_ok, String::new());

        let mut bad = None;
        'b: for i in 0..d {
            for j in 0..d {
                let lhs = self.comul(&self.mul(&e(i), &e(j)));
                let rhs = self.mul_tensor(2, &self.comul(&e(i)), &self.comul(&e(j)));
                if lhs != rhs {
                    bad = Some((i, j));
                    break 'b;
                }
            }
        }
        check("comultiplication is multiplicative", bad.is_none(), bad.map(|b| format!("at {b:?}")).unwrap_or_default());
        check("comultiplication is unital", self.comul(&self.unit) == self.tensor_elems(&self.unit, &self.unit), String::new());
        let eps_mult = (0..d).all(|i| (0..d).all(|j| self.counit_of(&self.mul(&e(i), &e(j))) == f.mul(&self.counit[i], &self.counit[j])));
        check("counit is multiplicative", eps_mult && f.is_one(&self.counit_of(&self.unit)), String::new());

        let ant = (0..d).find(|&i| {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (p, q) in self.split2(&self.comul(&e(i))) {
                l.extend(self.mul(&self.s(&p), &q));
                r.extend(self.mul(&p, &self.s(&q)));
            }
            let want = self.scale(&self.counit[i], &self.unit);
            normalize(f, l) != want || normalize(f, r) != want
        });
        check("antipode", ant.is_none(), ant.map(|i| format!("at e{i}")).unwrap_or_default());
        let sinv = (0..d).all(|i| self.s(&self.s_inv(&e(i))) == e(i) && self.s_inv(&self.s(&e(i))) == e(i));
        check("antipode inverse", sinv, String::new());

        let one2 = self.tensor_elems(&self.unit, &self.unit);
        let r_ok = self.mul_tensor(2, &self.r, &self.r_inv) == one2 && self.mul_tensor(2, &self.r_inv, &self.r) == one2;
        check("R invertible", r_ok, String::new());
        let qt = (0..d).find(|&i| {
            let dh = self.comul(&e(i));
            self.mul_tensor(2, &self.r, &dh) != self.mul_tensor(2, &self.flip2(&dh), &self.r)
        });
        check("R intertwines the coproduct", qt.is_none(), qt.map(|i| format!("at e{i}")).unwrap_or_default());

        let shape3 = TensorShape::power(d, 3);
        let embed = |x: &SparseVec, slots: (usize, usize)| -> SparseVec {
            let mut acc = Vec::new();
            for (idx, c) in x {
                for (u, cu) in &self.unit {
                    let mut dig = [*u, *u, *u];
                    dig[slots.0] = idx / d;
                    dig[slots.1] = idx % d;
                    acc.push((shape3.join(&dig), f.mul(c, cu)));
                }
            }
            normalize(f, acc)
        };
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for (p, q) in self.split2(&self.r) {
            d1.extend(self.tensor_elems(&self.comul(&p), &q));
            d2.extend(self.tensor_elems_k(&p, &self.comul(&q), 2));
        }
        let (d1, d2) = (normalize(f, d1), normalize(f, d2));
        let r13 = embed(&self.r, (0, 2));
        check("(Δ⊗id)R = R13 R23", d1 == self.mul_tensor(3, &r13, &embed(&self.r, (1, 2))), String::new());
        check("(id⊗Δ)R = R13 R12", d2 == self.mul_tensor(3, &r13, &embed(&self.r, (0, 1))), String::new());

        let central = (0..d).all(|i| self.mul(&self.theta, &e(i)) == self.mul(&e(i), &self.theta));
        check("twist is central", central, String::new());
        check(
            "twist inverse",
            self.mul(&self.theta, &self.theta_inv) == self.unit && self.mul(&self.theta_inv, &self.theta) == self.unit,
            String::new(),
        );
        let dtheta = self.comul(&self.theta);
        let want = self.mul_tensor(2, &self.monodromy(), &self.tensor_elems(&self.theta, &self.theta));
        check("twist condition Δθ = R21 R (θ⊗θ)", dtheta == want, String::new());
        check("twist is self-dual S(θ) = θ", self.s(&self.theta) == self.theta, String::new());
        check("counit of twist", f.is_one(&self.counit_of(&self.theta)), String::new());
        let g = self.pivot();
        check("pivot is grouplike", self.comul(&g) == self.tensor_elems(&g, &g) && f.is_one(&self.counit_of(&g)), String::new());
        let ginv = self.pivot_inv();
        let s2 = (0..d).all(|i| self.s(&self.s(&e(i))) == self.mul(&self.mul(&g, &e(i)), &ginv));
        check("S² is conjugation by the pivot", s2 && self.elem_eq(&self.mul(&g, &ginv), &self.unit), String::new());

        for (k, m) in self.simples.iter().enumerate() {
            let r = m.check_module(self);
            check(&format!("simple {k} is a module"), r.is_ok(), r.err().unwrap_or_default());
        }
        rep
    }
}

/// Data read off the simple modules: S and T matrices and Gauss sums.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub qdims: Vec<Elem>,
    pub twists: Vec<Elem>,
    pub s_matrix: LinearMap,
    pub t_matrix: LinearMap,
    pub gauss_plus: Elem,
    pub gauss_minus: Elem,
    pub global_dim: Elem,
    pub is_modular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModularError {
    #[error("no simple modules supplied")]
    NoSimples,
    #[error("the supplied simples do not certify semisimplicity: {0}")]
    NotSemisimple(String),
    #[error("simple {0} is not absolutely simple or the twist is not a scalar on it")]
    NotScalar(usize),
}

impl HopfAlgebra {
    /// Right quantum trace on a module.
    pub fn qtrace(&self, m: &Module, f: &LinearMap) -> Elem {
        trace(&m.act(self, &self.pivot()).after(f))
    }

    pub fn qdim(&self, m: &Module) -> Elem {
        trace(&m.act(self, &self.pivot()))
    }

    /// `c_{V,W}: V⊗W -> W⊗V`.
    pub fn braiding(&self, v: &Module, w: &Module) -> LinearMap {
        let f = &self.field;
        let shape = TensorShape(vec![v.dim(), w.dim()]);
        if v.is_trivial(self) && w.is_trivial(self) {
            return LinearMap::permutation(f, &shape, &[1, 0]);
        }
        let mut acc = LinearMap::zero(f, shape.clone(), shape.clone());
        for (a, b) in self.r_terms() {
            acc = acc.plus(&v.act(self, &a).tensor(&w.act(self, &b)));
        }
        LinearMap::permutation(f, &shape, &[1, 0]).after(&acc)
    }

    /// `c_{V,W}^{-1}: W⊗V -> V⊗W`.
    pub fn braiding_inv(&self, v: &Module, w: &Module) -> LinearMap {
        let f = &self.field;
        let shape = TensorShape(vec![v.dim(), w.dim()]);
        if v.is_trivial(self) && w.is_trivial(self) {
            return LinearMap::permutation(f, &TensorShape(vec![w.dim(), v.dim()]), &[1, 0]);
        }
        let mut acc = LinearMap::zero(f, shape.clone(), shape.clone());
        for (a, b) in self.r_inv_terms() {
            acc = acc.plus(&v.act(self, &a).tensor(&w.act(self, &b)));
        }
        acc.after(&LinearMap::permutation(f, &TensorShape(vec![w.dim(), v.dim()]), &[1, 0]))
    }

    pub fn twist_on(&self, m: &Module) -> LinearMap {
        m.act(self, &self.theta)
    }

    pub fn twist_inv_on(&self, m: &Module) -> LinearMap {
        m.act(self, &self.theta_inv)
    }

    fn scalar_of(&self, m: &LinearMap) -> Option<Elem> {
        let f = &self.field;
        let c = m.get(0, 0);
        let id = LinearMap::identity(f, m.domain().clone()).scale(&c);
        (id == *m).then_some(c)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn modular_data(&self) -> Result<ModularData, ModularError> {
        let f = &self.field;
        if self.simples.is_empty() {
            return Err(ModularError::NoSimples);
        }
        let total: usize = self.simples.iter().map(|m| m.dim() * m.dim()).sum();
        if total != self.dim {
            return Err(ModularError::NotSemisimple(format!("sum of squared dimensions {total} != {}", self.dim)));
        }
        for (i, a) in self.simples.iter().enumerate() {
            if a.endomorphism_dim(self) != 1 {
                return Err(ModularError::NotSemisimple(format!("simple {i} has a nontrivial endomorphism")));
            }
            for (j, b) in self.simples.iter().enumerate().skip(i + 1) {
                if a.hom_dim(self, b) != 0 {
                    return Err(ModularError::NotSemisimple(format!("simples {i} and {j} are isomorphic")));
                }
            }
        }
        let n = self.simples.len();
        let mut twists = Vec::new();
        for (i, m) in self.simples.iter().enumerate() {
            twists.push(self.scalar_of(&self.twist_on(m)).ok_or(ModularError::NotScalar(i))?);
        }
        let qdims: Vec<Elem> = self.simples.iter().map(|m| self.qdim(m)).collect();
        let mut s = vec![vec![f.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let vi = &self.simples[i];
                let vj = &self.simples[j];
                let dbl = self.braiding(vj, vi).after(&self.braiding(vi, vj));
                let prod = Module::tensor(self, vi, vj);
                s[i][j] = self.qtrace(&prod, &dbl);
            }
        }
        let s_matrix = LinearMap::from_dense(f, &s, n);
        let mut t = vec![vec![f.zero(); n]; n];
        for i in 0..n {
            t[i][i] = twists[i].clone();
        }
        let t_matrix = LinearMap::from_dense(f, &t, n);
        let mut gp = f.zero();
        let mut gm = f.zero();
        let mut dim = f.zero();
        for i in 0..n {
            let d2 = f.mul(&qdims[i], &qdims[i]);
            gp = f.add(&gp, &f.mul(&d2, &twists[i]));
            gm = f.add(&gm, &f.mul(&d2, &f.inv(&twists[i]).expect("invertible twist")));
            dim = f.add(&dim, &d2);
        }
        let is_modular = s_matrix.rank() == n;
        Ok(ModularData { qdims, twists, s_matrix, t_matrix, gauss_plus: gp, gauss_minus: gm, global_dim: dim, is_modular })
    }
}

pub fn trace(m: &LinearMap) -> Elem {
    let f = m.field();
    (0..m.cols()).fold(f.zero(), |acc, i| f.add(&acc, &m.get(i, i)))
}
