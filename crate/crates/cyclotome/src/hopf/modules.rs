//! Finite-dimensional left modules, given by the action of each basis element.

use super::HopfAlgebra;
use crate::linalg::echelon::CancelToken;
use crate::linalg::{Field, LinearMap, Subspace, TensorShape};

#[derive(Clone, Debug)]
pub struct Module {
    field: Field,
    dim: usize,
    /// `action[k] = ρ(e_k)`.
    pub action: Vec<LinearMap>,
}

impl Module {
    pub fn new(field: &Field, action: Vec<LinearMap>) -> Module {
        let dim = action.first().map_or(0, |m| m.rows());
        Module { field: field.clone(), dim, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> TensorShape {
        TensorShape::flat(self.dim)
    }

    /// `ρ(h)` for an arbitrary element.
    pub fn act(&self, h: &HopfAlgebra, x: &[(usize, crate::linalg::Elem)]) -> LinearMap {
        let _ = h;
        let mut acc = LinearMap::zero(&self.field, self.shape(), self.shape());
        for (k, c) in x {
            acc = acc.plus(&self.action[*k].scale(c));
        }
        acc
    }

    pub fn trivial(h: &HopfAlgebra) -> Module {
        let f = h.field();
        let action = (0..h.dim())
            .map(|k| LinearMap::identity(f, TensorShape::flat(1)).scale(&h.counit_of(&h.basis_elem(k))))
            .collect();
        Module::new(f, action)
    }

    pub fn regular(h: &HopfAlgebra) -> Module {
        let action = (0..h.dim()).map(|k| h.left_mult(&h.basis_elem(k))).collect();
        Module::new(h.field(), action)
    }

    /// `(h·φ)(x) = φ(S(h) x)`.
    pub fn dual(h: &HopfAlgebra, m: &Module) -> Module {
        let action = (0..h.dim()).map(|k| m.act(h, &h.s(&h.basis_elem(k))).transpose()).collect();
        Module::new(h.field(), action)
    }

    /// A module on which every `h` acts by the scalar `ε(h)`.
    pub fn trivial_of_dim(h: &HopfAlgebra, n: usize) -> Module {
        let f = h.field();
        let id = LinearMap::identity(f, TensorShape::flat(n));
        let action = (0..h.dim()).map(|k| id.scale(&h.counit_of(&h.basis_elem(k)))).collect();
        Module::new(f, action)
    }

    /// Whether every basis element acts by its counit.
    pub fn is_trivial(&self, h: &HopfAlgebra) -> bool {
        self.action.iter().enumerate().all(|(k, a)| {
            let e = h.counit_of(&h.basis_elem(k));
            a.nnz() == if self.field.is_zero(&e) { 0 } else { self.dim }
                && (0..self.dim).all(|i| a.column(i).iter().all(|(r, x)| *r == i && *x == e))
        })
    }

    pub fn tensor(h: &HopfAlgebra, v: &Module, w: &Module) -> Module {
        if v.is_trivial(h) && w.is_trivial(h) {
            return Module::trivial_of_dim(h, v.dim * w.dim);
        }
        let f = h.field();
        let shape = TensorShape(vec![v.dim, w.dim]);
        let action = (0..h.dim())
            .map(|k| {
                let mut acc = LinearMap::zero(f, shape.clone(), shape.clone());
                for (p, q) in h.split2(&h.comul(&h.basis_elem(k))) {
                    acc = acc.plus(&v.act(h, &p).tensor(&w.act(h, &q)));
                }
                acc
            })
            .collect();
        Module::new(f, action).flattened()
    }

    pub fn tensor_power(h: &HopfAlgebra, v: &Module, k: usize) -> Module {
        let mut acc = Module::trivial(h);
        for _ in 0..k {
            acc = Module::tensor(h, &acc, v);
        }
        acc
    }

    pub fn direct_sum(&self, o: &Module) -> Module {
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(a, b)| {
                let n = self.dim + o.dim;
                LinearMap::blocks(&self.field, &[self.dim, o.dim], &[self.dim, o.dim], |i, j| match (i, j) {
                    (0, 0) => Some(a.clone()),
                    (1, 1) => Some(b.clone()),
                    _ => None,
                })
                .reshaped(TensorShape::flat(n), TensorShape::flat(n))
            })
            .collect();
        Module::new(&self.field, action)
    }

    fn flattened(mut self) -> Module {
        let s = TensorShape::flat(self.dim);
        self.action = self.action.into_iter().map(|m| m.reshaped(s.clone(), s.clone())).collect();
        self
    }

    pub fn check_module(&self, h: &HopfAlgebra) -> Result<(), String> {
        if self.action.len() != h.dim() {
            return Err(format!("{} action matrices for a {}-dimensional algebra", self.action.len(), h.dim()));
        }
        if !self.act(h, h.unit()).is_identity() {
            return Err("the unit does not act as the identity".into());
        }
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let lhs = self.action[i].after(&self.action[j]);
                let rhs = self.act(h, &h.mul(&h.basis_elem(i), &h.basis_elem(j)));
                if lhs != rhs {
                    return Err(format!("action is not multiplicative at ({i},{j})"));
                }
            }
        }
        Ok(())
    }

    /// Whether `f: self -> w` commutes with the action.
    pub fn is_intertwiner(&self, h: &HopfAlgebra, w: &Module, f: &LinearMap) -> bool {
        (0..h.dim()).all(|k| w.action[k].after(f) == f.after(&self.action[k]))
    }

    /// `Hom_H(self, w)` inside `w ⊗ self*`, with `f` stored at `r·dim + c`.
    pub fn hom_subspace(&self, h: &HopfAlgebra, w: &Module) -> Subspace {
        let f = &self.field;
        let ambient = TensorShape(vec![w.dim, self.dim]);
        if self.is_trivial(h) && w.is_trivial(h) {
            return Subspace::full(f, ambient);
        }
        let iv = LinearMap::identity(f, self.shape());
        let iw = LinearMap::identity(f, w.shape());
        let eqs: Vec<LinearMap> = (0..h.dim())
            .map(|k| w.action[k].tensor(&iv).minus(&iw.tensor(&self.action[k].transpose())))
            .collect();
        Subspace::joint_kernel(f, ambient, &eqs, &CancelToken::never()).expect("not cancelled")
    }

    /// Basis of `Hom_H(self, w)`, as `w.dim() x self.dim()` matrices.
    pub fn hom_space(&self, h: &HopfAlgebra, w: &Module) -> Vec<LinearMap> {
        let f = &self.field;
        let sub = self.hom_subspace(h, w);
        sub.basis()
            .iter()
            .map(|v| {
                let trip = v.iter().map(|(i, x)| (i / self.dim, i % self.dim, x.clone()));
                LinearMap::from_triplets(f, self.shape(), w.shape(), trip).unwrap()
            })
            .collect()
    }

    pub fn hom_dim(&self, h: &HopfAlgebra, w: &Module) -> usize {
        self.hom_space(h, w).len()
    }

    pub fn endomorphism_dim(&self, h: &HopfAlgebra) -> usize {
        self.hom_dim(h, self)
    }

    /// Vectors on which every `h` acts by `ε(h)`.
    pub fn invariants(&self, h: &HopfAlgebra, cancel: &CancelToken) -> Result<Subspace, crate::linalg::LinalgError> {
        let f = &self.field;
        if self.is_trivial(h) {
            return Ok(Subspace::full(f, self.shape()));
        }
        let id = LinearMap::identity(f, self.shape());
        let eqs: Vec<LinearMap> = (0..h.dim())
            .map(|k| self.action[k].minus(&id.scale(&h.counit_of(&h.basis_elem(k)))))
            .collect();
        Subspace::joint_kernel(f, self.shape(), &eqs, cancel)
    }
}
