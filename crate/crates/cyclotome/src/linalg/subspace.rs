//! Subspaces with coordinates that can be read off directly.

use super::echelon::{self, CancelToken, Echelon};
use super::map::{axpy, LinearMap, SparseVec, TensorShape};
use super::{Field, LinalgError};

/// A subspace of `k^ambient` whose basis vector `b_k` is 1 at
/// `positions[k]` and 0 at every other listed position, so the coordinates
/// of a member `x` are just `x[positions[k]]`.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: TensorShape,
    basis: Vec<SparseVec>,
    positions: Vec<usize>,
}

impl Subspace {
    pub fn full(field: &Field, ambient: TensorShape) -> Subspace {
        let n = ambient.total();
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..n).map(|i| vec![(i, field.one())]).collect(),
            positions: (0..n).collect(),
        }
    }

    pub fn kernel(m: &LinearMap, cancel: &CancelToken) -> Result<Subspace, LinalgError> {
        if m.is_zero() {
            return Ok(Subspace::full(m.field(), m.domain().clone()));
        }
        let (basis, positions) = echelon::kernel(m, cancel)?;
        Ok(Subspace { field: m.field().clone(), ambient: m.domain().clone(), basis, positions })
    }

    /// Common kernel of several maps out of the same space.
    pub fn joint_kernel(field: &Field, ambient: TensorShape, maps: &[LinearMap], cancel: &CancelToken) -> Result<Subspace, LinalgError> {
        let nonzero: Vec<&LinearMap> = maps.iter().filter(|m| !m.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(Subspace::full(field, ambient));
        }
        let mut e = Echelon::new(field, ambient.total());
        for m in nonzero {
            let t = m.transpose();
            for c in t.columns() {
                cancel.check()?;
                if !c.is_empty() {
                    e.insert(c);
                }
            }
        }
        let (basis, positions) = e.into_rref().kernel_basis();
        Ok(Subspace { field: field.clone(), ambient, basis, positions })
    }

    pub fn span(field: &Field, ambient: TensorShape, vs: impl IntoIterator<Item = SparseVec>) -> Subspace {
        let mut e = Echelon::new(field, ambient.total());
        for v in vs {
            e.insert(&v);
        }
        let r = e.into_rref();
        Subspace { field: field.clone(), ambient, positions: r.pivots.clone(), basis: r.rows }
    }

    /// Reassembles a subspace from a stored basis and its pivot positions,
    /// checking that each basis vector is 1 at its own position and 0 at the
    /// others.
    pub fn from_parts(field: &Field, ambient: TensorShape, basis: Vec<SparseVec>, positions: Vec<usize>) -> Result<Subspace, LinalgError> {
        if basis.len() != positions.len() {
            return Err(LinalgError::ShapeMismatch("one position per basis vector".into()));
        }
        for (k, b) in basis.iter().enumerate() {
            if b.iter().any(|(i, _)| *i >= ambient.total()) {
                return Err(LinalgError::ShapeMismatch("basis vector outside the ambient space".into()));
            }
            for (j, &p) in positions.iter().enumerate() {
                let x = b.binary_search_by_key(&p, |e| e.0).ok().map(|i| &b[i].1);
                let ok = match x {
                    Some(x) => j == k && field.is_one(x),
                    None => j != k,
                };
                if !ok {
                    return Err(LinalgError::Parse("stored basis is not in reduced form".into()));
                }
            }
        }
        Ok(Subspace { field: field.clone(), ambient, basis, positions })
    }

    /// Whether both subspaces have the same ambient size and span.
    pub fn same_span(&self, o: &Subspace) -> bool {
        self.ambient.total() == o.ambient.total() && self.dim() == o.dim() && self.basis.iter().all(|b| o.coordinates(b).is_ok())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> &TensorShape {
        &self.ambient
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient.total()
    }

    /// Coordinates of `x`, or an error if `x` is not a member.
    pub fn coordinates(&self, x: &SparseVec) -> Result<SparseVec, LinalgError> {
        if self.is_full() {
            return Ok(x.clone());
        }
        let mut coords = Vec::new();
        let mut rest = x.clone();
        for (k, &p) in self.positions.iter().enumerate() {
            if let Ok(i) = x.binary_search_by_key(&p, |e| e.0) {
                let a = x[i].1.clone();
                rest = axpy(&self.field, &self.field.neg(&a), &self.basis[k], &rest);
                coords.push((k, a));
            }
        }
        if rest.is_empty() {
            Ok(coords)
        } else {
            Err(LinalgError::NotInSubspace)
        }
    }

    /// The standard basis vectors not at a pivot position. Their classes are
    /// a basis of `k^ambient / self`.
    pub fn complement(&self) -> Vec<usize> {
        let mut pivot = vec![false; self.ambient.total()];
        for &p in &self.positions {
            pivot[p] = true;
        }
        (0..pivot.len()).filter(|&i| !pivot[i]).collect()
    }

    /// The class of `x` modulo `self`, in the basis of [`Self::complement`].
    pub fn quotient_coordinates(&self, x: &SparseVec) -> SparseVec {
        let mut rest = x.clone();
        for (k, &p) in self.positions.iter().enumerate() {
            if let Ok(i) = x.binary_search_by_key(&p, |e| e.0) {
                rest = axpy(&self.field, &self.field.neg(&x[i].1), &self.basis[k], &rest);
            }
        }
        let comp = self.complement();
        rest.into_iter().map(|(i, a)| (comp.binary_search(&i).expect("pivot entries were cleared"), a)).collect()
    }

    /// The map `k^ambient / self -> k^m / target` induced by `m`. The caller
    /// guarantees `m(self) ⊂ target`; see [`Self::maps_into`].
    pub fn quotient_map(&self, m: &LinearMap, target: &Subspace) -> LinearMap {
        let dom = self.complement();
        let cols = dom.iter().map(|&j| target.quotient_coordinates(m.column(j))).collect();
        LinearMap::from_columns(&self.field, TensorShape::flat(dom.len()), TensorShape::flat(target.ambient.total() - target.dim()), cols)
    }

    /// Whether `m` sends every vector of `self` into `target`.
    pub fn maps_into(&self, m: &LinearMap, target: &Subspace) -> bool {
        self.basis.iter().all(|b| target.coordinates(&m.apply(b)).is_ok())
    }

    /// The inclusion into the ambient space.
    pub fn inclusion(&self) -> LinearMap {
        LinearMap::from_columns(&self.field, TensorShape::flat(self.dim()), self.ambient.clone(), self.basis.clone())
    }

    /// The matrix of an ambient map `m` restricted to `self` and corestricted
    /// to `target`; fails if the image leaves `target`.
    pub fn restrict(&self, m: &LinearMap, target: &Subspace) -> Result<LinearMap, LinalgError> {
        if m.cols() != self.ambient.total() || m.rows() != target.ambient.total() {
            return Err(LinalgError::ShapeMismatch("restrict: ambient sizes differ".into()));
        }
        let mut cols = Vec::with_capacity(self.dim());
        for b in &self.basis {
            cols.push(target.coordinates(&m.apply(b))?);
        }
        Ok(LinearMap::from_columns(&self.field, TensorShape::flat(self.dim()), TensorShape::flat(target.dim()), cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_coordinates_round_trip() {
        let q = Field::rationals();
        let m = LinearMap::from_ints(&q, &[&[1, -1, 0], &[0, 1, -1]]);
        let k = Subspace::kernel(&m, &CancelToken::never()).unwrap();
        assert_eq!(k.dim(), 1);
        let v = vec![(0, q.from_i64(3)), (1, q.from_i64(3)), (2, q.from_i64(3))];
        assert_eq!(k.coordinates(&v).unwrap(), vec![(0, q.from_i64(3))]);
        assert!(k.coordinates(&vec![(0, q.one())]).is_err());
    }

    #[test]
    fn restriction_of_swap() {
        let q = Field::rationals();
        let swap = LinearMap::permutation(&q, &TensorShape(vec![2, 2]), &[1, 0]);
        let sym = Subspace::kernel(&swap.minus(&LinearMap::identity(&q, TensorShape(vec![2, 2]))), &CancelToken::never()).unwrap();
        assert_eq!(sym.dim(), 3);
        assert!(sym.restrict(&swap, &sym).unwrap().is_identity());
    }
}
