//! Sparse incremental row reduction.

use super::map::{normalize, LinearMap, SparseVec, TensorShape};
use super::{Elem, Field, LinalgError};
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

/// Shared flag checked between rows of long eliminations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Option<Arc<AtomicBool>>);

impl CancelToken {
    pub fn new() -> CancelToken {
        CancelToken(Some(Arc::new(AtomicBool::new(false))))
    }

    pub fn never() -> CancelToken {
        CancelToken(None)
    }

    pub fn cancel(&self) {
        if let Some(f) = &self.0 {
            f.store(true, Ordering::Relaxed);
        }
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.as_ref().is_some_and(|f| f.load(Ordering::Relaxed))
    }

    pub fn check(&self) -> Result<(), LinalgError> {
        if self.is_cancelled() {
            Err(LinalgError::Cancelled)
        } else {
            Ok(())
        }
    }
}

/// Rows in echelon form: each row starts with a 1 at its pivot column.
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Echelon {
        Echelon { field: field.clone(), ncols, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Eliminate every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() {
            return v.clone();
        }
        let f = &self.field;
        let mut work: BTreeMap<usize, Elem> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let hit = work.range(cursor..).map(|(c, _)| *c).find(|c| self.pivot_row.contains_key(c));
            let Some(c) = hit else { break };
            let a = work.remove(&c).unwrap();
            let row = &self.rows[self.pivot_row[&c]];
            for (k, x) in &row[1..] {
                let t = f.mul(&a, x);
                match work.get_mut(k) {
                    Some(y) => {
                        *y = f.sub(y, &t);
                        if f.is_zero(y) {
                            work.remove(k);
                        }
                    }
                    None => {
                        work.insert(*k, f.neg(&t));
                    }
                }
            }
            cursor = c + 1;
        }
        work.into_iter().collect()
    }

    /// Adds `v` to the row space. Returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (p, lead) = r.first()?.clone();
        let inv = self.field.inv(&lead).expect("nonzero pivot");
        let row: SparseVec = r.into_iter().map(|(k, x)| (k, self.field.mul(&inv, &x))).collect();
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row);
        Some(p)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Back-substitute into reduced row echelon form, rows sorted by pivot.
    pub fn into_rref(self) -> Rref {
        let Echelon { field, ncols, mut rows, .. } = self;
        rows.sort_by_key(|r| r[0].0);
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let index: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        for i in (0..rows.len()).rev() {
            let tail_has_pivot = rows[i][1..].iter().any(|(k, _)| index.contains_key(k));
            if !tail_has_pivot {
                continue;
            }
            let mut acc: Vec<(usize, Elem)> = vec![rows[i][0].clone()];
            for (k, x) in &rows[i][1..] {
                match index.get(k) {
                    Some(&j) => {
                        for (kk, y) in &rows[j][1..] {
                            acc.push((*kk, field.neg(&field.mul(x, y))));
                        }
                    }
                    None => acc.push((*k, x.clone())),
                }
            }
            rows[i] = normalize(&field, acc);
        }
        Rref { field, ncols, rows, pivots }
    }
}

pub struct Rref {
    pub field: Field,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_piv = vec![false; self.ncols];
        for p in &self.pivots {
            is_piv[*p] = true;
        }
        (0..self.ncols).filter(|c| !is_piv[*c]).collect()
    }

    /// Kernel basis: one vector per free column `f`, equal to 1 at `f`,
    /// zero at the other free columns.
    pub fn kernel_basis(&self) -> (Vec<SparseVec>, Vec<usize>) {
        let free = self.free_columns();
        let mut by_col: HashMap<usize, Vec<(usize, Elem)>> = HashMap::new();
        for row in &self.rows {
            let p = row[0].0;
            for (k, x) in &row[1..] {
                by_col.entry(*k).or_default().push((p, self.field.neg(x)));
            }
        }
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = by_col.remove(&f).unwrap_or_default();
                v.push((f, self.field.one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        (basis, free)
    }
}

pub fn rank_of_vectors(
    field: &Field,
    len: usize,
    vs: impl IntoIterator<Item = SparseVec>,
    cancel: &CancelToken,
) -> Result<usize, LinalgError> {
    let mut e = Echelon::new(field, len);
    for v in vs {
        cancel.check()?;
        e.insert(&v);
    }
    Ok(e.rank())
}

fn row_vectors(m: &LinearMap) -> Vec<SparseVec> {
    let mut rows = vec![Vec::new(); m.rows()];
    for (c, col) in m.columns().iter().enumerate() {
        for (r, x) in col {
            rows[*r].push((c, x.clone()));
        }
    }
    rows
}

pub fn rref_of_rows(m: &LinearMap, cancel: &CancelToken) -> Result<Rref, LinalgError> {
    let mut e = Echelon::new(m.field(), m.cols());
    for row in row_vectors(m) {
        cancel.check()?;
        if !row.is_empty() {
            e.insert(&row);
        }
    }
    Ok(e.into_rref())
}

/// Kernel basis with the positions of the coordinate-carrying entries.
pub fn kernel(m: &LinearMap, cancel: &CancelToken) -> Result<(Vec<SparseVec>, Vec<usize>), LinalgError> {
    Ok(rref_of_rows(m, cancel)?.kernel_basis())
}

/// Some `X` with `A X = B`; free variables are set to zero.
pub fn solve(a: &LinearMap, b: &LinearMap, cancel: &CancelToken) -> Result<LinearMap, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch("solve: row counts differ".into()));
    }
    let n = a.cols();
    let aug = a.hstack(b);
    let rref = rref_of_rows(&aug, cancel)?;
    if rref.pivots.iter().any(|&p| p >= n) {
        return Err(LinalgError::Inconsistent);
    }
    let field = a.field();
    let mut cols = vec![Vec::new(); b.cols()];
    for row in &rref.rows {
        let p = row[0].0;
        for (k, x) in &row[1..] {
            if *k >= n {
                cols[k - n].push((p, x.clone()));
            }
        }
    }
    Ok(LinearMap::from_columns(field, TensorShape::flat(b.cols()), TensorShape::flat(n), cols)
        .reshaped(b.domain().clone(), a.domain().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let q = Field::rationals();
        let m = LinearMap::from_ints(&q, &[&[1, 2, 3], &[2, 4, 6]]);
        let (k, free) = kernel(&m, &CancelToken::never()).unwrap();
        assert_eq!(free, vec![1, 2]);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_empty());
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let q = Field::rationals();
        let a = LinearMap::from_ints(&q, &[&[1, 1], &[1, 1]]);
        let b = LinearMap::from_ints(&q, &[&[1], &[2]]);
        assert_eq!(solve(&a, &b, &CancelToken::never()).unwrap_err(), LinalgError::Inconsistent);
        let b = LinearMap::from_ints(&q, &[&[3], &[3]]);
        let x = solve(&a, &b, &CancelToken::never()).unwrap();
        assert_eq!(a.after(&x), b);
    }

    #[test]
    fn cancellation_stops_work() {
        let q = Field::rationals();
        let t = CancelToken::new();
        t.cancel();
        let m = LinearMap::identity(&q, TensorShape::flat(3));
        assert!(matches!(kernel(&m, &t), Err(LinalgError::Cancelled)));
    }
}
