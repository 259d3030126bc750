//! Sparse linear maps between tensor products of finite-dimensional spaces.

use super::echelon::{self, CancelToken};
use super::{Elem, Field, LinalgError};
use serde_json::{json, Value};
use std::fmt;

/// Sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, Elem)>;

/// The factor dimensions of a tensor product. Flat indices are row-major:
/// the first factor is the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorShape(pub Vec<usize>);

impl TensorShape {
    pub fn flat(n: usize) -> TensorShape {
        TensorShape(vec![n])
    }

    pub fn power(d: usize, k: usize) -> TensorShape {
        TensorShape(vec![d; k])
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, o: &TensorShape) -> TensorShape {
        TensorShape(self.0.iter().chain(o.0.iter()).copied().collect())
    }

    pub fn split(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (k, d) in self.0.iter().enumerate().rev() {
            out[k] = idx % d;
            idx /= d;
        }
        out
    }

    pub fn join(&self, digits: &[usize]) -> usize {
        digits.iter().zip(self.0.iter()).fold(0, |acc, (x, d)| acc * d + x)
    }
}

/// Merge a list of (index, value) pairs into canonical sparse form.
pub fn normalize(field: &Field, mut v: Vec<(usize, Elem)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

pub fn axpy(field: &Field, a: &Elem, x: &SparseVec, y: &SparseVec) -> SparseVec {
    // a*x + y, both sorted.
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push((x[i].0, field.mul(a, &x[i].1)));
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push(y[j].clone());
            j += 1;
        } else {
            let v = field.add(&field.mul(a, &x[i].1), &y[j].1);
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

#[derive(Clone)]
pub struct LinearMap {
    field: Field,
    domain: TensorShape,
    codomain: TensorShape,
    cols: Vec<SparseVec>,
}

impl PartialEq for LinearMap {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.domain.total() == o.domain.total()
            && self.codomain.total() == o.codomain.total()
            && self.cols == o.cols
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {:?} -> {:?} over {}", self.domain.0, self.codomain.0, self.field.name())?;
        if self.rows() <= 16 && self.cols() <= 16 {
            for r in 0..self.rows() {
                let row: Vec<String> = (0..self.cols()).map(|c| self.field.render(&self.get(r, c))).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        } else {
            writeln!(f, "  ({} nonzero entries)", self.nnz())?;
        }
        Ok(())
    }
}

impl LinearMap {
    pub fn zero(field: &Field, domain: TensorShape, codomain: TensorShape) -> LinearMap {
        let n = domain.total();
        LinearMap { field: field.clone(), domain, codomain, cols: vec![Vec::new(); n] }
    }

    pub fn identity(field: &Field, shape: TensorShape) -> LinearMap {
        let cols = (0..shape.total()).map(|i| vec![(i, field.one())]).collect();
        LinearMap { field: field.clone(), domain: shape.clone(), codomain: shape, cols }
    }

    /// Columns need not be sorted or merged.
    pub fn from_columns(field: &Field, domain: TensorShape, codomain: TensorShape, cols: Vec<Vec<(usize, Elem)>>) -> LinearMap {
        assert_eq!(cols.len(), domain.total(), "column count");
        let cols = cols.into_iter().map(|c| normalize(field, c)).collect();
        LinearMap { field: field.clone(), domain, codomain, cols }
    }

    pub fn from_fn(field: &Field, domain: TensorShape, codomain: TensorShape, f: impl Fn(usize) -> Vec<(usize, Elem)>) -> LinearMap {
        let cols = (0..domain.total()).map(f).collect();
        LinearMap::from_columns(field, domain, codomain, cols)
    }

    pub fn from_triplets(
        field: &Field,
        domain: TensorShape,
        codomain: TensorShape,
        entries: impl IntoIterator<Item = (usize, usize, Elem)>,
    ) -> Result<LinearMap, LinalgError> {
        let mut cols = vec![Vec::new(); domain.total()];
        let nr = codomain.total();
        for (r, c, v) in entries {
            if r >= nr || c >= cols.len() {
                return Err(LinalgError::ShapeMismatch(format!("entry ({r},{c}) outside {nr}x{}", cols.len())));
            }
            cols[c].push((r, v));
        }
        Ok(LinearMap::from_columns(field, domain, codomain, cols))
    }

    /// Row-major dense input.
    pub fn from_dense(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> LinearMap {
        let mut cols = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                cols[c].push((r, v.clone()));
            }
        }
        LinearMap::from_columns(field, TensorShape::flat(ncols), TensorShape::flat(rows.len()), cols)
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> LinearMap {
        let ncols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        LinearMap::from_dense(field, &dense, ncols)
    }

    /// The map sending basis vector `i` to basis vector `perm[i]`.
    pub fn basis_map(field: &Field, domain: TensorShape, codomain: TensorShape, f: impl Fn(usize) -> usize) -> LinearMap {
        let cols = (0..domain.total()).map(|i| vec![(f(i), field.one())]).collect();
        LinearMap { field: field.clone(), domain, codomain, cols }
    }

    /// Reorders tensor factors: output factor `k` is input factor `perm[k]`.
    pub fn permutation(field: &Field, shape: &TensorShape, perm: &[usize]) -> LinearMap {
        assert_eq!(perm.len(), shape.0.len());
        let out = TensorShape(perm.iter().map(|&p| shape.0[p]).collect());
        let outc = out.clone();
        LinearMap::basis_map(field, shape.clone(), out, move |i| {
            let d = shape.split(i);
            let e: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
            outc.join(&e)
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn domain(&self) -> &TensorShape {
        &self.domain
    }
    pub fn codomain(&self) -> &TensorShape {
        &self.codomain
    }
    pub fn rows(&self) -> usize {
        self.codomain.total()
    }
    pub fn cols(&self) -> usize {
        self.domain.total()
    }
    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }
    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Relabel the tensor shapes without touching entries.
    pub fn reshaped(mut self, domain: TensorShape, codomain: TensorShape) -> LinearMap {
        assert_eq!(domain.total(), self.domain.total());
        assert_eq!(codomain.total(), self.codomain.total());
        self.domain = domain;
        self.codomain = codomain;
        self
    }

    fn check_field(&self, o: &LinearMap) -> Result<(), LinalgError> {
        if self.field != o.field {
            return Err(LinalgError::FieldMismatch(self.field.name(), o.field.name()));
        }
        Ok(())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (c, x) in v {
            for (r, y) in &self.cols[*c] {
                acc.push((*r, self.field.mul(x, y)));
            }
        }
        normalize(&self.field, acc)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.check_field(f)?;
        if f.rows() != self.cols() {
            return Err(LinalgError::ShapeMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows(),
                self.cols(),
                f.rows(),
                f.cols()
            )));
        }
        let cols = f.cols.iter().map(|c| self.apply(c)).collect();
        Ok(LinearMap { field: self.field.clone(), domain: f.domain.clone(), codomain: self.codomain.clone(), cols })
    }

    /// Panicking `compose`, for internal code whose shapes are known.
    pub fn after(&self, f: &LinearMap) -> LinearMap {
        self.compose(f).expect("composable maps")
    }

    pub fn tensor(&self, o: &LinearMap) -> LinearMap {
        let f = &self.field;
        let orows = o.rows();
        let mut cols = Vec::with_capacity(self.cols() * o.cols());
        for a in &self.cols {
            for b in &o.cols {
                let mut c = Vec::with_capacity(a.len() * b.len());
                for (ra, xa) in a {
                    for (rb, xb) in b {
                        c.push((ra * orows + rb, f.mul(xa, xb)));
                    }
                }
                cols.push(c);
            }
        }
        LinearMap { field: f.clone(), domain: self.domain.concat(&o.domain), codomain: self.codomain.concat(&o.codomain), cols }
    }

    pub fn transpose(&self) -> LinearMap {
        let mut cols = vec![Vec::new(); self.rows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                cols[*r].push((c, x.clone()));
            }
        }
        LinearMap { field: self.field.clone(), domain: self.codomain.clone(), codomain: self.domain.clone(), cols }
    }

    pub fn add(&self, o: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.check_field(o)?;
        if self.rows() != o.rows() || self.cols() != o.cols() {
            return Err(LinalgError::ShapeMismatch("cannot add maps of different sizes".into()));
        }
        let one = self.field.one();
        let cols = self.cols.iter().zip(&o.cols).map(|(a, b)| axpy(&self.field, &one, a, b)).collect();
        Ok(LinearMap { field: self.field.clone(), domain: self.domain.clone(), codomain: self.codomain.clone(), cols })
    }

    pub fn plus(&self, o: &LinearMap) -> LinearMap {
        self.add(o).expect("same-size maps")
    }

    pub fn sub(&self, o: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.add(&o.neg())
    }

    pub fn minus(&self, o: &LinearMap) -> LinearMap {
        self.sub(o).expect("same-size maps")
    }

    pub fn scale(&self, a: &Elem) -> LinearMap {
        let f = &self.field;
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(r, x)| (*r, f.mul(a, x))).filter(|(_, x)| !f.is_zero(x)).collect())
            .collect();
        LinearMap { field: f.clone(), domain: self.domain.clone(), codomain: self.codomain.clone(), cols }
    }

    pub fn neg(&self) -> LinearMap {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols()
            && self.cols.iter().enumerate().all(|(i, c)| c.len() == 1 && c[0].0 == i && self.field.is_one(&c[0].1))
    }

    pub fn pow(&self, e: usize) -> LinearMap {
        let mut r = LinearMap::identity(&self.field, self.domain.clone());
        for _ in 0..e {
            r = self.after(&r);
        }
        r
    }

    pub fn rank(&self) -> usize {
        echelon::rank_of_vectors(&self.field, self.rows(), self.cols.iter().cloned(), &CancelToken::never()).unwrap()
    }

    pub fn inverse(&self) -> Result<LinearMap, LinalgError> {
        if self.rows() != self.cols() {
            return Err(LinalgError::Singular);
        }
        let id = LinearMap::identity(&self.field, self.codomain.clone());
        let x = echelon::solve(self, &id, &CancelToken::never()).map_err(|e| match e {
            LinalgError::Inconsistent => LinalgError::Singular,
            e => e,
        })?;
        Ok(x.reshaped(self.codomain.clone(), self.domain.clone()))
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, Elem)> {
        let mut e: Vec<(usize, usize, Elem)> =
            self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x.clone()))).collect();
        e.sort_by_key(|t| (t.0, t.1));
        e
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> =
            self.entries().into_iter().map(|(r, c, x)| json!([r, c, self.field.render(&x)])).collect();
        json!({"domain": self.domain.0, "codomain": self.codomain.0, "entries": entries})
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<LinearMap, LinalgError> {
        let bad = |m: &str| LinalgError::Parse(format!("linear map json: {m}"));
        let shape = |k: &str| -> Result<TensorShape, LinalgError> {
            let arr = v.get(k).and_then(Value::as_array).ok_or_else(|| bad(k))?;
            arr.iter().map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad(k))).collect::<Result<_, _>>().map(TensorShape)
        };
        let domain = shape("domain")?;
        let codomain = shape("codomain")?;
        let mut trip = Vec::new();
        for e in v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("entries"))? {
            let a = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("entry"))?;
            let r = a[0].as_u64().ok_or_else(|| bad("row"))? as usize;
            let c = a[1].as_u64().ok_or_else(|| bad("col"))? as usize;
            let x = match &a[2] {
                Value::String(s) => field.parse(s)?,
                Value::Number(n) => field.parse(&n.to_string())?,
                _ => return Err(bad("value")),
            };
            trip.push((r, c, x));
        }
        LinearMap::from_triplets(field, domain, codomain, trip)
    }

    /// Horizontal block `[self | o]`.
    pub fn hstack(&self, o: &LinearMap) -> LinearMap {
        assert_eq!(self.rows(), o.rows());
        let mut cols = self.cols.clone();
        cols.extend(o.cols.iter().cloned());
        let n = cols.len();
        LinearMap { field: self.field.clone(), domain: TensorShape::flat(n), codomain: TensorShape::flat(self.rows()), cols }
    }

    /// Vertical block `[self; o]`.
    pub fn vstack(&self, o: &LinearMap) -> LinearMap {
        assert_eq!(self.cols(), o.cols());
        let off = self.rows();
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(r, x)| (r + off, x.clone()))).collect())
            .collect();
        LinearMap { field: self.field.clone(), domain: TensorShape::flat(self.cols()), codomain: TensorShape::flat(off + o.rows()), cols }
    }

    /// Block matrix from a grid of optional blocks with given row and column sizes.
    pub fn blocks(field: &Field, row_sizes: &[usize], col_sizes: &[usize], get: impl Fn(usize, usize) -> Option<LinearMap>) -> LinearMap {
        let nrows: usize = row_sizes.iter().sum();
        let mut cols = Vec::new();
        for (bj, &cw) in col_sizes.iter().enumerate() {
            let blocks: Vec<(usize, LinearMap)> = (0..row_sizes.len())
                .filter_map(|bi| get(bi, bj).map(|m| (row_sizes[..bi].iter().sum::<usize>(), m)))
                .collect();
            for c in 0..cw {
                let mut col = Vec::new();
                for (off, m) in &blocks {
                    col.extend(m.column(c).iter().map(|(r, x)| (r + off, x.clone())));
                }
                cols.push(normalize(field, col));
            }
        }
        let n = cols.len();
        LinearMap { field: field.clone(), domain: TensorShape::flat(n), codomain: TensorShape::flat(nrows), cols }
    }
}
