//! Hochschild and cyclic (co)homology of (co)cyclic modules at bounded
//! degree, through the normalized mixed complex `(C̄, b, B)`.
//!
//! Everything runs in chain form on a cyclic module. A cocyclic module is
//! first transposed: transposing every generator gives a cyclic module whose
//! homology has the dimensions of the original cohomology, with the cochain
//! differential `β_n = Σ_i (-1)^i δ_i^n` turning into `b`.
//!
//! Cyclic homology comes from the total complex of the `(b, B)` bicomplex.
//! Degree `n` only sees the columns `Q_n, Q_{n-2}, …`, so building the chains
//! to level `N + 1` is enough for every degree `≤ N`.

use crate::cyclic_cat::{Token, Variant};
use crate::cyclic_modules::{Chirality, CyclicModule, ModuleError};
use crate::hopf::Report;
use crate::linalg::{CancelToken, Field, LinearMap, Subspace, TensorShape};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("{0}")]
    NotCyclic(String),
    #[error("level {0} is needed but the module stops at {1}")]
    Level(usize, usize),
    #[error("{0}")]
    Descent(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `β_n = Σ_{i=0}^n (-1)^i δ_i^n` on a cocyclic module (level `n-1` to `n`),
/// or `b_n = Σ_i (-1)^i d_i^n` on a cyclic one (level `n` to `n-1`). At
/// `n = 0` this is the zero map to (or from) the zero space.
pub fn hochschild_differential(m: &CyclicModule, n: usize) -> Result<LinearMap, HomologyError> {
    let f = m.field();
    if n > m.max_level() {
        return Err(HomologyError::Level(n, m.max_level()));
    }
    if n == 0 {
        let d0 = TensorShape::flat(m.dim(0));
        return Ok(match m.chirality {
            Chirality::Cyclic => LinearMap::zero(f, d0, TensorShape::flat(0)),
            Chirality::Cocyclic => LinearMap::zero(f, TensorShape::flat(0), d0),
        });
    }
    let mut acc: Option<LinearMap> = None;
    for i in 0..=n {
        let d = m.gen(&Token::Coface { n, i })?;
        acc = Some(match acc {
            None => d.clone(),
            Some(a) if i % 2 == 0 => a.plus(d),
            Some(a) => a.minus(d),
        });
    }
    Ok(acc.expect("n ≥ 1"))
}

/// The generators in chain form: `d[n][i]: M_n -> M_{n-1}`,
/// `s[n][j]: M_n -> M_{n+1}`, `t[n]: M_n -> M_n`.
struct Chains {
    field: Field,
    dims: Vec<usize>,
    d: Vec<Vec<LinearMap>>,
    s: Vec<Vec<LinearMap>>,
    t: Vec<Option<LinearMap>>,
}

impl Chains {
    fn new(m: &CyclicModule, top: usize) -> Result<Chains, HomologyError> {
        if top > m.max_level() {
            return Err(HomologyError::Level(top, m.max_level()));
        }
        let get = |t: Token| -> Result<LinearMap, HomologyError> {
            let g = m.gen(&t)?;
            Ok(match m.chirality {
                Chirality::Cyclic => g.clone(),
                Chirality::Cocyclic => g.transpose(),
            })
        };
        let mut d = vec![Vec::new()];
        let mut s = Vec::new();
        let mut t = Vec::new();
        for n in 0..=top {
            if n >= 1 {
                d.push((0..=n).map(|i| get(Token::Coface { n, i })).collect::<Result<_, _>>()?);
            }
            s.push(if n < top { (0..=n).map(|j| get(Token::Codegeneracy { n, j })).collect::<Result<_, _>>()? } else { Vec::new() });
            t.push(if m.variant.has_tau() { Some(get(Token::Cyclic { n, k: 1 })?) } else { None });
        }
        Ok(Chains { field: m.field().clone(), dims: (0..=top).map(|n| m.dim(n)).collect(), d, s, t })
    }

    fn top(&self) -> usize {
        self.dims.len() - 1
    }

    fn b(&self, n: usize) -> LinearMap {
        let f = &self.field;
        if n == 0 {
            return LinearMap::zero(f, TensorShape::flat(self.dims[0]), TensorShape::flat(0));
        }
        let mut acc = LinearMap::zero(f, TensorShape::flat(self.dims[n]), TensorShape::flat(self.dims[n - 1]));
        for (i, d) in self.d[n].iter().enumerate() {
            acc = if i % 2 == 0 { acc.plus(d) } else { acc.minus(d) };
        }
        acc
    }

    /// `λ_n = (-1)^n t_n`.
    fn lambda(&self, n: usize) -> LinearMap {
        let t = self.t[n].as_ref().expect("cyclic operator present");
        if n.is_multiple_of(2) {
            t.clone()
        } else {
            t.neg()
        }
    }

    /// `B_n = (1 - λ_{n+1}) s N_n: M_n -> M_{n+1}` with the extra degeneracy
    /// `s = t_{n+1} s_n` and the norm `N_n = Σ_{i=0}^n λ_n^i`.
    fn connes(&self, n: usize) -> LinearMap {
        let f = &self.field;
        let lam = self.lambda(n);
        let mut norm = LinearMap::identity(f, TensorShape::flat(self.dims[n]));
        let mut p = norm.clone();
        for _ in 0..n {
            p = lam.after(&p);
            norm = norm.plus(&p);
        }
        let extra = self.t[n + 1].as_ref().expect("cyclic operator present").after(&self.s[n][n]);
        let one_minus = LinearMap::identity(f, TensorShape::flat(self.dims[n + 1])).minus(&self.lambda(n + 1));
        one_minus.after(&extra).after(&norm)
    }

    /// The degenerate chains `D_n = Σ_j im s_j^{n-1}`.
    fn degenerate(&self, n: usize) -> Subspace {
        let amb = TensorShape::flat(self.dims[n]);
        if n == 0 {
            return Subspace::span(&self.field, amb, Vec::new());
        }
        let cols = self.s[n - 1].iter().flat_map(|s| s.columns().to_vec());
        Subspace::span(&self.field, amb, cols)
    }
}

/// A mixed complex in chain form: `b_n: Q_n -> Q_{n-1}` and
/// `B_n: Q_n -> Q_{n+1}`, for the normalized or the full chains.
#[derive(Clone, Debug)]
pub struct MixedComplex {
    pub source: String,
    pub chirality: Chirality,
    pub normalized: bool,
    field: Field,
    dims: Vec<usize>,
    b: Vec<LinearMap>,
    big_b: Vec<LinearMap>,
}

fn zero_space(f: &Field, n: usize) -> Subspace {
    Subspace::span(f, TensorShape::flat(n), Vec::new())
}

impl MixedComplex {
    /// Builds the chains at levels `0..=top`; `B` exists below `top`.
    pub fn build(m: &CyclicModule, top: usize, normalized: bool) -> Result<MixedComplex, HomologyError> {
        match m.variant {
            Variant::Cyclic | Variant::RCyclic(1) => {}
            v => return Err(HomologyError::NotCyclic(format!("Connes' B needs a (co)cyclic module, got {}", v.name()))),
        }
        let ch = Chains::new(m, top)?;
        let f = ch.field.clone();
        let sub: Vec<Subspace> = (0..=top).map(|n| if normalized { ch.degenerate(n) } else { zero_space(&f, ch.dims[n]) }).collect();
        let mut b = Vec::new();
        let mut big_b = Vec::new();
        for n in 0..=top {
            let full_b = ch.b(n);
            if n == 0 {
                b.push(LinearMap::zero(&f, TensorShape::flat(ch.dims[0] - sub[0].dim()), TensorShape::flat(0)));
            } else {
                if !sub[n].maps_into(&full_b, &sub[n - 1]) {
                    return Err(HomologyError::Descent(format!("b does not preserve degenerate chains at level {n}")));
                }
                b.push(sub[n].quotient_map(&full_b, &sub[n - 1]));
            }
            if n < top {
                let full = ch.connes(n);
                if !sub[n].maps_into(&full, &sub[n + 1]) {
                    return Err(HomologyError::Descent(format!("B does not preserve degenerate chains at level {n}")));
                }
                big_b.push(sub[n].quotient_map(&full, &sub[n + 1]));
            }
        }
        let dims = (0..=top).map(|n| ch.dims[n] - sub[n].dim()).collect();
        Ok(MixedComplex { source: m.provenance.clone(), chirality: m.chirality, normalized, field: f, dims, b, big_b })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn b(&self, n: usize) -> &LinearMap {
        &self.b[n]
    }

    /// Connes' operator `B_n: Q_n -> Q_{n+1}`, for `n < top`.
    pub fn connes_b(&self, n: usize) -> &LinearMap {
        &self.big_b[n]
    }

    /// `b² = 0`, `B² = 0` and `bB + Bb = 0` at every built level.
    pub fn check_identities(&self) -> Report {
        let mut rep = Report::default();
        let top = self.top();
        for n in 2..=top {
            rep.push(format!("b_{} b_{n} = 0", n - 1), self.b[n - 1].after(&self.b[n]).is_zero(), "");
        }
        for n in 0..top.saturating_sub(1) {
            rep.push(format!("B_{} B_{n} = 0", n + 1), self.big_b[n + 1].after(&self.big_b[n]).is_zero(), "");
        }
        for n in 0..top {
            let mut x = self.b[n + 1].after(&self.big_b[n]);
            if n >= 1 {
                x = x.plus(&self.big_b[n - 1].after(&self.b[n]));
            }
            rep.push(format!("bB + Bb = 0 on level {n}"), x.is_zero(), "");
        }
        rep
    }

    /// `dim HH_n` for `n ≤ max`; needs `max < top`.
    pub fn hochschild_ranks(&self, max: usize) -> Result<Vec<usize>, HomologyError> {
        self.need(max + 1)?;
        Ok((0..=max).map(|n| self.dims[n] - self.b[n].rank() - self.b[n + 1].rank()).collect())
    }

    /// The total complex in degree `n`: `Q_n ⊕ Q_{n-2} ⊕ …`.
    fn tot_sizes(&self, n: usize) -> Vec<usize> {
        (0..=n / 2).map(|k| self.dims[n - 2 * k]).collect()
    }

    /// `D = b + B` from total degree `n` to `n - 1`.
    fn total_differential(&self, n: usize) -> LinearMap {
        let cols = self.tot_sizes(n);
        if n == 0 {
            return LinearMap::zero(&self.field, TensorShape::flat(cols[0]), TensorShape::flat(0));
        }
        let rows = self.tot_sizes(n - 1);
        LinearMap::blocks(&self.field, &rows, &cols, |r, c| {
            let level = n - 2 * c;
            if r == c && level >= 1 {
                Some(self.b[level].clone())
            } else if c >= 1 && r == c - 1 {
                Some(self.big_b[level].clone())
            } else {
                None
            }
        })
    }

    /// `dim HC_n` for `n ≤ max`, from the `(b, B)` total complex.
    pub fn cyclic_ranks(&self, max: usize) -> Result<Vec<usize>, HomologyError> {
        self.need(max + 1)?;
        Ok((0..=max)
            .map(|n| self.tot_sizes(n).iter().sum::<usize>() - self.total_differential(n).rank() - self.total_differential(n + 1).rank())
            .collect())
    }

    /// Exactness of Connes' sequence `… -> HH_n -I-> HC_n -S-> HC_{n-2} -∂-> HH_{n-1} -> …`
    /// in degrees `≤ max`, from the ranks of the induced maps.
    pub fn sbi_check(&self, max: usize) -> Result<Report, HomologyError> {
        self.need(max + 1)?;
        let f = &self.field;
        let hh = self.hochschild_ranks(max)?;
        let hc = self.cyclic_ranks(max)?;
        let cancel = CancelToken::never();
        let kernel = |m: &LinearMap| Subspace::kernel(m, &cancel).expect("not cancelled");
        // rank of the map induced on homology by a chain-level `g`.
        let induced = |g: &LinearMap, src_d: &LinearMap, tgt_in: &LinearMap| -> usize {
            let z = kernel(src_d);
            let gz = g.after(&z.inclusion());
            gz.hstack(tgt_in).rank() - tgt_in.rank()
        };
        let tot_d = |n: usize| self.total_differential(n);
        let i_rank = |n: usize| {
            let sizes = self.tot_sizes(n);
            let inc = LinearMap::blocks(f, &sizes, &[self.dims[n]], |r, _| if r == 0 { Some(LinearMap::identity(f, TensorShape::flat(self.dims[n]))) } else { None });
            induced(&inc, &self.b[n], &tot_d(n + 1))
        };
        let s_rank = |n: usize| {
            if n < 2 {
                return 0;
            }
            let from = self.tot_sizes(n);
            let to = self.tot_sizes(n - 2);
            let proj = LinearMap::blocks(f, &to, &from, |r, c| if c == r + 1 { Some(LinearMap::identity(f, TensorShape::flat(to[r]))) } else { None });
            induced(&proj, &tot_d(n), &tot_d(n - 1))
        };
        // ∂_n: HC_{n-2} -> HH_{n-1} applies B to the first column.
        let conn_rank = |n: usize| {
            if n < 2 {
                return 0;
            }
            let from = self.tot_sizes(n - 2);
            let g = LinearMap::blocks(f, &[self.dims[n - 1]], &from, |_, c| if c == 0 { Some(self.big_b[n - 2].clone()) } else { None });
            induced(&g, &tot_d(n - 2), &self.b[n])
        };
        let mut rep = Report::default();
        for n in 0..=max {
            let (ri, rs, rc_next, rc) = (i_rank(n), s_rank(n), conn_rank(n + 1), conn_rank(n));
            rep.push(format!("exact at HH_{n}"), rc_next + ri == hh[n], format!("rank ∂ {rc_next} + rank I {ri} vs {}", hh[n]));
            rep.push(format!("exact at HC_{n}"), ri + rs == hc[n], format!("rank I {ri} + rank S {rs} vs {}", hc[n]));
            if n >= 2 {
                rep.push(format!("exact at HC_{}", n - 2), rs + rc == hc[n - 2], format!("rank S {rs} + rank ∂ {rc} vs {}", hc[n - 2]));
            }
        }
        Ok(rep)
    }

    fn need(&self, level: usize) -> Result<(), HomologyError> {
        if level > self.top() {
            Err(HomologyError::Level(level, self.top()))
        } else {
            Ok(())
        }
    }
}

/// `dim HH` in degrees `≤ max` from the normalized chains. Works for any
/// variant; only faces and degeneracies are used.
pub fn homology_ranks(m: &CyclicModule, max: usize) -> Result<Vec<usize>, HomologyError> {
    let ch = Chains::new(m, max + 1)?;
    let f = ch.field.clone();
    let sub: Vec<Subspace> = (0..=ch.top()).map(|n| ch.degenerate(n)).collect();
    let bs: Vec<LinearMap> = (0..=ch.top())
        .map(|n| if n == 0 { LinearMap::zero(&f, TensorShape::flat(ch.dims[0]), TensorShape::flat(0)) } else { sub[n].quotient_map(&ch.b(n), &sub[n - 1]) })
        .collect();
    Ok((0..=max).map(|n| ch.dims[n] - sub[n].dim() - bs[n].rank() - bs[n + 1].rank()).collect())
}

/// `dim HC` in degrees `≤ max`; needs the module built to `max + 1`.
pub fn cyclic_ranks(m: &CyclicModule, max: usize) -> Result<Vec<usize>, HomologyError> {
    MixedComplex::build(m, max + 1, true)?.cyclic_ranks(max)
}

/// The unnormalized Connes operator on the module itself: `M_n -> M_{n+1}`
/// for a cyclic module, its transpose `C^{n+1} -> C^n` for a cocyclic one.
pub fn connes_b(m: &CyclicModule, n: usize) -> Result<LinearMap, HomologyError> {
    if !matches!(m.variant, Variant::Cyclic | Variant::RCyclic(1)) {
        return Err(HomologyError::NotCyclic(format!("Connes' B needs a (co)cyclic module, got {}", m.variant.name())));
    }
    let b = Chains::new(m, n + 1)?.connes(n);
    Ok(match m.chirality {
        Chirality::Cyclic => b,
        Chirality::Cocyclic => b.transpose(),
    })
}

/// Hochschild and cyclic dimensions side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub source: String,
    pub cohomology: bool,
    pub hh: Vec<usize>,
    pub hc: Vec<usize>,
}

impl HomologyTable {
    pub fn compute(m: &CyclicModule, max: usize) -> Result<HomologyTable, HomologyError> {
        let mc = MixedComplex::build(m, max + 1, true)?;
        Ok(HomologyTable { source: m.provenance.clone(), cohomology: m.chirality == Chirality::Cocyclic, hh: mc.hochschild_ranks(max)?, hc: mc.cyclic_ranks(max)? })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.hh.iter().zip(&self.hc).enumerate().map(|(n, (h, c))| json!({"degree": n, "HH": h, "HC": c})).collect();
        json!({"schema": 1, "source": self.source, "cohomology": self.cohomology, "degrees": rows})
    }

    pub fn render(&self) -> String {
        let (hh, hc) = if self.cohomology { ("dim HH^n", "dim HC^n") } else { ("dim HH_n", "dim HC_n") };
        let mut out = format!("{}\n{:>6}  {:>9}  {:>9}\n", self.source, "degree", hh, hc);
        for (n, (h, c)) in self.hh.iter().zip(&self.hc).enumerate() {
            out += &format!("{n:>6}  {h:>9}  {c:>9}\n");
        }
        out
    }
}
