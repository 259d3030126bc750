//! Reshetikhin–Turaev (co)cyclic modules on `Hom(1, C^{⊗n+1})`.
//!
//! For a factorizable, anomaly-free base the nested pairing
//! `ω^n: Hom(1, C^{⊗n+1}) -> Hom(C^{⊗n+1}, 1)` is invertible with inverse
//! built from the copairing `Ω`. The RT module is the `ω`-conjugate of
//! `C^•∘Φ` (cocyclic) or `A_•∘Φ` (cyclic):
//!
//! ```text
//! RT(g) = (ω^m)^{-1} ∘ M(g) ∘ ω^n      for g: n -> m
//! ```
//!
//! The extremal cofaces and the cyclic operator are only known as pictures,
//! so conjugation is the definition. Every generator with a symbolic value
//! (unit insertions, multiplications, coproduct insertions, counit
//! contractions) is compared against that value by [`shape_checks`], which
//! is the non-circular part of the verification.

use crate::coend::Coend;
use crate::cyclic_cat::Token;
use crate::cyclic_modules::{
    build_from_algebra, build_from_coalgebra, vn_basis, AlgebraObject, Chirality, CoalgebraObject, CyclicModule, ModuleError, Rotation,
};
use crate::hopf::{Module, ModularError, Report};
use crate::linalg::{LinalgError, LinearMap, Subspace, TensorShape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TqftError {
    #[error("not factorizable: the pairing has rank {rank} on a {dim}-dimensional coend")]
    NotFactorizable { rank: usize, dim: usize },
    #[error("not anomaly free: Δ+ = {plus} but Δ- = {minus}")]
    Anomalous { plus: String, minus: String },
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn flat(n: usize) -> TensorShape {
    TensorShape::flat(n)
}

/// `id^{⊗left} ⊗ f ⊗ id^{⊗right}` on tensor powers of a `d`-dimensional space.
fn at_slot(d: usize, left: usize, f: &LinearMap, right: usize) -> LinearMap {
    let fld = f.field();
    let l = LinearMap::identity(fld, flat(d.pow(left as u32)));
    let r = LinearMap::identity(fld, flat(d.pow(right as u32)));
    let m = l.tensor(f).tensor(&r);
    let (dom, cod) = (m.cols(), m.rows());
    m.reshaped(flat(dom), flat(cod))
}

/// `Hom(1, C^{⊗n+1})`, the invariant vectors of the `(n+1)`-st power.
pub fn rt_state_space(c: &Coend, n: usize) -> Subspace {
    let h = &c.algebra;
    Module::trivial(h).hom_subspace(h, &c.power(n + 1))
}

/// Whether `dim Hom(1, C^{⊗n+1}) = dim V_{n+1}(H)`, the two descriptions
/// of the same space computed independently.
pub fn matches_vn(c: &Coend, n: usize) -> (usize, usize) {
    (rt_state_space(c, n).dim(), vn_basis(&c.algebra, n + 1).space.dim())
}

/// The nested pairing `C^{⊗n+1} ⊗ C^{⊗n+1} -> 1`: slot `n` of the left
/// factor meets slot 0 of the right one, then outwards.
pub fn nested_pairing(c: &Coend, n: usize) -> LinearMap {
    let id = LinearMap::identity(c.field(), flat(c.dim()));
    let mut w = c.omega.clone();
    for _ in 0..n {
        w = c.omega.after(&id.tensor(&w).tensor(&id));
    }
    let cols = w.cols();
    w.reshaped(flat(cols), flat(1))
}

/// The matching nested copairing `1 -> C^{⊗n+1} ⊗ C^{⊗n+1}`.
pub fn nested_copairing(c: &Coend, n: usize) -> Option<LinearMap> {
    let o = c.omega_inv.as_ref()?;
    let id = LinearMap::identity(c.field(), flat(c.dim()));
    let mut w = o.clone();
    for _ in 0..n {
        w = id.tensor(&w).tensor(&id).after(o);
    }
    let rows = w.rows();
    Some(w.reshaped(flat(1), flat(rows)))
}

/// `ω^n` on the ambient spaces: `f ↦ ω_nested ∘ (f ⊗ id)`, with a vector
/// `f` of `C^{⊗n+1}` sent to a functional on `C^{⊗n+1}`.
pub fn omega_n(c: &Coend, n: usize) -> LinearMap {
    let big = c.dim().pow(n as u32 + 1);
    let w = nested_pairing(c, n);
    let mut cols = vec![Vec::new(); big];
    for (_, k, v) in w.entries() {
        cols[k / big].push((k % big, v));
    }
    for col in &mut cols {
        col.sort_by_key(|e| e.0);
    }
    LinearMap::from_columns(c.field(), flat(big), flat(big), cols)
}

/// `Ω^n`: `g ↦ (g ⊗ id) ∘ Ω_nested`, or `None` when `ω` is degenerate.
pub fn omega_n_inverse(c: &Coend, n: usize) -> Option<LinearMap> {
    let big = c.dim().pow(n as u32 + 1);
    let o = nested_copairing(c, n)?;
    let mut cols = vec![Vec::new(); big];
    for (k, _, v) in o.entries() {
        cols[k / big].push((k % big, v));
    }
    for col in &mut cols {
        col.sort_by_key(|e| e.0);
    }
    Some(LinearMap::from_columns(c.field(), flat(big), flat(big), cols))
}

/// `Hom(C^{⊗n+1}, 1)`, the target of `ω^n`.
pub fn functional_space(c: &Coend, n: usize) -> Subspace {
    let h = &c.algebra;
    c.power(n + 1).hom_subspace(h, &Module::trivial(h))
}

/// `ω^n` and `Ω^n` restricted to the invariant spaces, checked to be
/// mutually inverse.
pub fn omega_pair(c: &Coend, n: usize) -> Result<(LinearMap, LinearMap), TqftError> {
    require_factorizable(c)?;
    let (rt, fs) = (rt_state_space(c, n), functional_space(c, n));
    let w = rt.restrict(&omega_n(c, n), &fs)?;
    let inv = omega_n_inverse(c, n).expect("factorizable");
    let wi = fs.restrict(&inv, &rt)?;
    if !wi.after(&w).is_identity() || !w.after(&wi).is_identity() {
        return Err(LinalgError::Singular.into());
    }
    Ok((w, wi))
}

pub fn require_factorizable(c: &Coend) -> Result<(), TqftError> {
    if c.omega_inv.is_none() {
        return Err(TqftError::NotFactorizable { rank: c.pairing_rank(), dim: c.dim() });
    }
    Ok(())
}

/// `Δ₊ = Δ₋`, read off the modular data of the simples.
pub fn require_anomaly_free(c: &Coend) -> Result<(), TqftError> {
    let md = c.algebra.modular_data()?;
    if md.gauss_plus != md.gauss_minus {
        let f = c.field();
        return Err(TqftError::Anomalous { plus: f.render(&md.gauss_plus), minus: f.render(&md.gauss_minus) });
    }
    Ok(())
}

/// An RT (co)cyclic module together with the isomorphism it was built from.
#[derive(Clone, Debug)]
pub struct RtModule {
    pub base: Coend,
    pub state_spaces: Vec<Subspace>,
    /// `ω^n` between the level spaces of `module` and `reference`.
    pub omega_maps: Vec<LinearMap>,
    pub omega_inverses: Vec<LinearMap>,
    /// `C^•∘Φ` or `A_•∘Φ`.
    pub reference: CyclicModule,
    pub module: CyclicModule,
}

impl RtModule {
    pub fn chirality(&self) -> Chirality {
        self.module.chirality
    }

    pub fn max_level(&self) -> usize {
        self.module.max_level()
    }
}

fn conjugate(c: &Coend, reference: CyclicModule, label: &str) -> Result<RtModule, TqftError> {
    let top = reference.max_level();
    let state_spaces: Vec<Subspace> = (0..=top).map(|n| rt_state_space(c, n)).collect();
    let mut omega_maps = Vec::new();
    let mut omega_inverses = Vec::new();
    for n in 0..=top {
        let (w, wi) = omega_pair(c, n)?;
        if !functional_space(c, n).same_span(reference.space(n)?) {
            return Err(ModuleError::Data(format!("level {n} of the reference is not Hom(C^⊗{}, 1)", n + 1)).into());
        }
        omega_maps.push(w);
        omega_inverses.push(wi);
    }
    let mut module = CyclicModule::new(reference.variant, reference.chirality, c.field(), state_spaces.clone(), label);
    let dir = reference.chirality.direction();
    for t in module.tokens() {
        let (s, e) = t.ends(dir);
        let m = omega_inverses[e].after(reference.gen(&t)?).after(&omega_maps[s]);
        module.set(t, m)?;
    }
    Ok(RtModule { base: c.clone(), state_spaces, omega_maps, omega_inverses, reference, module })
}

fn gate(c: &Coend) -> Result<(), TqftError> {
    require_factorizable(c)?;
    require_anomaly_free(c)
}

/// `C^•(C)`, the cocyclic module of the coend as a coalgebra.
pub fn coend_cocyclic(c: &Coend, max_level: usize) -> Result<CyclicModule, TqftError> {
    Ok(build_from_coalgebra(&CoalgebraObject::from_coend(c), Rotation::COALGEBRA, max_level)?)
}

/// `A_•(C)`, the cyclic module of the coend as an algebra.
pub fn coend_cyclic(c: &Coend, max_level: usize) -> Result<CyclicModule, TqftError> {
    Ok(build_from_algebra(&AlgebraObject::from_coend(c), Rotation::ALGEBRA, max_level)?)
}

/// The cocyclic RT module, conjugate to `C^•∘Φ`.
pub fn build_rt_cocyclic(c: &Coend, max_level: usize) -> Result<RtModule, TqftError> {
    gate(c)?;
    let reference = coend_cocyclic(c, max_level)?.apply_reindexing()?;
    conjugate(c, reference, "RT∘X^•")
}

/// The cyclic RT module, conjugate to `A_•∘Φ`.
pub fn build_rt_cyclic(c: &Coend, max_level: usize) -> Result<RtModule, TqftError> {
    gate(c)?;
    let reference = coend_cyclic(c, max_level)?.apply_reindexing()?;
    conjugate(c, reference, "RT∘X_•")
}

/// The symbolic value of a generator on the ambient spaces, when there is
/// one: cocyclic `δ_i` inserts the unit and `σ_j` multiplies, cyclic `s_j`
/// inserts the coproduct and `d_i` contracts with the counit.
pub fn textual_value(c: &Coend, chirality: Chirality, t: &Token) -> Option<LinearMap> {
    let d = c.dim();
    match (chirality, *t) {
        (Chirality::Cocyclic, Token::Coface { n, i }) => Some(at_slot(d, i, &c.u, n - i)),
        (Chirality::Cocyclic, Token::Codegeneracy { n, j }) => Some(at_slot(d, j, &c.m, n - j)),
        (Chirality::Cyclic, Token::Codegeneracy { n, j }) => Some(at_slot(d, j, &c.delta, n - j)),
        (Chirality::Cyclic, Token::Coface { n, i }) => Some(at_slot(d, i, &c.eps, n - i)),
        (_, Token::Cyclic { .. }) => None,
    }
}

/// Whether the text states `t` symbolically. The extremal (co)faces are
/// drawn, not written, so only the middle range counts.
pub fn is_textual(t: &Token) -> bool {
    match *t {
        Token::Coface { n, i } => i >= 1 && i < n,
        Token::Codegeneracy { .. } => true,
        Token::Cyclic { .. } => false,
    }
}

/// Comparisons of RT generators against their symbolic values.
#[derive(Clone, Debug, Default)]
pub struct ShapeReport {
    /// Generators whose value is stated symbolically.
    pub checks: Report,
    /// The extremal (co)faces compared against the same formula. These are
    /// informational: the text gives them only as pictures.
    pub extremal: Report,
}

fn token_label(rt: &RtModule, t: &Token) -> String {
    let what = match (rt.chirality(), t) {
        (Chirality::Cocyclic, Token::Coface { .. }) => "unit insertion",
        (Chirality::Cocyclic, Token::Codegeneracy { .. }) => "multiplication",
        (Chirality::Cyclic, Token::Codegeneracy { .. }) => "coproduct insertion",
        (Chirality::Cyclic, Token::Coface { .. }) => "counit contraction",
        _ => "",
    };
    format!("{} = {what}", t.render_unicode(rt.chirality().direction()))
}

/// Compares every RT generator that has a symbolic value against it, as an
/// exact matrix equality on the invariant spaces.
pub fn shape_checks(rt: &RtModule, max_level: usize) -> ShapeReport {
    let mut out = ShapeReport::default();
    let dir = rt.chirality().direction();
    for t in crate::cyclic_modules::generator_tokens(max_level.min(rt.max_level())) {
        let Some(ambient) = textual_value(&rt.base, rt.chirality(), &t) else { continue };
        let (s, e) = t.ends(dir);
        let (ok, detail) = match (rt.state_spaces[s].restrict(&ambient, &rt.state_spaces[e]), rt.module.gen(&t)) {
            (Ok(m), Ok(g)) => (m == *g, String::new()),
            (Err(e), _) => (false, e.to_string()),
            (_, Err(e)) => (false, e.to_string()),
        };
        let rep = if is_textual(&t) { &mut out.checks } else { &mut out.extremal };
        rep.push(token_label(rt, &t), ok, detail);
    }
    out
}

/// `α^m ∘ A(g) = B(g) ∘ α^n` for every generator `g: n -> m` of two modules
/// of the same chirality.
pub fn naturality_squares(a: &CyclicModule, b: &CyclicModule, alpha: &[LinearMap], max_level: usize) -> Vec<(Token, bool)> {
    let dir = a.chirality.direction();
    let top = max_level.min(a.max_level()).min(b.max_level()).min(alpha.len().saturating_sub(1));
    crate::cyclic_modules::generator_tokens(top)
        .into_iter()
        .map(|t| {
            let (s, e) = t.ends(dir);
            let ok = match (a.gen(&t), b.gen(&t)) {
                (Ok(x), Ok(y)) => alpha[e].after(x) == y.after(&alpha[s]),
                _ => false,
            };
            (t, ok)
        })
        .collect()
}

/// Machine check of the isomorphism `RT∘X^• ≅ C^•∘Φ` and its cyclic-dual
/// form, with the negative control.
pub fn verify_main_theorem(c: &Coend, max_level: usize) -> Result<Report, TqftError> {
    let mut rep = Report::default();
    let rt = build_rt_cocyclic(c, max_level)?;
    let dir = rt.chirality().direction();

    for n in 0..=max_level {
        let (a, b) = matches_vn(c, n);
        rep.push(format!("dim Hom(1, C^⊗{}) = dim V_{}", n + 1, n + 1), a == b, format!("{a} vs {b}"));
    }
    let rel = rt.module.check_relations(max_level);
    rep.push("RT cocyclic relations", rel.passed(), rel.failures.join("; "));
    rep.push("RT(τ_0) = id", rt.module.gen(&Token::Cyclic { n: 0, k: 1 })?.is_identity(), "");
    for n in 0..=max_level {
        let t = rt.module.gen(&Token::Cyclic { n, k: 1 })?;
        rep.push(format!("RT(τ_{n})^{} = id", n + 1), t.pow(n + 1).is_identity(), "");
    }

    for (t, ok) in naturality_squares(&rt.module, &rt.reference, &rt.omega_maps, max_level) {
        rep.push(format!("square {}", t.render_unicode(dir)), ok, "");
    }
    // The non-circular squares: the RT side is the symbolic value.
    for t in crate::cyclic_modules::generator_tokens(max_level) {
        if !is_textual(&t) {
            continue;
        }
        let (s, e) = t.ends(dir);
        let ambient = textual_value(c, rt.chirality(), &t).expect("textual");
        let ok = match rt.state_spaces[s].restrict(&ambient, &rt.state_spaces[e]) {
            Ok(m) => rt.omega_maps[e].after(&m) == rt.reference.gen(&t)?.after(&rt.omega_maps[s]),
            Err(_) => false,
        };
        rep.push(format!("square {} with the symbolic RT side", t.render_unicode(dir)), ok, "");
    }

    // RT∘X^•∘Φ∘L against C^•∘L.
    let lhs = rt.module.apply_reindexing()?.apply_cyclic_duality()?;
    let rhs = coend_cocyclic(c, max_level)?.apply_cyclic_duality()?;
    let bad: Vec<String> = naturality_squares(&lhs, &rhs, &rt.omega_maps, max_level)
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(t, _)| t.render_unicode(lhs.chirality.direction()))
        .collect();
    rep.push("dual comparison RT∘X^•∘Φ∘L ≅ C^•∘L", bad.is_empty(), bad.join(", "));

    let shapes = shape_checks(&rt, max_level);
    rep.extend(shapes.checks);
    let cyc = build_rt_cyclic(c, max_level)?;
    let rel = cyc.module.check_relations(max_level);
    rep.push("RT cyclic relations", rel.passed(), rel.failures.join("; "));
    rep.extend(shape_checks(&cyc, max_level).checks);

    // Negative control: against C^• itself the τ squares must break as soon
    // as some τ_n differs from its inverse.
    let plain = coend_cocyclic(c, max_level)?;
    let squares = naturality_squares(&rt.module, &plain, &rt.omega_maps, max_level);
    let involutive = (0..=max_level).all(|n| plain.gen(&Token::Cyclic { n, k: 1 }).map(|t| t.pow(2).is_identity()).unwrap_or(true));
    let broken: Vec<String> = squares
        .iter()
        .filter(|(t, ok)| matches!(t, Token::Cyclic { .. }) && !ok)
        .map(|(t, _)| t.render_unicode(dir))
        .collect();
    let detail = if involutive { "every τ_n is an involution, so the control is vacuous".to_string() } else { format!("broken: {}", broken.join(", ")) };
    rep.push("negative control: Φ replaced by id breaks a τ square", involutive || !broken.is_empty(), detail);
    Ok(rep)
}
