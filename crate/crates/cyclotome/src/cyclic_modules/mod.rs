//! (Co)cyclic, paracyclic and r-cyclic modules stored by their generators.
//!
//! A cocyclic module is a covariant functor out of the cyclic category, a
//! cyclic module a contravariant one. Either is determined by the images of
//! the generating tokens (see [`crate::cyclic_cat`]) subject to the defining
//! relations, so that is all a [`CyclicModule`] stores: one based space per
//! level and one matrix per generator. The keys are the tokens themselves;
//! for a cyclic module `Coface { n, i }` stands for the face `d_i^n`, which
//! maps level `n` to level `n - 1`.

mod generic;
mod w_model;

pub use generic::{
    build_from_algebra, build_from_coalgebra, build_paracocyclic, build_paracyclic, contracting_homotopy, pin_algebra_rotation,
    pin_coalgebra_rotation, r_cyclic_from_simple, rotations_with_twist_law, AlgebraObject, Braid, CoalgebraObject, Homotopy, ParaObject, RCyclicModule,
    Rotation, Side, Twist,
};
pub use w_model::{
    build_w_cocyclic, build_w_cocyclic_with, build_w_cyclic, build_w_cyclic_with, right_coadjoint_module, vn_basis, VnSpace,
    WCoConvention, WConvention,
};

use crate::coend::CoendError;
use crate::cyclic_cat::{
    dualize_l, opposite_relation_instances, reindex_phi, relation_instances, CatError, CyclicMap, Direction, GeneratorWord,
    RelationReport, Token, Variant,
};
use crate::linalg::{Field, LinalgError, LinearMap, Subspace, TensorShape};
use serde_json::{json, Value};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("{0}: the image leaves the target space")]
    ImageLeaves(String),
    #[error("no convention for {0} passes its checks")]
    NoConvention(String),
    #[error("missing generator {0}")]
    Missing(String),
    #[error("level {0} is not built")]
    Level(usize),
    #[error("the cyclic operator at level {0} is not invertible")]
    NotInvertible(usize),
    #[error("{0}")]
    Precondition(String),
    #[error("bad module data: {0}")]
    Data(String),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Coend(#[from] CoendError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    /// Contravariant: faces lower the level.
    Cyclic,
    /// Covariant: cofaces raise the level.
    Cocyclic,
}

impl Chirality {
    pub fn direction(self) -> Direction {
        match self {
            Chirality::Cyclic => Direction::Contravariant,
            Chirality::Cocyclic => Direction::Covariant,
        }
    }

    pub fn flip(self) -> Chirality {
        match self {
            Chirality::Cyclic => Chirality::Cocyclic,
            Chirality::Cocyclic => Chirality::Cyclic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chirality::Cyclic => "cyclic",
            Chirality::Cocyclic => "cocyclic",
        }
    }
}

/// The generating tokens with all objects in `0..=max_level`, `τ` with
/// exponent 1.
pub fn generator_tokens(max_level: usize) -> Vec<Token> {
    let mut out = Vec::new();
    for n in 0..=max_level {
        if n >= 1 {
            out.extend((0..=n).map(|i| Token::Coface { n, i }));
        }
        if n < max_level {
            out.extend((0..=n).map(|j| Token::Codegeneracy { n, j }));
        }
        out.push(Token::Cyclic { n, k: 1 });
    }
    out
}

fn token_name(t: &Token, c: Chirality) -> String {
    t.render_unicode(c.direction())
}

#[derive(Clone, Debug)]
pub struct CyclicModule {
    pub variant: Variant,
    pub chirality: Chirality,
    field: Field,
    spaces: Vec<Subspace>,
    gens: HashMap<Token, LinearMap>,
    pub provenance: String,
}

impl CyclicModule {
    pub fn new(variant: Variant, chirality: Chirality, field: &Field, spaces: Vec<Subspace>, provenance: impl Into<String>) -> CyclicModule {
        assert!(!spaces.is_empty(), "a module needs level 0");
        CyclicModule { variant, chirality, field: field.clone(), spaces, gens: HashMap::new(), provenance: provenance.into() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn max_level(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> Result<&Subspace, ModuleError> {
        self.spaces.get(n).ok_or(ModuleError::Level(n))
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces.get(n).map_or(0, Subspace::dim)
    }

    fn normalize_token(t: Token) -> Token {
        match t {
            Token::Cyclic { n, .. } => Token::Cyclic { n, k: 1 },
            t => t,
        }
    }

    /// Source and target levels of a generator in this module.
    fn ends(&self, t: &Token) -> (usize, usize) {
        t.ends(self.chirality.direction())
    }

    /// Stores the matrix of a generator, checking its shape.
    pub fn set(&mut self, t: Token, m: LinearMap) -> Result<(), ModuleError> {
        let t = Self::normalize_token(t);
        let (s, e) = self.ends(&t);
        let (ds, de) = (self.space(s)?.dim(), self.space(e)?.dim());
        if m.cols() != ds || m.rows() != de {
            return Err(ModuleError::Data(format!(
                "{} is {}x{}, expected {de}x{ds}",
                token_name(&t, self.chirality),
                m.rows(),
                m.cols()
            )));
        }
        self.gens.insert(t, m.reshaped(TensorShape::flat(ds), TensorShape::flat(de)));
        Ok(())
    }

    /// Restricts an ambient map to the level spaces and stores it.
    pub fn set_ambient(&mut self, t: Token, ambient: &LinearMap) -> Result<(), ModuleError> {
        let (s, e) = self.ends(&t);
        let m = self.space(s)?.restrict(ambient, self.space(e)?).map_err(|e| match e {
            LinalgError::NotInSubspace => ModuleError::ImageLeaves(token_name(&t, self.chirality)),
            e => e.into(),
        })?;
        self.set(t, m)
    }

    pub fn gen(&self, t: &Token) -> Result<&LinearMap, ModuleError> {
        self.gens.get(&Self::normalize_token(*t)).ok_or_else(|| ModuleError::Missing(token_name(t, self.chirality)))
    }

    pub fn tokens(&self) -> Vec<Token> {
        generator_tokens(self.max_level())
    }

    /// The inverse of the (co)cyclic operator at level `n`. A finite order
    /// is used when the power really is the inverse.
    pub fn cyclic_inverse(&self, n: usize) -> Result<LinearMap, ModuleError> {
        let t = self.gen(&Token::Cyclic { n, k: 1 })?;
        if let Some(o) = self.variant.tau_order(n) {
            let cand = t.pow(o as usize - 1);
            if t.after(&cand).is_identity() {
                return Ok(cand);
            }
        }
        t.inverse().map_err(|_| ModuleError::NotInvertible(n))
    }

    fn token_map(&self, t: &Token) -> Result<LinearMap, ModuleError> {
        match *t {
            Token::Cyclic { k, .. } if k >= 0 => Ok(self.gen(t)?.pow(k as usize)),
            Token::Cyclic { n, k } => Ok(self.cyclic_inverse(n)?.pow((-k) as usize)),
            _ => Ok(self.gen(t)?.clone()),
        }
    }

    /// The image of a word of generators, rightmost token applied first.
    pub fn evaluate_word(&self, w: &GeneratorWord) -> Result<LinearMap, ModuleError> {
        if w.direction != self.chirality.direction() {
            return Err(ModuleError::Precondition(format!("a {} module evaluates {:?} words", self.chirality.name(), self.chirality.direction())));
        }
        let target = w.target()?;
        if target > self.max_level() || w.source > self.max_level() {
            return Err(ModuleError::Level(target.max(w.source)));
        }
        let mut acc = LinearMap::identity(&self.field, TensorShape::flat(self.space(w.source)?.dim()));
        for t in w.tokens.iter().rev() {
            acc = self.token_map(t)?.after(&acc);
        }
        Ok(acc)
    }

    /// The image of a morphism of the category, through its normal form.
    pub fn evaluate_morphism(&self, f: &CyclicMap) -> Result<LinearMap, ModuleError> {
        let w = f.to_word();
        match self.chirality {
            Chirality::Cocyclic => self.evaluate_word(&w),
            Chirality::Cyclic => {
                let mut tokens = w.tokens.clone();
                tokens.reverse();
                self.evaluate_word(&GeneratorWord { direction: Direction::Contravariant, source: f.target(), tokens })
            }
        }
    }

    /// Checks every defining relation of `variant` up to `max_level` (capped
    /// at the built levels) as an exact matrix identity.
    pub fn check_relations_as(&self, variant: Variant, max_level: usize) -> RelationReport {
        let top = max_level.min(self.max_level());
        let rels = match self.chirality {
            Chirality::Cocyclic => relation_instances(variant, top),
            Chirality::Cyclic => opposite_relation_instances(variant, top),
        };
        let mut rep = RelationReport::default();
        for r in rels {
            rep.checked += 1;
            match (self.evaluate_word(&r.lhs), self.evaluate_word(&r.rhs)) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(_), Ok(_)) => rep.failures.push(format!("{}: {} ≠ {}", r.name, r.lhs.render_unicode(), r.rhs.render_unicode())),
                (Err(e), _) | (_, Err(e)) => rep.failures.push(format!("{}: {e}", r.name)),
            }
        }
        rep
    }

    pub fn check_relations(&self, max_level: usize) -> RelationReport {
        self.check_relations_as(self.variant, max_level)
    }

    fn transported(&self, chirality: Chirality, provenance: String, image: impl Fn(&Token) -> Result<GeneratorWord, ModuleError>) -> Result<CyclicModule, ModuleError> {
        let mut out = CyclicModule::new(self.variant, chirality, &self.field, self.spaces.clone(), provenance);
        for t in out.tokens() {
            let m = self.evaluate_word(&image(&t)?)?;
            out.set(t, m)?;
        }
        Ok(out)
    }

    /// Precomposition with the cyclic duality: a cocyclic module `M` becomes
    /// the cyclic module `M∘L`, a cyclic module `M` the cocyclic `M∘L^op`.
    pub fn apply_cyclic_duality(&self) -> Result<CyclicModule, ModuleError> {
        let prov = format!("dual of ({})", self.provenance);
        match self.chirality {
            Chirality::Cocyclic => self.transported(Chirality::Cyclic, prov, |t| {
                let w = GeneratorWord::new(Direction::Contravariant, vec![*t])?;
                Ok(dualize_l(&w)?)
            }),
            Chirality::Cyclic => self.transported(Chirality::Cocyclic, prov, |t| Ok(dual_op(t)?)),
        }
    }

    /// Precomposition with the reindexing involution.
    pub fn apply_reindexing(&self) -> Result<CyclicModule, ModuleError> {
        let dir = self.chirality.direction();
        self.transported(self.chirality, format!("reindexed ({})", self.provenance), |t| {
            Ok(reindex_phi(&GeneratorWord::new(dir, vec![*t])?))
        })
    }

    /// Compares two modules generator by generator, translating bases where
    /// the level spaces have the same span. Returns the differences.
    pub fn differences(&self, o: &CyclicModule) -> Vec<String> {
        let mut out = Vec::new();
        if self.chirality != o.chirality {
            return vec![format!("chirality {} vs {}", self.chirality.name(), o.chirality.name())];
        }
        let top = self.max_level().min(o.max_level());
        let mut change = Vec::new();
        for n in 0..=top {
            let (a, b) = (&self.spaces[n], &o.spaces[n]);
            if !a.same_span(b) {
                out.push(format!("level {n}: spaces differ ({} vs {})", a.dim(), b.dim()));
                return out;
            }
            let cols: Vec<_> = a.basis().iter().map(|v| b.coordinates(v).expect("same span")).collect();
            let p = LinearMap::from_columns(&self.field, TensorShape::flat(a.dim()), TensorShape::flat(b.dim()), cols);
            change.push(p);
        }
        for t in generator_tokens(top) {
            let (s, e) = self.ends(&t);
            match (self.gen(&t), o.gen(&t)) {
                (Ok(x), Ok(y)) => {
                    if y.after(&change[s]) != change[e].after(x) {
                        out.push(format!("{} differs", token_name(&t, self.chirality)));
                    }
                }
                _ => out.push(format!("{} missing", token_name(&t, self.chirality))),
            }
        }
        out
    }

    /// Whether `self(x) = P M(x) P^{-1}` for every generator, with `P` the
    /// family of (co)cyclic operators of `other`. This is how the double
    /// cyclic dual relates to the original.
    pub fn conjugate_of(&self, other: &CyclicModule, power: i64) -> Result<bool, ModuleError> {
        let top = self.max_level().min(other.max_level());
        let p = |n: usize| -> Result<LinearMap, ModuleError> {
            other.evaluate_word(&GeneratorWord::new(other.chirality.direction(), vec![Token::Cyclic { n, k: power }])?)
        };
        for t in generator_tokens(top) {
            let (s, e) = self.ends(&t);
            if self.gen(&t)?.after(&p(s)?) != p(e)?.after(other.gen(&t)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Labeled rendering of one generator: `b_c ↦ Σ x b_r` per column.
    pub fn render(&self, t: &Token) -> Result<String, ModuleError> {
        let m = self.gen(t)?;
        let (s, e) = self.ends(t);
        let mut lines = vec![format!("{} : level {s} (dim {}) -> level {e} (dim {})", token_name(t, self.chirality), m.cols(), m.rows())];
        for c in 0..m.cols() {
            let terms: Vec<String> = m.column(c).iter().map(|(r, x)| format!("{}·b{r}", self.field.render(x))).collect();
            lines.push(format!("  b{c} ↦ {}", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }));
        }
        Ok(lines.join("\n"))
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let levels: Vec<Value> = self
            .spaces
            .iter()
            .map(|s| {
                let basis: Vec<Value> =
                    s.basis().iter().map(|v| Value::Array(v.iter().map(|(i, x)| json!([i, f.render(x)])).collect())).collect();
                json!({"ambient": s.ambient().0, "positions": s.positions(), "basis": basis})
            })
            .collect();
        let gens: Vec<Value> = self.tokens().iter().filter_map(|t| self.gen(t).ok().map(|m| json!({"token": token_json(t), "matrix": m.to_json()}))).collect();
        json!({
            "schema": 1,
            "variant": variant_json(self.variant),
            "chirality": self.chirality.name(),
            "field": f.name(),
            "provenance": self.provenance,
            "levels": levels,
            "generators": gens,
        })
    }

    pub fn from_json(v: &Value) -> Result<CyclicModule, ModuleError> {
        let bad = |m: &str| ModuleError::Data(m.to_string());
        let field = Field::from_name(v.get("field").and_then(Value::as_str).ok_or_else(|| bad("field"))?)?;
        let chirality = match v.get("chirality").and_then(Value::as_str) {
            Some("cyclic") => Chirality::Cyclic,
            Some("cocyclic") => Chirality::Cocyclic,
            _ => return Err(bad("chirality")),
        };
        let variant = variant_from_json(v.get("variant").ok_or_else(|| bad("variant"))?)?;
        let mut spaces = Vec::new();
        for l in v.get("levels").and_then(Value::as_array).ok_or_else(|| bad("levels"))? {
            let ambient: Vec<usize> = l
                .get("ambient")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("ambient"))?
                .iter()
                .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad("ambient")))
                .collect::<Result<_, _>>()?;
            let positions: Vec<usize> = l
                .get("positions")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("positions"))?
                .iter()
                .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad("positions")))
                .collect::<Result<_, _>>()?;
            let mut basis = Vec::new();
            for b in l.get("basis").and_then(Value::as_array).ok_or_else(|| bad("basis"))? {
                let mut vec = Vec::new();
                for e in b.as_array().ok_or_else(|| bad("basis vector"))? {
                    let i = e.get(0).and_then(Value::as_u64).ok_or_else(|| bad("basis index"))? as usize;
                    let x = field.parse(e.get(1).and_then(Value::as_str).ok_or_else(|| bad("basis entry"))?)?;
                    vec.push((i, x));
                }
                basis.push(vec);
            }
            spaces.push(Subspace::from_parts(&field, TensorShape(ambient), basis, positions)?);
        }
        if spaces.is_empty() {
            return Err(bad("no levels"));
        }
        let prov = v.get("provenance").and_then(Value::as_str).unwrap_or("").to_string();
        let mut m = CyclicModule::new(variant, chirality, &field, spaces, prov);
        for g in v.get("generators").and_then(Value::as_array).ok_or_else(|| bad("generators"))? {
            let t = token_from_json(g.get("token").ok_or_else(|| bad("token"))?)?;
            let mat = LinearMap::from_json(&field, g.get("matrix").ok_or_else(|| bad("matrix"))?)?;
            m.set(t, mat)?;
        }
        Ok(m)
    }
}

/// `L^op` on a single covariant token, as a contravariant word.
pub fn dual_op(t: &Token) -> Result<GeneratorWord, CatError> {
    let w = dualize_l(&GeneratorWord::new(Direction::Contravariant, vec![*t])?)?;
    let target = w.target()?;
    let mut tokens = w.tokens;
    tokens.reverse();
    if tokens.is_empty() {
        return Ok(GeneratorWord::identity(Direction::Contravariant, target));
    }
    GeneratorWord::new(Direction::Contravariant, tokens)
}

fn token_json(t: &Token) -> Value {
    match *t {
        Token::Coface { n, i } => json!({"kind": "d", "n": n, "i": i}),
        Token::Codegeneracy { n, j } => json!({"kind": "s", "n": n, "i": j}),
        Token::Cyclic { n, k } => json!({"kind": "t", "n": n, "i": k}),
    }
}

fn token_from_json(v: &Value) -> Result<Token, ModuleError> {
    let bad = || ModuleError::Data(format!("bad token {v}"));
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
    let i = v.get("i").and_then(Value::as_i64).ok_or_else(bad)?;
    match v.get("kind").and_then(Value::as_str) {
        Some("d") if i >= 0 => Ok(Token::Coface { n, i: i as usize }),
        Some("s") if i >= 0 => Ok(Token::Codegeneracy { n, j: i as usize }),
        Some("t") => Ok(Token::Cyclic { n, k: i }),
        _ => Err(bad()),
    }
}

fn variant_json(v: Variant) -> Value {
    match v {
        Variant::Simplicial => json!("simplicial"),
        Variant::Cyclic => json!("cyclic"),
        Variant::Paracyclic => json!("paracyclic"),
        Variant::RCyclic(r) => json!({"r-cyclic": r}),
    }
}

fn variant_from_json(v: &Value) -> Result<Variant, ModuleError> {
    match v {
        Value::String(s) if s == "simplicial" => Ok(Variant::Simplicial),
        Value::String(s) if s == "cyclic" => Ok(Variant::Cyclic),
        Value::String(s) if s == "paracyclic" => Ok(Variant::Paracyclic),
        _ => v
            .get("r-cyclic")
            .and_then(Value::as_u64)
            .map(|r| Variant::RCyclic(r as u32))
            .ok_or_else(|| ModuleError::Data(format!("bad variant {v}"))),
    }
}

/// `id_{left} ⊗ m ⊗ id_{right}` on flat spaces.
pub(crate) fn at_slot(field: &Field, left: usize, m: &LinearMap, right: usize) -> LinearMap {
    let l = LinearMap::identity(field, TensorShape::flat(left));
    let r = LinearMap::identity(field, TensorShape::flat(right));
    let out = l.tensor(m).tensor(&r);
    let (c, rr) = (out.cols(), out.rows());
    out.reshaped(TensorShape::flat(c), TensorShape::flat(rr))
}

/// Moves the last of `k` factors of dimension `d` to the front.
pub(crate) fn rotate_last_to_front(field: &Field, d: usize, k: usize) -> LinearMap {
    let mut perm = vec![k - 1];
    perm.extend(0..k - 1);
    flatten(LinearMap::permutation(field, &TensorShape::power(d, k), &perm))
}

/// Moves the first of `k` factors of dimension `d` to the back.
pub(crate) fn rotate_first_to_back(field: &Field, d: usize, k: usize) -> LinearMap {
    let mut perm: Vec<usize> = (1..k).collect();
    perm.push(0);
    flatten(LinearMap::permutation(field, &TensorShape::power(d, k), &perm))
}

pub(crate) fn flatten(m: LinearMap) -> LinearMap {
    let (c, r) = (m.cols(), m.rows());
    m.reshaped(TensorShape::flat(c), TensorShape::flat(r))
}
