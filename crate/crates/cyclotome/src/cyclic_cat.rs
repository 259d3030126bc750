//! The simplicial, cyclic, r-cyclic and paracyclic categories.
//!
//! A morphism `n -> m` is modelled by a nondecreasing map `f: Z -> Z` with
//! `f(x + n + 1) = f(x) + m + 1`, stored as its values on `0..=n`. The
//! variants differ only in which target translations are identified:
//!
//! * simplicial: none, and values must lie in `0..=m`;
//! * cyclic: translation by `m + 1`;
//! * r-cyclic: translation by `r(m + 1)`;
//! * paracyclic: none.
//!
//! The generators are `δ_i^n` (skip `i`), `σ_j^n` (hit `j` twice) and
//! `τ_n: x ↦ x - 1`. Words are written in composition order: the rightmost
//! token is applied first.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Simplicial,
    Cyclic,
    RCyclic(u32),
    Paracyclic,
}

impl Variant {
    /// The period of target translations that are identified, if any.
    fn quotient(&self, m: usize) -> Option<i64> {
        match self {
            Variant::Simplicial | Variant::Paracyclic => None,
            Variant::Cyclic => Some(m as i64 + 1),
            Variant::RCyclic(r) => Some(*r as i64 * (m as i64 + 1)),
        }
    }

    /// Order of `τ_n`, when finite.
    pub fn tau_order(&self, n: usize) -> Option<i64> {
        match self {
            Variant::Simplicial => Some(1),
            Variant::Cyclic => Some(n as i64 + 1),
            Variant::RCyclic(r) => Some(*r as i64 * (n as i64 + 1)),
            Variant::Paracyclic => None,
        }
    }

    pub fn has_tau(&self) -> bool {
        !matches!(self, Variant::Simplicial)
    }

    pub fn name(&self) -> String {
        match self {
            Variant::Simplicial => "simplicial".into(),
            Variant::Cyclic => "cyclic".into(),
            Variant::RCyclic(r) => format!("{r}-cyclic"),
            Variant::Paracyclic => "paracyclic".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("not a morphism: {0}")]
    BadMap(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicMap {
    variant: Variant,
    source: usize,
    target: usize,
    values: Vec<i64>,
}

impl CyclicMap {
    /// Validates monotonicity and equivariance, then picks the canonical
    /// representative of the translation class.
    pub fn new(variant: Variant, source: usize, target: usize, values: Vec<i64>) -> Result<CyclicMap, CatError> {
        if values.len() != source + 1 {
            return Err(CatError::BadMap(format!("need {} values, got {}", source + 1, values.len())));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(CatError::BadMap(format!("{values:?} is not nondecreasing")));
        }
        let period = target as i64 + 1;
        if variant == Variant::Simplicial {
            if values.iter().any(|&v| v < 0 || v > target as i64) {
                return Err(CatError::BadMap(format!("{values:?} leaves 0..={target}")));
            }
        } else if values[source] > values[0] + period {
            return Err(CatError::BadMap(format!("{values:?} is not extendable equivariantly")));
        }
        let mut values = values;
        if let Some(q) = variant.quotient(target) {
            let shift = values[0].div_euclid(q) * q;
            for v in values.iter_mut() {
                *v -= shift;
            }
        }
        Ok(CyclicMap { variant, source, target, values })
    }

    pub fn identity(variant: Variant, n: usize) -> CyclicMap {
        CyclicMap { variant, source: n, target: n, values: (0..=n as i64).collect() }
    }

    /// `δ_i^n: n-1 -> n`, the increasing map missing `i`.
    pub fn coface(variant: Variant, n: usize, i: usize) -> Result<CyclicMap, CatError> {
        if n == 0 || i > n {
            return Err(CatError::BadMap(format!("no coface d{i} at level {n}")));
        }
        let vals = (0..n as i64).map(|x| if x < i as i64 { x } else { x + 1 }).collect();
        CyclicMap::new(variant, n - 1, n, vals)
    }

    /// `σ_j^n: n+1 -> n`, hitting `j` twice.
    pub fn codegeneracy(variant: Variant, n: usize, j: usize) -> Result<CyclicMap, CatError> {
        if j > n {
            return Err(CatError::BadMap(format!("no codegeneracy s{j} at level {n}")));
        }
        let vals = (0..=n as i64 + 1).map(|x| if x <= j as i64 { x } else { x - 1 }).collect();
        CyclicMap::new(variant, n + 1, n, vals)
    }

    /// `τ_n^k`.
    pub fn cyclic(variant: Variant, n: usize, k: i64) -> Result<CyclicMap, CatError> {
        if !variant.has_tau() {
            return Err(CatError::BadMap("the simplicial category has no cyclic operator".into()));
        }
        CyclicMap::new(variant, n, n, (0..=n as i64).map(|x| x - k).collect())
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The equivariant extension at any integer.
    pub fn eval(&self, x: i64) -> i64 {
        let p = self.source as i64 + 1;
        let q = x.div_euclid(p);
        self.values[x.rem_euclid(p) as usize] + q * (self.target as i64 + 1)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &CyclicMap) -> Result<CyclicMap, CatError> {
        if self.variant != f.variant {
            return Err(CatError::NotComposable("different variants".into()));
        }
        if f.target != self.source {
            return Err(CatError::NotComposable(format!("{} -> {} then {} -> {}", f.source, f.target, self.source, self.target)));
        }
        let vals = (0..=f.source as i64).map(|x| self.eval(f.eval(x))).collect();
        CyclicMap::new(self.variant, f.source, self.target, vals)
    }

    pub fn is_identity(&self) -> bool {
        *self == CyclicMap::identity(self.variant, self.source)
    }

    /// Unique factorization `f = δ_{i_1}⋯δ_{i_s} σ_{j_1}⋯σ_{j_t} τ^k` with
    /// `i_1 > ⋯ > i_s`, `j_1 < ⋯ < j_t` and `k` reduced modulo the order of
    /// `τ_n` (any integer in the paracyclic case).
    pub fn normal_form(&self) -> NormalForm {
        let (n, m) = (self.source, self.target);
        let k = if self.variant == Variant::Simplicial {
            0
        } else {
            // Smallest x with f(x) >= 0 makes f(x + .) land in 0..=m.
            let p = n as i64 + 1;
            let mut x = -(self.values[0].div_euclid(m as i64 + 1) + 1) * p;
            while self.eval(x) < 0 {
                x += 1;
            }
            while self.eval(x - 1) >= 0 {
                x -= 1;
            }
            x
        };
        let mono: Vec<i64> = (0..=n as i64).map(|y| self.eval(y + k)).collect();
        let mut faces: Vec<usize> = (0..=m as i64).filter(|v| !mono.contains(v)).map(|v| v as usize).collect();
        faces.reverse();
        let degens: Vec<usize> = (0..n).filter(|&j| mono[j] == mono[j + 1]).collect();
        let rotation = match self.variant.tau_order(n) {
            Some(o) => k.rem_euclid(o),
            None => k,
        };
        NormalForm { source: n, target: m, faces, degens, rotation }
    }

    pub fn to_word(&self) -> GeneratorWord {
        self.normal_form().to_word()
    }
}

impl fmt::Display for CyclicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", vals.join(","))?;
        match self.variant.quotient(self.target) {
            Some(q) => write!(f, " mod {q}"),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub source: usize,
    pub target: usize,
    /// Missing values of the simplicial part, decreasing.
    pub faces: Vec<usize>,
    /// Positions `j` with `g(j) = g(j + 1)`, increasing.
    pub degens: Vec<usize>,
    pub rotation: i64,
}

impl NormalForm {
    pub fn to_word(&self) -> GeneratorWord {
        let mut tokens = Vec::new();
        let mut level = self.target;
        for &i in &self.faces {
            tokens.push(Token::Coface { n: level, i });
            level -= 1;
        }
        for &j in &self.degens {
            tokens.push(Token::Codegeneracy { n: level, j });
            level += 1;
        }
        debug_assert_eq!(level, self.source);
        if self.rotation != 0 {
            tokens.push(Token::Cyclic { n: self.source, k: self.rotation });
        }
        GeneratorWord { direction: Direction::Covariant, source: self.source, tokens }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Tokens are `δ_i^n`, `σ_j^n`, `τ_n^k` in the category itself.
    Covariant,
    /// Tokens are `d_i^n`, `s_j^n`, `t_n^k` in the opposite category; `d_i^n`
    /// is the opposite of `δ_i^n` and so on.
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Coface { n: usize, i: usize },
    Codegeneracy { n: usize, j: usize },
    Cyclic { n: usize, k: i64 },
}

impl Token {
    /// Source and target in the covariant reading.
    pub fn covariant_ends(&self) -> (usize, usize) {
        match *self {
            Token::Coface { n, .. } => (n - 1, n),
            Token::Codegeneracy { n, .. } => (n + 1, n),
            Token::Cyclic { n, .. } => (n, n),
        }
    }

    pub fn ends(&self, dir: Direction) -> (usize, usize) {
        let (s, t) = self.covariant_ends();
        match dir {
            Direction::Covariant => (s, t),
            Direction::Contravariant => (t, s),
        }
    }

    pub fn to_map(&self, variant: Variant) -> Result<CyclicMap, CatError> {
        match *self {
            Token::Coface { n, i } => CyclicMap::coface(variant, n, i),
            Token::Codegeneracy { n, j } => CyclicMap::codegeneracy(variant, n, j),
            Token::Cyclic { n, k } => CyclicMap::cyclic(variant, n, k),
        }
    }

    pub fn render_unicode(&self, dir: Direction) -> String {
        let (d, s, t) = match dir {
            Direction::Covariant => ("δ", "σ", "τ"),
            Direction::Contravariant => ("d", "s", "t"),
        };
        match *self {
            Token::Coface { n, i } => format!("{d}_{i}^{n}"),
            Token::Codegeneracy { n, j } => format!("{s}_{j}^{n}"),
            Token::Cyclic { n, k: 1 } => format!("{t}_{n}"),
            Token::Cyclic { n, k } => format!("{t}_{n}^{k}"),
        }
    }

    pub fn render_ascii(&self) -> String {
        match *self {
            Token::Coface { i, .. } => format!("d{i}"),
            Token::Codegeneracy { j, .. } => format!("s{j}"),
            Token::Cyclic { k: 1, .. } => "t".into(),
            Token::Cyclic { k, .. } => format!("t^{k}"),
        }
    }
}

/// A composable list of generator tokens, rightmost applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub direction: Direction,
    /// Needed to type the empty word.
    pub source: usize,
    pub tokens: Vec<Token>,
}

impl GeneratorWord {
    pub fn identity(direction: Direction, n: usize) -> GeneratorWord {
        GeneratorWord { direction, source: n, tokens: Vec::new() }
    }

    pub fn new(direction: Direction, tokens: Vec<Token>) -> Result<GeneratorWord, CatError> {
        let source = tokens.last().ok_or_else(|| CatError::Parse("empty word needs a level".into()))?.ends(direction).0;
        let w = GeneratorWord { direction, source, tokens };
        w.target()?;
        Ok(w)
    }

    pub fn target(&self) -> Result<usize, CatError> {
        let mut level = self.source;
        for t in self.tokens.iter().rev() {
            let (s, e) = t.ends(self.direction);
            if s != level {
                return Err(CatError::NotComposable(format!("{} expects level {s}, found {level}", t.render_unicode(self.direction))));
            }
            level = e;
        }
        Ok(level)
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().copied());
        GeneratorWord { direction: self.direction, source: other.source, tokens }
    }

    /// The underlying morphism of the category. A contravariant word is read
    /// in the opposite category, so its underlying map is the reversed
    /// composite.
    pub fn interpret(&self, variant: Variant) -> Result<CyclicMap, CatError> {
        let target = self.target()?;
        let maps: Vec<CyclicMap> = self.tokens.iter().map(|t| t.to_map(variant)).collect::<Result<_, _>>()?;
        match self.direction {
            Direction::Covariant => {
                let mut acc = CyclicMap::identity(variant, self.source);
                for m in maps.iter().rev() {
                    acc = m.compose(&acc)?;
                }
                Ok(acc)
            }
            Direction::Contravariant => {
                let mut acc = CyclicMap::identity(variant, target);
                for m in maps.iter() {
                    acc = m.compose(&acc)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn render_unicode(&self) -> String {
        if self.tokens.is_empty() {
            return format!("id_{}", self.source);
        }
        self.tokens.iter().map(|t| t.render_unicode(self.direction)).collect::<Vec<_>>().join(" ")
    }

    pub fn render_ascii(&self) -> String {
        let target = self.target().unwrap_or(self.source);
        if self.tokens.is_empty() {
            return "id".into();
        }
        let body: Vec<String> = self.tokens.iter().map(Token::render_ascii).collect();
        format!("{} : {}->{}", body.join("."), self.source, target)
    }

    /// Parses `d2.s0.t^3 : 3->4` (levels inferred from the source) or
    /// `d2^4.t_3^3` (explicit levels; `^` on `t` is an exponent).
    pub fn parse(text: &str, direction: Direction) -> Result<GeneratorWord, CatError> {
        let (body, ends) = match text.split_once(':') {
            Some((b, e)) => (b.trim(), Some(e.trim())),
            None => (text.trim(), None),
        };
        let declared = match ends {
            Some(e) => {
                let e = e.replace('→', "->");
                let (s, t) = e.split_once("->").ok_or_else(|| CatError::Parse(format!("expected n->m, got {e:?}")))?;
                let p = |x: &str| x.trim().parse::<usize>().map_err(|_| CatError::Parse(format!("bad level {x:?}")));
                Some((p(s)?, p(t)?))
            }
            None => None,
        };
        if body == "id" || body.is_empty() {
            let (s, t) = declared.ok_or_else(|| CatError::Parse("identity needs n->n".into()))?;
            if s != t {
                return Err(CatError::Parse("identity must have equal ends".into()));
            }
            return Ok(GeneratorWord::identity(direction, s));
        }
        let raw: Vec<RawToken> = body.split(['.', ' ', '∘']).filter(|s| !s.is_empty()).map(RawToken::parse).collect::<Result<_, _>>()?;
        let mut level = declared.map(|(s, _)| s);
        let mut tokens = Vec::with_capacity(raw.len());
        for r in raw.iter().rev() {
            let tok = r.resolve(level, direction)?;
            let (s, t) = tok.ends(direction);
            if let Some(l) = level {
                if l != s {
                    return Err(CatError::NotComposable(format!("{} expects level {s}, found {l}", tok.render_unicode(direction))));
                }
            }
            level = Some(t);
            tokens.push(tok);
        }
        tokens.reverse();
        let w = GeneratorWord::new(direction, tokens)?;
        if let Some((s, t)) = declared {
            if w.source != s || w.target()? != t {
                return Err(CatError::NotComposable(format!("word runs {}->{}, declared {s}->{t}", w.source, w.target()?)));
            }
        }
        Ok(w)
    }
}

struct RawToken {
    kind: char,
    index: Option<usize>,
    level: Option<usize>,
    exponent: i64,
}

impl RawToken {
    fn parse(s: &str) -> Result<RawToken, CatError> {
        let err = || CatError::Parse(format!("bad token {s:?}"));
        let mut chars = s.chars();
        let kind = match chars.next().ok_or_else(err)? {
            'd' | 'δ' => 'd',
            's' | 'σ' => 's',
            't' | 'τ' => 't',
            _ => return Err(err()),
        };
        let rest: String = chars.collect();
        let (head, sup) = match rest.split_once('^') {
            Some((h, e)) => (h.to_string(), Some(e.trim_matches(|c| c == '{' || c == '}').to_string())),
            None => (rest.clone(), None),
        };
        let (idx_part, sub) = match head.split_once('_') {
            Some((a, b)) => (a.to_string(), Some(b.to_string())),
            None => (head.clone(), None),
        };
        let num = |x: &str| x.parse::<usize>().map_err(|_| err());
        let mut tok = RawToken { kind, index: None, level: None, exponent: 1 };
        if kind == 't' {
            if !idx_part.is_empty() {
                return Err(err());
            }
            tok.level = sub.as_deref().map(num).transpose()?;
            if let Some(e) = sup {
                tok.exponent = e.parse().map_err(|_| err())?;
            }
        } else {
            // Both `d2^4` and `d_2^4` are accepted.
            let idx = if idx_part.is_empty() { sub.ok_or_else(err)? } else { idx_part };
            tok.index = Some(num(&idx)?);
            tok.level = sup.as_deref().map(num).transpose()?;
        }
        Ok(tok)
    }

    fn resolve(&self, source: Option<usize>, dir: Direction) -> Result<Token, CatError> {
        let need = || CatError::Parse("cannot infer the level; give a source with ': n->m' or a superscript".into());
        let cov = dir == Direction::Covariant;
        Ok(match self.kind {
            'd' => {
                let i = self.index.unwrap();
                let n = match self.level {
                    Some(n) => n,
                    None => {
                        let s = source.ok_or_else(need)?;
                        if cov {
                            s + 1
                        } else {
                            s
                        }
                    }
                };
                if n == 0 || i > n {
                    return Err(CatError::Parse(format!("no d{i} at level {n}")));
                }
                Token::Coface { n, i }
            }
            's' => {
                let j = self.index.unwrap();
                let n = match self.level {
                    Some(n) => n,
                    None => {
                        let s = source.ok_or_else(need)?;
                        if cov {
                            s.checked_sub(1).ok_or_else(|| CatError::Parse("no codegeneracy out of level 0".into()))?
                        } else {
                            s
                        }
                    }
                };
                if j > n {
                    return Err(CatError::Parse(format!("no s{j} at level {n}")));
                }
                Token::Codegeneracy { n, j }
            }
            _ => Token::Cyclic { n: self.level.or(source).ok_or_else(need)?, k: self.exponent },
        })
    }
}

/// A defining relation `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: GeneratorWord,
    pub rhs: GeneratorWord,
}

fn cov(tokens: Vec<Token>) -> GeneratorWord {
    GeneratorWord::new(Direction::Covariant, tokens).expect("well-typed relation")
}

fn id(n: usize) -> GeneratorWord {
    GeneratorWord::identity(Direction::Covariant, n)
}

use Token::{Coface as D, Codegeneracy as S, Cyclic as T};

/// Every instance of the defining relations of `variant` whose objects all
/// lie in `0..=max_level`.
pub fn relation_instances(variant: Variant, max_level: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let mut push = |name: String, lhs: GeneratorWord, rhs: GeneratorWord| out.push(Relation { name, lhs, rhs });
    let top = max_level;
    // δ_j δ_i = δ_i δ_{j-1}, i < j, as maps n-1 -> n+1.
    for n in 1..top {
        for j in 0..=n + 1 {
            for i in 0..j {
                push(
                    format!("dd n={n} i={i} j={j}"),
                    cov(vec![D { n: n + 1, i: j }, D { n, i }]),
                    cov(vec![D { n: n + 1, i }, D { n, i: j - 1 }]),
                );
            }
        }
    }
    // σ_j σ_i = σ_i σ_{j+1}, i <= j, as maps n+2 -> n.
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                push(
                    format!("ss n={n} i={i} j={j}"),
                    cov(vec![S { n, j }, S { n: n + 1, j: i }]),
                    cov(vec![S { n, j: i }, S { n: n + 1, j: j + 1 }]),
                );
            }
        }
    }
    // σ_j δ_i as maps n -> n, through level n+1.
    for n in 0..top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = cov(vec![S { n, j }, D { n: n + 1, i }]);
                let rhs = if i < j {
                    cov(vec![D { n, i }, S { n: n - 1, j: j - 1 }])
                } else if i == j || i == j + 1 {
                    id(n)
                } else {
                    cov(vec![D { n, i: i - 1 }, S { n: n - 1, j }])
                };
                push(format!("sd n={n} i={i} j={j}"), lhs, rhs);
            }
        }
    }
    if !variant.has_tau() {
        return out;
    }
    for n in 1..=top {
        for i in 1..=n {
            push(
                format!("td n={n} i={i}"),
                cov(vec![T { n, k: 1 }, D { n, i }]),
                cov(vec![D { n, i: i - 1 }, T { n: n - 1, k: 1 }]),
            );
        }
        push(format!("td0 n={n}"), cov(vec![T { n, k: 1 }, D { n, i: 0 }]), cov(vec![D { n, i: n }]));
    }
    for n in 0..top {
        for i in 1..=n {
            push(
                format!("ts n={n} i={i}"),
                cov(vec![T { n, k: 1 }, S { n, j: i }]),
                cov(vec![S { n, j: i - 1 }, T { n: n + 1, k: 1 }]),
            );
        }
        push(
            format!("ts0 n={n}"),
            cov(vec![T { n, k: 1 }, S { n, j: 0 }]),
            cov(vec![S { n, j: n }, T { n: n + 1, k: 1 }, T { n: n + 1, k: 1 }]),
        );
    }
    if variant.tau_order(0).is_some() {
        for n in 0..=top {
            let o = variant.tau_order(n).unwrap();
            push(format!("tau order n={n}"), cov(vec![T { n, k: 1 }; o as usize]), id(n));
        }
    }
    out
}

/// Relations of the opposite category: reversed words.
pub fn opposite_relation_instances(variant: Variant, max_level: usize) -> Vec<Relation> {
    relation_instances(variant, max_level)
        .into_iter()
        .map(|r| {
            let flip = |w: GeneratorWord| {
                let target = w.target().unwrap();
                let mut tokens = w.tokens;
                tokens.reverse();
                GeneratorWord { direction: Direction::Contravariant, source: target, tokens }
            };
            Relation { name: r.name, lhs: flip(r.lhs), rhs: flip(r.rhs) }
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every defining relation in the combinatorial model.
pub fn relation_suite(variant: Variant, max_level: usize) -> RelationReport {
    let mut rep = RelationReport::default();
    for r in relation_instances(variant, max_level) {
        rep.checked += 1;
        match (r.lhs.interpret(variant), r.rhs.interpret(variant)) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => rep.failures.push(format!("{}: {:?} vs {:?}", r.name, a, b)),
        }
    }
    rep
}

fn nondecreasing(len: usize, lo: i64, hi: i64, out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().copied().unwrap_or(lo);
    for v in start..=hi {
        cur.push(v);
        nondecreasing(len, lo, hi, out, cur);
        cur.pop();
    }
}

/// All morphisms `n -> m`; the paracyclic category has infinitely many.
pub fn hom_set(n: usize, m: usize, variant: Variant) -> Result<Vec<CyclicMap>, CatError> {
    let mut out = Vec::new();
    match variant {
        Variant::Paracyclic => return Err(CatError::Unsupported("paracyclic hom sets are infinite".into())),
        Variant::Simplicial => {
            let mut seqs = Vec::new();
            nondecreasing(n + 1, 0, m as i64, &mut seqs, &mut Vec::new());
            for s in seqs {
                out.push(CyclicMap::new(variant, n, m, s)?);
            }
        }
        _ => {
            let q = variant.quotient(m).unwrap();
            let p = m as i64 + 1;
            for a in 0..q {
                let mut seqs = Vec::new();
                nondecreasing(n, a, a + p, &mut seqs, &mut Vec::new());
                for mut s in seqs {
                    s.insert(0, a);
                    out.push(CyclicMap::new(variant, n, m, s)?);
                }
            }
        }
    }
    Ok(out)
}

pub fn hom_count(n: usize, m: usize, variant: Variant) -> Result<usize, CatError> {
    Ok(hom_set(n, m, variant)?.len())
}

/// Checks that the normal form is a bijection between `Hom(n, m)` and
/// `Hom_Δ(n, m) × Aut(n)`.
pub fn check_factorization_bijection(n: usize, m: usize, variant: Variant) -> Result<bool, CatError> {
    let homs = hom_set(n, m, variant)?;
    let simp = hom_count(n, m, Variant::Simplicial)?;
    let order = variant.tau_order(n).unwrap_or(1) as usize;
    if homs.len() != simp * order {
        return Ok(false);
    }
    let mut seen = std::collections::HashSet::new();
    for f in &homs {
        let nf = f.normal_form();
        if !seen.insert((nf.faces.clone(), nf.degens.clone(), nf.rotation)) {
            return Ok(false);
        }
        if nf.to_word().interpret(variant)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The duality functor from the opposite of the cyclic category to the
/// cyclic category: `d_i ↦ σ_i` (i < n), `d_n ↦ σ_0 τ_n^{-1}`,
/// `s_j ↦ δ_{j+1}`, `t_n ↦ τ_n^{-1}`. The input must be contravariant.
pub fn dualize_l(word: &GeneratorWord) -> Result<GeneratorWord, CatError> {
    if word.direction != Direction::Contravariant {
        return Err(CatError::Unsupported("duality takes a word in the opposite category".into()));
    }
    let mut tokens = Vec::new();
    for t in &word.tokens {
        match *t {
            D { n, i } if i < n => tokens.push(S { n: n - 1, j: i }),
            D { n, .. } => {
                tokens.push(S { n: n - 1, j: 0 });
                tokens.push(T { n, k: -1 });
            }
            S { n, j } => tokens.push(D { n: n + 1, i: j + 1 }),
            T { n, k } => tokens.push(T { n, k: -k }),
        }
    }
    if tokens.is_empty() {
        return Ok(GeneratorWord::identity(Direction::Covariant, word.target()?));
    }
    GeneratorWord::new(Direction::Covariant, tokens)
}

/// The reindexing automorphism `δ_i ↦ δ_{n-i}`, `σ_j ↦ σ_{n-j}`, `τ ↦ τ^{-1}`.
pub fn reindex_phi(word: &GeneratorWord) -> GeneratorWord {
    let tokens = word
        .tokens
        .iter()
        .map(|t| match *t {
            D { n, i } => D { n, i: n - i },
            S { n, j } => S { n, j: n - j },
            T { n, k } => T { n, k: -k },
        })
        .collect();
    GeneratorWord { direction: word.direction, source: word.source, tokens }
}

/// Checks that the duality functor respects every relation of the opposite
/// category up to `max_level`.
pub fn check_duality_well_defined(variant: Variant, max_level: usize) -> RelationReport {
    let mut rep = RelationReport::default();
    for r in opposite_relation_instances(variant, max_level) {
        rep.checked += 1;
        let l = dualize_l(&r.lhs).and_then(|w| w.interpret(variant));
        let rr = dualize_l(&r.rhs).and_then(|w| w.interpret(variant));
        match (l, rr) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => rep.failures.push(format!("{}: {:?} vs {:?}", r.name, a, b)),
        }
    }
    rep
}

/// Checks `Φ∘Φ = id` on generators and that `Φ` respects the relations.
pub fn check_phi(variant: Variant, max_level: usize) -> RelationReport {
    let mut rep = RelationReport::default();
    for r in relation_instances(variant, max_level) {
        rep.checked += 1;
        for w in [&r.lhs, &r.rhs] {
            if reindex_phi(&reindex_phi(w)) != *w {
                rep.failures.push(format!("{}: Φ∘Φ differs", r.name));
            }
        }
        let a = reindex_phi(&r.lhs).interpret(variant);
        let b = reindex_phi(&r.rhs).interpret(variant);
        if a.is_err() || a != b {
            rep.failures.push(format!("{}: Φ breaks the relation", r.name));
        }
    }
    rep
}
