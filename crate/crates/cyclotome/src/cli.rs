//! The `cyclotome` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a builder
//! precondition is not met, 2 for unreadable input or bad arguments.
//! Reports are deterministic. JSON output carries `"schema": 1` and sorted
//! keys. Cache hits and misses go to stderr so stdout does not depend on
//! the cache state.

use crate::coend::{Coend, End};
use crate::cyclic_cat::{
    dualize_l, hom_count, reindex_phi, relation_suite, CatError, Direction, GeneratorWord, Variant,
};
use crate::cyclic_modules::{
    build_from_algebra, build_from_coalgebra, build_paracyclic, build_w_cocyclic, build_w_cyclic, r_cyclic_from_simple, AlgebraObject,
    CoalgebraObject, CyclicModule, Rotation,
};
use crate::homology::HomologyTable;
use crate::hopf::{HopfAlgebra, Report};
use crate::tqft::{shape_checks, verify_main_theorem, TqftError};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cyclotome", version, about = "Exact (co)cyclic modules from coends of ribbon Hopf algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Data file, or the name of a bundled algebra.
    #[arg(long)]
    pub algebra: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CacheArgs {
    /// Cache directory; `CYCLOTOME_CACHE` overrides it.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hopf algebra axioms.
    Hopf {
        #[command(subcommand)]
        action: HopfAction,
    },
    /// The coend and its structural identities.
    Coend {
        #[command(subcommand)]
        action: CoendAction,
    },
    /// Build a (co)cyclic module and check its relations.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Hochschild and cyclic (co)homology dimensions.
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "coend")]
        module: HomologySource,
        #[arg(short = 'N', long = "max-level", default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// The RT (co)cyclic modules and the isomorphism with the coend side.
    Tqft {
        #[command(subcommand)]
        action: TqftAction,
    },
    /// The cyclic category.
    Cat {
        #[command(subcommand)]
        action: CatAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum HopfAction {
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoendAction {
    Build {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
pub enum TqftAction {
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', long = "max-level", default_value_t = 2)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "W")]
    W,
    #[value(name = "Wco")]
    Wco,
    Generic,
    Para,
    Rcyclic,
    Rt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HomologySource {
    /// `C^•` of the coend.
    Coend,
    /// `A_•` of the coend.
    CoendCyclic,
    #[value(name = "W")]
    W,
    #[value(name = "Wco")]
    Wco,
}

#[derive(Subcommand, Debug)]
pub enum ModuleAction {
    Build {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        which: Which,
        /// Top level; defaults to 2 for `rt` and 3 otherwise.
        #[arg(short = 'N', long = "max-level")]
        n: Option<usize>,
        /// Index of the simple module for `rcyclic`; defaults to the first
        /// one whose twist is not 1.
        #[arg(long)]
        simple: Option<usize>,
        #[command(flatten)]
        cache: CacheArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatAction {
    /// Normal form of a covariant word such as `d2.t^3 : 3->4`.
    Nf {
        word: String,
        #[arg(long, default_value = "cyclic")]
        variant: String,
    },
    /// Normal form of `first ∘ second`.
    Compose {
        first: String,
        second: String,
        #[arg(long, default_value = "cyclic")]
        variant: String,
    },
    /// The cyclic duality applied to a word in faces, degeneracies and `t`.
    #[command(name = "L")]
    L { word: String },
    /// The reindexing involution.
    Phi { word: String },
    /// `|Hom(n, m)|` by enumeration.
    Count { n: usize, m: usize, variant: String },
    /// The defining relations up to a level.
    Relations { variant: String, max_level: usize },
}

/// A failure that decides the exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Failed(String),
}

impl From<CatError> for CliError {
    fn from(e: CatError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// A named list of checks plus free-form lines.
#[derive(Default)]
struct Outcome {
    title: String,
    report: Report,
    notes: Vec<String>,
    extra: Vec<(String, Value)>,
    text: Option<String>,
}

impl Outcome {
    fn new(title: impl Into<String>) -> Outcome {
        Outcome { title: title.into(), ..Outcome::default() }
    }

    fn passed(&self) -> bool {
        self.report.passed()
    }

    fn to_json(&self) -> Value {
        let checks: Vec<Value> = self.report.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect();
        let mut v = json!({"schema": 1, "title": self.title, "passed": self.passed(), "checks": checks, "notes": self.notes});
        for (k, x) in &self.extra {
            v[k] = x.clone();
        }
        v
    }

    fn render(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            out += &format!("{}\n", self.title);
        }
        if let Some(t) = self.text.as_ref().filter(|t| !t.is_empty()) {
            out += t;
            if !t.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.report.checks {
            out += &format!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
            if !c.detail.is_empty() {
                out += &format!("  ({})", c.detail);
            }
            out.push('\n');
        }
        for n in &self.notes {
            out += &format!("note {n}\n");
        }
        let (ok, total) = (self.report.checks.iter().filter(|c| c.passed).count(), self.report.checks.len());
        if total > 0 {
            out += &format!("{ok}/{total} checks pass\n");
        }
        out
    }
}

/// Loads a data file, or a bundled algebra when `spec` names one and no
/// such file exists.
pub fn load_algebra(spec: &str) -> Result<(HopfAlgebra, Vec<u8>), CliError> {
    let path = Path::new(spec);
    if !path.exists() && crate::hopf::bundled_names().contains(&spec) {
        let h = crate::hopf::bundled(spec).map_err(|e| CliError::Input(e.to_string()))?;
        return Ok((h, format!("bundled:{spec}").into_bytes()));
    }
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input(format!("{spec}: not UTF-8")))?;
    let h = HopfAlgebra::from_json_str(&text).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    Ok((h, bytes))
}

fn build_coend(h: &HopfAlgebra) -> Result<Coend, CliError> {
    Coend::build(h).map_err(failed)
}

fn parse_variant(s: &str) -> Result<Variant, CliError> {
    let s = s.trim().to_ascii_lowercase();
    let r = |x: &str| x.parse::<u32>().ok().filter(|&r| r >= 1).map(Variant::RCyclic);
    let v = match s.as_str() {
        "simplicial" | "delta" => Some(Variant::Simplicial),
        "cyclic" => Some(Variant::Cyclic),
        "paracyclic" | "infinity" => Some(Variant::Paracyclic),
        _ => s.strip_suffix("-cyclic").and_then(r).or_else(|| s.strip_prefix("rcyclic:").and_then(r)),
    };
    v.ok_or_else(|| CliError::Input(format!("unknown variant {s:?}; use simplicial, cyclic, paracyclic, r-cyclic (e.g. 2-cyclic)")))
}

/// Where cached modules live, or `None` when caching is off.
pub fn cache_dir(args: &CacheArgs) -> Option<PathBuf> {
    if args.no_cache {
        return None;
    }
    if let Some(p) = std::env::var_os("CYCLOTOME_CACHE").filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    Some(args.cache.clone().unwrap_or_else(|| std::env::temp_dir().join("cyclotome-cache")))
}

/// Content hash of the input bytes and the build parameters.
pub fn cache_key(input: &[u8], what: &str) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update([0]);
    h.update(what.as_bytes());
    h.update([0]);
    h.update(input);
    hex::encode(h.finalize())
}

/// Returns the cached module for `key`, or builds and stores it.
fn cached_module(
    dir: Option<&Path>,
    key: &str,
    err: &mut dyn Write,
    build: impl FnOnce() -> Result<CyclicModule, CliError>,
) -> Result<CyclicModule, CliError> {
    let Some(dir) = dir else { return build() };
    let file = dir.join(format!("{key}.json"));
    if let Ok(text) = std::fs::read_to_string(&file) {
        if let Some(m) = serde_json::from_str::<Value>(&text).ok().and_then(|v| CyclicModule::from_json(&v).ok()) {
            let _ = writeln!(err, "cache hit {}", file.display());
            return Ok(m);
        }
    }
    let m = build()?;
    let _ = writeln!(err, "cache miss {}", file.display());
    if std::fs::create_dir_all(dir).is_ok() {
        let tmp = dir.join(format!("{key}.json.tmp"));
        if std::fs::write(&tmp, m.to_json().to_string()).is_ok() {
            let _ = std::fs::rename(&tmp, &file);
        }
    }
    Ok(m)
}

fn relations_into(out: &mut Outcome, m: &CyclicModule, top: usize) {
    let rep = m.check_relations(top);
    out.report.push(format!("{} relations of {} ({} instances)", m.variant.name(), m.provenance, rep.checked), rep.passed(), rep.failures.join("; "));
    out.extra.push(("dims".into(), json!((0..=m.max_level()).map(|n| m.dim(n)).collect::<Vec<_>>())));
}

fn hopf_verify(common: &Common) -> Result<Outcome, CliError> {
    let (h, _) = load_algebra(&common.algebra)?;
    let mut out = Outcome::new(format!("hopf verify {}", h.name));
    out.report.extend(h.verify_axioms());
    if !h.simples.is_empty() {
        match h.modular_data() {
            Ok(md) => {
                let f = h.field();
                out.notes.push(format!(
                    "modular data: {} simples, Δ+ = {}, Δ- = {}, global dimension {}, modular = {}",
                    md.qdims.len(),
                    f.render(&md.gauss_plus),
                    f.render(&md.gauss_minus),
                    f.render(&md.global_dim),
                    md.is_modular
                ));
            }
            Err(e) => out.notes.push(format!("modular data unavailable: {e}")),
        }
    }
    Ok(out)
}

fn coend_build(common: &Common) -> Result<Outcome, CliError> {
    let (h, _) = load_algebra(&common.algebra)?;
    let c = build_coend(&h)?;
    let mut out = Outcome::new(format!("coend of rep({}), dimension {}", h.name, c.dim()));
    out.report.extend(c.verify());
    match End::build(&c) {
        Ok(end) => {
            out.report.extend(end.verify(&c));
            let fz = c.factorizability(&end);
            out.report.push("factorizability criteria agree", fz.agree(), format!("{fz:?}"));
            out.extra.push(("factorizable".into(), json!(fz.factorizable())));
        }
        Err(e) => out.notes.push(format!("end not built: {e}")),
    }
    out.extra.push(("dim".into(), json!(c.dim())));
    out.extra.push(("pairing_rank".into(), json!(c.pairing_rank())));
    Ok(out)
}

fn default_simple(h: &HopfAlgebra) -> Option<usize> {
    let f = h.field();
    (0..h.simples.len()).find(|&i| {
        let t = h.twist_on(&h.simples[i]);
        !f.is_one(&t.get(0, 0))
    })
}

fn module_build(
    common: &Common,
    which: Which,
    n: Option<usize>,
    simple: Option<usize>,
    cache: &CacheArgs,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let (h, bytes) = load_algebra(&common.algebra)?;
    let top = n.unwrap_or(if which == Which::Rt { 2 } else { 3 });
    let dir = cache_dir(cache);
    let key = |what: &str| cache_key(&bytes, &format!("{what}/N={top}"));
    let name = which.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut out = Outcome::new(format!("module build {name} for {} up to level {top}", h.name));
    match which {
        Which::W => {
            let m = cached_module(dir.as_deref(), &key("W"), err, || build_w_cyclic(&h, top).map_err(failed))?;
            relations_into(&mut out, &m, top);
        }
        Which::Wco => {
            let m = cached_module(dir.as_deref(), &key("Wco"), err, || build_w_cocyclic(&h, top).map_err(failed))?;
            relations_into(&mut out, &m, top);
        }
        Which::Generic => {
            let c = build_coend(&h)?;
            let co = cached_module(dir.as_deref(), &key("generic-C"), err, || {
                build_from_coalgebra(&CoalgebraObject::from_coend(&c), Rotation::COALGEBRA, top).map_err(failed)
            })?;
            relations_into(&mut out, &co, top);
            let a = cached_module(dir.as_deref(), &key("generic-A"), err, || {
                build_from_algebra(&AlgebraObject::from_coend(&c), Rotation::ALGEBRA, top).map_err(failed)
            })?;
            let rep = a.check_relations(top);
            out.report.push(format!("cyclic relations of {} ({} instances)", a.provenance, rep.checked), rep.passed(), rep.failures.join("; "));
        }
        Which::Para => {
            let c = build_coend(&h)?;
            let p = build_paracyclic(&CoalgebraObject::from_coend(&c), Rotation::COALGEBRA, top).map_err(failed)?;
            let rep = p.maps.check_relations(top);
            out.report.push(format!("paracyclic relations ({} instances)", rep.checked), rep.passed(), rep.failures.join("; "));
            for k in 0..=top {
                let ok = p.twisted_cyclicity(k).map_err(failed)?;
                out.report.push(format!("t_{k}^{} = θ^(-1)", k + 1), ok, "");
            }
        }
        Which::Rcyclic => {
            let i = match simple {
                Some(i) if i < h.simples.len() => i,
                Some(i) => return Err(CliError::Input(format!("--simple {i}: the algebra lists {} simples", h.simples.len()))),
                None => default_simple(&h).ok_or_else(|| failed("no simple module with a nontrivial twist"))?,
            };
            let x = &h.simples[i];
            let m = cached_module(dir.as_deref(), &key(&format!("rcyclic-{i}")), err, || {
                let k = CoalgebraObject::primitive(&h, x, "1 ⊕ x");
                let para = build_paracyclic(&k, Rotation::COALGEBRA, top).map_err(failed)?;
                Ok(r_cyclic_from_simple(&para, x).map_err(failed)?.module)
            })?;
            let Variant::RCyclic(r) = m.variant else { return Err(failed("cached module is not r-cyclic")) };
            out.notes.push(format!("simple {i} gives r = {r}"));
            out.extra.push(("r".into(), json!(r)));
            relations_into(&mut out, &m, top);
            if r > 1 {
                let rep = m.check_relations_as(Variant::RCyclic(r - 1), top);
                out.report.push(format!("{}-cyclic relations fail (control)", r - 1), !rep.passed(), format!("{} failures", rep.failures.len()));
            }
        }
        Which::Rt => {
            let c = build_coend(&h)?;
            let rep = verify_main_theorem(&c, top).map_err(tqft_error)?;
            out.report.extend(rep);
            let rt = crate::tqft::build_rt_cocyclic(&c, top).map_err(tqft_error)?;
            for e in shape_checks(&rt, top).extremal.checks {
                out.notes.push(format!("extremal {}: {}", e.name, if e.passed { "matches" } else { "differs" }));
            }
        }
    }
    Ok(out)
}

fn tqft_error(e: TqftError) -> CliError {
    CliError::Failed(format!("rejected: {e}"))
}

fn tqft_verify(common: &Common, n: usize) -> Result<Outcome, CliError> {
    let (h, _) = load_algebra(&common.algebra)?;
    let c = build_coend(&h)?;
    let mut out = Outcome::new(format!("tqft verify {} up to level {n}", h.name));
    out.report.extend(verify_main_theorem(&c, n).map_err(tqft_error)?);
    Ok(out)
}

fn homology(common: &Common, source: HomologySource, n: usize, cache: &CacheArgs, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let (h, bytes) = load_algebra(&common.algebra)?;
    let top = n + 1;
    let dir = cache_dir(cache);
    let key = cache_key(&bytes, &format!("homology-{source:?}/N={top}"));
    let m = cached_module(dir.as_deref(), &key, err, || match source {
        HomologySource::Coend => {
            let c = build_coend(&h)?;
            build_from_coalgebra(&CoalgebraObject::from_coend(&c), Rotation::COALGEBRA, top).map_err(failed)
        }
        HomologySource::CoendCyclic => {
            let c = build_coend(&h)?;
            build_from_algebra(&AlgebraObject::from_coend(&c), Rotation::ALGEBRA, top).map_err(failed)
        }
        HomologySource::W => build_w_cyclic(&h, top).map_err(failed),
        HomologySource::Wco => build_w_cocyclic(&h, top).map_err(failed),
    })?;
    let t = HomologyTable::compute(&m, n).map_err(failed)?;
    let mut out = Outcome::new(format!("homology for {}", h.name));
    out.text = Some(t.render());
    out.extra.push(("table".into(), t.to_json()));
    Ok(out)
}

fn cat(action: &CatAction) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("");
    let line = match action {
        CatAction::Nf { word, variant } => {
            let v = parse_variant(variant)?;
            let w = GeneratorWord::parse(word, Direction::Covariant)?;
            w.interpret(v)?.normal_form().to_word().render_ascii()
        }
        CatAction::Compose { first, second, variant } => {
            let v = parse_variant(variant)?;
            let a = GeneratorWord::parse(first, Direction::Covariant)?.interpret(v)?;
            let b = GeneratorWord::parse(second, Direction::Covariant)?.interpret(v)?;
            a.compose(&b)?.normal_form().to_word().render_ascii()
        }
        CatAction::L { word } => dualize_l(&GeneratorWord::parse(word, Direction::Contravariant)?)?.render_unicode(),
        CatAction::Phi { word } => reindex_phi(&GeneratorWord::parse(word, Direction::Covariant)?).render_unicode(),
        CatAction::Count { n, m, variant } => hom_count(*n, *m, parse_variant(variant)?)?.to_string(),
        CatAction::Relations { variant, max_level } => {
            let v = parse_variant(variant)?;
            let rep = relation_suite(v, *max_level);
            out.report.push(format!("{} relations up to level {max_level} ({} instances)", v.name(), rep.checked), rep.passed(), rep.failures.join("; "));
            String::new()
        }
    };
    out.extra.push(("result".into(), json!(line)));
    out.text = Some(line);
    Ok(out)
}

fn format_of(cmd: &Command) -> Format {
    match cmd {
        Command::Hopf { action: HopfAction::Verify { common } }
        | Command::Coend { action: CoendAction::Build { common } }
        | Command::Module { action: ModuleAction::Build { common, .. } }
        | Command::Homology { common, .. }
        | Command::Tqft { action: TqftAction::Verify { common, .. } } => common.format,
        Command::Cat { .. } => Format::Table,
    }
}

fn dispatch(cmd: &Command, err: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Command::Hopf { action: HopfAction::Verify { common } } => hopf_verify(common),
        Command::Coend { action: CoendAction::Build { common } } => coend_build(common),
        Command::Module { action: ModuleAction::Build { common, which, n, simple, cache } } => module_build(common, *which, *n, *simple, cache, err),
        Command::Homology { common, module, n, cache } => homology(common, *module, *n, cache, err),
        Command::Tqft { action: TqftAction::Verify { common, n } } => tqft_verify(common, *n),
        Command::Cat { action } => cat(action),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let format = format_of(&cli.command);
    match dispatch(&cli.command, err) {
        Ok(o) => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.to_json()).expect("serializable")),
                Format::Table => write!(out, "{}", o.render()),
            };
            if o.passed() {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(CliError::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(CliError::Failed(m)) => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", json!({"schema": 1, "passed": false, "error": m})),
                Format::Table => writeln!(out, "FAIL {m}"),
            };
            EXIT_FAIL
        }
    }
}
