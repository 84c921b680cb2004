//! Driver layer behind the `isbv` binary: run configuration, registry
//! assembly, machine-readable reports, the on-disk basis cache, and the
//! test-only mutation hooks.

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coeff::Domain;
use crate::error::ModelError;
use crate::ffenum::{self, Ambient, BaseMode};
use crate::groebner::{self, BasisStore, Budget};
use crate::models::{self, LocalModel, ModelDoc, Registry};
use crate::verify::{self, CheckConfig, CheckStatus, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Primes(Vec<u64>),
}

impl FieldChoice {
    /// Parses `Q` or `p:3,5,...`.
    pub fn parse(text: &str) -> Result<FieldChoice, String> {
        if text == "Q" || text == "q" {
            return Ok(FieldChoice::Rational);
        }
        if let Some(list) = text.strip_prefix("p:") {
            let primes: Result<Vec<u64>, _> = list.split(',').map(|t| t.trim().parse()).collect();
            let primes = primes.map_err(|e| format!("bad prime list: {}", e))?;
            if primes.is_empty() {
                return Err("empty prime list".into());
            }
            for &p in &primes {
                Domain::fp(p).map_err(|e| e.to_string())?;
            }
            return Ok(FieldChoice::Primes(primes));
        }
        Err(format!(
            "unknown field `{}` (expected `Q` or `p:<prime>[,<prime>...]`)",
            text
        ))
    }

    pub fn describe(&self) -> String {
        match self {
            FieldChoice::Rational => "Q".to_string(),
            FieldChoice::Primes(ps) => {
                format!(
                    "p:{}",
                    ps.iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

/// Full configuration of a run; serialized into every report as the
/// reproducibility stamp.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub models: Vec<String>,
    pub checks: Vec<String>,
    pub field: FieldChoice,
    pub budget: u64,
    pub dmax: u32,
    pub seed: u64,
    pub jobs: usize,
    pub format: ReportFormat,
    pub no_cache: bool,
    pub cache_audit: bool,
    pub allow_skip: bool,
    pub mutate: Option<String>,
    pub model_files: Vec<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    /// Include wall-clock data in serialized reports (breaks byte-for-byte
    /// reproducibility across runs, so it is opt-in).
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            models: Vec::new(),
            checks: Vec::new(),
            field: FieldChoice::Rational,
            budget: Budget::default().limit,
            dmax: 3,
            seed: 1,
            jobs: 0,
            format: ReportFormat::Json,
            no_cache: false,
            cache_audit: false,
            allow_skip: false,
            mutate: None,
            model_files: Vec::new(),
            cache_dir: None,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn check_config(&self) -> CheckConfig {
        let (domain, primes) = match &self.field {
            FieldChoice::Rational => (Domain::Rational, vec![3, 5, 7]),
            FieldChoice::Primes(ps) => (Domain::Fp(ps[0]), ps.clone()),
        };
        CheckConfig {
            domain,
            primes,
            budget: Budget { limit: self.budget },
            dmax: self.dmax,
            seed: self.seed,
            ..CheckConfig::default()
        }
    }

    fn stamp(&self) -> Value {
        json!({
            "models": if self.models.is_empty() { json!("all") } else { json!(self.models) },
            "checks": if self.checks.is_empty() { json!("all") } else { json!(self.checks) },
            "field": self.field.describe(),
            "primes": self.check_config().primes,
            "budget": self.budget,
            "dmax": self.dmax,
            "seed": self.seed,
            "allow_skip": self.allow_skip,
            "mutate": self.mutate,
            "model_files": self.model_files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "cache": if self.no_cache { "off" } else { "on" },
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("bad mutation spec `{spec}`: {msg}")]
    BadMutation { spec: String, msg: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Other(String),
}

// ---------------------------------------------------------------------------
// on-disk basis cache
// ---------------------------------------------------------------------------

/// Content-addressed file store for reduced bases. Safe to delete at any
/// time; writes go through a temp file and an atomic rename.
pub struct FileBasisStore {
    dir: PathBuf,
}

impl FileBasisStore {
    pub fn new(dir: PathBuf) -> std::io::Result<FileBasisStore> {
        std::fs::create_dir_all(&dir)?;
        Ok(FileBasisStore { dir })
    }

    fn path_for(&self, preimage: &str) -> PathBuf {
        let mut hasher = Sha256::new();
        hasher.update(preimage.as_bytes());
        let digest = hasher.finalize();
        self.dir.join(format!("{}.gb", hex_encode(&digest)))
    }
}

fn hex_encode(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{:02x}", b)).collect()
}

impl BasisStore for FileBasisStore {
    fn load(&self, preimage: &str) -> Option<String> {
        std::fs::read_to_string(self.path_for(preimage)).ok()
    }

    fn store(&self, preimage: &str, encoded: &str) {
        let path = self.path_for(preimage);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, encoded).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}

/// Resolves the cache directory: explicit config, then the ISBV_CACHE
/// environment variable, then a directory under the system temp dir.
pub fn cache_directory(config: &RunConfig) -> PathBuf {
    if let Some(dir) = &config.cache_dir {
        return dir.clone();
    }
    if let Ok(dir) = std::env::var("ISBV_CACHE") {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    std::env::temp_dir().join("isbv-cache")
}

/// Installs (or disables) the on-disk basis cache for this process.
pub fn configure_cache(config: &RunConfig) {
    if config.no_cache {
        groebner::set_basis_store(None, false);
        return;
    }
    match FileBasisStore::new(cache_directory(config)) {
        Ok(store) => groebner::set_basis_store(Some(Arc::new(store)), config.cache_audit),
        Err(_) => groebner::set_basis_store(None, false),
    }
}

// ---------------------------------------------------------------------------
// registry assembly and mutations
// ---------------------------------------------------------------------------

/// Builtin registry plus any user model files.
pub fn load_registry(config: &RunConfig) -> Result<Registry, CliError> {
    let mut registry = models::builtin_models();
    for path in &config.model_files {
        let model = models::load_model_file(path)?;
        registry.push(model);
    }
    Ok(registry)
}

/// Applies a test-only mutation to a model document.
///
/// Specs: `drop-row:<n>` (1-based equation row), `swap-sections:<i>,<j>`
/// (0-based coordinate indices), `basis-replace:<n>:<monomial>` (1-based
/// freeness basis index).
pub fn apply_mutation(doc: &mut ModelDoc, spec: &str) -> Result<(), CliError> {
    let bad = |msg: &str| CliError::BadMutation {
        spec: spec.to_string(),
        msg: msg.to_string(),
    };
    if let Some(arg) = spec.strip_prefix("drop-row:") {
        let n: usize = arg.parse().map_err(|_| bad("row index"))?;
        if n == 0 || n > doc.equations.len() {
            return Err(bad("row out of range"));
        }
        doc.equations.remove(n - 1);
        return Ok(());
    }
    if let Some(arg) = spec.strip_prefix("swap-sections:") {
        let (a, b) = arg.split_once(',').ok_or_else(|| bad("expected i,j"))?;
        let i: usize = a.trim().parse().map_err(|_| bad("index"))?;
        let j: usize = b.trim().parse().map_err(|_| bad("index"))?;
        let sections = doc
            .sections
            .as_mut()
            .ok_or_else(|| bad("model has no sections"))?;
        if i >= sections.len() || j >= sections.len() {
            return Err(bad("section index out of range"));
        }
        sections.swap(i, j);
        return Ok(());
    }
    if let Some(arg) = spec.strip_prefix("basis-replace:") {
        let (n, monomial) = arg
            .split_once(':')
            .ok_or_else(|| bad("expected n:monomial"))?;
        let n: usize = n.parse().map_err(|_| bad("basis index"))?;
        let freeness = doc
            .claims
            .freeness
            .as_mut()
            .ok_or_else(|| bad("model has no freeness claim"))?;
        if n == 0 || n > freeness.basis.len() {
            return Err(bad("basis index out of range"));
        }
        freeness.basis[n - 1] = monomial.to_string();
        return Ok(());
    }
    Err(bad("unknown mutation kind"))
}

/// Loads a model with a mutation applied (vanishing validation disabled so
/// the deliberately broken model can be exercised by the checks).
pub fn mutated_model(model: &LocalModel, spec: &str) -> Result<LocalModel, CliError> {
    let mut doc = model.to_document();
    apply_mutation(&mut doc, spec)?;
    Ok(models::model_from_doc_lenient(&doc)?)
}

fn select_models(
    registry: &Registry,
    config: &RunConfig,
) -> Result<Vec<Arc<LocalModel>>, CliError> {
    let mut selected: Vec<Arc<LocalModel>> = Vec::new();
    if config.models.is_empty() {
        selected.extend(registry.iter().cloned());
    } else {
        for name in &config.models {
            let model = registry
                .get(name)
                .ok_or_else(|| CliError::UnknownModel(name.clone()))?;
            selected.push(Arc::clone(model));
        }
    }
    if let Some(spec) = &config.mutate {
        selected = selected
            .iter()
            .map(|m| mutated_model(m, spec).map(Arc::new))
            .collect::<Result<_, _>>()?;
    }
    Ok(selected)
}

fn validate_checks(config: &RunConfig) -> Result<(), CliError> {
    for c in &config.checks {
        if !verify::CHECK_NAMES.contains(&c.as_str()) {
            return Err(CliError::UnknownCheck(c.clone()));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

/// `list`: registry entries with claim summaries.
pub fn cmd_list(config: &RunConfig) -> Result<String, CliError> {
    let registry = load_registry(config)?;
    let mut out = String::new();
    for model in registry.iter() {
        let blocks: Vec<String> = model
            .vars
            .projective_blocks()
            .map(|b| format!("P^{}", b.indices.len() - 1))
            .collect();
        let base: Vec<&str> = model
            .base_indices()
            .iter()
            .map(|&i| model.vars.name(i))
            .collect();
        out.push_str(&format!(
            "{:16} base ({}) x {:12} eqs {:2}  checks: {}\n",
            model.name,
            base.join(","),
            blocks.join(" x "),
            model.equations.len(),
            model.applicable_checks().join(","),
        ));
        out.push_str(&format!("{:16}   {}\n", "", model.description));
    }
    out.push_str(&format!("{} models\n", registry.len()));
    Ok(out)
}

/// `verify`: runs the selected checks and renders the report.
pub fn cmd_verify(config: &RunConfig) -> Result<(VerificationReport, String), CliError> {
    validate_checks(config)?;
    configure_cache(config);
    let registry = load_registry(config)?;
    let selected = select_models(&registry, config)?;
    let check_config = config.check_config();
    let started = if config.timings {
        Some(chrono_free_timestamp())
    } else {
        None
    };
    let report = verify::run_suite(&selected, &config.checks, &check_config, config.jobs);
    if report.results.is_empty() {
        return Err(CliError::Other(
            "selection matched no applicable checks (model/check combination runs nothing)".into(),
        ));
    }
    let rendered = match config.format {
        ReportFormat::Json => render_json(config, &report, started),
        ReportFormat::Markdown => render_markdown(config, &report),
    };
    Ok((report, rendered))
}

fn chrono_free_timestamp() -> String {
    // seconds since the epoch; avoids a clock-formatting dependency
    match std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH) {
        Ok(d) => format!("unix:{}", d.as_secs()),
        Err(_) => "unix:0".to_string(),
    }
}

fn render_json(config: &RunConfig, report: &VerificationReport, started: Option<String>) -> String {
    let checks: Vec<Value> = report
        .results
        .iter()
        .map(|r| {
            let mut obj = json!({
                "name": r.check,
                "model": r.model,
                "status": r.status.as_str(),
                "witness": r.witness,
            });
            if config.timings {
                obj["millis"] = json!(r.millis);
            }
            obj
        })
        .collect();
    let mut run = json!({
        "config": config.stamp(),
        "versions": { "isbv": env!("CARGO_PKG_VERSION") },
    });
    if let Some(s) = started {
        run["started"] = json!(s);
    }
    let doc = json!({
        "run": run,
        "checks": checks,
        "summary": {
            "pass": report.pass,
            "fail": report.fail,
            "skipped": report.skipped,
        },
    });
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

fn render_markdown(config: &RunConfig, report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str("# Verification report\n\n");
    out.push_str(&format!(
        "field: `{}`  seed: {}  budget: {}\n\n",
        config.field.describe(),
        config.seed,
        config.budget
    ));
    if config.timings {
        out.push_str("| model | check | status | ms |\n|---|---|---|---|\n");
    } else {
        out.push_str("| model | check | status |\n|---|---|---|\n");
    }
    for r in &report.results {
        if config.timings {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                r.model,
                r.check,
                r.status.as_str(),
                r.millis
            ));
        } else {
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                r.model,
                r.check,
                r.status.as_str()
            ));
        }
    }
    out.push_str(&format!(
        "\n**summary:** {} pass, {} fail, {} skipped\n",
        report.pass, report.fail, report.skipped
    ));
    for r in &report.results {
        if r.status != CheckStatus::Pass {
            out.push_str(&format!(
                "\n## {} / {} ({})\n\n```json\n{}\n```\n",
                r.model,
                r.check,
                r.status.as_str(),
                serde_json::to_string_pretty(&r.witness).expect("witness serializes")
            ));
        }
    }
    out
}

/// `derive`: re-derives the constrained relation space from the sections
/// and diffs it against the stored table rows.
pub fn cmd_derive(config: &RunConfig, model_name: &str, degree: u32) -> Result<String, CliError> {
    configure_cache(config);
    let registry = load_registry(config)?;
    let model = registry
        .get(model_name)
        .ok_or_else(|| CliError::UnknownModel(model_name.to_string()))?;
    let check_config = config.check_config();
    let space =
        verify::relation_space(model, degree, check_config.domain).map_err(CliError::Model)?;
    let mut out = String::new();
    out.push_str(&format!(
        "model {} degree {}: constrained dimension {}, generic dimension {}\n",
        model_name, degree, space.constrained_dim, space.generic_dim
    ));
    for (i, b) in space.basis.iter().enumerate() {
        out.push_str(&format!("  b{:<3} = {}\n", i + 1, b.display_text()));
    }
    if space.basis.is_empty() {
        out.push_str("  (empty basis)\n");
    }
    if degree == 2 {
        match (&space.table_contained, &space.table_rank) {
            (Some(true), Some(rank)) => {
                out.push_str(&format!(
                    "table rows: contained in the space, rank {}\n",
                    rank
                ));
                if let Some(cob) = &space.table_coordinates {
                    for (i, row) in cob.iter().enumerate() {
                        let combo: Vec<String> = row
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(j, c)| format!("{}*b{}", c, j + 1))
                            .collect();
                        out.push_str(&format!("  f{:<3} = {}\n", i + 1, combo.join(" + ")));
                    }
                }
            }
            (Some(false), _) => {
                out.push_str("table rows: MISMATCH (a row falls outside the constrained space)\n");
            }
            _ => {}
        }
    }
    Ok(out)
}

/// `enumerate`: fiber counts or singular-point lists over one prime.
pub fn cmd_enumerate(
    config: &RunConfig,
    model_name: &str,
    p: u64,
    base: Option<Vec<u64>>,
    singular_only: bool,
) -> Result<String, CliError> {
    let registry = load_registry(config)?;
    let model = registry
        .get(model_name)
        .ok_or_else(|| CliError::UnknownModel(model_name.to_string()))?;
    let geometry = model.geometry();
    if let Some(b) = &base {
        let expected = geometry.base_indices().len();
        if b.len() != expected {
            return Err(CliError::Other(format!(
                "base point has {} coordinates; the model base has {}",
                b.len(),
                expected
            )));
        }
    }
    let mut out = String::new();
    if singular_only {
        let check_config = config.check_config();
        let mode = if base.is_some() {
            BaseMode::Exhaustive
        } else {
            let ambient = Ambient::of_model(geometry);
            let total = (p as u128).pow(ambient.base.len() as u32) * ambient.fiber_count(p) as u128;
            if total > check_config.scan_exhaustive_limit as u128 {
                BaseMode::DivisorAxesPlusSample {
                    samples: check_config.scan_samples,
                    seed: config.seed,
                }
            } else {
                BaseMode::Exhaustive
            }
        };
        let scan = ffenum::smoothness_scan(geometry, p, mode)
            .map_err(|e| CliError::Other(e.to_string()))?;
        out.push_str(&format!(
            "model {} over F_{} ({}): {} points examined, {} on the variety\n",
            model_name, p, scan.base_mode, scan.points_examined, scan.points_on_variety
        ));
        out.push_str(&format!("singular points: {}\n", scan.singular_count));
        for sp in &scan.singular_points {
            let coords: Vec<String> = sp
                .coords
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{}={}", geometry.vars.name(i), v))
                .collect();
            out.push_str(&format!(
                "  rank {} {} [{}]\n",
                sp.jacobian_rank,
                if sp.on_claimed_locus {
                    "on-locus "
                } else {
                    "OFF-LOCUS"
                },
                coords.join(",")
            ));
        }
    } else {
        let ambient = Ambient::of_model(geometry);
        let scan = ffenum::enumerate_points(&geometry.equations, &ambient, p, base.as_deref())
            .map_err(|e| CliError::Other(e.to_string()))?;
        out.push_str(&format!(
            "model {} over F_{} ({}): {} points examined, {} on the variety\n",
            model_name, p, scan.base_mode, scan.points_examined, scan.points_on_variety
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_parsing() {
        assert_eq!(FieldChoice::parse("Q").unwrap(), FieldChoice::Rational);
        assert_eq!(
            FieldChoice::parse("p:3,5").unwrap(),
            FieldChoice::Primes(vec![3, 5])
        );
        assert!(FieldChoice::parse("p:2").is_err());
        assert!(FieldChoice::parse("banana").is_err());
    }

    #[test]
    fn list_counts_models() {
        let out = cmd_list(&RunConfig::default()).unwrap();
        assert!(out.contains("7 models"));
        assert!(out.contains("i-ii"));
        assert!(out.contains("segre-d2"));
    }

    #[test]
    fn mutation_specs() {
        let registry = models::builtin_models();
        let i_ii = registry.get("i-ii").unwrap();
        let mutated = mutated_model(i_ii, "drop-row:7").unwrap();
        assert_eq!(mutated.equations.len(), 19);
        let swapped = mutated_model(i_ii, "swap-sections:3,4").unwrap();
        assert_eq!(swapped.equations.len(), 20);
        let rebased = mutated_model(i_ii, "basis-replace:8:x3*x8").unwrap();
        assert_eq!(rebased.freeness.as_ref().unwrap().basis[7], "x3*x8");
        assert!(mutated_model(i_ii, "drop-row:21").is_err());
        assert!(mutated_model(i_ii, "nonsense:1").is_err());
    }

    #[test]
    fn unknown_names_are_rejected() {
        let mut config = RunConfig::default();
        config.models = vec!["no-such-model".into()];
        assert!(matches!(
            cmd_verify(&config),
            Err(CliError::UnknownModel(_))
        ));
        let mut config = RunConfig::default();
        config.checks = vec!["no-such-check".into()];
        assert!(matches!(
            cmd_verify(&config),
            Err(CliError::UnknownCheck(_))
        ));
    }
}
