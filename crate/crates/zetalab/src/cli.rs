//! Command-line orchestration: flat key=value configuration with flag
//! overrides, zero-table caching with per-line checksums, and the JSON
//! report pipeline behind each subcommand. Reports embed the resolved
//! configuration and seed so identical inputs give byte-identical output.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Cursor, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::{from_selector, DirichletCharacter};
use crate::dirpoly::{default_x, psi_of_t, CombinationSpec};
use crate::distlab::{
    clt_report, default_rectangles, fourier_side_by_side, independence_report,
};
use crate::error::{Error, Result};
use crate::leval::{fmt_sig12, log_abs_l, LValueSample};
use crate::numeric::Compensated;
use crate::randmodel::{
    exact_moment2, moment2_decomposition, sample_re_p, CharFnConfig, DEFAULT_ELL_MAX,
};
use crate::zeros::{
    cache_file_name, find_zeros_l, find_zeros_zeta, hypothesis_d_audit, hypothesis_h_profile,
    ZeroSet, ZERO_PRECISION,
};

const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Coincidence tolerance for the zero-coincidence audit.
const AUDIT_TOL: f64 = 1e-6;

/// How the polynomial cutoff X is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XPolicy {
    /// T^{1/(16 (lnln T)^6)}, floored at 4.
    Default,
    Explicit(f64),
}

impl XPolicy {
    fn parse(text: &str) -> Result<Self> {
        if text == "paper-default" {
            return Ok(XPolicy::Default);
        }
        let v: f64 = text
            .parse()
            .map_err(|_| Error::Config(format!("bad x_policy: {text:?}")))?;
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Config(format!("x_policy must be positive, got {v}")));
        }
        Ok(XPolicy::Explicit(v))
    }

    fn resolve(self, t: f64) -> (f64, bool) {
        match self {
            XPolicy::Default => default_x(t),
            XPolicy::Explicit(v) => (v, false),
        }
    }
}

impl fmt::Display for XPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XPolicy::Default => write!(f, "paper-default"),
            XPolicy::Explicit(v) => write!(f, "{v}"),
        }
    }
}

fn ser_x_policy<S: Serializer>(p: &XPolicy, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// A full run description: what to compute, with which statistic, where to
/// put artifacts. Every report echoes it verbatim.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub t: f64,
    pub characters: Vec<String>,
    pub coefficients: Vec<f64>,
    #[serde(serialize_with = "ser_x_policy")]
    pub x_policy: XPolicy,
    pub seed: u64,
    pub mc_samples: usize,
    pub omega_grid: Vec<f64>,
    pub output_dir: PathBuf,
    pub cache_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t: 1000.0,
            characters: vec!["4.1".into(), "3.1".into()],
            coefficients: vec![1.0, 1.0],
            x_policy: XPolicy::Default,
            seed: 1,
            mc_samples: 100_000,
            omega_grid: vec![0.0, 0.05, 0.1, 0.2],
            output_dir: PathBuf::from("out"),
            cache_dir: PathBuf::from("cache"),
        }
    }
}

fn parse_list<T: std::str::FromStr>(value: &str, what: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Config(format!("bad {what} entry: {s:?}")))
        })
        .collect()
}

impl RunConfig {
    /// Parses the flat key=value format; `#` starts a comment line.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected key=value, got {line:?}",
                    idx + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "t" => {
                    config.t = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad t: {value:?}")))?;
                }
                "characters" => config.characters = parse_list(value, "character")?,
                "coefficients" => config.coefficients = parse_list(value, "coefficient")?,
                "x_policy" => config.x_policy = XPolicy::parse(value)?,
                "seed" => {
                    config.seed = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad seed: {value:?}")))?;
                }
                "mc_samples" => {
                    config.mc_samples = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad mc_samples: {value:?}")))?;
                }
                "omega_grid" => config.omega_grid = parse_list(value, "omega")?,
                "output_dir" => config.output_dir = PathBuf::from(value),
                "cache_dir" => config.cache_dir = PathBuf::from(value),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {other:?}",
                        idx + 1
                    )))
                }
            }
        }
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_key_values(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t >= 100.0) || !self.t.is_finite() {
            return Err(Error::Config(format!("t must be >= 100, got {}", self.t)));
        }
        if self.characters.is_empty() {
            return Err(Error::Config("need at least one character".into()));
        }
        if self.characters.len() != self.coefficients.len() {
            return Err(Error::Config(format!(
                "{} characters but {} coefficients",
                self.characters.len(),
                self.coefficients.len()
            )));
        }
        if self.mc_samples < 2 {
            return Err(Error::Config(format!(
                "mc_samples must be >= 2, got {}",
                self.mc_samples
            )));
        }
        if self.omega_grid.is_empty() {
            return Err(Error::Config("omega_grid must be nonempty".into()));
        }
        Ok(())
    }
}

// --- zero cache -------------------------------------------------------------

/// Sidecar manifest: invalidation triple plus per-line FNV-1a checksums.
#[derive(Debug, Serialize, Deserialize)]
struct CacheMeta {
    owner: String,
    t: f64,
    code_version: String,
    count: usize,
    line_hashes: Vec<String>,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn line_hash(line: &str) -> String {
    format!("{:016x}", fnv1a(line.as_bytes()))
}

fn meta_path_for(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".meta");
    PathBuf::from(s)
}

/// A zero table plus how it was obtained this run.
#[derive(Debug)]
pub struct CacheEntry {
    pub set: ZeroSet,
    pub hit: bool,
    pub path: PathBuf,
}

fn load_cached(path: &Path, owner: &str, t: f64) -> Result<Option<ZeroSet>> {
    let meta_path = meta_path_for(path);
    if !path.exists() || !meta_path.exists() {
        return Ok(None);
    }
    let meta: CacheMeta = serde_json::from_str(&fs::read_to_string(&meta_path)?)
        .map_err(|e| Error::Cache(format!("{}: {e}", meta_path.display())))?;
    if meta.owner != owner || meta.t != t || meta.code_version != CODE_VERSION {
        return Ok(None); // stale — recompute
    }
    let raw = fs::read_to_string(path)?;
    let lines: Vec<&str> = raw.lines().collect();
    if lines.len() != meta.line_hashes.len() {
        return Err(Error::Cache(format!(
            "{}: {} lines but manifest lists {}",
            path.display(),
            lines.len(),
            meta.line_hashes.len()
        )));
    }
    for (i, (line, want)) in lines.iter().zip(&meta.line_hashes).enumerate() {
        if line_hash(line) != *want {
            return Err(Error::Cache(format!(
                "{}: checksum mismatch at line {}",
                path.display(),
                i + 1
            )));
        }
    }
    let set = ZeroSet::read_csv(Cursor::new(raw.as_bytes()), owner, t, ZERO_PRECISION)?;
    if set.len() != meta.count {
        return Err(Error::Cache(format!(
            "{}: {} ordinates but manifest says {}",
            path.display(),
            set.len(),
            meta.count
        )));
    }
    Ok(Some(set))
}

/// Returns the zero table for ζ (`chi` = None) or L(·,χ), loading a valid
/// cache when present and computing + writing one otherwise. A cache that
/// fails its checksum aborts; a stale one (different code version or T) is
/// rebuilt silently.
pub fn ensure_zeros(
    cache_dir: &Path,
    chi: Option<&DirichletCharacter>,
    t: f64,
) -> Result<CacheEntry> {
    let owner = chi.map_or_else(|| "zeta".to_string(), DirichletCharacter::selector);
    let path = cache_dir.join(cache_file_name(&owner, t));
    if let Some(set) = load_cached(&path, &owner, t)? {
        return Ok(CacheEntry {
            set,
            hit: true,
            path,
        });
    }
    let set = match chi {
        Some(c) => find_zeros_l(c, t)?,
        None => find_zeros_zeta(t)?,
    };
    // Canonicalize onto the cache file's 12-significant-digit grid so cold
    // and warm runs feed identical ordinates downstream.
    let rounded: Vec<f64> = set
        .ordinates()
        .iter()
        .map(|&g| fmt_sig12(g).parse().expect("own formatting"))
        .collect();
    let set = ZeroSet::new(rounded, t, owner.clone(), set.provenance(), ZERO_PRECISION)?;
    fs::create_dir_all(cache_dir)?;
    let mut buf = Vec::new();
    set.write_csv(&mut buf)?;
    let raw = String::from_utf8(buf).expect("zero CSV is ASCII");
    let meta = CacheMeta {
        owner,
        t,
        code_version: CODE_VERSION.to_string(),
        count: set.len(),
        line_hashes: raw.lines().map(line_hash).collect(),
    };
    fs::write(&path, &raw)?;
    let mut meta_json = serde_json::to_string_pretty(&meta)?;
    meta_json.push('\n');
    fs::write(meta_path_for(&path), meta_json)?;
    Ok(CacheEntry {
        set,
        hit: false,
        path,
    })
}

// --- report plumbing --------------------------------------------------------

struct Resolved {
    x: f64,
    x_floored: bool,
    omega_max: f64,
    ell_max: u32,
}

fn resolve(config: &RunConfig) -> Resolved {
    let (x, x_floored) = config.x_policy.resolve(config.t);
    Resolved {
        x,
        x_floored,
        omega_max: psi_of_t(config.t).powi(2),
        ell_max: DEFAULT_ELL_MAX,
    }
}

fn build_spec(config: &RunConfig) -> Result<(CombinationSpec, Resolved)> {
    let characters = config
        .characters
        .iter()
        .map(|s| from_selector(s))
        .collect::<Result<Vec<_>>>()?;
    let resolved = resolve(config);
    let spec = CombinationSpec::new(config.coefficients.clone(), characters, resolved.x)?;
    Ok((spec, resolved))
}

fn envelope(command: &str, config: &RunConfig, resolved: &Resolved, report: Value) -> Value {
    json!({
        "meta": {
            "command": command,
            "versions": { "code": CODE_VERSION, "report_format": 1 },
            "seed": config.seed,
            "config": config,
            "resolved": {
                "t": config.t,
                "x": resolved.x,
                "x_floored": resolved.x_floored,
                "omega_max": resolved.omega_max,
                "ell_max": resolved.ell_max,
            },
        },
        "report": report,
    })
}

fn write_json(path: &Path, doc: &Value) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn write_l_samples(dir: &Path, selector: &str, samples: &[LValueSample]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("samples_{selector}.csv"));
    let mut w = BufWriter::new(fs::File::create(&path)?);
    crate::leval::write_samples_csv(&mut w, samples)?;
    w.flush()?;
    Ok(path)
}

fn l_samples_at(chi: &DirichletCharacter, zeros: &ZeroSet) -> Result<Vec<LValueSample>> {
    zeros
        .ordinates()
        .par_iter()
        .map(|&g| log_abs_l(chi, g))
        .collect()
}

// --- commands ---------------------------------------------------------------

fn cmd_zeros(config: &RunConfig) -> Result<()> {
    let entry = ensure_zeros(&config.cache_dir, None, config.t)?;
    print_cache_status("zeta", &entry);
    for sel in &config.characters {
        let chi = from_selector(sel)?;
        let entry = ensure_zeros(&config.cache_dir, Some(&chi), config.t)?;
        print_cache_status(sel, &entry);
    }
    Ok(())
}

fn print_cache_status(owner: &str, entry: &CacheEntry) {
    println!(
        "zeros {owner}: {} ({} ordinates) {}",
        if entry.hit { "cache hit" } else { "computed" },
        entry.set.len(),
        entry.path.display()
    );
}

fn cmd_clt(config: &RunConfig) -> Result<()> {
    let (spec, resolved) = build_spec(config)?;
    let zeros = ensure_zeros(&config.cache_dir, None, config.t)?.set;
    let mut lvals = Vec::with_capacity(spec.n());
    for chi in spec.characters() {
        let rows = l_samples_at(chi, &zeros)?;
        write_l_samples(&config.output_dir, &chi.selector(), &rows)?;
        lvals.push(rows);
    }
    let rep = clt_report(&lvals, &spec, config.t)?;
    let path = config.output_dir.join("clt.json");
    write_json(&path, &envelope("clt", config, &resolved, serde_json::to_value(&rep)?))?;
    println!(
        "clt: {} samples ({} excluded), ks = {:.4} -> {}",
        rep.sample_count,
        rep.excluded,
        rep.ks,
        path.display()
    );
    Ok(())
}

fn cmd_independence(config: &RunConfig) -> Result<()> {
    let [sel1, sel2] = config.characters.as_slice() else {
        return Err(Error::Config(format!(
            "independence needs exactly two characters, got {}",
            config.characters.len()
        )));
    };
    if sel1 == sel2 {
        return Err(Error::Config(format!(
            "independence needs two distinct characters, got {sel1} twice"
        )));
    }
    let chi1 = from_selector(sel1)?;
    let chi2 = from_selector(sel2)?;
    let resolved = resolve(config);
    let zeros = ensure_zeros(&config.cache_dir, None, config.t)?.set;
    let l1 = l_samples_at(&chi1, &zeros)?;
    let l2 = l_samples_at(&chi2, &zeros)?;
    write_l_samples(&config.output_dir, sel1, &l1)?;
    write_l_samples(&config.output_dir, sel2, &l2)?;
    let rep = independence_report(&l1, &l2, &default_rectangles(), config.t)?;
    let path = config.output_dir.join("independence.json");
    write_json(
        &path,
        &envelope("independence", config, &resolved, serde_json::to_value(&rep)?),
    )?;
    println!(
        "independence: max |joint - product| = {:.4} ({} excluded) -> {}",
        rep.max_gap,
        rep.excluded,
        path.display()
    );
    Ok(())
}

fn cmd_model(config: &RunConfig) -> Result<()> {
    let (spec, resolved) = build_spec(config)?;
    let samples = sample_re_p(&spec, config.seed, config.mc_samples);
    let mut m2 = Compensated::default();
    let mut m4 = Compensated::default();
    for &s in &samples {
        m2.add(s * s);
        m4.add(s * s * s * s);
    }
    let n = samples.len() as f64;
    let (m2, m4) = (m2.value() / n, m4.value() / n);
    let stderr = ((m4 - m2 * m2) / n).max(0.0).sqrt();
    let exact = exact_moment2(&spec);
    let dec = moment2_decomposition(&spec)?;
    let dec_gap = (dec.total() - exact).abs();
    let z = if stderr > 0.0 { (m2 - exact) / stderr } else { 0.0 };

    fs::create_dir_all(&config.output_dir)?;
    let csv_path = config.output_dir.join("model_samples.csv");
    let mut w = BufWriter::new(fs::File::create(&csv_path)?);
    crate::randmodel::write_samples_csv(&mut w, &samples)?;
    w.flush()?;

    let report = json!({
        "exact_moment2": exact,
        "decomposition": {
            "psi": dec.psi,
            "diagonal": dec.diagonal,
            "cross_weighted": dec.cross_weighted,
            "ramified_overcount": dec.ramified_overcount,
            "total": dec.total(),
        },
        "mc": {
            "samples": samples.len(),
            "moment2": m2,
            "stderr": stderr,
            "z_score": z,
        },
    });
    let path = config.output_dir.join("model.json");
    write_json(&path, &envelope("model", config, &resolved, report))?;
    println!(
        "model: mc moment2 = {m2:.6}, exact = {exact:.6}, z = {z:+.2} -> {}",
        path.display()
    );

    if dec_gap > 1e-12 * exact.abs().max(1.0) {
        return Err(Error::Consistency(format!(
            "moment decomposition disagrees with the closed form by {dec_gap:.3e}"
        )));
    }
    if z.abs() > 5.0 {
        return Err(Error::Consistency(format!(
            "Monte Carlo second moment {m2} vs exact {exact}: z = {z:.2}"
        )));
    }
    Ok(())
}

fn cmd_fourier(config: &RunConfig) -> Result<()> {
    let (spec, resolved) = build_spec(config)?;
    let zeros = ensure_zeros(&config.cache_dir, None, config.t)?.set;
    let cfg = CharFnConfig::new(
        resolved.omega_max,
        resolved.ell_max,
        config.omega_grid.clone(),
    )?;
    let rows = fourier_side_by_side(&spec, &zeros, &cfg)?;
    let worst = rows.iter().map(|r| r.rel_gap).fold(0.0, f64::max);
    let report = json!({ "zero_count": zeros.len(), "rows": rows });
    let path = config.output_dir.join("fourier.json");
    write_json(&path, &envelope("fourier", config, &resolved, report))?;
    println!(
        "fourier: {} grid points, worst relative gap = {worst:.4} -> {}",
        rows.len(),
        path.display()
    );
    Ok(())
}

fn cmd_audit(config: &RunConfig) -> Result<()> {
    let resolved = resolve(config);
    let zeta = ensure_zeros(&config.cache_dir, None, config.t)?.set;
    let c_grid: Vec<f64> = (1..=9).map(|k| f64::from(k) / 10.0).collect();
    let mut per_char = Vec::new();
    for sel in &config.characters {
        let chi = from_selector(sel)?;
        let lz = ensure_zeros(&config.cache_dir, Some(&chi), config.t)?.set;
        let pairs = hypothesis_d_audit(&zeta, &lz, AUDIT_TOL)?;
        let profile = hypothesis_h_profile(&zeta, &lz, &c_grid, config.t)?;
        println!(
            "audit {sel}: {} L-ordinates, {} coincidences within {AUDIT_TOL:.0e}, near-miss at C=0.5: {:.4}",
            lz.len(),
            pairs.len(),
            profile[4]
        );
        per_char.push(json!({
            "character": sel,
            "l_zero_count": lz.len(),
            "coincidences": pairs
                .iter()
                .map(|p| json!({
                    "gamma": p.gamma,
                    "gamma_chi": p.gamma_chi,
                    "distance": p.distance,
                }))
                .collect::<Vec<_>>(),
            "near_miss": { "c_grid": c_grid, "proportions": profile },
        }));
    }
    let report = json!({
        "tolerance": AUDIT_TOL,
        "zeta_count": zeta.len(),
        "characters": per_char,
    });
    let path = config.output_dir.join("audit.json");
    write_json(&path, &envelope("audit", config, &resolved, report))?;
    println!("audit -> {}", path.display());
    Ok(())
}

// --- front end ----------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "zetalab",
    version,
    about = "Zero statistics for linear combinations of Dirichlet L-functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat key=value configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Height cutoff T (overrides the config file).
    #[arg(long, global = true, value_name = "REAL")]
    pub t: Option<f64>,

    /// Character selectors, comma separated (e.g. 4.1,3.1).
    #[arg(long, global = true, value_delimiter = ',', value_name = "SEL,...")]
    pub chi: Option<Vec<String>>,

    /// Combination coefficients, comma separated.
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_hyphen_values = true,
        value_name = "REAL,..."
    )]
    pub coeff: Option<Vec<f64>>,

    /// Seed for the random model's phases.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    /// Directory for reports and sample dumps.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy, Debug)]
pub enum Command {
    /// Compute or validate zero caches for zeta and each character.
    Zeros,
    /// Distribution report for the combination statistic at zeta zeros.
    Clt,
    /// Joint-vs-product rectangle report for two characters.
    Independence,
    /// Random-model second moment: exact decomposition vs Monte Carlo.
    Model,
    /// Zero-sum Fourier expansion against its Bessel-product prediction.
    Fourier,
    /// Zero-coincidence and near-miss profiles.
    Audit,
}

impl Cli {
    /// Config file (or defaults) with flag overrides applied and validated.
    pub fn resolve_config(&self) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(t) = self.t {
            config.t = t;
        }
        if let Some(chi) = &self.chi {
            config.characters = chi.clone();
        }
        if let Some(coeff) = &self.coeff {
            config.coefficients = coeff.clone();
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(out) = &self.out {
            config.output_dir = out.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let config = cli.resolve_config()?;
    match cli.command {
        Command::Zeros => cmd_zeros(&config),
        Command::Clt => cmd_clt(&config),
        Command::Independence => cmd_independence(&config),
        Command::Model => cmd_model(&config),
        Command::Fourier => cmd_fourier(&config),
        Command::Audit => cmd_audit(&config),
    }
}
