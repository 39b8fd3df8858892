//! Scenario runner: binds a representation, ring and ideal pair, executes
//! verification suites, and emits structured reports.

mod suites;

pub use suites::{generation_seeds, SUITE_ORDER};

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::rc::Rc;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chevrep::{ChevRep, RepError};
use crate::grouplab::{self, EngineError, Subgroup};
use crate::rings::{check_condition_star, FiniteRing, Ideal, RingError, StarReport};
use crate::rootsys::{RootError, SystemLabel};

#[derive(Debug)]
pub enum VerifierError {
    Config(String),
    Ring(RingError),
    Root(RootError),
    Rep(RepError),
    Engine(EngineError),
    Io(std::io::Error),
}

impl std::fmt::Display for VerifierError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifierError::Config(m) => write!(f, "config error: {m}"),
            VerifierError::Ring(e) => write!(f, "{e}"),
            VerifierError::Root(e) => write!(f, "{e}"),
            VerifierError::Rep(e) => write!(f, "{e}"),
            VerifierError::Engine(e) => write!(f, "{e}"),
            VerifierError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifierError {}

impl From<RingError> for VerifierError {
    fn from(e: RingError) -> Self {
        VerifierError::Ring(e)
    }
}
impl From<RootError> for VerifierError {
    fn from(e: RootError) -> Self {
        VerifierError::Root(e)
    }
}
impl From<RepError> for VerifierError {
    fn from(e: RepError) -> Self {
        VerifierError::Rep(e)
    }
}
impl From<EngineError> for VerifierError {
    fn from(e: EngineError) -> Self {
        VerifierError::Engine(e)
    }
}
impl From<std::io::Error> for VerifierError {
    fn from(e: std::io::Error) -> Self {
        VerifierError::Io(e)
    }
}

fn default_seed() -> u64 {
    1
}
fn default_samples() -> usize {
    200
}
fn default_word_len() -> usize {
    12
}
fn default_budget() -> usize {
    grouplab::DEFAULT_BUDGET
}
fn default_ring_samples() -> usize {
    100
}
fn default_levi_samples() -> usize {
    25
}

/// Scenario file contents (TOML).
#[derive(Debug, Clone, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub system: String,
    pub ring: Vec<u32>,
    /// Generators of the two ideals, one residue tuple per generator.
    pub ideal_a: Vec<Vec<i64>>,
    pub ideal_b: Vec<Vec<i64>>,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub conjugator_samples: usize,
    #[serde(default = "default_ring_samples")]
    pub ring_samples: usize,
    #[serde(default = "default_levi_samples")]
    pub levi_samples: usize,
    #[serde(default = "default_word_len")]
    pub max_word_length: usize,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Fixed long root for the single-long-root generation suite.
    #[serde(default)]
    pub long_root: Option<String>,
    /// Fundamental names spanning the rank-2 subsystem for the stability
    /// suite; defaults to the first two fundamentals.
    #[serde(default)]
    pub stability_subsystem: Option<Vec<String>>,
    /// Marks scenarios whose enumerations are disproportionately large;
    /// the CLI refuses them unless --heavy is passed.
    #[serde(default)]
    pub heavy: bool,
}

impl ScenarioConfig {
    pub fn parse(source: &str) -> Result<Self, VerifierError> {
        toml::from_str(source).map_err(|e| VerifierError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub check: String,
    pub word: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    pub checks_total: u64,
    pub checks_failed: u64,
    pub subgroup_orders: BTreeMap<String, usize>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub duration_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct StarSummary {
    pub holds: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub scenario: String,
    pub system: String,
    pub ring: String,
    pub ideal_a: String,
    pub ideal_b: String,
    pub ideal_ab: String,
    pub seed: u64,
    pub condition_star: StarSummary,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.suites.iter().any(|s| s.status == Status::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scenario {} [{} over {}], A = {}, B = {}, AB = {}, seed {}\n",
            self.scenario, self.system, self.ring, self.ideal_a, self.ideal_b, self.ideal_ab,
            self.seed
        ));
        out.push_str(&format!(
            "hypothesis check: {}\n",
            if self.condition_star.holds {
                "holds".to_string()
            } else {
                format!("violated ({})", self.condition_star.diagnostics.join("; "))
            }
        ));
        for s in &self.suites {
            let status = match s.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!(
                "{status} {:<24} checks {}/{} failed, {} ms",
                s.suite,
                s.checks_failed,
                s.checks_total,
                s.duration_ms
            ));
            if let Some(r) = &s.skip_reason {
                out.push_str(&format!(" ({r})"));
            }
            out.push('\n');
            for (name, order) in &s.subgroup_orders {
                out.push_str(&format!("     |{name}| = {order}\n"));
            }
            for n in &s.notes {
                out.push_str(&format!("     note: {n}\n"));
            }
            for w in &s.witnesses {
                out.push_str(&format!("     witness [{}]: {} ({})\n", w.check, w.word, w.detail));
            }
        }
        out
    }
}

/// A scenario bound to live objects, with memoized subgroup enumerations.
pub struct Context {
    pub cfg: ScenarioConfig,
    pub label: SystemLabel,
    pub rep: ChevRep,
    pub ring: Arc<FiniteRing>,
    pub ideal_a: Ideal,
    pub ideal_b: Ideal,
    pub ideal_ab: Ideal,
    pub star: StarReport,
    pub cache_dir: Option<PathBuf>,
    subgroups: RefCell<HashMap<String, Rc<Subgroup>>>,
}

impl Context {
    pub fn new(cfg: ScenarioConfig, cache_dir: Option<PathBuf>) -> Result<Self, VerifierError> {
        let label = SystemLabel::parse(&cfg.system)?;
        let rep = ChevRep::new(label)?;
        let ring = Arc::new(FiniteRing::new(&cfg.ring)?);
        let parse_ideal = |gens: &[Vec<i64>]| -> Result<Ideal, VerifierError> {
            let mut elems = Vec::new();
            for g in gens {
                elems.push(ring.elem(g)?);
            }
            Ok(Ideal::from_generators(ring.clone(), &elems)?)
        };
        let ideal_a = parse_ideal(&cfg.ideal_a)?;
        let ideal_b = parse_ideal(&cfg.ideal_b)?;
        let ideal_ab = ideal_a.product(&ideal_b)?;
        let star = check_condition_star(&ring, label);
        Ok(Context {
            cfg,
            label,
            rep,
            ring,
            ideal_a,
            ideal_b,
            ideal_ab,
            star,
            cache_dir,
            subgroups: RefCell::new(HashMap::new()),
        })
    }

    pub fn ambient(&self) -> String {
        format!("{} over {}", self.label, self.ring.describe())
    }

    /// Memoized (and optionally disk-cached) subgroup enumeration.
    pub fn subgroup<F>(&self, key: &str, build: F) -> Result<Rc<Subgroup>, VerifierError>
    where
        F: FnOnce() -> Result<Subgroup, EngineError>,
    {
        if let Some(found) = self.subgroups.borrow().get(key) {
            return Ok(found.clone());
        }
        if let Some(dir) = &self.cache_dir {
            let path = dir.join(format!("{}-{key}.sub", self.cfg.name));
            if path.exists() {
                if let Ok(sub) = grouplab::read_subgroup(&path, &self.ring, self.rep.dim()) {
                    let rc = Rc::new(sub);
                    self.subgroups.borrow_mut().insert(key.to_string(), rc.clone());
                    return Ok(rc);
                }
            }
        }
        let sub = build()?;
        if let Some(dir) = &self.cache_dir {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{}-{key}.sub", self.cfg.name));
            grouplab::write_subgroup(&path, &self.ambient(), &sub)
                .map_err(|e| VerifierError::Config(e.to_string()))?;
        }
        let rc = Rc::new(sub);
        self.subgroups.borrow_mut().insert(key.to_string(), rc.clone());
        Ok(rc)
    }

    /// E(Phi, R, AB): the relative elementary subgroup at the product level.
    pub fn rel_ab(&self) -> Result<Rc<Subgroup>, VerifierError> {
        self.subgroup("rel-ab", || {
            grouplab::relative_elementary(
                &self.rep,
                &self.ring,
                &self.ideal_ab,
                None,
                self.cfg.budget,
                "E(R,AB)",
            )
        })
    }

    /// [E(A), E(B)] from the unrelativised generators.
    pub fn mixed_unrel(&self) -> Result<Rc<Subgroup>, VerifierError> {
        self.subgroup("mixed-unrel", || {
            let xg = grouplab::elementary_gens(&self.rep, &self.ring, &self.ideal_a);
            let yg = grouplab::elementary_gens(&self.rep, &self.ring, &self.ideal_b);
            let mut rng = self.rng("mixed-unrel");
            grouplab::mixed_commutator(
                &self.rep,
                &self.ring,
                &xg,
                &yg,
                Some(&self.ideal_ab),
                self.cfg.budget,
                "[E(A),E(B)]",
                &mut rng,
                32,
            )
        })
    }

    /// [E(R,A), E(R,B)] from the conjugated generator families.
    pub fn mixed_rel(&self) -> Result<Rc<Subgroup>, VerifierError> {
        self.subgroup("mixed-rel", || {
            let cs = self.ring.elements();
            let xg = grouplab::z_gens(&self.rep, &self.ring, &self.ideal_a, &cs);
            let yg = grouplab::z_gens(&self.rep, &self.ring, &self.ideal_b, &cs);
            let mut rng = self.rng("mixed-rel");
            grouplab::mixed_commutator(
                &self.rep,
                &self.ring,
                &xg,
                &yg,
                Some(&self.ideal_ab),
                self.cfg.budget,
                "[E(R,A),E(R,B)]",
                &mut rng,
                32,
            )
        })
    }

    /// Deterministic per-purpose random stream.
    pub fn rng(&self, purpose: &str) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(self.cfg.seed.to_le_bytes());
        hasher.update(purpose.as_bytes());
        let digest = hasher.finalize();
        let mut seed = [0u8; 32];
        seed.copy_from_slice(&digest);
        rand_chacha::ChaCha8Rng::from_seed(seed)
    }
}

/// Runs the scenario's suites (or the explicit list given) and assembles
/// the report. Suites gated on the ring hypothesis are skipped with the
/// diagnostic when it fails; a failing identity suite skips everything
/// after it, since every suite depends on those conventions.
pub fn run_scenario(
    cfg: ScenarioConfig,
    suite_filter: Option<&[String]>,
    cache_dir: Option<PathBuf>,
) -> Result<Report, VerifierError> {
    let ctx = Context::new(cfg, cache_dir)?;
    let requested: Vec<String> = match suite_filter {
        Some(list) if !list.is_empty() => list.to_vec(),
        _ if !ctx.cfg.suites.is_empty() => ctx.cfg.suites.clone(),
        _ => SUITE_ORDER.iter().map(|s| s.to_string()).collect(),
    };
    let mut suites = Vec::new();
    let mut bank_failed = false;
    for name in &requested {
        let started = std::time::Instant::now();
        let mut report = if bank_failed && name != "identities" {
            suites::skipped(name, "identity bank failed; conventions untrusted")
        } else if suites::requires_star(name) && !ctx.star.holds {
            let diag = ctx
                .star
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            suites::skipped(name, &format!("ring hypothesis violated: {diag}"))
        } else {
            suites::run_suite(&ctx, name)?
        };
        report.duration_ms = started.elapsed().as_millis();
        if name == "identities" && report.status == Status::Fail {
            bank_failed = true;
        }
        suites.push(report);
    }
    Ok(Report {
        tool: "chevlab".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: ctx.cfg.name.clone(),
        system: ctx.label.to_string(),
        ring: ctx.ring.describe(),
        ideal_a: ctx.ideal_a.describe(),
        ideal_b: ctx.ideal_b.describe(),
        ideal_ab: ctx.ideal_ab.describe(),
        seed: ctx.cfg.seed,
        condition_star: StarSummary {
            holds: ctx.star.holds,
            diagnostics: ctx.star.violations.iter().map(|v| v.to_string()).collect(),
        },
        suites,
    })
}
