//! Command-line entry point: structure-constant tables, the identity bank,
//! subgroup enumeration with on-disk caching, and scenario verification.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;

use chevlab::chevrep::bank::IdentityBank;
use chevlab::chevrep::ChevRep;
use chevlab::rings::FiniteRing;
use chevlab::rootsys::SystemLabel;
use chevlab::verifier::{run_scenario, Report, ScenarioConfig};

#[derive(Parser)]
#[command(name = "chevlab", version, about = "Exact checks for elementary subgroups of Chevalley groups over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the commutator expansion tables and verify the pinned values.
    Constants {
        /// Restrict to one system (A2, C2, G2, A3, C3).
        #[arg(long)]
        system: Option<String>,
    },
    /// Verify the identity bank symbolically, and optionally over Z/m.
    Identities {
        /// Bank file; defaults to the built-in bank.
        #[arg(long)]
        bank: Option<PathBuf>,
        /// Also re-verify every entry over Z/m at random assignments.
        #[arg(long)]
        modulus: Option<u32>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Enumerate a named subgroup of a scenario and cache it.
    Enumerate {
        #[arg(long)]
        scenario: PathBuf,
        /// One of: rel-ab, mixed-unrel, mixed-rel, generation-closure.
        #[arg(long)]
        target: String,
        #[arg(long)]
        cache: PathBuf,
    },
    /// Run scenario suites and emit text plus a machine-readable report.
    Verify {
        #[arg(long, required = true, num_args = 1..)]
        scenario: Vec<PathBuf>,
        /// Subset of suites to run (defaults to the scenario's list).
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Where to write the JSON report (an array, one entry per scenario).
        #[arg(long, default_value = "chevlab-report.json")]
        report: PathBuf,
        /// Also run scenarios flagged heavy.
        #[arg(long)]
        heavy: bool,
    },
    /// Render a JSON report as text.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Constants { system } => constants(system),
        Command::Identities { bank, modulus, samples, seed } => {
            identities(bank, modulus, samples, seed)
        }
        Command::Enumerate { scenario, target, cache } => enumerate(scenario, target, cache),
        Command::Verify { scenario, suite, cache, report, heavy } => {
            verify(scenario, suite, cache, report, heavy)
        }
        Command::Report { input } => {
            let text = std::fs::read_to_string(input)?;
            let reports: Vec<Report> = serde_json::from_str(&text)?;
            for r in &reports {
                println!("{}", r.render_text());
            }
            Ok(if reports.iter().any(|r| r.failed()) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

/// Pinned fundamental-pair expansions per system, used as the verification
/// gate of the `constants` command.
fn pinned_relations(label: SystemLabel) -> Vec<(&'static str, &'static str, Vec<(i32, i32, i64)>)> {
    match label {
        SystemLabel::A(_) => vec![("a1", "a2", vec![(1, 1, 1)])],
        SystemLabel::C(_) => vec![("a2", "a1", vec![(1, 1, 1), (1, 2, 1)])],
        SystemLabel::G2 => vec![
            ("a1", "a2", vec![(1, 1, 1), (2, 1, 1), (3, 1, 1), (3, 2, 2)]),
            ("a1", "a1+a2", vec![(1, 1, 2), (2, 1, 3), (1, 2, -3)]),
            ("a1", "2*a1+a2", vec![(1, 1, 3)]),
            ("a2", "3*a1+a2", vec![(1, 1, 1)]),
            ("a1+a2", "2*a1+a2", vec![(1, 1, -3)]),
        ],
    }
}

fn constants(system: Option<String>) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let labels: Vec<SystemLabel> = match system {
        Some(s) => vec![SystemLabel::parse(&s)?],
        None => vec![SystemLabel::A(2), SystemLabel::C(2), SystemLabel::G2],
    };
    let mut ok = true;
    for label in labels {
        let rep = ChevRep::new(label)?;
        let sys = rep.system();
        println!("== {label} (dimension {}) ==", rep.dim());
        let table = rep.commutator_table()?;
        let mut keys: Vec<_> = table.keys().collect();
        keys.sort();
        for &(alpha, beta) in keys {
            let factors = &table[&(alpha, beta)];
            let rendered: Vec<String> = factors
                .iter()
                .map(|f| {
                    let coeff = if f.constant == 1 {
                        String::new()
                    } else {
                        format!("{}*", f.constant)
                    };
                    format!("x[{}]({coeff}a^{}b^{})", sys.name(f.root), f.i, f.j)
                })
                .collect();
            println!(
                "  [x[{}](a), x[{}](b)] = {}",
                sys.name(alpha),
                sys.name(beta),
                if rendered.is_empty() { "1".to_string() } else { rendered.join(" ") }
            );
        }
        for (a, bta, factors) in pinned_relations(label) {
            let alpha = sys.parse_root(a)?;
            let beta = sys.parse_root(bta)?;
            let pass = rep.check_relation(alpha, beta, &factors);
            println!("  pinned [{a}, {bta}]: {}", if pass { "verified" } else { "MISMATCH" });
            ok &= pass;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn identities(
    bank_path: Option<PathBuf>,
    modulus: Option<u32>,
    samples: usize,
    seed: u64,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let bank = match bank_path {
        Some(p) => IdentityBank::parse(&std::fs::read_to_string(p)?)?,
        None => IdentityBank::builtin(),
    };
    let mut reps: HashMap<SystemLabel, ChevRep> = HashMap::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failed = 0usize;
    for entry in &bank.entries {
        let rep = match reps.entry(entry.system) {
            std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => v.insert(ChevRep::new(entry.system)?),
        };
        match IdentityBank::verify_entry(rep, entry) {
            Ok(()) => println!("PASS {:<32} [{}] symbolic", entry.name, entry.system),
            Err(m) => {
                failed += 1;
                println!("FAIL {:<32} [{}] {m}", entry.name, entry.system);
            }
        }
        if let Some(m) = modulus {
            let ring = FiniteRing::zmod(m);
            match IdentityBank::verify_entry_over_ring(rep, entry, &ring, &mut rng, samples) {
                Ok(()) => println!(
                    "PASS {:<32} [{}] over Z/{m}, {samples} assignments",
                    entry.name, entry.system
                ),
                Err(w) => {
                    failed += 1;
                    println!("FAIL {:<32} [{}] over Z/{m}: {w}", entry.name, entry.system);
                }
            }
        }
    }
    println!("{} entries, {} failures", bank.entries.len(), failed);
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn enumerate(
    scenario: PathBuf,
    target: String,
    cache: PathBuf,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let cfg = ScenarioConfig::parse(&std::fs::read_to_string(&scenario)?)?;
    let name = cfg.name.clone();
    let ctx = chevlab::verifier::Context::new(cfg, Some(cache.clone()))?;
    let sub = match target.as_str() {
        "rel-ab" => ctx.rel_ab()?,
        "mixed-unrel" => ctx.mixed_unrel()?,
        "mixed-rel" => ctx.mixed_rel()?,
        "generation-closure" => {
            let roots: Vec<_> = ctx.rep.system().roots().collect();
            let seeds = chevlab::verifier::generation_seeds(&ctx, &roots);
            ctx.subgroup("generation-closure", || {
                chevlab::grouplab::adaptive_closure(
                    &ctx.rep,
                    &ctx.ring,
                    "<z(AB), y(A,B)>",
                    seeds,
                    Vec::new(),
                    Some(&ctx.ideal_ab),
                    ctx.cfg.budget,
                )
            })?
        }
        other => return Err(format!("unknown target {other:?}").into()),
    };
    println!(
        "{name}/{target}: {} elements, complete = {}, cached under {}",
        sub.len(),
        sub.complete,
        cache.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(
    scenarios: Vec<PathBuf>,
    suites: Vec<String>,
    cache: Option<PathBuf>,
    report_path: PathBuf,
    heavy: bool,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let mut reports = Vec::new();
    let mut any_failed = false;
    for path in scenarios {
        let cfg = ScenarioConfig::parse(&std::fs::read_to_string(&path)?)?;
        if cfg.heavy && !heavy {
            eprintln!("skipping heavy scenario {} (pass --heavy to run it)", cfg.name);
            continue;
        }
        let filter = if suites.is_empty() { None } else { Some(suites.as_slice()) };
        let report = run_scenario(cfg, filter, cache.clone())?;
        println!("{}", report.render_text());
        any_failed |= report.failed();
        reports.push(report);
    }
    std::fs::write(&report_path, serde_json::to_string_pretty(&reports)?)?;
    println!("report written to {}", report_path.display());
    Ok(if any_failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
