//! The identity bank: a data file of generator-word identities, each
//! certified by expanding both sides to matrices over Z[vars] and comparing
//! entry-wise. New identities can be added to the file without touching
//! code.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Deserialize;

use crate::rings::FiniteRing;
use crate::rootsys::SystemLabel;

use super::word::{parse_word, WordExpr};
use super::{ChevRep, RepError};

/// The identities shipped with the crate.
pub const BUILTIN_BANK: &str = include_str!("../../data/identities.toml");

#[derive(Debug, Deserialize)]
struct RawBank {
    entry: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
struct RawEntry {
    name: String,
    system: String,
    anchor: String,
    vars: Vec<String>,
    lhs: String,
    rhs: String,
}

pub struct BankEntry {
    pub name: String,
    pub system: SystemLabel,
    pub anchor: String,
    pub vars: Vec<String>,
    pub lhs: WordExpr,
    pub rhs: WordExpr,
}

pub struct IdentityBank {
    pub entries: Vec<BankEntry>,
}

/// Witness of a failed identity: the first differing matrix entry with the
/// polynomial each side produced there.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub entry: String,
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: entry ({},{}) differs: lhs = {}, rhs = {}",
            self.entry, self.row, self.col, self.lhs, self.rhs
        )
    }
}

#[derive(Debug)]
pub enum BankError {
    Parse(String),
    Rep(RepError),
}

impl fmt::Display for BankError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BankError::Parse(e) => write!(f, "bank parse error: {e}"),
            BankError::Rep(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BankError {}

impl IdentityBank {
    pub fn parse(source: &str) -> Result<Self, BankError> {
        let raw: RawBank = toml::from_str(source).map_err(|e| BankError::Parse(e.to_string()))?;
        let mut entries = Vec::with_capacity(raw.entry.len());
        let mut systems: BTreeMap<SystemLabel, crate::rootsys::RootSystem> = BTreeMap::new();
        for e in raw.entry {
            let label = SystemLabel::parse(&e.system)
                .map_err(|err| BankError::Parse(format!("{}: {err}", e.name)))?;
            let sys = systems.entry(label).or_insert_with(|| {
                crate::rootsys::RootSystem::new(label).expect("supported label")
            });
            let lhs = parse_word(&e.lhs, sys)
                .map_err(|err| BankError::Parse(format!("{} lhs: {err}", e.name)))?;
            let rhs = parse_word(&e.rhs, sys)
                .map_err(|err| BankError::Parse(format!("{} rhs: {err}", e.name)))?;
            for side in [&lhs, &rhs] {
                for v in side.variables() {
                    if !e.vars.contains(&v) {
                        return Err(BankError::Parse(format!(
                            "{}: variable {v} not declared",
                            e.name
                        )));
                    }
                }
            }
            entries.push(BankEntry {
                name: e.name,
                system: label,
                anchor: e.anchor,
                vars: e.vars,
                lhs,
                rhs,
            });
        }
        Ok(IdentityBank { entries })
    }

    pub fn builtin() -> Self {
        Self::parse(BUILTIN_BANK).expect("builtin bank parses")
    }

    /// Certifies one entry symbolically over Z[vars]; on failure returns the
    /// first differing matrix entry as a witness.
    pub fn verify_entry(rep: &ChevRep, entry: &BankEntry) -> Result<(), Mismatch> {
        let lhs = entry.lhs.eval_symbolic(rep);
        let rhs = entry.rhs.eval_symbolic(rep);
        if lhs == rhs {
            return Ok(());
        }
        for i in 0..lhs.size() {
            for j in 0..lhs.size() {
                if lhs.at(i, j) != rhs.at(i, j) {
                    return Err(Mismatch {
                        entry: entry.name.clone(),
                        row: i,
                        col: j,
                        lhs: lhs.at(i, j).to_string(),
                        rhs: rhs.at(i, j).to_string(),
                    });
                }
            }
        }
        unreachable!("matrices differ but no entry does")
    }

    /// Re-verifies one entry over a finite ring at random assignments drawn
    /// from the given generator.
    pub fn verify_entry_over_ring(
        rep: &ChevRep,
        entry: &BankEntry,
        ring: &FiniteRing,
        rng: &mut impl Rng,
        samples: usize,
    ) -> Result<(), Mismatch> {
        for _ in 0..samples {
            let mut assign = BTreeMap::new();
            for v in &entry.vars {
                assign.insert(v.clone(), ring.from_int(rng.gen_range(0..ring.order() as i64)));
            }
            let lhs = entry.lhs.eval_over_ring(rep, &assign, ring).expect("vars assigned");
            let rhs = entry.rhs.eval_over_ring(rep, &assign, ring).expect("vars assigned");
            if lhs != rhs {
                for i in 0..lhs.size() {
                    for j in 0..lhs.size() {
                        if lhs.at(i, j) != rhs.at(i, j) {
                            return Err(Mismatch {
                                entry: format!("{} at {assign:?}", entry.name),
                                row: i,
                                col: j,
                                lhs: lhs.at(i, j).to_string(),
                                rhs: rhs.at(i, j).to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A deliberately corrupted copy of an entry (first generator parameter
    /// negated on the right-hand side), used as a negative control: its
    /// verification must fail with a witness.
    pub fn corrupted(entry: &BankEntry) -> BankEntry {
        fn negate_first(expr: &WordExpr) -> WordExpr {
            match expr {
                WordExpr::Gen { root, coeff } => WordExpr::Gen {
                    root: *root,
                    coeff: crate::scalar::Scalar::neg(coeff),
                },
                WordExpr::Prod(parts) => {
                    let mut parts = parts.clone();
                    parts[0] = negate_first(&parts[0]);
                    WordExpr::Prod(parts)
                }
                WordExpr::Comm(x, y) => {
                    WordExpr::Comm(Box::new(negate_first(x)), y.clone())
                }
                WordExpr::Conj(x, y) => {
                    WordExpr::Conj(Box::new(negate_first(x)), y.clone())
                }
                WordExpr::Inv(x) => WordExpr::Inv(Box::new(negate_first(x))),
            }
        }
        BankEntry {
            name: format!("{}-negative-control", entry.name),
            system: entry.system,
            anchor: entry.anchor.clone(),
            vars: entry.vars.clone(),
            lhs: entry.lhs.clone(),
            rhs: negate_first(&entry.rhs),
        }
    }
}
