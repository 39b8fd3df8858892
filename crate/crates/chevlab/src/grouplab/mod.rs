//! Finite subgroup enumeration: breadth-first closure with canonical
//! byte encodings, kernel guards, and exact membership.
//!
//! Elements are deduplicated by their full entry encoding (never a digest),
//! so set membership is exact. The engine stores encodings rather than
//! matrices; frontier elements are decoded on demand, which keeps memory at
//! a few dozen bytes per element even for large runs.

mod cache;
mod ops;

pub use cache::{read_subgroup, write_subgroup, CacheError};
pub use ops::{
    absolute_gens, adaptive_closure, congruent, elementary_gens, elementary_subgroup,
    kernel_member, mixed_commutator, relative_elementary, y_gens, z_gens,
};

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::chevrep::ChevRep;
use crate::matrix::Matrix;
use crate::rings::{FiniteRing, Ideal, RingElem};
use crate::rootsys::RootId;
use crate::scalar::Scalar;

pub type RingWord = Vec<(RootId, RingElem)>;
pub type RingMatrix = Matrix<RingElem>;

/// Fixed-width canonical byte encoding of ring matrices.
#[derive(Debug, Clone)]
pub struct Encoder {
    n: usize,
    widths: Vec<usize>,
    moduli: Vec<u32>,
}

impl Encoder {
    pub fn new(ring: &FiniteRing, n: usize) -> Self {
        let widths = ring
            .moduli()
            .iter()
            .map(|&m| if m <= 256 { 1 } else if m <= 65536 { 2 } else { 4 })
            .collect();
        Encoder { n, widths, moduli: ring.moduli().to_vec() }
    }

    pub fn element_len(&self) -> usize {
        self.n * self.n * self.widths.iter().sum::<usize>()
    }

    pub fn encode(&self, mat: &RingMatrix) -> Vec<u8> {
        let mut buf = Vec::with_capacity(self.element_len());
        for entry in mat.entries() {
            for (&r, &w) in entry.residues().iter().zip(&self.widths) {
                buf.extend_from_slice(&r.to_le_bytes()[..w]);
            }
        }
        buf
    }

    pub fn decode(&self, bytes: &[u8], ring: &FiniteRing) -> RingMatrix {
        let mut pos = 0;
        let mut rows = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for _ in 0..self.n {
                let mut residues = Vec::with_capacity(self.moduli.len());
                for &w in &self.widths {
                    let mut le = [0u8; 4];
                    le[..w].copy_from_slice(&bytes[pos..pos + w]);
                    residues.push(u32::from_le_bytes(le) as i64);
                    pos += w;
                }
                row.push(ring.elem(&residues).expect("encoded residues are reduced"));
            }
            rows.push(row);
        }
        Matrix::from_rows(rows)
    }
}

/// A generator: its defining word and evaluated matrix.
#[derive(Debug, Clone)]
pub struct Gen {
    pub word: RingWord,
    pub mat: RingMatrix,
}

impl Gen {
    pub fn from_word(rep: &ChevRep, ring: &FiniteRing, word: RingWord) -> Self {
        let mat = rep.eval_word(&word, &ring.zero()).mat;
        Gen { word, mat }
    }

    pub fn inverse(&self, rep: &ChevRep, ring: &FiniteRing) -> Gen {
        let word: RingWord = self.word.iter().rev().map(|(r, t)| (*r, t.neg())).collect();
        Gen::from_word(rep, ring, word)
    }

    pub fn render(&self, rep: &ChevRep) -> String {
        if self.word.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .word
            .iter()
            .map(|(r, t)| format!("x[{}]({})", rep.system().name(*r), t))
            .collect();
        parts.join(" ")
    }
}

/// How an element entered the closure, for witness reconstruction.
#[derive(Debug, Clone, Copy)]
enum Provenance {
    Identity,
    Seed(u32),
    LeftMul { gen: u32, parent: u32 },
    Conj { conjugator: u32, parent: u32 },
}

#[derive(Debug, Clone, Default)]
pub struct ClosureStats {
    pub products: u64,
    pub conjugations: u64,
    pub peak_frontier: usize,
}

/// A fully enumerated subgroup with a membership oracle.
pub struct Subgroup {
    pub label: String,
    encoder: Encoder,
    ring: FiniteRing,
    index: HashMap<Vec<u8>, u32>,
    order: Vec<Vec<u8>>,
    provenance: Vec<Provenance>,
    seeds: Vec<Gen>,
    conjugators: Vec<Gen>,
    pub complete: bool,
    pub stats: ClosureStats,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("label", &self.label)
            .field("len", &self.order.len())
            .field("complete", &self.complete)
            .finish()
    }
}

#[derive(Debug)]
pub enum EngineError {
    /// An element escaped the declared congruence kernel: the generator set
    /// does not live at the level it claims.
    GuardEscape { label: String, word: String },
    /// A subgroup was used where a complete enumeration is required.
    Incomplete { label: String },
    /// Two constructions that must agree produced different sets.
    ConstructionMismatch { label: String, left: usize, right: usize },
    /// Commutator containment spot-check failed.
    CommutatorEscape { label: String, word: String },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::GuardEscape { label, word } => {
                write!(f, "{label}: element escaped its congruence kernel: {word}")
            }
            EngineError::Incomplete { label } => {
                write!(f, "{label}: enumeration incomplete; refusing to certify")
            }
            EngineError::ConstructionMismatch { label, left, right } => {
                write!(f, "{label}: construction mismatch ({left} vs {right} elements)")
            }
            EngineError::CommutatorEscape { label, word } => {
                write!(f, "{label}: sampled commutator left the enumerated set: {word}")
            }
        }
    }
}

impl std::error::Error for EngineError {}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn encoder(&self) -> &Encoder {
        &self.encoder
    }

    pub fn generators(&self) -> &[Gen] {
        &self.seeds
    }

    pub fn contains_mat(&self, mat: &RingMatrix) -> bool {
        self.index.contains_key(self.encoder.encode(mat).as_slice())
    }

    pub fn contains_encoding(&self, enc: &[u8]) -> bool {
        self.index.contains_key(enc)
    }

    /// Exact membership; errors on a partial enumeration rather than give a
    /// meaningless answer.
    pub fn member(&self, mat: &RingMatrix) -> Result<bool, EngineError> {
        if !self.complete {
            return Err(EngineError::Incomplete { label: self.label.clone() });
        }
        Ok(self.contains_mat(mat))
    }

    pub fn encodings(&self) -> impl Iterator<Item = &[u8]> {
        self.order.iter().map(|v| v.as_slice())
    }

    pub fn sorted_encodings(&self) -> Vec<Vec<u8>> {
        let mut all = self.order.clone();
        all.sort();
        all
    }

    pub fn decode(&self, enc: &[u8]) -> RingMatrix {
        self.encoder.decode(enc, &self.ring)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order.iter().all(|e| other.index.contains_key(e))
    }

    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    /// First encoding (in discovery order) not contained in `other`,
    /// rendered as a generator word.
    pub fn witness_not_in(&self, other: &Subgroup, rep: &ChevRep) -> Option<String> {
        let enc = self.order.iter().find(|e| !other.index.contains_key(e.as_slice()))?;
        Some(self.word_for(enc, rep))
    }

    /// Reconstructs a defining generator word from closure provenance.
    pub fn word_for(&self, enc: &[u8], rep: &ChevRep) -> String {
        let Some(&idx) = self.index.get(enc) else {
            return "<not in subgroup>".to_string();
        };
        let word = self.word_of_index(idx);
        if word.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = word
            .iter()
            .map(|(r, t)| format!("x[{}]({})", rep.system().name(*r), t))
            .collect();
        parts.join(" ")
    }

    fn word_of_index(&self, idx: u32) -> RingWord {
        match self.provenance[idx as usize] {
            Provenance::Identity => Vec::new(),
            Provenance::Seed(g) => self.seeds[g as usize].word.clone(),
            Provenance::LeftMul { gen, parent } => {
                let mut w = self.seeds[gen as usize].word.clone();
                w.extend(self.word_of_index(parent));
                w
            }
            Provenance::Conj { conjugator, parent } => {
                let c = &self.conjugators[conjugator as usize].word;
                let mut w = c.clone();
                w.extend(self.word_of_index(parent));
                w.extend(c.iter().rev().map(|(r, t)| (*r, t.neg())));
                w
            }
        }
    }

    /// Spot-check: products of randomly chosen elements stay inside.
    pub fn spot_check_closure(&self, rng: &mut impl rand::Rng, samples: usize) -> bool {
        if self.order.is_empty() {
            return true;
        }
        for _ in 0..samples {
            let u = self.decode(&self.order[rng.gen_range(0..self.order.len())]);
            let v = self.decode(&self.order[rng.gen_range(0..self.order.len())]);
            if !self.contains_mat(&u.mul(&v)) {
                return false;
            }
        }
        true
    }
}

/// Closure request. Seeds are multiplied on the left (inverses are added
/// automatically); conjugators, when present, close the set under
/// conjugation as well.
pub struct ClosureSpec<'a> {
    pub rep: &'a ChevRep,
    pub ring: &'a FiniteRing,
    pub label: String,
    pub seeds: Vec<Gen>,
    pub conjugators: Vec<Gen>,
    /// Abort if an element leaves the congruence kernel of this level.
    pub guard: Option<&'a Ideal>,
    pub budget: usize,
}

pub const DEFAULT_BUDGET: usize = 1 << 24;

/// Breadth-first closure of the seed set under left multiplication by the
/// seeds and their inverses and conjugation by the conjugator set and its
/// inverses. Deterministic: the result is a set, and discovery order is
/// fixed by the (frontier, generator) iteration order.
pub fn closure(spec: ClosureSpec<'_>) -> Result<Subgroup, EngineError> {
    let encoder = Encoder::new(spec.ring, spec.rep.dim());
    let rep = spec.rep;
    let ring = spec.ring;

    let dedup_gens = |gens: Vec<Gen>| -> Vec<Gen> {
        let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
        let mut out = Vec::new();
        for g in gens {
            let mut with_inv = vec![g.inverse(rep, ring), g];
            while let Some(g) = with_inv.pop() {
                let enc = encoder.encode(&g.mat);
                if !g.mat.is_identity() && seen.insert(enc, ()).is_none() {
                    out.push(g);
                }
            }
        }
        out
    };
    let seeds = dedup_gens(spec.seeds);
    let conjugators = dedup_gens(spec.conjugators);

    let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
    let mut order: Vec<Vec<u8>> = Vec::new();
    let mut provenance: Vec<Provenance> = Vec::new();
    let mut stats = ClosureStats::default();

    let identity = Matrix::identity_like(&ring.zero(), rep.dim());
    let id_enc = encoder.encode(&identity);
    index.insert(id_enc.clone(), 0);
    order.push(id_enc);
    provenance.push(Provenance::Identity);

    let guard_ok = |mat: &RingMatrix| -> bool {
        let Some(ideal) = spec.guard else { return true };
        let n = mat.size();
        for i in 0..n {
            for j in 0..n {
                let mut e = mat.at(i, j).clone();
                if i == j {
                    e = e.sub(&ring.one());
                }
                if !ideal.contains(&e) {
                    return false;
                }
            }
        }
        true
    };

    // Seed insertion.
    let mut frontier: Vec<u32> = vec![0];
    for (gi, g) in seeds.iter().enumerate() {
        let enc = encoder.encode(&g.mat);
        if !index.contains_key(&enc) {
            if !guard_ok(&g.mat) {
                return Err(EngineError::GuardEscape {
                    label: spec.label,
                    word: g.render(rep),
                });
            }
            let idx = order.len() as u32;
            index.insert(enc.clone(), idx);
            order.push(enc);
            provenance.push(Provenance::Seed(gi as u32));
            frontier.push(idx);
        }
    }

    let seed_mats: Vec<&RingMatrix> = seeds.iter().map(|g| &g.mat).collect();
    let conj_pairs: Vec<(RingMatrix, RingMatrix)> = conjugators
        .iter()
        .map(|g| (g.mat.clone(), g.inverse(rep, ring).mat))
        .collect();

    while !frontier.is_empty() {
        stats.peak_frontier = stats.peak_frontier.max(frontier.len());
        // Expand in parallel per frontier chunk; merge sequentially in a
        // fixed order so discovery order (hence provenance) is stable.
        let chunks: Vec<Vec<(Vec<u8>, Provenance)>> = frontier
            .par_chunks(256)
            .map(|chunk| {
                let mut out = Vec::new();
                for &idx in chunk {
                    let m = encoder.decode(&order[idx as usize], ring);
                    for (gi, g) in seed_mats.iter().enumerate() {
                        let cand = g.mul(&m);
                        out.push((
                            encoder.encode(&cand),
                            Provenance::LeftMul { gen: gi as u32, parent: idx },
                        ));
                    }
                    for (ci, (c, cinv)) in conj_pairs.iter().enumerate() {
                        let cand = c.mul(&m).mul(cinv);
                        out.push((
                            encoder.encode(&cand),
                            Provenance::Conj { conjugator: ci as u32, parent: idx },
                        ));
                    }
                }
                out
            })
            .collect();
        stats.products += (frontier.len() * seed_mats.len()) as u64;
        stats.conjugations += (frontier.len() * conj_pairs.len()) as u64;

        let mut next = Vec::new();
        for chunk in chunks {
            for (enc, prov) in chunk {
                if index.contains_key(&enc) {
                    continue;
                }
                if order.len() >= spec.budget {
                    return Ok(Subgroup {
                        label: spec.label,
                        encoder,
                        ring: ring.clone(),
                        index,
                        order,
                        provenance,
                        seeds,
                        conjugators,
                        complete: false,
                        stats,
                    });
                }
                let idx = order.len() as u32;
                index.insert(enc.clone(), idx);
                order.push(enc);
                provenance.push(prov);
                next.push(idx);
            }
        }

        // Guard check on the newly added layer.
        if spec.guard.is_some() {
            for &idx in &next {
                let m = encoder.decode(&order[idx as usize], ring);
                if !guard_ok(&m) {
                    let sub = Subgroup {
                        label: spec.label.clone(),
                        encoder,
                        ring: ring.clone(),
                        index,
                        order,
                        provenance,
                        seeds,
                        conjugators,
                        complete: false,
                        stats,
                    };
                    let word = sub.word_for(&sub.order[idx as usize].clone(), rep);
                    return Err(EngineError::GuardEscape { label: sub.label, word });
                }
            }
        }
        frontier = next;
    }

    Ok(Subgroup {
        label: spec.label,
        encoder,
        ring: ring.clone(),
        index,
        order,
        provenance,
        seeds,
        conjugators,
        complete: true,
        stats,
    })
}
