//! Finite commutative rings, their ideals, and the hypothesis check that
//! gates the congruence suites.
//!
//! The ring class is deliberately narrow: finite direct products of Z/m.
//! That is enough to realize nontrivial ideals, non-field residue behaviour,
//! and both pass and fail cases of the hypothesis, while every element packs
//! into a few bytes for set-based enumeration.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::rootsys::SystemLabel;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    BadModulus(u64),
    EmptyModuli,
    ResidueCount { expected: usize, got: usize },
    MismatchedRings,
    ClosureOverflow { bound: usize },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::BadModulus(m) => write!(f, "modulus {m} is not >= 2"),
            RingError::EmptyModuli => write!(f, "a ring needs at least one modulus"),
            RingError::ResidueCount { expected, got } => {
                write!(f, "expected {expected} residues, got {got}")
            }
            RingError::MismatchedRings => write!(f, "operands belong to different rings"),
            RingError::ClosureOverflow { bound } => {
                write!(f, "ideal closure exceeded the ring order {bound}; closure is buggy")
            }
        }
    }
}

impl std::error::Error for RingError {}

type Residues = SmallVec<[u32; 2]>;

/// A finite direct product of residue class rings Z/m_1 x ... x Z/m_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    moduli: Vec<u32>,
    order: usize,
}

impl FiniteRing {
    pub fn new(moduli: &[u32]) -> Result<Self, RingError> {
        if moduli.is_empty() {
            return Err(RingError::EmptyModuli);
        }
        let mut order: usize = 1;
        for &m in moduli {
            if m < 2 {
                return Err(RingError::BadModulus(m as u64));
            }
            order = order
                .checked_mul(m as usize)
                .ok_or(RingError::ClosureOverflow { bound: usize::MAX })?;
        }
        Ok(FiniteRing { moduli: moduli.to_vec(), order })
    }

    /// Single residue class ring Z/m.
    pub fn zmod(m: u32) -> Self {
        FiniteRing::new(&[m]).expect("modulus >= 2")
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            residues: self.moduli.iter().map(|_| 0).collect(),
            moduli: SmallVec::from_slice(&self.moduli),
        }
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> RingElem {
        RingElem {
            residues: self.moduli.iter().map(|&m| k.rem_euclid(m as i64) as u32).collect(),
            moduli: SmallVec::from_slice(&self.moduli),
        }
    }

    pub fn elem(&self, residues: &[i64]) -> Result<RingElem, RingError> {
        if residues.len() != self.moduli.len() {
            return Err(RingError::ResidueCount {
                expected: self.moduli.len(),
                got: residues.len(),
            });
        }
        Ok(RingElem {
            residues: residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &m)| r.rem_euclid(m as i64) as u32)
                .collect(),
            moduli: SmallVec::from_slice(&self.moduli),
        })
    }

    /// All ring elements in a fixed mixed-radix order.
    pub fn elements(&self) -> Vec<RingElem> {
        let mut out = Vec::with_capacity(self.order);
        let k = self.moduli.len();
        let mut digits: Residues = self.moduli.iter().map(|_| 0).collect();
        loop {
            out.push(RingElem {
                residues: digits.clone(),
                moduli: SmallVec::from_slice(&self.moduli),
            });
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < self.moduli[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    pub fn contains(&self, x: &RingElem) -> bool {
        x.moduli.as_slice() == self.moduli.as_slice()
    }

    /// True when some quotient of the ring is the field of two elements.
    /// For a product of Z/m_i this happens exactly when some m_i is even;
    /// an exhaustive cross-check lives in the tests.
    pub fn has_residue_field_of_two(&self) -> bool {
        self.moduli.iter().any(|m| m % 2 == 0)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        parts.join(" x ")
    }
}

/// An element of a [`FiniteRing`], stored as one residue per factor.
///
/// Elements carry their moduli so ring arithmetic needs no external context;
/// this is what lets them implement [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    residues: Residues,
    moduli: Residues,
}

impl RingElem {
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    fn check_same(&self, rhs: &RingElem) {
        debug_assert_eq!(self.moduli, rhs.moduli, "operands from different rings");
    }

    pub fn is_unit(&self) -> bool {
        self.residues
            .iter()
            .zip(&self.moduli)
            .all(|(&r, &m)| gcd(r as u64, m as u64) == 1)
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.len() == 1 {
            write!(f, "{}", self.residues[0])
        } else {
            let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.residues.cmp(&other.residues)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Modular inverse by extended Euclid, if `a` is a unit mod `m`.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl Scalar for RingElem {
    fn zero_like(&self) -> Self {
        RingElem {
            residues: self.moduli.iter().map(|_| 0).collect(),
            moduli: self.moduli.clone(),
        }
    }

    fn one_like(&self) -> Self {
        self.from_int_like(1)
    }

    fn from_int_like(&self, k: i64) -> Self {
        RingElem {
            residues: self.moduli.iter().map(|&m| k.rem_euclid(m as i64) as u32).collect(),
            moduli: self.moduli.clone(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        RingElem {
            residues: self
                .residues
                .iter()
                .zip(&rhs.residues)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| {
                    let s = a as u64 + b as u64;
                    (s % m as u64) as u32
                })
                .collect(),
            moduli: self.moduli.clone(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        RingElem {
            residues: self
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| if a == 0 { 0 } else { m - a })
                .collect(),
            moduli: self.moduli.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        RingElem {
            residues: self
                .residues
                .iter()
                .zip(&rhs.residues)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| ((a as u64 * b as u64) % m as u64) as u32)
                .collect(),
            moduli: self.moduli.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    fn try_inv(&self) -> Option<Self> {
        let mut residues = Residues::new();
        for (&r, &m) in self.residues.iter().zip(&self.moduli) {
            residues.push(mod_inverse(r as u64, m as u64)? as u32);
        }
        Some(RingElem { residues, moduli: self.moduli.clone() })
    }
}

/// An ideal of a [`FiniteRing`] with its element set enumerated eagerly.
///
/// Rings here are small (at most a few hundred elements), so the full set
/// makes every downstream membership test a lookup.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    generators: Vec<RingElem>,
    elements: Vec<RingElem>,
}

impl Ideal {
    /// Smallest ideal containing `gens`; pass no generators for the zero ideal.
    pub fn from_generators(ring: Arc<FiniteRing>, gens: &[RingElem]) -> Result<Self, RingError> {
        for g in gens {
            if !ring.contains(g) {
                return Err(RingError::MismatchedRings);
            }
        }
        let ring_elems = ring.elements();
        let mut set: std::collections::BTreeSet<RingElem> = std::collections::BTreeSet::new();
        set.insert(ring.zero());
        let mut frontier: Vec<RingElem> = Vec::new();
        for g in gens {
            if set.insert(g.clone()) {
                frontier.push(g.clone());
            }
        }
        // Close under addition, negation and multiplication by every ring
        // element. Negation is r = -1 times, so the multiplication sweep
        // covers it; the explicit insert keeps the loop obviously correct.
        while let Some(x) = frontier.pop() {
            let push = |candidate: RingElem,
                            set: &mut std::collections::BTreeSet<RingElem>,
                            frontier: &mut Vec<RingElem>| {
                if set.insert(candidate.clone()) {
                    frontier.push(candidate);
                }
            };
            push(x.neg(), &mut set, &mut frontier);
            for r in &ring_elems {
                push(x.mul(r), &mut set, &mut frontier);
            }
            let snapshot: Vec<RingElem> = set.iter().cloned().collect();
            for y in snapshot {
                push(x.add(&y), &mut set, &mut frontier);
            }
            if set.len() > ring.order() {
                return Err(RingError::ClosureOverflow { bound: ring.order() });
            }
        }
        Ok(Ideal {
            ring,
            generators: gens.to_vec(),
            elements: set.into_iter().collect(),
        })
    }

    pub fn zero(ring: Arc<FiniteRing>) -> Self {
        Ideal::from_generators(ring, &[]).expect("zero ideal")
    }

    /// The whole ring as an ideal.
    pub fn unit(ring: Arc<FiniteRing>) -> Self {
        let one = ring.one();
        Ideal::from_generators(ring, &[one]).expect("unit ideal")
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElem] {
        &self.generators
    }

    /// Elements in a fixed sorted order.
    pub fn elements(&self) -> &[RingElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &RingElem) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.len() == 1
    }

    /// Ideal generated by all products ab with a in `self`, b in `rhs`.
    pub fn product(&self, rhs: &Ideal) -> Result<Ideal, RingError> {
        if self.ring != rhs.ring {
            return Err(RingError::MismatchedRings);
        }
        let mut gens = Vec::new();
        for a in &self.elements {
            for b in &rhs.elements {
                gens.push(a.mul(b));
            }
        }
        Ideal::from_generators(self.ring.clone(), &gens)
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("({})", gens.join(","))
    }
}

/// Outcome of the hypothesis check for a ring and root system type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarReport {
    pub holds: bool,
    pub violations: Vec<StarViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarViolation {
    /// Some quotient of the ring is the two-element field.
    ResidueFieldOfTwo { modulus: u32 },
    /// Some c fails to lie in the ideal c^2 R + 2 c R.
    SquareClause { witness: RingElem },
}

impl fmt::Display for StarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarViolation::ResidueFieldOfTwo { modulus } => {
                write!(f, "ring has a residue field of two elements (even modulus {modulus})")
            }
            StarViolation::SquareClause { witness } => {
                write!(f, "element {witness} is not contained in c^2R + 2cR for c = {witness}")
            }
        }
    }
}

/// Checks the hypothesis gating the doubly-laced congruence suites:
/// no residue field of two elements for C2/G2, plus for every C_l the
/// requirement that each c lies in c^2 R + 2 c R. Simply laced systems
/// carry no condition. Quantifiers run exhaustively over the ring.
pub fn check_condition_star(ring: &FiniteRing, system: SystemLabel) -> StarReport {
    let mut violations = Vec::new();
    let needs_field_clause = matches!(system, SystemLabel::G2) || matches!(system, SystemLabel::C(_));
    let needs_square_clause = matches!(system, SystemLabel::C(_));
    if needs_field_clause {
        for &m in ring.moduli() {
            if m % 2 == 0 {
                violations.push(StarViolation::ResidueFieldOfTwo { modulus: m });
            }
        }
    }
    if needs_square_clause {
        let elems = ring.elements();
        for c in &elems {
            let c2 = c.mul(c);
            let two_c = c.add(c);
            let mut found = false;
            'search: for r in &elems {
                let lhs = c2.mul(r);
                for s in &elems {
                    if lhs.add(&two_c.mul(s)) == *c {
                        found = true;
                        break 'search;
                    }
                }
            }
            if !found {
                violations.push(StarViolation::SquareClause { witness: c.clone() });
                break;
            }
        }
    }
    StarReport { holds: violations.is_empty(), violations }
}
