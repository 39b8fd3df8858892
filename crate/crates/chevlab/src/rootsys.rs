//! Root systems of type A_l (l >= 2), C_l (l >= 2) and G2, with integer
//! coordinates, length classes, root strings, and the rank-2 embedding
//! combinatorics that the matrix representations and suites build on.
//!
//! Coordinate models are chosen integer-exact: A_l roots are e_i - e_j in
//! Z^{l+1}, C_l roots are +-e_i +- e_j and +-2e_i in Z^l, and G2 lives in
//! the sum-zero sublattice of Z^3 (short roots e_i - e_j, long roots
//! 2e_i - e_j - e_k).

use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemLabel {
    A(u8),
    C(u8),
    G2,
}

impl SystemLabel {
    pub fn rank(&self) -> usize {
        match self {
            SystemLabel::A(l) | SystemLabel::C(l) => *l as usize,
            SystemLabel::G2 => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        let (family, rank) = s.split_at(1);
        let rank: u8 = rank.parse().map_err(|_| RootError::UnsupportedLabel(s.to_string()))?;
        match (family, rank) {
            ("A" | "a", l) if l >= 2 => Ok(SystemLabel::A(l)),
            ("C" | "c", l) if l >= 2 => Ok(SystemLabel::C(l)),
            ("G" | "g", 2) => Ok(SystemLabel::G2),
            _ => Err(RootError::UnsupportedLabel(s.to_string())),
        }
    }
}

impl fmt::Display for SystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemLabel::A(l) => write!(f, "A{l}"),
            SystemLabel::C(l) => write!(f, "C{l}"),
            SystemLabel::G2 => write!(f, "G2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    /// Only A_l, C_l and G2 are modeled: every supported check reduces to
    /// the rank-2 subsystems A2, C2 and G2, which these families realize.
    UnsupportedLabel(String),
    NotARoot(String),
    ProportionalRoots,
    OppositeOrEqualRoots,
    FundamentalIndex(usize),
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::UnsupportedLabel(s) => write!(
                f,
                "unsupported root system {s:?}: only A_l (l>=2), C_l (l>=2) and G2 are modeled, \
                 since all rank-2 reductions land in A2, C2 or G2"
            ),
            RootError::NotARoot(s) => write!(f, "{s} is not a root of this system"),
            RootError::ProportionalRoots => write!(f, "roots are proportional"),
            RootError::OppositeOrEqualRoots => write!(f, "roots must not be equal or opposite"),
            RootError::FundamentalIndex(r) => write!(f, "fundamental index {r} out of range"),
        }
    }
}

impl std::error::Error for RootError {}

/// Index of a root inside its parent system's root list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthClass {
    Long,
    Short,
}

#[derive(Debug, Clone)]
pub struct Root {
    pub coords: Vec<i32>,
    /// Integer coefficients over the fundamental system.
    pub coeffs: Vec<i32>,
    pub length: LengthClass,
    pub positive: bool,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_long(&self) -> bool {
        self.length == LengthClass::Long
    }
}

pub struct RootSystem {
    label: SystemLabel,
    roots: Vec<Root>,
    by_coords: HashMap<Vec<i32>, RootId>,
    fundamentals: Vec<RootId>,
}

fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

fn vec_add(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

fn vec_scale(a: &[i32], k: i32) -> Vec<i32> {
    a.iter().map(|&x| x * k).collect()
}

impl RootSystem {
    pub fn new(label: SystemLabel) -> Result<Self, RootError> {
        let (coords, fundamentals_coords): (Vec<Vec<i32>>, Vec<Vec<i32>>) = match label {
            SystemLabel::A(l) => {
                let l = l as usize;
                if l < 2 {
                    return Err(RootError::UnsupportedLabel(label.to_string()));
                }
                let dim = l + 1;
                let mut roots = Vec::new();
                for i in 0..dim {
                    for j in 0..dim {
                        if i != j {
                            let mut v = vec![0; dim];
                            v[i] = 1;
                            v[j] = -1;
                            roots.push(v);
                        }
                    }
                }
                let fund = (0..l)
                    .map(|i| {
                        let mut v = vec![0; dim];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                (roots, fund)
            }
            SystemLabel::C(l) => {
                let l = l as usize;
                if l < 2 {
                    return Err(RootError::UnsupportedLabel(label.to_string()));
                }
                let mut roots = Vec::new();
                for i in 0..l {
                    for j in 0..l {
                        if i != j {
                            let mut v = vec![0; l];
                            v[i] = 1;
                            v[j] = -1;
                            roots.push(v);
                        }
                    }
                }
                for i in 0..l {
                    for j in (i + 1)..l {
                        for s in [1, -1] {
                            let mut v = vec![0; l];
                            v[i] = s;
                            v[j] = s;
                            roots.push(v);
                        }
                    }
                }
                for i in 0..l {
                    for s in [2, -2] {
                        let mut v = vec![0; l];
                        v[i] = s;
                        roots.push(v);
                    }
                }
                let mut fund: Vec<Vec<i32>> = (0..l - 1)
                    .map(|i| {
                        let mut v = vec![0; l];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                let mut last = vec![0; l];
                last[l - 1] = 2;
                fund.push(last);
                (roots, fund)
            }
            SystemLabel::G2 => {
                let mut roots = Vec::new();
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            let mut v = vec![0; 3];
                            v[i] = 1;
                            v[j] = -1;
                            roots.push(v);
                        }
                    }
                }
                for i in 0..3 {
                    for s in [1, -1] {
                        let mut v = vec![-s; 3];
                        v[i] = 2 * s;
                        roots.push(v);
                    }
                }
                // Short fundamental (1,-1,0), long fundamental (-1,2,-1).
                (roots, vec![vec![1, -1, 0], vec![-1, 2, -1]])
            }
        };

        let max_norm = coords.iter().map(|v| dot(v, v)).max().unwrap();
        let mut roots: Vec<Root> = coords
            .iter()
            .map(|v| Root {
                coords: v.clone(),
                coeffs: Vec::new(),
                // Simply laced systems have a single length, classified long.
                length: if dot(v, v) == max_norm { LengthClass::Long } else { LengthClass::Short },
                positive: false,
            })
            .collect();
        let by_coords: HashMap<Vec<i32>, RootId> = coords
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), RootId(i)))
            .collect();
        let fundamentals: Vec<RootId> = fundamentals_coords
            .iter()
            .map(|v| *by_coords.get(v).expect("fundamental is a root"))
            .collect();

        // Fundamental coefficients by height recursion: every positive root
        // of height h+1 is a positive root of height h plus a fundamental.
        let rank = fundamentals.len();
        let mut coeffs: HashMap<Vec<i32>, Vec<i32>> = HashMap::new();
        for (i, f) in fundamentals.iter().enumerate() {
            let mut c = vec![0; rank];
            c[i] = 1;
            coeffs.insert(roots[f.0].coords.clone(), c);
        }
        loop {
            let mut grew = false;
            let known: Vec<(Vec<i32>, Vec<i32>)> =
                coeffs.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            for (v, c) in known {
                for (i, f) in fundamentals.iter().enumerate() {
                    let sum = vec_add(&v, &roots[f.0].coords);
                    if by_coords.contains_key(&sum) && !coeffs.contains_key(&sum) {
                        let mut c2 = c.clone();
                        c2[i] += 1;
                        coeffs.insert(sum, c2);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        for root in roots.iter_mut() {
            if let Some(c) = coeffs.get(&root.coords) {
                root.coeffs = c.clone();
                root.positive = true;
            } else {
                let neg = vec_scale(&root.coords, -1);
                let c = coeffs
                    .get(&neg)
                    .expect("every root is positive or negative");
                root.coeffs = c.iter().map(|&x| -x).collect();
                root.positive = false;
            }
        }

        Ok(RootSystem { label, roots, by_coords, fundamentals })
    }

    pub fn label(&self) -> SystemLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.fundamentals.len()
    }

    pub fn roots(&self) -> impl Iterator<Item = RootId> {
        (0..self.roots.len()).map(RootId)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.0]
    }

    pub fn fundamentals(&self) -> &[RootId] {
        &self.fundamentals
    }

    pub fn positives(&self) -> Vec<RootId> {
        self.roots().filter(|&r| self.root(r).positive).collect()
    }

    pub fn lookup(&self, coords: &[i32]) -> Option<RootId> {
        self.by_coords.get(coords).copied()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let neg = vec_scale(&self.root(id).coords, -1);
        *self.by_coords.get(&neg).expect("roots close under negation")
    }

    /// The root alpha + beta when it is a root, else None.
    pub fn add_roots(&self, a: RootId, b: RootId) -> Option<RootId> {
        let sum = vec_add(&self.root(a).coords, &self.root(b).coords);
        self.by_coords.get(&sum).copied()
    }

    /// Cartan pairing <beta, alpha^vee> = 2(beta,alpha)/(alpha,alpha).
    pub fn pairing(&self, beta: RootId, alpha: RootId) -> i64 {
        let a = &self.root(alpha).coords;
        let b = &self.root(beta).coords;
        let num = 2 * dot(b, a);
        let den = dot(a, a);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Image of `root` under the reflection in the r-th fundamental root.
    pub fn reflect(&self, root: RootId, r: usize) -> Result<RootId, RootError> {
        let alpha = *self.fundamentals.get(r).ok_or(RootError::FundamentalIndex(r))?;
        let k = self.pairing(root, alpha) as i32;
        let image = vec_add(&self.root(root).coords, &vec_scale(&self.root(alpha).coords, -k));
        Ok(*self.by_coords.get(&image).expect("reflections permute roots"))
    }

    /// All (i, j) with i, j >= 1 and i*alpha + j*beta a root, together with
    /// that root, in ascending height order. This is the fixed order in
    /// which commutator expansions are written, which matters for G2 where
    /// the structure constants depend on it.
    pub fn root_string(&self, alpha: RootId, beta: RootId) -> Result<Vec<(i32, i32, RootId)>, RootError> {
        if alpha == beta || alpha == self.negate(beta) {
            return Err(RootError::OppositeOrEqualRoots);
        }
        let mut out = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                let v = vec_add(
                    &vec_scale(&self.root(alpha).coords, i),
                    &vec_scale(&self.root(beta).coords, j),
                );
                if let Some(id) = self.by_coords.get(&v) {
                    out.push((i, j, *id));
                }
            }
        }
        out.sort_by_key(|&(i, j, id)| (self.root(id).height(), i, j));
        Ok(out)
    }

    /// Subsystem generated by a pair of non-proportional roots: the closure
    /// of {±alpha, ±beta} under addition of roots. For pairs of long roots
    /// in G2 this is the long-root A2; orthogonal short/long pairs close to
    /// a reducible A1 x A1.
    pub fn embed_rank2(&self, alpha: RootId, beta: RootId) -> Result<Rank2Embedding, RootError> {
        let a = &self.root(alpha).coords;
        let b = &self.root(beta).coords;
        // Proportional in our systems means equal or opposite, or 2x (never
        // a root pair here) -- cross-check via the Gram determinant.
        let gram = dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b);
        if gram == 0 {
            return Err(RootError::ProportionalRoots);
        }
        let mut members = vec![alpha, self.negate(alpha), beta, self.negate(beta)];
        members.sort();
        members.dedup();
        loop {
            let mut grew = false;
            let snapshot = members.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    if let Some(z) = self.add_roots(x, y) {
                        if !members.contains(&z) {
                            members.push(z);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        members.sort();
        let kind = match members.len() {
            4 => Rank2Kind::A1xA1,
            6 => Rank2Kind::A2,
            8 => Rank2Kind::C2,
            12 => Rank2Kind::G2,
            n => unreachable!("rank-2 closure of size {n}"),
        };
        // Sub-fundamentals: indecomposable members among the sub-positives.
        let positives: Vec<RootId> =
            members.iter().copied().filter(|&r| self.root(r).positive).collect();
        let fundamentals: Vec<RootId> = positives
            .iter()
            .copied()
            .filter(|&r| {
                !positives.iter().any(|&p| {
                    positives
                        .iter()
                        .any(|&q| p != r && q != r && self.add_roots(p, q) == Some(r))
                })
            })
            .collect();
        Ok(Rank2Embedding { kind, members, fundamentals })
    }

    /// Unipotent-radical root sets of the r-th elementary rank-1 parabolic
    /// and its opposite, plus the Levi root pair.
    pub fn parabolic_data(&self, r: usize) -> Result<ParabolicData, RootError> {
        let alpha = *self.fundamentals.get(r).ok_or(RootError::FundamentalIndex(r))?;
        let neg_alpha = self.negate(alpha);
        let radical: Vec<RootId> =
            self.roots().filter(|&id| self.root(id).positive && id != alpha).collect();
        let opposite: Vec<RootId> =
            self.roots().filter(|&id| !self.root(id).positive && id != neg_alpha).collect();
        Ok(ParabolicData { levi: (alpha, neg_alpha), radical, opposite })
    }

    /// Renders a root as a combination of fundamentals, e.g. `3*a1+2*a2`.
    pub fn name(&self, id: RootId) -> String {
        let coeffs = &self.root(id).coeffs;
        let mut out = String::new();
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(if c > 0 { "+" } else { "-" });
            } else if c < 0 {
                out.push('-');
            }
            let mag = c.abs();
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("a{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn describe(&self, id: RootId) -> String {
        let root = self.root(id);
        let coords: Vec<String> = root.coords.iter().map(|c| c.to_string()).collect();
        format!(
            "{} ({}) [{}]",
            self.name(id),
            coords.join(","),
            if root.is_long() { "long" } else { "short" }
        )
    }

    /// Parses `a1`, `3*a1+2*a2`, `-a1+a2`, or a coordinate tuple `(1,-1,0)`.
    pub fn parse_root(&self, input: &str) -> Result<RootId, RootError> {
        let s = input.trim();
        if s.starts_with('(') {
            let inner = s.trim_start_matches('(').trim_end_matches(')');
            let coords: Result<Vec<i32>, _> =
                inner.split(',').map(|t| t.trim().parse::<i32>()).collect();
            let coords = coords.map_err(|_| RootError::NotARoot(s.to_string()))?;
            return self.lookup(&coords).ok_or_else(|| RootError::NotARoot(s.to_string()));
        }
        let mut coeffs = vec![0i32; self.rank()];
        let normalized = s.replace('-', "+-").replace(' ', "");
        for term in normalized.split('+') {
            if term.is_empty() {
                continue;
            }
            let (mag, var) = match term.find('*') {
                Some(k) => {
                    let mag: i32 =
                        term[..k].parse().map_err(|_| RootError::NotARoot(s.to_string()))?;
                    (mag, &term[k + 1..])
                }
                None => {
                    if let Some(rest) = term.strip_prefix('-') {
                        (-1, rest)
                    } else {
                        (1, term)
                    }
                }
            };
            let idx: usize = var
                .strip_prefix('a')
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| RootError::NotARoot(s.to_string()))?;
            if idx == 0 || idx > self.rank() {
                return Err(RootError::NotARoot(s.to_string()));
            }
            coeffs[idx - 1] += mag;
        }
        let mut coords = vec![0i32; self.root(self.fundamentals[0]).coords.len()];
        for (i, &c) in coeffs.iter().enumerate() {
            coords = vec_add(&coords, &vec_scale(&self.root(self.fundamentals[i]).coords, c));
        }
        self.lookup(&coords).ok_or_else(|| RootError::NotARoot(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank2Kind {
    A1xA1,
    A2,
    C2,
    G2,
}

impl fmt::Display for Rank2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank2Kind::A1xA1 => write!(f, "A1xA1"),
            Rank2Kind::A2 => write!(f, "A2"),
            Rank2Kind::C2 => write!(f, "C2"),
            Rank2Kind::G2 => write!(f, "G2"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rank2Embedding {
    pub kind: Rank2Kind,
    /// Roots of the subsystem, as parent roots.
    pub members: Vec<RootId>,
    /// Indecomposable positive members.
    pub fundamentals: Vec<RootId>,
}

#[derive(Debug, Clone)]
pub struct ParabolicData {
    pub levi: (RootId, RootId),
    pub radical: Vec<RootId>,
    pub opposite: Vec<RootId>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> RootSystem {
        RootSystem::new(SystemLabel::parse(label).unwrap()).unwrap()
    }

    #[test]
    fn classification_counts() {
        let a2 = sys("A2");
        assert_eq!(a2.len(), 6);
        assert_eq!(a2.fundamentals().len(), 2);

        let c2 = sys("C2");
        assert_eq!(c2.len(), 8);
        assert_eq!(c2.roots().filter(|&r| c2.root(r).is_long()).count(), 4);

        let g2 = sys("G2");
        assert_eq!(g2.len(), 12);
        assert_eq!(g2.roots().filter(|&r| g2.root(r).is_long()).count(), 6);

        let a3 = sys("A3");
        assert_eq!(a3.len(), 12);
        let c3 = sys("C3");
        assert_eq!(c3.len(), 18);
    }

    #[test]
    fn unsupported_labels_are_rejected() {
        for bad in ["B2", "D4", "E6", "F4", "A1", "C1"] {
            assert!(SystemLabel::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn positives_split_the_system() {
        for label in ["A2", "A3", "C2", "C3", "G2"] {
            let s = sys(label);
            let pos = s.positives();
            assert_eq!(pos.len() * 2, s.len());
            for &p in &pos {
                assert!(!s.root(s.negate(p)).positive);
                assert!(s.root(p).coeffs.iter().all(|&c| c >= 0));
            }
        }
    }

    #[test]
    fn root_addition() {
        let a2 = sys("A2");
        let e12 = a2.lookup(&[1, -1, 0]).unwrap();
        let e23 = a2.lookup(&[0, 1, -1]).unwrap();
        let e13 = a2.lookup(&[1, 0, -1]).unwrap();
        assert_eq!(a2.add_roots(e12, e23), Some(e13));
        assert_eq!(a2.add_roots(e12, e13), None);

        let g2 = sys("G2");
        let short = g2.fundamentals()[0];
        let long = g2.fundamentals()[1];
        let sum = g2.add_roots(short, long).unwrap();
        assert!(!g2.root(sum).is_long());
    }

    #[test]
    fn root_strings_match_fixed_expansions() {
        let c2 = sys("C2");
        let long_fund = c2.fundamentals()[1];
        let short_fund = c2.fundamentals()[0];
        let string = c2.root_string(long_fund, short_fund).unwrap();
        let pairs: Vec<(i32, i32)> = string.iter().map(|&(i, j, _)| (i, j)).collect();
        assert_eq!(pairs, vec![(1, 1), (1, 2)]);

        let g2 = sys("G2");
        let short = g2.fundamentals()[0];
        let long = g2.fundamentals()[1];
        let string = g2.root_string(short, long).unwrap();
        let pairs: Vec<(i32, i32)> = string.iter().map(|&(i, j, _)| (i, j)).collect();
        assert_eq!(pairs, vec![(1, 1), (2, 1), (3, 1), (3, 2)]);

        let a2 = sys("A2");
        let string = a2.root_string(a2.fundamentals()[0], a2.fundamentals()[1]).unwrap();
        assert_eq!(string.len(), 1);
        assert_eq!((string[0].0, string[0].1), (1, 1));

        assert!(a2.root_string(a2.fundamentals()[0], a2.fundamentals()[0]).is_err());
    }

    #[test]
    fn root_string_members_are_exactly_the_roots_met() {
        // Exhaustive closure sanity for every ordered non-opposite pair.
        for label in ["A2", "C2", "G2", "A3", "C3"] {
            let s = sys(label);
            for a in s.roots() {
                for b in s.roots() {
                    if a == b || b == s.negate(a) {
                        continue;
                    }
                    let string = s.root_string(a, b).unwrap();
                    for &(i, j, id) in &string {
                        let v = vec_add(
                            &vec_scale(&s.root(a).coords, i),
                            &vec_scale(&s.root(b).coords, j),
                        );
                        assert_eq!(s.lookup(&v), Some(id));
                    }
                    // No (i,j) in range is missed.
                    for i in 1..=3 {
                        for j in 1..=3 {
                            let v = vec_add(
                                &vec_scale(&s.root(a).coords, i),
                                &vec_scale(&s.root(b).coords, j),
                            );
                            assert_eq!(
                                s.lookup(&v).is_some(),
                                string.iter().any(|&(si, sj, _)| (si, sj) == (i, j))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank2_embeddings() {
        let c3 = sys("C3");
        let s1 = c3.lookup(&[1, -1, 0]).unwrap();
        let s2 = c3.lookup(&[0, 1, -1]).unwrap();
        assert_eq!(c3.embed_rank2(s1, s2).unwrap().kind, Rank2Kind::A2);

        let c2 = sys("C2");
        let long = c2.lookup(&[2, 0]).unwrap();
        let short = c2.lookup(&[1, -1]).unwrap();
        assert_eq!(c2.embed_rank2(long, short).unwrap().kind, Rank2Kind::C2);

        // Exhaustive scan over G2: long pairs close to the long-root A2,
        // orthogonal short/long pairs to A1 x A1, everything else to G2.
        let g2 = sys("G2");
        for a in g2.roots() {
            for b in g2.roots() {
                if a == b || b == g2.negate(a) {
                    continue;
                }
                let emb = g2.embed_rank2(a, b).unwrap();
                let (ra, rb) = (g2.root(a), g2.root(b));
                let orthogonal = dot(&ra.coords, &rb.coords) == 0;
                if ra.is_long() && rb.is_long() {
                    assert_eq!(emb.kind, Rank2Kind::A2);
                } else if orthogonal {
                    assert_eq!(emb.kind, Rank2Kind::A1xA1);
                } else {
                    assert_eq!(emb.kind, Rank2Kind::G2);
                }
                // Symmetry in the arguments.
                let emb_ba = g2.embed_rank2(b, a).unwrap();
                assert_eq!(emb.kind, emb_ba.kind);
                assert_eq!(emb.members, emb_ba.members);
            }
        }
        let prop = g2.embed_rank2(g2.fundamentals()[0], g2.negate(g2.fundamentals()[0]));
        assert!(prop.is_err());
    }

    #[test]
    fn reflections() {
        let a2 = sys("A2");
        let e13 = a2.lookup(&[1, 0, -1]).unwrap();
        let e23 = a2.lookup(&[0, 1, -1]).unwrap();
        assert_eq!(a2.reflect(e13, 0).unwrap(), e23);
        for label in ["A2", "C2", "G2"] {
            let s = sys(label);
            for (r, &f) in s.fundamentals().iter().enumerate() {
                assert_eq!(s.reflect(f, r).unwrap(), s.negate(f));
            }
        }
    }

    #[test]
    fn fundamental_reflection_orbits_cover_length_classes() {
        // Orbit of any root under fundamental reflections reaches every
        // root of the same length, in particular a fundamental one.
        for label in ["A2", "C2", "G2", "C3"] {
            let s = sys(label);
            for start in s.roots() {
                let mut orbit = vec![start];
                let mut frontier = vec![start];
                while let Some(x) = frontier.pop() {
                    for r in 0..s.rank() {
                        let y = s.reflect(x, r).unwrap();
                        if !orbit.contains(&y) {
                            orbit.push(y);
                            frontier.push(y);
                        }
                    }
                }
                let class = s.root(start).length;
                assert!(
                    orbit.iter().any(|&y| s.fundamentals().contains(&y) && s.root(y).length == class),
                    "{label}: orbit of {} misses fundamentals",
                    s.describe(start)
                );
                for &y in &orbit {
                    assert_eq!(s.root(y).length, class);
                }
            }
        }
    }

    #[test]
    fn parabolic_root_sets() {
        let a2 = sys("A2");
        let p = a2.parabolic_data(0).unwrap();
        assert_eq!(p.radical.len(), 2);
        let names: Vec<String> = p.radical.iter().map(|&r| a2.name(r)).collect();
        assert!(names.contains(&"a2".to_string()));
        assert!(names.contains(&"a1+a2".to_string()));

        let c2 = sys("C2");
        assert_eq!(c2.parabolic_data(0).unwrap().radical.len(), 3);
        let g2 = sys("G2");
        assert_eq!(g2.parabolic_data(0).unwrap().radical.len(), 5);
        assert!(g2.parabolic_data(7).is_err());

        // Radical root sets are closed under addition: the combinatorial
        // heart of the Levi decomposition.
        for label in ["A2", "A3", "C2", "C3", "G2"] {
            let s = sys(label);
            for r in 0..s.rank() {
                let p = s.parabolic_data(r).unwrap();
                for set in [&p.radical, &p.opposite] {
                    for &x in set {
                        for &y in set {
                            if let Some(z) = s.add_roots(x, y) {
                                assert!(set.contains(&z), "{label} r={r}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_render_roots() {
        let g2 = sys("G2");
        for id in g2.roots() {
            let name = g2.name(id);
            assert_eq!(g2.parse_root(&name).unwrap(), id, "{name}");
        }
        assert_eq!(g2.parse_root("(1,-1,0)").unwrap(), g2.fundamentals()[0]);
        assert_eq!(g2.parse_root("3*a1+2*a2").unwrap(), g2.lookup(&[1, 1, -2]).unwrap());
        assert!(g2.parse_root("a1+5*a2").is_err());
    }
}
