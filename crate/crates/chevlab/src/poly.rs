//! Exact multivariate polynomials over the integers.
//!
//! This is the scalar domain in which every identity certificate is checked:
//! two generator words are equal exactly when their matrices over Z[vars]
//! agree entry-wise. Coefficients are arbitrary-precision integers, so no
//! intermediate product can silently truncate.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rings::{FiniteRing, RingElem};
use crate::scalar::Scalar;

/// A power product of named variables, kept sorted by name with positive
/// exponents only. Ordering is graded lexicographic so a polynomial's term
/// map is its canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in self.0.iter().chain(rhs.0.iter()) {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out.into_iter().collect())
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(v, _)| v.as_str())
    }

    pub fn exponents(&self) -> &[(String, u32)] {
        &self.0
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                // Lexicographic on the merged, name-sorted exponent vectors;
                // a missing variable counts as exponent zero.
                let mut i = 0;
                let mut j = 0;
                loop {
                    match (self.0.get(i), other.0.get(j)) {
                        (None, None) => return std::cmp::Ordering::Equal,
                        (Some(_), None) => return std::cmp::Ordering::Greater,
                        (None, Some(_)) => return std::cmp::Ordering::Less,
                        (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                            // Earlier variable name with positive exponent
                            // sorts higher lexicographically.
                            std::cmp::Ordering::Less => return std::cmp::Ordering::Greater,
                            std::cmp::Ordering::Greater => return std::cmp::Ordering::Less,
                            std::cmp::Ordering::Equal => {
                                match ea.cmp(eb) {
                                    std::cmp::Ordering::Equal => {}
                                    ord => return ord,
                                }
                                i += 1;
                                j += 1;
                            }
                        },
                    }
                }
            })
    }
}

/// Multivariate polynomial with integer coefficients in canonical form:
/// no zero coefficients are stored, and terms sit in a graded-lex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(k: i64) -> Self {
        Self::from_bigint(BigInt::from(k))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !k.is_zero() {
            terms.insert(Monomial::unit(), k);
        }
        MultiPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), BigInt::one());
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if !vars.iter().any(|w| w == v) {
                    vars.push(v.to_string());
                }
            }
        }
        vars.sort();
        vars
    }

    fn insert_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::constant(1);
        for _ in 0..e {
            out = Scalar::mul(&out, self);
        }
        out
    }

    /// Image under the ring homomorphism Z[vars] -> ring sending each
    /// variable to its assigned value. Every variable must be assigned.
    pub fn eval(
        &self,
        assignment: &BTreeMap<String, RingElem>,
        ring: &FiniteRing,
    ) -> Result<RingElem, String> {
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut term = bigint_to_ring(c, ring);
            for (v, e) in m.exponents() {
                let val = assignment
                    .get(v)
                    .ok_or_else(|| format!("unassigned variable {v}"))?;
                for _ in 0..*e {
                    term = term.mul(val);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Substitute polynomials for variables (used when specializing word
    /// templates); variables without a substitution stay symbolic.
    pub fn substitute(&self, map: &BTreeMap<String, MultiPoly>) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::from_bigint(c.clone());
            for (v, e) in m.exponents() {
                let factor = map.get(v).cloned().unwrap_or_else(|| MultiPoly::var(v));
                term = Scalar::mul(&term, &factor.pow(*e));
            }
            acc = Scalar::add(&acc, &term);
        }
        acc
    }
}

fn bigint_to_ring(c: &BigInt, ring: &FiniteRing) -> RingElem {
    let residues: Vec<i64> = ring
        .moduli()
        .iter()
        .map(|&m| {
            let modulus = BigInt::from(m);
            let r = ((c % &modulus) + &modulus) % &modulus;
            // In range [0, m) by construction.
            i64::try_from(r).expect("reduced residue fits i64")
        })
        .collect();
    ring.elem(&residues).expect("residue count matches")
}

impl Scalar for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero()
    }

    fn one_like(&self) -> Self {
        MultiPoly::constant(1)
    }

    fn from_int_like(&self, k: i64) -> Self {
        MultiPoly::constant(k)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        Scalar::add(self, &Scalar::neg(rhs))
    }

    fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn try_inv(&self) -> Option<Self> {
        // Only the constants 1 and -1 are units in Z[vars].
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::unit()) {
                if c.is_one() || (-c).is_one() {
                    return Some(MultiPoly::from_bigint(c.clone()));
                }
            }
        }
        None
    }
}

impl num_traits::Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl num_traits::One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(1)
    }
}

impl std::ops::Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        Scalar::add(&self, &rhs)
    }
}

impl std::ops::Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        Scalar::sub(&self, &rhs)
    }
}

impl std::ops::Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        Scalar::mul(&self, &rhs)
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        Scalar::neg(&self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest terms first for readability; the map order is canonical.
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_unit_mono = m.exponents().is_empty();
            if !abs.is_one() || is_unit_mono {
                write!(f, "{abs}")?;
                if !is_unit_mono {
                    write!(f, "*")?;
                }
            }
            for (k, (v, e)) in m.exponents().iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses integer-coefficient polynomial expressions: variables are
/// identifiers, operators are `+ - * ^`, parentheses group. `2a` is not
/// implicit multiplication; write `2*a`.
pub fn parse_poly(input: &str) -> Result<MultiPoly, String> {
    let mut parser = PolyParser { chars: input.chars().collect(), pos: 0 };
    let poly = parser.parse_sum()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(format!("trailing input at offset {} in {input:?}", parser.pos));
    }
    Ok(poly)
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<MultiPoly, String> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                Scalar::neg(&self.parse_product()?)
            }
            Some('+') => {
                self.pos += 1;
                self.parse_product()?
            }
            _ => self.parse_product()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = Scalar::add(&acc, &self.parse_product()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = Scalar::sub(&acc, &self.parse_product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_product(&mut self) -> Result<MultiPoly, String> {
        let mut acc = self.parse_power()?;
        while let Some('*') = self.peek() {
            self.pos += 1;
            acc = Scalar::mul(&acc, &self.parse_power()?);
        }
        Ok(acc)
    }

    fn parse_power(&mut self) -> Result<MultiPoly, String> {
        let base = self.parse_atom()?;
        if let Some('^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err("expected integer exponent after ^".into());
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|e| format!("bad exponent: {e}"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<MultiPoly, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if self.peek() != Some(')') {
                    return Err("expected closing parenthesis".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                let k: BigInt = lit.parse().map_err(|e| format!("bad integer: {e}"))?;
                Ok(MultiPoly::from_bigint(k))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(MultiPoly::var(&name))
            }
            other => Err(format!("unexpected token {other:?} in polynomial")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let ab = p("a*b");
        assert!(Scalar::is_zero(&Scalar::add(&ab, &Scalar::neg(&ab))));
    }

    #[test]
    fn difference_of_squares() {
        let lhs = Scalar::mul(&p("a+b"), &p("a-b"));
        assert_eq!(lhs, p("a^2 - b^2"));
    }

    #[test]
    fn eval_is_plain_substitution() {
        let ring = FiniteRing::zmod(100);
        let mut assign = BTreeMap::new();
        assign.insert("a".to_string(), ring.from_int(2));
        assign.insert("b".to_string(), ring.from_int(3));
        assert_eq!(p("a*b^2").eval(&assign, &ring).unwrap(), ring.from_int(18));
    }

    #[test]
    fn eval_examples_over_small_rings() {
        let r8 = FiniteRing::zmod(8);
        let mut assign = BTreeMap::new();
        assign.insert("a".to_string(), r8.from_int(1));
        assign.insert("b".to_string(), r8.from_int(2));
        assert_eq!(p("a*b^2").eval(&assign, &r8).unwrap(), r8.from_int(4));

        let r27 = FiniteRing::zmod(27);
        let mut assign = BTreeMap::new();
        assign.insert("a".to_string(), r27.from_int(1));
        assign.insert("b".to_string(), r27.from_int(1));
        assert_eq!(p("2*a^3*b^2").eval(&assign, &r27).unwrap(), r27.from_int(2));

        assert_eq!(
            MultiPoly::zero().eval(&BTreeMap::new(), &r27).unwrap(),
            r27.zero()
        );
    }

    #[test]
    fn unassigned_variable_is_an_error() {
        let ring = FiniteRing::zmod(8);
        assert!(p("a*b").eval(&BTreeMap::new(), &ring).is_err());
    }

    #[test]
    fn display_round_trips_through_parser() {
        for s in ["a^2 - b^2", "2*a^3*b^2 - 3*a*b + 1", "-a*c", "0", "7"] {
            let q = p(s);
            assert_eq!(parse_poly(&q.to_string()).unwrap(), q);
        }
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let term = (0u32..3, 0u32..3, -4i64..5).prop_map(|(ea, eb, c)| {
            let mut t = MultiPoly::constant(c);
            t = Scalar::mul(&t, &MultiPoly::var("a").pow(ea));
            t = Scalar::mul(&t, &MultiPoly::var("b").pow(eb));
            t
        });
        proptest::collection::vec(term, 0..5)
            .prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |acc, t| Scalar::add(&acc, t)))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            let assoc_mul = Scalar::mul(&Scalar::mul(&x, &y), &z);
            let assoc_mul2 = Scalar::mul(&x, &Scalar::mul(&y, &z));
            prop_assert_eq!(assoc_mul, assoc_mul2);
            let dist = Scalar::mul(&x, &Scalar::add(&y, &z));
            let dist2 = Scalar::add(&Scalar::mul(&x, &y), &Scalar::mul(&x, &z));
            prop_assert_eq!(dist, dist2);
            prop_assert_eq!(Scalar::mul(&x, &y), Scalar::mul(&y, &x));
            prop_assert!(Scalar::is_zero(&Scalar::sub(&x, &x)));
        }

        #[test]
        fn eval_is_a_homomorphism(x in arb_poly(), y in arb_poly(), av in 0i64..27, bv in 0i64..27) {
            let ring = FiniteRing::zmod(27);
            let mut assign = BTreeMap::new();
            assign.insert("a".to_string(), ring.from_int(av));
            assign.insert("b".to_string(), ring.from_int(bv));
            let ex = x.eval(&assign, &ring).unwrap();
            let ey = y.eval(&assign, &ring).unwrap();
            prop_assert_eq!(Scalar::add(&x, &y).eval(&assign, &ring).unwrap(), ex.add(&ey));
            prop_assert_eq!(Scalar::mul(&x, &y).eval(&assign, &ring).unwrap(), ex.mul(&ey));
        }
    }
}
