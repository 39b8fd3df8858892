//! A small expression language for generator words, so identities can live
//! in data files instead of code.
//!
//! Grammar:
//!
//! ```text
//! word  := atom ('*' atom)*
//! atom  := 'x(' rootexpr ';' poly ')'     a root unipotent
//!        | 'comm(' word ',' word ')'      commutator [w1, w2]
//!        | 'conj(' word ',' word ')'      left conjugate w1 w2 w1^-1
//!        | 'inv(' word ')'
//!        | '(' word ')'
//! ```
//!
//! Root expressions are combinations of fundamentals (`a1`, `3*a1+2*a2`) or
//! coordinate tuples; coefficient polynomials use the syntax of
//! [`crate::poly::parse_poly`].

use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::poly::{parse_poly, MultiPoly};
use crate::rings::{FiniteRing, RingElem};
use crate::rootsys::{RootId, RootSystem};
use crate::scalar::Scalar;

use super::ChevRep;

#[derive(Debug, Clone)]
pub enum WordExpr {
    Gen { root: RootId, coeff: MultiPoly },
    Prod(Vec<WordExpr>),
    Comm(Box<WordExpr>, Box<WordExpr>),
    Conj(Box<WordExpr>, Box<WordExpr>),
    Inv(Box<WordExpr>),
}

impl WordExpr {
    /// Flattens to a plain generator sequence; commutators, conjugations
    /// and inverses unfold exactly because generator inverses are just
    /// negated parameters.
    pub fn flatten(&self) -> Vec<(RootId, MultiPoly)> {
        fn invert(word: &[(RootId, MultiPoly)]) -> Vec<(RootId, MultiPoly)> {
            word.iter().rev().map(|(r, p)| (*r, Scalar::neg(p))).collect()
        }
        match self {
            WordExpr::Gen { root, coeff } => vec![(*root, coeff.clone())],
            WordExpr::Prod(parts) => parts.iter().flat_map(|p| p.flatten()).collect(),
            WordExpr::Comm(x, y) => {
                let (fx, fy) = (x.flatten(), y.flatten());
                let mut out = fx.clone();
                out.extend(fy.clone());
                out.extend(invert(&fx));
                out.extend(invert(&fy));
                out
            }
            WordExpr::Conj(x, y) => {
                let (fx, fy) = (x.flatten(), y.flatten());
                let mut out = fx.clone();
                out.extend(fy);
                out.extend(invert(&fx));
                out
            }
            WordExpr::Inv(x) => invert(&x.flatten()),
        }
    }

    /// Variables used by the coefficient polynomials, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for (_, p) in self.flatten() {
            for v in p.variables() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars.sort();
        vars
    }

    /// Evaluates the word to a symbolic matrix.
    pub fn eval_symbolic(&self, rep: &ChevRep) -> Matrix<MultiPoly> {
        let word = self.flatten();
        rep.eval_word(&word, &MultiPoly::zero()).mat
    }

    /// Specializes the coefficients at a ring assignment and evaluates.
    pub fn eval_over_ring(
        &self,
        rep: &ChevRep,
        assignment: &BTreeMap<String, RingElem>,
        ring: &FiniteRing,
    ) -> Result<Matrix<RingElem>, String> {
        let word = self.flatten();
        let mut ring_word = Vec::with_capacity(word.len());
        for (root, p) in &word {
            ring_word.push((*root, p.eval(assignment, ring)?));
        }
        Ok(rep.eval_word(&ring_word, &ring.zero()).mat)
    }

    pub fn render(&self, sys: &RootSystem) -> String {
        match self {
            WordExpr::Gen { root, coeff } => format!("x({}; {})", sys.name(*root), coeff),
            WordExpr::Prod(parts) => {
                let rendered: Vec<String> = parts.iter().map(|p| p.render(sys)).collect();
                rendered.join(" * ")
            }
            WordExpr::Comm(x, y) => format!("comm({}, {})", x.render(sys), y.render(sys)),
            WordExpr::Conj(x, y) => format!("conj({}, {})", x.render(sys), y.render(sys)),
            WordExpr::Inv(x) => format!("inv({})", x.render(sys)),
        }
    }
}

pub fn parse_word(input: &str, sys: &RootSystem) -> Result<WordExpr, String> {
    let mut p = WordParser { chars: input.chars().collect(), pos: 0, sys };
    let expr = p.parse_word()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!("trailing input at offset {} in word {input:?}", p.pos));
    }
    Ok(expr)
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    sys: &'a RootSystem,
}

impl<'a> WordParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected {c:?} at offset {}", self.pos))
        }
    }

    fn parse_word(&mut self) -> Result<WordExpr, String> {
        let mut parts = vec![self.parse_atom()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            parts.push(self.parse_atom()?);
        }
        if parts.len() == 1 {
            Ok(parts.pop().unwrap())
        } else {
            Ok(WordExpr::Prod(parts))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().collect::<String>() == kw {
            self.pos = end;
            true
        } else {
            false
        }
    }

    /// Consumes up to (not including) the next top-level occurrence of one
    /// of `stops`, respecting nested parentheses.
    fn take_until(&mut self, stops: &[char]) -> Result<String, String> {
        let start = self.pos;
        let mut depth = 0usize;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c == '(' {
                depth += 1;
            } else if c == ')' {
                if depth == 0 && stops.contains(&')') {
                    return Ok(self.chars[start..self.pos].iter().collect());
                }
                depth = depth.saturating_sub(1);
            } else if depth == 0 && stops.contains(&c) {
                return Ok(self.chars[start..self.pos].iter().collect());
            }
            self.pos += 1;
        }
        Err("unterminated expression".to_string())
    }

    fn parse_atom(&mut self) -> Result<WordExpr, String> {
        if self.keyword("comm(") {
            let x = self.parse_word()?;
            self.expect(',')?;
            let y = self.parse_word()?;
            self.expect(')')?;
            return Ok(WordExpr::Comm(Box::new(x), Box::new(y)));
        }
        if self.keyword("conj(") {
            let x = self.parse_word()?;
            self.expect(',')?;
            let y = self.parse_word()?;
            self.expect(')')?;
            return Ok(WordExpr::Conj(Box::new(x), Box::new(y)));
        }
        if self.keyword("inv(") {
            let x = self.parse_word()?;
            self.expect(')')?;
            return Ok(WordExpr::Inv(Box::new(x)));
        }
        if self.keyword("x(") {
            let root_src = self.take_until(&[';'])?;
            self.expect(';')?;
            let poly_src = self.take_until(&[')'])?;
            self.expect(')')?;
            let root = self
                .sys
                .parse_root(&root_src)
                .map_err(|e| format!("bad root in generator: {e}"))?;
            let coeff = parse_poly(&poly_src)?;
            return Ok(WordExpr::Gen { root, coeff });
        }
        if self.peek() == Some('(') {
            self.pos += 1;
            let inner = self.parse_word()?;
            self.expect(')')?;
            return Ok(inner);
        }
        Err(format!("expected word atom at offset {}", self.pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SystemLabel;

    #[test]
    fn parse_flatten_and_evaluate() {
        let rep = ChevRep::new(SystemLabel::A(2)).unwrap();
        let sys = rep.system();
        let expr = parse_word("comm(x(a1; a), x(a2; b))", sys).unwrap();
        let flat = expr.flatten();
        assert_eq!(flat.len(), 4);
        let direct = rep.commutator(
            &rep.gen_elem(sys.parse_root("a1").unwrap(), &MultiPoly::var("a")),
            &rep.gen_elem(sys.parse_root("a2").unwrap(), &MultiPoly::var("b")),
        );
        assert_eq!(expr.eval_symbolic(&rep), direct.mat);
        assert_eq!(expr.variables(), vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn conj_and_inv_unfold() {
        let rep = ChevRep::new(SystemLabel::C(2)).unwrap();
        let sys = rep.system();
        let expr = parse_word("conj(x(-a1; c), inv(x(a2; a) * x(a1+a2; 2*a)))", sys).unwrap();
        let sym = expr.eval_symbolic(&rep);
        let g = rep.gen_elem(sys.parse_root("-a1").unwrap(), &MultiPoly::var("c"));
        let inner = rep.product(
            &rep.gen_elem(sys.parse_root("a2").unwrap(), &MultiPoly::var("a")),
            &rep.gen_elem(
                sys.parse_root("a1+a2").unwrap(),
                &crate::poly::parse_poly("2*a").unwrap(),
            ),
        );
        let direct = rep.conjugate(&g, &rep.inverse(&inner));
        assert_eq!(sym, direct.mat);
    }

    #[test]
    fn ring_specialization_matches_symbolic_evaluation() {
        let rep = ChevRep::new(SystemLabel::G2).unwrap();
        let sys = rep.system();
        let expr = parse_word("comm(x(a1; a), x(a2; b)) * x(3*a1+2*a2; -2*a^3*b^2)", sys).unwrap();
        let ring = FiniteRing::zmod(27);
        let mut assign = BTreeMap::new();
        assign.insert("a".to_string(), ring.from_int(5));
        assign.insert("b".to_string(), ring.from_int(11));
        let specialized = expr.eval_over_ring(&rep, &assign, &ring).unwrap();
        let symbolic = expr.eval_symbolic(&rep);
        let reduced = symbolic.eval(&assign, &ring).unwrap();
        assert_eq!(specialized, reduced);
    }

    #[test]
    fn parse_errors() {
        let sys = RootSystem::new(SystemLabel::A(2)).unwrap();
        assert!(parse_word("x(a1; a", &sys).is_err());
        assert!(parse_word("x(a9; a)", &sys).is_err());
        assert!(parse_word("frob(x(a1; a))", &sys).is_err());
    }
}
