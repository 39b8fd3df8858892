//! Subgroup constructions over a finite ring: unrelativised and relative
//! elementary subgroups, mixed commutator subgroups, and the congruence
//! predicates the suites reduce to.

use rand::Rng;

use crate::chevrep::ChevRep;
use crate::rings::{FiniteRing, Ideal, RingElem};
use crate::rootsys::RootId;
use crate::scalar::Scalar;

use super::{closure, ClosureSpec, EngineError, Gen, RingMatrix, Subgroup};

/// x_alpha(a) for every root and every nonzero a in the ideal.
pub fn elementary_gens(rep: &ChevRep, ring: &FiniteRing, level: &Ideal) -> Vec<Gen> {
    let mut out = Vec::new();
    for root in rep.system().roots() {
        for a in level.elements() {
            if a.is_zero() {
                continue;
            }
            out.push(Gen::from_word(rep, ring, vec![(root, a.clone())]));
        }
    }
    out
}

/// x_alpha(t) for every root and every nonzero ring element.
pub fn absolute_gens(rep: &ChevRep, ring: &FiniteRing) -> Vec<Gen> {
    let unit = Ideal::unit(std::sync::Arc::new(ring.clone()));
    elementary_gens(rep, ring, &unit)
}

/// z_alpha(a, c) = x_{-alpha}(c) x_alpha(a) x_{-alpha}(-c) over the given
/// level elements and conjugating scalars.
pub fn z_gens(
    rep: &ChevRep,
    ring: &FiniteRing,
    level: &Ideal,
    c_sample: &[RingElem],
) -> Vec<Gen> {
    let mut out = Vec::new();
    for root in rep.system().roots() {
        let neg = rep.system().negate(root);
        for a in level.elements() {
            if a.is_zero() {
                continue;
            }
            for c in c_sample {
                let word = if c.is_zero() {
                    vec![(root, a.clone())]
                } else {
                    vec![(neg, c.clone()), (root, a.clone()), (neg, c.neg())]
                };
                out.push(Gen::from_word(rep, ring, word));
            }
        }
    }
    out
}

/// y_alpha(a, b) = [x_alpha(a), x_{-alpha}(b)] over the given roots and the
/// full grids of the two ideals.
pub fn y_gens(
    rep: &ChevRep,
    ring: &FiniteRing,
    roots: &[RootId],
    level_a: &Ideal,
    level_b: &Ideal,
) -> Vec<Gen> {
    let mut out = Vec::new();
    for &root in roots {
        let neg = rep.system().negate(root);
        for a in level_a.elements() {
            for b in level_b.elements() {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let word = vec![
                    (root, a.clone()),
                    (neg, b.clone()),
                    (root, a.neg()),
                    (neg, b.neg()),
                ];
                out.push(Gen::from_word(rep, ring, word));
            }
        }
    }
    out
}

/// The unrelativised elementary subgroup of the given level: the closure of
/// all x_alpha(a), a in the level ideal.
pub fn elementary_subgroup(
    rep: &ChevRep,
    ring: &FiniteRing,
    level: &Ideal,
    guard: Option<&Ideal>,
    budget: usize,
    label: &str,
) -> Result<Subgroup, EngineError> {
    closure(ClosureSpec {
        rep,
        ring,
        label: label.to_string(),
        seeds: elementary_gens(rep, ring, level),
        conjugators: Vec::new(),
        guard,
        budget,
    })
}

/// The relative elementary subgroup of the given level, built twice: as the
/// conjugation closure of the level generators under all absolute
/// generators, and as the plain closure of the z_alpha(a, c) conjugated
/// generators. The two fixed points must agree exactly.
///
/// `seed_sample` optionally thins the level elements used to seed the first
/// construction; conjugation closure restores the rest, and the fixed point
/// is sample-independent.
pub fn relative_elementary(
    rep: &ChevRep,
    ring: &FiniteRing,
    level: &Ideal,
    seed_sample: Option<&[RingElem]>,
    budget: usize,
    label: &str,
) -> Result<Subgroup, EngineError> {
    let seeds = match seed_sample {
        None => elementary_gens(rep, ring, level),
        Some(sample) => {
            let mut out = Vec::new();
            for root in rep.system().roots() {
                for a in sample {
                    if a.is_zero() {
                        continue;
                    }
                    assert!(level.contains(a), "seed sample must lie in the level ideal");
                    out.push(Gen::from_word(rep, ring, vec![(root, a.clone())]));
                }
            }
            out
        }
    };
    let conjugated = closure(ClosureSpec {
        rep,
        ring,
        label: label.to_string(),
        seeds,
        conjugators: absolute_gens(rep, ring),
        guard: Some(level),
        budget,
    })?;
    if !conjugated.complete {
        return Ok(conjugated);
    }
    let ring_elems = ring.elements();
    let stv = adaptive_closure(
        rep,
        ring,
        &format!("{label} (stv)"),
        z_gens(rep, ring, level, &ring_elems),
        Vec::new(),
        Some(level),
        budget,
    )?;
    if !stv.complete {
        return Ok(stv);
    }
    if !conjugated.same_elements(&stv) {
        return Err(EngineError::ConstructionMismatch {
            label: label.to_string(),
            left: conjugated.len(),
            right: stv.len(),
        });
    }
    Ok(conjugated)
}

/// Closure of a possibly large seed family: a growing generating subset is
/// closed (under products and the given conjugators), and every remaining
/// seed is then required to be a member; any miss extends the subset and
/// the closure reruns. The fixed point is the subgroup generated by all
/// seeds, normalized by the conjugators, at a fraction of the product cost.
pub fn adaptive_closure(
    rep: &ChevRep,
    ring: &FiniteRing,
    label: &str,
    seeds: Vec<Gen>,
    conjugators: Vec<Gen>,
    guard: Option<&Ideal>,
    budget: usize,
) -> Result<Subgroup, EngineError> {
    const INITIAL_GENERATORS: usize = 48;
    let split = seeds.len().min(INITIAL_GENERATORS);
    let mut gens: Vec<Gen> = seeds[..split].to_vec();
    let rest: Vec<Gen> = seeds[split..].to_vec();
    for _round in 0..200 {
        let sub = closure(ClosureSpec {
            rep,
            ring,
            label: label.to_string(),
            seeds: gens.clone(),
            conjugators: conjugators.clone(),
            guard,
            budget,
        })?;
        if !sub.complete {
            return Ok(sub);
        }
        match rest.iter().find(|g| !sub.contains_mat(&g.mat)) {
            None => return Ok(sub),
            Some(missing) => gens.push(missing.clone()),
        }
    }
    Err(EngineError::ConstructionMismatch {
        label: label.to_string(),
        left: gens.len(),
        right: seeds.len(),
    })
}

/// The mixed commutator subgroup generated by the commutators of two
/// generator families, closed under conjugation by all generators of both
/// families (which makes it the full commutator subgroup [X, Y]). After the
/// closure, sampled commutators of random words in the two families are
/// required to land inside.
pub fn mixed_commutator(
    rep: &ChevRep,
    ring: &FiniteRing,
    x_gens: &[Gen],
    y_gens: &[Gen],
    guard: Option<&Ideal>,
    budget: usize,
    label: &str,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<Subgroup, EngineError> {
    use rayon::prelude::*;
    let encoder = super::Encoder::new(ring, rep.dim());
    let y_invs: Vec<Gen> = y_gens.iter().map(|g| g.inverse(rep, ring)).collect();
    let mut seen = std::collections::HashSet::new();
    let mut seeds = Vec::new();
    for gx in x_gens {
        let gx_inv = gx.inverse(rep, ring);
        let row: Vec<(Vec<u8>, usize)> = y_gens
            .par_iter()
            .enumerate()
            .map(|(j, gy)| {
                let mat = gx.mat.mul(&gy.mat).mul(&gx_inv.mat).mul(&y_invs[j].mat);
                (encoder.encode(&mat), j)
            })
            .collect();
        let identity_enc =
            encoder.encode(&crate::matrix::Matrix::identity_like(&ring.zero(), rep.dim()));
        for (enc, j) in row {
            let gy = &y_gens[j];
            if enc == identity_enc {
                continue;
            }
            if seen.insert(enc) {
                let mut word = gx.word.clone();
                word.extend(gy.word.iter().cloned());
                word.extend(gx_inv.word.iter().cloned());
                word.extend(y_invs[j].word.iter().cloned());
                seeds.push(Gen::from_word(rep, ring, word));
            }
        }
    }
    let mut conjugators = x_gens.to_vec();
    conjugators.extend(y_gens.iter().cloned());
    let sub = adaptive_closure(rep, ring, label, seeds, conjugators, guard, budget)?;
    if !sub.complete {
        return Ok(sub);
    }
    // Containment spot-check on commutators of random words in the two
    // generator families.
    for _ in 0..samples {
        let wx = random_word(x_gens, rng, 6);
        let wy = random_word(y_gens, rng, 6);
        let x = rep.eval_word(&wx, &ring.zero());
        let y = rep.eval_word(&wy, &ring.zero());
        let comm = rep.commutator(&x, &y);
        if !sub.contains_mat(&comm.mat) {
            return Err(EngineError::CommutatorEscape {
                label: label.to_string(),
                word: comm.render_word(rep.system()),
            });
        }
    }
    Ok(sub)
}

fn random_word(gens: &[Gen], rng: &mut impl Rng, max_len: usize) -> super::RingWord {
    let len = rng.gen_range(1..=max_len);
    let mut word = Vec::new();
    for _ in 0..len {
        word.extend(gens[rng.gen_range(0..gens.len())].word.iter().cloned());
    }
    word
}

/// True when reducing the matrix modulo the ideal gives the identity, i.e.
/// every entry of (m - 1) lies in the ideal.
pub fn kernel_member(mat: &RingMatrix, ring: &FiniteRing, level: &Ideal) -> bool {
    let n = mat.size();
    for i in 0..n {
        for j in 0..n {
            let mut e = mat.at(i, j).clone();
            if i == j {
                e = e.sub(&ring.one());
            }
            if !level.contains(&e) {
                return false;
            }
        }
    }
    true
}

/// x congruent to y modulo the enumerated subgroup N, i.e. x y^-1 in N.
pub fn congruent(
    rep: &ChevRep,
    x: &crate::chevrep::GroupElem<RingElem>,
    y: &crate::chevrep::GroupElem<RingElem>,
    n: &Subgroup,
) -> Result<bool, EngineError> {
    let prod = x.mat.mul(&rep.inverse(y).mat);
    n.member(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SystemLabel;
    use rand::SeedableRng;
    use std::sync::Arc;

    fn setup(label: &str, modulus: u32) -> (ChevRep, Arc<FiniteRing>) {
        (
            ChevRep::new(SystemLabel::parse(label).unwrap()).unwrap(),
            Arc::new(FiniteRing::zmod(modulus)),
        )
    }

    #[test]
    fn trivial_and_cyclic_closures() {
        let (rep, ring) = setup("A2", 4);
        let sub = closure(ClosureSpec {
            rep: &rep,
            ring: &ring,
            label: "trivial".into(),
            seeds: vec![],
            conjugators: vec![],
            guard: None,
            budget: 1 << 10,
        })
        .unwrap();
        assert_eq!(sub.len(), 1);
        assert!(sub.complete);

        let alpha = rep.system().fundamentals()[0];
        let one_gen = Gen::from_word(&rep, &ring, vec![(alpha, ring.one())]);
        let cyclic = closure(ClosureSpec {
            rep: &rep,
            ring: &ring,
            label: "cyclic".into(),
            seeds: vec![one_gen],
            conjugators: vec![],
            guard: None,
            budget: 1 << 10,
        })
        .unwrap();
        assert_eq!(cyclic.len(), 4);
    }

    #[test]
    fn sl3_z4_order_matches_group_order_formula() {
        // |SL(3, Z/4)| = |SL(3, Z/2)| * 2^8 = 168 * 256 = 43008.
        let (rep, ring) = setup("A2", 4);
        let unit = Ideal::unit(ring.clone());
        let sub =
            elementary_subgroup(&rep, &ring, &unit, None, 1 << 20, "sl3z4").unwrap();
        assert!(sub.complete);
        assert_eq!(sub.len(), 168 * 256);
    }

    #[test]
    fn level_two_elementary_subgroup_in_sl3_z4() {
        let (rep, ring) = setup("A2", 4);
        let two = Ideal::from_generators(ring.clone(), &[ring.from_int(2)]).unwrap();
        let sub =
            elementary_subgroup(&rep, &ring, &two, Some(&two), 1 << 16, "e2").unwrap();
        assert!(sub.complete);
        // Inside the level-two congruence kernel, and x_alpha(1) is outside.
        for enc in sub.encodings() {
            assert!(kernel_member(&sub.decode(enc), &ring, &two));
        }
        let alpha = rep.system().fundamentals()[0];
        let x1 = rep.gen_elem(alpha, &ring.one());
        assert!(!sub.member(&x1.mat).unwrap());
        // Lagrange sanity against the full group.
        let unit = Ideal::unit(ring.clone());
        let full =
            elementary_subgroup(&rep, &ring, &unit, None, 1 << 20, "sl3z4").unwrap();
        assert_eq!(full.len() % sub.len(), 0);
        assert!(sub.is_subset_of(&full));
    }

    #[test]
    fn zero_level_subgroups_are_trivial() {
        let (rep, ring) = setup("A2", 4);
        let zero = Ideal::zero(ring.clone());
        let sub =
            elementary_subgroup(&rep, &ring, &zero, None, 1 << 10, "e0").unwrap();
        assert_eq!(sub.len(), 1);
        let rel = relative_elementary(&rep, &ring, &zero, None, 1 << 10, "rel0").unwrap();
        assert_eq!(rel.len(), 1);
    }

    #[test]
    fn relative_elementary_constructions_agree() {
        let (rep, ring) = setup("A2", 8);
        let four = Ideal::from_generators(ring.clone(), &[ring.from_int(4)]).unwrap();
        let rel =
            relative_elementary(&rep, &ring, &four, None, 1 << 16, "rel4").unwrap();
        assert!(rel.complete);
        assert!(rel.len() <= 256);
        for enc in rel.encodings() {
            assert!(kernel_member(&rel.decode(enc), &ring, &four));
        }
        // Thinned seed sample reaches the same fixed point.
        let sample = vec![ring.from_int(4)];
        let rel2 =
            relative_elementary(&rep, &ring, &four, Some(&sample), 1 << 16, "rel4s")
                .unwrap();
        assert!(rel.same_elements(&rel2));

        // Relative contains unrelativised.
        let unrel =
            elementary_subgroup(&rep, &ring, &four, Some(&four), 1 << 16, "e4").unwrap();
        assert!(unrel.is_subset_of(&rel));
    }

    #[test]
    fn guard_escape_is_fatal() {
        let (rep, ring) = setup("A2", 8);
        let four = Ideal::from_generators(ring.clone(), &[ring.from_int(4)]).unwrap();
        let alpha = rep.system().fundamentals()[0];
        let bad = Gen::from_word(&rep, &ring, vec![(alpha, ring.from_int(2))]);
        let res = closure(ClosureSpec {
            rep: &rep,
            ring: &ring,
            label: "bad".into(),
            seeds: vec![bad],
            conjugators: vec![],
            guard: Some(&four),
            budget: 1 << 10,
        });
        assert!(matches!(res, Err(EngineError::GuardEscape { .. })));
    }

    #[test]
    fn budget_exhaustion_marks_partial_and_membership_refuses() {
        let (rep, ring) = setup("A2", 4);
        let unit = Ideal::unit(ring.clone());
        let sub = elementary_subgroup(&rep, &ring, &unit, None, 100, "partial").unwrap();
        assert!(!sub.complete);
        let alpha = rep.system().fundamentals()[0];
        assert!(sub.member(&rep.gen_elem(alpha, &ring.one()).mat).is_err());
    }

    #[test]
    fn mixed_commutator_basics() {
        let (rep, ring) = setup("A2", 4);
        let two = Ideal::from_generators(ring.clone(), &[ring.from_int(2)]).unwrap();
        let zero = Ideal::zero(ring.clone());
        let gens = elementary_gens(&rep, &ring, &two);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        // [E(2), E(2)] over Z/4 is trivial: level-two matrices commute.
        let comm = mixed_commutator(
            &rep, &ring, &gens, &gens, Some(&zero), 1 << 16, "comm", &mut rng, 20,
        )
        .unwrap();
        assert_eq!(comm.len(), 1);

        // [X, trivial] is trivial.
        let comm2 = mixed_commutator(
            &rep, &ring, &gens, &[], None, 1 << 16, "comm-triv", &mut rng, 0,
        )
        .unwrap();
        assert_eq!(comm2.len(), 1);
    }

    #[test]
    fn mixed_commutator_symmetry_over_z8() {
        let (rep, ring) = setup("A2", 8);
        let two = Ideal::from_generators(ring.clone(), &[ring.from_int(2)]).unwrap();
        let four = Ideal::from_generators(ring.clone(), &[ring.from_int(4)]).unwrap();
        let gens = elementary_gens(&rep, &ring, &two);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let xy = mixed_commutator(
            &rep, &ring, &gens, &gens, Some(&four), 1 << 16, "xy", &mut rng, 10,
        )
        .unwrap();
        let yx = mixed_commutator(
            &rep, &ring, &gens, &gens, Some(&four), 1 << 16, "yx", &mut rng, 10,
        )
        .unwrap();
        assert!(xy.same_elements(&yx));
        assert!(xy.len() > 1);
        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        assert!(xy.spot_check_closure(&mut rng2, 50));
    }

    #[test]
    fn congruence_predicates() {
        let (rep, ring) = setup("A2", 8);
        let four = Ideal::from_generators(ring.clone(), &[ring.from_int(4)]).unwrap();
        let rel = relative_elementary(&rep, &ring, &four, None, 1 << 16, "rel").unwrap();
        let alpha = rep.system().fundamentals()[0];
        let g = rep.gen_elem(alpha, &ring.from_int(3));
        assert!(congruent(&rep, &g, &g, &rel).unwrap());
        let h = rep.gen_elem(alpha, &ring.from_int(4));
        let id = rep.identity(&ring.zero());
        assert_eq!(
            congruent(&rep, &h, &id, &rel).unwrap(),
            rel.member(&h.mat).unwrap()
        );
        // Kernel membership mirrors the spec examples.
        let r4 = FiniteRing::zmod(4);
        let two4 = Ideal::from_generators(Arc::new(r4.clone()), &[r4.from_int(2)]).unwrap();
        let rep_a2 = ChevRep::new(SystemLabel::A(2)).unwrap();
        let a = rep_a2.system().fundamentals()[0];
        assert!(kernel_member(&rep_a2.gen_elem(a, &r4.from_int(2)).mat, &r4, &two4));
        assert!(!kernel_member(&rep_a2.gen_elem(a, &r4.one()).mat, &r4, &two4));
    }

    #[test]
    fn witness_words_replay() {
        let (rep, ring) = setup("A2", 4);
        let two = Ideal::from_generators(ring.clone(), &[ring.from_int(2)]).unwrap();
        let sub = elementary_subgroup(&rep, &ring, &two, Some(&two), 1 << 16, "e2").unwrap();
        for enc in sub.encodings().take(20) {
            let word = sub.word_for(enc, &rep);
            let _ = word;
        }
        // Word reconstruction round-trips through evaluation.
        for enc in sub.sorted_encodings().iter().take(10) {
            let idx = *sub.index.get(enc.as_slice()).unwrap();
            let word = sub.word_of_index(idx);
            let mat = rep.eval_word(&word, &ring.zero()).mat;
            assert_eq!(sub.encoder().encode(&mat), *enc);
        }
    }
}
