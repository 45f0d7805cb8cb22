//! Automata for `root(L) = { w : w^k in L for some k >= 1 }`.
//!
//! The general construction runs the transformation monoid of the source
//! automaton as a DFA: reading `w` from the identity lands on `delta_w`, and
//! `delta_w` is accepting when some iterate of it carries the start state
//! into a final state. Only monoid elements are materialized, never the
//! whole of `Q^Q`.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::monoid::{transformation_monoid_with_cap, DEFAULT_CAP};
use crate::transform::Transformation;

/// The root automaton of a DFA, with the monoid element behind each state.
///
/// State 1 is the identity; the remaining states follow the lexicographic
/// order of their transformations.
#[derive(Clone, Debug)]
pub struct RootAutomaton {
    dfa: Dfa,
    elements: Vec<Transformation>,
    origin: Dfa,
}

impl RootAutomaton {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn origin(&self) -> &Dfa {
        &self.origin
    }

    pub fn state_count(&self) -> usize {
        self.elements.len()
    }

    /// Transformation behind the 1-indexed state `q`.
    pub fn element_of(&self, q: usize) -> &Transformation {
        &self.elements[q - 1]
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    /// State holding `f`, if `f` is in the monoid.
    pub fn state_of(&self, f: &Transformation) -> Option<usize> {
        if f.is_identity() && f.degree() == self.origin.n() {
            return Some(1);
        }
        self.elements[1..].binary_search(f).ok().map(|i| i + 2)
    }
}

/// Whether `f^k(start)` is final for some `k >= 1`. States are 1-indexed.
pub fn accepting_transformation(
    f: &Transformation,
    start: usize,
    finals: &BTreeSet<usize>,
) -> bool {
    let mut mask = vec![false; f.degree()];
    for &q in finals {
        if (1..=f.degree()).contains(&q) {
            mask[q - 1] = true;
        }
    }
    iterate_hits(f, start - 1, &mask)
}

/// The orbit of `start` under `f` repeats within `degree` steps, so checking
/// `f^1 .. f^degree` is enough.
fn iterate_hits(f: &Transformation, start: usize, finals: &[bool]) -> bool {
    let mut q = start;
    for _ in 0..f.degree() {
        q = f.apply0(q);
        if finals[q] {
            return true;
        }
    }
    false
}

pub fn root_automaton(d: &Dfa) -> Result<RootAutomaton> {
    root_automaton_with_cap(d, DEFAULT_CAP)
}

pub fn root_automaton_with_cap(d: &Dfa, cap: usize) -> Result<RootAutomaton> {
    let monoid = transformation_monoid_with_cap(d, cap)?;
    let letters = (0..d.alphabet().len())
        .map(|a| d.letter_transformation(a))
        .collect::<Result<Vec<_>>>()?;

    let identity = Transformation::identity(d.n())?;
    let id_index = monoid
        .index_of(&identity)
        .expect("a monoid contains its identity");
    // identity first, everything else keeps its sorted position
    let state_of = |i: usize| -> u32 {
        match i.cmp(&id_index) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => (i + 1) as u32,
            std::cmp::Ordering::Greater => i as u32,
        }
    };

    let mut elements = Vec::with_capacity(monoid.len());
    elements.push(identity);
    elements.extend(
        monoid
            .elements()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id_index)
            .map(|(_, e)| e.clone()),
    );

    let delta: Vec<Vec<u32>> = letters
        .iter()
        .map(|g| {
            elements
                .iter()
                .map(|e| {
                    let target = monoid
                        .index_of(&e.then(g))
                        .expect("monoid is closed under its generators");
                    state_of(target)
                })
                .collect()
        })
        .collect();
    let finals = elements
        .iter()
        .map(|e| iterate_hits(e, d.start0(), d.finals_mask()))
        .collect();

    Ok(RootAutomaton {
        dfa: Dfa::from_raw(d.alphabet().to_vec(), delta, 0, finals),
        elements,
        origin: d.clone(),
    })
}

/// Decides `w in root(L(d))` by running `w, ww, www, ...` directly on `d`.
///
/// The start state's orbit under `delta_w` repeats within `d.n()` steps, so
/// powers up to `d.n()` suffice.
pub fn root_member_oracle(d: &Dfa, w: &[usize]) -> Result<bool> {
    let mut q = d.start();
    for _ in 0..d.n() {
        q = d.run(q, w)?;
        if d.is_final(q) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Root of a unary language, built on the reachable state graph of `d` by
/// choosing new final states.
///
/// A nonempty length `s` is in the root iff it divides an accepted length.
/// Accepted lengths in the tail are finitely many and checked directly. A
/// final loop state accepts every length `b + m*period`; `s` divides one of
/// those iff `gcd(period, s)` divides `b`, which depends only on the class
/// of `s` modulo the period. The empty word is in the root iff it is in `L`.
pub fn unary_root(d: &Dfa) -> Result<Dfa> {
    let shape = d.unary_structure()?;
    let (tail, period) = (shape.tail, shape.period);
    let total = tail + period;

    let tail_lengths: Vec<usize> = (1..tail).filter(|&t| d.is_final(shape.path[t])).collect();
    let loop_lengths: Vec<usize> = (tail..total)
        .filter(|&t| d.is_final(shape.path[t]))
        .map(|t| if t == 0 { period } else { t })
        .collect();

    let finals: Vec<usize> = (0..total)
        .filter(|&s| {
            if s == 0 {
                return d.is_final(shape.path[0]);
            }
            let g = period.gcd(&s);
            tail_lengths.iter().any(|t| t % s == 0) || loop_lengths.iter().any(|b| b % g == 0)
        })
        .map(|s| s + 1)
        .collect();

    let row = (0..total)
        .map(|q| if q + 1 < total { q + 2 } else { tail + 1 })
        .collect();
    Dfa::new(d.alphabet().to_vec(), vec![row], 1, &finals)
}

/// Number of states of the minimal DFA for `root(L(d))`.
pub fn root_state_complexity(d: &Dfa) -> Result<usize> {
    Ok(root_automaton(d)?.dfa().minimize().n())
}

/// Unary root when possible, otherwise the general construction; both give
/// the same language.
pub fn root_dfa(d: &Dfa) -> Result<Dfa> {
    match unary_root(d) {
        Ok(r) => Ok(r),
        Err(Error::NotUnary(_)) => Ok(root_automaton(d)?.into_dfa()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::default_letters;
    use crate::monoid::closure;
    use proptest::prelude::*;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v).unwrap()
    }

    fn example() -> Dfa {
        Dfa::based_on(&[t(&[2, 1, 4, 5, 3]), t(&[2, 3, 4, 1, 2])], 1, &[1]).unwrap()
    }

    /// `{a^len}` with `len + 2` states.
    fn single_word(len: usize) -> Dfa {
        Dfa::unary_lasso(len + 1, 1, &[len + 1]).unwrap()
    }

    fn unary_language(lengths: &[usize], states: usize) -> Dfa {
        // accepts exactly `lengths`, all < states - 1; last state is a sink
        let finals: Vec<usize> = lengths.iter().map(|&s| s + 1).collect();
        Dfa::unary_lasso(states - 1, 1, &finals).unwrap()
    }

    #[test]
    fn accepting_transformation_cases() {
        let id = Transformation::identity(3).unwrap();
        assert!(accepting_transformation(&id, 2, &BTreeSet::from([2])));
        assert!(!accepting_transformation(&id, 2, &BTreeSet::from([1])));
        let constant = Transformation::constant(3, 3).unwrap();
        assert!(!accepting_transformation(
            &constant,
            1,
            &BTreeSet::from([1, 2])
        ));
        assert!(accepting_transformation(
            &t(&[2, 1, 4, 5, 3]),
            1,
            &BTreeSet::from([1])
        ));
        // reaches the final state only on the third iterate
        assert!(accepting_transformation(
            &t(&[2, 3, 4, 4]),
            1,
            &BTreeSet::from([4])
        ));
        assert!(!accepting_transformation(
            &t(&[2, 3, 4, 4]),
            1,
            &BTreeSet::new()
        ));
    }

    #[test]
    fn example_root_automaton() {
        let d = example();
        let r = root_automaton(&d).unwrap();
        let monoid = closure(&[t(&[2, 1, 4, 5, 3]), t(&[2, 3, 4, 1, 2])]).unwrap();
        assert_eq!(r.state_count(), monoid.len());
        assert!(r.element_of(1).is_identity());
        assert_eq!(r.dfa().start(), 1);
        for (q, e) in r.elements().iter().enumerate() {
            assert_eq!(r.state_of(e), Some(q + 1));
            for a in 0..2 {
                let next = r.element_of(r.dfa().next(q + 1, a));
                assert_eq!(
                    next,
                    &e.compose(&d.letter_transformation(a).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn empty_language_root() {
        let d = Dfa::based_on(&tn_gens(3), 1, &[]).unwrap();
        let r = root_automaton(&d).unwrap();
        assert!(r.dfa().finals().is_empty());
        assert_eq!(r.dfa().minimize().n(), 1);
    }

    fn tn_gens(n: usize) -> Vec<Transformation> {
        crate::monoid::tn_generators(n).unwrap()
    }

    #[test]
    fn root_of_single_word() {
        let d = single_word(2);
        let expected = unary_language(&[1, 2], 4);
        let r = root_automaton(&d).unwrap();
        assert!(r.dfa().equivalent(&expected).unwrap());
        assert!(unary_root(&d).unwrap().equivalent(&expected).unwrap());
    }

    #[test]
    fn oracle_cases() {
        let d = single_word(2);
        assert!(root_member_oracle(&d, &[0]).unwrap());
        assert!(root_member_oracle(&d, &[0, 0]).unwrap());
        assert!(!root_member_oracle(&d, &[0, 0, 0]).unwrap());
        assert!(!root_member_oracle(&d, &[]).unwrap());
        assert!(root_member_oracle(&example(), &[]).unwrap());
        assert!(root_member_oracle(&d, &[1]).is_err());
    }

    #[test]
    fn unary_root_single_word_languages() {
        for n in 2..=14 {
            let d = single_word(n - 2);
            let r = unary_root(&d).unwrap();
            let expected_finals: BTreeSet<usize> = if n == 2 {
                BTreeSet::from([1])
            } else {
                (2..=n - 1).filter(|&q| (n - 2) % (q - 1) == 0).collect()
            };
            assert_eq!(r.finals(), expected_finals, "n = {n}");
            assert_eq!(r.minimize().n(), n, "n = {n}");
        }
        assert_eq!(
            unary_root(&single_word(2)).unwrap().finals(),
            BTreeSet::from([2, 3])
        );
    }

    #[test]
    fn unary_root_loop_residues() {
        // loop of length 4 entered immediately after the start; only a^2
        // (mod 4) is accepted
        let d = Dfa::unary_lasso(1, 4, &[3]).unwrap();
        let r = unary_root(&d).unwrap();
        // lengths 1..=4 reach states 2..=5 with residues 1, 2, 3, 0
        assert_eq!(r.finals(), BTreeSet::from([2, 3, 4]));

        // brute force: s marks iff s divides 4k + 2 for some k <= 50
        for s in 1..=12usize {
            let divides = (0..=50).any(|k| (4 * k + 2) % s == 0);
            assert_eq!(divides, s % 4 != 0, "s = {s}");
        }
    }

    #[test]
    fn unary_root_edge_cases() {
        let empty = Dfa::unary_lasso(2, 3, &[]).unwrap();
        assert!(unary_root(&empty).unwrap().finals().is_empty());

        let epsilon_only = unary_language(&[0], 2);
        let r = unary_root(&epsilon_only).unwrap();
        assert_eq!(r.finals(), BTreeSet::from([1]));
        assert_eq!(r.minimize().n(), 2);

        assert!(matches!(unary_root(&example()), Err(Error::NotUnary(2))));

        // start state on the loop: every s divides 6s, so the root is a*
        let cycle = Dfa::unary_lasso(0, 6, &[1]).unwrap();
        let everything = Dfa::unary_lasso(0, 1, &[1]).unwrap();
        assert!(unary_root(&cycle).unwrap().equivalent(&everything).unwrap());
        // lengths 3 mod 6 only: the root misses exactly the even lengths
        let odd = Dfa::unary_lasso(0, 6, &[4]).unwrap();
        let r = unary_root(&odd).unwrap();
        assert_eq!(r.finals(), BTreeSet::from([2, 4, 6]));
    }

    #[test]
    fn state_complexities() {
        let single = Dfa::new(
            vec!["a".into(), "b".into()],
            vec![vec![1], vec![1]],
            1,
            &[1],
        )
        .unwrap();
        assert_eq!(root_state_complexity(&single).unwrap(), 1);
        let d = Dfa::based_on(&tn_gens(4), 1, &[1]).unwrap();
        assert_eq!(root_state_complexity(&d).unwrap(), 250);
        assert_eq!(root_state_complexity(&example()).unwrap(), 1857 - 10);
    }

    fn arb_dfa(max_n: usize, max_k: usize) -> impl Strategy<Value = Dfa> {
        (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
            (
                prop::collection::vec(prop::collection::vec(1..=n, n), k),
                1..=n,
                prop::collection::vec(any::<bool>(), n),
            )
                .prop_map(move |(rows, start, fin)| {
                    let finals: Vec<usize> = (1..=n).filter(|&q| fin[q - 1]).collect();
                    Dfa::new(default_letters(k), rows, start, &finals).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn root_automaton_matches_oracle(d in arb_dfa(5, 3), words in prop::collection::vec(prop::collection::vec(0usize..3, 0..7), 20)) {
            let r = root_automaton(&d).unwrap();
            let k = d.alphabet().len();
            for w in words {
                let w: Vec<usize> = w.into_iter().map(|a| a % k).collect();
                let expected = root_member_oracle(&d, &w).unwrap();
                prop_assert_eq!(r.dfa().accepts(&w).unwrap(), expected);
                if d.accepts(&w).unwrap() {
                    prop_assert!(expected);
                }
            }
        }

        #[test]
        fn unary_root_agrees_with_general(d in arb_dfa(10, 1)) {
            let general = root_automaton(&d).unwrap();
            let unary = unary_root(&d).unwrap();
            prop_assert!(unary.equivalent(general.dfa()).unwrap());
            prop_assert!(unary.minimize().n() <= d.minimize().n());
        }
    }
}
