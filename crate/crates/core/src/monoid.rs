//! Transformation monoids: closure enumeration, the full-monoid and
//! two-cycle generator families, and bounded searches over generator pairs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::transform::Transformation;

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Largest degree for which [`largest_two_generated`] runs without an
/// explicit larger budget.
pub const LARGEST_TWO_GENERATED_MAX_N: usize = 4;

/// Largest degree `k + l` accepted by [`ukl_generators`]; the generator
/// search enumerates subgroups of the symmetric group on `k + l - 1` points.
pub const UKL_GENERATOR_MAX_N: usize = 11;

/// A finite monoid of transformations of common degree, with the
/// generators it was built from.
///
/// Elements are kept in lexicographic order of their image sequences.
#[derive(Clone, Debug)]
pub struct TransMonoid {
    degree: usize,
    elements: Vec<Transformation>,
    generators: Vec<Transformation>,
}

impl TransMonoid {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: a monoid contains its identity.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Transformation] {
        &self.generators
    }

    pub fn index_of(&self, f: &Transformation) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        self.index_of(f).is_some()
    }

    /// Number of elements of each rank.
    pub fn rank_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for e in &self.elements {
            *hist.entry(e.rank()).or_default() += 1;
        }
        hist
    }

    /// Checks closure under composition over all pairs. Quadratic; meant for
    /// small monoids.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|f| self.elements.iter().all(|g| self.contains(&f.then(g))))
    }

    /// One element per line in one-row form.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

/// The monoid generated by `gens`, including the identity.
pub fn closure(gens: &[Transformation]) -> Result<TransMonoid> {
    closure_with_cap(gens, DEFAULT_CAP)
}

pub fn closure_with_cap(gens: &[Transformation], cap: usize) -> Result<TransMonoid> {
    let degree = common_degree(gens)?;
    let set = enumerate(gens, degree, cap)?;
    let mut elements: Vec<Transformation> = set.into_iter().collect();
    elements.sort_unstable();
    Ok(TransMonoid {
        degree,
        elements,
        generators: gens.to_vec(),
    })
}

fn common_degree(gens: &[Transformation]) -> Result<usize> {
    let degree = gens.first().ok_or(Error::NoGenerators)?.degree();
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    Ok(degree)
}

/// Breadth-first closure: every frontier element is multiplied on the right
/// by every generator.
fn enumerate(
    gens: &[Transformation],
    degree: usize,
    cap: usize,
) -> Result<HashSet<Transformation>> {
    let identity = Transformation::identity(degree)?;
    let mut seen = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                let h = f.then(g);
                if !seen.contains(&h) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// The monoid generated by the letter actions of `d`.
pub fn transformation_monoid(d: &Dfa) -> Result<TransMonoid> {
    transformation_monoid_with_cap(d, DEFAULT_CAP)
}

pub fn transformation_monoid_with_cap(d: &Dfa, cap: usize) -> Result<TransMonoid> {
    let gens = (0..d.alphabet().len())
        .map(|a| d.letter_transformation(a))
        .collect::<Result<Vec<_>>>()?;
    closure_with_cap(&gens, cap)
}

/// A minimal generating set of the full transformation monoid on `n`
/// points: a transposition, an `n`-cycle and a rank `n - 1` map for
/// `n >= 3`; two maps for `n = 2`; the identity for `n = 1`.
pub fn tn_generators(n: usize) -> Result<Vec<Transformation>> {
    match n {
        0 => Err(Error::InvalidDegree(0)),
        1 => Ok(vec![Transformation::identity(1)?]),
        2 => Ok(vec![
            Transformation::new(&[2, 1])?,
            Transformation::new(&[1, 1])?,
        ]),
        _ => {
            let mut swap: Vec<usize> = (1..=n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
            let mut collapse: Vec<usize> = (1..=n).collect();
            collapse[n - 1] = 1;
            Ok(vec![
                Transformation::new(&swap)?,
                Transformation::new(&cycle)?,
                Transformation::new(&collapse)?,
            ])
        }
    }
}

fn check_ukl_params(k: usize, l: usize) -> Result<()> {
    if k < 2 || l < 2 {
        return Err(Error::InvalidParameters(format!(
            "cycle lengths must be at least 2, got ({k}, {l})"
        )));
    }
    if k.gcd(&l) != 1 {
        return Err(Error::InvalidParameters(format!(
            "cycle lengths must be coprime, got ({k}, {l})"
        )));
    }
    Ok(())
}

/// Generators `(alpha, beta)` of the two-cycle monoid `U(k, l)`.
///
/// `alpha` is `(1 .. k)(k+1 .. k+l)`. `beta` acts on `1..n-1` as a
/// permutation `p` and sends `n` to `p(1)`, where `p` is the
/// lexicographically first permutation of `n - 1` points that generates the
/// whole symmetric group together with `(1 .. k)`.
pub fn ukl_generators(k: usize, l: usize) -> Result<(Transformation, Transformation)> {
    check_ukl_params(k, l)?;
    let n = k + l;
    if n > UKL_GENERATOR_MAX_N {
        return Err(Error::OverBudget {
            what: format!("generator search for U({k}, {l})"),
            detail: format!("k + l must be at most {UKL_GENERATOR_MAX_N}"),
        });
    }

    type Pair = (Transformation, Transformation);
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Pair>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(pair) = cache.lock().unwrap().get(&(k, l)) {
        return Ok(pair.clone());
    }

    let alpha = Transformation::cycle_pair(k, l)?;
    let m = n - 1;
    let pi1: Vec<u8> = (0..m)
        .map(|i| if i < k { ((i + 1) % k) as u8 } else { i as u8 })
        .collect();
    let pi1 = Transformation::from_zero_based(pi1);
    let mut candidate: Vec<u8> = (0..m as u8).collect();
    let pi2 = loop {
        let p = Transformation::from_zero_based(candidate.clone());
        if generates_symmetric_group(&pi1, &p)? {
            break p;
        }
        if !next_permutation(&mut candidate) {
            unreachable!("(1 2 ... k) and an m-cycle always generate S_m");
        }
    };
    let mut beta = pi2.as_zero_based().to_vec();
    beta.push(beta[0]);
    let pair = (alpha, Transformation::from_zero_based(beta));
    cache.lock().unwrap().insert((k, l), pair.clone());
    Ok(pair)
}

/// Whether two permutations of `m` points generate the symmetric group.
fn generates_symmetric_group(p: &Transformation, q: &Transformation) -> Result<bool> {
    let m = p.degree();
    if m == 1 {
        return Ok(true);
    }
    // cheap necessary conditions first: transitivity and an odd element
    let mut reached = vec![false; m];
    let mut stack = vec![0usize];
    reached[0] = true;
    while let Some(x) = stack.pop() {
        for y in [p.apply0(x), q.apply0(x)] {
            if !reached[y] {
                reached[y] = true;
                stack.push(y);
            }
        }
    }
    if reached.contains(&false) || (is_even(p) && is_even(q)) {
        return Ok(false);
    }
    // a subgroup with more than half the elements is the whole group
    let half: usize = (1..=m).product::<usize>() / 2;
    match enumerate(&[p.clone(), q.clone()], m, half) {
        Ok(_) => Ok(false),
        Err(Error::CapExceeded { .. }) => Ok(true),
        Err(e) => Err(e),
    }
}

fn is_even(p: &Transformation) -> bool {
    let m = p.degree();
    let mut seen = vec![false; m];
    let mut transpositions = 0;
    for start in 0..m {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p.apply0(x);
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Membership in `U(k, l)`: `g` is a positive power of `(1 .. k)(k+1 .. n)`,
/// or `g` identifies some point of `1..=k` with some point of `k+1..=n` and
/// misses some point of `k+1..=n`. Returns false when the degree of `g` is
/// not `k + l`.
pub fn ukl_member(g: &Transformation, k: usize, l: usize) -> bool {
    let n = k + l;
    if k == 0 || l == 0 || g.degree() != n {
        return false;
    }
    if g.is_permutation() {
        let Ok(alpha) = Transformation::cycle_pair(k, l) else {
            return false;
        };
        let order = k.lcm(&l);
        let mut power = alpha.clone();
        for _ in 0..order {
            if &power == g {
                return true;
            }
            power = power.then(&alpha);
        }
        return false;
    }
    let images = g.as_zero_based();
    let (first, second) = images.split_at(k);
    let mut first_block = vec![false; n];
    for &p in first {
        first_block[p as usize] = true;
    }
    let identifies = second.iter().any(|&p| first_block[p as usize]);
    let mut hit = vec![false; n];
    for &p in images {
        hit[p as usize] = true;
    }
    let misses = hit[k..].contains(&false);
    identifies && misses
}

/// Every transformation of degree `n`, in lexicographic order.
pub fn all_transformations(n: usize) -> impl Iterator<Item = Transformation> {
    let mut current: Option<Vec<u8>> = (1..=crate::transform::MAX_DEGREE)
        .contains(&n)
        .then(|| vec![0u8; n]);
    std::iter::from_fn(move || {
        let out = current.as_ref()?.clone();
        let v = current.as_mut().unwrap();
        let mut i = n;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if (v[i] as usize) + 1 < n {
                v[i] += 1;
                v[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
        Some(Transformation::from_zero_based(out))
    })
}

/// Result of the exhaustive two-generator search.
#[derive(Clone, Debug)]
pub struct LargestTwoGenerated {
    pub size: BigUint,
    pub generators: (Transformation, Transformation),
}

/// Largest monoid generated by two transformations of degree `n`, found by
/// trying every pair. Refuses `n > max_n`.
pub fn largest_two_generated(n: usize, max_n: usize) -> Result<LargestTwoGenerated> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if n > max_n {
        let pairs = BigUint::from(n).pow(2 * n as u32);
        return Err(Error::OverBudget {
            what: format!("two-generator search at n = {n}"),
            detail: format!("{pairs} generator pairs; the budget allows n <= {max_n}"),
        });
    }
    let all: Vec<Transformation> = all_transformations(n).collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, f) in all.iter().enumerate() {
        for (j, g) in all.iter().enumerate().skip(i) {
            let size = enumerate(&[f.clone(), g.clone()], n, usize::MAX)?.len();
            if best.is_none_or(|(s, _, _)| size > s) {
                best = Some((size, i, j));
            }
        }
    }
    let (size, i, j) = best.expect("T_n is non-empty");
    Ok(LargestTwoGenerated {
        size: BigUint::from(size),
        generators: (all[i].clone(), all[j].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v).unwrap()
    }

    #[test]
    fn identity_closure() {
        let m = closure(&[Transformation::identity(4).unwrap()]).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.elements()[0].is_identity());
    }

    #[test]
    fn three_generators_give_t3() {
        let m = closure(&[t(&[2, 1, 3]), t(&[2, 3, 1]), t(&[1, 2, 1])]).unwrap();
        assert_eq!(m.len(), 27);
        assert!(m.is_closed());
    }

    #[test]
    fn full_monoid_sizes() {
        for n in 1..=5 {
            let m = closure(&tn_generators(n).unwrap()).unwrap();
            assert_eq!(m.len(), n.pow(n as u32), "n = {n}");
        }
        assert_eq!(tn_generators(1).unwrap().len(), 1);
        assert_eq!(tn_generators(2).unwrap().len(), 2);
        assert_eq!(tn_generators(6).unwrap().len(), 3);
        assert!(tn_generators(0).is_err());
    }

    #[test]
    fn generated_monoid_invariants() {
        let gens = [t(&[2, 3, 4, 1, 2]), t(&[2, 1, 4, 5, 3])];
        let m = closure(&gens).unwrap();
        assert!(m.contains(&Transformation::identity(5).unwrap()));
        assert!(gens.iter().all(|g| m.contains(g)));
        assert_eq!(m.generators(), gens);
        assert!(m.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn closure_cap_and_errors() {
        assert_eq!(
            closure_with_cap(&tn_generators(4).unwrap(), 100).unwrap_err(),
            Error::CapExceeded { cap: 100 }
        );
        assert_eq!(closure(&[]).unwrap_err(), Error::NoGenerators);
        assert!(matches!(
            closure(&[t(&[1, 2]), t(&[1, 1, 1])]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn dfa_monoids() {
        let identity = Dfa::new(vec!["a".into()], vec![vec![1, 2, 3]], 1, &[]).unwrap();
        let m = transformation_monoid(&identity).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.rank_histogram(), BTreeMap::from([(3, 1)]));

        let cycle = Dfa::unary_lasso(0, 5, &[1]).unwrap();
        assert_eq!(transformation_monoid(&cycle).unwrap().len(), 5);

        let example = Dfa::based_on(&[t(&[2, 1, 4, 5, 3]), t(&[2, 3, 4, 1, 2])], 1, &[1]).unwrap();
        let m = transformation_monoid(&example).unwrap();
        let direct = closure(&[t(&[2, 1, 4, 5, 3]), t(&[2, 3, 4, 1, 2])]).unwrap();
        assert_eq!(m.elements(), direct.elements());
    }

    #[test]
    fn ukl_generator_choice() {
        let (alpha, beta) = ukl_generators(2, 3).unwrap();
        assert_eq!(alpha, t(&[2, 1, 4, 5, 3]));
        // first permutation of 4 points generating S_4 with (1 2) is (2 3 4)
        assert_eq!(beta, t(&[1, 3, 4, 2, 1]));
        let pi2 = t(&[1, 3, 4, 2]);
        let group = closure(&[t(&[2, 1, 3, 4]), pi2]).unwrap();
        assert_eq!(group.len(), 24);

        assert!(ukl_generators(2, 4).is_err());
        assert!(ukl_generators(1, 4).is_err());
        assert!(ukl_generators(3, 1).is_err());
        assert!(matches!(
            ukl_generators(5, 7),
            Err(Error::OverBudget { .. })
        ));
    }

    #[test]
    fn ukl_closure_matches_membership_at_degree_5() {
        for (k, l) in [(2, 3), (3, 2)] {
            let (alpha, beta) = ukl_generators(k, l).unwrap();
            let m = closure(&[alpha, beta]).unwrap();
            let members: Vec<Transformation> = all_transformations(5)
                .filter(|g| ukl_member(g, k, l))
                .collect();
            assert_eq!(m.elements(), members.as_slice(), "U({k},{l})");
        }
    }

    #[test]
    fn ukl_sizes_at_degree_5() {
        // frozen from an independent enumeration
        let sizes: Vec<usize> = [(2, 3), (3, 2)]
            .iter()
            .map(|&(k, l)| {
                let (a, b) = ukl_generators(k, l).unwrap();
                closure(&[a, b]).unwrap().len()
            })
            .collect();
        assert_eq!(sizes, vec![1857, 1433]);
        // the example generators give the same monoid
        let example = closure(&[t(&[2, 1, 4, 5, 3]), t(&[2, 3, 4, 1, 2])]).unwrap();
        assert_eq!(example.len(), 1857);
    }

    #[test]
    fn ukl_membership_basics() {
        let alpha = t(&[2, 1, 4, 5, 3]);
        assert!(ukl_member(&Transformation::identity(5).unwrap(), 2, 3));
        assert!(ukl_member(&alpha, 2, 3));
        assert!(ukl_member(&t(&[2, 3, 4, 1, 2]), 2, 3));
        // a transposition is not a power of alpha
        assert!(!ukl_member(&t(&[1, 2, 3, 5, 4]), 2, 3));
        // collapses within the first block only
        assert!(!ukl_member(&t(&[1, 1, 3, 4, 4]), 2, 3));
        assert!(!ukl_member(&alpha, 2, 4));
    }

    #[test]
    fn all_transformations_enumerates_t_n() {
        assert_eq!(all_transformations(3).count(), 27);
        let v: Vec<_> = all_transformations(2).collect();
        assert_eq!(v, vec![t(&[1, 1]), t(&[1, 2]), t(&[2, 1]), t(&[2, 2])]);
        assert_eq!(all_transformations(0).count(), 0);
    }

    #[test]
    fn largest_two_generated_small() {
        // frozen from an independent brute force
        let expected = [1u32, 4, 24];
        for (n, &size) in (1..=3).zip(&expected) {
            let found = largest_two_generated(n, LARGEST_TWO_GENERATED_MAX_N).unwrap();
            assert_eq!(found.size, BigUint::from(size), "n = {n}");
            let (f, g) = found.generators;
            assert_eq!(closure(&[f, g]).unwrap().len(), size as usize);
        }
        assert!(matches!(
            largest_two_generated(5, LARGEST_TWO_GENERATED_MAX_N),
            Err(Error::OverBudget { .. })
        ));
    }

    #[test]
    fn permutation_helpers() {
        let mut v = vec![0u8, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert!(is_even(&t(&[2, 3, 1])));
        assert!(!is_even(&t(&[2, 1, 3])));
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Vec<usize>>> {
        (1usize..=4)
            .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(1..=n, n), 1..=3))
    }

    proptest! {
        #[test]
        fn closure_ignores_order_and_duplicates(gens in arb_gens()) {
            let gens: Vec<Transformation> = gens.iter().map(|g| t(g)).collect();
            let m = closure(&gens).unwrap();
            let mut shuffled: Vec<Transformation> = gens.iter().rev().cloned().collect();
            shuffled.push(gens[0].clone());
            let again = closure(&shuffled).unwrap();
            prop_assert_eq!(m.elements(), again.elements());
            prop_assert!(m.is_closed());
        }
    }
}
