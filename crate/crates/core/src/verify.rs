//! Reproduction suites. Each suite checks one claim about the root
//! operation or the monoids behind it on concrete instances and returns a
//! [`VerifyReport`] with one entry per case.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counting::{
    binomial, factorial, gap_lower_sum, hk_lower_bound, max_coprime_formula, meets_bound,
    ukl_difference_formula, ukl_gap, ukl_size_formula, StirlingTable,
};
use crate::dfa::{default_letters, Dfa, Word};
use crate::error::{Error, Result};
use crate::monoid::{
    all_transformations, closure, closure_with_cap, largest_two_generated, tn_generators,
    ukl_generators, ukl_member, DEFAULT_CAP,
};
use crate::root::{root_automaton, root_member_oracle, root_state_complexity, unary_root};
use crate::transform::{Transformation, MAX_DEGREE};

/// Outcome of a single case.
#[derive(Clone, Debug, Serialize)]
pub struct CaseOutcome {
    pub name: String,
    pub claim: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub cases: Vec<CaseOutcome>,
    pub pass: bool,
}

impl VerifyReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            cases: Vec::new(),
            pass: true,
        }
    }

    fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Runs `check`, timing it, and records the outcome.
    fn case(
        &mut self,
        name: impl Into<String>,
        claim: &str,
        check: impl FnOnce() -> Result<Check>,
    ) -> Result<bool> {
        let started = Instant::now();
        let outcome = check()?;
        let pass = outcome.pass;
        self.cases.push(CaseOutcome {
            name: name.into(),
            claim: claim.to_string(),
            expected: outcome.expected,
            measured: outcome.measured,
            pass,
            elapsed_ms: started.elapsed().as_millis() as u64,
        });
        self.pass &= pass;
        Ok(pass)
    }

    /// Merges the cases of several reports of the same suite.
    fn absorb(&mut self, other: VerifyReport) {
        self.pass &= other.pass;
        self.cases.extend(other.cases);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(f, "suite {} ({})", self.suite, params.join(" "))?;
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.cases {
            writeln!(
                f,
                "  {}  {:width$}  expected {}  measured {}  [{} ms]",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.measured,
                c.elapsed_ms,
            )?;
            if !c.pass {
                writeln!(f, "        claim: {}", c.claim)?;
            }
        }
        let passed = self.cases.iter().filter(|c| c.pass).count();
        write!(
            f,
            "  => {} ({passed}/{} cases)",
            if self.pass { "PASS" } else { "FAIL" },
            self.cases.len()
        )
    }
}

struct Check {
    expected: String,
    measured: String,
    pass: bool,
}

impl Check {
    fn equal<T: PartialEq + Display>(expected: T, measured: T) -> Self {
        Self {
            pass: expected == measured,
            expected: expected.to_string(),
            measured: measured.to_string(),
        }
    }

    fn holds(expected: impl Into<String>, measured: impl Display, pass: bool) -> Self {
        Self {
            expected: expected.into(),
            measured: measured.to_string(),
            pass,
        }
    }
}

/// Knobs shared by all suites; `None` means the suite default.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub max_n: Option<usize>,
    pub seed: u64,
    pub k: Option<usize>,
    pub l: Option<usize>,
}

pub const SUITES: &[&str] = &[
    "equivalence",
    "min-dfa",
    "full-tn",
    "start-final",
    "unary",
    "counting",
    "gap",
    "lower-bound",
    "oracle",
    "monoid-gap",
    "two-generated",
];

/// Runs the suite called `name`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerifyReport> {
    let pair = match (cfg.k, cfg.l) {
        (Some(k), Some(l)) => Some((k, l)),
        (None, None) => None,
        _ => {
            return Err(Error::InvalidParameters(
                "--k and --l must be given together".into(),
            ))
        }
    };
    match name {
        "equivalence" => over_pairs(
            "equivalence",
            pair,
            cfg.max_n.unwrap_or(7),
            suite_equivalence_structure,
        ),
        "min-dfa" => over_pairs("min-dfa", pair, cfg.max_n.unwrap_or(7), suite_min_dfa),
        "start-final" => {
            let (k, l) = pair.unwrap_or((2, 3));
            suite_start_final_variation(k, l)
        }
        "full-tn" => suite_full_tn(cfg.max_n.unwrap_or(6)),
        "unary" => suite_unary(cfg.max_n.unwrap_or(12), cfg.seed),
        "counting" => suite_counting(cfg.max_n.unwrap_or(60)),
        "gap" => suite_gap(cfg.max_n.unwrap_or(40)),
        "lower-bound" => suite_lower_bound(cfg.max_n.unwrap_or(30)),
        "oracle" => suite_oracle(cfg.max_n.unwrap_or(6), 500, cfg.seed),
        "monoid-gap" => suite_monoid_gap(cfg.max_n.unwrap_or(4), cfg.seed),
        "two-generated" => suite_two_generated(cfg.max_n.unwrap_or(4)),
        other => Err(Error::InvalidParameters(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn over_pairs(
    suite: &str,
    pair: Option<(usize, usize)>,
    max_n: usize,
    run: fn(usize, usize) -> Result<VerifyReport>,
) -> Result<VerifyReport> {
    if let Some((k, l)) = pair {
        return run(k, l);
    }
    let mut report = VerifyReport::new(suite).param("max_n", max_n);
    for n in 5..=max_n {
        for k in 2..=n - 3 {
            if k.gcd(&(n - k)) == 1 {
                report.absorb(run(k, n - k)?);
            }
        }
    }
    Ok(report)
}

/// The automaton on `{1..n}` with letters acting as `gens`, start 1 and
/// final states `{1}`.
pub fn canonical_automaton(gens: &[Transformation]) -> Result<Dfa> {
    Dfa::based_on(gens, 1, &[1])
}

const EQUIV_MAX_N: usize = 7;

fn check_family_pair(k: usize, l: usize, max_n: usize) -> Result<()> {
    if k < 2 || l < 3 || k.gcd(&l) != 1 {
        return Err(Error::InvalidParameters(format!(
            "need coprime k >= 2 and l >= 3, got ({k}, {l})"
        )));
    }
    if k + l > max_n {
        return Err(Error::OverBudget {
            what: format!("U({k}, {l})"),
            detail: format!("k + l must be at most {max_n}"),
        });
    }
    Ok(())
}

/// Equivalent states of the root automaton of the canonical automaton over
/// `U(k, l)`: exactly `C(n, 2)` pairs `{eta, complement(eta)}` with
/// `rank(eta) = 2` and `eta(1)` unique, everything else alone.
pub fn suite_equivalence_structure(k: usize, l: usize) -> Result<VerifyReport> {
    check_family_pair(k, l, EQUIV_MAX_N)?;
    let n = k + l;
    let (alpha, beta) = ukl_generators(k, l)?;
    let root = root_automaton(&canonical_automaton(&[alpha, beta])?)?;
    let classes = root.dfa().equivalence_classes();
    let mut report = VerifyReport::new("equivalence").param("k", k).param("l", l);
    let name = |what: &str| format!("k={k} l={l} {what}");

    let pairs: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() == 2).collect();
    report.case(
        name("two-element classes"),
        "there are C(n,2) classes of size 2",
        || {
            Ok(Check::equal(
                binomial(n as u64, 2),
                BigUint::from(pairs.len()),
            ))
        },
    )?;
    report.case(
        name("largest class"),
        "all other states are alone in their class",
        || {
            let largest = classes.iter().map(Vec::len).max().unwrap_or(0);
            Ok(Check::holds("<= 2", largest, largest <= 2))
        },
    )?;
    report.case(
        name("pair shape"),
        "equivalent pairs are {eta, complement(eta)} with rank 2 and eta(1) unique",
        || {
            let bad = pairs
                .iter()
                .filter(|c| {
                    let eta = root.element_of(c[0]);
                    let theta = root.element_of(c[1]);
                    !(eta.rank() == 2
                        && eta.complement().as_ref() == Ok(theta)
                        && eta.is_unique(eta.apply(1))
                        && theta.is_unique(theta.apply(1)))
                })
                .count();
            Ok(Check::holds(
                "0 malformed pairs",
                format!("{bad} malformed pairs"),
                bad == 0,
            ))
        },
    )?;
    report.case(
        name("pair members"),
        "a state is in a pair iff it has rank 2 with eta(1) unique",
        || {
            let paired: std::collections::BTreeSet<usize> =
                pairs.iter().flat_map(|c| c.iter().copied()).collect();
            let predicted: std::collections::BTreeSet<usize> = root
                .elements()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.rank() == 2 && e.is_unique(e.apply(1)))
                .map(|(i, _)| i + 1)
                .collect();
            Ok(Check::holds(
                format!("{} predicted states", predicted.len()),
                format!("{} paired states", paired.len()),
                paired == predicted,
            ))
        },
    )?;
    Ok(report)
}

/// The minimal DFA for the root of the canonical automaton over `U(k, l)`
/// has `|U(k, l)| - C(n, 2)` states, and `|U(k, l)|` from enumeration agrees
/// with the closed form.
pub fn suite_min_dfa(k: usize, l: usize) -> Result<VerifyReport> {
    check_family_pair(k, l, EQUIV_MAX_N)?;
    let n = k + l;
    let (alpha, beta) = ukl_generators(k, l)?;
    let dfa = canonical_automaton(&[alpha.clone(), beta.clone()])?;
    let mut report = VerifyReport::new("min-dfa").param("k", k).param("l", l);
    let formula = ukl_size_formula(k, l)?;
    let enumerated = BigUint::from(closure(&[alpha, beta])?.len());
    report.case(
        format!("k={k} l={l} |U| formula vs closure"),
        "closed form counts U(k,l)",
        || Ok(Check::equal(formula.clone(), enumerated.clone())),
    )?;
    report.case(
        format!("k={k} l={l} minimal root DFA"),
        "minimal root DFA has |U(k,l)| - C(n,2) states",
        || {
            let expected = &formula - binomial(n as u64, 2);
            Ok(Check::equal(
                expected,
                BigUint::from(root_state_complexity(&dfa)?),
            ))
        },
    )?;
    Ok(report)
}

/// For the full transformation monoid the minimal root DFA has
/// `n^n - C(n, 2)` states.
pub fn suite_full_tn(max_n: usize) -> Result<VerifyReport> {
    if max_n > 6 {
        return Err(Error::OverBudget {
            what: format!("full-monoid suite up to n = {max_n}"),
            detail: "n must be at most 6".into(),
        });
    }
    let mut report = VerifyReport::new("full-tn").param("max_n", max_n);
    for n in 1..=max_n {
        report.case(
            format!("n={n}"),
            "minimal root DFA over T_n has n^n - C(n,2) states",
            || {
                let dfa = canonical_automaton(&tn_generators(n)?)?;
                let expected = BigUint::from(n).pow(n as u32) - binomial(n as u64, 2);
                Ok(Check::equal(
                    expected,
                    BigUint::from(root_state_complexity(&dfa)?),
                ))
            },
        )?;
    }
    Ok(report)
}

const START_FINAL_MAX_N: usize = 5;

/// No choice of start state and final states on the `U(k, l)` transition
/// structure beats start 1 with finals `{1}`.
pub fn suite_start_final_variation(k: usize, l: usize) -> Result<VerifyReport> {
    if k < 2 || l < 2 || k.gcd(&l) != 1 {
        return Err(Error::InvalidParameters(format!(
            "need coprime k, l >= 2, got ({k}, {l})"
        )));
    }
    let n = k + l;
    if n > START_FINAL_MAX_N {
        return Err(Error::OverBudget {
            what: format!("start/final sweep over U({k}, {l})"),
            detail: format!("k + l must be at most {START_FINAL_MAX_N}"),
        });
    }
    let (alpha, beta) = ukl_generators(k, l)?;
    let gens = [alpha, beta];
    let baseline = root_state_complexity(&canonical_automaton(&gens)?)?;
    let mut report = VerifyReport::new("start-final").param("k", k).param("l", l);

    report.case(
        format!("k={k} l={l} start 1 finals {{1}}"),
        "baseline",
        || {
            let again = root_state_complexity(&Dfa::based_on(&gens, 1, &[1])?)?;
            Ok(Check::equal(baseline, again))
        },
    )?;
    report.case(
        format!("k={k} l={l} finals {{}}"),
        "empty language has a 1-state root",
        || {
            Ok(Check::equal(
                1,
                root_state_complexity(&Dfa::based_on(&gens, 1, &[])?)?,
            ))
        },
    )?;
    for start in 1..=n {
        report.case(
            format!("k={k} l={l} start {start}, all final sets"),
            "no start/final assignment exceeds the canonical automaton",
            || {
                let mut worst = 0;
                for mask in 0u32..(1 << n) {
                    let finals: Vec<usize> = (1..=n).filter(|q| mask >> (q - 1) & 1 == 1).collect();
                    let sc = root_state_complexity(&Dfa::based_on(&gens, start, &finals)?)?;
                    worst = worst.max(sc);
                }
                Ok(Check::holds(
                    format!("<= {baseline}"),
                    worst,
                    worst <= baseline,
                ))
            },
        )?;
    }
    Ok(report)
}

/// Random unary automaton with at most `n` states: tail length uniform in
/// `0..n`, loop length uniform in `1..=n - tail`, each state final with
/// probability 1/2, state names shuffled.
pub fn random_unary_dfa(rng: &mut impl Rng, n: usize) -> Dfa {
    let tail = rng.gen_range(0..n);
    let period = rng.gen_range(1..=n - tail);
    let size = tail + period;
    let mut names: Vec<usize> = (1..=size).collect();
    names.shuffle(rng);
    let mut row = vec![0; size];
    for s in 0..size {
        let next = if s + 1 < size { s + 1 } else { tail };
        row[names[s] - 1] = names[next];
    }
    let finals: Vec<usize> = (0..size)
        .filter(|_| rng.gen_bool(0.5))
        .map(|s| names[s])
        .collect();
    Dfa::new(vec!["a".into()], vec![row], names[0], &finals).expect("valid unary automaton")
}

/// Uniformly random complete DFA with `n` states over `letters` letters,
/// each state final with probability 1/2.
pub fn random_dfa(rng: &mut impl Rng, n: usize, letters: usize) -> Dfa {
    let rows = (0..letters)
        .map(|_| (0..n).map(|_| rng.gen_range(1..=n)).collect())
        .collect();
    let finals: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(
        default_letters(letters),
        rows,
        rng.gen_range(1..=n),
        &finals,
    )
    .expect("valid random automaton")
}

const UNARY_MAX_N: usize = 14;
const UNARY_SAMPLES: usize = 200;

/// Unary languages: the root never needs more states, and `{a^(n-2)}` shows
/// this is tight. Random automata compare the unary construction with the
/// general one.
pub fn suite_unary(max_n: usize, seed: u64) -> Result<VerifyReport> {
    if max_n > UNARY_MAX_N {
        return Err(Error::OverBudget {
            what: format!("unary suite up to n = {max_n}"),
            detail: format!("n must be at most {UNARY_MAX_N}"),
        });
    }
    let mut report = VerifyReport::new("unary")
        .param("max_n", max_n)
        .param("seed", seed);
    for n in 2..=max_n {
        report.case(
            format!("single word n={n}"),
            "sc(L_n) = sc(root(L_n)) = n",
            || {
                let d = Dfa::unary_lasso(n - 1, 1, &[n - 1])?;
                let general = root_automaton(&d)?.into_dfa().minimize().n();
                let unary = unary_root(&d)?.minimize().n();
                let measured = format!("{} {} {}", d.minimize().n(), general, unary);
                Ok(Check::equal(format!("{n} {n} {n}"), measured))
            },
        )?;
    }
    report.case("root of {a^2}", "root({a^2}) = {a, a^2}", || {
        let d = Dfa::unary_lasso(3, 1, &[3])?;
        let expected = Dfa::unary_lasso(3, 1, &[2, 3])?;
        let same = root_automaton(&d)?.dfa().equivalent(&expected)?;
        Ok(Check::holds(
            "equivalent",
            if same { "equivalent" } else { "different" },
            same,
        ))
    })?;
    report.case("root of {eps}", "root({eps}) = {eps} with 2 states", || {
        let d = Dfa::unary_lasso(1, 1, &[1])?;
        let r = unary_root(&d)?;
        let sc = r.minimize().n();
        let ok = sc == 2 && r.accepts(&[])? && !r.accepts(&[0])?;
        Ok(Check::holds(
            "2 states, accepts only eps",
            format!("{sc} states"),
            ok,
        ))
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=max_n {
        report.case(
            format!("random n={n} x{UNARY_SAMPLES}"),
            "unary root equals the general root and is never larger than L",
            || {
                let mut disagreements = 0;
                let mut larger = 0;
                for _ in 0..UNARY_SAMPLES {
                    let d = random_unary_dfa(&mut rng, n);
                    let unary = unary_root(&d)?;
                    if !unary.equivalent(root_automaton(&d)?.dfa())? {
                        disagreements += 1;
                    }
                    if unary.minimize().n() > d.minimize().n() {
                        larger += 1;
                    }
                }
                Ok(Check::holds(
                    "0 disagreements, 0 larger",
                    format!("{disagreements} disagreements, {larger} larger"),
                    disagreements == 0 && larger == 0,
                ))
            },
        )?;
    }
    Ok(report)
}

/// Counting identities and the closed form for `|U(k, l)|` against
/// enumeration at degree 5.
pub fn suite_counting(max_n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("counting").param("max_n", max_n);
    report.case(
        format!("two-step Stirling identity n<={max_n}"),
        "S(n,i) = S(n-2,i-2) + (2i-1) S(n-2,i-1) + i^2 S(n-2,i)",
        || {
            let table = StirlingTable::new(max_n);
            let mut failures = 0;
            for n in 2..=max_n {
                for i in 2..=n {
                    let rhs = table.get(n - 2, i - 2)
                        + table.get(n - 2, i - 1) * (2 * i - 1)
                        + table.get(n - 2, i) * (i * i);
                    failures += (table.get(n, i) != rhs) as usize;
                }
            }
            Ok(Check::equal(0, failures))
        },
    )?;
    report.case(
        "function count n,m<=12",
        "sum_i C(m,i) i! S(n,i) = m^n",
        || {
            let table = StirlingTable::new(12);
            let mut failures = 0;
            for n in 0..=12usize {
                for m in 0..=12u64 {
                    let sum: BigUint = (0..=n)
                        .map(|i| binomial(m, i as i64) * factorial(i as u64) * table.get(n, i))
                        .sum();
                    failures += (sum != BigUint::from(m).pow(n as u32)) as usize;
                }
            }
            Ok(Check::equal(0, failures))
        },
    )?;
    for (k, l) in [(2, 3), (3, 2)] {
        report.case(
            format!("|U({k},{l})| formula vs closure"),
            "closed form counts U(k,l)",
            || {
                let (alpha, beta) = ukl_generators(k, l)?;
                Ok(Check::equal(
                    ukl_size_formula(k, l)?,
                    BigUint::from(closure(&[alpha, beta])?.len()),
                ))
            },
        )?;
        report.case(
            format!("|U({k},{l})| formula vs membership count"),
            "closed form counts the maps satisfying the membership rule",
            || {
                let count = all_transformations(k + l)
                    .filter(|g| ukl_member(g, k, l))
                    .count();
                Ok(Check::equal(ukl_size_formula(k, l)?, BigUint::from(count)))
            },
        )?;
    }
    report.case(
        "difference formula n<=20",
        "(*) equals |U(k,l)| - |U(l,k)|",
        || {
            let mut failures = 0;
            for n in 4..=20 {
                for k in 2..=n - 2 {
                    let l = n - k;
                    if k.gcd(&l) != 1 {
                        continue;
                    }
                    let direct = BigInt::from(ukl_size_formula(k, l)?)
                        - BigInt::from(ukl_size_formula(l, k)?);
                    failures += (ukl_difference_formula(k, l) != direct) as usize;
                }
            }
            Ok(Check::equal(0, failures))
        },
    )?;
    Ok(report)
}

/// `|U(2, n-2)| - |U(n-2, 2)| >= C(n, 2)` for `n >= 7`, plus enumeration of
/// both monoids at small odd `n`.
pub fn suite_gap(max_n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("gap").param("max_n", max_n);
    for n in 7..=max_n {
        report.case(
            format!("n={n}"),
            "|U(2,n-2)| - |U(n-2,2)| >= C(n,2)",
            || {
                let gap = ukl_gap(n)?;
                let lower = BigInt::from(gap_lower_sum(n));
                let needed = BigInt::from(binomial(n as u64, 2));
                Ok(Check::holds(
                    format!(">= {needed}"),
                    &gap,
                    gap >= lower && lower >= needed,
                ))
            },
        )?;
    }
    for n in [5, 7] {
        if n > max_n.max(7) {
            continue;
        }
        report.case(
            format!("n={n} enumeration"),
            "formula gap equals the difference of enumerated monoid sizes",
            || {
                let size = |k, l| -> Result<BigInt> {
                    let (a, b) = ukl_generators(k, l)?;
                    Ok(BigInt::from(closure(&[a, b])?.len()))
                };
                let enumerated = size(2, n - 2)? - size(n - 2, 2)?;
                Ok(Check::equal(ukl_gap(n)?, enumerated))
            },
        )?;
    }
    Ok(report)
}

/// For each `7 <= n <= max_n` some coprime pair has `|U(k, l)|` at least the
/// analytic lower bound.
pub fn suite_lower_bound(max_n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("lower-bound").param("max_n", max_n);
    for n in 7..=max_n {
        report.case(format!("n={n}"), "max |U(k,l)| >= n^n (1 - ...)", || {
            let (k, l, size) = max_coprime_formula(n)
                .ok_or_else(|| Error::InvalidParameters(format!("no coprime pair for n = {n}")))?;
            let bound = hk_lower_bound(n);
            Ok(Check::holds(
                format!(">= {bound:.6e}"),
                format!("{size} (k={k} l={l})"),
                meets_bound(&size, bound),
            ))
        })?;
    }
    Ok(report)
}

const ORACLE_MAX_WORD: usize = 8;
const ORACLE_EXHAUSTIVE_WORD: usize = 5;
const ORACLE_SAMPLED_WORDS: usize = 200;

fn words_up_to(letters: usize, max_len: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Word| {
                (0..letters).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Random automata: the root automaton agrees with the `w^k` oracle, contains
/// `L`, and taking the root twice changes nothing.
pub fn suite_oracle(max_states: usize, samples: usize, seed: u64) -> Result<VerifyReport> {
    if max_states > 6 {
        return Err(Error::OverBudget {
            what: format!("oracle suite with {max_states} states"),
            detail: "at most 6 states".into(),
        });
    }
    let mut report = VerifyReport::new("oracle")
        .param("max_states", max_states)
        .param("samples", samples)
        .param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exhaustive: Vec<Vec<Word>> = (1..=3)
        .map(|k| words_up_to(k, ORACLE_EXHAUSTIVE_WORD))
        .collect();

    let mut words_checked = 0usize;
    let mut mismatches = 0usize;
    let mut containment = 0usize;
    let mut idempotence_checked = 0usize;
    let mut idempotence_failures = 0usize;
    let started = Instant::now();
    for _ in 0..samples {
        let n = rng.gen_range(1..=max_states);
        let letters = rng.gen_range(1..=3);
        let d = random_dfa(&mut rng, n, letters);
        let root = root_automaton(&d)?;
        let mut words = exhaustive[letters - 1].clone();
        for _ in 0..ORACLE_SAMPLED_WORDS {
            let len = rng.gen_range(ORACLE_EXHAUSTIVE_WORD + 1..=ORACLE_MAX_WORD);
            words.push((0..len).map(|_| rng.gen_range(0..letters)).collect());
        }
        for w in &words {
            let accepted = root.dfa().accepts(w)?;
            mismatches += (accepted != root_member_oracle(&d, w)?) as usize;
            containment += (d.accepts(w)? && !accepted) as usize;
        }
        words_checked += words.len();

        let minimal = root.dfa().minimize();
        if minimal.n() <= MAX_DEGREE {
            if let Some(twice) = root_automaton_capped(&minimal) {
                idempotence_checked += 1;
                idempotence_failures += !twice?.minimize().equivalent(&minimal)? as usize;
            }
        }
    }
    let elapsed = started.elapsed().as_millis() as u64;
    let push = |report: &mut VerifyReport, name: &str, claim: &str, check: Check| {
        report.pass &= check.pass;
        report.cases.push(CaseOutcome {
            name: name.into(),
            claim: claim.into(),
            expected: check.expected,
            measured: check.measured,
            pass: check.pass,
            elapsed_ms: elapsed,
        });
    };
    push(
        &mut report,
        "soundness",
        "root automaton accepts w iff some w^k is in L",
        Check::holds(
            "0 mismatches",
            format!("{mismatches} mismatches over {words_checked} words"),
            mismatches == 0 && words_checked > 0,
        ),
    );
    push(
        &mut report,
        "containment",
        "L is contained in root(L)",
        Check::holds(
            "0 violations",
            format!("{containment} violations"),
            containment == 0,
        ),
    );
    push(
        &mut report,
        "idempotence",
        "root(root(L)) = root(L)",
        Check::holds(
            "0 failures",
            format!("{idempotence_failures} failures over {idempotence_checked} automata"),
            idempotence_failures == 0 && idempotence_checked * 2 >= samples,
        ),
    );
    Ok(report)
}

/// Root automaton of `d` unless its monoid is too large to enumerate
/// comfortably.
fn root_automaton_capped(d: &Dfa) -> Option<Result<Dfa>> {
    match crate::root::root_automaton_with_cap(d, DEFAULT_CAP / 4) {
        Ok(r) => Some(Ok(r.into_dfa())),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => Some(Err(e)),
    }
}

const MONOID_GAP_SAMPLES: usize = 3000;

/// A monoid with more than `n^n - C(n, 2)` elements is all of `T_n`:
/// exhaustive over generator pairs and triples for `n <= 3`, sampled for
/// `n = 4`. Also: generators of `S_n` plus any rank `n - 1` map always
/// generate `T_n` (sampled up to `n = 5`).
pub fn suite_monoid_gap(max_n: usize, seed: u64) -> Result<VerifyReport> {
    if max_n > 4 {
        return Err(Error::OverBudget {
            what: format!("monoid-gap suite up to n = {max_n}"),
            detail: "n must be at most 4".into(),
        });
    }
    let mut report = VerifyReport::new("monoid-gap")
        .param("max_n", max_n)
        .param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=max_n {
        let full = n.pow(n as u32);
        let threshold = full - n * (n - 1) / 2;
        report.case(
            format!("n={n} {}", if n <= 3 { "exhaustive" } else { "sampled" }),
            "|M| > n^n - C(n,2) implies M = T_n",
            || {
                let all: Vec<Transformation> = all_transformations(n).collect();
                let mut checked = 0usize;
                let mut violations = 0usize;
                let mut large = 0usize;
                let mut visit = |gens: &[Transformation]| -> Result<()> {
                    let size = closure(gens)?.len();
                    checked += 1;
                    if size > threshold {
                        large += 1;
                        violations += (size != full) as usize;
                    }
                    Ok(())
                };
                if n <= 3 {
                    for (i, f) in all.iter().enumerate() {
                        for (j, g) in all.iter().enumerate().skip(i) {
                            visit(&[f.clone(), g.clone()])?;
                            for h in &all[j..] {
                                visit(&[f.clone(), g.clone(), h.clone()])?;
                            }
                        }
                    }
                } else {
                    for _ in 0..MONOID_GAP_SAMPLES {
                        let count = rng.gen_range(2..=4);
                        let gens: Vec<Transformation> = (0..count)
                            .map(|_| all[rng.gen_range(0..all.len())].clone())
                            .collect();
                        visit(&gens)?;
                    }
                }
                Ok(Check::holds(
                    "0 violations",
                    format!("{violations} violations ({large} large of {checked})"),
                    violations == 0,
                ))
            },
        )?;
    }
    report.case(
        "generators of S_n + rank n-1, n<=5",
        "permutations generating S_n together with any rank n-1 map generate T_n",
        || {
            let mut failures = 0;
            let mut checked = 0;
            for n in 3..=5usize {
                let all: Vec<Transformation> = all_transformations(n).collect();
                let permutations: Vec<&Transformation> =
                    all.iter().filter(|f| f.is_permutation()).collect();
                let collapsing: Vec<&Transformation> =
                    all.iter().filter(|f| f.rank() == n - 1).collect();
                let symmetric = factorial(n as u64);
                while checked < 200 * (n - 2) {
                    let pair = [
                        (*permutations.choose(&mut rng).unwrap()).clone(),
                        (*permutations.choose(&mut rng).unwrap()).clone(),
                    ];
                    if BigUint::from(closure(&pair)?.len()) != symmetric {
                        continue;
                    }
                    let [p, q] = pair;
                    let gens = [p, q, (*collapsing.choose(&mut rng).unwrap()).clone()];
                    checked += 1;
                    failures +=
                        (closure_with_cap(&gens, DEFAULT_CAP)?.len() != n.pow(n as u32)) as usize;
                }
            }
            Ok(Check::holds(
                "0 failures",
                format!("{failures} failures of {checked}"),
                failures == 0,
            ))
        },
    )?;
    Ok(report)
}

/// Exhaustive search for the largest two-generated monoid for `n <= max_n`;
/// from `n = 3` on two generators never reach all of `T_n`.
pub fn suite_two_generated(max_n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("two-generated").param("max_n", max_n);
    for n in 1..=max_n {
        report.case(
            format!("n={n}"),
            "largest two-generated monoid is proper for n >= 3",
            || {
                let found = largest_two_generated(n, max_n)?;
                let (f, g) = &found.generators;
                let witness = BigUint::from(closure(&[f.clone(), g.clone()])?.len());
                let full = BigUint::from(n).pow(n as u32);
                let proper = if n >= 3 {
                    found.size < full
                } else {
                    found.size == full
                };
                Ok(Check::holds(
                    if n >= 3 {
                        format!("< {full}")
                    } else {
                        format!("= {full}")
                    },
                    format!("{} via {f} {g}", found.size),
                    proper && witness == found.size,
                ))
            },
        )?;
    }
    Ok(report)
}

/// Table form of several reports.
pub fn render(reports: &[VerifyReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{r}");
    }
    out
}
