//! Complete deterministic finite automata.
//!
//! States are numbered `1..=n` in the public API and in the text format.
//! Words are sequences of letter indices into [`Dfa::alphabet`]; use
//! [`Dfa::parse_word`] to turn a string into one.
//!
//! Text format (line oriented, `#` starts a comment, blank lines ignored):
//!
//! ```text
//! states 5
//! alphabet a b
//! start 1
//! finals 1
//! trans a 2 1 4 5 3
//! trans b 2 3 4 1 2
//! ```

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::transform::{Transformation, MAX_DEGREE};

/// A word as a sequence of letter indices.
pub type Word = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    alphabet: Vec<String>,
    /// `delta[a][q]` is the 0-based successor of 0-based state `q` on letter `a`.
    delta: Vec<Vec<u32>>,
    start: u32,
    finals: Vec<bool>,
}

/// Tail and loop of the path followed by a unary automaton from its start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryShape {
    /// Number of states before the loop.
    pub tail: usize,
    /// Number of states on the loop.
    pub period: usize,
    /// First loop state (1-indexed).
    pub loop_entry: usize,
    /// `path[s]` is the state reached by `a^s`, for `s < tail + period`.
    pub path: Vec<usize>,
}

impl Dfa {
    /// Builds a DFA from 1-indexed transition rows, one row per letter.
    pub fn new(
        alphabet: Vec<String>,
        rows: Vec<Vec<usize>>,
        start: usize,
        finals: &[usize],
    ) -> Result<Self> {
        check_alphabet(&alphabet)?;
        if rows.len() != alphabet.len() {
            return Err(Error::InvalidDfa(format!(
                "{} transition rows for {} letters",
                rows.len(),
                alphabet.len()
            )));
        }
        let n = rows.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::InvalidDfa(
                "an automaton needs at least one state".into(),
            ));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidDfa(format!("{n} states is too many")));
        }
        let mut delta = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidDfa(format!(
                    "transition rows have different lengths ({} vs {n})",
                    row.len()
                )));
            }
            let row = row
                .into_iter()
                .map(|q| check_state(q, n).map(|()| (q - 1) as u32))
                .collect::<Result<Vec<_>>>()?;
            delta.push(row);
        }
        check_state(start, n)?;
        let mut mask = vec![false; n];
        for &q in finals {
            check_state(q, n)?;
            mask[q - 1] = true;
        }
        Ok(Self {
            alphabet,
            delta,
            start: (start - 1) as u32,
            finals: mask,
        })
    }

    pub(crate) fn from_raw(
        alphabet: Vec<String>,
        delta: Vec<Vec<u32>>,
        start: u32,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(alphabet.len(), delta.len());
        debug_assert!(delta.iter().all(|row| row.len() == finals.len()));
        Self {
            alphabet,
            delta,
            start,
            finals,
        }
    }

    /// The automaton on `{1..n}` whose `i`-th letter acts as `generators[i]`.
    /// Letters are named `a`, `b`, `c`, ...
    pub fn based_on(generators: &[Transformation], start: usize, finals: &[usize]) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let n = first.degree();
        for g in generators {
            if g.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
        }
        let alphabet = default_letters(generators.len());
        let rows = generators.iter().map(Transformation::images).collect();
        Self::new(alphabet, rows, start, finals)
    }

    /// Unary automaton over `{a}`: a tail of `tail` states followed by a loop
    /// of `period` states. State `s + 1` is reached by `a^s` for
    /// `s < tail + period`.
    pub fn unary_lasso(tail: usize, period: usize, finals: &[usize]) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidDfa(
                "loop must have at least one state".into(),
            ));
        }
        let n = tail + period;
        let row = (0..n)
            .map(|q| if q + 1 < n { q + 2 } else { tail + 1 })
            .collect();
        Self::new(vec!["a".into()], vec![row], 1, finals)
    }

    pub fn n(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start as usize + 1
    }

    pub fn finals(&self) -> BTreeSet<usize> {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(q, _)| q + 1)
            .collect()
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q - 1]
    }

    /// Successor of 1-indexed state `q` on letter index `a`.
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[a][q - 1] as usize + 1
    }

    pub(crate) fn start0(&self) -> usize {
        self.start as usize
    }

    pub(crate) fn finals_mask(&self) -> &[bool] {
        &self.finals
    }

    pub fn letter_index(&self, letter: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|l| l == letter)
            .ok_or_else(|| Error::UnknownLetter(letter.to_string()))
    }

    /// Splits `s` into letters: on whitespace if it contains any, otherwise
    /// one letter per character.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        if s.chars().any(char::is_whitespace) {
            s.split_whitespace().map(|l| self.letter_index(l)).collect()
        } else {
            let mut buf = [0u8; 4];
            s.chars()
                .map(|c| self.letter_index(c.encode_utf8(&mut buf)))
                .collect()
        }
    }

    fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&a| a >= self.alphabet.len()) {
            Some(a) => Err(Error::UnknownLetter(format!("#{a}"))),
            None => Ok(()),
        }
    }

    /// State reached from 0-based `q` on `w`; letters must be valid.
    pub(crate) fn run0(&self, mut q: usize, w: &[usize]) -> usize {
        for &a in w {
            q = self.delta[a][q] as usize;
        }
        q
    }

    /// State reached from 1-indexed `q` on `w`.
    pub fn run(&self, q: usize, w: &[usize]) -> Result<usize> {
        self.check_word(w)?;
        Ok(self.run0(q - 1, w) + 1)
    }

    pub fn accepts(&self, w: &[usize]) -> Result<bool> {
        self.check_word(w)?;
        Ok(self.finals[self.run0(self.start0(), w)])
    }

    /// The map `q -> delta(q, letter)` as a transformation.
    pub fn letter_transformation(&self, a: usize) -> Result<Transformation> {
        self.word_transformation(&[a])
    }

    /// `delta_w`, the action of `w` on the states; the empty word gives the
    /// identity.
    pub fn word_transformation(&self, w: &[usize]) -> Result<Transformation> {
        self.check_word(w)?;
        if self.n() > MAX_DEGREE {
            return Err(Error::InvalidDegree(self.n()));
        }
        Ok(Transformation::from_zero_based(
            (0..self.n()).map(|q| self.run0(q, w) as u8).collect(),
        ))
    }

    /// Reachable states (0-based) in breadth-first order, letters in
    /// alphabet order.
    fn reachable_order(&self) -> Vec<u32> {
        bfs_order(self.start, self.n(), &self.delta)
    }

    /// 1-indexed states reachable from the start state.
    pub fn reachable(&self) -> BTreeSet<usize> {
        self.reachable_order()
            .iter()
            .map(|&q| q as usize + 1)
            .collect()
    }

    /// Restriction to reachable states, renumbered in breadth-first order.
    pub fn trim(&self) -> Self {
        let order = self.reachable_order();
        self.renumber(&order)
    }

    /// Keeps exactly the states in `order` (0-based); `order[i]` becomes
    /// state `i`. The states must be closed under transitions.
    fn renumber(&self, order: &[u32]) -> Self {
        let mut new_id = vec![u32::MAX; self.n()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q as usize] = i as u32;
        }
        let delta = self
            .delta
            .iter()
            .map(|row| {
                order
                    .iter()
                    .map(|&q| new_id[row[q as usize] as usize])
                    .collect()
            })
            .collect();
        let finals = order.iter().map(|&q| self.finals[q as usize]).collect();
        Self::from_raw(
            self.alphabet.clone(),
            delta,
            new_id[self.start as usize],
            finals,
        )
    }

    /// Moore partition refinement over all states. Returns the class of each
    /// 0-based state and the number of classes. Classes are numbered in
    /// order of their smallest member.
    pub(crate) fn refine(&self) -> (Vec<u32>, usize) {
        let n = self.n();
        let width = self.delta.len() + 1;
        let mut class: Vec<u32> = self.finals.iter().map(|&f| f as u32).collect();
        let mut count = number_by_first_occurrence(&mut class);
        let mut signature = vec![0u32; n * width];
        loop {
            for q in 0..n {
                let sig = &mut signature[q * width..(q + 1) * width];
                sig[0] = class[q];
                for (a, row) in self.delta.iter().enumerate() {
                    sig[a + 1] = class[row[q] as usize];
                }
            }
            let mut ids: HashMap<&[u32], u32> = HashMap::with_capacity(count * 2);
            let mut next = Vec::with_capacity(n);
            for sig in signature.chunks_exact(width) {
                let fresh = ids.len() as u32;
                next.push(*ids.entry(sig).or_insert(fresh));
            }
            let new_count = ids.len();
            drop(ids);
            class = next;
            if new_count == count {
                return (class, count);
            }
            count = new_count;
        }
    }

    /// Myhill-Nerode classes of all states (1-indexed), each sorted, ordered
    /// by smallest member. Unreachable states are included.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let (class, count) = self.refine();
        let mut classes = vec![Vec::new(); count];
        for (q, &c) in class.iter().enumerate() {
            classes[c as usize].push(q + 1);
        }
        classes
    }

    /// The minimal complete DFA for the same language, in canonical
    /// breadth-first numbering.
    pub fn minimize(&self) -> Self {
        let trimmed = self.trim();
        let (class, count) = trimmed.refine();
        let mut delta = vec![vec![0u32; count]; trimmed.delta.len()];
        let mut finals = vec![false; count];
        for q in 0..trimmed.n() {
            let c = class[q] as usize;
            finals[c] = trimmed.finals[q];
            for (a, row) in trimmed.delta.iter().enumerate() {
                delta[a][c] = class[row[q] as usize];
            }
        }
        let quotient = Self::from_raw(
            trimmed.alphabet.clone(),
            delta,
            class[trimmed.start as usize],
            finals,
        );
        // every class is reachable, so this only renumbers
        quotient.trim()
    }

    /// Language equality by breadth-first search of the product automaton.
    /// Alphabets must agree as sets; letters are matched by name.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        let mut mine: Vec<&String> = self.alphabet.iter().collect();
        let mut theirs: Vec<&String> = other.alphabet.iter().collect();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Err(Error::AlphabetMismatch(
                self.alphabet.clone(),
                other.alphabet.clone(),
            ));
        }
        let letter_map: Vec<usize> = self
            .alphabet
            .iter()
            .map(|l| other.letter_index(l))
            .collect::<Result<_>>()?;

        let width = other.n();
        let mut seen = vec![false; self.n() * width];
        let mut queue = VecDeque::new();
        let start = (self.start as usize, other.start as usize);
        seen[start.0 * width + start.1] = true;
        queue.push_back(start);
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                return Ok(false);
            }
            for (a, &b) in letter_map.iter().enumerate() {
                let next = (self.delta[a][p] as usize, other.delta[b][q] as usize);
                let slot = &mut seen[next.0 * width + next.1];
                if !*slot {
                    *slot = true;
                    queue.push_back(next);
                }
            }
        }
        Ok(true)
    }

    /// Tail and loop of the path from the start state of a unary automaton.
    pub fn unary_structure(&self) -> Result<UnaryShape> {
        if self.alphabet.len() != 1 {
            return Err(Error::NotUnary(self.alphabet.len()));
        }
        let row = &self.delta[0];
        let mut first_visit = vec![usize::MAX; self.n()];
        let mut path = Vec::new();
        let mut q = self.start as usize;
        while first_visit[q] == usize::MAX {
            first_visit[q] = path.len();
            path.push(q + 1);
            q = row[q] as usize;
        }
        let tail = first_visit[q];
        Ok(UnaryShape {
            tail,
            period: path.len() - tail,
            loop_entry: q + 1,
            path,
        })
    }
}

/// Letter names for generated automata: `a`..`z`, then `x26`, `x27`, ...
pub fn default_letters(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

pub(crate) fn bfs_order(start: u32, n: usize, delta: &[Vec<u32>]) -> Vec<u32> {
    let mut seen = vec![false; n];
    let mut order = vec![start];
    seen[start as usize] = true;
    let mut head = 0;
    while head < order.len() {
        let q = order[head] as usize;
        head += 1;
        for row in delta {
            let r = row[q];
            if !seen[r as usize] {
                seen[r as usize] = true;
                order.push(r);
            }
        }
    }
    order
}

fn number_by_first_occurrence(class: &mut [u32]) -> usize {
    let mut ids: HashMap<u32, u32> = HashMap::new();
    for c in class.iter_mut() {
        let fresh = ids.len() as u32;
        *c = *ids.entry(*c).or_insert(fresh);
    }
    ids.len()
}

fn check_state(q: usize, n: usize) -> Result<()> {
    if (1..=n).contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidDfa(format!("state {q} out of range")))
    }
}

fn check_alphabet(alphabet: &[String]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::InvalidDfa("alphabet is empty".into()));
    }
    let mut seen = BTreeSet::new();
    for l in alphabet {
        if l.is_empty() || l.contains('#') || l.chars().any(char::is_whitespace) {
            return Err(Error::InvalidDfa(format!("bad letter {l:?}")));
        }
        if !seen.insert(l) {
            return Err(Error::InvalidDfa(format!("duplicate letter {l:?}")));
        }
    }
    Ok(())
}

impl FromStr for Dfa {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse(text)
    }
}

/// Parses the line-oriented text format.
pub fn parse(text: &str) -> Result<Dfa> {
    let err = |line: usize, message: String| Error::Parse { line, message };

    let mut states: Option<(usize, usize)> = None;
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut start: Option<(usize, usize)> = None;
    let mut finals: Option<(usize, Vec<usize>)> = None;
    let mut trans: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let rest: Vec<&str> = tokens.collect();
        let numbers = |rest: &[&str]| -> Result<Vec<usize>> {
            rest.iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(line_no, format!("expected a number, got {t:?}")))
                })
                .collect()
        };
        match keyword {
            "states" => {
                if states.is_some() {
                    return Err(err(line_no, "duplicate `states` line".into()));
                }
                let v = numbers(&rest)?;
                match v.as_slice() {
                    [n] if *n >= 1 => states = Some((line_no, *n)),
                    _ => return Err(err(line_no, "`states` takes one positive count".into())),
                }
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(err(line_no, "duplicate `alphabet` line".into()));
                }
                let letters: Vec<String> = rest.iter().map(|s| s.to_string()).collect();
                if letters.is_empty() {
                    return Err(err(line_no, "alphabet is empty".into()));
                }
                let mut seen = BTreeSet::new();
                for l in &letters {
                    if !seen.insert(l) {
                        return Err(err(line_no, format!("duplicate letter {l:?}")));
                    }
                }
                alphabet = Some((line_no, letters));
            }
            "start" => {
                if start.is_some() {
                    return Err(err(line_no, "duplicate `start` line".into()));
                }
                match numbers(&rest)?.as_slice() {
                    [q] => start = Some((line_no, *q)),
                    _ => return Err(err(line_no, "`start` takes one state".into())),
                }
            }
            "finals" => {
                if finals.is_some() {
                    return Err(err(line_no, "duplicate `finals` line".into()));
                }
                finals = Some((line_no, numbers(&rest)?));
            }
            "trans" => {
                let Some((letter, targets)) = rest.split_first() else {
                    return Err(err(line_no, "`trans` needs a letter".into()));
                };
                trans.push((line_no, letter.to_string(), numbers(targets)?));
            }
            other => return Err(err(line_no, format!("unknown keyword {other:?}"))),
        }
    }

    let missing = |what: &str| err(last_line + 1, format!("missing `{what}` line"));
    let (_, n) = states.ok_or_else(|| missing("states"))?;
    let (_, letters) = alphabet.ok_or_else(|| missing("alphabet"))?;
    let (start_line, start) = start.ok_or_else(|| missing("start"))?;
    let (finals_line, finals) = finals.ok_or_else(|| missing("finals"))?;

    let in_range = |line: usize, q: usize| -> Result<()> {
        if (1..=n).contains(&q) {
            Ok(())
        } else {
            Err(err(line, format!("state {q} out of range")))
        }
    };
    in_range(start_line, start)?;
    for &q in &finals {
        in_range(finals_line, q)?;
    }

    let mut rows: Vec<Option<Vec<usize>>> = vec![None; letters.len()];
    for (line, letter, targets) in trans {
        let Some(a) = letters.iter().position(|l| *l == letter) else {
            return Err(err(
                line,
                format!("letter {letter:?} is not in the alphabet"),
            ));
        };
        if rows[a].is_some() {
            return Err(err(line, format!("duplicate `trans` line for {letter:?}")));
        }
        if targets.len() != n {
            return Err(err(
                line,
                format!("expected {n} targets for {letter:?}, got {}", targets.len()),
            ));
        }
        for &q in &targets {
            in_range(line, q)?;
        }
        rows[a] = Some(targets);
    }
    let rows = rows
        .into_iter()
        .zip(&letters)
        .map(|(row, l)| row.ok_or_else(|| missing(&format!("trans {l}"))))
        .collect::<Result<Vec<_>>>()?;

    Dfa::new(letters, rows, start, &finals).map_err(|e| err(last_line, e.to_string()))
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.n())?;
        writeln!(f, "alphabet {}", self.alphabet.join(" "))?;
        writeln!(f, "start {}", self.start())?;
        write!(f, "finals")?;
        for q in self.finals() {
            write!(f, " {q}")?;
        }
        writeln!(f)?;
        for (letter, row) in self.alphabet.iter().zip(&self.delta) {
            write!(f, "trans {letter}")?;
            for &q in row {
                write!(f, " {}", q + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
