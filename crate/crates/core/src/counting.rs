//! Exact counting: Stirling numbers of the second kind, binomials,
//! factorials, closed-form sizes of the two-cycle monoids `U(k, l)`, and the
//! analytic lower bound on the largest of them.

use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Triangular table of Stirling numbers of the second kind, `rows[n][k]` for
/// `0 <= k <= n`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut table = Self {
            rows: vec![vec![BigUint::one()]],
        };
        table.extend_to(max_n);
        table
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Grows the table with `S(n, k) = S(n-1, k-1) + k S(n-1, k)`.
    pub fn extend_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let prev = self.rows.last().unwrap();
            let n = self.rows.len();
            let mut row = vec![BigUint::zero(); n + 1];
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                let below = if k < n { &prev[k] * k } else { BigUint::zero() };
                *slot = &prev[k - 1] + below;
            }
            self.rows.push(row);
        }
    }

    /// `S(n, k)`, zero when `k > n` or when `k < 1 <= n`. Panics if `n`
    /// exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    /// Like [`get`](Self::get) with a signed index, so `S(n, -1) = 0`.
    fn get_signed(&self, n: usize, k: i64) -> BigUint {
        if k < 0 {
            BigUint::zero()
        } else {
            self.get(n, k as usize)
        }
    }
}

fn shared_table() -> &'static Mutex<StirlingTable> {
    static TABLE: OnceLock<Mutex<StirlingTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(StirlingTable::new(0)))
}

/// Stirling number of the second kind: partitions of an `n`-set into `k`
/// nonempty blocks. Memoized across calls.
pub fn stirling2(n: usize, k: usize) -> BigCount {
    let mut table = shared_table().lock().unwrap();
    table.extend_to(n);
    table.get(n, k)
}

/// `C(n, k)`, zero for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn check_pair(k: usize, l: usize) -> Result<()> {
    if k < 2 || l < 2 {
        return Err(Error::InvalidParameters(format!(
            "need k, l >= 2, got ({k}, {l})"
        )));
    }
    if k.gcd(&l) != 1 {
        return Err(Error::InvalidParameters(format!(
            "k and l must be coprime, got ({k}, {l})"
        )));
    }
    Ok(())
}

/// `sum_r S(k, r) S(l, i - r)`: partitions of a `(k + l)`-set into `i`
/// blocks that never mix the two parts.
fn split_partitions(table: &StirlingTable, k: usize, l: usize, i: usize) -> BigUint {
    (1..=i)
        .map(|r| table.get(k, r) * table.get_signed(l, i as i64 - r as i64))
        .sum()
}

/// Closed-form size of `U(k, l)` without parameter checks:
///
/// `kl + sum_{i=1}^{n} (C(n,i) - C(k,i-l)) (S(n,i) - sum_r S(k,r) S(l,i-r)) i!`
///
/// Only meaningful as a monoid size for coprime `k, l >= 2`; other inputs
/// still evaluate the expression.
pub fn ukl_formula_unchecked(k: usize, l: usize) -> BigCount {
    let n = k + l;
    let table = StirlingTable::new(n);
    let mut total = BigUint::from(k * l);
    let mut fact = BigUint::one();
    for i in 1..=n {
        fact *= i;
        let images = binomial(n as u64, i as i64) - binomial(k as u64, i as i64 - l as i64);
        let kernels = table.get(n, i) - split_partitions(&table, k, l, i);
        total += images * kernels * &fact;
    }
    total
}

/// Size of `U(k, l)` for coprime `k, l >= 2`.
pub fn ukl_size_formula(k: usize, l: usize) -> Result<BigCount> {
    check_pair(k, l)?;
    Ok(ukl_formula_unchecked(k, l))
}

/// `|U(k, l)| - |U(l, k)|` evaluated directly as
/// `sum_i (C(l, i-k) - C(k, i-l)) (S(n,i) - sum_r S(k,r) S(l,i-r)) i!`.
pub fn ukl_difference_formula(k: usize, l: usize) -> BigInt {
    let n = k + l;
    let table = StirlingTable::new(n);
    let mut total = BigInt::zero();
    let mut fact = BigUint::one();
    for i in 1..=n {
        fact *= i;
        let coefficient = BigInt::from(binomial(l as u64, i as i64 - k as i64))
            - BigInt::from(binomial(k as u64, i as i64 - l as i64));
        let kernels = table.get(n, i) - split_partitions(&table, k, l, i);
        total += coefficient * BigInt::from(kernels * &fact);
    }
    total
}

/// `|U(2, n-2)| - |U(n-2, 2)|` from two evaluations of the size formula.
/// For even `n` the pair is not coprime and the expression is evaluated
/// formally.
pub fn ukl_gap(n: usize) -> Result<BigInt> {
    if n < 5 {
        return Err(Error::InvalidParameters(format!(
            "gap needs n >= 5, got {n}"
        )));
    }
    let forward = BigInt::from(ukl_formula_unchecked(2, n - 2));
    let backward = BigInt::from(ukl_formula_unchecked(n - 2, 2));
    Ok(forward - backward)
}

/// `sum_{i=2}^{n-1} ((2i-2) S(n-2,i-1) + (i-1) S(n-2,i)) i!`, a lower bound
/// on [`ukl_gap`].
pub fn gap_lower_sum(n: usize) -> BigCount {
    assert!(n >= 2);
    let table = StirlingTable::new(n);
    let mut total = BigUint::zero();
    for i in 2..n {
        let term = table.get(n - 2, i - 1) * (2 * i - 2) + table.get(n - 2, i) * (i - 1);
        total += term * factorial(i as u64);
    }
    total
}

/// `1 - sqrt(2) (2/e)^(n/2) e^(1/12) - sqrt(8/n) e^(1/12)`.
pub fn hk_bracket(n: usize) -> f64 {
    let n = n as f64;
    let e12 = (1.0f64 / 12.0).exp();
    1.0 - 2f64.sqrt() * (2.0 / std::f64::consts::E).powf(n / 2.0) * e12
        - 8f64.sqrt() / n.sqrt() * e12
}

/// `n^n` times [`hk_bracket`], in double precision. Negative for small `n`.
pub fn hk_lower_bound(n: usize) -> f64 {
    (n as f64).powi(n as i32) * hk_bracket(n)
}

/// Whether the exact `value` is at least the floating `bound`.
pub fn meets_bound(value: &BigUint, bound: f64) -> bool {
    if bound.is_nan() {
        return false;
    }
    if bound <= 0.0 {
        return true;
    }
    match BigUint::from_f64(bound.ceil()) {
        Some(ceiling) => *value >= ceiling,
        None => false,
    }
}

/// Coprime `k, l >= 2` with `k + l = n` maximizing the size formula, as
/// `(k, l, size)`; ties go to the smaller `k`.
pub fn max_coprime_formula(n: usize) -> Option<(usize, usize, BigCount)> {
    best_pair(n, 2)
}

/// Coprime `k >= 2, l >= 3` with `k + l = n` maximizing the size formula;
/// ties go to the smaller `k`.
pub fn best_coprime_pair(n: usize) -> Result<(usize, usize)> {
    best_pair(n, 3).map(|(k, l, _)| (k, l)).ok_or_else(|| {
        Error::InvalidParameters(format!("no coprime k >= 2, l >= 3 with k + l = {n}"))
    })
}

fn best_pair(n: usize, min_l: usize) -> Option<(usize, usize, BigCount)> {
    let mut best: Option<(usize, usize, BigCount)> = None;
    for k in 2..=n.saturating_sub(min_l) {
        let l = n - k;
        if k.gcd(&l) != 1 {
            continue;
        }
        let size = ukl_formula_unchecked(k, l);
        if best.as_ref().is_none_or(|(_, _, s)| size > *s) {
            best = Some((k, l, size));
        }
    }
    best
}

/// Converts a signed count that is known to be nonnegative.
pub fn to_count(value: &BigInt) -> Option<BigCount> {
    match value.sign() {
        Sign::Minus => None,
        _ => Some(value.magnitude().clone()),
    }
}
