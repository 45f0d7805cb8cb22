//! Transformations of a finite set `{1, ..., n}`.
//!
//! A [`Transformation`] is a total self-map stored as its one-row image
//! sequence. Points are 1-indexed at the API boundary and 0-indexed in
//! storage. Composition follows the left-to-right convention used for
//! automata: `f.compose(&g)` applies `f` first, then `g`, so that the map of
//! a word `uv` is the map of `u` composed with the map of `v`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree; images are stored as `u8`.
pub const MAX_DEGREE: usize = u8::MAX as usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    map: Box<[u8]>,
}

impl Transformation {
    /// Builds a transformation from its 1-indexed image sequence.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let map = images
            .iter()
            .map(|&p| {
                if (1..=n).contains(&p) {
                    Ok((p - 1) as u8)
                } else {
                    Err(Error::PointOutOfRange {
                        point: p,
                        degree: n,
                    })
                }
            })
            .collect::<Result<Box<[u8]>>>()?;
        Ok(Self { map })
    }

    /// Builds a transformation from a 0-indexed image sequence.
    pub(crate) fn from_zero_based(map: Vec<u8>) -> Self {
        debug_assert!(!map.is_empty() && map.len() <= MAX_DEGREE);
        debug_assert!(map.iter().all(|&p| (p as usize) < map.len()));
        Self {
            map: map.into_boxed_slice(),
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Self::from_zero_based((0..n as u8).collect()))
    }

    /// Constant map sending every point to `point`.
    pub fn constant(n: usize, point: usize) -> Result<Self> {
        Self::new(&vec![point; n])
    }

    /// The permutation `(1 2 ... k)(k+1 ... k+l)` of degree `k + l`.
    pub fn cycle_pair(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidParameters(format!(
                "cycle lengths must be positive, got ({k}, {l})"
            )));
        }
        let n = k + l;
        check_degree(n)?;
        let mut map = Vec::with_capacity(n);
        map.extend((0..k).map(|i| ((i + 1) % k) as u8));
        map.extend((0..l).map(|i| (k + (i + 1) % l) as u8));
        Ok(Self::from_zero_based(map))
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Image of the 1-indexed point `p`.
    ///
    /// Panics if `p` is not in `1..=degree`.
    pub fn apply(&self, p: usize) -> usize {
        self.map[p - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, p: usize) -> usize {
        self.map[p] as usize
    }

    pub(crate) fn as_zero_based(&self) -> &[u8] {
        &self.map
    }

    /// The 1-indexed image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&p| p as usize + 1).collect()
    }

    /// `q -> other(self(q))`: apply `self` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition for callers that already know the degrees agree.
    #[inline]
    pub(crate) fn then(&self, other: &Self) -> Self {
        Self {
            map: self.map.iter().map(|&p| other.map[p as usize]).collect(),
        }
    }

    pub fn power(&self, mut m: u64) -> Self {
        let mut result = Self::from_zero_based((0..self.degree() as u8).collect());
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            m >>= 1;
        }
        result
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn rank(&self) -> usize {
        let mut seen = [false; MAX_DEGREE + 1];
        let mut rank = 0;
        for &p in self.map.iter() {
            if !seen[p as usize] {
                seen[p as usize] = true;
                rank += 1;
            }
        }
        rank
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    /// True iff `k` has exactly one preimage. Points outside the image are
    /// not unique.
    pub fn is_unique(&self, k: usize) -> bool {
        k >= 1 && self.preimage_count(k) == 1
    }

    pub fn preimage_count(&self, k: usize) -> usize {
        self.map.iter().filter(|&&p| p as usize + 1 == k).count()
    }

    /// For a rank-2 map with image `{i, j}`, the map obtained by swapping
    /// `i` and `j` in every output.
    pub fn complement(&self) -> Result<Self> {
        let image = self.image();
        if image.len() != 2 {
            return Err(Error::NotRankTwo(image.len()));
        }
        let mut it = image.iter().map(|&p| (p - 1) as u8);
        let (i, j) = (it.next().unwrap(), it.next().unwrap());
        Ok(Self {
            map: self
                .map
                .iter()
                .map(|&p| if p == i { j } else { i })
                .collect(),
        })
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        Err(Error::InvalidDegree(n))
    } else {
        Ok(())
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &p) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", p as usize + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
