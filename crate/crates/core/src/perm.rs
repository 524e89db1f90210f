//! Permutations of `[n] = {1, ..., n}`, identified with the point
//! `(π(1), ..., π(n))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// A permutation stored by its images: position `j - 1` holds `π(j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPerm("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPerm(format!("{images:?} is not a bijection of [{n}]")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The adjacent transposition `<k, k+1>`.
    pub fn transposition(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidPerm(format!("no transposition <{k},{}> in S({n})", k + 1)));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(k - 1, k);
        Ok(Self { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `π(j)` for `j` in `1..=n`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Perm) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(Self { images: other.images.iter().map(|&j| self.images[j - 1]).collect() })
    }

    /// The antipodal permutation `(n+1)·1 − π`.
    pub fn antipode(&self) -> Self {
        let n = self.n();
        Self { images: self.images.iter().map(|&v| n + 1 - v).collect() }
    }

    /// The lexicographically smaller of `{π, π⁻}`.
    pub fn canonical(&self) -> Self {
        let anti = self.antipode();
        if anti.images < self.images {
            anti
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.images <= self.antipode().images
    }

    /// True for `π` and for its antipode.
    pub fn same_up_to_antipode(&self, other: &Perm) -> bool {
        self == other || *self == other.antipode()
    }

    pub fn as_point(&self) -> Vec<Rat> {
        self.images.iter().map(|&v| rat::int(v as i64)).collect()
    }

    /// All of `S(n)` in lexicographic order.
    pub fn all(n: usize) -> AllPerms {
        AllPerms { next: Some((1..=n).collect()) }
    }

    /// One representative (the lexicographically smaller) of every antipodal pair.
    pub fn all_canonical(n: usize) -> impl Iterator<Item = Perm> {
        Self::all(n).filter(Perm::is_canonical)
    }
}

/// Lexicographic enumeration of `S(n)`.
pub struct AllPerms {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm { images: current })
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidPerm(s.to_string()))?;
        Perm::new(images)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
