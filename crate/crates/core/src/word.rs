//! Subsets of `[n]` written as binary words: position `j` carries a `1`
//! exactly when `j ∈ U`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rat::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    bits: Vec<bool>,
}

/// A maximal run of equal symbols, as an inclusive 1-based range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub start: usize,
    pub end: usize,
}

impl Run {
    #[allow(clippy::len_without_is_empty)] // runs are never empty
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

/// Slope, hill and valley structure of a proper nonempty word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordStructure {
    pub slopes: usize,
    pub hills: Vec<Run>,
    pub valleys: Vec<Run>,
    pub alternating: bool,
}

impl Word {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The word of `U ⊂ [n]`, elements given 1-based.
    pub fn from_set(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = vec![false; n];
        for j in elements {
            if j == 0 || j > n {
                return Err(Error::InvalidWord(format!("element {j} outside [{n}]")));
            }
            bits[j - 1] = true;
        }
        Ok(Self { bits })
    }

    /// The word with the given run lengths, starting with `first`.
    pub fn from_runs(first: bool, lengths: &[usize]) -> Self {
        let mut bits = Vec::new();
        let mut symbol = first;
        for &len in lengths {
            bits.extend(std::iter::repeat_n(symbol, len));
            symbol = !symbol;
        }
        Self { bits }
    }

    /// The alternating word `1010…` of length `n`.
    pub fn alternating(n: usize) -> Self {
        Self { bits: (0..n).map(|i| i % 2 == 0).collect() }
    }

    /// `[k] = 1…10…0`.
    pub fn prefix(n: usize, k: usize) -> Self {
        Self { bits: (0..n).map(|i| i < k).collect() }
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `|U|`.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.bits[j - 1]
    }

    pub fn elements(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&j| self.contains(j)).collect()
    }

    pub fn is_proper(&self) -> bool {
        let k = self.count();
        k > 0 && k < self.n()
    }

    pub fn ensure_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::ImproperWord(self.to_string()))
        }
    }

    pub fn complement(&self) -> Self {
        Self { bits: self.bits.iter().map(|b| !b).collect() }
    }

    /// Representative of `{U, ∁U}` whose sorted element list is
    /// lexicographically smaller, i.e. the one containing `1`.
    pub fn canonical(&self) -> Self {
        if self.bits.first().copied().unwrap_or(true) {
            self.clone()
        } else {
            self.complement()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.bits.first().copied().unwrap_or(true)
    }

    pub fn same_up_to_complement(&self, other: &Word) -> bool {
        self == other || self.bits.iter().zip(&other.bits).all(|(a, b)| a != b)
    }

    /// The characteristic vector `χ^U`.
    pub fn indicator(&self) -> Vec<Rat> {
        self.bits.iter().map(|&b| rat::int(b as i64)).collect()
    }

    /// Run-length encoding: `(symbol, length)` per maximal run.
    pub fn runs(&self) -> Vec<(bool, usize)> {
        let mut out: Vec<(bool, usize)> = Vec::new();
        for &b in &self.bits {
            match out.last_mut() {
                Some((s, len)) if *s == b => *len += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    pub fn slopes(&self) -> usize {
        self.bits.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn structure(&self) -> Result<WordStructure> {
        self.ensure_proper()?;
        let mut hills = Vec::new();
        let mut valleys = Vec::new();
        let mut start = 1;
        for (symbol, len) in self.runs() {
            let run = Run { start, end: start + len - 1 };
            if symbol {
                hills.push(run);
            } else {
                valleys.push(run);
            }
            start += len;
        }
        let slopes = self.slopes();
        Ok(WordStructure { slopes, hills, valleys, alternating: slopes + 1 == self.n() })
    }

    /// `π(U) = {π(j) : j ∈ U}`.
    pub fn image(&self, pi: &Perm) -> Result<Self> {
        self.check_dim(pi.n())?;
        Word::from_set(self.n(), self.elements().into_iter().map(|j| pi.apply(j)))
    }

    /// `π⁻¹(U)`.
    pub fn preimage(&self, pi: &Perm) -> Result<Self> {
        self.image(&pi.inverse())
    }

    /// Repeats the symbol at 0-based `pos` so that it occurs `k + 1` times there.
    pub fn stretch(&self, pos: usize, k: usize) -> Self {
        let mut bits = self.bits[..pos].to_vec();
        bits.extend(std::iter::repeat_n(self.bits[pos], k + 1));
        bits.extend_from_slice(&self.bits[pos + 1..]);
        Self { bits }
    }

    /// Every proper nonempty subset of `[n]`, in lexicographic word order.
    pub fn all_proper(n: usize) -> impl Iterator<Item = Word> {
        let total: u64 = 1 << n;
        (1..total - 1).map(move |mask| Word {
            bits: (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect(),
        })
    }

    /// One representative (containing `1`) of every complement class.
    pub fn all_canonical(n: usize) -> impl Iterator<Item = Word> {
        Self::all_proper(n).filter(Word::is_canonical)
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.n() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, found: self.n() })
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::InvalidWord(s.to_string()));
        }
        let bits = t
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bits })
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
