//! Symmetric matrices with zero diagonal, the space `S₀(n)` of dimension
//! `C(n, 2)` in which metrics and certificates live.

use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rat::{self, Rat};

/// Only the strict upper triangle is stored; the lower triangle mirrors it
/// and the diagonal is identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymZMat {
    n: usize,
    upper: Vec<Rat>,
}

#[inline]
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl SymZMat {
    pub fn zeros(n: usize) -> Self {
        Self { n, upper: vec![Rat::zero(); pair_count(n)] }
    }

    /// Builds the matrix from `f(k, l)` for `1 <= k < l <= n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut upper = Vec::with_capacity(pair_count(n));
        for k in 1..=n {
            for l in k + 1..=n {
                upper.push(f(k, l));
            }
        }
        Self { n, upper }
    }

    /// From dense rows; rejects asymmetric input or a nonzero diagonal.
    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let n = rows.len();
        for (k, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!("row {} has length {}", k + 1, row.len())));
            }
            if !row[k].is_zero() {
                return Err(Error::InvalidMatrix(format!("diagonal entry ({0},{0}) is nonzero", k + 1)));
            }
            for (l, other) in rows.iter().enumerate().take(k) {
                if row[l] != other[k] {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({},{}) and ({},{}) differ",
                        k + 1,
                        l + 1,
                        l + 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |k, l| rows[k - 1][l - 1].clone()))
    }

    /// From dense integer rows, reading only the strict upper triangle.
    pub fn from_upper_rows(rows: &[&[i64]]) -> Self {
        Self::from_fn(rows.len(), |k, l| rat::int(rows[k - 1][l - 1]))
    }

    /// `𝟙_n`: ones off the diagonal.
    pub fn all_ones(n: usize) -> Self {
        Self { n, upper: vec![rat::int(1); pair_count(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Upper-triangle entries in row-major order `(1,2), (1,3), …, (n-1,n)`.
    pub fn upper(&self) -> &[Rat] {
        &self.upper
    }

    /// Entry `(k, l)`, 1-based.
    pub fn get(&self, k: usize, l: usize) -> Rat {
        match k.cmp(&l) {
            std::cmp::Ordering::Equal => Rat::zero(),
            std::cmp::Ordering::Less => self.upper[pair_index(self.n, k - 1, l - 1)].clone(),
            std::cmp::Ordering::Greater => self.upper[pair_index(self.n, l - 1, k - 1)].clone(),
        }
    }

    /// Sets entries `(k, l)` and `(l, k)`; `k != l`.
    pub fn set(&mut self, k: usize, l: usize, value: Rat) {
        assert!(k != l, "diagonal entries are fixed at zero");
        let (i, j) = if k < l { (k - 1, l - 1) } else { (l - 1, k - 1) };
        self.upper[pair_index(self.n, i, j)] = value;
    }

    pub fn add_to(&mut self, k: usize, l: usize, delta: &Rat) {
        let v = self.get(k, l) + delta;
        self.set(k, l, v);
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Zero::is_zero)
    }

    fn check_dim(&self, other: &SymZMat) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: other.n })
        }
    }

    /// `A ∙ B = tr(AᵀB)`, summed over all ordered pairs: twice the
    /// upper-triangle dot product.
    pub fn inner_product(&self, other: &SymZMat) -> Result<Rat> {
        self.check_dim(other)?;
        let half: Rat = self.upper.iter().zip(&other.upper).map(|(a, b)| a * b).sum();
        Ok(half * rat::int(2))
    }

    /// `E_σᵀ M E_σ`: the entry `(k, l)` of the result is `m[σ(k), σ(l)]`,
    /// so that `conjugate(M(x), σ) = M(x ∘ σ)`.
    pub fn conjugate(&self, sigma: &Perm) -> Result<SymZMat> {
        if sigma.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: sigma.n() });
        }
        Ok(Self::from_fn(self.n, |k, l| self.get(sigma.apply(k), sigma.apply(l))))
    }

    pub fn checked_add(&self, other: &SymZMat) -> Result<SymZMat> {
        self.check_dim(other)?;
        Ok(Self { n: self.n, upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, other: &SymZMat) -> Result<SymZMat> {
        self.check_dim(other)?;
        Ok(Self { n: self.n, upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a - b).collect() })
    }

    pub fn scaled(&self, factor: &Rat) -> SymZMat {
        Self { n: self.n, upper: self.upper.iter().map(|a| a * factor).collect() }
    }

    /// Embeds into `S₀(head + n + tail)` with zero rows and columns added
    /// before and after.
    pub fn padded(&self, head: usize, tail: usize) -> SymZMat {
        let big = head + self.n + tail;
        Self::from_fn(big, |k, l| {
            if k > head && l <= head + self.n {
                self.get(k - head, l - head)
            } else {
                Rat::zero()
            }
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (1..=self.n).map(|k| (1..=self.n).map(|l| self.get(k, l)).collect()).collect()
    }
}

impl fmt::Display for SymZMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(rat::format).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SymZMatJson {
    n: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for SymZMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::new();
        for k in 1..=self.n {
            for l in k + 1..=self.n {
                let v = self.get(k, l);
                if !v.is_zero() {
                    entries.push((k, l, rat::format(&v)));
                }
            }
        }
        SymZMatJson { n: self.n, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymZMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SymZMatJson::deserialize(d)?;
        let mut m = SymZMat::zeros(raw.n);
        let mut seen = std::collections::HashSet::new();
        for (k, l, v) in raw.entries {
            if !(1 <= k && k < l && l <= raw.n) {
                return Err(D::Error::custom(format!(
                    "entry ({k},{l}) is not in the strict upper triangle of a {0}x{0} matrix",
                    raw.n
                )));
            }
            if !seen.insert((k, l)) {
                return Err(D::Error::custom(format!("entry ({k},{l}) listed twice")));
            }
            m.set(k, l, rat::parse(&v).map_err(D::Error::custom)?);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line_metrics::embed;

    fn perm(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn index_layout() {
        let m = SymZMat::from_fn(4, |k, l| rat::int((10 * k + l) as i64));
        assert_eq!(m.get(2, 4), rat::int(24));
        assert_eq!(m.get(4, 2), rat::int(24));
        assert_eq!(m.get(3, 3), rat::int(0));
        assert_eq!(m.upper().len(), 6);
    }

    #[test]
    fn inner_product_counts_ordered_pairs() {
        let id3 = embed(&Perm::identity(3).as_point());
        assert_eq!(SymZMat::all_ones(3).inner_product(&id3).unwrap(), rat::int(8));
        assert!(SymZMat::zeros(3).inner_product(&id3).unwrap().is_zero());
        assert!(SymZMat::zeros(4).inner_product(&id3).is_err());
    }

    #[test]
    fn conjugation_matches_permuted_embedding() {
        let x = Perm::identity(3).as_point();
        let sigma = perm("2,1,3");
        let lhs = embed(&x).conjugate(&sigma).unwrap();
        assert_eq!(lhs, embed(&sigma.as_point()));
        let m = SymZMat::from_fn(3, |k, l| rat::int((k * l) as i64));
        assert_eq!(m.conjugate(&Perm::identity(3)).unwrap(), m);
        assert_eq!(m.conjugate(&sigma).unwrap().conjugate(&sigma.inverse()).unwrap(), m);
    }

    #[test]
    fn from_rows_validates() {
        let r = |v: &[i64]| v.iter().map(|&x| rat::int(x)).collect::<Vec<_>>();
        assert!(SymZMat::from_rows(&[r(&[0, 1]), r(&[1, 0])]).is_ok());
        assert!(SymZMat::from_rows(&[r(&[0, 1]), r(&[2, 0])]).is_err());
        assert!(SymZMat::from_rows(&[r(&[1, 1]), r(&[1, 0])]).is_err());
        assert!(SymZMat::from_rows(&[r(&[0, 1]), r(&[1])]).is_err());
    }

    #[test]
    fn json_form() {
        let mut m = SymZMat::zeros(3);
        m.set(1, 3, rat::frac(-1, 2));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"n":3,"entries":[[1,3,"-1/2"]]}"#);
        let back: SymZMat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<SymZMat>(r#"{"n":3,"entries":[[2,1,"1"]]}"#).is_err());
        assert!(serde_json::from_str::<SymZMat>(r#"{"n":3,"entries":[[1,4,"1"]]}"#).is_err());
        assert!(serde_json::from_str::<SymZMat>(r#"{"n":3,"entries":[[1,2,"1"],[1,2,"2"]]}"#).is_err());
        assert!(serde_json::from_str::<SymZMat>(r#"{"n":3,"entries":[[1,2,"x"]]}"#).is_err());
    }

    #[test]
    fn padding() {
        let m = SymZMat::all_ones(2).padded(1, 2);
        assert_eq!(m.n(), 5);
        assert_eq!(m.get(2, 3), rat::int(1));
        assert_eq!(m.get(1, 2), rat::int(0));
        assert_eq!(m.get(3, 4), rat::int(0));
    }
}
