//! Precomputed tables for exhaustive evaluation over `S(n)` and over the
//! proper subsets of `[n]`.
//!
//! Every permutation and cut metric is stored by its strict upper triangle
//! of small integers, so that `C ∙ M(σ)` reduces to an integer dot product
//! against a common-denominator form of `C`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::perm::Perm;
use crate::rat::{self, Rat};
use crate::symmat::{pair_count, SymZMat};
use crate::word::Word;

/// Default bound on `n` for anything that enumerates `S(n)`.
pub const DEFAULT_MAX_N: usize = 9;

/// Environment variable overriding exhaustion bounds.
pub const MAX_N_ENV: &str = "LINEMETRIC_MAX_N";

/// The bound from [`MAX_N_ENV`] if set and valid.
pub fn max_n_from_env() -> Option<usize> {
    std::env::var(MAX_N_ENV).ok()?.trim().parse().ok()
}

pub struct ExhaustionTables {
    n: usize,
    pairs: usize,
    perms: Vec<Perm>,
    perm_rows: Vec<u8>,
    cuts: Vec<Word>,
    cut_rows: Vec<u8>,
}

impl ExhaustionTables {
    fn build(n: usize) -> Self {
        let pairs = pair_count(n);
        let perms: Vec<Perm> = Perm::all_canonical(n).collect();
        let mut perm_rows = Vec::with_capacity(perms.len() * pairs);
        for p in &perms {
            let v = p.images();
            for i in 0..n {
                for j in i + 1..n {
                    perm_rows.push(v[i].abs_diff(v[j]) as u8);
                }
            }
        }
        let cuts: Vec<Word> = Word::all_canonical(n).collect();
        let mut cut_rows = Vec::with_capacity(cuts.len() * pairs);
        for u in &cuts {
            let b = u.bits();
            for i in 0..n {
                for j in i + 1..n {
                    cut_rows.push((b[i] != b[j]) as u8);
                }
            }
        }
        Self { n, pairs, perms, perm_rows, cuts, cut_rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// One representative per antipodal pair, in lexicographic order.
    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// Upper triangle of `M(σ)` for the `i`-th canonical permutation.
    pub fn perm_row(&self, i: usize) -> &[u8] {
        &self.perm_rows[i * self.pairs..(i + 1) * self.pairs]
    }

    /// Canonical (containing `1`) proper subsets.
    pub fn cuts(&self) -> &[Word] {
        &self.cuts
    }

    /// Upper triangle of `M(χ^U)` for the `i`-th canonical subset.
    pub fn cut_row(&self, i: usize) -> &[u8] {
        &self.cut_rows[i * self.pairs..(i + 1) * self.pairs]
    }

    pub fn perm_position(&self, pi: &Perm) -> Option<usize> {
        self.perms.binary_search(&pi.canonical()).ok()
    }

    pub fn cut_position(&self, u: &Word) -> Option<usize> {
        let c = u.canonical();
        self.cuts.iter().position(|w| *w == c)
    }
}

/// Shared tables for `S(n)`, built on first use.
pub fn tables(n: usize) -> Arc<ExhaustionTables> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ExhaustionTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("table cache poisoned");
    guard.entry(n).or_insert_with(|| Arc::new(ExhaustionTables::build(n))).clone()
}

/// A matrix multiplied through by the common denominator of its entries.
pub struct ScaledMatrix {
    den: BigInt,
    small: Option<Vec<i64>>,
    big: Vec<BigInt>,
}

impl ScaledMatrix {
    pub fn new(m: &SymZMat) -> Self {
        let den = rat::common_denominator(m.upper());
        let big: Vec<BigInt> = m.upper().iter().map(|x| (x * &den).to_integer()).collect();
        let small = big.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>();
        Self { den, small, big }
    }

    /// Upper-triangle dot product with an integer row, scaled by the
    /// common denominator.
    pub fn raw_dot(&self, row: &[u8]) -> BigInt {
        match &self.small {
            Some(s) => {
                let acc: i128 = s.iter().zip(row).map(|(&a, &b)| a as i128 * b as i128).sum();
                BigInt::from(acc)
            }
            None => self.big.iter().zip(row).map(|(a, &b)| a * BigInt::from(b)).sum(),
        }
    }

    /// Same as [`raw_dot`](Self::raw_dot) when it fits in `i128`.
    pub fn raw_dot_small(&self, row: &[u8]) -> Option<i128> {
        self.small
            .as_ref()
            .map(|s| s.iter().zip(row).map(|(&a, &b)| a as i128 * b as i128).sum())
    }

    pub fn has_small(&self) -> bool {
        self.small.is_some()
    }

    /// Converts a raw dot product back to the inner product `A ∙ B`.
    pub fn to_inner(&self, raw: &BigInt) -> Rat {
        Rat::new(raw * BigInt::from(2), self.den.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line_metrics::{cut_metric, embed};

    #[test]
    fn table_sizes() {
        let t = tables(5);
        assert_eq!(t.perms().len(), 60);
        assert_eq!(t.cuts().len(), 15);
        assert_eq!(t.perm_row(0).len(), 10);
    }

    #[test]
    fn scaled_dot_agrees_with_inner_product() {
        let t = tables(4);
        let c = SymZMat::from_fn(4, |k, l| rat::frac((k as i64) - (l as i64) * 3, (k + l) as i64));
        let s = ScaledMatrix::new(&c);
        for (i, p) in t.perms().iter().enumerate() {
            let direct = c.inner_product(&embed(&p.as_point())).unwrap();
            assert_eq!(s.to_inner(&s.raw_dot(t.perm_row(i))), direct);
        }
        for (i, u) in t.cuts().iter().enumerate() {
            let direct = c.inner_product(&cut_metric(u).unwrap()).unwrap();
            assert_eq!(s.to_inner(&s.raw_dot(t.cut_row(i))), direct);
        }
    }

    #[test]
    fn positions() {
        let t = tables(4);
        let id = Perm::identity(4);
        assert_eq!(t.perm_position(&id), t.perm_position(&id.antipode()));
        let u: Word = "0110".parse().unwrap();
        assert_eq!(t.cuts()[t.cut_position(&u).unwrap()], u.complement());
    }
}
