//! The map `M(x) = (|x_k − x_l|)_{k,l}`, cut semimetrics, and membership in
//! the line-embeddable metrics `E_n = M(Λ)` and the separated ones
//! `E_n^b = M(R_n)` with `R_n = {x ∈ Λ : |x_k − x_l| ≥ 1 for k ≠ l}`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::perm::Perm;
use crate::permutahedron::{in_normal_cone, vertex};
use crate::rat::{self, serde_rat, Rat};
use crate::symmat::SymZMat;
use crate::word::Word;

/// A metric together with what is known about its line embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineMetric {
    pub m: SymZMat,
    /// Some `x ∈ Λ` with `M(x) = m`, when `m ∈ E_n`.
    #[serde(with = "serde_rat::option_vec")]
    pub witness: Option<Vec<Rat>>,
    /// Canonical `π` of the cone `M(π) + M(N_π)` containing `m`, when `m ∈ E_n^b`.
    pub separated: Option<Perm>,
}

impl LineMetric {
    pub fn analyze(m: SymZMat) -> Self {
        match separated_membership(&m) {
            Some((pi, x)) => Self { m, witness: Some(x), separated: Some(pi) },
            None => {
                let witness = recover_embedding(&m);
                Self { m, witness, separated: None }
            }
        }
    }
}

pub fn embed(x: &[Rat]) -> SymZMat {
    SymZMat::from_fn(x.len(), |k, l| (&x[k - 1] - &x[l - 1]).abs())
}

/// `M(χ^U)`: one across the bipartition `(U, ∁U)`, zero within a side.
pub fn cut_metric(u: &Word) -> Result<SymZMat> {
    u.ensure_proper()?;
    Ok(embed(&u.indicator()))
}

/// Projection onto `Λ` by subtracting the mean.
pub fn center(x: &[Rat]) -> Vec<Rat> {
    if x.is_empty() {
        return Vec::new();
    }
    let mean: Rat = x.iter().sum::<Rat>() / rat::int(x.len() as i64);
    x.iter().map(|v| v - &mean).collect()
}

/// The unique-up-to-sign `x ∈ Λ` with `M(x) = m`, if `m ∈ E_n`.
///
/// The sign is fixed so that `x_1 < x_l` for the first `l` with
/// `x_l ≠ x_1`.
pub fn recover_embedding(m: &SymZMat) -> Option<Vec<Rat>> {
    let n = m.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut x = vec![Rat::zero(); n];
    let anchor = (2..=n).find(|&l| !m.get(1, l).is_zero());
    if let Some(j) = anchor {
        x[j - 1] = m.get(1, j);
        for l in 2..=n {
            if l == j {
                continue;
            }
            let a = m.get(1, l);
            if a.is_zero() {
                continue;
            }
            let target = m.get(j, l);
            if (&a - &x[j - 1]).abs() == target {
                x[l - 1] = a;
            } else if (-&a - &x[j - 1]).abs() == target {
                x[l - 1] = -a;
            } else {
                return None;
            }
        }
    }
    if embed(&x) != *m {
        return None;
    }
    let mut x = center(&x);
    if let Some(l) = (1..n).find(|&l| x[l] != x[0]) {
        if x[l] < x[0] {
            x.iter_mut().for_each(|v| *v = -v.clone());
        }
    }
    Some(x)
}

/// `x ∈ R_n`: pairwise gaps of at least one (sum-zero is not checked).
pub fn is_separated(x: &[Rat]) -> bool {
    let mut sorted = x.to_vec();
    sorted.sort();
    sorted.windows(2).all(|w| &w[1] - &w[0] >= Rat::one())
}

/// The permutation ranking the coordinates of `x`, when they are distinct.
pub fn ordering_perm(x: &[Rat]) -> Option<Perm> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].cmp(&x[b]));
    if idx.windows(2).any(|w| x[w[0]] == x[w[1]]) {
        return None;
    }
    let mut images = vec![0; x.len()];
    for (rank, &i) in idx.iter().enumerate() {
        images[i] = rank + 1;
    }
    Perm::new(images).ok()
}

/// If `m ∈ E_n^b`, the canonical `π` of the antipodal pair whose cone
/// `M(π) + M(N_π)` contains `m`, with the point `x ∈ R_n ∩ N_π`,
/// `M(x) = m`.
pub fn separated_membership(m: &SymZMat) -> Option<(Perm, Vec<Rat>)> {
    let x = recover_embedding(m)?;
    if !is_separated(&x) {
        return None;
    }
    let pi = ordering_perm(&x)?;
    if pi.is_canonical() {
        Some((pi, x))
    } else {
        Some((pi.antipode(), x.iter().map(|v| -v.clone()).collect()))
    }
}

/// Whether `m` lies in the translated cone `M(π) + M(N_π)`.
pub fn in_separated_cone(m: &SymZMat, pi: &Perm) -> bool {
    if m.n() != pi.n() {
        return false;
    }
    let Some(x) = recover_embedding(m) else {
        return false;
    };
    let v = vertex(pi).v;
    let neg: Vec<Rat> = x.iter().map(|a| -a.clone()).collect();
    [x, neg].iter().any(|cand| {
        let shifted: Vec<Rat> = cand.iter().zip(&v).map(|(a, b)| a - b).collect();
        in_normal_cone(&shifted, pi).unwrap_or(false)
    })
}

/// Checks `(x ∈ R_n and x ∈ N_π) ⇔ (x − v^π ∈ N_π)` for one point.
pub fn decomposition_cone_check(x: &[Rat], pi: &Perm) -> Result<bool> {
    let in_cone = in_normal_cone(x, pi)?;
    let left = in_cone && is_separated(x);
    let v = vertex(pi).v;
    let shifted: Vec<Rat> = x.iter().zip(&v).map(|(a, b)| a - b).collect();
    let right = in_normal_cone(&shifted, pi)?;
    Ok(left == right)
}

/// A violated spreading inequality `Σ_{j∈S} m[i,j] ≥ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadingViolation {
    pub i: usize,
    pub set: Vec<usize>,
    #[serde(with = "serde_rat")]
    pub lhs: Rat,
    #[serde(with = "serde_rat")]
    pub bound: Rat,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadingReport {
    /// Violations of `⌊(|S|+1)²/4⌋`.
    pub violations: Vec<SpreadingViolation>,
    /// Violations of the weaker `|S|(|S|+2)/4`.
    pub weak_violations: Vec<SpreadingViolation>,
    pub checked: usize,
}

impl SpreadingReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.weak_violations.is_empty()
    }
}

/// Checks every `i ∈ [n]` and nonempty `S ⊆ [n] \ {i}`.
pub fn spreading_check(m: &SymZMat) -> SpreadingReport {
    let n = m.n();
    let mut report = SpreadingReport::default();
    if n < 2 {
        return report;
    }
    for i in 1..=n {
        let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
        for mask in 1u64..(1u64 << others.len()) {
            let set: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &j)| j)
                .collect();
            let s = set.len() as i64;
            let lhs: Rat = set.iter().map(|&j| m.get(i, j)).sum();
            let strong = rat::int((s + 1) * (s + 1) / 4);
            let weak = rat::frac(s * (s + 2), 4);
            report.checked += 1;
            if lhs < strong {
                report.violations.push(SpreadingViolation {
                    i,
                    set: set.clone(),
                    lhs: lhs.clone(),
                    bound: strong,
                });
            }
            if lhs < weak {
                report.weak_violations.push(SpreadingViolation { i, set, lhs, bound: weak });
            }
        }
    }
    report
}

/// `2·C(n+1, 3)`, the value of `𝟙 ∙ M(π)` for every permutation.
pub fn permutation_level(n: usize) -> Rat {
    rat::int(2 * rat::binomial(n as u64 + 1, 3) as i64)
}

/// `𝟙_n ∙ m − 2·C(n+1, 3)`: zero on `P_n`, nonnegative on `Q_n`.
pub fn qn_facet_value(m: &SymZMat) -> Rat {
    let ones = SymZMat::all_ones(m.n());
    ones.inner_product(m).expect("same dimension") - permutation_level(m.n())
}

/// First entry `(k, l)` below one, witnessing `m ∉ E_n^b` for `m ∈ E_n`.
pub fn first_short_entry(m: &SymZMat) -> Option<(usize, usize, Rat)> {
    let n = m.n();
    for k in 1..=n {
        for l in k + 1..=n {
            let v = m.get(k, l);
            if v < Rat::one() {
                return Some((k, l, v));
            }
        }
    }
    None
}
