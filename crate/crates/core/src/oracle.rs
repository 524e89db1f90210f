//! Construction-free edge oracle.
//!
//! The half-line `(π, U)` is an edge iff some `D ∈ S₀(n)` satisfies
//! `D∙(M(σ) − M(π)) ≥ 1` for `σ ∉ {π, π⁻}`, `D∙M(χ^{U'}) ≥ 1` for
//! `U' ∉ {U, ∁U}`, and `D∙M(χ^U) = 0` (the strict system normalized by
//! homogeneity). By Farkas' lemma exactly one of the following holds:
//! such a `D` exists, or a convex combination of the constraint rows is a
//! multiple of `M(χ^U)`. The oracle decides which by an exact phase-1
//! simplex on the second system and re-verifies either witness.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::edge_theory::HalfLinePair;
use crate::error::{Error, Result};
use crate::line_metrics::{cut_metric, embed};
use crate::perm::Perm;
use crate::rat::{self, serde_rat, Rat};
use crate::simplex::{feasibility, Feasibility};
use crate::symmat::SymZMat;
use crate::word::Word;

/// Default largest `n` accepted by the oracle.
pub const DEFAULT_ORACLE_MAX_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weighted<T> {
    pub item: T,
    #[serde(with = "serde_rat")]
    pub weight: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleWitness {
    /// `D` with every constraint value at least `1` and target value `0`.
    Separating(SymZMat),
    /// `Σ w_σ (M(σ) − M(π)) + Σ w_{U'} M(χ^{U'}) = c·M(χ^U)` with
    /// nonnegative weights summing to one.
    Conic {
        perms: Vec<Weighted<Perm>>,
        cuts: Vec<Weighted<Word>>,
        #[serde(with = "serde_rat")]
        target_coefficient: Rat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub pair: HalfLinePair,
    pub is_edge: bool,
    pub witness: OracleWitness,
}

struct System {
    perms: Vec<Perm>,
    cuts: Vec<Word>,
    /// Upper-triangle vectors of the constraint rows, perms first.
    rows: Vec<Vec<Rat>>,
    target: Vec<Rat>,
}

fn build_system(pair: &HalfLinePair) -> Result<System> {
    let n = pair.n();
    let base = embed(&pair.pi.as_point());
    let mut perms = Vec::new();
    let mut rows = Vec::new();
    for sigma in Perm::all_canonical(n) {
        if sigma.same_up_to_antipode(&pair.pi) {
            continue;
        }
        rows.push(embed(&sigma.as_point()).checked_sub(&base)?.upper().to_vec());
        perms.push(sigma);
    }
    let mut cuts = Vec::new();
    for w in Word::all_canonical(n) {
        if w.same_up_to_complement(&pair.u) {
            continue;
        }
        rows.push(cut_metric(&w)?.upper().to_vec());
        cuts.push(w);
    }
    let target = cut_metric(&pair.u)?.upper().to_vec();
    Ok(System { perms, cuts, rows, target })
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn oracle_classify(pair: &HalfLinePair) -> Result<OracleVerdict> {
    oracle_classify_bounded(pair, DEFAULT_ORACLE_MAX_N)
}

pub fn oracle_classify_bounded(pair: &HalfLinePair, max_n: usize) -> Result<OracleVerdict> {
    let n = pair.n();
    if n > max_n {
        return Err(Error::TooLarge { n, bound: max_n });
    }
    pair.u.ensure_proper()?;
    let sys = build_system(pair)?;
    let p = sys.target.len();
    // Columns: (row_i; 1) for each constraint, ±(target; 0); rhs (0; 1).
    let mut columns: Vec<Vec<Rat>> = sys
        .rows
        .iter()
        .map(|r| r.iter().cloned().chain(std::iter::once(rat::int(1))).collect())
        .collect();
    let t_col: Vec<Rat> = sys.target.iter().cloned().chain(std::iter::once(Rat::zero())).collect();
    columns.push(t_col.clone());
    columns.push(t_col.iter().map(|v| -v).collect());
    let mut b = vec![Rat::zero(); p];
    b.push(rat::int(1));

    let verdict = match feasibility(&columns, &b)? {
        Feasibility::Infeasible(lambda) => {
            let norm = &lambda[p];
            if !norm.is_positive() {
                return Err(Error::Solver("dual certificate has a nonpositive normalization".into()));
            }
            let upper: Vec<Rat> = lambda[..p].iter().map(|v| -v / norm).collect();
            let d = SymZMat::from_fn(n, {
                let mut it = upper.into_iter();
                move |_, _| it.next().expect("length matches")
            });
            OracleVerdict { pair: pair.clone(), is_edge: true, witness: OracleWitness::Separating(d) }
        }
        Feasibility::Feasible(x) => {
            let m = sys.rows.len();
            let perms = sys
                .perms
                .iter()
                .zip(&x[..sys.perms.len()])
                .filter(|(_, w)| !w.is_zero())
                .map(|(s, w)| Weighted { item: s.clone(), weight: w.clone() })
                .collect();
            let cuts = sys
                .cuts
                .iter()
                .zip(&x[sys.perms.len()..m])
                .filter(|(_, w)| !w.is_zero())
                .map(|(u, w)| Weighted { item: u.clone(), weight: w.clone() })
                .collect();
            let target_coefficient = &x[m + 1] - &x[m];
            OracleVerdict {
                pair: pair.clone(),
                is_edge: false,
                witness: OracleWitness::Conic { perms, cuts, target_coefficient },
            }
        }
    };
    if !check_witness(&verdict)? {
        return Err(Error::Solver(format!("oracle witness failed re-verification for {pair}")));
    }
    Ok(verdict)
}

/// Exact re-verification of an oracle witness.
pub fn check_witness(verdict: &OracleVerdict) -> Result<bool> {
    let pair = &verdict.pair;
    let n = pair.n();
    match &verdict.witness {
        OracleWitness::Separating(d) => {
            if d.n() != n {
                return Ok(false);
            }
            let sys = build_system(pair)?;
            let one = rat::int(1);
            Ok(dot(&sys.target, d.upper()).is_zero() && sys.rows.iter().all(|r| dot(r, d.upper()) >= one))
        }
        OracleWitness::Conic { perms, cuts, target_coefficient } => {
            let base = embed(&pair.pi.as_point());
            let mut lhs = SymZMat::zeros(n);
            let mut total = Rat::zero();
            for w in perms {
                if w.weight.is_negative() || w.item.same_up_to_antipode(&pair.pi) {
                    return Ok(false);
                }
                lhs = lhs.checked_add(&embed(&w.item.as_point()).checked_sub(&base)?.scaled(&w.weight))?;
                total += &w.weight;
            }
            for w in cuts {
                if w.weight.is_negative() || w.item.same_up_to_complement(&pair.u) {
                    return Ok(false);
                }
                lhs = lhs.checked_add(&cut_metric(&w.item)?.scaled(&w.weight))?;
                total += &w.weight;
            }
            let rhs = cut_metric(&pair.u)?.scaled(target_coefficient);
            Ok(total == rat::int(1) && lhs == rhs)
        }
    }
}
