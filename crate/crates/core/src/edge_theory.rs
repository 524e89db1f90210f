//! Unbounded edges of `cl(Q_n) = P_n + C_n`.
//!
//! A half-line `M(π) + ℝ₊ M(χ^U)` is an edge exactly when neither `U` nor
//! `∁U` is over the ridge from `π`. [`classify`] decides this
//! combinatorially. The verifiers check candidate certificates by exhaustion
//! over `S(n)` and over all proper subsets, and [`non_edge_witness`] produces
//! the exact conic identity that rules a half-line out.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::certificates::BaseName;
use crate::error::{Error, Result};
use crate::exhaust::{self, ScaledMatrix, DEFAULT_MAX_N};
use crate::line_metrics::{cut_metric, embed};
use crate::perm::Perm;
use crate::permutahedron::{incident, over_the_ridge};
use crate::rat::{self, serde_rat, Rat};
use crate::symmat::SymZMat;
use crate::word::Word;

/// The half-line `M(π) + ℝ₊ M(χ^U)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfLinePair {
    pub pi: Perm,
    pub u: Word,
}

impl HalfLinePair {
    pub fn new(pi: Perm, u: Word) -> Result<Self> {
        u.check_dim(pi.n())?;
        u.ensure_proper()?;
        Ok(Self { pi, u })
    }

    pub fn at_identity(u: Word) -> Result<Self> {
        Self::new(Perm::identity(u.n()), u)
    }

    pub fn n(&self) -> usize {
        self.pi.n()
    }

    /// `(π, U)`, `(π, ∁U)`, `(π⁻, U)` and `(π⁻, ∁U)` name the same
    /// half-line; the canonical form picks the canonical permutation and the
    /// word containing `1`.
    pub fn canonical(&self) -> Self {
        Self { pi: self.pi.canonical(), u: self.u.canonical() }
    }

    pub fn same_half_line(&self, other: &HalfLinePair) -> bool {
        self.canonical() == other.canonical()
    }

    /// All canonical pairs for `n`, sorted.
    pub fn all_canonical(n: usize) -> Vec<HalfLinePair> {
        let words: Vec<Word> = Word::all_canonical(n).collect();
        Perm::all_canonical(n)
            .flat_map(|pi| words.iter().map(move |u| HalfLinePair { pi: pi.clone(), u: u.clone() }))
            .collect()
    }
}

impl fmt::Display for HalfLinePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.pi, self.u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RidgeSide {
    /// Over the ridge from `π`.
    Pi,
    /// Over the ridge from `π⁻`.
    Antipode,
}

/// Which certificate family proves an edge, after transport to the
/// identity and normalization of the word to start with `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionTarget {
    /// One slope: the word is incident to `id` or `id⁻`.
    Incident,
    /// Two or three slopes: stretch runs of a tabulated base word.
    Base(BaseName),
    /// Four or more slopes: stretch runs of the alternating word of this length.
    Alternating(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeReason {
    /// `U` or `∁U` is incident to `π`; the half-line bounds a face of the cone at `M(π)`.
    Incident,
    /// Not incident, not over a ridge; certified by the named construction.
    Certified { slopes: usize, target: ReductionTarget },
    /// `U` is over the ridge from `π` or from `π⁻`.
    OverRidge { k: usize, from: RidgeSide },
}

impl fmt::Display for EdgeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeReason::Incident => f.write_str("incident"),
            EdgeReason::Certified { slopes, target } => {
                write!(f, "certified: {slopes} slopes, ")?;
                match target {
                    ReductionTarget::Incident => f.write_str("path matrix"),
                    ReductionTarget::Base(b) => write!(f, "reduce to {b}"),
                    ReductionTarget::Alternating(len) => write!(f, "reduce to alternating n={len}"),
                }
            }
            EdgeReason::OverRidge { k, from } => {
                let side = match from {
                    RidgeSide::Pi => "pi",
                    RidgeSide::Antipode => "pi^-",
                };
                write!(f, "over the ridge: k={k} from {side}")
            }
        }
    }
}

impl Serialize for EdgeReason {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact margins of a certificate: the minimum over `σ ∉ {π, π⁻}` of
/// `D ∙ (M(σ) − M(π))`, the minimum over `U' ∉ {U, ∁U}` of `D ∙ M(χ^{U'})`,
/// and the target value `D ∙ M(χ^U)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Margins {
    #[serde(with = "serde_rat::option")]
    pub perm_min: Option<Rat>,
    #[serde(with = "serde_rat::option")]
    pub cut_min: Option<Rat>,
    #[serde(with = "serde_rat")]
    pub target: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeVerdict {
    pub pair: HalfLinePair,
    pub is_edge: bool,
    pub reason: EdgeReason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margins: Option<Margins>,
}

/// The representative of `{W, ∁W}` starting with `1`, for the pair
/// transported to `π = id`.
pub fn normalized_word_at_identity(pair: &HalfLinePair) -> Result<Word> {
    Ok(pair.u.image(&pair.pi)?.canonical())
}

/// Base word for a word with two slopes, runs `(h1, v, h2)`.
fn two_slope_base(h1: usize, v: usize, h2: usize) -> Option<BaseName> {
    let long_hills = h1 >= 2 && h2 >= 2;
    match (v, long_hills) {
        (1, true) => Some(BaseName::C11011),
        (1, false) => None,
        (_, true) => Some(BaseName::C11011),
        (_, false) => Some(BaseName::C1001),
    }
}

/// Base word for a word with three slopes, runs `(h1, v1, h2, v2)`.
fn three_slope_base(h1: usize, v1: usize, h2: usize, v2: usize) -> Option<BaseName> {
    if v1 == 1 {
        return (h2 >= 2).then_some(BaseName::C10110);
    }
    if h1 == 1 && h2 >= 2 && v2 >= 2 {
        Some(BaseName::C10110)
    } else {
        Some(BaseName::C10010)
    }
}

/// The reduction for a word at the identity that starts with `1` and is not
/// over a ridge; `None` when the tables mark the word as a non-edge.
pub fn reduction_target(word: &Word) -> Option<ReductionTarget> {
    let runs: Vec<usize> = word.runs().iter().map(|&(_, len)| len).collect();
    match runs.len() {
        0 | 1 => None,
        2 => Some(ReductionTarget::Incident),
        3 => two_slope_base(runs[0], runs[1], runs[2]).map(ReductionTarget::Base),
        4 => three_slope_base(runs[0], runs[1], runs[2], runs[3]).map(ReductionTarget::Base),
        len => Some(ReductionTarget::Alternating(len)),
    }
}

/// Decides whether the pair defines an edge, without computing any
/// certificate.
pub fn classify(pair: &HalfLinePair) -> EdgeVerdict {
    let verdict = |is_edge, reason| EdgeVerdict { pair: pair.clone(), is_edge, reason, margins: None };
    if let Some(k) = over_the_ridge(&pair.pi, &pair.u) {
        return verdict(false, EdgeReason::OverRidge { k, from: RidgeSide::Pi });
    }
    if over_the_ridge(&pair.pi, &pair.u.complement()).is_some() {
        let k = over_the_ridge(&pair.pi.antipode(), &pair.u)
            .expect("complement over the ridge from pi means the set is over the ridge from pi^-");
        return verdict(false, EdgeReason::OverRidge { k, from: RidgeSide::Antipode });
    }
    if incident(&pair.pi, &pair.u) || incident(&pair.pi, &pair.u.complement()) {
        return verdict(true, EdgeReason::Incident);
    }
    let word = normalized_word_at_identity(pair).expect("pair dimensions agree");
    let target = reduction_target(&word)
        .expect("every word not over a ridge has a tabulated reduction");
    verdict(true, EdgeReason::Certified { slopes: word.slopes(), target })
}

/// Canonical words `U` (containing `1`) for which `(π, U)` is an edge,
/// in lexicographic order.
pub fn enumerate_edges_at(pi: &Perm) -> Result<Vec<Word>> {
    if pi.n() < 3 {
        return Err(Error::TooSmall(pi.n()));
    }
    Ok(Word::all_canonical(pi.n())
        .filter(|u| classify(&HalfLinePair { pi: pi.clone(), u: u.clone() }).is_edge)
        .collect())
}

/// `2^{n−1} − n`, the number of unbounded edges at a vertex for `n ≥ 4`.
pub fn edge_count_formula(n: usize) -> u64 {
    (1u64 << (n - 1)) - n as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// `D∙M(σ) > D∙M(π)` for `σ ∉ {π, π⁻}`, `D∙M(χ^{U'}) > 0` for
    /// `U' ∉ {U, ∁U}`, and `D∙M(χ^U) = 0`.
    Plain,
    /// `C∙M(σ) ≥ C∙M(π)`, `C∙M(χ^{U'}) ≥ 0`, and `C∙M(χ^U) < 0`.
    Farkas,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Plain => "plain",
            Condition::Farkas => "farkas",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `n` for which `S(n)` is enumerated.
    pub max_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_n: DEFAULT_MAX_N }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pair: HalfLinePair,
    pub condition: Condition,
    pub pass: bool,
    pub margins: Margins,
    /// A permutation attaining `perm_min`.
    pub perm_argmin: Option<Perm>,
    /// A subset attaining `cut_min`.
    pub cut_argmin: Option<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// Exact margins of `d` for the pair, by exhaustion.
///
/// The reference vertex may be any `π`; for `π = id` this is the setting of
/// the edge criteria, and general `π` is the same system transported by
/// conjugation.
pub fn certificate_margins(
    d: &SymZMat,
    pair: &HalfLinePair,
    opts: &VerifyOptions,
) -> Result<(Margins, Option<Perm>, Option<Word>)> {
    let n = pair.n();
    if d.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: d.n() });
    }
    if n > opts.max_n {
        return Err(Error::TooLarge { n, bound: opts.max_n });
    }
    pair.u.ensure_proper()?;
    let t = exhaust::tables(n);
    let s = ScaledMatrix::new(d);
    let base = t.perm_position(&pair.pi).expect("tables cover S(n)");
    let target_pos = t.cut_position(&pair.u).expect("tables cover proper subsets");

    let mut perm_best: Option<(usize, num_bigint::BigInt)> = None;
    if s.has_small() {
        let base_raw = s.raw_dot_small(t.perm_row(base)).expect("small form");
        let mut best: Option<(usize, i128)> = None;
        for i in 0..t.perms().len() {
            if i == base {
                continue;
            }
            let diff = s.raw_dot_small(t.perm_row(i)).expect("small form") - base_raw;
            if best.is_none_or(|(_, b)| diff < b) {
                best = Some((i, diff));
            }
        }
        perm_best = best.map(|(i, v)| (i, v.into()));
    } else {
        let base_raw = s.raw_dot(t.perm_row(base));
        for i in 0..t.perms().len() {
            if i == base {
                continue;
            }
            let diff = s.raw_dot(t.perm_row(i)) - &base_raw;
            if perm_best.as_ref().is_none_or(|(_, b)| diff < *b) {
                perm_best = Some((i, diff));
            }
        }
    }

    let mut cut_best: Option<(usize, num_bigint::BigInt)> = None;
    for i in 0..t.cuts().len() {
        if i == target_pos {
            continue;
        }
        let v = s.raw_dot(t.cut_row(i));
        if cut_best.as_ref().is_none_or(|(_, b)| v < *b) {
            cut_best = Some((i, v));
        }
    }
    let target = s.to_inner(&s.raw_dot(t.cut_row(target_pos)));
    let margins = Margins {
        perm_min: perm_best.as_ref().map(|(_, v)| s.to_inner(v)),
        cut_min: cut_best.as_ref().map(|(_, v)| s.to_inner(v)),
        target,
    };
    let perm_arg = perm_best.map(|(i, _)| t.perms()[i].clone());
    let cut_arg = cut_best.map(|(i, _)| t.cuts()[i].clone());
    Ok((margins, perm_arg, cut_arg))
}

fn judge(condition: Condition, m: &Margins, perm_arg: &Option<Perm>, cut_arg: &Option<Word>) -> Option<String> {
    let strict = condition == Condition::Plain;
    let bad = |v: &Option<Rat>| match v {
        Some(v) => v.is_negative() || (strict && v.is_zero()),
        None => false,
    };
    let show = |v: &Option<Rat>| v.as_ref().map(rat::format).unwrap_or_default();
    if bad(&m.perm_min) {
        let sigma = perm_arg.as_ref().map(ToString::to_string).unwrap_or_default();
        return Some(format!("permutation {sigma} has margin {}", show(&m.perm_min)));
    }
    if bad(&m.cut_min) {
        let u = cut_arg.as_ref().map(ToString::to_string).unwrap_or_default();
        return Some(format!("cut {u} has value {}", show(&m.cut_min)));
    }
    match condition {
        Condition::Plain if !m.target.is_zero() => {
            Some(format!("target value is {}, expected 0", rat::format(&m.target)))
        }
        Condition::Farkas if !m.target.is_negative() => {
            Some(format!("target value is {}, expected < 0", rat::format(&m.target)))
        }
        _ => None,
    }
}

pub fn verify_certificate(
    d: &SymZMat,
    pair: &HalfLinePair,
    condition: Condition,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let (margins, perm_argmin, cut_argmin) = certificate_margins(d, pair, opts)?;
    let failure = judge(condition, &margins, &perm_argmin, &cut_argmin);
    Ok(VerificationReport {
        pair: pair.clone(),
        condition,
        pass: failure.is_none(),
        margins,
        perm_argmin,
        cut_argmin,
        failure,
    })
}

/// Strict system: `D∙M(σ) > D∙M(id)`, `D∙M(χ^{U'}) > D∙M(χ^U) = 0`.
pub fn verify_certificate_plain(d: &SymZMat, pair: &HalfLinePair) -> Result<VerificationReport> {
    verify_certificate(d, pair, Condition::Plain, &VerifyOptions::default())
}

/// Mixed system: `C∙M(σ) ≥ C∙M(id)`, `C∙M(χ^{U'}) ≥ 0`, `C∙M(χ^U) < 0`.
pub fn verify_certificate_farkas(d: &SymZMat, pair: &HalfLinePair) -> Result<VerificationReport> {
    verify_certificate(d, pair, Condition::Farkas, &VerifyOptions::default())
}

/// Lemma-style witness that a half-line is not an edge:
/// `M(χ^S) = M(χ^W) + (M(π') − M(π))` where `S ∈ {U, ∁U}` is over the ridge
/// from `π`, `W = π⁻¹([k])` is incident to `π`, and `π' = ⟨k, k+1⟩ ∘ π` is
/// the neighbouring vertex across that ridge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonEdgeWitness {
    pub pair: HalfLinePair,
    pub k: usize,
    /// The member of `{U, ∁U}` over the ridge from `π`.
    pub ridge_set: Word,
    pub incident_set: Word,
    pub pi_prime: Perm,
    pub verified: bool,
}

impl NonEdgeWitness {
    /// Re-checks the conic identity exactly.
    pub fn check(&self) -> Result<bool> {
        let lhs = cut_metric(&self.ridge_set)?;
        let rhs = cut_metric(&self.incident_set)?
            .checked_add(&embed(&self.pi_prime.as_point()))?
            .checked_sub(&embed(&self.pair.pi.as_point()))?;
        Ok(lhs == rhs && incident(&self.pair.pi, &self.incident_set))
    }

    pub fn identity_text(&self) -> String {
        format!(
            "M(chi^{}) = M(chi^{}) + (M({}) - M({}))",
            self.ridge_set, self.incident_set, self.pi_prime, self.pair.pi
        )
    }
}

pub fn non_edge_witness(pair: &HalfLinePair) -> Result<NonEdgeWitness> {
    let complement = pair.u.complement();
    let (k, ridge_set) = match over_the_ridge(&pair.pi, &pair.u) {
        Some(k) => (k, pair.u.clone()),
        None => match over_the_ridge(&pair.pi, &complement) {
            Some(k) => (k, complement),
            None => {
                return Err(Error::IsAnEdge { pi: pair.pi.to_string(), u: pair.u.to_string() })
            }
        },
    };
    let n = pair.n();
    let tau = Perm::transposition(n, k)?;
    let pi_prime = tau.compose(&pair.pi)?;
    let incident_set = Word::prefix(n, k).preimage(&pair.pi)?;
    let mut w = NonEdgeWitness { pair: pair.clone(), k, ridge_set, incident_set, pi_prime, verified: false };
    w.verified = w.check()?;
    if !w.verified {
        return Err(Error::Solver(format!("conic identity failed for {pair}")));
    }
    Ok(w)
}

/// Transport of a pair to the identity: `(π, U) ↦ (id, π(U))`.
/// A certificate `C` for the transported pair becomes a certificate for the
/// original one as `conjugate(C, σ)` with `σ = π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub sigma: Perm,
    pub at_identity: HalfLinePair,
}

impl Transport {
    pub fn pull_back(&self, certificate_at_identity: &SymZMat) -> Result<SymZMat> {
        certificate_at_identity.conjugate(&self.sigma)
    }

    pub fn push_forward(&self, certificate: &SymZMat) -> Result<SymZMat> {
        certificate.conjugate(&self.sigma.inverse())
    }
}

pub fn symmetry_transport(pair: &HalfLinePair) -> Result<Transport> {
    let u = pair.u.image(&pair.pi)?;
    Ok(Transport {
        sigma: pair.pi.clone(),
        at_identity: HalfLinePair { pi: Perm::identity(pair.n()), u },
    })
}

/// The matrix with ones on the path `(j, j+1)` and `−1` at `(1, n)`.
/// Its minimum over `P_n` is attained only at `M(id) = M(id⁻)`, and it
/// vanishes exactly on the cuts incident to `id`.
pub fn path_matrix(n: usize) -> SymZMat {
    let mut c = SymZMat::zeros(n);
    for j in 1..n {
        c.set(j, j + 1, rat::int(1));
    }
    if n >= 3 {
        c.set(1, n, rat::int(-1));
    }
    c
}

/// The path matrix with entry `(max U_i, max U_i + 1)` raised by one for
/// each listed set `U_i`, which must be incident to `id`. The face it
/// exposes at `M(id)` is spanned by the remaining incident cuts.
pub fn exposing_matrix(n: usize, removed: &[Word]) -> Result<SymZMat> {
    let id = Perm::identity(n);
    let mut c = path_matrix(n);
    for u in removed {
        u.check_dim(n)?;
        if !incident(&id, u) {
            return Err(Error::InvalidWord(format!("{u} is not incident to the identity")));
        }
        let top = u.count();
        c.add_to(top, top + 1, &rat::int(1));
    }
    Ok(c)
}

/// Certificate for a one-slope word at the identity: the exposing matrix
/// removing every other incident set, which satisfies the plain system.
pub fn incident_certificate(word: &Word) -> Result<SymZMat> {
    let n = word.n();
    let target = word.canonical();
    let id = Perm::identity(n);
    if !incident(&id, &target) && !incident(&id, &target.complement()) {
        return Err(Error::InvalidWord(format!("{word} is not incident to the identity")));
    }
    let keep = if incident(&id, &target) { target } else { target.complement() };
    let removed: Vec<Word> = (1..n).map(|k| Word::prefix(n, k)).filter(|w| *w != keep).collect();
    exposing_matrix(n, &removed)
}
