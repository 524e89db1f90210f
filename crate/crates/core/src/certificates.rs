//! Certificates for unbounded edges: the tabulated small-`n` matrices, the
//! run-stretching lift, the induction for alternating words, and a
//! synthesis pipeline producing a verified certificate for any edge pair.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::edge_theory::{
    certificate_margins, classify, incident_certificate, normalized_word_at_identity, path_matrix,
    reduction_target, symmetry_transport, verify_certificate, Condition, HalfLinePair, Margins,
    ReductionTarget, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::exhaust::DEFAULT_MAX_N;
use crate::line_metrics::cut_metric;
use crate::perm::Perm;
use crate::rat::{self, serde_rat, Rat};
use crate::symmat::SymZMat;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseName {
    C1001,
    C11011,
    C10110,
    C10010,
    C10101,
    C101010,
}

impl BaseName {
    pub const ALL: [BaseName; 6] = [
        BaseName::C1001,
        BaseName::C11011,
        BaseName::C10110,
        BaseName::C10010,
        BaseName::C10101,
        BaseName::C101010,
    ];

    pub fn word(self) -> Word {
        self.as_str()[2..].parse().expect("base names carry valid words")
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BaseName::C1001 => "C_1001",
            BaseName::C11011 => "C_11011",
            BaseName::C10110 => "C_10110",
            BaseName::C10010 => "C_10010",
            BaseName::C10101 => "C_10101",
            BaseName::C101010 => "C_101010",
        }
    }
}

impl fmt::Display for BaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaseName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        BaseName::ALL
            .into_iter()
            .find(|b| b.as_str() == key || &b.as_str()[2..] == key || b.as_str().replace('_', "") == key)
            .ok_or_else(|| Error::UnknownCertificate(s.to_string()))
    }
}

impl Serialize for BaseName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for BaseName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCertificate {
    pub name: BaseName,
    pub n: usize,
    pub word: Word,
    pub matrix: SymZMat,
    /// The condition the matrix is tabulated for.
    pub condition: Condition,
}

impl BaseCertificate {
    pub fn pair(&self) -> HalfLinePair {
        HalfLinePair::at_identity(self.word.clone()).expect("base words are proper")
    }
}

/// The tabulated matrices. `C_10110` is printed with `(1,3) = 2` but
/// `(3,1) = −2`; the upper triangle is the reading that certifies.
pub fn base_certificate(name: BaseName) -> BaseCertificate {
    let (rows, condition): (&[&[i64]], Condition) = match name {
        BaseName::C1001 => (
            &[&[0, 1, -2, 1], &[1, 0, 3, -2], &[-2, 3, 0, 1], &[1, -2, 1, 0]],
            Condition::Farkas,
        ),
        BaseName::C11011 => (
            &[
                &[0, 8, -6, -1, -1],
                &[8, 0, 2, 9, -3],
                &[-6, 2, 0, 5, -7],
                &[-1, 9, 5, 0, 11],
                &[-1, -3, -7, 11, 0],
            ],
            Condition::Farkas,
        ),
        BaseName::C10110 => (
            &[
                &[0, 2, 2, 1, -3],
                &[2, 0, 0, -2, 2],
                &[-2, 0, 0, 2, 0],
                &[1, -2, 2, 0, 1],
                &[-3, 2, 0, 1, 0],
            ],
            Condition::Farkas,
        ),
        BaseName::C10010 => (
            &[
                &[0, 2, -2, 2, -2],
                &[2, 0, 4, -3, 1],
                &[-2, 4, 0, 1, 1],
                &[2, -3, 1, 0, 1],
                &[-2, 1, 1, 1, 0],
            ],
            Condition::Farkas,
        ),
        BaseName::C10101 => (
            &[
                &[0, 0, 3, -2, -1],
                &[0, 0, 1, 1, -2],
                &[3, 1, 0, 1, 3],
                &[-2, 1, 1, 0, 0],
                &[-1, -2, 3, 0, 0],
            ],
            Condition::Plain,
        ),
        BaseName::C101010 => (
            &[
                &[0, 0, 1, -1, 0, 0],
                &[0, 0, 1, 1, -2, 0],
                &[1, 1, 0, 1, 3, -2],
                &[-1, 1, 1, 0, 0, 1],
                &[0, -2, 3, 0, 0, 1],
                &[0, 0, -2, 1, 1, 0],
            ],
            Condition::Plain,
        ),
    };
    let matrix = SymZMat::from_upper_rows(rows);
    let word = name.word();
    BaseCertificate { name, n: word.n(), word, matrix, condition }
}

/// Turns a matrix satisfying the Farkas system for `(id, U)` into one
/// satisfying the plain system, when that is possible by adding multiples
/// of the path matrix and the all-ones matrix.
///
/// With `t = −C∙M(χ^U)`, `p = path∙M(χ^U)` and `|U| = k`, the matrix
/// `C + a·path + β·𝟙` with `β = t / (4k(n−k))` and `a = (t − 2βk(n−k)) / p`
/// has target value zero. The all-ones matrix is constant on the
/// permutahedron and positive on every cut; the path matrix is minimized
/// only at `id, id⁻`, so all remaining inequalities become strict.
pub fn to_plain(c: &SymZMat, word: &Word) -> Result<SymZMat> {
    let n = word.n();
    if c.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: c.n() });
    }
    word.ensure_proper()?;
    let chi = cut_metric(word)?;
    let t = -c.inner_product(&chi)?;
    let path = path_matrix(n);
    let p = path.inner_product(&chi)?;
    if !t.is_positive() || !p.is_positive() {
        return Err(Error::InvalidMatrix(format!(
            "conversion needs a negative target and a word not incident to the identity (target {}, path {})",
            rat::format(&-t),
            rat::format(&p)
        )));
    }
    let k = word.count() as i64;
    let size = rat::int(k * (n as i64 - k));
    let beta = &t / (rat::int(4) * &size);
    let a = (&t - &beta * rat::int(2) * &size) / p;
    c.checked_add(&path.scaled(&a))?.checked_add(&SymZMat::all_ones(n).scaled(&beta))
}

/// Turns a plain certificate into a Farkas one by subtracting `δ·𝟙` with
/// `δ = cut_min / n²`; permutation margins are unchanged because `𝟙` is
/// constant on the permutahedron.
pub fn to_farkas(d: &SymZMat, word: &Word, opts: &VerifyOptions) -> Result<SymZMat> {
    let n = word.n();
    let pair = HalfLinePair::at_identity(word.clone())?;
    let (m, _, _) = certificate_margins(d, &pair, opts)?;
    let cut_min = m.cut_min.unwrap_or_else(Rat::one);
    if !cut_min.is_positive() || !m.target.is_zero() {
        return Err(Error::InvalidMatrix("matrix is not a plain certificate".into()));
    }
    let delta = cut_min / rat::int((n * n) as i64);
    d.checked_sub(&SymZMat::all_ones(n).scaled(&delta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftSigns {
    /// `+1` between the first run element and the earlier elements.
    Printed,
    Swapped,
}

impl fmt::Display for LiftSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftSigns::Printed => "printed",
            LiftSigns::Swapped => "swapped",
        })
    }
}

/// Stretch the symbol at `pos` (1-based) of `base_word` to `k + 1` copies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftPlan {
    pub base_word: Word,
    pub pos: usize,
    pub k: usize,
    #[serde(with = "serde_rat")]
    pub omega: Rat,
    #[serde(with = "serde_rat")]
    pub epsilon: Rat,
    pub signs: LiftSigns,
}

impl LiftPlan {
    pub fn new(base_word: Word, pos: usize, k: usize, omega: Rat, epsilon: Rat) -> Self {
        Self { base_word, pos, k, omega, epsilon, signs: LiftSigns::Printed }
    }

    pub fn lifted_word(&self) -> Word {
        self.base_word.stretch(self.pos - 1, self.k)
    }
}

/// `C' = B + ε·Č`.
///
/// `B` puts `ω` on the path through the stretched run and `±1` between the
/// ends of the run and the elements before and after it. `Č` is the base
/// matrix with the old run element split into the first run element (for
/// entries towards earlier elements) and the last one (towards later
/// elements); entries inside the run are zero.
pub fn lift(base: &SymZMat, plan: &LiftPlan) -> Result<SymZMat> {
    let n = plan.base_word.n();
    if base.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: base.n() });
    }
    if plan.pos == 0 || plan.pos > n {
        return Err(Error::MalformedPlan(format!("position {} outside the word {}", plan.pos, plan.base_word)));
    }
    if plan.k == 0 {
        return Ok(base.clone());
    }
    if !plan.epsilon.is_positive() || plan.omega < Rat::one() {
        return Err(Error::MalformedPlan("need omega >= 1 and epsilon > 0".into()));
    }
    let k = plan.k;
    let big = n + k;
    // 1-based indices in the lifted word.
    let first = plan.pos;
    let last = plan.pos + k;
    let sign = match plan.signs {
        LiftSigns::Printed => Rat::one(),
        LiftSigns::Swapped => -Rat::one(),
    };
    let mut out = SymZMat::zeros(big);
    for j in first..last {
        out.set(j, j + 1, plan.omega.clone());
    }
    for i in 1..first {
        out.set(i, first, sign.clone());
        out.set(i, last, -sign.clone());
    }
    for i in last + 1..=big {
        out.set(first, i, -sign.clone());
        out.set(last, i, sign.clone());
    }
    let shift = |i: usize| if i < plan.pos { i } else { i + k };
    for i in 1..=n {
        for j in i + 1..=n {
            let (ni, nj) = if i == plan.pos {
                (last, shift(j))
            } else if j == plan.pos {
                (i, first)
            } else {
                (shift(i), shift(j))
            };
            let v = base.get(i, j) * &plan.epsilon;
            if !v.is_zero() {
                out.add_to(ni, nj, &v);
            }
        }
    }
    Ok(out)
}

/// Plain certificate for the alternating word of length `n ≥ 7`, starting
/// with `1`: the certificate for `n − 2` padded by two trailing zeros plus
/// the converted base for `5` or `6` padded in front.
pub fn induct_alternating(n: usize) -> Result<SymZMat> {
    if n < 7 {
        return Err(Error::TooSmall(n));
    }
    let start = if n % 2 == 1 { 5 } else { 6 };
    let base = plain_alternating_base(start)?;
    let mut d = base.clone();
    let mut m = start;
    while m < n {
        d = d.padded(0, 2).checked_add(&base.padded(m + 2 - start, 0))?;
        m += 2;
    }
    Ok(d)
}

/// `C_10101` or `C_101010` converted to the plain system.
pub fn plain_alternating_base(n: usize) -> Result<SymZMat> {
    let name = match n {
        5 => BaseName::C10101,
        6 => BaseName::C101010,
        _ => return Err(Error::UnknownCertificate(format!("no alternating base for n={n}"))),
    };
    let b = base_certificate(name);
    to_plain(&b.matrix, &b.word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub max_n: usize,
    /// Largest exponent tried in the `ω = 2^i, ε = 2^{−i}` search.
    pub search_cap: u32,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self { max_n: DEFAULT_MAX_N, search_cap: 40 }
    }
}

impl SynthesisOptions {
    fn verify(&self) -> VerifyOptions {
        VerifyOptions { max_n: self.max_n }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCertificate {
    pub pair: HalfLinePair,
    pub matrix: SymZMat,
    pub condition: Condition,
    #[serde(with = "serde_rat::option", default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Rat>,
    #[serde(with = "serde_rat::option", default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rat>,
    pub construction: Vec<String>,
    pub margins: Margins,
}

impl EdgeCertificate {
    /// Re-runs the exhaustive verifier for the recorded condition.
    pub fn recheck(&self, opts: &VerifyOptions) -> Result<bool> {
        Ok(verify_certificate(&self.matrix, &self.pair, self.condition, opts)?.pass)
    }
}

/// A certificate at the identity for a normalized word.
#[derive(Clone, Debug)]
struct IdentityCertificate {
    matrix: SymZMat,
    condition: Condition,
    omega: Option<Rat>,
    epsilon: Option<Rat>,
    construction: Vec<String>,
}

/// Synthesizes certificates, caching the identity-level result per
/// normalized word so that all pairs in one orbit share the work.
#[derive(Debug, Default)]
pub struct Synthesizer {
    opts: SynthesisOptions,
    cache: Mutex<HashMap<Word, IdentityCertificate>>,
}

impl Synthesizer {
    pub fn new(opts: SynthesisOptions) -> Self {
        Self { opts, cache: Mutex::new(HashMap::new()) }
    }

    pub fn options(&self) -> &SynthesisOptions {
        &self.opts
    }

    pub fn synthesize(&self, pair: &HalfLinePair) -> Result<EdgeCertificate> {
        let n = pair.n();
        if n > self.opts.max_n {
            return Err(Error::TooLarge { n, bound: self.opts.max_n });
        }
        if !classify(pair).is_edge {
            return Err(Error::NotAnEdge { pi: pair.pi.to_string(), u: pair.u.to_string() });
        }
        let transport = symmetry_transport(pair)?;
        let word = normalized_word_at_identity(pair)?;
        let cached = self.cache.lock().expect("cache lock").get(&word).cloned();
        let at_id = match cached {
            Some(c) => c,
            None => {
                let c = self.at_identity(&word)?;
                self.cache.lock().expect("cache lock").insert(word.clone(), c.clone());
                c
            }
        };
        let mut construction = at_id.construction.clone();
        let matrix = if transport.sigma.is_identity() {
            at_id.matrix.clone()
        } else {
            construction.push(format!("conjugate:sigma={}", transport.sigma));
            transport.pull_back(&at_id.matrix)?
        };
        let report = verify_certificate(&matrix, pair, at_id.condition, &self.opts.verify())?;
        if !report.pass {
            return Err(Error::Solver(format!(
                "transported certificate failed for {pair}: {}",
                report.failure.unwrap_or_default()
            )));
        }
        Ok(EdgeCertificate {
            pair: pair.clone(),
            matrix,
            condition: at_id.condition,
            omega: at_id.omega,
            epsilon: at_id.epsilon,
            construction,
            margins: report.margins,
        })
    }

    fn at_identity(&self, word: &Word) -> Result<IdentityCertificate> {
        let n = word.n();
        let vopts = self.opts.verify();
        let target = reduction_target(word)
            .ok_or_else(|| Error::NotAnEdge { pi: Perm::identity(n).to_string(), u: word.to_string() })?;
        let (mut matrix, mut current, mut construction) = match target {
            ReductionTarget::Incident => {
                let c = incident_certificate(word)?;
                return Ok(IdentityCertificate {
                    matrix: c,
                    condition: Condition::Plain,
                    omega: None,
                    epsilon: None,
                    construction: vec!["path:exposing".into()],
                });
            }
            ReductionTarget::Base(name) => {
                let b = base_certificate(name);
                (b.matrix, b.word, vec![format!("base:{name}")])
            }
            ReductionTarget::Alternating(len) if len <= 6 => {
                let name = if len == 5 { BaseName::C10101 } else { BaseName::C101010 };
                let b = base_certificate(name);
                (b.matrix, b.word, vec![format!("base:{name}")])
            }
            ReductionTarget::Alternating(len) => {
                let alt = Word::alternating(len);
                let d = induct_alternating(len)?;
                let c = to_farkas(&d, &alt, &vopts)?;
                (c, alt, vec![format!("induct:n={len}"), "farkas:shift".into()])
            }
        };
        let wanted: Vec<usize> = word.runs().iter().map(|&(_, l)| l).collect();
        let mut omega = None;
        let mut epsilon = None;
        for (r, &want) in wanted.iter().enumerate() {
            let have: Vec<usize> = current.runs().iter().map(|&(_, l)| l).collect();
            if have.len() != wanted.len() || have[r] > want {
                return Err(Error::MalformedPlan(format!("{current} cannot be stretched to {word}")));
            }
            if have[r] == want {
                continue;
            }
            let pos = 1 + have[..r].iter().sum::<usize>();
            let (lifted, plan) = find_lift(&matrix, &current, pos, want - have[r], self.opts.search_cap, &vopts)?;
            construction.push(format!(
                "lift:pos={},k={},omega={},epsilon={},signs={}",
                plan.pos,
                plan.k,
                rat::format(&plan.omega),
                rat::format(&plan.epsilon),
                plan.signs
            ));
            current = plan.lifted_word();
            omega = Some(plan.omega);
            epsilon = Some(plan.epsilon);
            matrix = lifted;
        }
        debug_assert_eq!(&current, word);
        let condition = Condition::Farkas;
        let pair = HalfLinePair::at_identity(word.clone())?;
        let report = verify_certificate(&matrix, &pair, condition, &vopts)?;
        if !report.pass {
            return Err(Error::Solver(format!(
                "certificate for {word} failed: {}",
                report.failure.unwrap_or_default()
            )));
        }
        Ok(IdentityCertificate { matrix, condition, omega, epsilon, construction })
    }
}

/// Doubles `ω` and halves `ε` until the lifted matrix verifies, first
/// with the printed block signs, then with the swapped ones.
pub fn find_lift(
    base: &SymZMat,
    word: &Word,
    pos: usize,
    k: usize,
    search_cap: u32,
    vopts: &VerifyOptions,
) -> Result<(SymZMat, LiftPlan)> {
    let mut last: Option<Margins> = None;
    for signs in [LiftSigns::Printed, LiftSigns::Swapped] {
        let mut omega = Rat::one();
        let mut epsilon = Rat::one();
        for _ in 0..=search_cap {
            let plan = LiftPlan {
                base_word: word.clone(),
                pos,
                k,
                omega: omega.clone(),
                epsilon: epsilon.clone(),
                signs,
            };
            let lifted = lift(base, &plan)?;
            let pair = HalfLinePair::at_identity(plan.lifted_word())?;
            let report = verify_certificate(&lifted, &pair, Condition::Farkas, vopts)?;
            if report.pass {
                return Ok((lifted, plan));
            }
            last = Some(report.margins);
            omega *= rat::int(2);
            epsilon /= rat::int(2);
        }
    }
    let detail = last
        .map(|m| {
            format!(
                "lifting {word} at {pos} by {k}: perm_min {}, cut_min {}, target {}",
                m.perm_min.as_ref().map(rat::format).unwrap_or_default(),
                m.cut_min.as_ref().map(rat::format).unwrap_or_default(),
                rat::format(&m.target)
            )
        })
        .unwrap_or_default();
    Err(Error::SearchExhausted { iterations: search_cap, detail })
}

/// One-shot synthesis with default options.
pub fn synthesize(pair: &HalfLinePair) -> Result<EdgeCertificate> {
    Synthesizer::new(SynthesisOptions::default()).synthesize(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_theory::{verify_certificate_farkas, verify_certificate_plain};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn at_id(s: &str) -> HalfLinePair {
        HalfLinePair::at_identity(w(s)).unwrap()
    }

    #[test]
    fn table_entries() {
        let c = base_certificate(BaseName::C1001).matrix;
        assert_eq!(c.get(2, 3), rat::int(3));
        assert_eq!(c.get(3, 1), rat::int(-2));
        let c = base_certificate(BaseName::C10101).matrix;
        let row: Vec<Rat> = (1..=5).map(|l| c.get(1, l)).collect();
        assert_eq!(row, [0, 0, 3, -2, -1].map(rat::int).to_vec());
        let c = base_certificate(BaseName::C101010).matrix;
        let row: Vec<Rat> = (1..=6).map(|l| c.get(1, l)).collect();
        assert_eq!(row, [0, 0, 1, -1, 0, 0].map(rat::int).to_vec());
        assert!("C_9999".parse::<BaseName>().is_err());
        assert_eq!("10110".parse::<BaseName>().unwrap(), BaseName::C10110);
    }

    #[test]
    fn farkas_bases_verify() {
        let expected = [
            (BaseName::C1001, -4),
            (BaseName::C11011, -12),
            (BaseName::C10110, -4),
            (BaseName::C10010, -6),
        ];
        for (name, target) in expected {
            let b = base_certificate(name);
            let r = verify_certificate_farkas(&b.matrix, &b.pair()).unwrap();
            assert!(r.pass, "{name}: {r:?}");
            assert_eq!(r.margins.target, rat::int(target));
            assert_eq!(r.margins.perm_min, Some(Rat::zero()));
            assert_eq!(r.margins.cut_min, Some(Rat::zero()));
        }
    }

    #[test]
    fn alternating_bases_are_farkas_not_plain() {
        for name in [BaseName::C10101, BaseName::C101010] {
            let b = base_certificate(name);
            let plain = verify_certificate_plain(&b.matrix, &b.pair()).unwrap();
            assert!(!plain.pass);
            assert_eq!(plain.margins.target, rat::int(-4));
            assert!(verify_certificate_farkas(&b.matrix, &b.pair()).unwrap().pass);
        }
    }

    #[test]
    fn lower_triangle_reading_of_c10110_fails() {
        let b = base_certificate(BaseName::C10110);
        let mut lower = b.matrix.clone();
        lower.set(1, 3, rat::int(-2));
        assert!(!verify_certificate_farkas(&lower, &b.pair()).unwrap().pass);
    }

    #[test]
    fn plain_conversion() {
        let p5 = plain_alternating_base(5).unwrap();
        let r = verify_certificate_plain(&p5, &at_id("10101")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.margins.perm_min, Some(rat::int(1)));
        assert_eq!(r.margins.cut_min, Some(rat::frac(4, 3)));
        let p6 = plain_alternating_base(6).unwrap();
        let r = verify_certificate_plain(&p6, &at_id("101010")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.margins.cut_min, Some(rat::frac(10, 9)));
        assert!(to_plain(&SymZMat::zeros(5), &w("10101")).is_err());
    }

    #[test]
    fn farkas_conversion() {
        let p5 = plain_alternating_base(5).unwrap();
        let c = to_farkas(&p5, &w("10101"), &VerifyOptions::default()).unwrap();
        assert!(verify_certificate_farkas(&c, &at_id("10101")).unwrap().pass);
    }

    #[test]
    fn induction() {
        assert!(matches!(induct_alternating(5), Err(Error::TooSmall(5))));
        for n in [7, 8] {
            let d = induct_alternating(n).unwrap();
            let r = verify_certificate_plain(&d, &at_id(&Word::alternating(n).to_string())).unwrap();
            assert!(r.pass, "n={n}: {r:?}");
        }
    }

    #[test]
    fn zero_lift_is_identity() {
        let c = base_certificate(BaseName::C1001).matrix;
        let plan = LiftPlan::new(w("1001"), 1, 0, rat::int(1), rat::int(1));
        assert_eq!(lift(&c, &plan).unwrap(), c);
        let bad = LiftPlan::new(w("1001"), 5, 1, rat::int(1), rat::int(1));
        assert!(matches!(lift(&c, &bad), Err(Error::MalformedPlan(_))));
    }

    #[test]
    fn lift_shape() {
        let c = base_certificate(BaseName::C1001).matrix;
        let plan = LiftPlan::new(w("1001"), 1, 1, rat::int(4), rat::frac(1, 4));
        let l = lift(&c, &plan).unwrap();
        assert_eq!(plan.lifted_word(), w("11001"));
        assert_eq!(l.get(1, 2), rat::int(4));
        // Entries from the old first element to later ones move to element 2.
        assert_eq!(l.get(2, 3), rat::frac(5, 4));
        assert_eq!(l.get(1, 3), rat::int(-1));
        assert_eq!(l.get(3, 4), rat::frac(3, 4));
    }

    #[test]
    fn lifts_of_c1001() {
        let c = base_certificate(BaseName::C1001).matrix;
        for (pos, k, target) in [(1, 1, "11001"), (4, 1, "10011"), (1, 2, "111001"), (2, 1, "10001")] {
            let mut found = false;
            for i in 0..8 {
                let plan = LiftPlan::new(
                    w("1001"),
                    pos,
                    k,
                    rat::int(1 << i),
                    rat::frac(1, 1 << i),
                );
                assert_eq!(plan.lifted_word(), w(target));
                let l = lift(&c, &plan).unwrap();
                if verify_certificate_farkas(&l, &at_id(target)).unwrap().pass {
                    found = true;
                    break;
                }
            }
            assert!(found, "{target}");
        }
    }

    #[test]
    fn synthesis_examples() {
        let c = synthesize(&at_id("1001")).unwrap();
        assert_eq!(c.matrix, base_certificate(BaseName::C1001).matrix);
        assert_eq!(c.construction, vec!["base:C_1001".to_string()]);
        let c = synthesize(&at_id("11001")).unwrap();
        assert!(c.construction[1].starts_with("lift:pos=1,k=1"));
        assert!(c.omega.is_some());
        assert!(matches!(synthesize(&at_id("1101")), Err(Error::NotAnEdge { .. })));
    }

    #[test]
    fn synthesis_transport() {
        let s = Synthesizer::new(SynthesisOptions::default());
        let target = w("10010");
        for sigma in Perm::all(5) {
            let pair = HalfLinePair::new(sigma.clone(), target.preimage(&sigma).unwrap()).unwrap();
            let c = s.synthesize(&pair).unwrap();
            assert!(c.recheck(&VerifyOptions::default()).unwrap());
        }
    }

    #[test]
    fn synthesis_total_small() {
        let s = Synthesizer::new(SynthesisOptions::default());
        for n in 3..=6 {
            let id = Perm::identity(n);
            for u in Word::all_proper(n) {
                let pair = HalfLinePair::new(id.clone(), u).unwrap();
                if classify(&pair).is_edge {
                    s.synthesize(&pair).unwrap();
                }
            }
        }
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = synthesize(&at_id("11001")).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: EdgeCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["condition"], "farkas");
        assert!(v["margins"]["target"].is_string());
    }
}
