//! The centered permutahedron `Π` in the hyperplane `Λ = {x : Σ x_k = 0}`:
//! vertices, facets, polar vertices and the normal fan.
//!
//! The vertex `(π(1), …, π(n))` is associated with `π` itself, not with
//! `π⁻¹`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rat::{self, serde_rat, Rat};
use crate::word::Word;

/// `v^π = π − (n+1)/2 · 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermVertex {
    pub pi: Perm,
    #[serde(with = "serde_rat::vec")]
    pub v: Vec<Rat>,
}

/// The vertex of the polar `Π^△` dual to the facet named by `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarVertex {
    pub u: Word,
    #[serde(with = "serde_rat::vec")]
    pub w: Vec<Rat>,
}

pub fn vertex(pi: &Perm) -> PermVertex {
    let shift = rat::frac(pi.n() as i64 + 1, 2);
    let v = pi.images().iter().map(|&p| rat::int(p as i64) - &shift).collect();
    PermVertex { pi: pi.clone(), v }
}

/// Right-hand side `C(|U|+1, 2)` of the facet inequality
/// `Σ_{j∈U} x_j ≥ C(|U|+1, 2)` of the uncentered permutahedron.
pub fn facet_rhs(u: &Word) -> Result<Rat> {
    u.ensure_proper()?;
    Ok(rat::int(rat::binomial(u.count() as u64 + 1, 2) as i64))
}

/// Whether the vertex of `π` lies on the facet of `U`, i.e.
/// `U = {π⁻¹(1), …, π⁻¹(|U|)}`.
pub fn incident(pi: &Perm, u: &Word) -> bool {
    if pi.n() != u.n() || !u.is_proper() {
        return false;
    }
    let k = u.count();
    u.elements().into_iter().all(|j| pi.apply(j) <= k)
}

/// The `k` with `U = π⁻¹([k−1] ∪ {k+1})`, if any.
pub fn over_the_ridge(pi: &Perm, u: &Word) -> Option<usize> {
    if pi.n() != u.n() || !u.is_proper() {
        return None;
    }
    let k = u.count();
    let hits = u.elements().into_iter().all(|j| {
        let p = pi.apply(j);
        p < k || p == k + 1
    });
    hits.then_some(k)
}

fn ensure_in_hyperplane(x: &[Rat]) -> Result<()> {
    let s: Rat = x.iter().sum();
    if s.is_zero() {
        Ok(())
    } else {
        Err(Error::NotInHyperplane(rat::format(&s)))
    }
}

/// Membership in the normal cone
/// `N_π = {x ∈ Λ : x_k ≤ x_l whenever π(k) < π(l)}`.
pub fn in_normal_cone(x: &[Rat], pi: &Perm) -> Result<bool> {
    if x.len() != pi.n() {
        return Err(Error::DimensionMismatch { expected: pi.n(), found: x.len() });
    }
    ensure_in_hyperplane(x)?;
    let order = pi.inverse();
    Ok(order.images().windows(2).all(|w| x[w[0] - 1] <= x[w[1] - 1]))
}

/// `w_U = 2/(n(n−k)) · χ^{∁U} − 2/(kn) · χ^U` with `k = |U|`.
pub fn polar_vertex(u: &Word) -> Result<PolarVertex> {
    u.ensure_proper()?;
    let n = u.n() as i64;
    let k = u.count() as i64;
    let outside = rat::frac(2, n * (n - k));
    let inside = rat::frac(-2, k * n);
    let w = u.bits().iter().map(|&b| if b { inside.clone() } else { outside.clone() }).collect();
    Ok(PolarVertex { u: u.clone(), w })
}

/// The `n − 1` proper subsets incident to `π`: `π⁻¹([k])` for `k ∈ [n−1]`.
pub fn incident_sets(pi: &Perm) -> Vec<Word> {
    let n = pi.n();
    (1..n)
        .map(|k| Word::prefix(n, k).preimage(pi).expect("dimensions agree"))
        .collect()
}

/// The `n − 1` sets over the ridge from `π`: `π⁻¹([k−1] ∪ {k+1})`.
pub fn ridge_sets(pi: &Perm) -> Vec<(usize, Word)> {
    let n = pi.n();
    (1..n)
        .map(|k| {
            let elems = (1..k).chain(std::iter::once(k + 1));
            let w = Word::from_set(n, elems).expect("k + 1 <= n");
            (k, w.preimage(pi).expect("dimensions agree"))
        })
        .collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Polarity check `w_Uᵀ v^π = 1` for an incident pair.
pub fn polarity_holds(pi: &Perm, u: &Word) -> Result<bool> {
    let w = polar_vertex(u)?;
    Ok(dot(&w.w, &vertex(pi).v).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn facet_rhs_values() {
        assert_eq!(facet_rhs(&w("100")).unwrap(), rat::int(1));
        assert_eq!(facet_rhs(&w("1100")).unwrap(), rat::int(3));
        assert_eq!(facet_rhs(&w("11110")).unwrap(), rat::int(10));
        assert!(facet_rhs(&w("000")).is_err());
    }

    #[test]
    fn incidence_at_identity() {
        let id = Perm::identity(3);
        assert!(incident(&id, &w("100")));
        assert!(incident(&id, &w("110")));
        assert!(!incident(&id, &w("010")));
        assert!(!incident(&id, &w("101")));
    }

    #[test]
    fn over_the_ridge_examples() {
        assert_eq!(over_the_ridge(&Perm::identity(3), &w("101")), Some(2));
        assert_eq!(over_the_ridge(&Perm::identity(4), &w("1101")), Some(3));
        assert_eq!(over_the_ridge(&Perm::identity(4), &w("1001")), None);
        assert_eq!(over_the_ridge(&Perm::identity(4), &w("0100")), Some(1));
    }

    #[test]
    fn incidence_and_ridge_counts() {
        for n in 3..=6 {
            for pi in Perm::all(n) {
                let inc = Word::all_proper(n).filter(|u| incident(&pi, u)).count();
                assert_eq!(inc, n - 1);
                let ridge: Vec<Word> =
                    Word::all_proper(n).filter(|u| over_the_ridge(&pi, u).is_some()).collect();
                assert_eq!(ridge.len(), n - 1);
                let expected: Vec<Word> = ridge_sets(&pi).into_iter().map(|(_, u)| u).collect();
                for u in &ridge {
                    assert!(expected.contains(u));
                }
            }
        }
    }

    #[test]
    fn symmetry_transport_of_incidence_and_ridges() {
        for n in 3..=5 {
            let perms: Vec<Perm> = Perm::all(n).collect();
            for pi in &perms {
                for u in Word::all_proper(n) {
                    for sigma in &perms {
                        let pi2 = pi.compose(sigma).unwrap();
                        let u2 = u.preimage(sigma).unwrap();
                        assert_eq!(incident(pi, &u), incident(&pi2, &u2));
                        assert_eq!(
                            over_the_ridge(pi, &u).is_some(),
                            over_the_ridge(&pi2, &u2).is_some()
                        );
                    }
                    assert_eq!(
                        over_the_ridge(pi, &u.complement()).is_some(),
                        over_the_ridge(&pi.antipode(), &u).is_some()
                    );
                }
            }
        }
    }

    #[test]
    fn vertex_attains_facet_bound_iff_incident() {
        for n in 3..=5 {
            for pi in Perm::all(n) {
                for u in Word::all_proper(n) {
                    let lhs: usize = u.elements().iter().map(|&j| pi.apply(j)).sum();
                    let tight = rat::int(lhs as i64) == facet_rhs(&u).unwrap();
                    assert_eq!(tight, incident(&pi, &u), "{pi} {u}");
                }
            }
        }
    }

    #[test]
    fn normal_cone_membership() {
        for pi in Perm::all(4) {
            assert!(in_normal_cone(&vertex(&pi).v, &pi).unwrap());
            assert!(in_normal_cone(&vec![Rat::zero(); 4], &pi).unwrap());
            for u in Word::all_proper(4) {
                let wu = polar_vertex(&u).unwrap().w;
                assert_eq!(in_normal_cone(&wu, &pi).unwrap(), incident(&pi, &u), "{pi} {u}");
            }
        }
        let bad = vec![rat::int(1), rat::int(0), rat::int(0)];
        assert!(matches!(in_normal_cone(&bad, &Perm::identity(3)), Err(Error::NotInHyperplane(_))));
    }

    #[test]
    fn polar_vertices() {
        let pv = polar_vertex(&w("100")).unwrap();
        assert_eq!(pv.w, vec![rat::frac(-2, 3), rat::frac(1, 3), rat::frac(1, 3)]);
        for u in Word::all_proper(5) {
            let a = polar_vertex(&u).unwrap().w;
            let b = polar_vertex(&u.complement()).unwrap().w;
            assert!(a.iter().zip(&b).all(|(x, y)| *x == -y.clone()));
            assert!(a.iter().sum::<Rat>().is_zero());
        }
        assert!(polar_vertex(&w("111")).is_err());
    }

    #[test]
    fn polarity_on_incident_pairs() {
        for pi in Perm::all(4) {
            for u in incident_sets(&pi) {
                assert!(polarity_holds(&pi, &u).unwrap());
            }
        }
    }

    #[test]
    fn vertex_is_centered() {
        let v = vertex(&p("2,4,1,3"));
        assert!(v.v.iter().sum::<Rat>().is_zero());
        assert_eq!(v.v[0], rat::frac(-1, 2));
    }
}
