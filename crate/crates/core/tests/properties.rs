use linemetric::line_metrics::{
    cut_metric, decomposition_cone_check, embed, recover_embedding, separated_membership, spreading_check,
};
use linemetric::permutahedron::{in_normal_cone, incident, over_the_ridge};
use linemetric::rat::{self, Rat};
use linemetric::{Perm, SymZMat, Word};
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=7).prop_map(|(p, q)| rat::frac(p, q))
}

fn point_and_perm() -> impl Strategy<Value = (Vec<Rat>, Perm)> {
    (2usize..=6).prop_flat_map(|n| (prop::collection::vec(rat_strategy(), n), perm_strategy(n)))
}

fn proper_word(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), n)
        .prop_filter("proper", |b| b.iter().any(|&x| x) && b.iter().any(|&x| !x))
        .prop_map(Word::from_bits)
}

proptest! {
    #[test]
    fn conjugation_composes((x, sigma) in point_and_perm()) {
        let composed: Vec<Rat> = (1..=x.len()).map(|k| x[sigma.apply(k) - 1].clone()).collect();
        prop_assert_eq!(embed(&x).conjugate(&sigma).unwrap(), embed(&composed));
    }

    #[test]
    fn perm_group_laws(a in perm_strategy(6), b in perm_strategy(6)) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.compose(&b.inverse()).unwrap(), a.clone());
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.antipode().antipode(), a.clone());
        prop_assert!(a.canonical().same_up_to_antipode(&a));
        prop_assert_eq!(a.to_string().parse::<Perm>().unwrap(), a);
    }

    #[test]
    fn translation_and_recovery((x, _) in point_and_perm(), shift in rat_strategy()) {
        let mean: Rat = x.iter().sum::<Rat>() / rat::int(x.len() as i64);
        let centered: Vec<Rat> = x.iter().map(|v| v - &mean).collect();
        let shifted: Vec<Rat> = x.iter().map(|v| v + &shift).collect();
        prop_assert_eq!(embed(&shifted), embed(&x));
        let rec = recover_embedding(&embed(&x)).unwrap();
        let neg: Vec<Rat> = centered.iter().map(|v| -v.clone()).collect();
        prop_assert!(rec == centered || rec == neg);
    }

    #[test]
    fn lemma_set_equality((x, pi) in point_and_perm()) {
        let mean: Rat = x.iter().sum::<Rat>() / rat::int(x.len() as i64);
        let centered: Vec<Rat> = x.iter().map(|v| v - &mean).collect();
        prop_assert!(decomposition_cone_check(&centered, &pi).unwrap());
    }

    #[test]
    fn separated_points_are_members(pi in (2usize..=7).prop_flat_map(perm_strategy),
                                    gaps in prop::collection::vec((0i64..=9, 1i64..=3), 6)) {
        let n = pi.n();
        let mut sorted = vec![Rat::from_integer(0.into())];
        for (p, q) in gaps.iter().take(n - 1) {
            let next = sorted.last().unwrap() + rat::int(1) + rat::frac(*p, *q);
            sorted.push(next);
        }
        let x: Vec<Rat> = (1..=n).map(|j| sorted[pi.apply(j) - 1].clone()).collect();
        let m = embed(&x);
        let (found, y) = separated_membership(&m).unwrap();
        prop_assert!(found.same_up_to_antipode(&pi));
        prop_assert_eq!(embed(&y), m.clone());
        let vertex_shift: Vec<Rat> = y.clone();
        prop_assert!(in_normal_cone(&vertex_shift, &found).unwrap());
        prop_assert!(spreading_check(&m).violations.is_empty());
    }

    #[test]
    fn ridge_and_incidence_exclusive(pi in perm_strategy(6), u in proper_word(6)) {
        prop_assert!(!(incident(&pi, &u) && over_the_ridge(&pi, &u).is_some()));
        let moved = u.image(&pi).unwrap();
        prop_assert_eq!(incident(&pi, &u), incident(&Perm::identity(6), &moved));
        prop_assert_eq!(over_the_ridge(&pi, &u), over_the_ridge(&Perm::identity(6), &moved));
    }

    #[test]
    fn cut_metric_of_complement(u in proper_word(7)) {
        prop_assert_eq!(cut_metric(&u).unwrap(), cut_metric(&u.complement()).unwrap());
        prop_assert_eq!(u.to_string().parse::<Word>().unwrap(), u.clone());
    }

    #[test]
    fn matrix_json_round_trip(entries in prop::collection::vec(rat_strategy(), 10)) {
        let mut it = entries.into_iter();
        let m = SymZMat::from_fn(5, |_, _| it.next().unwrap());
        let text = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<SymZMat>(&text).unwrap(), m);
    }

    #[test]
    fn rational_text_round_trip(r in rat_strategy()) {
        prop_assert_eq!(rat::parse(&rat::format(&r)).unwrap(), r);
    }
}
