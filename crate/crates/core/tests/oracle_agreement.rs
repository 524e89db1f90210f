use linemetric::edge_theory::{classify, non_edge_witness, HalfLinePair};
use linemetric::oracle::{check_witness, oracle_classify, OracleVerdict, OracleWitness, Weighted};
use linemetric::rat;

fn sweep(n: usize) {
    for hp in HalfLinePair::all_canonical(n) {
        let o = oracle_classify(&hp).unwrap();
        assert_eq!(o.is_edge, classify(&hp).is_edge, "{hp}");
        assert!(check_witness(&o).unwrap());
    }
}

#[test]
fn oracle_agrees_with_classifier_n3_to_n5() {
    for n in 3..=5 {
        sweep(n);
    }
}

#[test]
#[ignore = "several minutes; run with --ignored"]
fn oracle_agrees_with_classifier_n6() {
    sweep(6);
}

#[test]
fn ridge_identity_is_an_oracle_witness() {
    let hp = HalfLinePair::new("1,2,3,4".parse().unwrap(), "1101".parse().unwrap()).unwrap();
    let o = oracle_classify(&hp).unwrap();
    assert!(!o.is_edge);
    assert!(matches!(o.witness, OracleWitness::Conic { .. }));
    // M(chi^U) = M(chi^W) + (M(pi') - M(pi)), halved so the weights sum to one.
    let w = non_edge_witness(&hp).unwrap();
    let half = rat::frac(1, 2);
    let ridge = OracleVerdict {
        pair: hp,
        is_edge: false,
        witness: OracleWitness::Conic {
            perms: vec![Weighted { item: w.pi_prime, weight: half.clone() }],
            cuts: vec![Weighted { item: w.incident_set, weight: half.clone() }],
            target_coefficient: half,
        },
    };
    assert!(check_witness(&ridge).unwrap());
}
