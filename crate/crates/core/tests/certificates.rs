use linemetric::certificates::{
    base_certificate, find_lift, lift, synthesize, BaseName, EdgeCertificate, LiftPlan, LiftSigns,
    SynthesisOptions, Synthesizer,
};
use linemetric::edge_theory::{
    classify, verify_certificate, verify_certificate_farkas, Condition, HalfLinePair, VerifyOptions,
};
use linemetric::rat;
use linemetric::{Perm, Word};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn one_lift_from_every_base_verifies() {
    let opts = VerifyOptions::default();
    for name in BaseName::ALL {
        let b = base_certificate(name);
        let n = b.n;
        for pos in 1..=n {
            for k in 1..=(7 - n) {
                let lifted_word = b.word.stretch(pos - 1, k);
                assert!(classify(&HalfLinePair::at_identity(lifted_word.clone()).unwrap()).is_edge);
                let (c, plan) = find_lift(&b.matrix, &b.word, pos, k, 12, &opts)
                    .unwrap_or_else(|e| panic!("{name} pos={pos} k={k}: {e}"));
                assert_eq!(plan.lifted_word(), lifted_word);
                assert_eq!(plan.signs, LiftSigns::Printed, "{name} pos={pos} k={k}");
                let r = verify_certificate_farkas(&c, &HalfLinePair::at_identity(lifted_word).unwrap()).unwrap();
                assert!(r.pass);
            }
        }
    }
}

#[test]
fn swapped_signs_do_not_certify_the_example() {
    let c = base_certificate(BaseName::C1001).matrix;
    for i in 0..12 {
        let mut plan = LiftPlan::new(w("1001"), 1, 1, rat::int(1 << i), rat::frac(1, 1 << i));
        plan.signs = LiftSigns::Swapped;
        let l = lift(&c, &plan).unwrap();
        assert!(!verify_certificate_farkas(&l, &HalfLinePair::at_identity(w("11001")).unwrap()).unwrap().pass);
    }
}

#[test]
fn lifted_example_margins() {
    let cert = synthesize(&HalfLinePair::at_identity(w("11001")).unwrap()).unwrap();
    assert_eq!(cert.condition, Condition::Farkas);
    assert_eq!(cert.construction[0], "base:C_1001");
    assert_eq!(cert.construction[1], "lift:pos=1,k=1,omega=4,epsilon=1/4,signs=printed");
    assert_eq!(cert.omega, Some(rat::int(4)));
    assert_eq!(cert.margins.target, rat::int(-1));
}

#[test]
fn complement_and_antipode_name_the_same_half_line() {
    let synth = Synthesizer::new(SynthesisOptions::default());
    let opts = VerifyOptions::default();
    for n in 4..=6 {
        let pi = Perm::all(n).nth(7).unwrap();
        for u in Word::all_proper(n) {
            let hp = HalfLinePair::new(pi.clone(), u.clone()).unwrap();
            if !classify(&hp).is_edge {
                continue;
            }
            let cert = synth.synthesize(&hp).unwrap();
            for other in [
                HalfLinePair::new(pi.clone(), u.complement()).unwrap(),
                HalfLinePair::new(pi.antipode(), u.clone()).unwrap(),
                HalfLinePair::new(pi.antipode(), u.complement()).unwrap(),
            ] {
                assert!(verify_certificate(&cert.matrix, &other, cert.condition, &opts).unwrap().pass);
                let again = synth.synthesize(&other).unwrap();
                assert!(verify_certificate(&again.matrix, &hp, again.condition, &opts).unwrap().pass);
            }
        }
    }
}

#[test]
fn synthesis_covers_every_edge_up_to_n6() {
    let synth = Synthesizer::new(SynthesisOptions::default());
    for n in 3..=6 {
        for hp in HalfLinePair::all_canonical(n) {
            if classify(&hp).is_edge {
                let c = synth.synthesize(&hp).unwrap();
                assert!(c.recheck(&VerifyOptions::default()).unwrap());
            }
        }
    }
}

#[test]
fn certificate_json_schema() {
    let hp = HalfLinePair::new("2,1,3,4,5".parse().unwrap(), w("11001")).unwrap();
    let cert = synthesize(&hp).unwrap();
    let v: serde_json::Value = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["pair"]["pi"], "2,1,3,4,5");
    assert_eq!(v["pair"]["u"], "11001");
    assert_eq!(v["matrix"]["n"], 5);
    assert_eq!(v["condition"], "farkas");
    assert!(v["omega"].is_string() && v["epsilon"].is_string());
    assert_eq!(v["construction"].as_array().unwrap().last().unwrap(), "conjugate:sigma=2,1,3,4,5");
    for key in ["perm_min", "cut_min", "target"] {
        assert!(v["margins"][key].is_string());
    }
    let back: EdgeCertificate = serde_json::from_value(v).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn larger_words_synthesize() {
    let synth = Synthesizer::new(SynthesisOptions::default());
    for word in ["10101101", "11010100", "10100101", "111011011", "101010101"] {
        let hp = HalfLinePair::at_identity(w(word)).unwrap();
        if classify(&hp).is_edge {
            assert!(synth.synthesize(&hp).is_ok(), "{word}");
        }
    }
}
