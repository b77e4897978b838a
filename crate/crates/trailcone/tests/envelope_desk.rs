use std::collections::BTreeSet;
use trailcone::cartan::{fixtures, validate_gcm, CartanData, WordJ};
use trailcone::crystal::{generate_binf, BJElement, Convention};
use trailcone::giant::{
    check_constructibility, construct_envelope, construct_envelope_with, discard_rule, envelope_from_trails, epsilon_star,
    extremality_report, max_over_trails, EnvelopeError, EnvelopeOptions,
};
use trailcone::rep::build_fundamental;
use trailcone::sgraph::{integer_points, CoeffVector};
use trailcone::trails::{enumerate_trails, group_ts_classes, LinearFunctionBJ, TrailFrame};

fn desk() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    vec![("A2", fixtures::a(2)), ("A3", fixtures::a(3)), ("B2", fixtures::b(2)), ("C2", fixtures::c(2)), ("G2", fixtures::g2())]
}

fn instances() -> Vec<(String, CartanData, WordJ, usize)> {
    let mut out = Vec::new();
    for (name, gcm) in desk() {
        let cartan = validate_gcm(&gcm).unwrap();
        for letters in fixtures::longest_words(&gcm) {
            let word = WordJ::new(&cartan, letters.clone()).unwrap();
            for t in 0..cartan.rank() {
                out.push((format!("{name} {letters:?} t={t}"), cartan.clone(), word.clone(), t));
            }
        }
    }
    out
}

/// The inductive construction succeeds and reproduces the enumeration on
/// every desk instance but one: for the adjoint module of G2 with the word
/// starting at the short node, layer 4 has a class with two trails in `T⁻`
/// while `K⁻_Z(c)` is a single point.
#[test]
fn envelope_equals_enumeration_except_g2_adjoint() {
    let mut stopped = Vec::new();
    let mut strict_failures = Vec::new();
    for (label, cartan, word, t) in instances() {
        let module = build_fundamental(&cartan, t).unwrap();
        let frame = TrailFrame::new(&cartan, &word, t).unwrap();
        let set = enumerate_trails(&module, &frame).unwrap();
        let reference = envelope_from_trails(&set).unwrap();
        match construct_envelope(&module, &frame) {
            Ok(env) => {
                assert!(env.matches_enumeration(&set), "{label}");
                assert!(reference.layers.iter().all(|l| l.check_54), "{label}");
                let report = check_constructibility(&env, frame.m());
                assert!(report.passes_56(), "{label}: {report:?}");
                for e in report.entries.iter().filter(|e| !e.check_57) {
                    strict_failures.push((label.clone(), e.j, e.missing_57.clone()));
                }
                for layer in &env.layers {
                    let seen: usize = layer.classes.iter().map(|c| c.kz.len()).sum::<usize>() + usize::from(layer.carries_driving);
                    assert_eq!(seen, layer.functions.len(), "{label}: blocks of layer {} overlap", layer.j);
                }
            }
            Err(EnvelopeError::FalseTrailDetected(ft)) => {
                let failing: Vec<usize> = reference.layers.iter().filter(|l| !l.check_54).map(|l| l.j).collect();
                assert_eq!(failing, vec![ft.layer], "{label}");
                stopped.push((label, ft.layer, ft.offending.to_string()));
            }
            Err(e) => panic!("{label}: {e}"),
        }
    }
    assert_eq!(stopped, vec![("G2 [1, 0, 1, 0, 1, 0] t=0".to_string(), 5, "-1m2 + 1m4".to_string())]);
    let strict: Vec<_> = strict_failures.iter().map(|(l, j, _)| (l.as_str(), *j)).collect();
    assert_eq!(strict, vec![("G2 [0, 1, 0, 1, 0, 1] t=1", 5)]);
}

/// Every class of enumerated trails is exactly its set of integer points,
/// apart from the one G2 class above, which is the full box over `c = (1,1)`.
#[test]
fn classes_are_integer_points() {
    let mut exceptions = Vec::new();
    for (label, cartan, word, t) in instances() {
        let module = build_fundamental(&cartan, t).unwrap();
        let frame = TrailFrame::new(&cartan, &word, t).unwrap();
        let set = enumerate_trails(&module, &frame).unwrap();
        for j in frame.first_t()..=frame.m() {
            for class in group_ts_classes(&frame, &set.layer(j), j).unwrap() {
                let members: BTreeSet<Vec<i64>> = class.c_prime.iter().cloned().collect();
                let points: BTreeSet<Vec<i64>> = integer_points(&CoeffVector::new(class.c.clone()).unwrap()).into_iter().collect();
                assert!(points.is_subset(&members), "{label} j={j}");
                if members != points {
                    exceptions.push((label.clone(), j, class.c.clone(), members.len()));
                }
            }
        }
    }
    assert_eq!(exceptions, vec![("G2 [1, 0, 1, 0, 1, 0] t=0".to_string(), 5, vec![1, 1], 4)]);
}

#[test]
fn first_letter_t_gives_trivial_s_sets() {
    for (label, cartan, word, t) in instances() {
        if word.letter(1) != t {
            continue;
        }
        let module = build_fundamental(&cartan, t).unwrap();
        let frame = TrailFrame::new(&cartan, &word, t).unwrap();
        let env = construct_envelope(&module, &frame).unwrap();
        assert_eq!(env.z_t(t), BTreeSet::from([LinearFunctionBJ::coordinate(1)]), "{label}");
    }
}

/// The discard rule finds the ℓ-minimal drivings from layer `j−1` alone.
/// In the G2 adjoint case the extra `T⁻` trail is not in any S-set and is
/// kept as a fifth driving function.
#[test]
fn discard_rule_recovers_the_classes() {
    let mut disagreements = Vec::new();
    for (label, cartan, word, t) in instances() {
        let module = build_fundamental(&cartan, t).unwrap();
        let frame = TrailFrame::new(&cartan, &word, t).unwrap();
        let env = envelope_from_trails(&enumerate_trails(&module, &frame).unwrap()).unwrap();
        for j in frame.first_t() + 1..=frame.m() {
            let run = discard_rule(&env, j).unwrap().unwrap();
            if !run.agrees_with_classes {
                disagreements.push((label.clone(), j, run.accepted.len()));
            }
        }
    }
    assert_eq!(disagreements, vec![("G2 [1, 0, 1, 0, 1, 0] t=0".to_string(), 5, 4)]);
}

#[test]
fn epsilon_star_is_independent_of_s() {
    for (label, cartan, word, t) in instances() {
        let module = build_fundamental(&cartan, t).unwrap();
        let frame = TrailFrame::new(&cartan, &word, t).unwrap();
        let env = envelope_from_trails(&enumerate_trails(&module, &frame).unwrap()).unwrap();
        let generated = generate_binf(&cartan, &word, Convention::Dual, 6);
        assert_eq!(generated.escapes, 0, "{label}");
        for b in &generated.elements {
            let all = max_over_trails(&env, b);
            for s in 0..cartan.rank() {
                assert_eq!(epsilon_star(&env, s, b).unwrap(), all, "{label} s={s} b={:?}", b.coords());
            }
            if word.letter(1) == t {
                assert_eq!(all, b.get(1) as i64, "{label}");
            }
        }
        assert_eq!(max_over_trails(&env, &BJElement::zero(word.len())), 0);
    }
}

#[test]
fn extremal_points_lie_in_every_s_set_union() {
    for (label, cartan, word, t) in instances() {
        let module = build_fundamental(&cartan, t).unwrap();
        let frame = TrailFrame::new(&cartan, &word, t).unwrap();
        let env = envelope_from_trails(&enumerate_trails(&module, &frame).unwrap()).unwrap();
        let report = extremality_report(&env);
        for row in &report.per_s {
            assert!(row.contained, "{label}: {row:?}");
        }
        println!("{label}: |E| = {}, equal per s = {:?}", report.extremal.len(), report.per_s.iter().map(|r| r.equal).collect::<Vec<_>>());
    }
}

#[test]
fn injected_function_is_reported_with_its_layer() {
    let cartan = validate_gcm(&fixtures::a(2)).unwrap();
    let word = WordJ::new(&cartan, vec![0, 1, 0]).unwrap();
    let module = build_fundamental(&cartan, 0).unwrap();
    let frame = TrailFrame::new(&cartan, &word, 0).unwrap();
    let spurious = LinearFunctionBJ::from_dense(&[5, -7, 1]);
    let options = EnvelopeOptions { inject: vec![(1, spurious.clone())] };
    match construct_envelope_with(&module, &frame, &options) {
        Err(EnvelopeError::FalseTrailDetected(ft)) => {
            assert_eq!(ft.layer, 2);
            assert_eq!(ft.offending, spurious);
            assert!(ft.nearest_block.is_some());
        }
        other => panic!("expected a false trail, got {other:?}"),
    }
}
