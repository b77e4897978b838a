mod common;

use common::weyl;
use trailcone::cartan::{fixtures, validate_gcm, WordJ};
use trailcone::rep::build_fundamental;
use trailcone::trails::{enumerate_trails, group_ts_classes, minimax_decompose, rigidify, TrailError, TrailFrame};

fn desk() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    vec![("A2", fixtures::a(2)), ("A3", fixtures::a(3)), ("B2", fixtures::b(2)), ("C2", fixtures::c(2)), ("G2", fixtures::g2())]
}

#[test]
fn class_invariants_and_minimax_on_desk_fixtures() {
    for (name, gcm) in desk() {
        let cartan = validate_gcm(&gcm).unwrap();
        for letters in fixtures::longest_words(&gcm) {
            let word = WordJ::new(&cartan, letters.clone()).unwrap();
            for t in 0..cartan.rank() {
                let module = build_fundamental(&cartan, t).unwrap();
                let frame = TrailFrame::new(&cartan, &word, t).unwrap();
                let set = enumerate_trails(&module, &frame).unwrap();
                let (mut classes, mut no_max, mut not_lmin) = (0, 0, 0);
                for j in frame.first_t()..=frame.m() {
                    for class in group_ts_classes(&frame, &set.layer(j), j).unwrap() {
                        classes += 1;
                        match minimax_decompose(&module, &frame, &class) {
                            Ok(mm) => not_lmin += usize::from(!mm.min_is_l_min),
                            Err(TrailError::NoMaximalTrail) => no_max += 1,
                            Err(e) => panic!("{name} t={t} j={j}: {e}"),
                        }
                        let rig = rigidify(&class.l, &class.a);
                        assert!(rig.is_rigid());
                    }
                }
                println!(
                    "{name} {letters:?} t={t}: {} trails, {classes} classes, {no_max} without maximal trail, {not_lmin} with K_min ≠ ℓmin",
                    set.trails.len()
                );
            }
        }
    }
}

/// In type A every fundamental module is minuscule, so each weight of a
/// trail is extremal and each step is a single application of some `e_i`.
#[test]
fn minuscule_trails_stay_in_the_orbit() {
    for n in 2..=4 {
        let gcm = fixtures::a(n);
        let cartan = validate_gcm(&gcm).unwrap();
        let word = WordJ::new(&cartan, fixtures::longest_word(&gcm)).unwrap();
        for t in 0..n {
            let mut lowest = vec![0; n];
            lowest[t] = -1;
            let orbit = weyl::orbit(&gcm, &lowest);
            let module = build_fundamental(&cartan, t).unwrap();
            let frame = TrailFrame::new(&cartan, &word, t).unwrap();
            for trail in enumerate_trails(&module, &frame).unwrap().trails {
                assert!(trail.exps.iter().all(|&x| x <= 1), "A{n} t={t}: {:?}", trail.exps);
                for gamma in &trail.gamma {
                    assert!(orbit.binary_search(&gamma.coords().to_vec()).is_ok(), "A{n} t={t}: {gamma:?}");
                }
            }
        }
    }
}
