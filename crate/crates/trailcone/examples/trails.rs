//! Enumerates the trails of the five-dimensional B2 module and groups the
//! last layer into classes.

use trailcone::cartan::{fixtures, validate_gcm, WordJ};
use trailcone::rep::build_fundamental;
use trailcone::trails::{enumerate_trails, group_ts_classes, TrailFrame};

fn main() {
    let cartan = validate_gcm(&fixtures::b(2)).unwrap();
    let word = WordJ::new(&cartan, vec![1, 0, 1, 0]).unwrap();
    let module = build_fundamental(&cartan, 0).unwrap();
    let frame = TrailFrame::new(&cartan, &word, 0).unwrap();
    let set = enumerate_trails(&module, &frame).unwrap();
    for trail in &set.trails {
        let weights: Vec<String> = trail.gamma.iter().map(ToString::to_string).collect();
        println!("exps {:?}  φ = {}  z = {}  via {}", trail.exps, trail.phi, frame.trail_function(trail), weights.join(" "));
    }
    let m = frame.m();
    for class in group_ts_classes(&frame, &set.layer(m), m).unwrap() {
        println!("class s = {}: a = {:?}, c = {:?}, {} member(s)", cartan.label(class.s), class.a, class.c, class.members.len());
    }
}
