//! Generates `B_J(∞)` for A2 by lowering operators and counts elements by
//! depth under both pairing conventions.

use trailcone::cartan::{fixtures, validate_gcm, WordJ};
use trailcone::crystal::{crystal_f, generate_binf, signature, BJElement, Convention};

fn main() {
    let cartan = validate_gcm(&fixtures::a(2)).unwrap();
    let word = WordJ::new(&cartan, vec![0, 1, 0]).unwrap();
    for convention in [Convention::Dual, Convention::Straight] {
        let generated = generate_binf(&cartan, &word, convention, 6);
        let counts: Vec<usize> = (0..=6).map(|d| generated.count_at(d)).collect();
        println!("{convention:?}: counts by depth {counts:?}, escapes {}", generated.escapes);
    }
    let mut b = BJElement::zero(word.len());
    for i in [0, 1, 0, 0, 1] {
        println!("{:?} signature for node {}: {:?}", b.coords(), cartan.label(i), signature(&cartan, &word, Convention::Dual, &b, i));
        b = crystal_f(&cartan, &word, Convention::Dual, &b, i).element;
    }
    println!("end: {:?}", b.coords());
}
