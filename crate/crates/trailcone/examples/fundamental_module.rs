//! Builds the fundamental modules of G2 and prints their weight spaces.

use trailcone::cartan::{fixtures, validate_gcm};
use trailcone::rep::build_fundamental;

fn main() {
    let cartan = validate_gcm(&fixtures::g2()).unwrap();
    println!("type {}", cartan.finite_type_tag().unwrap_or("?"));
    for t in 0..cartan.rank() {
        let module = build_fundamental(&cartan, t).unwrap();
        println!("V(-ϖ_{}): dimension {}", cartan.label(t), module.dim());
        for (weight, basis) in module.weight_spaces() {
            println!("  {weight}  multiplicity {}", basis.len());
        }
    }
}
