//! Builds the envelope for the seven-dimensional G2 module, runs the
//! containment checks and evaluates `ε*_t` on a few crystal elements.

use trailcone::cartan::{fixtures, validate_gcm, WordJ};
use trailcone::crystal::{generate_binf, Convention};
use trailcone::giant::{check_constructibility, construct_envelope, epsilon_star, extremality_report};
use trailcone::rep::build_fundamental;
use trailcone::trails::TrailFrame;

fn main() {
    let cartan = validate_gcm(&fixtures::g2()).unwrap();
    let word = WordJ::new(&cartan, vec![0, 1, 0, 1, 0, 1]).unwrap();
    let t = 1;
    let module = build_fundamental(&cartan, t).unwrap();
    let frame = TrailFrame::new(&cartan, &word, t).unwrap();
    let env = construct_envelope(&module, &frame).expect("no false trails for this word");
    for layer in &env.layers {
        println!("layer {}: {} function(s), {} class(es)", layer.j, layer.functions.len(), layer.classes.len());
    }
    for entry in check_constructibility(&env, frame.m()).entries {
        println!(
            "j = {}: (56) {} (57) {} missing {:?}",
            entry.j,
            entry.check_56,
            entry.check_57,
            entry.missing_57.iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }
    let generated = generate_binf(&cartan, &word, Convention::Dual, 3);
    for b in generated.elements.iter().take(8) {
        let values: Vec<i64> = (0..cartan.rank()).map(|s| epsilon_star(&env, s, b).unwrap()).collect();
        println!("b = {:?}: ε* per s = {values:?}", b.coords());
    }
    for row in extremality_report(&env).per_s {
        println!("s = {}: |Z_t(s)| = {}, equal to the extremal set: {}", cartan.label(row.s), row.z_size, row.equal);
    }
}
