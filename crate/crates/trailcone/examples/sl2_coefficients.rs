//! Closed-form coefficients of `f^b` on nested `sl(2)` tensor monomials,
//! checked against the one-step recurrence.

use trailcone::sl2::{coefficient_a, coefficient_a_oracle, quasi_equal_factors, vanishing_identity, Sl2Config};

fn main() {
    let cfg = Sl2Config::new(vec![3, 2], vec![1, 2], vec![0, 1]).expect("valid tuples");
    println!("a = {:?}, k = {:?}, l = {:?}", cfg.a, cfg.k, cfg.l);
    println!("closed form: {}", coefficient_a(&cfg).expect("b_i >= 0"));
    println!("recurrence:  {}", coefficient_a_oracle(&cfg));

    for (q, p1, p2, u) in [(1, 1, 2, 0), (2, 0, 3, 1), (4, 3, 7, 2)] {
        println!("alternating sum q={q} p1={p1} p2={p2} u={u}: {}", vanishing_identity(q, p1, p2, u).unwrap());
    }
    println!("quasi-equal factors for p2=3, p1=2, a=3: {:?}", quasi_equal_factors(3, 2, 3).unwrap());
}
