//! The S-graph of `c = (2, 3, 1)`: vertex functions, the polytope's integer
//! points, and the DOT rendering.

use trailcone::sgraph::{binary_fusion, integer_points, CoeffVector};

fn main() {
    let c = CoeffVector::new(vec![2, 3, 1]).unwrap();
    let graph = binary_fusion(&c).unwrap();
    for (id, v) in graph.vertices.iter().enumerate() {
        println!("v{id}: label {} function {:?}", v.label, v.f);
    }
    println!("{} integer points in K(c)", integer_points(&c).len());
    print!("{}", graph.to_dot());
}
