#![allow(dead_code, clippy::needless_range_loop)]

pub mod faces;
pub mod freudenthal;
pub mod polytope;
pub mod tensor;
pub mod weyl;
