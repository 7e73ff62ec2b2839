pub mod arith;
pub mod degree_engine;
pub mod elliptic;
pub mod experiments;
pub mod heights;
pub mod map_zoo;
pub mod ns_calculus;
pub mod par;
pub mod poly;
