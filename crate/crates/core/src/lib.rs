pub mod arith;
pub mod cli;
pub mod artin;
pub mod combinat;
pub mod divpow;
pub mod error;
pub mod groebner;
pub mod instance;
pub mod lift;
pub mod poly;
