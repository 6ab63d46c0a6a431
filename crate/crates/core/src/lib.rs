pub mod bench;
pub mod cli;
pub mod elemset;
pub mod error;
pub mod format;
pub mod kernel;
pub mod model;
pub mod reductions;
pub mod rejection;
pub mod solvers;
