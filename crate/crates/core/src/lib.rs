pub mod algebra;
pub mod cli;
pub mod decider;
pub mod dsl;
pub mod homology;
pub mod lattice;
pub mod linefield;
pub mod quadforms;
pub mod ribbon;
pub mod stacky;
pub mod threads;
