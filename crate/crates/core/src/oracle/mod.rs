//! Brute-force enumerators and verifiers.

pub mod desk;
pub mod groups;
pub mod lattice;
pub mod report;
pub mod solutions;
