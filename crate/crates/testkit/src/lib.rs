//! Shared test support: proptest strategies, naive reference oracles, proof
//! mutations and the property suites run by the per-crate tests and by the
//! acceptance target.

pub mod mutate;
pub mod oracle;
pub mod strategies;
pub mod suites;
