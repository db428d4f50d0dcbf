//! Permutation groups: stabilizer chains, element tables, conjugacy data,
//! normal closures and coset-action quotients.

mod chain;
mod group;
mod permutation;

pub use chain::SCHREIER_SIMS_SEED;
pub use group::{is_prime_power, ClassData, Coset, ElementTable, PermGroup, Quotient, DEFAULT_ENUM_CAP};
pub use permutation::Permutation;

/// Parses a list of cycle strings at the given degree.
pub fn perms(degree: usize, cycles: &[&str]) -> crate::Result<Vec<Permutation>> {
    cycles.iter().map(|c| Permutation::from_cycles(c, degree)).collect()
}
