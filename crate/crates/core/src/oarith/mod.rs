//! Splitting of rational primes in the trace field, residue fields and the
//! Galois action on primes.

mod fpoly;
mod ideal;
mod residue;

pub use fpoly::{is_prime, FpPoly, PrimeField};
pub use ideal::{galois_on_prime, irregularity, reduce, split_prime, PrimeIdeal};
pub use residue::{Fq, ResidueField};
