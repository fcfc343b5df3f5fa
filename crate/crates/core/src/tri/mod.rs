//! Triangle-group signatures, generator traces modulo a prime and the finite
//! quotient generated by explicit projective matrices.

mod ext;
mod matrix;
mod quotient;
mod signature;

pub use ext::{Ext, ResidueExt, MAX_EXT_ORDER};
pub use matrix::ProjMatrix;
pub use quotient::{
    congruence_quotient, congruence_quotient_with_sign, expected_order, macbeath_triple,
    trace_triple, CongruenceQuotient, QuotientOptions, TraceSign, TraceTriple,
    DEFAULT_MAX_ORDER,
};
pub use signature::{validate_signature, Entry, Signature};
