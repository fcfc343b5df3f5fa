//! Exact arithmetic in real cyclotomic fields and the trace fields of
//! triangle groups.

mod ambient;
mod trace;

pub use ambient::{dickson, lambda_element, AmbientElement, AmbientField};
pub use trace::{trace_field, trace_field_in, Automorphism, FieldJson, KElement, TraceField};
