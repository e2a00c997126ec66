//! RDF data model, indexed triple store and serialization.

mod lex;
mod ntriples;
mod store;
mod term;
mod turtle;

pub use ntriples::{parse_ntriples, serialize_canonical};
pub use store::{Slot, TripleStore};
pub use term::{has_scheme, Literal, Term, Triple, XSD_STRING};
pub use turtle::parse_turtle;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RdfError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: relative IRI <{iri}> (an IRI scheme is required)")]
    RelativeIri { line: usize, iri: String },
    #[error("line {line}: unknown prefix '{prefix}:'")]
    UnknownPrefix { line: usize, prefix: String },
}
