//! Knowledge-graph construction and validation toolkit for
//! cultural-heritage catalogue data.
//!
//! The crate covers the whole desk-scale pipeline:
//!
//! * [`rdf`] — terms, an indexed in-memory triple store, N-Triples
//!   reading/canonical writing and a read-only Turtle subset;
//! * [`ontology`] — the bundled schema: class hierarchy, disjointness,
//!   property definitions with inverses and chains, controlled
//!   vocabularies;
//! * [`reasoner`] — forward-chaining materialization (type inheritance,
//!   inverses, range-guarded property-chain shortcuts) and
//!   disjointness checking;
//! * [`rdfizer`] — XML catalogue records to n-ary RDF;
//! * [`linker`] — `owl:sameAs` discovery by Jaccard similarity over
//!   entity labels;
//! * [`query`] — a basic-graph-pattern SELECT engine, served over HTTP
//!   by [`service`];
//! * [`verifier`] — inference/error/competency-question test suites and
//!   dataset statistics.

pub mod linker;
pub mod ontology;
pub mod reasoner;
pub mod rdf;
pub mod rdfizer;
pub mod vocab;
