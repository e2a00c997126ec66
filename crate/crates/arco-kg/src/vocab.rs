//! IRI constants: W3C vocabularies, the ontology module namespaces and
//! the resource namespace.

use crate::rdf::Term;

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
pub const RDF_REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
pub const RDF_NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";

pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";

pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
pub const OWL_INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
pub const OWL_PROPERTY_CHAIN_AXIOM: &str = "http://www.w3.org/2002/07/owl#propertyChainAxiom";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const OWL_ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";

pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
pub const XSD_GYEAR: &str = "http://www.w3.org/2001/XMLSchema#gYear";

/// Base namespace shared by all ontology modules.
pub const ONTOLOGY_BASE: &str = "https://w3id.org/arco/ontology/";
/// Namespace for minted instance data.
pub const RESOURCE_BASE: &str = "https://w3id.org/arco/resource/";

pub const NS_ARCO: &str = "https://w3id.org/arco/ontology/arco/";
pub const NS_CORE: &str = "https://w3id.org/arco/ontology/core/";
pub const NS_CATALOGUE: &str = "https://w3id.org/arco/ontology/catalogue/";
pub const NS_LOCATION: &str = "https://w3id.org/arco/ontology/location/";
pub const NS_DD: &str = "https://w3id.org/arco/ontology/denotative-description/";
pub const NS_CD: &str = "https://w3id.org/arco/ontology/context-description/";
pub const NS_CE: &str = "https://w3id.org/arco/ontology/cultural-event/";

pub fn rdf_type() -> Term {
    Term::iri(RDF_TYPE)
}

pub fn rdfs_label() -> Term {
    Term::iri(RDFS_LABEL)
}

pub fn owl_same_as() -> Term {
    Term::iri(OWL_SAME_AS)
}

/// `arco:` class or property, e.g. `arco("CulturalProperty")`.
pub fn arco(name: &str) -> Term {
    Term::iri(format!("{NS_ARCO}{name}"))
}

pub fn core(name: &str) -> Term {
    Term::iri(format!("{NS_CORE}{name}"))
}

pub fn catalogue(name: &str) -> Term {
    Term::iri(format!("{NS_CATALOGUE}{name}"))
}

pub fn location(name: &str) -> Term {
    Term::iri(format!("{NS_LOCATION}{name}"))
}

pub fn dd(name: &str) -> Term {
    Term::iri(format!("{NS_DD}{name}"))
}

pub fn cd(name: &str) -> Term {
    Term::iri(format!("{NS_CD}{name}"))
}

pub fn ce(name: &str) -> Term {
    Term::iri(format!("{NS_CE}{name}"))
}

/// Well-known prefixes accepted in mapping tables and CLI arguments.
pub fn expand_curie(text: &str) -> Option<String> {
    let (prefix, local) = text.split_once(':')?;
    let base = match prefix {
        "arco" => NS_ARCO,
        "core" => NS_CORE,
        "a-cat" => NS_CATALOGUE,
        "a-loc" => NS_LOCATION,
        "a-dd" => NS_DD,
        "a-cd" => NS_CD,
        "a-ce" => NS_CE,
        "data" => RESOURCE_BASE,
        _ => return None,
    };
    Some(format!("{base}{local}"))
}
