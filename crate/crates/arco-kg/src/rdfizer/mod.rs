//! Catalogue-record ingestion: a simplified XML record format, the
//! editable code-to-class mapping, and n-ary RDF emission.
//!
//! Records carry only the n-ary structures; the binary shortcuts
//! (`hasMaterial` and friends) come from the reasoner afterwards.

mod emit;
mod xml;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ontology::OntologySchema;
use crate::vocab;

pub use emit::{convert_corpus, mint_iri, to_rdf, CorpusOutcome, Emission};
pub use xml::{parse_record_xml, ParsedRecord};

/// One parsed catalogue record, prior to RDF emission.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogueRecord {
    pub record_id: String,
    pub type_code: String,
    /// Version labels in order; never empty (defaults to `["1"]`).
    pub versions: Vec<String>,
    /// The object denomination, e.g. "dipinto".
    pub object_name: Option<String>,
    pub title: Option<String>,
    pub authors: Vec<Author>,
    pub materials: Vec<String>,
    pub techniques: Vec<String>,
    pub measurements: Vec<Measurement>,
    pub locations: Vec<LocationEntry>,
    pub cadastral: Option<String>,
    pub components: Vec<CatalogueRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Author {
    pub name: String,
    pub role: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub kind: String,
    /// Lexical decimal form, validated finite and non-negative.
    pub value: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocationEntry {
    pub location_type: String,
    pub place_label: String,
    pub from: Option<String>,
    pub to: Option<String>,
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("record is missing its id attribute")]
    MissingRecordId,
    #[error("record {record}: element <{element}> must not be empty")]
    EmptyElement { record: String, element: String },
    #[error("record {record}: invalid measurement value '{value}' (finite, non-negative decimal required)")]
    InvalidMeasurement { record: String, value: String },
    #[error("record {record}: invalid date '{value}' (ISO-8601 year or full date required)")]
    InvalidDate { record: String, value: String },
    #[error("duplicate record id '{id}' in corpus")]
    DuplicateRecordId { id: String },
    #[error("unmapped record type code '{code}'")]
    UnmappedTypeCode { code: String },
    #[error("unmapped location type '{label}'")]
    UnmappedLocationType { label: String },
    #[error("mapping: {0}")]
    Mapping(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The editable mapping from record type codes to classes and from
/// location-type labels to controlled-vocabulary individuals.
#[derive(Debug, Clone)]
pub struct FieldMapping {
    pub type_codes: BTreeMap<String, String>,
    pub location_types: BTreeMap<String, String>,
}

impl FieldMapping {
    /// The nine default type codes and the three named location types.
    pub fn defaults() -> FieldMapping {
        let type_codes = [
            ("OA", "HistoricOrArtisticProperty"),
            ("F", "PhotographicHeritage"),
            ("RA", "ArchaeologicalProperty"),
            ("BDM", "DemoEthnoAnthropologicalHeritage"),
            ("N", "NumismaticProperty"),
            ("BN", "NaturalHeritage"),
            ("PST", "ScientificOrTechnologicalHeritage"),
            ("A", "ArchitecturalOrLandscapeHeritage"),
            ("MI", "MusicHeritage"),
        ]
        .into_iter()
        .map(|(code, class)| (code.to_string(), format!("{}{class}", vocab::NS_ARCO)))
        .collect();
        let location_types = ["history", "storage", "finding"]
            .into_iter()
            .map(|label| {
                (
                    label.to_string(),
                    format!("{}LocationType/{label}", vocab::RESOURCE_BASE),
                )
            })
            .collect();
        FieldMapping {
            type_codes,
            location_types,
        }
    }

    /// Parse a TOML mapping table. Values may be absolute IRIs or
    /// CURIEs with the well-known prefixes (`arco:`, `a-loc:`, `data:` ...).
    pub fn from_toml(text: &str) -> Result<FieldMapping, RecordError> {
        #[derive(serde::Deserialize)]
        struct Raw {
            #[serde(default, rename = "type-codes")]
            type_codes: BTreeMap<String, String>,
            #[serde(default, rename = "location-types")]
            location_types: BTreeMap<String, String>,
        }
        let raw: Raw = toml::from_str(text).map_err(|e| RecordError::Mapping(e.to_string()))?;
        let expand = |v: &str| -> Result<String, RecordError> {
            if let Some(iri) = vocab::expand_curie(v) {
                return Ok(iri);
            }
            if crate::rdf::has_scheme(v) {
                return Ok(v.to_string());
            }
            Err(RecordError::Mapping(format!("cannot resolve '{v}' to an IRI")))
        };
        Ok(FieldMapping {
            type_codes: raw
                .type_codes
                .iter()
                .map(|(k, v)| Ok((k.clone(), expand(v)?)))
                .collect::<Result<_, RecordError>>()?,
            location_types: raw
                .location_types
                .iter()
                .map(|(k, v)| Ok((k.clone(), expand(v)?)))
                .collect::<Result<_, RecordError>>()?,
        })
    }

    /// Every mapped class must be defined; every mapped location type
    /// must be a LocationType individual of the schema.
    pub fn validate(&self, schema: &OntologySchema) -> Result<(), RecordError> {
        for (code, class) in &self.type_codes {
            if !schema.classes.contains_key(class) {
                return Err(RecordError::Mapping(format!(
                    "type code '{code}' maps to undefined class <{class}>"
                )));
            }
        }
        let loc_class = format!("{}LocationType", vocab::NS_LOCATION);
        for (label, individual) in &self.location_types {
            match schema.individuals.get(individual) {
                Some(class) if *class == loc_class => {}
                _ => {
                    return Err(RecordError::Mapping(format!(
                        "location type '{label}' maps to <{individual}>, which is not a LocationType individual"
                    )))
                }
            }
        }
        Ok(())
    }
}

impl Default for FieldMapping {
    fn default() -> Self {
        FieldMapping::defaults()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::load_schema;

    #[test]
    fn default_mapping_validates_against_bundled_schema() {
        let schema = load_schema(include_str!("../../../../assets/arco.ttl")).unwrap();
        FieldMapping::defaults().validate(&schema).unwrap();
    }

    #[test]
    fn toml_mapping_accepts_curies_and_iris() {
        let mapping = FieldMapping::from_toml(
            r#"
            [type-codes]
            OA = "arco:HistoricOrArtisticProperty"
            X = "https://w3id.org/arco/ontology/arco/NaturalHeritage"

            [location-types]
            storage = "data:LocationType/storage"
            "#,
        )
        .unwrap();
        assert_eq!(
            mapping.type_codes["OA"],
            format!("{}HistoricOrArtisticProperty", vocab::NS_ARCO)
        );
        assert_eq!(
            mapping.type_codes["X"],
            format!("{}NaturalHeritage", vocab::NS_ARCO)
        );
        assert_eq!(
            mapping.location_types["storage"],
            format!("{}LocationType/storage", vocab::RESOURCE_BASE)
        );
    }

    #[test]
    fn bad_mapping_is_rejected() {
        let schema = load_schema(include_str!("../../../../assets/arco.ttl")).unwrap();
        let mut mapping = FieldMapping::defaults();
        mapping
            .type_codes
            .insert("ZZ".into(), format!("{}NoSuchClass", vocab::NS_ARCO));
        assert!(mapping.validate(&schema).is_err());
    }
}
