//! RDF emission: deterministic IRI minting and record-to-triples
//! conversion in n-ary form.

use std::collections::HashSet;
use std::path::Path;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use crate::ontology::OntologySchema;
use crate::rdf::{Term, Triple, TripleStore};
use crate::vocab;

use super::{CatalogueRecord, FieldMapping, RecordError};

/// Everything except unreserved characters gets percent-encoded.
const LOCAL_ID: &AsciiSet = &NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'_')
    .remove(b'.')
    .remove(b'~');

/// Deterministic instance IRI: `<resource-base>/{kind}/{encoded id}`.
/// Identical inputs always yield the identical IRI, which is what lets
/// characteristic individuals be shared across a whole corpus.
pub fn mint_iri(kind: &str, local_id: &str) -> Term {
    debug_assert!(!local_id.is_empty(), "empty local id");
    Term::iri(format!(
        "{}{kind}/{}",
        vocab::RESOURCE_BASE,
        utf8_percent_encode(local_id, LOCAL_ID)
    ))
}

/// The triples emitted for one record, with non-fatal warnings
/// (unmapped codes in lax mode).
#[derive(Debug, Default)]
pub struct Emission {
    pub triples: Vec<Triple>,
    pub warnings: Vec<String>,
}

/// Convert one record to n-ary RDF. Shortcut triples are never emitted
/// here; they are derived by materialization.
pub fn to_rdf(
    record: &CatalogueRecord,
    schema: &OntologySchema,
    mapping: &FieldMapping,
    strict: bool,
) -> Result<Emission, RecordError> {
    mapping.validate(schema)?;
    let mut emission = Emission::default();
    let property = emit_entity(record, mapping, strict, true, &mut emission)?;

    // The catalogue record, its describes link and the version sequence.
    let catalogue_record = mint_iri("CatalogueRecord", &record.record_id);
    emission.triples.push(Triple::new(
        catalogue_record.clone(),
        vocab::rdf_type(),
        vocab::catalogue("CatalogueRecord"),
    ));
    emission.triples.push(Triple::new(
        catalogue_record.clone(),
        vocab::catalogue("describes"),
        property,
    ));
    let mut previous: Option<Term> = None;
    for label in &record.versions {
        let version = mint_iri(
            "CatalogueRecordVersion",
            &format!("{}-{label}", record.record_id),
        );
        emission.triples.push(Triple::new(
            version.clone(),
            vocab::rdf_type(),
            vocab::catalogue("CatalogueRecordVersion"),
        ));
        emission.triples.push(Triple::new(
            version.clone(),
            vocab::rdfs_label(),
            Term::literal(label),
        ));
        emission.triples.push(Triple::new(
            catalogue_record.clone(),
            vocab::catalogue("hasCatalogueRecordVersion"),
            version.clone(),
        ));
        if let Some(prev) = previous {
            emission.triples.push(Triple::new(
                prev,
                vocab::catalogue("hasNextVersion"),
                version.clone(),
            ));
        }
        previous = Some(version);
    }
    Ok(emission)
}

/// Emit the cultural entity itself: typing, label, technical status,
/// locations, cadastral identity, authorship, components. Returns the
/// entity IRI. Top-level records are typed by the mapping; components
/// are typed CulturalPropertyComponent.
fn emit_entity(
    record: &CatalogueRecord,
    mapping: &FieldMapping,
    strict: bool,
    top_level: bool,
    emission: &mut Emission,
) -> Result<Term, RecordError> {
    let class = if top_level {
        match mapping.type_codes.get(&record.type_code) {
            Some(class) => Term::iri(class),
            None if strict => {
                return Err(RecordError::UnmappedTypeCode {
                    code: record.type_code.clone(),
                })
            }
            None => {
                emission.warnings.push(format!(
                    "record {}: unmapped type code '{}', typing as CulturalProperty",
                    record.record_id, record.type_code
                ));
                vocab::arco("CulturalProperty")
            }
        }
    } else {
        vocab::arco("CulturalPropertyComponent")
    };
    let kind = class
        .as_iri()
        .and_then(|iri| iri.rsplit('/').next())
        .unwrap_or("CulturalProperty")
        .to_string();
    let entity = mint_iri(&kind, &record.record_id);
    let push = |emission: &mut Emission, s: &Term, p: Term, o: Term| {
        emission.triples.push(Triple::new(s.clone(), p, o));
    };

    push(emission, &entity, vocab::rdf_type(), class);
    if let Some(label) = record.title.as_ref().or(record.object_name.as_ref()) {
        push(emission, &entity, vocab::rdfs_label(), Term::literal(label));
    }

    // Technical status holding every characteristic as one n-ary node.
    if !(record.materials.is_empty()
        && record.techniques.is_empty()
        && record.measurements.is_empty())
    {
        let status = mint_iri("CulturalEntityTechnicalStatus", &record.record_id);
        push(
            emission,
            &entity,
            vocab::dd("hasTechnicalStatus"),
            status.clone(),
        );
        push(
            emission,
            &status,
            vocab::rdf_type(),
            vocab::dd("CulturalEntityTechnicalStatus"),
        );
        for material in &record.materials {
            emit_characteristic(emission, &status, "Material", material, "material");
        }
        for technique in &record.techniques {
            emit_characteristic(emission, &status, "Technique", technique, "technique");
        }
        for m in &record.measurements {
            let label = format!("{} {} {}", m.kind, m.value, m.unit);
            let node = emit_characteristic(emission, &status, "Measurement", &label, "measurement");
            push(
                emission,
                &node,
                vocab::dd("hasMeasurementType"),
                Term::literal(&m.kind),
            );
            push(
                emission,
                &node,
                vocab::dd("hasMeasurementValue"),
                Term::typed_literal(&m.value, vocab::XSD_DECIMAL),
            );
            if !m.unit.is_empty() {
                push(
                    emission,
                    &node,
                    vocab::dd("hasMeasurementUnit"),
                    Term::literal(&m.unit),
                );
            }
        }
    }

    // One time-indexed typed location per entry.
    for (i, location) in record.locations.iter().enumerate() {
        let local = format!("{}-{}", record.record_id, i + 1);
        let node = mint_iri("TimeIndexedTypedLocation", &local);
        push(
            emission,
            &entity,
            vocab::location("hasTimeIndexedTypedLocation"),
            node.clone(),
        );
        push(
            emission,
            &node,
            vocab::rdf_type(),
            vocab::location("TimeIndexedTypedLocation"),
        );
        match mapping.location_types.get(&location.location_type) {
            Some(individual) => {
                let individual = Term::iri(individual);
                push(
                    emission,
                    &node,
                    vocab::location("hasLocationType"),
                    individual.clone(),
                );
                push(
                    emission,
                    &individual,
                    vocab::rdf_type(),
                    vocab::location("LocationType"),
                );
                push(
                    emission,
                    &individual,
                    vocab::rdfs_label(),
                    Term::literal(&location.location_type),
                );
            }
            None if strict => {
                return Err(RecordError::UnmappedLocationType {
                    label: location.location_type.clone(),
                })
            }
            None => emission.warnings.push(format!(
                "record {}: unmapped location type '{}', emitting untyped location",
                record.record_id, location.location_type
            )),
        }
        let place = mint_iri("Place", &location.place_label);
        push(emission, &node, vocab::location("atPlace"), place.clone());
        push(emission, &place, vocab::rdf_type(), vocab::core("Place"));
        push(
            emission,
            &place,
            vocab::rdfs_label(),
            Term::literal(&location.place_label),
        );
        if location.from.is_some() || location.to.is_some() {
            let interval = mint_iri("TimeInterval", &local);
            push(emission, &node, vocab::core("atTime"), interval.clone());
            push(
                emission,
                &interval,
                vocab::rdf_type(),
                vocab::core("TimeInterval"),
            );
            if let Some(from) = &location.from {
                push(
                    emission,
                    &interval,
                    vocab::core("startTime"),
                    date_literal(from),
                );
            }
            if let Some(to) = &location.to {
                push(emission, &interval, vocab::core("endTime"), date_literal(to));
            }
        }
    }

    if let Some(cadastral) = &record.cadastral {
        let identity = mint_iri("CadastralIdentity", &record.record_id);
        push(
            emission,
            &entity,
            vocab::location("hasCadastralIdentity"),
            identity.clone(),
        );
        push(
            emission,
            &identity,
            vocab::rdf_type(),
            vocab::location("CadastralIdentity"),
        );
        push(
            emission,
            &identity,
            vocab::rdfs_label(),
            Term::literal(cadastral),
        );
    }

    for (i, author) in record.authors.iter().enumerate() {
        let attribution = mint_iri(
            "AuthorshipAttribution",
            &format!("{}-{}", record.record_id, i + 1),
        );
        push(
            emission,
            &entity,
            vocab::cd("hasAuthorshipAttribution"),
            attribution.clone(),
        );
        push(
            emission,
            &attribution,
            vocab::rdf_type(),
            vocab::cd("AuthorshipAttribution"),
        );
        let agent = mint_iri("Agent", &author.name);
        push(
            emission,
            &attribution,
            vocab::cd("hasAttributedAgent"),
            agent.clone(),
        );
        push(emission, &agent, vocab::rdf_type(), vocab::core("Agent"));
        push(
            emission,
            &agent,
            vocab::rdfs_label(),
            Term::literal(&author.name),
        );
        if let Some(role) = &author.role {
            push(
                emission,
                &attribution,
                vocab::cd("withRole"),
                Term::literal(role),
            );
        }
    }

    if !record.components.is_empty() {
        if top_level {
            push(
                emission,
                &entity,
                vocab::rdf_type(),
                vocab::arco("ComplexCulturalProperty"),
            );
        }
        for component in &record.components {
            let part = emit_entity(component, mapping, strict, false, emission)?;
            push(emission, &entity, vocab::core("hasPart"), part);
        }
    }
    Ok(entity)
}

/// Shared characteristic individual: minted per (kind, label), typed,
/// labeled and classified by its technical concept.
fn emit_characteristic(
    emission: &mut Emission,
    status: &Term,
    kind: &str,
    label: &str,
    concept: &str,
) -> Term {
    let node = mint_iri(kind, label);
    let concept_node = mint_iri("TechnicalConcept", concept);
    let triples = [
        Triple::new(
            status.clone(),
            vocab::dd("includesTechnicalCharacteristic"),
            node.clone(),
        ),
        Triple::new(node.clone(), vocab::rdf_type(), vocab::dd(kind)),
        Triple::new(node.clone(), vocab::rdfs_label(), Term::literal(label)),
        Triple::new(
            node.clone(),
            vocab::core("isClassifiedBy"),
            concept_node.clone(),
        ),
        Triple::new(
            concept_node.clone(),
            vocab::rdf_type(),
            vocab::dd("TechnicalConcept"),
        ),
        Triple::new(concept_node, vocab::rdfs_label(), Term::literal(concept)),
    ];
    emission.triples.extend(triples);
    node
}

fn date_literal(value: &str) -> Term {
    if value.len() == 4 {
        Term::typed_literal(value, vocab::XSD_GYEAR)
    } else {
        Term::typed_literal(value, vocab::XSD_DATE)
    }
}

/// The converted corpus: the union store plus bookkeeping.
#[derive(Debug)]
pub struct CorpusOutcome {
    pub store: TripleStore,
    pub records: usize,
    pub warnings: Vec<String>,
}

/// Convert a set of record files into one store. Record ids must be
/// unique across the corpus (components included); the output is
/// independent of file order because triples are set-merged.
pub fn convert_corpus(
    paths: &[std::path::PathBuf],
    schema: &OntologySchema,
    mapping: &FieldMapping,
    strict: bool,
) -> Result<CorpusOutcome, RecordError> {
    let mut store = TripleStore::new();
    let mut warnings = Vec::new();
    let mut ids: HashSet<String> = HashSet::new();
    let mut records = 0;

    let mut sorted: Vec<&std::path::PathBuf> = paths.iter().collect();
    sorted.sort();
    for path in sorted {
        let text = std::fs::read_to_string(path)?;
        let parsed = super::parse_record_xml(&text)?;
        warnings.extend(parsed.warnings);
        check_unique_ids(&parsed.record, &mut ids)?;
        let emission = to_rdf(&parsed.record, schema, mapping, strict)?;
        warnings.extend(emission.warnings);
        store.extend(emission.triples);
        records += 1;
    }
    Ok(CorpusOutcome {
        store,
        records,
        warnings,
    })
}

/// Record files of a corpus directory (`*.xml`, sorted).
pub fn corpus_paths(dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "xml") {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths)
}

fn check_unique_ids(
    record: &CatalogueRecord,
    ids: &mut HashSet<String>,
) -> Result<(), RecordError> {
    if !ids.insert(record.record_id.clone()) {
        return Err(RecordError::DuplicateRecordId {
            id: record.record_id.clone(),
        });
    }
    for component in &record.components {
        check_unique_ids(component, ids)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::load_schema;
    use crate::rdfizer::parse_record_xml;

    fn schema() -> OntologySchema {
        load_schema(include_str!("../../../../assets/arco.ttl")).unwrap()
    }

    #[test]
    fn minting_is_deterministic_and_percent_encoded() {
        assert_eq!(
            mint_iri("HistoricOrArtisticProperty", "0700123").as_iri(),
            Some("https://w3id.org/arco/resource/HistoricOrArtisticProperty/0700123")
        );
        assert_eq!(
            mint_iri("Technique", "pittura a olio").as_iri(),
            Some("https://w3id.org/arco/resource/Technique/pittura%20a%20olio")
        );
        assert_eq!(mint_iri("Agent", "x"), mint_iri("Agent", "x"));
    }

    #[test]
    fn painting_record_emits_the_nary_pattern() {
        let parsed = parse_record_xml(
            r#"<record id="0700123" type="OA">
                 <material>carta</material>
                 <technique>pittura a olio</technique>
               </record>"#,
        )
        .unwrap();
        let emission = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), true).unwrap();
        let store = TripleStore::from_triples(emission.triples);

        let painting = mint_iri("HistoricOrArtisticProperty", "0700123");
        let status = mint_iri("CulturalEntityTechnicalStatus", "0700123");
        let carta = mint_iri("Material", "carta");
        assert!(store.contains(&Triple::new(
            painting.clone(),
            vocab::dd("hasTechnicalStatus"),
            status.clone()
        )));
        assert!(store.contains(&Triple::new(
            status,
            vocab::dd("includesTechnicalCharacteristic"),
            carta.clone()
        )));
        assert!(store.contains(&Triple::new(carta, vocab::rdf_type(), vocab::dd("Material"))));
        // n-ary only: the shortcut is the reasoner's job.
        assert!(store.matching(None, Some(vocab::arco("hasMaterial")), None).is_empty());
    }

    #[test]
    fn version_chain_is_a_simple_path() {
        let parsed =
            parse_record_xml(r#"<record id="r9" type="F" versions="1,2,3"/>"#).unwrap();
        let emission = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), true).unwrap();
        let store = TripleStore::from_triples(emission.triples);
        let next = |a: &str, b: &str| {
            Triple::new(
                mint_iri("CatalogueRecordVersion", &format!("r9-{a}")),
                vocab::catalogue("hasNextVersion"),
                mint_iri("CatalogueRecordVersion", &format!("r9-{b}")),
            )
        };
        assert!(store.contains(&next("1", "2")));
        assert!(store.contains(&next("2", "3")));
        assert!(!store.contains(&next("1", "3")));
        assert_eq!(
            store.count_matching(None, Some(vocab::catalogue("hasNextVersion")), None),
            2
        );
    }

    #[test]
    fn minimal_record_emits_only_typing_record_and_version() {
        let parsed = parse_record_xml(r#"<record id="m1" type="MI"/>"#).unwrap();
        let emission = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), true).unwrap();
        // typing + record type + describes + version type + version label
        // + hasCatalogueRecordVersion = 6 triples exactly.
        assert_eq!(emission.triples.len(), 6);
    }

    #[test]
    fn strict_mode_rejects_unknown_code_lax_mode_warns() {
        let parsed = parse_record_xml(r#"<record id="u1" type="ZZ"/>"#).unwrap();
        let strict = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), true);
        assert!(matches!(strict, Err(RecordError::UnmappedTypeCode { .. })));

        let lax = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), false).unwrap();
        assert_eq!(lax.warnings.len(), 1);
        let store = TripleStore::from_triples(lax.triples);
        assert!(store.contains(&Triple::new(
            mint_iri("CulturalProperty", "u1"),
            vocab::rdf_type(),
            vocab::arco("CulturalProperty")
        )));
    }

    #[test]
    fn components_become_parts_of_a_complex_property() {
        let parsed = parse_record_xml(
            r#"<record id="c1" type="BDM">
                 <object>costume di carnevale</object>
                 <component id="c1-01"><object>cappello</object></component>
                 <component id="c1-02"><object>pantaloni</object></component>
               </record>"#,
        )
        .unwrap();
        let emission = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), true).unwrap();
        let store = TripleStore::from_triples(emission.triples);
        let costume = mint_iri("DemoEthnoAnthropologicalHeritage", "c1");
        assert!(store.contains(&Triple::new(
            costume.clone(),
            vocab::rdf_type(),
            vocab::arco("ComplexCulturalProperty")
        )));
        assert_eq!(store.count_matching(Some(costume), Some(vocab::core("hasPart")), None), 2);
        assert!(store.contains(&Triple::new(
            mint_iri("CulturalPropertyComponent", "c1-01"),
            vocab::rdf_type(),
            vocab::arco("CulturalPropertyComponent")
        )));
    }

    #[test]
    fn emission_is_deterministic() {
        let doc = r#"<record id="d1" type="OA" versions="1,2">
             <title>Quadro</title>
             <author role="painter">Anna Rossi</author>
             <material>tela</material>
             <location type="storage" from="1950">Milano</location>
           </record>"#;
        let parsed = parse_record_xml(doc).unwrap();
        let a = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), true).unwrap();
        let b = to_rdf(&parsed.record, &schema(), &FieldMapping::defaults(), true).unwrap();
        assert_eq!(a.triples, b.triples);
    }
}
