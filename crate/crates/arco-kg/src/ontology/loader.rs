//! Schema manifest loading and validation.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::rdf::{parse_turtle, Term, TripleStore};
use crate::vocab;

use super::{
    ClassDef, ModuleName, OntologySchema, PropertyDef, PropertyKind, SchemaError,
};

/// Load a schema from a Turtle-subset manifest. Disjointness and
/// inverses are symmetrized; the hierarchy is checked for cycles and
/// every reference for integrity.
pub fn load_schema(manifest: &str) -> Result<OntologySchema, SchemaError> {
    let store = TripleStore::from_triples(parse_turtle(manifest)?);

    let class_iris = typed_subjects(&store, vocab::OWL_CLASS)?;
    let mut property_kinds: HashMap<String, PropertyKind> = HashMap::new();
    for iri in typed_subjects(&store, vocab::OWL_OBJECT_PROPERTY)? {
        property_kinds.insert(iri, PropertyKind::Object);
    }
    for iri in typed_subjects(&store, vocab::OWL_DATATYPE_PROPERTY)? {
        property_kinds.insert(iri, PropertyKind::Datatype);
    }

    let mut classes = BTreeMap::new();
    for iri in &class_iris {
        let module = module_of(iri)?;
        classes.insert(
            iri.clone(),
            ClassDef {
                iri: iri.clone(),
                module,
                parents: iri_objects(&store, iri, vocab::RDFS_SUBCLASS_OF)?,
                disjoint_with: iri_objects(&store, iri, vocab::OWL_DISJOINT_WITH)?,
                label: literal_object(&store, iri, vocab::RDFS_LABEL),
                comment: literal_object(&store, iri, vocab::RDFS_COMMENT),
            },
        );
    }

    let mut properties = BTreeMap::new();
    for (iri, kind) in &property_kinds {
        let module = module_of(iri)?;
        properties.insert(
            iri.clone(),
            PropertyDef {
                iri: iri.clone(),
                module,
                kind: *kind,
                domain: iri_objects(&store, iri, vocab::RDFS_DOMAIN)?.pop_first(),
                range: iri_objects(&store, iri, vocab::RDFS_RANGE)?.pop_first(),
                inverse: iri_objects(&store, iri, vocab::OWL_INVERSE_OF)?.pop_first(),
                chain: read_chain(&store, iri)?,
                label: literal_object(&store, iri, vocab::RDFS_LABEL),
            },
        );
    }

    let individuals = collect_individuals(&store, &classes, &properties)?;

    let mut schema = OntologySchema {
        base_namespace: vocab::ONTOLOGY_BASE.to_string(),
        classes,
        properties,
        individuals,
    };
    symmetrize(&mut schema)?;
    validate(&schema)?;
    Ok(schema)
}

fn typed_subjects(store: &TripleStore, class: &str) -> Result<BTreeSet<String>, SchemaError> {
    store
        .subjects_with(&Term::iri(vocab::RDF_TYPE), &Term::iri(class))
        .into_iter()
        .map(|t| match t {
            Term::Iri(iri) => Ok(iri),
            other => Err(SchemaError::ExpectedIri {
                context: format!("declaration of a {class}"),
                found: other.rendered(),
            }),
        })
        .collect()
}

fn module_of(iri: &str) -> Result<ModuleName, SchemaError> {
    if !iri.starts_with(vocab::ONTOLOGY_BASE) {
        return Err(SchemaError::UnknownModule { iri: iri.into() });
    }
    ModuleName::of_iri(iri).ok_or_else(|| SchemaError::UnknownModule { iri: iri.into() })
}

fn iri_objects(
    store: &TripleStore,
    subject: &str,
    predicate: &str,
) -> Result<BTreeSet<String>, SchemaError> {
    store
        .objects_of(&Term::iri(subject), &Term::iri(predicate))
        .into_iter()
        .map(|t| match t {
            Term::Iri(iri) => Ok(iri),
            other => Err(SchemaError::ExpectedIri {
                context: format!("<{subject}> {predicate}"),
                found: other.rendered(),
            }),
        })
        .collect()
}

fn literal_object(store: &TripleStore, subject: &str, predicate: &str) -> Option<String> {
    store
        .objects_of(&Term::iri(subject), &Term::iri(predicate))
        .into_iter()
        .find_map(|t| t.as_literal().map(|l| l.value.clone()))
}

/// Walk the rdf:first/rdf:rest list behind owl:propertyChainAxiom.
fn read_chain(store: &TripleStore, property: &str) -> Result<Option<Vec<String>>, SchemaError> {
    let heads = store.objects_of(&Term::iri(property), &Term::iri(vocab::OWL_PROPERTY_CHAIN_AXIOM));
    let Some(mut node) = heads.into_iter().next() else {
        return Ok(None);
    };
    let mut chain = Vec::new();
    let nil = Term::iri(vocab::RDF_NIL);
    while node != nil {
        let first = store
            .objects_of(&node, &Term::iri(vocab::RDF_FIRST))
            .into_iter()
            .next();
        match first {
            Some(Term::Iri(iri)) => chain.push(iri),
            other => {
                return Err(SchemaError::ExpectedIri {
                    context: format!("property chain of <{property}>"),
                    found: other.map_or("nothing".into(), |t| t.rendered()),
                })
            }
        }
        node = store
            .objects_of(&node, &Term::iri(vocab::RDF_REST))
            .into_iter()
            .next()
            .ok_or_else(|| SchemaError::ExpectedIri {
                context: format!("property chain of <{property}>"),
                found: "a list without rdf:rest".into(),
            })?;
    }
    if chain.len() < 2 {
        return Err(SchemaError::ChainTooShort {
            property: property.into(),
        });
    }
    Ok(Some(chain))
}

fn collect_individuals(
    store: &TripleStore,
    classes: &BTreeMap<String, ClassDef>,
    properties: &BTreeMap<String, PropertyDef>,
) -> Result<BTreeMap<String, String>, SchemaError> {
    let meta: HashSet<&str> = [
        vocab::OWL_CLASS,
        vocab::OWL_OBJECT_PROPERTY,
        vocab::OWL_DATATYPE_PROPERTY,
        vocab::OWL_ONTOLOGY,
    ]
    .into();
    let ontology_headers: HashSet<String> = store
        .subjects_with(&Term::iri(vocab::RDF_TYPE), &Term::iri(vocab::OWL_ONTOLOGY))
        .into_iter()
        .filter_map(|t| t.as_iri().map(str::to_string))
        .collect();
    let mut individuals: BTreeMap<String, String> = BTreeMap::new();
    for triple in store.matching(None, Some(Term::iri(vocab::RDF_TYPE)), None) {
        let Term::Iri(subject) = &triple.subject else {
            continue; // list nodes from collections
        };
        if ontology_headers.contains(subject) {
            continue;
        }
        let Term::Iri(class) = &triple.object else {
            return Err(SchemaError::ExpectedIri {
                context: format!("type of <{subject}>"),
                found: triple.object.rendered(),
            });
        };
        if meta.contains(class.as_str()) {
            continue;
        }
        if classes.contains_key(subject) || properties.contains_key(subject) {
            continue;
        }
        if !classes.contains_key(class) {
            return Err(SchemaError::UndefinedClass { iri: class.clone() });
        }
        if individuals.insert(subject.clone(), class.clone()).is_some() {
            return Err(SchemaError::AmbiguousIndividual {
                iri: subject.clone(),
            });
        }
    }
    Ok(individuals)
}

fn symmetrize(schema: &mut OntologySchema) -> Result<(), SchemaError> {
    // Disjointness: if A lists B, make B list A.
    let declared: Vec<(String, String)> = schema
        .classes
        .iter()
        .flat_map(|(iri, def)| {
            def.disjoint_with
                .iter()
                .map(move |other| (iri.clone(), other.clone()))
        })
        .collect();
    for (a, b) in declared {
        if !schema.classes.contains_key(&b) {
            return Err(SchemaError::UndefinedClass { iri: b });
        }
        schema
            .classes
            .get_mut(&b)
            .unwrap()
            .disjoint_with
            .insert(a);
    }

    // Inverses: symmetric, and at most one per property.
    let pairs: Vec<(String, String)> = schema
        .properties
        .iter()
        .filter_map(|(iri, def)| def.inverse.clone().map(|inv| (iri.clone(), inv)))
        .collect();
    for (p, q) in pairs {
        if !schema.properties.contains_key(&q) {
            return Err(SchemaError::UndefinedProperty { iri: q });
        }
        let back = &mut schema.properties.get_mut(&q).unwrap().inverse;
        match back {
            None => *back = Some(p),
            Some(existing) if *existing == p => {}
            Some(existing) => {
                return Err(SchemaError::InverseConflict {
                    property: q.clone(),
                    inverse: existing.clone(),
                    conflicting: p,
                })
            }
        }
    }
    Ok(())
}

fn validate(schema: &OntologySchema) -> Result<(), SchemaError> {
    // Reference integrity of the hierarchy.
    for def in schema.classes.values() {
        for parent in &def.parents {
            if !schema.classes.contains_key(parent) {
                return Err(SchemaError::UndefinedClass { iri: parent.clone() });
            }
        }
    }

    // Acyclicity by depth-first search.
    let mut state: HashMap<&str, u8> = HashMap::new(); // 1 = visiting, 2 = done
    for start in schema.classes.keys() {
        visit(schema, start, &mut state)?;
    }

    // Chains reference defined properties.
    for def in schema.properties.values() {
        if let Some(chain) = &def.chain {
            for member in chain {
                if !schema.properties.contains_key(member) {
                    return Err(SchemaError::UndefinedChainMember {
                        property: def.iri.clone(),
                        member: member.clone(),
                    });
                }
            }
        }
        if let Some(domain) = &def.domain {
            if !schema.classes.contains_key(domain) {
                return Err(SchemaError::UndefinedClass { iri: domain.clone() });
            }
        }
        if def.kind == PropertyKind::Object {
            if let Some(range) = &def.range {
                if !schema.classes.contains_key(range) {
                    return Err(SchemaError::UndefinedClass { iri: range.clone() });
                }
            }
        }
    }

    // No class may end up disjoint with itself or a superclass.
    for (a, b) in schema.disjoint_pairs() {
        if a == b {
            return Err(SchemaError::SelfDisjoint { class: a });
        }
        if schema.is_subclass_of(&a, &b)? {
            return Err(SchemaError::DisjointSuperclass {
                sub: a,
                superclass: b,
            });
        }
        if schema.is_subclass_of(&b, &a)? {
            return Err(SchemaError::DisjointSuperclass {
                sub: b,
                superclass: a,
            });
        }
    }
    Ok(())
}

fn visit<'a>(
    schema: &'a OntologySchema,
    class: &'a str,
    state: &mut HashMap<&'a str, u8>,
) -> Result<(), SchemaError> {
    match state.get(class) {
        Some(1) => {
            return Err(SchemaError::HierarchyCycle {
                class: class.to_string(),
            })
        }
        Some(2) => return Ok(()),
        _ => {}
    }
    state.insert(class, 1);
    if let Some(def) = schema.classes.get(class) {
        for parent in &def.parents {
            visit(schema, parent, state)?;
        }
    }
    state.insert(class, 2);
    Ok(())
}
