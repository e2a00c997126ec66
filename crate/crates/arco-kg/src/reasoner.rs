//! Forward-chaining materialization and consistency checking.
//!
//! Three rule families run to a least fixpoint with semi-naive
//! evaluation (only new triples feed the next round):
//!
//! 1. type inheritance — `x rdf:type C`, `C ⊑ D` gives `x rdf:type D`;
//! 2. inverses — `x p y`, `p owl:inverseOf q` gives `y q x`;
//! 3. range-guarded chains — for a shortcut `s` with chain `p1 ... pk`,
//!    `x p1 ... pk y` gives `x s y` when `y` is typed with the declared
//!    range of `s`.
//!
//! The range guard is what keeps `hasMaterial` from firing on a
//! technique reached through the same n-ary status node.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::ontology::{ordered_pair, OntologySchema, PropertyKind};
use crate::rdf::{Term, Triple, TripleStore};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Disjointness,
    DomainClash,
    RangeClash,
}

/// A consistency finding: an entity typed with two disjoint classes, or
/// a triple whose subject/object is typed disjointly from the declared
/// domain/range.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub entity: String,
    pub classes: (String, String),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<String>,
}

impl Violation {
    pub fn text_line(&self) -> String {
        match self.kind {
            ViolationKind::Disjointness => format!(
                "disjointness: {} typed with both <{}> and <{}>",
                self.entity, self.classes.0, self.classes.1
            ),
            ViolationKind::DomainClash => format!(
                "domain-clash: {} typed <{}>, disjoint from domain <{}> in {}",
                self.entity,
                self.classes.0,
                self.classes.1,
                self.triple.as_deref().unwrap_or("?")
            ),
            ViolationKind::RangeClash => format!(
                "range-clash: {} typed <{}>, disjoint from range <{}> in {}",
                self.entity,
                self.classes.0,
                self.classes.1,
                self.triple.as_deref().unwrap_or("?")
            ),
        }
    }
}

/// Render violations as the line-oriented text report.
pub fn violations_text(violations: &[Violation]) -> String {
    let mut out = String::new();
    for v in violations {
        out.push_str(&v.text_line());
        out.push('\n');
    }
    out
}

/// Render violations as the machine-readable JSON report.
pub fn violations_json(violations: &[Violation]) -> serde_json::Value {
    serde_json::json!({ "violations": violations })
}

struct Rules {
    /// class -> strict ancestors
    ancestors: HashMap<String, Vec<String>>,
    /// property -> inverse property
    inverses: HashMap<String, String>,
    chains: Vec<ChainRule>,
}

struct ChainRule {
    shortcut: Term,
    chain: Vec<Term>,
    range: Option<Term>,
}

fn compile(schema: &OntologySchema) -> Rules {
    let ancestors = schema
        .classes
        .keys()
        .map(|c| {
            let mut up: Vec<String> = schema
                .superclasses_of(c)
                .into_iter()
                .filter(|a| a != c)
                .collect();
            up.sort();
            (c.clone(), up)
        })
        .collect();
    let inverses = schema
        .properties
        .values()
        .filter_map(|p| p.inverse.clone().map(|q| (p.iri.clone(), q)))
        .collect();
    let chains = schema
        .chain_properties()
        .map(|p| ChainRule {
            shortcut: Term::iri(&p.iri),
            chain: p.chain.as_ref().unwrap().iter().map(Term::iri).collect(),
            range: p.range.as_ref().map(Term::iri),
        })
        .collect();
    Rules {
        ancestors,
        inverses,
        chains,
    }
}

/// Materialize a store to its least fixpoint under the schema rules.
pub fn materialize(store: TripleStore, schema: &OntologySchema) -> TripleStore {
    let rules = compile(schema);
    let rdf_type = Term::iri(vocab::RDF_TYPE);

    let mut store = store;
    let mut delta: Vec<Triple> = store.iter().cloned().collect();

    while !delta.is_empty() {
        let mut derived: Vec<Triple> = Vec::new();

        for triple in &delta {
            // Type inheritance.
            if triple.predicate == rdf_type {
                if let Term::Iri(class) = &triple.object {
                    if let Some(ups) = rules.ancestors.get(class) {
                        for d in ups {
                            derived.push(Triple::new(
                                triple.subject.clone(),
                                rdf_type.clone(),
                                Term::iri(d),
                            ));
                        }
                    }
                }
            }
            // Inverses.
            if let Term::Iri(p) = &triple.predicate {
                if let Some(q) = rules.inverses.get(p) {
                    if !triple.object.is_literal() {
                        derived.push(Triple::new(
                            triple.object.clone(),
                            Term::iri(q),
                            triple.subject.clone(),
                        ));
                    }
                }
            }
        }

        for rule in &rules.chains {
            derive_chain(&store, &delta, rule, &rdf_type, &mut derived);
        }

        let mut next = Vec::new();
        for t in derived {
            if store.insert(t.clone()) {
                next.push(t);
            }
        }
        delta = next;
    }
    store
}

/// Semi-naive chain step: fire the rule for every way some body atom
/// falls in the delta, joining the remaining positions against the full
/// store.
fn derive_chain(
    store: &TripleStore,
    delta: &[Triple],
    rule: &ChainRule,
    rdf_type: &Term,
    derived: &mut Vec<Triple>,
) {
    let k = rule.chain.len();
    for triple in delta {
        // Delta atom at chain position i.
        for i in 0..k {
            if triple.predicate != rule.chain[i] {
                continue;
            }
            let lefts = walk_left(store, &triple.subject, &rule.chain[..i]);
            let rights = walk_right(store, &triple.object, &rule.chain[i + 1..]);
            for y in &rights {
                if !range_ok(store, rule, rdf_type, y) {
                    continue;
                }
                for x in &lefts {
                    derived.push(Triple::new(x.clone(), rule.shortcut.clone(), y.clone()));
                }
            }
        }
        // Delta atom is the range guard itself.
        if let Some(range) = &rule.range {
            if triple.predicate == *rdf_type && triple.object == *range {
                let y = &triple.subject;
                let mut xs: BTreeSet<Term> = BTreeSet::new();
                for t in store.matching(None, Some(rule.chain[k - 1].clone()), Some(y.clone())) {
                    xs.extend(walk_left(store, &t.subject, &rule.chain[..k - 1]));
                }
                for x in xs {
                    derived.push(Triple::new(x, rule.shortcut.clone(), y.clone()));
                }
            }
        }
    }
}

fn range_ok(store: &TripleStore, rule: &ChainRule, rdf_type: &Term, y: &Term) -> bool {
    match &rule.range {
        None => true,
        Some(range) => {
            !y.is_literal()
                && store.contains(&Triple::new(y.clone(), rdf_type.clone(), range.clone()))
        }
    }
}

/// Nodes reaching `end` through the given property path.
fn walk_left(store: &TripleStore, end: &Term, path: &[Term]) -> BTreeSet<Term> {
    let mut nodes: BTreeSet<Term> = BTreeSet::from([end.clone()]);
    for p in path.iter().rev() {
        let mut prev = BTreeSet::new();
        for n in &nodes {
            for t in store.matching(None, Some(p.clone()), Some(n.clone())) {
                prev.insert(t.subject);
            }
        }
        nodes = prev;
    }
    nodes
}

/// Nodes reachable from `start` through the given property path.
fn walk_right(store: &TripleStore, start: &Term, path: &[Term]) -> BTreeSet<Term> {
    let mut nodes: BTreeSet<Term> = BTreeSet::from([start.clone()]);
    for p in path {
        let mut next = BTreeSet::new();
        for n in &nodes {
            if n.is_literal() {
                continue;
            }
            for t in store.matching(Some(n.clone()), Some(p.clone()), None) {
                next.insert(t.object);
            }
        }
        nodes = next;
    }
    nodes
}

/// One disjointness violation per (entity, declared disjoint axiom)
/// whose two sides are both present among the entity's types, in
/// deterministic order. The store is expected to be materialized.
pub fn check_consistency(store: &TripleStore, schema: &OntologySchema) -> Vec<Violation> {
    let types = type_map(store);
    let axioms = compiled_axioms(schema);

    let mut out = Vec::new();
    for (entity, entity_types) in &types {
        for (a, b, down_a, down_b) in &axioms {
            let hit_a = entity_types.iter().any(|t| down_a.contains(t.as_str()));
            let hit_b = entity_types.iter().any(|t| down_b.contains(t.as_str()));
            if hit_a && hit_b {
                out.push(Violation {
                    kind: ViolationKind::Disjointness,
                    entity: entity.clone(),
                    classes: (a.clone(), b.clone()),
                    triple: None,
                });
            }
        }
    }
    out
}

/// Materialize, then check; the convenience used by the pipeline.
pub fn materialize_and_check(
    store: TripleStore,
    schema: &OntologySchema,
) -> (TripleStore, Vec<Violation>) {
    let store = materialize(store, schema);
    let violations = check_consistency(&store, schema);
    (store, violations)
}

/// Domain/range clashes, reported separately because they are warnings
/// rather than hard violations: the subject (object) of a triple is
/// typed with a class disjoint from the declared domain (range).
pub fn domain_range_warnings(store: &TripleStore, schema: &OntologySchema) -> Vec<Violation> {
    let types = type_map(store);
    let pairs = schema.disjoint_pairs();
    let disjoint = |a: &str, b: &str| pairs.contains(&ordered_pair(a, b));

    let mut out = Vec::new();
    let mut triples: Vec<&Triple> = store.iter().collect();
    triples.sort();
    for triple in triples {
        let Term::Iri(p) = &triple.predicate else {
            continue;
        };
        let Some(def) = schema.properties.get(p) else {
            continue;
        };
        if let Some(domain) = &def.domain {
            let entity = triple.subject.rendered();
            if let Some(subject_types) = types.get(&entity) {
                for t in subject_types {
                    if disjoint(t, domain) {
                        out.push(Violation {
                            kind: ViolationKind::DomainClash,
                            entity: entity.clone(),
                            classes: (t.clone(), domain.clone()),
                            triple: Some(triple.rendered()),
                        });
                    }
                }
            }
        }
        if def.kind == PropertyKind::Object {
            if let Some(range) = &def.range {
                let entity = triple.object.rendered();
                if let Some(object_types) = types.get(&entity) {
                    for t in object_types {
                        if disjoint(t, range) {
                            out.push(Violation {
                                kind: ViolationKind::RangeClash,
                                entity: entity.clone(),
                                classes: (t.clone(), range.clone()),
                                triple: Some(triple.rendered()),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Entity (rendered) -> set of type IRIs, ordered for determinism.
fn type_map(store: &TripleStore) -> BTreeMap<String, BTreeSet<String>> {
    let mut map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for triple in store.matching(None, Some(Term::iri(vocab::RDF_TYPE)), None) {
        if let Term::Iri(class) = &triple.object {
            map.entry(triple.subject.rendered())
                .or_default()
                .insert(class.clone());
        }
    }
    map
}

type Axiom = (String, String, HashSet<String>, HashSet<String>);

fn compiled_axioms(schema: &OntologySchema) -> Vec<Axiom> {
    schema
        .declared_disjoint_pairs()
        .into_iter()
        .map(|(a, b)| {
            let down_a: HashSet<String> = schema.subclasses_of(&a).into_iter().collect();
            let down_b: HashSet<String> = schema.subclasses_of(&b).into_iter().collect();
            (a, b, down_a, down_b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::load_schema;

    fn schema() -> OntologySchema {
        load_schema(include_str!("../../../assets/arco.ttl")).unwrap()
    }

    fn iri(s: &str) -> Term {
        Term::iri(s)
    }

    #[test]
    fn type_inheritance_reaches_the_root() {
        let schema = schema();
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            iri("urn:x"),
            vocab::rdf_type(),
            vocab::arco("PhotographicHeritage"),
        ));
        let store = materialize(store, &schema);
        for class in [
            "TangibleCulturalProperty",
            "MovableCulturalProperty",
            "CulturalProperty",
        ] {
            assert!(
                store.contains(&Triple::new(iri("urn:x"), vocab::rdf_type(), vocab::arco(class))),
                "missing inherited type {class}"
            );
        }
    }

    #[test]
    fn chain_fires_only_for_the_matching_range() {
        let schema = schema();
        let mut store = TripleStore::new();
        let painting = iri("urn:painting");
        let status = iri("urn:status");
        let carta = iri("urn:carta");
        let oil = iri("urn:oil");
        store.insert(Triple::new(
            painting.clone(),
            vocab::dd("hasTechnicalStatus"),
            status.clone(),
        ));
        store.insert(Triple::new(
            status.clone(),
            vocab::dd("includesTechnicalCharacteristic"),
            carta.clone(),
        ));
        store.insert(Triple::new(
            status.clone(),
            vocab::dd("includesTechnicalCharacteristic"),
            oil.clone(),
        ));
        store.insert(Triple::new(carta.clone(), vocab::rdf_type(), vocab::dd("Material")));
        store.insert(Triple::new(oil.clone(), vocab::rdf_type(), vocab::dd("Technique")));

        let store = materialize(store, &schema);
        assert!(store.contains(&Triple::new(
            painting.clone(),
            vocab::arco("hasMaterial"),
            carta.clone()
        )));
        assert!(store.contains(&Triple::new(
            painting.clone(),
            vocab::arco("hasTechnique"),
            oil.clone()
        )));
        // No cross-derivation.
        assert!(!store.contains(&Triple::new(
            painting.clone(),
            vocab::arco("hasMaterial"),
            oil.clone()
        )));
        assert!(!store.contains(&Triple::new(painting, vocab::arco("hasTechnique"), carta)));
    }

    #[test]
    fn chain_does_not_fire_without_range_typing() {
        let schema = schema();
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            iri("urn:p"),
            vocab::dd("hasTechnicalStatus"),
            iri("urn:s"),
        ));
        store.insert(Triple::new(
            iri("urn:s"),
            vocab::dd("includesTechnicalCharacteristic"),
            iri("urn:mystery"),
        ));
        let store = materialize(store, &schema);
        assert!(store
            .matching(None, Some(vocab::arco("hasMaterial")), None)
            .is_empty());
    }

    #[test]
    fn inverse_rule_runs_both_ways() {
        let schema = schema();
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            iri("urn:record"),
            vocab::catalogue("describes"),
            iri("urn:property"),
        ));
        store.insert(Triple::new(
            iri("urn:v2"),
            vocab::catalogue("hasPreviousVersion"),
            iri("urn:v1"),
        ));
        let store = materialize(store, &schema);
        assert!(store.contains(&Triple::new(
            iri("urn:property"),
            vocab::catalogue("isDescribedBy"),
            iri("urn:record")
        )));
        assert!(store.contains(&Triple::new(
            iri("urn:v1"),
            vocab::catalogue("hasNextVersion"),
            iri("urn:v2")
        )));
    }

    #[test]
    fn empty_store_stays_empty() {
        let schema = schema();
        assert!(materialize(TripleStore::new(), &schema).is_empty());
    }

    #[test]
    fn double_typing_yields_one_violation_per_entity() {
        let schema = schema();
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            iri("urn:x"),
            vocab::rdf_type(),
            vocab::arco("TangibleCulturalProperty"),
        ));
        store.insert(Triple::new(
            iri("urn:x"),
            vocab::rdf_type(),
            vocab::arco("IntangibleCulturalProperty"),
        ));
        let (_, violations) = materialize_and_check(store, &schema);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::Disjointness);
        assert_eq!(violations[0].entity, "<urn:x>");
    }

    #[test]
    fn inherited_disjointness_detected_once() {
        let schema = schema();
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            iri("urn:x"),
            vocab::rdf_type(),
            vocab::arco("MovableCulturalProperty"),
        ));
        store.insert(Triple::new(
            iri("urn:x"),
            vocab::rdf_type(),
            vocab::arco("IntangibleCulturalProperty"),
        ));
        let (_, violations) = materialize_and_check(store, &schema);
        assert_eq!(violations.len(), 1);
        let (a, b) = &violations[0].classes;
        assert!(a.ends_with("IntangibleCulturalProperty"));
        assert!(b.ends_with("TangibleCulturalProperty"));
    }

    #[test]
    fn clean_store_has_no_violations() {
        let schema = schema();
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            iri("urn:x"),
            vocab::rdf_type(),
            vocab::arco("HistoricOrArtisticProperty"),
        ));
        let (_, violations) = materialize_and_check(store, &schema);
        assert!(violations.is_empty());
    }

    #[test]
    fn materialize_is_idempotent() {
        let schema = schema();
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            iri("urn:x"),
            vocab::rdf_type(),
            vocab::arco("MusicHeritage"),
        ));
        store.insert(Triple::new(
            iri("urn:r"),
            vocab::catalogue("describes"),
            iri("urn:x"),
        ));
        let once = materialize(store, &schema);
        let twice = materialize(once.clone(), &schema);
        assert_eq!(once, twice);
    }

    #[test]
    fn domain_clash_is_a_warning_not_a_violation() {
        let schema = schema();
        let mut store = TripleStore::new();
        // An agent with a technical status: Agent is disjoint from the
        // declared domain's subtree? Use a CulturalEvent as the subject of
        // hasTechnicalStatus (domain CulturalEntity, disjoint from events).
        store.insert(Triple::new(
            iri("urn:event"),
            vocab::rdf_type(),
            vocab::ce("Exhibition"),
        ));
        store.insert(Triple::new(
            iri("urn:event"),
            vocab::dd("hasTechnicalStatus"),
            iri("urn:s"),
        ));
        let store = materialize(store, &schema);
        assert!(check_consistency(&store, &schema).is_empty());
        let warnings = domain_range_warnings(&store, &schema);
        assert!(warnings
            .iter()
            .any(|w| w.kind == ViolationKind::DomainClash && w.entity == "<urn:event>"));
    }
}
