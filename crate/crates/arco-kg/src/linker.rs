//! Cross-dataset link discovery: `owl:sameAs` candidates scored by
//! Jaccard similarity over tokenized entity labels, cut off at a
//! threshold (0.9 by default — selective enough that surviving links
//! are near-certain).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::rdf::{Term, Triple, TripleStore};
use crate::vocab;

/// A scored pair considered for a sameAs link.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkCandidate {
    pub source: Term,
    pub target: Term,
    pub score: f64,
}

#[derive(Debug, Clone)]
pub struct LinkerConfig {
    /// Inclusive similarity cut-off in [0, 1].
    pub threshold: f64,
    /// Entities must carry one of these types (after materialization).
    pub restrict_to_classes: BTreeSet<String>,
    pub label_predicate: String,
}

impl Default for LinkerConfig {
    fn default() -> Self {
        LinkerConfig {
            threshold: 0.9,
            restrict_to_classes: [
                format!("{}Agent", vocab::NS_CORE),
                format!("{}Place", vocab::NS_CORE),
            ]
            .into(),
            label_predicate: vocab::RDFS_LABEL.to_string(),
        }
    }
}

/// Resolve a class argument: the shorthands `agents`/`places`, a CURIE
/// with a well-known prefix, or an absolute IRI.
pub fn parse_class_spec(spec: &str) -> Option<String> {
    match spec {
        "agents" => Some(format!("{}Agent", vocab::NS_CORE)),
        "places" => Some(format!("{}Place", vocab::NS_CORE)),
        other => vocab::expand_curie(other)
            .or_else(|| crate::rdf::has_scheme(other).then(|| other.to_string())),
    }
}

/// Lowercased tokens split on any non-alphanumeric run (Unicode-aware),
/// with set semantics.
pub fn tokenize_label(text: &str) -> BTreeSet<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

/// |a ∩ b| / |a ∪ b|; 1.0 when both sets are empty.
pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let intersection = small.iter().filter(|t| large.contains(*t)).count();
    let union = a.len() + b.len() - intersection;
    intersection as f64 / union as f64
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LinkReport {
    pub source_entities: usize,
    pub target_entities: usize,
    pub skipped_unlabeled_source: usize,
    pub skipped_unlabeled_target: usize,
    pub pairs_scored: usize,
    pub links_emitted: usize,
}

#[derive(Debug)]
pub struct LinkOutcome {
    /// One `source owl:sameAs target` triple per accepted pair,
    /// deterministic order.
    pub links: Vec<Triple>,
    pub candidates: Vec<LinkCandidate>,
    pub report: LinkReport,
}

struct LabeledEntity {
    iri: Term,
    label_tokens: Vec<BTreeSet<String>>,
}

/// Entities of the restricted classes with their tokenized labels; the
/// unlabeled count is reported, not an error.
fn collect_entities(
    store: &TripleStore,
    config: &LinkerConfig,
    skipped: &mut usize,
) -> Vec<LabeledEntity> {
    let mut iris: BTreeSet<Term> = BTreeSet::new();
    for class in &config.restrict_to_classes {
        for entity in store.subjects_with(&vocab::rdf_type(), &Term::iri(class)) {
            if entity.is_iri() {
                iris.insert(entity);
            }
        }
    }
    let label = Term::iri(&config.label_predicate);
    let mut out = Vec::new();
    for iri in iris {
        let tokens: Vec<BTreeSet<String>> = store
            .objects_of(&iri, &label)
            .into_iter()
            .filter_map(|t| t.as_literal().map(|l| tokenize_label(&l.value)))
            .collect();
        if tokens.is_empty() {
            *skipped += 1;
            continue;
        }
        out.push(LabeledEntity {
            iri,
            label_tokens: tokens,
        });
    }
    out
}

fn best_score(a: &LabeledEntity, b: &LabeledEntity) -> f64 {
    let mut best: f64 = 0.0;
    for ta in &a.label_tokens {
        for tb in &b.label_tokens {
            best = best.max(jaccard(ta, tb));
        }
    }
    best
}

/// Discover sameAs links between two materialized stores.
///
/// A token-index blocking step skips pairs that cannot share a token;
/// because any pair with positive Jaccard shares one, the output is
/// identical to the all-pairs computation (pairs of empty-token labels
/// score 1.0 and are kept via a dedicated bucket).
pub fn discover_links(
    source: &TripleStore,
    target: &TripleStore,
    config: &LinkerConfig,
) -> LinkOutcome {
    let mut report = LinkReport::default();
    let sources = collect_entities(source, config, &mut report.skipped_unlabeled_source);
    let targets = collect_entities(target, config, &mut report.skipped_unlabeled_target);
    report.source_entities = sources.len() + report.skipped_unlabeled_source;
    report.target_entities = targets.len() + report.skipped_unlabeled_target;

    // Token -> target indexes; plus the bucket of targets carrying an
    // empty token set.
    let mut index: HashMap<&str, Vec<usize>> = HashMap::new();
    let mut empty_bucket: Vec<usize> = Vec::new();
    for (i, entity) in targets.iter().enumerate() {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for tokens in &entity.label_tokens {
            if tokens.is_empty() && !empty_bucket.contains(&i) {
                empty_bucket.push(i);
            }
            for token in tokens {
                if seen.insert(token) {
                    index.entry(token).or_default().push(i);
                }
            }
        }
    }

    let all_pairs = config.threshold <= 0.0;
    let mut candidates: Vec<LinkCandidate> = Vec::new();
    for entity in &sources {
        let candidate_targets: Vec<usize> = if all_pairs {
            (0..targets.len()).collect()
        } else {
            let mut ids: BTreeSet<usize> = BTreeSet::new();
            let mut has_empty_label = false;
            for tokens in &entity.label_tokens {
                if tokens.is_empty() {
                    has_empty_label = true;
                }
                for token in tokens {
                    if let Some(bucket) = index.get(token.as_str()) {
                        ids.extend(bucket.iter().copied());
                    }
                }
            }
            if has_empty_label {
                ids.extend(empty_bucket.iter().copied());
            }
            ids.into_iter().collect()
        };
        for &t in &candidate_targets {
            let other = &targets[t];
            if entity.iri == other.iri {
                continue;
            }
            report.pairs_scored += 1;
            let score = best_score(entity, other);
            if score >= config.threshold {
                candidates.push(LinkCandidate {
                    source: entity.iri.clone(),
                    target: other.iri.clone(),
                    score,
                });
            }
        }
    }

    candidates.sort_by(|a, b| (&a.source, &a.target).cmp(&(&b.source, &b.target)));
    let links: Vec<Triple> = candidates
        .iter()
        .map(|c| Triple::new(c.source.clone(), vocab::owl_same_as(), c.target.clone()))
        .collect();
    report.links_emitted = links.len();
    LinkOutcome {
        links,
        candidates,
        report,
    }
}

/// Brute-force all-pairs scoring; the oracle the blocked path must match.
pub fn discover_links_all_pairs(
    source: &TripleStore,
    target: &TripleStore,
    config: &LinkerConfig,
) -> Vec<LinkCandidate> {
    let mut skipped = 0;
    let sources = collect_entities(source, config, &mut skipped);
    let targets = collect_entities(target, config, &mut skipped);
    let mut out = Vec::new();
    for a in &sources {
        for b in &targets {
            if a.iri == b.iri {
                continue;
            }
            let score = best_score(a, b);
            if score >= config.threshold {
                out.push(LinkCandidate {
                    source: a.iri.clone(),
                    target: b.iri.clone(),
                    score,
                });
            }
        }
    }
    out.sort_by(|a, b| (&a.source, &a.target).cmp(&(&b.source, &b.target)));
    out
}

/// Entities grouped per configured class, handy for reports.
pub fn entities_by_class(store: &TripleStore, config: &LinkerConfig) -> BTreeMap<String, usize> {
    config
        .restrict_to_classes
        .iter()
        .map(|class| {
            (
                class.clone(),
                store
                    .subjects_with(&vocab::rdf_type(), &Term::iri(class))
                    .len(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(words: &[&str]) -> BTreeSet<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn tokenize_splits_lowercases_and_dedupes() {
        assert_eq!(
            tokenize_label("Leonardo da Vinci"),
            tokens(&["leonardo", "da", "vinci"])
        );
        assert_eq!(tokenize_label(""), tokens(&[]));
        assert_eq!(
            tokenize_label("Città di Roma — 1871"),
            tokens(&["città", "di", "roma", "1871"])
        );
        assert_eq!(tokenize_label("Roma, roma; ROMA"), tokens(&["roma"]));
    }

    #[test]
    fn jaccard_basics() {
        let a = tokens(&["leonardo", "da", "vinci"]);
        let b = tokens(&["leonardo", "di", "ser", "piero", "da", "vinci"]);
        assert_eq!(jaccard(&a, &a), 1.0);
        assert_eq!(jaccard(&a, &tokens(&["x", "y"])), 0.0);
        assert_eq!(jaccard(&a, &b), 0.5);
        assert_eq!(jaccard(&b, &a), 0.5);
        assert_eq!(jaccard(&tokens(&[]), &tokens(&[])), 1.0);
    }

    fn place_store(ns: &str, labels: &[&str]) -> TripleStore {
        let mut store = TripleStore::new();
        for (i, label) in labels.iter().enumerate() {
            let iri = Term::iri(format!("{ns}{i}"));
            store.insert(Triple::new(
                iri.clone(),
                vocab::rdf_type(),
                vocab::core("Place"),
            ));
            store.insert(Triple::new(
                iri,
                vocab::rdfs_label(),
                Term::literal(*label),
            ));
        }
        store
    }

    #[test]
    fn identical_labels_link_at_full_score() {
        let source = place_store("urn:s:", &["Roma"]);
        let target = place_store("urn:t:", &["Roma"]);
        let outcome = discover_links(&source, &target, &LinkerConfig::default());
        assert_eq!(outcome.links.len(), 1);
        assert_eq!(outcome.candidates[0].score, 1.0);
        assert_eq!(
            outcome.links[0],
            Triple::new(Term::iri("urn:s:0"), vocab::owl_same_as(), Term::iri("urn:t:0"))
        );
    }

    #[test]
    fn threshold_cuts_and_is_inclusive() {
        let source = place_store("urn:s:", &["Leonardo da Vinci"]);
        let target = place_store("urn:t:", &["Leonardo di ser Piero da Vinci"]);

        let strict = LinkerConfig::default(); // 0.9
        assert!(discover_links(&source, &target, &strict).links.is_empty());

        let lax = LinkerConfig {
            threshold: 0.5,
            ..LinkerConfig::default()
        };
        let outcome = discover_links(&source, &target, &lax);
        assert_eq!(outcome.links.len(), 1);
        assert_eq!(outcome.candidates[0].score, 0.5);
    }

    #[test]
    fn unlabeled_entities_are_skipped_and_counted() {
        let mut source = place_store("urn:s:", &["Roma"]);
        source.insert(Triple::new(
            Term::iri("urn:s:nolabel"),
            vocab::rdf_type(),
            vocab::core("Place"),
        ));
        let target = place_store("urn:t:", &["Roma"]);
        let outcome = discover_links(&source, &target, &LinkerConfig::default());
        assert_eq!(outcome.report.skipped_unlabeled_source, 1);
        assert_eq!(outcome.report.source_entities, 2);
        assert_eq!(outcome.links.len(), 1);
    }

    #[test]
    fn class_restriction_excludes_other_types() {
        let mut source = place_store("urn:s:", &["Roma"]);
        // A cultural property labeled Roma must not link.
        source.insert(Triple::new(
            Term::iri("urn:s:prop"),
            vocab::rdf_type(),
            vocab::arco("CulturalProperty"),
        ));
        source.insert(Triple::new(
            Term::iri("urn:s:prop"),
            vocab::rdfs_label(),
            Term::literal("Roma"),
        ));
        let target = place_store("urn:t:", &["Roma"]);
        let outcome = discover_links(&source, &target, &LinkerConfig::default());
        assert_eq!(outcome.links.len(), 1);
        assert_eq!(outcome.links[0].subject, Term::iri("urn:s:0"));
    }

    #[test]
    fn blocking_matches_all_pairs() {
        let source = place_store(
            "urn:s:",
            &["Roma", "Milano", "Napoli centro", "Torino", "—"],
        );
        let target = place_store(
            "urn:t:",
            &["roma", "Milano città", "Napoli", "Firenze", "––", "Torino"],
        );
        for threshold in [0.0, 0.3, 0.5, 0.9] {
            let config = LinkerConfig {
                threshold,
                ..LinkerConfig::default()
            };
            let blocked = discover_links(&source, &target, &config).candidates;
            let brute = discover_links_all_pairs(&source, &target, &config);
            assert_eq!(blocked, brute, "threshold {threshold}");
        }
    }

    #[test]
    fn class_spec_shorthands() {
        assert_eq!(
            parse_class_spec("agents").unwrap(),
            format!("{}Agent", vocab::NS_CORE)
        );
        assert_eq!(
            parse_class_spec("a-dd:Material").unwrap(),
            format!("{}Material", vocab::NS_DD)
        );
        assert_eq!(parse_class_spec("urn:x:C").unwrap(), "urn:x:C");
        assert_eq!(parse_class_spec("not a class"), None);
    }
}
