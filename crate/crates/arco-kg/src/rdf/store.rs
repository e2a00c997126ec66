//! Indexed in-memory triple store with set semantics.

use std::collections::{HashMap, HashSet};

use super::term::{Term, Triple};

/// A pattern slot: a concrete term or a wildcard.
pub type Slot = Option<Term>;

/// An in-memory RDF graph. Duplicate inserts are ignored; lookups go
/// through subject, predicate, object and (predicate, object) indexes.
///
/// The store is single-writer: load it, then share it freely across
/// threads for reading.
#[derive(Debug, Default, Clone)]
pub struct TripleStore {
    triples: Vec<Triple>,
    seen: HashSet<Triple>,
    by_subject: HashMap<Term, Vec<usize>>,
    by_predicate: HashMap<Term, Vec<usize>>,
    by_object: HashMap<Term, Vec<usize>>,
    by_predicate_object: HashMap<(Term, Term), Vec<usize>>,
}

impl TripleStore {
    pub fn new() -> TripleStore {
        TripleStore::default()
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> TripleStore {
        let mut store = TripleStore::new();
        store.extend(triples);
        store
    }

    /// Insert one triple. Returns true if the triple was new.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if !self.seen.insert(triple.clone()) {
            return false;
        }
        let idx = self.triples.len();
        self.by_subject
            .entry(triple.subject.clone())
            .or_default()
            .push(idx);
        self.by_predicate
            .entry(triple.predicate.clone())
            .or_default()
            .push(idx);
        self.by_object
            .entry(triple.object.clone())
            .or_default()
            .push(idx);
        self.by_predicate_object
            .entry((triple.predicate.clone(), triple.object.clone()))
            .or_default()
            .push(idx);
        self.triples.push(triple);
        true
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.seen.contains(triple)
    }

    /// Triples in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// All triples matching the concrete slots of the pattern, in
    /// canonical (rendered N-Triples) order.
    pub fn matching(&self, subject: Slot, predicate: Slot, object: Slot) -> Vec<Triple> {
        let mut out = self.matching_unsorted(&subject, &predicate, &object);
        out.sort();
        out
    }

    fn matching_unsorted(&self, subject: &Slot, predicate: &Slot, object: &Slot) -> Vec<Triple> {
        let candidates: Vec<usize> = match (subject, predicate, object) {
            (Some(s), Some(p), Some(o)) => {
                let t = Triple {
                    subject: s.clone(),
                    predicate: p.clone(),
                    object: o.clone(),
                };
                return if self.seen.contains(&t) { vec![t] } else { vec![] };
            }
            (_, Some(p), Some(o)) => self
                .by_predicate_object
                .get(&(p.clone(), o.clone()))
                .cloned()
                .unwrap_or_default(),
            (Some(s), _, _) => self.by_subject.get(s).cloned().unwrap_or_default(),
            (None, _, Some(o)) => self.by_object.get(o).cloned().unwrap_or_default(),
            (None, Some(p), None) => self.by_predicate.get(p).cloned().unwrap_or_default(),
            (None, None, None) => (0..self.triples.len()).collect(),
        };
        candidates
            .into_iter()
            .map(|i| &self.triples[i])
            .filter(|t| {
                subject.as_ref().is_none_or(|s| *s == t.subject)
                    && predicate.as_ref().is_none_or(|p| *p == t.predicate)
                    && object.as_ref().is_none_or(|o| *o == t.object)
            })
            .cloned()
            .collect()
    }

    /// Number of triples matching a pattern, without sorting.
    pub fn count_matching(&self, subject: Slot, predicate: Slot, object: Slot) -> usize {
        self.matching_unsorted(&subject, &predicate, &object).len()
    }

    /// Distinct subjects of `subject predicate object` triples, canonical order.
    pub fn subjects_with(&self, predicate: &Term, object: &Term) -> Vec<Term> {
        let mut out: Vec<Term> = self
            .matching_unsorted(&None, &Some(predicate.clone()), &Some(object.clone()))
            .into_iter()
            .map(|t| t.subject)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Distinct objects of `subject predicate ?o` triples, canonical order.
    pub fn objects_of(&self, subject: &Term, predicate: &Term) -> Vec<Term> {
        let mut out: Vec<Term> = self
            .matching_unsorted(&Some(subject.clone()), &Some(predicate.clone()), &None)
            .into_iter()
            .map(|t| t.object)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// True if the two stores hold the same triple set.
    pub fn set_eq(&self, other: &TripleStore) -> bool {
        self.seen == other.seen
    }
}

impl PartialEq for TripleStore {
    fn eq(&self, other: &Self) -> bool {
        self.set_eq(other)
    }
}

impl Eq for TripleStore {}

impl FromIterator<Triple> for TripleStore {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        TripleStore::from_triples(iter)
    }
}

impl<'a> IntoIterator for &'a TripleStore {
    type Item = &'a Triple;
    type IntoIter = std::slice::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}
