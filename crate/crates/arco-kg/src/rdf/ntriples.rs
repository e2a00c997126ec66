//! N-Triples reading and canonical writing.

use std::collections::HashMap;

use super::lex::{read_iri_body, read_langtag, read_name, read_string_body, Cursor};
use super::term::{has_scheme, Term, Triple};
use super::store::TripleStore;
use super::RdfError;

/// Parse an N-Triples document. Triples are returned in document order
/// with duplicates preserved; deduplication happens on store insert.
///
/// Blank node labels are normalized: if every label in the document
/// already has the canonical `b<n>` form it is kept verbatim (this is
/// what makes `parse(serialize(store))` an identity), otherwise all
/// labels are renamed to `b0`, `b1`, ... in document order.
pub fn parse_ntriples(text: &str) -> Result<Vec<Triple>, RdfError> {
    let mut triples = Vec::new();
    let mut label_order: Vec<String> = Vec::new();
    let mut seen_labels: HashMap<String, usize> = HashMap::new();

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut cursor = Cursor::new(line);
        cursor.skip_trivia();
        if cursor.is_at_end() {
            continue;
        }
        let triple = parse_line(&mut cursor, line_no)?;
        for term in [&triple.subject, &triple.object] {
            if let Term::Blank(label) = term {
                if !seen_labels.contains_key(label) {
                    seen_labels.insert(label.clone(), label_order.len());
                    label_order.push(label.clone());
                }
            }
        }
        triples.push(triple);
    }

    let canonical = label_order.iter().all(|l| is_canonical_label(l));
    if !canonical {
        let rename: HashMap<&str, String> = label_order
            .iter()
            .enumerate()
            .map(|(n, l)| (l.as_str(), format!("b{n}")))
            .collect();
        for triple in &mut triples {
            for term in [&mut triple.subject, &mut triple.object] {
                if let Term::Blank(label) = term {
                    *label = rename[label.as_str()].clone();
                }
            }
        }
    }
    Ok(triples)
}

pub(crate) fn is_canonical_label(label: &str) -> bool {
    let Some(rest) = label.strip_prefix('b') else {
        return false;
    };
    !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())
}

fn parse_line(cursor: &mut Cursor, line: usize) -> Result<Triple, RdfError> {
    let err = |message: String| RdfError::Syntax { line, message };

    let subject = parse_term(cursor, line)?;
    if subject.is_literal() {
        return Err(err("literal not allowed as subject".into()));
    }
    cursor.skip_trivia();
    let predicate = parse_term(cursor, line)?;
    if !predicate.is_iri() {
        return Err(err("predicate must be an IRI".into()));
    }
    cursor.skip_trivia();
    let object = parse_term(cursor, line)?;
    cursor.skip_trivia();
    if !cursor.eat('.') {
        return Err(err("expected '.' at end of statement".into()));
    }
    cursor.skip_trivia();
    if !cursor.is_at_end() {
        return Err(err("unexpected trailing content after '.'".into()));
    }
    Ok(Triple {
        subject,
        predicate,
        object,
    })
}

fn parse_term(cursor: &mut Cursor, line: usize) -> Result<Term, RdfError> {
    let err = |message: String| RdfError::Syntax { line, message };

    match cursor.peek() {
        Some('<') => {
            cursor.bump();
            let iri = read_iri_body(cursor).map_err(err)?;
            if !has_scheme(&iri) {
                return Err(RdfError::RelativeIri { line, iri });
            }
            Ok(Term::Iri(iri))
        }
        Some('_') => {
            cursor.bump();
            if !cursor.eat(':') {
                return Err(err("expected ':' after '_' in blank node".into()));
            }
            let label = read_name(cursor);
            if label.is_empty() {
                return Err(err("empty blank node label".into()));
            }
            Ok(Term::Blank(label))
        }
        Some('"') => {
            cursor.bump();
            let value = read_string_body(cursor).map_err(err)?;
            if cursor.eat('@') {
                let lang = read_langtag(cursor).map_err(err)?;
                Ok(Term::lang_literal(value, lang))
            } else if cursor.starts_with("^^") {
                cursor.bump();
                cursor.bump();
                if !cursor.eat('<') {
                    return Err(err("expected IRI after '^^'".into()));
                }
                let dt = read_iri_body(cursor).map_err(err)?;
                if !has_scheme(&dt) {
                    return Err(RdfError::RelativeIri { line, iri: dt });
                }
                Ok(Term::typed_literal(value, dt))
            } else {
                Ok(Term::literal(value))
            }
        }
        Some(c) => Err(err(format!("unexpected character '{c}'"))),
        None => Err(err("unexpected end of statement".into())),
    }
}

/// Serialize a store as canonical N-Triples: one line per triple,
/// sorted lexicographically by rendered form, byte-identical across runs.
pub fn serialize_canonical(store: &TripleStore) -> String {
    let mut lines: Vec<String> = store.iter().map(Triple::rendered).collect();
    lines.sort();
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_line() {
        let triples = parse_ntriples("<urn:a> <urn:p> \"x\" .").unwrap();
        assert_eq!(triples.len(), 1);
        assert_eq!(triples[0].object, Term::literal("x"));
    }

    #[test]
    fn empty_document() {
        assert!(parse_ntriples("").unwrap().is_empty());
        assert!(parse_ntriples("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn duplicates_preserved_in_list() {
        let doc = "<urn:a> <urn:p> <urn:b> .\n<urn:a> <urn:p> <urn:b> .\n";
        assert_eq!(parse_ntriples(doc).unwrap().len(), 2);
    }

    #[test]
    fn syntax_error_carries_line_number() {
        let doc = "<urn:a> <urn:p> <urn:b> .\n<urn:a> <urn:p> nonsense .\n";
        match parse_ntriples(doc) {
            Err(RdfError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn relative_iri_rejected() {
        match parse_ntriples("<urn:a> <urn:p> <no-scheme> .") {
            Err(RdfError::RelativeIri { line: 1, iri }) => assert_eq!(iri, "no-scheme"),
            other => panic!("expected relative-IRI error, got {other:?}"),
        }
    }

    #[test]
    fn blank_labels_renamed_in_document_order() {
        let doc = "_:x <urn:p> _:y .\n_:y <urn:p> _:x .\n";
        let triples = parse_ntriples(doc).unwrap();
        assert_eq!(triples[0].subject, Term::blank("b0"));
        assert_eq!(triples[0].object, Term::blank("b1"));
        assert_eq!(triples[1].subject, Term::blank("b1"));
    }

    #[test]
    fn canonical_blank_labels_kept() {
        let doc = "<urn:a> <urn:p> _:b7 .\n_:b2 <urn:p> \"x\" .\n";
        let triples = parse_ntriples(doc).unwrap();
        assert_eq!(triples[0].object, Term::blank("b7"));
        assert_eq!(triples[1].subject, Term::blank("b2"));
    }

    #[test]
    fn canonical_output_independent_of_insertion_order() {
        let a = "<urn:a> <urn:p> <urn:b> .\n<urn:c> <urn:p> \"x\"@it .\n";
        let forward = TripleStore::from_triples(parse_ntriples(a).unwrap());
        let reversed: TripleStore = parse_ntriples(a).unwrap().into_iter().rev().collect();
        assert_eq!(serialize_canonical(&forward), serialize_canonical(&reversed));
        assert_eq!(serialize_canonical(&TripleStore::new()), "");
    }

    #[test]
    fn round_trip_with_escapes() {
        let mut store = TripleStore::new();
        store.insert(Triple::new(
            Term::iri("urn:a"),
            Term::iri("urn:p"),
            Term::literal("line1\nline2 \"quoted\" \\slash"),
        ));
        let doc = serialize_canonical(&store);
        let back = TripleStore::from_triples(parse_ntriples(&doc).unwrap());
        assert_eq!(store, back);
    }
}
