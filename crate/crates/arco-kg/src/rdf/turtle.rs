//! Read-only Turtle subset: prefix declarations, the `a` keyword,
//! predicate and object lists, collections, blank node labels, and
//! plain/language-tagged/typed literals. Enough to load the bundled
//! schema manifest and hand-written test data; not a full Turtle parser.

use std::collections::HashMap;

use super::lex::{read_iri_body, read_langtag, read_name, read_string_body, Cursor};
use super::term::{has_scheme, Term, Triple};
use super::RdfError;
use crate::vocab;

pub fn parse_turtle(text: &str) -> Result<Vec<Triple>, RdfError> {
    let mut parser = TurtleParser {
        cursor: Cursor::new(text),
        prefixes: HashMap::new(),
        triples: Vec::new(),
        generated_blanks: 0,
        label_order: Vec::new(),
    };
    parser.parse_document()?;
    Ok(parser.finish())
}

struct TurtleParser<'a> {
    cursor: Cursor<'a>,
    prefixes: HashMap<String, String>,
    triples: Vec<Triple>,
    generated_blanks: usize,
    label_order: Vec<String>,
}

impl TurtleParser<'_> {
    fn err(&self, message: impl Into<String>) -> RdfError {
        RdfError::Syntax {
            line: self.cursor.line,
            message: message.into(),
        }
    }

    fn parse_document(&mut self) -> Result<(), RdfError> {
        loop {
            self.cursor.skip_trivia();
            if self.cursor.is_at_end() {
                return Ok(());
            }
            if self.cursor.starts_with("@prefix") {
                self.parse_prefix_directive()?;
            } else {
                self.parse_statement()?;
            }
        }
    }

    fn parse_prefix_directive(&mut self) -> Result<(), RdfError> {
        for _ in 0.."@prefix".len() {
            self.cursor.bump();
        }
        self.cursor.skip_trivia();
        let name = read_name(&mut self.cursor);
        if !self.cursor.eat(':') {
            return Err(self.err("expected ':' in @prefix directive"));
        }
        self.cursor.skip_trivia();
        if !self.cursor.eat('<') {
            return Err(self.err("expected IRI in @prefix directive"));
        }
        let iri = read_iri_body(&mut self.cursor).map_err(|m| self.err(m))?;
        if !has_scheme(&iri) {
            return Err(RdfError::RelativeIri {
                line: self.cursor.line,
                iri,
            });
        }
        self.cursor.skip_trivia();
        if !self.cursor.eat('.') {
            return Err(self.err("expected '.' after @prefix directive"));
        }
        self.prefixes.insert(name, iri);
        Ok(())
    }

    fn parse_statement(&mut self) -> Result<(), RdfError> {
        let subject = self.parse_subject()?;
        self.parse_predicate_object_list(&subject)?;
        self.cursor.skip_trivia();
        if !self.cursor.eat('.') {
            return Err(self.err("expected '.' at end of statement"));
        }
        Ok(())
    }

    fn parse_predicate_object_list(&mut self, subject: &Term) -> Result<(), RdfError> {
        loop {
            self.cursor.skip_trivia();
            let predicate = self.parse_predicate()?;
            loop {
                self.cursor.skip_trivia();
                let object = self.parse_object()?;
                self.triples.push(Triple {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                self.cursor.skip_trivia();
                if !self.cursor.eat(',') {
                    break;
                }
            }
            if !self.cursor.eat(';') {
                return Ok(());
            }
            self.cursor.skip_trivia();
            // Tolerate a dangling ';' before the closing '.'.
            if self.cursor.peek() == Some('.') {
                return Ok(());
            }
        }
    }

    fn parse_subject(&mut self) -> Result<Term, RdfError> {
        let term = self.parse_simple_term()?;
        if term.is_literal() {
            return Err(self.err("literal not allowed as subject"));
        }
        Ok(term)
    }

    fn parse_predicate(&mut self) -> Result<Term, RdfError> {
        if self.cursor.peek() == Some('a') {
            let next = self.cursor.peek_second();
            if next.is_none_or(|c| c.is_whitespace() || "<_\"#([".contains(c)) {
                self.cursor.bump();
                return Ok(Term::iri(vocab::RDF_TYPE));
            }
        }
        let term = self.parse_simple_term()?;
        if !term.is_iri() {
            return Err(self.err("predicate must be an IRI"));
        }
        Ok(term)
    }

    fn parse_object(&mut self) -> Result<Term, RdfError> {
        if self.cursor.peek() == Some('(') {
            return self.parse_collection();
        }
        self.parse_simple_term()
    }

    /// IRI, prefixed name, blank node label, or literal.
    fn parse_simple_term(&mut self) -> Result<Term, RdfError> {
        match self.cursor.peek() {
            Some('<') => {
                self.cursor.bump();
                let iri = read_iri_body(&mut self.cursor).map_err(|m| self.err(m))?;
                if !has_scheme(&iri) {
                    return Err(RdfError::RelativeIri {
                        line: self.cursor.line,
                        iri,
                    });
                }
                Ok(Term::Iri(iri))
            }
            Some('_') => {
                self.cursor.bump();
                if !self.cursor.eat(':') {
                    return Err(self.err("expected ':' after '_' in blank node"));
                }
                let label = read_name(&mut self.cursor);
                if label.is_empty() {
                    return Err(self.err("empty blank node label"));
                }
                self.note_label(&label);
                Ok(Term::Blank(label))
            }
            Some('"') => {
                self.cursor.bump();
                let value = read_string_body(&mut self.cursor).map_err(|m| self.err(m))?;
                if self.cursor.eat('@') {
                    let lang = read_langtag(&mut self.cursor).map_err(|m| self.err(m))?;
                    return Ok(Term::lang_literal(value, lang));
                }
                if self.cursor.starts_with("^^") {
                    self.cursor.bump();
                    self.cursor.bump();
                    let dt = self.parse_simple_term()?;
                    let Term::Iri(dt) = dt else {
                        return Err(self.err("datatype must be an IRI"));
                    };
                    return Ok(Term::typed_literal(value, dt));
                }
                Ok(Term::literal(value))
            }
            Some(c) if super::lex::is_name_char(c) || c == ':' => self.parse_prefixed_name(),
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_prefixed_name(&mut self) -> Result<Term, RdfError> {
        let prefix = read_name(&mut self.cursor);
        if !self.cursor.eat(':') {
            return Err(self.err(format!("expected ':' in prefixed name after '{prefix}'")));
        }
        let local = read_name(&mut self.cursor);
        let Some(base) = self.prefixes.get(&prefix) else {
            return Err(RdfError::UnknownPrefix {
                line: self.cursor.line,
                prefix,
            });
        };
        Ok(Term::Iri(format!("{base}{local}")))
    }

    /// `( item* )` expands to an rdf:first/rdf:rest list with fresh
    /// blank nodes; the empty collection is rdf:nil.
    fn parse_collection(&mut self) -> Result<Term, RdfError> {
        self.cursor.bump(); // '('
        let mut items = Vec::new();
        loop {
            self.cursor.skip_trivia();
            if self.cursor.eat(')') {
                break;
            }
            if self.cursor.is_at_end() {
                return Err(self.err("unterminated collection"));
            }
            items.push(self.parse_object()?);
        }
        if items.is_empty() {
            return Ok(Term::iri(vocab::RDF_NIL));
        }
        let nodes: Vec<Term> = (0..items.len()).map(|_| self.fresh_blank()).collect();
        for (i, item) in items.into_iter().enumerate() {
            self.triples.push(Triple {
                subject: nodes[i].clone(),
                predicate: Term::iri(vocab::RDF_FIRST),
                object: item,
            });
            let rest = if i + 1 < nodes.len() {
                nodes[i + 1].clone()
            } else {
                Term::iri(vocab::RDF_NIL)
            };
            self.triples.push(Triple {
                subject: nodes[i].clone(),
                predicate: Term::iri(vocab::RDF_REST),
                object: rest,
            });
        }
        Ok(nodes[0].clone())
    }

    fn fresh_blank(&mut self) -> Term {
        // The '!' makes collision with a written label impossible and
        // forces the canonical relabeling pass.
        let label = format!("!gen{}", self.generated_blanks);
        self.generated_blanks += 1;
        self.note_label(&label);
        Term::Blank(label)
    }

    fn note_label(&mut self, label: &str) {
        if !self.label_order.iter().any(|l| l == label) {
            self.label_order.push(label.to_string());
        }
    }

    /// Apply the same blank-label policy as the N-Triples reader.
    fn finish(mut self) -> Vec<Triple> {
        let canonical = self
            .label_order
            .iter()
            .all(|l| super::ntriples::is_canonical_label(l));
        if canonical {
            return self.triples;
        }
        let rename: HashMap<&str, String> = self
            .label_order
            .iter()
            .enumerate()
            .map(|(n, l)| (l.as_str(), format!("b{n}")))
            .collect();
        for triple in &mut self.triples {
            for term in [&mut triple.subject, &mut triple.object] {
                if let Term::Blank(label) = term {
                    *label = rename[label.as_str()].clone();
                }
            }
        }
        self.triples
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes_and_lists() {
        let doc = r#"
            @prefix ex: <urn:example:> .
            ex:a a ex:Thing ;
                ex:p ex:b, ex:c .
        "#;
        let triples = parse_turtle(doc).unwrap();
        assert_eq!(triples.len(), 3);
        assert_eq!(triples[0].predicate, Term::iri(vocab::RDF_TYPE));
        assert_eq!(triples[2].object, Term::iri("urn:example:c"));
    }

    #[test]
    fn empty_prefix() {
        let doc = "@prefix : <urn:x:> .\n:a :p \"v\"@en .";
        let triples = parse_turtle(doc).unwrap();
        assert_eq!(triples[0].subject, Term::iri("urn:x:a"));
        assert_eq!(triples[0].object, Term::lang_literal("v", "en"));
    }

    #[test]
    fn hyphenated_prefix_names() {
        let doc = "@prefix a-dd: <urn:dd:> .\na-dd:Material a a-dd:Thing .";
        let triples = parse_turtle(doc).unwrap();
        assert_eq!(triples[0].subject, Term::iri("urn:dd:Material"));
    }

    #[test]
    fn unknown_prefix_is_an_error() {
        match parse_turtle(":a :b :c .") {
            Err(RdfError::UnknownPrefix { prefix, .. }) => assert_eq!(prefix, ""),
            other => panic!("expected unknown-prefix error, got {other:?}"),
        }
    }

    #[test]
    fn collection_expands_to_rdf_list() {
        let doc = "@prefix ex: <urn:example:> .\nex:s ex:chain (ex:p1 ex:p2) .";
        let triples = parse_turtle(doc).unwrap();
        // chain triple + 2 first + 2 rest
        assert_eq!(triples.len(), 5);
        let head = &triples[4].object; // the statement triple is emitted last
        assert!(head.is_blank());
        assert!(triples
            .iter()
            .any(|t| t.predicate == Term::iri(vocab::RDF_REST)
                && t.object == Term::iri(vocab::RDF_NIL)));
    }

    #[test]
    fn typed_literal_with_prefixed_datatype() {
        let doc = "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n@prefix ex: <urn:e:> .\nex:a ex:p \"3.5\"^^xsd:decimal .";
        let triples = parse_turtle(doc).unwrap();
        assert_eq!(
            triples[0].object,
            Term::typed_literal("3.5", "http://www.w3.org/2001/XMLSchema#decimal")
        );
    }
}
