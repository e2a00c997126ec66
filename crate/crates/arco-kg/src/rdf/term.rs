//! RDF terms: IRIs, literals and blank nodes.

use std::cmp::Ordering;
use std::fmt;

/// IRI of `xsd:string`, the implicit datatype of plain literals.
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";

/// A literal value with optional language tag or datatype IRI.
///
/// A literal never carries both a language tag and a datatype; plain
/// literals (`xsd:string`) store no datatype at all so that `"x"` and
/// `"x"^^xsd:string` compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub value: String,
    pub lang: Option<String>,
    pub datatype: Option<String>,
}

/// One node of an RDF graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(String),
    Literal(Literal),
    Blank(String),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Term {
        let value = value.into();
        debug_assert!(has_scheme(&value), "IRI without scheme: {value}");
        Term::Iri(value)
    }

    pub fn blank(label: impl Into<String>) -> Term {
        Term::Blank(label.into())
    }

    /// A plain literal without language tag.
    pub fn literal(value: impl Into<String>) -> Term {
        Term::Literal(Literal {
            value: value.into(),
            lang: None,
            datatype: None,
        })
    }

    pub fn lang_literal(value: impl Into<String>, lang: impl Into<String>) -> Term {
        Term::Literal(Literal {
            value: value.into(),
            lang: Some(lang.into()),
            datatype: None,
        })
    }

    /// A typed literal. `xsd:string` is normalized away to the plain form.
    pub fn typed_literal(value: impl Into<String>, datatype: impl Into<String>) -> Term {
        let datatype = datatype.into();
        if datatype == XSD_STRING {
            return Term::literal(value);
        }
        Term::Literal(Literal {
            value: value.into(),
            lang: None,
            datatype: Some(datatype),
        })
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    /// The N-Triples rendering of this term. Canonical ordering of terms,
    /// triples and documents is the lexicographic order of this string.
    pub fn rendered(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    pub(crate) fn render_into(&self, out: &mut String) {
        match self {
            Term::Iri(v) => {
                out.push('<');
                out.push_str(v);
                out.push('>');
            }
            Term::Blank(label) => {
                out.push_str("_:");
                out.push_str(label);
            }
            Term::Literal(l) => {
                out.push('"');
                for c in l.value.chars() {
                    match c {
                        '\\' => out.push_str("\\\\"),
                        '"' => out.push_str("\\\""),
                        '\n' => out.push_str("\\n"),
                        '\r' => out.push_str("\\r"),
                        '\t' => out.push_str("\\t"),
                        _ => out.push(c),
                    }
                }
                out.push('"');
                if let Some(lang) = &l.lang {
                    out.push('@');
                    out.push_str(lang);
                } else if let Some(dt) = &l.datatype {
                    out.push_str("^^<");
                    out.push_str(dt);
                    out.push('>');
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered())
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rendered().cmp(&other.rendered())
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// True if `value` starts with an IRI scheme (`letter (letter|digit|+|-|.)* :`).
pub fn has_scheme(value: &str) -> bool {
    let mut chars = value.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for c in chars {
        if c == ':' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || c == '+' || c == '-' || c == '.') {
            return false;
        }
    }
    false
}

/// An RDF statement. The predicate is always an IRI; the subject is an
/// IRI or blank node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Triple {
        debug_assert!(!subject.is_literal(), "literal subject");
        debug_assert!(predicate.is_iri(), "non-IRI predicate");
        Triple {
            subject,
            predicate,
            object,
        }
    }

    /// The N-Triples line for this triple, without trailing newline.
    pub fn rendered(&self) -> String {
        let mut out = String::new();
        self.subject.render_into(&mut out);
        out.push(' ');
        self.predicate.render_into(&mut out);
        out.push(' ');
        self.object.render_into(&mut out);
        out.push_str(" .");
        out
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered())
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rendered().cmp(&other.rendered())
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
