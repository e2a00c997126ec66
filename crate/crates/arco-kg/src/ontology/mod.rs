//! The ontology schema: seven modules of classes and properties loaded
//! from a declarative Turtle manifest, with hierarchy, disjointness,
//! inverse and property-chain axioms plus controlled-vocabulary
//! individuals.

mod loader;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::rdf::RdfError;
use crate::vocab;

pub use loader::load_schema;

/// The seven ontology modules, identified by their entity namespace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleName {
    Arco,
    Core,
    Catalogue,
    Location,
    DenotativeDescription,
    ContextDescription,
    CulturalEvent,
}

impl ModuleName {
    pub const ALL: [ModuleName; 7] = [
        ModuleName::Arco,
        ModuleName::Core,
        ModuleName::Catalogue,
        ModuleName::Location,
        ModuleName::DenotativeDescription,
        ModuleName::ContextDescription,
        ModuleName::CulturalEvent,
    ];

    pub fn namespace(self) -> &'static str {
        match self {
            ModuleName::Arco => vocab::NS_ARCO,
            ModuleName::Core => vocab::NS_CORE,
            ModuleName::Catalogue => vocab::NS_CATALOGUE,
            ModuleName::Location => vocab::NS_LOCATION,
            ModuleName::DenotativeDescription => vocab::NS_DD,
            ModuleName::ContextDescription => vocab::NS_CD,
            ModuleName::CulturalEvent => vocab::NS_CE,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModuleName::Arco => "arco",
            ModuleName::Core => "core",
            ModuleName::Catalogue => "catalogue",
            ModuleName::Location => "location",
            ModuleName::DenotativeDescription => "denotative-description",
            ModuleName::ContextDescription => "context-description",
            ModuleName::CulturalEvent => "cultural-event",
        }
    }

    /// Module owning an entity IRI, from its namespace.
    pub fn of_iri(iri: &str) -> Option<ModuleName> {
        let slash = iri.rfind('/')?;
        let ns = &iri[..slash + 1];
        ModuleName::ALL.into_iter().find(|m| m.namespace() == ns)
    }
}

#[derive(Debug, Clone)]
pub struct ClassDef {
    pub iri: String,
    pub module: ModuleName,
    pub parents: BTreeSet<String>,
    pub disjoint_with: BTreeSet<String>,
    pub label: Option<String>,
    pub comment: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyKind {
    Object,
    Datatype,
}

#[derive(Debug, Clone)]
pub struct PropertyDef {
    pub iri: String,
    pub module: ModuleName,
    pub kind: PropertyKind,
    pub domain: Option<String>,
    pub range: Option<String>,
    pub inverse: Option<String>,
    pub chain: Option<Vec<String>>,
    pub label: Option<String>,
}

/// The loaded, validated schema. Immutable after load; share freely.
#[derive(Debug, Clone)]
pub struct OntologySchema {
    pub base_namespace: String,
    pub classes: BTreeMap<String, ClassDef>,
    pub properties: BTreeMap<String, PropertyDef>,
    /// Controlled-vocabulary individuals, IRI to class IRI.
    pub individuals: BTreeMap<String, String>,
}

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error(transparent)]
    Rdf(#[from] RdfError),
    #[error("cycle in class hierarchy through <{class}>")]
    HierarchyCycle { class: String },
    #[error("undefined class <{iri}>")]
    UndefinedClass { iri: String },
    #[error("property chain of <{property}> references undefined property <{member}>")]
    UndefinedChainMember { property: String, member: String },
    #[error("property chain of <{property}> must list at least two properties")]
    ChainTooShort { property: String },
    #[error("<{iri}> is not in a known ontology module namespace")]
    UnknownModule { iri: String },
    #[error("undefined property <{iri}>")]
    UndefinedProperty { iri: String },
    #[error("inverse conflict: <{property}> and <{conflicting}> both claim <{inverse}>")]
    InverseConflict {
        property: String,
        inverse: String,
        conflicting: String,
    },
    #[error("<{class}> would be disjoint with itself")]
    SelfDisjoint { class: String },
    #[error("<{sub}> is disjoint with its own superclass <{superclass}>")]
    DisjointSuperclass { sub: String, superclass: String },
    #[error("individual <{iri}> is typed with more than one class")]
    AmbiguousIndividual { iri: String },
    #[error("{context}: expected an IRI, found {found}")]
    ExpectedIri { context: String, found: String },
}

impl OntologySchema {
    /// True iff `superclass` is reachable from `sub` through `parents`
    /// (reflexively). Errors if either class is undefined.
    pub fn is_subclass_of(&self, sub: &str, superclass: &str) -> Result<bool, SchemaError> {
        if !self.classes.contains_key(sub) {
            return Err(SchemaError::UndefinedClass { iri: sub.into() });
        }
        if !self.classes.contains_key(superclass) {
            return Err(SchemaError::UndefinedClass {
                iri: superclass.into(),
            });
        }
        Ok(self.superclasses_of(sub).contains(superclass))
    }

    /// Reflexive-transitive superclasses of a defined class.
    pub fn superclasses_of(&self, class: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![class.to_string()];
        while let Some(c) = stack.pop() {
            if !out.insert(c.clone()) {
                continue;
            }
            if let Some(def) = self.classes.get(&c) {
                stack.extend(def.parents.iter().cloned());
            }
        }
        out
    }

    /// Reflexive-transitive subclasses of a defined class.
    pub fn subclasses_of(&self, class: &str) -> BTreeSet<String> {
        self.classes
            .keys()
            .filter(|c| self.superclasses_of(c).contains(class))
            .cloned()
            .collect()
    }

    /// Declared disjointness axioms as normalized unordered pairs.
    pub fn declared_disjoint_pairs(&self) -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        for (iri, def) in &self.classes {
            for other in &def.disjoint_with {
                out.insert(ordered_pair(iri, other));
            }
        }
        out
    }

    /// All unordered disjoint pairs, expanded downward: if A is disjoint
    /// with B, every subclass of A is disjoint with every subclass of B.
    pub fn disjoint_pairs(&self) -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        for (a, b) in self.declared_disjoint_pairs() {
            for sub_a in self.subclasses_of(&a) {
                for sub_b in self.subclasses_of(&b) {
                    out.insert(ordered_pair(&sub_a, &sub_b));
                }
            }
        }
        out
    }

    /// Properties defined with a chain axiom (the shortcut properties).
    pub fn chain_properties(&self) -> impl Iterator<Item = &PropertyDef> {
        self.properties.values().filter(|p| p.chain.is_some())
    }

    pub fn individuals_of(&self, class: &str) -> Vec<&str> {
        self.individuals
            .iter()
            .filter(|(_, c)| c.as_str() == class)
            .map(|(iri, _)| iri.as_str())
            .collect()
    }
}

pub(crate) fn ordered_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}
