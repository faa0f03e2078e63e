//! TOML workspace documents: lattices, algebras, frames and spaces, with
//! named references between them.
//!
//! Every document is a single TOML table whose `kind` key selects the schema.
//! Unknown keys are rejected. [`parse_document`] checks everything a document
//! can check on its own; references to other documents are resolved by a
//! [`Workspace`].

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, Signature, TableSpec};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::kripke::{check_budget, intuitionistic_power, power_subalgebra, upset_algebra, KripkeFrame};
use crate::order::{build_lattice, FiniteLattice, OrderError, Poset};
use crate::topology::{AlphaAssignment, BitopSpace, OrderedSpace, Topology, TopologyError};

/// Prefix of the built-in lattice names (`std:chain2` .. `std:chain16`, `std:b2`).
pub const BUILTIN_PREFIX: &str = "std:";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown document kind `{0}` (expected lattice, algebra, frame or space)")]
    UnknownKind(String),
    #[error("schema violation{}: {message}", location(*.line, *.column))]
    Schema { line: Option<usize>, column: Option<usize>, message: String },
    #[error("{document}: field `{field}` refers to `{name}`, which is not declared")]
    Dangling { document: String, field: String, name: String },
    #[error("{document}: field `{field}` refers to `{name}`, a {found}, expected a {expected}")]
    WrongKind { document: String, field: String, name: String, expected: String, found: String },
    #[error("document name `{0}` declared twice")]
    DuplicateName(String),
    #[error("{document}: field `{field}`: {source}")]
    Invalid { document: String, field: String, source: Box<Error> },
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}

impl DocumentError {
    fn schema(message: impl Into<String>) -> Self {
        DocumentError::Schema { line: None, column: None, message: message.into() }
    }

    fn invalid(document: &str, field: &str, source: impl Into<Error>) -> Self {
        DocumentError::Invalid {
            document: document.to_string(),
            field: field.to_string(),
            source: Box::new(source.into()),
        }
    }
}

macro_rules! kind_tag {
    ($t:ident, $s:literal) => {
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $t {
            #[default]
            #[serde(rename = $s)]
            Tag,
        }
    };
}

kind_tag!(LatticeKind, "lattice");
kind_tag!(AlgebraKind, "algebra");
kind_tag!(FrameKind, "frame");
kind_tag!(SpaceKind, "space");

/// A finite bounded distributive lattice. `leq` generates the order by
/// reflexive-transitive closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub kind: LatticeKind,
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    pub bottom: String,
    pub top: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub kind: FrameKind,
    pub name: String,
    pub worlds: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

/// Operation tables over carrier element names. `t` maps each element `ℓ`
/// of the truth lattice to the row `x ↦ T_ℓ(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablesDoc {
    pub carrier: Vec<String>,
    pub zero: String,
    pub one: String,
    pub meet: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imp: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKeyword {
    /// All order-preserving maps.
    Monotone,
    /// The whole power.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generators {
    Keyword(GeneratorKeyword),
    /// Each vector lists one truth value per world, in world order.
    Vectors(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PresentationDoc {
    /// A lattice viewed as an algebra; defaults to the truth lattice.
    Lattice {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lattice: Option<String>,
    },
    /// `lattice^exponent` with pointwise operations.
    Product {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lattice: Option<String>,
        exponent: usize,
    },
    /// A subalgebra of the truth lattice raised to the worlds of a frame,
    /// with the Kripke implication.
    Power { frame: String, generators: Generators },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub kind: AlgebraKind,
    pub name: String,
    pub signature: Signature,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth_lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<TablesDoc>,
}

/// A finite space. `topo`, `topo1` and `topo2` list generating open sets;
/// a missing topology is discrete. `alpha` keys are subalgebras of the
/// truth lattice written as comma-separated element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub kind: SpaceKind,
    pub name: String,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topo: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topo1: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topo2: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth_lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Lattice(LatticeDoc),
    Algebra(AlgebraDoc),
    Frame(FrameDoc),
    Space(SpaceDoc),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Lattice(d) => &d.name,
            Document::Algebra(d) => &d.name,
            Document::Frame(d) => &d.name,
            Document::Space(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::Algebra(_) => "algebra",
            Document::Frame(_) => "frame",
            Document::Space(_) => "space",
        }
    }

    /// `(field, referenced name, expected kind)` for every reference.
    pub fn references(&self) -> Vec<(&'static str, &str, &'static str)> {
        let mut out = Vec::new();
        match self {
            Document::Algebra(d) => {
                if let Some(t) = &d.truth_lattice {
                    out.push(("truth_lattice", t.as_str(), "lattice"));
                }
                match &d.presentation {
                    Some(PresentationDoc::Lattice { lattice: Some(l) })
                    | Some(PresentationDoc::Product { lattice: Some(l), .. }) => {
                        out.push(("presentation.lattice", l.as_str(), "lattice"))
                    }
                    Some(PresentationDoc::Power { frame, .. }) => {
                        out.push(("presentation.frame", frame.as_str(), "frame"))
                    }
                    _ => {}
                }
            }
            Document::Space(d) => {
                if let Some(t) = &d.truth_lattice {
                    out.push(("truth_lattice", t.as_str(), "lattice"));
                }
            }
            Document::Lattice(_) | Document::Frame(_) => {}
        }
        out
    }

    /// Checks everything that does not depend on other documents.
    pub fn validate(&self) -> Result<(), DocumentError> {
        match self {
            Document::Lattice(d) => d.build().map(|_| ()),
            Document::Frame(d) => d.build().map(|_| ()),
            Document::Algebra(d) => d.validate(),
            Document::Space(d) => d.validate(),
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

fn schema_error(text: &str, e: toml::de::Error) -> DocumentError {
    let (line, column) = match e.span() {
        Some(span) => {
            let (l, c) = line_col(text, span.start);
            (Some(l), Some(c))
        }
        None => (None, None),
    };
    DocumentError::Schema { line, column, message: e.message().trim().to_string() }
}

/// Parses and validates one document.
pub fn parse_document(text: &str) -> Result<Document, DocumentError> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        DocumentError::Syntax { line, column, message: e.message().trim().to_string() }
    })?;
    let kind = match table.get("kind") {
        None => return Err(DocumentError::schema("missing field `kind`")),
        Some(toml::Value::String(s)) => s.clone(),
        Some(other) => {
            return Err(DocumentError::schema(format!("field `kind` must be a string, found {}", other.type_str())))
        }
    };
    let err = |e| schema_error(text, e);
    let doc = match kind.as_str() {
        "lattice" => Document::Lattice(toml::from_str(text).map_err(err)?),
        "algebra" => Document::Algebra(toml::from_str(text).map_err(err)?),
        "frame" => Document::Frame(toml::from_str(text).map_err(err)?),
        "space" => Document::Space(toml::from_str(text).map_err(err)?),
        _ => return Err(DocumentError::UnknownKind(kind)),
    };
    doc.validate()?;
    Ok(doc)
}

/// TOML text that [`parse_document`] maps back to `doc`.
pub fn serialize_document(doc: &Document) -> String {
    let out = match doc {
        Document::Lattice(d) => toml::to_string(d),
        Document::Algebra(d) => toml::to_string(d),
        Document::Frame(d) => toml::to_string(d),
        Document::Space(d) => toml::to_string(d),
    };
    out.expect("documents serialize to TOML")
}

fn name_map<'a>(document: &str, field: &str, names: &'a [String]) -> Result<HashMap<&'a str, usize>, DocumentError> {
    let mut map = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.as_str(), i).is_some() {
            return Err(DocumentError::invalid(document, field, OrderError::DuplicateElement(n.clone())));
        }
    }
    Ok(map)
}

fn lookup(document: &str, field: &str, map: &HashMap<&str, usize>, name: &str) -> Result<usize, DocumentError> {
    map.get(name)
        .copied()
        .ok_or_else(|| DocumentError::invalid(document, field, OrderError::UnknownElement(name.to_string())))
}

fn order_field(e: &OrderError, d: &LatticeDoc) -> &'static str {
    match e {
        OrderError::DuplicateElement(_) | OrderError::Degenerate => "elements",
        OrderError::WrongBottom { .. } => "bottom",
        OrderError::WrongTop { .. } => "top",
        OrderError::UnknownElement(x) if *x == d.bottom && !d.elements.contains(x) => "bottom",
        OrderError::UnknownElement(x) if *x == d.top && !d.elements.contains(x) => "top",
        _ => "leq",
    }
}

impl LatticeDoc {
    pub fn build(&self) -> Result<FiniteLattice, DocumentError> {
        build_lattice(&self.name, &self.elements, &self.leq, &self.bottom, &self.top)
            .map_err(|e| DocumentError::invalid(&self.name, order_field(&e, self), e))
    }
}

impl FrameDoc {
    pub fn build(&self) -> Result<KripkeFrame, DocumentError> {
        if self.worlds.is_empty() {
            return Err(DocumentError::invalid(&self.name, "worlds", TopologyError::Empty));
        }
        let field = |e: &OrderError| match e {
            OrderError::DuplicateElement(_) => "worlds",
            _ => "order",
        };
        Poset::from_named_pairs(self.worlds.clone(), &self.order)
            .map_err(|e| DocumentError::invalid(&self.name, field(&e), e))
    }
}

fn check_table(
    document: &str,
    field: &str,
    map: &HashMap<&str, usize>,
    rows: &[Vec<String>],
) -> Result<Vec<Vec<usize>>, DocumentError> {
    rows.iter().map(|r| r.iter().map(|x| lookup(document, field, map, x)).collect()).collect()
}

impl AlgebraDoc {
    fn validate(&self) -> Result<(), DocumentError> {
        match (&self.tables, &self.presentation) {
            (Some(_), Some(_)) => {
                return Err(DocumentError::schema(format!(
                    "{}: give either `tables` or `presentation`, not both",
                    self.name
                )))
            }
            (None, None) => {
                return Err(DocumentError::schema(format!(
                    "{}: one of `tables` or `presentation` is required",
                    self.name
                )))
            }
            _ => {}
        }
        if self.signature == Signature::Lvl
            && self.truth_lattice.is_none()
            && !matches!(
                self.presentation,
                Some(PresentationDoc::Lattice { lattice: Some(_) } | PresentationDoc::Product { lattice: Some(_), .. })
            )
        {
            return Err(DocumentError::schema(format!("{}: signature lvl requires `truth_lattice`", self.name)));
        }
        if let Some(t) = &self.tables {
            let map = name_map(&self.name, "tables.carrier", &t.carrier)?;
            lookup(&self.name, "tables.zero", &map, &t.zero)?;
            lookup(&self.name, "tables.one", &map, &t.one)?;
            check_table(&self.name, "tables.meet", &map, &t.meet)?;
            check_table(&self.name, "tables.join", &map, &t.join)?;
            if let Some(imp) = &t.imp {
                check_table(&self.name, "tables.imp", &map, imp)?;
            }
            if let Some(rows) = &t.t {
                for r in rows.values() {
                    check_table(&self.name, "tables.t", &map, std::slice::from_ref(r))?;
                }
            }
            if self.signature.has_imp() && t.imp.is_none() {
                return Err(DocumentError::schema(format!(
                    "{}: signature {} requires `tables.imp`",
                    self.name, self.signature
                )));
            }
            if self.signature.has_t() && t.t.is_none() {
                return Err(DocumentError::schema(format!("{}: signature lvl requires `tables.t`", self.name)));
            }
        }
        match &self.presentation {
            Some(PresentationDoc::Product { exponent: 0, .. }) => {
                Err(DocumentError::schema(format!("{}: `presentation.exponent` must be at least 1", self.name)))
            }
            Some(PresentationDoc::Power { .. }) if self.signature != Signature::IspI => Err(DocumentError::schema(
                format!("{}: a power presentation has signature isp_i, found {}", self.name, self.signature),
            )),
            Some(PresentationDoc::Power { .. }) if self.truth_lattice.is_none() => {
                Err(DocumentError::schema(format!("{}: a power presentation requires `truth_lattice`", self.name)))
            }
            _ => Ok(()),
        }
    }
}

fn point_sets(
    document: &str,
    field: &str,
    map: &HashMap<&str, usize>,
    sets: &[Vec<String>],
) -> Result<Vec<BitSet>, DocumentError> {
    let n = map.len();
    sets.iter()
        .map(|s| {
            let idx = s.iter().map(|p| lookup(document, field, map, p)).collect::<Result<Vec<_>, _>>()?;
            Ok(BitSet::from_indices(n, idx))
        })
        .collect()
}

impl SpaceDoc {
    fn validate(&self) -> Result<(), DocumentError> {
        if self.points.is_empty() {
            return Err(DocumentError::invalid(&self.name, "points", TopologyError::Empty));
        }
        let map = name_map(&self.name, "points", &self.points)?;
        for (field, sets) in [("topo", &self.topo), ("topo1", &self.topo1), ("topo2", &self.topo2)] {
            if let Some(s) = sets {
                point_sets(&self.name, field, &map, s)?;
            }
        }
        if let Some(alpha) = &self.alpha {
            for s in alpha.values() {
                point_sets(&self.name, "alpha", &map, std::slice::from_ref(s))?;
            }
            if self.truth_lattice.is_none() {
                return Err(DocumentError::schema(format!("{}: `alpha` requires `truth_lattice`", self.name)));
            }
        }
        self.poset().map(|_| ())
    }

    fn topology(&self, field: &str, sets: Option<&Vec<Vec<String>>>) -> Result<Topology, DocumentError> {
        let map = name_map(&self.name, "points", &self.points)?;
        match sets {
            None => Ok(Topology::discrete(self.points.len())),
            Some(s) => {
                let sub = point_sets(&self.name, field, &map, s)?;
                Topology::generate(self.points.len(), &sub).map_err(|e| DocumentError::invalid(&self.name, field, e))
            }
        }
    }

    /// The order, or the discrete order when none is given.
    pub fn poset(&self) -> Result<Poset, DocumentError> {
        Poset::from_named_pairs(self.points.clone(), self.order.as_deref().unwrap_or(&[]))
            .map_err(|e| DocumentError::invalid(&self.name, "order", e))
    }

    /// `(τ1, τ2)`, each falling back to `topo` and then to discrete.
    pub fn bitopology(&self) -> Result<(Topology, Topology), DocumentError> {
        let t1 = self.topology("topo1", self.topo1.as_ref().or(self.topo.as_ref()))?;
        let t2 = self.topology("topo2", self.topo2.as_ref().or(self.topo.as_ref()))?;
        Ok((t1, t2))
    }

    /// `topo`, falling back to `topo1` and then to discrete.
    pub fn single_topology(&self) -> Result<Topology, DocumentError> {
        self.topology("topo", self.topo.as_ref().or(self.topo1.as_ref()))
    }
}

/// The lattice behind a built-in name, if any.
pub fn builtin_lattice(name: &str) -> Option<FiniteLattice> {
    let rest = name.strip_prefix(BUILTIN_PREFIX)?;
    let l = if rest == "b2" {
        FiniteLattice::boolean2()
    } else {
        let n: usize = rest.strip_prefix("chain")?.parse().ok()?;
        if !(2..=16).contains(&n) || rest != format!("chain{n}") {
            return None;
        }
        FiniteLattice::chain(n)
    };
    Some(l.with_name(name))
}

/// Parses an `alpha` key such as `0,m,1` or `{0,m,1}` into a set of truth
/// values.
pub fn parse_subalgebra_key(l: &FiniteLattice, key: &str) -> Result<BitSet, OrderError> {
    let inner = key.trim();
    let inner = inner.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(inner);
    let mut set = BitSet::empty(l.len());
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        set.insert(l.index_of(part)?);
    }
    Ok(set)
}

/// A set of documents addressable by name.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    docs: BTreeMap<String, Document>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, doc: Document) -> Result<(), DocumentError> {
        let name = doc.name().to_string();
        if self.docs.contains_key(&name) || builtin_lattice(&name).is_some() {
            return Err(DocumentError::DuplicateName(name));
        }
        self.docs.insert(name, doc);
        Ok(())
    }

    /// Parses `text` and adds the document, returning its name.
    pub fn add_text(&mut self, text: &str) -> Result<String, DocumentError> {
        let doc = parse_document(text)?;
        let name = doc.name().to_string();
        self.insert(doc)?;
        Ok(name)
    }

    pub fn get(&self, name: &str) -> Option<&Document> {
        self.docs.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.docs.contains_key(name) || builtin_lattice(name).is_some()
    }

    pub fn documents(&self) -> impl Iterator<Item = &Document> {
        self.docs.values()
    }

    fn kind_of(&self, name: &str) -> Option<&'static str> {
        if builtin_lattice(name).is_some() {
            return Some("lattice");
        }
        self.docs.get(name).map(Document::kind)
    }

    /// Referenced names that are not declared, as `(document, field, name)`.
    pub fn unresolved(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for d in self.docs.values() {
            for (field, name, _) in d.references() {
                if !self.contains(name) {
                    out.push((d.name().to_string(), field.to_string(), name.to_string()));
                }
            }
        }
        out
    }

    /// Every reference names a declared document of the expected kind.
    pub fn check_references(&self) -> Result<(), DocumentError> {
        for d in self.docs.values() {
            for (field, name, expected) in d.references() {
                self.expect_kind(d.name(), field, name, expected)?;
            }
        }
        Ok(())
    }

    fn expect_kind(&self, document: &str, field: &str, name: &str, expected: &str) -> Result<(), DocumentError> {
        match self.kind_of(name) {
            None => Err(DocumentError::Dangling {
                document: document.to_string(),
                field: field.to_string(),
                name: name.to_string(),
            }),
            Some(found) if found != expected => Err(DocumentError::WrongKind {
                document: document.to_string(),
                field: field.to_string(),
                name: name.to_string(),
                expected: expected.to_string(),
                found: found.to_string(),
            }),
            Some(_) => Ok(()),
        }
    }

    fn reference<'a>(
        &'a self,
        from: &str,
        field: &str,
        name: &str,
        expected: &str,
    ) -> Result<&'a Document, DocumentError> {
        self.expect_kind(from, field, name, expected)?;
        self.docs.get(name).ok_or_else(|| DocumentError::Dangling {
            document: from.to_string(),
            field: field.to_string(),
            name: name.to_string(),
        })
    }

    fn lookup_top(&self, name: &str, expected: &str) -> Result<&Document, DocumentError> {
        self.reference("workspace", "name", name, expected)
    }

    pub fn lattice(&self, name: &str) -> Result<Arc<FiniteLattice>, DocumentError> {
        if let Some(l) = builtin_lattice(name) {
            return Ok(Arc::new(l));
        }
        match self.lookup_top(name, "lattice")? {
            Document::Lattice(d) => Ok(Arc::new(d.build()?)),
            _ => unreachable!("kind checked"),
        }
    }

    fn lattice_ref(&self, from: &str, field: &str, name: &str) -> Result<Arc<FiniteLattice>, DocumentError> {
        self.expect_kind(from, field, name, "lattice")?;
        self.lattice(name)
    }

    pub fn frame(&self, name: &str) -> Result<KripkeFrame, DocumentError> {
        match self.lookup_top(name, "frame")? {
            Document::Frame(d) => d.build(),
            _ => unreachable!("kind checked"),
        }
    }

    fn truth_of(&self, d: &AlgebraDoc) -> Result<Option<Arc<FiniteLattice>>, DocumentError> {
        d.truth_lattice.as_deref().map(|t| self.lattice_ref(&d.name, "truth_lattice", t)).transpose()
    }

    /// Builds the algebra; `budget` bounds the carriers of powers.
    pub fn algebra(&self, name: &str, budget: usize) -> Result<Algebra> {
        let d = match self.lookup_top(name, "algebra")? {
            Document::Algebra(d) => d,
            _ => unreachable!("kind checked"),
        };
        let truth = self.truth_of(d)?;
        let a = match (&d.tables, &d.presentation) {
            (Some(t), _) => self.tables_algebra(d, t, truth)?,
            (None, Some(p)) => self.presented_algebra(d, p, truth, budget)?,
            (None, None) => return Err(DocumentError::schema(format!("{name}: no carrier given")).into()),
        };
        Ok(a.with_name(&d.name))
    }

    fn tables_algebra(&self, d: &AlgebraDoc, t: &TablesDoc, truth: Option<Arc<FiniteLattice>>) -> Result<Algebra> {
        let map = name_map(&d.name, "tables.carrier", &t.carrier)?;
        let t_rows = match (&t.t, &truth) {
            (Some(rows), Some(l)) if d.signature.has_t() => {
                let mut out = vec![None; l.len()];
                for (key, row) in rows {
                    let idx = l.index_of(key).map_err(|e| DocumentError::invalid(&d.name, "tables.t", e))?;
                    out[idx] = Some(check_table(&d.name, "tables.t", &map, std::slice::from_ref(row))?.remove(0));
                }
                let missing = out.iter().position(Option::is_none);
                if let Some(i) = missing {
                    return Err(DocumentError::schema(format!(
                        "{}: `tables.t` has no row for `{}`",
                        d.name,
                        l.name_of(i)
                    ))
                    .into());
                }
                Some(out.into_iter().map(Option::unwrap).collect())
            }
            _ => None,
        };
        let spec = TableSpec {
            name: d.name.clone(),
            signature: d.signature,
            carrier: t.carrier.clone(),
            meet: check_table(&d.name, "tables.meet", &map, &t.meet)?,
            join: check_table(&d.name, "tables.join", &map, &t.join)?,
            imp: t.imp.as_ref().map(|r| check_table(&d.name, "tables.imp", &map, r)).transpose()?,
            t: t_rows,
            zero: lookup(&d.name, "tables.zero", &map, &t.zero)?,
            one: lookup(&d.name, "tables.one", &map, &t.one)?,
            truth,
        };
        Algebra::from_tables(spec).map_err(|e| DocumentError::invalid(&d.name, "tables", e).into())
    }

    fn presented_algebra(
        &self,
        d: &AlgebraDoc,
        p: &PresentationDoc,
        truth: Option<Arc<FiniteLattice>>,
        budget: usize,
    ) -> Result<Algebra> {
        let base = |lattice: &Option<String>| -> Result<Arc<FiniteLattice>, DocumentError> {
            let l = match lattice {
                Some(l) => self.lattice_ref(&d.name, "presentation.lattice", l)?,
                None => truth.clone().ok_or_else(|| {
                    DocumentError::schema(format!("{}: presentation needs `lattice` or `truth_lattice`", d.name))
                })?,
            };
            if d.signature.has_t() {
                if let Some(t) = &truth {
                    if !same_lattice(t, &l) {
                        return Err(DocumentError::schema(format!(
                            "{}: lvl presentation over `{}` must use the truth lattice `{}`",
                            d.name,
                            l.name(),
                            t.name()
                        )));
                    }
                }
            }
            Ok(l)
        };
        let field = "presentation";
        match p {
            PresentationDoc::Lattice { lattice } => Ok(Algebra::from_lattice(base(lattice)?, d.signature)),
            PresentationDoc::Product { lattice, exponent } => {
                let l = base(lattice)?;
                check_budget("product", l.len(), *exponent, budget)?;
                Algebra::lattice_power(l, *exponent, d.signature)
                    .map_err(|e| DocumentError::invalid(&d.name, field, e).into())
            }
            PresentationDoc::Power { frame, generators } => {
                let l =
                    truth.ok_or_else(|| DocumentError::schema(format!("{}: power needs `truth_lattice`", d.name)))?;
                let w = match self.reference(&d.name, "presentation.frame", frame, "frame")? {
                    Document::Frame(f) => f.build()?,
                    _ => unreachable!("kind checked"),
                };
                match generators {
                    Generators::Keyword(GeneratorKeyword::All) => intuitionistic_power(l, &w, budget),
                    Generators::Keyword(GeneratorKeyword::Monotone) => upset_algebra(l, &w).and_then(|a| {
                        if a.len() > budget {
                            return Err(Error::BudgetExceeded {
                                what: "up-set algebra".into(),
                                size: a.len() as u128,
                                budget,
                            });
                        }
                        Ok(a)
                    }),
                    Generators::Vectors(vs) => {
                        let gens = vs
                            .iter()
                            .map(|v| {
                                if v.len() != w.len() {
                                    return Err(DocumentError::schema(format!(
                                        "{}: generator {:?} has {} values, the frame has {} worlds",
                                        d.name,
                                        v,
                                        v.len(),
                                        w.len()
                                    )));
                                }
                                v.iter()
                                    .map(|x| {
                                        l.index_of(x)
                                            .map_err(|e| DocumentError::invalid(&d.name, "presentation.generators", e))
                                    })
                                    .collect()
                            })
                            .collect::<Result<Vec<Vec<usize>>, _>>()?;
                        power_subalgebra(l, &w, gens, budget)
                    }
                }
                .map_err(|e| match e {
                    Error::BudgetExceeded { .. } => e,
                    other => DocumentError::invalid(&d.name, field, other).into(),
                })
            }
        }
    }

    fn space_doc(&self, name: &str) -> Result<&SpaceDoc, DocumentError> {
        match self.lookup_top(name, "space")? {
            Document::Space(d) => Ok(d),
            _ => unreachable!("kind checked"),
        }
    }

    /// The space as a bitopological space with its α assignment. Without
    /// `alpha`, α(L) is every point and every other subalgebra gets ∅.
    pub fn bitop_space(&self, name: &str) -> Result<(BitopSpace, AlphaAssignment), DocumentError> {
        let d = self.space_doc(name)?;
        let truth = match &d.truth_lattice {
            Some(t) => self.lattice_ref(&d.name, "truth_lattice", t)?,
            None => {
                return Err(DocumentError::schema(format!(
                    "{}: a bitopological space requires `truth_lattice`",
                    d.name
                )))
            }
        };
        let (t1, t2) = d.bitopology()?;
        let space =
            BitopSpace::new(d.points.clone(), t1, t2).map_err(|e| DocumentError::invalid(&d.name, "points", e))?;
        let mut alpha = AlphaAssignment::trivial(truth.clone(), d.points.len());
        if let Some(given) = &d.alpha {
            let map = name_map(&d.name, "points", &d.points)?;
            let full = BitSet::full(truth.len());
            for (i, s) in alpha.subalgebras.iter().enumerate() {
                if *s != full {
                    alpha.images[i] = BitSet::empty(d.points.len());
                }
            }
            for (key, pts) in given {
                let sub = parse_subalgebra_key(&truth, key).map_err(|e| DocumentError::invalid(&d.name, "alpha", e))?;
                let i = alpha.index_of(&sub).ok_or_else(|| {
                    DocumentError::invalid(&d.name, "alpha", TopologyError::UnknownSubalgebra(key.clone()))
                })?;
                alpha.images[i] = point_sets(&d.name, "alpha", &map, std::slice::from_ref(pts))?.remove(0);
            }
        }
        Ok((space, alpha))
    }

    pub fn ordered_space(&self, name: &str) -> Result<OrderedSpace, DocumentError> {
        let d = self.space_doc(name)?;
        let topo = d.single_topology()?;
        OrderedSpace::new(topo, d.poset()?).map_err(|e| DocumentError::invalid(&d.name, "order", e))
    }

    /// The truth lattice declared by a space, if any.
    pub fn space_truth(&self, name: &str) -> Result<Option<Arc<FiniteLattice>>, DocumentError> {
        let d = self.space_doc(name)?;
        d.truth_lattice.as_deref().map(|t| self.lattice_ref(&d.name, "truth_lattice", t)).transpose()
    }
}

fn same_lattice(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    let n = a.len();
    a.names() == b.names() && (0..n).all(|x| (0..n).all(|y| a.leq(x, y) == b.leq(x, y)))
}

fn names_of(names: &[String], set: &BitSet) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

fn cover_pairs(p: &Poset) -> Vec<(String, String)> {
    p.covers().into_iter().map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect()
}

pub fn lattice_document(l: &FiniteLattice) -> LatticeDoc {
    LatticeDoc {
        kind: LatticeKind::Tag,
        name: l.name().to_string(),
        elements: l.names().to_vec(),
        leq: cover_pairs(l.order()),
        bottom: l.name_of(l.bottom()).to_string(),
        top: l.name_of(l.top()).to_string(),
    }
}

pub fn frame_document(name: &str, w: &KripkeFrame) -> FrameDoc {
    FrameDoc { kind: FrameKind::Tag, name: name.to_string(), worlds: w.names().to_vec(), order: cover_pairs(w) }
}

/// The algebra as explicit tables. The truth lattice is referenced by name.
pub fn algebra_document(a: &Algebra) -> AlgebraDoc {
    let spec = a.table_spec();
    let names = &spec.carrier;
    let grid = |rows: &Vec<Vec<usize>>| -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|&x| names[x].clone()).collect()).collect()
    };
    let truth = spec.truth.as_ref();
    let t = match (&spec.t, truth) {
        (Some(rows), Some(l)) => Some(
            rows.iter()
                .enumerate()
                .map(|(i, r)| (l.name_of(i).to_string(), r.iter().map(|&x| names[x].clone()).collect()))
                .collect(),
        ),
        _ => None,
    };
    AlgebraDoc {
        kind: AlgebraKind::Tag,
        name: spec.name.clone(),
        signature: spec.signature,
        truth_lattice: truth.map(|l| l.name().to_string()),
        presentation: None,
        tables: Some(TablesDoc {
            carrier: names.clone(),
            zero: names[spec.zero].clone(),
            one: names[spec.one].clone(),
            meet: grid(&spec.meet),
            join: grid(&spec.join),
            imp: spec.imp.as_ref().map(grid),
            t,
        }),
    }
}

fn basis_lists(names: &[String], t: &Topology) -> Vec<Vec<String>> {
    t.basis().iter().map(|b| names_of(names, b)).collect()
}

/// A bitopological space with its α assignment, every subalgebra listed.
pub fn bitop_space_document(name: &str, s: &BitopSpace, alpha: &AlphaAssignment) -> SpaceDoc {
    let alpha_map = (0..alpha.subalgebras.len())
        .map(|i| {
            let key = names_of(alpha.truth.names(), &alpha.subalgebras[i]).join(",");
            (key, names_of(&s.names, &alpha.images[i]))
        })
        .collect();
    SpaceDoc {
        kind: SpaceKind::Tag,
        name: name.to_string(),
        points: s.names.clone(),
        topo: None,
        topo1: Some(basis_lists(&s.names, &s.topo1)),
        topo2: Some(basis_lists(&s.names, &s.topo2)),
        order: None,
        truth_lattice: Some(alpha.truth.name().to_string()),
        alpha: Some(alpha_map),
    }
}

pub fn ordered_space_document(name: &str, x: &OrderedSpace, truth: Option<&str>) -> SpaceDoc {
    SpaceDoc {
        kind: SpaceKind::Tag,
        name: name.to_string(),
        points: x.names().to_vec(),
        topo: Some(basis_lists(x.names(), &x.topo)),
        topo1: None,
        topo2: None,
        order: Some(cover_pairs(&x.order)),
        truth_lattice: truth.map(str::to_string),
        alpha: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_lvl;

    const CHAIN3: &str = r#"
kind = "lattice"
name = "chain3"
elements = ["0", "m", "1"]
leq = [["0", "m"], ["m", "1"]]
bottom = "0"
top = "1"
"#;

    #[test]
    fn lattice_document_builds() {
        let d = parse_document(CHAIN3).unwrap();
        let Document::Lattice(l) = &d else { panic!() };
        let l = l.build().unwrap();
        assert_eq!(l.len(), 3);
        assert!(l.leq(0, 2));
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let text = CHAIN3.replace(r#"[["0", "m"], ["m", "1"]]"#, r#"[["0", "m"], ["m", "0"], ["m", "1"]]"#);
        match parse_document(&text) {
            Err(DocumentError::Invalid { field, source, .. }) => {
                assert_eq!(field, "leq");
                assert!(matches!(*source, Error::Order(OrderError::NotAPoset { .. })));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagnostics_carry_locations() {
        match parse_document("kind = \"lattice\"\nname = \n") {
            Err(DocumentError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_document(&format!("{CHAIN3}colour = \"red\"\n")) {
            Err(DocumentError::Schema { line, message, .. }) => {
                assert_eq!(line, Some(8));
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_document("kind = \"monoid\"\nname = \"x\""), Err(DocumentError::UnknownKind(_))));
        assert!(matches!(parse_document("name = \"x\""), Err(DocumentError::Schema { .. })));
    }

    #[test]
    fn dangling_truth_lattice() {
        let mut ws = Workspace::new();
        ws.add_text(
            "kind = \"algebra\"\nname = \"a\"\nsignature = \"lvl\"\ntruth_lattice = \"nowhere\"\n[presentation]\ntype = \"lattice\"\n",
        )
        .unwrap();
        assert!(matches!(ws.check_references(), Err(DocumentError::Dangling { .. })));
        assert_eq!(ws.unresolved().len(), 1);
    }

    #[test]
    fn presentations_resolve() {
        let mut ws = Workspace::new();
        ws.add_text(CHAIN3).unwrap();
        ws.add_text("kind = \"frame\"\nname = \"v\"\nworlds = [\"w0\", \"w1\"]\norder = [[\"w0\", \"w1\"]]\n").unwrap();
        ws.add_text(
            "kind = \"algebra\"\nname = \"sq\"\nsignature = \"lvl\"\ntruth_lattice = \"chain3\"\n[presentation]\ntype = \"product\"\nexponent = 2\n",
        )
        .unwrap();
        ws.add_text(
            "kind = \"algebra\"\nname = \"up\"\nsignature = \"isp_i\"\ntruth_lattice = \"std:chain2\"\n[presentation]\ntype = \"power\"\nframe = \"v\"\ngenerators = \"monotone\"\n",
        )
        .unwrap();
        ws.add_text(
            "kind = \"algebra\"\nname = \"gen\"\nsignature = \"isp_i\"\ntruth_lattice = \"std:chain2\"\n[presentation]\ntype = \"power\"\nframe = \"v\"\ngenerators = [[\"0\", \"1\"]]\n",
        )
        .unwrap();
        ws.check_references().unwrap();
        assert_eq!(ws.algebra("sq", 4096).unwrap().len(), 9);
        assert_eq!(ws.algebra("up", 4096).unwrap().len(), 3);
        assert_eq!(ws.algebra("gen", 4096).unwrap().names(), ws.algebra("up", 4096).unwrap().names());
        assert!(matches!(ws.algebra("sq", 8), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn algebra_tables_round_trip() {
        let l = Arc::new(FiniteLattice::chain(3).with_name("chain3"));
        let a = make_lvl(l.clone());
        let doc = Document::Algebra(algebra_document(&a.with_name("c3lvl")));
        let text = serialize_document(&doc);
        assert_eq!(parse_document(&text).unwrap(), doc);
        let mut ws = Workspace::new();
        ws.add_text(CHAIN3).unwrap();
        assert!(matches!(ws.add_text(CHAIN3), Err(DocumentError::DuplicateName(_))));
        ws.insert(doc).unwrap();
        let b = ws.algebra("c3lvl", 4096).unwrap();
        assert_eq!(b.table_spec().t, make_lvl(l).table_spec().t);
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_lattice("std:chain4").unwrap().len(), 4);
        assert_eq!(builtin_lattice("std:b2").unwrap().len(), 4);
        assert!(builtin_lattice("std:chain1").is_none());
        assert!(builtin_lattice("std:chain04").is_none());
        assert!(builtin_lattice("chain3").is_none());
    }
}
