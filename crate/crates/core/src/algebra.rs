//! Algebras over the bounded-lattice, Heyting, L-VL and intuitionistic-power
//! signatures; the `T_ℓ` operator family; the L-VL axiom checker; and
//! homomorphism checking and enumeration.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{FiniteLattice, OrderError, Poset};

/// Hard cap on carrier sizes; tables store elements as `u16`.
pub const MAX_CARRIER: usize = u16::MAX as usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch { expected: String, found: String },
    #[error("table `{symbol}` has the wrong shape")]
    TableShape { symbol: String },
    #[error("table `{symbol}` refers to element index {index} outside the carrier")]
    TableValue { symbol: String, index: usize },
    #[error("degenerate algebra: carrier has {0} element(s), at least two are required")]
    Degenerate(usize),
    #[error("carrier mismatch: map has {found} entries, source carrier has {expected}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("signature {0} requires a truth lattice")]
    TruthLatticeRequired(String),
    #[error("T-family is indexed by {found} elements, truth lattice has {expected}")]
    TIndexMismatch { expected: usize, found: usize },
    #[error("operation `{symbol}` leaves the carrier at ({args})")]
    NotClosed { symbol: String, args: String },
    #[error("lattice law `{law}` fails at ({witness})")]
    LatticeLaw { law: String, witness: String },
    #[error("implication is not residuated: a={a}, b={b}, c={c}")]
    NotResiduated { a: String, b: String, c: String },
    #[error("carrier of {size} elements exceeds the hard limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// The four supported signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signature {
    /// ∧, ∨, 0, 1.
    Bdl,
    /// Bounded lattice with a residuated →.
    Heyting,
    /// Heyting with `T_ℓ` for each ℓ of the truth lattice.
    Lvl,
    /// Bounded lattice with a distinguished → that need not be pointwise
    /// or residuated.
    IspI,
}

impl Signature {
    pub fn has_imp(self) -> bool {
        !matches!(self, Signature::Bdl)
    }

    pub fn has_t(self) -> bool {
        matches!(self, Signature::Lvl)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Signature::Bdl => "bdl",
            Signature::Heyting => "heyting",
            Signature::Lvl => "lvl",
            Signature::IspI => "isp_i",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "bdl" => Signature::Bdl,
            "heyting" => Signature::Heyting,
            "lvl" => Signature::Lvl,
            "isp_i" => Signature::IspI,
            _ => return None,
        })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `T_ℓ(x) = 1` if `x = ℓ`, else `0`.
pub fn t_operator(l: &FiniteLattice, index: usize, x: usize) -> usize {
    if x == index {
        l.top()
    } else {
        l.bottom()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Table {
    n: usize,
    cells: Vec<u16>,
}

impl Table {
    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b) as u16);
            }
        }
        Table { n, cells }
    }

    fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b] as usize
    }
}

/// How → is computed on an algebra of functions into `L`.
#[derive(Clone, Debug)]
pub enum ImpRule {
    /// `(f→g)(p) = f(p) → g(p)`.
    Pointwise,
    /// `(f→g)(w) = ⋀{f(w') → g(w') : w R w'}` over the given order on points.
    Kripke(Poset),
}

/// Provenance of an algebra whose elements are functions from a finite point
/// set into its truth lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionPresentation {
    pub points: Vec<String>,
    /// Order on the points when → was computed by the Kripke rule.
    pub frame: Option<Poset>,
    values: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
}

impl FunctionPresentation {
    pub fn value(&self, element: usize, point: usize) -> usize {
        self.values[element][point] as usize
    }

    pub fn values(&self, element: usize) -> Vec<usize> {
        self.values[element].iter().map(|&v| v as usize).collect()
    }

    pub fn index_of(&self, values: &[usize]) -> Option<usize> {
        let key: Vec<u16> = values.iter().map(|&v| v as u16).collect();
        self.index.get(&key).copied()
    }
}

/// Explicit operation tables, the input form of [`Algebra::from_tables`].
#[derive(Clone, Debug)]
pub struct TableSpec {
    pub name: String,
    pub signature: Signature,
    pub carrier: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub imp: Option<Vec<Vec<usize>>>,
    /// `t[ℓ][x] = T_ℓ(x)`, indexed by the truth lattice's elements.
    pub t: Option<Vec<Vec<usize>>>,
    pub zero: usize,
    pub one: usize,
    pub truth: Option<Arc<FiniteLattice>>,
}

/// A finite algebra with total operation tables.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    signature: Signature,
    names: Vec<String>,
    meet: Table,
    join: Table,
    imp: Option<Table>,
    t_ops: Option<Vec<Vec<u16>>>,
    zero: usize,
    one: usize,
    truth: Option<Arc<FiniteLattice>>,
    presentation: Option<FunctionPresentation>,
}

type PointwiseOp<'a> = dyn Fn(&[u16], &[u16]) -> Vec<u16> + 'a;

impl Algebra {
    /// The lattice `L` itself in the given signature, with → the Heyting
    /// implication and `T_ℓ` the characteristic functions.
    pub fn from_lattice(l: Arc<FiniteLattice>, signature: Signature) -> Self {
        let n = l.len();
        let imp = signature.has_imp().then(|| Table::from_fn(n, |a, b| l.implies(a, b)));
        let t_ops = signature
            .has_t()
            .then(|| (0..n).map(|idx| (0..n).map(|x| t_operator(&l, idx, x) as u16).collect()).collect());
        Algebra {
            name: l.name().to_string(),
            signature,
            names: l.names().to_vec(),
            meet: Table::from_fn(n, |a, b| l.meet(a, b)),
            join: Table::from_fn(n, |a, b| l.join(a, b)),
            imp,
            t_ops,
            zero: l.bottom(),
            one: l.top(),
            truth: matches!(signature, Signature::Lvl | Signature::IspI).then(|| l.clone()),
            presentation: None,
        }
    }

    /// Validating constructor from explicit tables.
    pub fn from_tables(spec: TableSpec) -> Result<Self, AlgebraError> {
        let n = spec.carrier.len();
        if n < 2 {
            return Err(AlgebraError::Degenerate(n));
        }
        if n > MAX_CARRIER {
            return Err(AlgebraError::TooLarge { size: n, limit: MAX_CARRIER });
        }
        let mut dedup = spec.carrier.clone();
        dedup.sort();
        dedup.dedup();
        if dedup.len() != n {
            let dup = spec.carrier.iter().find(|x| spec.carrier.iter().filter(|y| y == x).count() > 1).unwrap();
            return Err(OrderError::DuplicateElement(dup.clone()).into());
        }
        let table = |symbol: &str, rows: &Vec<Vec<usize>>| -> Result<Table, AlgebraError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(AlgebraError::TableShape { symbol: symbol.into() });
            }
            if let Some(&bad) = rows.iter().flatten().find(|&&v| v >= n) {
                return Err(AlgebraError::TableValue { symbol: symbol.into(), index: bad });
            }
            Ok(Table::from_fn(n, |a, b| rows[a][b]))
        };
        let meet = table("meet", &spec.meet)?;
        let join = table("join", &spec.join)?;
        let imp = match (&spec.imp, spec.signature.has_imp()) {
            (Some(rows), true) => Some(table("imp", rows)?),
            (None, true) => return Err(AlgebraError::TableShape { symbol: "imp".into() }),
            (_, false) => None,
        };
        if spec.zero >= n || spec.one >= n {
            return Err(AlgebraError::TableValue { symbol: "bounds".into(), index: spec.zero.max(spec.one) });
        }
        let needs_truth = matches!(spec.signature, Signature::Lvl | Signature::IspI);
        if needs_truth && spec.truth.is_none() {
            return Err(AlgebraError::TruthLatticeRequired(spec.signature.to_string()));
        }
        let t_ops = if spec.signature.has_t() {
            let truth = spec.truth.as_ref().unwrap();
            let rows = spec.t.as_ref().ok_or(AlgebraError::TableShape { symbol: "T".into() })?;
            if rows.len() != truth.len() {
                return Err(AlgebraError::TIndexMismatch { expected: truth.len(), found: rows.len() });
            }
            if rows.iter().any(|r| r.len() != n) {
                return Err(AlgebraError::TableShape { symbol: "T".into() });
            }
            if let Some(&bad) = rows.iter().flatten().find(|&&v| v >= n) {
                return Err(AlgebraError::TableValue { symbol: "T".into(), index: bad });
            }
            Some(rows.iter().map(|r| r.iter().map(|&v| v as u16).collect()).collect())
        } else {
            None
        };
        let algebra = Algebra {
            name: spec.name,
            signature: spec.signature,
            names: spec.carrier,
            meet,
            join,
            imp,
            t_ops,
            zero: spec.zero,
            one: spec.one,
            truth: spec.truth,
            presentation: None,
        };
        algebra.validate_lattice_laws()?;
        if matches!(algebra.signature, Signature::Heyting | Signature::Lvl) {
            algebra.validate_residuation()?;
        }
        Ok(algebra)
    }

    /// Algebra of functions from `points` into `truth`, closed under the
    /// pointwise lattice operations, → per `imp`, and pointwise `T_ℓ` when the
    /// signature has them. Fails if `vectors` is not closed.
    pub fn function_algebra(
        name: &str,
        signature: Signature,
        truth: Arc<FiniteLattice>,
        points: Vec<String>,
        vectors: Vec<Vec<usize>>,
        imp: Option<ImpRule>,
    ) -> Result<Self, AlgebraError> {
        let n = vectors.len();
        if n < 2 {
            return Err(AlgebraError::Degenerate(n));
        }
        if n > MAX_CARRIER {
            return Err(AlgebraError::TooLarge { size: n, limit: MAX_CARRIER });
        }
        let l = truth.as_ref();
        let width = points.len();
        let values: Vec<Vec<u16>> = vectors.iter().map(|v| v.iter().map(|&x| x as u16).collect()).collect();
        let index: HashMap<Vec<u16>, usize> = values.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let names: Vec<String> = vectors.iter().map(|v| tuple_name(l, v)).collect();
        let lookup = |symbol: &str, args: &[usize], v: Vec<u16>| -> Result<usize, AlgebraError> {
            index.get(&v).copied().ok_or_else(|| AlgebraError::NotClosed {
                symbol: symbol.into(),
                args: args.iter().map(|&a| names[a].clone()).collect::<Vec<_>>().join(", "),
            })
        };
        let binary = |symbol: &str, op: &PointwiseOp<'_>| {
            let mut cells = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    cells.push(lookup(symbol, &[a, b], op(&values[a], &values[b]))? as u16);
                }
            }
            Ok::<Table, AlgebraError>(Table { n, cells })
        };
        let meet =
            binary("meet", &|f, g| f.iter().zip(g).map(|(&x, &y)| l.meet(x as usize, y as usize) as u16).collect())?;
        let join =
            binary("join", &|f, g| f.iter().zip(g).map(|(&x, &y)| l.join(x as usize, y as usize) as u16).collect())?;
        let imp_table = match (&imp, signature.has_imp()) {
            (_, false) => None,
            (None, true) => return Err(AlgebraError::TableShape { symbol: "imp".into() }),
            (Some(rule), true) => {
                let local = |f: &[u16], g: &[u16], p: usize| l.implies(f[p] as usize, g[p] as usize);
                Some(binary("imp", &|f, g| {
                    (0..width)
                        .map(|p| match rule {
                            ImpRule::Pointwise => local(f, g, p) as u16,
                            ImpRule::Kripke(frame) => l.meet_all(frame.up(p).iter().map(|q| local(f, g, q))) as u16,
                        })
                        .collect()
                })?)
            }
        };
        let t_ops = if signature.has_t() {
            let mut rows = Vec::with_capacity(l.len());
            for idx in 0..l.len() {
                let mut row = Vec::with_capacity(n);
                for (x, f) in values.iter().enumerate() {
                    let v = f.iter().map(|&y| t_operator(l, idx, y as usize) as u16).collect();
                    row.push(lookup(&format!("T_{}", l.name_of(idx)), &[x], v)? as u16);
                }
                rows.push(row);
            }
            Some(rows)
        } else {
            None
        };
        let zero = lookup("0", &[], vec![l.bottom() as u16; width])?;
        let one = lookup("1", &[], vec![l.top() as u16; width])?;
        let frame = match imp {
            Some(ImpRule::Kripke(frame)) => Some(frame),
            _ => None,
        };
        Ok(Algebra {
            name: name.to_string(),
            signature,
            names,
            meet,
            join,
            imp: imp_table,
            t_ops,
            zero,
            one,
            truth: Some(truth),
            presentation: Some(FunctionPresentation { points, frame, values, index }),
        })
    }

    /// `L^k` with every operation pointwise; points are named `p0..p{k-1}`.
    pub fn lattice_power(l: Arc<FiniteLattice>, k: usize, signature: Signature) -> Result<Self, AlgebraError> {
        let vectors = all_vectors(l.len(), k);
        let points = (0..k).map(|i| format!("p{i}")).collect();
        let name = format!("{}^{k}", l.name());
        let imp = signature.has_imp().then_some(ImpRule::Pointwise);
        Self::function_algebra(&name, signature, l, points, vectors, imp)
    }

    pub fn table_spec(&self) -> TableSpec {
        let n = self.len();
        let rows = |t: &Table| (0..n).map(|a| (0..n).map(|b| t.get(a, b)).collect()).collect();
        TableSpec {
            name: self.name.clone(),
            signature: self.signature,
            carrier: self.names.clone(),
            meet: rows(&self.meet),
            join: rows(&self.join),
            imp: self.imp.as_ref().map(rows),
            t: self.t_ops.as_ref().map(|t| t.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect()),
            zero: self.zero,
            one: self.one,
            truth: self.truth.clone(),
        }
    }

    /// The same carrier and tables viewed in a smaller signature.
    pub fn reduct(&self, signature: Signature) -> Result<Algebra, AlgebraError> {
        if signature.has_imp() && self.imp.is_none() || signature.has_t() && self.t_ops.is_none() {
            return Err(AlgebraError::SignatureMismatch {
                expected: signature.to_string(),
                found: self.signature.to_string(),
            });
        }
        let mut out = self.clone();
        out.signature = signature;
        if !signature.has_imp() {
            out.imp = None;
        }
        if !signature.has_t() {
            out.t_ops = None;
        }
        Ok(out)
    }

    /// Sub-carrier closed under the signature, with the parent's tables
    /// restricted; element order follows the parent.
    pub fn subalgebra(&self, name: &str, members: &[usize]) -> Result<Algebra, AlgebraError> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = members.len();
        if m < 2 {
            return Err(AlgebraError::Degenerate(m));
        }
        let restrict = |symbol: &str, t: &Table| -> Result<Table, AlgebraError> {
            let mut cells = Vec::with_capacity(m * m);
            for &a in &members {
                for &b in &members {
                    let v = t.get(a, b);
                    let i = pos.get(&v).ok_or_else(|| AlgebraError::NotClosed {
                        symbol: symbol.into(),
                        args: format!("{}, {}", self.names[a], self.names[b]),
                    })?;
                    cells.push(*i as u16);
                }
            }
            Ok(Table { n: m, cells })
        };
        let missing = |symbol: &str| AlgebraError::NotClosed { symbol: symbol.into(), args: String::new() };
        let zero = *pos.get(&self.zero).ok_or_else(|| missing("0"))?;
        let one = *pos.get(&self.one).ok_or_else(|| missing("1"))?;
        let t_ops = match &self.t_ops {
            None => None,
            Some(rows) => {
                let mut out = Vec::with_capacity(rows.len());
                for (idx, row) in rows.iter().enumerate() {
                    let mut r = Vec::with_capacity(m);
                    for &x in &members {
                        let v = row[x] as usize;
                        r.push(*pos.get(&v).ok_or_else(|| AlgebraError::NotClosed {
                            symbol: format!("T_{idx}"),
                            args: self.names[x].clone(),
                        })? as u16);
                    }
                    out.push(r);
                }
                Some(out)
            }
        };
        let presentation = self.presentation.as_ref().map(|p| {
            let values: Vec<Vec<u16>> = members.iter().map(|&x| p.values[x].clone()).collect();
            let index = values.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
            FunctionPresentation { points: p.points.clone(), frame: p.frame.clone(), values, index }
        });
        Ok(Algebra {
            name: name.to_string(),
            signature: self.signature,
            names: members.iter().map(|&x| self.names[x].clone()).collect(),
            meet: restrict("meet", &self.meet)?,
            join: restrict("join", &self.join)?,
            imp: self.imp.as_ref().map(|t| restrict("imp", t)).transpose()?,
            t_ops,
            zero,
            one,
            truth: self.truth.clone(),
            presentation,
        })
    }

    fn validate_lattice_laws(&self) -> Result<(), AlgebraError> {
        let n = self.len();
        let fail = |law: &str, xs: &[usize]| AlgebraError::LatticeLaw {
            law: law.into(),
            witness: xs.iter().map(|&x| self.names[x].clone()).collect::<Vec<_>>().join(", "),
        };
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Err(fail("idempotence", &[a]));
            }
            if self.meet(self.zero, a) != self.zero || self.join(self.one, a) != self.one {
                return Err(fail("bounds", &[a]));
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return Err(fail("commutativity", &[a, b]));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Err(fail("absorption", &[a, b]));
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return Err(fail("associativity", &[a, b, c]));
                    }
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Err(fail("distributivity", &[a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_residuation(&self) -> Result<(), AlgebraError> {
        if let Some((a, b, c)) = self.residuation_witness() {
            return Err(AlgebraError::NotResiduated {
                a: self.names[a].clone(),
                b: self.names[b].clone(),
                c: self.names[c].clone(),
            });
        }
        Ok(())
    }

    /// First `(a, b, c)` where `a ∧ c ≤ b` and `c ≤ a → b` disagree.
    pub fn residuation_witness(&self) -> Option<(usize, usize, usize)> {
        self.imp.as_ref()?;
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.imp(a, b);
                for c in 0..n {
                    if self.leq(self.meet(a, c), b) != self.leq(c, ab) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| OrderError::UnknownElement(name.to_string()).into())
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet.get(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join.get(a, b)
    }

    pub fn has_imp(&self) -> bool {
        self.imp.is_some()
    }

    /// Panics when the algebra carries no → table.
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp.as_ref().expect("algebra has no implication").get(a, b)
    }

    pub fn has_t(&self) -> bool {
        self.t_ops.is_some()
    }

    /// `T_ℓ(x)` where `index` is ℓ's position in the truth lattice.
    pub fn t(&self, index: usize, x: usize) -> usize {
        self.t_ops.as_ref().expect("algebra has no T-family")[index][x] as usize
    }

    pub fn t_family_len(&self) -> usize {
        self.t_ops.as_ref().map_or(0, Vec::len)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// `a ≤ b` iff `a ∧ b = a`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn truth(&self) -> Option<&Arc<FiniteLattice>> {
        self.truth.as_ref()
    }

    pub fn presentation(&self) -> Option<&FunctionPresentation> {
        self.presentation.as_ref()
    }

    /// The underlying bounded distributive lattice.
    pub fn lattice(&self) -> Result<FiniteLattice, OrderError> {
        let order = Poset::from_leq(self.names.clone(), |a, b| self.leq(a, b));
        FiniteLattice::from_poset(&self.name, order, self.zero, self.one)
    }
}

/// The L-VL algebra on `L` itself.
pub fn make_lvl(l: Arc<FiniteLattice>) -> Algebra {
    Algebra::from_lattice(l, Signature::Lvl)
}

pub(crate) fn tuple_name(l: &FiniteLattice, v: &[usize]) -> String {
    let parts: Vec<&str> = v.iter().map(|&x| l.name_of(x)).collect();
    format!("({})", parts.join(","))
}

/// All vectors in `0..base` of length `k`, lexicographic (first coordinate
/// most significant).
pub(crate) fn all_vectors(base: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..base).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// A map between carriers, stored as the image of each source element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Homomorphism {
    images: Vec<usize>,
}

impl Homomorphism {
    pub fn new(images: Vec<usize>) -> Self {
        Homomorphism { images }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism { images: (0..n).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Homomorphism {
        Homomorphism { images: self.images.iter().map(|&x| then.images[x]).collect() }
    }

    /// Image vector in the target's element names, e.g. `[0,m,1]`.
    pub fn display(&self, target_names: &[String]) -> String {
        let parts: Vec<&str> = self.images.iter().map(|&x| target_names[x].as_str()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Where a candidate homomorphism fails to commute with an operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub symbol: String,
    pub args: Vec<String>,
    /// `op_B(h(args))`.
    pub expected: String,
    /// `h(op_A(args))`.
    pub actual: String,
}

impl fmt::Display for HomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}) maps to {} but should map to {}",
            self.symbol,
            self.args.join(", "),
            self.actual,
            self.expected
        )
    }
}

fn check_compatible(a: &Algebra, b: &Algebra, sig: Signature) -> Result<(), AlgebraError> {
    for alg in [a, b] {
        if (sig.has_imp() && !alg.has_imp()) || (sig.has_t() && !alg.has_t()) {
            return Err(AlgebraError::SignatureMismatch {
                expected: sig.to_string(),
                found: alg.signature.to_string(),
            });
        }
    }
    if sig.has_t() && a.t_family_len() != b.t_family_len() {
        return Err(AlgebraError::TIndexMismatch { expected: a.t_family_len(), found: b.t_family_len() });
    }
    Ok(())
}

/// Checks that `h: A → B` commutes with every operation of `sig`.
/// Returns the first violation found, constants first.
pub fn is_homomorphism(
    h: &[usize],
    a: &Algebra,
    b: &Algebra,
    sig: Signature,
) -> Result<Option<HomWitness>, AlgebraError> {
    check_compatible(a, b, sig)?;
    if h.len() != a.len() {
        return Err(AlgebraError::CarrierMismatch { expected: a.len(), found: h.len() });
    }
    if let Some(&bad) = h.iter().find(|&&v| v >= b.len()) {
        return Err(AlgebraError::TableValue { symbol: "map".into(), index: bad });
    }
    let witness = |symbol: &str, args: &[usize], expected: usize, actual: usize| HomWitness {
        symbol: symbol.to_string(),
        args: args.iter().map(|&x| a.names[x].clone()).collect(),
        expected: b.names[expected].clone(),
        actual: b.names[actual].clone(),
    };
    if h[a.zero] != b.zero {
        return Ok(Some(witness("0", &[], b.zero, h[a.zero])));
    }
    if h[a.one] != b.one {
        return Ok(Some(witness("1", &[], b.one, h[a.one])));
    }
    let n = a.len();
    for x in 0..n {
        for y in 0..n {
            let e = b.meet(h[x], h[y]);
            if h[a.meet(x, y)] != e {
                return Ok(Some(witness("∧", &[x, y], e, h[a.meet(x, y)])));
            }
            let e = b.join(h[x], h[y]);
            if h[a.join(x, y)] != e {
                return Ok(Some(witness("∨", &[x, y], e, h[a.join(x, y)])));
            }
            if sig.has_imp() {
                let e = b.imp(h[x], h[y]);
                if h[a.imp(x, y)] != e {
                    return Ok(Some(witness("→", &[x, y], e, h[a.imp(x, y)])));
                }
            }
        }
    }
    if sig.has_t() {
        for idx in 0..a.t_family_len() {
            for x in 0..n {
                let e = b.t(idx, h[x]);
                if h[a.t(idx, x)] != e {
                    let symbol = match a.truth() {
                        Some(l) if l.len() == a.t_family_len() => format!("T_{}", l.name_of(idx)),
                        _ => format!("T_{idx}"),
                    };
                    return Ok(Some(witness(&symbol, &[x], e, h[a.t(idx, x)])));
                }
            }
        }
    }
    Ok(None)
}

const UNSET: usize = usize::MAX;

struct HomSearch<'a> {
    a: &'a Algebra,
    t: &'a Algebra,
    sig: Signature,
    assign: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
    found: Vec<Homomorphism>,
}

impl HomSearch<'_> {
    /// Assigns `x ↦ v` and everything it forces through the operation tables.
    fn propagate(&mut self, x: usize, v: usize) -> bool {
        self.queue.clear();
        self.queue.push((x, v));
        while let Some((x, v)) = self.queue.pop() {
            match self.assign[x] {
                UNSET => {}
                w if w == v => continue,
                _ => return false,
            }
            self.assign[x] = v;
            self.trail.push(x);
            let (a, t) = (self.a, self.t);
            for i in 0..self.trail.len() {
                let y = self.trail[i];
                let hy = self.assign[y];
                let mut forced = [(a.meet(x, y), t.meet(v, hy)), (a.join(x, y), t.join(v, hy)), (UNSET, 0), (UNSET, 0)];
                if self.sig.has_imp() {
                    forced[2] = (a.imp(x, y), t.imp(v, hy));
                    forced[3] = (a.imp(y, x), t.imp(hy, v));
                }
                for (z, hz) in forced {
                    if z == UNSET {
                        continue;
                    }
                    match self.assign[z] {
                        UNSET => self.queue.push((z, hz)),
                        w if w != hz => return false,
                        _ => {}
                    }
                }
            }
            if self.sig.has_t() {
                for idx in 0..a.t_family_len() {
                    let (z, hz) = (a.t(idx, x), t.t(idx, v));
                    match self.assign[z] {
                        UNSET => self.queue.push((z, hz)),
                        w if w != hz => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            self.assign[x] = UNSET;
        }
    }

    fn search(&mut self, cursor: usize) {
        let Some(x) = (cursor..self.a.len()).find(|&x| self.assign[x] == UNSET) else {
            self.found.push(Homomorphism::new(self.assign.clone()));
            return;
        };
        for v in 0..self.t.len() {
            let mark = self.trail.len();
            if self.propagate(x, v) {
                self.search(x + 1);
            }
            self.undo(mark);
        }
    }
}

/// Every homomorphism `A → T` for `A`'s signature, in lexicographic order of
/// image vectors.
pub fn enumerate_homs(a: &Algebra, t: &Algebra) -> Result<Vec<Homomorphism>, AlgebraError> {
    enumerate_homs_with(a, t, a.signature)
}

/// Backtracking over carrier elements in canonical order; each assignment
/// propagates through the operation tables of `sig`.
pub fn enumerate_homs_with(a: &Algebra, t: &Algebra, sig: Signature) -> Result<Vec<Homomorphism>, AlgebraError> {
    check_compatible(a, t, sig)?;
    let mut search = HomSearch {
        a,
        t,
        sig,
        assign: vec![UNSET; a.len()],
        trail: Vec::with_capacity(a.len()),
        queue: Vec::new(),
        found: Vec::new(),
    };
    if search.propagate(a.zero, t.zero) && search.propagate(a.one, t.one) {
        search.search(0);
    }
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// One counterexample to an axiom clause, as variable bindings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub law: String,
    pub bindings: Vec<(String, String)>,
}

impl AxiomWitness {
    pub fn binding(&self, var: &str) -> Option<&str> {
        self.bindings.iter().find(|(k, _)| k == var).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseVerdict {
    pub clause: String,
    pub pass: bool,
    /// Total number of failing instances, including those not kept as witnesses.
    pub counterexamples: usize,
    /// The first failing instances in scan order, at most [`WITNESS_CAP`].
    pub witnesses: Vec<AxiomWitness>,
}

/// Verdicts for clauses (i)–(vii) of the L-VL axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub literal_iv: bool,
    pub clauses: Vec<ClauseVerdict>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn clause(&self, id: &str) -> &ClauseVerdict {
        self.clauses.iter().find(|c| c.clause == id).unwrap_or_else(|| panic!("no clause {id}"))
    }
}

pub const WITNESS_CAP: usize = 64;

struct ClauseScan<'a> {
    a: &'a Algebra,
    l: &'a FiniteLattice,
    verdict: ClauseVerdict,
}

enum Var {
    Elem(&'static str, usize),
    Index(&'static str, usize),
}

impl<'a> ClauseScan<'a> {
    fn new(clause: &str, a: &'a Algebra, l: &'a FiniteLattice) -> Self {
        ClauseScan {
            a,
            l,
            verdict: ClauseVerdict { clause: clause.into(), pass: true, counterexamples: 0, witnesses: Vec::new() },
        }
    }

    fn check(&mut self, ok: bool, law: &str, vars: &[Var]) {
        if ok {
            return;
        }
        self.verdict.pass = false;
        self.verdict.counterexamples += 1;
        if self.verdict.witnesses.len() < WITNESS_CAP {
            let bindings = vars
                .iter()
                .map(|v| match *v {
                    Var::Elem(k, x) => (k.to_string(), self.a.name_of(x).to_string()),
                    Var::Index(k, i) => (k.to_string(), self.l.name_of(i).to_string()),
                })
                .collect();
            self.verdict.witnesses.push(AxiomWitness { law: law.into(), bindings });
        }
    }
}

/// Exhaustive check of clauses (i)–(vii) over carrier elements and T-indices.
/// With `literal_iv` false, the second identity of clause (iv) is checked
/// only for equal indices.
pub fn check_lvl_axioms(a: &Algebra, literal_iv: bool) -> Result<AxiomReport, AlgebraError> {
    if a.signature() != Signature::Lvl {
        return Err(AlgebraError::SignatureMismatch {
            expected: Signature::Lvl.to_string(),
            found: a.signature().to_string(),
        });
    }
    let l = a.truth().ok_or_else(|| AlgebraError::TruthLatticeRequired("lvl".into()))?.clone();
    let l = l.as_ref();
    let n = a.len();
    let k = l.len();
    let (zero, one) = (a.zero(), a.one());
    let (l0, l1) = (l.bottom(), l.top());
    let neg = |x: usize| a.imp(x, zero);
    let iff = |x: usize, y: usize| a.meet(a.imp(x, y), a.imp(y, x));
    use Var::{Elem, Index};

    let mut clauses = Vec::new();

    let mut c = ClauseScan::new("i", a, l);
    for x in 0..n {
        c.check(a.meet(x, x) == x && a.join(x, x) == x, "idempotence", &[Elem("a", x)]);
        c.check(a.leq(zero, x) && a.leq(x, one), "0 ≤ a ≤ 1", &[Elem("a", x)]);
        for y in 0..n {
            c.check(
                a.meet(x, y) == a.meet(y, x) && a.join(x, y) == a.join(y, x),
                "commutativity",
                &[Elem("a", x), Elem("b", y)],
            );
            c.check(
                a.meet(x, a.join(x, y)) == x && a.join(x, a.meet(x, y)) == x,
                "absorption",
                &[Elem("a", x), Elem("b", y)],
            );
            let xy = a.imp(x, y);
            for z in 0..n {
                c.check(
                    a.meet(x, a.meet(y, z)) == a.meet(a.meet(x, y), z)
                        && a.join(x, a.join(y, z)) == a.join(a.join(x, y), z),
                    "associativity",
                    &[Elem("a", x), Elem("b", y), Elem("c", z)],
                );
                c.check(
                    a.leq(a.meet(x, z), y) == a.leq(z, xy),
                    "a ∧ c ≤ b iff c ≤ a → b",
                    &[Elem("a", x), Elem("b", y), Elem("c", z)],
                );
            }
        }
    }
    clauses.push(c.verdict);

    let mut c = ClauseScan::new("ii", a, l);
    for i1 in 0..k {
        for i2 in 0..k {
            for x in 0..n {
                for y in 0..n {
                    let lhs = a.meet(a.t(i1, x), a.t(i2, y));
                    let rhs = a.meet(
                        a.t(l.implies(i1, i2), a.imp(x, y)),
                        a.meet(a.t(l.meet(i1, i2), a.meet(x, y)), a.t(l.join(i1, i2), a.join(x, y))),
                    );
                    c.check(
                        a.leq(lhs, rhs),
                        "T_L1(a) ∧ T_L2(b) ≤ T_{L1→L2}(a→b) ∧ T_{L1∧L2}(a∧b) ∧ T_{L1∨L2}(a∨b)",
                        &[Index("L1", i1), Index("L2", i2), Elem("a", x), Elem("b", y)],
                    );
                }
                let inner = t_operator(l, i1, i2);
                c.check(
                    a.leq(a.t(i2, x), a.t(inner, a.t(i1, x))),
                    "T_L2(a) ≤ T_{T_L1(L2)}(T_L1(a))",
                    &[Index("L1", i1), Index("L2", i2), Elem("a", x)],
                );
            }
        }
    }
    clauses.push(c.verdict);

    let mut c = ClauseScan::new("iii", a, l);
    c.check(a.t(l0, zero) == one, "T_0(0) = 1", &[]);
    c.check(a.t(l1, one) == one, "T_1(1) = 1", &[]);
    for i in 0..k {
        if i != l0 {
            c.check(a.t(i, zero) == zero, "T_L(0) = 0 for L ≠ 0", &[Index("L", i)]);
        }
        if i != l1 {
            c.check(a.t(i, one) == zero, "T_L(1) = 0 for L ≠ 1", &[Index("L", i)]);
        }
    }
    clauses.push(c.verdict);

    let mut c = ClauseScan::new("iv", a, l);
    for x in 0..n {
        let all = (0..k).fold(zero, |acc, i| a.join(acc, a.t(i, x)));
        c.check(all == one, "⋁_L T_L(a) = 1", &[Elem("a", x)]);
        for i1 in 0..k {
            for i2 in 0..k {
                if literal_iv || i1 == i2 {
                    c.check(
                        a.join(a.t(i1, x), neg(a.t(i2, x))) == one,
                        "T_L1(a) ∨ (T_L2(a) → 0) = 1",
                        &[Elem("a", x), Index("L1", i1), Index("L2", i2)],
                    );
                }
                if i1 != i2 {
                    c.check(
                        a.meet(a.t(i1, x), a.t(i2, x)) == zero,
                        "T_L1(a) ∧ T_L2(a) = 0 for L1 ≠ L2",
                        &[Elem("a", x), Index("L1", i1), Index("L2", i2)],
                    );
                }
            }
        }
    }
    clauses.push(c.verdict);

    let mut c = ClauseScan::new("v", a, l);
    for x in 0..n {
        for i in 0..k {
            let tx = a.t(i, x);
            c.check(a.t(l1, tx) == tx, "T_1(T_L(a)) = T_L(a)", &[Index("L", i), Elem("a", x)]);
            c.check(a.t(l0, tx) == neg(tx), "T_0(T_L(a)) = T_L(a) → 0", &[Index("L", i), Elem("a", x)]);
            for i2 in 0..k {
                if i2 != l0 && i2 != l1 {
                    c.check(
                        a.t(i2, tx) == zero,
                        "T_L2(T_L1(a)) = 0 for L2 ≠ 0, 1",
                        &[Index("L1", i), Index("L2", i2), Elem("a", x)],
                    );
                }
            }
        }
    }
    clauses.push(c.verdict);

    let mut c = ClauseScan::new("vi", a, l);
    for x in 0..n {
        c.check(a.leq(a.t(l1, x), x), "T_1(a) ≤ a", &[Elem("a", x)]);
        for y in 0..n {
            c.check(
                a.t(l1, a.meet(x, y)) == a.meet(a.t(l1, x), a.t(l1, y)),
                "T_1(a ∧ b) = T_1(a) ∧ T_1(b)",
                &[Elem("a", x), Elem("b", y)],
            );
        }
    }
    clauses.push(c.verdict);

    let mut c = ClauseScan::new("vii", a, l);
    for x in 0..n {
        for y in 0..n {
            let lhs = (0..k).fold(one, |acc, i| a.meet(acc, iff(a.t(i, x), a.t(i, y))));
            c.check(a.leq(lhs, iff(x, y)), "⋀_L (T_L(a) ↔ T_L(b)) ≤ (a ↔ b)", &[Elem("a", x), Elem("b", y)]);
        }
    }
    clauses.push(c.verdict);

    Ok(AxiomReport { algebra: a.name().to_string(), literal_iv, clauses })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(l: FiniteLattice) -> Arc<FiniteLattice> {
        Arc::new(l)
    }

    #[test]
    fn t_operator_examples() {
        let c3 = FiniteLattice::chain(3);
        assert_eq!(t_operator(&c3, 2, 2), 2);
        assert_eq!(t_operator(&c3, 0, 2), 0);
        assert_eq!(t_operator(&c3, 1, 2), 0);
        assert_eq!(t_operator(&c3, 1, 1), 2);
    }

    #[test]
    fn bdl_constant_map_fails_at_zero() {
        let c2 = Algebra::from_lattice(arc(FiniteLattice::chain(2)), Signature::Bdl);
        let w = is_homomorphism(&[1, 1], &c2, &c2, Signature::Bdl).unwrap().unwrap();
        assert_eq!(w.symbol, "0");
    }

    #[test]
    fn projection_b2_to_two_chain() {
        let b2 = Algebra::from_lattice(arc(FiniteLattice::boolean2()), Signature::Bdl);
        let c2 = Algebra::from_lattice(arc(FiniteLattice::chain(2)), Signature::Bdl);
        // 0↦0, a↦1, b↦0, 1↦1
        assert_eq!(is_homomorphism(&[0, 1, 0, 1], &b2, &c2, Signature::Bdl).unwrap(), None);
        let homs = enumerate_homs(&b2, &c2).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn carrier_mismatch_is_an_error() {
        let c2 = Algebra::from_lattice(arc(FiniteLattice::chain(2)), Signature::Bdl);
        assert!(matches!(is_homomorphism(&[0], &c2, &c2, Signature::Bdl), Err(AlgebraError::CarrierMismatch { .. })));
    }

    #[test]
    fn lvl_three_chain_has_only_identity() {
        let a = make_lvl(arc(FiniteLattice::chain(3)));
        let homs = enumerate_homs(&a, &a).unwrap();
        assert_eq!(homs, vec![Homomorphism::identity(3)]);
    }

    #[test]
    fn signature_mismatch_rejected() {
        let bdl = Algebra::from_lattice(arc(FiniteLattice::chain(2)), Signature::Bdl);
        let lvl = make_lvl(arc(FiniteLattice::chain(2)));
        assert!(matches!(enumerate_homs(&lvl, &bdl), Err(AlgebraError::SignatureMismatch { .. })));
        assert!(matches!(check_lvl_axioms(&bdl, false), Err(AlgebraError::SignatureMismatch { .. })));
    }

    #[test]
    fn literal_iv_fails_on_three_chain() {
        let a = make_lvl(arc(FiniteLattice::chain(3)));
        let amended = check_lvl_axioms(&a, false).unwrap();
        assert!(amended.pass(), "{amended:?}");
        let literal = check_lvl_axioms(&a, true).unwrap();
        let iv = literal.clause("iv");
        assert!(!iv.pass);
        assert!(iv
            .witnesses
            .iter()
            .any(|w| { w.binding("a") == Some("m") && w.binding("L1") == Some("0") && w.binding("L2") == Some("m") }));
    }

    #[test]
    fn redefined_t1_breaks_clause_v() {
        let a = make_lvl(arc(FiniteLattice::chain(3)));
        let mut spec = a.table_spec();
        spec.t.as_mut().unwrap()[2] = vec![0, 1, 2];
        let bad = Algebra::from_tables(spec).unwrap();
        let report = check_lvl_axioms(&bad, false).unwrap();
        let v = report.clause("v");
        assert!(!v.pass);
        assert!(v.witnesses.iter().any(|w| {
            w.law.starts_with("T_L2(T_L1(a)) = 0")
                && w.binding("L1") == Some("1")
                && w.binding("L2") == Some("m")
                && w.binding("a") == Some("m")
        }));
    }

    #[test]
    fn from_tables_rejects_degenerate_and_bad_tables() {
        let c2 = Algebra::from_lattice(arc(FiniteLattice::chain(2)), Signature::Heyting);
        let mut spec = c2.table_spec();
        spec.carrier.truncate(1);
        assert!(matches!(Algebra::from_tables(spec), Err(AlgebraError::Degenerate(1))));
        let mut spec = c2.table_spec();
        spec.imp.as_mut().unwrap()[1][0] = 1;
        assert!(matches!(Algebra::from_tables(spec), Err(AlgebraError::NotResiduated { .. })));
        let mut spec = c2.table_spec();
        spec.meet[0][1] = 7;
        assert!(matches!(Algebra::from_tables(spec), Err(AlgebraError::TableValue { .. })));
    }

    #[test]
    fn lattice_power_is_pointwise() {
        let l = arc(FiniteLattice::chain(2));
        let p = Algebra::lattice_power(l, 2, Signature::Lvl).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.names(), ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(p.name_of(p.imp(2, 0)), "(0,1)");
        assert!(check_lvl_axioms(&p, false).unwrap().pass());
    }
}
