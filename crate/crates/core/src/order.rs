//! Finite posets, bounded distributive lattices, Heyting implication,
//! subalgebras, and prime filter / prime ideal machinery.
//!
//! Every set-valued output is a [`BitSet`] over the declaration order of the
//! carrier, sorted by the canonical set order (size, then lexicographic).

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::t_operator;
use crate::bitset::BitSet;

/// A subset of a lattice carrier (filters, ideals, subalgebras).
pub type ElementSet = BitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("not a poset: `{a}` <= `{b}` and `{b}` <= `{a}` with `{a}` != `{b}`")]
    NotAPoset { a: String, b: String },
    #[error("missing meet: `{a}` and `{b}` have no greatest lower bound")]
    MissingMeet { a: String, b: String },
    #[error("missing join: `{a}` and `{b}` have no least upper bound")]
    MissingJoin { a: String, b: String },
    #[error("wrong bottom: declared `{declared}` is not below `{witness}`")]
    WrongBottom { declared: String, witness: String },
    #[error("wrong top: declared `{declared}` is not above `{witness}`")]
    WrongTop { declared: String, witness: String },
    #[error("not distributive: {x} ∧ ({y} ∨ {z}) != ({x} ∧ {y}) ∨ ({x} ∧ {z})")]
    NotDistributive { x: String, y: String, z: String },
    #[error("degenerate structure: a lattice needs at least two elements (0 != 1)")]
    Degenerate,
    #[error("elements must differ, got `{0}` twice")]
    EqualElements(String),
    #[error("no prime ideal separates `{x}` and `{y}`")]
    NoSeparatingIdeal { x: String, y: String },
}

/// A finite partial order on named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// `up[x]` is the principal up-set of `x`.
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl Poset {
    /// Builds a poset from generating pairs `(a, b)` meaning `a <= b`.
    /// The reflexive-transitive closure is taken before the antisymmetry check.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = names.len();
        check_unique(&names)?;
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::singleton(n, i)).collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if a != b && up[b].contains(a) {
                    return Err(OrderError::NotAPoset { a: names[a].clone(), b: names[b].clone() });
                }
            }
        }
        Ok(Self::from_up_rows(names, up))
    }

    /// Like [`Poset::from_pairs`] but with element names.
    pub fn from_named_pairs(names: Vec<String>, pairs: &[(String, String)]) -> Result<Self, OrderError> {
        let index = name_index(&names)?;
        let lookup = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| OrderError::UnknownElement(s.clone()));
        let pairs = pairs.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>, OrderError>>()?;
        Self::from_pairs(names, &pairs)
    }

    /// Trusted constructor from already reflexive, transitive, antisymmetric rows.
    pub(crate) fn from_up_rows(names: Vec<String>, up: Vec<BitSet>) -> Self {
        let n = names.len();
        let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::empty(n)).collect();
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        Poset { names, up, down }
    }

    pub fn from_leq<F: Fn(usize, usize) -> bool>(names: Vec<String>, leq: F) -> Self {
        let n = names.len();
        let up = (0..n).map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq(a, b)))).collect();
        Self::from_up_rows(names, up)
    }

    pub fn antichain(names: Vec<String>) -> Self {
        Self::from_leq(names, |a, b| a == b)
    }

    pub fn chain(names: Vec<String>) -> Self {
        Self::from_leq(names, |a, b| a <= b)
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

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, OrderError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| OrderError::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `R(x) = {y : x R y}`.
    pub fn up(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn up_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.len());
        for x in set.iter() {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// `R^{-1}(X0) = {y : y R x for some x in X0}`.
    pub fn down_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.len());
        for x in set.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn is_upset(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.up[x].is_subset(set))
    }

    pub fn is_downset(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.down[x].is_subset(set))
    }

    /// Generating pairs of the order, excluding the diagonal.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.up[a].iter().filter(move |&b| b != a).map(move |b| (a, b))).collect()
    }

    /// Cover pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(a, b)| {
                let between = self.up[a].intersection(&self.down[b]);
                between.count() == 2
            })
            .collect()
    }
}

/// `R(x)` for the element named `x`.
pub fn upset_of(poset: &Poset, x: &str) -> Result<ElementSet, OrderError> {
    Ok(poset.up(poset.index_of(x)?).clone())
}

/// `R^{-1}(X0)`, the down-closure of the named elements.
pub fn downset_preimage(poset: &Poset, x0: &[&str]) -> Result<ElementSet, OrderError> {
    let mut set = BitSet::empty(poset.len());
    for name in x0 {
        set.insert(poset.index_of(name)?);
    }
    Ok(poset.down_closure(&set))
}

/// A finite bounded distributive lattice with precomputed meet/join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    name: String,
    order: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// Builds and validates a lattice from declared elements and generating pairs.
pub fn build_lattice(
    name: &str,
    elements: &[String],
    leq_pairs: &[(String, String)],
    bottom: &str,
    top: &str,
) -> Result<FiniteLattice, OrderError> {
    let order = Poset::from_named_pairs(elements.to_vec(), leq_pairs)?;
    let bottom = order.index_of(bottom)?;
    let top = order.index_of(top)?;
    FiniteLattice::from_poset(name, order, bottom, top)
}

impl FiniteLattice {
    pub fn from_poset(name: &str, order: Poset, bottom: usize, top: usize) -> Result<Self, OrderError> {
        let n = order.len();
        if n < 2 {
            return Err(OrderError::Degenerate);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = order.down(a).intersection(order.down(b));
                let glb = lower.iter().find(|&g| lower.is_subset(order.down(g)));
                let upper = order.up(a).intersection(order.up(b));
                let lub = upper.iter().find(|&g| upper.is_subset(order.up(g)));
                let (Some(glb), Some(lub)) = (glb, lub) else {
                    let (a, b) = (order.name(a).to_string(), order.name(b).to_string());
                    return Err(if glb.is_none() {
                        OrderError::MissingMeet { a, b }
                    } else {
                        OrderError::MissingJoin { a, b }
                    });
                };
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }
        for x in 0..n {
            if !order.leq(bottom, x) {
                return Err(OrderError::WrongBottom {
                    declared: order.name(bottom).to_string(),
                    witness: order.name(x).to_string(),
                });
            }
            if !order.leq(x, top) {
                return Err(OrderError::WrongTop {
                    declared: order.name(top).to_string(),
                    witness: order.name(x).to_string(),
                });
            }
        }
        let lattice = FiniteLattice { name: name.to_string(), order, meet, join, bottom, top };
        if let Some((x, y, z)) = lattice.distributivity_witness() {
            return Err(OrderError::NotDistributive {
                x: lattice.name_of(x).to_string(),
                y: lattice.name_of(y).to_string(),
                z: lattice.name_of(z).to_string(),
            });
        }
        Ok(lattice)
    }

    /// The `n`-element chain. Names: `0,1` for n = 2, `0,m,1` for n = 3,
    /// `0,a,b,...,1` beyond.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 2, "a chain lattice needs at least two elements");
        let names: Vec<String> = match n {
            2 => vec!["0".into(), "1".into()],
            3 => vec!["0".into(), "m".into(), "1".into()],
            _ => std::iter::once("0".to_string())
                .chain((0..n - 2).map(|i| ((b'a' + i as u8) as char).to_string()))
                .chain(std::iter::once("1".to_string()))
                .collect(),
        };
        Self::from_poset(&format!("chain{n}"), Poset::chain(names), 0, n - 1).expect("chains are distributive lattices")
    }

    /// The four-element Boolean lattice `{0, a, b, 1}`.
    pub fn boolean2() -> Self {
        let names = ["0", "a", "b", "1"].map(String::from).to_vec();
        let order = Poset::from_pairs(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        Self::from_poset("b2", order, 0, 3).expect("B2 is distributive")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn names(&self) -> &[String] {
        self.order.names()
    }

    pub fn name_of(&self, x: usize) -> &str {
        self.order.name(x)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, OrderError> {
        self.order.index_of(name)
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `a → b = ⋁{ℓ : a ∧ ℓ ≤ b}`.
    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.join_all((0..self.len()).filter(|&l| self.leq(self.meet(a, l), b)))
    }

    /// `x ↔ y = (x → y) ∧ (y → x)`.
    pub fn iff(&self, a: usize, b: usize) -> usize {
        self.meet(self.implies(a, b), self.implies(b, a))
    }

    fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn set_of(&self, names: &[&str]) -> Result<ElementSet, OrderError> {
        let mut s = BitSet::empty(self.len());
        for name in names {
            s.insert(self.index_of(name)?);
        }
        Ok(s)
    }
}

/// Heyting implication on named elements.
pub fn heyting_implies(l: &FiniteLattice, a: &str, b: &str) -> Result<usize, OrderError> {
    Ok(l.implies(l.index_of(a)?, l.index_of(b)?))
}

/// Operations a subalgebra of `L` must be closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubalgebraSignature {
    BoundedLattice,
    Heyting,
    /// Heyting plus the characteristic `T_ℓ` family of `L`.
    Lvl,
}

/// Carriers up to this size are scanned over the full power set.
pub const POWER_SET_SCAN_LIMIT: usize = 12;

fn is_closed(l: &FiniteLattice, set: &BitSet, sig: SubalgebraSignature) -> bool {
    if !set.contains(l.bottom()) || !set.contains(l.top()) {
        return false;
    }
    let with_imp = sig != SubalgebraSignature::BoundedLattice;
    for a in set.iter() {
        for b in set.iter() {
            if !set.contains(l.meet(a, b)) || !set.contains(l.join(a, b)) {
                return false;
            }
            if with_imp && !set.contains(l.implies(a, b)) {
                return false;
            }
        }
        if sig == SubalgebraSignature::Lvl && (0..l.len()).any(|idx| !set.contains(t_operator(l, idx, a))) {
            return false;
        }
    }
    true
}

/// Smallest subalgebra containing `gens` (and the bounds).
pub fn subalgebra_closure(l: &FiniteLattice, gens: &BitSet, sig: SubalgebraSignature) -> BitSet {
    let mut set = gens.clone();
    set.insert(l.bottom());
    set.insert(l.top());
    let mut work: Vec<usize> = set.iter().collect();
    let push = |x: usize, set: &mut BitSet, work: &mut Vec<usize>| {
        if set.insert(x) {
            work.push(x);
        }
    };
    while let Some(a) = work.pop() {
        let members: Vec<usize> = set.iter().collect();
        for b in members {
            push(l.meet(a, b), &mut set, &mut work);
            push(l.join(a, b), &mut set, &mut work);
            if sig != SubalgebraSignature::BoundedLattice {
                push(l.implies(a, b), &mut set, &mut work);
                push(l.implies(b, a), &mut set, &mut work);
            }
        }
        if sig == SubalgebraSignature::Lvl {
            for idx in 0..l.len() {
                push(t_operator(l, idx, a), &mut set, &mut work);
            }
        }
    }
    set
}

/// All subalgebras of `L` for the signature, in canonical set order.
pub fn enumerate_subalgebras(l: &FiniteLattice, sig: SubalgebraSignature) -> Vec<ElementSet> {
    if l.len() <= POWER_SET_SCAN_LIMIT {
        enumerate_subalgebras_by_scan(l, sig)
    } else {
        enumerate_subalgebras_by_closure(l, sig)
    }
}

pub fn enumerate_subalgebras_by_scan(l: &FiniteLattice, sig: SubalgebraSignature) -> Vec<ElementSet> {
    let n = l.len();
    let inner: Vec<usize> = (0..n).filter(|&x| x != l.bottom() && x != l.top()).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << inner.len()) {
        let mut set = BitSet::from_indices(n, [l.bottom(), l.top()]);
        for (bit, &x) in inner.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                set.insert(x);
            }
        }
        if is_closed(l, &set, sig) {
            out.push(set);
        }
    }
    out.sort();
    out
}

/// Closure-of-generators search: every subalgebra is reached from the least
/// one by adjoining one of its elements at a time.
pub fn enumerate_subalgebras_by_closure(l: &FiniteLattice, sig: SubalgebraSignature) -> Vec<ElementSet> {
    let n = l.len();
    let least = subalgebra_closure(l, &BitSet::empty(n), sig);
    let mut seen = BTreeSet::from([least.clone()]);
    let mut frontier = vec![least];
    while let Some(s) = frontier.pop() {
        for x in s.complement().iter() {
            let mut gens = s.clone();
            gens.insert(x);
            let next = subalgebra_closure(l, &gens, sig);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// Proper, nonempty, meet-closed up-set with the prime property.
pub fn is_prime_filter(l: &FiniteLattice, set: &BitSet) -> bool {
    if set.is_empty() || set.is_full() || !l.order().is_upset(set) {
        return false;
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            let both = set.contains(a) && set.contains(b);
            if both && !set.contains(l.meet(a, b)) {
                return false;
            }
            if set.contains(l.join(a, b)) && !set.contains(a) && !set.contains(b) {
                return false;
            }
        }
    }
    true
}

/// Order dual of [`is_prime_filter`].
pub fn is_prime_ideal(l: &FiniteLattice, set: &BitSet) -> bool {
    if set.is_empty() || set.is_full() || !l.order().is_downset(set) {
        return false;
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            let both = set.contains(a) && set.contains(b);
            if both && !set.contains(l.join(a, b)) {
                return false;
            }
            if set.contains(l.meet(a, b)) && !set.contains(a) && !set.contains(b) {
                return false;
            }
        }
    }
    true
}

/// All prime filters, canonical set order. Filters of a finite lattice are
/// principal, so the candidates are the principal up-sets.
pub fn prime_filters(l: &FiniteLattice) -> Vec<ElementSet> {
    let mut out: Vec<BitSet> =
        (0..l.len()).map(|p| l.order().up(p).clone()).filter(|s| is_prime_filter(l, s)).collect();
    out.sort();
    out.dedup();
    out
}

/// All prime ideals, listed as the complements of [`prime_filters`] in the
/// same order.
pub fn prime_ideals(l: &FiniteLattice) -> Vec<ElementSet> {
    prime_filters(l).iter().map(BitSet::complement).collect()
}

/// Which of the two inputs the separating ideal contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    ContainsX,
    ContainsY,
}

/// First prime ideal (in [`prime_ideals`] order) containing exactly one of
/// `x`, `y`.
pub fn separating_prime_ideal(l: &FiniteLattice, x: usize, y: usize) -> Result<(ElementSet, Side), OrderError> {
    if x == y {
        return Err(OrderError::EqualElements(l.name_of(x).to_string()));
    }
    prime_ideals(l)
        .into_iter()
        .find_map(|p| match (p.contains(x), p.contains(y)) {
            (true, false) => Some((p, Side::ContainsX)),
            (false, true) => Some((p, Side::ContainsY)),
            _ => None,
        })
        // Unreachable for distributive lattices.
        .ok_or_else(|| OrderError::NoSeparatingIdeal { x: l.name_of(x).to_string(), y: l.name_of(y).to_string() })
}

fn check_unique(names: &[String]) -> Result<(), OrderError> {
    name_index(names).map(|_| ())
}

fn name_index(names: &[String]) -> Result<HashMap<&str, usize>, OrderError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(OrderError::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(names: &[&str]) -> Vec<String> {
        names.iter().map(|n| n.to_string()).collect()
    }

    fn pairs(p: &[(&str, &str)]) -> Vec<(String, String)> {
        p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn two_chain_meet_join_are_min_max() {
        let l = build_lattice("c2", &s(&["0", "1"]), &pairs(&[("0", "1")]), "0", "1").unwrap();
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
    }

    #[test]
    fn three_chain_builds() {
        let l = build_lattice("c3", &s(&["0", "m", "1"]), &pairs(&[("0", "m"), ("m", "1")]), "0", "1").unwrap();
        assert!(l.leq(0, 2));
        assert_eq!(l.join(0, 1), 1);
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let err = build_lattice("bad", &s(&["0", "1"]), &pairs(&[("0", "1"), ("1", "0")]), "0", "1").unwrap_err();
        assert!(matches!(err, OrderError::NotAPoset { .. }));
    }

    #[test]
    fn missing_meet_and_wrong_bounds() {
        // Two incomparable minimal elements below a top.
        let err = build_lattice("v", &s(&["a", "b", "1"]), &pairs(&[("a", "1"), ("b", "1")]), "a", "1").unwrap_err();
        assert_eq!(err, OrderError::MissingMeet { a: "a".into(), b: "b".into() });
        let err = build_lattice("c", &s(&["0", "1"]), &pairs(&[("0", "1")]), "1", "1").unwrap_err();
        assert!(matches!(err, OrderError::WrongBottom { .. }));
    }

    #[test]
    fn unknown_and_duplicate_elements() {
        let err = build_lattice("c", &s(&["0", "1"]), &pairs(&[("0", "x")]), "0", "1").unwrap_err();
        assert_eq!(err, OrderError::UnknownElement("x".into()));
        let err = build_lattice("c", &s(&["0", "0"]), &[], "0", "0").unwrap_err();
        assert_eq!(err, OrderError::DuplicateElement("0".into()));
    }

    #[test]
    fn single_element_is_degenerate() {
        let err = build_lattice("one", &s(&["0"]), &[], "0", "0").unwrap_err();
        assert_eq!(err, OrderError::Degenerate);
    }

    #[test]
    fn heyting_examples() {
        let c3 = FiniteLattice::chain(3);
        assert_eq!(heyting_implies(&c3, "1", "m").unwrap(), 1);
        let b2 = FiniteLattice::boolean2();
        assert_eq!(b2.name_of(heyting_implies(&b2, "a", "b").unwrap()), "b");
        for x in 0..b2.len() {
            assert_eq!(b2.implies(x, x), b2.top());
        }
        assert!(heyting_implies(&b2, "a", "z").is_err());
    }

    #[test]
    fn subalgebra_examples() {
        let c2 = FiniteLattice::chain(2);
        assert_eq!(enumerate_subalgebras(&c2, SubalgebraSignature::Heyting), vec![BitSet::full(2)]);
        let c3 = FiniteLattice::chain(3);
        let subs = enumerate_subalgebras(&c3, SubalgebraSignature::Lvl);
        let shown: Vec<String> = subs.iter().map(|x| x.display_with(c3.names())).collect();
        assert_eq!(shown, ["{0,1}", "{0,m,1}"]);
        let b2 = FiniteLattice::boolean2();
        let subs = enumerate_subalgebras(&b2, SubalgebraSignature::BoundedLattice);
        let shown: Vec<String> = subs.iter().map(|x| x.display_with(b2.names())).collect();
        assert_eq!(shown, ["{0,1}", "{0,a,1}", "{0,b,1}", "{0,a,b,1}"]);
        let subs = enumerate_subalgebras(&b2, SubalgebraSignature::Heyting);
        assert_eq!(subs.len(), 2);
    }

    #[test]
    fn prime_filter_examples() {
        let show =
            |l: &FiniteLattice| -> Vec<String> { prime_filters(l).iter().map(|x| x.display_with(l.names())).collect() };
        assert_eq!(show(&FiniteLattice::chain(2)), ["{1}"]);
        assert_eq!(show(&FiniteLattice::chain(3)), ["{1}", "{m,1}"]);
        assert_eq!(show(&FiniteLattice::boolean2()), ["{a,1}", "{b,1}"]);
    }

    #[test]
    fn separation_examples() {
        let c3 = FiniteLattice::chain(3);
        let (p, side) = separating_prime_ideal(&c3, 0, 1).unwrap();
        assert_eq!(p.display_with(c3.names()), "{0}");
        assert_eq!(side, Side::ContainsX);
        let b2 = FiniteLattice::boolean2();
        let (p, side) = separating_prime_ideal(&b2, 1, 2).unwrap();
        assert_eq!(p.display_with(b2.names()), "{0,b}");
        assert_eq!(side, Side::ContainsY);
        let c2 = FiniteLattice::chain(2);
        assert_eq!(separating_prime_ideal(&c2, 0, 0).unwrap_err(), OrderError::EqualElements("0".into()));
    }

    #[test]
    fn upset_and_downset_examples() {
        let c3 = FiniteLattice::chain(3);
        assert_eq!(upset_of(c3.order(), "m").unwrap().display_with(c3.names()), "{m,1}");
        let w = Poset::chain(s(&["w0", "w1"]));
        assert_eq!(downset_preimage(&w, &["w1"]).unwrap().display_with(w.names()), "{w0,w1}");
        let anti = Poset::antichain(s(&["p", "q"]));
        assert_eq!(downset_preimage(&anti, &["p"]).unwrap().display_with(anti.names()), "{p}");
        assert!(upset_of(&anti, "r").is_err());
    }
}
