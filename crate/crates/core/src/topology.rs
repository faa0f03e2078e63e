//! Finite topologies, bitopological and ordered topological spaces, and the
//! validators for pairwise Boolean spaces, Priestley spaces and Esakia spaces.
//!
//! A finite topology is determined by the smallest open neighbourhood of each
//! point, so that is what [`Topology`] stores. Open sets are exactly the sets
//! containing the neighbourhood of each of their points.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::order::{enumerate_subalgebras, ElementSet, FiniteLattice, Poset, SubalgebraSignature};
use crate::verdict::{Checks, Verdict};
use crate::witness;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("basis set {index} contains point {point}, outside a carrier of {size}")]
    OffCarrier { index: usize, point: usize, size: usize },
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("carrier mismatch: expected {expected} points, found {found}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("alpha is indexed by {found} subalgebras, the truth lattice has {expected}")]
    AlphaIndexMismatch { expected: usize, found: usize },
    #[error("alpha key {0} is not a subalgebra of the truth lattice")]
    UnknownSubalgebra(String),
    #[error("not a Priestley space: {x} ≰ {y} but no clopen up-set separates them")]
    PspaInvalid { x: String, y: String },
    #[error("invalid neighbourhood system at point {0}")]
    BadNeighbourhoods(usize),
    #[error("space has no points")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Topology {
    nbhd: Vec<BitSet>,
}

impl Topology {
    /// The smallest topology on `0..n` containing every set in `subbasis`.
    pub fn generate(n: usize, subbasis: &[BitSet]) -> Result<Self, TopologyError> {
        for (index, set) in subbasis.iter().enumerate() {
            if set.universe() != n {
                let point = set.iter().find(|&p| p >= n).unwrap_or(set.universe());
                return Err(TopologyError::OffCarrier { index, point, size: n });
            }
        }
        let nbhd = (0..n)
            .map(|p| {
                let mut u = BitSet::full(n);
                for s in subbasis.iter().filter(|s| s.contains(p)) {
                    u.intersect_with(s);
                }
                u
            })
            .collect();
        Ok(Topology { nbhd })
    }

    /// Validates that `nbhd[p]` contains `p` and is open.
    pub fn from_neighbourhoods(nbhd: Vec<BitSet>) -> Result<Self, TopologyError> {
        let n = nbhd.len();
        for (p, u) in nbhd.iter().enumerate() {
            if u.universe() != n || !u.contains(p) || u.iter().any(|q| !nbhd[q].is_subset(u)) {
                return Err(TopologyError::BadNeighbourhoods(p));
            }
        }
        Ok(Topology { nbhd })
    }

    pub fn discrete(n: usize) -> Self {
        Topology { nbhd: (0..n).map(|p| BitSet::singleton(n, p)).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        Topology { nbhd: vec![BitSet::full(n); n] }
    }

    pub fn len(&self) -> usize {
        self.nbhd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nbhd.is_empty()
    }

    /// Smallest open set containing `p`.
    pub fn nbhd(&self, p: usize) -> &BitSet {
        &self.nbhd[p]
    }

    pub fn is_discrete(&self) -> bool {
        self.nbhd.iter().all(|u| u.count() == 1)
    }

    pub fn is_open(&self, set: &BitSet) -> bool {
        set.iter().all(|p| self.nbhd[p].is_subset(set))
    }

    pub fn is_closed(&self, set: &BitSet) -> bool {
        self.is_open(&set.complement())
    }

    pub fn is_clopen(&self, set: &BitSet) -> bool {
        self.is_open(set) && self.is_closed(set)
    }

    /// Smallest open superset.
    pub fn open_hull(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.len());
        for p in set.iter() {
            out.union_with(&self.nbhd[p]);
        }
        out
    }

    /// Smallest closed superset.
    pub fn closure(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&q| !self.nbhd[q].is_disjoint(set)))
    }

    /// Smallest clopen superset.
    pub fn clopen_hull(&self, set: &BitSet) -> BitSet {
        fixpoint(set.clone(), |s| self.closure(&self.open_hull(s)))
    }

    /// The atoms of the Boolean algebra of clopen sets, in canonical order.
    pub fn clopen_atoms(&self) -> Vec<BitSet> {
        let mut seen = BitSet::empty(self.len());
        let mut atoms = Vec::new();
        for p in 0..self.len() {
            if !seen.contains(p) {
                let atom = self.clopen_hull(&BitSet::singleton(self.len(), p));
                seen.union_with(&atom);
                atoms.push(atom);
            }
        }
        atoms.sort();
        atoms
    }

    /// Every open set, in canonical order. Exponential in the worst case.
    pub fn opens(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut family: BTreeSet<BitSet> = BTreeSet::new();
        family.insert(BitSet::empty(n));
        let mut distinct: Vec<&BitSet> = self.nbhd.iter().collect();
        distinct.sort();
        distinct.dedup();
        for u in distinct {
            let grown: Vec<BitSet> = family.iter().map(|s| s.union(u)).collect();
            family.extend(grown);
        }
        family.insert(BitSet::full(n));
        family.into_iter().collect()
    }

    /// Distinct neighbourhoods in canonical order; a basis of the topology.
    pub fn basis(&self) -> Vec<BitSet> {
        let mut b = self.nbhd.clone();
        b.sort();
        b.dedup();
        b
    }
}

fn fixpoint(mut s: BitSet, step: impl Fn(&BitSet) -> BitSet) -> BitSet {
    loop {
        let next = step(&s);
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Is `f` continuous from `src` to `dst`? Returns a point where it fails.
pub fn continuity_witness(f: &[usize], src: &Topology, dst: &Topology) -> Option<usize> {
    (0..src.len()).find(|&x| src.nbhd(x).iter().any(|y| !dst.nbhd(f[x]).contains(f[y])))
}

fn names_of(set: &BitSet, names: &[String]) -> String {
    set.display_with(names)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitopSpace {
    pub names: Vec<String>,
    pub topo1: Topology,
    pub topo2: Topology,
}

impl BitopSpace {
    pub fn new(names: Vec<String>, topo1: Topology, topo2: Topology) -> Result<Self, TopologyError> {
        for t in [&topo1, &topo2] {
            if t.len() != names.len() {
                return Err(TopologyError::CarrierMismatch { expected: names.len(), found: t.len() });
            }
        }
        Ok(BitopSpace { names, topo1, topo2 })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, TopologyError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| TopologyError::UnknownPoint(name.to_string()))
    }
}

/// Assigns a pairwise closed subset of points to each subalgebra of the
/// truth lattice (in the lvl signature).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaAssignment {
    pub truth: Arc<FiniteLattice>,
    pub subalgebras: Vec<ElementSet>,
    pub images: Vec<BitSet>,
}

impl AlphaAssignment {
    /// α(L) = all points, every proper subalgebra gets ∅.
    pub fn trivial(truth: Arc<FiniteLattice>, points: usize) -> Self {
        let subalgebras = enumerate_subalgebras(&truth, SubalgebraSignature::Lvl);
        let full = BitSet::full(truth.len());
        let images =
            subalgebras.iter().map(|s| if *s == full { BitSet::full(points) } else { BitSet::empty(points) }).collect();
        AlphaAssignment { truth, subalgebras, images }
    }

    pub fn subalgebra_name(&self, i: usize) -> String {
        self.subalgebras[i].display_with(self.truth.names())
    }

    pub fn index_of(&self, sub: &ElementSet) -> Option<usize> {
        self.subalgebras.iter().position(|s| s == sub)
    }

    pub fn image_of(&self, sub: &ElementSet) -> Option<&BitSet> {
        self.index_of(sub).map(|i| &self.images[i])
    }
}

/// A topology together with a partial order on the same points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSpace {
    pub topo: Topology,
    pub order: Poset,
}

impl OrderedSpace {
    pub fn new(topo: Topology, order: Poset) -> Result<Self, TopologyError> {
        if topo.len() != order.len() {
            return Err(TopologyError::CarrierMismatch { expected: order.len(), found: topo.len() });
        }
        Ok(OrderedSpace { topo, order })
    }

    pub fn discrete(order: Poset) -> Self {
        OrderedSpace { topo: Topology::discrete(order.len()), order }
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

    /// Smallest clopen up-set containing `set`.
    pub fn clopen_upset_hull(&self, set: &BitSet) -> BitSet {
        fixpoint(set.clone(), |s| self.topo.closure(&self.topo.open_hull(&self.order.up_closure(s))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HausdorffReport {
    /// Every unordered pair is separated in at least one orientation.
    pub unordered: Verdict,
    /// Every ordered pair `(s1, s2)` has `s1 ∈ O1 ∈ τ1`, `s2 ∈ O2 ∈ τ2` disjoint.
    pub ordered: Verdict,
}

pub fn is_pairwise_hausdorff(s: &BitopSpace) -> HausdorffReport {
    let n = s.len();
    let sep = |a: usize, b: usize| s.topo1.nbhd(a).is_disjoint(s.topo2.nbhd(b));
    let pair = |a: usize, b: usize| witness!("s1" => s.names[a], "s2" => s.names[b]);
    let mut ordered = None;
    let mut unordered = None;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            if ordered.is_none() && !sep(a, b) {
                ordered = Some(pair(a, b));
            }
            if a < b && unordered.is_none() && !sep(a, b) && !sep(b, a) {
                unordered = Some(pair(a, b));
            }
        }
    }
    HausdorffReport { unordered: Verdict::from_witness(unordered), ordered: Verdict::from_witness(ordered) }
}

/// Always passes on a finite carrier. The note records the cross-check that
/// every closed set of one topology is compact in the other.
pub fn is_pairwise_compact(s: &BitopSpace) -> Verdict {
    // A finite set is compact in every topology, so both inclusions of
    // closed families into compact families hold.
    let _ = s;
    Verdict::pass().with_note("finite carrier: every subset is compact in both topologies")
}

/// Smallest set that is open in `open` and closed in `closed` containing `p`.
fn smallest_open_closed(open: &Topology, closed: &Topology, p: usize) -> BitSet {
    fixpoint(BitSet::singleton(open.len(), p), |s| closed.closure(&open.open_hull(s)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroDimReport {
    pub first: Verdict,
    pub second: Verdict,
}

impl ZeroDimReport {
    pub fn pass(&self) -> bool {
        self.first.pass && self.second.pass
    }
}

/// `τ1 ∩ ϱ2` must be a basis of τ1 and `τ2 ∩ ϱ1` a basis of τ2. Witness:
/// a neighbourhood that is not a union of admissible sets.
pub fn is_pairwise_zero_dimensional(s: &BitopSpace) -> ZeroDimReport {
    let check = |open: &Topology, closed: &Topology| {
        let bad = (0..s.len()).find(|&p| !smallest_open_closed(open, closed, p).is_subset(open.nbhd(p)));
        Verdict::from_witness(bad.map(|p| witness!("point" => s.names[p], "open" => names_of(open.nbhd(p), &s.names))))
    };
    ZeroDimReport { first: check(&s.topo1, &s.topo2), second: check(&s.topo2, &s.topo1) }
}

fn check_alpha_index(alpha: &AlphaAssignment, points: usize) -> Result<(), TopologyError> {
    let expected = enumerate_subalgebras(&alpha.truth, SubalgebraSignature::Lvl);
    if alpha.subalgebras.len() != expected.len() || alpha.images.len() != expected.len() {
        return Err(TopologyError::AlphaIndexMismatch {
            expected: expected.len(),
            found: alpha.subalgebras.len().max(alpha.images.len()),
        });
    }
    if let Some(bad) = alpha.subalgebras.iter().find(|s| !expected.contains(s)) {
        return Err(TopologyError::UnknownSubalgebra(bad.display_with(alpha.truth.names())));
    }
    if let Some(img) = alpha.images.iter().find(|i| i.universe() != points) {
        return Err(TopologyError::CarrierMismatch { expected: points, found: img.universe() });
    }
    Ok(())
}

/// Pairwise Boolean space plus the α laws: α(L) is everything,
/// α(L1) = α(L2) ∩ α(L3) whenever L1 = L2 ∩ L3, every α-image pairwise closed.
pub fn verify_pbs_object(s: &BitopSpace, alpha: &AlphaAssignment) -> Result<Checks, TopologyError> {
    check_alpha_index(alpha, s.len())?;
    let mut checks = Checks::new();
    let h = is_pairwise_hausdorff(s);
    checks.insert("pairwise_hausdorff", h.unordered);
    checks.insert_info("pairwise_hausdorff_ordered", h.ordered);
    checks.insert("pairwise_compact", is_pairwise_compact(s));
    let z = is_pairwise_zero_dimensional(s);
    checks.insert("pairwise_zero_dimensional.tau1", z.first);
    checks.insert("pairwise_zero_dimensional.tau2", z.second);

    let full_sub = BitSet::full(alpha.truth.len());
    let top = alpha.index_of(&full_sub).expect("L is always a subalgebra of itself");
    checks.insert(
        "alpha_full",
        Verdict::from_witness(
            (!alpha.images[top].is_full()).then(|| witness!("alpha(L)" => names_of(&alpha.images[top], &s.names))),
        ),
    );

    let k = alpha.subalgebras.len();
    let mut meet_law = None;
    'outer: for i2 in 0..k {
        for i3 in 0..k {
            let inter = alpha.subalgebras[i2].intersection(&alpha.subalgebras[i3]);
            let Some(i1) = alpha.index_of(&inter) else { continue };
            let want = alpha.images[i2].intersection(&alpha.images[i3]);
            if alpha.images[i1] != want {
                meet_law = Some(witness!(
                    "L1" => alpha.subalgebra_name(i1),
                    "L2" => alpha.subalgebra_name(i2),
                    "L3" => alpha.subalgebra_name(i3),
                    "alpha(L1)" => names_of(&alpha.images[i1], &s.names),
                    "alpha(L2) ∩ alpha(L3)" => names_of(&want, &s.names),
                ));
                break 'outer;
            }
        }
    }
    checks.insert("alpha_intersection", Verdict::from_witness(meet_law));

    let unclosed = (0..k).find(|&i| !s.topo1.is_closed(&alpha.images[i]) || !s.topo2.is_closed(&alpha.images[i]));
    checks.insert(
        "alpha_pairwise_closed",
        Verdict::from_witness(unclosed.map(|i| {
            witness!(
                "subalgebra" => alpha.subalgebra_name(i),
                "image" => names_of(&alpha.images[i], &s.names),
            )
        })),
    );
    Ok(checks)
}

/// Priestley separation: `x ≰ y` implies some clopen up-set contains `x` and
/// not `y`. Returns the first unseparated `(x, y)`.
pub fn priestley_witness(x: &OrderedSpace) -> Option<(usize, usize)> {
    let n = x.len();
    for a in 0..n {
        let hull = x.clopen_upset_hull(&BitSet::singleton(n, a));
        for b in 0..n {
            if !x.order.leq(a, b) && hull.contains(b) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn verify_pspa_object(x: &OrderedSpace) -> Checks {
    let mut checks = Checks::new();
    let w = priestley_witness(x).map(|(a, b)| witness!("x" => x.names()[a], "y" => x.names()[b]));
    checks.insert("priestley_separation", Verdict::from_witness(w));
    checks
}

/// Clopen set whose down-closure is not clopen. Checking the clopen atoms is
/// enough since down-closure commutes with unions.
pub fn esakia_witness(x: &OrderedSpace) -> Option<BitSet> {
    x.topo.clopen_atoms().into_iter().find(|c| !x.topo.is_clopen(&x.order.down_closure(c)))
}

/// Errors with [`TopologyError::PspaInvalid`] unless `x` is a Priestley space.
pub fn verify_hspa_object(x: &OrderedSpace) -> Result<Checks, TopologyError> {
    if let Some((a, b)) = priestley_witness(x) {
        return Err(TopologyError::PspaInvalid { x: x.names()[a].clone(), y: x.names()[b].clone() });
    }
    let mut checks = verify_pspa_object(x);
    let w = esakia_witness(x).map(|c| {
        witness!(
            "clopen" => names_of(&c, x.names()),
            "down_closure" => names_of(&x.order.down_closure(&c), x.names()),
        )
    });
    checks.insert("esakia", Verdict::from_witness(w));
    Ok(checks)
}

fn check_map(f: &[usize], src: usize, dst: usize) -> Result<(), TopologyError> {
    if f.len() != src {
        return Err(TopologyError::CarrierMismatch { expected: src, found: f.len() });
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= dst) {
        return Err(TopologyError::CarrierMismatch { expected: dst, found: bad + 1 });
    }
    Ok(())
}

fn continuity_verdict(f: &[usize], src: &Topology, dst: &Topology, names: &[String]) -> Verdict {
    Verdict::from_witness(
        continuity_witness(f, src, dst)
            .map(|x| witness!("point" => names[x], "neighbourhood" => names_of(src.nbhd(x), names))),
    )
}

/// Pairwise continuity and α-preservation: `x ∈ α_S(L')` implies
/// `f(x) ∈ α_T(L')`.
pub fn verify_pbs_morphism(
    f: &[usize],
    src: (&BitopSpace, &AlphaAssignment),
    dst: (&BitopSpace, &AlphaAssignment),
) -> Result<Checks, TopologyError> {
    check_map(f, src.0.len(), dst.0.len())?;
    if src.1.subalgebras != dst.1.subalgebras {
        return Err(TopologyError::AlphaIndexMismatch {
            expected: src.1.subalgebras.len(),
            found: dst.1.subalgebras.len(),
        });
    }
    let mut checks = Checks::new();
    checks.insert("continuous_tau1", continuity_verdict(f, &src.0.topo1, &dst.0.topo1, &src.0.names));
    checks.insert("continuous_tau2", continuity_verdict(f, &src.0.topo2, &dst.0.topo2, &src.0.names));
    let mut bad = None;
    'outer: for (i, img) in src.1.images.iter().enumerate() {
        for x in img.iter() {
            if !dst.1.images[i].contains(f[x]) {
                bad = Some(witness!("subalgebra" => src.1.subalgebra_name(i), "point" => src.0.names[x]));
                break 'outer;
            }
        }
    }
    checks.insert("alpha_preserving", Verdict::from_witness(bad));
    Ok(checks)
}

/// Continuity and order preservation.
pub fn verify_pspa_morphism(f: &[usize], src: &OrderedSpace, dst: &OrderedSpace) -> Result<Checks, TopologyError> {
    check_map(f, src.len(), dst.len())?;
    let mut checks = Checks::new();
    checks.insert("continuous", continuity_verdict(f, &src.topo, &dst.topo, src.names()));
    let bad = src.order.strict_pairs().into_iter().find(|&(a, b)| !dst.order.leq(f[a], f[b]));
    checks.insert(
        "order_preserving",
        Verdict::from_witness(bad.map(|(a, b)| witness!("x" => src.names()[a], "y" => src.names()[b]))),
    );
    Ok(checks)
}

/// First `(s1, s2)` with `φ(s1) ≤ s2` but no `s ≥ s1` mapping to `s2`.
pub fn back_condition_witness(f: &[usize], src: &Poset, dst: &Poset) -> Option<(usize, usize)> {
    for s1 in 0..src.len() {
        let images: HashMap<usize, ()> = src.up(s1).iter().map(|s| (f[s], ())).collect();
        for s2 in dst.up(f[s1]).iter() {
            if !images.contains_key(&s2) {
                return Some((s1, s2));
            }
        }
    }
    None
}

/// The PSpa checks plus the back condition.
pub fn verify_hspa_morphism(f: &[usize], src: &OrderedSpace, dst: &OrderedSpace) -> Result<Checks, TopologyError> {
    let mut checks = verify_pspa_morphism(f, src, dst)?;
    let bad = back_condition_witness(f, &src.order, &dst.order);
    checks.insert(
        "back_condition",
        Verdict::from_witness(bad.map(|(a, b)| witness!("s1" => src.names()[a], "s2" => dst.names()[b]))),
    );
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> BitSet {
        BitSet::from_indices(n, xs.iter().copied())
    }

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn generate_examples() {
        let t = Topology::generate(2, &[set(2, &[0])]).unwrap();
        assert_eq!(t.opens(), vec![set(2, &[]), set(2, &[0]), set(2, &[0, 1])]);
        let t = Topology::generate(2, &[set(2, &[0]), set(2, &[1])]).unwrap();
        assert_eq!(t.opens().len(), 4);
        let t = Topology::generate(3, &[set(3, &[0, 1]), set(3, &[1, 2])]).unwrap();
        assert_eq!(t.opens(), vec![set(3, &[]), set(3, &[1]), set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 1, 2])]);
        assert!(Topology::generate(2, &[set(3, &[2])]).is_err());
    }

    #[test]
    fn hausdorff_orientation() {
        let s = BitopSpace::new(
            names(&["x", "y"]),
            Topology::generate(2, &[set(2, &[0])]).unwrap(),
            Topology::generate(2, &[set(2, &[1])]).unwrap(),
        )
        .unwrap();
        let h = is_pairwise_hausdorff(&s);
        assert!(h.unordered.pass);
        assert!(!h.ordered.pass);
        assert_eq!(h.ordered.witness.unwrap()["s1"], "y");
    }

    #[test]
    fn zero_dimensional_witness() {
        let s = BitopSpace::new(
            names(&["x", "y"]),
            Topology::generate(2, &[set(2, &[0])]).unwrap(),
            Topology::indiscrete(2),
        )
        .unwrap();
        let z = is_pairwise_zero_dimensional(&s);
        assert!(!z.first.pass);
        assert_eq!(z.first.witness.unwrap()["open"], "{x}");
    }

    #[test]
    fn priestley_examples() {
        let chain = Poset::chain(names(&["w0", "w1"]));
        assert!(verify_pspa_object(&OrderedSpace::discrete(chain.clone())).pass());
        let anti = Poset::antichain(names(&["p", "q"]));
        assert!(verify_pspa_object(&OrderedSpace::discrete(anti)).pass());
        let coarse = OrderedSpace::new(Topology::indiscrete(2), chain).unwrap();
        let c = verify_pspa_object(&coarse);
        let w = c.get("priestley_separation").unwrap().witness.clone().unwrap();
        assert_eq!((w["x"].as_str(), w["y"].as_str()), ("w1", "w0"));
    }

    #[test]
    fn esakia_failure_on_non_priestley_space() {
        // w0 < w1 < w2 with {w1} a clopen atom of its own but {w0, w2} glued.
        let order = Poset::chain(names(&["w0", "w1", "w2"]));
        let topo = Topology::generate(3, &[set(3, &[0, 2]), set(3, &[1])]).unwrap();
        let x = OrderedSpace::new(topo, order).unwrap();
        let w = esakia_witness(&x).unwrap();
        assert_eq!(w, set(3, &[1]));
        assert!(matches!(verify_hspa_object(&x), Err(TopologyError::PspaInvalid { .. })));
    }

    #[test]
    fn back_condition_examples() {
        let chain = OrderedSpace::discrete(Poset::chain(names(&["w0", "w1"])));
        assert!(verify_pspa_morphism(&[1, 1], &chain, &chain).unwrap().pass());
        assert!(verify_hspa_morphism(&[1, 1], &chain, &chain).unwrap().pass());
        let c = verify_hspa_morphism(&[0, 0], &chain, &chain).unwrap();
        let w = c.get("back_condition").unwrap().witness.clone().unwrap();
        assert_eq!((w["s1"].as_str(), w["s2"].as_str()), ("w0", "w1"));
        assert!(verify_hspa_morphism(&[0, 1], &chain, &chain).unwrap().pass());
    }

    #[test]
    fn pbs_discrete_with_identity_alpha() {
        let l = Arc::new(FiniteLattice::chain(3));
        let s = BitopSpace::new(l.names().to_vec(), Topology::discrete(3), Topology::discrete(3)).unwrap();
        let subs = enumerate_subalgebras(&l, SubalgebraSignature::Lvl);
        let alpha = AlphaAssignment { truth: l, images: subs.clone(), subalgebras: subs };
        assert!(verify_pbs_object(&s, &alpha).unwrap().pass());
    }

    #[test]
    fn pbs_alpha_violations() {
        let l = Arc::new(FiniteLattice::chain(4));
        let s = BitopSpace::new(names(&["p"]), Topology::discrete(1), Topology::discrete(1)).unwrap();
        let mut alpha = AlphaAssignment::trivial(l.clone(), 1);
        assert!(verify_pbs_object(&s, &alpha).unwrap().pass());
        let mid_a = l.set_of(&["0", "a", "1"]).unwrap();
        let mid_b = l.set_of(&["0", "b", "1"]).unwrap();
        for sub in [&mid_a, &mid_b] {
            let i = alpha.index_of(sub).unwrap();
            alpha.images[i] = BitSet::full(1);
        }
        let c = verify_pbs_object(&s, &alpha).unwrap();
        assert!(!c.get("alpha_intersection").unwrap().pass);
        let full = alpha.index_of(&BitSet::full(4)).unwrap();
        let mut alpha = AlphaAssignment::trivial(l, 1);
        alpha.images[full] = BitSet::empty(1);
        assert!(!verify_pbs_object(&s, &alpha).unwrap().get("alpha_full").unwrap().pass);
    }
}
