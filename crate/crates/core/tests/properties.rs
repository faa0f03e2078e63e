//! Randomised invariants over generated posets, lattices and documents.

use std::sync::Arc;

use duality_core::algebra::{enumerate_homs, is_homomorphism, make_lvl, Algebra, Signature};
use duality_core::bitset::BitSet;
use duality_core::corpus::{corpus_lattices, downset_lattice};
use duality_core::document::{
    algebra_document, frame_document, lattice_document, parse_document, serialize_document, Document, Workspace,
};
use duality_core::duality::{prime_spectrum_correspondence, sigma_i_verify};
use duality_core::kripke::{kripke_condition_check, upset_algebra, DEFAULT_BUDGET};
use duality_core::order::{separating_prime_ideal, FiniteLattice, Poset};
use duality_core::topology::Topology;
use proptest::prelude::*;

/// A random poset on up to `max` points: a strict upper-triangular relation
/// closed transitively by `Poset::from_pairs`.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| bits[a * n + b]).collect();
            Poset::from_pairs(names, &pairs).expect("upper-triangular relations are acyclic")
        })
    })
}

fn lattice(max_points: usize) -> impl Strategy<Value = Arc<FiniteLattice>> {
    poset(max_points).prop_map(|p| Arc::new(downset_lattice("rand", &p)))
}

fn subbasis(n: usize) -> impl Strategy<Value = Vec<BitSet>> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), 0..5)
        .prop_map(move |sets| sets.into_iter().map(|s| BitSet::from_indices(n, (0..n).filter(|&i| s[i]))).collect())
}

fn round_trip(doc: Document) -> Document {
    let text = serialize_document(&doc);
    let back = parse_document(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(back, doc);
    back
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_documents_round_trip(l in lattice(4)) {
        let doc = round_trip(Document::Lattice(lattice_document(&l)));
        let Document::Lattice(d) = doc else { unreachable!() };
        let rebuilt = d.build().unwrap();
        prop_assert_eq!(rebuilt.len(), l.len());
        for a in 0..l.len() {
            for b in 0..l.len() {
                prop_assert_eq!(rebuilt.leq(a, b), l.leq(a, b));
            }
        }
    }

    #[test]
    fn frame_documents_round_trip(p in poset(5)) {
        let Document::Frame(d) = round_trip(Document::Frame(frame_document("w", &p))) else { unreachable!() };
        prop_assert_eq!(d.build().unwrap(), p);
    }

    #[test]
    fn algebra_table_documents_round_trip(l in lattice(3)) {
        let a = make_lvl(l.clone()).with_name("alg");
        let doc = round_trip(Document::Algebra(algebra_document(&a)));
        let mut ws = Workspace::new();
        ws.insert(Document::Lattice(lattice_document(&l))).unwrap();
        ws.insert(doc).unwrap();
        let b = ws.algebra("alg", DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(b.len(), a.len());
        let id: Vec<usize> = (0..a.len()).collect();
        prop_assert_eq!(is_homomorphism(&id, &a, &b, Signature::Lvl).unwrap(), None);
    }

    #[test]
    fn heyting_residuation(l in lattice(5)) {
        for a in 0..l.len() {
            for b in 0..l.len() {
                let i = l.implies(a, b);
                for c in 0..l.len() {
                    prop_assert_eq!(l.leq(l.meet(a, c), b), l.leq(c, i));
                }
            }
        }
    }

    #[test]
    fn spectrum_is_a_bijection(l in lattice(5)) {
        let a = Algebra::from_lattice(l, Signature::Bdl);
        let r = prime_spectrum_correspondence(&a, Arc::new(FiniteLattice::chain(2))).unwrap();
        prop_assert!(r.pass());
        prop_assert_eq!(r.homs, r.prime_filters);
    }

    #[test]
    fn distinct_elements_are_separated(l in lattice(5)) {
        for x in 0..l.len() {
            for y in 0..l.len() {
                if x != y {
                    let (p, _) = separating_prime_ideal(&l, x, y).unwrap();
                    prop_assert!(p.contains(x) != p.contains(y));
                }
            }
        }
    }

    #[test]
    fn upset_algebras_satisfy_kripke_and_sigma_i(p in poset(4)) {
        let a = upset_algebra(Arc::new(FiniteLattice::chain(2)), &p).unwrap();
        prop_assert!(kripke_condition_check(&a).unwrap().verdict.pass);
        prop_assert!(sigma_i_verify(&a, DEFAULT_BUDGET).unwrap().pass());
    }

    #[test]
    fn generated_topology_contains_subbasis_and_is_closed((n, sub) in (1usize..6).prop_flat_map(|n| (Just(n), subbasis(n)))) {
        let t = Topology::generate(n, &sub).unwrap();
        for s in &sub {
            prop_assert!(t.is_open(s));
        }
        let opens = t.opens();
        for a in &opens {
            for b in &opens {
                prop_assert!(t.is_open(&a.union(b)));
                prop_assert!(t.is_open(&a.intersection(b)));
            }
            prop_assert_eq!(&t.closure(&t.closure(a)), &t.closure(a));
        }
    }
}

#[test]
fn hom_composites_are_homs() {
    let ls = corpus_lattices(5);
    let algs: Vec<Algebra> = ls.iter().map(|l| Algebra::from_lattice(l.clone(), Signature::Bdl)).collect();
    for a in &algs {
        for b in &algs {
            for c in &algs {
                for f in enumerate_homs(a, b).unwrap() {
                    for g in enumerate_homs(b, c).unwrap() {
                        let h = f.then(&g);
                        assert_eq!(is_homomorphism(h.images(), a, c, Signature::Bdl).unwrap(), None);
                    }
                }
            }
        }
    }
}

fn seed_documents() -> Vec<String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut out: Vec<String> =
        std::fs::read_dir(dir).unwrap().map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap()).collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    // Byte-level mutations of the sample documents never panic, and whatever
    // parses survives a serialize/parse cycle unchanged.
    #[test]
    fn mutated_documents_parse_or_reject(
        pick in any::<prop::sample::Index>(),
        edits in proptest::collection::vec((any::<prop::sample::Index>(), any::<u8>(), 0u8..3), 1..6),
    ) {
        let seeds = seed_documents();
        let mut bytes = seeds[pick.index(seeds.len())].clone().into_bytes();
        for (at, byte, op) in edits {
            let i = at.index(bytes.len() + 1);
            match op {
                0 if i < bytes.len() => bytes[i] = byte,
                1 => bytes.insert(i, byte),
                _ if i < bytes.len() => { bytes.remove(i); }
                _ => {}
            }
        }
        let text = String::from_utf8_lossy(&bytes);
        if let Ok(doc) = parse_document(&text) {
            prop_assert_eq!(parse_document(&serialize_document(&doc)).unwrap(), doc.clone());
            let mut ws = Workspace::new();
            for other in seeds.iter().filter_map(|s| parse_document(s).ok()) {
                if other.name() != doc.name() {
                    let _ = ws.insert(other);
                }
            }
            let name = doc.name().to_string();
            if ws.insert(doc).is_err() {
                return Ok(());
            }
            let _ = ws.lattice(&name);
            let _ = ws.frame(&name);
            let _ = ws.algebra(&name, 256);
            let _ = ws.bitop_space(&name);
            let _ = ws.ordered_space(&name);
        }
    }
}
