//! Library results against exhaustive brute-force computations.

use std::sync::Arc;

use duality_core::algebra::{enumerate_homs, make_lvl, Algebra, Signature};
use duality_core::bitset::BitSet;
use duality_core::corpus::{corpus_frames, corpus_lattices, posets_up_to_iso};
use duality_core::duality::{dual_pspa_g, sigma_verify};
use duality_core::kripke::{upset_algebra, DEFAULT_BUDGET};
use duality_core::order::{enumerate_subalgebras, prime_filters, FiniteLattice, Poset, SubalgebraSignature};
use duality_core::topology::Topology;

fn subsets(n: usize) -> impl Iterator<Item = BitSet> {
    (0u32..1 << n).map(move |m| BitSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn two() -> Arc<FiniteLattice> {
    Arc::new(FiniteLattice::chain(2))
}

fn brute_prime_filters(l: &FiniteLattice) -> Vec<BitSet> {
    let n = l.len();
    let mut out: Vec<BitSet> = subsets(n)
        .filter(|s| {
            !s.is_empty()
                && !s.contains(l.bottom())
                && (0..n).all(|a| (0..n).all(|b| !(s.contains(a) && l.leq(a, b)) || s.contains(b)))
                && (0..n).all(|a| (0..n).all(|b| !(s.contains(a) && s.contains(b)) || s.contains(l.meet(a, b))))
                && (0..n).all(|a| (0..n).all(|b| !s.contains(l.join(a, b)) || s.contains(a) || s.contains(b)))
        })
        .collect();
    out.sort();
    out
}

/// Maps into {0, 1} preserving bounds, meets and joins.
fn brute_homs_to_two(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = l.len();
    let mut out: Vec<Vec<usize>> = subsets(n)
        .map(|s| (0..n).map(|i| usize::from(s.contains(i))).collect::<Vec<_>>())
        .filter(|h| {
            h[l.bottom()] == 0
                && h[l.top()] == 1
                && (0..n)
                    .all(|a| (0..n).all(|b| h[l.meet(a, b)] == h[a].min(h[b]) && h[l.join(a, b)] == h[a].max(h[b])))
        })
        .collect();
    out.sort();
    out
}

fn brute_pseudocomplement(l: &FiniteLattice, a: usize, b: usize) -> Option<usize> {
    let below: Vec<usize> = (0..l.len()).filter(|&c| l.leq(l.meet(a, c), b)).collect();
    below.iter().copied().find(|&c| below.iter().all(|&d| l.leq(d, c)))
}

fn brute_upsets(p: &Poset) -> usize {
    subsets(p.len()).filter(|s| s.iter().all(|x| p.up(x).is_subset(s))).count()
}

fn isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.len() == b.len()
        && permutations(a.len())
            .iter()
            .any(|f| (0..a.len()).all(|x| (0..a.len()).all(|y| a.leq(x, y) == b.leq(f[x], f[y]))))
}

#[test]
fn corpus_lattices_are_distributive_and_pairwise_distinct() {
    let ls = corpus_lattices(7);
    assert_eq!(ls.len(), 20);
    for l in &ls {
        let n = l.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)), "{}", l.name());
                }
            }
        }
    }
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i + 1..] {
            assert!(!isomorphic(a, b), "{} and {} are isomorphic", a.name(), b.name());
        }
    }
}

#[test]
fn poset_counts_match_labelled_enumeration() {
    for n in 1..=4 {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
        let mut classes: Vec<Vec<bool>> = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            let rel = |a: usize, b: usize| {
                a == b || pairs.iter().position(|&p| p == (a, b)).is_some_and(|i| mask >> i & 1 == 1)
            };
            let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(rel(a, b) && rel(b, a))));
            let trans = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))));
            if !(antisym && trans) {
                continue;
            }
            let canon = permutations(n)
                .iter()
                .map(|f| {
                    let mut m = vec![false; n * n];
                    for a in 0..n {
                        for b in 0..n {
                            m[f[a] * n + f[b]] = rel(a, b);
                        }
                    }
                    m
                })
                .min()
                .unwrap();
            if !classes.contains(&canon) {
                classes.push(canon);
            }
        }
        assert_eq!(posets_up_to_iso(n).len(), classes.len(), "n = {n}");
    }
}

#[test]
fn prime_filters_match_subset_scan() {
    for l in corpus_lattices(7) {
        assert_eq!(prime_filters(&l), brute_prime_filters(&l), "{}", l.name());
    }
}

#[test]
fn homs_into_two_match_subset_scan() {
    for l in corpus_lattices(7) {
        let a = Algebra::from_lattice(l.clone(), Signature::Bdl);
        let t = Algebra::from_lattice(two(), Signature::Bdl);
        let homs: Vec<Vec<usize>> = enumerate_homs(&a, &t).unwrap().iter().map(|h| h.images().to_vec()).collect();
        assert_eq!(homs, brute_homs_to_two(&l), "{}", l.name());
        assert_eq!(homs.len(), prime_filters(&l).len());
    }
}

#[test]
fn heyting_implication_is_relative_pseudocomplement() {
    for l in corpus_lattices(7) {
        for a in 0..l.len() {
            for b in 0..l.len() {
                assert_eq!(Some(l.implies(a, b)), brute_pseudocomplement(&l, a, b));
            }
        }
    }
}

#[test]
fn bdl_subalgebras_match_subset_scan() {
    for l in corpus_lattices(6) {
        let n = l.len();
        let mut brute: Vec<BitSet> = subsets(n)
            .filter(|s| {
                s.contains(l.bottom())
                    && s.contains(l.top())
                    && s.iter().all(|a| s.iter().all(|b| s.contains(l.meet(a, b)) && s.contains(l.join(a, b))))
            })
            .collect();
        brute.sort();
        let mut got = enumerate_subalgebras(&l, SubalgebraSignature::BoundedLattice);
        got.sort();
        assert_eq!(got, brute, "{}", l.name());
    }
}

#[test]
fn upset_algebra_size_and_implication() {
    for (name, w) in corpus_frames(4) {
        let a = upset_algebra(two(), &w).unwrap();
        assert_eq!(a.len(), brute_upsets(&w), "{name}");
        let lat = a.lattice().unwrap();
        for x in 0..a.len() {
            for y in 0..a.len() {
                assert_eq!(Some(a.imp(x, y)), brute_pseudocomplement(&lat, x, y), "{name}");
            }
        }
    }
}

#[test]
fn priestley_dual_recovers_size_over_two() {
    // A finite distributive lattice is isomorphic to the up-sets of its
    // poset of prime filters.
    for l in corpus_lattices(7) {
        let a = Algebra::from_lattice(l.clone(), Signature::Bdl);
        let g = dual_pspa_g(&a, two()).unwrap();
        assert_eq!(brute_upsets(&g.space.order), l.len(), "{}", l.name());
        assert!(sigma_verify(&a, two(), DEFAULT_BUDGET).unwrap().pass(), "{}", l.name());
    }
}

#[test]
fn generated_topology_matches_union_intersection_closure() {
    let n = 4;
    let families: [&[&[usize]]; 4] = [&[&[0, 1], &[1, 2]], &[&[0], &[2, 3]], &[], &[&[0, 1, 2], &[2, 3], &[1, 3]]];
    for fam in families {
        let sub: Vec<BitSet> = fam.iter().map(|s| BitSet::from_indices(n, s.iter().copied())).collect();
        let mut opens = vec![BitSet::empty(n), BitSet::full(n)];
        opens.extend(sub.iter().cloned());
        loop {
            let mut grown = opens.clone();
            for a in &opens {
                for b in &opens {
                    for c in [a.union(b), a.intersection(b)] {
                        if !grown.contains(&c) {
                            grown.push(c);
                        }
                    }
                }
            }
            if grown.len() == opens.len() {
                break;
            }
            opens = grown;
        }
        opens.sort();
        let mut got = Topology::generate(n, &sub).unwrap().opens();
        got.sort();
        assert_eq!(got, opens, "{fam:?}");
    }
}

#[test]
fn literal_clause_iv_counterexample_on_three_chain() {
    let l = Arc::new(FiniteLattice::chain(3));
    let a = make_lvl(l.clone());
    let r = duality_core::algebra::check_lvl_axioms(&a, true).unwrap();
    let iv = r.clause("iv");
    assert!(!iv.pass);
    let m = l.index_of("m").unwrap();
    // T_0(m) ∨ (T_m(m) → 0) is 0 ∨ (1 → 0) = 0.
    assert_eq!(a.join(a.t(0, m), a.imp(a.t(m, m), a.zero())), a.zero());
    assert!(iv
        .witnesses
        .iter()
        .any(|w| w.binding("a") == Some("m") && w.binding("L1") == Some("0") && w.binding("L2") == Some("m")));
}
