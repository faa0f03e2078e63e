//! Kripke frames, intuitionistic powers of a truth lattice, and the Kripke
//! model condition over the homomorphism order.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    all_vectors, enumerate_homs_with, t_operator, Algebra, AlgebraError, Homomorphism, ImpRule, Signature,
};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::{FiniteLattice, Poset};
use crate::verdict::Verdict;
use crate::witness;

/// A Kripke frame is a finite poset of worlds.
pub type KripkeFrame = Poset;

/// Default limit on carriers built during verification.
pub const DEFAULT_BUDGET: usize = 4096;

/// `|base|^exp`, or a budget error naming `what`.
pub fn check_budget(what: &str, base: usize, exp: usize, budget: usize) -> Result<usize> {
    let size = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { what: what.to_string(), size, budget });
    }
    Ok(size as usize)
}

fn world_names(w: &KripkeFrame) -> Vec<String> {
    w.names().to_vec()
}

/// `L^W` with pointwise lattice operations and
/// `(f→g)(w) = ⋀{f(w') → g(w') : w R w'}`.
pub fn intuitionistic_power(l: Arc<FiniteLattice>, w: &KripkeFrame, budget: usize) -> Result<Algebra> {
    check_budget("intuitionistic power", l.len(), w.len(), budget)?;
    let vectors = all_vectors(l.len(), w.len());
    let name = format!("{}^W", l.name());
    Ok(Algebra::function_algebra(&name, Signature::IspI, l, world_names(w), vectors, Some(ImpRule::Kripke(w.clone())))?)
}

/// Order-preserving maps `W → L` in lexicographic order.
pub fn monotone_maps(l: &FiniteLattice, w: &KripkeFrame) -> Vec<Vec<usize>> {
    fn go(l: &FiniteLattice, w: &KripkeFrame, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == w.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..l.len() {
            let ok = (0..i).all(|j| (!w.leq(j, i) || l.leq(cur[j], v)) && (!w.leq(i, j) || l.leq(v, cur[j])));
            if ok {
                cur.push(v);
                go(l, w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(l, w, &mut Vec::with_capacity(w.len()), &mut out);
    out
}

/// Closure of `gens ∪ {0, 1}` under ∧, ∨ and → of `p`.
pub fn subalgebra_generated(p: &Algebra, gens: &[usize]) -> Result<Algebra> {
    if let Some(&bad) = gens.iter().find(|&&g| g >= p.len()) {
        return Err(AlgebraError::TableValue { symbol: "generator".into(), index: bad }.into());
    }
    let mut members = BitSet::from_indices(p.len(), [p.zero(), p.one()]);
    let mut list: Vec<usize> = members.iter().collect();
    for &g in gens {
        if members.insert(g) {
            list.push(g);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = list[j];
            let mut produced = vec![p.meet(x, y), p.join(x, y)];
            if p.has_imp() {
                produced.push(p.imp(x, y));
                produced.push(p.imp(y, x));
            }
            for z in produced {
                if members.insert(z) {
                    list.push(z);
                }
            }
        }
        i += 1;
    }
    let members: Vec<usize> = members.iter().collect();
    let name = format!("<{}>", p.name());
    Ok(p.subalgebra(&name, &members)?)
}

/// The subalgebra of `L^W` generated by `gens`, computed on value vectors so
/// the full power is never built. Elements come out in lexicographic order.
pub fn power_subalgebra(
    l: Arc<FiniteLattice>,
    w: &KripkeFrame,
    gens: Vec<Vec<usize>>,
    budget: usize,
) -> Result<Algebra> {
    let n = w.len();
    if let Some(bad) = gens.iter().find(|g| g.len() != n || g.iter().any(|&x| x >= l.len())) {
        return Err(AlgebraError::CarrierMismatch { expected: n, found: bad.len() }.into());
    }
    let kimp = |f: &[usize], g: &[usize]| -> Vec<usize> {
        (0..n).map(|p| l.meet_all(w.up(p).iter().map(|q| l.implies(f[q], g[q])))).collect()
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut list: Vec<Vec<usize>> = Vec::new();
    for v in [vec![l.bottom(); n], vec![l.top(); n]].into_iter().chain(gens) {
        if seen.insert(v.clone()) {
            list.push(v);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..=i {
            let (x, y) = (&list[i], &list[j]);
            let produced = [
                x.iter().zip(y).map(|(&a, &b)| l.meet(a, b)).collect::<Vec<_>>(),
                x.iter().zip(y).map(|(&a, &b)| l.join(a, b)).collect(),
                kimp(x, y),
                kimp(y, x),
            ];
            for v in produced {
                if seen.insert(v.clone()) {
                    list.push(v);
                }
            }
        }
        if list.len() > budget {
            return Err(Error::BudgetExceeded {
                what: "generated subalgebra".into(),
                size: list.len() as u128,
                budget,
            });
        }
        i += 1;
    }
    list.sort();
    let name = format!("<{}^W>", l.name());
    Ok(Algebra::function_algebra(&name, Signature::IspI, l, world_names(w), list, Some(ImpRule::Kripke(w.clone())))?)
}

/// The subalgebra of `L^W` on the order-preserving maps. For `L = 2` this is
/// the algebra of up-sets of `W`.
pub fn upset_algebra(l: Arc<FiniteLattice>, w: &KripkeFrame) -> Result<Algebra> {
    let vectors = monotone_maps(&l, w);
    let name = format!("Up({})", l.name());
    Ok(Algebra::function_algebra(&name, Signature::IspI, l, world_names(w), vectors, Some(ImpRule::Kripke(w.clone())))?)
}

/// `T_ℓ(f)` computed pointwise, for algebras of functions into their truth
/// lattice. `None` if the result leaves the carrier.
pub fn pointwise_t(a: &Algebra, index: usize, x: usize) -> Option<usize> {
    let (p, l) = (a.presentation()?, a.truth()?);
    let v: Vec<usize> = p.values(x).into_iter().map(|y| t_operator(l, index, y)).collect();
    p.index_of(&v)
}

/// `v1 R v2` iff `v1(x) ≤ v2(x)` for every `x`.
pub fn hom_order(homs: &[Homomorphism], l: &FiniteLattice) -> Poset {
    let names = (0..homs.len()).map(|i| format!("v{i}")).collect();
    Poset::from_leq(names, |a, b| homs[a].images().iter().zip(homs[b].images()).all(|(&x, &y)| l.leq(x, y)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KripkeReport {
    pub homs: usize,
    pub verdict: Verdict,
}

/// Checks `v(x→y) = ⋀{w(x) → w(y) : v R w}` for every lattice homomorphism
/// `v: A → L` and every pair `x, y`.
pub fn kripke_condition_check(a: &Algebra) -> Result<KripkeReport> {
    if !a.has_imp() {
        return Err(AlgebraError::SignatureMismatch {
            expected: Signature::IspI.to_string(),
            found: a.signature().to_string(),
        }
        .into());
    }
    let l = a.truth().ok_or_else(|| AlgebraError::TruthLatticeRequired(a.signature().to_string()))?.clone();
    let target = Algebra::from_lattice(l.clone(), Signature::Bdl);
    let homs = enumerate_homs_with(a, &target, Signature::Bdl)?;
    let order = hom_order(&homs, &l);
    let n = a.len();
    let mut bad = None;
    'outer: for (vi, v) in homs.iter().enumerate() {
        for x in 0..n {
            for y in 0..n {
                let lhs = v.apply(a.imp(x, y));
                let rhs = l.meet_all(order.up(vi).iter().map(|wi| l.implies(homs[wi].apply(x), homs[wi].apply(y))));
                if lhs != rhs {
                    bad = Some(witness!(
                        "v" => v.display(l.names()),
                        "x" => a.name_of(x),
                        "y" => a.name_of(y),
                        "v(x→y)" => l.name_of(lhs),
                        "meet" => l.name_of(rhs),
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(KripkeReport { homs: homs.len(), verdict: Verdict::from_witness(bad) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::chain(2))
    }

    fn frame(names: &[&str], chain: bool) -> KripkeFrame {
        let names = names.iter().map(|s| s.to_string()).collect();
        if chain {
            Poset::chain(names)
        } else {
            Poset::antichain(names)
        }
    }

    #[test]
    fn one_world_power_is_l() {
        let p = intuitionistic_power(c2(), &frame(&["w"], true), DEFAULT_BUDGET).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.imp(1, 0), 0);
        assert_eq!(p.imp(0, 0), 1);
    }

    #[test]
    fn chain_frame_implication() {
        let p = intuitionistic_power(c2(), &frame(&["w0", "w1"], true), DEFAULT_BUDGET).unwrap();
        let f = p.index_of("(1,0)").unwrap();
        let g = p.index_of("(0,0)").unwrap();
        assert_eq!(p.name_of(p.imp(f, g)), "(0,1)");
    }

    #[test]
    fn antichain_frame_is_pointwise() {
        let w = frame(&["p", "q"], false);
        let p = intuitionistic_power(c2(), &w, DEFAULT_BUDGET).unwrap();
        let l = c2();
        for x in 0..4 {
            for y in 0..4 {
                let fx = p.presentation().unwrap().values(x);
                let fy = p.presentation().unwrap().values(y);
                let want: Vec<usize> = fx.iter().zip(&fy).map(|(&a, &b)| l.implies(a, b)).collect();
                assert_eq!(p.presentation().unwrap().values(p.imp(x, y)), want);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let w = frame(&["a", "b", "c", "d", "e"], false);
        let err = intuitionistic_power(c2(), &w, 16).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { size: 32, .. }));
    }

    #[test]
    fn generated_subalgebras() {
        let w = frame(&["w0", "w1"], true);
        let p = intuitionistic_power(c2(), &w, DEFAULT_BUDGET).unwrap();
        let mono: Vec<usize> =
            monotone_maps(&c2(), &w).iter().map(|v| p.presentation().unwrap().index_of(v).unwrap()).collect();
        let up = subalgebra_generated(&p, &mono).unwrap();
        assert_eq!(up.names(), ["(0,0)", "(0,1)", "(1,1)"]);
        assert_eq!(subalgebra_generated(&p, &[]).unwrap().len(), 2);
        let f = p.index_of("(1,0)").unwrap();
        assert_eq!(subalgebra_generated(&p, &[f]).unwrap().len(), 4);
        assert!(subalgebra_generated(&p, &[9]).is_err());
        let direct = power_subalgebra(c2(), &w, vec![vec![1, 0]], DEFAULT_BUDGET).unwrap();
        assert_eq!(direct.names(), p.names());
    }

    #[test]
    fn kripke_condition_examples() {
        let w = frame(&["w0", "w1"], true);
        let up = upset_algebra(c2(), &w).unwrap();
        let r = kripke_condition_check(&up).unwrap();
        assert_eq!(r.homs, 2);
        assert!(r.verdict.pass);
        let one = upset_algebra(c2(), &frame(&["w"], true)).unwrap();
        assert!(kripke_condition_check(&one).unwrap().verdict.pass);
        let full = intuitionistic_power(c2(), &w, DEFAULT_BUDGET).unwrap();
        let r = kripke_condition_check(&full).unwrap();
        assert!(!r.verdict.pass);
    }

    #[test]
    fn pointwise_t_on_power() {
        let l = Arc::new(FiniteLattice::chain(3));
        let w = frame(&["w0", "w1"], true);
        let p = intuitionistic_power(l.clone(), &w, DEFAULT_BUDGET).unwrap();
        let x = p.index_of("(m,1)").unwrap();
        let m = l.index_of("m").unwrap();
        assert_eq!(p.name_of(pointwise_t(&p, m, x).unwrap()), "(1,0)");
    }
}
