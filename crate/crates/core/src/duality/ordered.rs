//! Ordered-space duality for ISP(L) and its intuitionistic refinement.

use std::sync::Arc;

use crate::algebra::{enumerate_homs_with, is_homomorphism, Algebra, Homomorphism, ImpRule, Signature};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::kripke::hom_order;
use crate::order::{FiniteLattice, Poset};
use crate::topology::{
    back_condition_witness, continuity_witness, verify_hspa_object, verify_pspa_object, OrderedSpace, Topology,
    TopologyError,
};
use crate::verdict::{Checks, Verdict};
use crate::witness;

use super::{bijection_checks, hom_index, hom_point_names, soft, DualityReport, Mode};

/// The ordered dual of an algebra: its lattice homomorphisms into `L`,
/// ordered pointwise, with the topology induced by the product topology.
#[derive(Clone, Debug)]
pub struct OrderedDual {
    pub algebra: String,
    pub truth: Arc<FiniteLattice>,
    pub homs: Vec<Homomorphism>,
    pub space: OrderedSpace,
    pub checks: Checks,
}

impl OrderedDual {
    /// `⟨a⟩ = {v : v(a) = 1}`.
    pub fn basic_open(&self, a: usize) -> BitSet {
        BitSet::from_indices(
            self.homs.len(),
            (0..self.homs.len()).filter(|&v| self.homs[v].apply(a) == self.truth.top()),
        )
    }
}

fn ordered_dual(a: &Algebra, l: Arc<FiniteLattice>) -> Result<OrderedDual> {
    let target = Algebra::from_lattice(l.clone(), Signature::Bdl);
    let homs = enumerate_homs_with(a, &target, Signature::Bdl)?;
    let n = homs.len();
    // Subbasis {v : v(a) = ℓ}; on a finite set of homs this is discrete.
    let mut subbasis = Vec::with_capacity(a.len() * l.len());
    for x in 0..a.len() {
        for value in 0..l.len() {
            subbasis.push(BitSet::from_indices(n, (0..n).filter(|&v| homs[v].apply(x) == value)));
        }
    }
    let topo = Topology::generate(n, &subbasis)?;
    let mut order = hom_order(&homs, &l);
    let names = hom_point_names(&homs, &l);
    order = Poset::from_leq(names, |x, y| order.leq(x, y));
    let space = OrderedSpace::new(topo, order)?;
    let checks = verify_pspa_object(&space);
    Ok(OrderedDual { algebra: a.name().to_string(), truth: l, homs, space, checks })
}

/// Dual of a lattice in ISP(L).
pub fn dual_pspa_g(a: &Algebra, l: Arc<FiniteLattice>) -> Result<OrderedDual> {
    ordered_dual(a, l)
}

/// Dual of an algebra with implication: as [`dual_pspa_g`] on the lattice
/// reduct, plus the Esakia checks and `R⁻¹(⟨a⟩) = ⟨a→0⟩ᶜ` for every `a`.
pub fn dual_hspa_gi(a: &Algebra) -> Result<OrderedDual> {
    let l = super::pbs::truth_of(a)?;
    if !a.has_imp() {
        return Err(crate::algebra::AlgebraError::SignatureMismatch {
            expected: Signature::IspI.to_string(),
            found: a.signature().to_string(),
        }
        .into());
    }
    let mut dual = ordered_dual(a, l)?;
    match verify_hspa_object(&dual.space) {
        Ok(c) => dual.checks = c,
        Err(TopologyError::PspaInvalid { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    let bad = (0..a.len()).find(|&x| {
        let lhs = dual.space.order.down_closure(&dual.basic_open(x));
        let rhs = dual.basic_open(a.imp(x, a.zero())).complement();
        lhs != rhs
    });
    dual.checks.insert(
        "down_closure_identity",
        Verdict::from_witness(bad.map(|x| {
            let names = dual.space.names();
            witness!(
                "a" => a.name_of(x),
                "down_closure" => dual.space.order.down_closure(&dual.basic_open(x)).display_with(names),
                "complement" => dual.basic_open(a.imp(x, a.zero())).complement().display_with(names),
            )
        })),
    );
    Ok(dual)
}

/// Continuous order-preserving maps `X → (L, discrete, ≤)`, lexicographic.
pub fn continuous_monotone_maps(x: &OrderedSpace, l: &FiniteLattice, budget: usize) -> Result<Vec<Vec<usize>>> {
    fn go(
        x: &OrderedSpace,
        l: &FiniteLattice,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        let i = cur.len();
        if i == x.len() {
            if out.len() >= budget {
                return Err(Error::BudgetExceeded {
                    what: "continuous order-preserving maps".into(),
                    size: out.len() as u128 + 1,
                    budget,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for v in 0..l.len() {
            let ok = (0..i).all(|j| {
                let glued = x.topo.nbhd(i).contains(j) || x.topo.nbhd(j).contains(i);
                (!glued || cur[j] == v)
                    && (!x.order.leq(j, i) || l.leq(cur[j], v))
                    && (!x.order.leq(i, j) || l.leq(v, cur[j]))
            });
            if ok {
                cur.push(v);
                go(x, l, budget, cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(x, l, budget, &mut Vec::with_capacity(x.len()), &mut out)?;
    Ok(out)
}

pub fn algebra_c(x: &OrderedSpace, l: Arc<FiniteLattice>, budget: usize) -> Result<Algebra> {
    let vectors = continuous_monotone_maps(x, &l, budget)?;
    Ok(Algebra::function_algebra("C(X)", Signature::Bdl, l, x.names().to_vec(), vectors, None)?)
}

/// `C(X)` with `(f→g)(w) = ⋀{f(w')→g(w') : w ≤ w'}`. The second component
/// records, for every `f, g, ℓ`, whether the level set `(f→g)⁻¹(ℓ)` equals
/// `R⁻¹(g⁻¹(ℓ)) ∩ R⁻¹(f⁻¹(ℓ))ᶜ`.
pub fn algebra_ci(x: &OrderedSpace, l: Arc<FiniteLattice>, budget: usize) -> Result<(Algebra, Checks)> {
    let vectors = continuous_monotone_maps(x, &l, budget)?;
    let a = Algebra::function_algebra(
        "C_I(X)",
        Signature::IspI,
        l.clone(),
        x.names().to_vec(),
        vectors,
        Some(ImpRule::Kripke(x.order.clone())),
    )?;
    let pres = a.presentation().expect("function algebra");
    let n = x.len();
    let level = |f: usize, value: usize| BitSet::from_indices(n, (0..n).filter(|&p| pres.value(f, p) == value));
    let mut disagreements = 0usize;
    let mut first = None;
    for f in 0..a.len() {
        for g in 0..a.len() {
            let h = a.imp(f, g);
            for value in 0..l.len() {
                let lhs = level(h, value);
                let rhs = x.order.down_closure(&level(g, value)).difference(&x.order.down_closure(&level(f, value)));
                if lhs != rhs {
                    disagreements += 1;
                    if first.is_none() {
                        first = Some(witness!(
                            "f" => a.name_of(f),
                            "g" => a.name_of(g),
                            "l" => l.name_of(value),
                            "level_set" => lhs.display_with(x.names()),
                            "formula" => rhs.display_with(x.names()),
                        ));
                    }
                }
            }
        }
    }
    let mut checks = Checks::new();
    let v = Verdict::from_witness(first);
    let v = if disagreements > 0 { v.with_note(format!("{disagreements} disagreeing (f, g, l) triples")) } else { v };
    checks.insert_info("level_set_formula", v);
    Ok((a, checks))
}

fn sigma_common(
    name: &str,
    a: &Algebra,
    dual: &OrderedDual,
    cg: &Algebra,
    sig: Signature,
    mut report: DualityReport,
) -> Result<DualityReport> {
    report.cardinality("A", a.len());
    report.cardinality("G(A)", dual.homs.len());
    report.cardinality(name, cg.len());
    let pres = cg.presentation().expect("function algebra");
    let images: Vec<Option<usize>> =
        (0..a.len()).map(|x| pres.index_of(&dual.homs.iter().map(|h| h.apply(x)).collect::<Vec<_>>())).collect();
    bijection_checks(&mut report, &images, a.names(), cg.names());
    if images.iter().all(Option::is_some) {
        let total: Vec<usize> = images.iter().map(|y| y.unwrap()).collect();
        let w = is_homomorphism(&total, a, cg, sig)?;
        report.verdicts.insert("homomorphism", Verdict::from_witness(w.map(|w| witness!("violation" => w))));
    }
    Ok(report)
}

/// `σ(a)(v) = v(a)`, from `A` into `C(G(A))`.
pub fn sigma_verify(a: &Algebra, l: Arc<FiniteLattice>, budget: usize) -> Result<DualityReport> {
    let mut report = DualityReport::new(Mode::Pspa, "sigma", a.name());
    let a = a.reduct(Signature::Bdl)?;
    let dual = dual_pspa_g(&a, l.clone())?;
    report.verdicts.absorb("dual", dual.checks.clone());
    let cg = match soft(algebra_c(&dual.space, l, budget))? {
        Ok(c) => c,
        Err(v) => return Ok(report.construction_failed("C(G(A))", v)),
    };
    sigma_common("C(G(A))", &a, &dual, &cg, Signature::Bdl, report)
}

/// As [`sigma_verify`] with the Kripke implication on both sides.
pub fn sigma_i_verify(a: &Algebra, budget: usize) -> Result<DualityReport> {
    let mut report = DualityReport::new(Mode::Hspa, "sigma_i", a.name());
    let dual = dual_hspa_gi(a)?;
    let l = dual.truth.clone();
    report.verdicts.absorb("dual", dual.checks.clone());
    let (cg, level_sets) = match soft(algebra_ci(&dual.space, l, budget))? {
        Ok(c) => c,
        Err(v) => return Ok(report.construction_failed("C_I(G_I(A))", v)),
    };
    report.verdicts.absorb("reconstruction", level_sets);
    let a = a.reduct(Signature::IspI)?;
    sigma_common("C_I(G_I(A))", &a, &dual, &cg, Signature::IspI, report)
}

fn delta_common(
    x: &OrderedSpace,
    c: &Algebra,
    dual: &OrderedDual,
    intuitionistic: bool,
    mut report: DualityReport,
) -> DualityReport {
    report.cardinality("X", x.len());
    report.cardinality("C(X)", c.len());
    report.cardinality("G(C(X))", dual.homs.len());
    let pres = c.presentation().expect("function algebra");
    let index = hom_index(&dual.homs);
    let images: Vec<Option<usize>> = (0..x.len())
        .map(|s| {
            let v: Vec<usize> = (0..c.len()).map(|f| pres.value(f, s)).collect();
            index.get(v.as_slice()).copied()
        })
        .collect();
    let Some((map, inverse)) = bijection_checks(&mut report, &images, x.names(), dual.space.names()) else {
        return report;
    };
    let y = &dual.space;
    let cont = |f: &[usize], src: &OrderedSpace, dst: &OrderedSpace| {
        Verdict::from_witness(continuity_witness(f, &src.topo, &dst.topo).map(|p| witness!("point" => src.names()[p])))
    };
    report.verdicts.insert("continuous", cont(&map, x, y));
    report.verdicts.insert("inverse_continuous", cont(&inverse, y, x));
    let preserve = x.order.strict_pairs().into_iter().find(|&(a, b)| !y.order.leq(map[a], map[b]));
    report.verdicts.insert(
        "order_preserving",
        Verdict::from_witness(preserve.map(|(a, b)| witness!("s1" => x.names()[a], "s2" => x.names()[b]))),
    );
    let mut reflect = None;
    'outer: for s1 in 0..x.len() {
        for s2 in 0..x.len() {
            if !x.order.leq(s1, s2) && y.order.leq(map[s1], map[s2]) {
                reflect = Some((s1, s2));
                break 'outer;
            }
        }
    }
    let l = &dual.truth;
    report.verdicts.insert(
        "order_reflecting",
        Verdict::from_witness(reflect.map(|(s1, s2)| {
            // The 0/1 map on the smallest clopen up-set around s1 should
            // separate the two points whenever X is a Priestley space.
            let w = x.clopen_upset_hull(&BitSet::singleton(x.len(), s1));
            let f: Vec<usize> = (0..x.len()).map(|p| if w.contains(p) { l.top() } else { l.bottom() }).collect();
            let found = pres.index_of(&f).is_some();
            witness!(
                "s1" => x.names()[s1],
                "s2" => x.names()[s2],
                "separating_map" => crate::algebra::tuple_name(l, &f),
                "separating_map_in_carrier" => found,
            )
        })),
    );
    if intuitionistic {
        let back = |f: &[usize], src: &Poset, dst: &Poset, sn: &[String], dn: &[String]| {
            Verdict::from_witness(
                back_condition_witness(f, src, dst).map(|(a, b)| witness!("s1" => sn[a], "s2" => dn[b])),
            )
        };
        report.verdicts.insert("back_condition", back(&map, &x.order, &y.order, x.names(), y.names()));
        report.verdicts.insert("inverse_back_condition", back(&inverse, &y.order, &x.order, y.names(), x.names()));
    }
    report
}

/// `δ(s)(f) = f(s)`, from `X` into `G(C(X))`.
pub fn delta_verify(x: &OrderedSpace, l: Arc<FiniteLattice>, budget: usize) -> Result<DualityReport> {
    let mut report = DualityReport::new(Mode::Pspa, "delta", "X");
    report.verdicts.absorb("object", verify_pspa_object(x));
    let c = match soft(algebra_c(x, l.clone(), budget))? {
        Ok(c) => c,
        Err(v) => return Ok(report.construction_failed("C(X)", v)),
    };
    let dual = dual_pspa_g(&c, l)?;
    Ok(delta_common(x, &c, &dual, false, report))
}

/// As [`delta_verify`] with the Kripke implication, plus the back condition
/// for `δ` and its inverse.
pub fn delta_i_verify(x: &OrderedSpace, l: Arc<FiniteLattice>, budget: usize) -> Result<DualityReport> {
    let mut report = DualityReport::new(Mode::Hspa, "delta_i", "X");
    match verify_hspa_object(x) {
        Ok(c) => report.verdicts.absorb("object", c),
        Err(TopologyError::PspaInvalid { x: a, y: b }) => {
            report.verdicts.insert("object.priestley_separation", Verdict::fail(witness!("x" => a, "y" => b)));
        }
        Err(e) => return Err(e.into()),
    }
    let (c, level_sets) = match soft(algebra_ci(x, l, budget))? {
        Ok(c) => c,
        Err(v) => return Ok(report.construction_failed("C_I(X)", v)),
    };
    report.verdicts.absorb("reconstruction", level_sets);
    let dual = dual_hspa_gi(&c)?;
    Ok(delta_common(x, &c, &dual, true, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{upset_algebra, DEFAULT_BUDGET};

    fn c2() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::chain(2))
    }

    fn bdl(l: FiniteLattice) -> Algebra {
        Algebra::from_lattice(Arc::new(l), Signature::Bdl)
    }

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn pspa_duals() {
        let d = dual_pspa_g(&bdl(FiniteLattice::chain(3)), c2()).unwrap();
        assert_eq!(d.homs.len(), 2);
        assert!(d.space.order.leq(0, 1) && !d.space.order.leq(1, 0));
        assert!(d.space.topo.is_discrete());
        let d = dual_pspa_g(&bdl(FiniteLattice::boolean2()), c2()).unwrap();
        assert_eq!(d.homs.len(), 2);
        assert!(!d.space.order.leq(0, 1) && !d.space.order.leq(1, 0));
        assert_eq!(dual_pspa_g(&bdl(FiniteLattice::chain(2)), c2()).unwrap().homs.len(), 1);
    }

    #[test]
    fn algebra_c_examples() {
        let chain = OrderedSpace::discrete(Poset::chain(names(&["w0", "w1"])));
        assert_eq!(algebra_c(&chain, c2(), DEFAULT_BUDGET).unwrap().len(), 3);
        let anti = OrderedSpace::discrete(Poset::antichain(names(&["p", "q"])));
        assert_eq!(algebra_c(&anti, c2(), DEFAULT_BUDGET).unwrap().len(), 4);
        let one = OrderedSpace::discrete(Poset::chain(names(&["p"])));
        let l3 = Arc::new(FiniteLattice::chain(3));
        assert_eq!(algebra_c(&one, l3, DEFAULT_BUDGET).unwrap().len(), 3);
    }

    #[test]
    fn sigma_delta_small_cases() {
        for l in [FiniteLattice::chain(2), FiniteLattice::chain(3), FiniteLattice::boolean2()] {
            let r = sigma_verify(&bdl(l), c2(), DEFAULT_BUDGET).unwrap();
            assert!(r.pass(), "{r:#?}");
        }
        let anti = OrderedSpace::discrete(Poset::antichain(names(&["p", "q"])));
        assert!(delta_verify(&anti, c2(), DEFAULT_BUDGET).unwrap().pass());
    }

    #[test]
    fn intuitionistic_round_trip_on_chain_frame() {
        let w = Poset::chain(names(&["w0", "w1"]));
        let up = upset_algebra(c2(), &w).unwrap();
        let d = dual_hspa_gi(&up).unwrap();
        assert!(d.checks.pass(), "{:#?}", d.checks);
        let r = sigma_i_verify(&up, DEFAULT_BUDGET).unwrap();
        assert!(r.pass(), "{r:#?}");
        let r = delta_i_verify(&d.space, c2(), DEFAULT_BUDGET).unwrap();
        assert!(r.pass(), "{r:#?}");
    }

    #[test]
    fn ci_examples() {
        let chain = OrderedSpace::discrete(Poset::chain(names(&["w0", "w1"])));
        let (a, _) = algebra_ci(&chain, c2(), DEFAULT_BUDGET).unwrap();
        let l3 = FiniteLattice::chain(3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(a.imp(x, y), l3.implies(x, y));
            }
        }
        let anti = OrderedSpace::discrete(Poset::antichain(names(&["p", "q"])));
        let (b, _) = algebra_ci(&anti, c2(), DEFAULT_BUDGET).unwrap();
        let p = b.presentation().unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let fx = p.values(x);
                let fy = p.values(y);
                let want: Vec<usize> = (0..2).map(|i| c2().implies(fx[i], fy[i])).collect();
                assert_eq!(p.values(b.imp(x, y)), want);
            }
        }
    }
}
