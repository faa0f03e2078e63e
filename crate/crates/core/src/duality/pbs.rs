//! Bitopological duality for L-VL algebras.

use std::sync::Arc;

use crate::algebra::{enumerate_homs, make_lvl, Algebra, AlgebraError, Homomorphism, ImpRule, Signature};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::FiniteLattice;
use crate::topology::{continuity_witness, verify_pbs_object, AlphaAssignment, BitopSpace, Topology};
use crate::verdict::{Checks, Verdict};
use crate::witness;

use super::{bijection_checks, hom_index, hom_point_names, soft, DualityReport, Mode};

/// The dual of an L-VL algebra: its homomorphisms into `L` with two
/// topologies and the α-assignment.
#[derive(Clone, Debug)]
pub struct PbsDual {
    pub algebra: String,
    pub homs: Vec<Homomorphism>,
    pub space: BitopSpace,
    pub alpha: AlphaAssignment,
    /// The object checks on the constructed space, plus the inclusion of the
    /// second topology in the first as an informational entry.
    pub checks: Checks,
}

pub(crate) fn truth_of(a: &Algebra) -> Result<Arc<FiniteLattice>> {
    Ok(a.truth().ok_or_else(|| AlgebraError::TruthLatticeRequired(a.signature().to_string()))?.clone())
}

fn require_lvl(a: &Algebra) -> Result<()> {
    if a.signature() != Signature::Lvl {
        return Err(AlgebraError::SignatureMismatch {
            expected: Signature::Lvl.to_string(),
            found: a.signature().to_string(),
        }
        .into());
    }
    Ok(())
}

/// `⟨a⟩ = {v : v(a) = 1}`.
fn basic_open(homs: &[Homomorphism], l: &FiniteLattice, a: usize) -> BitSet {
    BitSet::from_indices(homs.len(), (0..homs.len()).filter(|&i| homs[i].apply(a) == l.top()))
}

pub fn dual_space_g(a: &Algebra) -> Result<PbsDual> {
    require_lvl(a)?;
    let l = truth_of(a)?;
    let target = make_lvl(l.clone());
    let homs = enumerate_homs(a, &target)?;
    let n = homs.len();
    let top_index = l.top();
    let b1: Vec<BitSet> = (0..a.len()).map(|x| basic_open(&homs, &l, x)).collect();
    let b2: Vec<BitSet> = (0..a.len()).map(|x| basic_open(&homs, &l, a.imp(a.t(top_index, x), a.zero()))).collect();
    let names = hom_point_names(&homs, &l);
    let space = BitopSpace::new(names, Topology::generate(n, &b1)?, Topology::generate(n, &b2)?)?;
    let mut alpha = AlphaAssignment::trivial(l.clone(), n);
    for (i, sub) in alpha.subalgebras.iter().enumerate() {
        alpha.images[i] =
            BitSet::from_indices(n, (0..n).filter(|&v| homs[v].images().iter().all(|&y| sub.contains(y))));
    }
    let mut checks = verify_pbs_object(&space, &alpha)?;
    let not_finer = (0..n).find(|&p| !space.topo1.nbhd(p).is_subset(space.topo2.nbhd(p)));
    checks.insert_info(
        "sigma2_within_sigma1",
        Verdict::from_witness(not_finer.map(|p| {
            witness!(
                "point" => space.names[p],
                "sigma2_open" => space.topo2.nbhd(p).display_with(&space.names),
            )
        })),
    );
    Ok(PbsDual { algebra: a.name().to_string(), homs, space, alpha, checks })
}

/// Maps `B → L` that are pairwise continuous into the discrete bitopology
/// and send `α(L')` into `L'`, in lexicographic order.
pub fn pbs_maps(space: &BitopSpace, alpha: &AlphaAssignment, budget: usize) -> Result<Vec<Vec<usize>>> {
    let l = &alpha.truth;
    let n = space.len();
    // Union of both neighbourhood relations, closed to components.
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        comp[x] = r;
        r
    }
    for p in 0..n {
        for q in space.topo1.nbhd(p).iter().chain(space.topo2.nbhd(p).iter()) {
            let (a, b) = (find(&mut comp, p), find(&mut comp, q));
            if a != b {
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|p| find(&mut comp, p)).collect();
    let mut allowed: Vec<BitSet> = vec![BitSet::full(l.len()); n];
    for (i, img) in alpha.images.iter().enumerate() {
        for p in img.iter() {
            let r = roots[p];
            allowed[r].intersect_with(&alpha.subalgebras[i]);
        }
    }
    let mut size: u128 = 1;
    for p in 0..n {
        if roots[p] == p {
            size = size.saturating_mul(allowed[p].count() as u128);
        }
    }
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { what: "pairwise continuous maps".into(), size, budget });
    }
    let mut out = vec![Vec::with_capacity(n)];
    for p in 0..n {
        let r = roots[p];
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                let choices: Vec<usize> = if r == p { allowed[p].iter().collect() } else { vec![prefix[r]] };
                choices.into_iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// The L-VL algebra of admissible maps on a PBS object, operations pointwise.
pub fn algebra_f(space: &BitopSpace, alpha: &AlphaAssignment, budget: usize) -> Result<Algebra> {
    let vectors = pbs_maps(space, alpha, budget)?;
    Ok(Algebra::function_algebra(
        "F(S)",
        Signature::Lvl,
        alpha.truth.clone(),
        space.names.clone(),
        vectors,
        Some(ImpRule::Pointwise),
    )?)
}

/// `β(a)(φ) = φ(a)`, from `A` into `F(G(A))`.
pub fn nat_beta_verify(a: &Algebra, budget: usize) -> Result<DualityReport> {
    let mut report = DualityReport::new(Mode::Pbs, "beta", a.name());
    let dual = dual_space_g(a)?;
    report.verdicts.absorb("dual", dual.checks.clone());
    report.cardinality("A", a.len());
    report.cardinality("G(A)", dual.homs.len());
    let fg = match soft(algebra_f(&dual.space, &dual.alpha, budget))? {
        Ok(fg) => fg,
        Err(v) => return Ok(report.construction_failed("F(G(A))", v)),
    };
    report.cardinality("F(G(A))", fg.len());
    let pres = fg.presentation().expect("function algebra");
    let images: Vec<Option<usize>> = (0..a.len())
        .map(|x| {
            let v: Vec<usize> = dual.homs.iter().map(|h| h.apply(x)).collect();
            pres.index_of(&v)
        })
        .collect();
    bijection_checks(&mut report, &images, a.names(), fg.names());
    if images.iter().all(Option::is_some) {
        let total: Vec<usize> = images.iter().map(|y| y.unwrap()).collect();
        let w = crate::algebra::is_homomorphism(&total, a, &fg, Signature::Lvl)?;
        report.verdicts.insert("homomorphism", Verdict::from_witness(w.map(|w| witness!("violation" => w))));
    }
    Ok(report)
}

/// `ζ(s)(ψ) = ψ(s)`, from `(S, α)` into `G(F(S, α))`.
pub fn nat_zeta_verify(space: &BitopSpace, alpha: &AlphaAssignment, budget: usize) -> Result<DualityReport> {
    let mut report = DualityReport::new(Mode::Pbs, "zeta", "S");
    report.verdicts.absorb("object", verify_pbs_object(space, alpha)?);
    report.cardinality("S", space.len());
    let f = match soft(algebra_f(space, alpha, budget))? {
        Ok(f) => f,
        Err(v) => return Ok(report.construction_failed("F(S)", v)),
    };
    report.cardinality("F(S)", f.len());
    let gf = dual_space_g(&f)?;
    report.cardinality("G(F(S))", gf.homs.len());
    let index = hom_index(&gf.homs);
    let pres = f.presentation().expect("function algebra");
    let images: Vec<Option<usize>> = (0..space.len())
        .map(|s| {
            let v: Vec<usize> = (0..f.len()).map(|psi| pres.value(psi, s)).collect();
            index.get(v.as_slice()).copied()
        })
        .collect();
    let Some((map, inverse)) = bijection_checks(&mut report, &images, &space.names, &gf.space.names) else {
        return Ok(report);
    };
    let cont = |name: &str, f: &[usize], src: &Topology, dst: &Topology, names: &[String], r: &mut DualityReport| {
        let w = continuity_witness(f, src, dst).map(|p| witness!("point" => names[p]));
        r.verdicts.insert(name, Verdict::from_witness(w));
    };
    cont("continuous_tau1", &map, &space.topo1, &gf.space.topo1, &space.names, &mut report);
    cont("continuous_tau2", &map, &space.topo2, &gf.space.topo2, &space.names, &mut report);
    cont("inverse_continuous_tau1", &inverse, &gf.space.topo1, &space.topo1, &gf.space.names, &mut report);
    cont("inverse_continuous_tau2", &inverse, &gf.space.topo2, &space.topo2, &gf.space.names, &mut report);
    let alpha_pres = |f: &[usize], src: &AlphaAssignment, dst: &AlphaAssignment, names: &[String]| {
        let mut bad = None;
        for (i, img) in src.images.iter().enumerate() {
            if let Some(p) = img.iter().find(|&p| !dst.images[i].contains(f[p])) {
                bad = Some(witness!("subalgebra" => src.subalgebra_name(i), "point" => names[p]));
                break;
            }
        }
        Verdict::from_witness(bad)
    };
    report.verdicts.insert("alpha_preserving", alpha_pres(&map, alpha, &gf.alpha, &space.names));
    report.verdicts.insert("inverse_alpha_preserving", alpha_pres(&inverse, &gf.alpha, alpha, &gf.space.names));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::DEFAULT_BUDGET;

    fn lvl(n: usize) -> Algebra {
        make_lvl(Arc::new(FiniteLattice::chain(n)))
    }

    #[test]
    fn dual_of_chains_is_one_point() {
        let d = dual_space_g(&lvl(2)).unwrap();
        assert_eq!(d.homs.len(), 1);
        assert!(d.checks.pass());
        let d = dual_space_g(&lvl(3)).unwrap();
        assert_eq!(d.homs.len(), 1);
        let l = FiniteLattice::chain(3);
        let two = l.set_of(&["0", "1"]).unwrap();
        assert!(d.alpha.image_of(&two).unwrap().is_empty());
    }

    #[test]
    fn dual_of_square_is_two_discrete_points() {
        let l = Arc::new(FiniteLattice::chain(2));
        let sq = Algebra::lattice_power(l, 2, Signature::Lvl).unwrap();
        let d = dual_space_g(&sq).unwrap();
        assert_eq!(d.homs.len(), 2);
        assert!(d.space.topo1.is_discrete() && d.space.topo2.is_discrete());
    }

    #[test]
    fn algebra_f_examples() {
        let l = Arc::new(FiniteLattice::chain(2));
        let one = BitopSpace::new(vec!["p".into()], Topology::discrete(1), Topology::discrete(1)).unwrap();
        let f = algebra_f(&one, &AlphaAssignment::trivial(l.clone(), 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(f.len(), 2);
        let two = BitopSpace::new(vec!["p".into(), "q".into()], Topology::discrete(2), Topology::discrete(2)).unwrap();
        let f = algebra_f(&two, &AlphaAssignment::trivial(l, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(f.len(), 4);

        let l3 = Arc::new(FiniteLattice::chain(3));
        let mut alpha = AlphaAssignment::trivial(l3.clone(), 2);
        let i = alpha.index_of(&l3.set_of(&["0", "1"]).unwrap()).unwrap();
        alpha.images[i] = BitSet::full(2);
        let f = algebra_f(&two, &alpha, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.names().iter().all(|n| !n.contains('m')));
    }

    #[test]
    fn beta_on_chains() {
        for (n, card) in [(2, 2), (3, 3)] {
            let r = nat_beta_verify(&lvl(n), DEFAULT_BUDGET).unwrap();
            assert!(r.pass(), "{r:#?}");
            assert_eq!(r.cardinalities["F(G(A))"], card);
        }
    }

    #[test]
    fn zeta_on_discrete_l() {
        let l = Arc::new(FiniteLattice::chain(3));
        let s = BitopSpace::new(l.names().to_vec(), Topology::discrete(3), Topology::discrete(3)).unwrap();
        let subs = crate::order::enumerate_subalgebras(&l, crate::order::SubalgebraSignature::Lvl);
        let alpha = AlphaAssignment { truth: l, images: subs.clone(), subalgebras: subs };
        let r = nat_zeta_verify(&s, &alpha, DEFAULT_BUDGET).unwrap();
        assert!(r.pass(), "{r:#?}");
    }
}
