//! The dual functors on arrows, by precomposition, and functoriality checks.

use std::sync::Arc;

use crate::algebra::{is_homomorphism, Algebra, Homomorphism, Signature};
use crate::error::{Error, Result};
use crate::order::FiniteLattice;
use crate::topology::{verify_hspa_morphism, verify_pbs_morphism, verify_pspa_morphism};
use crate::verdict::{Checks, Verdict};
use crate::witness;

use super::{dual_hspa_gi, dual_pspa_g, dual_space_g, hom_index, Mode, OrderedDual, PbsDual};

/// The signature whose homomorphisms are the arrows of `mode` on the
/// algebra side.
pub fn arrow_signature(mode: Mode) -> Signature {
    match mode {
        Mode::Pbs => Signature::Lvl,
        Mode::Pspa => Signature::Bdl,
        Mode::Hspa => Signature::IspI,
    }
}

/// A dual space in any mode, with its points as homomorphisms.
#[derive(Clone, Debug)]
pub enum DualObject {
    Pbs(PbsDual),
    Ordered(OrderedDual),
}

impl DualObject {
    pub fn homs(&self) -> &[Homomorphism] {
        match self {
            DualObject::Pbs(d) => &d.homs,
            DualObject::Ordered(d) => &d.homs,
        }
    }

    pub fn checks(&self) -> &Checks {
        match self {
            DualObject::Pbs(d) => &d.checks,
            DualObject::Ordered(d) => &d.checks,
        }
    }

    pub fn point_names(&self) -> &[String] {
        match self {
            DualObject::Pbs(d) => &d.space.names,
            DualObject::Ordered(d) => d.space.names(),
        }
    }
}

/// `G(A)` in the given mode. `l` is only consulted in `pspa` mode; the other
/// modes use the algebra's own truth lattice.
pub fn dual_object(mode: Mode, a: &Algebra, l: Arc<FiniteLattice>) -> Result<DualObject> {
    Ok(match mode {
        Mode::Pbs => DualObject::Pbs(dual_space_g(a)?),
        Mode::Pspa => DualObject::Ordered(dual_pspa_g(&a.reduct(Signature::Bdl)?, l)?),
        Mode::Hspa => DualObject::Ordered(dual_hspa_gi(a)?),
    })
}

/// `G(h)(μ) = μ ∘ h` for `h: A1 → A2`, as a map from the points of `G(A2)`
/// to the points of `G(A1)`; `None` where `μ ∘ h` is not a point.
pub fn dual_of_hom(h: &Homomorphism, g_a1: &DualObject, g_a2: &DualObject) -> Vec<Option<usize>> {
    let index = hom_index(g_a1.homs());
    g_a2.homs().iter().map(|mu| index.get(h.then(mu).images()).copied()).collect()
}

/// `C(f)(φ) = φ ∘ f` for a map `f: S1 → S2`, from `C(S2)` to `C(S1)`.
pub fn dual_of_space_map(f: &[usize], c_s1: &Algebra, c_s2: &Algebra) -> Vec<Option<usize>> {
    let (p1, p2) = (c_s1.presentation().expect("function algebra"), c_s2.presentation().expect("function algebra"));
    (0..c_s2.len())
        .map(|phi| {
            let v: Vec<usize> = f.iter().map(|&y| p2.value(phi, y)).collect();
            p1.index_of(&v)
        })
        .collect()
}

/// Result of applying a dual functor to one arrow.
#[derive(Clone, Debug)]
pub struct MorphismDual {
    pub map: Option<Vec<usize>>,
    pub checks: Checks,
}

fn total(map: &[Option<usize>], names: &[String], checks: &mut Checks) -> Option<Vec<usize>> {
    let missing = map.iter().position(Option::is_none);
    checks.insert("well_defined", Verdict::from_witness(missing.map(|i| witness!("point" => names[i]))));
    missing.is_none().then(|| map.iter().map(|y| y.unwrap()).collect())
}

fn require_arrow(h: &[usize], a1: &Algebra, a2: &Algebra, sig: Signature) -> Result<()> {
    if let Some(w) = is_homomorphism(h, a1, a2, sig)? {
        return Err(Error::CategoryMismatch(format!("not a {sig} homomorphism: {w}")));
    }
    Ok(())
}

/// Applies `G` (or `G_I`) to `h: A1 → A2` and checks the result is an arrow
/// of the space category. `h` must be an arrow of the algebra category.
pub fn algebra_morphism_dual(
    mode: Mode,
    h: &Homomorphism,
    (a1, g_a1): (&Algebra, &DualObject),
    (a2, g_a2): (&Algebra, &DualObject),
) -> Result<MorphismDual> {
    require_arrow(h.images(), a1, a2, arrow_signature(mode))?;
    let mut checks = Checks::new();
    let map = total(&dual_of_hom(h, g_a1, g_a2), g_a2.point_names(), &mut checks);
    if let Some(m) = &map {
        let arrow = match (g_a1, g_a2) {
            (DualObject::Pbs(d1), DualObject::Pbs(d2)) => {
                verify_pbs_morphism(m, (&d2.space, &d2.alpha), (&d1.space, &d1.alpha))?
            }
            (DualObject::Ordered(d1), DualObject::Ordered(d2)) if mode == Mode::Hspa => {
                verify_hspa_morphism(m, &d2.space, &d1.space)?
            }
            (DualObject::Ordered(d1), DualObject::Ordered(d2)) => verify_pspa_morphism(m, &d2.space, &d1.space)?,
            _ => return Err(Error::CategoryMismatch("duals from different modes".into())),
        };
        checks.absorb("arrow", arrow);
    }
    Ok(MorphismDual { map, checks })
}

/// Applies `F`, `C` or `C_I` to a space map `f: S1 → S2`, given the
/// reconstructed algebras, and checks the result is an algebra arrow.
pub fn space_morphism_dual(mode: Mode, f: &[usize], c_s1: &Algebra, c_s2: &Algebra) -> MorphismDual {
    let mut checks = Checks::new();
    let names = c_s2.names().to_vec();
    let map = total(&dual_of_space_map(f, c_s1, c_s2), &names, &mut checks);
    if let Some(m) = &map {
        let w = is_homomorphism(m, c_s2, c_s1, arrow_signature(mode)).unwrap_or_else(|e| {
            Some(crate::algebra::HomWitness {
                symbol: e.to_string(),
                args: vec![],
                expected: String::new(),
                actual: String::new(),
            })
        });
        checks.insert("homomorphism", Verdict::from_witness(w.map(|w| witness!("violation" => w))));
    }
    MorphismDual { map, checks }
}

/// `dual(id) = id` and `dual(g ∘ f) = dual(f) ∘ dual(g)`, given the three
/// dual maps. `dual_f: D(B) → D(A)`, `dual_g: D(C) → D(B)`,
/// `dual_gf: D(C) → D(A)`, `dual_id: D(A) → D(A)`.
pub fn functoriality_checks(
    dual_f: &[Option<usize>],
    dual_g: &[Option<usize>],
    dual_gf: &[Option<usize>],
    dual_id: &[Option<usize>],
    names_c: &[String],
    names_a: &[String],
) -> Checks {
    let mut checks = Checks::new();
    let bad_id = (0..dual_id.len()).find(|&p| dual_id[p] != Some(p));
    checks.insert("identity", Verdict::from_witness(bad_id.map(|p| witness!("point" => names_a[p]))));
    let bad = (0..dual_gf.len()).find(|&mu| {
        let via = dual_g[mu].and_then(|nu| dual_f[nu]);
        via.is_none() || via != dual_gf[mu]
    });
    checks.insert(
        "composition",
        Verdict::from_witness(bad.map(|mu| {
            let show = |p: Option<usize>| p.map_or("⊥".to_string(), |p| names_a[p].clone());
            witness!(
                "point" => names_c[mu],
                "dual(g∘f)" => show(dual_gf[mu]),
                "dual(f)∘dual(g)" => show(dual_g[mu].and_then(|nu| dual_f[nu])),
            )
        })),
    );
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_of_two_chain_in_three_chain() {
        let c2 = Arc::new(FiniteLattice::chain(2));
        let a2 = Algebra::from_lattice(c2.clone(), Signature::Bdl);
        let a3 = Algebra::from_lattice(Arc::new(FiniteLattice::chain(3)), Signature::Bdl);
        let h = Homomorphism::new(vec![0, 2]);
        let g2 = dual_object(Mode::Pspa, &a2, c2.clone()).unwrap();
        let g3 = dual_object(Mode::Pspa, &a3, c2.clone()).unwrap();
        let d = algebra_morphism_dual(Mode::Pspa, &h, (&a2, &g2), (&a3, &g3)).unwrap();
        assert_eq!(d.map, Some(vec![0, 0]));
        assert!(d.checks.pass(), "{:#?}", d.checks);
        let bad = Homomorphism::new(vec![0, 1]);
        assert!(matches!(
            algebra_morphism_dual(Mode::Pspa, &bad, (&a2, &g2), (&a3, &g3)),
            Err(Error::CategoryMismatch(_))
        ));
    }
}
