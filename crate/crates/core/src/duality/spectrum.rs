//! Homomorphisms into the truth lattice versus prime filters.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{enumerate_homs_with, is_homomorphism, Algebra, Signature};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::order::{is_prime_filter, prime_filters, prime_ideals, FiniteLattice};
use crate::verdict::{Checks, Verdict};
use crate::witness;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub algebra: String,
    pub truth: String,
    pub homs: usize,
    pub prime_filters: usize,
    /// Each homomorphism with the filter `v⁻¹(1)`.
    pub correspondence: Vec<(String, String)>,
    pub verdicts: Checks,
}

impl SpectrumReport {
    pub fn pass(&self) -> bool {
        self.verdicts.pass()
    }
}

/// For `L = 2`, checks that `v ↦ v⁻¹(1)` is a bijection from lattice
/// homomorphisms `A → L` onto prime filters of `A`, and that each prime
/// filter's indicator is a homomorphism. For other `L` only the counts are
/// reported.
pub fn prime_spectrum_correspondence(a: &Algebra, l: Arc<FiniteLattice>) -> Result<SpectrumReport> {
    let a = a.reduct(Signature::Bdl)?;
    let lat = a.lattice()?;
    let target = Algebra::from_lattice(l.clone(), Signature::Bdl);
    let homs = enumerate_homs_with(&a, &target, Signature::Bdl)?;
    let filters = prime_filters(&lat);
    let mut report = SpectrumReport {
        algebra: a.name().to_string(),
        truth: l.name().to_string(),
        homs: homs.len(),
        prime_filters: filters.len(),
        correspondence: Vec::new(),
        verdicts: Checks::new(),
    };
    if l.len() != 2 {
        let note = format!(
            "general truth lattice: |Hom(A, L)| = {}, |prime ideals of L| = {}; the correspondence is not evaluated",
            homs.len(),
            prime_ideals(&l).len()
        );
        report.verdicts.insert_info("general_l", Verdict::pass().with_note(note));
        return Ok(report);
    }
    let n = a.len();
    let mut hit = vec![None; filters.len()];
    let mut not_prime = None;
    let mut collision = None;
    for (vi, v) in homs.iter().enumerate() {
        let p = BitSet::from_indices(n, (0..n).filter(|&x| v.apply(x) == l.top()));
        report.correspondence.push((v.display(l.names()), p.display_with(a.names())));
        if !is_prime_filter(&lat, &p) {
            not_prime.get_or_insert(vi);
            continue;
        }
        if let Some(fi) = filters.iter().position(|f| *f == p) {
            match hit[fi] {
                Some(prev) => {
                    collision.get_or_insert((prev, vi));
                }
                None => hit[fi] = Some(vi),
            }
        }
    }
    let hname = |i: usize| homs[i].display(l.names());
    report
        .verdicts
        .insert("preimage_is_prime_filter", Verdict::from_witness(not_prime.map(|v| witness!("hom" => hname(v)))));
    report.verdicts.insert(
        "injective",
        Verdict::from_witness(collision.map(|(x, y)| witness!("v1" => hname(x), "v2" => hname(y)))),
    );
    let missed = hit.iter().position(Option::is_none);
    report.verdicts.insert(
        "surjective",
        Verdict::from_witness(missed.map(|f| witness!("filter" => filters[f].display_with(a.names())))),
    );
    let mut bad_inverse = None;
    for f in &filters {
        let h: Vec<usize> = (0..n).map(|x| if f.contains(x) { l.top() } else { l.bottom() }).collect();
        if let Some(w) = is_homomorphism(&h, &a, &target, Signature::Bdl)? {
            bad_inverse = Some(witness!("filter" => f.display_with(a.names()), "violation" => w));
            break;
        }
    }
    report.verdicts.insert("inverse_is_homomorphism", Verdict::from_witness(bad_inverse));
    Ok(report)
}
