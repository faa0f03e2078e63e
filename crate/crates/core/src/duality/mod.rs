//! Dual spaces, reconstructed algebras, the natural maps between an object
//! and its double dual, and functoriality checks.
//!
//! Three modes:
//! - `pbs`: L-VL algebras and pairwise Boolean spaces with an α-assignment;
//! - `pspa`: lattices in ISP(L) and Priestley-style ordered spaces;
//! - `hspa`: algebras with a Kripke implication and Esakia-style spaces.

mod functor;
mod ordered;
mod pbs;
mod spectrum;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{AlgebraError, Homomorphism};
use crate::error::{Error, Result};
use crate::order::FiniteLattice;
use crate::verdict::{Checks, Verdict, Witness};
use crate::witness;

pub use functor::*;
pub use ordered::*;
pub use pbs::*;
pub use spectrum::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pbs,
    Pspa,
    Hspa,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Pbs, Mode::Pspa, Mode::Hspa];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Pbs => "pbs",
            Mode::Pspa => "pspa",
            Mode::Hspa => "hspa",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pbs" => Ok(Mode::Pbs),
            "pspa" => Ok(Mode::Pspa),
            "hspa" => Ok(Mode::Hspa),
            other => Err(format!("unknown mode `{other}` (expected pbs, pspa or hspa)")),
        }
    }
}

/// Outcome of checking one natural map on one object. Serializes with a
/// `witnesses` list gathered from the failing checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub mode: Mode,
    pub natural_map: String,
    pub object: String,
    /// Source element or point name to image name.
    pub map: Vec<(String, String)>,
    pub inverse: Option<Vec<(String, String)>>,
    pub verdicts: Checks,
    pub cardinalities: BTreeMap<String, usize>,
}

impl DualityReport {
    fn new(mode: Mode, natural_map: &str, object: &str) -> Self {
        DualityReport {
            mode,
            natural_map: natural_map.to_string(),
            object: object.to_string(),
            map: Vec::new(),
            inverse: None,
            verdicts: Checks::new(),
            cardinalities: BTreeMap::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.verdicts.pass()
    }

    /// `(check, witness)` for every failing check that carries one.
    pub fn witnesses(&self) -> Vec<NamedWitness> {
        self.verdicts
            .failures()
            .filter_map(|(k, v)| v.witness.clone().map(|w| NamedWitness { check: k.clone(), witness: w }))
            .collect()
    }

    fn cardinality(&mut self, name: &str, n: usize) {
        self.cardinalities.insert(name.to_string(), n);
    }

    /// Records a construction that could not be completed as a failed verdict.
    fn construction_failed(mut self, stage: &str, reason: Verdict) -> Self {
        self.verdicts.insert(&format!("construct_{stage}"), reason);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedWitness {
    pub check: String,
    pub witness: Witness,
}

impl Serialize for DualityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DualityReport", 8)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("natural_map", &self.natural_map)?;
        st.serialize_field("object", &self.object)?;
        st.serialize_field("pass", &self.pass())?;
        st.serialize_field("verdicts", &self.verdicts)?;
        st.serialize_field("witnesses", &self.witnesses())?;
        st.serialize_field("cardinalities", &self.cardinalities)?;
        st.serialize_field("map", &self.map)?;
        if let Some(inv) = &self.inverse {
            st.serialize_field("inverse", inv)?;
        } else {
            st.skip_field("inverse")?;
        }
        st.end()
    }
}

/// Splits construction errors that amount to a failed verdict (budget,
/// degenerate or non-closed carriers) from genuine input errors.
pub(crate) fn soft<T>(r: Result<T>) -> Result<std::result::Result<T, Verdict>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::BudgetExceeded { .. })
        | Err(e @ Error::Algebra(AlgebraError::Degenerate(_)))
        | Err(e @ Error::Algebra(AlgebraError::NotClosed { .. }))
        | Err(e @ Error::Algebra(AlgebraError::TooLarge { .. })) => Ok(Err(Verdict::fail(witness!("error" => e)))),
        Err(e) => Err(e),
    }
}

pub(crate) fn hom_index(homs: &[Homomorphism]) -> HashMap<&[usize], usize> {
    homs.iter().enumerate().map(|(i, h)| (h.images(), i)).collect()
}

/// Point names for a dual space: each homomorphism's image vector.
pub fn hom_point_names(homs: &[Homomorphism], l: &FiniteLattice) -> Vec<String> {
    homs.iter().map(|h| h.display(l.names())).collect()
}

/// Well-definedness, injectivity and surjectivity of a map given as
/// optional images (None = image outside the target). Returns the total map
/// and its inverse when they exist.
pub(crate) fn bijection_checks(
    report: &mut DualityReport,
    images: &[Option<usize>],
    src_names: &[String],
    dst_names: &[String],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let undefined = images.iter().position(Option::is_none);
    report
        .verdicts
        .insert("well_defined", Verdict::from_witness(undefined.map(|x| witness!("element" => src_names[x]))));
    report.map = images
        .iter()
        .enumerate()
        .map(|(x, y)| {
            let img = y.map_or_else(|| "⊥".to_string(), |y| dst_names[y].clone());
            (src_names[x].clone(), img)
        })
        .collect();
    let mut preimage: Vec<Option<usize>> = vec![None; dst_names.len()];
    let mut collision = None;
    for (x, y) in images.iter().enumerate() {
        if let Some(y) = *y {
            match preimage[y] {
                Some(x0) if collision.is_none() => collision = Some((x0, x)),
                None => preimage[y] = Some(x),
                _ => {}
            }
        }
    }
    report.verdicts.insert(
        "injective",
        Verdict::from_witness(collision.map(|(a, b)| witness!("x" => src_names[a], "y" => src_names[b]))),
    );
    let missed = preimage.iter().position(Option::is_none);
    report.verdicts.insert("surjective", Verdict::from_witness(missed.map(|y| witness!("missed" => dst_names[y]))));
    if undefined.is_some() || collision.is_some() || missed.is_some() {
        return None;
    }
    let map: Vec<usize> = images.iter().map(|y| y.unwrap()).collect();
    let inverse: Vec<usize> = preimage.iter().map(|x| x.unwrap()).collect();
    report.inverse =
        Some(inverse.iter().enumerate().map(|(y, &x)| (dst_names[y].clone(), src_names[x].clone())).collect());
    Some((map, inverse))
}
