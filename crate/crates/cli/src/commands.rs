//! One function per subcommand. Each returns the checks and the
//! command-specific details for the run report.

use std::sync::Arc;

use duality_core::algebra::{check_lvl_axioms, enumerate_homs_with, Algebra, Signature};
use duality_core::corpus::{corpus_run, CorpusConfig};
use duality_core::document::{
    algebra_document, bitop_space_document, builtin_lattice, ordered_space_document, serialize_document, Document,
    DocumentError,
};
use duality_core::duality::{
    algebra_c, algebra_ci, algebra_f, delta_i_verify, delta_verify, dual_hspa_gi, dual_pspa_g, dual_space_g,
    nat_beta_verify, nat_zeta_verify, prime_spectrum_correspondence, sigma_i_verify, sigma_verify, DualityReport, Mode,
};
use duality_core::error::Error;
use duality_core::kripke::{intuitionistic_power, kripke_condition_check, subalgebra_generated};
use duality_core::order::{enumerate_subalgebras, FiniteLattice, OrderError, SubalgebraSignature};
use duality_core::topology::{verify_hspa_object, verify_pbs_object, verify_pspa_object, OrderedSpace, TopologyError};
use duality_core::verdict::{Checks, Verdict};
use duality_core::witness;
use serde_json::{json, Value};

use crate::load::{InputError, Loaded};

pub struct Context {
    pub loaded: Loaded,
    pub budget: usize,
    pub truth: Option<String>,
    /// Document produced by the command, for `--emit`.
    pub emitted: Option<Document>,
}

pub type Outcome = Result<(Checks, Value), InputError>;

/// Runs `f`, turning a budget overrun into a failed `budget` check.
fn soft(f: impl FnOnce() -> Result<(Checks, Value), Error>) -> Outcome {
    match f() {
        Ok(x) => Ok(x),
        Err(e @ Error::BudgetExceeded { .. }) => {
            let mut c = Checks::new();
            c.insert("budget", Verdict::fail(witness!("error" => e)));
            Ok((c, json!({ "summary": [e.to_string()] })))
        }
        Err(e) => Err(e.into()),
    }
}

impl Context {
    fn kind(&self, name: &str) -> &'static str {
        if builtin_lattice(name).is_some() {
            return "lattice";
        }
        self.loaded.ws.get(name).map_or("missing", Document::kind)
    }

    fn lattice(&self, name: &str) -> Result<Arc<FiniteLattice>, InputError> {
        Ok(self.loaded.ws.lattice(name)?)
    }

    /// The subject as an algebra: lattices are taken in `sig`, algebra
    /// documents as declared.
    fn algebra(&self, name: &str, sig: Signature) -> Result<Algebra, Error> {
        match self.kind(name) {
            "lattice" => Ok(Algebra::from_lattice(self.loaded.ws.lattice(name)?, sig)),
            "algebra" => self.loaded.ws.algebra(name, self.budget),
            other => Err(DocumentError::Schema {
                line: None,
                column: None,
                message: format!("`{name}` is a {other}, expected a lattice or an algebra"),
            }
            .into()),
        }
    }

    /// `--truth` if given, else `fallback`, else the two-element chain.
    fn truth_or(&mut self, fallback: Option<Arc<FiniteLattice>>) -> Result<Arc<FiniteLattice>, InputError> {
        if let Some(t) = self.truth.clone() {
            let name = self.loaded.add(&t)?;
            self.loaded.resolve()?;
            return self.lattice(&name);
        }
        Ok(fallback.unwrap_or_else(|| Arc::new(builtin_lattice("std:chain2").expect("built-in"))))
    }

    fn space_truth(&mut self, name: &str) -> Result<Arc<FiniteLattice>, InputError> {
        let declared = self.loaded.ws.space_truth(name)?;
        self.truth_or(declared)
    }
}

fn usage(msg: impl Into<String>) -> InputError {
    InputError::Usage(msg.into())
}

/// A lattice document that parsed but is not a bounded distributive lattice.
fn lattice_law_violation(e: &InputError) -> Option<(&str, &str, &Error)> {
    let InputError::Document { source, .. } = e else { return None };
    match source.as_ref() {
        DocumentError::Invalid { document, field, source } => match source.as_ref() {
            Error::Order(o) if is_lattice_law(o) => Some((document, field, source)),
            _ => None,
        },
        _ => None,
    }
}

fn is_lattice_law(e: &OrderError) -> bool {
    matches!(
        e,
        OrderError::NotAPoset { .. }
            | OrderError::MissingMeet { .. }
            | OrderError::MissingJoin { .. }
            | OrderError::WrongBottom { .. }
            | OrderError::WrongTop { .. }
            | OrderError::NotDistributive { .. }
            | OrderError::Degenerate
    )
}

/// Lattice-law violations are failed verdicts here rather than input errors.
pub fn check_lattice(ctx: &mut Context, file: &str) -> Outcome {
    match ctx.loaded.add(file) {
        Ok(name) => {
            let l = ctx.lattice(&name)?;
            let mut c = Checks::new();
            c.insert("bounded_distributive_lattice", Verdict::pass());
            let covers: Vec<(String, String)> = l
                .order()
                .covers()
                .into_iter()
                .map(|(a, b)| (l.name_of(a).to_string(), l.name_of(b).to_string()))
                .collect();
            let summary = vec![format!("{}: {} elements, {} covering pairs", l.name(), l.len(), covers.len())];
            Ok((c, json!({ "name": l.name(), "elements": l.names(), "covers": covers, "summary": summary })))
        }
        Err(e) => match lattice_law_violation(&e) {
            Some((document, field, source)) => {
                let mut c = Checks::new();
                c.insert(
                    "bounded_distributive_lattice",
                    Verdict::fail(witness!("document" => document, "field" => field, "error" => source)),
                );
                Ok((c, json!({ "name": document })))
            }
            None => Err(e),
        },
    }
}

pub fn axioms(ctx: &mut Context, file: &str, literal_iv: bool) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    soft(|| {
        let a = ctx.algebra(&name, Signature::Lvl)?;
        let r = check_lvl_axioms(&a, literal_iv)?;
        let mut c = Checks::new();
        for clause in &r.clauses {
            let w = clause.witnesses.first().map(|w| {
                let mut m = witness!("law" => w.law);
                m.extend(w.bindings.iter().cloned());
                m
            });
            let v = Verdict { pass: clause.pass, witness: w, note: None };
            let v = if clause.counterexamples > 0 {
                v.with_note(format!("{} counterexamples", clause.counterexamples))
            } else {
                v
            };
            c.insert(&format!("clause_{}", clause.clause), v);
        }
        Ok((c, serde_json::to_value(&r).expect("serializable")))
    })
}

pub fn subalgebras(ctx: &mut Context, file: &str, sig: SubalgebraSignature) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    let l = ctx.lattice(&name)?;
    let subs: Vec<String> = enumerate_subalgebras(&l, sig).iter().map(|s| s.display_with(l.names())).collect();
    let summary: Vec<String> =
        std::iter::once(format!("{} subalgebras", subs.len())).chain(subs.iter().cloned()).collect();
    Ok((Checks::new(), json!({ "lattice": l.name(), "count": subs.len(), "subalgebras": subs, "summary": summary })))
}

fn common_signature(a: Signature, b: Signature) -> Signature {
    match (a, b) {
        (Signature::Lvl, Signature::Lvl) => Signature::Lvl,
        (x, y) if x.has_imp() && y.has_imp() => {
            if x == Signature::IspI || y == Signature::IspI {
                Signature::IspI
            } else {
                Signature::Heyting
            }
        }
        _ => Signature::Bdl,
    }
}

pub fn homs(ctx: &mut Context, file: &str, into: &str, sig: Option<Signature>) -> Outcome {
    let a_name = ctx.loaded.add(file)?;
    let b_name = ctx.loaded.add(into)?;
    ctx.loaded.resolve()?;
    soft(|| {
        let default = sig.unwrap_or(Signature::Bdl);
        let a = ctx.algebra(&a_name, default)?;
        let b = ctx.algebra(&b_name, default)?;
        let sig = sig.unwrap_or_else(|| common_signature(a.signature(), b.signature()));
        let hs = enumerate_homs_with(&a, &b, sig)?;
        let maps: Vec<Vec<(String, String)>> = hs
            .iter()
            .map(|h| (0..a.len()).map(|x| (a.name_of(x).to_string(), b.name_of(h.apply(x)).to_string())).collect())
            .collect();
        let summary: Vec<String> =
            std::iter::once(format!("{} {sig} homomorphisms {} -> {}", hs.len(), a.name(), b.name()))
                .chain(hs.iter().map(|h| h.display(b.names())))
                .collect();
        Ok((
            Checks::new(),
            json!({ "source": a.name(), "target": b.name(), "signature": sig, "count": hs.len(), "homs": maps, "summary": summary }),
        ))
    })
}

fn algebra_summary(a: &Algebra) -> Value {
    json!({
        "name": a.name(),
        "signature": a.signature(),
        "size": a.len(),
        "elements": a.names(),
        "summary": [format!("{}: {} elements ({})", a.name(), a.len(), a.signature())],
    })
}

pub fn power(ctx: &mut Context, lattice: &str, frame: &str) -> Outcome {
    let l_name = ctx.loaded.add(lattice)?;
    let w_name = ctx.loaded.add(frame)?;
    ctx.loaded.resolve()?;
    let l = ctx.lattice(&l_name)?;
    let w = ctx.loaded.ws.frame(&w_name)?;
    let mut emitted = None;
    let out = soft(|| {
        let a = intuitionistic_power(l, &w, ctx.budget)?.with_name(&format!("{l_name}^{w_name}"));
        emitted = Some(Document::Algebra(algebra_document(&a)));
        Ok((Checks::new(), algebra_summary(&a)))
    });
    ctx.emitted = emitted;
    out
}

pub fn generate(ctx: &mut Context, file: &str, gens: &[String]) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    let mut emitted = None;
    let out = soft(|| {
        let a = ctx.algebra(&name, Signature::Bdl)?;
        let idx = gens.iter().map(|g| a.index_of(g)).collect::<Result<Vec<_>, _>>()?;
        let s = subalgebra_generated(&a, &idx)?.with_name(&format!("<{}>", gens.join(",")));
        emitted = Some(Document::Algebra(algebra_document(&s)));
        Ok((Checks::new(), algebra_summary(&s)))
    });
    ctx.emitted = emitted;
    out
}

fn require_imp(a: &Algebra) -> Result<(), InputError> {
    if !a.has_imp() || a.truth().is_none() {
        return Err(usage(format!(
            "`{}` needs an implication and a truth lattice (signature isp_i or lvl) in hspa mode",
            a.name()
        )));
    }
    Ok(())
}

fn mode_signature(mode: Mode) -> Signature {
    match mode {
        Mode::Pbs => Signature::Lvl,
        Mode::Pspa => Signature::Bdl,
        Mode::Hspa => Signature::IspI,
    }
}

pub fn dualize(ctx: &mut Context, file: &str, mode: Mode) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    let a = match ctx.algebra(&name, mode_signature(mode)) {
        Ok(a) => a,
        Err(e @ Error::BudgetExceeded { .. }) => return soft(|| Err(e)),
        Err(e) => return Err(e.into()),
    };
    let space_name = format!("G({name})");
    match mode {
        Mode::Pbs => {
            let d = dual_space_g(&a)?;
            ctx.emitted = Some(Document::Space(bitop_space_document(&space_name, &d.space, &d.alpha)));
            let alpha: Vec<(String, Vec<String>)> = (0..d.alpha.subalgebras.len())
                .map(|i| {
                    let pts = d.alpha.images[i].iter().map(|p| d.space.names[p].clone()).collect();
                    (d.alpha.subalgebra_name(i), pts)
                })
                .collect();
            let details = json!({
                "mode": mode,
                "object": name,
                "points": d.space.names,
                "alpha": alpha,
                "summary": [format!("{space_name}: {} points", d.space.len())],
            });
            Ok((d.checks, details))
        }
        Mode::Pspa | Mode::Hspa => {
            let d = if mode == Mode::Pspa {
                let l = ctx.truth_or(None)?;
                dual_pspa_g(&a.reduct(Signature::Bdl).map_err(Error::from)?, l)?
            } else {
                require_imp(&a)?;
                dual_hspa_gi(&a)?
            };
            ctx.emitted = Some(Document::Space(ordered_space_document(&space_name, &d.space, Some(d.truth.name()))));
            let order: Vec<(String, String)> = d
                .space
                .order
                .covers()
                .into_iter()
                .map(|(x, y)| (d.space.names()[x].clone(), d.space.names()[y].clone()))
                .collect();
            let details = json!({
                "mode": mode,
                "object": name,
                "truth": d.truth.name(),
                "points": d.space.names(),
                "order": order,
                "summary": [format!("{space_name}: {} points", d.space.len())],
            });
            Ok((d.checks, details))
        }
    }
}

fn ordered_space(ctx: &Context, name: &str) -> Result<OrderedSpace, InputError> {
    Ok(ctx.loaded.ws.ordered_space(name)?)
}

fn expect_space(ctx: &Context, name: &str) -> Result<(), InputError> {
    match ctx.kind(name) {
        "space" => Ok(()),
        other => Err(usage(format!("`{name}` is a {other}, expected a space"))),
    }
}

pub fn reconstruct(ctx: &mut Context, file: &str, mode: Mode) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    expect_space(ctx, &name)?;
    let algebra_name = format!("C({name})");
    let budget = ctx.budget;
    let (a, mut checks) = match mode {
        Mode::Pbs => {
            let (space, alpha) = ctx.loaded.ws.bitop_space(&name)?;
            let checks = verify_pbs_object(&space, &alpha).map_err(Error::from)?;
            match algebra_f(&space, &alpha, budget) {
                Ok(a) => (a, checks),
                Err(e) => return soft(|| Err(e)),
            }
        }
        Mode::Pspa => {
            let x = ordered_space(ctx, &name)?;
            let l = ctx.space_truth(&name)?;
            match algebra_c(&x, l, budget) {
                Ok(a) => (a, verify_pspa_object(&x)),
                Err(e) => return soft(|| Err(e)),
            }
        }
        Mode::Hspa => {
            let x = ordered_space(ctx, &name)?;
            let l = ctx.space_truth(&name)?;
            let checks = hspa_object_checks(&x)?;
            match algebra_ci(&x, l, budget) {
                Ok((a, level_sets)) => {
                    let mut checks = checks;
                    checks.absorb("c_i", level_sets);
                    (a, checks)
                }
                Err(e) => return soft(|| Err(e)),
            }
        }
    };
    let a = a.with_name(&algebra_name);
    checks.insert("constructed", Verdict::pass());
    ctx.emitted = Some(Document::Algebra(algebra_document(&a)));
    Ok((checks, algebra_summary(&a)))
}

fn hspa_object_checks(x: &OrderedSpace) -> Result<Checks, InputError> {
    match verify_hspa_object(x) {
        Ok(c) => Ok(c),
        Err(TopologyError::PspaInvalid { x, y }) => {
            let mut c = Checks::new();
            c.insert("priestley_separation", Verdict::fail(witness!("x" => x, "y" => y)));
            Ok(c)
        }
        Err(e) => Err(Error::from(e).into()),
    }
}

pub fn verify_space(ctx: &mut Context, file: &str, mode: Mode) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    expect_space(ctx, &name)?;
    let checks = match mode {
        Mode::Pbs => {
            let (space, alpha) = ctx.loaded.ws.bitop_space(&name)?;
            verify_pbs_object(&space, &alpha).map_err(Error::from)?
        }
        Mode::Pspa => verify_pspa_object(&ordered_space(ctx, &name)?),
        Mode::Hspa => hspa_object_checks(&ordered_space(ctx, &name)?)?,
    };
    Ok((checks, json!({ "mode": mode, "object": name })))
}

fn duality_outcome(reports: Vec<DualityReport>) -> (Checks, Value) {
    let mut checks = Checks::new();
    let mut summary = Vec::new();
    for r in &reports {
        checks.absorb(&r.natural_map, r.verdicts.clone());
        summary.push(format!("{} on {}: {}", r.natural_map, r.object, if r.pass() { "pass" } else { "FAIL" }));
    }
    (checks, json!({ "reports": reports, "summary": summary }))
}

pub fn roundtrip(ctx: &mut Context, file: &str, mode: Mode) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    let budget = ctx.budget;
    if ctx.kind(&name) == "space" {
        let reports = match mode {
            Mode::Pbs => {
                let (space, alpha) = ctx.loaded.ws.bitop_space(&name)?;
                let mut zeta = nat_zeta_verify(&space, &alpha, budget)?;
                zeta.object = name.clone();
                let mut out = vec![zeta];
                if let Ok(f) = algebra_f(&space, &alpha, budget) {
                    out.push(nat_beta_verify(&f.with_name(&format!("F({name})")), budget)?);
                }
                out
            }
            Mode::Pspa => {
                let x = ordered_space(ctx, &name)?;
                let l = ctx.space_truth(&name)?;
                let mut delta = delta_verify(&x, l.clone(), budget)?;
                delta.object = name.clone();
                let mut out = vec![delta];
                if let Ok(c) = algebra_c(&x, l.clone(), budget) {
                    out.push(sigma_verify(&c.with_name(&format!("C({name})")), l, budget)?);
                }
                out
            }
            Mode::Hspa => {
                let x = ordered_space(ctx, &name)?;
                let l = ctx.space_truth(&name)?;
                let mut delta = delta_i_verify(&x, l.clone(), budget)?;
                delta.object = name.clone();
                let mut out = vec![delta];
                if let Ok((c, _)) = algebra_ci(&x, l, budget) {
                    out.push(sigma_i_verify(&c.with_name(&format!("C_I({name})")), budget)?);
                }
                out
            }
        };
        return Ok(duality_outcome(reports));
    }
    let a = match ctx.algebra(&name, mode_signature(mode)) {
        Ok(a) => a,
        Err(e @ Error::BudgetExceeded { .. }) => return soft(|| Err(e)),
        Err(e) => return Err(e.into()),
    };
    let reports = match mode {
        Mode::Pbs => {
            let beta = nat_beta_verify(&a, budget)?;
            let d = dual_space_g(&a)?;
            let mut zeta = nat_zeta_verify(&d.space, &d.alpha, budget)?;
            zeta.object = format!("G({name})");
            vec![beta, zeta]
        }
        Mode::Pspa => {
            let l = ctx.truth_or(None)?;
            let sigma = sigma_verify(&a, l.clone(), budget)?;
            let d = dual_pspa_g(&a.reduct(Signature::Bdl).map_err(Error::from)?, l.clone())?;
            let mut delta = delta_verify(&d.space, l, budget)?;
            delta.object = format!("G({name})");
            vec![sigma, delta]
        }
        Mode::Hspa => {
            require_imp(&a)?;
            let sigma = sigma_i_verify(&a, budget)?;
            let d = dual_hspa_gi(&a)?;
            let mut delta = delta_i_verify(&d.space, d.truth.clone(), budget)?;
            delta.object = format!("G_I({name})");
            vec![sigma, delta]
        }
    };
    Ok(duality_outcome(reports))
}

pub fn kripke_check(ctx: &mut Context, file: &str) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    soft(|| {
        let a = ctx.algebra(&name, Signature::IspI)?;
        let r = kripke_condition_check(&a)?;
        let mut c = Checks::new();
        c.insert("kripke_condition", r.verdict.clone());
        Ok((c, json!({ "algebra": a.name(), "homs": r.homs })))
    })
}

pub fn spectrum(ctx: &mut Context, file: &str) -> Outcome {
    let name = ctx.loaded.add(file)?;
    ctx.loaded.resolve()?;
    let l = ctx.truth_or(None)?;
    let two_valued = l.len() == 2;
    soft(|| {
        let a = ctx.algebra(&name, Signature::Bdl)?;
        let r = prime_spectrum_correspondence(&a, l)?;
        let summary = vec![format!("{} homomorphisms, {} prime filters", r.homs, r.prime_filters)];
        let mut details = serde_json::to_value(&r).expect("serializable");
        details["summary"] = json!(summary);
        let mut checks = r.verdicts;
        if two_valued {
            checks.insert(
                "counts_equal",
                Verdict::from_witness(
                    (r.homs != r.prime_filters).then(|| witness!("homs" => r.homs, "prime_filters" => r.prime_filters)),
                ),
            );
        }
        Ok((checks, details))
    })
}

pub fn corpus(config: &CorpusConfig, timings: bool) -> (Checks, Value, std::collections::BTreeMap<String, u128>) {
    let r = corpus_run(config, timings);
    let mut c = Checks::new();
    let mut summary = vec![format!("{} lattices, {} frames", r.corpus.lattices.len(), r.corpus.frames.len())];
    for (name, s) in &r.suites {
        let w = (!s.pass).then(|| {
            let mut w = witness!("instances" => s.instances, "passed" => s.passed);
            if let Some(f) = s.failures.first() {
                w.insert("first_failure".into(), f.instance.clone());
                if let Some((check, _)) = f.failures.iter().next() {
                    w.insert("check".into(), check.clone());
                }
            }
            if let Some(n) = s.notes.first() {
                w.insert("note".into(), n.clone());
            }
            w
        });
        summary.push(format!("{name}: {}/{}", s.passed, s.instances));
        c.insert(name, Verdict::from_witness(w));
    }
    let mut details = serde_json::to_value(&r).expect("serializable");
    details["summary"] = json!(summary);
    if let Some(obj) = details.as_object_mut() {
        obj.remove("timings");
    }
    (c, details, r.timings)
}

pub fn emit_text(doc: &Document) -> String {
    serialize_document(doc)
}
