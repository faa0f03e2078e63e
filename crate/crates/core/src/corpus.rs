//! Exhaustive corpora of small posets, distributive lattices and Kripke
//! frames, and a deterministic runner for the verification suites.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{check_lvl_axioms, enumerate_homs_with, make_lvl, Algebra, Homomorphism, Signature};
use crate::duality::{
    algebra_morphism_dual, arrow_signature, delta_i_verify, delta_verify, dual_hspa_gi, dual_object, dual_of_hom,
    dual_pspa_g, dual_space_g, functoriality_checks, nat_beta_verify, nat_zeta_verify, prime_spectrum_correspondence,
    sigma_i_verify, sigma_verify, DualObject, Mode,
};
use crate::error::Result;
use crate::kripke::{kripke_condition_check, upset_algebra, KripkeFrame, DEFAULT_BUDGET};
use crate::order::{is_prime_ideal, separating_prime_ideal, FiniteLattice, Poset};
use crate::verdict::{Checks, Verdict};
use crate::witness;

/// Relation matrix of a poset on `0..n`, `m[i][j]` iff `i ≤ j`.
type Matrix = Vec<Vec<bool>>;

fn matrix(p: &Poset) -> Matrix {
    (0..p.len()).map(|i| (0..p.len()).map(|j| p.leq(i, j)).collect()).collect()
}

fn linear_extensions(m: &Matrix) -> Vec<Vec<usize>> {
    fn go(m: &Matrix, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = m.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] && (0..n).all(|u| used[u] || u == v || !m[u][v]) {
                used[v] = true;
                cur.push(v);
                go(m, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(m, &mut vec![false; m.len()], &mut Vec::new(), &mut out);
    out
}

fn encode(m: &Matrix, perm: &[usize]) -> Vec<bool> {
    let n = m.len();
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(m[perm[i]][perm[j]]);
        }
    }
    code
}

/// Lexicographically smallest strict upper-triangle encoding of the order
/// over all linear extensions, with the relabelling that achieves it. Two
/// posets are isomorphic iff their codes are equal.
pub fn canonical_form(p: &Poset) -> (Vec<bool>, Vec<usize>) {
    let m = matrix(p);
    linear_extensions(&m)
        .into_iter()
        .map(|perm| (encode(&m, &perm), perm))
        .min()
        .expect("every finite poset has a linear extension")
}

fn relabel(m: &Matrix, perm: &[usize], names: Vec<String>) -> Poset {
    Poset::from_leq(names, |i, j| m[perm[i]][perm[j]])
}

fn point_names(n: usize, style: PointNames) -> Vec<String> {
    match style {
        PointNames::Letters => (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
        PointNames::Worlds => (0..n).map(|i| format!("w{i}")).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PointNames {
    Letters,
    Worlds,
}

fn downsets(p: &Poset) -> Vec<crate::bitset::BitSet> {
    let n = p.len();
    (0u64..1 << n)
        .map(|bits| crate::bitset::BitSet::from_indices(n, (0..n).filter(|&i| bits >> i & 1 == 1)))
        .filter(|s| p.is_downset(s))
        .collect()
}

/// Posets with `1..=max_points` points up to isomorphism, grouped by size and
/// sorted by canonical code. A poset failing `keep` is dropped together with
/// every poset obtained from it by adding maximal points.
fn posets_by_size(max_points: usize, style: PointNames, keep: &dyn Fn(&Poset) -> bool) -> Vec<Vec<Poset>> {
    let mut levels: Vec<Vec<Poset>> = Vec::new();
    let mut prev = vec![Poset::from_leq(Vec::new(), |_, _| false)];
    for n in 1..=max_points {
        let mut seen: BTreeMap<Vec<bool>, Poset> = BTreeMap::new();
        for p in &prev {
            let m = matrix(p);
            for below in downsets(p) {
                let mut grown: Matrix = m.iter().map(|r| r.iter().copied().chain([false]).collect()).collect();
                let mut last = vec![false; n];
                last[n - 1] = true;
                grown.push(last);
                for u in below.iter() {
                    grown[u][n - 1] = true;
                }
                let tmp = Poset::from_leq(point_names(n, style), |i, j| grown[i][j]);
                let (code, perm) = canonical_form(&tmp);
                seen.entry(code).or_insert_with(|| relabel(&grown, &perm, point_names(n, style)));
            }
        }
        let level: Vec<Poset> = seen.into_values().filter(|p| keep(p)).collect();
        if level.is_empty() {
            break;
        }
        prev = level.clone();
        levels.push(level);
    }
    levels
}

/// All posets on exactly `n` points, one per isomorphism class.
pub fn posets_up_to_iso(n: usize) -> Vec<Poset> {
    if n == 0 {
        return vec![Poset::from_leq(Vec::new(), |_, _| false)];
    }
    posets_by_size(n, PointNames::Letters, &|_| true).pop().unwrap_or_default()
}

fn is_chain(l: &FiniteLattice) -> bool {
    (0..l.len()).all(|a| (0..l.len()).all(|b| l.leq(a, b) || l.leq(b, a)))
}

/// The lattice of down-sets of `p` ordered by inclusion. Elements are named
/// by their maximal points (`0` and `1` for the bounds); chains get the
/// names of [`FiniteLattice::chain`].
pub fn downset_lattice(name: &str, p: &Poset) -> FiniteLattice {
    let mut sets = downsets(p);
    sets.sort();
    let n = sets.len();
    let names: Vec<String> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| match i {
            0 => "0".to_string(),
            _ if i == n - 1 => "1".to_string(),
            _ => s.iter().filter(|&x| p.up(x).intersection(s).count() == 1).map(|x| p.name(x)).collect(),
        })
        .collect();
    let order = Poset::from_leq(names, |a, b| sets[a].is_subset(&sets[b]));
    let l = FiniteLattice::from_poset(name, order, 0, n - 1).expect("down-sets form a distributive lattice");
    if is_chain(&l) {
        return FiniteLattice::chain(n).with_name(name);
    }
    l
}

/// Every bounded distributive lattice with at most `max_size` elements, up
/// to isomorphism, sorted by size. Each one is built from its poset of
/// join-irreducibles; chains are named `chainN`, the four-element Boolean
/// lattice `b2`, the rest `dN.k`.
pub fn corpus_lattices(max_size: usize) -> Vec<Arc<FiniteLattice>> {
    if max_size < 2 {
        return Vec::new();
    }
    let fits = |p: &Poset| downsets(p).len() <= max_size;
    let mut all: Vec<(usize, Vec<bool>, Poset)> = posets_by_size(max_size - 1, PointNames::Letters, &fits)
        .into_iter()
        .flatten()
        .map(|p| {
            let size = downsets(&p).len();
            (size, canonical_form(&p).0, p)
        })
        .collect();
    all.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut counter: BTreeMap<usize, usize> = BTreeMap::new();
    all.into_iter()
        .map(|(size, _, p)| {
            let l = downset_lattice("tmp", &p);
            let name = if is_chain(&l) {
                format!("chain{size}")
            } else if size == 4 {
                "b2".to_string()
            } else {
                let k = counter.entry(size).or_insert(0);
                *k += 1;
                format!("d{size}.{k}")
            };
            Arc::new(l.with_name(&name))
        })
        .collect()
}

/// Every Kripke frame with `1..=max_worlds` worlds up to isomorphism, named
/// `fN.k` with worlds `w0, w1, ...`.
pub fn corpus_frames(max_worlds: usize) -> Vec<(String, KripkeFrame)> {
    posets_by_size(max_worlds, PointNames::Worlds, &|_| true)
        .into_iter()
        .enumerate()
        .flat_map(|(i, level)| level.into_iter().enumerate().map(move |(k, p)| (format!("f{}.{}", i + 1, k + 1), p)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub max_size: usize,
    pub max_worlds: usize,
    pub seed: u64,
    pub budget: usize,
    /// Composable morphism pairs sampled per mode.
    pub pairs_per_mode: usize,
}

impl CorpusConfig {
    pub fn new(max_size: usize, seed: u64) -> Self {
        CorpusConfig { max_size, max_worlds: max_size.min(4), seed, budget: DEFAULT_BUDGET, pairs_per_mode: 64 }
    }
}

/// One failed instance with its failing checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceFailure {
    pub instance: String,
    pub failures: BTreeMap<String, Verdict>,
}

/// Failures kept per suite in a report.
pub const FAILURE_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub instances: usize,
    pub passed: usize,
    pub failures: Vec<InstanceFailure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn from_results(results: Vec<(String, Checks)>) -> Self {
        let instances = results.len();
        let mut passed = 0;
        let mut failures = Vec::new();
        for (instance, checks) in results {
            if checks.pass() {
                passed += 1;
            } else if failures.len() < FAILURE_CAP {
                let failures_map = checks.failures().map(|(k, v)| (k.clone(), v.clone())).collect();
                failures.push(InstanceFailure { instance, failures: failures_map });
            }
        }
        SuiteReport { pass: passed == instances, instances, passed, failures, notes: Vec::new() }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub lattices: Vec<String>,
    pub frames: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub config: CorpusConfig,
    pub corpus: CorpusSummary,
    pub suites: BTreeMap<String, SuiteReport>,
    /// Wall-clock milliseconds per suite; empty unless requested.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, u128>,
}

impl CorpusReport {
    pub fn pass(&self) -> bool {
        self.suites.values().all(|s| s.pass)
    }
}

fn hard(checks: Result<Checks>) -> Checks {
    checks.unwrap_or_else(|e| {
        let mut c = Checks::new();
        c.insert("error", Verdict::fail(witness!("error" => e)));
        c
    })
}

fn chain2() -> Arc<FiniteLattice> {
    Arc::new(FiniteLattice::chain(2))
}

fn spectrum_suite(lattices: &[Arc<FiniteLattice>]) -> SuiteReport {
    let results = lattices
        .par_iter()
        .map(|l| {
            let checks = hard((|| {
                let a = Algebra::from_lattice(l.clone(), Signature::Bdl);
                let r = prime_spectrum_correspondence(&a, chain2())?;
                let mut c = r.verdicts.clone();
                c.insert(
                    "counts_equal",
                    Verdict::from_witness(
                        (r.homs != r.prime_filters)
                            .then(|| witness!("homs" => r.homs, "prime_filters" => r.prime_filters)),
                    ),
                );
                Ok(c)
            })());
            (l.name().to_string(), checks)
        })
        .collect();
    SuiteReport::from_results(results)
}

fn separation_suite(lattices: &[Arc<FiniteLattice>]) -> SuiteReport {
    let results = lattices
        .par_iter()
        .map(|l| {
            let mut missing = None;
            let mut not_prime = None;
            for x in 0..l.len() {
                for y in x + 1..l.len() {
                    match separating_prime_ideal(l, x, y) {
                        Ok((p, _)) => {
                            if !is_prime_ideal(l, &p) || p.contains(x) == p.contains(y) {
                                not_prime.get_or_insert_with(|| {
                                    witness!("x" => l.name_of(x), "y" => l.name_of(y), "ideal" => p.display_with(l.names()))
                                });
                            }
                        }
                        Err(e) => {
                            missing.get_or_insert_with(|| witness!("x" => l.name_of(x), "y" => l.name_of(y), "error" => e));
                        }
                    }
                }
            }
            let mut c = Checks::new();
            c.insert("separated", Verdict::from_witness(missing));
            c.insert("reverified_prime", Verdict::from_witness(not_prime));
            (l.name().to_string(), c)
        })
        .collect();
    SuiteReport::from_results(results)
}

fn isp_suite(lattices: &[Arc<FiniteLattice>], truth: Arc<FiniteLattice>, budget: usize) -> SuiteReport {
    let results = lattices
        .par_iter()
        .map(|l| {
            let checks = hard((|| {
                let a = Algebra::from_lattice(l.clone(), Signature::Bdl);
                let mut c = Checks::new();
                c.absorb("sigma", sigma_verify(&a, truth.clone(), budget)?.verdicts);
                let dual = dual_pspa_g(&a, truth.clone())?;
                c.absorb("delta", delta_verify(&dual.space, truth.clone(), budget)?.verdicts);
                Ok(c)
            })());
            (l.name().to_string(), checks)
        })
        .collect();
    SuiteReport::from_results(results)
}

fn isp_i_suite(frames: &[(String, KripkeFrame)], budget: usize) -> SuiteReport {
    let results = frames
        .par_iter()
        .map(|(name, w)| {
            let checks = hard((|| {
                let a = upset_algebra(chain2(), w)?;
                let mut c = Checks::new();
                c.insert("kripke_condition", kripke_condition_check(&a)?.verdict);
                c.absorb("sigma_i", sigma_i_verify(&a, budget)?.verdicts);
                let dual = dual_hspa_gi(&a)?;
                let closure_identity = dual
                    .checks
                    .get("down_closure_identity")
                    .cloned()
                    .unwrap_or_else(|| Verdict::fail(witness!("error" => "identity not evaluated")));
                c.insert("down_closure_identity", closure_identity);
                c.absorb("delta_i", delta_i_verify(&dual.space, chain2(), budget)?.verdicts);
                Ok(c)
            })());
            (name.clone(), checks)
        })
        .collect();
    SuiteReport::from_results(results)
}

/// The greatest `c` with `x ∧ c ≤ y`, found by scanning the carrier.
fn scan_pseudocomplement(a: &Algebra, x: usize, y: usize) -> Option<usize> {
    let candidates: Vec<usize> = (0..a.len()).filter(|&c| a.leq(a.meet(x, c), y)).collect();
    candidates.iter().copied().find(|&c| candidates.iter().all(|&d| a.leq(d, c)))
}

fn heyting_suite(frames: &[(String, KripkeFrame)]) -> SuiteReport {
    let results = frames
        .par_iter()
        .map(|(name, w)| {
            let checks = hard((|| {
                let a = upset_algebra(chain2(), w)?;
                let mut bad = None;
                'outer: for x in 0..a.len() {
                    for y in 0..a.len() {
                        let expected = scan_pseudocomplement(&a, x, y);
                        if expected != Some(a.imp(x, y)) {
                            bad = Some(witness!(
                                "x" => a.name_of(x),
                                "y" => a.name_of(y),
                                "kripke" => a.name_of(a.imp(x, y)),
                                "pseudocomplement" => expected.map_or("none", |e| a.name_of(e)),
                            ));
                            break 'outer;
                        }
                    }
                }
                let mut c = Checks::new();
                c.insert("implication_is_pseudocomplement", Verdict::from_witness(bad));
                Ok(c)
            })());
            (name.clone(), checks)
        })
        .collect();
    SuiteReport::from_results(results)
}

fn lvl_instances() -> Vec<Algebra> {
    [FiniteLattice::chain(2), FiniteLattice::chain(3), FiniteLattice::boolean2()]
        .into_iter()
        .flat_map(|l| {
            let l = Arc::new(l);
            let square = Algebra::lattice_power(l.clone(), 2, Signature::Lvl).expect("squares are closed");
            [make_lvl(l), square]
        })
        .collect()
}

fn lvl_suite(budget: usize) -> SuiteReport {
    let results = lvl_instances()
        .par_iter()
        .map(|a| {
            let checks = hard((|| {
                let dual = dual_space_g(a)?;
                let mut c = Checks::new();
                c.absorb("object", dual.checks.clone());
                c.absorb("beta", nat_beta_verify(a, budget)?.verdicts);
                c.absorb("zeta", nat_zeta_verify(&dual.space, &dual.alpha, budget)?.verdicts);
                Ok(c)
            })());
            (a.name().to_string(), checks)
        })
        .collect();
    SuiteReport::from_results(results)
}

fn axiom_suite(lattices: &[Arc<FiniteLattice>]) -> SuiteReport {
    let mut results: Vec<(String, Checks)> = lattices
        .par_iter()
        .map(|l| {
            let checks = hard((|| {
                let r = check_lvl_axioms(&make_lvl(l.clone()), false)?;
                let mut c = Checks::new();
                for clause in &r.clauses {
                    let w = clause.witnesses.first().map(|w| {
                        let mut m = witness!("law" => w.law);
                        m.extend(w.bindings.iter().cloned());
                        m
                    });
                    c.insert(
                        &format!("clause_{}", clause.clause),
                        Verdict { pass: clause.pass, witness: w, note: None },
                    );
                }
                Ok(c)
            })());
            (l.name().to_string(), checks)
        })
        .collect();
    let literal = hard((|| {
        let r = check_lvl_axioms(&make_lvl(Arc::new(FiniteLattice::chain(3))), true)?;
        let iv = r.clause("iv");
        let found = iv
            .witnesses
            .iter()
            .any(|w| w.binding("a") == Some("m") && w.binding("L1") == Some("0") && w.binding("L2") == Some("m"));
        let mut c = Checks::new();
        c.insert(
            "literal_iv_fails",
            Verdict::from_witness(iv.pass.then(|| witness!("clause" => "iv", "outcome" => "passed"))),
        );
        c.insert(
            "literal_iv_witness",
            Verdict::from_witness(
                (!found).then(|| witness!("expected" => "a=m, L1=0, L2=m", "found" => iv.witnesses.len())),
            ),
        );
        Ok(c)
    })());
    results.push(("chain3 (literal iv)".to_string(), literal));
    SuiteReport::from_results(results)
}

struct Pool {
    algebras: Vec<Algebra>,
    duals: Vec<DualObject>,
    /// `homs[a][b]` are the arrows `algebras[a] → algebras[b]`; `None` when
    /// the pair is not comparable (different truth lattices).
    homs: Vec<Vec<Option<Vec<Homomorphism>>>>,
}

fn morphism_pool(mode: Mode, lattices: &[Arc<FiniteLattice>], frames: &[(String, KripkeFrame)]) -> Result<Pool> {
    let algebras: Vec<Algebra> = match mode {
        Mode::Pspa => lattices.iter().map(|l| Algebra::from_lattice(l.clone(), Signature::Bdl)).collect(),
        Mode::Pbs => lvl_instances(),
        Mode::Hspa => frames
            .iter()
            .filter(|(_, w)| w.len() <= 3)
            .map(|(name, w)| Ok(upset_algebra(chain2(), w)?.with_name(&format!("Up({name})"))))
            .collect::<Result<_>>()?,
    };
    let duals = algebras.par_iter().map(|a| dual_object(mode, a, chain2())).collect::<Result<Vec<_>>>()?;
    let sig = arrow_signature(mode);
    let homs = algebras
        .par_iter()
        .map(|a| {
            algebras
                .iter()
                .map(|b| {
                    let comparable = match (a.truth(), b.truth()) {
                        (Some(x), Some(y)) if sig == Signature::Lvl => x.names() == y.names(),
                        _ => true,
                    };
                    comparable.then(|| enumerate_homs_with(a, b, sig)).transpose()
                })
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Pool { algebras, duals, homs })
}

fn sample_pairs(pool: &Pool, wanted: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize, usize, usize, usize)> {
    let n = pool.algebras.len();
    let hom_count = |a: usize, b: usize| pool.homs[a][b].as_ref().map_or(0, Vec::len);
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if hom_count(a, b) == 0 {
                continue;
            }
            for c in 0..n {
                if hom_count(b, c) > 0 {
                    triples.push((a, b, c));
                }
            }
        }
    }
    let mut chosen = BTreeSet::new();
    if triples.is_empty() {
        return Vec::new();
    }
    let total: usize = triples.iter().map(|&(a, b, c)| hom_count(a, b) * hom_count(b, c)).sum();
    let target = wanted.min(total);
    triples.shuffle(rng);
    let mut attempts = 0;
    while chosen.len() < target && attempts < 64 * wanted.max(1) {
        let (a, b, c) = triples[attempts % triples.len()];
        let f = rng.random_range(0..hom_count(a, b));
        let g = rng.random_range(0..hom_count(b, c));
        chosen.insert((a, b, c, f, g));
        attempts += 1;
    }
    chosen.into_iter().collect()
}

fn functoriality_suite(
    mode: Mode,
    lattices: &[Arc<FiniteLattice>],
    frames: &[(String, KripkeFrame)],
    config: &CorpusConfig,
) -> SuiteReport {
    let pool = match morphism_pool(mode, lattices, frames) {
        Ok(p) => p,
        Err(e) => return SuiteReport::from_results(vec![("pool".into(), hard(Err(e)))]),
    };
    let mode_index = Mode::ALL.iter().position(|&m| m == mode).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(mode_index));
    let pairs = sample_pairs(&pool, config.pairs_per_mode, &mut rng);
    let results: Vec<(String, Checks)> = pairs
        .par_iter()
        .map(|&(a, b, c, fi, gi)| {
            let f = &pool.homs[a][b].as_ref().expect("sampled")[fi];
            let g = &pool.homs[b][c].as_ref().expect("sampled")[gi];
            let (aa, ab, ac) = (&pool.algebras[a], &pool.algebras[b], &pool.algebras[c]);
            let (da, db, dc) = (&pool.duals[a], &pool.duals[b], &pool.duals[c]);
            let name = format!(
                "f={} : {} -> {}, g={} : {} -> {}",
                f.display(ab.names()),
                aa.name(),
                ab.name(),
                g.display(ac.names()),
                ab.name(),
                ac.name()
            );
            let checks = hard((|| {
                let gf = f.then(g);
                let mut c = functoriality_checks(
                    &dual_of_hom(f, da, db),
                    &dual_of_hom(g, db, dc),
                    &dual_of_hom(&gf, da, dc),
                    &dual_of_hom(&Homomorphism::identity(aa.len()), da, da),
                    dc.point_names(),
                    da.point_names(),
                );
                c.absorb("dual_f", algebra_morphism_dual(mode, f, (aa, da), (ab, db))?.checks);
                c.absorb("dual_g", algebra_morphism_dual(mode, g, (ab, db), (ac, dc))?.checks);
                Ok(c)
            })());
            (name, checks)
        })
        .collect();
    let found = results.len();
    let mut report = SuiteReport::from_results(results);
    if found < config.pairs_per_mode {
        report.pass = false;
        report = report.note(format!("only {found} composable pairs available, {} requested", config.pairs_per_mode));
    }
    report
}

/// Runs every suite over the corpus. Deterministic in `config` alone: the
/// instances run in parallel but results are gathered in corpus order, and
/// timings are recorded only when `timings` is set.
pub fn corpus_run(config: &CorpusConfig, timings: bool) -> CorpusReport {
    let lattices = corpus_lattices(config.max_size);
    let frames = corpus_frames(config.max_worlds);
    let mut suites = BTreeMap::new();
    let mut times = BTreeMap::new();
    let mut run = |name: &str, f: &dyn Fn() -> SuiteReport| {
        let start = Instant::now();
        let r = f();
        if timings {
            times.insert(name.to_string(), start.elapsed().as_millis());
        }
        suites.insert(name.to_string(), r);
    };
    run("spectrum", &|| spectrum_suite(&lattices));
    run("separation", &|| separation_suite(&lattices));
    run("isp_roundtrip.chain2", &|| isp_suite(&lattices, chain2(), config.budget));
    run("isp_roundtrip.chain3", &|| isp_suite(&lattices, Arc::new(FiniteLattice::chain(3)), config.budget));
    run("isp_i_roundtrip", &|| isp_i_suite(&frames, config.budget));
    run("heyting_coincidence", &|| heyting_suite(&frames));
    run("lvl_duality", &|| lvl_suite(config.budget));
    run("axioms", &|| axiom_suite(&lattices));
    for mode in Mode::ALL {
        run(&format!("functoriality.{mode}"), &|| functoriality_suite(mode, &lattices, &frames, config));
    }
    CorpusReport {
        config: config.clone(),
        corpus: CorpusSummary {
            lattices: lattices.iter().map(|l| l.name().to_string()).collect(),
            frames: frames.iter().map(|(n, _)| n.clone()).collect(),
        },
        suites,
        timings: times,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn small_lattice_corpus() {
        let names: Vec<String> = corpus_lattices(4).iter().map(|l| l.name().to_string()).collect();
        assert_eq!(names, ["chain2", "chain3", "b2", "chain4"]);
        assert_eq!(corpus_lattices(2).len(), 1);
        let sizes: Vec<usize> = (2..=7).map(|n| corpus_lattices(n).len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 7, 12, 20]);
        assert_eq!(corpus_lattices(3)[1].names(), FiniteLattice::chain(3).names());
    }

    #[test]
    fn frames() {
        assert_eq!(corpus_frames(3).len(), 1 + 2 + 5);
        assert_eq!(corpus_frames(2)[2].1.names(), ["w0", "w1"]);
    }
}
