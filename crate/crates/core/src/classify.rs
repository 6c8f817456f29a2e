//! Enumeration of root vectors, the root-character criterion, and two
//! independent cross-checks of the classification.
//!
//! Every root vector is `λ·x^α·∂/∂x_i` with `α_i = 0`, and its root is the
//! character `γ ↦ γ_i⁻¹·∏ γ_j^{α_j}`. [`cross_validate`] compares the
//! enumeration against the parameterization by admissible `(i, e)` in the
//! simplex model. [`oracle_search`] builds random homogeneous derivations and
//! checks that every one proven locally nilpotent has monomial form.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ahmodel::{AdDerivationSpec, SimplexModel};
use crate::derivation::{Derivation, RootCheckResult};
use crate::grading::{
    char_to_mvec, generator_degree, mdeg_monomial, monomial_basis, mvec_to_char, normalize_char,
    CharClass, MVec,
};
use crate::poly::{exponents_up_to, rat, ratio, Exponent, Poly, Rat};

pub const MAX_DIM: usize = 8;
pub const MAX_DEGREE: u32 = 12;
pub const MAX_EBOX: i64 = 6;
/// Nilpotency cap used for oracle candidates.
pub const ORACLE_CAP: usize = 16;
/// Upper limit on `n·(2·ebox+1)^{n-1}` specs scanned by [`cross_validate`].
pub const MAX_SPEC_SCAN: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{name} = {value} is out of range ({range})")]
    OutOfRange { name: &'static str, value: i64, range: &'static str },
    #[error("alpha_{} must be zero for a derivation along x{}", .index + 1, .index + 1)]
    AlphaAlongIndex { index: usize },
    #[error("character vector has length {got}, expected at least 2")]
    BadLength { got: usize },
}

/// One root vector `x^α·∂/∂x_{index+1}` together with its root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVectorEntry {
    pub index: usize,
    pub alpha: Exponent,
    pub root: CharClass,
    pub mvec: MVec,
}

impl RootVectorEntry {
    pub fn derivation(&self, lambda: Rat) -> Derivation {
        Derivation::monomial(lambda, self.alpha.clone(), self.index)
    }
}

/// A failed check in a report. `check` names the property; `detail` is
/// human-readable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

impl Violation {
    fn new(check: &str, detail: impl Into<String>) -> Self {
        Violation { check: check.to_string(), detail: detail.into() }
    }
}

fn check_range(name: &'static str, value: i64, lo: i64, hi: i64, range: &'static str) -> Result<(), ClassifyError> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(ClassifyError::OutOfRange { name, value, range })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// `n·C(dmax+n-1, n-1)`, the number of pairs `(i, α)` with `α_i = 0` and
/// `Σα ≤ dmax`.
pub fn expected_count(n: usize, dmax: u32) -> u64 {
    n as u64 * binomial(u64::from(dmax) + n as u64 - 1, n as u64 - 1)
}

/// `normalize_char(α - unit_i)`, the root of `x^α·∂/∂x_{index+1}`.
pub fn root_character(index: usize, alpha: &Exponent) -> Result<CharClass, ClassifyError> {
    if index >= alpha.dim() {
        return Err(ClassifyError::OutOfRange {
            name: "i",
            value: index as i64 + 1,
            range: "1..=n",
        });
    }
    if alpha[index] != 0 {
        return Err(ClassifyError::AlphaAlongIndex { index });
    }
    let mut beta: Vec<i64> = alpha.entries().iter().map(|&a| i64::from(a)).collect();
    beta[index] -= 1;
    Ok(normalize_char(&beta).expect("alpha has length n >= 2"))
}

/// All root vectors `x^α·∂/∂x_i` with `Σα ≤ dmax`, sorted by `i` and then
/// graded-lex on `α`.
pub fn enumerate_root_vectors(n: usize, dmax: u32) -> Result<Vec<RootVectorEntry>, ClassifyError> {
    check_range("n", n as i64, 2, MAX_DIM as i64, "2..=8")?;
    check_range("max_deg", i64::from(dmax), 0, i64::from(MAX_DEGREE), "0..=12")?;
    let free = exponents_up_to(n - 1, dmax);
    let mut out = Vec::with_capacity(free.len() * n);
    for index in 0..n {
        for f in &free {
            let mut alpha = f.entries().to_vec();
            alpha.insert(index, 0);
            let alpha = Exponent::new(alpha);
            let root = root_character(index, &alpha)?;
            let mvec = char_to_mvec(&root);
            out.push(RootVectorEntry { index, alpha, root, mvec });
        }
    }
    Ok(out)
}

/// True iff the minimum of `β` is attained exactly once.
pub fn is_root_character(beta: &[i64]) -> Result<bool, ClassifyError> {
    if beta.len() < 2 {
        return Err(ClassifyError::BadLength { got: beta.len() });
    }
    let min = *beta.iter().min().expect("nonempty");
    Ok(beta.iter().filter(|&&b| b == min).count() == 1)
}

/// The unique `(i, α)` whose root is the character of `β`, if it is a root.
///
/// With `i` the position of the strict minimum, `α_j = β_j - β_i - 1` for
/// `j ≠ i`.
pub fn root_vector_for_character(beta: &[i64]) -> Result<Option<RootVectorEntry>, ClassifyError> {
    if !is_root_character(beta)? {
        return Ok(None);
    }
    let (index, &bmin) = beta
        .iter()
        .enumerate()
        .min_by_key(|&(_, b)| *b)
        .expect("nonempty");
    let alpha: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(j, &b)| if j == index { 0 } else { (b - bmin - 1) as u32 })
        .collect();
    let alpha = Exponent::new(alpha);
    let root = root_character(index, &alpha)?;
    let mvec = char_to_mvec(&root);
    Ok(Some(RootVectorEntry { index, alpha, root, mvec }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub n: usize,
    pub max_deg: u32,
    pub ebox: i64,
    /// Entries examined.
    pub entries: usize,
    /// Admissible specs found in the box.
    pub admissible_specs: usize,
    /// Entries inside the image of the box that arise from exactly one spec.
    pub matched: usize,
    /// Entries whose degree lies outside the box.
    pub outside_box: usize,
    pub distinct_characters: usize,
    pub violations: Vec<Violation>,
}

impl CrossValidationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Cross-validates [`enumerate_root_vectors`] against the simplex model.
pub fn cross_validate(n: usize, dmax: u32, ebox: i64) -> Result<CrossValidationReport, ClassifyError> {
    let entries = enumerate_root_vectors(n, dmax)?;
    cross_validate_entries(n, dmax, ebox, &entries)
}

/// Cross-validates an arbitrary entry list, which lets callers inject faulty
/// entries as negative controls.
///
/// Checks, each reported as [`Violation`]s:
/// - every entry is a well-formed root vector, passes `root_check` with its
///   own `mvec`, and the list has the expected size;
/// - every admissible `(i, e)` with `|e_k| ≤ ebox` translates to a root
///   vector of degree `e`, which is in the list whenever `Σα ≤ dmax`;
/// - every entry whose degree lies in the box comes from exactly one spec;
/// - no two entries share a character.
pub fn cross_validate_entries(
    n: usize,
    dmax: u32,
    ebox: i64,
    entries: &[RootVectorEntry],
) -> Result<CrossValidationReport, ClassifyError> {
    check_range("n", n as i64, 2, MAX_DIM as i64, "2..=8")?;
    check_range("max_deg", i64::from(dmax), 0, i64::from(MAX_DEGREE), "0..=12")?;
    check_range("ebox", ebox, 0, MAX_EBOX, "0..=6")?;
    let scan = n as u64 * ((2 * ebox + 1) as u64).pow(n as u32 - 1);
    if scan > MAX_SPEC_SCAN {
        return Err(ClassifyError::OutOfRange { name: "ebox", value: ebox, range: "n*(2*ebox+1)^(n-1) <= 5e6" });
    }
    let model = SimplexModel::new(n);
    let mut violations = Vec::new();

    if entries.len() as u64 != expected_count(n, dmax) {
        violations.push(Violation::new(
            "count",
            format!("{} entries, expected {}", entries.len(), expected_count(n, dmax)),
        ));
    }

    let entry_violations: Vec<Vec<Violation>> =
        entries.par_iter().map(|entry| check_entry(n, dmax, entry)).collect();
    violations.extend(entry_violations.into_iter().flatten());

    // specs in the box, translated into (i, α)
    let boxes = lattice_box(n - 1, ebox);
    let translated: Vec<(usize, MVec, Result<Option<Derivation>, String>)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|index| boxes.iter().map(move |e| (index, e.clone())))
        .map(|(index, e)| {
            let spec = AdDerivationSpec { lambda: rat(1), index, e: e.clone() };
            let outcome = match model.admissible(index, &e) {
                Ok(false) => Ok(None),
                Ok(true) => model.translate_spec(&spec).map(Some).map_err(|err| err.to_string()),
                Err(err) => Err(err.to_string()),
            };
            (index, e, outcome)
        })
        .collect();

    let listed: HashMap<(usize, &Exponent), &RootVectorEntry> =
        entries.iter().map(|en| ((en.index, &en.alpha), en)).collect();
    let mut preimages: HashMap<(usize, Exponent), usize> = HashMap::new();
    let mut admissible_specs = 0;
    for (index, e, outcome) in translated {
        let d = match outcome {
            Ok(None) => continue,
            Ok(Some(d)) => d,
            Err(err) => {
                violations.push(Violation::new("translate", format!("i={}, e={e}: {err}", index + 1)));
                continue;
            }
        };
        admissible_specs += 1;
        let Some(nf) = d.normal_form() else {
            violations.push(Violation::new("translate", format!("i={}, e={e}: {d:?} not monomial", index + 1)));
            continue;
        };
        if nf.index != index {
            violations.push(Violation::new("translate", format!("i={}, e={e}: moved to x{}", index + 1, nf.index + 1)));
        }
        match d.degree() {
            Ok(Some(deg)) if deg == e => {}
            other => violations.push(Violation::new(
                "translate_degree",
                format!("i={}, e={e}: derivation degree {other:?}", index + 1),
            )),
        }
        match root_character(nf.index, &nf.alpha) {
            Ok(c) if c == mvec_to_char(&e) => {}
            other => violations.push(Violation::new(
                "translate_root",
                format!("i={}, e={e}: root {other:?}", index + 1),
            )),
        }
        if nf.alpha.total_degree() <= u64::from(dmax) {
            match listed.get(&(nf.index, &nf.alpha)) {
                Some(en) if en.mvec == e => {}
                Some(en) => violations.push(Violation::new(
                    "translate_root",
                    format!("i={}, e={e}: listed entry has mvec {}", index + 1, en.mvec),
                )),
                None => violations.push(Violation::new(
                    "missing_entry",
                    format!("i={}, e={e} gives alpha={:?} not in the enumeration", index + 1, nf.alpha.entries()),
                )),
            }
        }
        *preimages.entry((nf.index, nf.alpha)).or_default() += 1;
    }

    let mut matched = 0;
    let mut outside_box = 0;
    for en in entries {
        if en.mvec.entries().iter().any(|c| c.abs() > ebox) {
            outside_box += 1;
            continue;
        }
        match preimages.get(&(en.index, en.alpha.clone())).copied().unwrap_or(0) {
            1 => matched += 1,
            k => violations.push(Violation::new(
                "preimage",
                format!("i={}, alpha={:?} arises from {k} admissible specs", en.index + 1, en.alpha.entries()),
            )),
        }
    }

    let mut by_char: BTreeMap<&CharClass, Vec<&RootVectorEntry>> = BTreeMap::new();
    for en in entries {
        by_char.entry(&en.root).or_default().push(en);
    }
    for (c, group) in &by_char {
        if group.len() > 1 {
            violations.push(Violation::new(
                "distinct_characters",
                format!("character {c} shared by {} entries", group.len()),
            ));
        }
    }

    violations.sort();
    Ok(CrossValidationReport {
        n,
        max_deg: dmax,
        ebox,
        entries: entries.len(),
        admissible_specs,
        matched,
        outside_box,
        distinct_characters: by_char.len(),
        violations,
    })
}

fn check_entry(n: usize, dmax: u32, en: &RootVectorEntry) -> Vec<Violation> {
    let label = format!("i={}, alpha={:?}", en.index + 1, en.alpha.entries());
    let mut out = Vec::new();
    if en.alpha.dim() != n || en.index >= n {
        out.push(Violation::new("shape", label));
        return out;
    }
    if en.alpha[en.index] != 0 {
        out.push(Violation::new("alpha_i_zero", format!("{label}: alpha_i != 0")));
    }
    if en.alpha.total_degree() > u64::from(dmax) {
        out.push(Violation::new("degree_bound", format!("{label}: exceeds max degree {dmax}")));
    }
    if let Ok(c) = root_character(en.index, &en.alpha) {
        if c != en.root {
            out.push(Violation::new("root_character", format!("{label}: root {} != {c}", en.root)));
        }
    }
    if char_to_mvec(&en.root) != en.mvec {
        out.push(Violation::new("mvec", format!("{label}: mvec {} != char_to_mvec({})", en.mvec, en.root)));
    }
    let d = en.derivation(rat(1));
    match d.root_check(d.default_cap()) {
        Ok(RootCheckResult::IsRoot { root, .. }) if root == en.mvec => {}
        Ok(RootCheckResult::IsRoot { root, .. }) => {
            out.push(Violation::new("root_check", format!("{label}: root {root} != {}", en.mvec)))
        }
        Ok(RootCheckResult::NotRoot(reason)) => {
            out.push(Violation::new("root_check", format!("{label}: not a root ({reason:?})")))
        }
        Err(err) => out.push(Violation::new("root_check", format!("{label}: {err}"))),
    }
    out
}

/// All integer vectors in `[-radius, radius]^rank`, lexicographic.
pub fn lattice_box(rank: usize, radius: i64) -> Vec<MVec> {
    let mut out = vec![MVec(Vec::new())];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |c| {
                    let mut w = v.0.clone();
                    w.push(c);
                    MVec(w)
                })
            })
            .collect();
    }
    out
}

/// How a single oracle candidate was classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateOutcome {
    NotHomogeneous,
    /// Homogeneous, but no nilpotency certificate within the cap.
    NotProven,
    /// Homogeneous, proven LND, and of the form `λ·x^α·∂/∂x_i` with the
    /// expected root.
    Consistent,
    Counterexample(String),
}

pub fn classify_candidate(d: &Derivation, cap: usize) -> CandidateOutcome {
    let e = match d.degree() {
        Ok(Some(e)) => e,
        Ok(None) => return CandidateOutcome::NotHomogeneous,
        Err(err) => return CandidateOutcome::Counterexample(format!("{d}: {err}")),
    };
    if !d.lnd_check(cap).is_proven() {
        return CandidateOutcome::NotProven;
    }
    let Some(nf) = d.normal_form() else {
        return CandidateOutcome::Counterexample(format!(
            "homogeneous LND of degree {e} not of monomial form: {}",
            d.operator_form()
        ));
    };
    match d.root_check(cap) {
        Ok(RootCheckResult::IsRoot { root, normal_form }) if root == e && normal_form == nf => {
            CandidateOutcome::Consistent
        }
        other => CandidateOutcome::Counterexample(format!("{}: root_check gave {other:?}", d.operator_form())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub max_deg: u32,
    pub seed: u64,
    pub cap: usize,
    pub tested: usize,
    pub not_homogeneous: usize,
    pub not_proven: usize,
    pub consistent: usize,
    pub listed: usize,
    pub listed_passed: usize,
    pub violations: Vec<Violation>,
}

impl OracleReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.listed_passed == self.listed
    }
}

fn coefficient_pool() -> [Rat; 6] {
    [rat(1), rat(-1), rat(2), rat(-2), ratio(1, 2), ratio(-1, 2)]
}

/// Draws one candidate: a degree `e` realized by a random monomial image,
/// then up to two nonzero images with up to two terms each taken from the
/// matching graded slices. One in eight second images uses a perturbed
/// degree so the non-homogeneous path is exercised too.
fn draw_candidate(rng: &mut ChaCha8Rng, n: usize, dmax: u32, monomials: &[Exponent]) -> Derivation {
    let pool = coefficient_pool();
    let first = rng.gen_range(0..n);
    let seed_alpha = monomials.choose(rng).expect("nonempty monomial list");
    let e = mdeg_monomial(seed_alpha).sub(&generator_degree(n, first));

    let mut targets = vec![(first, e.clone())];
    if rng.gen_bool(0.5) {
        let mut second = rng.gen_range(0..n - 1);
        if second >= first {
            second += 1;
        }
        let mut e2 = e.clone();
        if rng.gen_ratio(1, 8) {
            let k = rng.gen_range(0..n - 1);
            e2.0[k] += if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        targets.push((second, e2));
    }

    let mut images = vec![Poly::zero(n); n];
    for (j, deg) in targets {
        let basis = monomial_basis(&generator_degree(n, j).add(&deg), u64::from(dmax));
        if basis.is_empty() {
            continue;
        }
        let picks = rng.gen_range(1..=2.min(basis.len()));
        let mut img = Poly::zero(n);
        for alpha in basis.choose_multiple(rng, picks) {
            let c = pool.choose(rng).expect("nonempty pool").clone();
            img = &img + &Poly::monomial(alpha.clone(), c);
        }
        images[j] = img;
    }
    // the seed monomial slice for `first` always contains seed_alpha
    debug_assert!(!images[first].is_zero());
    Derivation::new(images).expect("images share the ambient dimension")
}

/// Seeded search for homogeneous LNDs outside monomial form.
///
/// Tests exactly `budget` candidates. Also checks that every enumerated root
/// vector with `Σα ≤ dmax` (scaled by a coefficient from the pool) passes
/// `root_check` with its listed root.
pub fn oracle_search(n: usize, dmax: u32, budget: usize, seed: u64) -> Result<OracleReport, ClassifyError> {
    check_range("n", n as i64, 2, 3, "2..=3")?;
    check_range("max_deg", i64::from(dmax), 0, 4, "0..=4")?;
    let monomials = exponents_up_to(n, dmax);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<Derivation> = (0..budget).map(|_| draw_candidate(&mut rng, n, dmax, &monomials)).collect();
    let outcomes: Vec<CandidateOutcome> =
        candidates.par_iter().map(|d| classify_candidate(d, ORACLE_CAP)).collect();

    let mut report = OracleReport {
        n,
        max_deg: dmax,
        seed,
        cap: ORACLE_CAP,
        tested: candidates.len(),
        not_homogeneous: 0,
        not_proven: 0,
        consistent: 0,
        listed: 0,
        listed_passed: 0,
        violations: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            CandidateOutcome::NotHomogeneous => report.not_homogeneous += 1,
            CandidateOutcome::NotProven => report.not_proven += 1,
            CandidateOutcome::Consistent => report.consistent += 1,
            CandidateOutcome::Counterexample(msg) => report.violations.push(Violation::new("counterexample", msg)),
        }
    }

    let pool = coefficient_pool();
    let entries = enumerate_root_vectors(n, dmax)?;
    let listed: Vec<Option<Violation>> = entries
        .par_iter()
        .enumerate()
        .map(|(k, en)| {
            let lambda = pool[k % pool.len()].clone();
            let d = en.derivation(lambda.clone());
            match d.root_check(ORACLE_CAP) {
                Ok(RootCheckResult::IsRoot { root, normal_form })
                    if root == en.mvec && normal_form.lambda == lambda && normal_form.alpha == en.alpha =>
                {
                    None
                }
                other => Some(Violation::new(
                    "listed",
                    format!("{}: {other:?}", d.operator_form()),
                )),
            }
        })
        .collect();
    report.listed = listed.len();
    for v in listed {
        match v {
            None => report.listed_passed += 1,
            Some(v) => report.violations.push(v),
        }
    }
    Ok(report)
}
