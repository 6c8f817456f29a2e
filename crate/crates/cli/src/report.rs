//! Text and JSON renderings of the `roots` and `verify` reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use cremona_core::classify::{
    cross_validate, enumerate_root_vectors, oracle_search, CrossValidationReport, OracleReport,
    RootVectorEntry, Violation,
};
use cremona_core::poly::rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootJson {
    /// One-based index of the variable being differentiated.
    pub i: usize,
    pub alpha: Vec<u32>,
    pub character: Vec<i64>,
    pub mvec: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsDocument {
    pub n: usize,
    pub max_deg: u32,
    pub roots: Vec<RootJson>,
}

impl RootsDocument {
    pub fn new(n: usize, max_deg: u32, entries: &[RootVectorEntry]) -> Self {
        let roots = entries
            .iter()
            .map(|en| RootJson {
                i: en.index + 1,
                alpha: en.alpha.entries().to_vec(),
                character: en.root.beta().to_vec(),
                mvec: en.mvec.entries().to_vec(),
            })
            .collect();
        RootsDocument { n, max_deg, roots }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n={} max_deg={} root vectors: {}\n", self.n, self.max_deg, self.roots.len());
        let tuple = |v: &[i64]| {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(","))
        };
        for r in &self.roots {
            let alpha: Vec<i64> = r.alpha.iter().map(|&a| i64::from(a)).collect();
            let d = cremona_core::Derivation::monomial(
                rat(1),
                cremona_core::Exponent::new(r.alpha.clone()),
                r.i - 1,
            );
            writeln!(
                out,
                "i={} alpha={} character={} mvec={}  {}",
                r.i,
                tuple(&alpha),
                tuple(&r.character),
                tuple(&r.mvec),
                d.operator_form()
            )
            .unwrap();
        }
        out
    }
}

/// Machine-readable `verify` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub tested: usize,
    pub violations: Vec<Violation>,
    pub pass: bool,
}

/// Results of `verify`: the cross-validation and, for `n ≤ 3` and
/// `max_deg ≤ 4`, the oracle search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyDocument {
    pub cross: CrossValidationReport,
    pub oracle: Option<OracleReport>,
    pub budget: usize,
    pub pass: bool,
}

impl VerifyDocument {
    pub fn run(n: usize, max_deg: u32, ebox: i64, budget: usize, seed: u64) -> Result<Self, String> {
        // validate shared parameters before the expensive parts
        enumerate_root_vectors(n, max_deg).map_err(|e| e.to_string())?;
        let cross = cross_validate(n, max_deg, ebox).map_err(|e| e.to_string())?;
        let oracle = if n <= 3 && max_deg <= 4 {
            Some(oracle_search(n, max_deg, budget, seed).map_err(|e| e.to_string())?)
        } else {
            None
        };
        let pass = cross.pass() && oracle.as_ref().map_or(true, OracleReport::pass);
        Ok(VerifyDocument { cross, oracle, budget, pass })
    }

    /// Entries cross-validated plus oracle candidates tested.
    pub fn tested(&self) -> usize {
        self.cross.entries + self.oracle.as_ref().map_or(0, |o| o.tested)
    }

    pub fn summary(&self) -> VerifySummary {
        let tag = |source: &str, v: &Violation| Violation {
            check: format!("{source}/{}", v.check),
            detail: v.detail.clone(),
        };
        let mut violations: Vec<Violation> = self.cross.violations.iter().map(|v| tag("cross", v)).collect();
        if let Some(o) = &self.oracle {
            violations.extend(o.violations.iter().map(|v| tag("oracle", v)));
        }
        VerifySummary { tested: self.tested(), violations, pass: self.pass }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary()).expect("plain data serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let c = &self.cross;
        let mut out = String::new();
        writeln!(
            out,
            "cross-validation n={} max_deg={} ebox={}: {} entries, {} admissible specs, {} matched, {} outside box, {} distinct characters",
            c.n, c.max_deg, c.ebox, c.entries, c.admissible_specs, c.matched, c.outside_box, c.distinct_characters
        )
        .unwrap();
        match &self.oracle {
            Some(o) => writeln!(
                out,
                "oracle n={} max_deg={} seed={} cap={}: {} candidates ({} consistent, {} not proven LND, {} not homogeneous), listed {}/{}",
                o.n, o.max_deg, o.seed, o.cap, o.tested, o.consistent, o.not_proven, o.not_homogeneous,
                o.listed_passed, o.listed
            )
            .unwrap(),
            None => writeln!(out, "oracle: skipped (needs n <= 3 and max_deg <= 4)").unwrap(),
        }
        for v in self.summary().violations {
            writeln!(out, "violation [{}] {}", v.check, v.detail).unwrap();
        }
        writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}
