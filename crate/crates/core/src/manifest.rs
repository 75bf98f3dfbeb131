//! Tab-separated manifest of the inequality corpus.
//!
//! One header line, then one record per entry:
//!
//! ```text
//! #id  domain_lo  domain_hi  claim  equality_points  anchor
//! ```
//!
//! `equality_points` is a comma-separated list, `-` for none or `*` when the
//! expression vanishes on the whole domain. Numbers use the shortest
//! round-trip decimal form, so parsing and re-serializing reproduces the file
//! byte for byte.

use crate::error::{Error, Result};
use crate::verify::certify::{CertifiedInequality, Claim, EqualitySet};
use crate::verify::corpus::corpus;
use std::collections::{BTreeMap, BTreeSet};

pub const HEADER: &str = "#id\tdomain_lo\tdomain_hi\tclaim\tequality_points\tanchor";

/// The manifest shipped with the crate.
pub const BUNDLED_MANIFEST: &str = include_str!("../corpus/manifest.tsv");

/// Largest `|expression|` accepted at a listed equality point.
pub const EQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub id: String,
    pub domain_lo: f64,
    pub domain_hi: f64,
    pub claim: Claim,
    pub equality: EqualitySet,
    pub anchor: String,
}

impl ManifestEntry {
    pub fn from_inequality(ineq: &CertifiedInequality) -> Self {
        Self {
            id: ineq.id.clone(),
            domain_lo: ineq.domain.lo(),
            domain_hi: ineq.domain.hi(),
            claim: ineq.claim,
            equality: ineq.equality.clone(),
            anchor: ineq.anchor.clone(),
        }
    }

    fn line(&self) -> String {
        let eq = match &self.equality {
            EqualitySet::Everywhere => "*".to_string(),
            EqualitySet::Points(ps) if ps.is_empty() => "-".to_string(),
            EqualitySet::Points(ps) => ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.id,
            self.domain_lo,
            self.domain_hi,
            self.claim.as_str(),
            eq,
            self.anchor
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
}

fn bad(line_no: usize, msg: impl std::fmt::Display) -> Error {
    Error::Manifest(format!("line {line_no}: {msg}"))
}

fn number(s: &str, line_no: usize) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| bad(line_no, format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(bad(line_no, format!("not finite: {s:?}")));
    }
    Ok(v)
}

impl CorpusManifest {
    /// The manifest matching the registered corpus.
    pub fn from_corpus() -> Self {
        Self {
            entries: corpus().iter().map(ManifestEntry::from_inequality).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.split('\n');
        if lines.next() != Some(HEADER) {
            return Err(bad(1, "missing or malformed header"));
        }
        if !text.ends_with('\n') {
            return Err(Error::Manifest("missing final newline".into()));
        }
        let mut entries = Vec::new();
        for (i, line) in lines.enumerate() {
            let line_no = i + 2;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [id, lo, hi, claim, eq, anchor] = fields[..] else {
                return Err(bad(line_no, format!("expected 6 fields, found {}", fields.len())));
            };
            if id.is_empty() || id.starts_with('#') {
                return Err(bad(line_no, "empty or commented id"));
            }
            let claim = match claim {
                "nonnegative" => Claim::Nonnegative,
                "nonpositive" => Claim::Nonpositive,
                other => return Err(bad(line_no, format!("unknown claim {other:?}"))),
            };
            let equality = match eq {
                "*" => EqualitySet::Everywhere,
                "-" => EqualitySet::none(),
                list => EqualitySet::Points(
                    list.split(',').map(|p| number(p, line_no)).collect::<Result<_>>()?,
                ),
            };
            let (domain_lo, domain_hi) = (number(lo, line_no)?, number(hi, line_no)?);
            if domain_lo > domain_hi {
                return Err(bad(line_no, "domain_lo exceeds domain_hi"));
            }
            entries.push(ManifestEntry {
                id: id.to_string(),
                domain_lo,
                domain_hi,
                claim,
                equality,
                anchor: anchor.to_string(),
            });
        }
        let manifest = Self { entries };
        if manifest.serialize() != text {
            return Err(Error::Manifest("text is not in canonical form".into()));
        }
        Ok(manifest)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for e in &self.entries {
            out.push_str(&e.line());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ManifestReport {
    /// Ids in the manifest with no registered inequality.
    pub orphans: Vec<String>,
    /// Registered ids absent from the manifest.
    pub missing: Vec<String>,
    pub duplicates: Vec<String>,
    /// Ids whose domain, claim, equality set or anchor disagree.
    pub mismatched: Vec<String>,
    /// `id@point` where the expression is not within tolerance of zero.
    pub equality_failures: Vec<String>,
}

impl ManifestReport {
    pub fn passed(&self) -> bool {
        self.orphans.is_empty()
            && self.missing.is_empty()
            && self.duplicates.is_empty()
            && self.mismatched.is_empty()
            && self.equality_failures.is_empty()
    }
}

fn sample_points(e: &ManifestEntry) -> Vec<f64> {
    match &e.equality {
        EqualitySet::Points(ps) => ps.clone(),
        EqualitySet::Everywhere => {
            let w = e.domain_hi - e.domain_lo;
            (0..17).map(|k| e.domain_lo + w * k as f64 / 16.0).collect()
        }
    }
}

/// Cross-checks `manifest` against the registered corpus.
pub fn manifest_check(manifest: &CorpusManifest) -> Result<ManifestReport> {
    let registry: BTreeMap<String, CertifiedInequality> =
        corpus().into_iter().map(|c| (c.id.clone(), c)).collect();
    let mut rep = ManifestReport::default();
    let mut seen = BTreeSet::new();
    for e in &manifest.entries {
        if !seen.insert(e.id.clone()) {
            rep.duplicates.push(e.id.clone());
            continue;
        }
        let Some(ineq) = registry.get(&e.id) else {
            rep.orphans.push(e.id.clone());
            continue;
        };
        if *e != ManifestEntry::from_inequality(ineq) {
            rep.mismatched.push(e.id.clone());
        }
        for p in sample_points(e) {
            if !(ineq.expression.eval(p).abs() <= EQUALITY_TOL) {
                rep.equality_failures.push(format!("{}@{p}", e.id));
            }
        }
    }
    rep.missing = registry.keys().filter(|k| !seen.contains(*k)).cloned().collect();
    Ok(rep)
}
