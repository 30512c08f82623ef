//! Machine- and human-readable renderings of a verification run.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use mcgcert_core::suite::{Check, VerificationReport};
use serde::Serialize;

use crate::cache::CacheStats;
use crate::cert_file::CertVerdict;
use crate::chart_file::ParamsJson;

#[derive(Debug, Clone, Serialize)]
pub struct ParamsOut {
    pub g: usize,
    pub n: usize,
    pub parity: &'static str,
    pub r: usize,
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOut {
    pub id: String,
    pub description: String,
    pub anchor: &'static str,
    pub representation: &'static str,
    pub verdict: String,
    pub definitional: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusOut {
    pub symbols: Vec<String>,
    pub size: usize,
    pub expected: Vec<String>,
    pub mode_count: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PiOut {
    pub images: BTreeMap<String, String>,
    /// Decimal strings; `n!` exceeds `u64` quickly.
    pub order: Option<String>,
    pub expected_order: Option<String>,
    pub surjective: Option<bool>,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountsOut {
    pub substantive: Tally,
    pub definitional: Tally,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub params: ParamsOut,
    pub checks: Vec<CheckOut>,
    pub census: CensusOut,
    pub pi: PiOut,
    pub counts: CountsOut,
    pub cache: CacheStats,
    pub overall: &'static str,
    /// Seconds since the Unix epoch. Not covered by the determinism contract.
    pub timestamp: u64,
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn check_out(c: &Check) -> CheckOut {
    CheckOut {
        id: c.id.clone(),
        description: c.description.clone(),
        anchor: c.anchor,
        representation: c.representation.as_str(),
        verdict: c.verdict.as_str(),
        definitional: c.definitional,
    }
}

pub fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

impl ReportJson {
    pub fn new(report: &VerificationReport, cache: CacheStats, timestamp: u64) -> Self {
        let p = &report.params;
        let (sp, st) = report.counts(false);
        let (dp, dt) = report.counts(true);
        Self {
            params: ParamsOut {
                g: p.g,
                n: p.n,
                parity: p.parity.as_str(),
                r: p.r,
                k: p.k,
                l: p.l,
            },
            checks: report.checks.iter().map(check_out).collect(),
            census: CensusOut {
                symbols: report.census.symbols.iter().map(|s| s.to_string()).collect(),
                size: report.census.symbols.len(),
                expected: report.census.expected.iter().map(|s| s.to_string()).collect(),
                mode_count: report.census.mode_count,
                holds: report.census.holds(),
            },
            pi: PiOut {
                images: report
                    .pi
                    .images
                    .iter()
                    .map(|(name, perm)| (name.to_string(), perm.to_cycle_string()))
                    .collect(),
                order: report.pi.order.map(|o| o.to_string()),
                expected_order: report.pi.expected_order.map(|o| o.to_string()),
                surjective: report.pi.surjective,
                holds: report.pi.holds(),
            },
            counts: CountsOut {
                substantive: Tally { passed: sp, total: st },
                definitional: Tally { passed: dp, total: dt },
                skipped: report
                    .checks
                    .iter()
                    .filter(|c| matches!(c.verdict, mcgcert_core::suite::Verdict::Skipped(_)))
                    .count(),
            },
            cache,
            overall: verdict_word(report.overall),
            timestamp,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report json is always serializable");
        s.push('\n');
        s
    }
}

/// Short terminal summary: failures in full, everything else counted.
pub fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let p = &report.params;
    let (sp, st) = report.counts(false);
    let (dp, dt) = report.counts(true);
    let _ = writeln!(out, "surface N_{{{},{}}} ({} mode, r={}, k={}, l={})", p.g, p.n, p.parity, p.r, p.k, p.l);
    let _ = writeln!(out, "substantive checks: {sp}/{st} passed");
    let _ = writeln!(out, "definitional checks: {dp}/{dt} passed");
    let names: Vec<String> = report.census.symbols.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(
        out,
        "census: {} involutions [{}], expected {} ({})",
        names.len(),
        names.join(", "),
        report.census.expected.len(),
        verdict_word(report.census.holds())
    );
    match report.pi.surjective {
        Some(s) => {
            let _ = writeln!(out, "pi onto Sym_{}: {}", p.n, verdict_word(s));
        }
        None => {
            let _ = writeln!(out, "pi onto Sym_{}: trivial", p.n);
        }
    }
    for c in report.failures() {
        let _ = writeln!(out, "FAIL {} [{}] {}", c.id, c.representation.as_str(), c.description);
    }
    let _ = writeln!(out, "overall: {}", verdict_word(report.overall));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CertCheckOut {
    pub target: String,
    pub homology: bool,
    pub punctures: bool,
    pub problems: Vec<String>,
    pub verdict: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertReportJson {
    pub params: ParamsJson,
    pub certificates: Vec<CertCheckOut>,
    pub coverage: Vec<String>,
    pub overall: &'static str,
    pub timestamp: u64,
}

impl CertReportJson {
    pub fn new(params: ParamsJson, verdicts: &[CertVerdict], coverage: Vec<String>, timestamp: u64) -> Self {
        let overall = coverage.is_empty() && verdicts.iter().all(CertVerdict::passed);
        Self {
            params,
            certificates: verdicts
                .iter()
                .map(|v| CertCheckOut {
                    target: v.target.clone(),
                    homology: v.homology,
                    punctures: v.punctures,
                    problems: v.problems.clone(),
                    verdict: verdict_word(v.passed()),
                })
                .collect(),
            coverage,
            overall: verdict_word(overall),
            timestamp,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == "pass"
    }
}

/// Strips the `timestamp` field so two reports can be compared.
pub fn without_timestamp(json: &str) -> Option<String> {
    let mut v: serde_json::Value = serde_json::from_str(json).ok()?;
    v.as_object_mut()?.remove("timestamp");
    serde_json::to_string(&v).ok()
}

/// Fixed-width table for the `Sym_n` sweep.
pub fn render_symn(rows: &[mcgcert_core::suite::SymnRow]) -> String {
    let mut out = String::from("  n  parity  lemma  chart\n");
    for r in rows {
        let chart = match r.chart_generated {
            Some(ok) => verdict_word(ok),
            None => "-",
        };
        let _ = writeln!(out, "{:>3}  {:<6}  {:<5}  {}", r.n, r.parity.as_str(), verdict_word(r.lemma_generated), chart);
    }
    out
}
