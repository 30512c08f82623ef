//! Certificate files: a count header followed by one record per target.

use std::fs;
use std::path::Path;

use mcgcert_core::certify::{required_targets, Certificate, Rule};
use mcgcert_core::chart::CurveChart;
use mcgcert_core::params::SurfaceParams;
use mcgcert_core::rep::WordEval;
use mcgcert_core::word::{GeneratorSymbol, Letter, MappingWord};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chart_file::ParamsJson;

#[derive(Debug, Error)]
pub enum CertFileError {
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed certificate file at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("certificate {index}: {message}")]
    Record { index: usize, message: String },
    #[error("header says {declared} certificates, file has {found}")]
    Count { declared: usize, found: usize },
}

impl From<serde_json::Error> for CertFileError {
    fn from(e: serde_json::Error) -> Self {
        CertFileError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertRecord {
    pub target: String,
    pub word: Vec<String>,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertFile {
    pub params: ParamsJson,
    pub count: usize,
    pub certificates: Vec<CertRecord>,
}

/// A certificate read back from disk. The trace is kept as rule ids only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedCertificate {
    pub target: GeneratorSymbol,
    pub word: MappingWord,
    pub rules: Vec<Rule>,
}

impl CertFile {
    pub fn new(params: &SurfaceParams, certs: &[Certificate]) -> Self {
        Self {
            params: ParamsJson { g: params.g, n: params.n },
            count: certs.len(),
            certificates: certs
                .iter()
                .map(|c| CertRecord {
                    target: c.target.to_string(),
                    word: c.word.to_symbols(),
                    trace: c.rule_ids().into_iter().map(String::from).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate json is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertFileError> {
        let file: CertFile = serde_json::from_str(text)?;
        if file.count != file.certificates.len() {
            return Err(CertFileError::Count {
                declared: file.count,
                found: file.certificates.len(),
            });
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, CertFileError> {
        let text = fs::read_to_string(path).map_err(|source| CertFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), CertFileError> {
        fs::write(path, self.to_json()).map_err(|source| CertFileError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn surface_params(&self) -> Result<SurfaceParams, CertFileError> {
        SurfaceParams::new(self.params.g, self.params.n).map_err(|e| CertFileError::Record {
            index: 0,
            message: e.to_string(),
        })
    }

    pub fn decode(&self) -> Result<Vec<LoadedCertificate>, CertFileError> {
        self.certificates
            .iter()
            .enumerate()
            .map(|(i, rec)| {
                let bad = |message: String| CertFileError::Record { index: i + 1, message };
                let target: GeneratorSymbol = rec.target.parse().map_err(|e| bad(format!("target: {e}")))?;
                let letters = rec
                    .word
                    .iter()
                    .map(|s| s.parse::<Letter>().map_err(|e| bad(format!("word: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let rules = rec
                    .trace
                    .iter()
                    .map(|s| s.parse::<Rule>().map_err(|e| bad(format!("trace: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(LoadedCertificate {
                    target,
                    word: MappingWord::from_letters(letters),
                    rules,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertVerdict {
    pub target: String,
    pub homology: bool,
    pub punctures: bool,
    /// Empty when the certificate is well formed.
    pub problems: Vec<String>,
}

impl CertVerdict {
    pub fn passed(&self) -> bool {
        self.homology && self.punctures && self.problems.is_empty()
    }
}

/// Checks every certificate independently of how it was produced: the word
/// must use involutions only and evaluate to the target in both
/// representations.
pub fn check_certificates<E: WordEval + ?Sized>(ev: &E, certs: &[LoadedCertificate]) -> Vec<CertVerdict> {
    let params = ev.chart().params;
    let required = required_targets(&params);
    certs
        .iter()
        .map(|c| {
            let mut problems = Vec::new();
            if !required.contains(&c.target) {
                problems.push(format!("not a required generator: {}", c.target));
            }
            if !c.word.only_involutions() {
                problems.push("word uses a non-involution letter".to_string());
            }
            if c.rules.is_empty() {
                problems.push("empty trace".to_string());
            }
            let (homology, punctures) = match ev.check_identity(&c.word, &MappingWord::single(c.target)) {
                Ok(v) => (v.homology, v.punctures),
                Err(e) => {
                    problems.push(e.to_string());
                    (false, false)
                }
            };
            CertVerdict {
                target: c.target.to_string(),
                homology,
                punctures,
                problems,
            }
        })
        .collect()
}

/// Problems with the certificate set as a whole: missing or duplicated targets.
pub fn coverage_problems(params: &SurfaceParams, certs: &[LoadedCertificate]) -> Vec<String> {
    let mut out = Vec::new();
    for t in required_targets(params) {
        match certs.iter().filter(|c| c.target == t).count() {
            0 => out.push(format!("no certificate for {t}")),
            1 => {}
            k => out.push(format!("{k} certificates for {t}")),
        }
    }
    out
}

pub fn chart_matches(chart: &CurveChart, file: &CertFile) -> bool {
    chart.params.g == file.params.g && chart.params.n == file.params.n
}

#[cfg(test)]
mod tests {
    use super::*;
    use mcgcert_core::certify::certify_all;
    use mcgcert_core::chart::default_chart;
    use mcgcert_core::rep::Evaluator;

    #[test]
    fn round_trip_and_check() {
        let p = SurfaceParams::new(13, 5).unwrap();
        let chart = default_chart(&p).unwrap();
        let certs = certify_all(&chart).unwrap();
        let file = CertFile::new(&p, &certs);
        assert_eq!(file.count, p.required_generator_count());
        let back = CertFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        let loaded = back.decode().unwrap();
        assert!(coverage_problems(&p, &loaded).is_empty());
        let verdicts = check_certificates(&Evaluator::new(&chart), &loaded);
        assert!(verdicts.iter().all(CertVerdict::passed));
    }

    #[test]
    fn count_header_is_enforced() {
        let p = SurfaceParams::new(13, 5).unwrap();
        let chart = default_chart(&p).unwrap();
        let mut file = CertFile::new(&p, &certify_all(&chart).unwrap());
        file.count += 1;
        assert!(matches!(CertFile::from_json(&file.to_json()), Err(CertFileError::Count { .. })));
    }
}
