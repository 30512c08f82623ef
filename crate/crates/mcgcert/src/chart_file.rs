//! JSON chart files.
//!
//! ```json
//! {
//!   "params": {"g": 13, "n": 5},
//!   "curves": {"a1": {"bits": "1010000000000000", "sided": "two-sided"}},
//!   "involutions": {"tau": {"matrix": ["..."], "perm": "(2 5)(3 4)",
//!                           "table": [{"curve": "a1", "image": "a1", "eps": -1}]}},
//!   "transports": {"tau*sigma": [{"curve": "a1", "image": "a2", "eps": 1}]},
//!   "nontwist": {"y": {"matrix": ["..."]}, "v": [{"matrix": ["..."]}], "w": []},
//!   "n1_binding": "b1"
//! }
//! ```
//!
//! Bit strings are fixed width with the leftmost bit on `μ₁`. An `image`
//! made only of `0`/`1` is an explicit class; anything else is a curve name.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use mcgcert_core::chart::{
    required_curves, ActionEntry, ChartError, CurveChart, CurveId, CurveImage, CurveRecord, InvolutionData,
    InvolutionName, NontwistData, Sidedness, Sign, TransportOp,
};
use mcgcert_core::gf2::{Gf2Matrix, Gf2Vector, IntersectionForm};
use mcgcert_core::params::{ParamsError, SurfaceParams};
use mcgcert_core::perm::Permutation;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChartFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed chart file at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("incomplete curve set: missing {0}")]
    IncompleteCurveSet(CurveId),
    #[error("dimension mismatch in {context}: expected {expected} bits, found {found}")]
    DimensionMismatch { context: String, expected: usize, found: usize },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

impl From<serde_json::Error> for ChartFileError {
    fn from(e: serde_json::Error) -> Self {
        ChartFileError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub g: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub bits: String,
    pub sided: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub curve: String,
    pub image: String,
    pub eps: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionJson {
    pub matrix: Vec<String>,
    pub perm: String,
    #[serde(default)]
    pub table: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub matrix: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NontwistJson {
    pub y: MatrixJson,
    pub v: Vec<MatrixJson>,
    #[serde(default)]
    pub w: Vec<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartJson {
    pub params: ParamsJson,
    pub curves: BTreeMap<String, CurveJson>,
    pub involutions: BTreeMap<String, InvolutionJson>,
    #[serde(default)]
    pub transports: BTreeMap<String, Vec<EntryJson>>,
    pub nontwist: NontwistJson,
    pub n1_binding: String,
}

fn entry_json(e: &ActionEntry) -> EntryJson {
    EntryJson {
        curve: e.curve.to_string(),
        image: match &e.image {
            CurveImage::Curve(c) => c.to_string(),
            CurveImage::Class(v) => v.to_bits(),
        },
        eps: e.eps.as_i8(),
    }
}

fn matrix_json(m: &Gf2Matrix) -> MatrixJson {
    MatrixJson { matrix: m.to_bit_rows() }
}

impl ChartJson {
    pub fn from_chart(chart: &CurveChart) -> Self {
        Self {
            params: ParamsJson {
                g: chart.params.g,
                n: chart.params.n,
            },
            curves: chart
                .curves
                .iter()
                .map(|(id, rec)| {
                    (
                        id.to_string(),
                        CurveJson {
                            bits: rec.class.to_bits(),
                            sided: rec.sided.as_str().to_string(),
                        },
                    )
                })
                .collect(),
            involutions: chart
                .involutions
                .iter()
                .map(|(name, data)| {
                    (
                        name.to_string(),
                        InvolutionJson {
                            matrix: data.matrix.to_bit_rows(),
                            perm: data.perm.to_cycle_string(),
                            table: data.table.iter().map(entry_json).collect(),
                        },
                    )
                })
                .collect(),
            transports: chart
                .transports
                .iter()
                .map(|(op, entries)| (op.to_string(), entries.iter().map(entry_json).collect()))
                .collect(),
            nontwist: NontwistJson {
                y: matrix_json(&chart.nontwist.y),
                v: chart.nontwist.v.iter().map(matrix_json).collect(),
                w: chart.nontwist.w.iter().map(matrix_json).collect(),
            },
            n1_binding: chart.n1_binding.to_string(),
        }
    }

    pub fn into_chart(self) -> Result<CurveChart, ChartFileError> {
        let params = SurfaceParams::new(self.params.g, self.params.n)?;
        let dim = params.homology_dim();
        let row_count = |context: &str, rows: &[String]| {
            if rows.len() == dim {
                Ok(())
            } else {
                Err(ChartFileError::DimensionMismatch {
                    context: context.to_string(),
                    expected: dim,
                    found: rows.len(),
                })
            }
        };
        let bits = |context: &str, s: &str| -> Result<Gf2Vector, ChartFileError> {
            let v = Gf2Vector::parse_bits(s).map_err(|e| ChartFileError::Invalid {
                context: context.to_string(),
                message: e.to_string(),
            })?;
            if v.dim() != dim {
                return Err(ChartFileError::DimensionMismatch {
                    context: context.to_string(),
                    expected: dim,
                    found: v.dim(),
                });
            }
            Ok(v)
        };
        let matrix = |context: &str, rows: &[String]| -> Result<Gf2Matrix, ChartFileError> {
            row_count(context, rows)?;
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, r)| bits(&format!("{context} row {}", i + 1), r))
                .collect::<Result<Vec<_>, _>>()?;
            Gf2Matrix::from_rows(rows).map_err(|e| ChartFileError::Invalid {
                context: context.to_string(),
                message: e.to_string(),
            })
        };
        let entry = |context: &str, e: &EntryJson| -> Result<ActionEntry, ChartFileError> {
            let curve: CurveId = e.curve.parse()?;
            let image = if !e.image.is_empty() && e.image.chars().all(|c| c == '0' || c == '1') {
                CurveImage::Class(bits(context, &e.image)?)
            } else {
                CurveImage::Curve(e.image.parse()?)
            };
            let eps = Sign::from_i8(e.eps).ok_or_else(|| ChartFileError::Invalid {
                context: context.to_string(),
                message: format!("eps must be 1 or -1, got {}", e.eps),
            })?;
            Ok(ActionEntry { curve, image, eps })
        };

        let mut curves = BTreeMap::new();
        for (name, c) in &self.curves {
            let id: CurveId = name.parse()?;
            let sided: Sidedness = c.sided.parse()?;
            curves.insert(
                id,
                CurveRecord {
                    class: bits(&format!("curve {name}"), &c.bits)?,
                    sided,
                },
            );
        }
        if let Some(missing) = required_curves(&params).into_iter().find(|c| !curves.contains_key(c)) {
            return Err(ChartFileError::IncompleteCurveSet(missing));
        }

        let mut involutions = BTreeMap::new();
        for (name, inv) in &self.involutions {
            let key: InvolutionName = name.parse()?;
            let context = format!("involution {name}");
            let perm = Permutation::parse_cycles(&inv.perm, params.n).map_err(|e| ChartFileError::Invalid {
                context: context.clone(),
                message: e.to_string(),
            })?;
            let table = inv.table.iter().map(|e| entry(&context, e)).collect::<Result<_, _>>()?;
            involutions.insert(
                key,
                InvolutionData {
                    matrix: matrix(&context, &inv.matrix)?,
                    perm,
                    table,
                },
            );
        }

        let mut transports = BTreeMap::new();
        for (name, entries) in &self.transports {
            let op: TransportOp = name.parse()?;
            let context = format!("transport {name}");
            transports.insert(op, entries.iter().map(|e| entry(&context, e)).collect::<Result<_, _>>()?);
        }

        let nt = &self.nontwist;
        let list = |label: &str, ms: &[MatrixJson]| {
            ms.iter()
                .enumerate()
                .map(|(i, m)| matrix(&format!("{label}{}", i + 1), &m.matrix))
                .collect::<Result<Vec<_>, _>>()
        };
        let nontwist = NontwistData {
            y: matrix("y", &nt.y.matrix)?,
            v: list("v", &nt.v)?,
            w: list("w", &nt.w)?,
        };

        Ok(CurveChart {
            form: IntersectionForm::standard(params.g, params.n),
            params,
            curves,
            involutions,
            transports,
            nontwist,
            n1_binding: self.n1_binding.parse()?,
        })
    }
}

/// Serializes a chart; the output is byte-stable for equal charts.
pub fn chart_to_string(chart: &CurveChart) -> String {
    let mut s = serde_json::to_string_pretty(&ChartJson::from_chart(chart)).expect("chart json is always serializable");
    s.push('\n');
    s
}

pub fn chart_from_str(text: &str) -> Result<CurveChart, ChartFileError> {
    let json: ChartJson = serde_json::from_str(text)?;
    json.into_chart()
}

pub fn load_chart(path: &Path) -> Result<CurveChart, ChartFileError> {
    let text = fs::read_to_string(path).map_err(|source| ChartFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    chart_from_str(&text)
}

pub fn dump_chart(chart: &CurveChart, path: &Path) -> Result<(), ChartFileError> {
    fs::write(path, chart_to_string(chart)).map_err(|source| ChartFileError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mcgcert_core::chart::default_chart;

    fn chart(g: usize, n: usize) -> CurveChart {
        default_chart(&SurfaceParams::new(g, n).unwrap()).unwrap()
    }

    #[test]
    fn round_trip() {
        for (g, n) in [(13, 5), (16, 4), (13, 0)] {
            let c = chart(g, n);
            let text = chart_to_string(&c);
            assert_eq!(chart_from_str(&text).unwrap(), c);
            assert_eq!(chart_to_string(&chart(g, n)), text);
        }
    }

    #[test]
    fn missing_curve_is_reported() {
        let mut json = ChartJson::from_chart(&chart(13, 5));
        json.curves.remove("c2");
        let err = json.into_chart().unwrap_err();
        assert!(err.to_string().contains("incomplete curve set"), "{err}");
    }

    #[test]
    fn short_bit_string_is_reported() {
        let mut json = ChartJson::from_chart(&chart(13, 5));
        json.curves.get_mut("a1").unwrap().bits.pop();
        let err = json.into_chart().unwrap_err();
        assert!(err.to_string().contains("dimension mismatch"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_location() {
        let err = chart_from_str("{\n  \"params\": {\"g\": 13,,}\n}").unwrap_err();
        match err {
            ChartFileError::Json { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn explicit_class_images_survive() {
        let mut c = chart(13, 5);
        let class = c.class(CurveId::a(1)).unwrap().clone();
        c.involutions.get_mut(&InvolutionName::Tau).unwrap().table[0].image = CurveImage::Class(class);
        assert_eq!(chart_from_str(&chart_to_string(&c)).unwrap(), c);
    }
}
