//! JSON file formats. Indices in files are 0-based.

use crate::adapted::CurveTruncation;
use crate::error::{Error, Result};
use crate::frame::{gram_schmidt, Frame, ORTHONORMAL_TOL};
use crate::grassmann::{DiagonalForm, GrassChart};
use crate::poly::Jet;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub mu: Vec<u32>,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetFile {
    pub n: usize,
    pub r: usize,
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub n: usize,
    pub m: usize,
    pub vectors: Vec<Vec<f64>>,
    /// Run Gram–Schmidt instead of requiring orthonormal input.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub orthonormalize: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub m: usize,
    pub s: usize,
    pub i: usize,
    pub a: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormFile {
    Diagonal { n: usize, alpha: Vec<f64> },
    Matrix { matrix: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartFile {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    /// Defaults to the ascending complement of `I`.
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<f64>>,
}

fn parse<T: DeserializeOwned>(what: &str, text: &str) -> Result<T> {
    if text.trim().is_empty() {
        return Err(Error::invalid(format!("{what} file is empty")));
    }
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("{what} file: {e}")))
}

fn context(what: &str, e: Error) -> Error {
    match e {
        Error::InvalidInput(msg) => Error::invalid(format!("{what} file: {msg}")),
        other => other,
    }
}

impl JetFile {
    pub fn into_jet(self) -> Result<Jet> {
        let terms = self.terms.into_iter().map(|t| (t.mu, t.c));
        Jet::from_terms(self.n, self.r, terms).map_err(|e| context("jet", e))
    }

    pub fn from_jet(j: &Jet) -> Self {
        JetFile {
            n: j.n(),
            r: j.r(),
            terms: j
                .terms()
                .into_iter()
                .map(|(mu, c)| TermFile {
                    mu: mu.into_vec(),
                    c,
                })
                .collect(),
        }
    }
}

impl FrameFile {
    pub fn into_frame(self) -> Result<Frame> {
        if self.vectors.len() != self.m {
            return Err(Error::invalid(format!(
                "frame file: `vectors` has {} entries but `m` = {}",
                self.vectors.len(),
                self.m
            )));
        }
        if let Some(k) = self.vectors.iter().position(|v| v.len() != self.n) {
            return Err(Error::invalid(format!(
                "frame file: `vectors[{k}]` has {} entries but `n` = {}",
                self.vectors[k].len(),
                self.n
            )));
        }
        let f = if self.orthonormalize {
            gram_schmidt(&self.vectors, 1e-12)
        } else {
            Frame::new(self.vectors, ORTHONORMAL_TOL)
        };
        f.map_err(|e| context("frame", e))
    }

    pub fn from_frame(f: &Frame) -> Self {
        FrameFile {
            n: f.n(),
            m: f.m(),
            vectors: f.vectors().to_vec(),
            orthonormalize: false,
        }
    }
}

impl CurveFile {
    pub fn into_curve(self) -> Result<CurveTruncation> {
        CurveTruncation::new(self.m, self.s, self.i, self.a).map_err(|e| context("curve", e))
    }

    pub fn from_curve(c: &CurveTruncation) -> Self {
        CurveFile {
            m: c.m(),
            s: c.s(),
            i: c.i(),
            a: c.rows().to_vec(),
        }
    }
}

impl FormFile {
    pub fn into_form(self, tol: f64) -> Result<DiagonalForm> {
        match self {
            FormFile::Diagonal { n, alpha } => {
                if alpha.len() != n {
                    return Err(Error::invalid(format!(
                        "form file: `alpha` has {} entries but `n` = {n}",
                        alpha.len()
                    )));
                }
                DiagonalForm::new(alpha)
            }
            FormFile::Matrix { matrix } => DiagonalForm::from_symmetric(&matrix, tol),
        }
        .map_err(|e| context("form", e))
    }
}

impl ChartFile {
    pub fn into_chart(self, n: usize) -> Result<GrassChart> {
        match self.j {
            Some(j) => GrassChart::new(self.i, j, self.w),
            None => GrassChart::with_complement(n, self.i, self.w),
        }
        .map_err(|e| context("chart", e))
    }

    pub fn from_chart(c: &GrassChart) -> Self {
        ChartFile {
            i: c.i().to_vec(),
            j: Some(c.j().to_vec()),
            w: c.w().to_vec(),
        }
    }
}

pub fn parse_jet(text: &str) -> Result<Jet> {
    parse::<JetFile>("jet", text)?.into_jet()
}

pub fn parse_frame(text: &str) -> Result<Frame> {
    parse::<FrameFile>("frame", text)?.into_frame()
}

pub fn parse_curve(text: &str) -> Result<CurveTruncation> {
    parse::<CurveFile>("curve", text)?.into_curve()
}

/// `tol` is the relative eigenvalue floor for matrix input.
pub fn parse_form(text: &str, tol: f64) -> Result<DiagonalForm> {
    parse::<FormFile>("form", text)
        .map_err(|_| {
            Error::invalid(
                "form file: expected {\"n\": int, \"alpha\": [...]} or {\"matrix\": [[...]]}",
            )
        })?
        .into_form(tol)
}

pub fn parse_chart(text: &str, n: usize) -> Result<GrassChart> {
    parse::<ChartFile>("chart", text)?.into_chart(n)
}

pub fn jet_to_json(j: &Jet) -> String {
    serde_json::to_string_pretty(&JetFile::from_jet(j)).expect("jet serializes")
}

pub fn frame_to_json(f: &Frame) -> String {
    serde_json::to_string_pretty(&FrameFile::from_frame(f)).expect("frame serializes")
}

pub fn curve_to_json(c: &CurveTruncation) -> String {
    serde_json::to_string_pretty(&CurveFile::from_curve(c)).expect("curve serializes")
}

pub fn chart_to_json(c: &GrassChart) -> String {
    serde_json::to_string_pretty(&ChartFile::from_chart(c)).expect("chart serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_name_fields() {
        let e = parse_jet(r#"{"n": 2, "r": 2}"#).unwrap_err().to_string();
        assert!(e.contains("terms"), "{e}");
        let e = parse_jet(r#"{"n": 2, "r": 2, "terms": [{"mu": [0, 0], "c": 1.0}]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("terms[0].mu"), "{e}");
        assert!(parse_jet("  ").is_err());
        let e = parse_frame(r#"{"n": 2, "m": 1, "vectors": [[1.0]]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("vectors[0]"), "{e}");
    }

    #[test]
    fn jet_round_trip() {
        let j = Jet::from_terms(2, 3, vec![(vec![1, 0], 0.5), (vec![0, 3], -2.0)]).unwrap();
        assert_eq!(parse_jet(&jet_to_json(&j)).unwrap(), j);
    }
}
