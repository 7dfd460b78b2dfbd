//! Dirichlet energy, signal energy and the S-value smoothness measure.
//!
//! For a signal block `X` and a Laplacian-type operator `L`:
//!
//! * Dirichlet energy `E_S = tr(XᵀLX)`
//! * signal energy `E = tr(XᵀX)`
//! * non-smooth energy `E_NS = E − E_S` (may be negative)
//! * S-value `S = E_S / E`, the block Rayleigh quotient. Small means smooth.
//!
//! All traces are accumulated with compensated summation.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dense::{compensated_sum, DenseMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ops::{build_operator, OperatorKind, SparseOperator};

/// `tr(XᵀMX)`, summed column by column as `xᵀ(Mx)`.
pub fn dirichlet_energy(op: &SparseOperator, x: &DenseMatrix) -> Result<f64> {
    if !op.kind().is_laplacian() {
        log::warn!("Dirichlet energy requested for non-Laplacian operator {}", op.kind());
    }
    let mx = op.apply(x)?;
    Ok(compensated_sum(x.as_slice().iter().zip(mx.as_slice()).map(|(a, b)| a * b)))
}

/// `tr(XᵀX)`
pub fn signal_energy(x: &DenseMatrix) -> f64 {
    x.frobenius_sq()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Energies {
    pub e_s: f64,
    pub e: f64,
    pub e_ns: f64,
}

impl Energies {
    pub fn compute(op: &SparseOperator, x: &DenseMatrix) -> Result<Energies> {
        let e_s = dirichlet_energy(op, x)?;
        let e = signal_energy(x);
        Ok(Energies { e_s, e, e_ns: e - e_s })
    }

    pub fn s_value(&self) -> Result<f64> {
        if self.e == 0.0 {
            return Err(Error::ZeroSignal);
        }
        Ok(self.e_s / self.e)
    }
}

pub fn s_value(op: &SparseOperator, x: &DenseMatrix) -> Result<f64> {
    Energies::compute(op, x)?.s_value()
}

/// n×C indicator matrix with a single 1 per row.
pub fn one_hot(labels: &[usize], n_classes: usize) -> Result<DenseMatrix> {
    let mut y = DenseMatrix::zeros(labels.len(), n_classes);
    for (i, &l) in labels.iter().enumerate() {
        if l >= n_classes {
            return Err(Error::LabelOutOfRange { node: i, label: l as i64, n_classes });
        }
        y[(i, l)] = 1.0;
    }
    Ok(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum FeatureMode {
    #[default]
    #[serde(rename = "raw")]
    Raw,
    #[serde(rename = "rownorm")]
    RowNormalized,
}

impl FeatureMode {
    pub fn name(self) -> &'static str {
        match self {
            FeatureMode::Raw => "raw",
            FeatureMode::RowNormalized => "rownorm",
        }
    }

    pub fn apply(self, x: &DenseMatrix) -> DenseMatrix {
        match self {
            FeatureMode::Raw => x.clone(),
            FeatureMode::RowNormalized => x.row_normalized(),
        }
    }
}

impl FromStr for FeatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(FeatureMode::Raw),
            "rownorm" | "row-normalized" | "row_normalized" => Ok(FeatureMode::RowNormalized),
            _ => Err(Error::InvalidArgument(format!("unknown feature mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEnergies {
    pub feature: Energies,
    pub label: Energies,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub operator: OperatorKind,
    pub feature_mode: FeatureMode,
    #[serde(rename = "feature_S")]
    pub feature_s: f64,
    #[serde(rename = "label_S")]
    pub label_s: f64,
    /// `label_S − feature_S`
    pub diff: f64,
    pub energies: BlockEnergies,
}

pub fn smoothness_report(graph: &Graph, kind: OperatorKind, mode: FeatureMode) -> Result<SmoothnessReport> {
    if !kind.is_laplacian() {
        return Err(Error::NotLaplacian(kind.to_string()));
    }
    let gamma = kind.needs_gamma().then_some(1.0);
    let op = build_operator(graph, kind, gamma)?;
    let feature = Energies::compute(&op, &mode.apply(graph.features()))?;
    let label = Energies::compute(&op, &one_hot(graph.labels(), graph.n_classes())?)?;
    let feature_s = feature.s_value()?;
    let label_s = label.s_value()?;
    Ok(SmoothnessReport {
        operator: kind,
        feature_mode: mode,
        feature_s,
        label_s,
        diff: label_s - feature_s,
        energies: BlockEnergies { feature, label },
    })
}

/// Fixed-width text table with one column per dataset.
pub fn render_table(rows: &[(String, SmoothnessReport)]) -> String {
    let mut out = String::new();
    let w = rows.iter().map(|(name, _)| name.len() + 2).max().unwrap_or(0).max(11);
    let _ = write!(out, "{:<24}", "dataset");
    for (name, _) in rows {
        let _ = write!(out, "{name:>w$}");
    }
    out.push('\n');
    let lines: [(&str, fn(&SmoothnessReport) -> f64); 3] = [
        ("input feature", |r| r.feature_s),
        ("label", |r| r.label_s),
        ("diff (label - feature)", |r| r.diff),
    ];
    for (title, get) in lines {
        let _ = write!(out, "{title:<24}");
        for (_, r) in rows {
            let _ = write!(out, "{:>w$.3}", get(r));
        }
        out.push('\n');
    }
    out
}
