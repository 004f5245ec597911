//! The serialized output record and its writers.
//!
//! Every struct here serializes its fields in declaration order and every map
//! is a `BTreeMap`, so identical inputs give identical bytes. Floats use the
//! shortest representation that round-trips.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use rumin_core::checks::Check;
use rumin_core::spectrum::{Eigenvalue, SpectrumSlice};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

pub const CSV_HEADER: [&str; 4] = ["eigenvalue_num", "eigenvalue_den", "eigenvalue_float", "multiplicity"];

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub parameters: BTreeMap<&'static str, Value>,
    pub payload: Payload,
    pub checks: Vec<CheckRecord>,
}

impl OutputRecord {
    pub fn new(command: &'static str, parameters: BTreeMap<&'static str, Value>, payload: Payload) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            parameters,
            payload,
            checks: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
}

impl CheckRecord {
    pub fn within(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: residual <= tolerance,
            residual,
        }
    }
}

impl From<Check> for CheckRecord {
    fn from(c: Check) -> Self {
        Self {
            name: c.name,
            passed: c.passed,
            residual: c.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Spectrum(SpectrumPayload),
    Kappa(KappaPayload),
    Torsion(TorsionPayload),
    Verify(VerifyPayload),
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumPayload {
    pub n: u32,
    pub canonical_degree: u32,
    pub truncation: u32,
    pub entries: Vec<SpectrumEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntry {
    pub eigenvalue: String,
    pub eigenvalue_float: f64,
    pub multiplicity: u128,
    pub contributors: Vec<ContributorRecord>,
    #[serde(skip)]
    pub exact: Eigenvalue,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContributorRecord {
    pub label: LabelRecord,
    pub case: &'static str,
    pub bidegree: [u32; 2],
    pub bidegree_case: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelRecord {
    pub q: i64,
    pub j: u32,
    pub i: u32,
    pub p: i64,
}

impl SpectrumPayload {
    pub fn from_slice(slice: &SpectrumSlice) -> Result<Self, CliError> {
        let mut entries = Vec::with_capacity(slice.len());
        for (mu, mult) in slice.entries() {
            let multiplicity = u128::try_from(mult)
                .map_err(|_| CliError::Range(format!("multiplicity of {mu} exceeds 128 bits")))?;
            let contributors = slice
                .contributors(mu)
                .iter()
                .map(|c| ContributorRecord {
                    label: LabelRecord {
                        q: c.label.q(),
                        j: c.label.j(),
                        i: c.label.i(),
                        p: c.label.p(),
                    },
                    case: c.label.case().as_str(),
                    bidegree: [c.bidegree.s, c.bidegree.t],
                    bidegree_case: c.bidegree_case.as_str(),
                })
                .collect();
            entries.push(SpectrumEntry {
                eigenvalue: mu.to_string(),
                eigenvalue_float: mu.to_f64(),
                multiplicity,
                contributors,
                exact: *mu,
            });
        }
        Ok(Self {
            n: slice.n,
            canonical_degree: slice.canonical_degree(),
            truncation: slice.truncation,
            entries,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KappaPayload {
    pub mode: &'static str,
    pub convention: &'static str,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_decimal: Option<String>,
    pub error_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_one: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_two: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionPayload {
    pub n: u32,
    pub convention: &'static str,
    pub kappa_at_0: f64,
    pub kappa_prime_at_0: f64,
    pub kappa_prime_at_0_decimal: String,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "T_decimal")]
    pub t_decimal: String,
    #[serde(rename = "T_ray_singer")]
    pub t_ray_singer: f64,
    pub ratio: f64,
    pub expected_ratio: u64,
    pub reference: ReferenceRecord,
    pub route_residuals: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceRecord {
    pub s: f64,
    pub truncation: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyPayload {
    pub n: u32,
    pub max: u32,
    pub checks_run: usize,
    pub checks_failed: usize,
}

pub fn write_json(record: &OutputRecord, out: &mut impl Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_owned()
    } else {
        x.to_string()
    }
}

pub fn write_csv(payload: &SpectrumPayload, out: &mut impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for e in &payload.entries {
        w.write_record([
            e.exact.numer().to_string(),
            e.exact.denom().to_string(),
            format_float(e.eigenvalue_float),
            e.multiplicity.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
