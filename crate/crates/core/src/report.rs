//! The JSON document describing a code and its distance computation.

use serde::Serialize;

use crate::bounds::{bound_report, BoundReport};
use crate::code::{DistanceResult, LinearCode, Method, WeightEnumerator};

#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub s: Option<u32>,
    pub d_lower: usize,
    pub d_upper: usize,
    /// `Some(d)` only when the bounds meet.
    pub d_exact: Option<usize>,
    pub method: Method,
    pub witness_weight: usize,
    pub work: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_enumerator: Option<Vec<u64>>,
    pub surface_ref: Option<String>,
    pub bounds: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<u32>>>,
}

impl CodeReport {
    /// `sectional_genus` feeds the `s = 1` bound; `d1` (value, exact) is the
    /// distance of the `s = 1` code on the same surface, used when `s >= 2`.
    pub fn new(
        code: &LinearCode,
        dist: &DistanceResult,
        sectional_genus: Option<u64>,
        d1: Option<(u64, bool)>,
    ) -> Self {
        let (n, k) = (code.len(), code.dimension());
        let s = code.degree();
        let bounds = bound_report(
            code.field().order(),
            n as u64,
            k as u64,
            s.unwrap_or(1) as u64,
            (dist.lower as u64, dist.upper as u64),
            sectional_genus,
            d1,
        );
        CodeReport {
            field: code.field().spec_string(),
            n,
            k,
            s,
            d_lower: dist.lower,
            d_upper: dist.upper,
            d_exact: dist.exact.then_some(dist.upper),
            method: dist.method,
            witness_weight: crate::code::weight(&dist.witness),
            work: dist.work,
            weight_enumerator: None,
            surface_ref: code.surface_ref().map(str::to_string),
            bounds,
            generator: None,
        }
    }

    pub fn with_enumerator(mut self, e: &WeightEnumerator) -> Self {
        self.weight_enumerator = Some(e.coefficients.clone());
        self
    }

    /// Attach the generator matrix as rows of element indices.
    pub fn with_generator(mut self, code: &LinearCode) -> Self {
        self.generator = Some(
            code.generator()
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|e| e.0).collect())
                .collect(),
        );
        self
    }

    /// `[n, k, d]`, or `[n, k, lo..hi]` when `d` is only bracketed.
    pub fn params(&self) -> String {
        match self.d_exact {
            Some(d) => format!("[{}, {}, {}]", self.n, self.k, d),
            None => format!(
                "[{}, {}, {}..{}]",
                self.n, self.k, self.d_lower, self.d_upper
            ),
        }
    }
}
