use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::points::{enumerate_points, projective_space_size, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::poly::HomogPoly;

/// Restrict a form to the hyperplane `h . x = 0` by solving for the last
/// variable with a nonzero coefficient. The result has one variable fewer.
pub fn hyperplane_section(f: &HomogPoly, h: &[Elem]) -> Result<HomogPoly> {
    let field = f.field();
    let n = f.nvars();
    if h.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "linear form with {} coefficients for {n} variables",
            h.len()
        )));
    }
    let k = h
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or_else(|| Error::DegenerateInput("zero linear form".into()))?;
    let scale = field.neg(field.inv(h[k]).unwrap());
    let images: Vec<HomogPoly> = (0..n)
        .map(|i| {
            let mut coeffs = vec![Elem::ZERO; n - 1];
            if i == k {
                for (j, &c) in h.iter().enumerate() {
                    if j != k {
                        coeffs[if j < k { j } else { j - 1 }] = field.mul(c, scale);
                    }
                }
            } else {
                coeffs[if i < k { i } else { i - 1 }] = Elem::ONE;
            }
            HomogPoly::linear(field, &coeffs)
        })
        .collect();
    f.compose(&images)
}

/// Point counts of all hyperplane sections of a point set.
#[derive(Clone, Debug, Serialize)]
pub struct SectionScan {
    /// `count -> number of hyperplanes meeting the set in exactly count points`.
    pub histogram: BTreeMap<usize, u64>,
    pub max: usize,
    /// Hyperplanes (as normalized coefficient vectors) achieving the maximum.
    pub witnesses: Vec<ProjPoint>,
    pub hyperplanes: u64,
}

/// Count the points of `points` on every `GF(q)`-hyperplane of `P^ambient`.
pub fn section_scan(
    field: &FiniteField,
    ambient: usize,
    points: &[ProjPoint],
    budget: u128,
) -> Result<SectionScan> {
    let hyperplanes = projective_space_size(field.order(), ambient);
    let needed = hyperplanes.saturating_mul(points.len().max(1) as u128);
    if needed > budget {
        return Err(Error::budget("hyperplane section scan", needed, budget));
    }
    let planes = enumerate_points(field, ambient, budget)?;
    let counts: Vec<usize> = planes
        .par_iter()
        .map(|h| {
            points
                .iter()
                .filter(|p| {
                    let mut acc = Elem::ZERO;
                    for (&a, &b) in h.coords().iter().zip(p.coords()) {
                        acc = field.add(acc, field.mul(a, b));
                    }
                    acc.is_zero()
                })
                .count()
        })
        .collect();
    let mut histogram = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c).or_insert(0u64) += 1;
    }
    let max = counts.iter().copied().max().unwrap_or(0);
    let witnesses = planes
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c == max)
        .map(|(h, _)| h.clone())
        .collect();
    Ok(SectionScan {
        histogram,
        max,
        witnesses,
        hyperplanes: planes.len() as u64,
    })
}
