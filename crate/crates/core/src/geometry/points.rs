use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};

/// Default cap on the number of points any single enumeration may visit.
pub const DEFAULT_POINT_BUDGET: u128 = 1 << 32;

/// A point of projective space, stored as its normalized coordinate vector:
/// the rightmost nonzero coordinate is one.
///
/// The derived order is lexicographic with `x_0` compared first; this is the
/// canonical column order for every code built by the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<Elem>);

impl ProjPoint {
    /// Normalize a nonzero coordinate vector.
    pub fn normalize(field: &FiniteField, coords: &[Elem]) -> Result<Self> {
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::DegenerateInput("zero coordinate vector".into()))?;
        let inv = field.inv(coords[last]).unwrap();
        Ok(ProjPoint(
            coords.iter().map(|&c| field.mul(c, inv)).collect(),
        ))
    }

    /// Wrap an already normalized vector. Panics in debug builds otherwise.
    pub fn from_normalized(coords: Vec<Elem>) -> Self {
        debug_assert!(coords.iter().rev().find(|c| !c.is_zero()) == Some(&Elem::ONE));
        ProjPoint(coords)
    }

    /// The scalar `c` with `coords = c * normalized`, alongside the point.
    pub fn normalize_with_scale(field: &FiniteField, coords: &[Elem]) -> Result<(Self, Elem)> {
        let p = Self::normalize(field, coords)?;
        let last = coords.iter().rposition(|c| !c.is_zero()).unwrap();
        Ok((p, coords[last]))
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    /// Ambient dimension `r` of `P^r`.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Coordinatewise `c -> c^(p^base_power)`; normalization is preserved.
    pub fn frobenius(&self, field: &FiniteField, base_power: u32) -> ProjPoint {
        ProjPoint(
            self.0
                .iter()
                .map(|&c| field.frobenius(c, base_power))
                .collect(),
        )
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(|e| e.0.to_string()).collect();
        write!(f, "({})", c.join(":"))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|e| e.0))
    }
}

/// `(q^{r+1} - 1) / (q - 1)`, saturating.
pub fn projective_space_size(q: u64, r: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 0..=r {
        total = total.saturating_add(pw);
        pw = pw.saturating_mul(q);
    }
    total
}

/// Every point of `P^r(field)` once, in canonical order.
pub fn enumerate_points(field: &FiniteField, r: usize, budget: u128) -> Result<Vec<ProjPoint>> {
    let total = projective_space_size(field.order(), r);
    if total > budget {
        return Err(Error::budget(
            format!("enumerating P^{r}({field})"),
            total,
            budget,
        ));
    }
    let q = field.order() as u32;
    let mut out = Vec::with_capacity(total as usize);
    for last in 0..=r {
        let mut digits = vec![0u32; last];
        'stratum: loop {
            let mut v: Vec<Elem> = digits.iter().map(|&d| Elem(d)).collect();
            v.push(Elem::ONE);
            v.resize(r + 1, Elem::ZERO);
            out.push(ProjPoint(v));
            for i in (0..last).rev() {
                digits[i] += 1;
                if digits[i] < q {
                    continue 'stratum;
                }
                digits[i] = 0;
            }
            break;
        }
    }
    out.sort_unstable();
    Ok(out)
}
