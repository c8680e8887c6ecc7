use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{delpezzo6_nr, sectional_genus_hypersurface};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::geometry::{
    count_points, enumerate_points, lines_on_surface, rational_points, section_scan,
    singular_points, Line, ProjPoint, SectionScan, SingularityReport,
};
use crate::poly::HomogPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Plane,
    Cubic,
    Shioda,
    VanLuijk,
    DelPezzo4,
    DelPezzo6,
    Custom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Plane => "plane",
            Family::Cubic => "cubic",
            Family::Shioda => "shioda",
            Family::VanLuijk => "van-luijk",
            Family::DelPezzo4 => "del-pezzo-4",
            Family::DelPezzo6 => "del-pezzo-6",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Family::Plane,
            Family::Cubic,
            Family::Shioda,
            Family::VanLuijk,
            Family::DelPezzo4,
            Family::DelPezzo6,
            Family::Custom,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// A rational map `P^domain -> P^ambient` given by forms of equal degree.
/// Its image over `GF(q)` supplies the surface's rational points.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub domain: usize,
    pub forms: Vec<HomogPoly>,
}

impl Parametrization {
    /// Images of all domain points where some form is nonzero, normalized,
    /// deduplicated and in canonical order.
    pub fn image_points(&self, field: &FiniteField, budget: u128) -> Result<Vec<ProjPoint>> {
        let mut out: Vec<ProjPoint> = enumerate_points(field, self.domain, budget)?
            .iter()
            .filter_map(|p| {
                let v: Vec<Elem> = self
                    .forms
                    .iter()
                    .map(|f| f.eval_unchecked(p.coords()))
                    .collect();
                ProjPoint::normalize(field, &v).ok()
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// A projective surface: generators in `P^ambient` plus metadata.
#[derive(Clone, Debug)]
pub struct Surface {
    field: FiniteField,
    ambient: usize,
    generators: Vec<HomogPoly>,
    degree: Option<u32>,
    sectional_genus: Option<u64>,
    family: Family,
    parametrization: Option<Parametrization>,
}

impl Surface {
    pub fn new(
        field: &FiniteField,
        ambient: usize,
        generators: Vec<HomogPoly>,
        family: Family,
    ) -> Result<Self> {
        if ambient < 2 {
            return Err(Error::InvalidArgument(
                "a surface needs ambient dimension >= 2".into(),
            ));
        }
        for g in &generators {
            field.ensure_same(g.field())?;
            if g.nvars() != ambient + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "generator in {} variables for P^{ambient}",
                    g.nvars()
                )));
            }
            if g.is_zero() {
                return Err(Error::DegenerateInput("zero generator".into()));
            }
        }
        let degree = match (ambient, generators.as_slice()) {
            (3, [g]) => Some(g.degree()),
            _ => None,
        };
        let sectional_genus = degree.map(|m| sectional_genus_hypersurface(m as u64));
        Ok(Surface {
            field: field.clone(),
            ambient,
            generators,
            degree,
            sectional_genus,
            family,
            parametrization: None,
        })
    }

    /// A surface in `P^3` cut out by one form.
    pub fn hypersurface(f: HomogPoly, family: Family) -> Result<Self> {
        if f.nvars() != 4 {
            return Err(Error::DimensionMismatch(
                "a hypersurface needs 4 variables".into(),
            ));
        }
        let field = f.field().clone();
        Surface::new(&field, 3, vec![f], family)
    }

    /// The projective plane itself.
    pub fn plane(field: &FiniteField) -> Self {
        Surface {
            field: field.clone(),
            ambient: 2,
            generators: Vec::new(),
            degree: Some(1),
            sectional_genus: Some(0),
            family: Family::Plane,
            parametrization: None,
        }
    }

    pub fn with_sectional_genus(mut self, genus: u64) -> Self {
        self.sectional_genus = Some(genus);
        self
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn with_parametrization(mut self, p: Parametrization) -> Result<Self> {
        if p.forms.len() != self.ambient + 1 {
            return Err(Error::DimensionMismatch("parametrization arity".into()));
        }
        self.parametrization = Some(p);
        Ok(self)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[HomogPoly] {
        &self.generators
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn sectional_genus(&self) -> Option<u64> {
        self.sectional_genus
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn parametrization(&self) -> Option<&Parametrization> {
        self.parametrization.as_ref()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.ambient == 3 && self.generators.len() == 1
    }

    /// `X(GF(q))` in canonical order.
    pub fn rational_points(&self, budget: u128) -> Result<Vec<ProjPoint>> {
        match &self.parametrization {
            Some(p) => p.image_points(&self.field, budget),
            None => rational_points(&self.field, self.ambient, &self.generators, budget),
        }
    }

    /// `N_r = |X(GF(q^r))|`. For the degree-6 del Pezzo family the count
    /// comes from the closed formula, since the plane parametrization misses
    /// the exceptional curves.
    pub fn count_over(&self, r: u32, budget: u128) -> Result<u64> {
        if self.family == Family::DelPezzo6 {
            return Ok(delpezzo6_nr(self.field.order(), r) as u64);
        }
        count_points(&self.field, self.ambient, &self.generators, r, budget)
    }

    /// Singular points over `GF(q^r)` for `r <= max_degree`.
    pub fn singular_points(&self, max_degree: u32, budget: u128) -> Result<SingularityReport> {
        singular_points(
            &self.field,
            self.ambient,
            &self.generators,
            self.ambient - 2,
            max_degree,
            budget,
        )
    }

    /// `GF(q)`-lines on the surface.
    pub fn lines(&self, budget: u128) -> Result<Vec<Line>> {
        let pts = self.rational_points(budget)?;
        lines_on_surface(&self.field, &self.generators, &pts, budget)
    }

    /// Point counts of all hyperplane sections.
    pub fn section_scan(&self, budget: u128) -> Result<SectionScan> {
        let pts = self.rational_points(budget)?;
        section_scan(&self.field, self.ambient, &pts, budget)
    }
}
