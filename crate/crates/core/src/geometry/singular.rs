use super::count::FiberSystem;
use super::points::ProjPoint;
use crate::error::{Error, Result};
use crate::field::{FieldEmbedding, FiniteField};
use crate::linalg::Matrix;
use crate::poly::HomogPoly;

/// Singular points found over one extension `GF(q^r)`.
#[derive(Clone, Debug)]
pub struct SingularLevel {
    pub degree: u32,
    pub field: FiniteField,
    pub points: Vec<ProjPoint>,
}

/// Result of screening for singular points over `GF(q^r)`, `r <= max_degree`.
///
/// An empty screen is evidence of smoothness, not a proof: singular points
/// defined only over larger extensions are not seen.
#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub max_degree: u32,
    pub levels: Vec<SingularLevel>,
}

impl SingularityReport {
    pub fn is_smooth(&self) -> bool {
        self.levels.iter().all(|l| l.points.is_empty())
    }

    pub fn verdict(&self) -> String {
        if self.is_smooth() {
            format!("heuristically smooth (R={})", self.max_degree)
        } else {
            let first = self.levels.iter().find(|l| !l.points.is_empty()).unwrap();
            format!("singular over GF({})", first.field.order())
        }
    }
}

/// Points over `GF(q^r)`, `1 <= r <= max_degree`, where the Jacobian of the
/// generators has rank below `codim`. For a hypersurface (`codim == 1`) these
/// are the common zeros of the form and all its partials.
pub fn singular_points(
    field: &FiniteField,
    ambient: usize,
    gens: &[HomogPoly],
    codim: usize,
    max_degree: u32,
    budget: u128,
) -> Result<SingularityReport> {
    if gens.is_empty() {
        return Ok(SingularityReport {
            max_degree,
            levels: Vec::new(),
        });
    }
    if codim == 0 || codim > gens.len() {
        return Err(Error::InvalidArgument(format!(
            "codimension {codim} with {} generators",
            gens.len()
        )));
    }
    let partials: Vec<Vec<HomogPoly>> = gens
        .iter()
        .map(|g| (0..=ambient).map(|i| g.partial(i)).collect())
        .collect();
    let mut levels = Vec::new();
    for r in 1..=max_degree {
        let ext = field.extension(r)?;
        let e = FieldEmbedding::new(field, &ext)?;
        let points = if codim == 1 && gens.len() == 1 {
            let mut system = gens.to_vec();
            system.extend(partials[0].iter().cloned());
            FiberSystem::new(field, ambient, &system)?
                .over_extension(r)?
                .points(budget)?
        } else {
            let pts = FiberSystem::new(field, ambient, gens)?
                .over_extension(r)?
                .points(budget)?;
            let jac: Vec<Vec<HomogPoly>> = partials
                .iter()
                .map(|row| row.iter().map(|d| d.embed(&e)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            pts.into_iter()
                .filter(|p| {
                    let rows: Vec<_> = jac
                        .iter()
                        .map(|row| row.iter().map(|d| d.eval_unchecked(p.coords())).collect())
                        .collect();
                    Matrix::from_rows(&ext, &rows).unwrap().rank() < codim
                })
                .collect()
        };
        levels.push(SingularLevel {
            degree: r,
            field: ext,
            points,
        });
    }
    Ok(SingularityReport { max_degree, levels })
}
