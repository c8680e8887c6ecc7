use serde::Serialize;

use super::sweep::weight_enumerator;
use super::LinearCode;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::geometry::ProjPoint;
use crate::linalg::Matrix;

/// Column scaling, then column permutation, then an optional row transform,
/// carrying one generator matrix onto another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialWitness {
    /// Multiplier of each source column.
    pub scaling: Vec<Elem>,
    /// Target column `t` is scaled source column `permutation[t]`.
    pub permutation: Vec<usize>,
    /// `None` stands for the identity.
    #[serde(skip)]
    pub row_transform: Option<Matrix>,
}

impl MonomialWitness {
    fn scaled_permuted(&self, g: &Matrix) -> Matrix {
        let f = g.field();
        let mut out = Matrix::zeros(f, g.rows(), g.cols());
        for (t, &j) in self.permutation.iter().enumerate() {
            for i in 0..g.rows() {
                out[(i, t)] = f.mul(g[(i, j)], self.scaling[j]);
            }
        }
        out
    }

    /// The witness applied to `g`.
    pub fn apply(&self, g: &Matrix) -> Result<Matrix> {
        if g.cols() != self.permutation.len() {
            return Err(Error::DimensionMismatch("witness length".into()));
        }
        let m = self.scaled_permuted(g);
        match &self.row_transform {
            Some(t) => t.mul(&m),
            None => Ok(m),
        }
    }

    pub fn verify(&self, source: &LinearCode, target: &LinearCode) -> bool {
        self.apply(source.generator())
            .is_ok_and(|m| &m == target.generator())
    }
}

/// The code of the points `A p` (re-normalized and re-sorted) together with
/// a witness of its monomial equivalence to `code`.
pub fn apply_projective_transform(
    code: &LinearCode,
    a: &Matrix,
) -> Result<(LinearCode, MonomialWitness)> {
    let field = code.field();
    if code.degree() != Some(1) || code.provenance().is_empty() {
        return Err(Error::InvalidArgument(
            "needs a degree-1 code with point labels".into(),
        ));
    }
    let dim = code.provenance()[0].dim() + 1;
    if a.rows() != dim || a.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "transform must be {dim}x{dim}"
        )));
    }
    if a.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let at = a.transpose();
    let mut images: Vec<(ProjPoint, usize)> = Vec::with_capacity(code.len());
    let mut scaling = Vec::with_capacity(code.len());
    for (j, p) in code.provenance().iter().enumerate() {
        let (q, lambda) = ProjPoint::normalize_with_scale(field, &at.left_mul_vec(p.coords()))?;
        images.push((q, j));
        scaling.push(field.inv(lambda).unwrap());
    }
    images.sort();
    let permutation: Vec<usize> = images.iter().map(|(_, j)| *j).collect();
    let points: Vec<ProjPoint> = images.into_iter().map(|(q, _)| q).collect();
    let mut target = LinearCode::from_points(field, points, 1)?;
    target.surface_ref = code.surface_ref.clone();

    let s0 = scaling[0];
    let s0_inv = field.inv(s0).unwrap();
    scaling.iter_mut().for_each(|s| *s = field.mul(*s, s0_inv));
    let mut witness = MonomialWitness {
        scaling,
        permutation,
        row_transform: None,
    };
    let m = witness.scaled_permuted(code.generator());
    let (_, pivots) = m.row_basis();
    let square = m.select_columns(&pivots);
    let t = target
        .generator()
        .select_columns(&pivots)
        .mul(&square.inverse()?)?;
    if t != Matrix::identity(field, t.rows()) {
        witness.row_transform = Some(t);
    }
    debug_assert!(witness.verify(code, &target));
    Ok((target, witness))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum EquivalenceEvidence {
    Distinct { reason: String },
    PossiblyEquivalent { note: String },
}

/// Invariant-based evidence: lengths, dimensions, weight enumerators.
pub fn equivalence_evidence(
    a: &LinearCode,
    b: &LinearCode,
    budget: u128,
) -> Result<EquivalenceEvidence> {
    a.field().ensure_same(b.field())?;
    if (a.len(), a.dimension()) != (b.len(), b.dimension()) {
        return Ok(EquivalenceEvidence::Distinct {
            reason: format!(
                "[{}, {}] vs [{}, {}]",
                a.len(),
                a.dimension(),
                b.len(),
                b.dimension()
            ),
        });
    }
    let (wa, wb) = match (weight_enumerator(a, budget), weight_enumerator(b, budget)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(Error::BudgetExceeded { .. }), _) | (_, Err(Error::BudgetExceeded { .. })) => {
            return Ok(EquivalenceEvidence::PossiblyEquivalent {
                note: "enumerators not computed".into(),
            })
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    Ok(if wa != wb {
        EquivalenceEvidence::Distinct {
            reason: "weight enumerators differ".into(),
        }
    } else {
        EquivalenceEvidence::PossiblyEquivalent {
            note: "same length, dimension and weight enumerator".into(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::surface::Surface;

    fn plane_code() -> LinearCode {
        let f = FiniteField::new(5, 1).unwrap();
        super::super::build_code(&Surface::plane(&f), 1).unwrap()
    }

    #[test]
    fn identity_and_scalar_transforms() {
        let c = plane_code();
        let f = c.field().clone();
        for scalar in [1, 3] {
            let mut a = Matrix::identity(&f, 3);
            for i in 0..3 {
                a[(i, i)] = Elem(scalar);
            }
            let (t, w) = apply_projective_transform(&c, &a).unwrap();
            assert!(w.scaling.iter().all(|&s| s == Elem::ONE));
            assert_eq!(w.permutation, (0..c.len()).collect::<Vec<_>>());
            assert!(w.verify(&c, &t));
        }
    }

    #[test]
    fn singular_transform_is_rejected() {
        let c = plane_code();
        let a = Matrix::zeros(c.field(), 3, 3);
        assert_eq!(
            apply_projective_transform(&c, &a).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn evidence() {
        let c = plane_code();
        assert!(matches!(
            equivalence_evidence(&c, &c, u128::MAX).unwrap(),
            EquivalenceEvidence::PossiblyEquivalent { .. }
        ));
        let f = c.field().clone();
        let d = LinearCode::from_generator(&Matrix::identity(&f, 3)).unwrap();
        assert!(matches!(
            equivalence_evidence(&c, &d, u128::MAX).unwrap(),
            EquivalenceEvidence::Distinct { .. }
        ));
        assert!(matches!(
            equivalence_evidence(&c, &c, 10).unwrap(),
            EquivalenceEvidence::PossiblyEquivalent { .. }
        ));
    }
}
