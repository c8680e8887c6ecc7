use serde::Serialize;

use super::points::ProjPoint;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, HomogPoly, Monomial};

/// Values of each monomial at a coordinate vector.
pub fn eval_monomials(field: &FiniteField, monos: &[Monomial], point: &[Elem]) -> Vec<Elem> {
    let deg = monos.iter().map(|m| m.degree()).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Elem>> = point
        .iter()
        .map(|&x| {
            let mut row = vec![Elem::ONE; deg + 1];
            for e in 1..=deg {
                row[e] = field.mul(row[e - 1], x);
            }
            row
        })
        .collect();
    monos
        .iter()
        .map(|m| {
            powers.iter().enumerate().fold(Elem::ONE, |acc, (i, row)| {
                field.mul(acc, row[m.exponent(i) as usize])
            })
        })
        .collect()
}

/// Matrix with one row per monomial and one column per point.
pub fn evaluation_matrix(field: &FiniteField, monos: &[Monomial], points: &[ProjPoint]) -> Matrix {
    let mut m = Matrix::zeros(field, monos.len(), points.len());
    for (j, p) in points.iter().enumerate() {
        for (i, v) in eval_monomials(field, monos, p.coords())
            .into_iter()
            .enumerate()
        {
            m[(i, j)] = v;
        }
    }
    m
}

/// Reduced basis of the degree-`ell` part of the ideal generated by `gens`,
/// as coefficient rows over `monomials_of_degree(nvars, ell)`.
pub fn ideal_degree_part(
    field: &FiniteField,
    nvars: usize,
    gens: &[HomogPoly],
    ell: u32,
) -> Result<Matrix> {
    let basis = monomials_of_degree(nvars, ell);
    let mut rows = Vec::new();
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::DimensionMismatch("generator variable count".into()));
        }
        if g.degree() > ell || g.is_zero() {
            continue;
        }
        for m in monomials_of_degree(nvars, ell - g.degree()) {
            let t = HomogPoly::from_monomials(field, nvars, ell - g.degree(), vec![(m, Elem::ONE)]);
            rows.push(g.mul(&t).coefficients_in(&basis));
        }
    }
    if rows.is_empty() {
        return Ok(Matrix::zeros(field, 0, basis.len()));
    }
    Ok(Matrix::from_rows(field, &rows)?.row_basis().0)
}

/// Comparison, in one degree, between forms vanishing on the rational points
/// and the ideal's forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralityVerdict {
    pub degree: u32,
    pub vanishing_dim: usize,
    pub ideal_dim: usize,
    pub general: bool,
}

/// For each `ell` in `1..=m`: do the degree-`ell` forms vanishing on
/// `points` coincide with the degree-`ell` part of the ideal?
pub fn fq_general_check(
    field: &FiniteField,
    nvars: usize,
    gens: &[HomogPoly],
    points: &[ProjPoint],
    m: u32,
) -> Result<Vec<GeneralityVerdict>> {
    let mut out = Vec::new();
    for ell in 1..=m {
        let monos = monomials_of_degree(nvars, ell);
        let vanishing = evaluation_matrix(field, &monos, points).left_kernel();
        let ideal = ideal_degree_part(field, nvars, gens, ell)?;
        let contained = (0..ideal.rows()).all(|i| vanishing.row_space_contains(ideal.row(i)));
        out.push(GeneralityVerdict {
            degree: ell,
            vanishing_dim: vanishing.rows(),
            ideal_dim: ideal.rows(),
            general: contained && vanishing.rows() == ideal.rows(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::count::rational_points;
    use crate::geometry::points::enumerate_points;
    use crate::poly::parse_poly;

    #[test]
    fn single_cubic_spans_one_dimension() {
        let f = FiniteField::new(7, 1).unwrap();
        let c = parse_poly(&f, &["x", "y", "z", "w"], "x^3 + y^3 + z^3 + w^3").unwrap();
        assert_eq!(
            ideal_degree_part(&f, 4, std::slice::from_ref(&c), 3)
                .unwrap()
                .rows(),
            1
        );
        assert_eq!(ideal_degree_part(&f, 4, &[c], 4).unwrap().rows(), 4);
    }

    #[test]
    fn conjugate_line_pair_is_not_general() {
        // 3 is a non-square mod 7, so x^2 - 3y^2 splits only over GF(49).
        let f = FiniteField::new(7, 1).unwrap();
        let c = parse_poly(&f, &["x", "y", "z"], "x^2 - 3*y^2").unwrap();
        let pts = rational_points(&f, 2, std::slice::from_ref(&c), u128::MAX).unwrap();
        assert_eq!(pts.len(), 1);
        let v = fq_general_check(&f, 3, &[c], &pts, 2).unwrap();
        assert!(!v[0].general && !v[1].general);
    }

    #[test]
    fn whole_plane_is_general_in_low_degree() {
        let f = FiniteField::new(7, 1).unwrap();
        let pts = enumerate_points(&f, 2, u128::MAX).unwrap();
        let v = fq_general_check(&f, 3, &[], &pts, 3).unwrap();
        assert!(v.iter().all(|x| x.general && x.vanishing_dim == 0));
    }
}
