use std::collections::BTreeSet;

use serde::Serialize;

use super::points::ProjPoint;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;
use crate::poly::HomogPoly;

/// A projective line, stored as the reduced row echelon basis of its 2-dim
/// subspace, which makes equal lines compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Line {
    pub basis: [Vec<u32>; 2],
}

impl Line {
    pub fn through(field: &FiniteField, a: &[Elem], b: &[Elem]) -> Result<Line> {
        let m = Matrix::from_rows(field, &[a.to_vec(), b.to_vec()])?;
        let (r, _) = m.row_basis();
        if r.rows() != 2 {
            return Err(Error::DegenerateInput("points do not span a line".into()));
        }
        let row = |i: usize| r.row(i).iter().map(|e| e.0).collect::<Vec<u32>>();
        Ok(Line {
            basis: [row(0), row(1)],
        })
    }

    fn rows(&self) -> [Vec<Elem>; 2] {
        let v = |i: usize| self.basis[i].iter().map(|&c| Elem(c)).collect();
        [v(0), v(1)]
    }

    /// The `q + 1` points of the line over `field`, normalized.
    pub fn points(&self, field: &FiniteField) -> Vec<ProjPoint> {
        let [a, b] = self.rows();
        let mut out = vec![ProjPoint::normalize(field, &a).unwrap()];
        for t in field.elements() {
            let v: Vec<Elem> = a
                .iter()
                .zip(&b)
                .map(|(&x, &y)| field.add(field.mul(t, x), y))
                .collect();
            out.push(ProjPoint::normalize(field, &v).unwrap());
        }
        out.sort();
        out
    }

    /// Whether every generator vanishes identically on the line, checked by
    /// restricting to the parametrization `s*a + t*b`.
    pub fn lies_on(&self, field: &FiniteField, gens: &[HomogPoly]) -> bool {
        let [a, b] = self.rows();
        let param: Vec<HomogPoly> = a
            .iter()
            .zip(&b)
            .map(|(&x, &y)| HomogPoly::linear(field, &[x, y]))
            .collect();
        gens.iter()
            .all(|g| g.compose(&param).map(|r| r.is_zero()).unwrap_or(false))
    }
}

/// All `GF(q)`-lines contained in the variety with rational points `points`.
///
/// A contained line carries at least two rational points, so it is spanned by
/// a pair of them; every candidate is then confirmed symbolically.
pub fn lines_on_surface(
    field: &FiniteField,
    gens: &[HomogPoly],
    points: &[ProjPoint],
    budget: u128,
) -> Result<Vec<Line>> {
    let n = points.len() as u128;
    let needed = n * n.saturating_sub(1) / 2;
    if needed > budget {
        return Err(Error::budget(
            "line search over point pairs",
            needed,
            budget,
        ));
    }
    let mut seen = BTreeSet::new();
    let mut found = BTreeSet::new();
    let on_x: BTreeSet<&ProjPoint> = points.iter().collect();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let line = Line::through(field, a.coords(), b.coords())?;
            if !seen.insert(line.clone()) {
                continue;
            }
            let all_on = line.points(field).iter().all(|p| on_x.contains(p));
            if all_on && line.lies_on(field, gens) {
                found.insert(line);
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::count::rational_points;
    use crate::poly::parse_poly;

    #[test]
    fn hyperbolic_quadric_has_two_rulings() {
        let f = FiniteField::new(7, 1).unwrap();
        let q = parse_poly(&f, &["x", "y", "z", "w"], "x*w - y*z").unwrap();
        let pts = rational_points(&f, 3, std::slice::from_ref(&q), u128::MAX).unwrap();
        assert_eq!(pts.len(), 64);
        assert_eq!(
            lines_on_surface(&f, &[q], &pts, u128::MAX).unwrap().len(),
            16
        );
    }

    #[test]
    fn line_points_are_distinct() {
        let f = FiniteField::new(5, 1).unwrap();
        let l = Line::through(
            &f,
            &[Elem(1), Elem(2), Elem(0)],
            &[Elem(0), Elem(1), Elem(1)],
        )
        .unwrap();
        let pts = l.points(&f);
        assert_eq!(pts.len(), 6);
        assert!(pts.windows(2).all(|w| w[0] != w[1]));
    }
}
