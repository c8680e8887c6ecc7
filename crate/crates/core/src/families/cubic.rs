use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hypersurfaces::random_form;
use crate::bounds::{predicted_nr, CubicClass};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldEmbedding, FiniteField};
use crate::linalg::Matrix;
use crate::poly::HomogPoly;
pub use crate::seed::substream_rng;
use crate::surface::{Family, Surface};

fn conjugate_free(ext: &FiniteField, coeffs: &[Elem], base_degree: u32) -> bool {
    let conj: Vec<Elem> = coeffs
        .iter()
        .map(|&c| ext.frobenius(c, base_degree))
        .collect();
    Matrix::from_rows(ext, &[coeffs.to_vec(), conj])
        .unwrap()
        .rank()
        == 2
}

/// The cubic `L F(L) F^2(L) - w M F(M)` with `F` the `q`-Frobenius.
///
/// `l` holds the `x, y, z` coefficients of `L` in `GF(q^3)`, `m` the
/// `x, y, z, w` coefficients of `M` in `GF(q^2)`; neither form may be
/// proportional to its conjugate.
pub fn cayley_salmon_c12(field: &FiniteField, l: &[Elem], m: &[Elem]) -> Result<Surface> {
    if l.len() != 3 || m.len() != 4 {
        return Err(Error::DimensionMismatch(
            "L needs 3 and M needs 4 coefficients".into(),
        ));
    }
    let n = field.degree();
    let e2 = field.extension(2)?;
    let e3 = field.extension(3)?;
    let e6 = field.extension(6)?;
    if l.iter().any(|&c| !e3.contains(c)) || m.iter().any(|&c| !e2.contains(c)) {
        return Err(Error::InvalidArgument(
            "coefficient outside its field".into(),
        ));
    }
    if !conjugate_free(&e3, l, n) {
        return Err(Error::DegenerateInput(
            "L is proportional to its conjugate".into(),
        ));
    }
    if !conjugate_free(&e2, m, n) {
        return Err(Error::DegenerateInput(
            "M is proportional to its conjugate".into(),
        ));
    }
    let up3 = FieldEmbedding::new(&e3, &e6)?;
    let up2 = FieldEmbedding::new(&e2, &e6)?;
    let down = FieldEmbedding::new(field, &e6)?;
    let mut lc: Vec<Elem> = l.iter().map(|&c| up3.embed(c)).collect();
    lc.push(Elem::ZERO);
    let mc: Vec<Elem> = m.iter().map(|&c| up2.embed(c)).collect();
    let lf = HomogPoly::linear(&e6, &lc);
    let mf = HomogPoly::linear(&e6, &mc);
    let left = lf.mul(&lf.frobenius(n)).mul(&lf.frobenius(2 * n));
    let right = HomogPoly::var(&e6, 4, 3).mul(&mf).mul(&mf.frobenius(n));
    let cubic = left
        .sub(&right)
        .descend(&down)
        .map_err(|_| Error::DegenerateInput("coefficients do not descend".into()))?;
    Surface::hypersurface(cubic, Family::Cubic)
}

/// [`cayley_salmon_c12`] followed by the smoothness screen over `GF(q^r)`,
/// `r <= screen_degree`, and classification. Singular outputs are rejected.
pub fn cayley_salmon_screened(
    field: &FiniteField,
    l: &[Elem],
    m: &[Elem],
    screen_degree: u32,
    budget: u128,
) -> Result<(Surface, ClassificationResult)> {
    let surface = cayley_salmon_c12(field, l, m)?;
    let screen = surface.singular_points(screen_degree, budget)?;
    if !screen.is_smooth() {
        return Err(Error::DegenerateInput(screen.verdict()));
    }
    let class = classify_cubic(&surface, screen_degree, budget)?;
    Ok((surface, class))
}

/// Draw `(L, M)` for [`cayley_salmon_c12`], resampling degenerate draws.
pub fn sample_cayley_salmon_input(
    field: &FiniteField,
    rng: &mut impl Rng,
) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let n = field.degree();
    let e2 = field.extension(2)?;
    let e3 = field.extension(3)?;
    let draw = |f: &FiniteField, k: usize, rng: &mut dyn rand::RngCore| -> Vec<Elem> {
        (0..k)
            .map(|_| Elem(rng.gen_range(0..f.order() as u32)))
            .collect()
    };
    let l = loop {
        let v = draw(&e3, 3, rng);
        if conjugate_free(&e3, &v, n) {
            break v;
        }
    };
    let m = loop {
        let v = draw(&e2, 4, rng);
        if conjugate_free(&e2, &v, n) {
            break v;
        }
    };
    Ok((l, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicVerdict {
    Class(CubicClass),
    NotRhoOneConsistent,
    Unknown,
}

/// Observed point counts of a cubic against the predictions of each class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub verdict: CubicVerdict,
    /// `N_1, ..., N_R` as far as the budget allowed.
    pub observed: Vec<u64>,
    pub predicted: Vec<(CubicClass, Vec<i128>)>,
    pub rational_lines: usize,
    /// False when the budget cut the counts short.
    pub complete: bool,
}

impl ClassificationResult {
    pub fn class(&self) -> Option<CubicClass> {
        match self.verdict {
            CubicVerdict::Class(c) => Some(c),
            _ => None,
        }
    }
}

fn verdict_for(
    q: u64,
    observed: &[u64],
    lines: usize,
) -> (CubicVerdict, Vec<(CubicClass, Vec<i128>)>) {
    let predicted: Vec<(CubicClass, Vec<i128>)> = CubicClass::ALL
        .iter()
        .map(|&c| {
            (
                c,
                (1..=observed.len() as u32)
                    .map(|r| predicted_nr(c, q, r))
                    .collect(),
            )
        })
        .collect();
    if lines > 0 {
        return (CubicVerdict::NotRhoOneConsistent, predicted);
    }
    let matches: Vec<CubicClass> = predicted
        .iter()
        .filter(|(_, row)| row.iter().zip(observed).all(|(&p, &o)| p == o as i128))
        .map(|(c, _)| *c)
        .collect();
    let verdict = match matches.as_slice() {
        [] => CubicVerdict::NotRhoOneConsistent,
        [c] => CubicVerdict::Class(*c),
        _ => CubicVerdict::Unknown,
    };
    (verdict, predicted)
}

/// Match `N_1..N_R` and the rational line count against the five classes.
pub fn classify_cubic(
    surface: &Surface,
    max_degree: u32,
    budget: u128,
) -> Result<ClassificationResult> {
    if !surface.is_hypersurface() || surface.degree() != Some(3) {
        return Err(Error::InvalidArgument("not a cubic surface".into()));
    }
    let q = surface.field().order();
    let lines = surface.lines(budget)?.len();
    let mut observed = Vec::new();
    let mut complete = true;
    for r in 1..=max_degree {
        match surface.count_over(r, budget) {
            Ok(n) => observed.push(n),
            Err(Error::BudgetExceeded { .. }) if r > 1 => {
                complete = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let (verdict, predicted) = verdict_for(q, &observed, lines);
    Ok(ClassificationResult {
        verdict,
        observed,
        predicted,
        rational_lines: lines,
        complete,
    })
}

/// Parameters of a seeded cubic-surface search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub target: CubicClass,
    pub seed: u64,
    /// First substream index (for resuming).
    pub start: u64,
    pub samples: u64,
    /// Counts and smoothness are checked over `GF(q^r)`, `r <= screen_degree`.
    pub screen_degree: u32,
    pub budget: u128,
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub substream: u64,
    pub surface: Surface,
    pub classification: ClassificationResult,
    pub smoothness: String,
}

/// Draw one sample per substream (random cubics, or Cayley-Salmon forms when
/// the target is C12), keep the smooth ones of the target class. The output
/// is ordered by substream and does not depend on the thread count.
pub fn random_cubic_search(field: &FiniteField, cfg: &SearchConfig) -> Result<Vec<SearchHit>> {
    let q = field.order();
    let hits: Vec<Result<Option<SearchHit>>> = (cfg.start..cfg.start + cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream_rng(cfg.seed, i);
            let surface = if cfg.target == CubicClass::C12 {
                let (l, m) = sample_cayley_salmon_input(field, &mut rng)?;
                cayley_salmon_c12(field, &l, &m)?
            } else {
                let f = loop {
                    let f = random_form(field, 4, 3, &mut rng);
                    if !f.is_zero() {
                        break f;
                    }
                };
                Surface::hypersurface(f, Family::Cubic)?
            };
            // Cheapest filters first.
            let mut observed = Vec::new();
            for r in 1..=cfg.screen_degree.max(1) {
                let n = surface.count_over(r, cfg.budget)?;
                if n as i128 != predicted_nr(cfg.target, q, r) {
                    return Ok(None);
                }
                observed.push(n);
                if r == 1 && !surface.lines(cfg.budget)?.is_empty() {
                    return Ok(None);
                }
            }
            let screen = surface.singular_points(cfg.screen_degree, cfg.budget)?;
            if !screen.is_smooth() {
                return Ok(None);
            }
            let (verdict, predicted) = verdict_for(q, &observed, 0);
            if verdict != CubicVerdict::Class(cfg.target) {
                return Ok(None);
            }
            let classification = ClassificationResult {
                verdict,
                observed,
                predicted,
                rational_lines: 0,
                complete: true,
            };
            Ok(Some(SearchHit {
                substream: i,
                surface,
                classification,
                smoothness: screen.verdict(),
            }))
        })
        .collect();
    let mut out = Vec::new();
    for h in hits {
        if let Some(hit) = h? {
            out.push(hit);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn sample(seed: u64) -> Surface {
        let f = FiniteField::new(7, 1).unwrap();
        let mut rng = substream_rng(seed, 0);
        let (l, m) = sample_cayley_salmon_input(&f, &mut rng).unwrap();
        cayley_salmon_c12(&f, &l, &m).unwrap()
    }

    #[test]
    fn cayley_salmon_descends_and_has_triangle_section() {
        let s = sample(3);
        let f = s.field().clone();
        assert_eq!(s.degree(), Some(3));
        let sec = crate::geometry::hyperplane_section(
            &s.generators()[0],
            &[Elem(0), Elem(0), Elem(0), Elem(1)],
        )
        .unwrap();
        let e3 = f.extension(3).unwrap();
        let up = FieldEmbedding::new(&f, &e3).unwrap();
        let over3 =
            crate::geometry::component_search(&sec.embed(&up).unwrap(), 1, u128::MAX).unwrap();
        assert_eq!(over3.len(), 3);
        assert!(crate::geometry::component_search(&sec, 1, u128::MAX)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let f = FiniteField::new(7, 1).unwrap();
        let rational_l = [Elem(1), Elem(2), Elem(3)];
        let m = [Elem(1), Elem(8), Elem(0), Elem(1)];
        assert!(matches!(
            cayley_salmon_c12(&f, &rational_l, &m),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn cubic_with_a_line_is_not_rho_one() {
        let f = FiniteField::new(7, 1).unwrap();
        let c = parse_poly(
            &f,
            &["x", "y", "z", "w"],
            "x*y*z + w*x^2 + w*y^2 + w*z^2 + w^3",
        )
        .unwrap();
        let s = Surface::hypersurface(c, Family::Cubic).unwrap();
        let r = classify_cubic(&s, 1, u128::MAX).unwrap();
        assert!(r.rational_lines > 0);
        assert_eq!(r.verdict, CubicVerdict::NotRhoOneConsistent);
    }

    #[test]
    fn verdict_matching() {
        assert_eq!(
            verdict_for(7, &[64, 2304], 0).0,
            CubicVerdict::Class(CubicClass::C12)
        );
        assert_eq!(
            verdict_for(7, &[43], 0).0,
            CubicVerdict::Class(CubicClass::C10)
        );
        assert_eq!(
            verdict_for(7, &[44], 0).0,
            CubicVerdict::NotRhoOneConsistent
        );
        assert_eq!(
            verdict_for(7, &[64], 2).0,
            CubicVerdict::NotRhoOneConsistent
        );
    }
}
