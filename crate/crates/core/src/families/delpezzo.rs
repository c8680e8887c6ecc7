use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldEmbedding, FiniteField};
use crate::geometry::{enumerate_points, ProjPoint};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, parse_poly, HomogPoly};
use crate::seed::substream_rng;
use crate::surface::{Family, Parametrization, Surface};

/// A point of `P^2(GF(q^3))` together with its two `q`-Frobenius conjugates.
#[derive(Clone, Debug)]
pub struct FrobeniusOrbit {
    field: FiniteField,
    cubic_ext: FiniteField,
    points: [ProjPoint; 3],
    collinear: bool,
}

impl FrobeniusOrbit {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `GF(q^3)`, where the orbit's coordinates live.
    pub fn cubic_extension(&self) -> &FiniteField {
        &self.cubic_ext
    }

    pub fn points(&self) -> &[ProjPoint; 3] {
        &self.points
    }

    pub fn is_collinear(&self) -> bool {
        self.collinear
    }

    /// `GF(q)`-forms of degree `d` in `x, y, z` vanishing on the orbit, as
    /// rows of coefficient vectors over `monomials_of_degree(3, d)`.
    pub fn vanishing_forms(&self, d: u32) -> Matrix {
        let f = &self.field;
        let e3 = &self.cubic_ext;
        let down = FieldEmbedding::new(f, e3).expect("subfield");
        let alpha = e3.primitive_element();
        let p = self.points[0].coords();
        // A GF(q)-combination of the monomial values vanishes iff all three
        // traces against the basis 1, a, a^2 vanish.
        let rows: Vec<Vec<Elem>> = monomials_of_degree(3, d)
            .iter()
            .map(|&m| {
                let v = HomogPoly::from_monomials(e3, 3, d, vec![(m, Elem::ONE)]).eval_unchecked(p);
                (0..3)
                    .map(|i| down.trace(e3.mul(e3.pow(alpha, i), v)))
                    .collect()
            })
            .collect();
        Matrix::from_rows(f, &rows).unwrap().left_kernel()
    }
}

/// The orbit of `p` (coordinates in `GF(q^3)`).
pub fn frobenius_orbit(field: &FiniteField, p: &[Elem]) -> Result<FrobeniusOrbit> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch(
            "a plane point needs 3 coordinates".into(),
        ));
    }
    let e3 = field.extension(3)?;
    if p.iter().any(|&c| !e3.contains(c)) {
        return Err(Error::InvalidArgument("coordinate outside GF(q^3)".into()));
    }
    let n = field.degree();
    let p0 = ProjPoint::normalize(&e3, p)?;
    let p1 = p0.frobenius(&e3, n);
    if p1 == p0 {
        return Err(Error::DegenerateInput(
            "point is GF(q)-rational, orbit has size 1".into(),
        ));
    }
    let p2 = p1.frobenius(&e3, n);
    let m = Matrix::from_rows(
        &e3,
        &[
            p0.coords().to_vec(),
            p1.coords().to_vec(),
            p2.coords().to_vec(),
        ],
    )?;
    let collinear = m.rank() < 3;
    Ok(FrobeniusOrbit {
        field: field.clone(),
        cubic_ext: e3,
        points: [p0, p1, p2],
        collinear,
    })
}

/// The orbit of `(a^2 : a : 1)` for the canonical primitive element `a` of
/// `GF(q^3)`. It is never collinear (Vandermonde).
pub fn default_orbit(field: &FiniteField) -> Result<FrobeniusOrbit> {
    let e3 = field.extension(3)?;
    let a = e3.primitive_element();
    frobenius_orbit(field, &[e3.mul(a, a), a, Elem::ONE])
}

/// A uniformly drawn non-collinear orbit from substream 0 of `seed`.
pub fn sample_orbit(field: &FiniteField, seed: u64) -> Result<FrobeniusOrbit> {
    let e3 = field.extension(3)?;
    let mut rng = substream_rng(seed, 0);
    loop {
        let p: Vec<Elem> = (0..3)
            .map(|_| Elem(rng.gen_range(0..e3.order() as u32)))
            .collect();
        if p.iter().all(|c| c.is_zero()) {
            continue;
        }
        match frobenius_orbit(field, &p) {
            Ok(o) if !o.collinear => return Ok(o),
            _ => continue,
        }
    }
}

fn forms_from_rows(field: &FiniteField, nvars: usize, d: u32, rows: &Matrix) -> Vec<HomogPoly> {
    let monos = monomials_of_degree(nvars, d);
    (0..rows.rows())
        .map(|i| {
            let terms = monos
                .iter()
                .copied()
                .zip(rows.row(i).iter().copied())
                .collect();
            HomogPoly::from_monomials(field, nvars, d, terms)
        })
        .collect()
}

/// Degree-`d` monomials in `forms`, in `monomials_of_degree(forms.len(), d)` order.
pub(crate) fn monomial_products(forms: &[HomogPoly], d: u32) -> Result<Vec<HomogPoly>> {
    let field = forms[0].field();
    let k = forms.len();
    monomials_of_degree(k, d)
        .into_iter()
        .map(|m| HomogPoly::from_monomials(field, k, d, vec![(m, Elem::ONE)]).compose(forms))
        .collect()
}

/// The degree-6 del Pezzo surface in `P^6`: the plane blown up in the orbit,
/// embedded by the seven cubics through it. Its rational points are the
/// images of `P^2(GF(q))`.
pub fn del_pezzo6(orbit: &FrobeniusOrbit) -> Result<Surface> {
    if orbit.collinear {
        return Err(Error::DegenerateInput("collinear orbit".into()));
    }
    let field = orbit.field();
    let cubic_rows = orbit.vanishing_forms(3);
    if cubic_rows.rows() != 7 {
        return Err(Error::DegenerateInput(format!(
            "cubic system has dimension {}, expected 7",
            cubic_rows.rows()
        )));
    }
    let cubics = forms_from_rows(field, 3, 3, &cubic_rows);
    let sextic_monos = monomials_of_degree(3, 6);
    let products = monomial_products(&cubics, 2)?;
    let rows: Vec<Vec<Elem>> = products
        .iter()
        .map(|p| p.coefficients_in(&sextic_monos))
        .collect();
    let relations = Matrix::from_rows(field, &rows)?.left_kernel();
    let quadrics = forms_from_rows(field, 7, 2, &relations);
    Surface::new(field, 6, quadrics, Family::DelPezzo6)?
        .with_sectional_genus(1)
        .with_parametrization(Parametrization {
            domain: 2,
            forms: cubics,
        })
}

const VXYZW: [&str; 5] = ["v", "x", "y", "z", "w"];
const DP4_FIRST: &str =
    "2*x^2 - 2*v*y - 2*x*y - 2*y^2 + 3*v*z - x*z - 2*y*z - 2*z^2 - 2*x*w + 2*y*w + 2*z*w + 3*w^2";
const DP4_SECOND: &str =
    "-v^2 + 2*v*x - x^2 - v*y - x*y - v*z + 2*y*z + 2*z^2 - 3*v*w - 2*x*w + 2*y*w - 2*z*w - 2*w^2";

/// The fixed intersection of two quadrics in `P^4` over `GF(7)`.
pub fn del_pezzo4_fixture() -> Result<Surface> {
    let f = FiniteField::new(7, 1)?;
    let gens = vec![
        parse_poly(&f, &VXYZW, DP4_FIRST)?,
        parse_poly(&f, &VXYZW, DP4_SECOND)?,
    ];
    Ok(Surface::new(&f, 4, gens, Family::DelPezzo4)?.with_sectional_genus(1))
}

/// A low-weight degree-2 codeword on the degree-6 del Pezzo surface.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCodeword {
    /// The quadric in the seven coordinates of `P^6`.
    #[serde(skip)]
    pub quadric: HomogPoly,
    /// Its values at the rational points, in canonical order.
    pub word: Vec<Elem>,
    pub weight: usize,
    pub zeros: usize,
}

fn point_set(points: &[ProjPoint], form: &HomogPoly) -> Vec<bool> {
    points
        .iter()
        .map(|p| form.eval_unchecked(p.coords()).is_zero())
        .collect()
}

/// Build a quadric vanishing on `(C1 + L1) + (C2 + L2)`, with `C_i` conics through
/// the orbit and `L_i` rational lines meeting neither conic in a rational
/// point, so that it has exactly `4q + 2` rational zeros.
pub fn geometric_witness_dp6(orbit: &FrobeniusOrbit, surface: &Surface) -> Result<WitnessCodeword> {
    let field = orbit.field();
    let q = field.order();
    if q <= 5 {
        return Err(Error::InvalidArgument("the witness needs q > 5".into()));
    }
    let param = surface
        .parametrization()
        .ok_or_else(|| Error::InvalidArgument("surface has no plane parametrization".into()))?;
    let plane = enumerate_points(field, 2, u128::MAX)?;
    let conic_space = orbit.vanishing_forms(2);
    let conics: Vec<HomogPoly> = enumerate_points(field, conic_space.rows() - 1, u128::MAX)?
        .iter()
        .map(|c| {
            let row = conic_space.left_mul_vec(c.coords());
            forms_from_rows(field, 3, 2, &Matrix::from_rows(field, &[row]).unwrap()).remove(0)
        })
        .collect();
    let lines: Vec<HomogPoly> = plane
        .iter()
        .map(|h| HomogPoly::linear(field, h.coords()))
        .collect();
    let on_conic: Vec<Vec<bool>> = conics.iter().map(|c| point_set(&plane, c)).collect();
    let on_line: Vec<Vec<bool>> = lines.iter().map(|l| point_set(&plane, l)).collect();
    let disjoint = |a: &[bool], b: &[bool]| !a.iter().zip(b).any(|(&x, &y)| x && y);

    let mut found = None;
    'search: for i in 0..conics.len() {
        for j in i + 1..conics.len() {
            let avoiding: Vec<usize> = (0..lines.len())
                .filter(|&l| {
                    disjoint(&on_conic[i], &on_line[l]) && disjoint(&on_conic[j], &on_line[l])
                })
                .take(2)
                .collect();
            if let [a, b] = avoiding[..] {
                found = Some((i, j, a, b));
                break 'search;
            }
        }
    }
    let (i, j, a, b) = found.ok_or_else(|| {
        Error::DegenerateInput("no conic/line configuration found for the witness".into())
    })?;

    let cubic_monos = monomials_of_degree(3, 3);
    let basis_rows: Vec<Vec<Elem>> = param
        .forms
        .iter()
        .map(|c| c.coefficients_in(&cubic_monos))
        .collect();
    let basis = Matrix::from_rows(field, &basis_rows)?;
    let linear_in_p6 = |cubic: HomogPoly| -> Result<HomogPoly> {
        let coords = basis
            .solve_left(&cubic.coefficients_in(&cubic_monos))
            .ok_or_else(|| Error::DegenerateInput("cubic outside the linear system".into()))?;
        Ok(HomogPoly::linear(field, &coords))
    };
    let first = linear_in_p6(conics[i].mul(&lines[a]))?;
    let second = linear_in_p6(conics[j].mul(&lines[b]))?;
    let quadric = first.mul(&second);

    let points = surface.rational_points(u128::MAX)?;
    let word: Vec<Elem> = points
        .iter()
        .map(|p| quadric.eval_unchecked(p.coords()))
        .collect();
    let zeros = word.iter().filter(|c| c.is_zero()).count();
    if zeros as u64 != 4 * q + 2 {
        return Err(Error::DegenerateInput(format!(
            "witness has {zeros} zeros, expected {}",
            4 * q + 2
        )));
    }
    Ok(WitnessCodeword {
        quadric,
        weight: word.len() - zeros,
        word,
        zeros,
    })
}
