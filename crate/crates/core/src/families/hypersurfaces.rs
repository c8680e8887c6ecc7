use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::poly::{monomials_of_degree, parse_poly, HomogPoly};
use crate::surface::{Family, Surface};

const XYZW: [&str; 4] = ["x", "y", "z", "w"];

/// `w^m + x y^(m-1) + y z^(m-1) + z x^(m-1)`.
pub fn shioda_surface(m: u32, field: &FiniteField) -> Result<Surface> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!("degree {m} < 4")));
    }
    let k = m - 1;
    let src = format!("w^{m} + x*y^{k} + y*z^{k} + z*x^{k}");
    Surface::hypersurface(parse_poly(field, &XYZW, &src)?, Family::Shioda)
}

const F1: &str = "x^3 - x^2*y - x^2*z + x^2*w - x*y^2 - x*y*z + 2*x*y*w + x*z^2 + 2*x*z*w + y^3 \
                  + y^2*z - y^2*w + y*z^2 + y*z*w - y*w^2 + z^2*w + z*w^2 + 2*w^3";
const F2: &str = "x*y^2 + x*y*z - x*z^2 - y*z^2 + z^3";
const G1: &str = "z^2 + x*y + y*z";
const G2: &str = "z^2 + x*y";

/// The quartic `w f1 + 2 z f2 - 3 g1 g2 + 6 h` reduced into `field`.
pub fn van_luijk_surface(field: &FiniteField, h: &HomogPoly) -> Result<Surface> {
    let p = field.characteristic();
    if p == 2 || p == 3 {
        return Err(Error::InvalidField(format!(
            "characteristic {p} degenerates the family"
        )));
    }
    if h.nvars() != 4 || (h.degree() != 4 && !h.is_zero()) {
        return Err(Error::InvalidArgument(
            "h must be a quartic in x, y, z, w".into(),
        ));
    }
    let v = |s: &str| parse_poly(field, &XYZW, s);
    let w = v("w")?;
    let z = v("z")?;
    let mut f = w.mul(&v(F1)?);
    f = f.add(&z.mul(&v(F2)?).scale(field.from_int(2)));
    f = f.sub(&v(G1)?.mul(&v(G2)?).scale(field.from_int(3)));
    if !h.is_zero() {
        f = f.add(&h.scale(field.from_int(6)));
    }
    Surface::hypersurface(f, Family::VanLuijk)
}

/// A form of the given degree with independent uniform coefficients.
pub fn random_form(
    field: &FiniteField,
    nvars: usize,
    degree: u32,
    rng: &mut impl Rng,
) -> HomogPoly {
    let q = field.order() as u32;
    let terms = monomials_of_degree(nvars, degree)
        .into_iter()
        .map(|m| (m, Elem(rng.gen_range(0..q))));
    HomogPoly::from_monomials(field, nvars, degree, terms.collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shioda_quartic_metadata() {
        let f = FiniteField::new(11, 1).unwrap();
        let s = shioda_surface(4, &f).unwrap();
        assert_eq!(s.degree(), Some(4));
        assert_eq!(s.sectional_genus(), Some(3));
        assert!(shioda_surface(3, &f).is_err());
    }

    #[test]
    fn van_luijk_rejects_small_characteristic() {
        for (p, n) in [(2, 1), (3, 1), (3, 2)] {
            let f = FiniteField::new(p, n).unwrap();
            let h = HomogPoly::zero(&f, 4, 4);
            assert!(van_luijk_surface(&f, &h).is_err());
        }
        let f = FiniteField::new(7, 1).unwrap();
        let s = van_luijk_surface(&f, &HomogPoly::zero(&f, 4, 4)).unwrap();
        assert_eq!(s.degree(), Some(4));
        assert_eq!(s.generators()[0].degree(), 4);
    }
}
