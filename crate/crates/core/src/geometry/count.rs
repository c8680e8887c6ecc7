//! Zero loci of homogeneous systems, fibred over the `x_0` coordinate.
//!
//! Points are grouped by the position `l` of their trailing one. Within a
//! stratum the coordinates `x_1..x_{l-1}` form a prefix; for each prefix the
//! generators restrict to univariate polynomials in `x_0`, whose common roots
//! are either tested one by one (small fields) or counted through
//! `gcd(h, t^Q - t)` (large fields).

use rayon::prelude::*;

use super::points::{projective_space_size, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldEmbedding, FiniteField};
use crate::poly::HomogPoly;
use crate::upoly;

const HORNER_LIMIT: u64 = 32;
const CHUNKS: u64 = 256;

type Term = (Vec<(usize, u32)>, Elem);

pub(crate) struct FiberSystem {
    field: FiniteField,
    ambient: usize,
    gens: Vec<HomogPoly>,
    max_deg: u32,
}

struct Stratum {
    // gens -> power of x_0 -> terms in x_1..x_{last-1}
    gens: Vec<Vec<Vec<Term>>>,
}

impl FiberSystem {
    pub(crate) fn new(field: &FiniteField, ambient: usize, gens: &[HomogPoly]) -> Result<Self> {
        for g in gens {
            field.ensure_same(g.field())?;
            if g.nvars() != ambient + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "generator in {} variables for P^{ambient}",
                    g.nvars()
                )));
            }
        }
        let gens: Vec<HomogPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let max_deg = gens.iter().map(|g| g.degree()).max().unwrap_or(0);
        Ok(FiberSystem {
            field: field.clone(),
            ambient,
            gens,
            max_deg,
        })
    }

    /// The same system with coefficients embedded in `GF(q^r)`.
    pub(crate) fn over_extension(&self, r: u32) -> Result<Self> {
        if r == 1 {
            return Ok(FiberSystem {
                field: self.field.clone(),
                ambient: self.ambient,
                gens: self.gens.clone(),
                max_deg: self.max_deg,
            });
        }
        let ext = self.field.extension(r)?;
        let e = FieldEmbedding::new(&self.field, &ext)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(&e))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiberSystem {
            field: ext,
            ambient: self.ambient,
            gens,
            max_deg: self.max_deg,
        })
    }

    pub(crate) fn field(&self) -> &FiniteField {
        &self.field
    }

    fn uses_gcd(&self) -> bool {
        self.field.order() > HORNER_LIMIT && !self.gens.is_empty()
    }

    /// Abstract operation count of a full sweep.
    pub(crate) fn cost(&self) -> u128 {
        let q = self.field.order();
        let space = projective_space_size(q, self.ambient);
        if self.uses_gcd() {
            let fibers = space / q as u128 + 1;
            let d = self.max_deg as u128 + 1;
            fibers * d * d * (64 - q.leading_zeros()) as u128
        } else {
            space
        }
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        let c = self.cost();
        if c > budget {
            return Err(Error::budget(
                format!("point sweep over {}", self.field),
                c,
                budget,
            ));
        }
        Ok(())
    }

    fn stratum(&self, last: usize) -> Stratum {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut by_power = vec![Vec::new(); g.degree() as usize + 1];
                for &(m, c) in g.terms() {
                    if (last + 1..=self.ambient).any(|i| m.exponent(i) > 0) {
                        continue;
                    }
                    let exps = (1..last)
                        .filter(|&i| m.exponent(i) > 0)
                        .map(|i| (i, m.exponent(i)));
                    by_power[m.exponent(0) as usize].push((exps.collect(), c));
                }
                by_power
            })
            .collect();
        Stratum { gens }
    }

    fn fiber_polys(&self, st: &Stratum, prefix: &[Elem], pw: &mut [Vec<Elem>]) -> Vec<Vec<Elem>> {
        let f = &self.field;
        for (i, &x) in prefix.iter().enumerate() {
            let row = &mut pw[i + 1];
            row[0] = Elem::ONE;
            for e in 1..row.len() {
                row[e] = f.mul(row[e - 1], x);
            }
        }
        st.gens
            .iter()
            .map(|by_power| {
                let mut h: Vec<Elem> = by_power
                    .iter()
                    .map(|terms| {
                        terms.iter().fold(Elem::ZERO, |acc, (exps, c)| {
                            let t = exps
                                .iter()
                                .fold(*c, |t, &(i, e)| f.mul(t, pw[i][e as usize]));
                            f.add(acc, t)
                        })
                    })
                    .collect();
                upoly::trim(&mut h);
                h
            })
            .collect()
    }

    fn common_root_count(&self, polys: &[Vec<Elem>]) -> u64 {
        let f = &self.field;
        let q = f.order();
        if !self.uses_gcd() {
            return f
                .elements()
                .filter(|&t| polys.iter().all(|h| upoly::eval(f, h, t).is_zero()))
                .count() as u64;
        }
        let mut g: Vec<Elem> = Vec::new();
        for h in polys {
            g = upoly::gcd(f, &g, h);
            if g.len() == 1 {
                return 0;
            }
        }
        upoly::count_roots(f, &g).unwrap_or(q)
    }

    fn sweep<T: Send>(
        &self,
        visit: impl Fn(&Stratum, &[Elem], &[Vec<Elem>], &mut T) + Sync,
        init: impl Fn() -> T + Sync,
    ) -> Vec<T> {
        let q = self.field.order();
        let mut out = Vec::new();
        for last in 1..=self.ambient {
            let st = self.stratum(last);
            let free = (last - 1) as u32;
            let total = q.pow(free);
            let chunks = total.min(CHUNKS);
            let per = total.div_ceil(chunks);
            let parts: Vec<T> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut acc = init();
                    let start = c * per;
                    let end = (start + per).min(total);
                    if start >= end {
                        return acc;
                    }
                    let mut digits: Vec<u32> = Vec::with_capacity(free as usize);
                    let mut v = start;
                    for _ in 0..free {
                        digits.push((v % q) as u32);
                        v /= q;
                    }
                    let mut pw =
                        vec![vec![Elem::ZERO; self.max_deg as usize + 1]; self.ambient + 1];
                    let mut prefix: Vec<Elem> = digits.iter().map(|&d| Elem(d)).collect();
                    for _ in start..end {
                        let polys = self.fiber_polys(&st, &prefix, &mut pw);
                        visit(&st, &prefix, &polys, &mut acc);
                        for i in 0..free as usize {
                            prefix[i].0 += 1;
                            if (prefix[i].0 as u64) < q {
                                break;
                            }
                            prefix[i] = Elem::ZERO;
                        }
                    }
                    acc
                })
                .collect();
            out.extend(parts);
        }
        out
    }

    fn origin_vanishes(&self) -> bool {
        let mut p = vec![Elem::ZERO; self.ambient + 1];
        p[0] = Elem::ONE;
        self.gens.iter().all(|g| g.eval_unchecked(&p).is_zero())
    }

    pub(crate) fn count(&self, budget: u128) -> Result<u64> {
        self.check_budget(budget)?;
        let parts = self.sweep(
            |_, _, polys, acc: &mut u64| *acc += self.common_root_count(polys),
            || 0u64,
        );
        Ok(parts.into_iter().sum::<u64>() + self.origin_vanishes() as u64)
    }

    pub(crate) fn points(&self, budget: u128) -> Result<Vec<ProjPoint>> {
        self.check_budget(budget)?;
        let f = &self.field;
        let ambient = self.ambient;
        let parts = self.sweep(
            |_, prefix, polys, acc: &mut Vec<ProjPoint>| {
                if self.uses_gcd() && self.common_root_count(polys) == 0 {
                    return;
                }
                for t in f.elements() {
                    if polys.iter().all(|h| upoly::eval(f, h, t).is_zero()) {
                        let mut v = Vec::with_capacity(ambient + 1);
                        v.push(t);
                        v.extend_from_slice(prefix);
                        v.push(Elem::ONE);
                        v.resize(ambient + 1, Elem::ZERO);
                        acc.push(ProjPoint::from_normalized(v));
                    }
                }
            },
            Vec::new,
        );
        let mut out: Vec<ProjPoint> = parts.into_iter().flatten().collect();
        if self.origin_vanishes() {
            let mut p = vec![Elem::ZERO; ambient + 1];
            p[0] = Elem::ONE;
            out.push(ProjPoint::from_normalized(p));
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Zero locus of `gens` in `P^ambient(field)`, in canonical order.
pub fn rational_points(
    field: &FiniteField,
    ambient: usize,
    gens: &[HomogPoly],
    budget: u128,
) -> Result<Vec<ProjPoint>> {
    FiberSystem::new(field, ambient, gens)?.points(budget)
}

/// Zero locus over `GF(q^r)`, returned with the extension field the
/// coordinates live in.
pub fn points_over_extension(
    field: &FiniteField,
    ambient: usize,
    gens: &[HomogPoly],
    r: u32,
    budget: u128,
) -> Result<(FiniteField, Vec<ProjPoint>)> {
    let sys = FiberSystem::new(field, ambient, gens)?.over_extension(r)?;
    let pts = sys.points(budget)?;
    Ok((sys.field().clone(), pts))
}

/// `N_r`: the number of zeros over `GF(q^r)`.
pub fn count_points(
    field: &FiniteField,
    ambient: usize,
    gens: &[HomogPoly],
    r: u32,
    budget: u128,
) -> Result<u64> {
    FiberSystem::new(field, ambient, gens)?
        .over_extension(r)?
        .count(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::points::{enumerate_points, DEFAULT_POINT_BUDGET};
    use crate::poly::parse_poly;

    fn brute(field: &FiniteField, ambient: usize, gens: &[HomogPoly]) -> Vec<ProjPoint> {
        enumerate_points(field, ambient, DEFAULT_POINT_BUDGET)
            .unwrap()
            .into_iter()
            .filter(|p| gens.iter().all(|g| g.eval(p.coords()).unwrap().is_zero()))
            .collect()
    }

    #[test]
    fn weierstrass_cubic_has_thirteen_points() {
        let f = FiniteField::new(7, 1).unwrap();
        let g = parse_poly(&f, &["x", "y", "z"], "y^2*z - x^3 - 3*z^3").unwrap();
        let pts = rational_points(&f, 2, std::slice::from_ref(&g), DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(pts.len(), 13);
        assert_eq!(pts, brute(&f, 2, &[g]));
    }

    #[test]
    fn fibred_sweep_matches_brute_force() {
        for (p, n) in [(7, 1), (2, 3), (3, 2), (5, 1)] {
            let f = FiniteField::new(p, n).unwrap();
            let names = ["x", "y", "z", "w"];
            let a = parse_poly(&f, &names, "x^3 + y^2*z + z*w^2 + x*y*w + 2*w^3").unwrap();
            let b = parse_poly(&f, &names, "x*w - y*z").unwrap();
            let c = parse_poly(&f, &names, "x^2 + y^2 + z^2 + w^2").unwrap();
            for gens in [vec![a.clone()], vec![b.clone()], vec![b, c]] {
                let pts = rational_points(&f, 3, &gens, DEFAULT_POINT_BUDGET).unwrap();
                assert_eq!(pts, brute(&f, 3, &gens));
                assert_eq!(
                    count_points(&f, 3, &gens, 1, DEFAULT_POINT_BUDGET).unwrap(),
                    pts.len() as u64
                );
            }
        }
    }

    #[test]
    fn gcd_counting_matches_listing_over_large_fields() {
        let f = FiniteField::new(7, 1).unwrap();
        let names = ["x", "y", "z", "w"];
        let g = parse_poly(&f, &names, "x^3 + y^2*z + z*w^2 + x*y*w + 2*w^3").unwrap();
        let (ext, pts) =
            points_over_extension(&f, 3, std::slice::from_ref(&g), 2, DEFAULT_POINT_BUDGET)
                .unwrap();
        assert_eq!(ext.order(), 49);
        assert_eq!(
            count_points(&f, 3, std::slice::from_ref(&g), 2, DEFAULT_POINT_BUDGET).unwrap(),
            pts.len() as u64
        );
        let e = FieldEmbedding::new(&f, &ext).unwrap();
        let ge = g.embed(&e).unwrap();
        assert!(pts.iter().all(|p| ge.eval(p.coords()).unwrap().is_zero()));
        // Frobenius permutes the points.
        let mut conj: Vec<ProjPoint> = pts.iter().map(|p| p.frobenius(&ext, 1)).collect();
        conj.sort();
        assert_eq!(conj, pts);
    }

    #[test]
    fn empty_system_is_the_whole_space() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(
            count_points(&f, 2, &[], 1, DEFAULT_POINT_BUDGET).unwrap(),
            57
        );
        assert_eq!(
            count_points(&f, 2, &[], 2, DEFAULT_POINT_BUDGET).unwrap(),
            49 * 49 + 49 + 1
        );
    }
}
