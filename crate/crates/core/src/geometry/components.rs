use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::{monomials_of_degree, HomogPoly};

/// Every factor of `c` of degree `1..=max_degree`, up to scalars, found by
/// exhaustive trial division over the coefficient field. Candidates are
/// monic in the monomial order; the output is ordered by degree and then by
/// candidate index.
pub fn component_search(c: &HomogPoly, max_degree: u32, budget: u128) -> Result<Vec<HomogPoly>> {
    let field = c.field();
    let q = field.order() as u128;
    let nvars = c.nvars();
    let mut needed: u128 = 0;
    for d in 1..=max_degree.min(c.degree()) {
        let n = monomials_of_degree(nvars, d).len() as u32;
        needed = needed.saturating_add(q.saturating_pow(n) / (q - 1));
    }
    if needed > budget {
        return Err(Error::budget(
            "factor candidate enumeration",
            needed,
            budget,
        ));
    }
    let mut found = Vec::new();
    for d in 1..=max_degree.min(c.degree()) {
        let monos = monomials_of_degree(nvars, d);
        let n = monos.len();
        // Candidate blocks by leading position: q^(n-1-lead) candidates each.
        let blocks: Vec<(usize, u128)> = (0..n).map(|i| (i, q.pow((n - 1 - i) as u32))).collect();
        for (lead, size) in blocks {
            let hits: Vec<(u128, HomogPoly)> = (0..size)
                .into_par_iter()
                .filter_map(|idx| {
                    let mut v = idx;
                    let mut terms = vec![(monos[lead], Elem::ONE)];
                    for &m in &monos[lead + 1..] {
                        let digit = (v % q) as u32;
                        v /= q;
                        if digit != 0 {
                            terms.push((m, Elem(digit)));
                        }
                    }
                    let g = HomogPoly::from_monomials(field, nvars, d, terms);
                    c.div_exact(&g).map(|_| (idx, g))
                })
                .collect();
            found.extend(hits.into_iter().map(|(_, g)| g));
        }
    }
    Ok(found)
}
