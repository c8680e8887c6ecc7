//! Dense univariate polynomials over a [`FiniteField`], used for counting
//! roots along fibres. Coefficients low to high, trailing zeros trimmed.

use crate::field::{Elem, FiniteField};

pub(crate) fn trim(a: &mut Vec<Elem>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn rem(f: &FiniteField, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let c = f.mul(r[top], inv);
        if !c.is_zero() {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = f.sub(r[idx], f.mul(c, mi));
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(f: &FiniteField, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    rem(f, &out, m)
}

pub(crate) fn gcd(f: &FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// `x^e mod m`, `deg m >= 1`.
pub(crate) fn x_pow_mod(f: &FiniteField, mut e: u64, m: &[Elem]) -> Vec<Elem> {
    let mut result = rem(f, &[Elem::ONE], m);
    let mut base = rem(f, &[Elem::ZERO, Elem::ONE], m);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(f, &result, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(f, &base, &base, m);
        }
    }
    result
}

/// Number of distinct roots of `h` in the field, or `None` when `h` is the
/// zero polynomial (every element is a root).
pub(crate) fn count_roots(f: &FiniteField, h: &[Elem]) -> Option<u64> {
    let mut h = h.to_vec();
    trim(&mut h);
    match h.len() {
        0 => None,
        1 => Some(0),
        2 => Some(1),
        _ => {
            // gcd(h, x^Q - x)
            let mut xq = x_pow_mod(f, f.order(), &h);
            if xq.len() < 2 {
                xq.resize(2, Elem::ZERO);
            }
            xq[1] = f.sub(xq[1], Elem::ONE);
            trim(&mut xq);
            let g = gcd(f, &h, &xq);
            Some(g.len().saturating_sub(1) as u64)
        }
    }
}

pub(crate) fn eval(f: &FiniteField, h: &[Elem], x: Elem) -> Elem {
    h.iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts_match_brute_force() {
        let f = FiniteField::new(7, 2).unwrap();
        let polys: Vec<Vec<Elem>> = vec![
            vec![Elem(1), Elem(0), Elem(1)],
            vec![Elem(3), Elem(5), Elem(0), Elem(1)],
            vec![Elem(0), Elem(0), Elem(1)],
            vec![Elem(12), Elem(30), Elem(2), Elem(44), Elem(1)],
        ];
        for h in polys {
            let brute = f.elements().filter(|&x| eval(&f, &h, x).is_zero()).count() as u64;
            assert_eq!(count_roots(&f, &h), Some(brute));
        }
        assert_eq!(count_roots(&f, &[Elem::ZERO]), None);
    }
}
