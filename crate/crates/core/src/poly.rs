//! Sparse homogeneous polynomials over a finite field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldEmbedding, FiniteField};

/// Maximum number of variables (exponents are packed into one `u64`).
pub const MAX_VARS: usize = 8;

/// Exponent vector packed one byte per variable, `x_0` in the most
/// significant byte, so integer order is lexicographic order with `x_0`
/// compared first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let mut v = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e > 255 {
                return Err(Error::InvalidArgument(format!("exponent {e} too large")));
            }
            v |= (e as u64) << (8 * (7 - i));
        }
        Ok(Monomial(v))
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (8 * (7 - i))) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exponent(i)).sum()
    }

    /// Product of monomials. Caller guarantees no exponent overflows 255.
    #[inline]
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        Monomial(other.0 - self.0)
    }

    pub fn var(i: usize) -> Monomial {
        Monomial(1u64 << (8 * (7 - i)))
    }
}

/// All monomials of degree `d` in `nvars` variables, in decreasing
/// lexicographic order (`x_0^d` first).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_exponents(cur).unwrap());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(0));
        }
        return out;
    }
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// A homogeneous polynomial: field, variable count, total degree and a
/// term list sorted by decreasing monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly {
    field: FiniteField,
    nvars: usize,
    degree: u32,
    terms: Vec<(Monomial, Elem)>,
}

impl HomogPoly {
    pub fn zero(field: &FiniteField, nvars: usize, degree: u32) -> Self {
        HomogPoly {
            field: field.clone(),
            nvars,
            degree,
            terms: Vec::new(),
        }
    }

    /// Build from `(exponents, coefficient)` pairs. Duplicate exponent
    /// vectors are summed; zero coefficients dropped.
    pub fn from_terms<I>(field: &FiniteField, nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Elem)>,
    {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "{nvars} variables not supported"
            )));
        }
        let mut raw = Vec::new();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} for {nvars} variables",
                    exps.len()
                )));
            }
            let s: u32 = exps.iter().sum();
            if s != degree {
                return Err(Error::InvalidArgument(format!(
                    "term {exps:?} has degree {s}, polynomial degree is {degree}"
                )));
            }
            if !field.contains(c) {
                return Err(Error::InvalidArgument(format!(
                    "coefficient {} outside {field}",
                    c.0
                )));
            }
            raw.push((Monomial::from_exponents(&exps)?, c));
        }
        Ok(Self::from_monomials(field, nvars, degree, raw))
    }

    /// Build from packed monomials (trusted to have the right degree).
    pub fn from_monomials(
        field: &FiniteField,
        nvars: usize,
        degree: u32,
        mut raw: Vec<(Monomial, Elem)>,
    ) -> Self {
        raw.sort_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, Elem)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        HomogPoly {
            field: field.clone(),
            nvars,
            degree,
            terms,
        }
    }

    /// The variable `x_i`.
    pub fn var(field: &FiniteField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        HomogPoly {
            field: field.clone(),
            nvars,
            degree: 1,
            terms: vec![(Monomial::var(i), Elem::ONE)],
        }
    }

    pub fn constant(field: &FiniteField, nvars: usize, c: Elem) -> Self {
        Self::from_monomials(field, nvars, 0, vec![(Monomial(0), c)])
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(field: &FiniteField, coeffs: &[Elem]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::var(i), c))
            .collect();
        Self::from_monomials(field, coeffs.len(), 1, terms)
    }

    /// Combination `sum c_j m_j` of the given monomials.
    pub fn from_basis(
        field: &FiniteField,
        nvars: usize,
        degree: u32,
        basis: &[Monomial],
        coeffs: &[Elem],
    ) -> Self {
        let terms = basis.iter().copied().zip(coeffs.iter().copied()).collect();
        Self::from_monomials(field, nvars, degree, terms)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> Elem {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(Elem::ZERO)
    }

    /// Coefficients with respect to a monomial basis.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<Elem> {
        basis.iter().map(|&m| self.coefficient(m)).collect()
    }

    /// Leading (largest monomial) term.
    pub fn leading(&self) -> Option<(Monomial, Elem)> {
        self.terms.first().copied()
    }

    fn check_compatible(&self, other: &HomogPoly) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "sum of forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let mut raw = self.terms.clone();
        raw.extend_from_slice(&other.terms);
        Ok(Self::from_monomials(&self.field, self.nvars, degree, raw))
    }

    pub fn add(&self, other: &HomogPoly) -> HomogPoly {
        self.try_add(other).expect("incompatible polynomials")
    }

    pub fn sub(&self, other: &HomogPoly) -> HomogPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomogPoly {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn scale(&self, c: Elem) -> HomogPoly {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars, self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|&(m, a)| (m, self.field.mul(a, c)))
            .collect();
        HomogPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn try_mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_compatible(other)?;
        let degree = self.degree + other.degree;
        if degree > 255 {
            return Err(Error::InvalidArgument("degree exceeds 255".into()));
        }
        let f = &self.field;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &other.terms {
                raw.push((m1.times(m2), f.mul(c1, c2)));
            }
        }
        Ok(Self::from_monomials(f, self.nvars, degree, raw))
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        self.try_mul(other).expect("incompatible polynomials")
    }

    pub fn pow(&self, e: u32) -> HomogPoly {
        let mut result = Self::constant(&self.field, self.nvars, Elem::ONE);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Value at a coordinate vector.
    pub fn eval(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point with {} coordinates for {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for &(m, c) in &self.terms {
            let mut t = c;
            for (i, &x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = f.mul(t, f.pow(x, e as u128));
                    if t.is_zero() {
                        break;
                    }
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> HomogPoly {
        assert!(i < self.nvars, "variable index out of range");
        let f = &self.field;
        let degree = self.degree.saturating_sub(1);
        let mut raw = Vec::new();
        for &(m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let k = f.from_int(e as i64);
            if k.is_zero() {
                continue;
            }
            raw.push((Monomial(m.0 - Monomial::var(i).0), f.mul(c, k)));
        }
        Self::from_monomials(f, self.nvars, degree, raw)
    }

    /// Substitute `x_i -> images[i]`. All images share a degree `e` and a
    /// variable count; the result has degree `deg * e`.
    pub fn compose(&self, images: &[HomogPoly]) -> Result<HomogPoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let first = &images[0];
        for im in images {
            im.check_compatible(first)?;
            if im.degree != first.degree {
                return Err(Error::InvalidArgument("images of differing degree".into()));
            }
            self.field.ensure_same(&im.field)?;
        }
        let out_vars = first.nvars;
        let out_deg = self.degree * first.degree;
        let one = Self::constant(&self.field, out_vars, Elem::ONE);
        // powers[i][e] = images[i]^e
        let mut powers: Vec<Vec<HomogPoly>> = Vec::with_capacity(self.nvars);
        for (i, im) in images.iter().enumerate() {
            let maxe = self
                .terms
                .iter()
                .map(|t| t.0.exponent(i))
                .max()
                .unwrap_or(0);
            let mut v = vec![one.clone()];
            for e in 1..=maxe as usize {
                let next = v[e - 1].mul(im);
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc = Self::zero(&self.field, out_vars, out_deg);
        for &(m, c) in &self.terms {
            let mut t = Self::constant(&self.field, out_vars, c);
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            acc = acc.add(&t);
        }
        acc.degree = out_deg;
        Ok(acc)
    }

    /// Apply a coefficient map into another field.
    pub fn map_coeffs(&self, target: &FiniteField, mut f: impl FnMut(Elem) -> Elem) -> HomogPoly {
        let raw = self.terms.iter().map(|&(m, c)| (m, f(c))).collect();
        Self::from_monomials(target, self.nvars, self.degree, raw)
    }

    pub fn embed(&self, e: &FieldEmbedding) -> Result<HomogPoly> {
        self.field.ensure_same(e.source())?;
        Ok(self.map_coeffs(e.target(), |c| e.embed(c)))
    }

    /// Pull every coefficient back to the subfield, failing if one is not
    /// fixed.
    pub fn descend(&self, e: &FieldEmbedding) -> Result<HomogPoly> {
        self.field.ensure_same(e.target())?;
        let mut raw = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            raw.push((m, e.descend(c)?));
        }
        Ok(Self::from_monomials(
            e.source(),
            self.nvars,
            self.degree,
            raw,
        ))
    }

    /// Coefficientwise `c -> c^(p^base_power)`.
    pub fn frobenius(&self, base_power: u32) -> HomogPoly {
        let f = self.field.clone();
        self.map_coeffs(&f, |c| f.frobenius(c, base_power))
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> HomogPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c).unwrap()),
        }
    }

    /// Exact quotient `self / g` if `g` divides `self`.
    ///
    /// Division by a single polynomial has a unique remainder, so a zero
    /// remainder under lead-term cancellation is equivalent to divisibility.
    pub fn div_exact(&self, g: &HomogPoly) -> Option<HomogPoly> {
        if self.check_compatible(g).is_err() || g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(
                &self.field,
                self.nvars,
                self.degree.saturating_sub(g.degree),
            ));
        }
        if g.degree > self.degree {
            return None;
        }
        let f = &self.field;
        let (glm, glc) = g.leading().unwrap();
        let ginv = f.inv(glc).unwrap();
        let mut rem = self.terms.clone();
        let mut quot: Vec<(Monomial, Elem)> = Vec::new();
        while let Some(&(lm, lc)) = rem.first() {
            if !glm.divides(lm) {
                return None;
            }
            let qm = glm.quotient_of(lm);
            let qc = f.mul(lc, ginv);
            quot.push((qm, qc));
            let mut sub: Vec<(Monomial, Elem)> = g
                .terms
                .iter()
                .map(|&(m, c)| (m.times(qm), f.neg(f.mul(c, qc))))
                .collect();
            sub.extend_from_slice(&rem);
            rem = Self::from_monomials(f, self.nvars, self.degree, sub).terms;
        }
        Some(Self::from_monomials(
            f,
            self.nvars,
            self.degree - g.degree,
            quot,
        ))
    }

    /// Render with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for &(m, c) in &self.terms {
            let mut s = String::new();
            let coeff = self.field.element(c).to_string();
            let is_const = m.degree() == 0;
            if c != Elem::ONE || is_const {
                s.push_str(&coeff);
            }
            for i in 0..self.nvars {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                if !s.is_empty() {
                    s.push('*');
                }
                s.push_str(names.get(i).copied().unwrap_or("?"));
                if e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Default variable names: `x,y,z` for three variables, `x,y,z,w` for four,
/// `x0..` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    match nvars {
        3 => vec!["x".into(), "y".into(), "z".into()],
        4 => vec!["x".into(), "y".into(), "z".into(), "w".into()],
        _ => (0..nvars).map(|i| format!("x{i}")).collect(),
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.display_with(&refs))
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "HomogPoly[{:?}, deg {}]({})",
            self.field, self.degree, self
        )
    }
}

/// Parse a polynomial written with `+`, `-`, `*`, `^`, integer coefficients
/// and named variables, e.g. `"y^2*z - x^3 - 3*z^3"`.
///
/// Coefficients are reduced into the prime field. Intended for fixtures.
pub fn parse_poly(field: &FiniteField, names: &[&str], src: &str) -> Result<HomogPoly> {
    let nvars = names.len();
    let err = |msg: String| Error::Parse { line: 0, msg };
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(Vec<u32>, i64)> = Vec::new();
    let mut chars = cleaned.chars().peekable();
    let mut sign = 1i64;
    if cleaned.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    loop {
        match chars.peek() {
            Some('+') => {
                chars.next();
                sign = 1;
            }
            Some('-') => {
                chars.next();
                sign = -1;
            }
            _ => {}
        }
        let mut coeff = 1i64;
        let mut exps = vec![0u32; nvars];
        loop {
            let mut tok = String::new();
            while let Some(&c) = chars.peek() {
                if c == '*' || c == '+' || c == '-' {
                    break;
                }
                tok.push(c);
                chars.next();
            }
            if tok.is_empty() {
                return Err(err(format!("malformed term in {src:?}")));
            }
            let (base, power) = match tok.split_once('^') {
                Some((b, e)) => (
                    b.to_string(),
                    e.parse::<u32>()
                        .map_err(|_| err(format!("bad exponent {e}")))?,
                ),
                None => (tok.clone(), 1),
            };
            if let Ok(v) = base.parse::<i64>() {
                coeff *= v.pow(power);
            } else if let Some(i) = names.iter().position(|n| *n == base) {
                exps[i] += power;
            } else {
                return Err(err(format!("unknown variable {base}")));
            }
            if chars.peek() == Some(&'*') {
                chars.next();
                continue;
            }
            break;
        }
        terms.push((exps, sign * coeff));
        sign = 1;
        if chars.peek().is_none() {
            break;
        }
    }
    let degree = terms[0].0.iter().sum();
    HomogPoly::from_terms(
        field,
        nvars,
        degree,
        terms.into_iter().map(|(e, c)| (e, field.from_int(c))),
    )
}
