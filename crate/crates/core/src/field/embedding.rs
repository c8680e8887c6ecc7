use std::collections::HashMap;

use super::{Elem, FiniteField};
use crate::error::{Error, Result};

/// Injective ring homomorphism GF(p^a) -> GF(p^b), `a | b`.
///
/// Determined by the image of the source's polynomial generator `x`, chosen
/// as the smallest-index root of the source modulus inside the target.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FiniteField,
    target: FiniteField,
    generator_image: Elem,
    image: Vec<Elem>,
    preimage: HashMap<Elem, Elem>,
}

impl FieldEmbedding {
    pub fn new(source: &FiniteField, target: &FiniteField) -> Result<Self> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::InvalidField(format!(
                "cannot embed {source} into {target}: characteristics differ"
            )));
        }
        let (a, b) = (source.degree(), target.degree());
        if b % a != 0 {
            return Err(Error::InvalidField(format!(
                "cannot embed {source} into {target}: {a} does not divide {b}"
            )));
        }
        let modulus: Vec<Elem> = source
            .modulus()
            .iter()
            .map(|&c| target.from_int(c as i64))
            .collect();
        let eval = |x: Elem| {
            modulus
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| target.add(target.mul(acc, x), c))
        };
        // Candidates: the subfield of order p^a inside the target.
        let qa = source.order();
        let qb = target.order();
        let step = (qb - 1) / (qa - 1).max(1);
        let mut candidates: Vec<Elem> = vec![Elem::ZERO];
        if qa > 1 {
            candidates.extend((0..qa - 1).map(|i| target.exp(i * step)));
        }
        candidates.sort();
        let generator_image = candidates
            .into_iter()
            .find(|&x| eval(x).is_zero())
            .ok_or_else(|| Error::InvalidField("no root of the source modulus found".into()))?;

        let p = source.characteristic();
        let n = source.degree() as usize;
        let mut powers = Vec::with_capacity(n);
        let mut cur = Elem::ONE;
        for _ in 0..n {
            powers.push(cur);
            cur = target.mul(cur, generator_image);
        }
        let mut image = Vec::with_capacity(qa as usize);
        let mut preimage = HashMap::with_capacity(qa as usize);
        for s in source.elements() {
            let mut v = s.0;
            let mut acc = Elem::ZERO;
            for &pw in &powers {
                let d = v % p;
                v /= p;
                if d != 0 {
                    acc = target.add(acc, target.mul(target.from_int(d as i64), pw));
                }
            }
            image.push(acc);
            preimage.insert(acc, s);
        }
        if preimage.len() != qa as usize {
            return Err(Error::InvalidField("embedding is not injective".into()));
        }
        Ok(FieldEmbedding {
            source: source.clone(),
            target: target.clone(),
            generator_image,
            image,
            preimage,
        })
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn generator_image(&self) -> Elem {
        self.generator_image
    }

    /// Relative degree `b / a`.
    pub fn relative_degree(&self) -> u32 {
        self.target.degree() / self.source.degree()
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.image[a.index()]
    }

    /// The unique preimage of `a`, or [`Error::NotInSubfield`].
    pub fn descend(&self, a: Elem) -> Result<Elem> {
        self.preimage
            .get(&a)
            .copied()
            .ok_or(Error::NotInSubfield(self.source.order()))
    }

    /// Whether `a` is fixed by `x -> x^{|source|}`.
    pub fn is_fixed(&self, a: Elem) -> bool {
        self.target.frobenius(a, self.source.degree()) == a
    }

    /// Relative trace `a + a^Q + ... + a^{Q^{r-1}}`, `Q = |source|`, as a
    /// source element.
    pub fn trace(&self, a: Elem) -> Elem {
        let r = self.relative_degree();
        let mut acc = Elem::ZERO;
        let mut cur = a;
        for _ in 0..r {
            acc = self.target.add(acc, cur);
            cur = self.target.frobenius(cur, self.source.degree());
        }
        self.descend(acc).expect("trace lies in the subfield")
    }

    /// Relative norm, as a source element.
    pub fn norm(&self, a: Elem) -> Elem {
        let r = self.relative_degree();
        let mut acc = Elem::ONE;
        let mut cur = a;
        for _ in 0..r {
            acc = self.target.mul(acc, cur);
            cur = self.target.frobenius(cur, self.source.degree());
        }
        self.descend(acc).expect("norm lies in the subfield")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_into_sextic_extension() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let f = FiniteField::new(7, 6).unwrap();
        let e = FieldEmbedding::new(&f7, &f).unwrap();
        assert_eq!(e.embed(Elem::ONE), Elem::ONE);
        assert_eq!(e.embed(Elem::ZERO), Elem::ZERO);
        let g = f7.primitive_element();
        assert_eq!(f.multiplicative_order(e.embed(g)), Some(6));
    }

    #[test]
    fn descend_rejects_non_fixed_elements() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let f343 = FiniteField::new(7, 3).unwrap();
        let e = FieldEmbedding::new(&f7, &f343).unwrap();
        let g = f343.primitive_element();
        assert_eq!(e.descend(g), Err(Error::NotInSubfield(7)));
        for a in f343.elements() {
            if f343.frobenius(a, 1) == a {
                let c = e.descend(a).unwrap();
                assert_eq!(e.embed(c), a);
            }
        }
    }

    #[test]
    fn homomorphism_and_round_trip() {
        for (p, a, b) in [(2, 2, 4), (3, 2, 6), (7, 2, 6), (7, 3, 6), (2, 3, 6)] {
            let s = FiniteField::new(p, a).unwrap();
            let t = FiniteField::new(p, b).unwrap();
            let e = FieldEmbedding::new(&s, &t).unwrap();
            for x in s.elements() {
                assert_eq!(e.descend(e.embed(x)).unwrap(), x);
                assert!(e.is_fixed(e.embed(x)));
                for y in s.elements().step_by(3) {
                    assert_eq!(e.embed(s.add(x, y)), t.add(e.embed(x), e.embed(y)));
                    assert_eq!(e.embed(s.mul(x, y)), t.mul(e.embed(x), e.embed(y)));
                }
            }
        }
    }

    #[test]
    fn rejects_incompatible_degrees() {
        let s = FiniteField::new(7, 2).unwrap();
        let t = FiniteField::new(7, 3).unwrap();
        assert!(FieldEmbedding::new(&s, &t).is_err());
    }

    #[test]
    fn trace_is_linear_and_lands_in_subfield() {
        let s = FiniteField::new(7, 1).unwrap();
        let t = FiniteField::new(7, 3).unwrap();
        let e = FieldEmbedding::new(&s, &t).unwrap();
        let a = t.primitive_element();
        let b = t.pow(a, 50);
        assert_eq!(e.trace(t.add(a, b)), s.add(e.trace(a), e.trace(b)));
        assert_eq!(e.trace(Elem::ONE), Elem(3));
    }
}
