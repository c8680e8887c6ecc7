use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Elem, FiniteField};
use crate::error::Result;

/// An element bundled with its field. Arithmetic between elements of
/// different fields panics in the operator impls and returns
/// [`crate::Error::FieldMismatch`] from the `try_*` methods.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: FiniteField, value: Elem) -> Self {
        assert!(
            field.contains(value),
            "element {} outside {}",
            value.0,
            field
        );
        FieldElement { field, value }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(&other.field)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(&other.field)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(&other.field)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|v| self.with(v))
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }

    /// `a^(p^base_power)`.
    pub fn frobenius(&self, base_power: u32) -> FieldElement {
        self.with(self.field.frobenius(self.value, base_power))
    }

    fn with(&self, value: Elem) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value.0, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.value.0);
        }
        let c: Vec<String> = self
            .field
            .coeffs(self.value)
            .iter()
            .map(|c| c.to_string())
            .collect();
        write!(f, "[{}]", c.join(","))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$try(&rhs).expect("cross-field arithmetic")
            }
        }
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$try(rhs).expect("cross-field arithmetic")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let v = self.field.neg(self.value);
        self.with(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn operators_and_mismatch() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let f49 = FiniteField::new(7, 2).unwrap();
        let a = f7.element(Elem(3));
        let b = f7.element(Elem(5));
        assert_eq!((&a + &b).value(), Elem(1));
        assert_eq!((&a * &b).value(), Elem(1));
        assert_eq!((a.clone() - b.clone()).value(), Elem(5));
        assert_eq!((-a.clone()).value(), Elem(4));
        let c = f49.element(Elem(3));
        assert!(matches!(a.try_add(&c), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    #[should_panic(expected = "cross-field")]
    fn operator_mismatch_panics() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let f11 = FiniteField::new(11, 1).unwrap();
        let _ = f7.element(Elem(1)) * f11.element(Elem(1));
    }
}
