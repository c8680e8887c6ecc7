//! Byte-sized symbol arithmetic for the codeword kernels.

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};

pub const SMALL_FIELD_LIMIT: u64 = 256;

#[derive(Clone, Copy, Debug)]
enum AddKind {
    Xor,
    Prime(u8),
    Table,
}

#[derive(Clone, Debug)]
pub(crate) struct SmallField {
    q: usize,
    p: u64,
    kind: AddKind,
    add: Vec<u8>,
    sub: Vec<u8>,
    mul: Vec<u8>,
    nonzero: Vec<u8>,
}

impl SmallField {
    pub(crate) fn new(field: &FiniteField) -> Result<Self> {
        let q = field.order();
        if q > SMALL_FIELD_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "codeword kernels support q <= {SMALL_FIELD_LIMIT}, got {q}"
            )));
        }
        let q = q as usize;
        let mut add = vec![0u8; q * q];
        let mut sub = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (ea, eb) = (Elem(a as u32), Elem(b as u32));
                add[a * q + b] = field.add(ea, eb).0 as u8;
                sub[a * q + b] = field.sub(ea, eb).0 as u8;
                mul[a * q + b] = field.mul(ea, eb).0 as u8;
            }
        }
        let p = field.characteristic();
        let kind = if p == 2 {
            AddKind::Xor
        } else if field.degree() == 1 {
            AddKind::Prime(p as u8)
        } else {
            AddKind::Table
        };
        let nonzero = (1..q as u8).collect();
        Ok(SmallField {
            q,
            p: p as u64,
            kind,
            add,
            sub,
            mul,
            nonzero,
        })
    }

    pub(crate) fn order(&self) -> usize {
        self.q
    }

    pub(crate) fn characteristic(&self) -> u64 {
        self.p
    }

    pub(crate) fn nonzero(&self) -> &[u8] {
        &self.nonzero
    }

    #[inline]
    pub(crate) fn sub(&self, a: u8, b: u8) -> u8 {
        self.sub[a as usize * self.q + b as usize]
    }

    pub(crate) fn scale(&self, c: u8, v: &[u8]) -> Vec<u8> {
        let t = &self.mul[c as usize * self.q..(c as usize + 1) * self.q];
        v.iter().map(|&x| t[x as usize]).collect()
    }

    /// `acc += row`, returning the weight of the result.
    #[inline]
    pub(crate) fn add_assign_weight(&self, acc: &mut [u8], row: &[u8]) -> usize {
        match self.kind {
            AddKind::Xor => {
                let mut w = 0;
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a ^= r;
                    w += (*a != 0) as usize;
                }
                w
            }
            AddKind::Prime(p) => {
                let mut w = 0;
                for (a, &r) in acc.iter_mut().zip(row) {
                    let s = *a + r;
                    *a = if s >= p { s - p } else { s };
                    w += (*a != 0) as usize;
                }
                w
            }
            AddKind::Table => {
                let mut w = 0;
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a = self.add[*a as usize * self.q + r as usize];
                    w += (*a != 0) as usize;
                }
                w
            }
        }
    }

    pub(crate) fn add_assign(&self, acc: &mut [u8], row: &[u8]) {
        self.add_assign_weight(acc, row);
    }
}

pub(crate) fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}
