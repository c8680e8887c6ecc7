//! Arithmetic in GF(p^n).
//!
//! Every field is represented absolutely over its prime field: an element is
//! the polynomial `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` modulo a monic
//! irreducible of degree `n`, stored as the integer `sum c_i p^i` (an
//! [`Elem`]). Fields up to [`LOG_TABLE_LIMIT`] elements carry exp/log tables;
//! larger ones fall back to polynomial arithmetic.
//!
//! Relations between a field and its extensions are carried by
//! [`FieldEmbedding`] values rather than by a relative tower.

mod element;
mod embedding;
pub(crate) mod primepoly;

pub use element::FieldElement;
pub use embedding::FieldEmbedding;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest field order that gets discrete-log tables.
pub const LOG_TABLE_LIMIT: u64 = 1 << 20;
/// Largest odd-characteristic field order that gets a full addition table.
const ADD_TABLE_LIMIT: u64 = 1 << 10;

/// Raw element handle. Only meaningful together with the field it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Identity of a field: characteristic, degree and the modulus code
/// (`sum m_i p^i` over the non-leading coefficients).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId {
    pub p: u32,
    pub n: u32,
    pub modulus_code: u64,
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})#{}", self.p, self.n, self.modulus_code)
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    id: FieldId,
    p: u32,
    n: u32,
    q: u64,
    modulus: Vec<u32>,
    generator: Elem,
    tables: Option<Tables>,
    add: Option<Vec<u32>>,
    neg: Option<Vec<u32>>,
}

/// A finite field GF(p^n). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.id == other.0.id
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.id)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.n)
        }
    }
}

fn registry() -> &'static Mutex<HashMap<FieldId, FiniteField>> {
    static REG: OnceLock<Mutex<HashMap<FieldId, FiniteField>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn canonical_moduli() -> &'static Mutex<HashMap<(u32, u32), Vec<u32>>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Vec<u32>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Lowest monic irreducible of degree `n` over GF(p), ordering candidates by
/// their coefficient list read from degree `n-1` down to the constant term.
pub fn canonical_modulus(p: u32, n: u32) -> Result<Vec<u32>> {
    if !primepoly::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 {
        return Err(Error::InvalidField("degree must be at least 1".into()));
    }
    if let Some(m) = canonical_moduli().lock().unwrap().get(&(p, n)) {
        return Ok(m.clone());
    }
    let pp = p as u64;
    let count = pp
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{n} is too large")))?;
    for code in 0..count {
        let mut f = digits(code, pp, n as usize);
        f.push(1);
        if primepoly::is_irreducible(&f, pp) {
            let m: Vec<u32> = f.iter().map(|&c| c as u32).collect();
            canonical_moduli().lock().unwrap().insert((p, n), m.clone());
            return Ok(m);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut v: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..n {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Build GF(p^n). Without a modulus the canonical one is used, so two calls
/// with the same `(p, n)` give identical arithmetic.
pub fn make_field(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<FiniteField> {
    match modulus {
        None => FiniteField::new(p, n),
        Some(m) => FiniteField::with_modulus(p, m).and_then(|f| {
            if f.degree() != n {
                Err(Error::InvalidField(format!(
                    "modulus has degree {}, expected {n}",
                    f.degree()
                )))
            } else {
                Ok(f)
            }
        }),
    }
}

impl FiniteField {
    /// GF(p^n) with the canonical modulus.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        let m = canonical_modulus(p, n)?;
        Self::with_modulus(p, &m)
    }

    /// GF(p^n) for an explicit monic modulus given low-to-high.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if !primepoly::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in 0..{p}"
            )));
        }
        let n = (modulus.len() - 1) as u32;
        let pp = p as u64;
        let q = pp
            .checked_pow(n)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{n} is too large")))?;
        let modulus_code = modulus[..n as usize]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * pp + c as u64);
        let id = FieldId { p, n, modulus_code };
        if let Some(f) = registry().lock().unwrap().get(&id) {
            return Ok(f.clone());
        }
        let m64: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if !primepoly::is_irreducible(&m64, pp) {
            return Err(Error::ReducibleModulus(modulus.to_vec(), p));
        }
        let mut inner = Inner {
            id,
            p,
            n,
            q,
            modulus: modulus.to_vec(),
            generator: Elem::ONE,
            tables: None,
            add: None,
            neg: None,
        };
        inner.generator = find_generator(&inner);
        if q <= LOG_TABLE_LIMIT {
            let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
            let mut log = vec![0u32; q as usize];
            let mut cur = 1u32;
            for i in 0..(q - 1) as usize {
                exp[i] = cur;
                log[cur as usize] = i as u32;
                cur = poly_mul(&inner, cur, inner.generator.0);
            }
            let order = (q - 1) as usize;
            for i in 0..order {
                exp[i + order] = exp[i];
            }
            inner.tables = Some(Tables { exp, log });
            let neg: Vec<u32> = (0..q as u32).map(|a| digit_neg(&inner, a)).collect();
            inner.neg = Some(neg);
        }
        if p != 2 && q <= ADD_TABLE_LIMIT {
            let qq = q as u32;
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..qq {
                for b in 0..qq {
                    add[(a * qq + b) as usize] = digit_add(&inner, a, b);
                }
            }
            inner.add = Some(add);
        }
        let field = FiniteField(Arc::new(inner));
        registry().lock().unwrap().insert(id, field.clone());
        Ok(field)
    }

    /// The canonical extension of degree `r` over this field's prime field
    /// degree, i.e. GF(p^{n r}).
    pub fn extension(&self, r: u32) -> Result<FiniteField> {
        FiniteField::new(self.0.p, self.0.n * r)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Absolute degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.n
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.0.q
    }

    #[inline]
    pub fn id(&self) -> FieldId {
        self.0.id
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        self.0.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q as u32).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q as u32).map(Elem)
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        (a.0 as u64) < self.0.q
    }

    /// Image of an integer in the prime field.
    #[inline]
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from its base-p coefficient vector (low to high).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.0.n as usize {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.n
            )));
        }
        let p = self.0.p as u64;
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::InvalidArgument(format!("coefficient {c} >= p")));
            }
            v = v * p + c as u64;
        }
        Ok(Elem(v as u32))
    }

    /// Base-p coefficient vector (low to high, length n).
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.0.p as u64, self.0.n as usize)
            .into_iter()
            .map(|d| d as u32)
            .collect()
    }

    /// Whether `a` lies in the prime field.
    #[inline]
    pub fn is_prime_subfield(&self, a: Elem) -> bool {
        a.0 < self.0.p
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(t) = &f.add {
            return Elem(t[(a.0 as u64 * f.q + b.0 as u64) as usize]);
        }
        Elem(digit_add(f, a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 {
            return a;
        }
        if let Some(t) = &f.neg {
            return Elem(t[a.index()]);
        }
        Elem(digit_neg(f, a.0))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let f = &*self.0;
        match &f.tables {
            Some(t) => Elem(t.exp[(t.log[a.index()] + t.log[b.index()]) as usize]),
            None => Elem(poly_mul(f, a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let f = &*self.0;
        Some(match &f.tables {
            Some(t) => {
                let order = (f.q - 1) as u32;
                let l = t.log[a.index()];
                Elem(t.exp[((order - l) % order) as usize])
            }
            None => self.pow(a, f.q as u128 - 2),
        })
    }

    /// `a / b`; panics when `b` is zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let f = &*self.0;
        if let Some(t) = &f.tables {
            let order = (f.q - 1) as u128;
            let l = (t.log[a.index()] as u128 * (e % order)) % order;
            return Elem(t.exp[l as usize]);
        }
        let mut result = Elem::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Discrete log with respect to [`Self::primitive_element`].
    pub fn log(&self, a: Elem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        match &self.0.tables {
            Some(t) => Some(t.log[a.index()] as u64),
            None => {
                let g = self.0.generator;
                let mut cur = Elem::ONE;
                for i in 0..self.0.q - 1 {
                    if cur == a {
                        return Some(i);
                    }
                    cur = self.mul(cur, g);
                }
                None
            }
        }
    }

    /// `g^e` for the primitive element `g`.
    pub fn exp(&self, e: u64) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.exp[(e % (self.0.q - 1)) as usize]),
            None => self.pow(self.0.generator, e as u128),
        }
    }

    /// `a^(p^base_power)`, the `base_power`-th iterate of the absolute
    /// Frobenius. With `q = p^base_power` this is the map `a -> a^q`.
    pub fn frobenius(&self, a: Elem, base_power: u32) -> Elem {
        let k = base_power % self.0.n;
        if k == 0 || a.0 == 0 {
            return a;
        }
        self.pow(a, (self.0.p as u128).pow(k))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let mut order = self.0.q - 1;
        for l in primepoly::prime_factors(self.0.q - 1) {
            while order.is_multiple_of(l) && self.pow(a, (order / l) as u128) == Elem::ONE {
                order /= l;
            }
        }
        Some(order)
    }

    /// Checked element wrapper.
    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement::new(self.clone(), a)
    }

    /// Error for mixing two fields.
    pub(crate) fn ensure_same(&self, other: &FiniteField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    /// Compact spec string, `p^n` or `p^n/m0,m1,...,1` for a non-canonical modulus.
    pub fn spec_string(&self) -> String {
        let canonical = canonical_modulus(self.0.p, self.0.n).ok();
        if canonical.as_deref() == Some(&self.0.modulus[..]) {
            format!("{}^{}", self.0.p, self.0.n)
        } else {
            let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", self.0.p, self.0.n, m.join(","))
        }
    }
}

fn digit_add(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p;
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut scale = 1u32;
    for _ in 0..f.n {
        let s = (a % p + b % p) % p;
        out += s * scale;
        a /= p;
        b /= p;
        scale = scale.wrapping_mul(p);
    }
    out
}

fn digit_neg(f: &Inner, a: u32) -> u32 {
    let p = f.p;
    let mut a = a;
    let mut out = 0u32;
    let mut scale = 1u32;
    for _ in 0..f.n {
        let d = a % p;
        out += ((p - d) % p) * scale;
        a /= p;
        scale = scale.wrapping_mul(p);
    }
    out
}

fn poly_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    let n = f.n as usize;
    let da = digits(a as u64, p, n);
    let db = digits(b as u64, p, n);
    let m: Vec<u64> = f.modulus.iter().map(|&c| c as u64).collect();
    let r = primepoly::mulmod(&da, &db, &m, p);
    r.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

fn poly_pow(f: &Inner, a: u32, mut e: u64) -> u32 {
    let mut result = 1u32;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul(f, result, base);
        }
        base = poly_mul(f, base, base);
        e >>= 1;
    }
    result
}

fn find_generator(f: &Inner) -> Elem {
    let order = f.q - 1;
    if order == 1 {
        return Elem::ONE;
    }
    let factors = primepoly::prime_factors(order);
    for g in 2..f.q as u32 {
        if factors.iter().all(|&l| poly_pow(f, g, order / l) != 1) {
            return Elem(g);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}
