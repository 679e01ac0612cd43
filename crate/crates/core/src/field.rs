//! Arithmetic in GF(q), q = p^m <= 2^16.
//!
//! An element is stored as a canonical integer in `[0, q)`: the base-`p`
//! digits of the integer are the coefficients (low to high) of a polynomial
//! over GF(p) reduced modulo the field's irreducible modulus. Multiplication
//! goes through log/antilog tables built once per field; the raw `u32`
//! methods on [`Field`] are what the hot loops in enumeration and
//! elimination use, while [`FieldElement`] is the checked, field-tagged
//! surface.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Orders up to this size get a full addition table when `p` is odd and `m > 1`.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus polynomial {0:?} is reducible over GF({1})")]
    ReduciblePolynomial(Vec<u32>, u32),
    #[error("invalid modulus polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("field order {p}^{m} is not supported (limit 2^16)")]
    UnsupportedOrder { p: u32, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value {value} is not an element of GF({q})")]
    ValueOutOfRange { value: u64, q: u32 },
}

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus `c0..cm`; empty for prime fields.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

/// A finite field GF(p^m). Cheap to clone; immutable and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}", self.0.p, self.0.m)?;
        if !self.0.modulus.is_empty() {
            write!(f, ", poly={:?}", self.0.modulus)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- polynomial helpers over GF(p), coefficient vectors low to high ----

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `b` over GF(p); `b` must be nonzero.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = poly_trim(r);
    }
    r
}

fn digits(mut value: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = vec![0; m as usize];
    for d in out.iter_mut() {
        *d = value % p;
        value /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// True when the monic polynomial `f` (degree >= 1) has no monic factor of
/// degree between 1 and deg(f)/2.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = poly_trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = low;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `m` over GF(p), ordering
/// candidates by the integer whose base-`p` digits are `c0..c(m-1)`.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for low in 1..count {
        let mut f = digits(low as u32, p, m);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds GF(p^m). When `modulus` is `None` the first lexicographic
    /// irreducible polynomial of degree `m` is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER as u64);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(FieldError::UnsupportedOrder { p, m }),
        };
        let modulus = match modulus {
            Some(poly) => Self::check_modulus(poly, p, m)?,
            None if m == 1 => Vec::new(),
            None => default_modulus(p, m),
        };

        let mut inner = FieldInner {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        inner.neg = (0..q).map(|a| slow_neg(&inner, a)).collect();
        if p != 2 && m > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = slow_add(&inner, a, b) as u16;
                }
            }
            inner.add_table = Some(table);
        }
        build_log_tables(&mut inner);
        Ok(Field(Arc::new(inner)))
    }

    /// GF(p) for prime `p`.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    fn check_modulus(poly: &[u32], p: u32, m: u32) -> Result<Vec<u32>, FieldError> {
        if poly.iter().any(|&c| c >= p) {
            return Err(FieldError::InvalidPolynomial(format!(
                "coefficients must lie in [0, {p})"
            )));
        }
        let trimmed = poly_trim(poly.to_vec());
        if trimmed.len() != m as usize + 1 {
            return Err(FieldError::InvalidPolynomial(format!(
                "expected degree {m}, got {:?}",
                poly
            )));
        }
        if trimmed[m as usize] != 1 {
            return Err(FieldError::InvalidPolynomial("polynomial must be monic".into()));
        }
        if m == 1 {
            // every monic linear polynomial is irreducible; prime fields carry no modulus
            return Ok(Vec::new());
        }
        if !is_irreducible(&trimmed, p) {
            return Err(FieldError::ReduciblePolynomial(trimmed, p));
        }
        Ok(trimmed)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients `c0..cm`, empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Wraps a raw value as an element of this field.
    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        if value >= self.0.q {
            return Err(FieldError::ValueOutOfRange {
                value: value as u64,
                q: self.0.q,
            });
        }
        Ok(FieldElement {
            value,
            field: self.clone(),
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            value: 0,
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            value: 1,
            field: self.clone(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |value| FieldElement {
            value,
            field: self.clone(),
        })
    }

    // ---- raw arithmetic on canonical encodings ----

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            a ^ b
        } else if f.m == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if let Some(t) = &f.add_table {
            t[(a * f.q + b) as usize] as u32
        } else {
            slow_add(f, a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            let f = &*self.0;
            f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            let f = &*self.0;
            let order = f.q - 1;
            Some(f.exp[((order - f.log[a as usize]) % order) as usize])
        }
    }

    pub fn pow(&self, a: u32, e: i64) -> Option<u32> {
        if a == 0 {
            return match e {
                0 => Some(1),
                e if e > 0 => Some(0),
                _ => None,
            };
        }
        let f = &*self.0;
        let order = (f.q - 1) as i64;
        let idx = (f.log[a as usize] as i64 * e.rem_euclid(order)).rem_euclid(order);
        Some(f.exp[idx as usize])
    }

    /// Reference multiplication by polynomial arithmetic, independent of the
    /// log tables.
    pub fn mul_by_polynomial(&self, a: u32, b: u32) -> u32 {
        slow_mul(&self.0, a, b)
    }
}

fn slow_add(f: &FieldInner, a: u32, b: u32) -> u32 {
    if f.m == 1 {
        return (a + b) % f.p;
    }
    let (da, db) = (digits(a, f.p, f.m), digits(b, f.p, f.m));
    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % f.p).collect();
    undigits(&sum, f.p)
}

fn slow_neg(f: &FieldInner, a: u32) -> u32 {
    if f.m == 1 {
        return (f.p - a) % f.p;
    }
    let d: Vec<u32> = digits(a, f.p, f.m)
        .into_iter()
        .map(|x| (f.p - x) % f.p)
        .collect();
    undigits(&d, f.p)
}

fn slow_mul(f: &FieldInner, a: u32, b: u32) -> u32 {
    if f.m == 1 {
        return ((a as u64 * b as u64) % f.p as u64) as u32;
    }
    let (da, db) = (digits(a, f.p, f.m), digits(b, f.p, f.m));
    let mut prod = vec![0u64; da.len() + db.len()];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % f.p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, &f.modulus, f.p);
    r.resize(f.m as usize, 0);
    undigits(&r, f.p)
}

fn slow_pow(f: &FieldInner, a: u32, mut e: u64) -> u32 {
    let mut result = 1;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            result = slow_mul(f, result, base);
        }
        base = slow_mul(f, base, base);
        e >>= 1;
    }
    result
}

fn build_log_tables(f: &mut FieldInner) {
    let q = f.q;
    let order = q - 1;
    let generator = if q == 2 {
        1
    } else {
        let factors = prime_factors(order);
        (2..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(f, g, (order / r) as u64) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    };
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..order {
        exp[i as usize] = x;
        exp[(i + order) as usize] = x;
        log[x as usize] = i;
        x = slow_mul(f, x, generator);
    }
    f.exp = exp;
    f.log = log;
}

/// An element of a specific [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: u32,
    field: Field,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement {
            value,
            field: self.field.clone(),
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        let inv = other.field.inv(other.value).ok_or(FieldError::DivisionByZero)?;
        Ok(self.wrap(self.field.mul(self.value, inv)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let inv = self.field.inv(self.value).ok_or(FieldError::DivisionByZero)?;
        Ok(self.wrap(inv))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, FieldError> {
        let v = self.field.pow(self.value, e).ok_or(FieldError::DivisionByZero)?;
        Ok(self.wrap(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn gf4_multiplication_table() {
        let f = gf4();
        // alpha = x encodes as 2, alpha^2 = x + 1 encodes as 3
        let (alpha, alpha2) = (f.element(2).unwrap(), f.element(3).unwrap());
        assert_eq!(alpha.mul(&alpha).unwrap(), alpha2);
        assert_eq!(alpha.mul(&alpha2).unwrap(), f.one());
        assert_eq!(f.order(), 4);
    }

    #[test]
    fn small_prime_facts() {
        let gf2 = Field::prime(2).unwrap();
        assert_eq!(gf2.one().add(&gf2.one()).unwrap(), gf2.zero());
        let gf5 = Field::prime(5).unwrap();
        assert_eq!(gf5.element(2).unwrap().inv().unwrap().value(), 3);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::ReduciblePolynomial(..))
        ));
        assert!(matches!(
            Field::new(2, 17, None),
            Err(FieldError::UnsupportedOrder { .. })
        ));
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 1])),
            Err(FieldError::InvalidPolynomial(_))
        ));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(Field::new(2, 2, None).unwrap(), gf4());
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let f = Field::prime(7).unwrap();
        let g = Field::prime(5).unwrap();
        assert_eq!(f.zero().inv().unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(
            f.one().div(&f.zero()).unwrap_err(),
            FieldError::DivisionByZero
        );
        assert_eq!(f.one().add(&g.one()).unwrap_err(), FieldError::FieldMismatch);
        assert!(f.zero().pow(-1).is_err());
        assert_eq!(f.zero().pow(0).unwrap(), f.one());
    }

    fn small_fields() -> Vec<Field> {
        let mut out = Vec::new();
        for (p, m) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 8), (3, 5)] {
            out.push(Field::new(p, m, None).unwrap());
        }
        out
    }

    #[test]
    fn exhaustive_inverse_and_fermat() {
        for f in small_fields() {
            let q = f.order();
            for a in 1..q {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1, "{f:?} a={a}");
                assert_eq!(f.pow(a, (q - 1) as i64), Some(1));
            }
        }
    }

    #[test]
    fn exhaustive_frobenius_and_tables() {
        for f in small_fields().into_iter().filter(|f| f.order() <= 64) {
            let p = f.characteristic() as i64;
            for a in 0..f.order() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..f.order() {
                    let lhs = f.pow(f.add(a, b), p).unwrap();
                    let rhs = f.add(f.pow(a, p).unwrap(), f.pow(b, p).unwrap());
                    assert_eq!(lhs, rhs);
                    assert_eq!(f.mul(a, b), f.mul_by_polynomial(a, b));
                    assert_eq!(f.add(a, b), slow_add(&f.0, a, b));
                }
            }
        }
    }

    #[test]
    fn encoding_round_trip() {
        for f in small_fields() {
            for e in f.elements() {
                assert_eq!(f.element(e.value()).unwrap(), e);
            }
            assert!(f.element(f.order()).is_err());
        }
    }

    #[test]
    fn largest_supported_field_builds() {
        let f = Field::new(2, 16, None).unwrap();
        assert_eq!(f.order(), 65536);
        let a = 12345;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        assert_eq!(f.mul(a, 777), f.mul_by_polynomial(a, 777));
        let gp = Field::prime(65521).unwrap();
        assert_eq!(gp.mul(gp.inv(3).unwrap(), 3), 1);
    }
}
