//! Arithmetic in GF(p^m).
//!
//! Elements are encoded as integer codes whose base-p digits are the
//! polynomial coefficients (digit `i` is the coefficient of `x^i`). The
//! modulus is the lexicographically smallest monic irreducible polynomial of
//! degree `m`, comparing coefficient vectors from the constant term upward.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_ORDER: u64 = 1 << 16;

/// Fields up to this order get precomputed addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the budget of {MAX_ORDER}")]
    OrderOverflow { p: u64, m: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("frobenius exponent {e} out of range 0..={m}")]
    FrobeniusRange { e: u32, m: u32 },
    #[error("GF({q}) has odd extension degree; no conjugation is defined")]
    NoConjugation { q: u32 },
    #[error("element code {code} is not valid in GF({q})")]
    InvalidElement { code: u32, q: u32 },
}

/// A field element, stored as its integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    subfield_order: Option<u32>,
    tables: Option<Tables>,
}

/// A finite field GF(p^m) with a fixed irreducible modulus.
///
/// Cloning is cheap; all clones share the same immutable context.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^m) with the canonical modulus.
    pub fn new(p: u64, m: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m < 1 {
            return Err(GfError::ZeroDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(GfError::OrderOverflow { p, m })?;
        let p = p as u32;
        let q = q as u32;
        let modulus = smallest_irreducible(p, m as usize);
        let subfield_order = m.is_multiple_of(2).then(|| p.pow(m / 2));
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            subfield_order,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus coefficients, constant term first (length m + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// `sqrt(q)` when the extension degree is even.
    pub fn subfield_order(&self) -> Option<u32> {
        self.0.subfield_order
    }

    pub fn is_even_characteristic(&self) -> bool {
        self.0.p == 2
    }

    pub fn element(&self, code: u32) -> Result<Fe, GfError> {
        if code < self.0.q {
            Ok(Fe(code))
        } else {
            Err(GfError::InvalidElement { code, q: self.0.q })
        }
    }

    /// All elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(Fe)
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return Fe(t.add[(a.0 * inner.q + b.0) as usize] as u32);
        }
        if inner.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        digitwise(inner.p, a.0, b.0, |x, y| (x + y) % inner.p)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return Fe(t.neg[a.0 as usize] as u32);
        }
        if inner.p == 2 {
            return a;
        }
        digitwise(inner.p, a.0, 0, |x, _| (inner.p - x) % inner.p)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return Fe(t.mul[(a.0 * inner.q + b.0) as usize] as u32);
        }
        raw_mul(inner, a.0, b.0)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::InverseOfZero);
        }
        if let Some(t) = &self.0.tables {
            return Ok(Fe(t.inv[a.0 as usize] as u32));
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^(p^e)` for `0 <= e <= m`.
    pub fn frobenius(&self, x: Fe, e: u32) -> Result<Fe, GfError> {
        if e > self.0.m {
            return Err(GfError::FrobeniusRange { e, m: self.0.m });
        }
        let mut y = x;
        for _ in 0..e {
            y = self.pow(y, self.0.p as u64);
        }
        Ok(y)
    }

    /// The involution `x -> x^sqrt(q)` on a field of square order.
    pub fn conj(&self, x: Fe) -> Result<Fe, GfError> {
        match self.0.subfield_order {
            Some(s) => Ok(self.pow(x, s as u64)),
            None => Err(GfError::NoConjugation { q: self.0.q }),
        }
    }

    /// `x^(sqrt(q) + 1)`, the norm onto the subfield of order sqrt(q).
    pub fn norm(&self, x: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(x, self.conj(x)?))
    }

    pub fn is_square(&self, x: Fe) -> bool {
        if x.is_zero() || self.0.p == 2 {
            return true;
        }
        self.pow(x, (self.0.q as u64 - 1) / 2) == Fe::ONE
    }

    /// The square root with the smaller code, or `None` for a non-square.
    pub fn sqrt(&self, x: Fe) -> Option<Fe> {
        if self.0.p == 2 {
            // squaring is a bijection; its inverse is x^(q/2)
            return Some(self.pow(x, self.0.q as u64 / 2));
        }
        if !self.is_square(x) {
            return None;
        }
        self.elements().find(|&y| self.mul(y, y) == x)
    }
}

fn digitwise(p: u32, mut a: u32, mut b: u32, f: impl Fn(u32, u32) -> u32) -> Fe {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += f(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    if place == 1 {
        out = f(0, 0);
    }
    Fe(out)
}

fn to_digits(p: u32, m: usize, mut code: u32) -> Vec<u32> {
    let mut d = vec![0; m];
    for slot in d.iter_mut() {
        *slot = code % p;
        code /= p;
    }
    d
}

fn from_digits(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn raw_mul(inner: &Inner, a: u32, b: u32) -> Fe {
    let (p, m) = (inner.p, inner.m as usize);
    if m == 1 {
        return Fe(((a as u64 * b as u64) % p as u64) as u32);
    }
    let da = to_digits(p, m, a);
    let db = to_digits(p, m, b);
    let mut prod = vec![0u32; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem_monic(&mut prod, &inner.modulus, p);
    Fe(from_digits(p, &prod[..m]))
}

/// Reduces `a` in place modulo the monic polynomial `g` over GF(p).
fn poly_rem_monic(a: &mut [u32], g: &[u32], p: u32) {
    let dg = g.len() - 1;
    for top in (dg..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let idx = top - dg + i;
            a[idx] = (a[idx] + (p - c) * gi) % p;
        }
    }
}

fn has_monic_divisor(f: &[u32], p: u32, d: usize) -> bool {
    let count = (p as u64).pow(d as u32);
    (0..count).any(|idx| {
        let mut g = to_digits(p, d, idx as u32);
        g.push(1);
        let mut r = f.to_vec();
        poly_rem_monic(&mut r, &g, p);
        r[..d].iter().all(|&c| c == 0)
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    (1..=m / 2).all(|d| !has_monic_divisor(f, p, d))
}

/// Smallest monic irreducible of degree m, comparing (c0, c1, ..., c_{m-1}).
fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    let count = (p as u64).pow(m as u32);
    for idx in 0..count {
        // c0 is the most significant digit of idx
        let mut f = vec![0u32; m + 1];
        let mut rest = idx;
        for i in (0..m).rev() {
            f[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[m] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let mut add = vec![0u16; (q * q) as usize];
    let mut mul = vec![0u16; (q * q) as usize];
    let mut neg = vec![0u16; q as usize];
    let mut inv = vec![0u16; q as usize];
    for a in 0..q {
        for b in 0..q {
            let s = if inner.p == 2 {
                a ^ b
            } else {
                digitwise(inner.p, a, b, |x, y| (x + y) % inner.p).0
            };
            let idx = (a * q + b) as usize;
            add[idx] = s as u16;
            let prod = raw_mul(inner, a, b).0;
            mul[idx] = prod as u16;
            if s == 0 {
                neg[a as usize] = b as u16;
            }
            if prod == 1 {
                inv[a as usize] = b as u16;
            }
        }
    }
    Tables { add, mul, neg, inv }
}
