//! Arithmetic in `F_q`, `q = p^e`, with elements stored as base-`p` integer codes.
//!
//! An element `a_0 + a_1 α + ... + a_{e-1} α^{e-1}` (α the class of `X` modulo the
//! defining polynomial) is stored as the integer `a_0 + a_1 p + ... + a_{e-1} p^{e-1}`.
//! This encoding is what every file format in the crate writes.

mod ext;
mod factor;
mod poly;
pub(crate) mod upoly;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

pub use ext::ResidueField;
pub use factor::{find_root_in_field, roots_in, BERLEKAMP_MAX_Q};
pub use poly::Poly;

/// Largest field order accepted by [`FieldContext`].
pub const MAX_FIELD_ORDER: u64 = 1 << 61;

/// Orders up to this bound get log/exp tables for multiplication.
const TABLE_MAX_Q: u64 = 1 << 16;

/// Orders up to this bound get a full addition table (extension fields, odd `p`).
const ADD_TABLE_MAX_Q: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is not a monic polynomial of degree {0} over F_p")]
    BadModulus(u32),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("field order p^e exceeds 2^61")]
    FieldTooLarge,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("fields are incompatible")]
    IncompatibleFields,
}

/// A single field element: its base-`p` integer code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn code(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldInner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic defining polynomial over F_p, low degree first; empty when `e == 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
    add_table: Option<Vec<u32>>,
}

/// Immutable, cheaply clonable handle to a finite field `F_{p^e}`.
#[derive(Clone)]
pub struct FieldContext(Arc<FieldInner>);

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldContext {}

impl std::hash::Hash for FieldContext {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.characteristic().hash(state);
        self.degree().hash(state);
        self.modulus().hash(state);
    }
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(
                f,
                "GF({}^{}; modulus {:?})",
                self.0.p, self.0.e, self.0.modulus
            )
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

/// Distinct prime divisors by trial division.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

impl FieldContext {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::CompositeP(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(FieldError::FieldTooLarge);
        }
        Ok(Self::build(p, 1, Vec::new()))
    }

    /// Builds `F_{p^e}`. With no modulus and `e > 1`, a monic irreducible is drawn at random.
    pub fn new<R: Rng + ?Sized>(
        p: u64,
        e: u32,
        modulus: Option<&[u64]>,
        rng: &mut R,
    ) -> Result<Self, FieldError> {
        let base = Self::check_params(p, e)?;
        if e == 1 {
            if let Some(m) = modulus {
                if m.len() != 2 || m[1] != 1 || m[0] >= p {
                    return Err(FieldError::BadModulus(1));
                }
            }
            return Ok(base);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus(e));
                }
                let f = Poly::from_codes(&base, m);
                if !f.is_irreducible()? {
                    return Err(FieldError::ReducibleModulus);
                }
                m.to_vec()
            }
            None => loop {
                let mut m: Vec<u64> = (0..e).map(|_| rng.gen_range(0..p)).collect();
                m.push(1);
                if Poly::from_codes(&base, &m).is_irreducible()? {
                    break m;
                }
            },
        };
        Ok(Self::build(p, e, modulus))
    }

    /// `F_{p^e}` defined by the lexicographically smallest monic irreducible
    /// (coefficients read as a base-`p` integer, constant term least significant).
    pub fn standard(p: u64, e: u32) -> Result<Self, FieldError> {
        let base = Self::check_params(p, e)?;
        if e == 1 {
            return Ok(base);
        }
        let mut counter: Vec<u64> = vec![0; e as usize];
        loop {
            let mut m = counter.clone();
            m.push(1);
            if Poly::from_codes(&base, &m).is_irreducible()? {
                return Ok(Self::build(p, e, m));
            }
            let mut i = 0;
            loop {
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }

    /// Field of order `q`, using [`FieldContext::standard`].
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        match prime_power(q) {
            Some((p, e)) => Self::standard(p, e),
            None => Err(FieldError::CompositeP(q)),
        }
    }

    fn check_params(p: u64, e: u32) -> Result<Self, FieldError> {
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let base = Self::prime(p)?;
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or(FieldError::FieldTooLarge)?;
            if q > MAX_FIELD_ORDER {
                return Err(FieldError::FieldTooLarge);
            }
        }
        Ok(base)
    }

    fn build(p: u64, e: u32, modulus: Vec<u64>) -> Self {
        let q = p.pow(e);
        let mut inner = FieldInner {
            p,
            e,
            q,
            modulus,
            tables: None,
            add_table: None,
        };
        if e > 1 && q <= TABLE_MAX_Q {
            inner.tables = Some(build_tables(&inner));
            if p != 2 && q <= ADD_TABLE_MAX_Q {
                let mut t = vec![0u32; (q * q) as usize];
                for a in 0..q {
                    for b in 0..q {
                        t[(a * q + b) as usize] = digit_add(&inner, a, b) as u32;
                    }
                }
                inner.add_table = Some(t);
            }
        }
        FieldContext(Arc::new(inner))
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Defining polynomial over `F_p` (monic, low degree first); empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// The prime subfield `F_p` as its own context.
    pub fn prime_subfield(&self) -> FieldContext {
        if self.0.e == 1 {
            self.clone()
        } else {
            Self::build(self.0.p, 1, Vec::new())
        }
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element from a code; `None` when out of range.
    pub fn element(&self, code: u64) -> Option<FieldElement> {
        (code < self.0.q).then_some(FieldElement(code))
    }

    /// The class of `X`, i.e. the generator α of the power basis (`p` itself is its code).
    pub fn alpha(&self) -> FieldElement {
        if self.0.e == 1 {
            // X mod (X - 0) is not meaningful; the power basis of F_p is {1}.
            FieldElement::ONE
        } else {
            FieldElement(self.0.p)
        }
    }

    /// Image of an integer under `Z -> F_p ⊆ F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i128;
        FieldElement((((n as i128) % p + p) % p) as u64)
    }

    /// Base-`p` digits of an element (coordinates in the power basis).
    pub fn digits(&self, a: FieldElement) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.0.e as usize);
        let mut c = a.0;
        for _ in 0..self.0.e {
            v.push(c % self.0.p);
            c /= self.0.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u64]) -> FieldElement {
        let mut c = 0u64;
        for &x in d.iter().rev() {
            c = c * self.0.p + x % self.0.p;
        }
        FieldElement(c)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let f = &*self.0;
        if f.e == 1 {
            let s = a.0 as u128 + b.0 as u128;
            let p = f.p as u128;
            FieldElement(if s >= p { (s - p) as u64 } else { s as u64 })
        } else if f.p == 2 {
            FieldElement(a.0 ^ b.0)
        } else if let Some(t) = &f.add_table {
            FieldElement(t[(a.0 * f.q + b.0) as usize] as u64)
        } else {
            FieldElement(digit_add(f, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let f = &*self.0;
        if a.0 == 0 || f.p == 2 {
            a
        } else if f.e == 1 {
            FieldElement(f.p - a.0)
        } else {
            let d: Vec<u64> = self
                .digits(a)
                .into_iter()
                .map(|x| (f.p - x) % f.p)
                .collect();
            self.from_digits(&d)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let f = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if f.e == 1 {
            if f.p <= u32::MAX as u64 {
                FieldElement(a.0 * b.0 % f.p)
            } else {
                FieldElement(mul_mod_u64(a.0, b.0, f.p))
            }
        } else if let Some(t) = &f.tables {
            let l = t.log[a.0 as usize] + t.log[b.0 as usize];
            FieldElement(t.exp[l as usize] as u64)
        } else {
            FieldElement(slow_mul(f, a.0, b.0))
        }
    }

    /// `a * b + c`.
    #[inline]
    pub fn mul_add(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> FieldElement {
        self.add(self.mul(a, b), c)
    }

    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let mut r = FieldElement::ONE;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let f = &*self.0;
        if f.e == 1 {
            Some(FieldElement(pow_mod_u64(a.0, f.p - 2, f.p)))
        } else if let Some(t) = &f.tables {
            let l = t.log[a.0 as usize];
            Some(FieldElement(
                t.exp[((f.q - 1) as u32 - l) as usize % (f.q - 1) as usize] as u64,
            ))
        } else {
            Some(self.pow(a, f.q - 2))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.0.p)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.0.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.0.q))
    }

    /// All elements in code order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    /// Multiplication-by-`a` matrix over `F_p` in the power basis (column `j` = digits of `a α^j`).
    pub fn mul_matrix_prime(&self, a: FieldElement) -> Vec<Vec<u64>> {
        let e = self.0.e as usize;
        let mut cols = Vec::with_capacity(e);
        let mut basis = FieldElement::ONE;
        for _ in 0..e {
            cols.push(self.digits(self.mul(a, basis)));
            basis = self.mul(basis, self.alpha());
        }
        (0..e)
            .map(|r| (0..e).map(|c| cols[c][r]).collect())
            .collect()
    }

    /// The header line shared by all file formats (without newline).
    pub fn header(&self) -> String {
        let mut s = format!("field {} {}", self.0.p, self.0.e);
        if self.0.e > 1 {
            for c in &self.0.modulus {
                s.push_str(&format!(" {}", c));
            }
        }
        s
    }
}

fn digit_add(f: &FieldInner, mut a: u64, mut b: u64) -> u64 {
    let mut r = 0u64;
    let mut place = 1u64;
    for _ in 0..f.e {
        let d = (a % f.p + b % f.p) % f.p;
        r += d * place;
        place = place.wrapping_mul(f.p);
        a /= f.p;
        b /= f.p;
    }
    r
}

fn slow_mul(f: &FieldInner, a: u64, b: u64) -> u64 {
    let e = f.e as usize;
    let p = f.p;
    let da = code_digits(a, p, e);
    let db = code_digits(b, p, e);
    let mut prod = vec![0u64; 2 * e - 1];
    for i in 0..e {
        if da[i] == 0 {
            continue;
        }
        for j in 0..e {
            prod[i + j] =
                ((prod[i + j] as u128 + da[i] as u128 * db[j] as u128) % p as u128) as u64;
        }
    }
    // reduce by the monic modulus: X^e = -sum m_i X^i
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..e {
            let sub = (c as u128 * f.modulus[i] as u128 % p as u128) as u64;
            prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
        }
    }
    let mut r = 0u64;
    for i in (0..e).rev() {
        r = r * p + prod[i];
    }
    r
}

fn code_digits(mut c: u64, p: u64, e: usize) -> Vec<u64> {
    let mut v = vec![0; e];
    for d in v.iter_mut() {
        *d = c % p;
        c /= p;
    }
    v
}

fn build_tables(f: &FieldInner) -> Tables {
    let q = f.q;
    let order = q - 1;
    let primes = prime_divisors(order);
    let slow_pow = |a: u64, mut n: u64| {
        let mut r = 1u64;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = slow_mul(f, r, b);
            }
            b = slow_mul(f, b, b);
            n >>= 1;
        }
        r
    };
    let g = (2..q)
        .find(|&g| primes.iter().all(|&r| slow_pow(g, order / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u64;
    for i in 0..order as usize {
        exp[i] = x as u32;
        exp[i + order as usize] = x as u32;
        log[x as usize] = i as u32;
        x = slow_mul(f, x, g);
    }
    Tables { exp, log }
}

/// Minimal interface the generic polynomial routines need from a finite field.
pub trait FiniteField {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn characteristic(&self) -> u64;
    /// `log_p |F|`.
    fn prime_degree(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> Self::Elem;
    /// Field order when it fits in a `u64`.
    fn order_u64(&self) -> Option<u64>;
    /// Element with index `i` in a fixed enumeration, `i < order`.
    fn nth_element(&self, i: u64) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        r
    }
}

impl FiniteField for FieldContext {
    type Elem = FieldElement;

    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn prime_degree(&self) -> u32 {
        self.0.e
    }
    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0 == 0
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldContext::add(self, *a, *b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldContext::sub(self, *a, *b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldContext::neg(self, *a)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldContext::mul(self, *a, *b)
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        FieldContext::inv(self, *a)
    }
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> FieldElement {
        FieldElement(rng.gen_range(0..self.0.q))
    }
    fn order_u64(&self) -> Option<u64> {
        Some(self.0.q)
    }
    fn nth_element(&self, i: u64) -> FieldElement {
        FieldElement(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FieldContext {
        FieldContext::new(2, 2, Some(&[1, 1, 1]), &mut ChaCha8Rng::seed_from_u64(0)).unwrap()
    }

    #[test]
    fn prime_field_f2() {
        let f = FieldContext::new(2, 1, None, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.add(FieldElement(1), FieldElement(1)), FieldElement(0));
    }

    #[test]
    fn f4_alpha_squared() {
        let f = f4();
        let a = f.alpha();
        // α² = α + 1, code 0b11 = 3
        assert_eq!(f.mul(a, a), FieldElement(3));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let r = FieldContext::new(2, 2, Some(&[1, 0, 1]), &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(r.unwrap_err(), FieldError::ReducibleModulus);
    }

    #[test]
    fn composite_and_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            FieldContext::new(4, 1, None, &mut rng).unwrap_err(),
            FieldError::CompositeP(4)
        );
        assert_eq!(
            FieldContext::new(2, 62, None, &mut rng).unwrap_err(),
            FieldError::FieldTooLarge
        );
        assert!(FieldContext::new(2, 61, None, &mut rng).is_ok());
    }

    #[test]
    fn inverses_exhaustive_small_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, e) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (2, 4),
            (17, 1),
            (5, 2),
            (2, 5),
            (3, 3),
            (2, 6),
            (7, 2),
        ] {
            let f = FieldContext::new(p, e, None, &mut rng).unwrap();
            assert!(f.order() <= 64);
            for a in f.elements().skip(1) {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), f.one(), "{:?} a={}", f, a);
            }
        }
    }

    #[test]
    fn frobenius_has_order_e() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, e) in [
            (2, 1),
            (2, 2),
            (3, 2),
            (2, 4),
            (5, 3),
            (3, 5),
            (2, 20),
            (1_000_003, 2),
        ] {
            let f = FieldContext::new(p, e, None, &mut rng).unwrap();
            for _ in 0..200 {
                let a = f.random(&mut rng);
                let mut b = a;
                for _ in 0..e {
                    b = f.frobenius(b);
                }
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = FieldContext::standard(3, 4).unwrap();
        for a in (0..81).step_by(7) {
            for b in (0..81).step_by(5) {
                assert_eq!(
                    f.mul(FieldElement(a), FieldElement(b)).0,
                    slow_mul(&f.0, a, b)
                );
            }
        }
    }

    #[test]
    fn large_prime_field() {
        let p = (1u64 << 61) - 1;
        let f = FieldContext::prime(p).unwrap();
        let a = FieldElement(p - 2);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
    }

    #[test]
    fn header_format() {
        assert_eq!(f4().header(), "field 2 2 1 1 1");
        assert_eq!(FieldContext::prime(5).unwrap().header(), "field 5 1");
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
    }
}
