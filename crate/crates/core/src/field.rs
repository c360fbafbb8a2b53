//! Finite fields F_q for small q = p^m.
//!
//! Elements are stored by their integer encoding: the coefficient vector
//! (constant term first) of the polynomial-basis representation, read as
//! the base-p digits of an integer in `0..q`. Integer order is therefore
//! the canonical element order used for every tie-break in the crate.
//! All arithmetic goes through precomputed `q × q` tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order. Elements are encoded in a `u8`.
pub const MAX_ORDER: u64 = 256;

/// Description of a field: characteristic, degree and (for m > 1) the
/// monic defining polynomial, coefficients listed constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

/// Built-in moduli, keyed by (p, m).
pub fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    let coeffs: &[u32] = match (p, m) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (3, 2) => &[1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (5, 2) => &[2, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        _ => return None,
    };
    Some(coeffs.to_vec())
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of some [`Field`]; meaningless without the field it came from.
/// Serialises as its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical integer encoding in `0..q`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

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
    spec: FieldSpec,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A finite field with its arithmetic tables. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)?;
        if self.0.spec.m > 1 {
            write!(f, "[t]/{:?}", self.0.spec.modulus)?;
        }
        Ok(())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

// Polynomials over F_p, constant term first, no trailing zeros.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let lead_inv = mod_inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * bc % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is small; Fermat via repeated multiplication
    let mut acc = 1u64;
    for _ in 0..p - 2 {
        acc = acc * a as u64 % p as u64;
    }
    acc as u32
}

/// True when the monic polynomial has no monic factor of degree
/// `1..=deg/2` over F_p. Exhaustive trial division.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = lower;
            for _ in 0..d {
                cand.push((x % p as u64) as u32);
                x /= p as u64;
            }
            cand.push(1);
            if poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds F_{p^m}. When `modulus` is `None` and `m > 1` the built-in
    /// default for that order is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("p^m exceeds {MAX_ORDER}")))?;
        let modulus = if m == 1 {
            match modulus {
                Some(md) if !md.is_empty() && md != [0, 1] => {
                    return Err(Error::InvalidField("prime fields take no modulus".into()))
                }
                _ => Vec::new(),
            }
        } else {
            let md = match modulus {
                Some(md) if !md.is_empty() => md.to_vec(),
                _ => default_modulus(p, m).ok_or(Error::NoDefaultModulus(q))?,
            };
            if md.len() != m as usize + 1 || md.iter().any(|&c| c >= p) || md[m as usize] != 1 {
                return Err(Error::InvalidField(format!(
                    "modulus must be {} coefficients in [0, {p}), monic, constant term first",
                    m + 1
                )));
            }
            if !is_irreducible(&md, p) {
                return Err(Error::ReducibleModulus(md, p));
            }
            md
        };
        Ok(Field(Arc::new(Self::tables(
            FieldSpec { p, m, modulus },
            q as usize,
        ))))
    }

    /// Prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// F_q with the built-in modulus when q is not prime.
    pub fn of_order(q: u64) -> Result<Field> {
        for p in 2..=q as u32 {
            if q % p as u64 == 0 {
                if !is_prime(p) {
                    break;
                }
                let mut m = 0;
                let mut r = q;
                while r % p as u64 == 0 {
                    r /= p as u64;
                    m += 1;
                }
                if r != 1 {
                    break;
                }
                return Field::new(p, m, None);
            }
        }
        Err(Error::InvalidField(format!("{q} is not a prime power")))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.m, Some(&spec.modulus))
    }

    fn tables(spec: FieldSpec, q: usize) -> Tables {
        let p = spec.p as usize;
        let m = spec.m as usize;
        let digits = |x: usize| -> Vec<usize> {
            let mut x = x;
            (0..m)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let all: Vec<Vec<usize>> = (0..q).map(digits).collect();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for x in 0..q {
            for y in 0..q {
                let s: Vec<usize> = (0..m).map(|i| (all[x][i] + all[y][i]) % p).collect();
                add[x * q + y] = encode(&s) as u8;
                let mut prod = vec![0usize; 2 * m];
                for i in 0..m {
                    for j in 0..m {
                        prod[i + j] = (prod[i + j] + all[x][i] * all[y][j]) % p;
                    }
                }
                // reduce with the monic modulus: t^m = -sum_{i<m} c_i t^i
                for d in (m..2 * m - 1).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for i in 0..m {
                        let mc = spec.modulus.get(i).copied().unwrap_or(0) as usize;
                        prod[d - m + i] = (prod[d - m + i] + p * p - c * mc % p) % p;
                    }
                }
                mul[x * q + y] = encode(&prod[..m]) as u8;
            }
        }
        let neg: Vec<u8> = (0..q)
            .map(|x| (0..q).find(|&y| add[x * q + y] == 0).unwrap() as u8)
            .collect();
        let inv: Vec<u8> = (0..q)
            .map(|x| {
                if x == 0 {
                    0
                } else {
                    (1..q).find(|&y| mul[x * q + y] == 1).expect("field has inverses") as u8
                }
            })
            .collect();
        Tables {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.m
    }

    pub fn is_odd(&self) -> bool {
        self.0.spec.p != 2
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with canonical encoding `n`.
    pub fn element(&self, n: u64) -> Result<FieldElement> {
        if n < self.0.q as u64 {
            Ok(FieldElement(n as u8))
        } else {
            Err(Error::ElementOutOfRange(n, self.0.q))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.spec.p as i64) as u8)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(|x| FieldElement(x as u8))
    }

    /// Nonzero elements in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.0.q).map(|x| FieldElement(x as u8))
    }

    /// Polynomial-basis coefficients, constant term first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let p = self.0.spec.p;
        let mut v = x.0 as u32;
        (0..self.0.spec.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.0.add[x.index() * self.0.q + y.index()])
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.0.mul[x.index() * self.0.q + y.index()])
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[x.index()])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.0.inv[x.index()]))
        }
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn square(&self, x: FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// Sum of `(x_i)(y_i)` over paired slices.
    pub fn dot(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        x.iter()
            .zip(y)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Quadratic character: +1 on nonzero squares, -1 on non-squares, 0 at 0.
    pub fn quadratic_character(&self, x: FieldElement) -> Result<i8> {
        if !self.is_odd() {
            return Err(Error::CharacteristicTwo);
        }
        if x.is_zero() {
            return Ok(0);
        }
        let e = (self.0.q as u64 - 1) / 2;
        Ok(if self.pow(x, e) == FieldElement::ONE {
            1
        } else {
            -1
        })
    }

    /// Works in every characteristic (in characteristic 2 everything is a square).
    pub fn is_square(&self, x: FieldElement) -> bool {
        match self.quadratic_character(x) {
            Ok(c) => c >= 0,
            Err(_) => true,
        }
    }

    /// Smallest non-square in canonical order (odd q only).
    pub fn smallest_nonsquare(&self) -> Result<FieldElement> {
        if !self.is_odd() {
            return Err(Error::CharacteristicTwo);
        }
        Ok(self
            .nonzero()
            .find(|&x| !self.is_square(x))
            .expect("odd fields have non-squares"))
    }

    /// First pair `(a, b)` in lexicographic canonical order with `a² + b² = c`.
    pub fn sum_of_two_squares(&self, c: FieldElement) -> Result<(FieldElement, FieldElement)> {
        if !self.is_odd() {
            return Err(Error::CharacteristicTwo);
        }
        for a in self.elements() {
            let rest = self.sub(c, self.square(a));
            if let Some(b) = self.elements().find(|&b| self.square(b) == rest) {
                return Ok((a, b));
            }
        }
        unreachable!("every element of an odd-order field is a sum of two squares")
    }
}
