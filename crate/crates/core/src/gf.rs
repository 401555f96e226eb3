//! Small Galois fields GF(p^k) with precomputed lookup tables.
//!
//! Elements are encoded as a single index: the polynomial `Σ aᵢxⁱ` over GF(p)
//! has index `Σ aᵢpⁱ`. Index 0 is zero and index 1 is one. Every supported
//! order uses a fixed modulus, so element indices are stable across runs and
//! can be written to files:
//!
//! | q | modulus     |
//! |---|-------------|
//! | 4 | x² + x + 1  |
//! | 8 | x³ + x + 1  |
//! | 9 | x² + 1      |
//!
//! Prime orders use the degree-one modulus `x`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Orders with a canonical modulus.
pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// `(q, p, k, modulus)`; modulus coefficients little-endian, monic.
const MODULI: [(u32, u32, u32, &[u8]); 7] = [
    (2, 2, 1, &[0, 1]),
    (3, 3, 1, &[0, 1]),
    (4, 2, 2, &[1, 1, 1]),
    (5, 5, 1, &[0, 1]),
    (7, 7, 1, &[0, 1]),
    (8, 2, 3, &[1, 1, 0, 1]),
    (9, 3, 2, &[1, 0, 1]),
];

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    /// `inv[0]` is a sentinel zero and is never handed out.
    inv: Vec<u8>,
    /// `frobenius[j][a] = a^(p^j)`.
    frobenius: Vec<Vec<u8>>,
}

/// A finite field of one of the [`SUPPORTED_ORDERS`].
///
/// Cheap to clone; the tables are shared. Two specs are equal when their
/// orders are equal, since each order has exactly one canonical modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        let &(q, p, k, modulus) = MODULI
            .iter()
            .find(|entry| entry.0 == q)
            .ok_or(Error::UnsupportedOrder(q))?;
        Ok(Self(Arc::new(build_tables(q, p, k, modulus))))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    /// `a^(p^power)`; `power` is taken modulo `k`.
    #[inline]
    pub fn frobenius(&self, power: u32, a: u8) -> u8 {
        self.0.frobenius[(power % self.0.k) as usize][a as usize]
    }

    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if index >= self.q() {
            return Err(Error::ElementOutOfRange { index, q: self.q() });
        }
        Ok(FieldElem {
            spec: self.clone(),
            index: index as u8,
        })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            spec: self.clone(),
            index: 0,
        }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem {
            spec: self.clone(),
            index: 1,
        }
    }

    pub fn automorphism(&self, power: u32) -> Result<FieldAutomorphism> {
        if power >= self.k() {
            return Err(Error::AutomorphismOutOfRange {
                power,
                degree: self.k(),
            });
        }
        Ok(FieldAutomorphism {
            spec: self.clone(),
            power,
        })
    }

    pub fn identity_automorphism(&self) -> FieldAutomorphism {
        FieldAutomorphism {
            spec: self.clone(),
            power: 0,
        }
    }

    pub(crate) fn check_same(&self, other: &FieldSpec) -> Result<()> {
        if self.q() == other.q() {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.q(),
                right: other.q(),
            })
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.q().hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

/// An element of a [`FieldSpec`], addressed by its index.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    spec: FieldSpec,
    index: u8,
}

impl FieldElem {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.index, self.spec.q())
    }
}

/// The Frobenius power `x ↦ x^(p^j)`, `0 ≤ j < k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldAutomorphism {
    spec: FieldSpec,
    power: u32,
}

impl FieldAutomorphism {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn frobenius_power(&self) -> u32 {
        self.power
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0
    }

    #[inline]
    pub fn apply_index(&self, a: u8) -> u8 {
        self.spec.frobenius(self.power, a)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FieldAutomorphism) -> Result<FieldAutomorphism> {
        self.spec.check_same(&other.spec)?;
        Ok(FieldAutomorphism {
            spec: self.spec.clone(),
            power: (self.power + other.power) % self.spec.k(),
        })
    }

    pub fn inverse(&self) -> FieldAutomorphism {
        FieldAutomorphism {
            spec: self.spec.clone(),
            power: (self.spec.k() - self.power) % self.spec.k(),
        }
    }
}

pub fn add(a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    a.spec.check_same(&b.spec)?;
    Ok(FieldElem {
        spec: a.spec.clone(),
        index: a.spec.add(a.index, b.index),
    })
}

pub fn mul(a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    a.spec.check_same(&b.spec)?;
    Ok(FieldElem {
        spec: a.spec.clone(),
        index: a.spec.mul(a.index, b.index),
    })
}

pub fn inv(a: &FieldElem) -> Result<FieldElem> {
    let index = a.spec.inv(a.index).ok_or(Error::ZeroInverse)?;
    Ok(FieldElem {
        spec: a.spec.clone(),
        index,
    })
}

pub fn apply_automorphism(sigma: &FieldAutomorphism, a: &FieldElem) -> Result<FieldElem> {
    sigma.spec.check_same(&a.spec)?;
    Ok(FieldElem {
        spec: a.spec.clone(),
        index: sigma.apply_index(a.index),
    })
}

/// All `q` elements in index order.
pub fn enumerate_elements(spec: &FieldSpec) -> Vec<FieldElem> {
    (0..spec.q())
        .map(|i| FieldElem {
            spec: spec.clone(),
            index: i as u8,
        })
        .collect()
}

/// The `k` Frobenius powers `0..k`, identity first.
pub fn automorphism_group(spec: &FieldSpec) -> Vec<FieldAutomorphism> {
    (0..spec.k())
        .map(|power| FieldAutomorphism {
            spec: spec.clone(),
            power,
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, poly: &[u8]) -> bool {
    let poly = trim(poly.to_vec());
    let deg = match poly.len() {
        0 => return false,
        len => len - 1,
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for low in 0..(p as usize).pow(d as u32) {
            let mut divisor = to_digits(low, p, d);
            divisor.push(1);
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn build_tables(q: u32, p: u32, k: u32, modulus: &[u8]) -> Tables {
    debug_assert!(is_irreducible(p, modulus));
    let qs = q as usize;
    let digits: Vec<Vec<u8>> = (0..qs).map(|i| to_digits(i, p, k as usize)).collect();
    let encode = |coeffs: &[u8]| -> u8 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c as u32) as u8
    };

    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let sum: Vec<u8> = digits[a]
                .iter()
                .zip(&digits[b])
                .map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8)
                .collect();
            add[a * qs + b] = encode(&sum);
            let mut prod = poly_rem(&poly_mul(&digits[a], &digits[b], p), modulus, p);
            prod.resize(k as usize, 0);
            mul[a * qs + b] = encode(&prod);
        }
    }

    let neg: Vec<u8> = (0..qs)
        .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
        .collect();
    let mut inv = vec![0u8; qs];
    for a in 1..qs {
        inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
    }

    let mut frobenius = Vec::with_capacity(k as usize);
    let mut current: Vec<u8> = (0..qs as u8).collect();
    for _ in 0..k {
        frobenius.push(current.clone());
        current = current
            .iter()
            .map(|&a| {
                let mut acc = 1u8;
                for _ in 0..p {
                    acc = mul[acc as usize * qs + a as usize];
                }
                acc
            })
            .collect();
    }

    Tables {
        p,
        k,
        q,
        modulus: modulus.to_vec(),
        add,
        mul,
        neg,
        inv,
        frobenius,
    }
}

fn to_digits(mut value: usize, p: u32, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((value % p as usize) as u8);
        value /= p as usize;
    }
    out
}

fn trim(mut poly: Vec<u8>) -> Vec<u8> {
    while poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

fn poly_mul(a: &[u8], b: &[u8], p: u32) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u32 * y as u32) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u8).collect())
}

/// Remainder of `a` modulo a monic `m`.
fn poly_rem(a: &[u8], m: &[u8], p: u32) -> Vec<u8> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let lead = *r.last().unwrap() as u32;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * c as u32 % p;
            r[shift + i] = ((r[shift + i] as u32 + p - sub) % p) as u8;
        }
        r = trim(r);
    }
    r
}
