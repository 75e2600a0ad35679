//! Finite fields `F_q`, `q = p^f <= 81`, with table-driven arithmetic.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! where `c_0 + c_1 x + ...` is its polynomial representative modulo the
//! field's defining polynomial. All arithmetic goes through the owning
//! [`FieldSpec`], so fields of different orders coexist freely.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Largest supported field order.
pub const MAX_Q: u32 = 81;

/// Built-in defining polynomials (Conway polynomials), coefficients low to high.
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u32),
    BadDegree(u32),
    TooLarge { p: u32, f: u32 },
    Reducible(Vec<u32>),
    BadModulus(Vec<u32>),
    NoBuiltinModulus { q: u32 },
    NotPrimePower(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "characteristic {p} is not prime"),
            FieldError::BadDegree(d) => write!(f, "extension degree must be at least 1, got {d}"),
            FieldError::TooLarge { p, f: deg } => {
                write!(f, "field order {p}^{deg} exceeds the supported maximum {MAX_Q}")
            }
            FieldError::Reducible(m) => write!(f, "modulus {m:?} is reducible"),
            FieldError::BadModulus(m) => {
                write!(f, "modulus {m:?} must be monic of the extension degree with coefficients below p")
            }
            FieldError::NoBuiltinModulus { q } => {
                write!(f, "no built-in defining polynomial for q = {q}; supply one")
            }
            FieldError::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
        }
    }
}

/// A field element; only meaningful together with the [`FieldSpec`] that made it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(pub(crate) u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// The packed integer encoding of the element.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
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

/// Splits `q` as `p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut f) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

/// Characteristic, degree, defining polynomial and the precomputed operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    f: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    lex_rank: Vec<u8>,
    generator: Fq,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec").field("p", &self.p).field("f", &self.f).field("modulus", &self.modulus).finish()
    }
}

// Polynomials over F_p as coefficient vectors, low degree first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] * lead_inv) % p;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (c * bc) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    (1..p).find(|x| (a * x) % p == 1).expect("nonzero residue mod a prime")
}

/// Irreducibility by trial division against every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for k in 1..=deg / 2 {
        // Enumerate monic divisors of degree k via their lower coefficients.
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^f}`. For `f > 1` the defining polynomial may be supplied
    /// (monic, low-to-high, length `f + 1`); otherwise the built-in table is used.
    pub fn new(p: u32, f: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if f < 1 {
            return Err(FieldError::BadDegree(f));
        }
        let q = (p as u64).checked_pow(f).filter(|&q| q <= MAX_Q as u64);
        let Some(q) = q else {
            return Err(FieldError::TooLarge { p, f });
        };
        let q = q as u32;
        let modulus = if f == 1 {
            None
        } else {
            let m: Vec<u32> = match modulus {
                Some(m) => m.to_vec(),
                None => MODULUS_TABLE
                    .iter()
                    .find(|(tp, tf, _)| *tp == p && *tf == f)
                    .map(|(_, _, m)| m.to_vec())
                    .ok_or(FieldError::NoBuiltinModulus { q })?,
            };
            if m.len() != f as usize + 1 || m[f as usize] != 1 || m.iter().any(|&c| c >= p) {
                return Err(FieldError::BadModulus(m));
            }
            if !is_irreducible(&m, p) {
                return Err(FieldError::Reducible(m));
            }
            Some(m)
        };
        Ok(Self::build_tables(p, f, q, modulus))
    }

    /// Convenience constructor from the field order, using the built-in table.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_Q as u64 {
            return Err(FieldError::TooLarge { p: p as u32, f });
        }
        Self::new(p as u32, f, None)
    }

    fn build_tables(p: u32, f: u32, q: u32, modulus: Option<Vec<u32>>) -> Self {
        let qs = q as usize;
        let fu = f as usize;
        let to_coeffs = |x: usize| -> Vec<u32> {
            let mut c = vec![0u32; fu];
            let mut x = x as u32;
            for slot in c.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            c
        };
        let from_coeffs = |c: &[u32]| -> u8 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8 };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let ca = to_coeffs(a);
            for b in 0..qs {
                let cb = to_coeffs(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = from_coeffs(&sum);

                let mut prod = vec![0u32; 2 * fu];
                for (i, x) in ca.iter().enumerate() {
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let reduced = match &modulus {
                    Some(m) => poly_rem(&prod, m, p),
                    None => {
                        let mut r = prod;
                        poly_trim(&mut r);
                        r
                    }
                };
                let mut padded = reduced;
                padded.resize(fu, 0);
                mul[a * qs + b] = from_coeffs(&padded);
            }
        }
        let neg = (0..qs).map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8).collect();
        let mut inv = vec![0u8; qs];
        for a in 1..qs {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
        }
        let frob = (0..qs)
            .map(|a| {
                let mut acc = 1u8;
                for _ in 0..p {
                    acc = mul[acc as usize * qs + a];
                }
                if a == 0 {
                    0
                } else {
                    acc
                }
            })
            .collect();
        // Rank of each element's coefficient vector (c_0, c_1, ...) in lexicographic order.
        let mut order: Vec<usize> = (0..qs).collect();
        order.sort_by_key(|&x| to_coeffs(x));
        let mut lex_rank = vec![0u8; qs];
        for (rank, &x) in order.iter().enumerate() {
            lex_rank[x] = rank as u8;
        }
        let generator = (1..qs)
            .map(|g| Fq(g as u8))
            .find(|&g| {
                let mut x = g;
                let mut ord = 1;
                while x != Fq::ONE {
                    x = Fq(mul[x.index() * qs + g.index()]);
                    ord += 1;
                }
                ord == qs - 1
            })
            .expect("the multiplicative group of a finite field is cyclic");

        FieldSpec { p, f, q, modulus, add, mul, neg, inv, frob, lex_rank, generator }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    /// A fixed generator of the multiplicative group (the smallest by encoding).
    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.q).map(|x| Fq(x as u8))
    }

    /// Element with the given coefficient vector (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Option<Fq> {
        if coeffs.len() != self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return None;
        }
        Some(Fq(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c) as u8))
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let mut x = a.0 as u32;
        (0..self.f)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u8)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.index()])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (!a.is_zero()).then(|| Fq(self.inv[a.index()]))
    }

    /// The Frobenius automorphism `x -> x^p`.
    #[inline]
    pub fn frobenius(&self, a: Fq) -> Fq {
        Fq(self.frob[a.index()])
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let (mut base, mut acc) = (a, Fq::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, a: Fq) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut ord = 1;
        while x != Fq::ONE {
            x = self.mul(x, a);
            ord += 1;
        }
        Some(ord)
    }

    /// Position of the element's coefficient vector in lexicographic order.
    #[inline]
    pub fn lex_rank(&self, a: Fq) -> u8 {
        self.lex_rank[a.index()]
    }
}

/// `|GL_d(q)| = prod_{i<d} (q^d - q^i)`, divided by `q - 1` for `PGL_d(q)`.
pub fn gl_order(d: u32, q: u64, projective: bool) -> Result<BigUint, FieldError> {
    prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    let qb = BigUint::from(q);
    let qd = qb.pow(d);
    let mut order = BigUint::one();
    for i in 0..d {
        order *= &qd - qb.pow(i);
    }
    if projective {
        order /= BigUint::from(q - 1);
    }
    Ok(order)
}
