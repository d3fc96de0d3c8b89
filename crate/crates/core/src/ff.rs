//! The finite field F_q, q = p^e, in a polynomial basis over Z/p.
//!
//! Elements are stored packed: the coefficient vector `c_0 .. c_{e-1}` of
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` maps to the index `sum c_i p^i`.
//! Addition, multiplication and inversion go through tables built once per
//! field from the reference polynomial arithmetic below.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order; keeps the q x q tables small.
pub const MAX_FIELD_ORDER: u64 = 1024;

/// An element of F_q, identified by its packed coefficient index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Caller guarantees `idx < q` for the field the element is used with.
    pub(crate) fn from_index_unchecked(idx: u32) -> FqElem {
        FqElem(idx)
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// A validated finite field. Cloning is cheap; all clones share the tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.e)
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

// Dense polynomials over Z/p, coefficients low-to-high, no trailing zeros
// (the zero polynomial is empty).
mod zp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime and a != 0 mod p
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(b: u32, mut k: u32, p: u32) -> u32 {
        let p = p as u64;
        let (mut r, mut b) = (1u64, b as u64 % p);
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            k >>= 1;
        }
        r as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut quot = vec![0u32; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
            quot[shift] = c;
            for (j, &bj) in b.iter().enumerate() {
                let t = (c as u64 * bj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - t) % p;
            }
            r = trim(r);
        }
        (trim(quot), r)
    }

    /// Inverse of `a` modulo the irreducible `m` by the extended Euclidean algorithm.
    pub fn inv_mod_poly(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
        let (mut r0, mut r1) = (m.to_vec(), trim(a.to_vec()));
        let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quo, rem) = divrem(&r0, &r1, p);
            let t2 = sub(&t0, &mul(&quo, &t1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0], p) as u64;
        Some(trim(t0.into_iter().map(|x| (x as u64 * c % p as u64) as u32).collect()))
    }
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut idx: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let c = idx % p;
            idx /= p;
            c
        })
        .collect()
}

/// Monic polynomial of degree `e` whose lower coefficients are the packed index `idx`.
fn monic_from_index(idx: u64, p: u32, e: u32) -> Vec<u32> {
    let mut c = unpack(idx as u32, p, e);
    c.push(1);
    c
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = (modulus.len() - 1) as u32;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let cand = monic_from_index(idx, p, d);
            if zp_poly::divrem(modulus, &cand, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds F_{p^e}. With no modulus the smallest monic irreducible of
    /// degree `e` is chosen, ordering candidates by their coefficients read
    /// from `x^{e-1}` down to `x^0` (the same order `elements` uses).
    pub fn new(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge(p.saturating_pow(e))),
        };
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] % p != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: e,
                        got: m.to_vec(),
                    });
                }
                let m: Vec<u32> = m.iter().map(|c| c % p).collect();
                if e > 1 && !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None if e == 1 => vec![0, 1],
            None => (0..(p as u64).pow(e))
                .map(|idx| monic_from_index(idx, p, e))
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree"),
        };
        Ok(FieldSpec(Arc::new(Self::build_tables(p, e, q, modulus))))
    }

    pub fn prime(p: u64) -> Result<FieldSpec> {
        Self::new(p, 1, None)
    }

    fn build_tables(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Inner {
        let qs = q as usize;
        let elems: Vec<Vec<u32>> = (0..q).map(|i| unpack(i, p, e)).collect();
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        let mut inv = vec![0u32; qs];
        for x in 0..qs {
            neg[x] = pack(&elems[x].iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p);
            for y in 0..qs {
                let s: Vec<u32> = elems[x].iter().zip(&elems[y]).map(|(a, b)| (a + b) % p).collect();
                add[x * qs + y] = pack(&s, p);
                if e == 1 {
                    mul[x * qs + y] = (x as u64 * y as u64 % p as u64) as u32;
                } else {
                    let prod = zp_poly::mul(&elems[x], &elems[y], p);
                    let (_, r) = zp_poly::divrem(&prod, &modulus, p);
                    let mut r = r;
                    r.resize(e as usize, 0);
                    mul[x * qs + y] = pack(&r, p);
                }
            }
            if x != 0 {
                inv[x] = if e == 1 {
                    zp_poly::inv_mod(x as u32, p)
                } else {
                    let mut r = zp_poly::inv_mod_poly(&elems[x], &modulus, p)
                        .expect("nonzero element of a field is invertible");
                    r.resize(e as usize, 0);
                    pack(&r, p)
                };
            }
        }
        Inner {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, coefficients low-to-high.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        if coeffs.len() > self.0.e as usize {
            return Err(Error::Parse(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.0.e
            )));
        }
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % self.0.p).collect();
        Ok(FqElem(pack(&reduced, self.0.p)))
    }

    pub fn from_index(&self, idx: u32) -> Option<FqElem> {
        (idx < self.0.q).then_some(FqElem(idx))
    }

    /// Coefficient vector `c_0 .. c_{e-1}` of an element.
    pub fn coeffs(&self, x: FqElem) -> Vec<u32> {
        unpack(x.0, self.0.p, self.0.e)
    }

    #[inline]
    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        FqElem(self.0.add[(x.0 * self.0.q + y.0) as usize])
    }

    #[inline]
    pub fn neg(&self, x: FqElem) -> FqElem {
        FqElem(self.0.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        FqElem(self.0.mul[(x.0 * self.0.q + y.0) as usize])
    }

    pub fn inv(&self, x: FqElem) -> Result<FqElem> {
        if x.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FqElem(self.0.inv[x.0 as usize]))
        }
    }

    /// `x^k` for any integer `k`; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, x: FqElem, k: i64) -> Result<FqElem> {
        let base = if k < 0 { self.inv(x)? } else { x };
        let mut k = k.unsigned_abs();
        let (mut acc, mut b) = (FqElem::ONE, base);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Multiplies by an integer through the prime subfield.
    pub fn scale(&self, x: FqElem, n: i64) -> FqElem {
        self.mul(x, self.from_int(n))
    }

    /// All q elements in packed-index order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.q).map(FqElem)
    }

    /// `sum_{alpha in F_q} alpha^i`, with `0^0 = 1`.
    pub fn power_sum(&self, i: u64) -> FqElem {
        self.elements().fold(FqElem::ZERO, |acc, a| {
            let term = if i == 0 {
                FqElem::ONE
            } else {
                self.pow(a, i as i64).expect("nonnegative exponent")
            };
            self.add(acc, term)
        })
    }

    /// Renders an element: an integer if it lies in the prime field, `[c0,c1,..]` otherwise.
    pub fn fmt_elem(&self, x: FqElem) -> String {
        if x.0 < self.0.p {
            x.0.to_string()
        } else {
            let c: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
            format!("[{}]", c.join(","))
        }
    }

    /// Parses the field string `p^e` or `p^e:m0,m1,...,me` (low-to-high modulus);
    /// a bare prime power such as `4` is accepted too.
    pub fn parse(spec: &str) -> Result<FieldSpec> {
        let (head, modulus) = match spec.split_once(':') {
            Some((h, m)) => {
                let m = m
                    .split(',')
                    .map(|t| t.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("bad modulus in field spec {spec:?}")))?;
                (h, Some(m))
            }
            None => (spec, None),
        };
        let bad = || Error::Parse(format!("bad field spec {spec:?}"));
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                e.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = head.trim().parse::<u64>().map_err(|_| bad())?;
                prime_power(q).ok_or(Error::NonPrimeP(q))?
            }
        };
        FieldSpec::new(p, e, modulus.as_deref())
    }
}

/// Splits `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}
