//! p-adic integers to fixed digit precision and binomial coefficients mod p.

use std::fmt;

use crate::error::{Error, Result};

/// Default number of base-p digits carried by exponents.
pub const DEFAULT_DIGITS: usize = 32;

/// `sum_t digits[t] p^t`, known modulo `p^K` with `K = digits.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u32,
    digits: Vec<u32>,
}

impl PadicInt {
    /// Base-p digits of `n mod p^k`; negative `n` wraps to `p^k + n`.
    pub fn from_int(n: i64, p: u32, k: usize) -> Self {
        assert!(k >= 1, "digit precision must be positive");
        let mut digits = Vec::with_capacity(k);
        let mut m = n.unsigned_abs();
        for _ in 0..k {
            digits.push((m % p as u64) as u32);
            m /= p as u64;
        }
        let s = PadicInt { p, digits };
        if n < 0 {
            s.neg()
        } else {
            s
        }
    }

    /// Digits low-to-high; each is reduced mod `p`. Empty input means zero to one digit.
    pub fn from_digits(p: u32, digits: &[u32]) -> Self {
        let mut digits: Vec<u32> = digits.iter().map(|d| d % p).collect();
        if digits.is_empty() {
            digits.push(0);
        }
        PadicInt { p, digits }
    }

    /// Pads with zero digits (or truncates) to exactly `k` digits.
    pub fn with_digits(&self, k: usize) -> Self {
        let mut digits = self.digits.clone();
        digits.resize(k.max(1), 0);
        PadicInt { p: self.p, digits }
    }

    pub fn zero(p: u32, k: usize) -> Self {
        Self::from_int(0, p, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// `s + i` with carries, truncated to the same digit count.
    pub fn add_int(&self, i: u64) -> Self {
        let mut digits = self.digits.clone();
        let p = self.p as u64;
        let mut carry = i;
        for d in digits.iter_mut() {
            if carry == 0 {
                break;
            }
            let t = *d as u64 + carry % p;
            *d = (t % p) as u32;
            carry = carry / p + t / p;
        }
        PadicInt { p: self.p, digits }
    }

    /// `s + t` to the smaller of the two digit precisions.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "p-adic primes differ");
        let k = self.precision().min(other.precision());
        let mut carry = 0u32;
        let digits = (0..k)
            .map(|t| {
                let s = self.digits[t] + other.digits[t] + carry;
                carry = s / self.p;
                s % self.p
            })
            .collect();
        PadicInt { p: self.p, digits }
    }

    /// `-s`, i.e. `p^K - s mod p^K`.
    pub fn neg(&self) -> Self {
        let p = self.p;
        // complement each digit, then add one
        let comp = PadicInt {
            p,
            digits: self.digits.iter().map(|&d| p - 1 - d).collect(),
        };
        comp.add_int(1)
    }

    /// The represented integer in `[0, p^K)` if it fits in a `u128`.
    pub fn to_u128(&self) -> Option<u128> {
        self.digits
            .iter()
            .rev()
            .try_fold(0u128, |acc, &d| acc.checked_mul(self.p as u128)?.checked_add(d as u128))
    }

    /// `binom(s, j) mod p` as the product of digitwise binomials (Lucas).
    /// Fails unless `p^K > j`, since otherwise the residue is not determined.
    pub fn binom_mod_p(&self, j: u64) -> Result<u32> {
        let p = self.p as u64;
        let mut rest = j;
        let mut acc = 1u64;
        let mut t = 0;
        while rest > 0 {
            if t >= self.digits.len() {
                return Err(Error::InsufficientDigitPrecision {
                    p: self.p,
                    digits: self.digits.len(),
                    j,
                });
            }
            let jd = (rest % p) as u32;
            acc = acc * small_binom(self.digits[t], jd, self.p) as u64 % p;
            rest /= p;
            t += 1;
        }
        Ok(acc as u32)
    }

    /// `binom(s, j) mod p` for all `j < count`.
    pub fn binom_table(&self, count: u64) -> Result<Vec<u32>> {
        (0..count).map(|j| self.binom_mod_p(j)).collect()
    }

    /// Parses a decimal integer or a digit list `d0,d1,...` (optionally
    /// prefixed with `digits:`), padding to `k` digits.
    pub fn parse(text: &str, p: u32, k: usize) -> Result<Self> {
        let text = text.trim();
        let body = text.strip_prefix("digits:");
        if body.is_some() || text.contains(',') {
            let body = body.unwrap_or(text);
            let digits = body
                .split(',')
                .map(|d| d.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad digit list {text:?}")))?;
            if let Some(&bad) = digits.iter().find(|&&d| d >= p) {
                return Err(Error::Parse(format!("digit {bad} out of range for p = {p}")));
            }
            let len = digits.len().max(k);
            return Ok(Self::from_digits(p, &digits).with_digits(len));
        }
        let n: i64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("bad p-adic integer {text:?}")))?;
        Ok(Self::from_int(n, p, k))
    }
}

/// `binom(n, k) mod p` for `n, k < p` from the falling-factorial formula.
fn small_binom(n: u32, k: u32, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k as u64 {
        num = num * (n as u64 - i) % p as u64;
        den = den * (i + 1) % p as u64;
    }
    // den is a product of integers < p, hence invertible mod p
    let mut inv = 1u64;
    let mut b = den;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    (num * inv % p as u64) as u32
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_u128() {
            Some(v) if self.digits.len() <= 8 || v < 1 << 32 => write!(f, "{v}"),
            _ => {
                let ds: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
                write!(f, "digits:{}", ds.join(","))
            }
        }
    }
}
