//! Truncated Laurent series in `u = 1/T` over F_q, i.e. elements of
//! k_inf = F_q((1/T)) known modulo `O(u^prec)`.
//!
//! A nonzero series stores `c_val, ..., c_{prec-1}` with `c_val != 0`, so
//! `val` is the valuation v_inf. A series that is zero to its precision
//! stores no coefficients and has `val == prec`. Negative exponents of `u`
//! are positive powers of `T`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, FqElem};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: FieldSpec,
    val: i64,
    coeffs: Vec<FqElem>,
    prec: i64,
}

/// Wire form of a series: `coeffs[k]` is the coefficient vector of `u^{val+k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub val: i64,
    pub prec: i64,
    pub coeffs: Vec<Vec<u32>>,
}

impl LaurentSeries {
    /// Builds `sum_k coeffs[k] u^{val+k} + O(u^prec)`; requires
    /// `val < prec` and exactly `prec - val` coefficients.
    pub fn new(field: &FieldSpec, val: i64, coeffs: Vec<FqElem>, prec: i64) -> Result<Self> {
        if val >= prec || coeffs.len() as i64 != prec - val {
            return Err(Error::BadPrecision {
                val,
                prec,
                len: coeffs.len(),
            });
        }
        Ok(Self::normalized(field.clone(), val, coeffs, prec))
    }

    fn normalized(field: FieldSpec, val: i64, mut coeffs: Vec<FqElem>, prec: i64) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries {
                field,
                val: prec,
                coeffs: Vec::new(),
                prec,
            },
            Some(k) => {
                coeffs.drain(..k);
                LaurentSeries {
                    field,
                    val: val + k as i64,
                    coeffs,
                    prec,
                }
            }
        }
    }

    /// Builds a series from sparse `(exponent of u, coefficient)` terms.
    /// Terms at or above `prec` are dropped; repeated exponents are summed.
    pub fn from_terms(field: &FieldSpec, terms: &[(i64, FqElem)], prec: i64) -> Self {
        let lo = terms.iter().map(|t| t.0).min().unwrap_or(prec).min(prec);
        let mut coeffs = vec![FqElem::ZERO; (prec - lo) as usize];
        for &(k, c) in terms {
            if k < prec {
                let slot = &mut coeffs[(k - lo) as usize];
                *slot = field.add(*slot, c);
            }
        }
        Self::normalized(field.clone(), lo, coeffs, prec)
    }

    /// The polynomial `c_0 + c_1 T + c_2 T^2 + ...` (coefficients low-to-high in `T`).
    pub fn from_t_poly(field: &FieldSpec, coeffs: &[FqElem], prec: i64) -> Self {
        let terms: Vec<(i64, FqElem)> = coeffs.iter().enumerate().map(|(i, &c)| (-(i as i64), c)).collect();
        Self::from_terms(field, &terms, prec)
    }

    pub fn zero(field: &FieldSpec, prec: i64) -> Self {
        LaurentSeries {
            field: field.clone(),
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn one(field: &FieldSpec, prec: i64) -> Self {
        Self::monomial(field, FqElem::ONE, 0, prec)
    }

    /// `c * u^exp + O(u^prec)`.
    pub fn monomial(field: &FieldSpec, c: FqElem, exp: i64, prec: i64) -> Self {
        Self::from_terms(field, &[(exp, c)], prec)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// v_inf, or `None` when the series is zero to its precision.
    pub fn val(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Lowest exponent that may carry a nonzero coefficient (`prec` for zero).
    pub fn val_or_prec(&self) -> i64 {
        self.val
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^j`, or `None` if `j` is not below the precision.
    pub fn coeff(&self, j: i64) -> Option<FqElem> {
        if j >= self.prec {
            None
        } else if j < self.val {
            Some(FqElem::ZERO)
        } else {
            Some(self.coeffs[(j - self.val) as usize])
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, &c)| (self.val + k as i64, c))
    }

    /// Forgets everything at and above `u^prec`; no-op if already coarser.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        if prec <= self.val {
            return Self::zero(&self.field, prec);
        }
        let keep = (prec - self.val) as usize;
        Self::normalized(self.field.clone(), self.val, self.coeffs[..keep].to_vec(), prec)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val).min(prec);
        let mut coeffs = vec![FqElem::ZERO; (prec - lo) as usize];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let j = lo + k as i64;
            let x = self.coeff(j).unwrap_or(FqElem::ZERO);
            let y = other.coeff(j).unwrap_or(FqElem::ZERO);
            *slot = if negate { f.sub(x, y) } else { f.add(x, y) };
        }
        Self::normalized(f.clone(), lo, coeffs, prec)
    }

    /// Product; the precision is `min(prec_x + val_y, prec_y + val_x)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let prec = (self.prec + other.val).min(other.prec + self.val);
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, prec);
        }
        let val = self.val + other.val;
        let len = (prec - val) as usize;
        let mut coeffs = vec![FqElem::ZERO; len];
        for (i, &x) in self.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(x, y));
            }
        }
        Self::normalized(f.clone(), val, coeffs, prec)
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let coeffs = self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect();
        Self::normalized(self.field.clone(), self.val, coeffs, self.prec)
    }

    /// Multiplies by `u^k` (that is, by `T^{-k}`).
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            field: self.field.clone(),
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    /// Multiplicative inverse. The result has valuation `-val` and precision
    /// `prec - 2 val`, so its product with `self` is `1 + O(u^{prec - val})`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let n = self.coeffs.len();
        let c0_inv = f.inv(self.coeffs[0])?;
        let mut inv = Vec::with_capacity(n);
        inv.push(c0_inv);
        for k in 1..n {
            let mut acc = FqElem::ZERO;
            for j in 1..=k {
                acc = f.add(acc, f.mul(self.coeffs[j], inv[k - j]));
            }
            inv.push(f.neg(f.mul(c0_inv, acc)));
        }
        Ok(Self::normalized(f.clone(), -self.val, inv, self.prec - 2 * self.val))
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            let rel = self.prec - self.val;
            return Ok(Self::one(&self.field, rel.max(1)));
        }
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul_unchecked(&b),
                });
            }
            k >>= 1;
            if k > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc.expect("n != 0"))
    }

    /// `(sgn_inf(a), v_inf(a))`: leading coefficient and valuation.
    pub fn sgn_and_val(&self) -> Result<(FqElem, i64)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok((self.coeffs[0], self.val))
    }

    /// The 1-unit part `<a> = sgn(a)^{-1} T^{v_inf(a)} a`, at precision `prec - val`.
    pub fn one_unit_part(&self) -> Result<Self> {
        let (sgn, val) = self.sgn_and_val()?;
        let s_inv = self.field.inv(sgn)?;
        let coeffs = self.coeffs.iter().map(|&c| self.field.mul(c, s_inv)).collect();
        Ok(Self::normalized(self.field.clone(), 0, coeffs, self.prec - val))
    }

    /// `omega_inf(a) = sgn(a) T^{-v_inf(a)}`, carried at the precision of `a`.
    pub fn omega_part(&self) -> Result<Self> {
        let (sgn, val) = self.sgn_and_val()?;
        Ok(Self::monomial(&self.field, sgn, val, self.prec))
    }

    /// True for `1 + lambda` with `v_inf(lambda) >= 1`.
    pub fn is_one_unit(&self) -> bool {
        !self.is_zero() && self.val == 0 && self.coeffs[0] == FqElem::ONE
    }

    /// First exponent below the common precision where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        (lo..prec).find(|&j| self.coeff(j) != other.coeff(j))
    }

    /// Equality on every coefficient below the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.field == other.field && self.first_difference(other).is_none()
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|&c| self.field.coeffs(c)).collect(),
        }
    }

    pub fn from_json(field: &FieldSpec, json: &SeriesJson) -> Result<Self> {
        if json.val > json.prec || (json.val == json.prec && !json.coeffs.is_empty()) {
            return Err(Error::BadPrecision {
                val: json.val,
                prec: json.prec,
                len: json.coeffs.len(),
            });
        }
        if json.val == json.prec {
            return Ok(Self::zero(field, json.prec));
        }
        let coeffs = json
            .coeffs
            .iter()
            .map(|c| field.from_coeffs(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, json.val, coeffs, json.prec)
    }

    /// Renders the terms without the `O(u^N)` tail; `"0"` if there are none.
    pub fn fmt_terms(&self) -> String {
        let parts: Vec<String> = self.terms().map(|(j, c)| self.fmt_term(j, c)).collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    fn fmt_term(&self, j: i64, c: FqElem) -> String {
        let mono = match j {
            0 => String::new(),
            -1 => "T".to_string(),
            1 => "u".to_string(),
            j if j < 0 => format!("T^{}", -j),
            j => format!("u^{j}"),
        };
        let coef = self.field.fmt_elem(c);
        if mono.is_empty() {
            coef
        } else if c == FqElem::ONE {
            mono
        } else {
            format!("{coef}·{mono}")
        }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.fmt_terms();
        write!(f, "{body} + O(u^{})", self.prec)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries[{}]({self})", self.field)
    }
}

// Operator forms panic on mismatched fields; use the `try_*` methods at API edges.
impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.try_add(rhs).expect("series over different fields")
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.try_sub(rhs).expect("series over different fields")
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.try_mul(rhs).expect("series over different fields")
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.neg(c)).collect();
        LaurentSeries {
            field: f.clone(),
            val: self.val,
            coeffs,
            prec: self.prec,
        }
    }
}
