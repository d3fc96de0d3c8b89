//! Exponentiation of 1-units by p-adic integers, `<a>^s`, and `a^w` on the
//! plane S = k_inf^* x Z_p.

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::padic::PadicInt;

/// A point `w = (s0, s)` of S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPoint {
    pub s0: LaurentSeries,
    pub s: PadicInt,
}

impl SPoint {
    pub fn new(s0: LaurentSeries, s: PadicInt) -> Result<Self> {
        if s0.is_zero() {
            return Err(Error::ZeroInput);
        }
        check_prime(&s0, &s)?;
        Ok(SPoint { s0, s })
    }

    /// `|w|_S = |s0|_inf |s|_p` as the valuation pair `(v_inf(s0), v_p(s))`;
    /// `v_p` is `None` when `s` vanishes to its digit precision.
    pub fn abs_valuations(&self) -> (i64, Option<usize>) {
        let vinf = self.s0.val().expect("s0 is nonzero");
        let vp = self.s.digits().iter().position(|&d| d != 0);
        (vinf, vp)
    }
}

fn check_prime(g: &LaurentSeries, s: &PadicInt) -> Result<()> {
    if g.field().p() != s.p() {
        return Err(Error::PrimeMismatch {
            field: g.field().p(),
            padic: s.p(),
        });
    }
    Ok(())
}

/// Binomial coefficients `binom(s, j) mod p`, computed once and shared by
/// every exponentiation with the same exponent.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    s: PadicInt,
    table: Vec<u32>,
}

impl BinomialTable {
    /// Tabulates `j < len`, stopping early where the digits of `s` run out.
    pub fn new(s: &PadicInt, len: u64) -> Self {
        let table = (0..len).map_while(|j| s.binom_mod_p(j).ok()).collect();
        BinomialTable { s: s.clone(), table }
    }

    pub fn exponent(&self) -> &PadicInt {
        &self.s
    }

    fn get(&self, j: usize) -> Result<u32> {
        match self.table.get(j) {
            Some(&c) => Ok(c),
            None => self.s.binom_mod_p(j as u64),
        }
    }

    /// `g^s = sum_j binom(s, j) lambda^j` for the 1-unit `g = 1 + lambda`.
    pub fn pow(&self, g: &LaurentSeries) -> Result<LaurentSeries> {
        if !g.is_one_unit() {
            return Err(Error::NotOneUnit);
        }
        check_prime(g, &self.s)?;
        let field = g.field();
        let prec = g.prec();
        let one = LaurentSeries::one(field, prec);
        let lambda = g - &one;
        let Some(v) = lambda.val() else {
            return Ok(one);
        };
        // terms with j * v >= prec vanish to precision
        let terms = ((prec + v - 1) / v) as usize;
        let mut acc = one.clone();
        let mut power = one;
        for j in 1..terms {
            power = &power * &lambda;
            let c = self.get(j)?;
            if c != 0 {
                acc = &acc + &power.scale(field.from_int(c as i64));
            }
        }
        Ok(acc.truncate(prec))
    }
}

/// `g^s` by the binomial series `sum_j binom(s, j) lambda^j`, where
/// `g = 1 + lambda`. Needs `p^K` to exceed the last index used.
pub fn unit_pow_binomial(g: &LaurentSeries, s: &PadicInt) -> Result<LaurentSeries> {
    let len = g.prec().max(1) as u64;
    BinomialTable::new(s, len).pow(g)
}

/// `g^s` as `prod_t (1 + lambda^{p^t})^{c_t}` over the base-p digits `c_t`
/// of `s`. The result is only determined modulo `u^{p^K v(lambda)}`, so
/// its precision is capped there.
pub fn unit_pow_digits(g: &LaurentSeries, s: &PadicInt) -> Result<LaurentSeries> {
    if !g.is_one_unit() {
        return Err(Error::NotOneUnit);
    }
    check_prime(g, s)?;
    let field = g.field();
    let p = s.p() as i64;
    let one = LaurentSeries::one(field, g.prec());
    let mut lambda = g - &one;
    let Some(v) = lambda.val() else {
        return Ok(one);
    };
    let mut reach = v; // valuation of lambda^{p^t}
    let mut prec = g.prec();
    let mut acc = one.clone();
    for &c in s.digits() {
        if reach >= prec {
            break;
        }
        let factor = (&one + &lambda).truncate(prec);
        for _ in 0..c {
            acc = (&acc * &factor).truncate(prec);
        }
        lambda = lambda.pow_int(p)?.truncate(prec);
        reach = reach.saturating_mul(p);
    }
    if reach < prec {
        // digits beyond K would still contribute
        prec = reach;
    }
    Ok(acc.truncate(prec))
}

/// `<a>^s`; negative exponents are just complement digits of `s`.
pub fn bracket_pow(a: &LaurentSeries, s: &PadicInt) -> Result<LaurentSeries> {
    unit_pow_binomial(&a.one_unit_part()?, s)
}

/// `a^w = s0^{deg a} <a>^s` for a monic polynomial `a` in `T`.
pub fn s_pow(a: &LaurentSeries, w: &SPoint) -> Result<LaurentSeries> {
    let (sgn, val) = a.sgn_and_val().map_err(|_| Error::NotMonic)?;
    let polynomial = a.terms().all(|(j, _)| j <= 0);
    if sgn != crate::ff::FqElem::ONE || val > 0 || !polynomial {
        return Err(Error::NotMonic);
    }
    if a.field() != w.s0.field() {
        return Err(Error::FieldMismatch);
    }
    let deg = -val;
    let head = w.s0.pow_int(deg)?;
    Ok(&head * &bracket_pow(a, &w.s)?)
}
