//! The Goss zeta function, its values at negative integers, and the
//! Hurwitz-type series
//!
//! ```text
//! zeta(s0, s, a, z) = sum_{l >= 0} s0^{-(m+l+1) z} sum_{k in F_q[1/T], deg k <= l} <k + a>^{-s}
//! ```
//!
//! for `a` with `v_inf(a) = -m < 0`.
//!
//! Truncation never looks at computed coefficients. The inner sum over
//! `deg k <= l` has valuation at least `(q-1)(2m+l)(l+1)/2`, and the
//! damping factor shifts that by its own valuation, so the number of `l`
//! terms is fixed up front from integer arithmetic alone.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, FqElem};
use crate::laurent::LaurentSeries;
use crate::padic::PadicInt;
use crate::sfun::{bracket_pow, BinomialTable, SPoint};

/// Sign of the exponent in the damping factor.
///
/// `Definition` uses `s0^{-(m+l+1) z}` as written in the defining series.
/// `Proof` uses `s0^{+(m+l+1) z}`, which at `s0 = 1/T` is the factor
/// `T^{-(m+l+1) i}` produced when the neighbour sum is expanded; the
/// difference equation holds for this form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZetaSign {
    #[default]
    Proof,
    Definition,
}

impl ZetaSign {
    fn factor(self) -> i64 {
        match self {
            ZetaSign::Proof => 1,
            ZetaSign::Definition => -1,
        }
    }
}

impl std::str::FromStr for ZetaSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proof" => Ok(ZetaSign::Proof),
            "definition" => Ok(ZetaSign::Definition),
            other => Err(Error::Parse(format!("unknown zeta sign convention {other:?}"))),
        }
    }
}

/// Evaluation knobs shared by the zeta and difference-operator code.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    /// Largest `l` ever enumerated.
    pub l_cap: u32,
    /// Largest number of polynomials enumerated for a single inner sum.
    pub enum_cap: u128,
    pub sign: ZetaSign,
    /// Split enumerations across the rayon pool. Results are identical either way.
    pub parallel: bool,
    /// Extra `l` terms beyond the computed cutoff.
    pub l_slack: u32,
    /// Extra correction terms (in steps of `q - 1`) beyond the computed cutoff.
    pub i_slack: u32,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            l_cap: 12,
            enum_cap: 1 << 20,
            sign: ZetaSign::Proof,
            parallel: true,
            l_slack: 0,
            i_slack: 0,
        }
    }
}

/// Fixed parameters `(a, z)` of the Hurwitz-type series and the target precision.
#[derive(Debug, Clone)]
pub struct HurwitzParams {
    a: LaurentSeries,
    m: i64,
    z: i64,
    prec: i64,
}

impl HurwitzParams {
    /// Requires `|a|_inf > 1`, i.e. `v_inf(a) < 0`.
    pub fn new(a: &LaurentSeries, z: i64, prec: i64) -> Result<Self> {
        let m = check_in_a(a)?;
        Ok(HurwitzParams {
            a: a.clone(),
            m,
            z,
            prec,
        })
    }

    pub fn a(&self) -> &LaurentSeries {
        &self.a
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }
}

/// Returns `m = -v_inf(a)` after checking `a` lies in the domain.
pub fn check_in_a(a: &LaurentSeries) -> Result<i64> {
    match a.val() {
        Some(v) if v < 0 => Ok(-v),
        val => Err(Error::NotInA { val }),
    }
}

/// The valuation bound `(q-1)(2m+l)(l+1)/2` for the inner sum of level `l`.
pub fn inner_sum_bound(q: u32, m: i64, l: u32) -> i64 {
    let l = l as i64;
    (q as i64 - 1) * (2 * m + l) * (l + 1) / 2
}

fn check_enumeration(q: u32, count_exp: u32, l: u32, opts: &EvalOptions) -> Result<u128> {
    let count = (q as u128).checked_pow(count_exp).unwrap_or(u128::MAX);
    if l > opts.l_cap || count > opts.enum_cap {
        return Err(Error::EnumerationTooLarge { l, count });
    }
    Ok(count)
}

/// Digits of `idx` in base `q`, least significant first.
fn base_q_digits(mut idx: u128, q: u32, len: usize) -> impl Iterator<Item = FqElem> {
    (0..len).map(move |_| {
        let d = (idx % q as u128) as u32;
        idx /= q as u128;
        FqElem::from_index_unchecked(d)
    })
}

const CHUNK: u128 = 64;

/// Sums `term(idx)` for `idx < count` in fixed-size chunks. Chunk sums are
/// folded in index order, so the output does not depend on threading.
fn enumerate_sum<F>(field: &FieldSpec, count: u128, prec: i64, parallel: bool, term: F) -> Result<LaurentSeries>
where
    F: Fn(u128) -> Result<LaurentSeries> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let chunk_sum = |c: u128| -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::zero(field, prec);
        for idx in c * CHUNK..((c + 1) * CHUNK).min(count) {
            acc = &acc + &term(idx)?;
        }
        Ok(acc)
    };
    let partials: Vec<Result<LaurentSeries>> = if parallel && chunks > 1 {
        (0..chunks as u64)
            .into_par_iter()
            .map(|c| chunk_sum(c as u128))
            .collect()
    } else {
        (0..chunks).map(chunk_sum).collect()
    };
    let mut acc = LaurentSeries::zero(field, prec);
    for part in partials {
        acc = &acc + &part?;
    }
    Ok(acc)
}

/// `sum_{k in F_q[1/T], deg k <= l} <k + a>^{-s}` to precision `prec`.
///
/// Uses `<k + a> = x + w` with `x = <a>` and `w` running over
/// `alpha_l u^{m+l} + ... + alpha_0 u^m`, `alpha_j in F_q`.
pub fn inner_sum(a: &LaurentSeries, s: &PadicInt, l: u32, prec: i64, opts: &EvalOptions) -> Result<LaurentSeries> {
    let m = check_in_a(a)?;
    let field = a.field();
    let count = check_enumeration(field.q(), l + 1, l, opts)?;
    let x = a.one_unit_part()?.truncate(prec);
    let prec = x.prec();
    if prec <= 0 {
        return Ok(LaurentSeries::zero(field, prec));
    }
    let table = BinomialTable::new(&s.neg(), prec as u64);
    let q = field.q();
    enumerate_sum(field, count, prec, opts.parallel, |idx| {
        let terms: Vec<(i64, FqElem)> = base_q_digits(idx, q, l as usize + 1)
            .enumerate()
            .map(|(j, alpha)| (m + j as i64, alpha))
            .collect();
        let w = LaurentSeries::from_terms(field, &terms, prec);
        table.pow(&(&x + &w))
    })
}

/// Reference form of `inner_sum`: builds each `k + a` and takes `<k + a>`
/// directly instead of going through `x + w`.
pub fn inner_sum_direct(
    a: &LaurentSeries,
    s: &PadicInt,
    l: u32,
    prec: i64,
    opts: &EvalOptions,
) -> Result<LaurentSeries> {
    check_in_a(a)?;
    let field = a.field();
    let count = check_enumeration(field.q(), l + 1, l, opts)?;
    let neg_s = s.neg();
    let q = field.q();
    let mut acc: Option<LaurentSeries> = None;
    for idx in 0..count {
        let terms: Vec<(i64, FqElem)> = base_q_digits(idx, q, l as usize + 1)
            .enumerate()
            .map(|(j, b)| (j as i64, b))
            .collect();
        let k = LaurentSeries::from_terms(field, &terms, a.prec());
        let term = bracket_pow(&(&k + a), &neg_s)?.truncate(prec);
        acc = Some(match acc {
            None => term,
            Some(t) => &t + &term,
        });
    }
    Ok(acc.expect("at least one polynomial"))
}

/// Per-level truncation data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelInfo {
    pub l: u32,
    /// Guaranteed valuation of the damped term: inner bound plus factor valuation.
    pub bound: i64,
    /// Valuation of the damping factor.
    pub factor_val: i64,
    /// Observed valuation of the inner sum (`None` when zero to precision).
    pub inner_val: Option<i64>,
    /// Precision at which the inner sum was computed.
    pub inner_prec: i64,
}

/// Truncation record for one evaluation of the Hurwitz-type series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaMeta {
    /// Cutoff level; levels `0..=l_star` (plus any slack) are summed.
    pub l_star: u32,
    pub levels: Vec<LevelInfo>,
    pub warnings: Vec<String>,
}

/// Integer-only plan: the least `l` whose damped-term bound reaches `prec`
/// and keeps growing, so every later term is `O(u^prec)` too.
pub fn plan_levels(q: u32, m: i64, z: i64, s0_val: i64, sign: ZetaSign, prec: i64, l_cap: u32) -> Result<u32> {
    let bound = |l: u32| inner_sum_bound(q, m, l) + factor_exponent(sign, m, l, z) * s0_val;
    (0..=l_cap)
        .find(|&l| bound(l) >= prec && bound(l + 1) >= bound(l))
        .ok_or(Error::NoConvergence { prec, l_cap })
}

fn factor_exponent(sign: ZetaSign, m: i64, l: u32, z: i64) -> i64 {
    sign.factor() * (m + l as i64 + 1) * z
}

/// The Hurwitz-type series at `(s0, s)`, summed over `l = 0 ..= l_star`.
pub fn hurwitz_goss(
    s0: &LaurentSeries,
    s: &PadicInt,
    params: &HurwitzParams,
    opts: &EvalOptions,
) -> Result<(LaurentSeries, ZetaMeta)> {
    let field = params.a.field();
    if s0.field() != field {
        return Err(Error::FieldMismatch);
    }
    let v0 = s0.val().ok_or(Error::ZeroInput)?;
    let (m, z, prec) = (params.m, params.z, params.prec);
    let q = field.q();
    let l_star = plan_levels(q, m, z, v0, opts.sign, prec, opts.l_cap)?;
    let mut warnings = Vec::new();
    if z < 0 {
        warnings.push(format!("z = {z} < 0: the damping factor grows with l"));
    }
    let mut acc = LaurentSeries::zero(field, prec);
    let mut levels = Vec::new();
    for l in 0..=l_star + opts.l_slack {
        let exp = factor_exponent(opts.sign, m, l, z);
        let factor_val = exp * v0;
        let bound = inner_sum_bound(q, m, l) + factor_val;
        let inner_prec = prec - factor_val;
        if inner_prec <= 0 {
            levels.push(LevelInfo {
                l,
                bound,
                factor_val,
                inner_val: None,
                inner_prec,
            });
            continue;
        }
        let inner = inner_sum(&params.a, s, l, inner_prec, opts)?;
        levels.push(LevelInfo {
            l,
            bound,
            factor_val,
            inner_val: inner.val(),
            inner_prec: inner.prec(),
        });
        let term = &s0.pow_int(exp)? * &inner;
        acc = &acc + &term;
    }
    Ok((
        acc.truncate(prec),
        ZetaMeta {
            l_star,
            levels,
            warnings,
        },
    ))
}

/// Partial Goss zeta `sum_{l <= l_max} s0^{-l} sum_{a monic, deg a = l} <a>^{-s}`.
pub fn goss_partial(w: &SPoint, l_max: u32, prec: i64, opts: &EvalOptions) -> Result<LaurentSeries> {
    let field = w.s0.field();
    let v0 = w.s0.val().ok_or(Error::ZeroInput)?;
    let neg_s = w.s.neg();
    let mut acc = LaurentSeries::zero(field, prec);
    for l in 0..=l_max {
        let count = check_enumeration(field.q(), l, l, opts)?;
        // s0^{-l} has valuation -l v0
        let inner_prec = prec + l as i64 * v0;
        if inner_prec <= 0 {
            continue;
        }
        let table = BinomialTable::new(&neg_s, inner_prec as u64);
        let q = field.q();
        let inner = enumerate_sum(field, count, inner_prec, opts.parallel, |idx| {
            // <T^l + c_{l-1} T^{l-1} + ... + c_0> = 1 + c_{l-1} u + ... + c_0 u^l
            let mut terms = vec![(0, FqElem::ONE)];
            terms.extend(
                base_q_digits(idx, q, l as usize)
                    .enumerate()
                    .map(|(j, c)| (l as i64 - j as i64, c)),
            );
            table.pow(&LaurentSeries::from_terms(field, &terms, inner_prec))
        })?;
        acc = &acc + &(&w.s0.pow_int(-(l as i64))? * &inner);
    }
    Ok(acc.truncate(prec))
}

// Dense polynomials in T over F_q, low-to-high, used for special values.
fn poly_mul(field: &FieldSpec, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut out = vec![FqElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

fn poly_add_into(field: &FieldSpec, acc: &mut Vec<FqElem>, b: &[FqElem], scale: FqElem) {
    if acc.len() < b.len() {
        acc.resize(b.len(), FqElem::ZERO);
    }
    for (slot, &y) in acc.iter_mut().zip(b) {
        *slot = field.add(*slot, field.mul(scale, y));
    }
}

fn poly_series(field: &FieldSpec, coeffs: &[FqElem]) -> LaurentSeries {
    // a polynomial in T is exact through the constant term
    LaurentSeries::from_t_poly(field, coeffs, 1)
}

/// `zeta(-n) = sum_{l <= n/(q-1)} sum_{a monic, deg a = l} a^n`. Levels with
/// `l (q-1) > n` vanish identically and are not enumerated.
pub fn goss_special_direct(n: u64, field: &FieldSpec, opts: &EvalOptions) -> Result<LaurentSeries> {
    let q = field.q();
    let l_max = (n / (q as u64 - 1)) as u32;
    let count = (q as u128).checked_pow(l_max).unwrap_or(u128::MAX);
    if count > opts.enum_cap {
        return Err(Error::EnumerationTooLarge { l: l_max, count });
    }
    let mut total = vec![FqElem::ZERO];
    for l in 0..=l_max {
        let per_level = (q as u128).pow(l);
        for idx in 0..per_level {
            let mut a: Vec<FqElem> = base_q_digits(idx, q, l as usize).collect();
            a.push(FqElem::ONE);
            let mut power = vec![FqElem::ONE];
            for _ in 0..n {
                power = poly_mul(field, &power, &a);
            }
            poly_add_into(field, &mut total, &power, FqElem::ONE);
        }
    }
    Ok(poly_series(field, &total))
}

/// `zeta(-n) = 1 - sum_{i < n, (q-1) | (n-i)} binom(n, i) T^i zeta(-i)`, memoized.
pub fn goss_special_recurrence(n: u64, field: &FieldSpec) -> Result<LaurentSeries> {
    let q = field.q() as u64;
    let p = field.p();
    let mut values: Vec<Vec<FqElem>> = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let mut acc = vec![FqElem::ONE];
        let digits = (64 - k.leading_zeros()) as usize + 1;
        let kp = PadicInt::from_int(k as i64, p, digits);
        for i in 0..k {
            if (k - i) % (q - 1) != 0 {
                continue;
            }
            let c = kp.binom_mod_p(i)?;
            if c == 0 {
                continue;
            }
            let mut shifted = vec![FqElem::ZERO; i as usize];
            shifted.extend_from_slice(&values[i as usize]);
            poly_add_into(field, &mut acc, &shifted, field.neg(field.from_int(c as i64)));
        }
        values.push(acc);
    }
    Ok(poly_series(field, &values[n as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, e: u32) -> FieldSpec {
        FieldSpec::new(p, e, None).unwrap()
    }

    fn t_poly(field: &FieldSpec, coeffs: &[i64], prec: i64) -> LaurentSeries {
        let c: Vec<_> = coeffs.iter().map(|&x| field.from_int(x)).collect();
        LaurentSeries::from_t_poly(field, &c, prec)
    }

    fn geometric(field: &FieldSpec, from: i64, prec: i64) -> LaurentSeries {
        let terms: Vec<_> = (from..prec).map(|j| (j, FqElem::ONE)).collect();
        LaurentSeries::from_terms(field, &terms, prec)
    }

    fn opts() -> EvalOptions {
        EvalOptions {
            parallel: false,
            ..EvalOptions::default()
        }
    }

    #[test]
    fn inner_sum_examples() {
        let f2 = f(2, 1);
        let t = t_poly(&f2, &[0, 1], 16);
        let one = PadicInt::from_int(1, 2, 32);
        let r = inner_sum(&t, &one, 0, 16, &opts()).unwrap();
        // 1 + 1/(1+u) = u + u^2 + ...
        assert_eq!(r, geometric(&f2, 1, 16));

        let zero = PadicInt::zero(2, 32);
        for l in 0..3 {
            assert!(inner_sum(&t, &zero, l, 16, &opts()).unwrap().is_zero());
        }

        let r1 = inner_sum(&t, &one, 1, 16, &opts()).unwrap();
        assert!(r1.val_or_prec() >= 3);
        assert_eq!(inner_sum_bound(2, 1, 1), 3);
    }

    #[test]
    fn inner_sum_domain_and_caps() {
        let f2 = f(2, 1);
        let s = PadicInt::from_int(1, 2, 32);
        let unit = t_poly(&f2, &[1], 8);
        assert_eq!(inner_sum(&unit, &s, 0, 8, &opts()), Err(Error::NotInA { val: Some(0) }));
        let t = t_poly(&f2, &[0, 1], 8);
        assert!(matches!(
            inner_sum(&t, &s, 13, 8, &opts()),
            Err(Error::EnumerationTooLarge { .. })
        ));
        let tight = EvalOptions { enum_cap: 4, ..opts() };
        assert!(matches!(
            inner_sum(&t, &s, 2, 8, &tight),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn x_plus_w_matches_direct_route() {
        for (p, e, poly) in [(2, 1, vec![1, 1, 1]), (3, 1, vec![2, 0, 1]), (2, 2, vec![1, 1])] {
            let field = f(p, e);
            let a = t_poly(&field, &poly, 14);
            for n in [1i64, 2, 5, -1, -4] {
                let s = PadicInt::from_int(n, p as u32, 32);
                for l in 0..3 {
                    let lhs = inner_sum(&a, &s, l, 14, &opts()).unwrap();
                    let rhs = inner_sum_direct(&a, &s, l, 14, &opts()).unwrap();
                    assert!(lhs.agrees_with(&rhs), "q={} n={n} l={l}", field.q());
                }
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let field = f(3, 1);
        let a = t_poly(&field, &[1, 0, 1], 20);
        let s = PadicInt::from_int(7, 3, 32);
        let seq = inner_sum(&a, &s, 3, 20, &opts()).unwrap();
        let par = inner_sum(&a, &s, 3, 20, &EvalOptions::default()).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn valuation_bound_holds() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let field = f(p, e);
            for m in 1..=2usize {
                let mut c = vec![0i64; m + 1];
                c[m] = 1;
                c[0] = 1;
                let a = t_poly(&field, &c, 24);
                for n in [1i64, 3, -2, 11] {
                    let s = PadicInt::from_int(n, p as u32, 32);
                    for l in 0..=3 {
                        let r = inner_sum(&a, &s, l, 24, &opts()).unwrap();
                        let bound = inner_sum_bound(field.q(), m as i64, l).min(r.prec());
                        assert!(r.val_or_prec() >= bound, "q={} m={m} l={l} n={n}", field.q());
                    }
                }
            }
        }
    }

    #[test]
    fn hurwitz_examples() {
        let f2 = f(2, 1);
        let t = t_poly(&f2, &[0, 1], 16);
        let u = LaurentSeries::monomial(&f2, FqElem::ONE, 1, 64);

        let zero_s = PadicInt::zero(2, 32);
        let (z0, _) = hurwitz_goss(&u, &zero_s, &HurwitzParams::new(&t, 0, 16).unwrap(), &opts()).unwrap();
        assert!(z0.is_zero());

        let one = PadicInt::from_int(1, 2, 32);
        let params = HurwitzParams::new(&t, 0, 16).unwrap();
        let (z1, meta) = hurwitz_goss(&u, &one, &params, &opts()).unwrap();
        let mut direct = LaurentSeries::zero(&f2, 16);
        for l in 0..=meta.l_star {
            direct = &direct + &inner_sum(&t, &one, l, 16, &opts()).unwrap();
        }
        assert_eq!(z1, direct);
        assert_eq!(z1.val(), Some(1));
        assert_eq!(meta.l_star, plan_levels(2, 1, 0, 1, ZetaSign::Proof, 16, 12).unwrap());

        // with z = 0 the damping factor is 1 for any s0
        let s0 = t_poly(&f2, &[1, 1, 1], 64);
        let (other, _) = hurwitz_goss(&s0, &one, &params, &opts()).unwrap();
        assert_eq!(other, z1);
    }

    #[test]
    fn truncation_is_stable() {
        let field = f(3, 1);
        let a = t_poly(&field, &[1, 1], 30);
        let u = LaurentSeries::monomial(&field, FqElem::ONE, 1, 80);
        let s = PadicInt::from_int(5, 3, 32);
        for z in [0, 1, 2] {
            let (lo, _) = hurwitz_goss(&u, &s, &HurwitzParams::new(&a, z, 14).unwrap(), &opts()).unwrap();
            let (hi, _) = hurwitz_goss(&u, &s, &HurwitzParams::new(&a, z, 22).unwrap(), &opts()).unwrap();
            assert!(lo.agrees_with(&hi));
            assert_eq!(lo.prec(), 14);
        }
    }

    #[test]
    fn definition_sign_and_negative_z() {
        let f2 = f(2, 1);
        let t = t_poly(&f2, &[0, 1], 40);
        let u = LaurentSeries::monomial(&f2, FqElem::ONE, 1, 80);
        let s = PadicInt::from_int(3, 2, 32);
        let def = EvalOptions {
            sign: ZetaSign::Definition,
            ..opts()
        };
        let (r, meta) = hurwitz_goss(&u, &s, &HurwitzParams::new(&t, 1, 10).unwrap(), &def).unwrap();
        assert_eq!(r.prec(), 10);
        assert!(meta.levels.iter().all(|lv| lv.factor_val < 0));
        let (_, meta) = hurwitz_goss(&u, &s, &HurwitzParams::new(&t, -1, 10).unwrap(), &opts()).unwrap();
        assert_eq!(meta.warnings.len(), 1);
        assert!(matches!(
            plan_levels(2, 1, 30, 1, ZetaSign::Definition, 20, 12),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn goss_partial_examples() {
        let f2 = f(2, 1);
        let t = t_poly(&f2, &[0, 1], 40);
        let zero = SPoint::new(t.clone(), PadicInt::zero(2, 32)).unwrap();
        let r = goss_partial(&zero, 4, 12, &opts()).unwrap();
        assert_eq!(r, LaurentSeries::one(&f2, 12));

        let w = SPoint::new(t.clone(), PadicInt::from_int(1, 2, 32)).unwrap();
        assert_eq!(goss_partial(&w, 0, 12, &opts()).unwrap(), LaurentSeries::one(&f2, 12));

        let r1 = goss_partial(&w, 1, 12, &opts()).unwrap();
        let minus_one = PadicInt::from_int(-1, 2, 32);
        let t1 = t_poly(&f2, &[1, 1], 40);
        let sum =
            &bracket_pow(&t, &minus_one).unwrap().truncate(13) + &bracket_pow(&t1, &minus_one).unwrap().truncate(13);
        let expect = &LaurentSeries::one(&f2, 12) + &sum.shift(1);
        assert!(r1.agrees_with(&expect));
        assert_eq!(r1.prec(), 12);
    }

    #[test]
    fn special_values() {
        for q in [2u64, 3, 4, 5] {
            let (p, e) = crate::ff::prime_power(q).unwrap();
            let field = f(p, e);
            let zeta0 = goss_special_direct(0, &field, &opts()).unwrap();
            assert_eq!(zeta0.fmt_terms(), "1");
            assert_eq!(goss_special_recurrence(0, &field).unwrap().fmt_terms(), "1");
        }
        let f2 = f(2, 1);
        assert!(goss_special_direct(1, &f2, &opts()).unwrap().is_zero());
        let f3 = f(3, 1);
        assert!(goss_special_direct(2, &f3, &opts()).unwrap().is_zero());
        assert_eq!(goss_special_recurrence(1, &f3).unwrap().fmt_terms(), "1");
        assert!(goss_special_recurrence(2, &f3).unwrap().is_zero());
        // 1 + T + 2 T^3 over F_3
        assert_eq!(
            goss_special_direct(5, &f3, &opts()).unwrap().fmt_terms(),
            "2·T^3 + T + 1"
        );
        for n in 0..=12 {
            for field in [f(2, 1), f(3, 1)] {
                assert_eq!(
                    goss_special_direct(n, &field, &opts()).unwrap(),
                    goss_special_recurrence(n, &field).unwrap(),
                    "q={} n={n}",
                    field.q()
                );
            }
        }
    }
}
