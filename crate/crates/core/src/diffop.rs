//! The forward difference operator `Delta_(s,z) f = f(s+1, z+1) - f(s, z)`,
//! the infinite-order operator
//!
//! ```text
//! L = id + sum_{i >= 1, (q-1) | i} binom(-s, i) (1 + Delta_(s,z))^i
//! ```
//!
//! and a checker for `L[zeta(1/T, s, a, 0)] = sum_{alpha in F_q} <a + alpha>^{-s}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, FqElem};
use crate::laurent::LaurentSeries;
use crate::padic::PadicInt;
use crate::sfun::bracket_pow;
use crate::zeta::{check_in_a, hurwitz_goss, plan_levels, EvalOptions, HurwitzParams, ZetaMeta};

/// `binom(n, k) mod p` for nonnegative integers.
pub fn int_binom_mod_p(n: u64, k: u64, p: u32) -> u32 {
    let digits = (64 - n.leading_zeros()) as usize + 1;
    PadicInt::from_int(n as i64, p, digits).binom_mod_p(k).unwrap_or(0)
}

/// `f(s+1, z+1) - f(s, z)`.
pub fn forward_delta<F>(f: &F, s: &PadicInt, z: i64) -> Result<LaurentSeries>
where
    F: Fn(&PadicInt, i64) -> Result<LaurentSeries>,
{
    Ok(&f(&s.add_int(1), z + 1)? - &f(s, z)?)
}

/// `Delta^h f(s, z)` by differencing the table `f(s+t, z+t)`, `t <= h`, `h` times.
pub fn forward_delta_pow<F>(f: &F, s: &PadicInt, z: i64, h: u64) -> Result<LaurentSeries>
where
    F: Fn(&PadicInt, i64) -> Result<LaurentSeries>,
{
    let mut row = (0..=h)
        .map(|t| f(&s.add_int(t), z + t as i64))
        .collect::<Result<Vec<_>>>()?;
    for _ in 0..h {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Ok(row.pop().expect("one entry left"))
}

/// `Delta^h f(s, z) = sum_j (-1)^j binom(h, j) f(s+h-j, z+h-j)`.
pub fn forward_delta_pow_expanded<F>(f: &F, s: &PadicInt, z: i64, h: u64) -> Result<LaurentSeries>
where
    F: Fn(&PadicInt, i64) -> Result<LaurentSeries>,
{
    let mut acc: Option<LaurentSeries> = None;
    for j in 0..=h {
        let value = f(&s.add_int(h - j), z + (h - j) as i64)?;
        let field = value.field().clone();
        let c = field.from_int(int_binom_mod_p(h, j, field.p()) as i64);
        let c = if j % 2 == 1 { field.neg(c) } else { c };
        let term = value.scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    Ok(acc.expect("h + 1 terms"))
}

/// `(1 + Delta)^i f(s, z)`, evaluated directly as `f(s+i, z+i)`.
pub fn shift_pow<F>(f: &F, s: &PadicInt, z: i64, i: u64) -> Result<LaurentSeries>
where
    F: Fn(&PadicInt, i64) -> Result<LaurentSeries>,
{
    f(&s.add_int(i), z + i as i64)
}

/// `(1 + Delta)^i f(s, z)` expanded as `sum_h binom(i, h) Delta^h f(s, z)`.
pub fn shift_pow_expanded<F>(f: &F, s: &PadicInt, z: i64, i: u64) -> Result<LaurentSeries>
where
    F: Fn(&PadicInt, i64) -> Result<LaurentSeries>,
{
    let mut acc: Option<LaurentSeries> = None;
    for h in 0..=i {
        let delta = forward_delta_pow(f, s, z, h)?;
        let field = delta.field().clone();
        let term = delta.scale(field.from_int(int_binom_mod_p(i, h, field.p()) as i64));
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    Ok(acc.expect("i + 1 terms"))
}

/// One `binom(-s, i) (1 + Delta)^i f(s, z)` summand of `L f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTerm {
    pub i: u64,
    /// `binom(-s, i) mod p`.
    pub coefficient: u32,
    /// The scaled summand (zero when the coefficient vanishes).
    pub value: LaurentSeries,
}

/// `L f (s, z)` split into the identity part and its correction summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LExpansion {
    pub base: LaurentSeries,
    pub terms: Vec<OperatorTerm>,
}

impl LExpansion {
    pub fn sum(&self) -> LaurentSeries {
        self.terms.iter().fold(self.base.clone(), |acc, t| &acc + &t.value)
    }

    pub fn sum_descending(&self) -> LaurentSeries {
        let tail = self.terms.iter().rev().fold(None::<LaurentSeries>, |acc, t| {
            Some(match acc {
                None => t.value.clone(),
                Some(a) => &a + &t.value,
            })
        });
        match tail {
            None => self.base.clone(),
            Some(t) => &t + &self.base,
        }
    }
}

/// Applies `id + sum_{i in indices} binom(-s, i) (1 + Delta_(s,z))^i` to `f`.
/// Summands whose binomial coefficient vanishes mod p are not evaluated.
pub fn apply_operator<F>(
    f: &F,
    s: &PadicInt,
    z: i64,
    indices: &[u64],
    field: &FieldSpec,
    prec: i64,
    parallel: bool,
) -> Result<LExpansion>
where
    F: Fn(&PadicInt, i64) -> Result<LaurentSeries> + Sync,
{
    let neg_s = s.neg();
    let term = |&i: &u64| -> Result<OperatorTerm> {
        let coefficient = neg_s.binom_mod_p(i)?;
        let value = if coefficient == 0 {
            LaurentSeries::zero(field, prec)
        } else {
            shift_pow(f, s, z, i)?.scale(field.from_int(coefficient as i64))
        };
        Ok(OperatorTerm { i, coefficient, value })
    };
    let terms: Vec<Result<OperatorTerm>> = if parallel {
        indices.par_iter().map(term).collect()
    } else {
        indices.iter().map(term).collect()
    };
    let terms = terms.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(LExpansion { base: f(s, z)?, terms })
}

/// Least multiple of `q - 1` with `(m + 1) i >= prec`, plus `slack` further steps.
pub fn i_cutoff(q: u32, m: i64, prec: i64, slack: u32) -> u64 {
    let step = q as i64 - 1;
    let per_step = (m + 1) * step;
    let k = ((prec + per_step - 1) / per_step).max(1);
    ((k + slack as i64) * step) as u64
}

/// `1/T` with enough precision for every damping factor used up to `i_max`.
fn inverse_t(field: &FieldSpec, m: i64, prec: i64, i_max: u64, l_cap: u32) -> LaurentSeries {
    let reach = 2 + prec + (m + l_cap as i64 + 2) * i_max as i64;
    LaurentSeries::monomial(field, FqElem::ONE, 1, reach)
}

fn check_digits(s: &PadicInt, i_max: u64) -> Result<()> {
    let fits = (s.p() as u128)
        .checked_pow(s.precision() as u32)
        .is_none_or(|pk| pk > i_max as u128);
    if fits {
        Ok(())
    } else {
        Err(Error::InsufficientDigitPrecision {
            p: s.p(),
            digits: s.precision(),
            j: i_max,
        })
    }
}

fn check_prime(a: &LaurentSeries, s: &PadicInt) -> Result<()> {
    if a.field().p() != s.p() {
        return Err(Error::PrimeMismatch {
            field: a.field().p(),
            padic: s.p(),
        });
    }
    Ok(())
}

/// The `i`-th correction summand
/// `binom(-s, i) sum_l T^{-(m+l+1) i} sum_{deg k <= l} <k + a>^{-(s+i)}`.
pub fn correction_term(
    a: &LaurentSeries,
    s: &PadicInt,
    i: u64,
    prec: i64,
    opts: &EvalOptions,
) -> Result<(LaurentSeries, Option<ZetaMeta>)> {
    let m = check_in_a(a)?;
    check_prime(a, s)?;
    let field = a.field();
    let step = field.q() as u64 - 1;
    if i == 0 || !i.is_multiple_of(step) {
        return Err(Error::BadIndex { i, q_minus_one: step });
    }
    let coefficient = s.neg().binom_mod_p(i)?;
    if coefficient == 0 {
        return Ok((LaurentSeries::zero(field, prec), None));
    }
    let s0 = inverse_t(field, m, prec, i, opts.l_cap);
    let (value, meta) = hurwitz_goss(&s0, &s.add_int(i), &HurwitzParams::new(a, i as i64, prec)?, opts)?;
    Ok((value.scale(field.from_int(coefficient as i64)), Some(meta)))
}

/// Result of applying the truncated operator `L` to `zeta(1/T, s, a, z)` at `z = 0`.
#[derive(Debug, Clone)]
pub struct LEvaluation {
    pub value: LaurentSeries,
    pub expansion: LExpansion,
    /// Level cutoff of the identity term.
    pub l_star: u32,
    /// Largest correction index summed.
    pub i_star: u64,
    pub m: i64,
}

/// `L[zeta(1/T, s, a, 0)]` to precision `prec`, with correction indices
/// `q-1, 2(q-1), ..., i_star`.
pub fn apply_l(a: &LaurentSeries, s: &PadicInt, prec: i64, opts: &EvalOptions) -> Result<LEvaluation> {
    let m = check_in_a(a)?;
    check_prime(a, s)?;
    let field = a.field();
    let q = field.q();
    let i_star = i_cutoff(q, m, prec, opts.i_slack);
    check_digits(s, i_star)?;
    let step = q as u64 - 1;
    let indices: Vec<u64> = (1..=i_star / step).map(|k| k * step).collect();

    // every level plan up front, so a divergent configuration fails before any enumeration
    let l_star = plan_levels(q, m, 0, 1, opts.sign, prec, opts.l_cap)?;
    for &i in &indices {
        plan_levels(q, m, i as i64, 1, opts.sign, prec, opts.l_cap)?;
    }

    let s0 = inverse_t(field, m, prec, i_star, opts.l_cap);
    let zeta_at = |s: &PadicInt, z: i64| -> Result<LaurentSeries> {
        let params = HurwitzParams::new(a, z, prec)?;
        Ok(hurwitz_goss(&s0, s, &params, opts)?.0)
    };
    let expansion = apply_operator(&zeta_at, s, 0, &indices, field, prec, opts.parallel)?;
    let value = expansion.sum().truncate(prec);
    Ok(LEvaluation {
        value,
        expansion,
        l_star,
        i_star,
        m,
    })
}

/// `sum_{alpha in F_q} <a + alpha>^{-s}` to precision `prec`.
pub fn rhs_neighbors(a: &LaurentSeries, s: &PadicInt, prec: i64) -> Result<LaurentSeries> {
    check_in_a(a)?;
    check_prime(a, s)?;
    let field = a.field();
    let neg_s = s.neg();
    let mut acc = LaurentSeries::zero(field, prec);
    for alpha in field.elements() {
        let shifted = a + &LaurentSeries::monomial(field, alpha, 0, a.prec());
        acc = &acc + &bracket_pow(&shifted, &neg_s)?;
    }
    Ok(acc.truncate(prec))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch {
        first_exponent: i64,
    },
    /// Both sides agree, but only below `matched_prec < prec`.
    Inconclusive {
        matched_prec: i64,
    },
}

/// Valuation of one correction summand against its guaranteed lower bound `(m+1) i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermValuation {
    pub i: u64,
    pub coefficient: u32,
    /// `None` when the summand is zero to precision.
    pub valuation: Option<i64>,
    pub bound: i64,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub lhs: LaurentSeries,
    pub rhs: LaurentSeries,
    pub matched_prec: i64,
    pub l_star: u32,
    pub i_star: u64,
    pub term_valuations: Vec<TermValuation>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }
}

/// Compares `L[zeta(1/T, s, a, 0)]` with the neighbour sum coefficient by coefficient.
pub fn verify_main(a: &LaurentSeries, s: &PadicInt, prec: i64, opts: &EvalOptions) -> Result<VerificationReport> {
    let eval = apply_l(a, s, prec, opts)?;
    let rhs = rhs_neighbors(a, s, prec)?;
    let lhs = eval.value;
    let matched_prec = lhs.prec().min(rhs.prec());
    let verdict = match lhs.first_difference(&rhs) {
        Some(j) => Verdict::Mismatch { first_exponent: j },
        None if matched_prec < prec => Verdict::Inconclusive { matched_prec },
        None => Verdict::Match,
    };
    let term_valuations = eval
        .expansion
        .terms
        .iter()
        .map(|t| TermValuation {
            i: t.i,
            coefficient: t.coefficient,
            valuation: t.value.val(),
            bound: (eval.m + 1) * t.i as i64,
        })
        .collect();
    Ok(VerificationReport {
        lhs,
        rhs,
        matched_prec,
        l_star: eval.l_star,
        i_star: eval.i_star,
        term_valuations,
        verdict,
    })
}
