//! The `goss` command-line front end.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::diffop::{i_cutoff, verify_main, Verdict, VerificationReport};
use crate::error::{Error, Result};
use crate::ff::{FieldSpec, FqElem};
use crate::laurent::LaurentSeries;
use crate::padic::{PadicInt, DEFAULT_DIGITS};
use crate::zeta::{
    check_in_a, goss_special_direct, goss_special_recurrence, hurwitz_goss, EvalOptions, HurwitzParams, ZetaSign,
};

#[derive(Parser, Debug)]
#[command(
    name = "goss",
    version,
    about = "Goss zeta values and the difference equation over F_q((1/T))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the Hurwitz-type series zeta(s0, s, a, z)
    EvalZeta(EvalArgs),
    /// Value of the Goss zeta function at -n
    Special(SpecialArgs),
    /// Check L[zeta(1/T, s, a, 0)] against the neighbour sum
    Verify(PointArgs),
    /// Observed valuations against the truncation bounds
    Bounds(PointArgs),
    /// Character sums sum_{x in F_q} x^i
    PowerSums(PowerSumArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Field: P^E, P^E:m0,...,mE or a prime power q
    #[arg(long)]
    q: String,
    /// Precision N: results are exact modulo u^N
    #[arg(long, default_value_t = 20)]
    prec: i64,
    /// Base-p digits carried by the exponent s
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
    #[arg(long, default_value = "proof")]
    zeta_sign: ZetaSign,
    #[arg(long)]
    json: bool,
    /// Seed for `--s random`
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 runs sequentially
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    common: Common,
    /// Polynomial in T of positive degree, e.g. "T^2+T" or "1,1,0"
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Integer, digit list "digits:d0,d1,..." or "random"
    #[arg(long, allow_hyphen_values = true)]
    s: String,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    z: i64,
    /// The first coordinate s0, a Laurent polynomial in T
    #[arg(long, default_value = "T^-1", allow_hyphen_values = true)]
    s0: String,
}

#[derive(Args, Debug)]
struct SpecialArgs {
    #[arg(long)]
    q: String,
    #[arg(long)]
    n: u64,
    /// Enumerate monic polynomials instead of using the recurrence
    #[arg(long)]
    direct: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PowerSumArgs {
    #[arg(long)]
    q: String,
    /// Largest exponent; defaults to 3(q-1)
    #[arg(long)]
    max_i: Option<u64>,
    #[arg(long)]
    json: bool,
}

impl std::fmt::Display for ZetaSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZetaSign::Proof => "proof",
            ZetaSign::Definition => "definition",
        })
    }
}

/// Runs the CLI on `argv` (program name first), writing to stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`] with explicit output streams. Returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    let (text, code) = match command {
        Command::EvalZeta(args) => with_jobs(args.point.common.jobs, || eval_zeta(&args))?,
        Command::Special(args) => special(&args)?,
        Command::Verify(args) => with_jobs(args.common.jobs, || verify(&args))?,
        Command::Bounds(args) => with_jobs(args.common.jobs, || bounds(&args))?,
        Command::PowerSums(args) => power_sums(&args)?,
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(code)
}

fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<R> + Send) -> Result<R> {
    match jobs {
        Some(0) => Err(Error::Parse("--jobs must be positive".into())),
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Parse(e.to_string()))?
            .install(f),
        _ => f(),
    }
}

/// Parses a Laurent polynomial in `T`: sums of terms like `2*T^3`, `[1,1]T`,
/// `T^-1` or constants, or the comma form `c_m,...,c_0` of a polynomial.
/// The result is exact to `O(u^prec)`.
pub fn parse_poly(text: &str, field: &FieldSpec, prec: i64) -> Result<LaurentSeries> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(i64, FqElem)> = Vec::new();
    if !text.contains(['T', 't']) {
        let coeffs = split_top(&text, |c| c == ',')
            .into_iter()
            .map(|(_, c)| parse_coeff(&c, field))
            .collect::<Result<Vec<_>>>()?;
        let m = coeffs.len() as i64 - 1;
        for (k, c) in coeffs.into_iter().enumerate() {
            terms.push((k as i64 - m, c));
        }
    } else {
        for (negative, term) in split_top(&text, |c| c == '+' || c == '-') {
            let (coef, exp) = parse_term(&term, field)?;
            terms.push((-exp, if negative { field.neg(coef) } else { coef }));
        }
    }
    Ok(LaurentSeries::from_terms(field, &terms, prec))
}

/// Splits at top-level separators, outside brackets and not right after `^`.
/// Each piece carries whether it was introduced by a `-`.
fn split_top(text: &str, is_sep: impl Fn(char) -> bool) -> Vec<(bool, String)> {
    let mut pieces = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    let mut negative = false;
    let mut prev = None;
    for ch in text.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && is_sep(ch) && prev != Some('^') {
            if !cur.is_empty() || prev.is_some() {
                pieces.push((negative, std::mem::take(&mut cur)));
            }
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    pieces.push((negative, cur));
    pieces
}

fn parse_term(term: &str, field: &FieldSpec) -> Result<(FqElem, i64)> {
    let Some(pos) = term.find(['T', 't']) else {
        return Ok((parse_coeff(term, field)?, 0));
    };
    let coef = term[..pos].trim_end_matches('*');
    let coef = if coef.is_empty() {
        field.one()
    } else {
        parse_coeff(coef, field)?
    };
    let rest = &term[pos + 1..];
    let exp = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|e| e.parse::<i64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?
    };
    Ok((coef, exp))
}

fn parse_coeff(text: &str, field: &FieldSpec) -> Result<FqElem> {
    if let Some(body) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let digits = body
            .split(',')
            .map(|d| d.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad coefficient {text:?}")))?;
        return field.from_coeffs(&digits);
    }
    text.parse::<i64>()
        .map(|n| field.from_int(n))
        .map_err(|_| Error::Parse(format!("bad coefficient {text:?}")))
}

fn parse_s(text: &str, p: u32, digits: usize, seed: u64) -> Result<PadicInt> {
    if text == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds: Vec<u32> = (0..digits).map(|_| rng.gen_range(0..p)).collect();
        return Ok(PadicInt::from_digits(p, &ds));
    }
    PadicInt::parse(text, p, digits)
}

fn field_json(field: &FieldSpec) -> Value {
    json!({ "p": field.p(), "e": field.e(), "modulus": field.modulus() })
}

fn options(common: &Common) -> EvalOptions {
    EvalOptions {
        sign: common.zeta_sign,
        parallel: common.jobs != Some(1),
        ..EvalOptions::default()
    }
}

struct Point {
    field: FieldSpec,
    a: LaurentSeries,
    m: i64,
    s: PadicInt,
}

fn point(args: &PointArgs, z: i64) -> Result<Point> {
    let common = &args.common;
    if common.prec < 4 {
        return Err(Error::Parse(format!("--prec must be at least 4, got {}", common.prec)));
    }
    if common.digits == 0 {
        return Err(Error::Parse("--digits must be positive".into()));
    }
    let field = FieldSpec::parse(&common.q)?;
    let m = check_in_a(&parse_poly(&args.a, &field, common.prec)?)?;
    // a polynomial is exact, so carry it far enough for any damping factor
    let reach = i_cutoff(field.q(), m, common.prec, 1).max(z.unsigned_abs());
    let a_prec = common.prec + (m + EvalOptions::default().l_cap as i64 + 2) * reach as i64 + 2;
    let a = parse_poly(&args.a, &field, a_prec)?;
    let s = parse_s(&args.s, field.p(), common.digits, common.seed)?;
    Ok(Point { field, a, m, s })
}

/// Requires `p^K >= N (m + 1)`.
fn check_digit_budget(pt: &Point, prec: i64) -> Result<()> {
    let need = prec as u128 * (pt.m as u128 + 1);
    let k = pt.s.precision();
    let enough = (pt.field.p() as u128).checked_pow(k as u32).is_none_or(|pk| pk >= need);
    if enough {
        Ok(())
    } else {
        Err(Error::InsufficientDigitPrecision {
            p: pt.field.p(),
            digits: k,
            j: need as u64,
        })
    }
}

fn eval_zeta(args: &EvalArgs) -> Result<(String, i32)> {
    let common = &args.point.common;
    let pt = point(&args.point, args.z)?;
    let s0_prec = common.prec + (pt.m + common.prec + 2) * args.z.abs() + 2;
    let s0 = parse_poly(&args.s0, &pt.field, s0_prec)?;
    let params = HurwitzParams::new(&pt.a, args.z, common.prec)?;
    let (value, meta) = hurwitz_goss(&s0, &pt.s, &params, &options(common))?;
    let text = if common.json {
        let doc = json!({
            "field": field_json(&pt.field),
            "series": value.to_json(),
            "meta": meta,
        });
        format!("{doc}\n")
    } else {
        let mut t = format!("{value}\nl* = {}\n", meta.l_star);
        for lv in &meta.levels {
            t += &format!(
                "l = {}: bound {} factor {} inner {}\n",
                lv.l,
                lv.bound,
                lv.factor_val,
                fmt_val(lv.inner_val)
            );
        }
        for w in &meta.warnings {
            t += &format!("warning: {w}\n");
        }
        t
    };
    Ok((text, 0))
}

fn fmt_val(v: Option<i64>) -> String {
    v.map_or_else(|| "zero".to_string(), |v| v.to_string())
}

fn special(args: &SpecialArgs) -> Result<(String, i32)> {
    let field = FieldSpec::parse(&args.q)?;
    let value = if args.direct {
        goss_special_direct(args.n, &field, &EvalOptions::default())?
    } else {
        goss_special_recurrence(args.n, &field)?
    };
    let text = if args.json {
        let coeffs: Vec<Vec<u32>> = (0..=value.val().map_or(0, |v| -v))
            .map(|k| field.coeffs(value.coeff(-k).unwrap_or(FqElem::ZERO)))
            .collect();
        format!(
            "{}\n",
            json!({ "field": field_json(&field), "n": args.n, "t_coeffs": coeffs })
        )
    } else {
        format!("{}\n", value.fmt_terms())
    };
    Ok((text, 0))
}

fn run_verify(args: &PointArgs) -> Result<(Point, VerificationReport)> {
    let pt = point(args, 0)?;
    check_digit_budget(&pt, args.common.prec)?;
    let report = verify_main(&pt.a, &pt.s, args.common.prec, &options(&args.common))?;
    Ok((pt, report))
}

fn verify(args: &PointArgs) -> Result<(String, i32)> {
    let (pt, r) = run_verify(args)?;
    let code = if r.is_match() { 0 } else { 2 };
    let text = if args.common.json {
        let doc = json!({
            "field": field_json(&pt.field),
            "series": r.lhs.to_json(),
            "rhs": r.rhs.to_json(),
            "matched_prec": r.matched_prec,
            "meta": {
                "l_star": r.l_star,
                "i_star": r.i_star,
                "term_valuations": r.term_valuations,
            },
            "verdict": r.verdict,
        });
        format!("{doc}\n")
    } else {
        let verdict = match r.verdict {
            Verdict::Match => format!("match to O(u^{})", r.matched_prec),
            Verdict::Mismatch { first_exponent } => format!("mismatch at u^{first_exponent}"),
            Verdict::Inconclusive { matched_prec } => format!("inconclusive: sides agree only to O(u^{matched_prec})"),
        };
        format!(
            "lhs = {}\nrhs = {}\nl* = {}, i* = {}\n{verdict}\n",
            r.lhs, r.rhs, r.l_star, r.i_star
        )
    };
    Ok((text, code))
}

fn bounds(args: &PointArgs) -> Result<(String, i32)> {
    let (pt, r) = run_verify(args)?;
    let common = &args.common;
    let s0 = LaurentSeries::monomial(&pt.field, FqElem::ONE, 1, common.prec + 2);
    let params = HurwitzParams::new(&pt.a, 0, common.prec)?;
    let (_, meta) = hurwitz_goss(&s0, &pt.s.neg().neg(), &params, &options(common))?;
    let mut ok = true;
    let mut lines = Vec::new();
    for lv in &meta.levels {
        let holds = lv.inner_val.is_none_or(|v| v >= lv.bound);
        ok &= holds;
        lines.push(
            json!({ "kind": "level", "index": lv.l, "valuation": lv.inner_val, "bound": lv.bound, "holds": holds }),
        );
    }
    for t in &r.term_valuations {
        let holds = t.valuation.is_none_or(|v| v >= t.bound);
        ok &= holds;
        lines.push(
            json!({ "kind": "correction", "index": t.i, "valuation": t.valuation, "bound": t.bound, "holds": holds }),
        );
    }
    let text = if common.json {
        format!(
            "{}\n",
            json!({ "field": field_json(&pt.field), "l_star": meta.l_star, "i_star": r.i_star, "rows": lines, "ok": ok })
        )
    } else {
        let mut t = format!("l* = {}, i* = {}\n", meta.l_star, r.i_star);
        for row in &lines {
            t += &format!(
                "{} {}: valuation {} >= {} {}\n",
                row["kind"].as_str().unwrap_or_default(),
                row["index"],
                fmt_val(row["valuation"].as_i64()),
                row["bound"],
                if row["holds"] == true { "ok" } else { "FAILED" }
            );
        }
        t
    };
    Ok((text, if ok { 0 } else { 2 }))
}

fn power_sums(args: &PowerSumArgs) -> Result<(String, i32)> {
    let field = FieldSpec::parse(&args.q)?;
    let max_i = args.max_i.unwrap_or(3 * (field.q() as u64 - 1));
    let sums: Vec<(u64, FqElem)> = (0..=max_i).map(|i| (i, field.power_sum(i))).collect();
    let text = if args.json {
        let rows: Vec<Value> = sums
            .iter()
            .map(|&(i, x)| json!({ "i": i, "sum": field.coeffs(x) }))
            .collect();
        format!("{}\n", json!({ "field": field_json(&field), "sums": rows }))
    } else {
        sums.iter()
            .map(|&(i, x)| format!("{i} {}\n", field.fmt_elem(x)))
            .collect()
    };
    Ok((text, 0))
}
