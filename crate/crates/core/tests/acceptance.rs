//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach stdout.

use std::process::Command;
use std::time::Instant;

use goss_core::diffop::{apply_l, correction_term, verify_main};
use goss_core::ff::FieldSpec;
use goss_core::laurent::LaurentSeries;
use goss_core::padic::PadicInt;
use goss_core::sfun::{unit_pow_binomial, unit_pow_digits};
use goss_core::zeta::{goss_special_direct, goss_special_recurrence, inner_sum, inner_sum_bound, EvalOptions};
use goss_core::FqElem;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: i64 = 20;
const K: usize = 32;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn field(q: u32) -> FieldSpec {
    FieldSpec::parse(&q.to_string()).unwrap()
}

/// `T`, `T + 1`, `T^2`, `T^2 + T` with their degrees.
fn grid_polys(f: &FieldSpec) -> Vec<(&'static str, LaurentSeries, i64)> {
    let poly = |c: &[i64]| {
        let c: Vec<FqElem> = c.iter().map(|&x| f.from_int(x)).collect();
        LaurentSeries::from_t_poly(f, &c, N)
    };
    vec![
        ("T", poly(&[0, 1]), 1),
        ("T+1", poly(&[1, 1]), 1),
        ("T^2", poly(&[0, 0, 1]), 2),
        ("T^2+T", poly(&[0, 1, 1]), 2),
    ]
}

fn grid_exponents(p: u32, rng: &mut ChaCha8Rng) -> Vec<(String, PadicInt)> {
    let mut out: Vec<(String, PadicInt)> = [0i64, 1, 2, 5, -1]
        .iter()
        .map(|&n| (n.to_string(), PadicInt::from_int(n, p, K)))
        .collect();
    let digits: Vec<u32> = (0..K).map(|_| rng.gen_range(0..p)).collect();
    out.push((format!("random {digits:?}"), PadicInt::from_digits(p, &digits)));
    out
}

/// `<b>^{-n}` for an integer `n` by inversion and repeated multiplication.
fn bracket_int_pow(b: &LaurentSeries, n: i64) -> LaurentSeries {
    let (_, v) = b.sgn_and_val().unwrap();
    let lead = b.coeff(v).unwrap();
    let unit = b.shift(-v).scale(b.field().inv(lead).unwrap());
    let base = if n >= 0 { unit.invert().unwrap() } else { unit.clone() };
    let mut acc = LaurentSeries::one(b.field(), base.prec());
    for _ in 0..n.unsigned_abs() {
        acc = &acc * &base;
    }
    acc
}

fn grid_opts(parallel: bool) -> EvalOptions {
    EvalOptions {
        parallel,
        ..EvalOptions::default()
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases = 0;
    for q in [2u32, 3, 4] {
        let f = field(q);
        for (name, a, _) in grid_polys(&f) {
            for (label, s) in grid_exponents(f.p(), &mut rng) {
                let r =
                    verify_main(&a, &s, N, &grid_opts(true)).map_err(|e| format!("q={q} a={name} s={label}: {e}"))?;
                if !r.is_match() || r.matched_prec != N {
                    return Err(format!(
                        "q={q} a={name} s={label}: {:?} at O(u^{})",
                        r.verdict, r.matched_prec
                    ));
                }
                if let Ok(n) = label.parse::<i64>() {
                    let mut expect = LaurentSeries::zero(&f, N);
                    for alpha in f.elements() {
                        let b = &a + &LaurentSeries::monomial(&f, alpha, 0, N + 4);
                        expect = &expect + &bracket_int_pow(&b, n);
                    }
                    if !r.lhs.agrees_with(&expect.truncate(N)) {
                        return Err(format!(
                            "q={q} a={name} s={n}: differs from the integer-power neighbour sum"
                        ));
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} grid points match to O(u^{N})"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for (q, n_max) in [(2u32, 12u64), (3, 12), (4, 9)] {
        let f = field(q);
        for n in 0..=n_max {
            let direct = goss_special_direct(n, &f, &EvalOptions::default()).map_err(|e| e.to_string())?;
            let rec = goss_special_recurrence(n, &f).map_err(|e| e.to_string())?;
            if direct != rec {
                return Err(format!(
                    "q={q} n={n}: direct {} vs recurrence {}",
                    direct.fmt_terms(),
                    rec.fmt_terms()
                ));
            }
            checked += 1;
        }
    }
    let spot = |q: u32, n: u64| goss_special_recurrence(n, &field(q)).unwrap().fmt_terms();
    for (q, n, want) in [(2, 0, "1"), (3, 0, "1"), (4, 0, "1"), (2, 1, "0"), (3, 2, "0")] {
        if spot(q, n) != want {
            return Err(format!("zeta(-{n}) over F_{q} is {}, expected {want}", spot(q, n)));
        }
    }
    Ok(format!("{checked} values agree, spot values hold"))
}

fn random_one_unit(f: &FieldSpec, prec: i64, rng: &mut ChaCha8Rng) -> LaurentSeries {
    let mut terms = vec![(0, FqElem::ONE)];
    for j in 1..prec {
        terms.push((j, f.from_index(rng.gen_range(0..f.q())).unwrap()));
    }
    LaurentSeries::from_terms(f, &terms, prec)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for q in [2u32, 3, 4] {
        let f = field(q);
        let p = f.p();
        for case in 0..200 {
            let prec = rng.gen_range(2..16);
            let g = random_one_unit(&f, prec, &mut rng);
            let digits: Vec<u32> = (0..K).map(|_| rng.gen_range(0..p)).collect();
            let s = PadicInt::from_digits(p, &digits);
            let a = unit_pow_binomial(&g, &s).map_err(|e| e.to_string())?;
            let b = unit_pow_digits(&g, &s).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("q={q} case {case}: binomial and digit routes differ"));
            }
        }
        for n in -8i64..=8 {
            let g = random_one_unit(&f, 12, &mut rng);
            let base = if n < 0 { g.invert().unwrap() } else { g.clone() };
            let mut expect = LaurentSeries::one(&f, 12);
            for _ in 0..n.unsigned_abs() {
                expect = &expect * &base;
            }
            let s = PadicInt::from_int(n, p, K);
            if unit_pow_binomial(&g, &s).unwrap() != expect || unit_pow_digits(&g, &s).unwrap() != expect {
                return Err(format!("q={q} n={n}: differs from repeated multiplication"));
            }
        }
    }
    Ok("600 random pairs and |n| <= 8 agree".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut rows = 0;
    for q in [2u32, 3, 4] {
        let f = field(q);
        for (name, a, m) in grid_polys(&f) {
            for (label, s) in grid_exponents(f.p(), &mut rng) {
                let ctx = format!("q={q} a={name} s={label}");
                let base = apply_l(&a, &s, N, &grid_opts(true)).map_err(|e| format!("{ctx}: {e}"))?;
                for l in 0..=base.l_star {
                    let v = inner_sum(&a, &s, l, N, &grid_opts(true)).map_err(|e| format!("{ctx}: {e}"))?;
                    let bound = inner_sum_bound(q, m, l);
                    if v.val().is_some_and(|v| v < bound) {
                        return Err(format!("{ctx} l={l}: inner valuation {:?} < {bound}", v.val()));
                    }
                    rows += 1;
                }
                for t in &base.expansion.terms {
                    let (c, _) =
                        correction_term(&a, &s, t.i, N, &grid_opts(true)).map_err(|e| format!("{ctx}: {e}"))?;
                    if c.val().is_some_and(|v| v < (m + 1) * t.i as i64) {
                        return Err(format!(
                            "{ctx} i={}: correction valuation {:?} < {}",
                            t.i,
                            c.val(),
                            (m + 1) * t.i as i64
                        ));
                    }
                    rows += 1;
                }
                let slack = EvalOptions {
                    l_slack: 1,
                    i_slack: 1,
                    ..grid_opts(true)
                };
                let wider = apply_l(&a, &s, N, &slack).map_err(|e| format!("{ctx}: {e}"))?;
                if let Some(j) = wider.value.first_difference(&base.value) {
                    return Err(format!("{ctx}: one more step in l and i changes u^{j}"));
                }
            }
        }
    }
    Ok(format!("{rows} valuation bounds hold, extra l/i steps change nothing"))
}

fn criterion_5() -> Outcome {
    for q in [2u32, 3, 4, 5, 8, 9] {
        let f = field(q);
        let minus_one = f.neg(f.one());
        for i in 0..=3 * (q as u64 - 1) {
            let mut brute = f.zero();
            for x in f.elements() {
                let mut power = f.one();
                for _ in 0..i {
                    power = f.mul(power, x);
                }
                brute = f.add(brute, power);
            }
            let rule = if i > 0 && i % (q as u64 - 1) == 0 {
                minus_one
            } else {
                f.zero()
            };
            if f.power_sum(i) != rule || brute != rule {
                return Err(format!("q={q} i={i}"));
            }
        }
    }
    Ok("q in {2,3,4,5,8,9}, i <= 3(q-1)".into())
}

fn big_binom(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

fn criterion_6() -> Outcome {
    for p in [2u32, 3, 5] {
        for n in 0..=50u64 {
            let s = PadicInt::from_int(n as i64, p, 8);
            for j in 0..=n {
                let exact = (big_binom(n, j) % BigUint::from(p))
                    .to_u32_digits()
                    .first()
                    .copied()
                    .unwrap_or(0);
                if s.binom_mod_p(j).unwrap() != exact {
                    return Err(format!("p={p} binom({n},{j})"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..500 {
        let p = [2u32, 3, 5][case % 3];
        let k = 10;
        let draw =
            |rng: &mut ChaCha8Rng| PadicInt::from_digits(p, &(0..k).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>());
        let s = draw(&mut rng);
        let t = draw(&mut rng);
        let n = rng.gen_range(0..(p as u64).pow(4));
        // digits of s above those of n do not matter
        let used = (0..).take_while(|&d| (p as u64).pow(d) <= n.max(1)).count();
        let mut noisy = s.digits().to_vec();
        for d in noisy.iter_mut().skip(used.max(1)) {
            *d = rng.gen_range(0..p);
        }
        let noisy = PadicInt::from_digits(p, &noisy);
        if s.binom_mod_p(n).unwrap() != noisy.binom_mod_p(n).unwrap() {
            return Err(format!("locality p={p} n={n} s={s}"));
        }
        let lhs = s.add(&t).binom_mod_p(n).unwrap();
        let rhs = (0..=n).fold(0u32, |acc, k| {
            (acc + s.binom_mod_p(k).unwrap() * t.binom_mod_p(n - k).unwrap()) % p
        });
        if lhs != rhs {
            return Err(format!("Vandermonde p={p} n={n} s={s} t={t}"));
        }
    }
    Ok("n <= 50 exact, 500 locality and Vandermonde cases".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2u32, 3, 4] {
        let f = field(q);
        let p = f.p();
        for case in 0..100 {
            let kk = 1 + case % 3;
            let pk = (p as i64).pow(kk as u32);
            let g = random_one_unit(&f, pk + 4, &mut rng);
            let low: Vec<u32> = (0..kk).map(|_| rng.gen_range(0..p)).collect();
            let with_high = |rng: &mut ChaCha8Rng| {
                let mut d = low.clone();
                d.extend((kk..K).map(|_| rng.gen_range(0..p)));
                PadicInt::from_digits(p, &d)
            };
            let s = with_high(&mut rng);
            let t = with_high(&mut rng);
            let a = unit_pow_binomial(&g, &s).map_err(|e| e.to_string())?;
            let b = unit_pow_binomial(&g, &t).map_err(|e| e.to_string())?;
            if a.first_difference(&b).is_some_and(|j| j < pk) {
                return Err(format!("q={q} K={kk}: g^s and g^s' differ below u^{pk}"));
            }
        }
    }
    Ok("300 cases, K in {1,2,3}".into())
}

fn goss(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_goss"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn criterion_8() -> Outcome {
    let points: [&[&str]; 3] = [
        &["--q", "2", "--a", "T", "--s", "1"],
        &["--q", "3", "--a", "T^2+T", "--s", "random", "--seed", "11"],
        &["--q", "4", "--a", "T+1", "--s", "-1"],
    ];
    for pt in points {
        let base: Vec<&str> = ["verify", "--json", "--prec", "20"]
            .iter()
            .chain(pt.iter())
            .copied()
            .collect();
        let reference = goss(&base)?;
        for extra in [&[][..], &[][..], &["--jobs", "1"][..], &["--jobs", "4"][..]] {
            let args: Vec<&str> = base.iter().chain(extra.iter()).copied().collect();
            if goss(&args)? != reference {
                return Err(format!("{args:?} output differs"));
            }
        }
    }
    Ok("3 points x (3 runs, sequential, 4 threads) byte-identical".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("main difference equation", criterion_1),
        ("special values", criterion_2),
        ("exponentiation oracles", criterion_3),
        ("convergence bounds", criterion_4),
        ("character sums", criterion_5),
        ("Lucas reduction", criterion_6),
        ("continuity of exponentiation", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
