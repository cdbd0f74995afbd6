//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact rational equality (tolerance zero); the time
//! bounds are wall-clock limits on the criterion's own work.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use tribonacci::arith::{det_dense, frac, mat_mul, rat, DenseMatrix, Rational};
use tribonacci::cli::ReportDocument;
use tribonacci::combinat::{bell_complete, det_pascal_rowrev, pascal_rowrev, pascal_rowrev_inv, PascalParam};
use tribonacci::identities::{
    check_addition, check_cor4_cramer, check_cor_bell_tribo_inv, check_lemma_rel2step, check_q_det,
    check_thm_bell_lstep, check_thm_bell_tribo, r_sequence, sweep_cor_det_t2n1, sweep_lemma_gf_odd,
    sweep_lemma_gf_recip, sweep_thm_det_t2n1, IdentityId, Variant, VerifyReport,
};
use tribonacci::sequences::{make_lstep, make_lstep_companion, tribonacci_lucas, RecurrenceSpec};
use tribonacci::series::{cameron_forward, cameron_inverse, gf_generalized, SeriesTrunc};

type Outcome = Result<String, String>;

fn cube(lo: i64, hi: i64) -> Vec<(Rational, Rational, Rational)> {
    let mut out = Vec::new();
    for u in lo..=hi {
        for v in lo..=hi {
            for w in lo..=hi {
                if (u, v, w) != (0, 0, 0) {
                    out.push((rat(u), rat(v), rat(w)));
                }
            }
        }
    }
    out
}

fn all_verified(label: &str, reports: impl IntoIterator<Item = VerifyReport>) -> Result<usize, String> {
    let mut count = 0;
    for r in reports {
        if !r.is_verified() {
            return Err(format!("{label}: {} {:?} at {}", r.id, r.status, params_text(&r)));
        }
        count += 1;
    }
    Ok(count)
}

fn params_text(r: &VerifyReport) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Outcome {
    let n = all_verified("q_det", (2..=30).map(check_q_det))?;
    Ok(format!("{n} points"))
}

fn c2() -> Outcome {
    let one = rat(1);
    for n in 1..=40usize {
        let want = match n {
            1 => rat(-2),
            2 => rat(-3),
            _ => rat(-4),
        };
        let got = r_sequence(&one, &one, &one, n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("r_{n} = {got}, want {want}"))?;
    }
    for r in sweep_cor_det_t2n1(&one, &one, &one, 1..=40) {
        let n = r.params.get("n").and_then(Rational::to_i64).unwrap_or(0);
        let want = match n {
            1 => rat(2),
            2 => rat(-3),
            _ => rat(4) * Rational::sign_pow(n - 1),
        };
        ensure(r.is_verified() && r.lhs.as_ref() == Some(&want), || {
            format!("det at n={n}: {:?}, want {want}", r.lhs)
        })?;
    }
    Ok("r_n and 40 determinants".into())
}

fn c3() -> Outcome {
    let mut n = 0;
    for (u, v, w) in cube(-2, 3) {
        n += all_verified("thm_det_t2n1", sweep_thm_det_t2n1(&u, &v, &w, 1..=40))?;
    }
    Ok(format!("{n} points incl. u=1"))
}

fn c4() -> Outcome {
    let mut n = 0;
    for (u, v, w) in cube(-2, 3) {
        n += all_verified("cor_det_t2n1", sweep_cor_det_t2n1(&u, &v, &w, 1..=40))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..50 {
        let coeffs: Vec<Rational> = std::iter::once(Rational::zero())
            .chain((1..=20).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))))
            .collect();
        let x = SeriesTrunc::new(coeffs);
        let back = cameron_inverse(&cameron_forward(&x));
        ensure(back == x, || format!("round trip failed on trial {trial}"))?;
    }
    Ok(format!("{n} points, 50 round trips"))
}

fn c5() -> Outcome {
    const EXPECTED: &str = "3, 1, 3, 7, 11, 21, 39, 71, 131, 241, 443, 815, 1499, 2757, 5071";
    let render = |spec: RecurrenceSpec| -> Result<String, String> {
        let terms = spec.handle().terms(0, 14).map_err(|e| e.to_string())?;
        Ok(terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
    };
    let lucas = render(tribonacci_lucas())?;
    ensure(lucas == EXPECTED, || format!("preset gave {lucas}"))?;
    let companion = render(make_lstep_companion(3).map_err(|e| e.to_string())?)?;
    ensure(companion == EXPECTED, || format!("companion gave {companion}"))?;
    Ok("15 terms, both constructions".into())
}

fn c6() -> Outcome {
    let mut n = 0;
    for (u, v, w) in cube(-1, 2) {
        n += all_verified("thm_bell_tribo", (1..=25).map(|k| check_thm_bell_tribo(&u, &v, &w, k)))?;
        n += all_verified("cor_bell_tribo_inv", (1..=25).map(|k| check_cor_bell_tribo_inv(&u, &v, &w, k)))?;
    }
    Ok(format!("{n} points"))
}

fn c7() -> Outcome {
    let mut n = 0;
    for l in 2..=7 {
        n += all_verified("thm_bell_lstep", (1..=30).map(|k| check_thm_bell_lstep(l, k)))?;
    }
    let y3 = bell_complete(&[rat(1), rat(3), rat(8)], 3).map_err(|e| e.to_string())?;
    let f4 = make_lstep(2).map_err(|e| e.to_string())?.handle().term(4).map_err(|e| e.to_string())?;
    ensure(y3 == rat(18) && f4 == rat(3) && &y3 / &rat(6) == f4, || format!("Y_3(1,3,8) = {y3}, F_4 = {f4}"))?;
    Ok(format!("{n} points, F_4 = Y_3(1,3,8)/6 = 3"))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let draw = |rng: &mut ChaCha8Rng| frac(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    for trial in 0..25 {
        let coeffs = vec![draw(&mut rng), draw(&mut rng), draw(&mut rng)];
        let initials = vec![draw(&mut rng), draw(&mut rng), draw(&mut rng)];
        let spec = RecurrenceSpec::new(coeffs, initials).map_err(|e| e.to_string())?;
        let gf = gf_generalized(&spec, 64).map_err(|e| e.to_string())?;
        let terms = spec.handle().terms(0, 63).map_err(|e| e.to_string())?;
        ensure(gf.coeffs()[..64] == terms[..], || format!("gf mismatch on trial {trial}"))?;
    }
    let mut n = 0;
    for (u, v, w) in cube(-2, 3) {
        n += all_verified("lemma_gf_odd", sweep_lemma_gf_odd(&u, &v, &w, 0..=31))?;
        n += all_verified("lemma_gf_recip", sweep_lemma_gf_recip(&u, &v, &w, 1..=32))?;
    }
    Ok(format!("25 random specs x 64 coefficients, {n} grid points"))
}

fn c9() -> Outcome {
    let alphas = [rat(1), rat(-1), rat(2), frac(1, 2), frac(3, 7)];
    for k in 0..=30 {
        for alpha in &alphas {
            let p = PascalParam::new(k, alpha.clone());
            let prod = mat_mul(&pascal_rowrev(&p), &pascal_rowrev_inv(&p).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(prod == DenseMatrix::identity(k + 1), || format!("P*P^-1 != I at k={k}, alpha={alpha}"))?;
        }
    }
    for k in 0..=12 {
        let det = det_dense(&pascal_rowrev(&PascalParam::new(k, rat(1)))).map_err(|e| e.to_string())?;
        let sign = Rational::sign_pow((k * (k + 1) / 2) as i64);
        ensure(det == sign && det == Rational::from_integer(det_pascal_rowrev(k)), || {
            format!("det at k={k} is {det}")
        })?;
    }
    let mut n = 0;
    for k in 0..=8usize {
        for i in 0..=k {
            let lo = 2 * k as i64;
            n += all_verified("cor4_cramer", (lo..=lo + 6).map(|m| check_cor4_cramer(m, k, i)))?;
        }
    }
    Ok(format!("inverse k<=30, det k<=12, {n} Cramer points"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tribonacci"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn c10() -> Outcome {
    let out = run(&["verify"]);
    ensure(out.status.code() == Some(0), || format!("default run exited {:?}", out.status.code()))?;
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let at = |r: &VerifyReport, name: &str, value: i64| r.params.get(name) == Some(&rat(value));
    let hit = doc.informational.iter().find(|r| {
        r.id == IdentityId::Theorem1
            && r.variant == Variant::AsStated
            && r.is_counterexample()
            && at(r, "u", 2)
            && at(r, "v", 1)
            && at(r, "w", 1)
            && at(r, "n", 3)
            && at(r, "k", 1)
    });
    let hit = hit.ok_or("no as_stated counterexample at (2,1,1), n=3, k=1")?;
    ensure(hit.lhs == Some(rat(8)) && hit.rhs == Some(rat(7)), || {
        format!("counterexample values {:?} vs {:?}", hit.lhs, hit.rhs)
    })?;
    let primary: Vec<_> = doc
        .reports
        .iter()
        .filter(|r| r.id == IdentityId::Theorem1 && r.variant == Variant::DerivationConsistent)
        .collect();
    ensure(!primary.is_empty() && primary.iter().all(|r| r.is_verified()), || {
        "derivation_consistent theorem1 not verified everywhere".into()
    })?;
    Ok(format!("exit 0, T_4 = 8 vs 7, {} derivation_consistent sweeps verified", primary.len()))
}

fn c11() -> Outcome {
    let mut n = 0;
    for (u, v, w) in cube(-2, 3) {
        n += all_verified("lemma_rel_2step", (6..=40).map(|k| check_lemma_rel2step(&u, &v, &w, k)))?;
    }
    for m in 1..=25 {
        n += all_verified("addition_formula", (1..=25).map(|k| check_addition(m, k)))?;
    }
    Ok(format!("{n} points"))
}

fn docs(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(name)
}

fn load(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(docs(name)).unwrap()).unwrap()
}

fn c12() -> Outcome {
    let registry = jsonschema::Registry::new()
        .add("urn:tribonacci:config-schema", load("config.schema.json"))
        .and_then(|r| r.add("urn:tribonacci:report-schema", load("report.schema.json")))
        .and_then(|r| r.prepare())
        .map_err(|e| e.to_string())?;
    let validator = jsonschema::options()
        .with_registry(&registry)
        .build(&load("report.schema.json"))
        .map_err(|e| e.to_string())?;

    let cases: [(&[&str], i32); 3] = [
        (&["verify", "--suites", "q_det_3x3", "--n", "2..10"], 0),
        (&["verify", "--suites", "theorem1", "--variant", "both", "--grid-uvw", "2,1,1"], 0),
        (&["verify", "--config", "missing.json"], 2),
    ];
    for (args, code) in cases {
        let first = run(args);
        ensure(first.status.code() == Some(code), || {
            format!("{args:?} exited {:?}, want {code}", first.status.code())
        })?;
        if code != 0 {
            continue;
        }
        let doc: Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
        if let Some(err) = validator.iter_errors(&doc).next() {
            return Err(format!("{args:?}: schema error {err} at {}", err.instance_path()));
        }
        let second = run(args);
        let threaded = run(&[&["--threads", "1"], args].concat());
        ensure(first.stdout == second.stdout && first.stdout == threaded.stdout, || {
            format!("{args:?}: output differs between runs")
        })?;
    }
    Ok("exit codes 0/0/2, schema-valid, byte-identical".into())
}

fn main() {
    let criteria: [(u32, Option<u64>, fn() -> Outcome); 12] = [
        (1, Some(1), c1),
        (2, Some(1), c2),
        (3, Some(30), c3),
        (4, Some(30), c4),
        (5, None, c5),
        (6, Some(60), c6),
        (7, Some(30), c7),
        (8, Some(10), c8),
        (9, Some(10), c9),
        (10, None, c10),
        (11, Some(5), c11),
        (12, None, c12),
    ];
    let mut failed = 0;
    for (id, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(secs) => {
                Err(format!("took {:.2}s, limit {secs}s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS ({detail}; {:.2}s)", elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL ({detail}; {:.2}s)", elapsed.as_secs_f64())
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
