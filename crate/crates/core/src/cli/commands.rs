use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::report::ReportDocument;
use super::{
    Cli, DetArgs, DetRep, SeqArgs, SeriesArgs, SeriesOp, SpecArgs, VerifyArgs, EXIT_COUNTEREXAMPLE,
    EXIT_OK,
};
use crate::arith::{det_hessenberg, HessenbergColumns, Rational};
use crate::combinat::bell_via_det;
use crate::error::{Error, Result};
use crate::identities::{run_grid_with, Execution, GridConfig, OutputFormat, RSequenceState};
use crate::sequences::{
    classical_tribonacci, make_lstep, make_lstep_companion, make_tribonacci, padovan,
    tribonacci_lucas, RecurrenceSpec,
};
use crate::series::{
    cameron_forward, cameron_inverse, gf_generalized, gf_lstep, gf_odd, series_exp, series_log,
    series_recip, SeriesTrunc,
};

/// Text produced by a command, with the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emission {
    pub text: String,
    pub code: i32,
    /// Destination requested by a configuration file, used when no
    /// `--output` flag is given.
    pub path: Option<PathBuf>,
}

impl Emission {
    fn ok(text: String) -> Self {
        Emission {
            text,
            code: EXIT_OK,
            path: None,
        }
    }

    pub fn write(&self, output: Option<&Path>) -> Result<()> {
        match output.or(self.path.as_deref()) {
            Some(p) => fs::write(p, &self.text)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(self.text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Error::Config(format!("cannot write output: {e}")))
            }
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

fn parse_triple(text: &str) -> Result<[Rational; 3]> {
    let v = parse_list(text)?;
    <[Rational; 3]>::try_from(v)
        .map_err(|v| Error::Config(format!("expected three values u,v,w, got {}", v.len())))
}

fn parse_preset(name: &str) -> Result<RecurrenceSpec> {
    let with_l = |rest: &str| -> Result<usize> {
        rest.parse()
            .map_err(|_| Error::Config(format!("bad step count in preset {name:?}")))
    };
    match name {
        "tribonacci" => Ok(classical_tribonacci()),
        "tribonacci-lucas" => Ok(tribonacci_lucas()),
        "padovan" => Ok(padovan()),
        _ => {
            if let Some(rest) = name.strip_prefix("lstep-companion:") {
                make_lstep_companion(with_l(rest)?)
            } else if let Some(rest) = name.strip_prefix("lstep:") {
                make_lstep(with_l(rest)?)
            } else {
                Err(Error::Config(format!("unknown preset {name:?}")))
            }
        }
    }
}

fn spec_from(args: &SpecArgs) -> Result<RecurrenceSpec> {
    match (&args.preset, &args.coeffs, &args.init) {
        (Some(p), _, _) => parse_preset(p),
        (None, Some(c), Some(i)) => RecurrenceSpec::new(parse_list(c)?, parse_list(i)?),
        _ => Err(Error::Config("give --preset or both --coeffs and --init".into())),
    }
}

fn render_rows<T: Serialize>(
    rows: &[T],
    format: OutputFormat,
    header: &[&str],
    cells: impl Fn(&T) -> Vec<String>,
) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for r in rows {
                w.write_record(cells(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        OutputFormat::Human => {
            let mut out = String::new();
            for r in rows {
                let line: Vec<String> = header
                    .iter()
                    .zip(cells(r))
                    .map(|(h, c)| format!("{h}={c}"))
                    .collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Serialize)]
struct TermRow {
    n: i64,
    value: Rational,
}

/// `seq`: terms `from..=to` of a preset or explicit recurrence.
pub fn cmd_seq(args: &SeqArgs, format: OutputFormat) -> Result<Emission> {
    let spec = spec_from(&args.spec)?;
    if args.from > args.to {
        return Err(Error::Config(format!("empty range {}..{}", args.from, args.to)));
    }
    let values = spec.handle().terms(args.from, args.to)?;
    let rows: Vec<TermRow> = (args.from..=args.to)
        .zip(values)
        .map(|(n, value)| TermRow { n, value })
        .collect();
    Ok(Emission::ok(render_rows(&rows, format, &["n", "value"], |r| {
        vec![r.n.to_string(), r.value.to_string()]
    })))
}

#[derive(Serialize)]
struct DetRow {
    n: usize,
    det: Rational,
    expected: Rational,
    #[serde(rename = "match")]
    matches: bool,
}

fn det_values(args: &DetArgs) -> Result<(Rational, Rational)> {
    let n = args.n;
    if n == 0 {
        return Err(Error::Domain("--n must be at least 1".into()));
    }
    let [u, v, w] = parse_triple(&args.uvw)?;
    let odd = || make_tribonacci(u.clone(), v.clone(), w.clone(), 0.into(), 1.into(), 1.into());
    let ones = vec![Rational::one(); n - 1];
    match args.rep {
        DetRep::T2n1 => {
            let expected = odd()?.handle().term(2 * n as i64 + 1)?;
            let mut rs = RSequenceState::new(u.clone(), v.clone(), w.clone());
            let band: Vec<Rational> = (1..=n).map(|m| Rational::sign_pow(m as i64) * rs.r(m)).collect();
            let det = det_hessenberg(&HessenbergColumns::toeplitz(&band, ones));
            Ok((det, expected))
        }
        DetRep::CorT2n1 => {
            let mut t = odd()?.handle();
            let band: Vec<Rational> = (1..=n)
                .map(|m| t.term(2 * m as i64 + 1))
                .collect::<Result<_>>()?;
            let det = det_hessenberg(&HessenbergColumns::toeplitz(&band, ones));
            let mut rs = RSequenceState::new(u, v, w);
            Ok((det, Rational::sign_pow(n as i64) * rs.r(n)))
        }
        DetRep::BellTribo => {
            let a = make_tribonacci(
                u.clone(),
                v.clone(),
                w.clone(),
                3.into(),
                u.clone(),
                &u * &u + Rational::from(2) * &v,
            )?;
            let b = make_tribonacci(u.clone(), v, w, 0.into(), 1.into(), u)?;
            let a_vec = a.handle().terms(1, n as i64)?;
            Ok((bell_via_det(&a_vec, n)?, b.handle().term(n as i64 + 1)?))
        }
        DetRep::BellLstep => {
            let l = args
                .l
                .ok_or_else(|| Error::Config("--rep bell-lstep needs --l".into()))?;
            let c = make_lstep_companion(l)?.handle().terms(1, n as i64)?;
            let f = make_lstep(l)?.handle().term(n as i64 + 1)?;
            Ok((bell_via_det(&c, n)?, f))
        }
    }
}

/// `det`: a determinant representation next to the value it should equal.
pub fn cmd_det(args: &DetArgs, format: OutputFormat) -> Result<Emission> {
    let (det, expected) = det_values(args)?;
    let matches = det == expected;
    let row = DetRow {
        n: args.n,
        det,
        expected,
        matches,
    };
    let text = match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&row).expect("row serializes");
            s.push('\n');
            s
        }
        _ => render_rows(std::slice::from_ref(&row), format, &["n", "det", "expected", "match"], |r| {
            vec![r.n.to_string(), r.det.to_string(), r.expected.to_string(), r.matches.to_string()]
        }),
    };
    Ok(Emission {
        code: if matches { EXIT_OK } else { EXIT_COUNTEREXAMPLE },
        ..Emission::ok(text)
    })
}

/// `series`: generating functions and series transforms.
pub fn cmd_series(args: &SeriesArgs, format: OutputFormat) -> Result<Emission> {
    let input = || -> Result<SeriesTrunc> {
        let c = args
            .coeffs
            .as_deref()
            .ok_or_else(|| Error::Config("this op needs --coeffs".into()))?;
        let v = parse_list(c)?;
        let order = args.order.unwrap_or(v.len());
        Ok(SeriesTrunc::with_order(v, order))
    };
    let order_or = |d: usize| args.order.unwrap_or(d);
    if args.order == Some(0) {
        return Err(Error::Domain("--order must be at least 1".into()));
    }
    let out = match args.op {
        SeriesOp::Gf => {
            let spec = spec_from(&SpecArgs {
                preset: args.preset.clone(),
                coeffs: args.coeffs.clone(),
                init: args.init.clone(),
            })?;
            let order = order_or(10);
            if spec.order() == 3 {
                gf_generalized(&spec, order)?
            } else if spec.coeffs().iter().all(Rational::is_one) {
                gf_lstep(&spec, order)?
            } else {
                SeriesTrunc::new(spec.handle().terms(0, order as i64 - 1)?)
            }
        }
        SeriesOp::GfOdd => {
            let uvw = args
                .uvw
                .as_deref()
                .ok_or_else(|| Error::Config("--op gf-odd needs --uvw".into()))?;
            let [u, v, w] = parse_triple(uvw)?;
            gf_odd(&u, &v, &w, order_or(10))
        }
        SeriesOp::GfLstep => {
            let l = args
                .l
                .ok_or_else(|| Error::Config("--op gf-lstep needs --l".into()))?;
            gf_lstep(&make_lstep(l)?, order_or(10))?
        }
        SeriesOp::Recip => series_recip(&input()?)?,
        SeriesOp::Exp => series_exp(&input()?)?,
        SeriesOp::Log => series_log(&input()?)?,
        SeriesOp::Cameron => cameron_forward(&input()?),
        SeriesOp::CameronInv => cameron_inverse(&input()?),
    };
    let coeffs = out.into_coeffs();
    let text = match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(&coeffs).expect("coefficients serialize");
            s.push('\n');
            s
        }
        _ => {
            let rows: Vec<TermRow> = coeffs
                .into_iter()
                .enumerate()
                .map(|(n, value)| TermRow { n: n as i64, value })
                .collect();
            render_rows(&rows, format, &["n", "value"], |r| {
                vec![r.n.to_string(), r.value.to_string()]
            })
        }
    };
    Ok(Emission::ok(text))
}

fn triples(text: &str) -> Result<Vec<[Rational; 3]>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_triple)
        .collect()
}

/// Merges a configuration file (if any) with flag overrides.
pub fn resolve_config(args: &VerifyArgs, cli_format: Option<OutputFormat>) -> Result<GridConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            GridConfig::from_json(&text)?
        }
        None => GridConfig::default(),
    };
    if let Some(s) = &args.suites {
        cfg.suites = s.clone();
    }
    if let Some(v) = args.variant {
        cfg.variant = v;
    }
    let g = &mut cfg.grid;
    if let Some(t) = &args.grid_uvw {
        g.uvw = Some(triples(t)?);
    }
    for (flag, slot) in [(&args.grid_u, &mut g.u), (&args.grid_v, &mut g.v), (&args.grid_w, &mut g.w)] {
        if let Some(t) = flag {
            *slot = Some(parse_list(t)?);
        }
    }
    for (flag, slot) in [
        (args.n, &mut g.n),
        (args.k, &mut g.k),
        (args.i, &mut g.i),
        (args.m, &mut g.m),
        (args.j, &mut g.j),
        (args.l, &mut g.l),
    ] {
        if flag.is_some() {
            *slot = flag;
        }
    }
    if let Some(f) = cli_format {
        cfg.format = f;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// `verify`: run the grid and emit a [`ReportDocument`].
pub fn cmd_verify(args: &VerifyArgs, cli: &Cli) -> Result<Emission> {
    let cfg = resolve_config(args, cli.format)?;
    let exec = match cli.threads {
        None => Execution::Parallel,
        Some(0) => return Err(Error::Config("--threads must be positive".into())),
        Some(1) => Execution::Sequential,
        Some(t) => Execution::Threads(t),
    };
    let outcome = run_grid_with(&cfg, exec)?;
    let failing = outcome.primary_counterexamples() > 0
        || (cli.strict_as_stated && outcome.informational_counterexamples() > 0);
    let format = cfg.format;
    let path = cfg.output.clone().map(PathBuf::from);
    let doc = ReportDocument::new(cfg, outcome);
    let text = match format {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Csv => doc.to_csv()?,
        OutputFormat::Human => doc.to_human(),
    };
    Ok(Emission {
        text,
        code: if failing { EXIT_COUNTEREXAMPLE } else { EXIT_OK },
        path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        assert!(parse_preset("lstep:4").is_ok());
        assert!(parse_preset("lstep-companion:3").is_ok());
        assert!(parse_preset("lstep:x").is_err());
        assert!(parse_preset("fibonacci").is_err());
    }

    #[test]
    fn triples_parse() {
        let t = triples("2,1,1; -1,1/2,3").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1][1], Rational::new(1, 2).unwrap());
        assert!(triples("1,2").is_err());
    }
}
