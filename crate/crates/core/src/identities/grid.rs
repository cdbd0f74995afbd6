//! Grid runner: expands a [`GridConfig`] into jobs, evaluates them
//! (optionally in parallel), and returns reports in a fixed order.
//!
//! Identities indexed by a handful of integers (`q_det_3x3`,
//! `addition_formula`, `cor3_binom_inv`) report once per point. All others
//! sweep the innermost index (`n`) at fixed outer parameters and report once
//! per sweep: verified when no point fails and at least one point was
//! checked, otherwise the first counterexample with its full point.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::{GridConfig, IndexRange, VariantPolicy};
use super::report::{Params, Status, VerifyReport};
use super::{checks, IdentityId, Variant};
use crate::arith::Rational;
use crate::error::{Error, Result};

use IdentityId as Id;

/// How jobs are scheduled. Without the `parallel` feature every mode runs
/// sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
    /// Parallel on a dedicated pool of the given size.
    Threads(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Primary,
    Informational,
}

/// Tally of report statuses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub verified: usize,
    pub counterexample: usize,
    pub skipped_precondition: usize,
}

impl Counts {
    pub fn add(&mut self, status: Status) {
        match status {
            Status::Verified => self.verified += 1,
            Status::Counterexample => self.counterexample += 1,
            Status::SkippedPrecondition => self.skipped_precondition += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.verified + self.counterexample + self.skipped_precondition
    }
}

/// Per-identity tallies, keyed by identity name.
pub type Summary = BTreeMap<String, Counts>;

pub fn summarize(reports: &[VerifyReport]) -> Summary {
    let mut out = Summary::new();
    for r in reports {
        out.entry(r.id.as_str().to_string()).or_default().add(r.status);
    }
    out
}

/// Reports of one run, split into the primary checks (which decide the exit
/// status) and informational ones (printed forms of two-variant identities).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridOutcome {
    pub primary: Vec<VerifyReport>,
    pub informational: Vec<VerifyReport>,
}

impl GridOutcome {
    pub fn primary_counterexamples(&self) -> usize {
        self.primary.iter().filter(|r| r.is_counterexample()).count()
    }

    pub fn informational_counterexamples(&self) -> usize {
        self.informational.iter().filter(|r| r.is_counterexample()).count()
    }

    pub fn all(&self) -> impl Iterator<Item = &VerifyReport> {
        self.primary.iter().chain(self.informational.iter())
    }
}

struct Job {
    id: Id,
    variant: Variant,
    section: Section,
    outer: Params,
    sweep: Option<(&'static str, IndexRange)>,
}

fn sweep_label(sweep: &Option<(&'static str, IndexRange)>) -> String {
    match sweep {
        Some((name, r)) => format!("{name}={r}"),
        None => String::new(),
    }
}

fn int(p: &Params, name: &str) -> i64 {
    p.get(name)
        .and_then(Rational::to_i64)
        .unwrap_or_else(|| panic!("grid point is missing integer {name}"))
}

fn uint(p: &Params, name: &str) -> usize {
    int(p, name) as usize
}

fn uvw(p: &Params) -> (Rational, Rational, Rational) {
    let get = |k: &str| p.get(k).cloned().expect("grid point is missing u, v or w");
    (get("u"), get("v"), get("w"))
}

/// Evaluates one identity at one fully-specified point.
fn eval_point(id: Id, variant: Variant, p: &Params) -> VerifyReport {
    match id {
        Id::QDet3x3 => checks::check_q_det(int(p, "n")),
        Id::AdditionFormula => checks::check_addition(int(p, "m"), int(p, "n")),
        Id::Cor3BinomInv => checks::check_cor3(uint(p, "j"), variant),
        Id::Cor4Cramer => checks::check_cor4_cramer(int(p, "n"), uint(p, "k"), uint(p, "i")),
        Id::ThmBellLstep => checks::check_thm_bell_lstep(uint(p, "l"), uint(p, "n")),
        Id::CorBellLstepInv => checks::check_cor_bell_lstep_inv(uint(p, "l"), uint(p, "n")),
        _ => {
            let (u, v, w) = uvw(p);
            let n = int(p, "n");
            if n < 0 {
                return VerifyReport::skipped(id, variant, p.clone(), "requires n >= 0");
            }
            let nu = n as usize;
            match id {
                Id::Theorem1 => checks::check_theorem1(&u, &v, &w, n, uint(p, "k"), variant),
                Id::Theorem2 => checks::check_theorem2(&u, &v, &w, n, uint(p, "i"), variant),
                Id::ThmDetT2n1 => checks::check_thm_det_t2n1(&u, &v, &w, nu),
                Id::CorDetT2n1 => checks::check_cor_det_t2n1(&u, &v, &w, nu),
                Id::LemmaRel2Step => checks::check_lemma_rel2step(&u, &v, &w, n),
                Id::LemmaGfOdd => checks::check_lemma_gf_odd(&u, &v, &w, nu),
                Id::LemmaGfRecip => checks::check_lemma_gf_recip(&u, &v, &w, nu),
                Id::RRecurrence => checks::check_r_recurrence(&u, &v, &w, nu),
                Id::LemmaCameron => checks::check_lemma_cameron_uvw(&u, &v, &w, nu),
                Id::ThmBellTribo => checks::check_thm_bell_tribo(&u, &v, &w, nu),
                Id::CorBellTriboInv => checks::check_cor_bell_tribo_inv(&u, &v, &w, nu),
                _ => unreachable!("handled above"),
            }
        }
    }
}

/// Identities with a batched evaluator share work across the `n` sweep.
fn eval_batch(id: Id, variant: Variant, outer: &Params, range: IndexRange) -> Option<Vec<VerifyReport>> {
    type Sweep = fn(&Rational, &Rational, &Rational, std::ops::RangeInclusive<usize>) -> Vec<VerifyReport>;
    let batched: Sweep = match id {
        Id::Theorem1 => {
            let (u, v, w) = uvw(outer);
            let k = uint(outer, "k");
            return Some(checks::sweep_theorem1(&u, &v, &w, k, variant, range.start..=range.end));
        }
        Id::ThmDetT2n1 => checks::sweep_thm_det_t2n1,
        Id::CorDetT2n1 => checks::sweep_cor_det_t2n1,
        Id::LemmaGfOdd => checks::sweep_lemma_gf_odd,
        Id::LemmaGfRecip => checks::sweep_lemma_gf_recip,
        Id::RRecurrence => checks::sweep_r_recurrence,
        _ => return None,
    };
    let (u, v, w) = uvw(outer);
    let mut out: Vec<VerifyReport> = (range.start..=range.end.min(-1))
        .map(|n| VerifyReport::skipped(id, variant, outer.clone().with("n", n), "requires n >= 0"))
        .collect();
    if range.end >= 0 {
        out.extend(batched(&u, &v, &w, range.start.max(0) as usize..=range.end as usize));
    }
    Some(out)
}

fn run_job(job: &Job) -> VerifyReport {
    let Some((name, range)) = job.sweep else {
        return eval_point(job.id, job.variant, &job.outer);
    };
    let points: Box<dyn Iterator<Item = VerifyReport>> =
        match eval_batch(job.id, job.variant, &job.outer, range) {
            Some(reports) => Box::new(reports.into_iter()),
            None => Box::new(
                range
                    .iter()
                    .map(move |x| eval_point(job.id, job.variant, &job.outer.clone().with(name, x))),
            ),
        };
    let mut counts = Counts::default();
    let mut first_bad: Option<VerifyReport> = None;
    for rep in points {
        counts.add(rep.status);
        if rep.is_counterexample() {
            first_bad = Some(rep);
            break;
        }
    }
    let tally = format!(
        "{}: {} verified, {} skipped",
        sweep_label(&job.sweep),
        counts.verified,
        counts.skipped_precondition
    );
    if let Some(mut bad) = first_bad {
        bad.note = format!("{}; first counterexample in sweep {}", bad.note, sweep_label(&job.sweep));
        return bad;
    }
    let status = if counts.verified > 0 {
        Status::Verified
    } else {
        Status::SkippedPrecondition
    };
    VerifyReport {
        id: job.id,
        variant: job.variant,
        params: job.outer.clone(),
        status,
        lhs: None,
        rhs: None,
        note: tally,
    }
}

const DEFAULT_COEFFS: std::ops::RangeInclusive<i64> = -2..=3;

fn cube(range: std::ops::RangeInclusive<i64>) -> Vec<[Rational; 3]> {
    let vals: Vec<i64> = range.collect();
    let mut out = Vec::new();
    for &u in &vals {
        for &v in &vals {
            for &w in &vals {
                if (u, v, w) != (0, 0, 0) {
                    out.push([Rational::from(u), Rational::from(v), Rational::from(w)]);
                }
            }
        }
    }
    out
}

fn triples(cfg: &GridConfig, id: Id) -> Vec<[Rational; 3]> {
    let g = &cfg.grid;
    if let Some(list) = &g.uvw {
        return list.clone();
    }
    if g.has_uvw() {
        let fallback: Vec<Rational> = DEFAULT_COEFFS.map(Rational::from).collect();
        let (us, vs, ws) = (
            g.u.clone().unwrap_or_else(|| fallback.clone()),
            g.v.clone().unwrap_or_else(|| fallback.clone()),
            g.w.clone().unwrap_or_else(|| fallback.clone()),
        );
        let mut out = Vec::new();
        for u in &us {
            for v in &vs {
                for w in &ws {
                    out.push([u.clone(), v.clone(), w.clone()]);
                }
            }
        }
        return out;
    }
    match id {
        // The derivation-consistent form holds on the u = 1 slice.
        Id::Theorem2 => {
            let mut out = Vec::new();
            for v in DEFAULT_COEFFS.filter(|&v| v != 0) {
                for w in DEFAULT_COEFFS {
                    out.push([Rational::one(), Rational::from(v), Rational::from(w)]);
                }
            }
            out
        }
        Id::ThmBellTribo | Id::CorBellTriboInv => cube(-1..=2),
        _ => cube(DEFAULT_COEFFS),
    }
}

fn default_n(id: Id) -> IndexRange {
    let (a, b) = match id {
        Id::QDet3x3 => (2, 30),
        Id::AdditionFormula => (1, 25),
        Id::Theorem1 => (0, 40),
        Id::Theorem2 => (0, 24),
        Id::LemmaRel2Step => (6, 40),
        Id::LemmaGfOdd => (0, 31),
        Id::LemmaGfRecip => (1, 31),
        Id::LemmaCameron => (1, 20),
        Id::ThmBellTribo | Id::CorBellTriboInv => (1, 25),
        Id::ThmBellLstep | Id::CorBellLstepInv => (1, 30),
        _ => (1, 40),
    };
    IndexRange { start: a, end: b }
}

fn range_or(r: Option<IndexRange>, a: i64, b: i64) -> IndexRange {
    r.unwrap_or(IndexRange { start: a, end: b })
}

fn variants(id: Id, policy: VariantPolicy) -> Vec<(Variant, Section)> {
    match (id.has_typo_variants(), policy) {
        (false, _) => vec![(Variant::AsStated, Section::Primary)],
        (true, VariantPolicy::AsStatedOnly) => vec![(Variant::AsStated, Section::Informational)],
        (true, VariantPolicy::Default | VariantPolicy::Both) => vec![
            (Variant::DerivationConsistent, Section::Primary),
            (Variant::AsStated, Section::Informational),
        ],
    }
}

fn jobs_for(cfg: &GridConfig, id: Id) -> Vec<Job> {
    let g = &cfg.grid;
    let n = g.n.unwrap_or_else(|| default_n(id));
    let mut outers: Vec<(Params, Option<(&'static str, IndexRange)>)> = Vec::new();
    match id {
        Id::QDet3x3 => {
            for x in n.iter() {
                outers.push((Params::new().with("n", x), None));
            }
        }
        Id::AdditionFormula => {
            for m in range_or(g.m, 1, 25).iter() {
                for x in n.iter() {
                    outers.push((Params::new().with("m", m).with("n", x), None));
                }
            }
        }
        Id::Cor3BinomInv => {
            for j in range_or(g.j, 0, 12).iter() {
                outers.push((Params::new().with("j", j), None));
            }
        }
        Id::Cor4Cramer => {
            for k in range_or(g.k, 0, 8).iter() {
                let Some(is) = range_or(g.i, 0, k).clip(0, k) else { continue };
                let sweep = g.n.unwrap_or(IndexRange { start: 2 * k, end: 2 * k + 6 });
                for i in is.iter() {
                    outers.push((Params::new().with("k", k).with("i", i), Some(("n", sweep))));
                }
            }
        }
        Id::ThmBellLstep | Id::CorBellLstepInv => {
            for l in range_or(g.l, 2, 7).iter() {
                outers.push((Params::new().with("l", l), Some(("n", n))));
            }
        }
        _ => {
            for [u, v, w] in triples(cfg, id) {
                let base = Params::new().with("u", u).with("v", v).with("w", w);
                match id {
                    Id::Theorem1 => {
                        for k in range_or(g.k, 0, 12).iter() {
                            outers.push((base.clone().with("k", k), Some(("n", n))));
                        }
                    }
                    Id::Theorem2 => {
                        for i in range_or(g.i, 0, 8).iter() {
                            outers.push((base.clone().with("i", i), Some(("n", n))));
                        }
                    }
                    _ => outers.push((base, Some(("n", n)))),
                }
            }
        }
    }
    let mut jobs = Vec::new();
    for (variant, section) in variants(id, cfg.variant) {
        for (outer, sweep) in &outers {
            jobs.push(Job {
                id,
                variant,
                section,
                outer: outer.clone(),
                sweep: *sweep,
            });
        }
    }
    jobs
}

fn params_cmp(a: &Params, b: &Params) -> Ordering {
    let ka = a.iter().map(|(k, v)| (k, v));
    let kb = b.iter().map(|(k, v)| (k, v));
    ka.cmp(kb)
}

fn order(a: &Job, b: &Job) -> Ordering {
    a.id.as_str()
        .cmp(b.id.as_str())
        .then(a.variant.cmp(&b.variant))
        .then_with(|| params_cmp(&a.outer, &b.outer))
}

fn execute(jobs: &[Job], exec: Execution) -> Result<Vec<VerifyReport>> {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            Ok(jobs.par_iter().map(run_job).collect())
        }
        #[cfg(feature = "parallel")]
        Execution::Threads(t) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(|| jobs.par_iter().map(run_job).collect()))
        }
        _ => Ok(jobs.iter().map(run_job).collect()),
    }
}

/// Runs the configured grid with the default (parallel) execution.
pub fn run_grid(cfg: &GridConfig) -> Result<GridOutcome> {
    run_grid_with(cfg, Execution::default())
}

/// Runs the configured grid. The result does not depend on `exec`.
pub fn run_grid_with(cfg: &GridConfig, exec: Execution) -> Result<GridOutcome> {
    cfg.validate()?;
    if let Execution::Threads(0) = exec {
        return Err(Error::Config("thread count must be positive".into()));
    }
    let mut jobs: Vec<Job> = cfg.suites.ids().into_iter().flat_map(|id| jobs_for(cfg, id)).collect();
    jobs.sort_by(order);
    let reports = execute(&jobs, exec)?;
    let mut out = GridOutcome::default();
    for (job, rep) in jobs.iter().zip(reports) {
        match job.section {
            Section::Primary => out.primary.push(rep),
            Section::Informational => out.informational.push(rep),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::identities::config::{GridSpec, Suites};

    fn cfg(ids: &[Id], grid: GridSpec) -> GridConfig {
        GridConfig {
            grid,
            ..GridConfig::suites(ids)
        }
    }

    #[test]
    fn q_det_nine_points() {
        let c = cfg(&[Id::QDet3x3], GridSpec { n: Some(IndexRange::new(2, 10).unwrap()), ..Default::default() });
        let out = run_grid(&c).unwrap();
        assert_eq!(out.primary.len(), 9);
        assert!(out.primary.iter().all(|r| r.is_verified()));
        assert!(out.informational.is_empty());
        let ns: Vec<i64> = out.primary.iter().map(|r| int(&r.params, "n")).collect();
        assert_eq!(ns, (2..=10).collect::<Vec<_>>());
    }

    #[test]
    fn theorem1_as_stated_counterexample_is_informational() {
        let grid = GridSpec {
            uvw: Some(vec![[rat(2), rat(1), rat(1)]]),
            ..Default::default()
        };
        let out = run_grid(&cfg(&[Id::Theorem1], grid)).unwrap();
        assert_eq!(out.primary_counterexamples(), 0);
        assert!(out.informational_counterexamples() >= 1);
        let k1 = out
            .informational
            .iter()
            .find(|r| r.params.get("k") == Some(&rat(1)))
            .unwrap();
        assert_eq!(k1.status, Status::Counterexample);
        assert_eq!(k1.params.get("n"), Some(&rat(3)));
        assert_eq!((k1.lhs.clone(), k1.rhs.clone()), (Some(rat(8)), Some(rat(7))));
        assert_eq!(k1.variant, Variant::AsStated);
    }

    #[test]
    fn empty_suite_list_is_empty() {
        let out = run_grid(&GridConfig { suites: Suites::List(vec![]), ..Default::default() }).unwrap();
        assert!(out.primary.is_empty() && out.informational.is_empty());
        let out = run_grid(&cfg(&[Id::ThmDetT2n1], GridSpec { uvw: Some(vec![]), ..Default::default() })).unwrap();
        assert!(out.primary.is_empty());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let grid = GridSpec {
            n: Some(IndexRange::new(1, 8).unwrap()),
            u: Some(vec![rat(-1), rat(2)]),
            v: Some(vec![rat(1)]),
            ..Default::default()
        };
        let c = cfg(&[Id::ThmDetT2n1, Id::Theorem2, Id::LemmaCameron, Id::QDet3x3], grid);
        let a = run_grid_with(&c, Execution::Sequential).unwrap();
        let b = run_grid_with(&c, Execution::Parallel).unwrap();
        let t = run_grid_with(&c, Execution::Threads(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, t);
        assert!(run_grid_with(&c, Execution::Threads(0)).is_err());
    }

    #[test]
    fn order_is_by_id_then_params() {
        let c = cfg(
            &[Id::QDet3x3, Id::AdditionFormula],
            GridSpec {
                n: Some(IndexRange::new(2, 3).unwrap()),
                m: Some(IndexRange::new(1, 2).unwrap()),
                ..Default::default()
            },
        );
        let out = run_grid(&c).unwrap();
        let ids: Vec<&str> = out.primary.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["addition_formula"; 4].into_iter().chain(["q_det_3x3"; 2]).collect::<Vec<_>>());
        let mn: Vec<(i64, i64)> = out.primary[..4].iter().map(|r| (int(&r.params, "m"), int(&r.params, "n"))).collect();
        assert_eq!(mn, [(1, 2), (1, 3), (2, 2), (2, 3)]);
    }

    #[test]
    fn default_theorem2_grid_is_u_one_slice() {
        let c = cfg(&[Id::Theorem2], GridSpec { i: Some(IndexRange::new(0, 3).unwrap()), n: Some(IndexRange::new(0, 12).unwrap()), ..Default::default() });
        let out = run_grid(&c).unwrap();
        assert_eq!(out.primary.len(), 30 * 4);
        assert!(out.primary.iter().all(|r| r.is_verified()), "{:?}", out.primary.iter().find(|r| !r.is_verified()));
    }

    #[test]
    fn cramer_default_sweep_follows_k() {
        let c = cfg(&[Id::Cor4Cramer], GridSpec { k: Some(IndexRange::new(0, 3).unwrap()), ..Default::default() });
        let out = run_grid(&c).unwrap();
        assert_eq!(out.primary.len(), 1 + 2 + 3 + 4);
        assert!(out.primary.iter().all(|r| r.is_verified()));
        assert!(out.primary[0].note.contains("n=0..6"));
    }
}
