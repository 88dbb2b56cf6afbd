//! Prime sweeps over the identity registry and the JSONL report stream.
//!
//! The work unit is one (identity, prime) pair. All identities selected for
//! a prime share one [`Session`] built at the largest precision any of them
//! needs; primes run in parallel when the `parallel` feature is on. Reports
//! come back ordered by registry position, then prime, then sweep point, so
//! identical runs give identical output.

mod registry;

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::gamma::Session;
use crate::modarith::pow_checked;
use crate::qseries::Newforms;
use crate::{odd_primes, Error, Result};

pub use registry::{
    certify, index_of, jacobi_pairs, Case, Identity, Kind, DEFAULT_D_PAIRS, JACOBI_EXHAUSTIVE_MAX,
    JACOBI_RANDOM_PAIRS, REGISTRY, TRUNC_PREC,
};
use registry::{Ctx, Outcome, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Lowprec,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Lowprec => "lowprec",
        })
    }
}

/// One line of the JSONL stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub p: u64,
    pub case: Case,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub prec: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub p_min: u64,
    pub p_max: u64,
    /// Target exponent `k` for exact identities.
    pub prec: u32,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub d_pairs: Vec<(u64, u64)>,
    /// Directory for cached newform expansions.
    pub cache_dir: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn new(p_min: u64, p_max: u64, prec: u32) -> VerifyConfig {
        VerifyConfig {
            p_min,
            p_max,
            prec,
            jobs: None,
            d_pairs: DEFAULT_D_PAIRS.to_vec(),
            cache_dir: None,
        }
    }

    /// Odd primes 3..=97 at precision 4.
    pub fn deep() -> VerifyConfig {
        VerifyConfig::new(3, 97, 4)
    }

    fn validate(&self, primes: &[u64]) -> Result<()> {
        if self.prec == 0 {
            return Err(Error::PrecisionExhausted);
        }
        for &(d1, d2) in &self.d_pairs {
            if d1 < 2 || d2 < 2 {
                return Err(Error::Parse(format!(
                    "d-pair ({d1}, {d2}) needs both entries >= 2"
                )));
            }
        }
        if let Some(&p) = primes.last() {
            // room for one extra digit and the retry
            let k = self.prec.max(TRUNC_PREC) + 3;
            pow_checked(p, k).ok_or(Error::RangeOverflow { p, k })?;
        }
        Ok(())
    }
}

/// Counts for one summary row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub lowprec: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skip => self.skip += 1,
            Status::Lowprec => self.lowprec += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skip + self.lowprec
    }
}

/// Per-identity counts in registry order; `dmc-level25-f` is split by
/// residue class of `p` mod 5.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows: Vec<(String, Counts)>,
}

impl Summary {
    pub fn from_reports(reports: &[VerificationReport]) -> Summary {
        let mut rows: Vec<(String, Counts)> = Vec::new();
        for r in reports {
            let label = match r.case.get("class").and_then(|c| c.as_str()) {
                Some(c) => format!("{}[{c}]", r.id),
                None => r.id.clone(),
            };
            let pos = match rows.iter().position(|(l, _)| *l == label) {
                Some(i) => i,
                None => {
                    rows.push((label, Counts::default()));
                    rows.len() - 1
                }
            };
            rows[pos].1.add(r.status);
        }
        rows.sort_by_cached_key(|(label, _)| {
            let id = label.split('[').next().unwrap_or(label);
            (index_of(id).unwrap_or(usize::MAX), label.clone())
        });
        Summary { rows }
    }

    pub fn totals(&self) -> Counts {
        let mut t = Counts::default();
        for (_, c) in &self.rows {
            t.pass += c.pass;
            t.fail += c.fail;
            t.skip += c.skip;
            t.lowprec += c.lowprec;
        }
        t
    }

    pub fn all_passed(&self) -> bool {
        self.totals().fail == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, c) in &self.rows {
            writeln!(
                f,
                "{label:<26} pass {:>5}  fail {:>3}  skip {:>4}  lowprec {:>4}",
                c.pass, c.fail, c.skip, c.lowprec
            )?;
        }
        let t = self.totals();
        write!(
            f,
            "{:<26} pass {:>5}  fail {:>3}  skip {:>4}  lowprec {:>4}",
            "total", t.pass, t.fail, t.skip, t.lowprec
        )
    }
}

fn needs_forms(idx: usize) -> bool {
    matches!(
        REGISTRY[idx].id,
        "ao-level8"
            | "thm-gtoc-level16"
            | "kilbourn-super"
            | "rv3-super"
            | "dmc-level25-g"
            | "dmc-level25-f"
    )
}

/// Resolves `all` or a single registry id.
pub fn select(id: &str) -> Result<Vec<usize>> {
    if id == "all" {
        Ok((0..REGISTRY.len()).collect())
    } else {
        Ok(vec![index_of(id)?])
    }
}

/// Checks one identity over the configured prime range.
pub fn verify(id: &str, cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    run_selected(&[index_of(id)?], cfg)
}

/// Checks every registry entry over the configured prime range.
pub fn run_all(cfg: &VerifyConfig) -> Result<(Vec<VerificationReport>, Summary)> {
    let idxs: Vec<usize> = (0..REGISTRY.len()).collect();
    let reports = run_selected(&idxs, cfg)?;
    let summary = Summary::from_reports(&reports);
    Ok((reports, summary))
}

/// Runs the given registry positions; reports are ordered by position, then
/// prime.
pub fn run_selected(idxs: &[usize], cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let primes = odd_primes(cfg.p_min, cfg.p_max);
    cfg.validate(&primes)?;
    let mut idxs = idxs.to_vec();
    idxs.sort_unstable();
    idxs.dedup();

    let forms = match primes.last() {
        Some(&pmax) if idxs.iter().any(|&i| needs_forms(i)) => Some(match &cfg.cache_dir {
            Some(dir) => Newforms::load_or_compute(pmax as usize, dir)?,
            None => Newforms::compute(pmax as usize)?,
        }),
        _ => None,
    };

    let per_prime = sweep(&primes, cfg.jobs, |p| {
        run_prime(&idxs, p, cfg, forms.as_ref())
    })?;

    let mut out = Vec::new();
    for slot in 0..idxs.len() {
        for reports in &per_prime {
            out.extend(reports[slot].iter().cloned());
        }
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn sweep<F>(primes: &[u64], jobs: Option<usize>, f: F) -> Result<Vec<Vec<Vec<VerificationReport>>>>
where
    F: Fn(u64) -> Vec<Vec<VerificationReport>> + Sync,
{
    use rayon::prelude::*;
    let work = || primes.par_iter().map(|&p| f(p)).collect();
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

#[cfg(not(feature = "parallel"))]
fn sweep<F>(primes: &[u64], _jobs: Option<usize>, f: F) -> Result<Vec<Vec<Vec<VerificationReport>>>>
where
    F: Fn(u64) -> Vec<Vec<VerificationReport>>,
{
    Ok(primes.iter().map(|&p| f(p)).collect())
}

fn build_session(p: u64, plans: &[registry::Plan]) -> Option<Result<Session>> {
    let prec = plans.iter().map(|pl| pl.prec).max().unwrap_or(0);
    if prec == 0 {
        return None;
    }
    let args = plans.iter().flat_map(|pl| pl.args.iter().copied());
    Some(Session::new(p, prec, args))
}

/// All selected identities at one prime; one report list per identity.
fn run_prime(
    idxs: &[usize],
    p: u64,
    cfg: &VerifyConfig,
    forms: Option<&Newforms>,
) -> Vec<Vec<VerificationReport>> {
    let plans: Vec<_> = idxs
        .iter()
        .map(|&i| registry::plan(i, p, cfg.prec, &cfg.d_pairs))
        .collect();
    let shared = build_session(p, &plans);

    idxs.iter()
        .zip(&plans)
        .map(|(&idx, plan)| {
            let first = evaluate(idx, p, cfg, forms, shared.as_ref());
            if !first.1 {
                return first.0;
            }
            // one retry with two more digits
            let bumped = registry::Plan {
                args: plan.args.clone(),
                prec: plan.prec.max(cfg.prec) + 2,
            };
            let session = build_session(p, std::slice::from_ref(&bumped));
            evaluate(idx, p, cfg, forms, session.as_ref()).0
        })
        .collect()
}

/// Reports for one unit, and whether any case ran out of computed precision.
fn evaluate(
    idx: usize,
    p: u64,
    cfg: &VerifyConfig,
    forms: Option<&Newforms>,
    session: Option<&Result<Session>>,
) -> (Vec<VerificationReport>, bool) {
    let id = REGISTRY[idx].id;
    let (session, setup_err) = match session {
        Some(Ok(s)) => (Some(s), None),
        Some(Err(e)) => (None, Some(e.clone())),
        None => (None, None),
    };
    let cx = Ctx {
        p,
        k: cfg.prec,
        session,
        forms,
        d_pairs: &cfg.d_pairs,
    };
    let mut starved = false;
    let reports = registry::run(idx, &cx)
        .into_iter()
        .map(|Outcome { case, verdict }| {
            let verdict = match (&setup_err, verdict) {
                (Some(e), Ok(Verdict::Compare { .. })) | (Some(e), Err(_)) => Err(e.clone()),
                (_, v) => v,
            };
            let (report, low) = to_report(id, p, cfg.prec, case, verdict);
            starved |= low;
            report
        })
        .collect();
    (reports, starved)
}

fn to_report(
    id: &str,
    p: u64,
    k: u32,
    case: Case,
    verdict: Result<Verdict>,
) -> (VerificationReport, bool) {
    let mut rep = VerificationReport {
        id: id.to_string(),
        p,
        case,
        status: Status::Fail,
        lhs: String::new(),
        rhs: String::new(),
        prec: format!("{p}^{k}"),
        note: None,
    };
    let mut starved = false;
    match verdict {
        Ok(Verdict::Compare { lhs, rhs, k, note }) => {
            rep.prec = format!("{p}^{k}");
            rep.note = note;
            match lhs.eq_mod(&rhs, k as i64) {
                Ok(eq) => {
                    rep.status = if eq { Status::Pass } else { Status::Fail };
                    rep.lhs = lhs.truncate(k as i64).to_string();
                    rep.rhs = rhs.truncate(k as i64).to_string();
                }
                Err(e) => {
                    rep.status = Status::Lowprec;
                    rep.lhs = lhs.to_string();
                    rep.rhs = rhs.to_string();
                    rep.note = Some(e.to_string());
                    starved = true;
                }
            }
        }
        Ok(Verdict::Skip(reason)) => {
            rep.status = Status::Skip;
            rep.case.insert("reason".into(), reason.into());
        }
        Ok(Verdict::Gate { k, note }) => {
            rep.status = Status::Lowprec;
            rep.prec = format!("{p}^{k}");
            rep.note = Some(note);
        }
        Err(e @ Error::InsufficientPrecision { .. }) => {
            rep.status = Status::Lowprec;
            rep.note = Some(e.to_string());
            starved = true;
        }
        Err(e) => {
            rep.note = Some(format!("error: {e}"));
            rep.lhs = "error".into();
            rep.rhs = "error".into();
        }
    }
    (rep, starved)
}

/// JSONL rendering, one record per line.
pub fn to_jsonl(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&r.to_json());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(id: &str, p: u64, k: u32) -> Vec<VerificationReport> {
        verify(id, &VerifyConfig::new(p, p, k)).unwrap()
    }

    #[test]
    fn ao_level8_at_three() {
        let r = one("ao-level8", 3, 4);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].status, Status::Pass);
        assert_eq!(r[0].rhs, "3^0 * 77 mod 3^4"); // -4 mod 81
        assert_eq!(r[0].lhs, r[0].rhs);
        assert!(r[0].note.as_deref().unwrap().starts_with("certified exact"));
    }

    #[test]
    fn gtoc_at_three() {
        let r = one("thm-gtoc-level16", 3, 4);
        assert_eq!(r[0].status, Status::Pass);
        assert_eq!(r[0].rhs, "3^0 * 4 mod 3^4");
    }

    #[test]
    fn four_g_one_filters() {
        let r = one("thm-4g1", 7, 4);
        let find = |d1: u64, d2: u64| {
            r.iter()
                .find(|x| x.case["d1"] == d1 && x.case["d2"] == d2)
                .unwrap()
                .clone()
        };
        assert_eq!(find(2, 3).status, Status::Pass);
        assert_eq!(find(2, 4).status, Status::Pass);
        assert_eq!(find(2, 5).status, Status::Skip);
        assert_eq!(find(2, 5).case["reason"], "filter");
    }

    #[test]
    fn low_precision_gates_truncated_claims() {
        let cfg = VerifyConfig::new(3, 11, 1);
        for id in ["kilbourn-super", "rv3-super", "thm-4g1", "dmc-level25-f"] {
            let r = verify(id, &cfg).unwrap();
            assert!(
                r.iter()
                    .all(|x| x.status != Status::Pass && x.status != Status::Fail),
                "{id}"
            );
            assert!(r.iter().any(|x| x.status == Status::Lowprec), "{id}");
        }
        let r = verify("ao-level8", &cfg).unwrap();
        assert!(r.iter().all(|x| x.status == Status::Pass));
    }

    #[test]
    fn empty_range() {
        let (r, s) = run_all(&VerifyConfig::new(24, 28, 3)).unwrap();
        assert!(r.is_empty());
        assert!(s.rows.is_empty());
        assert!(s.all_passed());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            verify("bogus", &VerifyConfig::new(3, 5, 3)),
            Err(Error::UnknownIdentity(_))
        ));
        assert!(verify("ao-level8", &VerifyConfig::new(3, 5, 0)).is_err());
        assert!(matches!(
            verify("ao-level8", &VerifyConfig::new(90, 97, 9)),
            Err(Error::RangeOverflow { .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = one("lemma-quad", 5, 3);
        let line = r[0].to_json();
        assert!(
            line.starts_with(r#"{"id":"lemma-quad","p":5,"case":{"j":1},"status":"pass","lhs":"#)
        );
        assert!(line.ends_with(r#""prec":"5^3"}"#));
        let back: VerificationReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r[0]);
    }

    #[test]
    fn summary_splits_classes() {
        let r = verify("dmc-level25-f", &VerifyConfig::new(3, 13, 3)).unwrap();
        let s = Summary::from_reports(&r);
        let labels: Vec<_> = s.rows.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(
            labels,
            ["dmc-level25-f", "dmc-level25-f[pm1]", "dmc-level25-f[pm2]"]
        );
        assert!(s.all_passed());
    }
}
