//! Batch commands behind the `brace` binary. Each command returns a
//! [`RunReport`] whose JSON form depends only on the inputs and the seed
//! (wall-clock timing is added only on request).

mod file;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::abelian::{prime_power, Element};
use crate::brace::{Brace, BraceReport, CheckOptions};
use crate::constructions::{
    builtin_corpus, enumerate_braces, holomorph_count_oracle, ConstructionError, ConstructionSpec,
    EnumOptions,
};
use crate::groups::{classify_multiplicative_group, Classification, GroupError};
use crate::nilpotency::{
    certify_right_nilpotent, identity_suite, pa_bound_check, series, theorem1_check,
    NilpotencyError, PaBoundReport, RightNilpotencyVerdict, Scope, SeriesKind, SeriesSummary,
    Stage, SuiteReport, Theorem1Input, Theorem1Report, TheoremFocus,
};
use crate::ybe::{
    check_solution, multipermutation_level, solution_from_brace, LevelReport, SolutionCheckOptions,
    SolutionReport,
};

pub use file::{
    load_brace, BraceFile, FileError, Metadata, FORMAT_NAME, FORMAT_VERSION, RANK_ENCODING,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub results: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    fn new(
        command: &str,
        run: &RunOptions,
        status: Status,
        results: serde_json::Value,
        started: Instant,
    ) -> Self {
        Self {
            command: command.into(),
            seed: run.seed,
            status,
            exit_code: match status {
                Status::Pass => EXIT_PASS,
                Status::Fail => EXIT_FAIL,
                Status::Error => EXIT_ERROR,
            },
            error: None,
            results,
            timing_ms: run.timing.then(|| started.elapsed().as_millis() as u64),
        }
    }

    fn error(
        command: &str,
        run: &RunOptions,
        message: String,
        results: serde_json::Value,
        started: Instant,
    ) -> Self {
        Self {
            error: Some(message),
            ..Self::new(command, run, Status::Error, results, started)
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Samples for stages whose case space exceeds the exhaustive limit.
    pub sample_budget: u64,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            sample_budget: 100_000,
            timing: false,
        }
    }
}

/// Result of an optional step.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome<T> {
    Ran { result: T },
    Skipped { reason: String },
    Error { message: String },
}

impl<T> Outcome<T> {
    fn from_result<E: ToString>(r: Result<T, E>, skip: impl Fn(&E) -> bool) -> Self {
        match r {
            Ok(result) => Outcome::Ran { result },
            Err(e) if skip(&e) => Outcome::Skipped {
                reason: e.to_string(),
            },
            Err(e) => Outcome::Error {
                message: e.to_string(),
            },
        }
    }

    fn passes(&self, ok: impl Fn(&T) -> bool) -> bool {
        match self {
            Outcome::Ran { result } => ok(result),
            Outcome::Skipped { .. } => true,
            Outcome::Error { .. } => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Args {
    pub p_elem: Vec<u64>,
    pub qs: Vec<Vec<u64>>,
    pub m: u32,
}

fn parse_coords(s: &str) -> Result<Vec<u64>, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad coordinate {c:?}: {e}"))
        })
        .collect()
}

impl Theorem1Args {
    /// Parses `P=(0,1) Q=(1,0) [Q=...] m=2`.
    pub fn parse<S: AsRef<str>>(parts: &[S]) -> Result<Self, String> {
        let (mut p, mut qs, mut m) = (None, Vec::new(), None);
        for part in parts {
            let (k, v) = part
                .as_ref()
                .split_once('=')
                .ok_or_else(|| format!("expected KEY=VALUE, got {:?}", part.as_ref()))?;
            match k.trim() {
                "P" => p = Some(parse_coords(v)?),
                "Q" => qs.push(parse_coords(v)?),
                "m" => m = Some(v.trim().parse::<u32>().map_err(|e| format!("bad m: {e}"))?),
                other => return Err(format!("unknown key {other:?}")),
            }
        }
        let m = m.ok_or("missing m=")?;
        if !(1..=2).contains(&m) {
            return Err(format!("m must be 1 or 2, got {m}"));
        }
        if qs.is_empty() {
            return Err("missing Q=".into());
        }
        Ok(Self {
            p_elem: p.ok_or("missing P=")?,
            qs,
            m,
        })
    }
}

/// Parses a comma-separated stage list; `all`, `theorem` and `rel` name
/// groups of stages.
pub fn parse_suite(s: &str) -> Result<Vec<Stage>, String> {
    let mut out = Vec::new();
    for name in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match name {
            "all" => out.extend_from_slice(&Stage::ALL),
            "theorem" => out.extend_from_slice(&Stage::THEOREM),
            "rel" => out.extend_from_slice(&Stage::REL),
            other => out.push(other.parse::<Stage>().map_err(|e| e.to_string())?),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Empty means every stage.
    pub suite: Vec<Stage>,
    pub theorem1: Option<Theorem1Args>,
    pub run: RunOptions,
}

#[derive(Clone, Debug, Serialize)]
pub struct YbeSummary {
    pub check: SolutionReport,
    pub level: LevelReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub check: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyResults {
    pub name: Option<String>,
    pub moduli: Vec<u64>,
    pub order: usize,
    pub validation: BraceReport,
    pub series: Vec<SeriesSummary>,
    pub suite: SuiteReport,
    pub right_nilpotency: Outcome<RightNilpotencyVerdict>,
    pub classification: Outcome<Classification>,
    pub theorem1: Outcome<Theorem1Report>,
    pub pa_bound: Outcome<PaBoundReport>,
    pub ybe: Outcome<YbeSummary>,
    pub checks: Vec<CheckLine>,
}

fn ybe_summary(b: &Brace, seed: u64) -> Outcome<YbeSummary> {
    let run = || -> Result<YbeSummary, crate::ybe::YbeError> {
        let r = solution_from_brace(b)?;
        let check = check_solution(
            &r,
            SolutionCheckOptions {
                seed,
                ..SolutionCheckOptions::default()
            },
        );
        Ok(YbeSummary {
            check,
            level: multipermutation_level(&r)?,
        })
    };
    Outcome::from_result(run(), |_| false)
}

fn rank_of(b: &Brace, coords: &[u64]) -> Result<usize, String> {
    b.group()
        .rank(&Element(coords.to_vec()))
        .map_err(|e| e.to_string())
}

/// `validate`, the three series, the identity suite, the certificate
/// recursion, classification, the optional theorem check, the bound check
/// and the Yang–Baxter checks on one brace file.
pub fn cmd_verify(args: &VerifyArgs) -> RunReport {
    let started = Instant::now();
    let run = &args.run;
    let (b, file) = match load_brace(&args.path) {
        Ok(x) => x,
        Err(e) => {
            let results = serde_json::json!({ "path": args.path.display().to_string() });
            return RunReport::error("verify", run, e.to_string(), results, started);
        }
    };
    let validation = b.recheck(CheckOptions::thorough(run.seed));
    let series_all: Vec<SeriesSummary> = [SeriesKind::Left, SeriesKind::Right, SeriesKind::Strong]
        .iter()
        .map(|&k| series(&b, k).summary())
        .collect();

    let focus = match &args.theorem1 {
        None => None,
        Some(t) => {
            let p = match prime_power(b.order() as u64) {
                Some((p, 4)) => p,
                _ => {
                    let msg = format!(
                        "--theorem1 needs a brace of order p^4, got order {}",
                        b.order()
                    );
                    return RunReport::error("verify", run, msg, serde_json::Value::Null, started);
                }
            };
            let ranks = std::iter::once(&t.p_elem)
                .chain(&t.qs)
                .map(|c| rank_of(&b, c))
                .collect::<Result<Vec<_>, _>>();
            match ranks {
                Ok(r) => Some(TheoremFocus {
                    p_elem: r[0],
                    qs: r[1..].to_vec(),
                    p,
                    m: t.m,
                }),
                Err(e) => {
                    return RunReport::error("verify", run, e, serde_json::Value::Null, started)
                }
            }
        }
    };
    let scope = Scope {
        stages: if args.suite.is_empty() {
            Stage::ALL.to_vec()
        } else {
            args.suite.clone()
        },
        focus: focus.clone(),
        sample_budget: run.sample_budget,
        seed: run.seed,
        ..Scope::default()
    };
    let suite = identity_suite(&b, &scope);
    let not_pp = |e: &NilpotencyError| matches!(e, NilpotencyError::NotPrimePower { .. });
    let right_nilpotency = Outcome::from_result(certify_right_nilpotent(&b), not_pp);
    let classification = Outcome::from_result(classify_multiplicative_group(&b), |e| {
        matches!(
            e,
            GroupError::BadOrder { .. } | GroupError::UnsupportedPrime { .. }
        )
    });
    let theorem1 = match &focus {
        None => Outcome::Skipped {
            reason: "no --theorem1 generators given".into(),
        },
        Some(f) => {
            let input = Theorem1Input::new(&b, f.p, f.m, f.p_elem, f.qs.clone());
            match theorem1_check(&input) {
                Ok(r) => Outcome::Ran { result: r },
                Err(e @ NilpotencyError::InputShapeMismatch(_)) => {
                    return RunReport::error(
                        "verify",
                        run,
                        e.to_string(),
                        serde_json::Value::Null,
                        started,
                    )
                }
                Err(e) => Outcome::Error {
                    message: e.to_string(),
                },
            }
        }
    };
    let pa_bound = Outcome::from_result(pa_bound_check(&b), |e| {
        matches!(
            e,
            NilpotencyError::PreconditionMismatch(_) | NilpotencyError::NotPrimePower { .. }
        )
    });
    let ybe = ybe_summary(&b, run.seed);

    let checks = vec![
        ("validate", validation.passed()),
        ("identity_suite", suite.passed()),
        (
            "right_nilpotency",
            right_nilpotency.passes(|v| v.lemma_held),
        ),
        ("classification", classification.passes(|_| true)),
        // the implication: hypotheses ⟹ stages and conclusion
        (
            "theorem1",
            theorem1.passes(|r| !r.hypotheses_hold() || (r.conclusion_holds && r.stages_pass())),
        ),
        (
            "pa_bound",
            pa_bound.passes(|r| r.bound_holds && r.conditional_holds),
        ),
        ("ybe", ybe.passes(|y| y.check.passed())),
    ];
    let all_pass = checks.iter().all(|c| c.1);
    let results = VerifyResults {
        name: file.metadata.name.clone(),
        moduli: b.group().moduli().to_vec(),
        order: b.order(),
        validation,
        series: series_all,
        suite,
        right_nilpotency,
        classification,
        theorem1,
        pa_bound,
        ybe,
        checks: checks
            .into_iter()
            .map(|(c, passed)| CheckLine {
                check: c.into(),
                passed,
            })
            .collect(),
    };
    let status = if all_pass { Status::Pass } else { Status::Fail };
    RunReport::new(
        "verify",
        run,
        status,
        serde_json::to_value(results).expect("serializable"),
        started,
    )
}

#[derive(Clone, Debug)]
pub struct EnumerateArgs {
    pub moduli: Vec<u64>,
    pub out_dir: Option<PathBuf>,
    pub max_order: usize,
    pub force: bool,
    pub oracle: bool,
    pub run: RunOptions,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub total: u64,
    pub classes: u64,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerateResults {
    pub moduli: Vec<u64>,
    pub aut_count: usize,
    pub labeled_count: u64,
    pub iso_count: usize,
    pub search_nodes: u64,
    pub files: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

fn moduli_slug(m: &[u64]) -> String {
    m.iter().map(u64::to_string).collect::<Vec<_>>().join("x")
}

/// Enumerates braces on `Z_{d_1} x ... x Z_{d_k}`, writes one file per
/// isomorphism class and optionally compares counts with the holomorph
/// oracle.
pub fn cmd_enumerate(args: &EnumerateArgs) -> RunReport {
    let started = Instant::now();
    let run = &args.run;
    let opts = EnumOptions {
        max_order: args.max_order,
        force: args.force,
        ..EnumOptions::default()
    };
    let moduli_json = serde_json::json!({ "moduli": args.moduli });
    let res = match enumerate_braces(&args.moduli, opts) {
        Ok(r) => r,
        Err(e) => return RunReport::error("enumerate", run, e.to_string(), moduli_json, started),
    };
    let mut files = Vec::new();
    if let Some(dir) = &args.out_dir {
        if let Err(e) = fs::create_dir_all(dir) {
            return RunReport::error(
                "enumerate",
                run,
                format!("cannot create {}: {e}", dir.display()),
                moduli_json,
                started,
            );
        }
        let slug = moduli_slug(&args.moduli);
        for (i, b) in res.braces.iter().enumerate() {
            let name = format!("brace-{slug}-{i:04}.json");
            let meta = Metadata {
                name: Some(format!("enumerated {slug} #{i}")),
                construction: None,
            };
            if let Err(e) = BraceFile::from_brace(b, meta).save(&dir.join(&name)) {
                return RunReport::error("enumerate", run, e.to_string(), moduli_json, started);
            }
            files.push(name);
        }
    }
    let oracle = if args.oracle {
        match holomorph_count_oracle(&args.moduli, opts) {
            Ok(c) => Some(OracleCheck {
                total: c.total,
                classes: c.classes,
                agrees: c.total == res.labeled_count && c.classes == res.iso_count as u64,
            }),
            Err(e) => {
                return RunReport::error("enumerate", run, e.to_string(), moduli_json, started)
            }
        }
    } else {
        None
    };
    let ok = oracle.as_ref().is_none_or(|o| o.agrees);
    let results = EnumerateResults {
        moduli: args.moduli.clone(),
        aut_count: res.stats.aut_count,
        labeled_count: res.labeled_count,
        iso_count: res.iso_count,
        search_nodes: res.stats.nodes,
        files,
        oracle,
    };
    let status = if ok { Status::Pass } else { Status::Fail };
    RunReport::new(
        "enumerate",
        run,
        status,
        serde_json::to_value(results).expect("serializable"),
        started,
    )
}

#[derive(Clone, Debug)]
pub struct ReportArgs {
    pub dir: PathBuf,
    pub run: RunOptions,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub file: String,
    pub name: Option<String>,
    pub additive: String,
    pub multiplicative: String,
    pub left_class: Option<usize>,
    pub right_class: Option<usize>,
    pub strong_class: Option<usize>,
    pub right_nilpotent: bool,
    /// The certificate recursion reached the trivial brace.
    pub certificate: Option<bool>,
    pub certificate_depth: Option<usize>,
    pub mpl: Option<usize>,
    pub ybe_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportSummary {
    pub braces: usize,
    pub right_nilpotent: usize,
    /// Right nilpotent ⟺ finite multipermutation level, on every row.
    pub mpl_biconditional: bool,
    /// Certificate recursion succeeds ⟺ right nilpotent, on rows where
    /// the recursion applies.
    pub certificate_biconditional: bool,
    pub ybe_all_pass: bool,
    pub violations: Vec<String>,
    pub mpl_convention: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportResults {
    pub rows: Vec<ReportRow>,
    pub summary: ReportSummary,
}

fn row_for(file: String, name: Option<String>, b: &Brace, seed: u64) -> ReportRow {
    let class = |k| series(b, k).class;
    let right_class = class(SeriesKind::Right);
    let (certificate, certificate_depth) = match certify_right_nilpotent(b) {
        Ok(v) => (Some(v.right_nilpotent), Some(v.depth())),
        Err(_) => (None, None),
    };
    let multiplicative = match classify_multiplicative_group(b) {
        Ok(c) => c.label(),
        Err(GroupError::BadOrder { .. }) => "n/a".into(),
        Err(e) => format!("error: {e}"),
    };
    let ybe = ybe_summary(b, seed);
    let (mpl, ybe_ok) = match &ybe {
        Outcome::Ran { result } => (result.level.level, result.check.passed()),
        _ => (None, false),
    };
    ReportRow {
        file,
        name,
        additive: b
            .group()
            .sorted_moduli()
            .iter()
            .map(|d| format!("C{d}"))
            .collect::<Vec<_>>()
            .join("x"),
        multiplicative,
        left_class: class(SeriesKind::Left),
        right_class,
        strong_class: class(SeriesKind::Strong),
        right_nilpotent: right_class.is_some(),
        certificate,
        certificate_depth,
        mpl,
        ybe_ok,
    }
}

/// Summarises every `*.json` brace file in a directory, in file-name order.
pub fn cmd_report(args: &ReportArgs) -> RunReport {
    let started = Instant::now();
    let run = &args.run;
    let dir_json = serde_json::json!({ "dir": args.dir.display().to_string() });
    let mut paths: Vec<PathBuf> = match fs::read_dir(&args.dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => {
            return RunReport::error(
                "report",
                run,
                format!("cannot read {}: {e}", args.dir.display()),
                dir_json,
                started,
            )
        }
    };
    paths.sort();
    let mut loaded = Vec::new();
    let mut rejected = Vec::new();
    for p in &paths {
        let fname = p
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        match load_brace(p) {
            Ok((b, f)) => loaded.push((fname, f.metadata.name, b)),
            Err(e) => rejected.push(format!("{fname}: {e}")),
        }
    }
    if !rejected.is_empty() {
        let results =
            serde_json::json!({ "dir": args.dir.display().to_string(), "rejected": rejected });
        return RunReport::error(
            "report",
            run,
            format!("{} file(s) rejected", rejected.len()),
            results,
            started,
        );
    }
    let rows: Vec<ReportRow> = loaded
        .into_iter()
        .map(|(f, n, b)| row_for(f, n, &b, run.seed))
        .collect();
    let mut violations = Vec::new();
    for r in &rows {
        if r.right_nilpotent != r.mpl.is_some() {
            violations.push(format!(
                "{}: right nilpotent {} but mpl {:?}",
                r.file, r.right_nilpotent, r.mpl
            ));
        }
        if r.certificate.is_some_and(|c| c != r.right_nilpotent) {
            violations.push(format!(
                "{}: certificate disagrees with right series",
                r.file
            ));
        }
        if !r.ybe_ok {
            violations.push(format!("{}: Yang-Baxter checks fail", r.file));
        }
    }
    let summary = ReportSummary {
        braces: rows.len(),
        right_nilpotent: rows.iter().filter(|r| r.right_nilpotent).count(),
        mpl_biconditional: rows.iter().all(|r| r.right_nilpotent == r.mpl.is_some()),
        certificate_biconditional: rows
            .iter()
            .all(|r| r.certificate.is_none_or(|c| c == r.right_nilpotent)),
        ybe_all_pass: rows.iter().all(|r| r.ybe_ok),
        violations,
        mpl_convention: crate::ybe::LEVEL_CONVENTION,
    };
    let status = if summary.violations.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    let results = ReportResults { rows, summary };
    RunReport::new(
        "report",
        run,
        status,
        serde_json::to_value(results).expect("serializable"),
        started,
    )
}

#[derive(Clone, Debug)]
pub enum ConstructTarget {
    Spec(ConstructionSpec),
    /// The whole built-in corpus.
    Builtin,
}

#[derive(Clone, Debug)]
pub struct ConstructArgs {
    pub target: ConstructTarget,
    pub out_dir: PathBuf,
    /// Write multiplication tables instead of λ-tables.
    pub mul_table: bool,
    pub run: RunOptions,
}

fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_matches('-').to_string()
}

/// Writes named constructions as brace files.
pub fn cmd_construct(args: &ConstructArgs) -> RunReport {
    let started = Instant::now();
    let run = &args.run;
    let entries: Result<Vec<(String, Option<ConstructionSpec>, Brace)>, ConstructionError> =
        match &args.target {
            ConstructTarget::Spec(spec) => spec
                .build()
                .map(|b| vec![(spec.label(), Some(spec.clone()), b)]),
            ConstructTarget::Builtin => {
                builtin_corpus().map(|c| c.into_iter().map(|e| (e.name, e.spec, e.brace)).collect())
            }
        };
    let entries = match entries {
        Ok(e) => e,
        Err(e) => {
            return RunReport::error(
                "construct",
                run,
                e.to_string(),
                serde_json::Value::Null,
                started,
            )
        }
    };
    if let Err(e) = fs::create_dir_all(&args.out_dir) {
        let msg = format!("cannot create {}: {e}", args.out_dir.display());
        return RunReport::error("construct", run, msg, serde_json::Value::Null, started);
    }
    let mut files = Vec::new();
    for (i, (name, spec, b)) in entries.iter().enumerate() {
        let fname = format!("{i:03}-{}.json", slug(name));
        let meta = Metadata {
            name: Some(name.clone()),
            construction: spec.clone(),
        };
        let f = if args.mul_table {
            BraceFile::from_brace_mul(b, meta)
        } else {
            BraceFile::from_brace(b, meta)
        };
        if let Err(e) = f.save(&args.out_dir.join(&fname)) {
            return RunReport::error(
                "construct",
                run,
                e.to_string(),
                serde_json::Value::Null,
                started,
            );
        }
        files.push(fname);
    }
    let results = serde_json::json!({ "files": files });
    RunReport::new("construct", run, Status::Pass, results, started)
}

/// Writes a single brace to `path` in λ-table form.
pub fn save_brace(path: &Path, b: &Brace, name: Option<String>) -> Result<(), FileError> {
    BraceFile::from_brace(
        b,
        Metadata {
            name,
            construction: None,
        },
    )
    .save(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_flag_parsing() {
        let t = Theorem1Args::parse(&["P=(0,1)", "Q=(1,0)", "m=2"]).unwrap();
        assert_eq!(
            t,
            Theorem1Args {
                p_elem: vec![0, 1],
                qs: vec![vec![1, 0]],
                m: 2
            }
        );
        assert!(Theorem1Args::parse(&["P=(0,1)", "m=2"]).is_err());
        assert!(Theorem1Args::parse(&["P=(0,1)", "Q=1,0", "m=3"]).is_err());
        assert!(Theorem1Args::parse(&["X=1"]).is_err());
    }

    #[test]
    fn suite_parsing() {
        assert_eq!(parse_suite("all").unwrap().len(), Stage::ALL.len());
        assert_eq!(parse_suite("ppn,rel").unwrap().len(), 1 + Stage::REL.len());
        assert!(parse_suite("nonsense").is_err());
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("ring C2xC2 e1*e1=e2"), "ring-c2xc2-e1-e1-e2");
        assert_eq!(slug("diagonal-m1 p=3"), "diagonal-m1-p-3");
    }
}
