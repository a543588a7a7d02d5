//! Batch front end: job files in, reports and certificates out.
//!
//! A job file holds one job object, an array of jobs, or `{"jobs": [...]}`.
//! Every job names a `task`; unknown tasks and malformed parameters are
//! rejected before anything runs. Exit codes: 0 success, 1 a violated
//! mathematical precondition, 2 unparsable input.

pub mod selftest;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use crate::certlab::{
    build_extension_step, build_piltant, classification_certificate, degree_bound_certificate, CertError, CertTower, Certificate,
    ExtensionStep, PiltantVariant,
};
use crate::coeff::{FieldError, FieldJson};
use crate::hahn::{group_json, parse_group, HahnError, HahnSeries};
use crate::homog::{extract_homog_sequence, HomogError, Tower};
use crate::kxval::{eval_along_pcs, parse_ratfunc, BaseField, KxError, ValDescriptor, VagDescriptor};
use crate::ordgroup::{GroupError, SubgroupDescriptor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => EXIT_PARSE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }
}

fn field_err(e: FieldError) -> CliError {
    match e {
        FieldError::BadLiteral(m) => CliError::Parse(m),
        other => CliError::Domain(other.to_string()),
    }
}

fn hahn_err(e: HahnError) -> CliError {
    match e {
        HahnError::Literal(m) => CliError::Parse(m),
        HahnError::Field(f) => field_err(f),
        other => CliError::Domain(other.to_string()),
    }
}

fn kx_err(e: KxError) -> CliError {
    match e {
        KxError::Literal(m) => CliError::Parse(m),
        KxError::Field(f) => field_err(f),
        KxError::Hahn(h) => hahn_err(h),
        other => CliError::Domain(other.to_string()),
    }
}

impl From<CertError> for CliError {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Schema(m) => CliError::Parse(m),
            CertError::Hahn(h) => hahn_err(h),
            CertError::Field(f) => field_err(f),
            CertError::Kx(k) => kx_err(k),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<HomogError> for CliError {
    fn from(e: HomogError) -> Self {
        match e {
            HomogError::Hahn(h) => hahn_err(h),
            HomogError::Field(f) => field_err(f),
            HomogError::Kx(k) => kx_err(k),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Eval,
    Classify,
    Extract,
    Piltant,
    DegreeBound,
    ExtensionStep,
    Recheck,
}

impl Task {
    pub fn parse(s: &str) -> Option<Task> {
        Some(match s {
            "eval" => Task::Eval,
            "classify" => Task::Classify,
            "extract" => Task::Extract,
            "piltant" => Task::Piltant,
            "degree-bound" => Task::DegreeBound,
            "extension-step" => Task::ExtensionStep,
            "recheck" => Task::Recheck,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Task::Eval => "eval",
            Task::Classify => "classify",
            Task::Extract => "extract",
            Task::Piltant => "piltant",
            Task::DegreeBound => "degree-bound",
            Task::ExtensionStep => "extension-step",
            Task::Recheck => "recheck",
        }
    }

    /// Keys that must be present, any one of each group.
    fn required(self) -> &'static [&'static [&'static str]] {
        match self {
            Task::Eval => &[&["vag", "pcs"], &["f"]],
            Task::Classify => &[&["vag", "pcs"]],
            Task::Extract => &[&["z"]],
            Task::Piltant => &[&["p"], &["e"]],
            Task::DegreeBound => &[&["p"], &["n"]],
            Task::ExtensionStep => &[&["field"], &["steps"]],
            Task::Recheck => &[&["certificate"]],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub task: Task,
    pub params: Map<String, Json>,
    pub output: Option<PathBuf>,
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub depth: Option<usize>,
    /// Directory against which relative paths inside job files resolve.
    pub base_dir: Option<PathBuf>,
}

/// Result of one job: the JSON report (a certificate for certificate
/// tasks) and a short text rendering.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Json,
    pub text: String,
    /// For recheck jobs: whether the certificate passed.
    pub passed: bool,
}

/// Parses and validates a job file. Nothing is computed here.
pub fn parse_jobs(text: &str) -> Result<Vec<Job>, CliError> {
    let v: Json = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("job file is not JSON: {e}")))?;
    let items = match v {
        Json::Array(a) => a,
        Json::Object(ref o) if o.contains_key("jobs") => match o.get("jobs") {
            Some(Json::Array(a)) => a.clone(),
            _ => return Err(CliError::Parse("\"jobs\" must be an array".into())),
        },
        Json::Object(_) => vec![v],
        _ => return Err(CliError::Parse("job file must hold an object or an array".into())),
    };
    if items.is_empty() {
        return Err(CliError::Parse("no jobs".into()));
    }
    items.into_iter().enumerate().map(|(i, item)| parse_job(item).map_err(|e| prefix(i, e))).collect()
}

fn prefix(i: usize, e: CliError) -> CliError {
    match e {
        CliError::Parse(m) => CliError::Parse(format!("job {i}: {m}")),
        other => other,
    }
}

fn parse_job(item: Json) -> Result<Job, CliError> {
    let Json::Object(mut params) = item else {
        return Err(CliError::Parse("job must be an object".into()));
    };
    let name = params.remove("task").and_then(|t| t.as_str().map(str::to_owned)).ok_or_else(|| CliError::Parse("job needs a \"task\" string".into()))?;
    let task = Task::parse(&name).ok_or_else(|| CliError::Parse(format!("unknown task \"{name}\"")))?;
    for group in task.required() {
        if !group.iter().any(|k| params.contains_key(*k)) {
            return Err(CliError::Parse(format!("task {name} needs \"{}\"", group.join("\" or \""))));
        }
    }
    let output = match params.remove("output") {
        None | Some(Json::Null) => None,
        Some(Json::String(s)) => Some(PathBuf::from(s)),
        Some(_) => return Err(CliError::Parse("\"output\" must be a path string".into())),
    };
    let depth = match params.remove("depth") {
        None | Some(Json::Null) => None,
        Some(d) => Some(d.as_u64().ok_or_else(|| CliError::Parse("\"depth\" must be a nonnegative integer".into()))? as usize),
    };
    Ok(Job { task, params, output, depth })
}

fn get<'a>(p: &'a Map<String, Json>, key: &str) -> Result<&'a Json, CliError> {
    p.get(key).ok_or_else(|| CliError::Parse(format!("missing \"{key}\"")))
}

fn get_u64(p: &Map<String, Json>, key: &str) -> Result<u64, CliError> {
    get(p, key)?.as_u64().ok_or_else(|| CliError::Parse(format!("\"{key}\" must be a nonnegative integer")))
}

fn get_u64s(p: &Map<String, Json>, key: &str) -> Result<Vec<u64>, CliError> {
    get(p, key)?
        .as_array()
        .and_then(|a| a.iter().map(|x| x.as_u64()).collect::<Option<Vec<_>>>())
        .ok_or_else(|| CliError::Parse(format!("\"{key}\" must be an array of nonnegative integers")))
}

fn parse_group_list(v: &Json, rank: Option<usize>) -> Result<SubgroupDescriptor, CliError> {
    let gens = v
        .as_array()
        .ok_or_else(|| CliError::Parse("group must be an array of generators".into()))?
        .iter()
        .map(parse_group)
        .collect::<Result<Vec<_>, _>>()
        .map_err(hahn_err)?;
    let rank = rank.or_else(|| gens.first().map(|g| g.rank())).unwrap_or(1);
    Ok(SubgroupDescriptor::new(rank, gens)?)
}

fn parse_pcs(pcs: &Json) -> Result<(BaseField, Vec<HahnSeries>), CliError> {
    let base = BaseField::from_json(get_obj(pcs, "base")?).map_err(kx_err)?;
    let elems = get_obj(pcs, "elems")?
        .as_array()
        .ok_or_else(|| CliError::Parse("\"elems\" must be an array of series".into()))?
        .iter()
        .map(HahnSeries::from_json)
        .collect::<Result<Vec<_>, _>>()
        .map_err(hahn_err)?;
    Ok((base, elems))
}

/// Runs one job.
pub fn run_job(job: &Job, opts: &RunOptions) -> Result<Outcome, CliError> {
    let depth = opts.depth.or(job.depth);
    let p = &job.params;
    match job.task {
        Task::Eval if !p.contains_key("vag") => {
            let (base, elems) = parse_pcs(get(p, "pcs")?)?;
            let f = parse_ratfunc(&base, get(p, "f")?).map_err(kx_err)?;
            let ev = eval_along_pcs(&base, &elems, &f, depth.unwrap_or(8)).map_err(kx_err)?;
            let text = match (ev.stable_from, ev.stable_value()) {
                (Some(nu), Some(v)) => format!("v(f(a_nu)) = {v} for nu >= {nu} (of {}, depth {})", ev.values.len(), ev.depth),
                _ => format!("v(f(a_nu)) not stabilized within {} elements at depth {}", ev.values.len(), ev.depth),
            };
            let mut report = ev.to_json();
            report["task"] = json!("eval");
            report["stabilized"] = json!(ev.stable_from.is_some());
            Ok(Outcome { text, report, passed: true })
        }
        Task::Eval => {
            let d = VagDescriptor::from_json(get(p, "vag")?).map_err(kx_err)?;
            let f = parse_ratfunc(&d.base, get(p, "f")?).map_err(kx_err)?;
            let value = d.eval_ratfunc(&f).map_err(kx_err)?;
            let mut report = json!({"task": "eval", "value": group_json(&value)});
            if p.get("oracle").and_then(Json::as_bool).unwrap_or(false) {
                let oracle = d.substitution_oracle(&f, depth.unwrap_or(8)).map_err(kx_err)?;
                report["oracle"] = group_json(&oracle);
                report["agree"] = json!(oracle == value);
            }
            Ok(Outcome { text: format!("v(f) = {value}"), report, passed: true })
        }
        Task::Classify => {
            if let Some(v) = p.get("vag") {
                let d = VagDescriptor::from_json(v).map_err(kx_err)?;
                let cert = classification_certificate(&d)?;
                let label = match &cert.body {
                    crate::certlab::CertBody::Classification(c) => c.classification.clone(),
                    _ => unreachable!(),
                };
                Ok(Outcome { text: format!("classification: {label}"), report: cert.to_json(), passed: true })
            } else {
                let (base, elems) = parse_pcs(get(p, "pcs")?)?;
                let (class, witness) = ValDescriptor::PseudoCauchy { base, elems }.classify().map_err(kx_err)?;
                let orders = match witness {
                    crate::kxval::ClassWitness::PseudoCauchy { orders } => orders,
                    _ => Vec::new(),
                };
                let report = json!({"task": "classify", "classification": class.label(), "difference_orders": orders});
                Ok(Outcome { text: format!("classification: {}", class.label()), report, passed: true })
            }
        }
        Task::Extract => {
            let z = HahnSeries::from_json(get(p, "z")?).map_err(hahn_err)?;
            let group = match p.get("base_group") {
                Some(g) => parse_group_list(g, Some(z.rank()))?,
                None => SubgroupDescriptor::integers().pad(z.rank(), true),
            };
            let m = p.get("residue_degree").map(|m| m.as_u64().ok_or_else(|| CliError::Parse("\"residue_degree\" must be an integer".into()))).transpose()?.unwrap_or(1);
            let tower = Tower::new(z.field(), group, m as u32)?;
            let rep = extract_homog_sequence(&z, &tower, depth.unwrap_or(z.terms().len()))?;
            let gens: Vec<String> = rep.value_group.generators.iter().map(|g| g.to_string()).collect();
            let text = format!(
                "homogeneous sequence of length {}; value group <{}>; residue degrees {:?}; degree >= {}",
                rep.sequence.increments.len(),
                gens.join(", "),
                rep.residue_tower,
                rep.degree_lower_bound
            );
            let mut report = rep.to_json();
            report["task"] = json!("extract");
            Ok(Outcome { text, report, passed: rep.hs_verified && rep.pcs_verified })
        }
        Task::Piltant => {
            let prime = get_u64(p, "p")?;
            let e = get_u64s(p, "e")?;
            let variant = match p.get("n") {
                Some(n) => PiltantVariant::Shifted {
                    n: n.as_array()
                        .and_then(|a| a.iter().map(Json::as_i64).collect::<Option<Vec<_>>>())
                        .ok_or_else(|| CliError::Parse("\"n\" must be an array of integers".into()))?,
                },
                None => PiltantVariant::Classic,
            };
            let d = depth.unwrap_or(e.len().saturating_sub(1));
            let cert = build_piltant(prime, &e, d, &variant)?;
            Ok(Outcome { text: format!("defect tower certificate, p = {prime}, depth {d}"), report: cert.to_json(), passed: true })
        }
        Task::DegreeBound => {
            let prime = get_u64(p, "p")?;
            let n = get_u64s(p, "n")?;
            let d = depth.unwrap_or(n.len());
            let cert = degree_bound_certificate(prime, &n, d)?;
            let bound = match &cert.body {
                crate::certlab::CertBody::DegreeLowerBound(b) => b.bound,
                _ => unreachable!(),
            };
            Ok(Outcome { text: format!("degree lower bound {bound} at depth {d}"), report: cert.to_json(), passed: true })
        }
        Task::ExtensionStep => {
            let field: FieldJson = serde_json::from_value(get(p, "field")?.clone()).map_err(|e| CliError::Parse(e.to_string()))?;
            let k = field.build().map_err(field_err)?;
            let group = match p.get("group") {
                Some(g) => parse_group_list(g, None)?,
                None => SubgroupDescriptor::integers(),
            };
            let steps = get(p, "steps")?.as_array().ok_or_else(|| CliError::Parse("\"steps\" must be an array".into()))?;
            if steps.is_empty() {
                return Err(CliError::Parse("\"steps\" is empty".into()));
            }
            let mut tower = CertTower::new(&k, group);
            for (i, s) in steps.iter().enumerate() {
                let (step, claimed) = parse_step(s, &tower, depth).map_err(|e| prefix_step(i, e))?;
                tower = build_extension_step(&step, claimed, &tower).map_err(|e| prefix_step(i, e.into()))?;
            }
            let cert = tower.certificate()?;
            let t = tower.totals()?;
            Ok(Outcome { text: format!("tower of degree {} with e = {}, f = {}", t.n, t.e, t.f), report: cert.to_json(), passed: true })
        }
        Task::Recheck => {
            let cert = match get(p, "certificate")? {
                Json::String(path) => {
                    let path = resolve(opts, Path::new(path));
                    let s = fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    Certificate::from_str(&s)?
                }
                v => Certificate::from_json(v)?,
            };
            Ok(recheck_outcome(&cert))
        }
    }
}

fn prefix_step(i: usize, e: CliError) -> CliError {
    match e {
        CliError::Parse(m) => CliError::Parse(format!("step {}: {m}", i + 1)),
        CliError::Domain(m) => CliError::Domain(format!("step {}: {m}", i + 1)),
        other => other,
    }
}

fn get_obj<'a>(v: &'a Json, key: &str) -> Result<&'a Json, CliError> {
    v.get(key).ok_or_else(|| CliError::Parse(format!("missing \"{key}\"")))
}

fn parse_step(s: &Json, tower: &CertTower, depth: Option<usize>) -> Result<(ExtensionStep, Option<(u64, u64)>), CliError> {
    let kind = s.get("kind").and_then(Json::as_str).ok_or_else(|| CliError::Parse("step needs a \"kind\"".into()))?;
    let claimed = match s.get("claimed") {
        None => None,
        Some(c) => {
            let a = c.as_array().filter(|a| a.len() == 2).and_then(|a| Some((a[0].as_u64()?, a[1].as_u64()?)));
            Some(a.ok_or_else(|| CliError::Parse("\"claimed\" must be [e, f]".into()))?)
        }
    };
    let step = match kind {
        "kummer" => ExtensionStep::Kummer { alpha: parse_group(get_obj(s, "alpha")?).map_err(hahn_err)? },
        "residue" => {
            let poly = get_obj(s, "poly")?
                .as_array()
                .ok_or_else(|| CliError::Parse("\"poly\" must be a coefficient array".into()))?
                .iter()
                .map(|c| tower.field.parse_element(c))
                .collect::<Result<Vec<_>, _>>()
                .map_err(field_err)?;
            ExtensionStep::Residue { poly }
        }
        "artin-schreier" => {
            let c = HahnSeries::from_json(get_obj(s, "c")?).map_err(hahn_err)?;
            let d = s.get("depth").and_then(Json::as_u64).map(|d| d as usize).or(depth).unwrap_or(8);
            ExtensionStep::ArtinSchreier { c, depth: d }
        }
        other => return Err(CliError::Parse(format!("unknown step kind \"{other}\""))),
    };
    Ok((step, claimed))
}

fn resolve(opts: &RunOptions, path: &Path) -> PathBuf {
    match &opts.base_dir {
        Some(b) if path.is_relative() => b.join(path),
        _ => path.to_path_buf(),
    }
}

pub fn recheck_outcome(cert: &Certificate) -> Outcome {
    let r = cert.recheck();
    let text = match &r.failure {
        None => format!("{}: pass", r.kind),
        Some(f) => format!("{}: fail ({f})", r.kind),
    };
    let report = json!({
        "task": "recheck",
        "kind": r.kind,
        "depth": cert.depth,
        "result": if r.passed { "pass" } else { "fail" },
        "failure": r.failure.as_ref().map(|f| json!({"level": f.level, "invariant": f.invariant})),
    });
    Outcome { report, text, passed: r.passed }
}

/// Rechecks a certificate file. Schema mismatches are parse errors.
pub fn recheck_file(path: &Path) -> Result<Outcome, CliError> {
    let s = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let cert = Certificate::from_str(&s)?;
    Ok(recheck_outcome(&cert))
}

/// Deterministic JSON text: sorted object keys, two-space indent, final newline.
pub fn render_json(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let name = path.file_name().ok_or_else(|| CliError::Io(format!("{}: not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Report or error of one batch entry.
#[derive(Clone, Debug)]
pub struct JobResult {
    pub task: Task,
    pub output: Option<PathBuf>,
    pub result: Result<Outcome, CliError>,
}

impl JobResult {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Ok(o) if o.passed => EXIT_OK,
            Ok(_) => EXIT_DOMAIN,
            Err(e) => e.exit_code(),
        }
    }

    pub fn json(&self) -> Json {
        match &self.result {
            Ok(o) => o.report.clone(),
            Err(e) => json!({"task": self.task.name(), "status": "error", "kind": e.kind(), "message": e.to_string()}),
        }
    }

    pub fn text(&self) -> String {
        match &self.result {
            Ok(o) => format!("{}: {}", self.task.name(), o.text),
            Err(e) => format!("{}: {e}", self.task.name()),
        }
    }
}

/// Runs independent jobs concurrently; results keep the input order.
pub fn run_batch(jobs: &[Job], opts: &RunOptions) -> Vec<JobResult> {
    if jobs.len() == 1 {
        let j = &jobs[0];
        return vec![JobResult { task: j.task, output: j.output.clone(), result: run_job(j, opts) }];
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|j| s.spawn(move || run_job(j, opts))).collect();
        handles
            .into_iter()
            .zip(jobs)
            .map(|(h, j)| JobResult {
                task: j.task,
                output: j.output.clone(),
                result: h.join().unwrap_or_else(|_| Err(CliError::Domain("job panicked".into()))),
            })
            .collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Report path for job `i` of `count` when neither the job nor the
/// command line names one: `<stem>.report.json` beside the job file, or
/// `<stem>.<i>.report.json` in a batch.
pub fn default_report_path(job_file: &Path, i: usize, count: usize) -> PathBuf {
    let stem = job_file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "job".into());
    let name = if count == 1 { format!("{stem}.report.json") } else { format!("{stem}.{i}.report.json") };
    job_file.with_file_name(name)
}

/// `run`: parses, executes, writes one report file per job. Returns the
/// exit code and the text destined for stdout.
pub fn run_file(path: &Path, opts: &RunOptions, format: Format, output: Option<&Path>) -> (i32, String) {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return (EXIT_PARSE, render_error(&CliError::Io(format!("{}: {e}", path.display())), format)),
    };
    let jobs = match parse_jobs(&text) {
        Ok(j) => j,
        Err(e) => return (EXIT_PARSE, render_error(&e, format)),
    };
    let mut opts = opts.clone();
    if opts.base_dir.is_none() {
        opts.base_dir = path.parent().map(Path::to_path_buf);
    }
    let results = run_batch(&jobs, &opts);
    let count = results.len();
    let mut code = EXIT_OK;
    let mut reports = Vec::new();
    let mut text_out = String::new();
    for (i, r) in results.iter().enumerate() {
        code = code.max(r.exit_code());
        let target = match (&r.output, output) {
            (Some(p), _) => resolve(&opts, p),
            (None, Some(o)) if count == 1 => o.to_path_buf(),
            (None, Some(o)) => default_report_path(o, i, count),
            (None, None) => default_report_path(path, i, count),
        };
        let report = r.json();
        if let Err(e) = write_atomic(&target, &render_json(&report)) {
            code = code.max(e.exit_code());
            let _ = writeln!(text_out, "{e}");
        }
        match format {
            Format::Json => reports.push(report),
            Format::Text => {
                let _ = writeln!(text_out, "{} -> {}", r.text(), target.display());
            }
        }
    }
    if format == Format::Json {
        let v = if reports.len() == 1 { reports.pop().unwrap() } else { Json::Array(reports) };
        text_out.push_str(&render_json(&v));
    }
    (code, text_out)
}

pub fn render_error(e: &CliError, format: Format) -> String {
    match format {
        Format::Json => render_json(&json!({"status": "error", "kind": e.kind(), "message": e.to_string()})),
        Format::Text => format!("{e}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_task_rejected() {
        let e = parse_jobs(r#"[{"task":"piltant","p":2,"e":[1,2,4]},{"task":"frobnicate"}]"#).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_PARSE);
        assert!(e.to_string().contains("frobnicate"));
    }

    #[test]
    fn degree_bound_domain_error() {
        let jobs = parse_jobs(r#"{"task":"degree-bound","p":2,"n":[3,4],"depth":2}"#).unwrap();
        let r = run_job(&jobs[0], &RunOptions::default()).unwrap_err();
        assert_eq!(r.exit_code(), EXIT_DOMAIN);
        assert!(r.to_string().contains("n_i coprime to p violated at i=2"), "{r}");
    }

    #[test]
    fn piltant_then_recheck() {
        let jobs = parse_jobs(r#"{"task":"piltant","p":2,"e":[1,2,4,7,11],"depth":4}"#).unwrap();
        let out = run_job(&jobs[0], &RunOptions::default()).unwrap();
        let recheck = Job { task: Task::Recheck, params: [("certificate".to_string(), out.report)].into_iter().collect(), output: None, depth: None };
        assert!(run_job(&recheck, &RunOptions::default()).unwrap().passed);
    }

    #[test]
    fn eval_reports_rational_string() {
        let job = r#"{"task":"eval","vag":{"kind":"vag","base":{"kind":"p-adic","p":3},"center":"0","gamma":"1/2"},
                     "f":{"num":["9","0","1"],"den":["1"]},"oracle":true}"#;
        let jobs = parse_jobs(job).unwrap();
        let out = run_job(&jobs[0], &RunOptions::default()).unwrap();
        assert_eq!(out.report["value"], json!("1"));
        assert_eq!(out.report["agree"], json!(true));
    }

    #[test]
    fn eval_along_pcs_reports_stabilization() {
        use crate::coeff::FieldDescriptor;
        use crate::hahn::Bound;
        use crate::ordgroup::GroupElement;
        let k = FieldDescriptor::prime(2).unwrap();
        let base = BaseField::TAdic { k: k.clone() };
        // a_ν = Σ_{i≤ν} t^{1 − 1/3^i}; f = x has value 2/3 throughout.
        let elems: Vec<Json> = (1..=3)
            .map(|n| {
                let terms = (1..=n).map(|i| (GroupElement::ratio(3i64.pow(i) - 1, 3i64.pow(i)), k.one()));
                HahnSeries::new(&k, 1, terms, Bound::Infinite).unwrap().to_json()
            })
            .collect();
        let job = json!({
            "task": "eval",
            "pcs": {"base": base.to_json(), "elems": elems},
            "f": {"num": [base.elem_to_json(&base.zero()), base.elem_to_json(&base.one())]},
        });
        let jobs = parse_jobs(&job.to_string()).unwrap();
        let out = run_job(&jobs[0], &RunOptions::default()).unwrap();
        assert_eq!(out.report["stable_value"], json!("2/3"));
        assert_eq!(out.report["stable_from"], json!(1));
        assert_eq!(out.report["stabilized"], json!(true));
    }
}
