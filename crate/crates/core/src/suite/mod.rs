//! Named verification suites. Each suite is planned as a list of tasks, the
//! tasks run on a worker pool, and the rows come back in plan order.

mod plans;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

pub const SUITES: &[&str] = &[
    "fields",
    "gauss",
    "stickelberger",
    "identities",
    "vdgv",
    "moments",
    "sp-traces",
    "su-traces",
    "weil-groups",
    "hyperg-grid",
];

/// Parameter overrides. Unset fields fall back to the suite's default grid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub p: Option<u64>,
    pub f: Option<u32>,
    pub q: Option<u64>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    /// Extension degrees over the prime field.
    pub tower: Option<Vec<u32>>,
}

impl Grid {
    /// Reads a grid from a JSON file with the same keys as the struct.
    pub fn from_file(path: &Path) -> Result<Self> {
        let s = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&s).map_err(|e| Error::InvalidGrid(format!("{}: {e}", path.display())))
    }

    pub fn is_default(&self) -> bool {
        *self == Grid::default()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub grid: Grid,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
    pub dry_run: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Planned,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Row {
    pub check_id: String,
    pub params: String,
    pub expected: String,
    pub got: String,
    pub status: Status,
    /// Exact values (JSON only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<serde_json::Value>,
}

/// The field model a report's numbers depend on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldModel {
    pub p: u64,
    pub f: u32,
    pub modulus: Vec<u64>,
    pub generator: Vec<u64>,
}

impl FieldModel {
    pub fn of(k: &FieldSpec) -> Self {
        FieldModel { p: k.p(), f: k.f(), modulus: k.modulus().to_vec(), generator: k.generator().coeffs() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Seconds since the Unix epoch; the only field that varies between runs.
    pub generated_at: u64,
    pub grid: Grid,
    pub fields: Vec<FieldModel>,
    pub rows: Vec<Row>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }

    /// 0 iff no row failed.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    /// The CSV projection: one line per row, exact values dropped.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check_id", "params", "expected", "got", "status"]).map_err(io)?;
        for r in &self.rows {
            let st = match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Planned => "planned",
            };
            w.write_record([&r.check_id, &r.params, &r.expected, &r.got, st]).map_err(io)?;
        }
        String::from_utf8(w.into_inner().map_err(io)?).map_err(io)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        fs::write(path, self.render(format)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

pub(crate) struct Outcome {
    pub expected: String,
    pub got: String,
    pub ok: bool,
    pub value: Option<serde_json::Value>,
}

impl Outcome {
    pub fn new(expected: impl ToString, got: impl ToString, ok: bool) -> Self {
        Outcome { expected: expected.to_string(), got: got.to_string(), ok, value: None }
    }

    pub fn eq<T: PartialEq + std::fmt::Display>(expected: T, got: T) -> Self {
        let ok = expected == got;
        Outcome::new(expected, got, ok)
    }

    pub fn with_value(mut self, v: impl Serialize) -> Self {
        self.value = serde_json::to_value(v).ok();
        self
    }
}

type Job = Box<dyn Fn() -> Result<Vec<Outcome>> + Send + Sync>;

/// One unit of work producing one row per declared check.
pub(crate) struct Task {
    checks: Vec<(String, String)>,
    job: Job,
}

impl Task {
    pub fn one<F>(id: impl Into<String>, params: impl Into<String>, f: F) -> Self
    where
        F: Fn() -> Result<Outcome> + Send + Sync + 'static,
    {
        Task { checks: vec![(id.into(), params.into())], job: Box::new(move || Ok(vec![f()?])) }
    }

    pub fn many<F>(checks: Vec<(String, String)>, f: F) -> Self
    where
        F: Fn() -> Result<Vec<Outcome>> + Send + Sync + 'static,
    {
        Task { checks, job: Box::new(f) }
    }

    fn run(&self) -> Vec<Row> {
        let outcomes = (self.job)();
        self.checks
            .iter()
            .enumerate()
            .map(|(i, (id, params))| {
                let mk = |expected: String, got: String, status, value| Row {
                    check_id: id.clone(),
                    params: params.clone(),
                    expected,
                    got,
                    status,
                    value,
                };
                match &outcomes {
                    Ok(v) => match v.get(i) {
                        Some(o) => {
                            let st = if o.ok { Status::Pass } else { Status::Fail };
                            mk(o.expected.clone(), o.got.clone(), st, o.value.clone())
                        }
                        None => mk(String::new(), "missing outcome".into(), Status::Fail, None),
                    },
                    Err(e) => mk(String::new(), format!("error: {e}"), Status::Fail, None),
                }
            })
            .collect()
    }

    fn planned(&self) -> Vec<Row> {
        self.checks
            .iter()
            .map(|(id, params)| Row {
                check_id: id.clone(),
                params: params.clone(),
                expected: String::new(),
                got: String::new(),
                status: Status::Planned,
                value: None,
            })
            .collect()
    }
}

#[derive(Default)]
pub(crate) struct Plan {
    pub fields: Vec<FieldSpec>,
    pub tasks: Vec<Task>,
}

impl Plan {
    pub fn field(&mut self, k: &FieldSpec) {
        self.fields.push(k.clone());
    }

    pub fn push(&mut self, t: Task) {
        self.tasks.push(t);
    }

    fn extend(&mut self, o: Plan) {
        self.fields.extend(o.fields);
        self.tasks.extend(o.tasks);
    }
}

fn plan(name: &str, grid: &Grid) -> Result<Plan> {
    match name {
        "fields" => plans::fields(grid),
        "gauss" => plans::gauss(grid),
        "stickelberger" => plans::stickelberger(grid),
        "identities" => plans::identities(grid),
        "vdgv" => plans::vdgv(grid),
        "moments" => plans::moments(grid),
        "sp-traces" => plans::sp_traces(grid),
        "su-traces" => plans::su_traces(grid),
        "weil-groups" => plans::weil_groups(grid),
        "hyperg-grid" => plans::hyperg_grid(grid),
        "all" => {
            let mut p = Plan::default();
            for s in SUITES {
                p.extend(plan(s, grid)?);
            }
            Ok(p)
        }
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Lists the checks a suite would run, without computing anything.
pub fn planned_checks(name: &str, grid: &Grid) -> Result<Vec<(String, String)>> {
    Ok(plan(name, grid)?.tasks.iter().flat_map(|t| t.checks.clone()).collect())
}

/// Runs a suite and, when `config.out` is set, writes the report there.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let plan = plan(name, &config.grid)?;
    let rows: Vec<Row> = if config.dry_run {
        plan.tasks.iter().flat_map(Task::planned).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
        pool.install(|| plan.tasks.par_iter().map(Task::run).collect::<Vec<_>>()).into_iter().flatten().collect()
    };
    let fields: BTreeMap<(u64, u32), FieldModel> =
        plan.fields.iter().map(|k| ((k.p(), k.f()), FieldModel::of(k))).collect();
    let report = SuiteReport {
        suite: name.to_string(),
        generated_at: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        grid: config.grid.clone(),
        fields: fields.into_values().collect(),
        rows,
    };
    if let Some(path) = &config.out {
        report.write(path, config.format)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &SuiteConfig::default()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn dry_run_lists_everything() {
        let cfg = SuiteConfig { dry_run: true, ..Default::default() };
        let r = run_suite("all", &cfg).unwrap();
        assert!(r.rows.len() > 100);
        assert!(r.rows.iter().all(|r| r.status == Status::Planned));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn stickelberger_suite_passes_and_is_reproducible() {
        let cfg = SuiteConfig { jobs: 2, ..Default::default() };
        let a = run_suite("stickelberger", &cfg).unwrap();
        let b = run_suite("stickelberger", &SuiteConfig { jobs: 1, ..Default::default() }).unwrap();
        assert!(a.passed(), "{:?}", a.failures().collect::<Vec<_>>());
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert_eq!(serde_json::to_value(&a.rows).unwrap(), serde_json::to_value(&b.rows).unwrap());
    }

    #[test]
    fn invalid_grid() {
        let grid = Grid { p: Some(4), ..Default::default() };
        let cfg = SuiteConfig { grid, ..Default::default() };
        assert!(matches!(run_suite("gauss", &cfg), Err(Error::InvalidGrid(_))));
    }
}
