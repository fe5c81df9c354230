use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fracideal::annihilator::{nc_ideal, project_to_abelianization, two_sided_check, AnnihilatorDatum};
use fracideal::brauer::{subgroup_lattice, BrauerData, SubgroupRecord};
use fracideal::check::CheckResult;
use fracideal::cyclo_ideals::{ideal_j_full, ideal_j_imagquad, CyclotomicLevel, UnitQuotientFixture};
use fracideal::dirichlet::{l_value, PlaceSet};
use fracideal::stickelberger::{character, stickelberger_checked};
use fracideal::{suites, Ambient, Error, FiniteGroup, FractionalIdeal, GroupRingElement, QGroupRing, QMatrix, Rational};

const SCHEMA_VERSION: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "fracideal", version, about = "Exact Stickelberger, group-ring and fractional ideal computations")]
struct Cli {
    /// Line-oriented key=value defaults; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Add wall-clock timing to the report (breaks byte-for-byte determinism).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stickelberger element θ(r) over (ℤ/m)^×.
    Stickelberger {
        #[arg(long)]
        modulus: u64,
        /// Places, e.g. "infty,7".
        #[arg(long, default_value = "infty")]
        s: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        r: i64,
    },
    /// S-truncated L-value L_S(r, χ).
    Lvalue {
        #[arg(long)]
        modulus: u64,
        /// Character index in lexicographic exponent order; 0 is trivial.
        #[arg(long = "char", default_value_t = 0)]
        chi: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, default_value = "infty")]
        s: String,
    },
    /// Fractional ideals attached to cyclotomic levels.
    Ideal {
        #[arg(long, value_enum, default_value_t = Family::Cyclotomic)]
        family: Family,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 0)]
        level: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, value_enum, default_value_t = Part::Full)]
        part: Part,
        /// JSON unit-quotient ideal over the real quotient; defaults to the unit ideal.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// The map B_G* from class functions to subgroup components.
    BrauerMap {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Left ideal generated by annihilator data, with two-sidedness check.
    NcIdeal {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 3)]
        ell: u64,
        /// JSON data list; defaults to α = 1 − t on every order-2 subgroup.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Run a named check suite.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict the functoriality suite to quotient checks at this prime.
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long, default_value_t = 1)]
        levels: u32,
    },
}

#[derive(clap::Args, Debug)]
struct GroupArg {
    /// Built-in group: S3, D4, Q8, A4, Cn, CnxCm.
    #[arg(long, conflicts_with = "cayley")]
    group: Option<String>,
    /// Plain-text Cayley table file.
    #[arg(long)]
    cayley: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Family {
    Cyclotomic,
    Imagquad,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Part {
    Plus,
    Minus,
    Full,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("fixture {path}: {detail}")]
    Fixture { path: String, detail: String },
    #[error("usage: {0}")]
    Usage(String),
}

struct Report {
    body: Map<String, Value>,
    checks: Vec<CheckResult>,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Self {
        let mut body = Map::new();
        body.insert("schema_version".into(), json!(SCHEMA_VERSION));
        body.insert("command".into(), json!(command));
        body.insert("inputs".into(), inputs);
        Report { body, checks: Vec::new() }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.body.insert(key.into(), value);
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn finish(mut self, elapsed: Option<f64>) -> (Value, bool) {
        let passed = self.passed();
        if !self.checks.is_empty() {
            let checks = serde_json::to_value(&self.checks).expect("serializable");
            self.body.insert("checks".into(), checks);
            self.body.insert("passed".into(), json!(passed));
        }
        if let Some(ms) = elapsed {
            self.body.insert("timing_ms".into(), json!(ms));
        }
        (Value::Object(self.body), passed)
    }
}

fn element_json(x: &QGroupRing) -> Value {
    let g = x.group();
    Value::Object((0..g.order()).map(|i| (g.label(i).to_string(), json!(x.coeff(i).to_string()))).collect())
}

fn ideal_json(j: &FractionalIdeal) -> Value {
    let labels = j.ambient().labels();
    let basis: Vec<Value> = j
        .lattice()
        .iter()
        .map(|row| Value::Object(row.iter().zip(labels).map(|(x, l)| (l.clone(), json!(x.to_string()))).collect()))
        .collect();
    json!({
        "rank": j.rank(),
        "dimension": j.dim(),
        "denominator": j.denominator().to_string(),
        "lattice": basis,
        "text": j.to_string(),
    })
}

fn matrix_json(m: &QMatrix, rows: &[String], cols: &[String]) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let mut entry = Map::new();
            entry.insert("row".into(), json!(rows[i]));
            entry.insert(
                "entries".into(),
                Value::Object(m.row(i).iter().zip(cols).map(|(x, c)| (c.clone(), json!(x.to_string()))).collect()),
            );
            Value::Object(entry)
        })
        .collect();
    Value::Array(rows)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_group(arg: &GroupArg) -> Result<Arc<FiniteGroup>, CliError> {
    match (&arg.group, &arg.cayley) {
        (Some(name), None) => Ok(Arc::new(FiniteGroup::builtin(name)?)),
        (None, Some(path)) => Ok(Arc::new(FiniteGroup::parse_cayley(&read(path)?)?)),
        _ => Err(CliError::Usage("exactly one of --group or --cayley is required".into())),
    }
}

fn load_fixture(path: &Path) -> Result<(String, Value), CliError> {
    let name = path.display().to_string();
    let value: Value = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Fixture { path: name.clone(), detail: e.to_string() })?;
    match value.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => Ok((name, value)),
        Some(v) => Err(CliError::Fixture { path: name, detail: format!("schema_version: unsupported version {v}") }),
        None => Err(CliError::Fixture { path: name, detail: "schema_version: missing or not an integer".into() }),
    }
}

/// Reads {label: "p/q"} into a coefficient vector over `labels`.
fn parse_coeffs(path: &str, field: &str, value: &Value, labels: &[String]) -> Result<Vec<Rational>, CliError> {
    let bad = |detail: String| CliError::Fixture { path: path.into(), detail: format!("{field}: {detail}") };
    let obj = value.as_object().ok_or_else(|| bad("expected an object of label -> coefficient".into()))?;
    let mut out = vec![Rational::from_integer(0.into()); labels.len()];
    for (k, v) in obj {
        let i = labels.iter().position(|l| l == k).ok_or_else(|| bad(format!("unknown label {k}")))?;
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() => n.to_string(),
            _ => return Err(bad(format!("coefficient at {k} must be an integer or a \"p/q\" string"))),
        };
        out[i] = text.parse().map_err(|_| bad(format!("cannot parse coefficient {text:?} at {k}")))?;
    }
    Ok(out)
}

fn unit_fixture(path: Option<&PathBuf>, ambient: Ambient) -> Result<UnitQuotientFixture, CliError> {
    let Some(path) = path else {
        return Ok(UnitQuotientFixture::unit(ambient));
    };
    let (name, value) = load_fixture(path)?;
    let gens = value
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Fixture { path: name.clone(), detail: "generators: missing or not an array".into() })?;
    let vectors = gens
        .iter()
        .enumerate()
        .map(|(i, g)| parse_coeffs(&name, &format!("generators[{i}]"), g, ambient.labels()))
        .collect::<Result<Vec<_>, _>>()?;
    let note = value.get("note").and_then(Value::as_str).unwrap_or("fixture").to_string();
    Ok(UnitQuotientFixture { ideal: FractionalIdeal::from_vectors(ambient, &vectors)?, note })
}

fn default_nc_data(g: &FiniteGroup, ell: u64) -> Result<Vec<AnnihilatorDatum>, CliError> {
    let mut out = Vec::new();
    for rec in subgroup_lattice(g)?.into_iter().filter(|s| s.order() == 2) {
        let ab = rec.abelianization.clone();
        let t = (0..ab.order()).find(|&a| a != ab.identity()).expect("order 2");
        let alpha = &GroupRingElement::one(&ab) - &GroupRingElement::basis(&ab, t);
        out.push(AnnihilatorDatum::new(rec, alpha, GroupRingElement::one(&ab), ell)?);
    }
    Ok(out)
}

fn fixture_nc_data(path: &Path, g: &Arc<FiniteGroup>, ell: u64) -> Result<Vec<AnnihilatorDatum>, CliError> {
    let (name, value) = load_fixture(path)?;
    let bad = |detail: String| CliError::Fixture { path: name.clone(), detail };
    let items = value.get("data").and_then(Value::as_array).ok_or_else(|| bad("data: missing or not an array".into()))?;
    let mut out = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let field = |f: &str| format!("data[{i}].{f}");
        let labels = item
            .get("subgroup")
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("{}: missing or not an array", field("subgroup"))))?;
        let mut elements = Vec::new();
        for l in labels {
            let l = l.as_str().ok_or_else(|| bad(format!("{}: labels must be strings", field("subgroup"))))?;
            elements.push(g.index_of_label(l).ok_or_else(|| bad(format!("{}: unknown element {l}", field("subgroup"))))?);
        }
        elements.sort_unstable();
        let rec = SubgroupRecord::new(g, &elements).map_err(|e| bad(format!("{}: {e}", field("subgroup"))))?;
        let mut parts = Vec::new();
        for key in ["alpha", "beta"] {
            let v = item.get(key).ok_or_else(|| bad(format!("{}: missing", field(key))))?;
            let coeffs = parse_coeffs(&name, &field(key), v, g.labels())?;
            let x = GroupRingElement::from_coeffs(g, coeffs)?;
            parts.push(project_to_abelianization(&rec, &x).map_err(|e| bad(format!("{}: {e}", field(key))))?);
        }
        let beta = parts.pop().expect("two parts");
        let alpha = parts.pop().expect("two parts");
        out.push(AnnihilatorDatum::new(rec, alpha, beta, ell)?);
    }
    Ok(out)
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Stickelberger { modulus, s, r } => {
            let places = PlaceSet::parse(s)?;
            let theta = stickelberger_checked(*modulus, &places, *r)?;
            let mut report = Report::new("stickelberger", json!({"modulus": modulus, "s": s, "r": r}));
            report.set("coefficients", element_json(&theta.element));
            report.checks.push(CheckResult::pass("partial zeta and character routes agree"));
            Ok(report)
        }
        Command::Lvalue { modulus, chi, r, s } => {
            let places = PlaceSet::parse(s)?;
            let c = character(*modulus, *chi)?;
            let value = l_value(*r, &c, &places)?;
            let mut report = Report::new("lvalue", json!({"modulus": modulus, "char": chi, "r": r, "s": s}));
            report.set("conductor", json!(c.conductor()));
            report.set("value", json!(value.to_string()));
            Ok(report)
        }
        Command::Ideal { family, ell, level, r, part, fixture } => {
            let inputs = json!({
                "family": format!("{family:?}").to_lowercase(),
                "ell": ell,
                "level": level,
                "r": r,
                "part": format!("{part:?}").to_lowercase(),
            });
            let mut report = Report::new("ideal", inputs);
            let level_data = CyclotomicLevel::new(*ell, *level)?;
            let u = unit_fixture(fixture.as_ref(), level_data.plus_tower().quotient_ambient())?;
            report.set("unit_quotient", json!(u.note));
            match family {
                Family::Cyclotomic => {
                    let full = ideal_j_full(&level_data, *r, &u)?;
                    let chosen = match part {
                        Part::Full => &full.ideal,
                        Part::Plus => &full.plus,
                        Part::Minus => &full.minus,
                    };
                    report.set("ideal", ideal_json(chosen));
                }
                Family::Imagquad => {
                    let j = ideal_j_imagquad(*ell, *level, &u)?;
                    report.set("half_stickelberger", element_json(&j.half.element));
                    report.set("base_change", element_json(&j.base_change));
                    report.set("ideal", ideal_json(&j.ideal));
                }
            }
            Ok(report)
        }
        Command::BrauerMap { group } => {
            let g = load_group(group)?;
            let data = BrauerData::new(g.clone())?;
            let b = data.bgstar();
            let mut report = Report::new("brauer-map", json!({"group": g.name()}));
            let classes: Vec<Value> =
                data.classes.iter().map(|c| json!(c.iter().map(|&x| g.label(x)).collect::<Vec<_>>())).collect();
            report.set("classes", Value::Array(classes));
            report.set("rank", json!(b.rank()));
            report.set(
                "matrix",
                matrix_json(&b, data.component_ambient().labels(), data.class_ambient().labels()),
            );
            report.set("scope", json!("component ideals are synthetic or fixture data outside the abelian case"));
            let rank = b.rank();
            report.checks.push(CheckResult::from_witness(
                "B* is injective",
                (!data.is_injective(&b)).then(|| format!("rank {rank} < {}", data.classes.len())),
            ));
            report.checks.push(CheckResult::from_witness(
                "B* pairs with Ind Inf",
                data.duality_mismatch(&b)?.map(|(h, phi, c)| format!("subgroup H{h}, character {phi}, class {c}")),
            ));
            Ok(report)
        }
        Command::NcIdeal { group, ell, fixture } => {
            let g = load_group(group)?;
            let data = match fixture {
                Some(path) => fixture_nc_data(path, &g, *ell)?,
                None => default_nc_data(&g, *ell)?,
            };
            let ideal = nc_ideal(&g, &data)?;
            let mut report = Report::new("nc-ideal", json!({"group": g.name(), "ell": ell, "data": data.len()}));
            report.set("generators", Value::Array(ideal.generators.iter().map(element_json).collect()));
            report.set("ideal", ideal_json(&ideal.lattice));
            report.checks.push(two_sided_check(&ideal)?);
            Ok(report)
        }
        Command::Check { suite, ell, levels } => {
            let mut report = Report::new("check", json!({"suite": suite, "ell": ell, "levels": levels}));
            report.checks = match ell {
                Some(l) if suite == "functoriality" => suites::quotient_functoriality_at(*l, *levels)?,
                Some(_) => return Err(CliError::Usage("--ell only applies to --suite functoriality".into())),
                None => suites::run_suite(suite)?,
            };
            Ok(report)
        }
    }
}

/// Appends `--key=value` for config entries whose flag is absent from the command line.
fn apply_config(mut args: Vec<String>) -> Result<Vec<String>, CliError> {
    let path = args.iter().enumerate().find_map(|(i, a)| {
        a.strip_prefix("--config=").map(str::to_string).or_else(|| (a == "--config").then(|| args.get(i + 1).cloned()).flatten())
    });
    let Some(path) = path else {
        return Ok(args);
    };
    let text = read(Path::new(&path))?;
    let mut extra = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Fixture { path: path.clone(), detail: format!("line {}: expected key=value", n + 1) })?;
        let (key, value) = (key.trim(), value.trim());
        let flag = format!("--{key}");
        if args.iter().any(|a| a == &flag || a.starts_with(&format!("{flag}="))) {
            continue;
        }
        match value {
            "true" if key == "timing" => extra.push(flag),
            "false" if key == "timing" => {}
            _ => extra.push(format!("{flag}={value}")),
        }
    }
    args.extend(extra);
    Ok(args)
}

fn main() -> ExitCode {
    let args = match apply_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match run(&cli.command) {
        Ok(report) => {
            let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
            let (value, passed) = report.finish(elapsed);
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
