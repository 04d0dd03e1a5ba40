//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit status:
//!
//! * 0 on success
//! * 1 on unreadable input, parse or dimension errors, and bad flags
//! * 2 when some class has non-finite cohomology
//! * 3 when a requested self-check fails

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};
use toric_cohom::{
    class_box, CohomologyResult, DegreeVector, DivisorClass, DualFilter, Engine, EngineOptions, Error,
    Execution, FanOracle, ToricVarietyModel,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NON_FINITE: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

/// Rationoms are listed only for neg-groups at most this large.
pub const RATIONOM_LIMIT: usize = 50;

#[derive(Debug, Parser)]
#[command(name = "toric-cohom", version, about = "Line bundle cohomology on toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute h^0..h^d for one or more divisor classes.
    Run(RunConfig),
    /// Validate a model and run the Hochster and filter self-checks.
    Check(CheckConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Variety file (JSON).
    pub input: PathBuf,
    /// Divisor class as comma-separated integers; repeatable.
    #[arg(long = "class", allow_hyphen_values = true, value_name = "A1,A2,..")]
    pub classes: Vec<String>,
    /// Inclusive ranges per class coordinate, e.g. `-2..2,0..3`.
    #[arg(long = "box", allow_hyphen_values = true, value_name = "LO..HI,..")]
    pub class_box: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Show per-degree contributions and small neg-groups.
    #[arg(long)]
    pub verbose: bool,
    /// Compare against the fan-complex route.
    #[arg(long)]
    pub oracle_check: bool,
    /// Compare h^i(α) with h^(d-i)(K-α).
    #[arg(long)]
    pub serre_check: bool,
    /// Sum over every degree, ignoring the complement filter, and compare
    /// with the filtered result.
    #[arg(long)]
    pub unfiltered_debug: bool,
    /// Override the cap on the number of Stanley-Reisner generators.
    #[arg(long)]
    pub generator_cap: Option<usize>,
    /// Run single-threaded.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct CheckConfig {
    /// Variety file (JSON).
    pub input: PathBuf,
    #[arg(long)]
    pub generator_cap: Option<usize>,
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let status = match cli.command {
        Command::Run(cfg) => run_classes(&cfg, out, err),
        Command::Check(cfg) => run_check(&cfg, out, err),
    };
    match status {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonFinite { .. } | Error::InfiniteGroup { .. } => EXIT_NON_FINITE,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn load(path: &PathBuf, err: &mut dyn Write) -> Result<ToricVarietyModel, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let model = ToricVarietyModel::parse(&text)?;
    if model.is_smooth() == Some(false) {
        writeln!(
            err,
            "warning: the fan is not smooth; results assume a simplicial projective variety"
        )?;
    }
    Ok(model)
}

/// `"3,-1"` → `[3, -1]`.
pub fn parse_class(spec: &str) -> Result<DivisorClass, String> {
    spec.split(',')
        .map(|t| {
            let t = t.trim();
            i64::from_str(t).map_err(|_| format!("invalid class entry {t:?} in {spec:?}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(DivisorClass)
}

/// `"-2..2,0..3"` → `[(-2, 2), (0, 3)]`.
pub fn parse_box(spec: &str) -> Result<Vec<(i64, i64)>, String> {
    spec.split(',')
        .map(|r| {
            let r = r.trim();
            let (lo, hi) = r
                .split_once("..")
                .ok_or_else(|| format!("invalid range {r:?}, expected LO..HI"))?;
            let lo = i64::from_str(lo.trim()).map_err(|_| format!("invalid bound in {r:?}"))?;
            let hi = i64::from_str(hi.trim()).map_err(|_| format!("invalid bound in {r:?}"))?;
            if lo > hi {
                return Err(format!("empty range {r:?}"));
            }
            Ok((lo, hi))
        })
        .collect()
}

fn engine_for(model: &ToricVarietyModel, filter: DualFilter, cfg: &RunConfig) -> Result<Engine, Failure> {
    let mut options = EngineOptions {
        filter,
        execution: if cfg.sequential { Execution::Sequential } else { Execution::Parallel },
        ..EngineOptions::default()
    };
    if let Some(cap) = cfg.generator_cap {
        options.generator_cap = cap;
    }
    Ok(Engine::with_options(model, options)?)
}

/// Outcome of the requested checks for one class; `None` when not requested.
#[derive(Default)]
struct Checks {
    oracle: Option<bool>,
    serre: Option<bool>,
    filter: Option<bool>,
}

impl Checks {
    fn all_pass(&self) -> bool {
        [self.oracle, self.serre, self.filter].iter().all(|c| c.unwrap_or(true))
    }

    fn tags(&self) -> String {
        let mut s = String::new();
        for (name, v) in [("oracle", self.oracle), ("serre", self.serre), ("filter", self.filter)] {
            if let Some(v) = v {
                let _ = write!(s, "  [{name} {}]", if v { "PASS" } else { "FAIL" });
            }
        }
        s
    }
}

fn run_classes(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let model = load(&cfg.input, err)?;
    let mut alphas = Vec::new();
    for c in &cfg.classes {
        alphas.push(parse_class(c).map_err(|m| Failure(EXIT_INPUT, m))?);
    }
    if let Some(b) = &cfg.class_box {
        let ranges = parse_box(b).map_err(|m| Failure(EXIT_INPUT, m))?;
        if ranges.len() != model.class_rank() {
            return Err(Failure(
                EXIT_INPUT,
                format!(
                    "box has {} ranges, expected {} (one per class coordinate)",
                    ranges.len(),
                    model.class_rank()
                ),
            ));
        }
        alphas.extend(class_box(&ranges));
    }
    if alphas.is_empty() {
        return Err(Failure(EXIT_INPUT, "no classes given; use --class or --box".into()));
    }
    for a in &alphas {
        model.check_class(a)?;
    }
    alphas.sort();
    alphas.dedup();

    let main_filter = if cfg.unfiltered_debug { DualFilter::Off } else { DualFilter::Checked };
    let engine = engine_for(&model, main_filter, cfg)?;
    let reference = if cfg.unfiltered_debug {
        Some(engine_for(&model, DualFilter::Trusted, cfg)?)
    } else {
        None
    };
    let oracle = if cfg.oracle_check {
        Some(FanOracle::with_execution(&model, engine.options().execution)?)
    } else {
        None
    };

    let results = engine.cohomology_all(&alphas);
    let d = model.dimension();
    let mut code = EXIT_OK;
    let mut json_rows = Vec::new();

    if cfg.format == OutputFormat::Csv {
        let mut header: Vec<String> = (1..=model.class_rank()).map(|i| format!("a{i}")).collect();
        header.extend((0..=d).map(|i| format!("h{i}")));
        for (flag, name) in [
            (cfg.oracle_check, "oracle"),
            (cfg.serre_check, "serre"),
            (cfg.unfiltered_debug, "filter"),
        ] {
            if flag {
                header.push(name.into());
            }
        }
        writeln!(out, "{}", header.join(","))?;
    }

    for (alpha, result) in alphas.iter().zip(results) {
        let result = match result {
            Ok(r) => r,
            Err(e) => {
                let f = Failure::from(e);
                writeln!(err, "error: {alpha}: {}", f.1)?;
                code = code.max(f.0);
                continue;
            }
        };
        let mut checks = Checks::default();
        if let Some(o) = &oracle {
            checks.oracle = Some(match o.cohomology_via_fan(alpha) {
                Ok(h) => h == result.dims,
                Err(e) => {
                    writeln!(err, "oracle: {alpha}: {e}")?;
                    false
                }
            });
        }
        if cfg.serre_check {
            checks.serre = Some(match engine.serre_check(alpha) {
                Ok(rep) => rep.pass,
                Err(e) => {
                    writeln!(err, "serre: {alpha}: {e}")?;
                    false
                }
            });
        }
        if let Some(r) = &reference {
            checks.filter = Some(match r.cohomology(alpha) {
                Ok(f) => f.dims == result.dims,
                Err(e) => {
                    writeln!(err, "filter: {alpha}: {e}")?;
                    false
                }
            });
        }
        if !checks.all_pass() {
            code = code.max(EXIT_CHECK);
        }
        match cfg.format {
            OutputFormat::Table => {
                writeln!(out, "{}: {}{}", alpha, join(&result.dims, " "), checks.tags())?;
                if cfg.verbose {
                    write_breakdown(out, &engine, &result)?;
                }
            }
            OutputFormat::Csv => {
                let mut cells: Vec<String> = alpha.0.iter().map(i64::to_string).collect();
                cells.extend(result.dims.iter().map(BigUint::to_string));
                for c in [checks.oracle, checks.serre, checks.filter].into_iter().flatten() {
                    cells.push(if c { "PASS" } else { "FAIL" }.into());
                }
                writeln!(out, "{}", cells.join(","))?;
            }
            OutputFormat::Json => json_rows.push(json_report(&engine, &result, &checks, cfg.verbose)),
        }
    }
    if cfg.format == OutputFormat::Json {
        let text = serde_json::to_string_pretty(&Value::Array(json_rows))
            .map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
        writeln!(out, "{text}")?;
    }
    Ok(code)
}

fn join(v: &[BigUint], sep: &str) -> String {
    v.iter().map(BigUint::to_string).collect::<Vec<_>>().join(sep)
}

fn big(v: &BigUint) -> Value {
    Value::Number(serde_json::Number::from_str(&v.to_string()).expect("decimal digits"))
}

fn json_report(engine: &Engine, r: &CohomologyResult, checks: &Checks, verbose: bool) -> Value {
    let n = engine.model().n();
    let breakdown: Vec<Value> = r
        .breakdown
        .iter()
        .map(|c| {
            let count = match c.count.finite() {
                Some(v) => big(v),
                None => Value::String("inf".into()),
            };
            let factors: Map<String, Value> = c.factors.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let contrib: Map<String, Value> = c.by_index.iter().map(|(k, v)| (k.to_string(), big(v))).collect();
            let mut entry = json!({
                "degree": c.degree.to_bitstring(n),
                "count": count,
                "factors": factors,
                "contrib": contrib,
            });
            if verbose {
                if let Some(list) = rationoms(engine, &r.alpha, c) {
                    entry["rationoms"] = json!(list);
                }
            }
            entry
        })
        .collect();
    let mut report = json!({
        "alpha": r.alpha.0,
        "h": r.dims.iter().map(big).collect::<Vec<_>>(),
        "breakdown": breakdown,
    });
    for (name, v) in [("oracle", checks.oracle), ("serre", checks.serre), ("filter", checks.filter)] {
        if let Some(v) = v {
            report[name] = json!(v);
        }
    }
    report
}

/// Small neg-groups as rational monomials, or `None` past the listing limit.
fn rationoms(engine: &Engine, alpha: &DivisorClass, c: &toric_cohom::Contribution) -> Option<Vec<String>> {
    let count = c.count.finite()?;
    if *count > BigUint::from(RATIONOM_LIMIT) || c.by_index.is_empty() {
        return None;
    }
    let names = engine.model().coordinate_names();
    let list = engine.neg_group(alpha, c.degree, RATIONOM_LIMIT).ok()?;
    Some(list.iter().map(|u| rationom(names, u)).collect())
}

/// `x^2 y / (z w^3)`-style rendering of a Laurent monomial.
pub fn rationom(names: &[String], u: &DegreeVector) -> String {
    let factor = |i: usize, e: i64| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) };
    let num: Vec<String> = u.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| factor(i, *e)).collect();
    let den: Vec<String> = u.0.iter().enumerate().filter(|(_, e)| **e < 0).map(|(i, e)| factor(i, -*e)).collect();
    let top = if num.is_empty() { "1".to_string() } else { num.join(" ") };
    match den.len() {
        0 => top,
        1 => format!("{top}/{}", den[0]),
        _ => format!("{top}/({})", den.join(" ")),
    }
}

fn write_breakdown(out: &mut dyn Write, engine: &Engine, r: &CohomologyResult) -> Result<(), Failure> {
    let n = engine.model().n();
    for c in r.breakdown.iter().filter(|c| !c.by_index.is_empty()) {
        let factors: Vec<String> = c.factors.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let contrib: Vec<String> = c.by_index.iter().map(|(k, v)| format!("h{k}+={v}")).collect();
        writeln!(
            out,
            "  degree {} |sigma|={} count={} factors {{{}}} {}",
            c.degree.to_bitstring(n),
            c.support_size(),
            c.count,
            factors.join(","),
            contrib.join(" ")
        )?;
        if let Some(list) = rationoms(engine, &r.alpha, c) {
            writeln!(out, "    {}", list.join(", "))?;
        }
    }
    Ok(())
}

fn run_check(cfg: &CheckConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let model = load(&cfg.input, err)?;
    let mut options = EngineOptions::default();
    if let Some(cap) = cfg.generator_cap {
        options.generator_cap = cap;
    }
    let engine = Engine::with_options(&model, options)?;
    let mut ok = true;

    writeln!(
        out,
        "coordinates {}, dimension {}, {} Stanley-Reisner generators, {} degrees ({} contributing)",
        model.n(),
        model.dimension(),
        model.sr_generators().len(),
        engine.degree_set().len(),
        engine.contributing_degrees().len()
    )?;
    let smooth = match model.is_smooth() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown (no fan data)",
    };
    writeln!(out, "smooth: {smooth}")?;

    let sound = engine.filter_is_sound() == Some(true);
    ok &= sound;
    writeln!(out, "complement filter: {}", if sound { "PASS" } else { "FAIL" })?;

    match FanOracle::new(&model) {
        Ok(oracle) => {
            let rep = oracle.hochster_check(engine.degree_set())?;
            let pass = rep.passed();
            ok &= pass;
            writeln!(
                out,
                "hochster: {} ({} degrees, {} vanishing subsets)",
                if pass { "PASS" } else { "FAIL" },
                rep.degrees_checked,
                rep.vanishing_checked
            )?;
            for m in &rep.mismatches {
                writeln!(out, "  mismatch at {}: {:?} vs {:?}", m.degree.to_bitstring(model.n()), m.gamma, m.hochster)?;
            }
            for s in &rep.nonvanishing_outside {
                writeln!(out, "  nonvanishing outside the degree set: {}", s.to_bitstring(model.n()))?;
            }
            let zero = DivisorClass(vec![0; model.class_rank()]);
            let agree = match (engine.cohomology(&zero), oracle.cohomology_via_fan(&zero)) {
                (Ok(a), Ok(b)) => a.dims == b,
                (Err(a), Err(b)) => a == b || matches!((a, b), (Error::NonFinite { .. }, Error::NonFinite { .. })),
                _ => false,
            };
            ok &= agree;
            writeln!(out, "routes agree at 0: {}", if agree { "PASS" } else { "FAIL" })?;
        }
        Err(Error::MissingFan) => writeln!(out, "hochster: skipped (no fan data)")?,
        Err(e) => return Err(e.into()),
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_and_box_parsing() {
        assert_eq!(parse_class("3,-1").unwrap(), DivisorClass(vec![3, -1]));
        assert!(parse_class("3,x").is_err());
        assert_eq!(parse_box("-2..2, 0..3").unwrap(), vec![(-2, 2), (0, 3)]);
        assert!(parse_box("2..-2").is_err());
        assert!(parse_box("1-2").is_err());
    }

    #[test]
    fn rationom_rendering() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(rationom(&names, &DegreeVector(vec![2, 1, 0])), "x^2 y");
        assert_eq!(rationom(&names, &DegreeVector(vec![-1, -1, -1])), "1/(x y z)");
        assert_eq!(rationom(&names, &DegreeVector(vec![1, 0, -3])), "x/z^3");
    }
}
