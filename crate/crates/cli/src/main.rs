//! `fscat`: validate category specs and compute higher Frobenius-Schur
//! indicators.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fscat::bundled;
use fscat::fusioncat::{
    canonical_pivotal, enumerate_pivotal_structures, gauge_transform, random_gauge, validate,
    validate_spec, Category, ObjectExpr, SpecFile,
};
use fscat::indicators::{check_fs_theorems, IndicatorReport, Indicators, DEFAULT_DIMENSION_GUARD};
use fscat::oracles::{family, pointed, FAMILIES};

const GUARD_VAR: &str = "FSCAT_NMAX_GUARD";

#[derive(Parser)]
#[command(
    name = "fscat",
    version,
    about = "Exact higher Frobenius-Schur indicators of pivotal fusion categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a spec against the fusion category axioms.
    Validate {
        /// Spec file, or `@name` for a bundled spec.
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate indicators of an object.
    Ind {
        spec: String,
        /// Object expression such as `tau`, `a + sigma` or `2*g`.
        #[arg(long)]
        object: String,
        /// Range `A..B` (inclusive) or a single value.
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        r: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// `canonical` or `index K`; defaults to the pivotal data in the spec.
        #[arg(long, num_args = 1..=2)]
        pivotal: Option<Vec<String>>,
        /// Print the rotation operator blocks to stderr.
        #[arg(long)]
        dump: bool,
    },
    /// Run every theorem check over all simples.
    Check {
        spec: String,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, num_args = 1..=2)]
        pivotal: Option<Vec<String>>,
    },
    /// Compare indicators before and after seeded random gauge transformations.
    GaugeCheck {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, num_args = 1..=2)]
        pivotal: Option<Vec<String>>,
    },
    /// Write the spec of a built-in family.
    Emit {
        /// One of the bundled family names, or `pointed`.
        family: String,
        /// Group order for `pointed`.
        #[arg(long, default_value_t = 2)]
        order: u32,
        /// Cocycle exponent for `pointed`.
        #[arg(long, default_value_t = 0)]
        cocycle: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn semantic(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn io(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn load_spec(spec: &str) -> Result<SpecFile, Failure> {
    let text = match spec.strip_prefix('@') {
        Some(name) => bundled::spec_text(name)
            .ok_or_else(|| {
                io(format!(
                    "no bundled spec `{name}`; known: {}",
                    bundled::NAMES.join(", ")
                ))
            })?
            .to_string(),
        None => fs::read_to_string(spec).map_err(|e| io(format!("{spec}: {e}")))?,
    };
    SpecFile::from_json(&text).map_err(|e| io(format!("{spec}: {e}")))
}

fn load_category(spec: &str) -> Result<Category, Failure> {
    let file = load_spec(spec)?;
    let report = validate_spec(&file);
    if !report.is_valid() {
        return Err(semantic(format!(
            "{}spec is not a valid category",
            report.render_text()
        )));
    }
    file.to_category().map_err(|e| semantic(e.to_string()))
}

fn choose_pivotal(cat: Category, choice: &Option<Vec<String>>) -> Result<Category, Failure> {
    let Some(args) = choice else {
        if cat.pivotal.is_some() {
            return Ok(cat);
        }
        return Err(semantic(
            "spec has no pivotal data; pass --pivotal canonical or --pivotal index K",
        ));
    };
    match args
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .as_slice()
    {
        ["canonical"] => match canonical_pivotal(&cat).map_err(|e| semantic(e.to_string()))? {
            Some(p) => Ok(cat.with_pivotal(p)),
            None => Err(semantic(
                "no canonical pivotal structure (category is not pseudo-unitary)",
            )),
        },
        ["index", k] => {
            let k: usize = k
                .parse()
                .map_err(|_| io(format!("bad pivotal index `{k}`")))?;
            let cands = enumerate_pivotal_structures(&cat).map_err(|e| semantic(e.to_string()))?;
            let c = cands.get(k).ok_or_else(|| {
                semantic(format!(
                    "pivotal index {k} out of range ({} structures)",
                    cands.len()
                ))
            })?;
            Ok(cat.with_pivotal(c.data.clone()))
        }
        _ => Err(io("--pivotal takes `canonical` or `index K`")),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || io(format!("bad range `{s}`; expected `A..B` or `A`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), s.trim()),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn dimension_guard() -> Result<usize, Failure> {
    match std::env::var(GUARD_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            io(format!(
                "{GUARD_VAR} must be a nonnegative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_DIMENSION_GUARD),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_validate(spec: &str, format: Format) -> Result<(), Failure> {
    let file = load_spec(spec)?;
    let report = validate_spec(&file);
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            print!("{s}");
        }
        Format::Csv => {
            println!("group,status,failures");
            for g in &report.groups {
                let status = if g.skipped {
                    "skip"
                } else if g.passed {
                    "pass"
                } else {
                    "fail"
                };
                println!("\"{}\",{status},{}", g.name, g.failures.len());
            }
        }
        Format::Text => print!("{}", report.render_text()),
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(semantic("validation failed"))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_ind(
    spec: &str,
    object: &str,
    n: &str,
    r: &str,
    format: Format,
    pivotal: &Option<Vec<String>>,
    dump: bool,
) -> Result<(), Failure> {
    let cat = choose_pivotal(load_category(spec)?, pivotal)?;
    let v = ObjectExpr::parse(object, &cat.ring).map_err(|e| io(e.to_string()))?;
    if v.is_zero() {
        return Err(semantic("zero object"));
    }
    let (n0, n1) = parse_range(n)?;
    if n0 < 1 {
        return Err(io("n must be positive"));
    }
    let r_range = parse_range(r)?;
    let ind = Indicators::new(&cat)
        .map_err(|e| semantic(e.to_string()))?
        .with_guard(dimension_guard()?);
    let report = IndicatorReport::compute(&ind, &v, (n0 as usize, n1 as usize), r_range)
        .map_err(|e| semantic(e.to_string()))?;
    if dump {
        for n in n0..=n1 {
            let rot = ind
                .rotation_operator(&v, n as usize)
                .map_err(|e| semantic(e.to_string()))?;
            eprint!("{}", rot.render(cat.ring.labels()));
        }
    }
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    print!("{text}");
    if report.all_checks_pass() {
        Ok(())
    } else {
        Err(semantic("a theorem check failed on the computed cells"))
    }
}

fn cmd_check(
    spec: &str,
    nmax: usize,
    format: Format,
    pivotal: &Option<Vec<String>>,
) -> Result<(), Failure> {
    let cat = choose_pivotal(load_category(spec)?, pivotal)?;
    let report = check_fs_theorems(&cat, nmax).map_err(|e| semantic(e.to_string()))?;
    match format {
        Format::Json => print!("{}", report.to_json()),
        _ => print!("{}", report.render_text()),
    }
    match report.first_failure() {
        None => Ok(()),
        Some((group, what)) => Err(semantic(format!("{group}: {what}"))),
    }
}

fn gauge_table(cat: &Category) -> Result<Vec<fscat::exactnum::Cyc>, Failure> {
    let ind = Indicators::new(cat).map_err(|e| semantic(e.to_string()))?;
    let mut out = Vec::new();
    for a in 0..cat.rank() {
        for n in 1..=4 {
            let rot = ind
                .rotation_operator(&ObjectExpr::simple(a), n)
                .map_err(|e| semantic(e.to_string()))?;
            for r in 0..n as i64 {
                out.push(rot.trace_power(r).map_err(|e| semantic(e.to_string()))?);
            }
        }
    }
    Ok(out)
}

fn cmd_gauge_check(
    spec: &str,
    seed: u64,
    trials: u64,
    pivotal: &Option<Vec<String>>,
) -> Result<(), Failure> {
    let cat = choose_pivotal(load_category(spec)?, pivotal)?;
    let reference = gauge_table(&cat)?;
    for trial in 0..trials {
        let s = seed.wrapping_add(trial);
        let g = random_gauge(&cat, s);
        let gauged = gauge_transform(&cat, &g).map_err(|e| semantic(e.to_string()))?;
        let agree = validate(&gauged).is_valid() && gauge_table(&gauged)? == reference;
        if !agree {
            let dump = serde_json::to_string(&g.to_json(&cat.ring)).expect("gauge serializes");
            return Err(semantic(format!(
                "indicators changed under gauge seed {s}: {dump}"
            )));
        }
    }
    println!(
        "{}: indicators (n <= 4) unchanged under {trials} gauges from seed {seed}",
        cat.name
    );
    Ok(())
}

fn cmd_emit(name: &str, order: u32, cocycle: u32, output: Option<&Path>) -> Result<(), Failure> {
    let cat = if name == "pointed" {
        pointed(order, cocycle)
    } else if FAMILIES.contains(&name) {
        family(name)
    } else {
        return Err(io(format!(
            "unknown family `{name}`; known: pointed, {}",
            FAMILIES.join(", ")
        )));
    };
    let cat = cat.map_err(|e| semantic(e.to_string()))?;
    write_output(output, &SpecFile::from_category(&cat).to_json())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { spec, format } => cmd_validate(&spec, format),
        Command::Ind {
            spec,
            object,
            n,
            r,
            format,
            pivotal,
            dump,
        } => cmd_ind(&spec, &object, &n, &r, format, &pivotal, dump),
        Command::Check {
            spec,
            nmax,
            format,
            pivotal,
        } => cmd_check(&spec, nmax, format, &pivotal),
        Command::GaugeCheck {
            spec,
            seed,
            trials,
            pivotal,
        } => cmd_gauge_check(&spec, seed, trials, &pivotal),
        Command::Emit {
            family,
            order,
            cocycle,
            output,
        } => cmd_emit(&family, order, cocycle, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fscat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
