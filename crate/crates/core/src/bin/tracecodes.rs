use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tracecodes::closed_form::{classify, predicted_distribution};
use tracecodes::code::{brute_weight_distribution, CodeError, DefiningSet};
use tracecodes::field::{FieldCtx, FieldError, DEFAULT_MAX_Q};
use tracecodes::report::{gauss_report, parse_checks, parse_grid, verify_grid, Check, VerifyOptions};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "tracecodes", version, about = "Trace codes over F_p from D = {x : Tr(x^2 + x) = 0}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build C_D, print [n,k,d] and the weight enumerator, export D
    Build(Common),
    /// Print the closed-form prediction without enumerating anything
    Predict(Common),
    /// Compare brute force against the prediction and run the lemma checks
    Verify(Common),
    /// Exact quadratic Gauss sum against its closed form
    Gauss(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    /// Parameter list, e.g. "3,3;3,4;5,3"
    #[arg(long)]
    grid: Option<String>,
    /// Largest field size that will be enumerated (env: CAP)
    #[arg(long)]
    max_q: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma list from distribution,lemmas,gauss,moments,dual,ss-ratio, or "all"
    #[arg(long)]
    checks: Option<String>,
    /// Grid entries verified concurrently (env: JOBS)
    #[arg(long)]
    jobs: Option<usize>,
    /// key=value file supplying any of the options above
    #[arg(long)]
    config: Option<PathBuf>,
    /// Include runtime_ms in reports
    #[arg(long)]
    timestamps: bool,
    #[arg(long, hide = true)]
    corrupt_prediction: bool,
}

/// Fully resolved options: flags, then config file, then environment, then
/// defaults.
struct Resolved {
    targets: Vec<(u32, u32)>,
    max_q: u64,
    format: Option<Format>,
    out: Option<PathBuf>,
    checks: std::collections::BTreeSet<Check>,
    jobs: usize,
    timestamps: bool,
    corrupt_prediction: bool,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Usage> {
    v.parse().map_err(|_| Usage(format!("invalid value {v:?} for {key}")))
}

fn env_value<T: std::str::FromStr>(key: &str) -> Result<Option<T>, Usage> {
    match std::env::var(key) {
        Ok(v) if !v.trim().is_empty() => parse_value(key, v.trim()).map(Some),
        _ => Ok(None),
    }
}

fn resolve(c: &Common) -> Result<Resolved, Usage> {
    let cfg = match &c.config {
        Some(path) => read_config(path)?,
        None => BTreeMap::new(),
    };
    const KNOWN: [&str; 9] = ["p", "m", "grid", "max_q", "format", "out", "checks", "jobs", "timestamps"];
    if let Some(k) = cfg.keys().find(|k| !KNOWN.contains(&k.as_str())) {
        return Err(Usage(format!("unknown config key {k:?}")));
    }
    let cfg_get = |k: &str| cfg.get(k).map(String::as_str);

    let targets = if let Some(g) = &c.grid {
        parse_grid(g).map_err(Usage)?
    } else if c.p.is_some() || c.m.is_some() {
        match (c.p, c.m) {
            (Some(p), Some(m)) => vec![(p, m)],
            _ => return Err(Usage("--p and --m must be given together".into())),
        }
    } else if let Some(g) = cfg_get("grid") {
        parse_grid(g).map_err(Usage)?
    } else {
        match (cfg_get("p"), cfg_get("m")) {
            (Some(p), Some(m)) => vec![(parse_value("p", p)?, parse_value("m", m)?)],
            (None, None) => return Err(Usage("no parameters: give --p and --m, or --grid".into())),
            _ => return Err(Usage("config must give p and m together".into())),
        }
    };

    let max_q = match (c.max_q, cfg_get("max_q")) {
        (Some(v), _) => v,
        (None, Some(v)) => parse_value("max_q", v)?,
        (None, None) => env_value("CAP")?.unwrap_or(DEFAULT_MAX_Q),
    };
    let jobs = match (c.jobs, cfg_get("jobs")) {
        (Some(v), _) => v,
        (None, Some(v)) => parse_value("jobs", v)?,
        (None, None) => {
            env_value("JOBS")?.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        }
    };
    let format = match (c.format, cfg_get("format")) {
        (Some(f), _) => Some(f),
        (None, Some(v)) => Some(Format::from_str(v, true).map_err(Usage)?),
        (None, None) => None,
    };
    let checks = match c.checks.as_deref().or(cfg_get("checks")) {
        Some(list) => parse_checks(list).map_err(Usage)?,
        None => Check::ALL.into_iter().collect(),
    };
    let timestamps =
        c.timestamps || cfg_get("timestamps").map(|v| parse_value::<bool>("timestamps", v)).transpose()? == Some(true);
    Ok(Resolved {
        targets,
        max_q,
        format,
        out: c.out.clone().or_else(|| cfg_get("out").map(PathBuf::from)),
        checks,
        jobs,
        timestamps,
        corrupt_prediction: c.corrupt_prediction,
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Usage> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(Usage::from)
        }
    }
}

fn is_cap_field(e: &FieldError) -> bool {
    matches!(e, FieldError::FieldTooLarge { .. })
}

fn field_or_exit(p: u32, m: u32, max_q: u64) -> Result<FieldCtx, ExitCode> {
    FieldCtx::new(p, m, max_q).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(if is_cap_field(&e) { EXIT_CAP } else { EXIT_USAGE })
    })
}

fn cmd_build(r: &Resolved) -> Result<ExitCode, Usage> {
    let format = r.format.unwrap_or(Format::Text);
    let brute = r.checks.contains(&Check::Distribution);
    let mut text = String::new();
    let mut exports = String::new();
    let mut json_out = Vec::new();
    for &(p, m) in &r.targets {
        let ctx = match field_or_exit(p, m, r.max_q) {
            Ok(c) => c,
            Err(code) => return Ok(code),
        };
        let ds = DefiningSet::new(&ctx);
        let n = ds.len() as u64;
        let dist = if brute {
            match brute_weight_distribution(&ds, r.max_q) {
                Ok(d) => Some(d),
                Err(e @ CodeError::FieldTooLarge { .. }) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(EXIT_CAP));
                }
                Err(e) => return Err(e.into()),
            }
        } else {
            None
        };
        // Dimension from the kernel size: p^(m-k) messages give the zero word.
        let k = dist.as_ref().map_or(m, |d| {
            let mut zeros = d.get(0);
            let mut kernel_dim = 0;
            while zeros > 1 {
                zeros /= p as u64;
                kernel_dim += 1;
            }
            m - kernel_dim
        });
        let header = match dist.as_ref().and_then(|d| d.min_nonzero_weight()) {
            Some(d) => format!("[{n},{k},{d}]"),
            None => format!("[{n},{k}]"),
        };
        match format {
            Format::Text => {
                text.push_str(&header);
                text.push('\n');
                if let Some(d) = &dist {
                    text.push_str(&d.enumerator_string());
                    text.push('\n');
                }
            }
            Format::Csv => {
                if let Some(d) = &dist {
                    text.push_str(&d.to_csv());
                }
            }
            Format::Json => json_out.push(json!({
                "p": p,
                "m": m,
                "n": n,
                "k": k,
                "d": dist.as_ref().and_then(|d| d.min_nonzero_weight()),
                "enumerator": dist.as_ref().map(|d| d.enumerator_string()),
                "distribution": dist.as_ref().map(|d| d.rows()),
            })),
        }
        exports.push_str(&ds.export());
    }
    if format == Format::Json {
        let value = if json_out.len() == 1 { json_out.pop().unwrap() } else { json_out.into() };
        text = serde_json::to_string_pretty(&value)? + "\n";
    }
    // The summary always goes to stdout; D goes to --out, or follows the
    // summary when there is no --out.
    match &r.out {
        Some(_) => {
            emit(&None, &text)?;
            emit(&r.out, &exports)?;
        }
        None => emit(&None, &(text + &exports))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_predict(r: &Resolved) -> Result<ExitCode, Usage> {
    let mut text = String::new();
    let mut json_out = Vec::new();
    for &(p, m) in &r.targets {
        let d = predicted_distribution(p, m)?;
        let tag = classify(p, m);
        match r.format.unwrap_or(Format::Text) {
            Format::Text => {
                text += &format!("p={p} m={m} case={} theorem={}\nlength {}\n", tag.name(), tag.theorem(), d.length);
                text += "weight,multiplicity\n";
                for (w, a) in &d.rows {
                    text += &format!("{w},{a}\n");
                }
            }
            Format::Csv => {
                text += "weight,multiplicity\n";
                for (w, a) in &d.rows {
                    text += &format!("{w},{a}\n");
                }
            }
            Format::Json => json_out.push(json!({
                "p": p,
                "m": m,
                "case": tag.name(),
                "theorem": tag.theorem(),
                "length": d.length,
                "dimension": d.dimension,
                "rows": d.rows,
            })),
        }
    }
    if !json_out.is_empty() {
        let value = if json_out.len() == 1 { json_out.pop().unwrap() } else { json_out.into() };
        text = serde_json::to_string_pretty(&value)? + "\n";
    }
    emit(&r.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(r: &Resolved, single: bool) -> Result<ExitCode, Usage> {
    let opts = VerifyOptions {
        max_q: r.max_q,
        checks: r.checks.clone(),
        timestamps: r.timestamps,
        corrupt_prediction: r.corrupt_prediction,
    };
    let results = verify_grid(&r.targets, &opts, r.jobs);
    let mut reports = Vec::new();
    let (mut cap, mut usage) = (false, false);
    for ((p, m), res) in r.targets.iter().zip(results) {
        match res {
            Ok(rep) => reports.push(rep),
            Err(e) => {
                eprintln!("error: p={p} m={m}: {e}");
                if e.is_cap() {
                    cap = true;
                } else {
                    usage = true;
                }
            }
        }
    }
    let text = match r.format.unwrap_or(Format::Json) {
        Format::Json if single && reports.len() == 1 => serde_json::to_string_pretty(&reports[0])? + "\n",
        Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
        Format::Text => reports.iter().map(|r| r.to_text()).collect(),
        Format::Csv => {
            let mut s = String::from("p,m,source,weight,multiplicity\n");
            for rep in &reports {
                let sources = [
                    ("predicted", Some(&rep.distribution.predicted)),
                    ("bruteforce", rep.distribution.bruteforce.as_ref()),
                ];
                for (source, rows) in sources {
                    for [w, a] in rows.into_iter().flatten() {
                        s += &format!("{},{},{source},{w},{a}\n", rep.p, rep.m);
                    }
                }
            }
            s
        }
    };
    emit(&r.out, &text)?;
    Ok(if usage {
        ExitCode::from(EXIT_USAGE)
    } else if cap {
        ExitCode::from(EXIT_CAP)
    } else if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    })
}

fn cmd_gauss(r: &Resolved) -> Result<ExitCode, Usage> {
    let mut text = String::new();
    let mut json_out = Vec::new();
    let mut ok = true;
    for &(p, m) in &r.targets {
        let ctx = match field_or_exit(p, m, r.max_q) {
            Ok(c) => c,
            Err(code) => return Ok(code),
        };
        let g = gauss_report(&ctx);
        ok &= g.passes();
        match r.format.unwrap_or(Format::Text) {
            Format::Json => json_out.push(json!({ "p": p, "m": m, "gauss": g })),
            _ => {
                text += &format!("p={p} m={m}\n");
                text += &format!("exact    {}\n", g.exact_display);
                text += &format!("closed   {}\n", g.closed);
                text += &format!("embed    {:.9} {:+.9}i\n", g.exact_complex[0], g.exact_complex[1]);
                text += &format!("closed~  {:.9} {:+.9}i\n", g.closed_complex[0], g.closed_complex[1]);
                text += &format!("square_identity {}\nclosed_agreement {}\n", g.square_identity, g.closed_agreement);
            }
        }
    }
    if !json_out.is_empty() {
        let value = if json_out.len() == 1 { json_out.pop().unwrap() } else { json_out.into() };
        text = serde_json::to_string_pretty(&value)? + "\n";
    }
    emit(&r.out, &text)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, which) = match &cli.command {
        Command::Build(c) => (c, 0),
        Command::Predict(c) => (c, 1),
        Command::Verify(c) => (c, 2),
        Command::Gauss(c) => (c, 3),
    };
    let run = resolve(common).and_then(|r| match which {
        0 => cmd_build(&r),
        1 => cmd_predict(&r),
        2 => cmd_verify(&r, common.grid.is_none()),
        _ => cmd_gauss(&r),
    });
    run.unwrap_or_else(|Usage(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_USAGE)
    })
}
