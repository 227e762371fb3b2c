//! `hullforge`: construct GRS codes with prescribed Galois hulls, verify
//! descriptors, reproduce the tables and log hull pairs.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use hullforge::descriptor::{verify_descriptor, CodeDescriptor, DescriptorError};
use hullforge::eaqecc::{theorem_family_emit, EaqeccError};
use hullforge::exec::{init_thread_pool, Exec};
use hullforge::families::{Family, FamilyError, FamilyRequest};
use hullforge::sweep::{run_sweep, to_csv, SweepConfig};
use hullforge::tables::{all_tables, run_table, table};
use hullforge::FieldCtx;

const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_MALFORMED: u8 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "hullforge",
    version,
    about = "MDS codes with prescribed Galois hulls and their EAQECCs"
)]
struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family code and print its descriptor.
    Construct(ConstructArgs),
    /// Re-verify a descriptor file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Reproduce a table (1..4 or `all`).
    Table {
        which: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Log (primal, dual) hull dimensions over root-of-unity codes.
    Sweep {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        /// Comma-separated levels; all of 0..e by default.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u32>>,
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
    },
    /// Print the field's modulus and primitive element.
    FieldInfo {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    e: u32,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    h: u64,
    #[arg(long)]
    x1: Option<u64>,
    #[arg(long)]
    x2: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn family_exit(err: &FamilyError) -> u8 {
    match err {
        FamilyError::PredicateFailed(_)
        | FamilyError::NoScalingElement { .. }
        | FamilyError::NoPreimage { .. }
        | FamilyError::FieldMismatch { .. }
        | FamilyError::Field(_) => EXIT_INADMISSIBLE,
        _ => EXIT_INTERNAL,
    }
}

fn construct_request(a: &ConstructArgs) -> Result<FamilyRequest, Failure> {
    let mut req = FamilyRequest::new(a.family, a.p, a.e, a.l, a.k, a.h);
    req.n = a.n;
    if a.family.uses_subgroups() {
        match (a.x1, a.x2) {
            (Some(x1), Some(x2)) => req = req.with_subgroups(x1, x2, a.r.unwrap_or(1)),
            _ => {
                return Err(Failure::new(
                    EXIT_INADMISSIBLE,
                    format!("{} needs --x1 and --x2", a.family),
                ))
            }
        }
    } else if a.family.uses_cosets() {
        match a.m {
            Some(m) => req = req.with_cosets(m, a.r.unwrap_or(1)),
            None => {
                return Err(Failure::new(
                    EXIT_INADMISSIBLE,
                    format!("{} needs --m", a.family),
                ))
            }
        }
    }
    Ok(req)
}

fn cmd_construct(a: &ConstructArgs) -> CmdResult {
    let req = construct_request(a)?;
    let ctx =
        Arc::new(FieldCtx::new(a.p, a.e, None).map_err(|e| Failure::new(EXIT_INADMISSIBLE, e))?);
    let (params, built) = theorem_family_emit(&ctx, &req).map_err(|err| match &err {
        EaqeccError::Family(f) => Failure::new(family_exit(f), err),
        _ => Failure::new(EXIT_INTERNAL, err),
    })?;
    let desc = CodeDescriptor::from_construction(&built, Some(params.clone()));
    Ok(match a.format {
        Format::Json => desc.to_json_pretty() + "\n",
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "family      {}", req.family);
            let _ = writeln!(s, "field       F_{}^{} (q = {})", a.p, a.e, ctx.q());
            let _ = writeln!(s, "level       l = {}", a.l);
            let _ = writeln!(
                s,
                "code        [{}, {}, {}]",
                built.length(),
                req.k,
                built.length() as u64 - req.k + 1
            );
            let _ = writeln!(s, "extended    {}", built.spec.is_extended());
            let _ = writeln!(
                s,
                "hull dim    {} (stacked {}, rank {})",
                built.hull.dim(),
                built.hull.dim_stacked,
                built.hull.dim_rank
            );
            let _ = writeln!(s, "z           {}", built.provenance.z);
            let _ = writeln!(s, "EAQECC      {}", params);
            s
        }
    })
}

fn cmd_verify(file: &PathBuf, format: Format, exec: Exec) -> CmdResult {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::new(EXIT_MALFORMED, format!("{}: {e}", file.display())))?;
    let desc = CodeDescriptor::from_json(&text).map_err(|e| Failure::new(EXIT_MALFORMED, e))?;
    let report = verify_descriptor(&desc, exec).map_err(|err| match err {
        DescriptorError::Hull(_) => Failure::new(EXIT_INTERNAL, err),
        _ => Failure::new(EXIT_MALFORMED, err),
    })?;
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => report.render_text(),
    };
    if report.ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::new(EXIT_VERIFY, "verification failed"))
    }
}

fn cmd_table(which: &str, format: Format, exec: Exec) -> CmdResult {
    let specs = if which.eq_ignore_ascii_case("all") {
        all_tables().to_vec()
    } else {
        let spec = which.parse::<u8>().ok().and_then(table).ok_or_else(|| {
            Failure::new(
                EXIT_INADMISSIBLE,
                format!("no table {which:?}; expected 1..4 or all"),
            )
        })?;
        vec![spec]
    };
    let mut reports = Vec::new();
    for spec in &specs {
        let report = run_table(spec, exec).map_err(|e| Failure::new(EXIT_INTERNAL, e))?;
        eprintln!(
            "table {}: {} rows in {:.2?}",
            report.index,
            report.rows.len(),
            report.elapsed
        );
        reports.push(report);
    }
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Text => reports
            .iter()
            .map(|r| r.render_text())
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let bad: usize = reports.iter().map(|r| r.mismatches().count()).sum();
    if bad == 0 {
        Ok(out)
    } else {
        print!("{out}");
        for r in &reports {
            for row in r.mismatches() {
                let got = row
                    .measured
                    .as_ref()
                    .map_or_else(|| row.error.clone().unwrap_or_default(), |m| m.to_string());
                eprintln!(
                    "table {} k={} h={}: expected {:?}, got {got}",
                    r.index,
                    row.expected.k,
                    row.expected.h,
                    row.expected.tuple()
                );
            }
        }
        Err(Failure::new(EXIT_VERIFY, format!("{bad} row(s) differ")))
    }
}

fn cmd_sweep(cfg: SweepConfig, format: SweepFormat, exec: Exec) -> CmdResult {
    let rows = run_sweep(&cfg, exec).map_err(|e| Failure::new(EXIT_INADMISSIBLE, e))?;
    let out = match format {
        SweepFormat::Csv => to_csv(&rows),
        SweepFormat::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };
    if let Some(r) = rows
        .iter()
        .find(|r| r.symmetric_level() && r.hull_primal != r.hull_dual)
    {
        print!("{out}");
        return Err(Failure::new(
            EXIT_VERIFY,
            format!("hull pair differs at a symmetric level: {}", r.csv_line()),
        ));
    }
    Ok(out)
}

fn cmd_field_info(p: u64, e: u32, format: Format) -> CmdResult {
    let ctx = FieldCtx::new(p, e, None).map_err(|e| Failure::new(EXIT_INADMISSIBLE, e))?;
    let desc = ctx.descriptor();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&desc).expect("descriptor serializes") + "\n",
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "q        {}", ctx.q());
            let _ = writeln!(s, "modulus  {:?} (constant first)", desc.modulus);
            let _ = writeln!(s, "alpha    {:?}", desc.alpha);
            let subfields: Vec<u32> = (1..=e).filter(|d| e.is_multiple_of(*d)).collect();
            let _ = writeln!(s, "subfield degrees {subfields:?}");
            s
        }
    })
}

fn threads_from_env() {
    let Ok(raw) = std::env::var("HULLFORGE_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => init_thread_pool(n),
        _ => eprintln!("warning: ignoring HULLFORGE_THREADS={raw:?}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    threads_from_env();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let result = match cli.command {
        Command::Construct(args) => cmd_construct(&args),
        Command::Verify { file, format } => cmd_verify(&file, format, exec),
        Command::Table { which, format } => cmd_table(&which, format, exec),
        Command::Sweep {
            p,
            e,
            levels,
            n_min,
            n_max,
            k_max,
            format,
        } => cmd_sweep(
            SweepConfig {
                p,
                e,
                levels,
                n_min,
                n_max,
                k_max,
            },
            format,
            exec,
        ),
        Command::FieldInfo { p, e, format } => cmd_field_info(p, e, format),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
