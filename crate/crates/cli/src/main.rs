mod expr;
mod render;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hilbfock::fock::{basis_matrix, classical_projection, lehn_diagnostic, Basis, MAX_WEIGHT_CAP};
use hilbfock::identities::{check_identity, run_all, IdentityReport};
use hilbfock::{Error, FockSpace, Truncation};
use serde_json::{json, Value};

use render::{Cell, Format, Table};

#[derive(Parser, Debug)]
#[command(
    name = "hilbfock",
    version,
    about = "Exact operator calculus on the equivariant Fock space of Hilbert schemes of points"
)]
struct Cli {
    /// Largest weight for which components are computed.
    #[arg(long, global = true, env = "HILBFOCK_MAX_WEIGHT", default_value_t = 6)]
    max_weight: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Base-change matrix between the fix, nak and es bases in weight n.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Evaluate every entry at U = V = 0.
        #[arg(long)]
        classical: bool,
    },
    /// Matrix blocks of an operator on a range of source weights.
    Operator {
        /// q<i>, qx<i>, qt<n>, rho, rho_dual, boundary, id, or [A,B].
        #[arg(long)]
        name: String,
        /// Source weights as `a..b` (inclusive) or a single weight.
        #[arg(long, default_value = "0..2")]
        degrees: String,
    },
    /// Fix coordinates of nak[..], es[..], fix[..] or e.g. "q2 q1 vac".
    Class { expr: String },
    /// Run one identity by id, or `all`.
    Verify { suite: String },
    /// Diagnostics outside the acceptance suite.
    Diagnose {
        #[command(subcommand)]
        which: Diagnostic,
    },
}

#[derive(Subcommand, Debug)]
enum Diagnostic {
    /// Exponential of the creation operators against the Chern polynomial class.
    Lehn {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(e) => match e {
                Error::BasisNotIntegral(_) | Error::NotPolynomial => 3,
                Error::TruncationOverflow { .. } => 4,
                Error::Parse(_)
                | Error::InvalidPartition(_)
                | Error::QZero
                | Error::NonPositiveIndex(_)
                | Error::UnknownIdentity(_)
                | Error::DegreeMismatch { .. }
                | Error::NotAddable { .. }
                | Error::NotContained { .. } => 2,
                _ => 1,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

/// Rendered output plus whether every identity held.
struct Output {
    text: String,
    ok: bool,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn parse_degrees(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("invalid degree range {s:?}; expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn cmd_matrix(
    space: &FockSpace,
    format: Format,
    n: usize,
    from: &str,
    to: &str,
    classical: bool,
) -> Result<Output, Failure> {
    let from_b: Basis = from.parse()?;
    let to_b: Basis = to.parse()?;
    let m = basis_matrix(space, n, from_b, to_b)?;
    let cells: Vec<Vec<Cell>> = if classical {
        classical_projection(&m.entries)?.into_iter().map(|row| row.into_iter().map(Cell::Num).collect()).collect()
    } else {
        m.entries.iter().map(|row| row.iter().cloned().map(Cell::Func).collect()).collect()
    };
    let title = format!("{from} -> {to}, n = {n}{}", if classical { ", U = V = 0" } else { "" });
    let text = match format {
        Format::Json => render::to_json(&json!({
            "n": m.n,
            "from": m.from,
            "to": m.to,
            "order": m.order,
            "entries": render::cells_json(&cells),
        })),
        Format::Csv | Format::Latex => {
            let t = Table { title, row_label: to, col_label: from, rows: &m.order, cols: &m.order, cells };
            let mut out = String::new();
            if format == Format::Csv {
                render::table_csv(&mut out, &t);
            } else {
                render::table_latex(&mut out, &t);
            }
            out
        }
    };
    Ok(text.into())
}

fn cmd_operator(space: &FockSpace, format: Format, name: &str, degrees: &str) -> Result<Output, Failure> {
    let op = expr::parse_operator(name)?;
    let (lo, hi) = parse_degrees(degrees)?;
    let blocks = (lo..=hi).map(|n| space.block(&op, n)).collect::<hilbfock::Result<Vec<_>>>()?;
    let text = match format {
        Format::Json => render::to_json(&json!({
            "operator": name,
            "degree": op.degree(),
            "blocks": blocks.iter().map(|b| render::block_json(b)).collect::<Vec<Value>>(),
        })),
        Format::Csv | Format::Latex => {
            let mut out = String::new();
            for (k, b) in blocks.iter().enumerate() {
                let title = format!("{name}: weight {} -> {}", b.source, b.target);
                let t = Table {
                    title: title.clone(),
                    row_label: "fix",
                    col_label: "fix",
                    rows: &b.rows,
                    cols: &b.cols,
                    cells: render::func_cells(b),
                };
                if k > 0 {
                    out.push('\n');
                }
                if format == Format::Csv {
                    out.push_str(&format!("# {title}\n"));
                    render::table_csv(&mut out, &t);
                } else {
                    render::table_latex(&mut out, &t);
                }
            }
            out
        }
    };
    Ok(text.into())
}

fn cmd_class(space: &FockSpace, format: Format, e: &str) -> Result<Output, Failure> {
    let c = expr::eval_class(space, e)?;
    let text = match format {
        Format::Json => render::to_json(&render::class_json(e, &c)),
        Format::Csv => render::class_csv(&c),
        Format::Latex => render::class_latex(&c),
    };
    Ok(text.into())
}

fn cmd_verify(space: &FockSpace, format: Format, suite: &str) -> Result<Output, Failure> {
    let reports: Vec<IdentityReport> =
        if suite == "all" { run_all(space)? } else { vec![check_identity(space, suite)?] };
    let ok = reports.iter().all(IdentityReport::passed);
    let text = match format {
        Format::Json => {
            let v: Vec<Value> = reports.iter().map(|r| serde_json::to_value(r).expect("reports serialize")).collect();
            render::to_json(&if suite == "all" { Value::Array(v) } else { v.into_iter().next().unwrap() })
        }
        Format::Csv => render::reports_csv(&reports),
        Format::Latex => render::reports_latex(&reports),
    };
    Ok(Output { text, ok })
}

fn cmd_lehn(space: &FockSpace, n: usize) -> Result<Output, Failure> {
    let r = lehn_diagnostic(space, n)?;
    Ok(render::to_json(&serde_json::to_value(&r).expect("reports serialize")).into())
}

/// Writes next to the destination, then renames over it.
fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.max_weight > MAX_WEIGHT_CAP {
        return Err(Failure::Usage(format!("--max-weight {} exceeds the cap of {MAX_WEIGHT_CAP}", cli.max_weight)));
    }
    let space = FockSpace::new(Truncation::new(cli.max_weight));
    let f = cli.format;
    match &cli.command {
        Command::Matrix { n, from, to, classical } => cmd_matrix(&space, f, *n, from, to, *classical),
        Command::Operator { name, degrees } => cmd_operator(&space, f, name, degrees),
        Command::Class { expr } => cmd_class(&space, f, expr),
        Command::Verify { suite } => cmd_verify(&space, f, suite),
        Command::Diagnose { which: Diagnostic::Lehn { n } } => cmd_lehn(&space, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => write_atomic(path, &out.text),
                None => std::io::stdout().lock().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
