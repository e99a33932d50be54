use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use sinfty::galg::{algebra_from_json, algebra_to_json, verify_axioms, GradedAlgebra, Piece};
use sinfty::gmod::{coinduce, coregular, module_from_json, module_to_json, regular_module, From as Coind, Module, ModuleJson};
use sinfty::homcx::Complex;
use sinfty::oracle::local_cohomology_cone;
use sinfty::sinf::{ext, hom_through, s_derived, semi_infinite_ext, tor, ExtTable, ResultDoc, Window};
use sinfty::{zoo, Error};

#[derive(Parser)]
#[command(name = "sinfty", version, about = "Semi-infinite Ext over finite-dimensional graded algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify triangular decomposition, semisimple A^0 and self-injective A^{>=0}.
    Axioms { algebra: PathBuf },
    /// Emit zoo algebras and standard modules.
    Zoo {
        #[command(subcommand)]
        what: ZooCmd,
    },
    /// Compute a table of dimensions.
    Compute(ComputeArgs),
    /// Compare two result files on their shared certified entries.
    Certify { a: PathBuf, b: PathBuf },
    /// Independent cross-checks.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
}

#[derive(Subcommand)]
enum ZooCmd {
    /// Print an algebra file.
    Emit {
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Print a module file over a zoo algebra.
    Module {
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, value_enum)]
        kind: ModuleKind,
        /// Value written into the module's "algebra" field.
        #[arg(long, default_value = "algebra.json")]
        algebra_ref: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleKind {
    Trivial,
    Verma,
    CoindGe,
    CoindLe,
    Regular,
    Coregular,
    /// The trivial module as a right module.
    TrivialRight,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Engine {
    Ext,
    Sinf,
    HomThrough,
    Tor,
    S,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Ext => "ext",
            Engine::Sinf => "sinf",
            Engine::HomThrough => "hom-through",
            Engine::Tor => "tor",
            Engine::S => "s",
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    engine: Engine,
    /// First argument (a right module for tor; unused for s).
    #[arg(long)]
    x: Option<PathBuf>,
    #[arg(long)]
    y: PathBuf,
    /// Homological degrees, `lo:hi`.
    #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
    i: String,
    /// Weight shifts, `lo:hi`.
    #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
    m: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write JSON here and a CSV mirror next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recorded in the output for reproducibility.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Local cohomology of the sl2 nilpotent cone along the line h = f = 0.
    LocalCohomology {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value = "-6:6", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 2)]
        pad: i32,
    },
}

/// A failure with its exit code and reason.
struct Fail {
    code: u8,
    reason: String,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Associativity(_) | Error::Degree(_) | Error::Unit(_) | Error::NotPrime(_) => 2,
            Error::UnsupportedSemisimple(_) => 3,
            Error::NoTriangular | Error::NotSubalgebra(_) => 4,
            _ => 1,
        };
        Fail { code, reason: e.code().into(), message: e.to_string() }
    }
}

fn io_fail(path: &Path, e: std::io::Error) -> Fail {
    Fail { code: 2, reason: "io".into(), message: format!("{}: {e}", path.display()) }
}

type Res<T> = std::result::Result<T, Fail>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| io_fail(path, e))
}

fn write(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| io_fail(path, e))
}

fn load_algebra(path: &Path) -> Res<Arc<GradedAlgebra>> {
    Ok(algebra_from_json(&read(path)?)?)
}

/// Load a module and the algebra its file points to (relative to the module file).
fn load_module(path: &Path) -> Res<(Module, PathBuf)> {
    let doc = ModuleJson::parse(&read(path)?)?;
    let alg_path = path.parent().unwrap_or(Path::new(".")).join(&doc.algebra);
    let alg = load_algebra(&alg_path)?;
    Ok((module_from_json(&doc, &alg)?, alg_path))
}

fn cmd_axioms(path: &Path) -> Res<u8> {
    let alg = load_algebra(path)?;
    let r = verify_axioms(&alg)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    let code = r.exit_code();
    let failing = match code {
        3 => Some("semisimple"),
        4 => Some("triangular"),
        5 => Some("self-injective"),
        _ => None,
    };
    if let Some(name) = failing {
        eprintln!("error[{name}]: assumption fails: {name}");
    }
    Ok(code as u8)
}

fn cmd_zoo(what: ZooCmd) -> Res<u8> {
    match what {
        ZooCmd::Emit { family, p, l } => {
            let z = zoo::by_name(&family, p, l)?;
            println!("{}", algebra_to_json(&z.alg));
        }
        ZooCmd::Module { family, p, l, kind, algebra_ref } => {
            let z = zoo::by_name(&family, p, l)?;
            let a = &z.alg;
            let k = zoo::trivial(a)?;
            let m = match kind {
                ModuleKind::Trivial => k,
                ModuleKind::Verma => zoo::baby_verma(a, k.chars()[0] as usize)?,
                ModuleKind::CoindGe => coinduce(a, Coind::Ge, &k.restrict(Piece::Ge)?)?,
                ModuleKind::CoindLe => coinduce(a, Coind::Le, &k.restrict(Piece::Le)?)?,
                ModuleKind::Regular => regular_module(a)?.0,
                ModuleKind::Coregular => coregular(a)?.module.clone(),
                ModuleKind::TrivialRight => zoo::trivial(&a.opposite())?,
            };
            println!("{}", module_to_json(&m, &algebra_ref));
        }
    }
    Ok(0)
}

fn label(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn cmd_compute(args: ComputeArgs) -> Res<u8> {
    let w = Window::new(Window::parse_range(&args.i)?, Window::parse_range(&args.m)?);
    let (y, alg_path) = load_module(&args.y)?;
    let x = match &args.x {
        Some(p) => Some(load_module(p)?.0),
        None => None,
    };
    let need_x = || -> Res<&Module> {
        x.as_ref().ok_or_else(|| Fail { code: 2, reason: "usage".into(), message: "--x is required".into() })
    };
    // the left algebra carries the triangular data
    let alg = if y.alg().is_opposite() { y.alg().opposite() } else { y.alg().clone() };
    let report = verify_axioms(&alg)?;
    if !report.all_ok() {
        return Err(Fail {
            code: report.exit_code() as u8,
            reason: "axioms".into(),
            message: "the algebra fails the standing assumptions; run `sinfty axioms`".into(),
        });
    }
    let table: ExtTable = match args.engine {
        Engine::Ext => ext(need_x()?, &y, w)?,
        Engine::Sinf => semi_infinite_ext(need_x()?, &y, w)?,
        Engine::HomThrough => hom_through(&Complex::single(need_x()?.clone(), 0), &y, w)?,
        Engine::Tor => tor(need_x()?, &y, w)?,
        Engine::S => s_derived(&y, w)?,
    };
    let uncertified: Vec<String> =
        table.iter().filter(|e| !e.certified).map(|e| format!("({}, {})", e.i, e.m)).collect();
    if !uncertified.is_empty() {
        eprintln!("warning[uncertified]: entries without certificate: {}", uncertified.join(" "));
    }
    let doc = ResultDoc::new(
        &label(&alg_path),
        &args.x.as_deref().map_or_else(|| "A*".to_string(), label),
        &label(&args.y),
        args.engine.name(),
        args.seed,
        &table,
    );
    match &args.out {
        Some(out) => {
            write(out, &doc.to_json())?;
            write(&out.with_extension("csv"), &table.to_csv())?;
        }
        None => match args.format {
            Format::Json => println!("{}", doc.to_json()),
            Format::Csv => print!("{}", table.to_csv()),
        },
    }
    Ok(0)
}

fn cmd_certify(a: &Path, b: &Path) -> Res<u8> {
    let ta = ResultDoc::from_json(&read(a)?)?.table();
    let tb = ResultDoc::from_json(&read(b)?)?.table();
    let keep = |t: &ExtTable| ExtTable::from_entries(t.iter().filter(|e| e.certified).copied());
    match keep(&ta).first_mismatch(&keep(&tb)) {
        Err(_) => Err(Fail {
            code: 2,
            reason: "disjoint-windows".into(),
            message: "the two tables share no certified entry".into(),
        }),
        Ok(Some((x, y))) => {
            println!("mismatch at i={} m={}: {} vs {}", x.i, x.m, x.dim, y.dim);
            Ok(1)
        }
        Ok(None) => {
            println!("tables agree on all shared certified entries");
            Ok(0)
        }
    }
}

fn cmd_oracle(what: OracleCmd) -> Res<u8> {
    match what {
        OracleCmd::LocalCohomology { p, window, pad } => {
            let t = local_cohomology_cone(p, Window::parse_range(&window)?, pad)?;
            println!("{}", serde_json::to_string_pretty(&t).expect("table serializes"));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("SINFTY_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // ignore failure: the pool can only be configured once
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Axioms { algebra } => cmd_axioms(&algebra),
        Cmd::Zoo { what } => cmd_zoo(what),
        Cmd::Compute(args) => cmd_compute(args),
        Cmd::Certify { a, b } => cmd_certify(&a, &b),
        Cmd::Oracle { what } => cmd_oracle(what),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error[{}]: {}", f.reason, f.message);
            ExitCode::from(f.code)
        }
    }
}
