//! The `bcwb` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cohomology::Engine;
use crate::diamond::{invariance_check, kahler_tables, surface_invariants, SCHEMA};
use crate::invariants::{consistency_report, Graded};
use crate::io::{
    self, blowup_table, checks_text, compute, diamond_table, document_table, load_model, load_tables,
    report_table, to_json, BlowupDocument, DiamondDocument, LoadedModel, Selection,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_VAR: &str = "BCWB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bcwb", version, about = "Bott-Chern hypercohomology workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapsArg {
    #[value(name = "I")]
    I,
    #[value(name = "C")]
    C,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Kahler,
    Surface,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute invariant tables, cohomology spaces and maps of a model.
    Compute {
        /// A `.lie` file or `corpus:NAME`.
        model: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Bott-Chern space H^{p,q}_BC (repeatable).
        #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
        bc: Vec<i64>,
        /// Hypercohomology H^k_BC(C(p,q)) (repeatable).
        #[arg(long, num_args = 3, value_names = ["K", "P", "Q"], allow_negative_numbers = true)]
        hyper: Vec<i64>,
        /// Truncated holomorphic de Rham hypercohomology H^k(C(p)) (repeatable).
        #[arg(long, num_args = 2, value_names = ["K", "P"], allow_negative_numbers = true)]
        trunc: Vec<i64>,
        /// Induced maps I^{p,q}, C^k, or both.
        #[arg(long, value_enum)]
        maps: Option<MapsArg>,
    },
    /// Run the consistency checks; exit 1 if a structural check fails.
    Check { model: String },
    /// Print the invariant report of a model.
    Invariants {
        model: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Invariants from a Hodge diamond (Kähler) or surface data.
    Diamond {
        file: String,
        #[arg(long, value_enum, default_value = "kahler")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Predict a blow-up along a center of codimension c and check invariance.
    Blowup {
        base: String,
        center: String,
        #[arg(long)]
        codim: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List or show the bundled models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Debug, Subcommand)]
enum ModelsAction {
    List,
    Show { name: String },
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Thread count from `BCWB_THREADS`; `None` when unset.
pub fn threads_from_env(value: Option<&str>) -> Result<Option<usize>, String> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_VAR} must be a positive integer, got {v:?}")),
        },
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let env = std::env::var(THREADS_VAR).ok();
    let threads = match threads_from_env(env.as_deref()) {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let outcome = match builder.build() {
        Ok(pool) => pool.install(|| dispatch(cli.command)),
        Err(e) => Outcome::usage(format!("cannot start worker threads: {e}")),
    };
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}

fn pairs(v: &[i64]) -> Vec<(i64, i64)> {
    v.chunks(2).map(|c| (c[0], c[1])).collect()
}

fn triples(v: &[i64]) -> Vec<(i64, i64, i64)> {
    v.chunks(3).map(|c| (c[0], c[1], c[2])).collect()
}

/// Loads a model and rejects it when `d^2 != 0`.
fn load_valid(path: &str) -> Result<LoadedModel, Outcome> {
    let loaded = load_model(path).map_err(Outcome::usage)?;
    let v = loaded.model.validate();
    if !v.passed() {
        return Err(Outcome::usage(format!("{path}: model fails validation\n{}", v.to_string().trim_end())));
    }
    Ok(loaded)
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Compute { model, format, bc, hyper, trunc, maps } => {
            let loaded = match load_valid(&model) {
                Ok(l) => l,
                Err(o) => return o,
            };
            let sel = Selection {
                bc: pairs(&bc),
                hyper: triples(&hyper),
                trunc: pairs(&trunc),
                maps_i: matches!(maps, Some(MapsArg::I | MapsArg::All)),
                maps_c: matches!(maps, Some(MapsArg::C | MapsArg::All)),
            };
            let doc = compute(&loaded, &sel);
            Outcome::ok(match format {
                Format::Json => to_json(&doc),
                Format::Table => document_table(&doc),
            })
        }
        Command::Check { model } => check(&model),
        Command::Invariants { model, format } => {
            let loaded = match load_valid(&model) {
                Ok(l) => l,
                Err(o) => return o,
            };
            let r = consistency_report(&Engine::new(loaded.model));
            Outcome::ok(match format {
                Format::Json => to_json(&r),
                Format::Table => format!("{}\n{}", report_table(&r), checks_text(&r.checks)),
            })
        }
        Command::Diamond { file, mode, format } => diamond(&file, mode, format),
        Command::Blowup { base, center, codim, format } => blowup(&base, &center, codim, format),
        Command::Models { action } => match action {
            ModelsAction::List => Outcome::ok(crate::corpus::names().map(|n| format!("{n}\n")).collect()),
            ModelsAction::Show { name } => match crate::corpus::source(&name) {
                Some(src) => Outcome::ok(src.to_string()),
                None => Outcome::usage(format!("unknown corpus model {name:?}")),
            },
        },
    }
}

fn check(path: &str) -> Outcome {
    let loaded = match load_model(path) {
        Ok(l) => l,
        Err(e) => return Outcome::usage(e),
    };
    let v = loaded.model.validate();
    if !v.passed() {
        return Outcome {
            code: EXIT_CHECK_FAILED,
            stdout: format!("FAIL d-squared\n{}\n", v.to_string().trim_end()),
            stderr: String::new(),
        };
    }
    let r = consistency_report(&Engine::new(loaded.model));
    let mut stdout = String::new();
    for c in r.structural_failures() {
        stdout.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
    }
    stdout.push_str(&format!("ddbar-lemma: {}\n", r.ddbar_lemma));
    stdout.push_str(&format!("frolicher-e1: {}\n", r.frolicher_e1));
    let ok = r.all_structural_pass();
    stdout.push_str(if ok { "all structural checks pass\n" } else { "structural checks failed\n" });
    Outcome { code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED }, stdout, stderr: String::new() }
}

fn diamond(path: &str, mode: Mode, format: Format) -> Outcome {
    let doc = match mode {
        Mode::Kahler => {
            let h = match io::read_hodge_diamond(path) {
                Ok(h) => h,
                Err(e) => return Outcome::usage(e),
            };
            let t = match kahler_tables(&h) {
                Ok(t) => t,
                Err(e) => return Outcome::usage(format!("{path}: {e}")),
            };
            DiamondDocument {
                schema: SCHEMA.into(),
                mode: "kahler".into(),
                name: h.name.clone(),
                spade: t.spade().expect("kahler tables carry C(1) and BC(1,1)"),
                club: t.club(),
                tables: Some(t),
            }
        }
        Mode::Surface => {
            let s = match io::read_surface(path) {
                Ok(s) => s,
                Err(e) => return Outcome::usage(e),
            };
            DiamondDocument {
                schema: SCHEMA.into(),
                mode: "surface".into(),
                name: s.name.clone(),
                tables: None,
                spade: Graded { k_min: 1, values: surface_invariants(&s).to_vec() },
                club: None,
            }
        }
    };
    Outcome::ok(match format {
        Format::Json => to_json(&doc),
        Format::Table => diamond_table(&doc),
    })
}

fn blowup(base: &str, center: &str, codim: usize, format: Format) -> Outcome {
    let (x, z) = match (load_tables(base), load_tables(center)) {
        (Ok(x), Ok(z)) => (x, z),
        (Err(e), _) | (_, Err(e)) => return Outcome::usage(e),
    };
    let report = match invariance_check(&x, &z, codim) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let passed = report.passed();
    let doc = BlowupDocument { schema: SCHEMA.into(), base: x.name.clone(), center: z.name.clone(), report };
    let stdout = match format {
        Format::Json => to_json(&doc),
        Format::Table => blowup_table(&doc),
    };
    Outcome { code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED }, stdout, stderr: String::new() }
}
