//! Argument handling for the `knotdist` binary.
//!
//! Exit codes: 0 success, 1 invalid input (bad arguments, unreadable or
//! invalid knot files), 2 internal failure (overflow, generator failure,
//! output errors).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotdist::distortion::{self, Pruning};
use knotdist::generators::{self, GeneratorSpec};
use knotdist::knotfile;
use knotdist::report::{self, ReportDocument};
use knotdist::{Error, LatticeKnot, Ratio};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "knotdist", version, about = "Exact distortion of cubic lattice knots")]
pub struct Cli {
    /// Worker threads for the distortion sweeps; output does not depend on it.
    #[arg(long, global = true, env = "KNOTDIST_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Knot file (`-` for standard input).
    file: PathBuf,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the knot file here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Use the `moves:` form instead of vertex lines.
    #[arg(long)]
    moves: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Rectangle,
    Torus,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the knot invariants and list every violation.
    Validate(Input),
    /// Vertex distortion, witnesses, Gromov 1-distortion and certificate.
    Compute {
        #[command(flatten)]
        input: Input,
        /// Scan every band (reference mode).
        #[arg(long)]
        no_prune: bool,
        /// Human-readable summary instead of JSON.
        #[arg(long)]
        pretty: bool,
        /// Include the per-vertex heatmap in the report.
        #[arg(long)]
        heatmap: bool,
    },
    /// Gromov 1-distortion with witnesses among vertices and midpoints.
    Gromov1 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        no_prune: bool,
    },
    /// Unknot certificate from the vertex distortion.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        no_prune: bool,
    },
    /// Integer scaling with intermediate vertices inserted.
    Scale {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        factor: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a conformation.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Rectangle extent along y.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Rectangle extent along x.
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        q: u32,
        /// Torus sampling scale.
        #[arg(long, default_value_t = 4)]
        scale: u32,
        /// Random polygon edge count.
        #[arg(long, default_value_t = 20)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Per-vertex maximum of ρ₁ as CSV.
    Heatmap {
        #[command(flatten)]
        input: Input,
        /// Write CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// All polygons up to a length, one per isometry class.
    Enumerate {
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Only list classes with vertex distortion 1.
        #[arg(long)]
        distortion_one: bool,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL },
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn output_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_failure(format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path)
            .map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))
    }
}

fn load(input: &Input) -> Result<LatticeKnot, Failure> {
    let text = read_text(&input.file)?;
    knotfile::parse_knot(&text).map_err(|e| input_failure(format!("{}: {e}", input.file.display())))
}

fn pruning(no_prune: bool) -> Pruning {
    if no_prune {
        Pruning::Disabled
    } else {
        Pruning::Enabled
    }
}

/// Writes to `path`, or appends to the buffered standard output.
fn emit(out: &mut String, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| output_failure(p, e)),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn write_knot(out: &mut String, knot: &LatticeKnot, output: &Output) -> Result<(), Failure> {
    let text = if output.moves {
        knotfile::write_moves(knot)
    } else {
        knotfile::write_vertices(knot)
    };
    emit(out, output.output.as_deref(), &text)
}

fn execute(command: Command, out: &mut String) -> Result<i32, Failure> {
    match command {
        Command::Validate(input) => {
            let text = read_text(&input.file)?;
            let parsed = knotfile::parse_unchecked(&text)
                .map_err(|e| input_failure(format!("{}: {e}", input.file.display())))?;
            let violations = parsed.violations();
            if violations.is_empty() {
                emit(out, None, &format!("ok: {} edges\n", parsed.vertices.len()))?;
                Ok(EXIT_OK)
            } else {
                let mut s = String::from("invalid\n");
                for v in &violations {
                    s += &format!("  {v}\n");
                }
                emit(out, None, &s)?;
                Ok(EXIT_INPUT)
            }
        }
        Command::Compute {
            input,
            no_prune,
            pretty,
            heatmap,
        } => {
            let knot = load(&input)?;
            let doc = ReportDocument::build(&knot, pruning(no_prune), heatmap)?;
            let text = if pretty {
                doc.to_human()
            } else {
                doc.to_json() + "\n"
            };
            emit(out, None, &text)?;
            Ok(EXIT_OK)
        }
        Command::Gromov1 { input, no_prune } => {
            let knot = load(&input)?;
            let g = distortion::gromov1_distortion_with(&knot, pruning(no_prune))?;
            let doc = report::gromov1_document(&knot, &g);
            let text = serde_json::to_string_pretty(&doc).expect("json value") + "\n";
            emit(out, None, &text)?;
            Ok(EXIT_OK)
        }
        Command::Certify { input, no_prune } => {
            let knot = load(&input)?;
            let r = distortion::vertex_distortion_with(&knot, pruning(no_prune));
            let c = knotdist::certify_unknot(&r);
            let note = if c.near_threshold { " (near threshold)" } else { "" };
            emit(
                out,
                None,
                &format!("{} delta={}{note}\n", report::verdict_str(c.verdict), c.delta),
            )?;
            Ok(EXIT_OK)
        }
        Command::Scale {
            input,
            factor,
            output,
        } => {
            let knot = load(&input)?;
            let scaled = knot.scale(factor)?;
            write_knot(out, &scaled, &output)?;
            Ok(EXIT_OK)
        }
        Command::Generate {
            kind,
            m,
            n,
            p,
            q,
            scale,
            length,
            seed,
            output,
        } => {
            let spec = match kind {
                Kind::Rectangle => GeneratorSpec::Rectangle { m, n },
                Kind::Torus => GeneratorSpec::TorusKnot { p, q, scale },
                Kind::Random => GeneratorSpec::RandomPolygon { length, seed },
            };
            let knot = spec.generate()?.pop().expect("single conformation");
            write_knot(out, &knot, &output)?;
            Ok(EXIT_OK)
        }
        Command::Heatmap { input, csv } => {
            let knot = load(&input)?;
            let rows = distortion::heatmap(&knot);
            emit(out, csv.as_deref(), &report::heatmap_csv(&rows))?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            max_len,
            distortion_one,
        } => {
            let mut s = String::new();
            for k in generators::exhaustive_small(max_len) {
                let delta = knotdist::vertex_distortion(&k).delta;
                if distortion_one && delta != Ratio::ONE {
                    continue;
                }
                s += &format!("{} {} {}\n", k.len(), delta, k.to_moves());
            }
            emit(out, None, &s)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let pool = match cli.threads {
        Some(0) => {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return EXIT_INPUT;
        }
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_INTERNAL;
        }
    };
    let mut buffer = String::new();
    let result = pool.install(|| execute(cli.command, &mut buffer));
    if let Err(e) = out.write_all(buffer.as_bytes()).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_INTERNAL;
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
