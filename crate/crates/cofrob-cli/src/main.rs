use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cofrob_cli::document::{parse, render, Document};
use cofrob_cli::report;
use cofrob_core::duality::{complete_from_pairing, dualize, rescale_signs, shift_structure, transpose_structure};
use cofrob_core::models::*;
use cofrob_core::Error;

#[derive(Parser)]
#[command(name = "cofrob", version, about = "Exact checks of graded infinitesimal and coFrobenius bialgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a relation suite on a structure file (`-` or nothing reads stdin).
    Check {
        /// Suite name; defaults to the declared flavor's coFrobenius suite, or tqft-full for pairs.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        file: Option<PathBuf>,
    },
    /// Print a built-in structure in the file format.
    Example {
        #[arg(long, value_enum)]
        name: Example,
        /// Dimension of the sphere.
        #[arg(long)]
        n: Option<i64>,
        /// Exponent bound of truncated Laurent models.
        #[arg(long, default_value_t = 6)]
        window: i64,
        /// Sign of the vector field for the circle's coproduct.
        #[arg(long, default_value = "+", value_parser = parse_vector_field)]
        vector_field: VectorField,
        /// Which circle model.
        #[arg(long, value_enum, default_value_t = Circle::Loop)]
        variant: Circle,
        /// Which submanifold pair.
        #[arg(long, value_enum, default_value_t = Pair::Equator)]
        pair: Pair,
        /// Write to a file instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Complete `(mu, eta, eps)` to a biunital coFrobenius structure.
    Derive {
        #[arg(long = "from-pairing")]
        from_pairing: PathBuf,
    },
    /// Apply a structure transform and print the result.
    Transform {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        l: i64,
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Sphere,
    Torus,
    S2xs2,
    LoopSphere,
    BasedLoopSphere,
    RabinowitzLoopSphere,
    BasedRabinowitzLoopSphere,
    Circle,
    LoopTqft,
    Submanifold,
}

#[derive(Clone, Copy, ValueEnum)]
enum Circle {
    Loop,
    BasedLoop,
    Rabinowitz,
    BasedRabinowitz,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pair {
    /// S¹ ⊂ S²
    Equator,
    /// S² ⊂ S²×S² diagonally
    Diagonal,
    /// S²×{pt} ⊂ S²×S²
    Slice,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Dual,
    Shift,
    Transpose,
    Rescale,
}

fn parse_vector_field(s: &str) -> Result<VectorField, String> {
    match s {
        "+" | "plus" => Ok(VectorField::Plus),
        "-" | "minus" => Ok(VectorField::Minus),
        _ => Err(format!("expected + or -, got '{}'", s)),
    }
}

/// Failure modes mapped to exit codes.
enum Failure {
    Relation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Relation(_) | Error::NotPerfect(_) => Failure::Relation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_document(file: Option<&PathBuf>) -> Result<Document, Failure> {
    let (name, text) = match file {
        Some(p) if p.as_os_str() != "-" => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e)))?;
            (p.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {}", e)))?;
            ("<stdin>".to_string(), text)
        }
    };
    parse(&text).map_err(|e| Failure::Input(format!("{}: {}", name, e)))
}

fn example(name: Example, n: Option<i64>, window: i64, vf: VectorField, variant: Circle, pair: Pair) -> Result<Document, Error> {
    let n3 = n.unwrap_or(3);
    let single = |d: BialgebraDataResult| d.map(|d| Document::from_structure(&d));
    match name {
        Example::Sphere => single(sphere_cohomology(n.unwrap_or(2))),
        Example::Torus => single(Ok(torus())),
        Example::S2xs2 => single(Ok(s2xs2())),
        Example::LoopSphere => single(loop_sphere(n3, window)),
        Example::BasedLoopSphere => single(based_loop_sphere(n3, window)),
        Example::RabinowitzLoopSphere => single(rabinowitz_loop_sphere(n3, window)),
        Example::BasedRabinowitzLoopSphere => single(based_rabinowitz_loop_sphere(n3, window)),
        Example::Circle => {
            let flavor = match variant {
                Circle::Loop => CircleFlavor::Loop,
                Circle::BasedLoop => CircleFlavor::BasedLoop,
                Circle::Rabinowitz => CircleFlavor::Rabinowitz,
                Circle::BasedRabinowitz => CircleFlavor::BasedRabinowitz,
            };
            single(circle_models(window, vf, flavor))
        }
        Example::LoopTqft => loop_tqft_sphere(n3, window).map(|t| Document::from_tqft(&t)),
        Example::Submanifold => Ok(Document::from_tqft(&match pair {
            Pair::Equator => equator_tqft(),
            Pair::Diagonal => diagonal_tqft(),
            Pair::Slice => slice_tqft(),
        })),
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn write_stdout(text: &str) -> Result<(), Failure> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(format!("stdout: {}", e))),
        _ => Ok(()),
    }
}

type BialgebraDataResult = Result<cofrob_core::structures::BialgebraData, Error>;

fn execute(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Check { suite, format, file } => {
            let doc = read_document(file.as_ref())?;
            let suite = match suite {
                Some(s) => s,
                None if doc.is_pair() => "tqft-full".to_string(),
                None => format!("{}-cofrobenius", cofrob_cli::document::flavor_name(doc.effective_flavor())),
            };
            let reports = report::run(&doc, &suite)?;
            match format {
                Format::Text => write_stdout(&report::text(&doc, &suite, &reports))?,
                Format::Json => {
                    let v = report::json(&doc, &suite, &reports);
                    write_stdout(&format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable report")))?;
                }
            }
            Ok(report::passed(&reports))
        }
        Command::Example { name, n, window, vector_field, variant, pair, emit } => {
            let text = render(&example(name, n, window, vector_field, variant, pair)?);
            match emit {
                Some(p) => std::fs::write(&p, text).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e)))?,
                None => write_stdout(&text)?,
            }
            Ok(true)
        }
        Command::Derive { from_pairing } => {
            let doc = read_document(Some(&from_pairing))?;
            let s = &doc.closed;
            let missing = |m: &str| Failure::Input(format!("derive needs map {}", m));
            let mu = s.mu.clone().ok_or_else(|| missing("mu"))?;
            let eta = s.eta.clone().ok_or_else(|| missing("eta"))?;
            let eps = s.eps.clone().ok_or_else(|| missing("eps"))?;
            let d = complete_from_pairing(s.module.clone(), doc.field, mu, eta, eps)?.with_window(doc.window);
            write_stdout(&render(&Document::from_structure(&d)))?;
            Ok(true)
        }
        Command::Transform { op, m, l, file } => {
            let doc = read_document(file.as_ref())?;
            let d = doc.structure()?;
            let t = match op {
                Op::Dual => dualize(&d),
                Op::Shift => shift_structure(&d),
                Op::Transpose => transpose_structure(&d)?,
                Op::Rescale => rescale_signs(&d, m, l),
            };
            write_stdout(&render(&Document::from_structure(&t)))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Relation(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}
