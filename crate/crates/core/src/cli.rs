//! The `bookspace` command line.
//!
//! Exit codes: 0 when every verdict is as expected, 1 for a failed law or
//! mathematically invalid input, 2 for usage errors and unreadable input.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::audit::{audit_book, check_lattice, nonembeddability_certificate, Certificate, DEFAULT_SAMPLES};
use crate::complex::order_complex;
use crate::error::Error;
use crate::export::book_to_off;
use crate::json::{complex_to_json, lattice_to_json, parse_lattice, parse_point, point_to_json, to_pretty, PointForm};
use crate::lattice::FiniteLattice;
use crate::realization::{join_points, meet_points, phi, sample_point};

#[derive(Debug, Parser)]
#[command(
    name = "bookspace",
    version,
    about = "Book lattices, order complexes and their realizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a lattice as JSON.
    #[command(group(ArgGroup::new("kind").required(true).args(["book", "chain"])))]
    Gen {
        /// Book lattice M_{d,n}.
        #[arg(long, num_args = 2, value_names = ["D", "N"])]
        book: Option<Vec<usize>>,
        /// Chain with K elements.
        #[arg(long, value_name = "K")]
        chain: Option<usize>,
    },
    /// Modular and distributive verdicts with witnesses.
    Check {
        /// Lattice JSON file, or `-` for stdin.
        #[arg(default_value = "-")]
        lattice: PathBuf,
    },
    /// Full law audit of M_{d,n}.
    Audit {
        #[arg(long, num_args = 2, value_names = ["D", "N"], required = true)]
        book: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Produce a point of the realization.
    #[command(group(ArgGroup::new("source").required(true).args(["phi", "sample", "point"])))]
    Realize {
        #[arg(long)]
        lattice: PathBuf,
        /// Vertex for the element with this label.
        #[arg(long, value_name = "LABEL")]
        phi: Option<String>,
        /// Seeded random point.
        #[arg(long, value_name = "SEED")]
        sample: Option<u64>,
        /// Point JSON in either form, converted to `--form`.
        #[arg(long, value_name = "FILE")]
        point: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormArg::Barycentric)]
        form: FormArg,
    },
    /// Meet or join of two points.
    #[command(group(ArgGroup::new("operation").required(true).args(["meet", "join"])))]
    Op {
        #[arg(long)]
        meet: bool,
        #[arg(long)]
        join: bool,
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, value_enum, default_value_t = FormArg::Barycentric)]
        form: FormArg,
    },
    /// Order complex of a lattice.
    Complex {
        #[arg(default_value = "-")]
        lattice: PathBuf,
        #[arg(long)]
        fvector: bool,
        #[arg(long)]
        ridges: bool,
    },
    /// Mesh export.
    Export {
        /// OFF mesh of a 2-dimensional book lattice.
        #[arg(long, value_name = "FILE", required = true)]
        off: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Barycentric,
    Function,
}

impl From<FormArg> for PointForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Barycentric => PointForm::Barycentric,
            FormArg::Function => PointForm::Function,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Parse(_) | Error::InvalidParams(_) => Failure::Usage(err.to_string()),
            _ => Failure::Math(err.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Math(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load_lattice(path: &Path, stdin: &mut dyn Read) -> Result<FiniteLattice, Failure> {
    Ok(parse_lattice(&read_input(path, stdin)?)?)
}

fn pair(values: &[usize]) -> (usize, usize) {
    (values[0], values[1])
}

#[derive(Serialize)]
struct RidgeEntry {
    ridge: Vec<String>,
    degree: usize,
}

#[derive(Serialize)]
struct ComplexSummary {
    dimension: usize,
    facets: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_vector: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nonmanifold_ridges: Option<Vec<RidgeEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    match command {
        Command::Gen { book, chain } => {
            let lattice = match (book, chain) {
                (Some(b), _) => {
                    let (d, n) = pair(&b);
                    FiniteLattice::book(d, n)?
                }
                (None, Some(k)) => FiniteLattice::chain(k)?,
                (None, None) => unreachable!("clap requires one of --book/--chain"),
            };
            Ok(Outcome::ok(lattice_to_json(&lattice) + "\n"))
        }
        Command::Check { lattice } => {
            let lattice = load_lattice(&lattice, stdin)?;
            let report = check_lattice(&lattice);
            let code = if report.all_hold() { 0 } else { 1 };
            Ok(Outcome {
                code,
                stdout: report.to_json() + "\n",
                stderr: String::new(),
            })
        }
        Command::Audit { book, samples, seed } => {
            let (d, n) = pair(&book);
            let report = audit_book(d, n, samples, seed)?;
            let code = if report.all_expected { 0 } else { 1 };
            Ok(Outcome {
                code,
                stdout: report.to_json() + "\n",
                stderr: String::new(),
            })
        }
        Command::Realize {
            lattice,
            phi: label,
            sample,
            point,
            form,
        } => {
            let lattice = load_lattice(&lattice, stdin)?;
            let p = if let Some(label) = label {
                phi(&lattice, lattice.element(&label)?)
            } else if let Some(seed) = sample {
                sample_point(&lattice, seed)
            } else {
                let path = point.expect("clap requires a point source");
                parse_point(&lattice, &read_input(&path, stdin)?)?
            };
            Ok(Outcome::ok(point_to_json(&lattice, &p, form.into()) + "\n"))
        }
        Command::Op {
            meet,
            join: _,
            f,
            g,
            lattice,
            form,
        } => {
            let lattice = load_lattice(&lattice, stdin)?;
            let f = parse_point(&lattice, &read_input(&f, stdin)?)?;
            let g = parse_point(&lattice, &read_input(&g, stdin)?)?;
            let result = if meet {
                meet_points(&lattice, &f, &g)?
            } else {
                join_points(&lattice, &f, &g)?
            };
            Ok(Outcome::ok(point_to_json(&lattice, &result, form.into()) + "\n"))
        }
        Command::Complex {
            lattice,
            fvector,
            ridges,
        } => {
            let lattice = load_lattice(&lattice, stdin)?;
            let complex = order_complex(&lattice);
            if !fvector && !ridges {
                return Ok(Outcome::ok(complex_to_json(&complex) + "\n"));
            }
            let mut summary = ComplexSummary {
                dimension: complex.dimension(),
                facets: complex.facets().len(),
                f_vector: fvector.then(|| complex.f_vector()),
                nonmanifold_ridges: None,
                verdict: None,
                certificate: None,
            };
            if ridges {
                let found = complex.nonmanifold_ridges()?;
                summary.verdict = Some(
                    if found.is_empty() {
                        "no non-manifold ridge"
                    } else {
                        "non-manifold ridge found"
                    }
                    .to_owned(),
                );
                summary.nonmanifold_ridges = Some(
                    found
                        .iter()
                        .map(|r| RidgeEntry {
                            ridge: r.ridge.iter().map(|&i| complex.vertices()[i].clone()).collect(),
                            degree: r.degree,
                        })
                        .collect(),
                );
                if let Some((d, n)) = lattice.book_shape() {
                    summary.certificate = nonembeddability_certificate(d, n)?;
                }
            }
            Ok(Outcome::ok(to_pretty(&summary) + "\n"))
        }
        Command::Export { off } => {
            let lattice = load_lattice(&off, stdin)?;
            Ok(Outcome::ok(book_to_off(&lattice)?))
        }
    }
}
