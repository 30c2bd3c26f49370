//! Command dispatch for `arf-engine`. Every subcommand reads the text
//! formats of `arf-core` and prints line-oriented `key value` output.

use std::fmt::Write as _;
use std::path::Path;

use arf_core::mcg::{
    embedding_realizable, equivalent_up_to_diffeomorphism, evaluate_word, genus1_generators,
    mapping_class_psi, quadruple_point_invariant, regularly_homotopic, torus_form,
};
use arf_core::oracle::{democratic_arf_with_limit, GroupTable, Limits};
use arf_core::orthogroup::{decompose, enumerate_group_with_limit, OrthogonalMap};
use arf_core::{
    BitMatrix, BitVector, Decomposition, Error, GeneratorWord, MappingClass, QuadraticForm,
    SurfacePinkallForm,
};
use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "arf-engine",
    version,
    about = "Quadratic forms over GF(2) and the quadruple-point invariant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Arf invariant of a form.
    Arf {
        #[arg(long)]
        form: String,
        /// Also print the majority-vote value.
        #[arg(long)]
        democratic: bool,
    },
    /// ψ(T) = rank(T − Id) mod 2 of an orthogonal map.
    Psi {
        #[arg(long)]
        form: String,
        #[arg(long)]
        matrix: String,
    },
    /// Mod-2 quadruple-point number Q(i, i∘h).
    Q {
        #[arg(long)]
        surface: String,
        #[arg(long, conflicts_with_all = ["matrix", "epsilon"], required_unless_present = "matrix")]
        word: Option<String>,
        #[arg(long, requires = "epsilon")]
        matrix: Option<String>,
        #[arg(long, value_parser = ["0", "1"])]
        epsilon: Option<String>,
    },
    /// Writes an orthogonal map as a product of transvections.
    Decompose {
        #[arg(long)]
        form: String,
        #[arg(long)]
        matrix: String,
    },
    /// Recomposes a decomposition and compares it with a matrix.
    Verify {
        #[arg(long)]
        form: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        decomposition: String,
    },
    /// Regular homotopy and diffeomorphism classification of two immersions.
    CheckRh {
        #[arg(long, num_args = 1, required = true)]
        surface: Vec<String>,
    },
    /// Every element of the orthogonal group with its ψ value.
    Enumerate {
        #[arg(long)]
        form: String,
    },
    /// Torus generators with their reductions, ε and Ψ.
    Catalog {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_parser = ["0", "1"])]
        arf: String,
    },
}

/// Exit status, standard output and diagnostic output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input { code: &'static str, message: String },
    Lib(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn status(&self) -> i32 {
        match self {
            Failure::Input { .. } => 1,
            Failure::Lib(e) if e.is_parse() => 1,
            _ => 2,
        }
    }

    fn line(&self) -> String {
        match self {
            Failure::Input { code, message } => format!("error {code}: {message}"),
            Failure::Lib(e) => format!("error {}: {e}", e.code()),
            Failure::Mismatch => {
                "error decomposition-mismatch: recomposed matrix differs from the input".into()
            }
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs one invocation. `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("arf-engine".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Outcome {
                status: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            let text = e.to_string();
            let message = text.split("\n\nUsage").next().unwrap_or_default();
            let message = message
                .trim_start_matches("error: ")
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ");
            return Outcome {
                status: 1,
                stdout: String::new(),
                stderr: format!("error usage: {message}\n"),
            };
        }
    };
    match dispatch(cli.command, Limits::from_env()) {
        Ok(stdout) => Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            status: f.status(),
            stdout: String::new(),
            stderr: format!("{}\n", f.line()),
        },
    }
}

fn dispatch(command: Command, limits: Limits) -> CliResult<String> {
    match command {
        Command::Arf { form, democratic } => {
            let f = read_form(&form)?;
            let mut out = format!("arf {}\n", f.arf()?);
            if democratic {
                let _ = writeln!(
                    out,
                    "democratic {}",
                    democratic_arf_with_limit(&f, limits.democratic_max_dim)?
                );
            }
            Ok(out)
        }
        Command::Psi { form, matrix } => {
            let f = read_form(&form)?;
            let t = OrthogonalMap::new(&f, read_matrix(&matrix)?)?;
            Ok(format!("psi {}\n", t.psi()))
        }
        Command::Q {
            surface,
            word,
            matrix,
            epsilon,
        } => {
            let s = read_surface(&surface)?;
            let h = match (word, matrix) {
                (Some(w), _) => evaluate_word(&s, &GeneratorWord::from_text(&read_input(&w)?)?)?,
                (None, Some(m)) => {
                    MappingClass::new(read_matrix(&m)?, epsilon.as_deref() == Some("1"))?
                }
                (None, None) => unreachable!("clap requires --word or --matrix"),
            };
            Ok(format!("Q {}\n", quadruple_point_invariant(&s, &h)?))
        }
        Command::Decompose { form, matrix } => {
            let f = read_form(&form)?;
            let t = OrthogonalMap::new(&f, read_matrix(&matrix)?)?;
            Ok(decompose(&t)?.to_text())
        }
        Command::Verify {
            form,
            matrix,
            decomposition,
        } => {
            let f = read_form(&form)?;
            let m = read_matrix(&matrix)?;
            let d = Decomposition::from_text(&read_input(&decomposition)?)?;
            if d.recompose(&f)? != m {
                return Err(Failure::Mismatch);
            }
            Ok(format!(
                "verify ok\nlength {}\npsi {}\n",
                d.word.len(),
                d.word.len() % 2
            ))
        }
        Command::CheckRh { surface } => {
            let [s1, s2] = surface.as_slice() else {
                return Err(Failure::Input {
                    code: "usage",
                    message: format!(
                        "check-rh needs exactly two --surface arguments, got {}",
                        surface.len()
                    ),
                });
            };
            let (f1, f2) = (read_surface(s1)?, read_surface(s2)?);
            Ok(format!(
                "regularly-homotopic {}\ndiffeo-equivalent {}\nembedding-realizable {}\n",
                regularly_homotopic(&f1, &f2)?,
                equivalent_up_to_diffeomorphism(&f1, &f2)?,
                embedding_realizable(&f1) && embedding_realizable(&f2),
            ))
        }
        Command::Enumerate { form } => {
            let f = read_form(&form)?;
            let elements = enumerate_group_with_limit(&f, limits.enumerate_max_dim)?;
            Ok(GroupTable::new(&f, elements).to_text())
        }
        Command::Catalog { genus, arf } => {
            if genus != 1 {
                return Err(Error::Precondition(format!(
                    "catalog is available for genus 1 only, got {genus}"
                ))
                .into());
            }
            let arf = u8::from(arf == "1");
            let s = torus_form(arf);
            let mut out = format!("genus 1\narf {arf}\n");
            for g in genus1_generators(arf) {
                let [[a, b], [c, d]] = g.integer;
                let _ = writeln!(
                    out,
                    "{} integer {a},{b};{c},{d} reduction {} epsilon {} Psi {}",
                    g.name,
                    g.class.action().to_bit_string(),
                    u8::from(g.class.epsilon()),
                    mapping_class_psi(&s, &g.class)?,
                );
            }
            Ok(out)
        }
    }
}

/// Contents of `arg` when it names an existing file, otherwise `None`.
fn file_contents(arg: &str) -> CliResult<Option<String>> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(path)
        .map(Some)
        .map_err(|e| Failure::Input {
            code: "io-error",
            message: format!("{arg}: {e}"),
        })
}

fn read_input(arg: &str) -> CliResult<String> {
    file_contents(arg)?.ok_or_else(|| Failure::Input {
        code: "io-error",
        message: format!("{arg}: no such file"),
    })
}

fn parse_inline_bits(arg: &str) -> CliResult<BitVector> {
    arg.parse::<BitVector>().map_err(|_| Failure::Input {
        code: "io-error",
        message: format!("{arg}: neither an existing file nor an inline bit string"),
    })
}

/// A form file, or inline `basis_g` bits over the standard Gram.
fn read_form(arg: &str) -> CliResult<QuadraticForm> {
    match file_contents(arg)? {
        Some(text) => Ok(QuadraticForm::from_text(&text)?),
        None => Ok(QuadraticForm::standard(parse_inline_bits(arg)?)?),
    }
}

/// A surface file, or inline `g` bits.
fn read_surface(arg: &str) -> CliResult<SurfacePinkallForm> {
    match file_contents(arg)? {
        Some(text) => Ok(SurfacePinkallForm::from_text(&text)?),
        None => Ok(SurfacePinkallForm::new(parse_inline_bits(arg)?)?),
    }
}

/// A matrix file, or inline rows separated by `/`.
fn read_matrix(arg: &str) -> CliResult<BitMatrix> {
    if let Some(text) = file_contents(arg)? {
        return Ok(BitMatrix::from_text(&text)?);
    }
    let rows = arg
        .split('/')
        .map(parse_inline_bits)
        .collect::<CliResult<Vec<_>>>()?;
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure::Input {
            code: "io-error",
            message: format!("{arg}: rows have different lengths"),
        });
    }
    Ok(BitMatrix::from_rows(cols, &rows))
}
