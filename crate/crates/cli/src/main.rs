//! `bs`: exact computation in Baumslag-Solitar groups from the shell.
//!
//! Parameters are flags (`--m`, `--n`), words are positional arguments in
//! the grammar `a t^-1 a^3 ...`. Exit status 0 on success, 1 on domain
//! errors (resource caps, out-of-hypothesis queries; a JSON error object
//! goes to stderr), 2 on usage errors (unknown flags, malformed words or
//! parameters).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bs_core::classify::{parse_product, product_isomorphic};
use bs_core::dynamics::{
    acts_trivially_on_ball, commensuration_exponent, min_index_over_words, orbit_index, OrbitIndex,
};
use bs_core::invariants::{modular_delta, scale_set};
use bs_core::tree::{ball, ball_dot, Vertex};
use bs_core::{
    are_equal, britton_reduce, BsParams, Error, NormalForm, Word, DEFAULT_BALL_CAP,
    DEFAULT_ORBIT_CAP,
};

#[derive(Parser)]
#[command(
    name = "bs",
    version,
    about = "Word problem, Bass-Serre tree and completion invariants for BS(m, n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter m of BS(m, n); nonzero
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Parameter n of BS(m, n); nonzero
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
}

impl ParamArgs {
    fn params(&self) -> Result<BsParams, CliError> {
        BsParams::new(self.m, self.n).map_err(CliError::usage)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format; each subcommand has a natural default
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Vertex cap for ball enumerations (also via BS_BALL_CAP)
    #[arg(long)]
    ball_cap: Option<usize>,
    /// Iteration cap for orbit and commensuration searches
    #[arg(long)]
    orbit_cap: Option<u64>,
}

impl OutputArgs {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn ball_cap(&self) -> Result<usize, CliError> {
        if let Some(cap) = self.ball_cap {
            return Ok(cap.max(1));
        }
        match std::env::var("BS_BALL_CAP") {
            Ok(text) => text
                .parse::<usize>()
                .map(|cap| cap.max(1))
                .map_err(|_| CliError::Usage(format!("invalid BS_BALL_CAP value {text:?}"))),
            Err(_) => Ok(DEFAULT_BALL_CAP),
        }
    }

    fn orbit_cap(&self) -> u64 {
        self.orbit_cap.unwrap_or(DEFAULT_ORBIT_CAP).max(1)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a word to its pinch-free form
    Reduce {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Word to reduce
        word: String,
    },
    /// Decide whether two words represent the same element
    Eq {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        left: String,
        right: String,
    },
    /// Canonical normal form of a word
    Nf {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        word: String,
    },
    /// Export a ball of the Bass-Serre tree
    Tree {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Ball radius around the base vertex
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Orbit of the coset of a word under powers of a, and its size
    Index {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        word: String,
    },
    /// Minimal orbit index over cosets outside the cyclic subgroup
    MinIndex {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Largest normal-form prefix length to enumerate
        #[arg(long, default_value_t = 3)]
        max_syllables: u32,
    },
    /// Minimal k > 0 with g a^k g^-1 back in the cyclic subgroup
    Commensurate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        word: String,
    },
    /// Whether a word acts trivially on a ball of the tree
    Kernel {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        word: String,
    },
    /// Modular function value of a word, as a reduced fraction
    Delta {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        word: String,
    },
    /// Scale set of the completion, with optional membership test
    Scale {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Value to test for membership in the scale set
        #[arg(long)]
        member: Option<u64>,
    },
    /// Classify products of relative profinite completions
    Classify {
        #[command(flatten)]
        output: OutputArgs,
        /// Left product, e.g. "(2,3)x(4,4)"
        #[arg(long)]
        left: String,
        /// Right product, e.g. "(-4,4)x(2,3)"
        #[arg(long)]
        right: String,
    },
}

/// Errors split by exit status.
enum CliError {
    /// Exit 2: bad arguments (parse errors, invalid parameters, formats).
    Usage(String),
    /// Exit 1: domain errors (caps, hypothesis violations), reported as a
    /// JSON object on stderr.
    Domain(Value),
}

impl CliError {
    fn usage(e: Error) -> CliError {
        CliError::Usage(e.to_string())
    }

    fn from_core(e: Error) -> CliError {
        match e {
            Error::BallCapExceeded { cap } => CliError::Domain(json!({
                "error": e.to_string(),
                "cap": cap,
            })),
            Error::OrbitCapExceeded { cap } => CliError::Domain(json!({
                "error": e.to_string(),
                "cap": cap,
            })),
            Error::OutOfHypothesis { m, n } => CliError::Domain(json!({
                "error": e.to_string(),
                "m": m,
                "n": n,
            })),
            Error::Overflow(_) => CliError::Domain(json!({ "error": e.to_string() })),
            Error::InvalidParameters { .. }
            | Error::ParamsMismatch(..)
            | Error::Parse { .. }
            | Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
        }
    }
}

fn parse_word(text: &str, params: BsParams) -> Result<Word, CliError> {
    Word::parse(text, params).map_err(CliError::usage)
}

fn no_dot(format: Format) -> Result<Format, CliError> {
    if format == Format::Dot {
        Err(CliError::Usage(
            "dot output is only available for the tree subcommand".into(),
        ))
    } else {
        Ok(format)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(object)) => {
            eprintln!("{object}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Reduce {
            params,
            output,
            word,
        } => {
            let p = params.params()?;
            let reduced = britton_reduce(&parse_word(&word, p)?);
            Ok(match no_dot(output.format_or(Format::Text))? {
                Format::Text => format!("{reduced}\n"),
                _ => format!("{}\n", json!({ "word": reduced.to_string() })),
            })
        }
        Command::Eq {
            params,
            output,
            left,
            right,
        } => {
            let p = params.params()?;
            let equal = are_equal(&parse_word(&left, p)?, &parse_word(&right, p)?)
                .map_err(CliError::from_core)?;
            Ok(match no_dot(output.format_or(Format::Text))? {
                Format::Text => format!("{equal}\n"),
                _ => format!("{}\n", json!({ "equal": equal })),
            })
        }
        Command::Nf {
            params,
            output,
            word,
        } => {
            let p = params.params()?;
            let form = NormalForm::of_word(&parse_word(&word, p)?);
            Ok(match no_dot(output.format_or(Format::Text))? {
                Format::Text => format!("{form}\n"),
                _ => {
                    let prefix: Vec<Value> = form
                        .prefix()
                        .iter()
                        .map(|e| json!([e.sign.as_i64(), e.residue]))
                        .collect();
                    format!(
                        "{}\n",
                        json!({
                            "word": form.to_string(),
                            "prefix": prefix,
                            "tail": form.tail().to_string(),
                        })
                    )
                }
            })
        }
        Command::Tree {
            params,
            output,
            radius,
        } => {
            let p = params.params()?;
            let cap = output.ball_cap()?;
            match output.format_or(Format::Dot) {
                Format::Dot => ball_dot(p, radius, cap).map_err(CliError::from_core),
                format => {
                    let vertices = ball(p, radius, cap).map_err(CliError::from_core)?;
                    let labels: Vec<String> =
                        vertices.iter().map(|v| v.rep_word().to_string()).collect();
                    let index: std::collections::HashMap<&Vertex, usize> =
                        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
                    let mut edges = Vec::new();
                    for (i, v) in vertices.iter().enumerate() {
                        for edge in v.outgoing_edges() {
                            if let Some(&j) = index.get(&edge.range()) {
                                edges.push((i, j));
                            }
                        }
                    }
                    Ok(match format {
                        Format::Json => format!(
                            "{}\n",
                            json!({ "vertices": labels, "edges": edges })
                        ),
                        _ => {
                            let mut out = String::new();
                            for (i, label) in labels.iter().enumerate() {
                                out.push_str(&format!("v{i}: {label}\n"));
                            }
                            for (i, j) in edges {
                                out.push_str(&format!("v{i} -> v{j}\n"));
                            }
                            out
                        }
                    })
                }
            }
        }
        Command::Index {
            params,
            output,
            word,
        } => {
            let p = params.params()?;
            let g = parse_word(&word, p)?;
            let report = orbit_index(&g, output.orbit_cap());
            let index = match report.index {
                OrbitIndex::Finite(k) => k,
                OrbitIndex::ExceededCap { cap } => {
                    return Err(CliError::from_core(Error::OrbitCapExceeded { cap }))
                }
            };
            let orbit: Vec<String> = report
                .orbit_witness
                .iter()
                .map(|v| v.rep_word().to_string())
                .collect();
            Ok(match no_dot(output.format_or(Format::Json))? {
                Format::Text => format!("{index}\n"),
                _ => format!(
                    "{}\n",
                    json!({ "element": g.to_string(), "index": index, "orbit": orbit })
                ),
            })
        }
        Command::MinIndex {
            params,
            output,
            max_syllables,
        } => {
            let p = params.params()?;
            let min = min_index_over_words(&p, max_syllables, output.orbit_cap())
                .map_err(CliError::from_core)?;
            Ok(match no_dot(output.format_or(Format::Json))? {
                Format::Text => format!("{min}\n"),
                _ => format!(
                    "{}\n",
                    json!({ "min_index": min, "max_syllables": max_syllables })
                ),
            })
        }
        Command::Commensurate {
            params,
            output,
            word,
        } => {
            let p = params.params()?;
            let g = parse_word(&word, p)?;
            let exponent =
                commensuration_exponent(&g, output.orbit_cap()).map_err(CliError::from_core)?;
            Ok(match no_dot(output.format_or(Format::Json))? {
                Format::Text => format!("{exponent}\n"),
                _ => format!(
                    "{}\n",
                    json!({ "element": g.to_string(), "exponent": exponent })
                ),
            })
        }
        Command::Kernel {
            params,
            output,
            radius,
            word,
        } => {
            let p = params.params()?;
            let g = parse_word(&word, p)?;
            let trivial = acts_trivially_on_ball(&g, radius, output.ball_cap()?)
                .map_err(CliError::from_core)?;
            Ok(match no_dot(output.format_or(Format::Json))? {
                Format::Text => format!("{trivial}\n"),
                _ => format!(
                    "{}\n",
                    json!({
                        "element": g.to_string(),
                        "radius": radius,
                        "acts_trivially": trivial,
                    })
                ),
            })
        }
        Command::Delta {
            params,
            output,
            word,
        } => {
            let p = params.params()?;
            let value = modular_delta(&parse_word(&word, p)?).map_err(CliError::from_core)?;
            Ok(match no_dot(output.format_or(Format::Text))? {
                Format::Text => format!("{value}\n"),
                _ => format!("{}\n", json!({ "delta": value.to_string() })),
            })
        }
        Command::Scale {
            params,
            output,
            member,
        } => {
            let p = params.params()?;
            let s = scale_set(&p);
            Ok(match no_dot(output.format_or(Format::Json))? {
                Format::Text => {
                    let mut out = format!("{s}\n");
                    if let Some(v) = member {
                        out.push_str(&format!("{}\n", s.contains(v)));
                    }
                    out
                }
                _ => {
                    let mut object = json!({ "m0": s.m0(), "n0": s.n0() });
                    if let Some(v) = member {
                        object["member"] = json!(s.contains(v));
                    }
                    format!("{object}\n")
                }
            })
        }
        Command::Classify {
            output,
            left,
            right,
        } => {
            let left = parse_product(&left).map_err(CliError::usage)?;
            let right = parse_product(&right).map_err(CliError::usage)?;
            let verdict = product_isomorphic(&left, &right).map_err(CliError::from_core)?;
            Ok(match no_dot(output.format_or(Format::Json))? {
                Format::Text => match &verdict.witness {
                    Some(sigma) => {
                        format!("isomorphic (sigma = {sigma:?}): {}\n", verdict.reason)
                    }
                    None => format!("not isomorphic: {}\n", verdict.reason),
                },
                _ => format!(
                    "{}\n",
                    json!({
                        "isomorphic": verdict.isomorphic,
                        "sigma": verdict.witness,
                        "reason": verdict.reason.to_string(),
                    })
                ),
            })
        }
    }
}
