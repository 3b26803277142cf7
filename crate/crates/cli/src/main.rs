use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lambda_words::bfile::BFile;
use lambda_words::cf::{HurwitzPair, Ladder};
use lambda_words::complement::ComplementStructure;
use lambda_words::eertree::{is_rich, ups_of_prefix};
use lambda_words::gamma::{first_non_rich_prefix, gamma_word, GammaCode};
use lambda_words::interspersion::{array_from_signature, signature_sequence, vector_path, Signature};
use lambda_words::lambda::{generate_s, lambda_word};
use lambda_words::verify::run_suite;
use lambda_words::{Error, LetterWord, ThetaSpec};
use serde_json::json;

mod plot;

#[derive(Parser)]
#[command(name = "lambdaw", version, about = "Lambda and Gamma words of theta in (1, 2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Bfile,
    Svg,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WordKind {
    Lambda,
    Gamma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignatureArg {
    I,
    J,
}

#[derive(clap::Args)]
struct Common {
    /// phi | pi-2 | log:B,A | cf:1,t1,... | periodic:PRE/PERIOD | cf-file:PATH
    #[arg(long, default_value = "log:2,3", value_parser = parse_theta)]
    theta: ThetaSpec,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// First n letters of the Lambda word
    Lambda {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// First n letters of the Gamma word
    Gamma {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// First n elements i + j*theta of the sorted sequence
    SSeq {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// The first n convergents in ladder order
    Convergents {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// The first n members of the Hurwitz chain
    Hurwitz {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Richness of a word, or of a Lambda/Gamma prefix
    Rich {
        #[command(flatten)]
        common: Common,
        /// Comma-separated letters; overrides --theta/--n
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
        #[arg(long, default_value_t = 200)]
        n: u64,
        #[arg(long, value_enum, default_value_t = WordKind::Lambda)]
        kind: WordKind,
        /// For Gamma words: search this far for the first non-rich prefix
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Uni-occurrent palindromic suffix of the Lambda prefix of length n
    Ups {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
    },
    /// Nuclear (or maximal) complement window for K
    Nuclear {
        #[command(flatten)]
        common: Common,
        #[arg(long = "k", value_parser = clap::value_parser!(u64).range(1..))]
        big_k: u64,
        #[arg(long)]
        maximal: bool,
    },
    /// The complement window whose gap word is the ups ending at s_n
    UpsWindow {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Interspersion array read off a signature sequence
    Interspersion {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long, default_value_t = 55)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = SignatureArg::J)]
        signature: SignatureArg,
        /// Also print the vector path of the first `budget` elements
        #[arg(long)]
        vectors: bool,
    },
    /// Run every structural check and print a pass/fail table
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Letter-by-position plot as CSV or SVG
    Plot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = WordKind::Lambda)]
        kind: WordKind,
    },
    /// Compare a generated word against a b-file
    OeisDiff {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bfile: PathBuf,
        /// Terms to generate; defaults to the b-file length
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t = WordKind::Lambda)]
        kind: WordKind,
    },
}

fn parse_theta(s: &str) -> Result<ThetaSpec, String> {
    ThetaSpec::parse(s).map_err(|e| e.to_string())
}

/// A failed run: exit 1 for a verification failure, 2 otherwise.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("lambdaw: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("lambdaw: {msg}");
            ExitCode::from(2)
        }
    }
}

fn allow(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        Err(Failure::Usage(format!("--format {name} is not supported by `{command}`")))
    }
}

fn word_output(word: &LetterWord, format: Format, command: &str) -> Outcome {
    use Format::*;
    allow(format, &[Text, Csv, Bfile, Json, Svg], command)?;
    Ok(match format {
        Text => format!("{word}\n"),
        Csv => plot::csv(word),
        Bfile => BFile::new(0, word.iter().map(|&x| x as i64).collect()).render(&[]),
        Json => format!("{}\n", json!(word)),
        Svg => plot::svg(word, command),
    })
}

fn generate(theta: &ThetaSpec, n: usize, kind: WordKind) -> Result<LetterWord, Error> {
    match kind {
        WordKind::Lambda => Ok(lambda_word(theta, n)?.word),
        WordKind::Gamma => gamma_word(theta, n),
    }
}

fn run(command: Command) -> Outcome {
    use Format::*;
    match command {
        Command::Lambda { common, n } => {
            let word = lambda_word(&common.theta, n as usize)?.word;
            word_output(&word, common.format, "lambda")
        }
        Command::Gamma { common, n } => {
            let word = gamma_word(&common.theta, n as usize)?;
            word_output(&word, common.format, "gamma")
        }
        Command::SSeq { common, n } => {
            allow(common.format, &[Text, Csv, Json], "s-seq")?;
            let s = generate_s(&common.theta, n as usize)?;
            Ok(match common.format {
                Json => format!("{}\n", json!(s)),
                Csv => s.iter().enumerate().fold("n,i,j\n".into(), |mut out, (k, e)| {
                    let _ = writeln!(out, "{k},{},{}", e.i, e.j);
                    out
                }),
                _ => s.iter().map(|e| format!("{e}\n")).collect(),
            })
        }
        Command::Convergents { common, n } => {
            allow(common.format, &[Text, Csv, Json], "convergents")?;
            let mut code = GammaCode::new(&common.theta);
            code.extend_to(n as usize)?;
            convergents(&mut code, common.format)
        }
        Command::Hurwitz { common, n } => {
            allow(common.format, &[Text, Json], "hurwitz")?;
            let mut ladder = Ladder::new(&common.theta);
            let chain = ladder.hurwitz_chain(n as usize)?;
            Ok(match common.format {
                Json => format!("{}\n", json!(chain)),
                _ => chain.iter().map(|p: &HurwitzPair| format!("({}, {})\n", p.left, p.right)).collect(),
            })
        }
        Command::Rich { common, word, n, kind, horizon } => {
            allow(common.format, &[Text, Json], "rich")?;
            if let (WordKind::Gamma, Some(h), None) = (kind, horizon, &word) {
                let witness = first_non_rich_prefix(&common.theta, h as usize)?;
                return Ok(match common.format {
                    Json => format!("{}\n", json!(witness)),
                    _ => match witness {
                        None => format!("rich through {h} letters\n"),
                        Some(w) => format!(
                            "not rich: prefix of length {} has no ups; witness {} at {}\n",
                            w.prefix_length, w.factor, w.window_start
                        ),
                    },
                });
            }
            let w = match word {
                Some(w) => LetterWord::new(w),
                None => generate(&common.theta, n as usize, kind)?,
            };
            let r = is_rich(&w);
            Ok(match common.format {
                Json => format!("{}\n", json!(r)),
                _ => match r.first_violation {
                    None => "rich\n".into(),
                    Some(p) => format!("not rich: prefix of length {} has no ups\n", p + 1),
                },
            })
        }
        Command::Ups { common, n, word } => {
            allow(common.format, &[Text, Json], "ups")?;
            let w = match word {
                Some(w) => LetterWord::new(w),
                None => lambda_word(&common.theta, n as usize)?.word,
            };
            let r = ups_of_prefix(&w, n as usize)?;
            Ok(match (common.format, &r.ups) {
                (Json, _) => format!("{}\n", json!(r)),
                (_, Some(u)) => format!("{u}\n"),
                (_, None) => format!("none (longest palindromic suffix {} is repeated)\n", r.longest_palindromic_suffix),
            })
        }
        Command::Nuclear { common, big_k, maximal } => {
            allow(common.format, &[Text, Json], "nuclear")?;
            let mut cs = ComplementStructure::new(&common.theta);
            if maximal {
                let c = cs.maximal(big_k)?;
                return Ok(match common.format {
                    Json => format!("{}\n", json!(c)),
                    _ => format!(
                        "K = {big_k} maximal\nelements: {}\ndelta: {}\n",
                        join(&c.elements),
                        c.delta
                    ),
                });
            }
            let w = cs.nuclear(big_k)?;
            Ok(match common.format {
                Json => format!("{}\n", json!(w)),
                _ => format!(
                    "K = {big_k} ({:?}, k = {})\nelements: {}\ndelta: {}\n",
                    w.kind, w.k, join(&w.elements), w.delta
                ),
            })
        }
        Command::UpsWindow { common, n } => {
            allow(common.format, &[Text, Json], "ups-window")?;
            let w = ComplementStructure::new(&common.theta).ups_window(n as usize)?;
            Ok(match common.format {
                Json => format!("{}\n", json!(w)),
                _ => format!("K = {}\nelements: {}\ndelta: {}\n", w.big_k, join(&w.elements), w.delta),
            })
        }
        Command::Interspersion { common, rows, budget, signature, vectors } => {
            allow(common.format, &[Text, Csv, Json], "interspersion")?;
            let which = match signature {
                SignatureArg::I => Signature::IOfTheta,
                SignatureArg::J => Signature::JOfThetaInverse,
            };
            let sig = signature_sequence(&common.theta, budget, which)?;
            let array = array_from_signature(&sig, rows)?;
            let path = if vectors { Some(vector_path(&common.theta, budget)?) } else { None };
            Ok(match common.format {
                Json => format!("{}\n", json!({ "rows": array, "vector_path": path })),
                Csv => array.to_csv(),
                _ => {
                    let mut out = String::new();
                    for r in &array.rows {
                        let _ = writeln!(out, "{}", r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
                    }
                    if let Some(p) = path {
                        let _ = writeln!(out, "vector path word: {}", p.word);
                    }
                    out
                }
            })
        }
        Command::Verify { common, n } => {
            allow(common.format, &[Text, Json], "verify")?;
            let report = run_suite(&common.theta, n as usize)?;
            let out = match common.format {
                Json => format!("{}\n", json!(report)),
                _ => report.to_string(),
            };
            if report.all_passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification("verification failed".into()))
            }
        }
        Command::Plot { common, n, kind } => {
            allow(common.format, &[Csv, Svg], "plot")?;
            let word = generate(&common.theta, n as usize, kind)?;
            Ok(match common.format {
                Svg => plot::svg(&word, &format!("{} of {}", kind_name(kind), common.theta)),
                _ => plot::csv(&word),
            })
        }
        Command::OeisDiff { common, bfile, n, kind } => {
            allow(common.format, &[Text, Json], "oeis-diff")?;
            let reference = BFile::read(&bfile)?;
            let n = n.map_or(reference.values.len(), |n| n as usize);
            let word = generate(&common.theta, n, kind)?;
            let generated: Vec<i64> = word.iter().map(|&x| x as i64).collect();
            let mismatch = reference.first_mismatch(&generated);
            let compared = generated.len().min(reference.values.len());
            let out = match common.format {
                Json => format!("{}\n", json!({ "compared": compared, "mismatch": mismatch })),
                _ => match mismatch {
                    None => format!("match: {compared} terms\n"),
                    Some(m) => format!(
                        "mismatch at index {}: expected {}, generated {}\n",
                        m.index, m.expected, m.actual
                    ),
                },
            };
            match mismatch {
                None => Ok(out),
                Some(_) => {
                    print!("{out}");
                    Err(Failure::Verification(format!("{} differs from {}", kind_name(kind), bfile.display())))
                }
            }
        }
    }
}

fn convergents(code: &mut GammaCode, format: Format) -> Outcome {
    let mut rows = Vec::new();
    for x in 0..code.ladder().len() {
        let c = *code.ladder().letter(x)?;
        rows.push((c, code.ladder().continued_fraction(x)?, code.value(x)?));
    }
    let cf_text = |cf: &[u64]| cf.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    Ok(match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(c, cf, g)| json!({ "convergent": c, "cf": cf, "gamma": g }))
                .collect();
            format!("{}\n", json!(v))
        }
        Format::Csv => rows.iter().fold("A,B,cf,depth,gamma\n".into(), |mut out, (c, cf, g)| {
            let _ = writeln!(out, "{},{},{},{},{g}", c.a, c.b, cf_text(cf), c.depth);
            out
        }),
        _ => rows.iter().fold(String::new(), |mut out, (c, cf, g)| {
            let _ = writeln!(
                out,
                "{:>3}  {:<12} {:<6} gamma {g}  [{}]",
                c.depth,
                c.to_string(),
                format!("{:?}", c.side),
                cf_text(cf)
            );
            out
        }),
    })
}

fn kind_name(kind: WordKind) -> &'static str {
    match kind {
        WordKind::Lambda => "Lambda word",
        WordKind::Gamma => "Gamma word",
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}
