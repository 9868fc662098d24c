//! Command-line front end. Exit status: 0 success or word is trivial, 2 word is
//! non-trivial, 1 error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bench::{run_bench, WordFamily};
use crate::bits::Bitstring;
use crate::decider::Decider;
use crate::error::{Error, Result};
use crate::genset::{word_to_element, GeneratingSet, Word};
use crate::lab::{lemma_suite, oracle_agreement_suite, random_word, Report};
use crate::lz::build_lz;
use crate::pda::RunOptions;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_IN_WP: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "vword", version, about = "Word problem of Thompson's group V in quadratic time")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a word represents the identity.
    Decide(DecideArgs),
    /// Compose the word's table directly and print it.
    Oracle(WordArgs),
    /// Time the decider on random words of increasing length.
    Bench(BenchArgs),
    /// Write the push-down recognizer for one point z.
    ExportLz(ExportArgs),
    /// Run a named suite of invariant checks.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MachineFormat {
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct GensArg {
    /// Generating-set JSON file, or `higman` for the built-in set.
    #[arg(long, default_value = "higman")]
    pub gens: String,
}

impl GensArg {
    fn load(&self) -> Result<GeneratingSet> {
        if self.gens == "higman" {
            Ok(GeneratingSet::higman())
        } else {
            GeneratingSet::load(&self.gens)
        }
    }
}

#[derive(Debug, Args)]
pub struct WordArgs {
    #[command(flatten)]
    pub gens: GensArg,
    /// Whitespace-separated generator names.
    pub word: Option<String>,
    #[arg(long = "word", conflicts_with = "word")]
    pub word_flag: Option<String>,
    #[arg(long, conflicts_with_all = ["word", "word_flag"])]
    pub word_file: Option<PathBuf>,
    /// Random word of this length (see --seed).
    #[arg(long, conflicts_with_all = ["word", "word_flag", "word_file"])]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Treat every character as one generator name.
    #[arg(long)]
    pub compact: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

impl WordArgs {
    fn word(&self, gamma: &GeneratingSet) -> Result<Word> {
        let parse = |text: &str| if self.compact { Word::parse_compact(text) } else { Word::parse(text) };
        if let Some(len) = self.random {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            return Ok(random_word(gamma, len, &mut rng));
        }
        if let Some(path) = &self.word_file {
            return Ok(parse(&std::fs::read_to_string(path)?));
        }
        match self.word.as_ref().or(self.word_flag.as_ref()) {
            Some(text) => Ok(parse(text)),
            None => Err(Error::Usage("no word given (use WORD, --word, --word-file or --random)".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub word: WordArgs,
    /// Sweep rotations on all cores; output is identical to the sequential sweep.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub gens: GensArg,
    /// Comma-separated ascending word lengths.
    #[arg(long, value_delimiter = ',', default_value = "128,256,512,1024,2048,4096")]
    pub lengths: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `random` words, or worst-case `identity` words `u·u⁻¹`.
    #[arg(long, default_value = "random")]
    pub family: WordFamily,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub gens: GensArg,
    #[arg(long)]
    pub z: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: MachineFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// lemmas, oracle-agreement, or all.
    pub suite: String,
    #[command(flatten)]
    pub gens: GensArg,
    /// Longest word in the exhaustive oracle-agreement sweep.
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Parses `args` and executes; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Decide(a) => cmd_decide(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::ExportLz(a) => cmd_export_lz(a, out),
        Command::Check(a) => cmd_check(a, out),
    }
}

fn cmd_decide(a: &DecideArgs, out: &mut dyn Write) -> Result<i32> {
    let gamma = a.word.gens.load()?;
    let word = a.word.word(&gamma)?;
    let decider = Decider::new(&gamma)?.with_options(RunOptions::from_env()).parallel(a.parallel);
    let witness = decider.cowp_decide(&word)?;
    let in_wp = witness.is_none();
    match a.word.format {
        Format::Json => {
            let v = json!({ "word": word.to_string(), "in_wp": in_wp, "witness": witness });
            writeln!(out, "{}", serde_json::to_string(&v)?)?;
        }
        Format::Text => {
            writeln!(out, "in_wp: {in_wp}")?;
            if let Some(w) = &witness {
                writeln!(out, "witness: rotation {}, z = {}", w.rotation_index, w.z)?;
            }
        }
    }
    Ok(if in_wp { EXIT_OK } else { EXIT_NOT_IN_WP })
}

fn cmd_oracle(a: &WordArgs, out: &mut dyn Write) -> Result<i32> {
    let gamma = a.gens.load()?;
    let word = a.word(&gamma)?;
    let e = word_to_element(&gamma, &word)?;
    match a.format {
        Format::Json => {
            let v = json!({
                "word": word.to_string(),
                "table": e.entries(),
                "identity": e.is_identity(),
                "maxlen": e.maxlen(),
            });
            writeln!(out, "{}", serde_json::to_string(&v)?)?;
        }
        Format::Text => {
            writeln!(out, "table: {e}")?;
            writeln!(out, "maxlen: {}", e.maxlen())?;
            writeln!(out, "identity: {}", e.is_identity())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    if a.lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Usage("--lengths must be strictly ascending".into()));
    }
    let gamma = a.gens.load()?;
    let decider = Decider::new(&gamma)?;
    let report = run_bench(&decider, &a.lengths, a.trials, a.seed, a.family)?;
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Text => write!(out, "{}", report.to_text())?,
    }
    Ok(EXIT_OK)
}

fn cmd_export_lz(a: &ExportArgs, out: &mut dyn Write) -> Result<i32> {
    let z: Bitstring = a.z.parse()?;
    let gamma = a.gens.load()?;
    let m = build_lz(&z, &gamma)?;
    let text = match a.format {
        MachineFormat::Json => m.dpda().to_json() + "\n",
        MachineFormat::Dot => m.dpda().to_dot(),
    };
    match &a.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let gamma = a.gens.load()?;
    let report = match a.suite.as_str() {
        "lemmas" => lemma_suite(&gamma, a.seed)?,
        "oracle-agreement" => oracle_agreement_suite(&gamma, a.max_len)?,
        "all" => {
            let mut r = Report::new("all");
            r.merge(lemma_suite(&gamma, a.seed)?);
            r.merge(oracle_agreement_suite(&gamma, a.max_len)?);
            r
        }
        other => return Err(Error::Usage(format!("unknown suite {other:?} (expected lemmas, oracle-agreement, all)"))),
    };
    match a.format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Text => write!(out, "{}", report.to_text())?,
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_ERROR })
}
