//! Command-line interface for building and analyzing the languages of
//! words avoiding reversed factors.
//!
//! Results go to stdout and are byte-deterministic for a given invocation;
//! progress notes go to stderr. Exit codes: `0` success, `1` domain errors
//! (impossible requests, caps, non-convergence), `2` I/O and input-format
//! errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use revfactor::avoidance::{
    brute_count, build_by_intersection_with, build_direct_with_progress, IntersectionOptions,
};
use revfactor::growth::classify;
use revfactor::words::{aperiodic_witness_from_dfa, periodic_witness};
use revfactor::{
    check_root_against_ratios, count_sequence, find_recurrence_bounded, growth_constant,
    infer_alphabet_size, largest_real_root, read_grail, write_dot, write_grail, AvoidanceSpec,
    Dfa, Error, Report,
};

#[derive(Parser)]
#[command(
    name = "revfactor",
    version,
    about = "Build and analyze the regular languages of words avoiding reversed factors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the minimal automaton of the avoidance language
    Build(BuildArgs),
    /// Classify the growth of an automaton's language
    Classify(InputArgs),
    /// Count accepted words of each length up to a bound
    Count(CountArgs),
    /// Discover the census recurrence, its dominant root, and the growth constant
    Recurrence(RecurrenceArgs),
    /// Produce an infinite-word witness for the language's growth
    Witness(WitnessArgs),
    /// Census by brute-force enumeration, as an independent oracle
    Oracle(OracleArgs),
    /// Convert an automaton listing to another format
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Explore factor-memory states breadth-first, then minimize
    Direct,
    /// Intersect one automaton per reversed-factor pair
    Intersect,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// One fact per line: start, transitions, finals
    Grail,
    /// Graphviz
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    /// Prefix of an aperiodic infinite word inside the language
    Aperiodic,
    /// Pair (y, x) with y·x^m accepted for every m
    Periodic,
}

#[derive(Args)]
struct BuildArgs {
    /// Alphabet size k
    #[arg(long)]
    alphabet: usize,
    /// Factor length threshold (forbid reversed factors of this length and up)
    #[arg(long)]
    length: usize,
    /// Construction method
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    /// Output file for the automaton
    #[arg(long)]
    out: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Grail)]
    format: Format,
    /// Keep the dead state in the output
    #[arg(long)]
    include_dead: bool,
    /// Cap on the number of intersection terms (method=intersect)
    #[arg(long)]
    term_limit: Option<usize>,
}

#[derive(Args)]
struct InputArgs {
    /// Automaton listing to read
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Alphabet size (default: largest mentioned symbol + 1)
    #[arg(long)]
    alphabet: Option<usize>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest word length to count
    #[arg(long)]
    upto: usize,
}

#[derive(Args)]
struct RecurrenceArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of census terms to compute (indices 0..terms)
    #[arg(long)]
    terms: usize,
    /// First index of the tail used for discovery (default: terms / 4)
    #[arg(long)]
    tail_start: Option<usize>,
    /// Refuse recurrences of order above this
    #[arg(long)]
    max_order: Option<usize>,
    /// Decimal digits for the dominant root
    #[arg(long, default_value_t = 10)]
    precision: u32,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Kind of witness to produce
    #[arg(long, value_enum)]
    kind: WitnessKind,
    /// Length of the emitted aperiodic prefix
    #[arg(long, default_value_t = 200)]
    length: usize,
}

#[derive(Args)]
struct OracleArgs {
    /// Alphabet size k
    #[arg(long)]
    alphabet: usize,
    /// Factor length threshold
    #[arg(long)]
    length: usize,
    /// Largest word length to count
    #[arg(long)]
    upto: usize,
}

#[derive(Args)]
struct ConvertArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Target format
    #[arg(long, value_enum)]
    to: Format,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep the dead state in the output
    #[arg(long)]
    include_dead: bool,
}

enum CliError {
    Domain(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(e) if e.is_format_error() => 2,
            CliError::Domain(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn load_automaton(args: &InputArgs) -> Result<Dfa, CliError> {
    let text = read_file(&args.input)?;
    let alphabet = match args.alphabet {
        Some(k) => k,
        None => infer_alphabet_size(&text)?,
    };
    Ok(read_grail(&text, alphabet)?)
}

fn live_count(a: &Dfa) -> usize {
    a.live_states().iter().filter(|&&b| b).count()
}

fn render_automaton(a: &Dfa, format: Format, include_dead: bool) -> String {
    match format {
        Format::Grail => write_grail(a, include_dead),
        Format::Dot => write_dot(a, include_dead),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Build(args) => build(args),
        Command::Classify(args) => classify_command(args),
        Command::Count(args) => count(args),
        Command::Recurrence(args) => recurrence(args),
        Command::Witness(args) => witness(args),
        Command::Oracle(args) => oracle(args),
        Command::Convert(args) => convert(args),
    }
}

fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var("REVFACTOR_THREADS") {
        Err(_) => Ok(1),
        Ok(raw) => match raw.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Domain(Error::InvalidSpec(format!(
                "REVFACTOR_THREADS must be a positive integer, got {raw:?}"
            )))),
        },
    }
}

fn build(args: BuildArgs) -> Result<(), CliError> {
    let spec = AvoidanceSpec::new(args.alphabet, args.length)?;
    let mut report = Report {
        k: Some(args.alphabet),
        ell: Some(args.length),
        ..Report::default()
    };
    let dfa = match args.method {
        Method::Direct => {
            let (dfa, pre_min) = build_direct_with_progress(&spec, |n| {
                eprintln!("explored {n} states");
            })?;
            report.method = Some("direct".into());
            report.states_pre_minimization = Some(pre_min);
            dfa
        }
        Method::Intersect => {
            let mut options = IntersectionOptions::default();
            if let Some(limit) = args.term_limit {
                options.term_limit = limit;
            }
            options.threads = threads_from_env()?;
            report.method = Some("intersect".into());
            build_by_intersection_with(&spec, &options)?
        }
    };
    report.states_total = Some(dfa.state_count());
    report.states_live = Some(live_count(&dfa));
    write_file(&args.out, &render_automaton(&dfa, args.format, args.include_dead))?;
    eprintln!("wrote {}", args.out.display());
    print!("{}", report.render());
    Ok(())
}

fn classify_command(args: InputArgs) -> Result<(), CliError> {
    let dfa = load_automaton(&args)?;
    let growth = classify(&dfa)?;
    let report = Report {
        k: Some(dfa.alphabet_size()),
        states_total: Some(dfa.state_count()),
        states_live: Some(live_count(&dfa)),
        growth_class: Some(growth.class.name().into()),
        longest_word: growth.max_word_length,
        ..Report::default()
    };
    print!("{}", report.render());
    Ok(())
}

fn count(args: CountArgs) -> Result<(), CliError> {
    let dfa = load_automaton(&args.input)?;
    let seq = count_sequence(&dfa, args.upto);
    let mut out = String::new();
    for (n, term) in seq.terms().iter().enumerate() {
        out.push_str(&format!("{n} {term}\n"));
    }
    print!("{out}");
    Ok(())
}

fn recurrence(args: RecurrenceArgs) -> Result<(), CliError> {
    let dfa = load_automaton(&args.input)?;
    let seq = count_sequence(&dfa, args.terms);
    let tail_start = args.tail_start.unwrap_or(args.terms / 4);
    let rec = find_recurrence_bounded(&seq, tail_start, args.max_order)?;
    let mut report = Report {
        k: Some(dfa.alphabet_size()),
        ..Report::default()
    };
    report.set_recurrence(&rec);
    match largest_real_root(&rec, args.precision, dfa.alphabet_size() as u32) {
        Err(Error::NoRealRootAboveOne) => {} // e.g. an eventually zero census
        Err(e) => return Err(e.into()),
        Ok(root) => {
            let alpha = root.to_f64();
            check_root_against_ratios(&seq, alpha)?;
            report.alpha = Some(root.decimal(args.precision));
            report.alpha_digits = Some(args.precision);
            let constant = growth_constant(&seq, alpha, f64::INFINITY)?;
            report.growth_constant = Some(constant.value);
            report.growth_constant_uncertainty = Some(constant.uncertainty);
        }
    }
    print!("{}", report.render());
    Ok(())
}

fn witness(args: WitnessArgs) -> Result<(), CliError> {
    let dfa = load_automaton(&args.input)?;
    let mut report = Report {
        k: Some(dfa.alphabet_size()),
        ..Report::default()
    };
    match args.kind {
        WitnessKind::Aperiodic => {
            let word = aperiodic_witness_from_dfa(&dfa, args.length)?;
            report.witness_kind = Some("aperiodic".into());
            report.witness = Some(word.to_compact_string());
        }
        WitnessKind::Periodic => {
            let (entry, cycle) = periodic_witness(&dfa)?;
            report.witness_kind = Some("periodic".into());
            report.witness = Some(format!(
                "{}({})^w",
                entry.to_compact_string(),
                cycle.to_compact_string()
            ));
        }
    }
    print!("{}", report.render());
    Ok(())
}

fn oracle(args: OracleArgs) -> Result<(), CliError> {
    let spec = AvoidanceSpec::new(args.alphabet, args.length)?;
    let mut out = String::new();
    for n in 0..=args.upto {
        let count = brute_count(&spec, n)?;
        out.push_str(&format!("{n} {count}\n"));
    }
    print!("{out}");
    Ok(())
}

fn convert(args: ConvertArgs) -> Result<(), CliError> {
    let dfa = load_automaton(&args.input)?;
    let rendered = render_automaton(&dfa, args.to, args.include_dead);
    match args.out {
        Some(path) => write_file(&path, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}
