use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use regwin::automata::Language;
use regwin::oracle::{active_window, distance_to_language, prefix_distance_to_language};
use regwin_cli::{decision_trace, monte_carlo, Experiment, LanguageSource, StreamSpec, TesterFactory, TesterKind};

#[derive(Parser)]
#[command(name = "regwin", version, about = "Sliding-window property testers for regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Triviality, suffix-freeness and the one-sided space class.
    Classify(LangArgs),
    /// Periods, threshold, acceptance sets and components as JSON.
    Analyze(LangArgs),
    /// Run a tester on a stream.
    Tester {
        #[command(subcommand)]
        command: TesterCommand,
    },
    /// Run an experiment config and print its report.
    Experiment {
        config: PathBuf,
        /// Emit JSON instead of CSV.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum TesterCommand {
    Run(RunArgs),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Hamming and prefix distance of the final window to the language.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        stream: String,
        #[command(flatten)]
        lang: LangArgs,
    },
}

#[derive(Args)]
struct LangArgs {
    #[arg(long, conflicts_with = "automaton", required_unless_present = "automaton")]
    regex: Option<String>,
    /// Automaton JSON file.
    #[arg(long)]
    automaton: Option<PathBuf>,
    /// Symbols of the regex alphabet.
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// Pad symbol; defaults to the smallest symbol.
    #[arg(long)]
    pad: Option<char>,
}

impl LangArgs {
    fn load(&self) -> Result<Language> {
        let source = match (&self.regex, &self.automaton) {
            (Some(r), _) => LanguageSource::Regex {
                regex: r.clone(),
                alphabet: self.alphabet.clone(),
                pad: self.pad,
            },
            (None, Some(p)) => LanguageSource::Automaton { automaton: p.clone() },
            (None, None) => bail!("give --regex or --automaton"),
        };
        source.load(None)
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    kind: TesterKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long)]
    stream: String,
    /// Also print the decision after every symbol of one run.
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    lang: LangArgs,
}

#[derive(Serialize)]
struct RunReport {
    tester: String,
    n: usize,
    eps: Option<f64>,
    trials: u64,
    accept_frequency: f64,
    state_bits: u64,
    oracle_distance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<String>,
}

#[derive(Serialize)]
struct DistReport {
    window: String,
    distance: String,
    prefix_distance: String,
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn main() -> Result<()> {
    match run() {
        Err(e)
            if e
                .downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            Ok(())
        }
        other => other,
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Classify(lang) => print_json(&regwin_cli::report::classify(&lang.load()?)?),
        Command::Analyze(lang) => print_json(&regwin_cli::report::analyze(&lang.load()?)?),
        Command::Tester { command: TesterCommand::Run(args) } => {
            let language = args.lang.load()?;
            let stream = StreamSpec::parse(&args.stream)?.generate(language.alphabet())?;
            let factory = TesterFactory::new(args.kind, language.clone(), args.n, args.eps)?;
            let mc = monte_carlo(&factory, &stream, args.trials, args.seed)?;
            let trace = if args.trace {
                let mut tester = factory.build(regwin::testers::derive_seed(&[args.seed, 0]))?;
                let decisions = decision_trace(tester.as_mut(), &stream);
                Some(decisions.iter().map(|d| if d.is_accept() { '1' } else { '0' }).collect())
            } else {
                None
            };
            let window = active_window(&stream, args.n, language.alphabet().pad());
            print_json(&RunReport {
                tester: args.kind.name().to_string(),
                n: args.n,
                eps: args.kind.uses_eps().then_some(args.eps),
                trials: mc.trials,
                accept_frequency: mc.frequency(),
                state_bits: mc.max_state_bits,
                oracle_distance: distance_to_language(&window, language.dfa()).to_string(),
                trace,
            })
        }
        Command::Experiment { config, json, out } => {
            let report = Experiment::from_file(&config)?.run()?;
            let text = if json { report.to_json()? } else { report.to_csv()? };
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Oracle { command: OracleCommand::Dist { n, stream, lang } } => {
            let language = lang.load()?;
            let stream = StreamSpec::parse(&stream)?.generate(language.alphabet())?;
            let window = active_window(&stream, n, language.alphabet().pad());
            print_json(&DistReport {
                window: language.alphabet().decode(&window),
                distance: distance_to_language(&window, language.dfa()).to_string(),
                prefix_distance: prefix_distance_to_language(&window, language.rdfa()).to_string(),
            })
        }
    }
}
