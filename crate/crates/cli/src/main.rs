use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use wclp_core::syntax::{self, SourceFormat};
use wclp_core::transforms::{self, MaxMinStyle, NeOptions, TauOptions};
use wclp_core::{
    AggregateProgram, Atom, EnumOptions, Error, Interpretation, NestedProgram, WeightProgram,
    DEFAULT_MAX_ATOMS,
};

/// Solve and translate weight constraint, aggregate and nested programs.
#[derive(Parser, Debug)]
#[command(name = "wclp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every model under a semantics, one per line.
    Solve {
        #[arg(long, value_enum)]
        semantics: Semantics,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: Search,
    },
    /// Translate a program and print the result.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop head choices already implied by the head formula (ne, fl).
        #[arg(long)]
        simplify: bool,
        /// Encoding of MAX and MIN (tau, tau-tr).
        #[arg(long, value_enum, default_value_t = MaxMin::Direct)]
        max_min: MaxMin,
        #[command(flatten)]
        input: Input,
    },
    /// Check a property of a weight constraint program.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// Tabulate every stable model and answer set of a weight constraint program.
    Report {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: Search,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Whether every body constraint is strongly satisfiable.
    StrongSat {
        #[command(flatten)]
        input: Input,
    },
    /// Whether a stable model is circular.
    Circular {
        /// Comma-separated atoms of the model; empty for the empty model.
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Program format; taken from the file extension when absent.
    #[arg(long, value_parser = clap::value_parser!(SourceFormat))]
    format: Option<SourceFormat>,
    file: PathBuf,
}

#[derive(Args, Debug)]
struct Search {
    /// Refuse programs with more atoms than this.
    #[arg(long, default_value_t = DEFAULT_MAX_ATOMS)]
    max_atoms: usize,
    /// Worker threads for the enumeration.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

impl Search {
    fn options(&self) -> EnumOptions {
        EnumOptions { max_atoms: self.max_atoms, jobs: self.jobs as usize }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Semantics {
    Stable,
    Answer,
    NeStable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Tr,
    Tau,
    TauTr,
    Ne,
    Fl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MaxMin {
    Direct,
    Auxiliary,
}

enum Program {
    Wc(WeightProgram),
    Agg(AggregateProgram),
    Ne(NestedProgram),
}

enum Failure {
    /// Bad arguments, unreadable files, malformed input.
    Usage(String),
    /// Well-formed requests outside the supported envelope.
    Refusal(String),
}

impl Failure {
    fn from_core(path: &Path, err: Error) -> Failure {
        let path = path.display();
        match err {
            Error::Parse(d) => Failure::Usage(format!("{path}:{d}")),
            e if e.is_refusal() => Failure::Refusal(format!("{path}: {e}")),
            e => Failure::Usage(format!("{path}: error: {e}")),
        }
    }
}

fn load(input: &Input) -> Result<Program, Failure> {
    let path = &input.file;
    let format = match input.format.or_else(|| SourceFormat::from_path(path)) {
        Some(f) => f,
        None => {
            return Err(Failure::Usage(format!(
                "{}: error: cannot tell the format from the extension; pass --format wc|agg|ne",
                path.display()
            )))
        }
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: error: {e}", path.display())))?;
    let parsed = match format {
        SourceFormat::Wc => syntax::parse_wc(&text).map(Program::Wc),
        SourceFormat::Agg => syntax::parse_agg(&text).map(Program::Agg),
        SourceFormat::Ne => syntax::parse_ne(&text).map(Program::Ne),
    };
    parsed.map_err(|e| Failure::from_core(path, e))
}

fn wrong_format(path: &Path, what: &str) -> Failure {
    Failure::Usage(format!("{}: error: {what}", path.display()))
}

fn models(out: &mut String, models: &[Interpretation]) {
    for m in models {
        writeln!(out, "{m}").expect("writing to a string");
    }
}

fn solve(semantics: Semantics, input: &Input, search: &Search) -> Result<String, Failure> {
    let path = &input.file;
    let core = |e| Failure::from_core(path, e);
    let options = search.options();
    let found = match (load(input)?, semantics) {
        (Program::Wc(p), Semantics::Stable) => wclp_core::stable_models_with(&p, &options).map_err(core)?,
        (Program::Wc(p), Semantics::Answer) => wclp_core::answer_sets_with(&p, &options).map_err(core)?,
        (Program::Wc(p), Semantics::NeStable) => {
            let ne = transforms::ne_program(&p).map_err(core)?;
            wclp_core::stable_models_ne_with(&ne, &options).map_err(core)?
        }
        (Program::Agg(p), Semantics::Answer) => {
            wclp_core::check_supported(&p).map_err(core)?;
            wclp_core::agg_answer_sets_with(&p, &options).map_err(core)?
        }
        (Program::Agg(_), _) => {
            return Err(wrong_format(path, "aggregate programs are solved with --semantics answer"))
        }
        (Program::Ne(p), Semantics::NeStable) => wclp_core::stable_models_ne_with(&p, &options).map_err(core)?,
        (Program::Ne(_), _) => {
            return Err(wrong_format(path, "nested programs are solved with --semantics ne-stable"))
        }
    };
    let mut out = String::new();
    models(&mut out, &found);
    Ok(out)
}

fn translate(to: Target, simplify: bool, max_min: MaxMin, input: &Input) -> Result<String, Failure> {
    let path = &input.file;
    let core = |e| Failure::from_core(path, e);
    let ne_options = NeOptions { simplify_heads: simplify, ..NeOptions::default() };
    let tau_options = TauOptions {
        max_min: match max_min {
            MaxMin::Direct => MaxMinStyle::Direct,
            MaxMin::Auxiliary => MaxMinStyle::Auxiliary,
        },
    };
    Ok(match (load(input)?, to) {
        (Program::Wc(p), Target::Tr) => syntax::render_wc(&transforms::tr_program(&p)),
        (Program::Wc(p), Target::Ne) => syntax::render_ne(&transforms::ne_program_with(&p, &ne_options).map_err(core)?),
        (Program::Wc(p), Target::Fl) => syntax::render_ne(&transforms::fl_program_with(&p, &ne_options).map_err(core)?),
        (Program::Agg(p), Target::Tau) => syntax::render_wc(&transforms::tau_program_with(&p, &tau_options).map_err(core)?),
        (Program::Agg(p), Target::TauTr) => {
            let tau = transforms::tau_program_with(&p, &tau_options).map_err(core)?;
            syntax::render_wc(&transforms::tr_program(&tau))
        }
        (Program::Agg(_), _) => return Err(wrong_format(path, "aggregate programs translate with --to tau or tau-tr")),
        (Program::Wc(_), _) => return Err(wrong_format(path, "weight constraint programs translate with --to tr, ne or fl")),
        (Program::Ne(_), _) => return Err(wrong_format(path, "nested programs have no translation")),
    })
}

fn load_wc(input: &Input) -> Result<WeightProgram, Failure> {
    match load(input)? {
        Program::Wc(p) => Ok(p),
        _ => Err(wrong_format(&input.file, "this command needs a weight constraint program")),
    }
}

fn strong_sat(input: &Input) -> Result<String, Failure> {
    let p = load_wc(input)?;
    let mut out = String::new();
    let mut all = true;
    for (i, rule) in p.rules.iter().enumerate() {
        for w in &rule.body {
            let ok = wclp_core::strongly_satisfiable(w);
            all &= ok;
            let verdict = if ok { "strongly satisfiable" } else { "not strongly satisfiable" };
            writeln!(out, "rule {}: {}: {verdict}", i + 1, syntax::render_constraint(w)).expect("writing to a string");
        }
    }
    let verdict = if all { "strongly satisfiable" } else { "not strongly satisfiable" };
    writeln!(out, "program: {verdict}").expect("writing to a string");
    Ok(out)
}

fn parse_model(text: &str) -> Result<Interpretation, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|name| !name.is_empty())
        .map(|name| Atom::new(name).map_err(|e| Failure::Usage(format!("error: --model: {e}"))))
        .collect()
}

fn circular(model: &str, input: &Input) -> Result<String, Failure> {
    let m = parse_model(model)?;
    let p = load_wc(input)?;
    match wclp_core::is_circular(&p, &m).map_err(|e| Failure::from_core(&input.file, e))? {
        Some(witness) => Ok(format!("circular: witness {{{witness}}}\n")),
        None => Ok("not circular\n".to_string()),
    }
}

fn report(input: &Input, search: &Search) -> Result<String, Failure> {
    let p = load_wc(input)?;
    let rows = wclp_core::reports(&p, &search.options()).map_err(|e| Failure::from_core(&input.file, e))?;
    let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
    let mut table = vec![["model", "stable", "answer", "circular", "witness"].map(String::from)];
    for r in rows {
        table.push([
            format!("{{{}}}", r.model),
            yes_no(r.is_stable),
            yes_no(r.is_answer_set),
            r.is_circular.map_or("-".to_string(), yes_no),
            r.circularity_witness.map_or("-".to_string(), |w| format!("{{{w}}}")),
        ]);
    }
    let widths: Vec<usize> = (0..5).map(|c| table.iter().map(|row| row[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in table {
        let line: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        writeln!(out, "{}", line.join("  ").trim_end()).expect("writing to a string");
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let output = match &cli.command {
        Command::Solve { semantics, input, search } => solve(*semantics, input, search)?,
        Command::Translate { to, out, simplify, max_min, input } => {
            let text = translate(*to, *simplify, *max_min, input)?;
            if let Some(path) = out {
                fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: error: {e}", path.display())))?;
                return Ok(());
            }
            text
        }
        Command::Check { check: Check::StrongSat { input } } => strong_sat(input)?,
        Command::Check { check: Check::Circular { model, input } } => circular(model, input)?,
        Command::Report { input, search } => report(input, search)?,
    };
    print!("{output}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Refusal(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
