mod commands;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acd_core::{Caps, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

/// Zielonka trees, alternating cycle decompositions and the parity
/// transformations built from them.
#[derive(Parser, Debug)]
#[command(name = "acd", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest strongly connected component (in edges) whose loops are
    /// enumerated by brute force.
    #[arg(long, global = true, env = "ACD_LOOP_CAP", default_value_t = Caps::default().loop_cap)]
    loop_cap: usize,
    /// Largest number of sets visited by worklist explorations.
    #[arg(long, global = true, env = "ACD_EXPLORE_CAP", default_value_t = Caps::default().explore_cap)]
    explore_cap: usize,
    /// Write Graphviz DOT instead of a document where one is available.
    #[arg(long, global = true)]
    dot: bool,
    /// Run the command on every `.toml` file of a directory.
    #[arg(long, global = true, value_name = "DIR")]
    each: Option<PathBuf>,
}

impl Global {
    pub fn caps(&self) -> Caps {
        Caps {
            loop_cap: self.loop_cap,
            explore_cap: self.explore_cap,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zielonka tree of the document's condition over its colours.
    Zielonka(Input),
    /// Zielonka tree parity automaton as a system with a parity condition.
    ZtAutomaton(Input),
    /// Alternating cycle decomposition of a system.
    Acd(Input),
    /// Parity transformation from the ACD, with its morphism to the input.
    Transform(Input),
    /// Size, priority interval and polarity of the ACD transformation.
    Stats(Input),
    /// Which relabellings the ACD admits.
    Shape(Input),
    /// Equivalent condition of another class on the same system.
    Relabel {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        target: Class,
    },
    /// Removes gaps from a parity condition.
    Compress(Input),
    /// Product of a deterministic automaton with a system whose colours are
    /// its letters.
    Compose {
        /// The automaton.
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE")]
        system: PathBuf,
    },
    /// Checks the morphism of a document against a target document.
    CheckMorphism {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE")]
        target: PathBuf,
        /// Also require local bijectivity.
        #[arg(long)]
        bijective: bool,
    },
    /// Solves the game given by a system with owners.
    Solve(Input),
    /// Whether two documents on the same system give every reachable loop
    /// the same status.
    OracleEquiv {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE")]
        other: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Input document; `-` or nothing reads standard input.
    file: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Rabin,
    Streett,
    Parity,
    Weak,
}

/// What a command produces: text for standard output and an exit status.
pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    pub fn ok(text: String) -> Output {
        Output { text, status: 0 }
    }

    pub fn check(text: String, holds: bool) -> Output {
        Output {
            text,
            status: if holds { 0 } else { 1 },
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Io(PathBuf, io::Error),
    Core(Error),
}

impl Failure {
    fn status(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_cap() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn input_of(cmd: &Command) -> &Input {
    match cmd {
        Command::Zielonka(i)
        | Command::ZtAutomaton(i)
        | Command::Acd(i)
        | Command::Transform(i)
        | Command::Stats(i)
        | Command::Shape(i)
        | Command::Compress(i)
        | Command::Solve(i) => i,
        Command::Relabel { input, .. }
        | Command::Compose { input, .. }
        | Command::CheckMorphism { input, .. }
        | Command::OracleEquiv { input, .. } => input,
    }
}

fn run(cmd: &Command, g: &Global, text: &str) -> Result<Output, Failure> {
    use commands::*;
    match cmd {
        Command::Zielonka(_) => zielonka(g, text),
        Command::ZtAutomaton(_) => zt_automaton(g, text),
        Command::Acd(_) => acd(g, text),
        Command::Transform(_) => transform(g, text),
        Command::Stats(_) => stats(g, text),
        Command::Shape(_) => shape(g, text),
        Command::Relabel { target, .. } => relabel(g, text, *target),
        Command::Compress(_) => compress(g, text),
        Command::Compose { system, .. } => compose(g, text, &read_file(system)?),
        Command::CheckMorphism { target, bijective, .. } => {
            check_morphism(g, text, &read_file(target)?, *bijective)
        }
        Command::Solve(_) => solve(g, text),
        Command::OracleEquiv { other, .. } => oracle_equiv(g, text, &read_file(other)?),
    }
}

fn run_file(cmd: &Command, g: &Global, path: &Path) -> (String, u8) {
    match read_file(path).and_then(|t| run(cmd, g, &t)) {
        Ok(o) => (o.text, o.status),
        Err(e) => (format!("# error: {e}\n"), e.status()),
    }
}

fn batch(cmd: &Command, g: &Global, dir: &Path) -> Result<(String, u8), Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Io(dir.to_path_buf(), e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    let results: Vec<(String, u8)> = files.par_iter().map(|p| run_file(cmd, g, p)).collect();
    let mut out = String::new();
    let mut status = 0;
    for (path, (text, s)) in files.iter().zip(results) {
        let name = path.file_name().map(|n| n.to_string_lossy()).unwrap_or_default();
        out.push_str(&format!("# == {name} ==\n{text}"));
        if !text.ends_with('\n') {
            out.push('\n');
        }
        status = status.max(s);
    }
    Ok((out, status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &g.each {
        Some(dir) => batch(&cli.command, g, dir),
        None => {
            let text = match &input_of(&cli.command).file {
                Some(p) if p.as_os_str() != "-" => read_file(p),
                _ => {
                    let mut s = String::new();
                    io::stdin()
                        .read_to_string(&mut s)
                        .map(|_| s)
                        .map_err(|e| Failure::Io(PathBuf::from("-"), e))
                }
            };
            text.and_then(|t| run(&cli.command, g, &t)).map(|o| (o.text, o.status))
        }
    };
    match result {
        Ok((text, status)) => {
            let _ = io::stdout().write_all(text.as_bytes());
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
