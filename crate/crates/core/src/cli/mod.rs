//! The `coalg` command-line front end.
//!
//! Every command loads its input files into one [`Workspace`], validates
//! all entities, runs one kernel operation and emits a versioned
//! [`Report`]. Exit status is 0 when every check passed, 3 when a check
//! failed, and otherwise the exit code of the error (2 parse, 3 invalid
//! input, 4 computation).

mod commands;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::field::FactorConfig;
use crate::interchange::{Entity, Report, Workspace};
use crate::report::Status;

#[derive(Debug, Parser)]
#[command(name = "coalg", version, about = "Exact structure theory of finite-dimensional cocommutative coalgebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalOpts {
    /// Seed for every randomized choice (factorization, suites).
    #[arg(long, global = true, env = "COALG_KERNEL_SEED", default_value_t = crate::suite::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest polynomial degree the factorizer will attempt.
    #[arg(long, global = true, default_value_t = FactorConfig::default().degree_cap)]
    pub degree_cap: usize,
    /// Extra documents whose entities may be referenced by name.
    #[arg(long = "load", global = true, value_name = "FILE")]
    pub load: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// `FILE` or `FILE#NAME` for an entity inside a workspace document.
pub type Input = String;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of every entity in the given files.
    Validate {
        #[arg(required = true)]
        files: Vec<Input>,
    },
    /// Étale part Ét(C), its simple summands and the natural retraction.
    Etale { input: Input },
    /// Irreducible components and the local decomposition of the dual algebra.
    Decompose { input: Input },
    /// Group-like elements.
    Grouplikes { input: Input },
    /// The retraction C → Ét(C); for a morphism, its naturality squares.
    Retract { input: Input },
    /// Subcoalgebra generated by vectors.
    Subgen {
        input: Input,
        /// Comma-separated coordinates, e.g. `1,0,3/4`; repeatable.
        #[arg(long = "vector", required = true)]
        vectors: Vec<String>,
    },
    /// Checks of the adjunction between k^δ and group-likes.
    AdjunctionGp { input: Input },
    /// The coalgebra k̄^∨[X] of a G-set.
    GaloisFunctor { galois: Input, gset: Input },
    /// Unit, counit and triangle identities of the Galois adjunction.
    GaloisAdjunction {
        galois: Input,
        gset: Input,
        /// Coalgebra for the counit side; the trivial coalgebra if omitted.
        coalgebra: Option<Input>,
    },
    /// Day convolution F ⊗ G, optionally preceded by the category.
    DayConvolve {
        #[arg(num_args = 2..=3, required = true)]
        inputs: Vec<Input>,
    },
    /// Internal hom [G, H], optionally preceded by the category.
    DayHom {
        #[arg(num_args = 2..=3, required = true)]
        inputs: Vec<Input>,
    },
    /// Day subcoalgebra generated by vectors at objects.
    DaySubgen {
        input: Input,
        /// `OBJECT:COORDS`, e.g. `1:1,0`; the object is an index or a name.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
    },
    /// The same Day commands in nested form: `day convolve …`.
    Day {
        #[command(subcommand)]
        command: DayCommand,
    },
    /// Run acceptance suites 1 to 9 (all when none are given).
    Suite { ids: Vec<u8> },
}

#[derive(Debug, Subcommand)]
pub enum DayCommand {
    Convolve {
        #[arg(num_args = 2..=3, required = true)]
        inputs: Vec<Input>,
    },
    Hom {
        #[arg(num_args = 2..=3, required = true)]
        inputs: Vec<Input>,
    },
    Subgen {
        input: Input,
        #[arg(long = "at", required = true)]
        at: Vec<String>,
    },
}

/// A report plus the human-readable headline lines.
pub struct Output {
    pub report: Report,
    pub lines: Vec<String>,
}

/// Entities loaded for one command.
pub struct Loaded {
    pub ws: Workspace,
    files: BTreeMap<String, Vec<String>>,
}

impl Loaded {
    fn load(inputs: &[&Input], extra: &[PathBuf], cfg: &FactorConfig) -> Result<Loaded> {
        let mut ws = Workspace::new(cfg.clone());
        let mut files = BTreeMap::new();
        let paths = inputs.iter().map(|i| split_input(i).0.to_string()).chain(extra.iter().map(|p| p.display().to_string()));
        for path in paths {
            if let std::collections::btree_map::Entry::Vacant(e) = files.entry(path) {
                let names = ws.add_file(std::path::Path::new(e.key()))?;
                e.insert(names);
            }
        }
        ws.resolve()?;
        Ok(Loaded { ws, files })
    }

    /// The entity an input designates: the named one, the only one in the
    /// file, or the only one of the wanted kind.
    pub fn select(&self, input: &str, kinds: &[&str]) -> Result<(String, &Entity)> {
        let (path, name) = split_input(input);
        let names = self.files.get(path).ok_or_else(|| Error::Invalid(format!("{path} was not loaded")))?;
        let chosen = match name {
            Some(n) => {
                if !names.iter().any(|x| x == n) {
                    return Err(Error::Invalid(format!("{path} has no entity named {n:?}")));
                }
                n.to_string()
            }
            None if names.len() == 1 => names[0].clone(),
            None => {
                let fitting: Vec<&String> =
                    names.iter().filter(|n| self.ws.get(n).map(|e| kinds.contains(&e.kind())).unwrap_or(false)).collect();
                match fitting.as_slice() {
                    [one] => (*one).clone(),
                    _ => return Err(Error::Invalid(format!("{path} holds several entities; select one with {path}#NAME"))),
                }
            }
        };
        let e = self.ws.get(&chosen)?;
        if !kinds.contains(&e.kind()) {
            return Err(Error::Invalid(format!("{input}: expected {}, found {}", kinds.join(" or "), e.kind())));
        }
        Ok((chosen, e))
    }
}

fn split_input(input: &str) -> (&str, Option<&str>) {
    match input.rsplit_once('#') {
        Some((p, n)) if !n.is_empty() => (p, Some(n)),
        _ => (input, None),
    }
}

fn inputs_of(cmd: &Command) -> Vec<&Input> {
    match cmd {
        Command::Validate { files } => files.iter().collect(),
        Command::Etale { input }
        | Command::Decompose { input }
        | Command::Grouplikes { input }
        | Command::Retract { input }
        | Command::Subgen { input, .. }
        | Command::AdjunctionGp { input }
        | Command::DaySubgen { input, .. }
        | Command::Day { command: DayCommand::Subgen { input, .. } } => vec![input],
        Command::GaloisFunctor { galois, gset } => vec![galois, gset],
        Command::GaloisAdjunction { galois, gset, coalgebra } => [Some(galois), Some(gset), coalgebra.as_ref()].into_iter().flatten().collect(),
        Command::DayConvolve { inputs }
        | Command::DayHom { inputs }
        | Command::Day { command: DayCommand::Convolve { inputs } | DayCommand::Hom { inputs } } => inputs.iter().collect(),
        Command::Suite { .. } => vec![],
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let cfg = FactorConfig { degree_cap: g.degree_cap, seed: g.seed, ..FactorConfig::default() };
    if let Command::Suite { ids } = &cli.command {
        return commands::suite(ids, g.seed, &cfg);
    }
    let loaded = Loaded::load(&inputs_of(&cli.command), &g.load, &cfg)?;
    let validation = loaded.ws.validate_all()?;
    if let Command::Validate { .. } = &cli.command {
        let out = commands::validate(&loaded, validation);
        return Ok(Output { report: out.report.with_seed(g.seed), lines: out.lines });
    }
    if !validation.all_passed() {
        let failed: Vec<String> = validation.failures().map(|c| c.name.clone()).collect();
        let lines = vec![format!("input rejected: {}", failed.join(", "))];
        let data = serde_json::json!({ "error": "invalid input" });
        let report = Report::new(command_name(&cli.command), validation, data).with_seed(g.seed);
        return Ok(Output { report, lines });
    }
    let out = match &cli.command {
        Command::Etale { input } => commands::etale(&loaded, input, &cfg),
        Command::Decompose { input } => commands::decompose(&loaded, input, &cfg),
        Command::Grouplikes { input } => commands::grouplikes(&loaded, input, &cfg),
        Command::Retract { input } => commands::retract(&loaded, input, &cfg),
        Command::Subgen { input, vectors } => commands::subgen(&loaded, input, vectors),
        Command::AdjunctionGp { input } => commands::adjunction_gp(&loaded, input, &cfg),
        Command::GaloisFunctor { galois, gset } => commands::galois_functor(&loaded, galois, gset, &cfg),
        Command::GaloisAdjunction { galois, gset, coalgebra } => {
            commands::galois_adjunction(&loaded, galois, gset, coalgebra.as_deref(), &cfg)
        }
        Command::DayConvolve { inputs } | Command::Day { command: DayCommand::Convolve { inputs } } => {
            commands::convolve(&loaded, inputs)
        }
        Command::DayHom { inputs } | Command::Day { command: DayCommand::Hom { inputs } } => commands::hom(&loaded, inputs),
        Command::DaySubgen { input, at } | Command::Day { command: DayCommand::Subgen { input, at } } => {
            commands::day_subcoalgebra(&loaded, input, at)
        }
        Command::Validate { .. } | Command::Suite { .. } => unreachable!("handled above"),
    }?;
    Ok(Output { report: out.report.with_seed(g.seed), lines: out.lines })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Etale { .. } => "etale",
        Command::Decompose { .. } => "decompose",
        Command::Grouplikes { .. } => "grouplikes",
        Command::Retract { .. } => "retract",
        Command::Subgen { .. } => "subgen",
        Command::AdjunctionGp { .. } => "adjunction-gp",
        Command::GaloisFunctor { .. } => "galois-functor",
        Command::GaloisAdjunction { .. } => "galois-adjunction",
        Command::DayConvolve { .. } | Command::Day { command: DayCommand::Convolve { .. } } => "day-convolve",
        Command::DayHom { .. } | Command::Day { command: DayCommand::Hom { .. } } => "day-hom",
        Command::DaySubgen { .. } | Command::Day { command: DayCommand::Subgen { .. } } => "day-subgen",
        Command::Suite { .. } => "suite",
    }
}

/// Text rendering: headline lines, then one line per check.
pub fn render_text(out: &Output) -> String {
    let mut s = String::new();
    for l in &out.lines {
        s.push_str(l);
        s.push('\n');
    }
    for c in &out.report.checks {
        let tag = match c.status {
            Status::Passed => "ok",
            Status::Failed => "FAILED",
            Status::Skipped => "skipped",
        };
        match &c.detail {
            Some(d) => s.push_str(&format!("  {tag:7} {}: {d}\n", c.name)),
            None => s.push_str(&format!("  {tag:7} {}\n", c.name)),
        }
    }
    s
}

/// Parses `args`, runs the command, prints the result and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let format = cli.global.format;
    match execute(&cli) {
        Ok(out) => {
            let text = match format {
                Format::Json => out.report.to_canonical() + "\n",
                Format::Text => render_text(&out),
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.report.ok {
                0
            } else {
                3
            }
        }
        Err(e) => {
            match format {
                Format::Json => {
                    let v = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code(), "version": crate::interchange::VERSION });
                    println!("{}", serde_json::to_string_pretty(&v).expect("error prints"));
                }
                Format::Text => eprintln!("error: {e}"),
            }
            e.exit_code()
        }
    }
}
