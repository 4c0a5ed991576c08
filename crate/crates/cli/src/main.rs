//! `bilocale-lab`: validate instance files, check single properties, replay
//! the proposition suite over a corpus, and search for separating examples.
//!
//! Exit codes: 0 ok, 2 invalid input, 3 size guard exceeded, 4 a
//! proposition was refuted.

mod check;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bilocale_core::atlas::{self, CorpusSpec, Generator, SearchSpec, Target};
use bilocale_core::io::{self, InstanceKind};
use bilocale_core::{Error, Execution, Guards, Orientation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "bilocale-lab", version, about = "Finite-model workbench for bilocales and bispaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest frame for which subset-enumerating checks run.
    #[arg(long, global = true, default_value_t = Guards::default().subsets)]
    guard: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Default)]
struct Inputs {
    #[arg(long, value_name = "PATH")]
    frame: Vec<PathBuf>,
    #[arg(long, value_name = "PATH")]
    bilocale: Vec<PathBuf>,
    #[arg(long, value_name = "PATH")]
    bispace: Vec<PathBuf>,
    #[arg(long, value_name = "PATH")]
    topobilocale: Vec<PathBuf>,
    #[arg(long, value_name = "PATH")]
    map: Vec<PathBuf>,
}

impl Inputs {
    /// Paths with the kind their flag demands.
    fn tagged(&self) -> Vec<(PathBuf, Option<InstanceKind>)> {
        [
            (&self.frame, InstanceKind::Frame),
            (&self.bilocale, InstanceKind::Bilocale),
            (&self.bispace, InstanceKind::Bispace),
            (&self.topobilocale, InstanceKind::TopoBilocale),
            (&self.map, InstanceKind::Map),
        ]
        .into_iter()
        .flat_map(|(paths, kind)| paths.iter().map(move |p| (p.clone(), Some(kind))))
        .collect()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate instance files.
    Validate {
        /// Files of any kind; the kind is detected from their keys.
        paths: Vec<PathBuf>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Evaluate one property of one instance.
    Check {
        #[command(flatten)]
        inputs: Inputs,
        /// Property name; `list` prints the names per instance kind.
        #[arg(long)]
        property: String,
        #[arg(long, default_value = "1,2")]
        orientation: Orientation,
    },
    /// Replay every proposition over a corpus directory and random instances.
    VerifyTheorems {
        /// Directory of `*.json` instances.
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        random_frames: usize,
        #[arg(long, default_value_t = 0)]
        random_bilocales: usize,
        #[arg(long, default_value_t = 0)]
        random_bispaces: usize,
        #[arg(long, default_value_t = 0)]
        random_topobilocales: usize,
        /// Process instances on one thread.
        #[arg(long)]
        sequential: bool,
        /// Write the atlas JSON here as well.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Hunt for an instance separating two properties or refuting a replay.
    Search {
        /// boolean-not-prefit, strongly-prefit-not-boolean,
        /// baire-not-pseudocomplete, relative-vs-plain or refutation.
        #[arg(long)]
        target: Target,
        /// bilocale, symmetric or bispace; defaults per target.
        #[arg(long)]
        generator: Option<Generator>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidates drawn at most.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        hits: usize,
        /// Proposition id hunted by the refutation target.
        #[arg(long, default_value = "main-equivalence")]
        proposition: String,
        #[arg(long)]
        sequential: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::SizeGuardExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn emit(format: Format, value: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("reports serialise")),
        Format::Text => print!("{text}"),
    }
}

fn load(path: &Path, want: Option<InstanceKind>, guards: Guards) -> Result<io::Instance, Failure> {
    let inst = io::load_instance(path, guards)?;
    match want {
        Some(k) if k != inst.kind() => Err(Failure {
            code: 2,
            message: format!("{}: expected a {k}, found a {}", path.display(), inst.kind()),
        }),
        _ => Ok(inst),
    }
}

fn validate(paths: &[PathBuf], inputs: &Inputs, guards: Guards, format: Format) -> Result<u8, Failure> {
    let mut all: Vec<(PathBuf, Option<InstanceKind>)> = paths.iter().map(|p| (p.clone(), None)).collect();
    all.extend(inputs.tagged());
    if all.is_empty() {
        return Err(Failure {
            code: 2,
            message: "no input files".into(),
        });
    }
    let mut results = Vec::new();
    let mut text = String::new();
    let mut code = 0;
    for (path, want) in all {
        let entry = match load(&path, want, guards) {
            Ok(inst) => {
                text.push_str(&format!("{}: valid {} ({} elements)\n", path.display(), inst.kind(), inst.size()));
                json!({"path": path, "valid": true, "kind": inst.kind(), "size": inst.size()})
            }
            Err(mut f) => {
                code = code.max(f.code);
                f.message = f.message.trim_start_matches(&format!("{}: ", path.display())).to_string();
                text.push_str(&format!("{}: invalid: {}\n", path.display(), f.message));
                json!({"path": path, "valid": false, "error": f.message})
            }
        };
        results.push(entry);
    }
    emit(format, &json!(results), &text);
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let guards = Guards::with_subsets(cli.guard);
    match cli.command {
        Command::Validate { paths, inputs } => validate(&paths, &inputs, guards, cli.format),
        Command::Check {
            inputs,
            property,
            orientation,
        } => {
            if property == "list" {
                print!("{}", check::property_list());
                return Ok(0);
            }
            let tagged = inputs.tagged();
            let [(path, want)] = tagged.as_slice() else {
                return Err(Failure {
                    code: 2,
                    message: "check takes exactly one input file".into(),
                });
            };
            let inst = load(path, *want, guards)?;
            let outcome = check::check(&inst, &property, orientation)?;
            let value = json!({
                "path": path,
                "kind": inst.kind(),
                "property": property,
                "orientation": orientation.to_string(),
                "verdict": outcome.verdict,
                "witness": outcome.witness,
            });
            let text = format!("{} {property} ({orientation}): {}\n", path.display(), outcome.verdict);
            emit(cli.format, &value, &text);
            Ok(if outcome.refuted { 4 } else { 0 })
        }
        Command::VerifyTheorems {
            corpus,
            seed,
            random_frames,
            random_bilocales,
            random_bispaces,
            random_topobilocales,
            sequential,
            output,
        } => {
            let mut instances = match &corpus {
                Some(dir) => io::load_corpus(dir, guards)?,
                None => Vec::new(),
            };
            let spec = CorpusSpec {
                frames: random_frames,
                bilocales: random_bilocales,
                bispaces: random_bispaces,
                topobilocales: random_topobilocales,
                ..CorpusSpec::default()
            };
            instances.extend(atlas::random_corpus(seed, &spec));
            let atlas = atlas::verify_theorems(&instances, Some(seed), exec(sequential))?;
            let json = atlas.to_json();
            if let Some(path) = output {
                std::fs::write(&path, format!("{json}\n")).map_err(|e| Failure {
                    code: 2,
                    message: format!("{}: {e}", path.display()),
                })?;
            }
            match cli.format {
                Format::Json => println!("{json}"),
                Format::Text => print!("{}", atlas.to_text()),
            }
            Ok(if atlas.has_refutation() { 4 } else { 0 })
        }
        Command::Search {
            target,
            generator,
            seed,
            budget,
            hits,
            proposition,
            sequential,
        } => {
            let mut spec = SearchSpec::new(target);
            spec.generator = generator.unwrap_or(spec.generator);
            spec.budget = budget;
            spec.hits = hits;
            spec.proposition = proposition;
            spec.gen.guards = guards;
            let atlas = atlas::search(seed, &spec, exec(sequential))?;
            match cli.format {
                Format::Json => println!("{}", atlas.to_json()),
                Format::Text => print!("{}", atlas.to_text()),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
