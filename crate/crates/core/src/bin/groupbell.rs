use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use groupbell::bounds::QuantumMethod;
use groupbell::builtin;
use groupbell::config::{parse_scenario, GameChoice, GroupSpec};
use groupbell::document::{analyze, render_table, reproduce, ResultDocument};
use groupbell::games::QuestionPolicy;
use groupbell::groups::FiniteGroup;
use groupbell::linalg::{c, StateVector};
use groupbell::registry;
use groupbell::search::{random_orbit_search_streaming, SearchConfig, SearchHit, SearchMode};
use groupbell::Error;

const EXIT_GOLDEN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNUSABLE: u8 = 3;
const EXIT_NO_HITS: u8 = 4;

#[derive(Parser)]
#[command(name = "groupbell", version, about = "Bell inequalities from finite group orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registry scenario and compare with its expected values.
    Reproduce {
        name: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the pipeline on a scenario file.
    Analyze {
        path: PathBuf,
        /// restricted, full or none; defaults to the file's `game` field,
        /// then to restricted
        #[arg(long)]
        game: Option<GameChoice>,
        #[arg(long, default_value = "all")]
        method: QuantumMethod,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Search orbit seeds for violations. Prints one JSON line per hit and
    /// a final summary line.
    Search {
        /// `cyclic:<n>` or `dihedral:<n>`
        #[arg(long)]
        group: String,
        /// `builtin:<name>`
        #[arg(long)]
        rep: String,
        /// Initial state as a JSON array of [re, im] pairs; defaults to the
        /// builtin's usual state
        #[arg(long)]
        init: Option<String>,
        #[arg(long, default_value_t = 2)]
        parties: usize,
        #[arg(long, default_value_t = 2)]
        orbits: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exhaustive: bool,
    },
    /// List registry scenarios.
    List,
}

fn fail(err: &Error) -> ExitCode {
    match err {
        Error::Schema { pointer, message } => {
            let at = if pointer.is_empty() { "/" } else { pointer };
            eprintln!("error at {at}: {message}");
        }
        other => eprintln!("error: {other}"),
    }
    ExitCode::from(match err {
        Error::UnusableInitialState(_) => EXIT_UNUSABLE,
        _ => EXIT_USAGE,
    })
}

fn usage(message: impl AsRef<str>) -> ExitCode {
    eprintln!("error: {}", message.as_ref());
    ExitCode::from(EXIT_USAGE)
}

fn emit(doc: &ResultDocument, format: Format) -> ExitCode {
    let text = match format {
        Format::Json => doc.to_json_pretty() + "\n",
        Format::Table => render_table(doc),
    };
    print!("{text}");
    if doc.golden_ok() {
        ExitCode::SUCCESS
    } else {
        for check in doc.golden.iter().flatten().filter(|g| !g.pass) {
            eprintln!(
                "golden mismatch: {} expected {}, got {} (difference {:e})",
                check.quantity, check.expected, check.actual, check.difference
            );
        }
        ExitCode::from(EXIT_GOLDEN)
    }
}

fn parse_group(text: &str) -> Result<FiniteGroup, String> {
    let spec: GroupSpec = text
        .split_once(':')
        .and_then(|(family, n)| {
            serde_json::from_value(json!({"family": family, "n": n.parse::<usize>().ok()?})).ok()
        })
        .ok_or_else(|| format!("`--group {text}`: expected cyclic:<n> or dihedral:<n>"))?;
    spec.build().map_err(|e| e.to_string())
}

fn parse_state(text: &str) -> Result<StateVector, String> {
    let pairs: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| format!("`--init`: {e}"))?;
    Ok(StateVector::new(pairs.iter().map(|p| c(p[0], p[1])).collect()))
}

fn hit_json(group: &FiniteGroup, hit: &SearchHit) -> Value {
    let seeds: Vec<Vec<&str>> = hit
        .seeds
        .iter()
        .map(|s| s.0.iter().map(|&g| group.name(g)).collect())
        .collect();
    json!({
        "seeds": seeds,
        "classical": hit.classical,
        "quantum": hit.quantum,
        "margin": hit.margin,
        "verified": hit.verified,
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    group: &str,
    rep: &str,
    init: Option<&str>,
    parties: usize,
    orbits: usize,
    trials: u64,
    seed: u64,
    exhaustive: bool,
) -> ExitCode {
    let group = match parse_group(group) {
        Ok(g) => g,
        Err(e) => return usage(e),
    };
    let Some(name) = rep.strip_prefix("builtin:") else {
        return usage(format!("`--rep {rep}`: expected builtin:<name>"));
    };
    let rep = match builtin::by_name(name) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if rep.group().family() != group.family() {
        return usage(format!(
            "builtin `{name}` represents {}, not {}",
            rep.group().family(),
            group.family()
        ));
    }
    let init = match init {
        Some(text) => match parse_state(text) {
            Ok(s) => s,
            Err(e) => return usage(e),
        },
        None => builtin::default_initial_state(name).expect("builtin exists"),
    };
    if parties == 0 || orbits == 0 {
        return usage("--parties and --orbits must be positive");
    }
    let config = SearchConfig {
        rep,
        init,
        parties,
        orbits,
        trials,
        rng_seed: seed,
        mode: if exhaustive {
            SearchMode::Exhaustive
        } else {
            SearchMode::Random
        },
    };
    let group = config.rep.group().clone();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let report = random_orbit_search_streaming(&config, |hit| {
        let _ = writeln!(out, "{}", hit_json(&group, hit));
    });
    let report = match report {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let summary = json!({
        "summary": {
            "group": group.family().to_string(),
            "rep": name,
            "parties": parties,
            "orbits": orbits,
            "mode": config.mode,
            "trials": trials,
            "seed": seed,
            "space_size": report.space_size,
            "evaluated": report.evaluated,
            "hits": report.hits.iter().map(|h| hit_json(&group, h)).collect::<Vec<_>>(),
        }
    });
    let _ = writeln!(out, "{summary}");
    if report.hits.is_empty() {
        ExitCode::from(EXIT_NO_HITS)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Reproduce { name, format } => match reproduce(&name) {
            Ok(doc) => emit(&doc, format),
            Err(e) => fail(&e),
        },
        Command::Analyze {
            path,
            game,
            method,
            format,
        } => {
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", path.display())),
            };
            let (raw, config) = match parse_scenario(&text) {
                Ok(x) => x,
                Err(e) => return fail(&e),
            };
            let policy: Option<QuestionPolicy> = game
                .or(config.game)
                .unwrap_or(GameChoice::Restricted)
                .policy();
            match analyze(&raw, &config, method, policy) {
                Ok(doc) => emit(&doc, format),
                Err(e) => fail(&e),
            }
        }
        Command::Search {
            group,
            rep,
            init,
            parties,
            orbits,
            trials,
            seed,
            exhaustive,
        } => search(
            &group,
            &rep,
            init.as_deref(),
            parties,
            orbits,
            trials,
            seed,
            exhaustive,
        ),
        Command::List => {
            for e in registry::entries() {
                println!("{:16} {}", e.name, e.summary);
            }
            ExitCode::SUCCESS
        }
    }
}
