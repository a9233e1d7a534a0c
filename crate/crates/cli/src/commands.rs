use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rubikmap::group::BuildOptions;
use rubikmap::map::{self, Map, MapError};
use rubikmap::puzzle::{format_moves, parse_moves, Puzzle, PuzzleError};
use rubikmap::verify::{self, SuiteSummary, VerifyOptions};
use rubikmap::{GroupError, RubikError, RubikPresentation, VerifyError};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Rubik(#[from] RubikError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Puzzle(#[from] PuzzleError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "rubikmap", version, about = "Rubik-style puzzle groups of 3-valent maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Doc,
}

/// A catalog name or a path to a map file.
#[derive(Args, Debug, Clone)]
pub struct MapArg {
    /// Catalog name (e.g. `cube`, `prism5`) or map file path
    #[arg(value_name = "MAP", required_unless_present = "map")]
    pub name: Option<String>,
    /// Same as the positional MAP
    #[arg(long = "map", value_name = "MAP", conflicts_with = "name")]
    pub map: Option<String>,
}

impl MapArg {
    fn value(&self) -> &str {
        self.map.as_deref().or(self.name.as_deref()).unwrap_or_default()
    }

    pub fn resolve(&self) -> Result<Map, CliError> {
        load_map(self.value())
    }
}

pub fn load_map(value: &str) -> Result<Map, CliError> {
    let path = Path::new(value);
    if value.ends_with(".json") || path.is_file() {
        Ok(map::load(path)?)
    } else {
        Ok(map::by_name(value)?)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the side movements of a map and print them in cycle notation
    Build {
        #[command(flatten)]
        map: MapArg,
        /// Also write the map file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print vertex, edge and face counts, genus and face sizes
    Info {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Print the exact order of the puzzle group
    Order {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check the predicted group structure for one map
    Verify {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the predicted structure over a set of maps
    Suite {
        /// Directory of map files; the built-in suite when omitted
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Per-map time limit
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also fail on maps of positive genus
        #[arg(long)]
        strict: bool,
    },
    /// Write a GAP script declaring the group
    ExportScript {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a random move sequence
    Scramble {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        length: usize,
    },
    /// Print moves that undo the given moves
    Solve {
        #[command(flatten)]
        map: MapArg,
        /// Moves already applied, e.g. "F1 F3^-1"
        #[arg(long, default_value = "")]
        moves: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the session service
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Output of a finished command: text for stdout and whether it counts as
/// a success.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            fs::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn budget(seconds: Option<f64>) -> Result<Option<Duration>, CliError> {
    seconds
        .map(|s| {
            Duration::try_from_secs_f64(s)
                .map_err(|_| CliError::Usage(format!("invalid budget {s}")))
        })
        .transpose()
}

fn render_reports(reports: &[verify::ConjectureReport], format: Format) -> String {
    match format {
        Format::Table => verify::to_table(reports),
        Format::Csv => verify::to_csv(reports),
        Format::Doc => verify::to_json(reports) + "\n",
    }
}

fn info(m: &Map, format: Format) -> String {
    let sizes: Vec<String> = m.face_sizes().iter().map(|s| s.to_string()).collect();
    match format {
        Format::Table => format!(
            "name: {}\nvertices: {}\nedges: {}\nfaces: {}\ngenus: {}\nface sizes: {}\nall faces odd: {}\n",
            m.name(),
            m.vertex_count(),
            m.edge_count(),
            m.face_count(),
            m.genus(),
            sizes.join(" "),
            m.all_faces_odd()
        ),
        Format::Csv => format!(
            "name,V,E,F,genus,face_sizes,all_odd\n{},{},{},{},{},{},{}\n",
            m.name(),
            m.vertex_count(),
            m.edge_count(),
            m.face_count(),
            m.genus(),
            sizes.join(" "),
            m.all_faces_odd()
        ),
        Format::Doc => {
            let doc = json!({
                "name": m.name(),
                "vertices": m.vertex_count(),
                "edges": m.edge_count(),
                "faces": m.face_count(),
                "genus": m.genus(),
                "face_sizes": m.face_sizes(),
                "all_odd": m.all_faces_odd(),
            });
            serde_json::to_string_pretty(&doc).unwrap() + "\n"
        }
    }
}

fn suite_maps(catalog: Option<&Path>) -> Result<Vec<Map>, CliError> {
    let Some(dir) = catalog else {
        return Ok(map::default_suite());
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
    paths.sort();
    paths.iter().map(|p| Ok(map::load(p)?)).collect()
}

/// Runs every command except `serve`.
pub fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Build { map, out } => {
            let m = map.resolve()?;
            let p = RubikPresentation::new(m.clone())?;
            if let Some(out) = out {
                map::save(&m, out)?;
            }
            let mut text = format!(
                "{}: {} generators on {} points\n",
                m.name(),
                p.generators().len(),
                p.degree()
            );
            for (f, g) in p.generators().iter().enumerate() {
                text += &format!("F{} = {}\n", f + 1, g);
            }
            Ok(Outcome::ok(text))
        }
        Command::Info { map, format } => Ok(Outcome::ok(info(&map.resolve()?, format))),
        Command::Order { map, seed } => {
            let p = RubikPresentation::new(map.resolve()?)?;
            let g = p.group_with(&BuildOptions::seeded(seed))?;
            Ok(Outcome::ok(format!("{}\n", g.order())))
        }
        Command::Verify {
            map,
            seed,
            budget_seconds,
            format,
            out,
        } => {
            let opts = VerifyOptions {
                seed,
                budget: budget(budget_seconds)?,
                ..Default::default()
            };
            let report = verify::verify(&map.resolve()?, &opts)?;
            let ok = report.pass;
            let text = emit(render_reports(&[report], format), out.as_deref())?;
            Ok(Outcome { text, ok })
        }
        Command::Suite {
            catalog,
            seed,
            budget_seconds,
            format,
            out,
            strict,
        } => {
            let opts = VerifyOptions {
                seed,
                budget: budget(budget_seconds)?,
                ..Default::default()
            };
            let reports = verify::run_suite(&suite_maps(catalog.as_deref())?, &opts);
            let summary = SuiteSummary::of(&reports);
            let ok = if strict {
                summary.passed == summary.maps
            } else {
                summary.planar_ok()
            };
            let text = emit(render_reports(&reports, format), out.as_deref())?;
            Ok(Outcome { text, ok })
        }
        Command::ExportScript { map, out } => {
            let p = RubikPresentation::new(map.resolve()?)?;
            Ok(Outcome::ok(emit(p.script(), out.as_deref())?))
        }
        Command::Scramble { map, seed, length } => {
            let pz = Puzzle::new(map.resolve()?, seed)?;
            Ok(Outcome::ok(format_moves(&pz.scramble_word(seed, length)) + "\n"))
        }
        Command::Solve { map, moves, seed } => {
            let pz = Puzzle::new(map.resolve()?, seed)?;
            let word = parse_moves(&moves, pz.face_count())?;
            let mut state = pz.solved();
            pz.apply_word(&mut state, &word)?;
            Ok(Outcome::ok(format_moves(&pz.solve(&state)?) + "\n"))
        }
        Command::Serve { .. } => Err(CliError::Usage("serve is not a batch command".into())),
    }
}

/// Entry point used by the binary. Exit status 0 on success, 1 when a
/// conjecture check fails, 2 on errors.
pub fn run(cli: Cli) -> ExitCode {
    if let Command::Serve { addr, seed } = cli.command {
        return match crate::service::serve(&addr, seed) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    match execute(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
