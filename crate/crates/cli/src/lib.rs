//! `honeyflow` command-line interface.
//!
//! Results go to standard output or `--output`; diagnostics go to standard
//! error. Exit status is 0 on success, 1 for invalid input or configuration
//! and 2 when the solver fails.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use honeyflow_core::equilibrium::{solve_stackelberg, verify_equilibrium, ActionLpValue};
use honeyflow_core::heuristics::{compare_with_exact, recommend_honey_flows};
use honeyflow_core::strategies::evaluate_matchup;
use honeyflow_core::{
    AttackerAction, AttackerModel, DefenderPolicy, GameError, GameSpec, HeuristicInput, MatchupResult,
};
use honeyflow_experiments::{
    cost_sweep, heuristic_gap, matchup_grid, ratio_analysis, scalability_bench, BenchDimension, BenchParams,
    CountRange, ExperimentError, ExperimentReport, GeneratorParams, HeuristicParams, RatioParams, ValueMode,
    DEFAULT_COSTS, DEFAULT_TRIALS,
};
use honeyflow_sim::{build_network, run_trials, write_reports_csv, AttackPolicy, FlowConfig, SimError, TopologyConfig};
use log::{debug, info};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 24301;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Solver(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Solver(m) => f.write_str(m),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Solver(_) => CliError::Solver(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Game(g) => g.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Game(g) => g.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Validation(e.to_string())
            }
        }
    )*};
}
validation_from!(std::io::Error, serde_json::Error, csv::Error, rayon::ThreadPoolBuildError);

type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Parser)]
#[command(name = "honeyflow", version, about = "Optimal honey-traffic allocation")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write results here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// More diagnostics on standard error (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the Stackelberg equilibrium of a game.
    Solve(GameArgs),
    /// Score one defender strategy against one attacker model.
    Evaluate {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum)]
        defender: DefenderArg,
        #[arg(long, value_enum)]
        attacker: AttackerArg,
    },
    /// Defender values across honey-flow costs on random games.
    Sweep {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_COSTS)]
        costs: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Every defender against every attacker model on random games.
    Matchup {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Fixed honey/real ratios on the four-type study game.
    Ratio {
        #[arg(long, value_delimiter = ',', default_values_t = [10, 15, 30])]
        real_flows: Vec<usize>,
        #[arg(long, default_value_t = 3.0)]
        max_ratio: f64,
        #[arg(long, default_value_t = 0.05)]
        ratio_step: f64,
    },
    /// Solver timing against problem size.
    Bench {
        #[arg(long, value_enum, default_value_t = DimensionArg::HoneyBounds)]
        dimension: DimensionArg,
        #[arg(long, value_delimiter = ',', default_values_t = [10, 100, 250, 500, 1000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Attacker episodes on a network topology.
    Simulate(SimulateArgs),
    /// Ratio-rule honey-flow recommendation.
    Heuristic(HeuristicArgs),
}

#[derive(Debug, Args)]
struct GameArgs {
    /// Game specification (JSON).
    #[arg(long)]
    game: PathBuf,
    /// Also write the parsed game back out as JSON.
    #[arg(long)]
    dump_spec: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DefenderArg {
    Stackelberg,
    Uniform,
    None,
}

impl DefenderArg {
    fn policy(self) -> DefenderPolicy {
        match self {
            DefenderArg::Stackelberg => DefenderPolicy::Stackelberg,
            DefenderArg::Uniform => DefenderPolicy::UniformRandom,
            DefenderArg::None => DefenderPolicy::NoDeception,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AttackerArg {
    Rational,
    Uniform,
    Greedy,
}

impl AttackerArg {
    fn model(self) -> AttackerModel {
        match self {
            AttackerArg::Rational => AttackerModel::Rational,
            AttackerArg::Uniform => AttackerModel::UniformRandom,
            AttackerArg::Greedy => AttackerModel::Greedy,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ValuesArg {
    /// Real systems worth 1, fake ones 0.
    FakeZero,
    /// Fake worth the same as real, drawn from [0.5, 1].
    FakeEqualsReal,
    /// Use --real-values and --fake-values.
    Explicit,
}

#[derive(Debug, Args)]
struct GeneratorArgs {
    #[arg(long, value_enum, default_value_t = ValuesArg::FakeZero)]
    values: ValuesArg,
    #[arg(long, default_value_t = 5)]
    types: usize,
    #[arg(long, default_value_t = 500)]
    real_flows: usize,
    #[arg(long, default_value_t = 500)]
    honey_min: usize,
    #[arg(long, default_value_t = 1000)]
    honey_max: usize,
    #[arg(long, default_value_t = 1e-4)]
    cost: f64,
    #[arg(long, value_delimiter = ',')]
    real_values: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    fake_values: Vec<f64>,
}

impl GeneratorArgs {
    fn params(&self) -> GeneratorParams {
        let value_mode = match self.values {
            ValuesArg::FakeZero => ValueMode::FakeZeroRealOne,
            ValuesArg::FakeEqualsReal => ValueMode::FakeEqualsRealRandom { lo: 0.5, hi: 1.0 },
            ValuesArg::Explicit => ValueMode::Explicit { real: self.real_values.clone(), fake: self.fake_values.clone() },
        };
        GeneratorParams {
            type_count: self.types,
            real_flows: CountRange::fixed(self.real_flows),
            honey_bound: CountRange::new(self.honey_min, self.honey_max),
            value_mode,
            cost: self.cost,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DimensionArg {
    Types,
    HoneyBounds,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Uniform,
    Fixed,
    Abstain,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Topology description (JSON).
    #[arg(long)]
    topology: PathBuf,
    /// Real flows per type.
    #[arg(long, value_delimiter = ',', required = true)]
    real: Vec<usize>,
    /// Honey flows per type.
    #[arg(long, value_delimiter = ',', conflicts_with = "honey_sweep")]
    honey: Vec<usize>,
    /// Run once per value, with that many honey flows of every type.
    #[arg(long, value_delimiter = ',')]
    honey_sweep: Vec<usize>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Uniform)]
    policy: PolicyArg,
    /// Type attacked by the fixed policy.
    #[arg(long, default_value_t = 0)]
    target: usize,
    #[arg(long, default_value_t = 10_000)]
    episodes: usize,
}

#[derive(Debug, Args)]
struct HeuristicArgs {
    /// Recommend for this game and compare with the exact solution.
    #[arg(long, conflicts_with_all = ["real_values", "harness"])]
    game: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', requires_all = ["fake_values", "real_flows"])]
    real_values: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    fake_values: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    real_flows: Vec<usize>,
    /// Run the gap harness on this many random games.
    #[arg(long)]
    harness: Option<usize>,
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status. Results are written to `out` unless `--output` is given.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).try_init();

    let mut buf = Vec::new();
    let result = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(CliError::from)
            .and_then(|pool| pool.install(|| dispatch(&cli, &mut buf))),
        None => dispatch(&cli, &mut buf),
    }
    .and_then(|()| out.write_all(&buf).and_then(|()| out.flush()).map_err(CliError::from));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Solve(args) => solve(cli, args, out),
        Command::Evaluate { game, defender, attacker } => evaluate(cli, game, *defender, *attacker, out),
        Command::Sweep { generator, costs, trials } => {
            let report = cost_sweep(&generator.params(), costs, *trials, cli.seed)?;
            emit_report(cli, &report, out)
        }
        Command::Matchup { generator, trials } => {
            let report = matchup_grid(&generator.params(), *trials, cli.seed)?;
            emit_report(cli, &report, out)
        }
        Command::Ratio { real_flows, max_ratio, ratio_step } => {
            if !(*ratio_step > 0.0 && *max_ratio >= 0.0) {
                return Err(CliError::Validation("ratio step must be positive and max ratio nonnegative".into()));
            }
            let steps = (max_ratio / ratio_step + 1e-9).floor() as usize;
            let params = RatioParams {
                ratios: (0..=steps).map(|k| k as f64 * ratio_step).collect(),
                real_flow_counts: real_flows.clone(),
                ..RatioParams::default()
            };
            emit_report(cli, &ratio_analysis(&params)?, out)
        }
        Command::Bench { dimension, sizes, trials } => {
            let dimension = match dimension {
                DimensionArg::Types => BenchDimension::Types,
                DimensionArg::HoneyBounds => BenchDimension::HoneyBounds,
            };
            let report = scalability_bench(&BenchParams::new(dimension, sizes.clone(), *trials), cli.seed)?;
            emit_report(cli, &report, out)
        }
        Command::Simulate(args) => simulate(cli, args, out),
        Command::Heuristic(args) => heuristic(cli, args, out),
    }
}

fn load_game(args: &GameArgs) -> Result<GameSpec> {
    let text = fs::read_to_string(&args.game)
        .map_err(|e| CliError::Validation(format!("{}: {e}", args.game.display())))?;
    let spec: GameSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", args.game.display())))?;
    let spec = spec.validate()?;
    info!("loaded {} types from {}", spec.type_count(), args.game.display());
    if let Some(path) = &args.dump_spec {
        fs::write(path, serde_json::to_string_pretty(&spec)? + "\n")?;
        debug!("wrote spec to {}", path.display());
    }
    Ok(spec)
}

fn write_out(cli: &Cli, bytes: &[u8], out: &mut dyn Write) -> Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes(value: &impl Serialize) -> Result<Vec<u8>> {
    Ok((serde_json::to_string_pretty(value)? + "\n").into_bytes())
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    attacker_action: AttackerAction,
    defender_value: f64,
    attacker_value: f64,
    strategy: &'a [Vec<f64>],
    expected_honey_counts: Vec<f64>,
    programs: &'a [ActionLpValue<f64>],
    verified: bool,
}

fn solve(cli: &Cli, args: &GameArgs, out: &mut dyn Write) -> Result<()> {
    let spec = load_game(args)?;
    let eq = solve_stackelberg(&spec)?;
    info!("solved {} programs in {:?}", eq.per_action_lp_values.len(), eq.solve_time);
    let verified = verify_equilibrium(&spec, &eq).passed();
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&SolveOutput {
            attacker_action: eq.attacker_action,
            defender_value: eq.defender_value,
            attacker_value: eq.attacker_value,
            strategy: eq.strategy.marginals(),
            expected_honey_counts: eq.strategy.expected_honey_counts(),
            programs: &eq.per_action_lp_values,
            verified,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["type", "honey_count", "probability"])?;
            for (i, m) in eq.strategy.marginals().iter().enumerate() {
                for (j, p) in m.iter().enumerate() {
                    w.write_record([i.to_string(), j.to_string(), p.to_string()])?;
                }
            }
            w.into_inner().map_err(|e| CliError::Validation(e.to_string()))?
        }
    };
    write_out(cli, &bytes, out)
}

fn evaluate(
    cli: &Cli,
    args: &GameArgs,
    defender: DefenderArg,
    attacker: AttackerArg,
    out: &mut dyn Write,
) -> Result<()> {
    let spec = load_game(args)?;
    let policy = defender.policy();
    let strategy = policy.strategy(&spec)?;
    let result: MatchupResult = evaluate_matchup(&spec, &strategy, policy.label(), attacker.model())?;
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&result)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["defender", "attacker", "defender_value", "attacker_value"])?;
            w.write_record([
                policy.label().to_string(),
                attacker.model().label().to_string(),
                result.defender_value.to_string(),
                result.attacker_value.to_string(),
            ])?;
            w.into_inner().map_err(|e| CliError::Validation(e.to_string()))?
        }
    };
    write_out(cli, &bytes, out)
}

fn emit_report<R: Serialize>(cli: &Cli, report: &ExperimentReport<R>, out: &mut dyn Write) -> Result<()> {
    match (cli.format.unwrap_or(Format::Csv), &cli.output) {
        (Format::Csv, Some(path)) => {
            let sidecar = report.write_files(path)?;
            info!("wrote {} and {}", path.display(), sidecar.display());
            Ok(())
        }
        (Format::Csv, None) => write_out(cli, report.to_csv_string()?.as_bytes(), out),
        (Format::Json, _) => write_out(cli, &json_bytes(report)?, out),
    }
}

fn simulate(cli: &Cli, args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&args.topology)
        .map_err(|e| CliError::Validation(format!("{}: {e}", args.topology.display())))?;
    let net = build_network(&TopologyConfig::from_json(&text)?)?;
    let policy = match args.policy {
        PolicyArg::Uniform => AttackPolicy::UniformRandom,
        PolicyArg::Fixed => AttackPolicy::Fixed(args.target),
        PolicyArg::Abstain => AttackPolicy::Abstain,
    };
    let types = args.real.len();
    let honey_levels: Vec<Vec<usize>> = if !args.honey_sweep.is_empty() {
        args.honey_sweep.iter().map(|&h| vec![h; types]).collect()
    } else if args.honey.is_empty() {
        vec![vec![0; types]]
    } else {
        if args.honey.len() != types {
            return Err(CliError::Validation(format!(
                "--honey has {} entries but --real has {types}",
                args.honey.len()
            )));
        }
        vec![args.honey.clone()]
    };
    let reports = honey_levels
        .into_iter()
        .map(|honey| {
            run_trials(&net, &FlowConfig::fixed(args.real.clone(), honey), policy, args.episodes, cli.seed)
                .map_err(CliError::from)
        })
        .collect::<Result<Vec<_>>>()?;
    let bytes = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(&reports, &mut buf)?;
            buf
        }
        Format::Json => json_bytes(&reports)?,
    };
    write_out(cli, &bytes, out)
}

#[derive(Serialize)]
struct Recommendation {
    honey_flows: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    heuristic_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<f64>,
}

fn heuristic(cli: &Cli, args: &HeuristicArgs, out: &mut dyn Write) -> Result<()> {
    if let Some(games) = args.harness {
        let report = heuristic_gap(&HeuristicParams { games, ..HeuristicParams::default() }, cli.seed)?;
        return emit_report(cli, &report, out);
    }
    let rec = if let Some(game) = &args.game {
        let spec = load_game(&GameArgs { game: game.clone(), dump_spec: None })?;
        let cmp = compare_with_exact(&spec)?;
        Recommendation {
            honey_flows: recommend_honey_flows(&HeuristicInput::from_game(&spec)?),
            heuristic_value: Some(cmp.heuristic_value),
            exact_value: Some(cmp.exact_value),
            gap: Some(cmp.gap),
        }
    } else if !args.real_values.is_empty() {
        let input = HeuristicInput::new(args.real_values.clone(), args.fake_values.clone(), args.real_flows.clone())?;
        Recommendation { honey_flows: recommend_honey_flows(&input), heuristic_value: None, exact_value: None, gap: None }
    } else {
        return Err(CliError::Validation(
            "heuristic needs --game, --real-values/--fake-values/--real-flows, or --harness".into(),
        ));
    };
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&rec)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["type", "honey_flows"])?;
            for (i, h) in rec.honey_flows.iter().enumerate() {
                w.write_record([i.to_string(), h.to_string()])?;
            }
            w.into_inner().map_err(|e| CliError::Validation(e.to_string()))?
        }
    };
    write_out(cli, &bytes, out)
}
