//! Command-line runner: exhaustive enumeration, rank/vector/schedule
//! conversions, and full genetic-search solves with reproducible artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use iqaoa::enumerate::{enumerate_distribution, MakespanDistribution, DEFAULT_ENUMERATION_BUDGET};
use iqaoa::error::Error;
use iqaoa::fixtures;
use iqaoa::instance::JsspInstance;
use iqaoa::optimizer::{amplification, run_ga, GaConfig, OptimizationResult};
use iqaoa::sim::{run_circuit, MemoryBudget, MixerVariant};
use iqaoa::vector::BierwirthVector;
use iqaoa::RankCodec;

#[derive(Parser)]
#[command(name = "iqaoa", version, about = "Indirect-QAOA job-shop solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode every vector of an instance into an exact makespan distribution
    Enumerate {
        /// Bundled instance name or path to an instance file
        instance: String,
        /// Output directory for distribution.csv, summary.json, manifest.json
        #[arg(long, default_value = "iqaoa-out")]
        out: PathBuf,
        /// Maximum number of vectors to enumerate
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Print the lexicographic rank of a job-repetition vector
    Rank {
        instance: String,
        /// Comma-separated job indices, e.g. 2,0,2,1,0,1,0,1,2
        vector: String,
    },
    /// Print the job-repetition vector with the given rank
    Unrank { instance: String, rank: String },
    /// Decode a job-repetition vector into a schedule (JSON with makespan)
    Decode { instance: String, vector: String },
    /// Optimize circuit angles with the genetic search and report the
    /// resulting distribution
    Solve(SolveArgs),
    /// List the bundled instances
    Fixtures,
}

#[derive(Args)]
struct SolveArgs {
    /// Bundled instance name or path to an instance file
    instance: String,
    /// Mixer variant 1-4 (default: the instance's bundled default, else 1)
    #[arg(long)]
    mixer: Option<u8>,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 1000)]
    shots: usize,
    #[arg(long, default_value_t = 200)]
    generations: usize,
    #[arg(long, default_value_t = 15)]
    population: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100_000.0)]
    xi: f64,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// Genes are drawn from [-GENE_BOUND, GENE_BOUND] radians; pass 6.2832
    /// for the wide two-period interval
    #[arg(long, default_value_t = std::f64::consts::PI)]
    gene_bound: f64,
    /// Also enumerate the instance and write histogram_initial.csv plus the
    /// amplification over the initial optimum probability
    #[arg(long)]
    emit_initial: bool,
    /// Decode and validate a schedule for every sampled bitstring
    #[arg(long)]
    validate_samples: bool,
    /// Dump the final statevector as state.csv (small registers only)
    #[arg(long)]
    dump_state: bool,
    /// Output directory
    #[arg(long, default_value = "iqaoa-out")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(std::io::Error),
    BadArgument(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::BadArgument(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    /// 2 = validation, 3 = budget, 4 = I/O.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 4,
            CliError::Core(Error::EnumerationBudget { .. } | Error::MemoryBudget { .. }) => 3,
            _ => 2,
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enumerate {
            instance,
            out,
            budget,
        } => cmd_enumerate(&instance, &out, budget),
        Command::Rank { instance, vector } => {
            let inst = load_instance(&instance)?;
            let v = parse_vector(&vector, &inst)?;
            let codec = RankCodec::new(&inst);
            println!("{}", codec.rank_of(&v)?);
            Ok(())
        }
        Command::Unrank { instance, rank } => {
            let inst = load_instance(&instance)?;
            let rank: BigUint = rank
                .parse()
                .map_err(|_| CliError::BadArgument(format!("bad rank `{rank}`")))?;
            let codec = RankCodec::new(&inst);
            println!("{}", codec.unrank(&rank)?);
            Ok(())
        }
        Command::Decode { instance, vector } => {
            let inst = load_instance(&instance)?;
            let v = parse_vector(&vector, &inst)?;
            let schedule = iqaoa::decode(&inst, &v)?;
            let dump = schedule.dump(&inst);
            println!(
                "{}",
                serde_json::to_string_pretty(&dump).expect("schedule serializes")
            );
            Ok(())
        }
        Command::Solve(args) => cmd_solve(args),
        Command::Fixtures => {
            for name in fixtures::FIXTURE_NAMES {
                let inst = fixtures::load_fixture(name).expect("bundled fixture");
                let mixer = fixtures::default_mixer(name).expect("bundled mixer").tag();
                println!(
                    "{name}: {} jobs x {} machines, {} vectors, default mixer {mixer}",
                    inst.n_jobs(),
                    inst.n_machines(),
                    inst.total_vector_count(),
                );
            }
            Ok(())
        }
    }
}

fn load_instance(spec: &str) -> Result<JsspInstance, CliError> {
    if let Some(text) = fixtures::fixture_source(spec) {
        return Ok(JsspInstance::parse(text)?);
    }
    let text = fs::read_to_string(spec)?;
    Ok(JsspInstance::parse(&text)?)
}

fn parse_vector(text: &str, inst: &JsspInstance) -> Result<BierwirthVector, CliError> {
    let entries = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::BadArgument(format!("bad vector `{text}`")))?;
    Ok(BierwirthVector::new(entries, inst)?)
}

#[derive(Serialize)]
struct Manifest {
    schema_version: u32,
    artifact_version: &'static str,
    command: String,
    instance: String,
    timestamp_unix: u64,
    config: serde_json::Value,
    outputs: Vec<String>,
}

fn write_manifest(
    out: &Path,
    command: &str,
    instance: &str,
    config: serde_json::Value,
    outputs: &[&str],
) -> Result<(), CliError> {
    let manifest = Manifest {
        schema_version: 1,
        artifact_version: env!("CARGO_PKG_VERSION"),
        command: command.into(),
        instance: instance.into(),
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        config,
        outputs: outputs.iter().map(|s| s.to_string()).collect(),
    };
    write_file(
        &out.join("manifest.json"),
        &serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)?;
    Ok(())
}

fn summary_json(dist: &MakespanDistribution) -> serde_json::Value {
    json!({
        "total": dist.total(),
        "min": dist.optimum(),
        "optimum_probability": dist.optimum_probability(),
        "lower_quartile": dist.lower_quartile(),
    })
}

fn cmd_enumerate(instance: &str, out: &Path, budget: u64) -> Result<(), CliError> {
    let inst = load_instance(instance)?;
    let dist = enumerate_distribution(&inst, budget)?;

    fs::create_dir_all(out)?;
    write_file(&out.join("distribution.csv"), &dist.to_csv())?;
    let summary = summary_json(&dist);
    write_file(
        &out.join("summary.json"),
        &serde_json::to_string_pretty(&summary).expect("summary serializes"),
    )?;
    write_manifest(
        out,
        "enumerate",
        instance,
        json!({ "budget": budget }),
        &["distribution.csv", "summary.json"],
    )?;

    println!("{summary}");
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.instance)?;
    let mixer = match args.mixer {
        Some(tag) => MixerVariant::from_tag(tag)?,
        None => fixtures::default_mixer(&args.instance).unwrap_or(MixerVariant::CxThenRy),
    };
    if !(args.gene_bound.is_finite() && args.gene_bound > 0.0) {
        return Err(CliError::BadArgument(
            "--gene-bound must be a positive angle".into(),
        ));
    }
    let cfg = GaConfig {
        generations: args.generations,
        population: args.population,
        mutation_probability: GaConfig::default().mutation_probability,
        mutation_gene_fraction: GaConfig::default().mutation_gene_fraction,
        tournament_size: GaConfig::default().tournament_size,
        gene_bounds: (-args.gene_bound, args.gene_bound),
        depth: args.depth,
        shots_per_eval: args.shots,
        xi: args.xi,
        theta: args.theta,
        mixer,
        seed: args.seed,
        validate_samples: args.validate_samples,
    };
    let budget = MemoryBudget::from_env();

    let initial = if args.emit_initial {
        Some(enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET)?)
    } else {
        None
    };

    let result = run_ga(&inst, &cfg, &budget)?;
    let amp = initial
        .as_ref()
        .map(|init| amplification(init, &result.final_distribution));

    fs::create_dir_all(&args.out)?;
    let mut outputs = vec!["result.json", "convergence.csv", "histogram_final.csv"];
    write_file(
        &args.out.join("result.json"),
        &serde_json::to_string_pretty(&result_json(&args.instance, &result, amp))
            .expect("result serializes"),
    )?;
    write_file(&args.out.join("convergence.csv"), &convergence_csv(&result))?;
    write_file(
        &args.out.join("histogram_final.csv"),
        &result.final_distribution.to_csv(),
    )?;
    if let Some(init) = &initial {
        write_file(&args.out.join("histogram_initial.csv"), &init.to_csv())?;
        outputs.push("histogram_initial.csv");
    }
    if args.dump_state {
        let codec = RankCodec::new(&inst);
        if codec.qubit_count() > 12 {
            return Err(CliError::BadArgument(format!(
                "--dump-state supports registers up to 12 qubits, this instance needs {}",
                codec.qubit_count()
            )));
        }
        let state = run_circuit(codec.qubit_count(), &result.best_params, &budget)?;
        write_file(&args.out.join("state.csv"), &state.to_csv())?;
        outputs.push("state.csv");
    }
    write_manifest(
        &args.out,
        "solve",
        &args.instance,
        serde_json::to_value(&cfg).expect("config serializes"),
        &outputs,
    )?;

    let best = &result.best_objective;
    println!(
        "best C = {:.1} (mean {:.3}, min {} x{})",
        best.c, best.mean_makespan, best.min_makespan, best.min_count
    );
    if let Some(optimum) = result.final_distribution.optimum() {
        println!(
            "final sampling: P({optimum}) = {:.4}",
            result.final_distribution.probability(optimum)
        );
    }
    if let Some(amp) = amp {
        println!("amplification over initial optimum: {amp:.3}");
    }
    Ok(())
}

fn result_json(instance: &str, result: &OptimizationResult, amp: Option<f64>) -> serde_json::Value {
    let final_rows: Vec<serde_json::Value> = result
        .final_distribution
        .counts()
        .iter()
        .map(|(&makespan, &count)| {
            json!({
                "makespan": makespan,
                "count": count,
                "probability": result.final_distribution.probability(makespan),
            })
        })
        .collect();
    json!({
        "instance": instance,
        "config": result.config,
        "seed": result.config.seed,
        "best_gammas": result.best_params.gammas,
        "best_betas": result.best_params.betas,
        "mixer": result.best_params.mixer.tag(),
        "best_objective": result.best_objective,
        "history": result.history,
        "final_distribution": final_rows,
        "final_sampling_seed": result.final_sampling_seed,
        "amplification": amp,
        "total_evaluations": result.total_evaluations,
        "unique_evaluations": result.unique_evaluations,
        "min_scaled_mean": result.min_scaled_mean,
        "max_scarcity_term": result.max_scarcity_term,
        "validated_samples": result.validated_samples,
    })
}

fn convergence_csv(result: &OptimizationResult) -> String {
    let depth = result.config.depth;
    let mut header = vec!["generation".to_string()];
    header.extend((1..=depth).map(|i| format!("beta_{i}")));
    header.extend((1..=depth).map(|i| format!("gamma_{i}")));
    header.push("objective".into());
    let mut out = header.join(",");
    out.push('\n');
    for record in &result.improvements {
        let mut row = vec![record.generation.to_string()];
        row.extend(record.betas.iter().map(|b| format!("{b:.6}")));
        row.extend(record.gammas.iter().map(|g| format!("{g:.6}")));
        row.push(format!("{:.1}", record.objective));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
