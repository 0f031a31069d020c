//! Sampling objective and genetic-algorithm parameter search.
//!
//! A parameter vector is scored by running the circuit, sampling `p` shots,
//! mapping every outcome through rank -> vector -> schedule, and combining
//! the sampled makespans into
//!
//! ```text
//! C = xi * mean(g) + theta * min(g) * (p - #{shots hitting min(g)})
//! ```
//!
//! which the genetic algorithm minimizes over the `2 * depth` real angles.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use num_traits::ToPrimitive;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codec::RankCodec;
use crate::enumerate::{sample_distribution, MakespanDistribution};
use crate::error::{Error, Result};
use crate::instance::JsspInstance;
use crate::schedule::{decode, makespan_of, validate_schedule, DecodeScratch};
use crate::sim::{run_circuit, CircuitParams, MemoryBudget, MixerVariant, ShotBatch};
use crate::vector::BierwirthVector;

/// Instances with at most this many vectors get a precomputed rank ->
/// makespan table (one enumeration pass); larger ones decode sampled ranks
/// on demand with a per-batch cache.
const MAKESPAN_TABLE_MAX: u64 = 1 << 22;

/// Population evaluation runs on the thread pool while statevectors stay
/// small; past this the gate kernels parallelize internally instead.
const POPULATION_PARALLEL_MAX_QUBITS: usize = 20;

/// Genetic algorithm settings. Defaults follow the reference experiment
/// setup: 200 generations, 15 chromosomes, tournament parents, mutation
/// probability 0.70 touching 25% of genes, depth-2 circuits scored with
/// 1000 shots and weights `xi = 100000`, `theta = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct GaConfig {
    pub generations: usize,
    pub population: usize,
    pub tournament_size: usize,
    /// Chance that an offspring is mutated at all.
    pub mutation_probability: f64,
    /// Fraction of genes redrawn when a mutation fires (at least one gene).
    pub mutation_gene_fraction: f64,
    /// Inclusive angle interval genes are drawn from. `[-pi, pi]` by
    /// default; widen to `[-2pi, 2pi]` when exploring past one period.
    pub gene_bounds: (f64, f64),
    pub depth: usize,
    pub shots_per_eval: usize,
    pub xi: f64,
    pub theta: f64,
    pub mixer: MixerVariant,
    pub seed: u64,
    /// Decode and fully validate a schedule for every sampled bitstring.
    pub validate_samples: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            generations: 200,
            population: 15,
            tournament_size: 3,
            mutation_probability: 0.70,
            mutation_gene_fraction: 0.25,
            gene_bounds: (-std::f64::consts::PI, std::f64::consts::PI),
            depth: 2,
            shots_per_eval: 1000,
            xi: 100_000.0,
            theta: 1.0,
            mixer: MixerVariant::CxThenRy,
            seed: 1,
            validate_samples: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if self.tournament_size == 0 {
            return bad("tournament size must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.mutation_probability) {
            return bad("mutation probability must be in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mutation_gene_fraction) {
            return bad("mutation gene fraction must be in [0, 1]");
        }
        if self.gene_bounds.0 >= self.gene_bounds.1 {
            return bad("gene bounds must be a non-empty interval");
        }
        if self.depth == 0 {
            return bad("depth must be at least 1");
        }
        if self.shots_per_eval == 0 {
            return bad("shots per evaluation must be at least 1");
        }
        if !self.xi.is_finite() || !self.theta.is_finite() {
            return bad("xi and theta must be finite");
        }
        Ok(())
    }

    pub fn genes(&self) -> usize {
        2 * self.depth
    }
}

/// The scored components of one evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObjectiveValue {
    /// `xi * mean_makespan + theta * m_term`, the value the GA minimizes.
    pub c: f64,
    /// Mean sampled makespan.
    pub mean_makespan: f64,
    /// Smallest sampled makespan.
    pub min_makespan: u32,
    /// Number of shots that hit the minimum.
    pub min_count: usize,
    /// `min_makespan * (shots - min_count)`: the scarcity penalty that
    /// drives probability mass onto the best sampled value.
    pub m_term: f64,
}

impl ObjectiveValue {
    pub fn from_makespans(makespans: &[u32], xi: f64, theta: f64) -> Self {
        assert!(!makespans.is_empty(), "objective needs at least one shot");
        let shots = makespans.len();
        let sum: u64 = makespans.iter().map(|&m| u64::from(m)).sum();
        let min_makespan = *makespans.iter().min().unwrap();
        let min_count = makespans.iter().filter(|&&m| m == min_makespan).count();
        let mean_makespan = sum as f64 / shots as f64;
        let m_term = f64::from(min_makespan) * (shots - min_count) as f64;
        let c = xi * mean_makespan + theta * m_term;
        Self {
            c,
            mean_makespan,
            min_makespan,
            min_count,
            m_term,
        }
    }
}

/// One row of the convergence log, recorded whenever the best chromosome
/// improves.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRecord {
    pub generation: usize,
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub objective: f64,
}

/// Everything a finished search reports.
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub best_params: CircuitParams,
    pub best_objective: ObjectiveValue,
    /// Best-so-far objective after the initial population and after each
    /// generation; non-increasing by construction of the elitist GA.
    pub history: Vec<f64>,
    pub improvements: Vec<ConvergenceRecord>,
    /// Fresh sampling of the best parameters, independent of every fitness
    /// evaluation.
    pub final_distribution: MakespanDistribution,
    pub final_sampling_seed: u64,
    pub total_evaluations: usize,
    pub unique_evaluations: usize,
    /// Smallest `xi * mean` seen across all evaluations.
    pub min_scaled_mean: f64,
    /// Largest `theta * m_term` seen across all evaluations.
    pub max_scarcity_term: f64,
    /// Sampled bitstrings whose decoded schedules passed full validation
    /// (equals every shot of every evaluation when validation is enabled).
    pub validated_samples: u64,
    pub config: GaConfig,
}

/// Maps measured outcomes to makespans for one instance.
struct Evaluator<'a> {
    inst: &'a JsspInstance,
    codec: RankCodec,
    total_u64: Option<u64>,
    table: Option<Vec<u32>>,
    /// Ranks whose decoded schedule already passed the full validator this
    /// run, with their makespans. Repeated ranks decode identically, so one
    /// validation covers every later shot of the same rank.
    validated: Option<Mutex<HashMap<u64, u32>>>,
}

impl<'a> Evaluator<'a> {
    fn new(inst: &'a JsspInstance, validate: bool) -> Self {
        let codec = RankCodec::new(inst);
        let total_u64 = codec.total().to_u64();
        let table = match total_u64 {
            Some(total) if total <= MAKESPAN_TABLE_MAX => {
                let mut table = Vec::with_capacity(total as usize);
                let mut scratch = DecodeScratch::default();
                let mut v = BierwirthVector::first(inst);
                loop {
                    table.push(makespan_of(inst, v.entries(), &mut scratch));
                    if !v.advance_lex() {
                        break;
                    }
                }
                debug_assert_eq!(table.len() as u64, total);
                Some(table)
            }
            _ => None,
        };
        Self {
            inst,
            codec,
            total_u64,
            table,
            validated: validate.then(|| Mutex::new(HashMap::new())),
        }
    }

    fn qubit_count(&self) -> usize {
        self.codec.qubit_count()
    }

    /// Makespan of one outcome, fully decoding (and validating) when the
    /// rank is new or no table is available.
    fn resolve(&self, outcome: u64) -> Result<u32> {
        if let Some(validated) = &self.validated {
            // Register widths fit the budget, so the vector count and hence
            // every rank fits in u64 here.
            let rank_key = match self.total_u64 {
                Some(total) => outcome % total,
                None => unreachable!("sampled registers always have u64-sized totals"),
            };
            if let Some(&makespan) = validated.lock().unwrap().get(&rank_key) {
                return Ok(makespan);
            }
            let vector = self.codec.unrank(&rank_key.into())?;
            let schedule = decode(self.inst, &vector)?;
            validate_schedule(self.inst, &schedule)?;
            validated
                .lock()
                .unwrap()
                .insert(rank_key, schedule.makespan());
            return Ok(schedule.makespan());
        }
        if let (Some(table), Some(total)) = (&self.table, self.total_u64) {
            return Ok(table[(outcome % total) as usize]);
        }
        let rank = self.codec.raw_to_rank(outcome);
        let vector = self.codec.unrank(&rank)?;
        Ok(decode(self.inst, &vector)?.makespan())
    }

    /// Decodes a whole batch, resolving each distinct outcome once.
    fn makespans(&self, batch: &ShotBatch) -> Result<Vec<u32>> {
        let mut cache: HashMap<u64, u32> = HashMap::new();
        let mut makespans = Vec::with_capacity(batch.outcomes.len());
        for &outcome in &batch.outcomes {
            let makespan = match cache.get(&outcome) {
                Some(&m) => m,
                None => {
                    let m = self.resolve(outcome)?;
                    cache.insert(outcome, m);
                    m
                }
            };
            makespans.push(makespan);
        }
        Ok(makespans)
    }

    fn objective(
        &self,
        params: &CircuitParams,
        cfg: &GaConfig,
        seed: u64,
        budget: &MemoryBudget,
    ) -> Result<ObjectiveValue> {
        let state = run_circuit(self.qubit_count(), params, budget)?;
        let batch = state.sample(cfg.shots_per_eval, seed);
        let makespans = self.makespans(&batch)?;
        Ok(ObjectiveValue::from_makespans(
            &makespans, cfg.xi, cfg.theta,
        ))
    }
}

/// Scores one parameter vector: circuit, shots, rank decoding, objective.
/// Deterministic in `(instance, params, cfg, seed)`.
pub fn evaluate_objective(
    inst: &JsspInstance,
    params: &CircuitParams,
    cfg: &GaConfig,
    seed: u64,
    budget: &MemoryBudget,
) -> Result<ObjectiveValue> {
    cfg.validate()?;
    Evaluator::new(inst, cfg.validate_samples).objective(params, cfg, seed, budget)
}

/// Ratio of the optimum's probability after optimization to its probability
/// under the initial distribution. Returns 0 when the optimum never shows up
/// in the final distribution.
pub fn amplification(initial: &MakespanDistribution, fin: &MakespanDistribution) -> f64 {
    match initial.optimum() {
        Some(optimum) if initial.probability(optimum) > 0.0 => {
            fin.probability(optimum) / initial.probability(optimum)
        }
        _ => 0.0,
    }
}

/// Elitist genetic search over the circuit angles.
///
/// Chromosomes are the `2 * depth` genes `(gamma_1..gamma_D, beta_1..beta_D)`.
/// Parents are chosen by tournament, offspring by single-point crossover and
/// bounded uniform mutation; the best chromosome survives unchanged, so the
/// best objective never worsens. Each evaluation draws its shots from a
/// generator stream derived from the master seed and the evaluation index,
/// making the result independent of evaluation order.
pub fn run_ga(
    inst: &JsspInstance,
    cfg: &GaConfig,
    budget: &MemoryBudget,
) -> Result<OptimizationResult> {
    cfg.validate()?;
    let evaluator = Evaluator::new(inst, cfg.validate_samples);
    budget.check(evaluator.qubit_count())?;
    let genes = cfg.genes();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut stats = RunStats::default();

    let mut population: Vec<Vec<f64>> = (0..cfg.population)
        .map(|_| random_genes(genes, cfg.gene_bounds, &mut rng))
        .collect();
    let mut objectives =
        evaluate_generation(&evaluator, &population, cfg, 0, 0, budget, &mut stats)?;

    let mut best_slot = argmin(&objectives);
    let mut best_genes = population[best_slot].clone();
    let mut best_objective = objectives[best_slot].clone();
    let mut history = vec![best_objective.c];
    let mut improvements = vec![convergence_record(
        0,
        &best_genes,
        cfg.depth,
        best_objective.c,
    )];

    for generation in 1..=cfg.generations {
        let mut offspring = Vec::with_capacity(cfg.population);
        offspring.push(best_genes.clone()); // elite keeps its slot and score
        while offspring.len() < cfg.population {
            let first = tournament(&population, &objectives, cfg.tournament_size, &mut rng);
            let second = tournament(&population, &objectives, cfg.tournament_size, &mut rng);
            let mut child = crossover(first, second, &mut rng);
            mutate(&mut child, cfg, &mut rng);
            offspring.push(child);
        }
        population = offspring;

        let fresh = evaluate_generation(
            &evaluator,
            &population[1..],
            cfg,
            generation,
            1,
            budget,
            &mut stats,
        )?;
        objectives = std::iter::once(best_objective.clone())
            .chain(fresh)
            .collect();

        best_slot = argmin(&objectives);
        if objectives[best_slot].c < best_objective.c {
            best_genes = population[best_slot].clone();
            best_objective = objectives[best_slot].clone();
            improvements.push(convergence_record(
                generation,
                &best_genes,
                cfg.depth,
                best_objective.c,
            ));
        }
        history.push(best_objective.c);
    }

    // Report a fresh sampling of the winner rather than reusing any fitness
    // batch.
    let best_params = genes_to_params(&best_genes, cfg)?;
    let final_sampling_seed =
        derive_seed(cfg.seed, ((cfg.generations + 1) * cfg.population) as u64);
    let final_state = run_circuit(evaluator.qubit_count(), &best_params, budget)?;
    let final_batch = final_state.sample(cfg.shots_per_eval, final_sampling_seed);
    let final_makespans = evaluator.makespans(&final_batch)?;
    if cfg.validate_samples {
        stats.validated_samples += final_batch.outcomes.len() as u64;
    }

    Ok(OptimizationResult {
        best_params,
        best_objective,
        history,
        improvements,
        final_distribution: sample_distribution(&final_makespans),
        final_sampling_seed,
        total_evaluations: stats.total_evaluations,
        unique_evaluations: stats.unique_chromosomes.len(),
        min_scaled_mean: stats.min_scaled_mean,
        max_scarcity_term: stats.max_scarcity_term,
        validated_samples: stats.validated_samples,
        config: cfg.clone(),
    })
}

#[derive(Debug)]
struct RunStats {
    total_evaluations: usize,
    unique_chromosomes: HashSet<Vec<u64>>,
    min_scaled_mean: f64,
    max_scarcity_term: f64,
    validated_samples: u64,
}

impl Default for RunStats {
    fn default() -> Self {
        Self {
            total_evaluations: 0,
            unique_chromosomes: HashSet::new(),
            min_scaled_mean: f64::INFINITY,
            max_scarcity_term: f64::NEG_INFINITY,
            validated_samples: 0,
        }
    }
}

/// Evaluates `chromosomes` as slots `slot_offset..` of `generation`.
/// Results come back in slot order no matter how the work is scheduled.
fn evaluate_generation(
    evaluator: &Evaluator,
    chromosomes: &[Vec<f64>],
    cfg: &GaConfig,
    generation: usize,
    slot_offset: usize,
    budget: &MemoryBudget,
    stats: &mut RunStats,
) -> Result<Vec<ObjectiveValue>> {
    let eval_one = |(slot, genes): (usize, &Vec<f64>)| -> Result<ObjectiveValue> {
        let params = genes_to_params(genes, cfg)?;
        let seed = derive_seed(
            cfg.seed,
            (generation * cfg.population + slot_offset + slot) as u64,
        );
        evaluator.objective(&params, cfg, seed, budget)
    };

    let results: Vec<Result<ObjectiveValue>> =
        if evaluator.qubit_count() <= POPULATION_PARALLEL_MAX_QUBITS {
            chromosomes.par_iter().enumerate().map(eval_one).collect()
        } else {
            chromosomes.iter().enumerate().map(eval_one).collect()
        };

    let mut objectives = Vec::with_capacity(chromosomes.len());
    for (genes, result) in chromosomes.iter().zip(results) {
        let objective = result?;
        stats.total_evaluations += 1;
        stats
            .unique_chromosomes
            .insert(genes.iter().map(|g| g.to_bits()).collect());
        stats.min_scaled_mean = stats.min_scaled_mean.min(cfg.xi * objective.mean_makespan);
        stats.max_scarcity_term = stats.max_scarcity_term.max(cfg.theta * objective.m_term);
        if cfg.validate_samples {
            stats.validated_samples += cfg.shots_per_eval as u64;
        }
        objectives.push(objective);
    }
    Ok(objectives)
}

fn genes_to_params(genes: &[f64], cfg: &GaConfig) -> Result<CircuitParams> {
    let gammas = genes[..cfg.depth].to_vec();
    let betas = genes[cfg.depth..].to_vec();
    CircuitParams::new(gammas, betas, cfg.mixer)
}

fn convergence_record(
    generation: usize,
    genes: &[f64],
    depth: usize,
    objective: f64,
) -> ConvergenceRecord {
    ConvergenceRecord {
        generation,
        gammas: genes[..depth].to_vec(),
        betas: genes[depth..].to_vec(),
        objective,
    }
}

fn random_genes(genes: usize, bounds: (f64, f64), rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..genes)
        .map(|_| bounds.0 + rng.random::<f64>() * (bounds.1 - bounds.0))
        .collect()
}

fn tournament<'a>(
    population: &'a [Vec<f64>],
    objectives: &[ObjectiveValue],
    size: usize,
    rng: &mut ChaCha8Rng,
) -> &'a [f64] {
    let mut winner = rng.random_range(0..population.len());
    for _ in 1..size {
        let challenger = rng.random_range(0..population.len());
        if objectives[challenger].c < objectives[winner].c {
            winner = challenger;
        }
    }
    &population[winner]
}

fn crossover(first: &[f64], second: &[f64], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let point = rng.random_range(1..first.len());
    let mut child = first[..point].to_vec();
    child.extend_from_slice(&second[point..]);
    child
}

fn mutate(genes: &mut [f64], cfg: &GaConfig, rng: &mut ChaCha8Rng) {
    if rng.random::<f64>() >= cfg.mutation_probability {
        return;
    }
    let count =
        ((cfg.mutation_gene_fraction * genes.len() as f64).round() as usize).clamp(1, genes.len());
    let mut indices: Vec<usize> = (0..genes.len()).collect();
    for pick in 0..count {
        let swap_with = rng.random_range(pick..indices.len());
        indices.swap(pick, swap_with);
        let (lo, hi) = cfg.gene_bounds;
        genes[indices[pick]] = lo + rng.random::<f64>() * (hi - lo);
    }
}

fn argmin(objectives: &[ObjectiveValue]) -> usize {
    objectives
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.c.total_cmp(&b.1.c))
        .map(|(slot, _)| slot)
        .expect("population is never empty")
}

/// Splitmix-style stream derivation: one evaluation index in, one
/// independent sampling seed out.
fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
