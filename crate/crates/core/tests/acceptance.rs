//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line on success (run with `--nocapture` to see them).
//!
//! The heavy seed sweeps are shared between the criteria that consume them.
//! Oracles here are built independently of the library's computation paths:
//! dense matrices for the mixers, a direct diagonal for the phase layer, a
//! chi-square test for sampling, and next-permutation iteration against the
//! rank codec.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use iqaoa::enumerate::{enumerate_distribution, DEFAULT_ENUMERATION_BUDGET};
use iqaoa::fixtures::load_fixture;
use iqaoa::optimizer::{amplification, run_ga, GaConfig, ObjectiveValue, OptimizationResult};
use iqaoa::schedule::decode;
use iqaoa::sim::{run_circuit, CircuitParams, MemoryBudget, MixerVariant, StateVector};
use iqaoa::vector::BierwirthVector;
use iqaoa::{JsspInstance, RankCodec};

const SWEEP_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

fn fixture(name: &str) -> JsspInstance {
    load_fixture(name).expect("bundled instance")
}

fn decode_makespan(inst: &JsspInstance, entries: &[usize]) -> u32 {
    let v = BierwirthVector::new(entries.to_vec(), inst).unwrap();
    decode(inst, &v).unwrap().makespan()
}

#[test]
fn criterion_01_enumeration_3x3_table() {
    let inst = fixture("jssp-3x3-b");
    let started = Instant::now();
    let dist = enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let elapsed = started.elapsed();

    let expected: [(u32, u64); 14] = [
        (181, 928),
        (194, 81),
        (207, 116),
        (212, 225),
        (217, 75),
        (222, 84),
        (223, 30),
        (228, 15),
        (232, 12),
        (233, 56),
        (243, 33),
        (248, 11),
        (249, 9),
        (259, 5),
    ];
    let got: Vec<(u32, u64)> = dist.counts().iter().map(|(&m, &c)| (m, c)).collect();
    assert_eq!(got, expected, "3x3 distribution must match exactly");
    assert_eq!(dist.total(), 1680);
    assert!(
        elapsed < Duration::from_secs(1),
        "enumeration took {elapsed:?}, budget is 1 s"
    );
    println!("ACCEPTANCE 01 enumeration 3x3 exact table ({elapsed:?}): PASS");
}

#[test]
fn criterion_02_decode_spot_checks() {
    let a = fixture("jssp-3x3-a");
    assert_eq!(decode_makespan(&a, &[0, 0, 0, 1, 1, 1, 2, 2, 2]), 193);
    assert_eq!(decode_makespan(&a, &[2, 2, 2, 1, 1, 1, 0, 0, 0]), 192);
    assert_eq!(decode_makespan(&a, &[2, 0, 2, 1, 0, 1, 0, 1, 2]), 188);

    let b = fixture("jssp-3x3-b");
    assert_eq!(decode_makespan(&b, &[0, 0, 0, 1, 1, 1, 2, 2, 2]), 249);

    let five_two = fixture("jssp-5x2");
    assert_eq!(
        decode_makespan(&five_two, &[1, 4, 3, 0, 2, 4, 0, 3, 1, 2]),
        22
    );

    let four_four = fixture("jssp-4x4");
    assert_eq!(
        decode_makespan(
            &four_four,
            &[0, 1, 1, 2, 2, 2, 3, 0, 0, 0, 1, 2, 3, 3, 1, 3]
        ),
        131
    );
    println!("ACCEPTANCE 02 decode spot checks: PASS");
}

#[test]
fn criterion_03_rank_codec() {
    let started = Instant::now();

    // Worked conversion with its intermediate values.
    let inst = fixture("jssp-3x3-a");
    let codec = RankCodec::new(&inst);
    let v = BierwirthVector::new(vec![2, 0, 2, 1, 0, 1, 0, 1, 2], &inst).unwrap();
    assert_eq!(codec.rank_of(&v).unwrap(), BigUint::from(1293u32));

    // After position 0 the accumulated rank is the two skipped blocks.
    let block0 = codec.multinomial(8, &[2, 3, 3]).unwrap();
    let block1 = codec.multinomial(8, &[3, 2, 3]).unwrap();
    assert_eq!(&block0 + &block1, BigUint::from(1120u32));

    // Unranking 1293 subtracts those blocks and keeps residual 173 when the
    // first symbol is fixed to job 2.
    let residual = BigUint::from(1293u32) - &block0 - &block1;
    assert_eq!(residual, BigUint::from(173u32));
    assert!(codec.multinomial(8, &[3, 3, 2]).unwrap() > residual);
    assert_eq!(codec.unrank(&BigUint::from(1293u32)).unwrap(), v);

    // Exhaustive bijection and order isomorphism on the 3x3 space: the n-th
    // vector of the independent lexicographic iterator has rank n.
    let mut vector = BierwirthVector::first(&inst);
    let mut rank = BigUint::zero();
    loop {
        assert_eq!(codec.rank_of(&vector).unwrap(), rank);
        assert_eq!(codec.unrank(&rank).unwrap(), vector);
        rank += BigUint::one();
        if !vector.advance_lex() {
            break;
        }
    }
    assert_eq!(&rank, codec.total());

    // Exhaustive bijection over all 113400 vectors of the 5x2 space.
    let five_two = fixture("jssp-5x2");
    let codec = RankCodec::new(&five_two);
    let mut vector = BierwirthVector::first(&five_two);
    let mut rank = BigUint::zero();
    loop {
        assert_eq!(codec.unrank(&rank).unwrap(), vector);
        assert_eq!(codec.rank_of(&vector).unwrap(), rank);
        rank += BigUint::one();
        if !vector.advance_lex() {
            break;
        }
    }
    assert_eq!(rank, BigUint::from(113400u32));

    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "codec checks took {elapsed:?}, budget is 10 s"
    );
    println!("ACCEPTANCE 03 rank codec bijection ({elapsed:?}): PASS");
}

#[test]
fn criterion_04_enumeration_4x3() {
    let inst = fixture("jssp-4x3");
    let dist = enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET).unwrap();

    // The closed form gives 369600; the published 369599 is off by one.
    assert_eq!(dist.total(), 369_600);
    assert!(dist.count(59).abs_diff(1952) <= 1);
    assert_eq!(dist.lower_quartile(), Some(68));

    let published_rows: [(u32, u64); 32] = [
        (59, 1952),
        (61, 37999),
        (62, 19582),
        (63, 5904),
        (64, 694),
        (65, 6064),
        (66, 4776),
        (67, 3067),
        (68, 16891),
        (69, 8062),
        (70, 2072),
        (71, 57913),
        (72, 22711),
        (73, 1872),
        (74, 1879),
        (75, 8015),
        (76, 17861),
        (77, 12806),
        (78, 25151),
        (79, 4292),
        (80, 5400),
        (81, 13423),
        (82, 6972),
        (83, 7800),
        (84, 3392),
        (85, 5506),
        (86, 4357),
        (121, 70),
        (122, 64),
        (123, 80),
        (126, 6),
        (127, 26),
    ];
    for (makespan, count) in published_rows {
        assert!(
            dist.count(makespan).abs_diff(count) <= 1,
            "makespan {makespan}: got {} vs published {count}",
            dist.count(makespan)
        );
    }
    println!("ACCEPTANCE 04 enumeration 4x3 rows within +/-1: PASS");
}

#[test]
fn criterion_05_enumeration_5x2_initial_column() {
    let inst = fixture("jssp-5x2");
    let dist = enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let published_percent: [(u32, f64); 19] = [
        (22, 16.11),
        (23, 5.71),
        (24, 8.51),
        (25, 12.96),
        (26, 5.32),
        (27, 8.44),
        (28, 9.46),
        (29, 7.54),
        (30, 6.38),
        (31, 4.57),
        (32, 3.98),
        (33, 3.11),
        (34, 3.42),
        (35, 1.38),
        (36, 1.02),
        (37, 1.15),
        (38, 0.33),
        (39, 0.33),
        (40, 0.28),
    ];
    for (makespan, percent) in published_percent {
        let got = dist.probability(makespan) * 100.0;
        assert!(
            (got - percent).abs() <= 0.01 + 1e-9,
            "makespan {makespan}: {got:.4}% vs published {percent}%"
        );
    }
    // Those rows are the whole support.
    assert_eq!(dist.counts().len(), 19);
    println!("ACCEPTANCE 05 enumeration 5x2 initial probabilities: PASS");
}

#[test]
fn criterion_06_enumeration_3x4() {
    let inst = fixture("jssp-3x4");
    let dist = enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET).unwrap();
    assert_eq!(dist.total(), 34_650);
    assert_eq!(dist.optimum(), Some(27));
    let got = dist.optimum_probability() * 100.0;
    assert!(
        (got - 14.47).abs() <= 0.01 + 1e-9,
        "P(27) = {got:.4}% vs published 14.47%"
    );
    println!("ACCEPTANCE 06 enumeration 3x4 optimum probability: PASS");
}

#[test]
fn criterion_07_enumeration_4x4() {
    let inst = fixture("jssp-4x4");
    let started = Instant::now();
    let dist = enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let elapsed = started.elapsed();

    assert_eq!(dist.total(), 63_063_000);
    assert_eq!(dist.optimum(), Some(131));
    let got = dist.optimum_probability() * 100.0;
    assert!(
        (got - 7.7).abs() <= 0.05,
        "P(131) = {got:.4}% vs published 7.7%"
    );
    assert_eq!(dist.lower_quartile(), Some(145));
    assert!(
        elapsed < Duration::from_secs(30 * 60),
        "enumeration took {elapsed:?}, budget is 30 min"
    );
    println!("ACCEPTANCE 07 enumeration 4x4 full space ({elapsed:?}): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 8: simulator property suite against independent oracles.
// ---------------------------------------------------------------------------

/// Non-trivial input state for the oracle comparisons: the uniform state
/// scrambled by seeded single-qubit gates, so both computation paths start
/// from identical, structure-free amplitudes.
fn prepared_state(qubits: usize, rng: &mut ChaCha8Rng, budget: &MemoryBudget) -> StateVector {
    let mut s = StateVector::uniform(qubits, budget).unwrap();
    for qubit in 0..qubits {
        s.apply_ry(qubit, rng.random::<f64>() * 3.0 - 1.5);
        s.apply_rx(qubit, rng.random::<f64>() * 3.0 - 1.5);
        s.apply_phase(
            qubit,
            Complex64::from_polar(1.0, rng.random::<f64>() * 2.0 - 1.0),
        );
    }
    s
}

type Matrix = Vec<Vec<Complex64>>;

fn mat_identity(n: usize) -> Matrix {
    let mut m = vec![vec![Complex64::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::one();
    }
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == Complex64::zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn mat_vec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Embeds a 2x2 gate on `qubit` into the full 2^q matrix (bit `qubit` of an
/// index is that qubit's basis value).
#[allow(clippy::needless_range_loop)]
fn embed_single(qubits: usize, qubit: usize, g: [[Complex64; 2]; 2]) -> Matrix {
    let n = 1usize << qubits;
    let mut m = vec![vec![Complex64::zero(); n]; n];
    for x in 0..n {
        let xb = x >> qubit & 1;
        for yb in 0..2 {
            let y = (x & !(1 << qubit)) | (yb << qubit);
            m[y][x] = g[yb][xb];
        }
    }
    m
}

#[allow(clippy::needless_range_loop)]
fn embed_cx(qubits: usize, control: usize, target: usize) -> Matrix {
    let n = 1usize << qubits;
    let mut m = vec![vec![Complex64::zero(); n]; n];
    for x in 0..n {
        let y = if x >> control & 1 == 1 {
            x ^ (1 << target)
        } else {
            x
        };
        m[y][x] = Complex64::one();
    }
    m
}

fn oracle_ry(beta: f64) -> [[Complex64; 2]; 2] {
    let half = beta / 2.0;
    [
        [
            Complex64::new(half.cos(), 0.0),
            Complex64::new(-half.sin(), 0.0),
        ],
        [
            Complex64::new(half.sin(), 0.0),
            Complex64::new(half.cos(), 0.0),
        ],
    ]
}

fn oracle_rx(beta: f64) -> [[Complex64; 2]; 2] {
    let half = beta / 2.0;
    [
        [
            Complex64::new(half.cos(), 0.0),
            Complex64::new(0.0, -half.sin()),
        ],
        [
            Complex64::new(0.0, -half.sin()),
            Complex64::new(half.cos(), 0.0),
        ],
    ]
}

/// Full-matrix mixer: the CX chain matrix first, then the rotations, matching
/// the rightmost-first reading of the operator products.
fn oracle_mixer_matrix(qubits: usize, beta: f64, variant: MixerVariant) -> Matrix {
    let chain = (0..qubits.saturating_sub(1)).fold(mat_identity(1 << qubits), |acc, j| {
        mat_mul(&embed_cx(qubits, j, j + 1), &acc)
    });
    let all_ry = (0..qubits).fold(mat_identity(1 << qubits), |acc, j| {
        mat_mul(&embed_single(qubits, j, oracle_ry(beta)), &acc)
    });
    let all_rx = (0..qubits).fold(mat_identity(1 << qubits), |acc, j| {
        mat_mul(&embed_single(qubits, j, oracle_rx(beta)), &acc)
    });
    match variant {
        MixerVariant::CxThenRy => mat_mul(&all_ry, &chain),
        MixerVariant::CxThenRx => mat_mul(&all_rx, &chain),
        MixerVariant::CxThenRxRy => mat_mul(&all_ry, &mat_mul(&all_rx, &chain)),
        MixerVariant::RyThenCx => mat_mul(&chain, &all_ry),
    }
}

#[test]
fn criterion_08_simulator_property_suite() {
    let budget = MemoryBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);

    // Norm preservation over depth-2 circuits up to q = 17.
    for qubits in [1, 2, 5, 11, 17] {
        for variant in [
            MixerVariant::CxThenRy,
            MixerVariant::CxThenRx,
            MixerVariant::CxThenRxRy,
            MixerVariant::RyThenCx,
        ] {
            let params = CircuitParams::new(
                vec![
                    rng.random::<f64>() * 6.0 - 3.0,
                    rng.random::<f64>() * 6.0 - 3.0,
                ],
                vec![
                    rng.random::<f64>() * 6.0 - 3.0,
                    rng.random::<f64>() * 6.0 - 3.0,
                ],
                variant,
            )
            .unwrap();
            let state = run_circuit(qubits, &params, &budget).unwrap();
            assert!(
                (state.norm_sqr() - 1.0).abs() <= 1e-9,
                "norm drift at q={qubits} {variant:?}"
            );
        }
    }

    // Phase layer against the directly constructed diagonal operator,
    // 50 random gammas for every register size up to 8.
    for qubits in 1..=8usize {
        for _ in 0..50 {
            let gamma = rng.random::<f64>() * 8.0 - 4.0;
            let mut seed_rng = ChaCha8Rng::seed_from_u64(rng.random());
            let mut gate_path = prepared_state(qubits, &mut seed_rng.clone(), &budget);
            let before = prepared_state(qubits, &mut seed_rng, &budget);
            gate_path.apply_phase_layer(gamma);
            for (index, &amp) in before.amplitudes().iter().enumerate() {
                let expected = amp * Complex64::from_polar(1.0, -gamma * index as f64);
                let got = gate_path.amplitudes()[index];
                assert!(
                    (got - expected).norm() <= 1e-10,
                    "phase oracle mismatch at q={qubits}, index {index}"
                );
            }
        }
    }

    // Mixer layers against dense matrix products, 100 random betas per
    // variant for every register size up to 4.
    for qubits in 1..=4usize {
        for variant in [
            MixerVariant::CxThenRy,
            MixerVariant::CxThenRx,
            MixerVariant::CxThenRxRy,
            MixerVariant::RyThenCx,
        ] {
            for _ in 0..100 {
                let beta = rng.random::<f64>() * 8.0 - 4.0;
                let mut seed_rng = ChaCha8Rng::seed_from_u64(rng.random());
                let mut gate_path = prepared_state(qubits, &mut seed_rng.clone(), &budget);
                let input = prepared_state(qubits, &mut seed_rng, &budget);
                gate_path.apply_mixer_layer(beta, variant);
                let oracle = mat_vec(
                    &oracle_mixer_matrix(qubits, beta, variant),
                    input.amplitudes(),
                );
                for (index, expected) in oracle.iter().enumerate() {
                    let got = gate_path.amplitudes()[index];
                    assert!(
                        (got - expected).norm() <= 1e-10,
                        "mixer oracle mismatch q={qubits} {variant:?} index {index}"
                    );
                }
            }
        }
    }

    // Gate algebra identities.
    {
        let mut s = prepared_state(3, &mut rng, &budget);
        let before = s.clone();
        s.apply_ry(1, 1.234);
        s.apply_ry(1, -1.234);
        let drift = s
            .amplitudes()
            .iter()
            .zip(before.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(drift <= 1e-12, "RY(b) RY(-b) != Id");

        let mut s = StateVector::zero_state(1, &budget).unwrap();
        s.apply_rx(0, std::f64::consts::PI);
        assert!((s.amplitudes()[1] - Complex64::new(0.0, -1.0)).norm() <= 1e-12);
        assert!(s.amplitudes()[0].norm() <= 1e-12);

        let mut s = prepared_state(3, &mut rng, &budget);
        let before = s.clone();
        s.apply_cx(2, 0);
        s.apply_cx(2, 0);
        let drift = s
            .amplitudes()
            .iter()
            .zip(before.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(drift <= 1e-12, "CX^2 != Id");
    }

    // Uniform-state sampling passes a chi-square test at significance 0.001
    // (q = 11, 100000 shots, 2048 bins).
    {
        let state = StateVector::uniform(11, &budget).unwrap();
        let shots = 100_000usize;
        let batch = state.sample(shots, 20_240_811);
        let mut observed = vec![0u64; 1 << 11];
        for &outcome in &batch.outcomes {
            observed[outcome as usize] += 1;
        }
        let expected = shots as f64 / 2048.0;
        let statistic: f64 = observed
            .iter()
            .map(|&o| {
                let d = o as f64 - expected;
                d * d / expected
            })
            .sum();
        // Wilson-Hilferty upper quantile of chi-square(df) at 0.999.
        let df = 2047.0f64;
        let z = 3.090_232_306_167_813; // standard normal 0.999 quantile
        let critical = df * (1.0 - 2.0 / (9.0 * df) + z * (2.0 / (9.0 * df)).sqrt()).powi(3);
        assert!(
            statistic < critical,
            "chi-square statistic {statistic:.1} >= critical {critical:.1}"
        );
    }

    println!("ACCEPTANCE 08 simulator property suite: PASS");
}

#[test]
fn criterion_09_objective_formula() {
    // Degenerate batch: every shot hits the same makespan.
    let degenerate = ObjectiveValue::from_makespans(&[64; 1000], 100_000.0, 1.0);
    assert_eq!(degenerate.mean_makespan, 64.0);
    assert_eq!(degenerate.m_term, 0.0);
    assert_eq!(degenerate.c, 100_000.0 * 64.0);

    // The published final histogram of the 5x2 run: C = 2200888.
    let mut shots = vec![22u32; 996];
    shots.push(23);
    shots.extend([24, 24]);
    shots.push(25);
    let published = ObjectiveValue::from_makespans(&shots, 100_000.0, 1.0);
    assert_eq!(published.min_makespan, 22);
    assert_eq!(published.min_count, 996);
    assert_eq!(published.m_term, 88.0);
    assert_eq!(published.mean_makespan, 22008.0 / 1000.0);
    assert_eq!(published.c, 100_000.0 * (22008.0 / 1000.0) + 88.0);
    assert!((published.c - 2_200_888.0).abs() < 1e-3);

    // Equal means, strictly more mass on the minimum, strictly lower C.
    let spread = ObjectiveValue::from_makespans(&[20, 20, 30, 30], 100_000.0, 1.0);
    let packed = ObjectiveValue::from_makespans(&[20, 20, 20, 40], 100_000.0, 1.0);
    assert_eq!(spread.mean_makespan, packed.mean_makespan);
    assert!(packed.c < spread.c);

    println!("ACCEPTANCE 09 objective formula: PASS");
}

// ---------------------------------------------------------------------------
// Criteria 10-12: shared seed sweeps.
// ---------------------------------------------------------------------------

struct SweepRun {
    seed: u64,
    result: OptimizationResult,
    p_optimum: f64,
    amplification: f64,
    elapsed: Duration,
}

struct Sweep {
    runs: Vec<SweepRun>,
    optimum: u32,
}

fn run_sweep(instance: &str, mixer: MixerVariant) -> Sweep {
    let inst = fixture(instance);
    let initial = enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let optimum = initial.optimum().unwrap();
    let budget = MemoryBudget::default();
    let runs = SWEEP_SEEDS
        .iter()
        .map(|&seed| {
            let cfg = GaConfig {
                mixer,
                seed,
                validate_samples: true,
                ..GaConfig::default()
            };
            let started = Instant::now();
            let result = run_ga(&inst, &cfg, &budget).unwrap();
            let elapsed = started.elapsed();
            SweepRun {
                seed,
                p_optimum: result.final_distribution.probability(optimum),
                amplification: amplification(&initial, &result.final_distribution),
                result,
                elapsed,
            }
        })
        .collect();
    Sweep { runs, optimum }
}

fn sweep_3x3() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| run_sweep("jssp-3x3-b", MixerVariant::CxThenRy))
}

fn sweep_5x2() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| run_sweep("jssp-5x2", MixerVariant::CxThenRx))
}

#[test]
fn criterion_10_search_3x3() {
    let sweep = sweep_3x3();
    assert_eq!(sweep.optimum, 181);
    for run in &sweep.runs {
        assert!(
            run.amplification >= 1.0,
            "seed {}: amplification {:.3} fell below the uniform baseline",
            run.seed,
            run.amplification
        );
        assert!(
            run.elapsed < Duration::from_secs(300),
            "seed {}: run took {:?}, budget is 5 min",
            run.seed,
            run.elapsed
        );
    }
    let best = sweep
        .runs
        .iter()
        .map(|r| r.p_optimum)
        .fold(0.0f64, f64::max);
    assert!(
        best >= 0.90,
        "no seed reached P(181) >= 0.90, best was {best:.4}"
    );
    println!(
        "ACCEPTANCE 10 3x3 search (best P(181) = {best:.4}, amplifications {:?}): PASS",
        sweep
            .runs
            .iter()
            .map(|r| (r.amplification * 1000.0).round() / 1000.0)
            .collect::<Vec<_>>()
    );
}

#[test]
fn criterion_11_search_5x2() {
    let sweep = sweep_5x2();
    assert_eq!(sweep.optimum, 22);
    for run in &sweep.runs {
        assert!(
            run.amplification >= 1.0,
            "seed {}: amplification {:.3} fell below the uniform baseline",
            run.seed,
            run.amplification
        );
        assert!(
            run.elapsed < Duration::from_secs(20 * 60),
            "seed {}: run took {:?}, budget is 20 min",
            run.seed,
            run.elapsed
        );
    }
    let best = sweep
        .runs
        .iter()
        .map(|r| r.p_optimum)
        .fold(0.0f64, f64::max);
    assert!(
        best >= 0.90,
        "no seed reached P(22) >= 0.90, best was {best:.4}; direct multi-start search \
         over the depth-2 angle space caps the exact optimum mass near 0.24 for this \
         ansatz (0.29 across every chain/phase convention), so the 0.90 target is not \
         reachable here - the search already saturates the circuit's ceiling, as the \
         README documents"
    );
    println!("ACCEPTANCE 11 5x2 search (best P(22) = {best:.4}): PASS");
}

#[test]
fn criterion_12_search_structure() {
    let shots = GaConfig::default().shots_per_eval as u64;
    for (label, sweep) in [("3x3", sweep_3x3()), ("5x2", sweep_5x2())] {
        for run in &sweep.runs {
            let history = &run.result.history;
            assert_eq!(history.len(), run.result.config.generations + 1);
            assert!(
                history.windows(2).all(|w| w[1] <= w[0]),
                "{label} seed {}: best-so-far objective increased",
                run.seed
            );
            // Every sampled bitstring decoded through the full validator;
            // run_ga would have failed on any infeasible schedule.
            let expected = (run.result.total_evaluations as u64 + 1) * shots;
            assert_eq!(
                run.result.validated_samples, expected,
                "{label} seed {}: not every sample was validated",
                run.seed
            );
            // The stated dominance of the mean term over the scarcity term.
            assert!(
                run.result.min_scaled_mean > run.result.max_scarcity_term,
                "{label} seed {}: xi * mean no longer dominates theta * M",
                run.seed
            );
        }
    }
    println!("ACCEPTANCE 12 search structure and feasibility: PASS");
}

/// Manual, out-of-CI smoke run of the 26-qubit 4x4 pipeline (about 1 GiB of
/// amplitudes per circuit run). Uses a reduced generation count and checks
/// only that the search amplifies the optimum over its 7.7% baseline:
/// `cargo test -p iqaoa --test acceptance -- --ignored --nocapture`.
#[test]
#[ignore = "manual smoke run: 26-qubit statevector, several minutes"]
fn manual_4x4_end_to_end_smoke() {
    let inst = fixture("jssp-4x4");
    let initial = enumerate_distribution(&inst, DEFAULT_ENUMERATION_BUDGET).unwrap();
    assert_eq!(initial.optimum(), Some(131));

    let cfg = GaConfig {
        generations: 5,
        population: 6,
        mixer: MixerVariant::CxThenRx,
        seed: 1,
        ..GaConfig::default()
    };
    let result = run_ga(&inst, &cfg, &MemoryBudget::default()).unwrap();
    let amp = amplification(&initial, &result.final_distribution);
    println!(
        "4x4 smoke: P(131) = {:.4}, amplification = {amp:.3}",
        result.final_distribution.probability(131)
    );
    assert!(
        amp >= 1.0,
        "amplification {amp:.3} below the uniform baseline"
    );
}
