//! Dense statevector simulation of the rank-phase circuit.
//!
//! Basis states are indexed little-endian: bit `j` of an amplitude index is
//! qubit `j`, so the index of a basis state is exactly the integer the
//! register encodes. The circuit is a uniform initialization followed, per
//! layer, by a diagonal phase layer that imprints `exp(-i * gamma * value)`
//! on basis state `|value>` and one of four entangling mixers.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// States with at least this many amplitudes run their gate kernels on
/// parallel chunks. Chunk results are elementwise and independent, so the
/// amplitudes are bitwise identical to the sequential path.
const PARALLEL_MIN_AMPLITUDES: usize = 1 << 21;

/// Cap on statevector size, overridable with the `IQAOA_MAX_AMPLITUDES`
/// environment variable. The default of `2^26` amplitudes is about 1 GiB of
/// double-precision pairs.
#[derive(Debug, Clone, Copy)]
pub struct MemoryBudget {
    pub max_amplitudes: u64,
}

impl Default for MemoryBudget {
    fn default() -> Self {
        Self {
            max_amplitudes: 1 << 26,
        }
    }
}

impl MemoryBudget {
    pub fn from_env() -> Self {
        match std::env::var("IQAOA_MAX_AMPLITUDES")
            .ok()
            .and_then(|v| v.parse().ok())
        {
            Some(max_amplitudes) => Self { max_amplitudes },
            None => Self::default(),
        }
    }

    pub fn check(&self, qubits: usize) -> Result<()> {
        if qubits == 0 {
            return Err(Error::InvalidParams("at least one qubit required".into()));
        }
        if qubits >= 63 || (1u64 << qubits) > self.max_amplitudes {
            return Err(Error::MemoryBudget {
                qubits,
                max_amplitudes: self.max_amplitudes,
            });
        }
        Ok(())
    }
}

/// The four entangling mixers. All use the same CX chain (control `j`,
/// target `j+1`, `j` ascending); they differ in the single-qubit rotations
/// and in whether the rotations come after or before the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MixerVariant {
    /// CX chain, then `RY(beta)` on every qubit.
    CxThenRy,
    /// CX chain, then `RX(beta)` on every qubit.
    CxThenRx,
    /// CX chain, then `RX(beta)` followed by `RY(beta)` on every qubit.
    CxThenRxRy,
    /// `RY(beta)` on every qubit, then the CX chain.
    RyThenCx,
}

impl MixerVariant {
    pub fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            1 => Ok(Self::CxThenRy),
            2 => Ok(Self::CxThenRx),
            3 => Ok(Self::CxThenRxRy),
            4 => Ok(Self::RyThenCx),
            other => Err(Error::UnknownMixer(other)),
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            Self::CxThenRy => 1,
            Self::CxThenRx => 2,
            Self::CxThenRxRy => 3,
            Self::RyThenCx => 4,
        }
    }
}

/// Per-layer phase and mixer angles plus the mixer choice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircuitParams {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub mixer: MixerVariant,
}

impl CircuitParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>, mixer: MixerVariant) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::InvalidParams(format!(
                "need equal, nonzero angle counts, got {} gammas and {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        Ok(Self {
            gammas,
            betas,
            mixer,
        })
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }
}

/// `2^q` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    qubits: usize,
}

impl StateVector {
    /// Uniform superposition: every amplitude `1/sqrt(2^q)`.
    pub fn uniform(qubits: usize, budget: &MemoryBudget) -> Result<Self> {
        budget.check(qubits)?;
        let len = 1usize << qubits;
        let amp = Complex64::new(1.0 / (len as f64).sqrt(), 0.0);
        Ok(Self {
            amps: vec![amp; len],
            qubits,
        })
    }

    /// `|0...0>`, for tests and oracles.
    pub fn zero_state(qubits: usize, budget: &MemoryBudget) -> Result<Self> {
        budget.check(qubits)?;
        let len = 1usize << qubits;
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { amps, qubits })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probability(&self, index: u64) -> f64 {
        self.amps[index as usize].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies the `|1>` component of `qubit` by `phase`.
    pub fn apply_phase(&mut self, qubit: usize, phase: Complex64) {
        let stride = 1usize << qubit;
        self.for_each_chunk(2 * stride, move |_, chunk| {
            for amp in &mut chunk[stride..] {
                *amp *= phase;
            }
        });
    }

    /// Applies an arbitrary single-qubit gate.
    pub fn apply_single(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let stride = 1usize << qubit;
        self.for_each_chunk(2 * stride, move |_, chunk| {
            let (zeros, ones) = chunk.split_at_mut(stride);
            for (a0, a1) in zeros.iter_mut().zip(ones.iter_mut()) {
                let new0 = m[0][0] * *a0 + m[0][1] * *a1;
                let new1 = m[1][0] * *a0 + m[1][1] * *a1;
                *a0 = new0;
                *a1 = new1;
            }
        });
    }

    pub fn apply_ry(&mut self, qubit: usize, beta: f64) {
        self.apply_single(qubit, ry_matrix(beta));
    }

    pub fn apply_rx(&mut self, qubit: usize, beta: f64) {
        self.apply_single(qubit, rx_matrix(beta));
    }

    /// Controlled-X: flips `target` where `control` is set.
    pub fn apply_cx(&mut self, control: usize, target: usize) {
        assert_ne!(control, target);
        let stride = 1usize << target;
        let chunk_len = 2 * stride;
        self.for_each_chunk(chunk_len, move |chunk_index, chunk| {
            let base = chunk_index * chunk_len;
            let (zeros, ones) = chunk.split_at_mut(stride);
            for i in 0..stride {
                if (base + i) >> control & 1 == 1 {
                    std::mem::swap(&mut zeros[i], &mut ones[i]);
                }
            }
        });
    }

    fn for_each_chunk<F>(&mut self, chunk_len: usize, kernel: F)
    where
        F: Fn(usize, &mut [Complex64]) + Sync + Send,
    {
        if self.amps.len() >= PARALLEL_MIN_AMPLITUDES && self.amps.len() > chunk_len {
            self.amps
                .par_chunks_mut(chunk_len)
                .enumerate()
                .for_each(|(i, chunk)| kernel(i, chunk));
        } else {
            for (i, chunk) in self.amps.chunks_mut(chunk_len).enumerate() {
                kernel(i, chunk);
            }
        }
    }

    /// Diagonal layer: basis state `|x>` gains `exp(-i * gamma * x)`,
    /// realized as one phase gate `diag(1, exp(-i * gamma * 2^j))` per
    /// qubit. Probabilities are untouched.
    pub fn apply_phase_layer(&mut self, gamma: f64) {
        for qubit in 0..self.qubits {
            let weight = (1u64 << qubit) as f64;
            self.apply_phase(qubit, Complex64::from_polar(1.0, -gamma * weight));
        }
    }

    fn apply_cx_chain(&mut self) {
        for qubit in 0..self.qubits.saturating_sub(1) {
            self.apply_cx(qubit, qubit + 1);
        }
    }

    /// One mixer layer. Operator products apply their rightmost factor
    /// first; the mixer variants spell out the resulting gate order.
    pub fn apply_mixer_layer(&mut self, beta: f64, variant: MixerVariant) {
        match variant {
            MixerVariant::CxThenRy => {
                self.apply_cx_chain();
                for qubit in 0..self.qubits {
                    self.apply_ry(qubit, beta);
                }
            }
            MixerVariant::CxThenRx => {
                self.apply_cx_chain();
                for qubit in 0..self.qubits {
                    self.apply_rx(qubit, beta);
                }
            }
            MixerVariant::CxThenRxRy => {
                self.apply_cx_chain();
                for qubit in 0..self.qubits {
                    self.apply_rx(qubit, beta);
                }
                for qubit in 0..self.qubits {
                    self.apply_ry(qubit, beta);
                }
            }
            MixerVariant::RyThenCx => {
                for qubit in 0..self.qubits {
                    self.apply_ry(qubit, beta);
                }
                self.apply_cx_chain();
            }
        }
    }

    /// Draws `shots` outcomes from `|amplitude|^2` with a seeded generator.
    /// Identical `(state, shots, seed)` always produce the same batch.
    pub fn sample(&self, shots: usize, seed: u64) -> ShotBatch {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draws: Vec<(f64, usize)> = (0..shots).map(|k| (rng.random(), k)).collect();
        draws.sort_by(|a, b| a.0.total_cmp(&b.0));

        // One inverse-CDF sweep over the amplitudes for the whole batch.
        let mut outcomes = vec![0u64; shots];
        let mut cumulative = 0.0f64;
        let mut next = 0usize;
        let mut last_supported = 0usize;
        for (index, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p > 0.0 {
                last_supported = index;
            }
            cumulative += p;
            while next < shots && draws[next].0 < cumulative {
                outcomes[draws[next].1] = index as u64;
                next += 1;
            }
            if next == shots {
                break;
            }
        }
        // Rounding can leave the cumulative sum a hair under a draw.
        for draw in &draws[next..] {
            outcomes[draw.1] = last_supported as u64;
        }

        ShotBatch {
            outcomes,
            qubits: self.qubits,
            seed,
        }
    }

    /// CSV dump `index,re,im`, intended for small registers.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,re,im\n");
        for (index, amp) in self.amps.iter().enumerate() {
            out.push_str(&format!("{index},{:.17},{:.17}\n", amp.re, amp.im));
        }
        out
    }
}

/// Measured outcomes in the computational basis. Bit `j` of an outcome is
/// qubit `j`, so the outcome is the encoded integer itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotBatch {
    pub outcomes: Vec<u64>,
    pub qubits: usize,
    pub seed: u64,
}

impl ShotBatch {
    pub fn bits(&self, shot: usize) -> Vec<bool> {
        let outcome = self.outcomes[shot];
        (0..self.qubits).map(|j| outcome >> j & 1 == 1).collect()
    }
}

pub fn ry_matrix(beta: f64) -> [[Complex64; 2]; 2] {
    let (sin, cos) = (beta / 2.0).sin_cos();
    [
        [Complex64::new(cos, 0.0), Complex64::new(-sin, 0.0)],
        [Complex64::new(sin, 0.0), Complex64::new(cos, 0.0)],
    ]
}

pub fn rx_matrix(beta: f64) -> [[Complex64; 2]; 2] {
    let (sin, cos) = (beta / 2.0).sin_cos();
    [
        [Complex64::new(cos, 0.0), Complex64::new(0.0, -sin)],
        [Complex64::new(0.0, -sin), Complex64::new(cos, 0.0)],
    ]
}

/// Runs the full circuit: uniform start, then per layer a phase layer with
/// `gamma` and a mixer layer with `beta`.
pub fn run_circuit(
    qubits: usize,
    params: &CircuitParams,
    budget: &MemoryBudget,
) -> Result<StateVector> {
    let mut state = StateVector::uniform(qubits, budget)?;
    for layer in 0..params.depth() {
        state.apply_phase_layer(params.gammas[layer]);
        state.apply_mixer_layer(params.betas[layer], params.mixer);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn budget() -> MemoryBudget {
        MemoryBudget::default()
    }

    fn max_amp_diff(a: &StateVector, b: &StateVector) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn uniform_amplitudes() {
        let s = StateVector::uniform(1, &budget()).unwrap();
        for amp in s.amplitudes() {
            assert!((amp.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
            assert_eq!(amp.im, 0.0);
        }
        let s = StateVector::uniform(2, &budget()).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a.re - 0.5).abs() < 1e-15));
        let s = StateVector::uniform(11, &budget()).unwrap();
        for index in 0..(1u64 << 11) {
            assert!((s.probability(index) - 1.0 / 2048.0).abs() < 1e-15);
        }
    }

    #[test]
    fn budget_rejections() {
        let tight = MemoryBudget { max_amplitudes: 8 };
        assert!(StateVector::uniform(3, &tight).is_ok());
        assert!(matches!(
            StateVector::uniform(4, &tight),
            Err(Error::MemoryBudget { .. })
        ));
        assert!(StateVector::uniform(0, &budget()).is_err());
    }

    #[test]
    fn zero_gamma_is_identity() {
        let mut s = StateVector::uniform(5, &budget()).unwrap();
        let before = s.clone();
        s.apply_phase_layer(0.0);
        assert_eq!(s, before);
    }

    #[test]
    fn two_pi_gamma_is_identity_up_to_rounding() {
        // exp(-i * 2pi * k) = 1 for every integer diagonal value k.
        let mut s = StateVector::uniform(8, &budget()).unwrap();
        let before = s.clone();
        s.apply_phase_layer(2.0 * PI);
        assert!(max_amp_diff(&s, &before) < 1e-10);
    }

    #[test]
    fn phase_layer_preserves_probabilities() {
        let mut s = StateVector::uniform(6, &budget()).unwrap();
        let before: Vec<f64> = (0..64).map(|i| s.probability(i)).collect();
        s.apply_phase_layer(1.234);
        for (index, &p) in before.iter().enumerate() {
            assert!((s.probability(index as u64) - p).abs() < 1e-14);
        }
    }

    #[test]
    fn gate_algebra() {
        // RY(beta) RY(-beta) = Id
        let mut s = StateVector::uniform(3, &budget()).unwrap();
        let before = s.clone();
        s.apply_ry(1, 0.7313);
        s.apply_ry(1, -0.7313);
        assert!(max_amp_diff(&s, &before) < 1e-12);

        // RX(pi) |0> = -i |1>
        let mut s = StateVector::zero_state(1, &budget()).unwrap();
        s.apply_rx(0, PI);
        assert!((s.amplitudes()[0] - Complex64::new(0.0, 0.0)).norm() < 1e-12);
        assert!((s.amplitudes()[1] - Complex64::new(0.0, -1.0)).norm() < 1e-12);

        // CX^2 = Id
        let mut s = StateVector::uniform(3, &budget()).unwrap();
        s.apply_ry(0, 0.4);
        s.apply_rx(2, 1.1);
        let before = s.clone();
        s.apply_cx(0, 2);
        s.apply_cx(0, 2);
        assert!(max_amp_diff(&s, &before) < 1e-12);
    }

    #[test]
    fn cx_permutes_basis_states() {
        // |01> (qubit 0 set) -> |11> under CX(0, 1).
        let mut s = StateVector::zero_state(2, &budget()).unwrap();
        s.apply_rx(0, PI); // |0> -> -i|1> on qubit 0
        s.apply_cx(0, 1);
        assert!((s.probability(0b11) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_beta_mixers_reduce_to_the_chain() {
        let mut with_rotations = StateVector::uniform(4, &budget()).unwrap();
        with_rotations.apply_phase_layer(0.9);
        let mut chain_only = with_rotations.clone();
        with_rotations.apply_mixer_layer(0.0, MixerVariant::CxThenRy);
        chain_only.apply_cx_chain();
        assert!(max_amp_diff(&with_rotations, &chain_only) < 1e-15);

        // CX chain is identity on |00>: every variant with beta = 0 fixes it.
        for variant in [
            MixerVariant::CxThenRy,
            MixerVariant::CxThenRx,
            MixerVariant::CxThenRxRy,
            MixerVariant::RyThenCx,
        ] {
            let mut s = StateVector::zero_state(2, &budget()).unwrap();
            s.apply_mixer_layer(0.0, variant);
            assert!((s.probability(0) - 1.0).abs() < 1e-12, "{variant:?}");
        }
    }

    #[test]
    fn trivial_circuit_keeps_the_uniform_distribution() {
        // The CX chain permutes basis states, and a permutation of equal
        // amplitudes is the same state.
        let params = CircuitParams::new(vec![0.0], vec![0.0], MixerVariant::CxThenRy).unwrap();
        let s = run_circuit(6, &params, &budget()).unwrap();
        for index in 0..(1u64 << 6) {
            assert!((s.probability(index) - 1.0 / 64.0).abs() < 1e-14);
        }
    }

    #[test]
    fn depth_two_circuit_is_deterministic_and_normalized() {
        let params = CircuitParams::new(
            vec![0.3217, -1.005],
            vec![2.4, -0.66],
            MixerVariant::CxThenRx,
        )
        .unwrap();
        let a = run_circuit(11, &params, &budget()).unwrap();
        let b = run_circuit(11, &params, &budget()).unwrap();
        assert_eq!(a, b);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn params_validation() {
        assert!(CircuitParams::new(vec![], vec![], MixerVariant::CxThenRy).is_err());
        assert!(CircuitParams::new(vec![0.1], vec![0.1, 0.2], MixerVariant::CxThenRy).is_err());
        assert!(matches!(
            MixerVariant::from_tag(5),
            Err(Error::UnknownMixer(5))
        ));
        assert_eq!(MixerVariant::from_tag(4).unwrap(), MixerVariant::RyThenCx);
    }

    #[test]
    fn sampling_a_deterministic_state() {
        let s = StateVector::zero_state(4, &budget()).unwrap();
        let batch = s.sample(64, 9);
        assert!(batch.outcomes.iter().all(|&o| o == 0));

        let mut s = StateVector::zero_state(3, &budget()).unwrap();
        s.apply_rx(1, PI);
        let batch = s.sample(16, 5);
        assert!(batch.outcomes.iter().all(|&o| o == 0b010));
        assert_eq!(batch.bits(0), vec![false, true, false]);
    }

    #[test]
    fn sampling_is_reproducible() {
        let params =
            CircuitParams::new(vec![0.5, 1.5], vec![0.25, -1.0], MixerVariant::RyThenCx).unwrap();
        let s = run_circuit(7, &params, &budget()).unwrap();
        assert_eq!(s.sample(500, 1234), s.sample(500, 1234));
        assert_ne!(s.sample(500, 1234).outcomes, s.sample(500, 4321).outcomes);
    }
}
