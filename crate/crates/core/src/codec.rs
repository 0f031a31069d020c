//! Exact lexicographic bijection between ranks and job-repetition vectors.
//!
//! Vectors are ordered lexicographically with job index 0 < 1 < ... < n-1.
//! Ranking scans the vector left to right and, for each position, adds the
//! sizes of the blocks of vectors that start with a smaller still-available
//! job; block sizes are multinomial coefficients over the remaining
//! multiplicities. Unranking inverts the scan by subtracting block sizes
//! until the block containing the rank is found. All arithmetic is exact.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::JsspInstance;
use crate::vector::BierwirthVector;

/// Rank/vector converter for one instance, with a precomputed factorial
/// table. Construction is cheap; the codec is read-only afterwards and safe
/// to share across threads.
#[derive(Debug, Clone)]
pub struct RankCodec {
    n_jobs: usize,
    ops_per_job: usize,
    length: usize,
    factorials: Vec<BigUint>,
    total: BigUint,
}

impl RankCodec {
    pub fn new(inst: &JsspInstance) -> Self {
        let length = inst.n_ops();
        let mut factorials = Vec::with_capacity(length + 1);
        let mut f = BigUint::one();
        factorials.push(f.clone());
        for i in 1..=length as u64 {
            f *= BigUint::from(i);
            factorials.push(f.clone());
        }
        Self {
            n_jobs: inst.n_jobs(),
            ops_per_job: inst.n_machines(),
            length,
            factorials,
            total: inst.total_vector_count(),
        }
    }

    /// Total number of vectors, `(n*m)! / (m!)^n`.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Width of the qubit register holding a rank: `ceil(log2(total))`, with
    /// a minimum of one qubit.
    pub fn qubit_count(&self) -> usize {
        if self.total <= BigUint::one() {
            1
        } else {
            (&self.total - BigUint::one()).bits().max(1) as usize
        }
    }

    /// Number of length-`remaining` sequences with the given per-job
    /// multiplicities: `remaining! / prod(counts[k]!)`.
    pub fn multinomial(&self, remaining: usize, counts: &[usize]) -> Result<BigUint> {
        let counts_sum: usize = counts.iter().sum();
        if counts_sum != remaining {
            return Err(Error::CountSumMismatch {
                remaining,
                counts_sum,
            });
        }
        let mut denominator = BigUint::one();
        for &c in counts {
            if c > 1 {
                denominator *= &self.factorials[c];
            }
        }
        Ok(&self.factorials[remaining] / denominator)
    }

    /// Lexicographic rank of a vector.
    pub fn rank_of(&self, v: &BierwirthVector) -> Result<BigUint> {
        let entries = v.entries();
        self.check_shape(entries)?;
        let mut counts = vec![self.ops_per_job; self.n_jobs];
        let mut rank = BigUint::zero();
        for (i, &job) in entries.iter().enumerate() {
            let remaining = self.length - i - 1;
            for smaller in 0..job {
                if counts[smaller] > 0 {
                    rank += self.block_size(remaining, &counts, smaller);
                }
            }
            counts[job] -= 1;
        }
        Ok(rank)
    }

    /// Vector with the given lexicographic rank. Exact inverse of
    /// [`rank_of`](Self::rank_of); errors if `rank >= total`.
    pub fn unrank(&self, rank: &BigUint) -> Result<BierwirthVector> {
        if *rank >= self.total {
            return Err(Error::RankOutOfRange {
                rank: rank.clone(),
                total: self.total.clone(),
            });
        }
        let mut residual = rank.clone();
        let mut counts = vec![self.ops_per_job; self.n_jobs];
        let mut entries = Vec::with_capacity(self.length);
        for i in 0..self.length {
            let remaining = self.length - i - 1;
            let mut chosen = None;
            for job in 0..self.n_jobs {
                if counts[job] == 0 {
                    continue;
                }
                let block = self.block_size(remaining, &counts, job);
                if residual >= block {
                    residual -= block;
                } else {
                    chosen = Some(job);
                    break;
                }
            }
            // Blocks partition the remaining ranks, so one always matches.
            let job = chosen.expect("rank below total must fall in some block");
            entries.push(job);
            counts[job] -= 1;
        }
        debug_assert!(residual.is_zero());
        Ok(BierwirthVector::from_valid(entries))
    }

    /// Assembles a rank from a measured bitstring: bit `j` carries weight
    /// `2^j`. Raw values at or beyond the vector count wrap around modulo the
    /// count, so every bitstring maps to a feasible vector.
    pub fn bits_to_rank(&self, bits: &[bool]) -> BigUint {
        let mut raw = BigUint::zero();
        for (j, &bit) in bits.iter().enumerate() {
            if bit {
                raw += BigUint::one() << j;
            }
        }
        raw % &self.total
    }

    /// [`bits_to_rank`](Self::bits_to_rank) for outcomes already packed into an integer
    /// (bit `j` of `raw` is qubit `j`).
    pub fn raw_to_rank(&self, raw: u64) -> BigUint {
        BigUint::from(raw) % &self.total
    }

    /// Rank converted to a u64 when the instance is small enough.
    pub fn rank_to_u64(&self, rank: &BigUint) -> Option<u64> {
        rank.to_u64()
    }

    /// Number of vectors whose next symbol is `job`, given the remaining
    /// multiplicities: the multinomial with `counts[job]` decremented.
    fn block_size(&self, remaining: usize, counts: &[usize], job: usize) -> BigUint {
        debug_assert!(counts[job] > 0);
        let mut denominator = BigUint::one();
        for (k, &c) in counts.iter().enumerate() {
            let c = if k == job { c - 1 } else { c };
            if c > 1 {
                denominator *= &self.factorials[c];
            }
        }
        &self.factorials[remaining] / denominator
    }

    fn check_shape(&self, entries: &[usize]) -> Result<()> {
        if entries.len() != self.length {
            return Err(Error::InvalidVector(format!(
                "length {} does not match codec length {}",
                entries.len(),
                self.length
            )));
        }
        let mut counts = vec![0usize; self.n_jobs];
        for &job in entries {
            if job >= self.n_jobs {
                return Err(Error::InvalidVector(format!(
                    "job index {job} out of range for {} jobs",
                    self.n_jobs
                )));
            }
            counts[job] += 1;
        }
        if counts.iter().any(|&c| c != self.ops_per_job) {
            return Err(Error::InvalidVector(
                "multiplicities do not match the instance".into(),
            ));
        }
        Ok(())
    }
}
