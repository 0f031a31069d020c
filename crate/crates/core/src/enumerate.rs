//! Exhaustive makespan distributions.
//!
//! Every job-repetition vector is decoded exactly once, producing exact
//! per-makespan counts. The work is split over disjoint rank ranges: each
//! range starts from an unranked vector and advances with the in-place
//! next-permutation step, so workers never decode the same vector twice and
//! the merged counts are identical to a sequential pass.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::codec::RankCodec;
use crate::error::{Error, Result};
use crate::instance::JsspInstance;
use crate::schedule::{makespan_of, DecodeScratch};

/// Default cap on how many vectors [`enumerate_distribution`] will decode.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

/// Vectors per parallel work item.
const CHUNK: u64 = 262_144;

/// Exact or empirical counts of vectors per makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MakespanDistribution {
    counts: BTreeMap<u32, u64>,
    total: u64,
}

impl MakespanDistribution {
    pub fn from_counts(counts: BTreeMap<u32, u64>) -> Self {
        let total = counts.values().sum();
        Self { counts, total }
    }

    /// Ascending `(makespan, count)` pairs.
    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, makespan: u32) -> u64 {
        self.counts.get(&makespan).copied().unwrap_or(0)
    }

    pub fn probability(&self, makespan: u32) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(makespan) as f64 / self.total as f64
        }
    }

    /// Smallest observed makespan.
    pub fn optimum(&self) -> Option<u32> {
        self.counts.keys().next().copied()
    }

    /// Probability of the smallest observed makespan.
    pub fn optimum_probability(&self) -> f64 {
        match self.optimum() {
            Some(m) => self.probability(m),
            None => 0.0,
        }
    }

    /// Smallest makespan `t` with `P(makespan <= t) >= 1/4`, decided in
    /// exact integer arithmetic.
    pub fn lower_quartile(&self) -> Option<u32> {
        let mut cumulative = 0u64;
        for (&makespan, &count) in &self.counts {
            cumulative += count;
            if 4 * cumulative >= self.total {
                return Some(makespan);
            }
        }
        None
    }

    /// CSV rows `makespan,count,probability`, ascending by makespan.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("makespan,count,probability\n");
        for (&makespan, &count) in &self.counts {
            out.push_str(&format!(
                "{makespan},{count},{:.8}\n",
                self.probability(makespan)
            ));
        }
        out
    }
}

/// Decodes every vector of the instance and tallies makespans exactly.
///
/// Refuses instances whose vector count exceeds `budget`, reporting the
/// computed total. Counts are deterministic regardless of worker count.
pub fn enumerate_distribution(inst: &JsspInstance, budget: u64) -> Result<MakespanDistribution> {
    let total_big = inst.total_vector_count();
    let total = match total_big.to_u64() {
        Some(t) if t <= budget => t,
        _ => {
            return Err(Error::EnumerationBudget {
                total: total_big,
                budget,
            })
        }
    };

    let codec = RankCodec::new(inst);
    let n_chunks = total.div_ceil(CHUNK);
    let counts = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut vector = codec
                .unrank(&BigUint::from(start))
                .expect("chunk start below total");
            let mut scratch = DecodeScratch::default();
            let mut local: BTreeMap<u32, u64> = BTreeMap::new();
            for rank in start..end {
                let makespan = makespan_of(inst, vector.entries(), &mut scratch);
                *local.entry(makespan).or_insert(0) += 1;
                if rank + 1 < end && !vector.advance_lex() {
                    unreachable!("lexicographic iterator ended before the last rank");
                }
            }
            local
        })
        .reduce(BTreeMap::new, merge_counts);

    Ok(MakespanDistribution::from_counts(counts))
}

fn merge_counts(mut a: BTreeMap<u32, u64>, b: BTreeMap<u32, u64>) -> BTreeMap<u32, u64> {
    for (makespan, count) in b {
        *a.entry(makespan).or_insert(0) += count;
    }
    a
}

/// Empirical histogram over a batch of sampled makespans.
pub fn sample_distribution(makespans: &[u32]) -> MakespanDistribution {
    let mut counts = BTreeMap::new();
    for &m in makespans {
        *counts.entry(m).or_insert(0) += 1;
    }
    MakespanDistribution::from_counts(counts)
}
