//! Job-repetition vectors: the indirect genotype. Job `j` appears once per
//! operation of job `j`; the `k`-th occurrence stands for operation `(j, k)`.

use crate::error::{Error, Result};
use crate::instance::JsspInstance;

/// A job-repetition sequence of length `n_jobs * n_machines`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BierwirthVector {
    entries: Vec<usize>,
}

impl BierwirthVector {
    /// Validates that every job index is in range and appears exactly once
    /// per operation of that job.
    pub fn new(entries: Vec<usize>, inst: &JsspInstance) -> Result<Self> {
        check_multiplicities(&entries, inst)?;
        Ok(Self { entries })
    }

    /// The lexicographically smallest vector for `inst`: all of job 0's
    /// occurrences first, then job 1's, and so on. This is the rank-0 vector.
    pub fn first(inst: &JsspInstance) -> Self {
        let mut entries = Vec::with_capacity(inst.n_ops());
        for job in 0..inst.n_jobs() {
            entries.extend(std::iter::repeat_n(job, inst.n_machines()));
        }
        Self { entries }
    }

    /// Wraps entries that are already known to satisfy the invariants, e.g.
    /// produced by unranking or by lexicographic iteration.
    pub(crate) fn from_valid(entries: Vec<usize>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Advances to the next vector in lexicographic order, in place.
    /// Returns `false` (leaving the vector untouched) if this is already the
    /// lexicographically largest vector.
    pub fn advance_lex(&mut self) -> bool {
        advance_lex(&mut self.entries)
    }
}

impl std::fmt::Display for BierwirthVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|j| j.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub(crate) fn check_multiplicities(entries: &[usize], inst: &JsspInstance) -> Result<()> {
    if entries.len() != inst.n_ops() {
        return Err(Error::InvalidVector(format!(
            "length {} does not match the {} operations of the instance",
            entries.len(),
            inst.n_ops()
        )));
    }
    let mut counts = vec![0usize; inst.n_jobs()];
    for &job in entries {
        if job >= inst.n_jobs() {
            return Err(Error::InvalidVector(format!(
                "job index {job} out of range for {} jobs",
                inst.n_jobs()
            )));
        }
        counts[job] += 1;
    }
    for (job, &count) in counts.iter().enumerate() {
        if count != inst.n_machines() {
            return Err(Error::InvalidVector(format!(
                "job {job} appears {count} times, expected {}",
                inst.n_machines()
            )));
        }
    }
    Ok(())
}

/// In-place next multiset permutation in lexicographic order.
pub(crate) fn advance_lex(entries: &mut [usize]) -> bool {
    if entries.len() < 2 {
        return false;
    }
    // Longest non-increasing suffix; pivot is the element just before it.
    let mut i = entries.len() - 1;
    while i > 0 && entries[i - 1] >= entries[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let pivot = i - 1;
    // Rightmost element greater than the pivot.
    let mut j = entries.len() - 1;
    while entries[j] <= entries[pivot] {
        j -= 1;
    }
    entries.swap(pivot, j);
    entries[i..].reverse();
    true
}
