//! Job-shop instance model: jobs, machine routings, durations, and the
//! combinatorial size of the encoding space.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// One operation of a job: the machine it runs on and its processing time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Operation {
    pub machine: usize,
    pub duration: u32,
}

/// A job-shop instance with `n_jobs` jobs and `n_machines` machines.
///
/// Every job visits every machine exactly once, so each job has exactly
/// `n_machines` operations and there are `n_jobs * n_machines` operations in
/// total. Instances are immutable after construction and can be shared freely
/// across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsspInstance {
    n_machines: usize,
    jobs: Vec<Vec<Operation>>,
}

impl JsspInstance {
    /// Builds an instance from per-job operation sequences, validating all
    /// invariants: square shape, one visit per machine per job, machine
    /// indices in range, and strictly positive durations.
    pub fn new(n_machines: usize, jobs: Vec<Vec<Operation>>) -> Result<Self> {
        if jobs.is_empty() || n_machines == 0 {
            return Err(Error::EmptyInstance);
        }
        for (job, ops) in jobs.iter().enumerate() {
            if ops.len() != n_machines {
                return Err(Error::InconsistentOperationCount {
                    job,
                    expected: n_machines,
                    got: ops.len(),
                });
            }
            let mut seen = vec![false; n_machines];
            for (op, o) in ops.iter().enumerate() {
                if o.machine >= n_machines {
                    return Err(Error::MachineOutOfRange {
                        job,
                        machine: o.machine,
                        n_machines,
                    });
                }
                if seen[o.machine] {
                    return Err(Error::DuplicateMachine {
                        job,
                        machine: o.machine,
                    });
                }
                seen[o.machine] = true;
                if o.duration == 0 {
                    return Err(Error::NonPositiveDuration { job, op });
                }
            }
        }
        Ok(Self { n_machines, jobs })
    }

    /// Parses the instance file format.
    ///
    /// Lines starting with `#` and blank lines are skipped. The first data
    /// line is `<n_jobs> <n_machines>`; each following line lists one job as
    /// space-separated `<machine> <duration>` pairs in operation order.
    /// Machines are 0-indexed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut data_lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = data_lines.next().ok_or(Error::MalformedInstance {
            line: 1,
            detail: "missing header line".into(),
        })?;
        let mut fields = header.split_whitespace();
        let n_jobs: usize = parse_field(&mut fields, line_no, "job count")?;
        let n_machines: usize = parse_field(&mut fields, line_no, "machine count")?;
        if fields.next().is_some() {
            return Err(Error::MalformedInstance {
                line: line_no,
                detail: "trailing tokens after header".into(),
            });
        }

        let mut jobs = Vec::with_capacity(n_jobs);
        for _ in 0..n_jobs {
            let (line_no, line) = data_lines.next().ok_or(Error::MalformedInstance {
                line: 0,
                detail: format!("expected {n_jobs} job lines, file ended early"),
            })?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.len().is_multiple_of(2) {
                return Err(Error::MalformedInstance {
                    line: line_no,
                    detail: "odd number of tokens, expected machine/duration pairs".into(),
                });
            }
            let mut ops = Vec::with_capacity(tokens.len() / 2);
            for pair in tokens.chunks(2) {
                let machine = pair[0].parse().map_err(|_| Error::MalformedInstance {
                    line: line_no,
                    detail: format!("bad machine index `{}`", pair[0]),
                })?;
                let duration = pair[1].parse().map_err(|_| Error::MalformedInstance {
                    line: line_no,
                    detail: format!("bad duration `{}`", pair[1]),
                })?;
                ops.push(Operation { machine, duration });
            }
            jobs.push(ops);
        }
        if let Some((line_no, _)) = data_lines.next() {
            return Err(Error::MalformedInstance {
                line: line_no,
                detail: "unexpected data after last job line".into(),
            });
        }
        if jobs.len() != n_jobs {
            return Err(Error::EmptyInstance);
        }
        Self::new(n_machines, jobs)
    }

    /// Renders the instance back into the file format (no comments).
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.n_jobs(), self.n_machines);
        for ops in &self.jobs {
            let line: Vec<String> = ops
                .iter()
                .map(|o| format!("{} {}", o.machine, o.duration))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn n_jobs(&self) -> usize {
        self.jobs.len()
    }

    pub fn n_machines(&self) -> usize {
        self.n_machines
    }

    /// Total number of operations, `n_jobs * n_machines`.
    pub fn n_ops(&self) -> usize {
        self.jobs.len() * self.n_machines
    }

    /// The `k`-th operation of `job`.
    pub fn op(&self, job: usize, k: usize) -> Operation {
        self.jobs[job][k]
    }

    pub fn job_ops(&self, job: usize) -> &[Operation] {
        &self.jobs[job]
    }

    /// Number of job-repetition vectors for this instance:
    /// `(n*m)! / (m!)^n`, in exact integer arithmetic.
    pub fn total_vector_count(&self) -> BigUint {
        let n = self.n_jobs() as u64;
        let m = self.n_machines as u64;
        let mut count = factorial(n * m);
        let per_job = factorial(m);
        for _ in 0..n {
            count /= &per_job;
        }
        count
    }

    /// Sum of processing times assigned to each machine. The maximum entry is
    /// a lower bound on any makespan.
    pub fn machine_loads(&self) -> Vec<u64> {
        let mut loads = vec![0u64; self.n_machines];
        for ops in &self.jobs {
            for o in ops {
                loads[o.machine] += u64::from(o.duration);
            }
        }
        loads
    }

    /// Sum of processing times of each job. The maximum entry is a lower
    /// bound on any makespan.
    pub fn job_lengths(&self) -> Vec<u64> {
        self.jobs
            .iter()
            .map(|ops| ops.iter().map(|o| u64::from(o.duration)).sum())
            .collect()
    }
}

fn parse_field<'a>(
    fields: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<usize> {
    let token = fields.next().ok_or_else(|| Error::MalformedInstance {
        line,
        detail: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::MalformedInstance {
        line,
        detail: format!("bad {what} `{token}`"),
    })
}

/// `n!` as an exact big integer.
pub fn factorial(n: u64) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= BigUint::from(i);
    }
    f
}
