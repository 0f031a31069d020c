//! Semi-active schedule decoding.
//!
//! A job-repetition vector is scanned left to right; the `k`-th occurrence of
//! job `j` is operation `(j, k)`, started at the maximum of its job
//! predecessor's finish and the finish of the last operation already placed
//! on its machine. The result is semi-active: no operation can start earlier
//! without changing some machine sequence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::JsspInstance;
use crate::vector::{check_multiplicities, BierwirthVector};

/// A decoded schedule: per-operation start times, the machine sequences that
/// produced them, and the makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    /// `starts[job][op]` in integer time units.
    starts: Vec<Vec<u32>>,
    /// `machine_order[machine]` lists `(job, op)` in processing order.
    machine_order: Vec<Vec<(usize, usize)>>,
    makespan: u32,
}

impl Schedule {
    pub fn start(&self, job: usize, op: usize) -> u32 {
        self.starts[job][op]
    }

    pub fn makespan(&self) -> u32 {
        self.makespan
    }

    pub fn machine_order(&self, machine: usize) -> &[(usize, usize)] {
        &self.machine_order[machine]
    }

    /// Flattens the schedule for JSON output.
    pub fn dump(&self, inst: &JsspInstance) -> ScheduleDump {
        let mut operations = Vec::with_capacity(inst.n_ops());
        for job in 0..inst.n_jobs() {
            for op in 0..inst.n_machines() {
                let o = inst.op(job, op);
                let start = self.starts[job][op];
                operations.push(OperationDump {
                    job,
                    op,
                    machine: o.machine,
                    start,
                    end: start + o.duration,
                });
            }
        }
        ScheduleDump {
            makespan: self.makespan,
            operations,
        }
    }
}

/// Serializable schedule view: one row per operation plus the makespan.
#[derive(Debug, Clone, Serialize)]
pub struct ScheduleDump {
    pub makespan: u32,
    pub operations: Vec<OperationDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OperationDump {
    pub job: usize,
    pub op: usize,
    pub machine: usize,
    pub start: u32,
    pub end: u32,
}

/// Decodes a job-repetition vector into a semi-active schedule.
///
/// Runs in `O(n * m)`. Errors if the vector's multiplicities do not match the
/// instance.
pub fn decode(inst: &JsspInstance, v: &BierwirthVector) -> Result<Schedule> {
    check_multiplicities(v.entries(), inst)?;

    let mut next_op = vec![0usize; inst.n_jobs()];
    let mut job_ready = vec![0u32; inst.n_jobs()];
    let mut machine_free = vec![0u32; inst.n_machines()];
    let mut starts: Vec<Vec<u32>> = (0..inst.n_jobs())
        .map(|_| vec![0u32; inst.n_machines()])
        .collect();
    let mut machine_order: Vec<Vec<(usize, usize)>> = (0..inst.n_machines())
        .map(|_| Vec::with_capacity(inst.n_jobs()))
        .collect();
    let mut makespan = 0u32;

    for &job in v.entries() {
        let op = next_op[job];
        next_op[job] = op + 1;
        let o = inst.op(job, op);
        let start = job_ready[job].max(machine_free[o.machine]);
        let finish = start + o.duration;
        starts[job][op] = start;
        job_ready[job] = finish;
        machine_free[o.machine] = finish;
        machine_order[o.machine].push((job, op));
        makespan = makespan.max(finish);
    }

    Ok(Schedule {
        starts,
        machine_order,
        makespan,
    })
}

/// Reusable buffers for [`makespan_of`].
#[derive(Debug, Default, Clone)]
pub struct DecodeScratch {
    next_op: Vec<usize>,
    job_ready: Vec<u32>,
    machine_free: Vec<u32>,
}

/// Makespan-only decode used in enumeration hot loops.
///
/// Same scan as [`decode`] without building the schedule. The caller must
/// pass entries with valid multiplicities.
pub fn makespan_of(inst: &JsspInstance, entries: &[usize], scratch: &mut DecodeScratch) -> u32 {
    debug_assert!(check_multiplicities(entries, inst).is_ok());
    scratch.next_op.clear();
    scratch.next_op.resize(inst.n_jobs(), 0);
    scratch.job_ready.clear();
    scratch.job_ready.resize(inst.n_jobs(), 0);
    scratch.machine_free.clear();
    scratch.machine_free.resize(inst.n_machines(), 0);

    let mut makespan = 0u32;
    for &job in entries {
        let op = scratch.next_op[job];
        scratch.next_op[job] = op + 1;
        let o = inst.op(job, op);
        let start = scratch.job_ready[job].max(scratch.machine_free[o.machine]);
        let finish = start + o.duration;
        scratch.job_ready[job] = finish;
        scratch.machine_free[o.machine] = finish;
        makespan = makespan.max(finish);
    }
    makespan
}

/// Checks every schedule invariant from first principles, independently of
/// how the schedule was produced:
///
/// * job precedence: each operation starts at or after its job predecessor's
///   finish;
/// * machine exclusivity: consecutive operations on a machine do not overlap;
/// * semi-activity: every start equals the larger of the two predecessor
///   finishes;
/// * the makespan is the maximum finish time;
/// * the machine sequences cover every operation exactly once, on the right
///   machine.
#[allow(clippy::needless_range_loop)]
pub fn validate_schedule(inst: &JsspInstance, schedule: &Schedule) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidSchedule(msg));

    if schedule.starts.len() != inst.n_jobs()
        || schedule.starts.iter().any(|s| s.len() != inst.n_machines())
        || schedule.machine_order.len() != inst.n_machines()
    {
        return fail("shape does not match the instance".into());
    }

    // Machine sequences cover each operation exactly once.
    let mut seen = vec![vec![false; inst.n_machines()]; inst.n_jobs()];
    for (machine, order) in schedule.machine_order.iter().enumerate() {
        for &(job, op) in order {
            if job >= inst.n_jobs() || op >= inst.n_machines() {
                return fail(format!(
                    "machine {machine} lists unknown operation ({job},{op})"
                ));
            }
            if inst.op(job, op).machine != machine {
                return fail(format!(
                    "operation ({job},{op}) listed on machine {machine}, runs on {}",
                    inst.op(job, op).machine
                ));
            }
            if seen[job][op] {
                return fail(format!("operation ({job},{op}) appears twice"));
            }
            seen[job][op] = true;
        }
    }
    if seen.iter().flatten().any(|&s| !s) {
        return fail("some operation missing from the machine sequences".into());
    }

    // Job precedence.
    for job in 0..inst.n_jobs() {
        for op in 1..inst.n_machines() {
            let pred_finish = schedule.start(job, op - 1) + inst.op(job, op - 1).duration;
            if schedule.start(job, op) < pred_finish {
                return fail(format!(
                    "operation ({job},{op}) starts before its job predecessor finishes"
                ));
            }
        }
    }

    // Machine exclusivity along each machine sequence.
    for (machine, order) in schedule.machine_order.iter().enumerate() {
        for pair in order.windows(2) {
            let (ja, oa) = pair[0];
            let (jb, ob) = pair[1];
            let a_finish = schedule.start(ja, oa) + inst.op(ja, oa).duration;
            if schedule.start(jb, ob) < a_finish {
                return fail(format!(
                    "machine {machine}: ({jb},{ob}) overlaps its predecessor ({ja},{oa})"
                ));
            }
        }
    }

    // Semi-activity: start == max(job predecessor finish, machine predecessor finish).
    let mut machine_pred_finish = vec![vec![0u32; inst.n_machines()]; inst.n_jobs()];
    for order in &schedule.machine_order {
        for pair in order.windows(2) {
            let (ja, oa) = pair[0];
            let (jb, ob) = pair[1];
            machine_pred_finish[jb][ob] = schedule.start(ja, oa) + inst.op(ja, oa).duration;
        }
    }
    for job in 0..inst.n_jobs() {
        for op in 0..inst.n_machines() {
            let job_pred = if op == 0 {
                0
            } else {
                schedule.start(job, op - 1) + inst.op(job, op - 1).duration
            };
            let expected = job_pred.max(machine_pred_finish[job][op]);
            if schedule.start(job, op) != expected {
                return fail(format!(
                    "operation ({job},{op}) starts at {} but semi-activity requires {expected}",
                    schedule.start(job, op)
                ));
            }
        }
    }

    // Makespan.
    let max_finish = (0..inst.n_jobs())
        .flat_map(|job| {
            (0..inst.n_machines())
                .map(move |op| schedule.start(job, op) + inst.op(job, op).duration)
        })
        .max()
        .unwrap_or(0);
    if schedule.makespan != max_finish {
        return fail(format!(
            "makespan {} does not equal the maximum finish {max_finish}",
            schedule.makespan
        ));
    }

    Ok(())
}
