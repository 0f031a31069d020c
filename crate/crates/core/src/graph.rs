//! Oriented disjunctive graphs and longest-path makespans.
//!
//! Nodes are the operations plus a source and a sink. Conjunctive arcs follow
//! each job's operation order; disjunctive arcs orient each machine's
//! processing sequence. Arc weights are the tail operation's duration (source
//! arcs weigh 0), so the longest source-to-sink path equals the makespan of
//! the earliest-start schedule.

use crate::error::{Error, Result};
use crate::instance::JsspInstance;
use crate::vector::{check_multiplicities, BierwirthVector};

/// An oriented disjunctive graph for one instance.
#[derive(Debug, Clone)]
pub struct OrientedDisjunctiveGraph {
    /// node 0 = source, nodes 1..=n*m = operations, last node = sink
    adjacency: Vec<Vec<(usize, u32)>>,
    n_nodes: usize,
}

impl OrientedDisjunctiveGraph {
    /// Builds the graph from explicit machine sequences: `orders[machine]`
    /// lists `(job, op)` in processing order. The orientation is arbitrary,
    /// so the result may be cyclic; cycles surface in
    /// [`longest_path_makespan`](Self::longest_path_makespan).
    pub fn from_machine_orders(
        inst: &JsspInstance,
        orders: &[Vec<(usize, usize)>],
    ) -> Result<Self> {
        if orders.len() != inst.n_machines() {
            return Err(Error::InvalidMachineOrder(format!(
                "{} machine sequences given, instance has {}",
                orders.len(),
                inst.n_machines()
            )));
        }
        let mut seen = vec![vec![false; inst.n_machines()]; inst.n_jobs()];
        for (machine, order) in orders.iter().enumerate() {
            for &(job, op) in order {
                if job >= inst.n_jobs() || op >= inst.n_machines() {
                    return Err(Error::InvalidMachineOrder(format!(
                        "unknown operation ({job},{op})"
                    )));
                }
                if inst.op(job, op).machine != machine {
                    return Err(Error::InvalidMachineOrder(format!(
                        "operation ({job},{op}) runs on machine {}, listed on {machine}",
                        inst.op(job, op).machine
                    )));
                }
                if seen[job][op] {
                    return Err(Error::InvalidMachineOrder(format!(
                        "operation ({job},{op}) appears twice"
                    )));
                }
                seen[job][op] = true;
            }
        }
        if seen.iter().flatten().any(|&s| !s) {
            return Err(Error::InvalidMachineOrder(
                "some operation missing from the machine sequences".into(),
            ));
        }

        let n = inst.n_jobs();
        let m = inst.n_machines();
        let n_nodes = n * m + 2;
        let sink = n_nodes - 1;
        let node = |job: usize, op: usize| 1 + job * m + op;
        let mut adjacency = vec![Vec::new(); n_nodes];

        for job in 0..n {
            // source -> first operation, weight 0
            adjacency[0].push((node(job, 0), 0));
            // conjunctive arcs along the job, weighted by the tail's duration
            for op in 0..m - 1 {
                adjacency[node(job, op)].push((node(job, op + 1), inst.op(job, op).duration));
            }
            // last operation -> sink
            adjacency[node(job, m - 1)].push((sink, inst.op(job, m - 1).duration));
        }
        for order in orders {
            for pair in order.windows(2) {
                let (ja, oa) = pair[0];
                let (jb, ob) = pair[1];
                adjacency[node(ja, oa)].push((node(jb, ob), inst.op(ja, oa).duration));
            }
        }

        Ok(Self { adjacency, n_nodes })
    }

    /// Longest source-to-sink path weight, i.e. the makespan of the
    /// earliest-start schedule for this orientation. Errors on a cycle.
    pub fn longest_path_makespan(&self) -> Result<u32> {
        // Kahn topological order with a longest-path DP.
        let mut indegree = vec![0usize; self.n_nodes];
        for arcs in &self.adjacency {
            for &(to, _) in arcs {
                indegree[to] += 1;
            }
        }
        let mut dist = vec![0u32; self.n_nodes];
        let mut queue: Vec<usize> = (0..self.n_nodes).filter(|&v| indegree[v] == 0).collect();
        let mut processed = 0;
        while let Some(v) = queue.pop() {
            processed += 1;
            for &(to, w) in &self.adjacency[v] {
                dist[to] = dist[to].max(dist[v] + w);
                indegree[to] -= 1;
                if indegree[to] == 0 {
                    queue.push(to);
                }
            }
        }
        if processed != self.n_nodes {
            return Err(Error::CycleDetected);
        }
        Ok(dist[self.n_nodes - 1])
    }
}

/// Orients the disjunctive arcs according to a job-repetition vector: each
/// machine processes its operations in order of appearance during the decode
/// scan. The construction is acyclic for every valid vector.
pub fn build_graph(inst: &JsspInstance, v: &BierwirthVector) -> Result<OrientedDisjunctiveGraph> {
    check_multiplicities(v.entries(), inst)?;
    let mut next_op = vec![0usize; inst.n_jobs()];
    let mut orders: Vec<Vec<(usize, usize)>> = vec![Vec::new(); inst.n_machines()];
    for &job in v.entries() {
        let op = next_op[job];
        next_op[job] = op + 1;
        orders[inst.op(job, op).machine].push((job, op));
    }
    OrientedDisjunctiveGraph::from_machine_orders(inst, &orders)
}
