use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::assign::{enumerate_assignments, LQAssignment};
use super::extend::extend_unchecked;
use super::FptError;
use crate::classic::agent_proposing;
use crate::instance::Instance;
use crate::matching::Matching;
use crate::optimality::{feasibility_exists, is_envy_free, is_relaxed_stable};

const BATCH: usize = 512;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads; 0 uses the global rayon pool, 1 runs inline.
    pub threads: usize,
    /// Maximum number of assignments to enumerate.
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub assignments_enumerated: u64,
    /// Assignments that passed the pre-extension test.
    pub candidates: u64,
    /// Completed matchings that passed the final test.
    pub survivors: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub best: Option<Matching>,
    pub stats: SolveStats,
}

fn pick(x: Option<Matching>, y: Option<Matching>) -> Option<Matching> {
    match (x, y) {
        (Some(x), Some(y)) => Some(if y.better_than(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

struct Counters {
    candidates: AtomicU64,
    survivors: AtomicU64,
}

fn run<F>(inst: &Instance, opts: &SolveOptions, eval: F) -> Result<SolveOutcome, FptError>
where
    F: Fn(&LQAssignment, &Counters) -> Option<Matching> + Sync,
{
    let counters = Counters {
        candidates: AtomicU64::new(0),
        survivors: AtomicU64::new(0),
    };
    let mut enumerated = 0u64;
    let mut best = None;
    let mut it = enumerate_assignments(inst);
    let pool = match opts.threads {
        0 | 1 => None,
        n => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| FptError::ThreadPool(e.to_string()))?,
        ),
    };
    loop {
        let batch: Vec<LQAssignment> = it.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        enumerated += batch.len() as u64;
        if let Some(budget) = opts.budget {
            if enumerated > budget {
                return Err(FptError::BudgetExceeded { budget });
            }
        }
        let local = if opts.threads == 1 {
            batch.iter().map(|a| eval(a, &counters)).fold(None, pick)
        } else {
            let par = || batch.par_iter().map(|a| eval(a, &counters)).reduce(|| None, pick);
            match &pool {
                Some(pool) => pool.install(par),
                None => par(),
            }
        };
        best = pick(best, local);
    }
    Ok(SolveOutcome {
        best,
        stats: SolveStats {
            assignments_enumerated: enumerated,
            candidates: counters.candidates.into_inner(),
            survivors: counters.survivors.into_inner(),
        },
    })
}

/// Whether some agent matched in `m` envies another agent.
fn matched_envy(inst: &Instance, m: &Matching) -> bool {
    m.edges().any(|(a, mine)| {
        let prefs = inst.agent_prefs(a);
        let better = inst.agent_rank(a, mine).expect("matched edge");
        prefs[..better].iter().any(|&b| {
            m.assignees(b)
                .iter()
                .any(|&other| inst.resource_prefers(b, Some(a), Some(other)))
        })
    })
}

/// A maximum-size feasible envy-free matching, or `None` when none exists.
///
/// Each assignment whose matched agents are envy-free among themselves is
/// extended; extensions that are envy-free compete on size, ties going to
/// the lexicographically smallest edge list.
pub fn alg_efm(inst: &Instance, opts: &SolveOptions) -> Result<SolveOutcome, FptError> {
    if !inst.is_one_one() {
        return Err(FptError::NotOneOne);
    }
    run(inst, opts, |assignment, counters| {
        let base = assignment.to_matching(inst);
        if matched_envy(inst, &base) {
            return None;
        }
        counters.candidates.fetch_add(1, Ordering::Relaxed);
        let m = extend_unchecked(inst, &base);
        if !is_envy_free(inst, &m) {
            return None;
        }
        counters.survivors.fetch_add(1, Ordering::Relaxed);
        Some(m)
    })
}

/// A maximum-size feasible relaxed-stable matching.
///
/// Each assignment is completed by the agent-optimal stable matching of the
/// instance with the assigned agents and resources removed; completions that
/// are relaxed stable compete on size with the same tie rule as [`alg_efm`].
pub fn alg_rsm(inst: &Instance, opts: &SolveOptions) -> Result<SolveOutcome, FptError> {
    if !inst.is_one_one() {
        return Err(FptError::NotOneOne);
    }
    if !feasibility_exists(inst) {
        return Err(FptError::NoFeasibleMatching);
    }
    run(inst, opts, |assignment, counters| {
        let base = assignment.to_matching(inst);
        counters.candidates.fetch_add(1, Ordering::Relaxed);
        let rest = agent_proposing(
            inst,
            |a, _| !base.is_agent_matched(a),
            |b| if base.is_resource_matched(b) { 0 } else { inst.upper(b) },
        );
        let mut m = base;
        for (a, b) in rest.edges() {
            m.assign(a, b);
        }
        if !is_relaxed_stable(inst, &m) {
            return None;
        }
        counters.survivors.fetch_add(1, Ordering::Relaxed);
        Some(m)
    })
}
