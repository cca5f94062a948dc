//! Deferred acceptance (both proposal sides) and deficiency.
//!
//! Lower quotas are ignored by both stable matching routines: they compute a
//! stable matching of the underlying instance with upper quotas only.

use std::collections::VecDeque;

use crate::instance::{AgentIdx, Instance, ResourceIdx};
use crate::matching::Matching;

/// Agent-proposing deferred acceptance. Free agents propose in FIFO order,
/// seeded by index order. The result is the agent-optimal stable matching.
pub fn stable_agent_optimal(inst: &Instance) -> Matching {
    agent_proposing(inst, |_, _| true, |b| inst.upper(b))
}

/// Agent-proposing deferred acceptance on the subgraph of edges accepted by
/// `allowed`, with capacities `capacity(b)`. Equivalent to running on the
/// restricted instance, without materializing it.
pub(crate) fn agent_proposing(
    inst: &Instance,
    allowed: impl Fn(AgentIdx, ResourceIdx) -> bool,
    capacity: impl Fn(ResourceIdx) -> usize,
) -> Matching {
    let mut m = Matching::empty(inst);
    let mut next = vec![0usize; inst.num_agents()];
    let mut free: VecDeque<AgentIdx> = inst.agents().collect();

    while let Some(a) = free.pop_front() {
        let prefs = inst.agent_prefs(a);
        while next[a.0] < prefs.len() {
            let b = prefs[next[a.0]];
            next[a.0] += 1;
            if !allowed(a, b) {
                continue;
            }
            let cap = capacity(b);
            if cap == 0 {
                continue;
            }
            if m.assignees(b).len() < cap {
                m.assign(a, b);
                break;
            }
            let worst = worst_assignee(inst, &m, b).expect("full resource has assignees");
            if inst.resource_prefers(b, Some(a), Some(worst)) {
                m.unassign(worst);
                m.assign(a, b);
                free.push_back(worst);
                break;
            }
        }
    }
    m
}

pub(crate) fn worst_assignee(inst: &Instance, m: &Matching, b: ResourceIdx) -> Option<AgentIdx> {
    m.assignees(b)
        .iter()
        .copied()
        .max_by_key(|&a| inst.resource_rank(b, a))
}

/// Resource-proposing deferred acceptance. Resources with spare capacity
/// propose down their lists (FIFO over resources, seeded by index order);
/// agents keep their best offer. The result is resource-optimal.
pub fn stable_resource_optimal(inst: &Instance) -> Matching {
    let mut m = Matching::empty(inst);
    let mut next = vec![0usize; inst.num_resources()];
    let mut queue: VecDeque<ResourceIdx> = inst.resources().collect();
    let mut queued = vec![true; inst.num_resources()];

    while let Some(b) = queue.pop_front() {
        queued[b.0] = false;
        let prefs = inst.resource_prefs(b);
        while m.assignees(b).len() < inst.upper(b) && next[b.0] < prefs.len() {
            let a = prefs[next[b.0]];
            next[b.0] += 1;
            let current = m.resource_of(a);
            if inst.agent_prefers(a, Some(b), current) {
                if let Some(old) = current {
                    m.unassign(a);
                    if !queued[old.0] {
                        queued[old.0] = true;
                        queue.push_back(old);
                    }
                }
                m.assign(a, b);
            }
        }
    }
    m
}

/// Deficiency of an instance with respect to a stable matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deficiency {
    /// Total shortfall `Σ max(0, lower(b) - |M(b)|)`; equals `n_d` in ONE-ONE.
    pub d: usize,
    pub n_d: usize,
    pub deficient: Vec<ResourceIdx>,
}

/// Deficiency with respect to the agent-optimal stable matching.
pub fn deficiency(inst: &Instance) -> Deficiency {
    deficiency_of(inst, &stable_agent_optimal(inst))
}

pub(crate) fn deficiency_of(inst: &Instance, stable: &Matching) -> Deficiency {
    let mut d = 0;
    let mut deficient = Vec::new();
    for b in inst.resources() {
        let have = stable.assignees(b).len();
        if have < inst.lower(b) {
            d += inst.lower(b) - have;
            deficient.push(b);
        }
    }
    Deficiency {
        d,
        n_d: deficient.len(),
        deficient,
    }
}
