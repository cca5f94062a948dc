//! Predicate checkers: feasibility, stability, envy-freeness, relaxed stability.
//!
//! The unmatched sentinel is least preferred by every vertex. For resources
//! with upper quota above one, `(a, b)` blocks when `b` prefers `a` to its
//! current state: `b` is undersubscribed or prefers `a` to its worst assignee.

use crate::bipartite;
use crate::classic::worst_assignee;
use crate::instance::{AgentIdx, Instance, ResourceIdx};
use crate::matching::Matching;

/// Would `b` take `a` over its current state?
#[inline]
pub(crate) fn resource_wants(inst: &Instance, m: &Matching, b: ResourceIdx, a: AgentIdx) -> bool {
    if m.assignees(b).len() < inst.upper(b) {
        return true;
    }
    let worst = worst_assignee(inst, m, b);
    inst.resource_prefers(b, Some(a), worst)
}

/// All blocking pairs, sorted by (agent index, resource index).
pub fn blocking_pairs(inst: &Instance, m: &Matching) -> Vec<(AgentIdx, ResourceIdx)> {
    let mut out = Vec::new();
    for a in inst.agents() {
        let prefs = inst.agent_prefs(a);
        let better = match m.resource_of(a) {
            Some(b) => inst.agent_rank(a, b).expect("matched edge"),
            None => prefs.len(),
        };
        let start = out.len();
        for &b in &prefs[..better] {
            if resource_wants(inst, m, b, a) {
                out.push((a, b));
            }
        }
        out[start..].sort_unstable_by_key(|&(_, b)| b);
    }
    out
}

/// All envy pairs `(a, a')`: `a` prefers `b = M(a')` to `M(a)` and `b`
/// prefers `a` to `a'`. Sorted by (envier, envied).
pub fn envy_pairs(inst: &Instance, m: &Matching) -> Vec<(AgentIdx, AgentIdx)> {
    let mut out = Vec::new();
    for a in inst.agents() {
        let prefs = inst.agent_prefs(a);
        let better = match m.resource_of(a) {
            Some(b) => inst.agent_rank(a, b).expect("matched edge"),
            None => prefs.len(),
        };
        let start = out.len();
        for &b in &prefs[..better] {
            for &other in m.assignees(b) {
                if inst.resource_prefers(b, Some(a), Some(other)) {
                    out.push((a, other));
                }
            }
        }
        out[start..].sort_unstable_by_key(|&(_, o)| o);
    }
    out
}

/// No resource below its lower quota.
pub fn is_feasible(inst: &Instance, m: &Matching) -> bool {
    inst.resources().all(|b| m.assignees(b).len() >= inst.lower(b))
}

pub fn is_stable(inst: &Instance, m: &Matching) -> bool {
    blocking_pairs(inst, m).is_empty()
}

pub fn is_envy_free(inst: &Instance, m: &Matching) -> bool {
    envy_pairs(inst, m).is_empty()
}

/// No unmatched agent blocks, and for every resource `b` at most `lower(b)`
/// of its assignees block. In ONE-ONE: every blocking agent is matched to an
/// LQ resource.
pub fn is_relaxed_stable(inst: &Instance, m: &Matching) -> bool {
    let mut blocking = vec![false; inst.num_agents()];
    for (a, _) in blocking_pairs(inst, m) {
        if !m.is_agent_matched(a) {
            return false;
        }
        blocking[a.0] = true;
    }
    inst.resources().all(|b| {
        m.assignees(b).iter().filter(|a| blocking[a.0]).count() <= inst.lower(b)
    })
}

/// Whether some matching meets every lower quota. Each resource contributes
/// `lower(b)` demand slots; the answer is yes iff a maximum matching of slots
/// to agents saturates all slots.
pub fn feasibility_exists(inst: &Instance) -> bool {
    let mut slots: Vec<Vec<usize>> = Vec::new();
    for b in inst.lq_resources() {
        let neighbours: Vec<usize> = inst.resource_prefs(b).iter().map(|a| a.0).collect();
        for _ in 0..inst.lower(b) {
            slots.push(neighbours.clone());
        }
    }
    bipartite::max_matching_size(&slots, inst.num_agents()) == slots.len()
}

/// Verdicts of every predicate, with the violating pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub feasible: bool,
    pub stable: bool,
    pub envy_free: bool,
    pub relaxed_stable: bool,
    pub blocking_pairs: Vec<(AgentIdx, ResourceIdx)>,
    pub envy_pairs: Vec<(AgentIdx, AgentIdx)>,
    pub deficient: Vec<ResourceIdx>,
}

pub fn report(inst: &Instance, m: &Matching) -> Report {
    let blocking = blocking_pairs(inst, m);
    let envy = envy_pairs(inst, m);
    Report {
        feasible: is_feasible(inst, m),
        stable: blocking.is_empty(),
        envy_free: envy.is_empty(),
        relaxed_stable: is_relaxed_stable(inst, m),
        deficient: inst
            .resources()
            .filter(|&b| m.assignees(b).len() < inst.lower(b))
            .collect(),
        blocking_pairs: blocking,
        envy_pairs: envy,
    }
}
