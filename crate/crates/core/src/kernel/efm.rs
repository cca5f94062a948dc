use std::collections::VecDeque;

use super::{Kernel, KernelError, KernelResult, MarkOrigin, Marks};
use crate::classic::stable_agent_optimal;
use crate::instance::{AgentIdx, Instance};
use crate::matching::Matching;
use crate::optimality::{envy_pairs, feasibility_exists, is_envy_free, is_feasible};

/// Upper bound on the number of edges in an envy-free kernel with stable
/// size `s` and pairwise non-LQ overlap `t`.
pub fn efm_edge_bound(s: usize, t: usize) -> usize {
    s * (s + s.saturating_sub(1) * t + 1) + s * (s + 1)
}

/// Kernel for the maximum envy-free problem.
///
/// With `M_s` the agent-optimal stable matching: `|M_s| < k` is a trivial
/// no (agents unmatched in a stable matching are unmatched in every
/// envy-free matching); a feasible `M_s` is a trivial yes. More LQ
/// resources than `s` is also a trivial no, since every envy-free matching
/// uses at most `s` agents. Otherwise the four marking steps run in order.
pub fn efm_kernelize(inst: &Instance, k: Option<usize>) -> Result<KernelResult, KernelError> {
    if !inst.is_one_one() {
        return Err(KernelError::NotOneOne);
    }
    if !feasibility_exists(inst) {
        return Err(KernelError::NoFeasibleMatching);
    }
    let stable = stable_agent_optimal(inst);
    let s = stable.len();
    if let Some(k) = k {
        if s < k {
            return Ok(KernelResult::TrivialNo(format!(
                "stable matching size {s} is below k = {k}"
            )));
        }
    }
    if is_feasible(inst, &stable) {
        return Ok(KernelResult::TrivialYes(stable));
    }
    let q = inst.lq_resources().count();
    if q > s {
        return Ok(KernelResult::TrivialNo(format!(
            "{q} LQ resources but stable matching size {s}"
        )));
    }

    let in_xa: Vec<bool> = inst.agents().map(|a| stable.is_agent_matched(a)).collect();
    let xa: Vec<AgentIdx> = inst.agents().filter(|a| in_xa[a.0]).collect();
    let mut marks = Marks::new(inst);

    for &a in &xa {
        for &b in inst.agent_prefs(a) {
            if inst.is_lq(b) {
                marks.mark_first(a, b, MarkOrigin::Step1);
            }
        }
    }
    for b in inst.resources().filter(|&b| stable.is_resource_matched(b)) {
        let list = inst.resource_prefs(b);
        for &a in &list[..list.len().min(s + 1)] {
            marks.mark_first(a, b, MarkOrigin::Step2);
        }
    }
    for b in inst.resources().filter(|&b| !inst.is_lq(b)) {
        let shared: Vec<AgentIdx> = inst
            .resource_prefs(b)
            .iter()
            .copied()
            .filter(|a| in_xa[a.0])
            .collect();
        if shared.len() >= 2 {
            for a in shared {
                marks.mark_first(a, b, MarkOrigin::Step3);
            }
        }
    }
    let mut step4 = vec![None; inst.num_agents()];
    for &a in &xa {
        if let Some(&b) = inst.agent_prefs(a).iter().find(|&&b| marks.get(a, b).is_none()) {
            marks.mark_first(a, b, MarkOrigin::Step4);
            step4[a.0] = Some(b);
        }
    }
    Ok(KernelResult::Kernel(marks.finish(stable, step4)))
}

fn require_efm(inst: &Instance, m: &Matching, what: &str) -> Result<(), KernelError> {
    if !is_feasible(inst, m) {
        return Err(KernelError::PreconditionViolated(format!("{what} is infeasible")));
    }
    if !is_envy_free(inst, m) {
        return Err(KernelError::PreconditionViolated(format!("{what} is not envy-free")));
    }
    Ok(())
}

/// Moves a feasible envy-free matching of the original instance into the
/// kernel: every unmarked edge `(a, b)` is replaced by `a`'s step-4 edge.
/// The result has the same size and is feasible and envy-free in the kernel.
pub fn efm_project(
    original: &Instance,
    kernel: &Kernel,
    m: &Matching,
) -> Result<Matching, KernelError> {
    require_efm(original, m, "matching")?;
    let mut moved = Matching::empty(original);
    for (a, b) in m.edges() {
        let target = if kernel.mark(a, b).is_some() {
            b
        } else {
            kernel.step4_resource(a).ok_or_else(|| {
                KernelError::PreconditionViolated(format!(
                    "agent `{}` uses an unmarked edge and has no step-4 edge",
                    original.agent_id(a)
                ))
            })?
        };
        moved.add(original, a, target)?;
    }
    Ok(kernel.to_kernel(&moved).expect("all edges are marked"))
}

/// Moves a feasible envy-free matching of the kernel into the original
/// instance, repairing envy over unmarked edges. Agents that envy start
/// proposing down their original lists; a matched resource accepts a
/// proposer it prefers to its partner, and the displaced partner starts
/// proposing in turn. Unmatched resources refuse, so the size and the set of
/// matched resources are unchanged.
pub fn efm_lift(original: &Instance, kernel: &Kernel, m: &Matching) -> Result<Matching, KernelError> {
    require_efm(kernel.instance(), m, "kernel matching")?;
    let mut m = kernel.to_original(original, m);

    let mut next = vec![None::<usize>; original.num_agents()];
    let mut queue = VecDeque::new();
    for (a, _) in envy_pairs(original, &m) {
        if m.is_agent_matched(a) {
            return Err(KernelError::PreconditionViolated(format!(
                "matched agent `{}` envies in the original instance",
                original.agent_id(a)
            )));
        }
        if next[a.0].is_none() {
            next[a.0] = Some(0);
            queue.push_back(a);
        }
    }

    while let Some(a) = queue.pop_front() {
        let prefs = original.agent_prefs(a);
        let mut pos = next[a.0].expect("queued agents have a pointer");
        while pos < prefs.len() {
            let b = prefs[pos];
            pos += 1;
            let Some(partner) = m.partner(b) else {
                continue;
            };
            if original.resource_prefers(b, Some(a), Some(partner)) {
                m.unassign(partner);
                m.assign(a, b);
                next[partner.0].get_or_insert(0);
                queue.push_back(partner);
                break;
            }
        }
        next[a.0] = Some(pos);
    }
    Ok(m)
}
