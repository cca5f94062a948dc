use super::{KernelError, KernelResult, MarkOrigin, Marks};
use crate::classic::stable_agent_optimal;
use crate::instance::Instance;
use crate::optimality::is_feasible;

/// Kernel for the maximum relaxed-stable problem, for instances whose
/// stable matching is feasible.
///
/// `k ≤ s` is a trivial yes (the stable matching); `k > 2s` is a trivial no,
/// since every relaxed-stable matching is at most twice a maximal matching.
/// Otherwise each cover vertex `v` marks its top `min(2s+1, ℓ(v))` edges.
pub fn rsm_kernelize(inst: &Instance, k: usize) -> Result<KernelResult, KernelError> {
    if !inst.is_one_one() {
        return Err(KernelError::NotOneOne);
    }
    let stable = stable_agent_optimal(inst);
    if !is_feasible(inst, &stable) {
        return Err(KernelError::StableInfeasible);
    }
    let s = stable.len();
    if k <= s {
        return Ok(KernelResult::TrivialYes(stable));
    }
    if k > 2 * s {
        return Ok(KernelResult::TrivialNo(format!(
            "k = {k} exceeds twice the stable matching size {s}"
        )));
    }

    let w = 2 * s + 1;
    let mut marks = Marks::new(inst);
    for a in inst.agents().filter(|&a| stable.is_agent_matched(a)) {
        let list = inst.agent_prefs(a);
        for &b in &list[..list.len().min(w)] {
            marks.mark_first(a, b, MarkOrigin::AgentSide);
        }
    }
    for b in inst.resources().filter(|&b| stable.is_resource_matched(b)) {
        let list = inst.resource_prefs(b);
        for &a in &list[..list.len().min(w)] {
            let slot = marks.slot(a, b);
            *slot = Some(match slot {
                Some(MarkOrigin::AgentSide) => MarkOrigin::BothSides,
                _ => MarkOrigin::ResourceSide,
            });
        }
    }
    let step4 = vec![None; inst.num_agents()];
    Ok(KernelResult::Kernel(marks.finish(stable, step4)))
}
