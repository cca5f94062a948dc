use super::FptError;
use crate::classic::agent_proposing;
use crate::instance::{AgentIdx, Instance, ResourceIdx, SubInstance};
use crate::matching::Matching;

/// Threshold agent of an unmatched resource `b`: the agent `b` likes best
/// among matched agents that prefer `b` to their partner, or a dummy agent
/// ranked below everyone when there is none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Threshold {
    /// `rank` is 1-based in `b`'s list.
    Agent { agent: AgentIdx, rank: usize },
    Dummy,
}

impl Threshold {
    /// Whether `b` strictly prefers `a` to this threshold.
    pub fn admits(self, inst: &Instance, b: ResourceIdx, a: AgentIdx) -> bool {
        match (self, inst.resource_rank(b, a)) {
            (_, None) => false,
            (Threshold::Dummy, Some(_)) => true,
            (Threshold::Agent { rank, .. }, Some(r)) => r + 1 < rank,
        }
    }
}

/// Thresholds of the resources left unmatched by a matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdMap {
    entries: Vec<Option<Threshold>>,
}

impl ThresholdMap {
    /// `None` for resources that are matched.
    pub fn get(&self, b: ResourceIdx) -> Option<Threshold> {
        self.entries[b.0]
    }

    pub fn iter(&self) -> impl Iterator<Item = (ResourceIdx, Threshold)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(b, t)| t.map(|t| (ResourceIdx(b), t)))
    }
}

pub fn threshold_agents(inst: &Instance, m: &Matching) -> ThresholdMap {
    let entries = inst
        .resources()
        .map(|b| {
            if m.is_resource_matched(b) {
                return None;
            }
            let found = inst.resource_prefs(b).iter().enumerate().find(|&(_, &a)| {
                m.is_agent_matched(a) && inst.agent_prefers(a, Some(b), m.resource_of(a))
            });
            Some(match found {
                Some((r, &agent)) => Threshold::Agent { agent, rank: r + 1 },
                None => Threshold::Dummy,
            })
        })
        .collect();
    ThresholdMap { entries }
}

fn check_minimal_feasible(inst: &Instance, m: &Matching) -> Result<(), FptError> {
    if !inst.is_one_one() {
        return Err(FptError::NotOneOne);
    }
    if inst.resources().all(|b| m.assignees(b).len() == inst.lower(b)) {
        Ok(())
    } else {
        Err(FptError::NotMinimalFeasible)
    }
}

/// The graph on agents and resources unmatched by `m`, keeping the edges
/// `(a, b)` where `b` prefers `a` to its threshold.
pub fn extension_graph(inst: &Instance, m: &Matching) -> SubInstance {
    let thresholds = threshold_agents(inst, m);
    inst.restrict(
        |a, b| {
            !m.is_agent_matched(a)
                && thresholds.get(b).is_some_and(|t| t.admits(inst, b, a))
        },
        |_, q| q,
    )
}

/// `m` together with the agent-optimal stable matching of its extension
/// graph. If the result is envy-free it is a largest envy-free matching
/// containing `m`.
pub fn extend(inst: &Instance, m: &Matching) -> Result<Matching, FptError> {
    check_minimal_feasible(inst, m)?;
    Ok(extend_unchecked(inst, m))
}

pub(crate) fn extend_unchecked(inst: &Instance, m: &Matching) -> Matching {
    let thresholds = threshold_agents(inst, m);
    let extra = agent_proposing(
        inst,
        |a, b| !m.is_agent_matched(a) && thresholds.get(b).is_some_and(|t| t.admits(inst, b, a)),
        |b| if m.is_resource_matched(b) { 0 } else { inst.upper(b) },
    );
    let mut out = m.clone();
    for (a, b) in extra.edges() {
        out.assign(a, b);
    }
    out
}
