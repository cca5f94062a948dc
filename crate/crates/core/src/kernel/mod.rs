//! Kernelization for the maximum envy-free and maximum relaxed-stable
//! matching problems on ONE-ONE instances, and the procedures that move
//! envy-free solutions between an instance and its kernel.
//!
//! Both kernels start from the agent-optimal stable matching `M_s` of size
//! `s`. Its matched agents `X_A` and matched resources `X_B` form a vertex
//! cover; every other vertex is left alone except through edges that a
//! cover vertex marks. The kernel is the subgraph spanned by marked edges.

mod efm;
mod rsm;

pub use efm::{efm_edge_bound, efm_kernelize, efm_lift, efm_project};
pub use rsm::rsm_kernelize;

use std::fmt;
use std::fmt::Write;

use thiserror::Error;

use crate::instance::{AgentIdx, Instance, ResourceIdx, SubInstance};
use crate::matching::{Matching, MatchingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("instance is not ONE-ONE (some upper quota exceeds 1)")]
    NotOneOne,
    #[error("no feasible matching exists")]
    NoFeasibleMatching,
    #[error("the stable matching is infeasible")]
    StableInfeasible,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

impl From<MatchingError> for KernelError {
    fn from(e: MatchingError) -> Self {
        KernelError::PreconditionViolated(e.to_string())
    }
}

/// Why an edge is in the kernel. The envy-free scheme records the first step
/// that marked the edge; the relaxed-stable scheme records which endpoints
/// marked it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkOrigin {
    /// Edge from a cover agent to an LQ resource.
    Step1,
    /// Among the top `min(s+1, ℓ(b))` edges of a cover resource.
    Step2,
    /// Non-LQ resource shared by two or more cover agents.
    Step3,
    /// Best edge of a cover agent left unmarked by steps 1 to 3.
    Step4,
    AgentSide,
    ResourceSide,
    BothSides,
}

impl MarkOrigin {
    pub fn as_str(self) -> &'static str {
        match self {
            MarkOrigin::Step1 => "step1",
            MarkOrigin::Step2 => "step2",
            MarkOrigin::Step3 => "step3",
            MarkOrigin::Step4 => "step4",
            MarkOrigin::AgentSide => "agent-side",
            MarkOrigin::ResourceSide => "resource-side",
            MarkOrigin::BothSides => "both-sides",
        }
    }

    pub fn by_agent(self) -> bool {
        matches!(self, MarkOrigin::AgentSide | MarkOrigin::BothSides)
    }

    pub fn by_resource(self) -> bool {
        matches!(self, MarkOrigin::ResourceSide | MarkOrigin::BothSides)
    }
}

impl fmt::Display for MarkOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A reduced instance together with how it was obtained. All vertex indices
/// outside `reduced.inst` refer to the original instance.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub reduced: SubInstance,
    /// Marked edges sorted by (agent, resource).
    pub marks: Vec<(AgentIdx, ResourceIdx, MarkOrigin)>,
    pub stable: Matching,
    pub cover_agents: Vec<AgentIdx>,
    pub cover_resources: Vec<ResourceIdx>,
    step4: Vec<Option<ResourceIdx>>,
}

impl Kernel {
    pub fn instance(&self) -> &Instance {
        &self.reduced.inst
    }

    pub fn s(&self) -> usize {
        self.stable.len()
    }

    pub fn num_edges(&self) -> usize {
        self.marks.len()
    }

    pub fn mark(&self, a: AgentIdx, b: ResourceIdx) -> Option<MarkOrigin> {
        self.marks
            .binary_search_by(|&(x, y, _)| (x, y).cmp(&(a, b)))
            .ok()
            .map(|i| self.marks[i].2)
    }

    /// Resource of `a`'s step-4 edge in the envy-free kernel.
    pub fn step4_resource(&self, a: AgentIdx) -> Option<ResourceIdx> {
        self.step4.get(a.0).copied().flatten()
    }

    /// Re-expresses a kernel matching in the original instance.
    pub fn to_original(&self, original: &Instance, m: &Matching) -> Matching {
        let mut out = Matching::empty(original);
        for (a, b) in m.edges() {
            out.assign(self.reduced.to_parent_agent(a), self.reduced.to_parent_resource(b));
        }
        out
    }

    /// Re-expresses an original matching in the kernel, if all its edges are marked.
    pub fn to_kernel(&self, m: &Matching) -> Option<Matching> {
        let mut out = Matching::empty(self.instance());
        for (a, b) in m.edges() {
            self.mark(a, b)?;
            out.assign(
                self.reduced.from_parent_agent(a)?,
                self.reduced.from_parent_resource(b)?,
            );
        }
        Some(out)
    }

    /// `<agent> <resource> <origin>` lines in edge order.
    pub fn marks_text(&self, original: &Instance) -> String {
        let mut out = String::new();
        for &(a, b, o) in &self.marks {
            writeln!(out, "{} {} {}", original.agent_id(a), original.resource_id(b), o).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum KernelResult {
    TrivialYes(Matching),
    TrivialNo(String),
    Kernel(Kernel),
}

impl KernelResult {
    pub fn kernel(&self) -> Option<&Kernel> {
        match self {
            KernelResult::Kernel(k) => Some(k),
            _ => None,
        }
    }
}

/// Per-agent mark table indexed by position in the agent's list.
struct Marks<'a> {
    inst: &'a Instance,
    table: Vec<Vec<Option<MarkOrigin>>>,
}

impl<'a> Marks<'a> {
    fn new(inst: &'a Instance) -> Self {
        Marks {
            inst,
            table: inst.agents().map(|a| vec![None; inst.agent_prefs(a).len()]).collect(),
        }
    }

    fn slot(&mut self, a: AgentIdx, b: ResourceIdx) -> &mut Option<MarkOrigin> {
        let r = self.inst.agent_rank(a, b).expect("marked pair is an edge");
        &mut self.table[a.0][r]
    }

    fn get(&self, a: AgentIdx, b: ResourceIdx) -> Option<MarkOrigin> {
        self.table[a.0][self.inst.agent_rank(a, b)?]
    }

    /// Marks only if unmarked.
    fn mark_first(&mut self, a: AgentIdx, b: ResourceIdx, origin: MarkOrigin) {
        self.slot(a, b).get_or_insert(origin);
    }

    fn finish(
        self,
        stable: Matching,
        step4: Vec<Option<ResourceIdx>>,
    ) -> Kernel {
        let inst = self.inst;
        let reduced = inst.restrict(|a, b| self.get(a, b).is_some(), |_, q| q);
        let mut marks: Vec<_> = inst
            .edges()
            .filter_map(|(a, b)| self.get(a, b).map(|o| (a, b, o)))
            .collect();
        marks.sort_unstable_by_key(|&(a, b, _)| (a, b));
        let cover_agents = inst.agents().filter(|&a| stable.is_agent_matched(a)).collect();
        let cover_resources = inst.resources().filter(|&b| stable.is_resource_matched(b)).collect();
        Kernel {
            reduced,
            marks,
            stable,
            cover_agents,
            cover_resources,
            step4,
        }
    }
}
