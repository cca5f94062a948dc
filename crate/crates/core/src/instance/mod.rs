//! Instance data model: agents, resources, quotas and strict preference lists.

mod clone;
mod format;
mod params;

pub use clone::{clone_to_one_one, CloneMap};
pub use format::{parse_instance, serialize_instance};
pub use params::{compute_params, ParamProfile};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an agent in its instance (order of declaration).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentIdx(pub usize);

/// Index of a resource in its instance (order of declaration).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResourceIdx(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Agent,
    Resource,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Agent => f.write_str("agent"),
            Side::Resource => f.write_str("resource"),
        }
    }
}

/// Quota pair `[lower, upper]` of a resource.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quota {
    pub lower: u32,
    pub upper: u32,
}

impl Quota {
    pub const fn new(lower: u32, upper: u32) -> Self {
        Quota { lower, upper }
    }
}

impl fmt::Display for Quota {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lower, self.upper)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate {side} id `{id}`")]
    DuplicateId { side: Side, id: String },
    #[error("unknown {side} id `{id}`{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    UnknownId {
        side: Side,
        id: String,
        line: Option<usize>,
    },
    #[error("{side} `{owner}` lists `{entry}` more than once")]
    DuplicateEntry {
        side: Side,
        owner: String,
        entry: String,
    },
    #[error("asymmetric edge: `{agent}` and `{resource}` are not mutually acceptable")]
    AsymmetricEdge { agent: String, resource: String },
    #[error("invalid quota [{lower},{upper}] for resource `{resource}`")]
    QuotaViolation {
        resource: String,
        lower: u32,
        upper: u32,
    },
    #[error("invalid id `{0}`")]
    InvalidId(String),
}

/// Per-vertex rank lookup: for each vertex, `(neighbor, 0-based rank)` sorted
/// by neighbor index.
#[derive(Clone, Debug, Default)]
struct RankTable {
    rows: Vec<Vec<(u32, u32)>>,
}

impl RankTable {
    fn build(lists: impl Iterator<Item = impl Iterator<Item = usize>>) -> Self {
        let rows = lists
            .map(|list| {
                let mut row: Vec<(u32, u32)> = list
                    .enumerate()
                    .map(|(rank, v)| (v as u32, rank as u32))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        RankTable { rows }
    }

    #[inline]
    fn get(&self, vertex: usize, neighbor: usize) -> Option<usize> {
        let row = &self.rows[vertex];
        row.binary_search_by_key(&(neighbor as u32), |&(v, _)| v)
            .ok()
            .map(|i| row[i].1 as usize)
    }
}

/// A validated two-sided preference system with quotas.
///
/// Instances are immutable once built. Indices follow declaration order and
/// all tie-breaking in the crate uses that order.
#[derive(Clone, Debug)]
pub struct Instance {
    agent_ids: Vec<String>,
    resource_ids: Vec<String>,
    quotas: Vec<Quota>,
    agent_prefs: Vec<Vec<ResourceIdx>>,
    resource_prefs: Vec<Vec<AgentIdx>>,
    agent_rank: RankTable,
    resource_rank: RankTable,
    agent_lookup: HashMap<String, AgentIdx>,
    resource_lookup: HashMap<String, ResourceIdx>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.agent_ids == other.agent_ids
            && self.resource_ids == other.resource_ids
            && self.quotas == other.quotas
            && self.agent_prefs == other.agent_prefs
            && self.resource_prefs == other.resource_prefs
    }
}

impl Eq for Instance {}

pub(crate) fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && !id
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '[' | ']' | ',' | '#'))
}

impl Instance {
    /// Builds an instance from index-based preference lists, validating every
    /// invariant (unique ids, strict lists, mutual acceptability, quotas).
    pub fn new(
        agent_ids: Vec<String>,
        resource_ids: Vec<String>,
        quotas: Vec<Quota>,
        agent_prefs: Vec<Vec<ResourceIdx>>,
        resource_prefs: Vec<Vec<AgentIdx>>,
    ) -> Result<Self, InstanceError> {
        assert_eq!(agent_ids.len(), agent_prefs.len());
        assert_eq!(resource_ids.len(), resource_prefs.len());
        assert_eq!(resource_ids.len(), quotas.len());

        let mut agent_lookup = HashMap::with_capacity(agent_ids.len());
        for (i, id) in agent_ids.iter().enumerate() {
            if !valid_id(id) {
                return Err(InstanceError::InvalidId(id.clone()));
            }
            if agent_lookup.insert(id.clone(), AgentIdx(i)).is_some() {
                return Err(InstanceError::DuplicateId {
                    side: Side::Agent,
                    id: id.clone(),
                });
            }
        }
        let mut resource_lookup = HashMap::with_capacity(resource_ids.len());
        for (i, id) in resource_ids.iter().enumerate() {
            if !valid_id(id) {
                return Err(InstanceError::InvalidId(id.clone()));
            }
            if resource_lookup.insert(id.clone(), ResourceIdx(i)).is_some() {
                return Err(InstanceError::DuplicateId {
                    side: Side::Resource,
                    id: id.clone(),
                });
            }
        }
        for (b, q) in quotas.iter().enumerate() {
            if q.upper < 1 || q.lower > q.upper {
                return Err(InstanceError::QuotaViolation {
                    resource: resource_ids[b].clone(),
                    lower: q.lower,
                    upper: q.upper,
                });
            }
        }

        let agent_rank = RankTable::build(agent_prefs.iter().map(|l| l.iter().map(|b| b.0)));
        let resource_rank =
            RankTable::build(resource_prefs.iter().map(|l| l.iter().map(|a| a.0)));

        for (a, row) in agent_rank.rows.iter().enumerate() {
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(InstanceError::DuplicateEntry {
                    side: Side::Agent,
                    owner: agent_ids[a].clone(),
                    entry: resource_ids[w[0].0 as usize].clone(),
                });
            }
        }
        for (b, row) in resource_rank.rows.iter().enumerate() {
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(InstanceError::DuplicateEntry {
                    side: Side::Resource,
                    owner: resource_ids[b].clone(),
                    entry: agent_ids[w[0].0 as usize].clone(),
                });
            }
        }

        let inst = Instance {
            agent_ids,
            resource_ids,
            quotas,
            agent_prefs,
            resource_prefs,
            agent_rank,
            resource_rank,
            agent_lookup,
            resource_lookup,
        };

        for a in inst.agents() {
            for &b in inst.agent_prefs(a) {
                if inst.resource_rank(b, a).is_none() {
                    return Err(inst.asymmetric(a, b));
                }
            }
        }
        for b in inst.resources() {
            for &a in inst.resource_prefs(b) {
                if inst.agent_rank(a, b).is_none() {
                    return Err(inst.asymmetric(a, b));
                }
            }
        }
        Ok(inst)
    }

    fn asymmetric(&self, a: AgentIdx, b: ResourceIdx) -> InstanceError {
        InstanceError::AsymmetricEdge {
            agent: self.agent_id(a).to_owned(),
            resource: self.resource_id(b).to_owned(),
        }
    }

    pub fn empty() -> Self {
        Instance::new(vec![], vec![], vec![], vec![], vec![]).expect("empty instance is valid")
    }

    pub fn num_agents(&self) -> usize {
        self.agent_ids.len()
    }

    pub fn num_resources(&self) -> usize {
        self.resource_ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.agent_prefs.iter().map(Vec::len).sum()
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentIdx> + Clone {
        (0..self.num_agents()).map(AgentIdx)
    }

    pub fn resources(&self) -> impl Iterator<Item = ResourceIdx> + Clone {
        (0..self.num_resources()).map(ResourceIdx)
    }

    /// All edges, ordered by agent index then by the agent's preference.
    pub fn edges(&self) -> impl Iterator<Item = (AgentIdx, ResourceIdx)> + '_ {
        self.agents()
            .flat_map(move |a| self.agent_prefs(a).iter().map(move |&b| (a, b)))
    }

    pub fn agent_id(&self, a: AgentIdx) -> &str {
        &self.agent_ids[a.0]
    }

    pub fn resource_id(&self, b: ResourceIdx) -> &str {
        &self.resource_ids[b.0]
    }

    pub fn agent_by_id(&self, id: &str) -> Option<AgentIdx> {
        self.agent_lookup.get(id).copied()
    }

    pub fn resource_by_id(&self, id: &str) -> Option<ResourceIdx> {
        self.resource_lookup.get(id).copied()
    }

    pub fn quota(&self, b: ResourceIdx) -> Quota {
        self.quotas[b.0]
    }

    pub fn lower(&self, b: ResourceIdx) -> usize {
        self.quotas[b.0].lower as usize
    }

    pub fn upper(&self, b: ResourceIdx) -> usize {
        self.quotas[b.0].upper as usize
    }

    /// A resource with positive lower quota.
    pub fn is_lq(&self, b: ResourceIdx) -> bool {
        self.quotas[b.0].lower > 0
    }

    pub fn lq_resources(&self) -> impl Iterator<Item = ResourceIdx> + '_ {
        self.resources().filter(move |&b| self.is_lq(b))
    }

    /// Every resource has upper quota 1.
    pub fn is_one_one(&self) -> bool {
        self.quotas.iter().all(|q| q.upper == 1)
    }

    pub fn agent_prefs(&self, a: AgentIdx) -> &[ResourceIdx] {
        &self.agent_prefs[a.0]
    }

    pub fn resource_prefs(&self, b: ResourceIdx) -> &[AgentIdx] {
        &self.resource_prefs[b.0]
    }

    /// 0-based position of `b` in `a`'s list.
    #[inline]
    pub fn agent_rank(&self, a: AgentIdx, b: ResourceIdx) -> Option<usize> {
        self.agent_rank.get(a.0, b.0)
    }

    /// 0-based position of `a` in `b`'s list.
    #[inline]
    pub fn resource_rank(&self, b: ResourceIdx, a: AgentIdx) -> Option<usize> {
        self.resource_rank.get(b.0, a.0)
    }

    pub fn has_edge(&self, a: AgentIdx, b: ResourceIdx) -> bool {
        self.agent_rank(a, b).is_some()
    }

    /// `x ≻_a y`, with `None` (unmatched) least preferred.
    #[inline]
    pub fn agent_prefers(&self, a: AgentIdx, x: Option<ResourceIdx>, y: Option<ResourceIdx>) -> bool {
        let rx = x.and_then(|b| self.agent_rank(a, b)).unwrap_or(usize::MAX);
        let ry = y.and_then(|b| self.agent_rank(a, b)).unwrap_or(usize::MAX);
        rx < ry
    }

    /// `x ≻_b y`, with `None` (unmatched) least preferred.
    #[inline]
    pub fn resource_prefers(&self, b: ResourceIdx, x: Option<AgentIdx>, y: Option<AgentIdx>) -> bool {
        let rx = x.and_then(|a| self.resource_rank(b, a)).unwrap_or(usize::MAX);
        let ry = y.and_then(|a| self.resource_rank(b, a)).unwrap_or(usize::MAX);
        rx < ry
    }

    /// Subgraph spanned by the edges accepted by `keep`, with relative
    /// preference orders preserved and isolated vertices dropped. `quota`
    /// maps each surviving resource's quota.
    pub fn restrict(
        &self,
        mut keep: impl FnMut(AgentIdx, ResourceIdx) -> bool,
        mut quota: impl FnMut(ResourceIdx, Quota) -> Quota,
    ) -> SubInstance {
        let mut kept_agent: Vec<Vec<ResourceIdx>> = vec![Vec::new(); self.num_agents()];
        let mut resource_used = vec![false; self.num_resources()];
        for (a, b) in self.edges() {
            if keep(a, b) {
                kept_agent[a.0].push(b);
                resource_used[b.0] = true;
            }
        }
        let agent_map: Vec<AgentIdx> = self
            .agents()
            .filter(|a| !kept_agent[a.0].is_empty())
            .collect();
        let resource_map: Vec<ResourceIdx> =
            self.resources().filter(|b| resource_used[b.0]).collect();
        let mut agent_back = vec![usize::MAX; self.num_agents()];
        for (i, a) in agent_map.iter().enumerate() {
            agent_back[a.0] = i;
        }
        let mut resource_back = vec![usize::MAX; self.num_resources()];
        for (i, b) in resource_map.iter().enumerate() {
            resource_back[b.0] = i;
        }

        let agent_prefs = agent_map
            .iter()
            .map(|a| {
                kept_agent[a.0]
                    .iter()
                    .map(|b| ResourceIdx(resource_back[b.0]))
                    .collect()
            })
            .collect();
        let resource_prefs = resource_map
            .iter()
            .map(|&b| {
                self.resource_prefs(b)
                    .iter()
                    .filter(|a| {
                        agent_back[a.0] != usize::MAX && kept_agent[a.0].contains(&b)
                    })
                    .map(|a| AgentIdx(agent_back[a.0]))
                    .collect()
            })
            .collect();
        let inst = Instance::new(
            agent_map.iter().map(|&a| self.agent_id(a).to_owned()).collect(),
            resource_map
                .iter()
                .map(|&b| self.resource_id(b).to_owned())
                .collect(),
            resource_map.iter().map(|&b| quota(b, self.quota(b))).collect(),
            agent_prefs,
            resource_prefs,
        )
        .expect("restriction of a valid instance is valid");
        SubInstance {
            inst,
            agent_map,
            resource_map,
            agent_back,
            resource_back,
        }
    }
}

/// An instance derived from a parent by deleting edges, with index maps in
/// both directions.
#[derive(Clone, Debug)]
pub struct SubInstance {
    pub inst: Instance,
    /// sub index -> parent index
    pub agent_map: Vec<AgentIdx>,
    pub resource_map: Vec<ResourceIdx>,
    agent_back: Vec<usize>,
    resource_back: Vec<usize>,
}

impl SubInstance {
    pub fn to_parent_agent(&self, a: AgentIdx) -> AgentIdx {
        self.agent_map[a.0]
    }

    pub fn to_parent_resource(&self, b: ResourceIdx) -> ResourceIdx {
        self.resource_map[b.0]
    }

    pub fn from_parent_agent(&self, a: AgentIdx) -> Option<AgentIdx> {
        let i = self.agent_back[a.0];
        (i != usize::MAX).then_some(AgentIdx(i))
    }

    pub fn from_parent_resource(&self, b: ResourceIdx) -> Option<ResourceIdx> {
        let i = self.resource_back[b.0];
        (i != usize::MAX).then_some(ResourceIdx(i))
    }
}

/// Id-based instance construction. Agents and resources are indexed in the
/// order they are added.
#[derive(Default, Debug, Clone)]
pub struct InstanceBuilder {
    agents: Vec<(String, Vec<String>)>,
    resources: Vec<(String, Quota, Vec<String>)>,
    lines: (Vec<Option<usize>>, Vec<Option<usize>>),
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn agent<I, S>(&mut self, id: impl Into<String>, prefs: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.agents
            .push((id.into(), prefs.into_iter().map(Into::into).collect()));
        self.lines.0.push(None);
        self
    }

    pub fn resource<I, S>(&mut self, id: impl Into<String>, quota: Quota, prefs: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.resources
            .push((id.into(), quota, prefs.into_iter().map(Into::into).collect()));
        self.lines.1.push(None);
        self
    }

    pub(crate) fn set_last_agent_line(&mut self, line: usize) {
        if let Some(l) = self.lines.0.last_mut() {
            *l = Some(line);
        }
    }

    pub(crate) fn set_last_resource_line(&mut self, line: usize) {
        if let Some(l) = self.lines.1.last_mut() {
            *l = Some(line);
        }
    }

    pub fn build(&self) -> Result<Instance, InstanceError> {
        let mut agent_lookup = HashMap::new();
        for (i, (id, _)) in self.agents.iter().enumerate() {
            if agent_lookup.insert(id.as_str(), AgentIdx(i)).is_some() {
                return Err(InstanceError::DuplicateId {
                    side: Side::Agent,
                    id: id.clone(),
                });
            }
        }
        let mut resource_lookup = HashMap::new();
        for (i, (id, _, _)) in self.resources.iter().enumerate() {
            if resource_lookup.insert(id.as_str(), ResourceIdx(i)).is_some() {
                return Err(InstanceError::DuplicateId {
                    side: Side::Resource,
                    id: id.clone(),
                });
            }
        }
        let agent_prefs = self
            .agents
            .iter()
            .zip(&self.lines.0)
            .map(|((_, prefs), line)| {
                prefs
                    .iter()
                    .map(|r| {
                        resource_lookup.get(r.as_str()).copied().ok_or_else(|| {
                            InstanceError::UnknownId {
                                side: Side::Resource,
                                id: r.clone(),
                                line: *line,
                            }
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let resource_prefs = self
            .resources
            .iter()
            .zip(&self.lines.1)
            .map(|((_, _, prefs), line)| {
                prefs
                    .iter()
                    .map(|a| {
                        agent_lookup.get(a.as_str()).copied().ok_or_else(|| {
                            InstanceError::UnknownId {
                                side: Side::Agent,
                                id: a.clone(),
                                line: *line,
                            }
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(
            self.agents.iter().map(|(id, _)| id.clone()).collect(),
            self.resources.iter().map(|(id, _, _)| id.clone()).collect(),
            self.resources.iter().map(|(_, q, _)| *q).collect(),
            agent_prefs,
            resource_prefs,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Instance {
        let mut b = InstanceBuilder::new();
        b.agent("a1", ["b1", "b2"])
            .agent("a2", ["b1"])
            .resource("b1", Quota::new(0, 1), ["a1", "a2"])
            .resource("b2", Quota::new(1, 1), ["a1"]);
        b.build().unwrap()
    }

    #[test]
    fn ranks_and_preferences() {
        let inst = fig1();
        let (a1, a2) = (AgentIdx(0), AgentIdx(1));
        let (b1, b2) = (ResourceIdx(0), ResourceIdx(1));
        assert_eq!(inst.agent_rank(a1, b2), Some(1));
        assert_eq!(inst.agent_rank(a2, b2), None);
        assert!(inst.agent_prefers(a1, Some(b1), Some(b2)));
        assert!(inst.agent_prefers(a1, Some(b2), None));
        assert!(!inst.agent_prefers(a1, None, None));
        assert!(inst.resource_prefers(b1, Some(a1), Some(a2)));
        assert_eq!(inst.num_edges(), 3);
        assert!(inst.is_one_one());
        assert_eq!(inst.lq_resources().collect::<Vec<_>>(), vec![b2]);
    }

    #[test]
    fn rejects_bad_quota() {
        let mut b = InstanceBuilder::new();
        b.resource("b", Quota::new(2, 1), Vec::<String>::new());
        assert!(matches!(b.build(), Err(InstanceError::QuotaViolation { .. })));
        let mut b = InstanceBuilder::new();
        b.resource("b", Quota::new(0, 0), Vec::<String>::new());
        assert!(matches!(b.build(), Err(InstanceError::QuotaViolation { .. })));
    }

    #[test]
    fn rejects_duplicates_and_asymmetry() {
        let mut b = InstanceBuilder::new();
        b.agent("a", ["r", "r"]).resource("r", Quota::new(0, 1), ["a"]);
        assert!(matches!(b.build(), Err(InstanceError::DuplicateEntry { .. })));

        let mut b = InstanceBuilder::new();
        b.agent("a", ["r"]).resource("r", Quota::new(0, 1), Vec::<String>::new());
        assert!(matches!(b.build(), Err(InstanceError::AsymmetricEdge { .. })));

        let mut b = InstanceBuilder::new();
        b.agent("a", Vec::<String>::new()).agent("a", Vec::<String>::new());
        assert!(matches!(b.build(), Err(InstanceError::DuplicateId { .. })));
    }

    #[test]
    fn restrict_keeps_relative_order_and_drops_isolated() {
        let inst = fig1();
        let sub = inst.restrict(|_, b| b == ResourceIdx(0), |_, q| q);
        assert_eq!(sub.inst.num_resources(), 1);
        assert_eq!(sub.inst.num_agents(), 2);
        assert_eq!(sub.inst.resource_id(ResourceIdx(0)), "b1");
        assert_eq!(sub.from_parent_resource(ResourceIdx(1)), None);
        assert_eq!(
            sub.inst.resource_prefs(ResourceIdx(0)),
            &[AgentIdx(0), AgentIdx(1)]
        );

        let sub = inst.restrict(|a, _| a == AgentIdx(0), |_, q| Quota::new(0, q.upper));
        assert_eq!(sub.inst.num_agents(), 1);
        assert!(sub.inst.lq_resources().next().is_none());
        assert_eq!(sub.to_parent_resource(ResourceIdx(1)), ResourceIdx(1));
    }
}
