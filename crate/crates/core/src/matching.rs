//! Matchings: sets of agent-resource edges respecting upper quotas.

use std::fmt::Write;

use thiserror::Error;

use crate::instance::{AgentIdx, Instance, ResourceIdx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge ({agent}, {resource}) is not in the instance")]
    EdgeNotInInstance { agent: String, resource: String },
    #[error("agent `{0}` is matched more than once")]
    AgentAlreadyMatched(String),
    #[error("resource `{0}` exceeds its upper quota")]
    OverCapacity(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown resource `{0}`")]
    UnknownResource(String),
    #[error("line {line}: expected `<agent-id> <resource-id>`")]
    Syntax { line: usize },
}

/// A matching in a specific instance. Indices refer to that instance; use
/// [`Matching::transfer`] to move a matching between related instances.
///
/// Each resource's assignee list is kept sorted by agent index, so equality
/// is equality of edge sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    of_agent: Vec<Option<ResourceIdx>>,
    of_resource: Vec<Vec<AgentIdx>>,
    size: usize,
}

impl Matching {
    pub fn empty(inst: &Instance) -> Self {
        Matching {
            of_agent: vec![None; inst.num_agents()],
            of_resource: vec![Vec::new(); inst.num_resources()],
            size: 0,
        }
    }

    /// Builds a matching, checking edges and capacities.
    pub fn from_pairs(
        inst: &Instance,
        pairs: impl IntoIterator<Item = (AgentIdx, ResourceIdx)>,
    ) -> Result<Self, MatchingError> {
        let mut m = Matching::empty(inst);
        for (a, b) in pairs {
            m.add(inst, a, b)?;
        }
        Ok(m)
    }

    /// Id-based variant of [`Matching::from_pairs`].
    pub fn from_id_pairs<'s>(
        inst: &Instance,
        pairs: impl IntoIterator<Item = (&'s str, &'s str)>,
    ) -> Result<Self, MatchingError> {
        let mut m = Matching::empty(inst);
        for (a, b) in pairs {
            let ai = inst
                .agent_by_id(a)
                .ok_or_else(|| MatchingError::UnknownAgent(a.to_owned()))?;
            let bi = inst
                .resource_by_id(b)
                .ok_or_else(|| MatchingError::UnknownResource(b.to_owned()))?;
            m.add(inst, ai, bi)?;
        }
        Ok(m)
    }

    /// Adds edge `(a, b)`.
    pub fn add(&mut self, inst: &Instance, a: AgentIdx, b: ResourceIdx) -> Result<(), MatchingError> {
        if a.0 >= inst.num_agents() || b.0 >= inst.num_resources() || !inst.has_edge(a, b) {
            return Err(MatchingError::EdgeNotInInstance {
                agent: inst
                    .agents()
                    .nth(a.0)
                    .map(|a| inst.agent_id(a).to_owned())
                    .unwrap_or_else(|| format!("#{}", a.0)),
                resource: inst
                    .resources()
                    .nth(b.0)
                    .map(|b| inst.resource_id(b).to_owned())
                    .unwrap_or_else(|| format!("#{}", b.0)),
            });
        }
        if self.of_agent[a.0].is_some() {
            return Err(MatchingError::AgentAlreadyMatched(inst.agent_id(a).to_owned()));
        }
        if self.of_resource[b.0].len() >= inst.upper(b) {
            return Err(MatchingError::OverCapacity(inst.resource_id(b).to_owned()));
        }
        self.assign(a, b);
        Ok(())
    }

    /// Unchecked insertion for algorithms that maintain validity themselves.
    pub(crate) fn assign(&mut self, a: AgentIdx, b: ResourceIdx) {
        debug_assert!(self.of_agent[a.0].is_none());
        self.of_agent[a.0] = Some(b);
        let list = &mut self.of_resource[b.0];
        let pos = list.partition_point(|&x| x < a);
        list.insert(pos, a);
        self.size += 1;
    }

    /// Removes agent `a`'s edge, returning the resource it held.
    pub fn unassign(&mut self, a: AgentIdx) -> Option<ResourceIdx> {
        let b = self.of_agent[a.0].take()?;
        self.of_resource[b.0].retain(|&x| x != a);
        self.size -= 1;
        Some(b)
    }

    /// `M(a)`; `None` is the unmatched sentinel.
    #[inline]
    pub fn resource_of(&self, a: AgentIdx) -> Option<ResourceIdx> {
        self.of_agent[a.0]
    }

    /// `M(b)` as a set, sorted by agent index.
    #[inline]
    pub fn assignees(&self, b: ResourceIdx) -> &[AgentIdx] {
        &self.of_resource[b.0]
    }

    /// First assignee of `b`; the unique one in ONE-ONE instances.
    #[inline]
    pub fn partner(&self, b: ResourceIdx) -> Option<AgentIdx> {
        self.of_resource[b.0].first().copied()
    }

    pub fn is_agent_matched(&self, a: AgentIdx) -> bool {
        self.of_agent[a.0].is_some()
    }

    pub fn is_resource_matched(&self, b: ResourceIdx) -> bool {
        !self.of_resource[b.0].is_empty()
    }

    pub fn contains(&self, a: AgentIdx, b: ResourceIdx) -> bool {
        self.of_agent[a.0] == Some(b)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Edges sorted by agent index.
    pub fn edges(&self) -> impl Iterator<Item = (AgentIdx, ResourceIdx)> + '_ {
        self.of_agent
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (AgentIdx(a), b)))
    }

    /// Edge list as `(agent index, resource index)` pairs, the tie-break key.
    pub fn edge_key(&self) -> Vec<(usize, usize)> {
        self.edges().map(|(a, b)| (a.0, b.0)).collect()
    }

    /// Larger size wins; equal sizes prefer the lexicographically smaller edge list.
    pub fn better_than(&self, other: &Matching) -> bool {
        self.len() > other.len() || (self.len() == other.len() && self.edge_key() < other.edge_key())
    }

    /// Re-expresses this matching (of `from`) in instance `to` by ids.
    pub fn transfer(&self, from: &Instance, to: &Instance) -> Result<Matching, MatchingError> {
        Matching::from_id_pairs(
            to,
            self.edges()
                .map(|(a, b)| (from.agent_id(a), from.resource_id(b))),
        )
    }

    /// Parses `<agent-id> <resource-id>` lines (blank lines and `#` comments allowed).
    pub fn parse(inst: &Instance, text: &str) -> Result<Matching, MatchingError> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut toks = content.split_whitespace();
            match (toks.next(), toks.next(), toks.next()) {
                (Some(a), Some(b), None) => pairs.push((a, b)),
                _ => return Err(MatchingError::Syntax { line: i + 1 }),
            }
        }
        Matching::from_id_pairs(inst, pairs)
    }

    /// One `<agent-id> <resource-id>` line per edge, by agent index.
    pub fn to_text(&self, inst: &Instance) -> String {
        let mut out = String::new();
        for (a, b) in self.edges() {
            writeln!(out, "{} {}", inst.agent_id(a), inst.resource_id(b)).unwrap();
        }
        out
    }

    pub fn id_pairs<'i>(&self, inst: &'i Instance) -> Vec<(&'i str, &'i str)> {
        self.edges()
            .map(|(a, b)| (inst.agent_id(a), inst.resource_id(b)))
            .collect()
    }
}
