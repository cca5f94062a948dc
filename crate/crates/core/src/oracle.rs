//! Exhaustive solvers used as ground truth on small instances.
//!
//! Matchings are enumerated by backtracking over agents in index order; each
//! agent tries its acceptable resources by ascending resource index and then
//! stays unmatched. That order visits matchings in lexicographic order of
//! their sorted edge lists, so the first maximum found is the
//! lexicographically smallest one.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::gen::SimpleGraph;
use crate::instance::{AgentIdx, Instance, ResourceIdx};
use crate::matching::Matching;
use crate::optimality::{is_feasible, is_relaxed_stable};

pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {vertices} vertices, above the oracle cap of {cap}")]
    CapExceeded { vertices: usize, cap: usize },
}

fn check_cap(inst: &Instance, cap: usize) -> Result<(), OracleError> {
    let vertices = inst.num_agents() + inst.num_resources();
    if vertices > cap {
        Err(OracleError::CapExceeded { vertices, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    All,
    EnvyFree,
    RelaxedStable,
}

struct Search<'a> {
    inst: &'a Instance,
    goal: Goal,
    options: Vec<Vec<ResourceIdx>>,
    m: Matching,
    /// Σ_b max(0, lower(b) - |M(b)|)
    shortfall: usize,
    /// Only matchings of at least this size are accepted.
    floor: usize,
    best: Option<Matching>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, goal: Goal) -> Self {
        let options = inst
            .agents()
            .map(|a| {
                let mut o = inst.agent_prefs(a).to_vec();
                o.sort_unstable();
                o
            })
            .collect();
        let shortfall = inst.resources().map(|b| inst.lower(b)).sum();
        Search {
            inst,
            goal,
            options,
            m: Matching::empty(inst),
            shortfall,
            floor: 0,
            best: None,
        }
    }

    /// Envy between the newly decided agent `i` and every earlier agent.
    fn envy_with_earlier(&self, i: AgentIdx) -> bool {
        let inst = self.inst;
        let mine = self.m.resource_of(i);
        let prefs = inst.agent_prefs(i);
        let better = mine.map_or(prefs.len(), |b| inst.agent_rank(i, b).unwrap());
        for &b in &prefs[..better] {
            if self
                .m
                .assignees(b)
                .iter()
                .any(|&j| inst.resource_prefers(b, Some(i), Some(j)))
            {
                return true;
            }
        }
        if let Some(b) = mine {
            let my_rank = inst.resource_rank(b, i).unwrap();
            for &j in &inst.resource_prefs(b)[..my_rank] {
                if j < i && inst.agent_prefers(j, Some(b), self.m.resource_of(j)) {
                    return true;
                }
            }
        }
        false
    }

    fn search(
        &mut self,
        i: usize,
        visit: &mut dyn FnMut(&Matching) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.inst.num_agents();
        if self.goal != Goal::All {
            if self.shortfall > n - i || self.m.len() + (n - i) < self.floor {
                return ControlFlow::Continue(());
            }
            // only strictly larger matchings can replace the incumbent
            if let Some(best) = &self.best {
                if self.m.len() + (n - i) <= best.len() {
                    return ControlFlow::Continue(());
                }
            }
        }
        if i == n {
            return self.leaf(visit);
        }
        let a = AgentIdx(i);
        for k in 0..self.options[i].len() {
            let b = self.options[i][k];
            if self.m.assignees(b).len() >= self.inst.upper(b) {
                continue;
            }
            let fills = self.m.assignees(b).len() < self.inst.lower(b);
            self.m.assign(a, b);
            if fills {
                self.shortfall -= 1;
            }
            let flow = if self.goal == Goal::EnvyFree && self.envy_with_earlier(a) {
                ControlFlow::Continue(())
            } else {
                self.search(i + 1, visit)
            };
            self.m.unassign(a);
            if fills {
                self.shortfall += 1;
            }
            flow?;
        }
        if self.goal == Goal::EnvyFree && self.envy_with_earlier(a) {
            return ControlFlow::Continue(());
        }
        self.search(i + 1, visit)
    }

    fn leaf(&mut self, visit: &mut dyn FnMut(&Matching) -> ControlFlow<()>) -> ControlFlow<()> {
        let inst = self.inst;
        let ok = match self.goal {
            Goal::All => return visit(&self.m),
            // envy was checked incrementally
            Goal::EnvyFree => is_feasible(inst, &self.m),
            Goal::RelaxedStable => is_feasible(inst, &self.m) && is_relaxed_stable(inst, &self.m),
        };
        if ok {
            self.best = Some(self.m.clone());
            if self.floor > 0 || self.m.len() == inst.num_agents() {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    }

    fn maximize(mut self) -> Option<Matching> {
        let _ = self.search(0, &mut |_| ControlFlow::Continue(()));
        self.best
    }
}

/// A maximum-size feasible envy-free matching, or `None` if there is no
/// feasible envy-free matching. Ties go to the lexicographically smallest
/// edge list.
pub fn max_efm_bruteforce(inst: &Instance, cap: usize) -> Result<Option<Matching>, OracleError> {
    check_cap(inst, cap)?;
    Ok(Search::new(inst, Goal::EnvyFree).maximize())
}

/// The lexicographically first feasible envy-free matching with at least
/// `size` edges, or `None`. Cheaper than [`max_efm_bruteforce`] when only
/// the existence of a large matching matters.
pub fn find_efm_of_size(
    inst: &Instance,
    cap: usize,
    size: usize,
) -> Result<Option<Matching>, OracleError> {
    check_cap(inst, cap)?;
    let mut search = Search::new(inst, Goal::EnvyFree);
    if size == 0 {
        return Ok(search.maximize());
    }
    search.floor = size;
    Ok(search.maximize())
}

/// A maximum-size feasible relaxed-stable matching, or `None`.
pub fn max_rsm_bruteforce(inst: &Instance, cap: usize) -> Result<Option<Matching>, OracleError> {
    check_cap(inst, cap)?;
    Ok(Search::new(inst, Goal::RelaxedStable).maximize())
}

/// Visits every matching of `inst` (upper quotas respected), in lexicographic
/// edge-list order, until `visit` breaks.
pub fn for_each_matching(
    inst: &Instance,
    cap: usize,
    mut visit: impl FnMut(&Matching) -> ControlFlow<()>,
) -> Result<(), OracleError> {
    check_cap(inst, cap)?;
    let mut search = Search::new(inst, Goal::All);
    let _ = search.search(0, &mut visit);
    Ok(())
}

/// An independent set of exactly `k` vertices (the lexicographically first
/// one), or `None`.
pub fn max_independent_set_bruteforce(g: &SimpleGraph, k: usize) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    if k > n {
        return None;
    }
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    fn go(start: usize, k: usize, adj: &[Vec<bool>], chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in start..adj.len() {
            if chosen.iter().all(|&u| !adj[u][v]) {
                chosen.push(v);
                if go(v + 1, k, adj, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(k);
    go(0, k, &adj, &mut chosen).then_some(chosen)
}
