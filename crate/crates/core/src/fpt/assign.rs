use crate::instance::{AgentIdx, Instance, ResourceIdx};
use crate::matching::Matching;

/// One agent on each LQ resource, pairs ordered by resource index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LQAssignment {
    pub pairs: Vec<(ResourceIdx, AgentIdx)>,
}

impl LQAssignment {
    pub fn to_matching(&self, inst: &Instance) -> Matching {
        let mut m = Matching::empty(inst);
        for &(b, a) in &self.pairs {
            m.assign(a, b);
        }
        m
    }
}

/// Injective assignments of listed agents to LQ resources, in lexicographic
/// order of (LQ resource index, agent rank).
pub struct Assignments<'a> {
    inst: &'a Instance,
    lq: Vec<ResourceIdx>,
    /// Rank currently chosen at each depth.
    pos: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

pub fn enumerate_assignments(inst: &Instance) -> Assignments<'_> {
    let lq: Vec<ResourceIdx> = inst.lq_resources().collect();
    Assignments {
        inst,
        pos: vec![0; lq.len()],
        lq,
        used: vec![false; inst.num_agents()],
        started: false,
        done: false,
    }
}

impl Assignments<'_> {
    fn agent_at(&self, d: usize) -> AgentIdx {
        self.inst.resource_prefs(self.lq[d])[self.pos[d]]
    }

    fn current(&self) -> LQAssignment {
        LQAssignment {
            pairs: (0..self.lq.len()).map(|d| (self.lq[d], self.agent_at(d))).collect(),
        }
    }
}

impl Iterator for Assignments<'_> {
    type Item = LQAssignment;

    fn next(&mut self) -> Option<LQAssignment> {
        if self.done {
            return None;
        }
        let q = self.lq.len();
        if q == 0 {
            self.done = true;
            return Some(LQAssignment { pairs: Vec::new() });
        }
        let mut d = if self.started {
            let d = q - 1;
            let a = self.agent_at(d);
            self.used[a.0] = false;
            self.pos[d] += 1;
            d
        } else {
            self.started = true;
            self.pos[0] = 0;
            0
        };
        loop {
            let list = self.inst.resource_prefs(self.lq[d]);
            while self.pos[d] < list.len() && self.used[list[self.pos[d]].0] {
                self.pos[d] += 1;
            }
            if self.pos[d] < list.len() {
                self.used[list[self.pos[d]].0] = true;
                if d + 1 == q {
                    return Some(self.current());
                }
                d += 1;
                self.pos[d] = 0;
            } else if d == 0 {
                self.done = true;
                return None;
            } else {
                d -= 1;
                let a = self.agent_at(d);
                self.used[a.0] = false;
                self.pos[d] += 1;
            }
        }
    }
}
