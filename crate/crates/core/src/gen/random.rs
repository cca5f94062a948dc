use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenError;
use crate::instance::{AgentIdx, Instance, Quota, ResourceIdx};
use crate::optimality::feasibility_exists;

const MAX_ATTEMPTS: usize = 1000;

/// Parameters of the seeded random family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub agents: usize,
    pub resources: usize,
    /// Number of resources given lower quota 1.
    pub lq: usize,
    /// Agents' lists have length uniform in `1..=min(max_list_len, resources)`.
    pub max_list_len: usize,
    /// Upper quotas are uniform in `1..=max_upper`; 1 gives ONE-ONE instances.
    pub max_upper: u32,
    pub seed: u64,
}

impl RandomParams {
    pub fn one_one(agents: usize, resources: usize, lq: usize, max_list_len: usize, seed: u64) -> Self {
        RandomParams {
            agents,
            resources,
            lq,
            max_list_len,
            max_upper: 1,
            seed,
        }
    }
}

/// Random instance with uniformly random acceptability and strict orders,
/// regenerated (from the same seeded stream) until a feasible matching exists.
pub fn gen_random(p: &RandomParams) -> Result<Instance, GenError> {
    if p.lq > p.resources {
        return Err(GenError::InvalidParams(format!(
            "{} LQ resources requested but only {} resources",
            p.lq, p.resources
        )));
    }
    if p.max_upper < 1 {
        return Err(GenError::InvalidParams("max upper quota must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..MAX_ATTEMPTS {
        let inst = draw(p, &mut rng)?;
        if feasibility_exists(&inst) {
            return Ok(inst);
        }
    }
    Err(GenError::RetriesExhausted(MAX_ATTEMPTS))
}

fn draw(p: &RandomParams, rng: &mut ChaCha8Rng) -> Result<Instance, GenError> {
    let max_len = p.max_list_len.min(p.resources);
    let all_resources: Vec<ResourceIdx> = (0..p.resources).map(ResourceIdx).collect();
    let mut agent_prefs = Vec::with_capacity(p.agents);
    let mut resource_prefs: Vec<Vec<AgentIdx>> = vec![Vec::new(); p.resources];
    for a in 0..p.agents {
        let len = if max_len == 0 { 0 } else { rng.gen_range(1..=max_len) };
        let list: Vec<ResourceIdx> = all_resources.choose_multiple(rng, len).copied().collect();
        for b in &list {
            resource_prefs[b.0].push(AgentIdx(a));
        }
        agent_prefs.push(list);
    }
    for list in &mut resource_prefs {
        list.shuffle(rng);
    }
    let mut quotas: Vec<Quota> = (0..p.resources)
        .map(|_| Quota::new(0, rng.gen_range(1..=p.max_upper)))
        .collect();
    for b in all_resources.choose_multiple(rng, p.lq) {
        quotas[b.0].lower = 1;
    }
    Ok(Instance::new(
        (1..=p.agents).map(|i| format!("a{i}")).collect(),
        (1..=p.resources).map(|i| format!("b{i}")).collect(),
        quotas,
        agent_prefs,
        resource_prefs,
    )?)
}
