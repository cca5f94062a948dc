#![allow(dead_code)]

use lqmatch::gen::{gen_random, RandomParams, SimpleGraph};
use lqmatch::instance::{compute_params, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded ONE-ONE instances with at most 7 agents, 7 resources and 3 LQ resources.
pub fn small_family(count: usize, seed: u64) -> Vec<Instance> {
    family(count, seed, 7, 7, 3, 1)
}

/// Seeded MANY-ONE instances (upper quotas up to 3).
pub fn many_one_family(count: usize, seed: u64) -> Vec<Instance> {
    let all = family(count * 2, seed, 7, 4, 2, 3);
    all.into_iter().filter(|i| !i.is_one_one()).take(count).collect()
}

pub fn family(
    count: usize,
    seed: u64,
    max_agents: usize,
    max_resources: usize,
    max_lq: usize,
    max_upper: u32,
) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut sub_seed = 0u64;
    while out.len() < count {
        let resources = rng.gen_range(1..=max_resources);
        // mostly LQ-heavy so that stable matchings are often infeasible
        let lq = if rng.gen_bool(0.1) {
            0
        } else {
            rng.gen_range(1..=max_lq.min(resources))
        };
        let p = RandomParams {
            agents: rng.gen_range(1..=max_agents),
            resources,
            lq,
            max_list_len: rng.gen_range(1..=resources),
            max_upper,
            seed: seed.wrapping_mul(1_000_003).wrapping_add(sub_seed),
        };
        sub_seed += 1;
        if let Ok(inst) = gen_random(&p) {
            out.push(inst);
        }
    }
    out
}

/// `min(ℓ_LQ^q, |Ā|! / (|Ā| - q)!)`, saturating.
pub fn assignment_bound(inst: &Instance) -> u128 {
    let p = compute_params(inst);
    let power = (p.ell_lq as u128).saturating_pow(p.q as u32);
    let falling = (0..p.q).fold(1u128, |acc, i| {
        acc.saturating_mul(p.a_bar.saturating_sub(i) as u128)
    });
    power.min(falling)
}

/// Every simple graph on `n` vertices, one per edge subset.
pub fn all_graphs(n: usize) -> Vec<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e);
            SimpleGraph::new(n, edges).expect("subset of pairs is simple")
        })
        .collect()
}

/// Uniform random graph on `n` vertices with edge probability 1/2.
pub fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    SimpleGraph::new(n, edges).expect("random pairs are simple")
}
