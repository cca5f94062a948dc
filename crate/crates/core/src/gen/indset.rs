//! Reduction from independent set to the maximum envy-free matching problem.
//!
//! For a graph with `n` vertices, `m` edges and target `k`:
//!
//! * vertex-agent `a<i>` lists `B_i` then `X`;
//! * edge-agent `e<j>` for edge `{v_p, v_q}` (`p < q`) lists `B_p` then `B_q`;
//! * `B_i` holds `deg(v_i) + 1` resources `b<i>_<u>` with quota `[0,1]`, each
//!   listing `a<i>` then the edge-agents of edges incident on `v_i`;
//! * `X` holds `k` resources `x<j>` with quota `[1,1]`, each listing every
//!   vertex-agent.
//!
//! All sets are ordered by ascending index. Ids are 1-based.

use super::{GenError, SimpleGraph};
use crate::instance::{Instance, InstanceBuilder, Quota};

fn vertex_agent(i: usize) -> String {
    format!("a{}", i + 1)
}

fn edge_agent(j: usize) -> String {
    format!("e{}", j + 1)
}

fn block(i: usize, g: &SimpleGraph) -> Vec<String> {
    (1..=g.degree(i) + 1).map(|u| format!("b{}_{}", i + 1, u)).collect()
}

fn x_resource(j: usize) -> String {
    format!("x{}", j + 1)
}

/// The reduced instance has an envy-free feasible matching of size `m + n`
/// iff the graph has an independent set of size `k`.
pub fn gen_indset_reduction(g: &SimpleGraph, k: usize) -> Result<Instance, GenError> {
    let n = g.num_vertices();
    if k < 1 || k > n {
        return Err(GenError::KOutOfRange { k, n });
    }
    let xs: Vec<String> = (0..k).map(x_resource).collect();
    let blocks: Vec<Vec<String>> = (0..n).map(|i| block(i, g)).collect();
    let mut b = InstanceBuilder::new();

    for (i, block) in blocks.iter().enumerate() {
        b.agent(vertex_agent(i), block.iter().chain(&xs).cloned());
    }
    for (j, &(p, q)) in g.edges().iter().enumerate() {
        b.agent(edge_agent(j), blocks[p].iter().chain(&blocks[q]).cloned());
    }
    for (i, block) in blocks.iter().enumerate() {
        let list: Vec<String> = std::iter::once(vertex_agent(i))
            .chain(g.incident(i).into_iter().map(edge_agent))
            .collect();
        for id in block {
            b.resource(id.clone(), Quota::new(0, 1), list.clone());
        }
    }
    for x in &xs {
        b.resource(x.clone(), Quota::new(1, 1), (0..n).map(vertex_agent));
    }
    Ok(b.build()?)
}
