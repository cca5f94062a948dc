use std::collections::{BTreeSet, HashMap};

use super::Instance;
use crate::classic;

/// Structural parameters of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParamProfile {
    /// Number of LQ resources.
    pub q: usize,
    /// Longest preference list among LQ resources.
    pub ell_lq: usize,
    /// Deficiency with respect to a stable matching.
    pub d: usize,
    /// Number of deficient resources with respect to a stable matching.
    pub n_d: usize,
    /// Number of distinct agents acceptable to some LQ resource.
    pub a_bar: usize,
    /// Largest number of non-LQ resources shared by two agents' lists.
    pub t: usize,
    /// Size of a stable matching.
    pub s: usize,
}

pub fn compute_params(inst: &Instance) -> ParamProfile {
    let q = inst.lq_resources().count();
    let ell_lq = inst
        .lq_resources()
        .map(|b| inst.resource_prefs(b).len())
        .max()
        .unwrap_or(0);
    let a_bar = inst
        .lq_resources()
        .flat_map(|b| inst.resource_prefs(b).iter().copied())
        .collect::<BTreeSet<_>>()
        .len();

    let mut shared: HashMap<(usize, usize), usize> = HashMap::new();
    for b in inst.resources().filter(|&b| !inst.is_lq(b)) {
        let list = inst.resource_prefs(b);
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                let key = (x.0.min(y.0), x.0.max(y.0));
                *shared.entry(key).or_default() += 1;
            }
        }
    }
    let t = shared.values().copied().max().unwrap_or(0);

    let stable = classic::stable_agent_optimal(inst);
    let def = classic::deficiency_of(inst, &stable);
    ParamProfile {
        q,
        ell_lq,
        d: def.d,
        n_d: def.n_d,
        a_bar,
        t,
        s: stable.len(),
    }
}
