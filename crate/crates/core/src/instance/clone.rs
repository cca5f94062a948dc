use super::{AgentIdx, Instance, InstanceError, Quota, ResourceIdx};

/// For each original resource, the ordered list of its unit-capacity copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneMap {
    pub copies: Vec<Vec<ResourceIdx>>,
}

impl CloneMap {
    /// Original resource of each copy.
    pub fn origin_of(&self) -> Vec<ResourceIdx> {
        let total = self.copies.iter().map(Vec::len).sum();
        let mut origin = vec![ResourceIdx(0); total];
        for (b, copies) in self.copies.iter().enumerate() {
            for c in copies {
                origin[c.0] = ResourceIdx(b);
            }
        }
        origin
    }
}

fn copy_id(id: &str, i: u32) -> String {
    format!("{id}/{i}")
}

/// Replaces every resource `b` with `upper(b)` unit-capacity copies. The
/// first `lower(b)` copies get quota `[1,1]`, the rest `[0,1]`; each copy
/// keeps `b`'s list and agents list the copies in place of `b`, in order.
///
/// Resources that already have upper quota 1 keep their id, so a ONE-ONE
/// instance is a fixed point. Other copies are named `<id>/<i>`.
pub fn clone_to_one_one(inst: &Instance) -> Result<(Instance, CloneMap), InstanceError> {
    let mut resource_ids = Vec::new();
    let mut quotas = Vec::new();
    let mut resource_prefs: Vec<Vec<AgentIdx>> = Vec::new();
    let mut copies = Vec::with_capacity(inst.num_resources());

    for b in inst.resources() {
        let q = inst.quota(b);
        let mut mine = Vec::with_capacity(q.upper as usize);
        for i in 1..=q.upper {
            mine.push(ResourceIdx(resource_ids.len()));
            resource_ids.push(if q.upper == 1 {
                inst.resource_id(b).to_owned()
            } else {
                copy_id(inst.resource_id(b), i)
            });
            quotas.push(Quota::new(u32::from(i <= q.lower), 1));
            resource_prefs.push(inst.resource_prefs(b).to_vec());
        }
        copies.push(mine);
    }

    let agent_prefs = inst
        .agents()
        .map(|a| {
            inst.agent_prefs(a)
                .iter()
                .flat_map(|b| copies[b.0].iter().copied())
                .collect()
        })
        .collect();

    let cloned = Instance::new(
        inst.agents().map(|a| inst.agent_id(a).to_owned()).collect(),
        resource_ids,
        quotas,
        agent_prefs,
        resource_prefs,
    )?;
    Ok((cloned, CloneMap { copies }))
}
