//! Two-sided preference matching with lower quotas.
//!
//! The crate models agents and resources with strict preference lists and
//! per-resource quota pairs `[lower, upper]`, and provides:
//!
//! * predicate checkers for feasibility, stability, envy-freeness and
//!   relaxed stability ([`optimality`]);
//! * agent- and resource-proposing deferred acceptance ([`classic`]);
//! * kernelization for the maximum envy-free and maximum relaxed-stable
//!   problems together with the solution transfer procedures ([`kernel`]);
//! * exact solvers that enumerate assignments of agents to lower-quota
//!   resources and extend each one ([`fpt`]);
//! * exhaustive oracles for small instances ([`oracle`]) and instance
//!   generators, including the independent-set reduction ([`gen`]).

pub mod bipartite;
pub mod classic;
pub mod fpt;
pub mod gen;
pub mod instance;
pub mod kernel;
pub mod matching;
pub mod optimality;
pub mod oracle;

pub use instance::{
    clone_to_one_one, compute_params, parse_instance, serialize_instance, AgentIdx, CloneMap,
    Instance, InstanceBuilder, InstanceError, ParamProfile, Quota, ResourceIdx, Side, SubInstance,
};
pub use matching::{Matching, MatchingError};
