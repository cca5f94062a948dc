//! Instance generators: the two-agent example family, the independent-set
//! reduction and seeded random instances.

mod graph;
mod indset;
mod random;

pub use graph::{GraphError, SimpleGraph};
pub use indset::gen_indset_reduction;
pub use random::{gen_random, RandomParams};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::instance::{Instance, InstanceBuilder, InstanceError, Quota};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("k = {k} is out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("no feasible instance after {0} attempts")]
    RetriesExhausted(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Quota variants of the two-agent, two-resource example.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fig1Variant {
    /// `b1 [0,1]`, `b2 [1,1]`
    Base,
    /// `b1 [1,1]`, `b2 [0,1]`
    B1Lq,
    /// `b1 [1,1]`, `b2 [1,1]`
    BothLq,
}

impl FromStr for Fig1Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "base" => Ok(Fig1Variant::Base),
            "b1lq" => Ok(Fig1Variant::B1Lq),
            "bothlq" => Ok(Fig1Variant::BothLq),
            other => Err(format!("unknown variant `{other}` (expected base, b1lq or bothlq)")),
        }
    }
}

impl fmt::Display for Fig1Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fig1Variant::Base => "base",
            Fig1Variant::B1Lq => "b1lq",
            Fig1Variant::BothLq => "bothlq",
        })
    }
}

/// `a1: b1 b2`, `a2: b1`, `b1: a1 a2`, `b2: a1`, with quotas per variant.
pub fn gen_fig1(variant: Fig1Variant) -> Instance {
    let (q1, q2) = match variant {
        Fig1Variant::Base => (Quota::new(0, 1), Quota::new(1, 1)),
        Fig1Variant::B1Lq => (Quota::new(1, 1), Quota::new(0, 1)),
        Fig1Variant::BothLq => (Quota::new(1, 1), Quota::new(1, 1)),
    };
    let mut b = InstanceBuilder::new();
    b.agent("a1", ["b1", "b2"])
        .agent("a2", ["b1"])
        .resource("b1", q1, ["a1", "a2"])
        .resource("b2", q2, ["a1"]);
    b.build().expect("fixed example is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::stable_agent_optimal;
    use crate::instance::serialize_instance;
    use crate::optimality::is_feasible;

    #[test]
    fn base_is_verbatim() {
        assert_eq!(
            serialize_instance(&gen_fig1(Fig1Variant::Base)),
            "@lqmatch v1\nagent a1: b1 b2\nagent a2: b1\nresource b1 [0,1]: a1 a2\nresource b2 [1,1]: a1\n"
        );
    }

    #[test]
    fn b1lq_stable_matching_is_feasible() {
        let inst = gen_fig1(Fig1Variant::B1Lq);
        assert!(is_feasible(&inst, &stable_agent_optimal(&inst)));
        let inst = gen_fig1(Fig1Variant::Base);
        assert!(!is_feasible(&inst, &stable_agent_optimal(&inst)));
    }

    #[test]
    fn variant_names_round_trip() {
        for v in [Fig1Variant::Base, Fig1Variant::B1Lq, Fig1Variant::BothLq] {
            assert_eq!(v.to_string().parse::<Fig1Variant>().unwrap(), v);
        }
        assert!("other".parse::<Fig1Variant>().is_err());
    }
}
