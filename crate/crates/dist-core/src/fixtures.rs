//! Small worked instances reused across tests and examples.
//!
//! The `e1` family is a two-context, two-dialogue world: context `c0` always
//! produces dialogue `d1` under the goal, context `c1` always produces `d0`,
//! and the protected attribute is present exactly on `c0`. The `h1` variant
//! keeps the conditionals but skews the context marginal 2:1.

use std::collections::BTreeMap;

use crate::joint::TabularJoint;
use crate::kernel::AttributeKernel;
use crate::policy::DialoguePolicy;

fn point(d: &str) -> BTreeMap<String, f64> {
    [(d.to_string(), 1.0)].into()
}

/// Balanced goal: Pr(c0)=Pr(c1)=1/2, c0 -> d1, c1 -> d0.
pub fn e1_goal() -> TabularJoint {
    TabularJoint::new(
        vec![("c0".into(), 0.5), ("c1".into(), 0.5)],
        [("c0".to_string(), point("d1")), ("c1".to_string(), point("d0"))].into(),
    )
    .expect("fixture is valid")
}

/// Skewed human: Pr(c0)=2/3, Pr(c1)=1/3, same conditionals as the goal.
pub fn h1_human() -> TabularJoint {
    TabularJoint::new(
        vec![("c0".into(), 2.0 / 3.0), ("c1".into(), 1.0 / 3.0)],
        [("c0".to_string(), point("d1")), ("c1".to_string(), point("d0"))].into(),
    )
    .expect("fixture is valid")
}

/// Attribute is certain on c0 and absent on c1.
pub fn e1_kernel() -> AttributeKernel {
    AttributeKernel::new(
        "F",
        [("c0".to_string(), 1.0), ("c1".to_string(), 0.0)].into(),
    )
    .expect("fixture is valid")
}

/// Learned policy: c0 -> d1 w.p. 0.6, c1 -> d1 w.p. 0.2.
pub fn e1_policy() -> DialoguePolicy {
    DialoguePolicy::new(
        "theta1",
        [
            (
                "c0".to_string(),
                [("d1".to_string(), 0.6), ("d0".to_string(), 0.4)].into(),
            ),
            (
                "c1".to_string(),
                [("d1".to_string(), 0.2), ("d0".to_string(), 0.8)].into(),
            ),
        ]
        .into(),
    )
    .expect("fixture is valid")
}

/// Policy that reproduces the goal conditionals exactly.
pub fn e1_matching_policy() -> DialoguePolicy {
    DialoguePolicy::new(
        "theta-goal",
        [("c0".to_string(), point("d1")), ("c1".to_string(), point("d0"))].into(),
    )
    .expect("fixture is valid")
}
