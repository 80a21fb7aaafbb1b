//! Checking, synthesis and minimal revision of conditional norms over
//! labeled finite traces.
//!
//! A conditional norm `(condition, Z(target), deadline)` is a prohibition
//! (`Z = P`) or an obligation (`Z = O`). Given positive and negative traces,
//! [`synthesis::synthesize`] looks for a norm that every negative trace
//! violates and no positive trace violates; [`revision::revise`] looks for
//! the closest such norm to a given one. Both go through a CNF encoding over
//! the states that occur in the traces and are cross-checked by exhaustive
//! enumeration at small sizes. [`reductions`] generates the 3SAT gadget
//! instances used to exercise the engines.

pub mod monitor;
pub mod prop;
pub mod reductions;
pub mod revision;
pub mod sat;
pub mod synthesis;
pub mod trace;

pub use monitor::{ConditionalNorm, NormKind, Role, Verdict, ViolationWitness};
pub use prop::{formula_from_state_set, parse_formula, PropFormula, Vocabulary};
pub use reductions::{StateEncoding, ThreeSatInstance};
pub use revision::{distance, revise, Budget, RevisionProblem};
pub use synthesis::{synthesize, verify_triple, StateSet, StateSetTriple, SynthesisEngine, SynthesisOutcome};
pub use trace::{Label, LabeledTraceSet, State, Trace, Universe};
