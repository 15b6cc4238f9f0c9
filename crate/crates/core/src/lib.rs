//! Exact arithmetic for the partial crossed product pictures of the Cuntz
//! algebras `O_n` and of `M_k(O_n)`: n-adic rationals, clopen subsets of the
//! doubled Cantor set, the groups `Q_n ⋊ Z` and `Q_n ⋊ Z × Z`, their partial
//! actions, and the algebras of finite sums `Σ f_g U^g` they generate.
#![no_std]

extern crate alloc;

pub mod action;
pub mod algebra;
pub mod clopen;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod nadic;
pub mod nest;
pub mod relations;
pub mod scalar;
pub mod step;

pub use action::{
    act_pullback, beta_domain, beta_image, beta_preimage, beta_range, descending_interval,
    descending_interval_at_level, descending_is_full, PartialMap, SlotSet,
};
pub use algebra::{cuntz_generator, matrix_generators, AlgebraElement, Session, SlotFunction};
pub use clopen::{ClopenSet, Interval, SetOp};
pub use error::Error;
pub use group::{GElem, HElem};
pub use groupoid::{
    cocycle, graph_consistency, groupoid_compose, r_offset, y_cocycle, GroupoidElement,
    YGroupoidElement,
};
pub use nadic::{Base, NAdic, Point, Rational, Side, Word};
pub use nest::{
    bp_membership, nest_generator, nest_invariant, predicate_closure_check, volterra_projection,
    ClosureGrid, GroupPredicate, KSign,
};
pub use relations::{verify_relations, RelationKind, RelationOutcome, RelationReport, Witness};
pub use scalar::Scalar;
pub use step::StepFunction;
