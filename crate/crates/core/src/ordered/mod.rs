//! Graphs whose hom sets are posets: monotone transports, continuous and
//! cocontinuous transforms, lower and upper social points, the adjunction
//! inequalities, regular bounds and corestriction.

mod adjunction;
mod graph;
mod transforms;
mod yoneda;

pub use adjunction::{
    adjunction_inequality_suite, corestriction_check, corestriction_hypotheses, corestriction_suite,
    corestriction_unchecked, decomposition_inequality_check, is_regular, neutrality_inequality_check, regular_bound,
    regular_bound_hypotheses, CorestrictionReport, InequalityReport, RegularBound,
};
pub use graph::{
    curried_leq, lower_associativity_check, monotone_contact_check, monotone_transport_check, transport_leq,
    Continuity, Direction, OrderedGraph,
};
pub use transforms::{
    contact_associativity_check, continuity_check, continuous_composition_closure, continuous_composition_unchecked,
    continuous_exponential, continuous_transform_set, is_continuous, strictly_continuous_witness,
};
pub use yoneda::{
    continuous_character_transforms, continuous_yoneda_check, social_points_ordered, ContinuousYonedaReport,
    OrderedCharacter,
};
