//! Graphs enriched in a finite quantale: weighted graphs, their biproduct
//! and exponential, the currying round trips and V-category checks.

mod adjunction;
mod values;
mod weighted;

pub use adjunction::{
    lower_decomposable_check, upper_neutral_check, v_adjunction_suite, v_name, v_realize, VAdjunctionReport,
    VCondition,
};
pub use values::{meet_distribution_check, quantale_law_checks, validate_quantale, Quantale};
pub use weighted::{
    contact_weights_check, count_vertex_maps, unit_weights_check, v_biproduct, v_categories, v_category_validate,
    v_exponential, v_functor_classify, v_transports, VClassification, VExponential, VTransport, WeightedGraph,
};
