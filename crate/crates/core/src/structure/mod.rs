//! Original graphs (units plus a contact table), categories, natural
//! transforms, characters and the Yoneda correspondences through social
//! points.

mod character;
mod natural;
mod original;
mod suite;
mod yoneda;

pub use character::{social_points, social_points_with, social_witness, Character, ValueRelation};
pub use natural::{
    compose_transforms, evaluations_agree, is_natural, natural_composition_witness, natural_exponential,
    natural_transform_check, square_check_with, transform_composition_laws,
};
pub use original::{
    adjoined_unit_z2, associativity_check, classify_transport, composable_pair, discrete, m3, validate_category,
    validate_original, walking_arrow, z2, Classification, FiniteCategory, OriginalGraph,
};
pub use suite::{bijection_suite, BijectionReport};
pub use yoneda::{
    character_transforms_with, count_character_transforms, edge_transform_correspondence, fullfaithful_check,
    iso_check, natural_character_transforms, point_from_transform, transform_from_point, transform_naturality_with,
    yoneda_correspondence, CharacterTransform, EdgeTransformReport, IsoReport, YonedaReport,
};
