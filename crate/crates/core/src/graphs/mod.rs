//! Finite directed graphs, transports between them, the Carte biproduct,
//! exponential graphs of transforms and the currying adjunction.

mod contact;
mod curry;
mod exponential;
mod graph;
mod suite;
mod transport;

pub use contact::ContactTable;
pub use curry::{
    all_curried, count_curried, decomposability_check, decomposition_check_with, evaluate, evaluation,
    for_each_curried, name_appointment, neutrality_check, neutrality_check_with, realization,
    sections_transport, CurriedTransport, Relation, Side,
};
pub use exponential::{
    all_transforms, count_transforms, target_change, transform_radices, ExponentialGraph, Transform,
};
pub use graph::{Edge, FiniteGraph, UnitChoice};
pub use suite::{round_trip_candidates, round_trip_suite, RoundTripReport};
pub use transport::{
    biproduct_transport, carte_biproduct, compose_transports, count_transports, count_transports_over,
    transports, transports_over, CarteProduct, Transport, Transports,
};
