mod set_adjunction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/set_adjunction.rs"));
}

mod poset_exponential {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/poset_exponential.rs"));
}

mod graph_currying {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graph_currying.rs"));
}

mod yoneda_social_points {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/yoneda_social_points.rs"));
}

mod ordered_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ordered_bounds.rs"));
}

mod quantale_metric {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quantale_metric.rs"));
}

mod cli_documents {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_documents.rs"));
}

#[test]
fn every_example_runs() {
    set_adjunction::run().unwrap();
    poset_exponential::run().unwrap();
    graph_currying::run().unwrap();
    yoneda_social_points::run().unwrap();
    ordered_bounds::run().unwrap();
    quantale_metric::run().unwrap();
    cli_documents::run().unwrap();
}
