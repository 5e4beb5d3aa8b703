use std::sync::Arc;

use adjunct::cli::{graph_body, normalize, poset_body, pretty, weighted_body, Document, Kind};
use adjunct::finset::{
    exponential, is_limit_continuous, is_monotone, name, poset_exponential, product, realize, FinitePoset, FiniteSet,
    Mapping,
};
use adjunct::graphs::{
    carte_biproduct, decomposability_check, name_appointment, realization, transports, ContactTable, Edge,
    FiniteGraph, Side, UnitChoice,
};
use adjunct::quantale::{v_biproduct, v_categories, v_category_validate, Quantale, WeightedGraph};
use proptest::prelude::*;
use serde_json::Value;

fn small_poset() -> impl Strategy<Value = FinitePoset> {
    (0usize..=4).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |chosen| FinitePoset::generated_by(FiniteSet::range(n), &chosen).unwrap())
    })
}

fn hom_sizes(n: usize, max: usize) -> impl Strategy<Value = FiniteGraph> {
    proptest::collection::vec(0..=max, n * n).prop_map(move |sizes| FiniteGraph::from_hom_sizes(n, &sizes))
}

fn looped(n: usize) -> impl Strategy<Value = FiniteGraph> {
    proptest::collection::vec(0usize..=1, n * n).prop_map(move |extra| {
        let sizes: Vec<usize> = (0..n * n).map(|k| extra[k] + (k / n == k % n) as usize).collect();
        FiniteGraph::from_hom_sizes(n, &sizes)
    })
}

fn json_value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        Just(Value::Null),
        any::<bool>().prop_map(Value::Bool),
        any::<i32>().prop_map(Value::from),
        "[a-z\"\\\\ ]{0,6}".prop_map(Value::String),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..4).prop_map(Value::Array),
            proptest::collection::vec(("[a-z]{1,3}", inner), 0..4)
                .prop_map(|kv| Value::Object(kv.into_iter().collect())),
        ]
    })
}

proptest! {
    #[test]
    fn pretty_json_parses_back(v in json_value()) {
        prop_assert_eq!(serde_json::from_str::<Value>(&pretty(&v)).unwrap(), v);
    }

    #[test]
    fn normalizing_twice_changes_nothing(p in small_poset(), g in (1usize..=3).prop_flat_map(|n| hom_sizes(n, 2))) {
        for doc in [Document::wrap(Kind::Poset, poset_body(&p)), Document::wrap(Kind::Graph, graph_body(&g))] {
            let once = doc.unwrap().render();
            prop_assert_eq!(normalize(&once).unwrap(), once);
        }
    }

    #[test]
    fn weighted_documents_round_trip(w in (1usize..=3).prop_flat_map(|n| proptest::collection::vec(0usize..5, n * n))) {
        let n = (w.len() as f64).sqrt() as usize;
        let q = Arc::new(Quantale::tropical(3));
        let g = WeightedGraph::new(q, FiniteSet::range(n), w).unwrap();
        let doc = Document::wrap(Kind::WeightedGraph, weighted_body(&g, Value::from("tropical"))).unwrap();
        let back = Document::parse(&doc.render()).unwrap();
        prop_assert_eq!(back.canonical(), doc.canonical());
    }

    #[test]
    fn currying_sets_is_invertible(nx in 1usize..4, nt in 1usize..4, ny in 1usize..4, seed in any::<u64>()) {
        let (x, t, y) = (FiniteSet::range(nx), FiniteSet::range(nt), FiniteSet::range(ny));
        let prod = product(&x, &t);
        let expo = exponential(&t, &y);
        let assignment = (0..nx * nt).map(|k| (seed >> (2 * k % 64)) as usize % ny).collect();
        let f = Mapping::new(prod.set().clone(), y, assignment).unwrap();
        let g = name(&prod, &expo, &f).unwrap();
        prop_assert_eq!(realize(&prod, &expo, &g).unwrap(), f);
    }

    #[test]
    fn monotone_is_limit_continuous(p in small_poset(), q in small_poset(), seed in any::<u64>()) {
        prop_assume!(!q.is_empty() || p.is_empty());
        let assignment = (0..p.len()).map(|k| (seed >> (3 * k)) as usize % q.len().max(1)).collect();
        let m = Mapping::new(p.carrier().clone(), q.carrier().clone(), assignment).unwrap();
        prop_assert_eq!(is_monotone(&m, &p, &q), is_limit_continuous(&m, &p, &q));
    }

    #[test]
    fn poset_exponential_is_pointwise(t in small_poset(), y in small_poset()) {
        let exp = poset_exponential(&t, &y);
        let maps = exp.maps();
        for (i, a) in maps.iter().enumerate() {
            for (j, b) in maps.iter().enumerate() {
                let pointwise = (0..t.len()).all(|s| y.leq(a.mapping().apply(s), b.mapping().apply(s)));
                prop_assert_eq!(exp.poset().leq(i, j), pointwise);
            }
        }
    }

    #[test]
    fn predecomposable_forms_round_trip(
        x in (1usize..=2).prop_flat_map(looped),
        t in (1usize..=2).prop_flat_map(looped),
        y in (1usize..=2).prop_flat_map(|n| hom_sizes(n, 2)),
        rule in 0usize..3,
        pick in any::<u64>(),
    ) {
        let (x, t, y) = (Arc::new(x), Arc::new(t), Arc::new(y));
        let contact = ContactTable::from_fn(&y, |a, b| {
            let k = y.hom_len(a.src, b.dst);
            Edge::new(a.src, b.dst, [0, (a.idx + b.idx) % k.max(1), k.saturating_sub(1)][rule])
        });
        prop_assume!(contact.is_ok());
        let contact = contact.unwrap();
        let (ux, ut) = (UnitChoice::first_loops(&x).unwrap(), UnitChoice::first_loops(&t).unwrap());
        let p = carte_biproduct(&x, &t);
        let forms: Vec<_> = transports(p.graph(), &y).take(512).collect();
        prop_assume!(!forms.is_empty());
        let f = &forms[pick as usize % forms.len()];
        if decomposability_check(f, &p, &ux, &ut, &contact, Side::Pre).unwrap().holds() {
            let g = name_appointment(f, &p, &ux, &ut).unwrap();
            prop_assert_eq!(&realization(&g, &p, &contact, Side::Pre).unwrap(), f);
        }
    }

    #[test]
    fn tropical_products_stay_metric(i in 0usize..25, j in 0usize..25) {
        let q = Arc::new(Quantale::tropical(3));
        let spaces: Vec<WeightedGraph> = v_categories(&q, 2).collect();
        let prod = v_biproduct(&spaces[i], &spaces[j]).unwrap();
        prop_assert!(v_category_validate(&prod).holds());
    }
}
