// Acceptance criteria, one PASS/FAIL line each. Run with
// `cargo test --test acceptance`; set UPDATE_GOLDENS=1 to rewrite the
// recorded witnesses and CLI outputs under tests/goldens/.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Stdio};
use std::sync::Arc;
use std::time::Instant;

use adjunct::check::{Check, Witness};
use adjunct::enumerate::{characters, graphs, graphs_with_loops, is_associative_table, labeled_posets, unital_magmas};
use adjunct::finset::{
    all_mappings, is_limit_continuous, is_monotone, name, poset_eval_monotone_check, poset_exponential, product,
    realize, set_adjunction_suite, exponential, FinitePoset, FiniteSet, Mapping,
};
use adjunct::graphs::{
    all_transforms, carte_biproduct, count_transports, decomposability_check, evaluation, for_each_curried,
    neutrality_check, round_trip_suite, transports, transports_over, CarteProduct, ContactTable, Edge, FiniteGraph,
    Side, Transform, Transport, UnitChoice,
};
use adjunct::ordered::{
    adjunction_inequality_suite, contact_associativity_check, continuous_character_transforms,
    continuous_composition_closure, continuous_transform_set, continuous_yoneda_check, corestriction_suite,
    decomposition_inequality_check, is_regular, monotone_contact_check, neutrality_inequality_check,
    regular_bound, regular_bound_hypotheses, social_points_ordered, transport_leq, Continuity, Direction,
    OrderedCharacter, OrderedGraph,
};
use adjunct::quantale::{
    meet_distribution_check, v_adjunction_suite, v_biproduct, v_categories, v_category_validate, v_exponential,
    validate_quantale, Quantale, WeightedGraph,
};
use adjunct::structure::{
    compose_transforms, composable_pair, evaluations_agree, fullfaithful_check, is_natural, m3, natural_character_transforms,
    natural_composition_witness, natural_exponential, social_points, validate_category, walking_arrow, yoneda_correspondence, z2, Character,
    FiniteCategory, OriginalGraph,
};
use adjunct::Budget;
use serde_json::{json, Value};

type Outcome = Result<String, String>;

/// Per-instance candidate cap for the graph sweep of criterion 3.
const GRAPH_INSTANCE_BUDGET: u64 = 256;
/// Instances of the graph sweep re-run with discrete orders in criterion 6.
const DEGENERATE_FORM_CAP: u128 = 64;
/// Ordered instances of criterion 6 with more forms than this are skipped.
const ORDERED_FORM_CAP: u128 = 256;
/// Contact tables per target graph before falling back to fixed rules.
const ALL_CONTACTS_UP_TO: u128 = 16;
const BUDGET: Budget = Budget(1_000_000);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn lib<T>(r: adjunct::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn goldens_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/goldens")
}

fn updating() -> bool {
    std::env::var_os("UPDATE_GOLDENS").is_some_and(|v| v == "1")
}

/// Compares `actual` with a golden file, or rewrites it under UPDATE_GOLDENS=1.
fn golden(path: &Path, actual: &str) -> Result<(), String> {
    if updating() {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        return std::fs::write(path, actual).map_err(|e| e.to_string());
    }
    let expected = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ensure(expected == actual, || format!("{} differs from its golden:\n{actual}", path.display()))
}

// ---------------------------------------------------------------------------
// Independent oracles.

fn pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1, |acc, _| acc * base)
}

/// Graph maps counted one vertex assignment at a time.
fn oracle_transports(src: &FiniteGraph, dst: &FiniteGraph) -> u128 {
    let (n, m) = (src.vertex_count(), dst.vertex_count());
    if n == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let mut vm = vec![0; n];
    let mut total = 0;
    loop {
        let mut ways = 1;
        for a in 0..n {
            for b in 0..n {
                ways *= pow(dst.hom_len(vm[a], vm[b]) as u128, src.hom_len(a, b));
            }
        }
        total += ways;
        let mut i = 0;
        while i < n && vm[i] == m - 1 {
            vm[i] = 0;
            i += 1;
        }
        if i == n {
            return total;
        }
        vm[i] += 1;
    }
}

fn oracle_monotone(map: &Mapping, p: &FinitePoset, q: &FinitePoset) -> bool {
    let n = p.len();
    (0..n).all(|i| (0..n).all(|j| !p.leq(i, j) || q.leq(map.apply(i), map.apply(j))))
}

/// Reflexive, antisymmetric, transitive relations on `n` points.
fn oracle_poset_count(n: usize) -> usize {
    (0u32..1 << (n * n))
        .filter(|bits| {
            let r = |i: usize, j: usize| bits >> (i * n + j) & 1 == 1;
            (0..n).all(|i| r(i, i))
                && (0..n).all(|i| (0..n).all(|j| i == j || !(r(i, j) && r(j, i))))
                && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r(i, j) && r(j, k)) || r(i, k))))
        })
        .count()
}

/// `α_s ∘ ψ(u) = φ(u) ∘ α_t` evaluated directly.
fn oracle_natural(alpha: &Transform, contact: &ContactTable) -> bool {
    let t = alpha.domain().source();
    t.edges().all(|u| {
        contact.compose(alpha.component(u.src), alpha.codomain().edge(u))
            == contact.compose(alpha.domain().edge(u), alpha.component(u.dst))
    })
}

/// `|Nat(X(−;x), F)|` by trying every family of values.
fn oracle_nat(x: &OriginalGraph, f: &Character, target: usize) -> usize {
    let g = x.graph();
    let slots: Vec<Edge> = (0..g.vertex_count()).flat_map(|a| g.edges_between(a, target)).collect();
    let radices: Vec<usize> = slots.iter().map(|e| f.values(e.src).len()).collect();
    if radices.contains(&0) {
        return 0;
    }
    let position = |e: Edge| slots.iter().position(|&s| s == e).unwrap();
    let mut digits = vec![0; slots.len()];
    let mut count = 0;
    loop {
        let natural = slots.iter().enumerate().all(|(k, &fe)| {
            (0..g.vertex_count()).all(|b| {
                g.edges_between(b, fe.src)
                    .all(|h| digits[position(x.compose(h, fe))] == f.act(h, digits[k]))
            })
        });
        count += natural as usize;
        let mut i = 0;
        while i < digits.len() && digits[i] + 1 == radices[i] {
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            return count;
        }
        digits[i] += 1;
    }
}

/// Points whose action agrees with contact on every composable pair.
fn oracle_social(x: &OriginalGraph, f: &Character, target: usize) -> usize {
    let g = x.graph();
    let n = g.vertex_count();
    (0..f.values(target).len())
        .filter(|&m| {
            (0..n).all(|b| {
                g.edges_between(b, target).all(|fe| {
                    (0..n).all(|c| {
                        g.edges_between(c, b).all(|h| f.act(h, f.act(fe, m)) == f.act(x.compose(h, fe), m))
                    })
                })
            })
        })
        .count()
}

const INF: u32 = u32::MAX / 4;

/// Tropical index to distance; the last index is infinity.
fn distance(q: &Quantale, v: usize) -> u32 {
    if v + 1 == q.len() {
        INF
    } else {
        v as u32
    }
}

fn truncated_sum(q: &Quantale, a: u32, b: u32) -> u32 {
    let cap = (q.len() - 2) as u32;
    if a >= INF || b >= INF || a + b > cap {
        INF
    } else {
        a + b
    }
}

fn oracle_metric(q: &Quantale, n: usize, d: &[usize]) -> bool {
    let d = |a: usize, b: usize| distance(q, d[a * n + b]);
    (0..n).all(|a| d(a, a) == 0)
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| d(a, c) <= truncated_sum(q, d(a, b), d(b, c)))))
}

// ---------------------------------------------------------------------------
// Instance families shared between criteria.

fn first_loops(g: &FiniteGraph) -> UnitChoice {
    UnitChoice::first_loops(g).expect("loop at every vertex")
}

/// Every table when there are few, otherwise four fixed composition rules.
fn contact_family(y: &Arc<FiniteGraph>) -> Vec<ContactTable> {
    if ContactTable::count(y) <= ALL_CONTACTS_UP_TO {
        return ContactTable::all(y).collect();
    }
    let rules: [fn(usize, usize, usize) -> usize; 4] =
        [|_, _, _| 0, |_, _, k| k - 1, |i, j, k| (i + j) % k, |i, _, k| i % k];
    rules
        .iter()
        .filter_map(|rule| {
            ContactTable::from_fn(y, |a, b| Edge::new(a.src, b.dst, rule(a.idx, b.idx, y.hom_len(a.src, b.dst)))).ok()
        })
        .collect()
}

struct GraphInstance {
    x: Arc<FiniteGraph>,
    t: Arc<FiniteGraph>,
    contact: ContactTable,
    label: String,
}

/// X, T with a loop everywhere and Y arbitrary, all on at most two vertices
/// with at most two edges per hom; `visit` sees instances whose form count
/// is at most `cap`.
fn graph_sweep(cap: u128, mut visit: impl FnMut(&GraphInstance, &CarteProduct) -> Result<(), String>) -> Result<(u64, u64), String> {
    let sources: Vec<Arc<FiniteGraph>> = (0..=2).flat_map(|n| graphs_with_loops(n, 2)).map(Arc::new).collect();
    let targets: Vec<Arc<FiniteGraph>> = (0..=2).flat_map(|n| graphs(n, 2)).map(Arc::new).collect();
    let (mut visited, mut skipped) = (0, 0);
    for x in &sources {
        for t in &sources {
            let p = carte_biproduct(x, t);
            for y in &targets {
                if count_transports(p.graph(), y) > cap {
                    skipped += 1;
                    continue;
                }
                for (k, contact) in contact_family(y).into_iter().enumerate() {
                    let label = format!("X{:?} T{:?} Y{:?} contact#{k}", x.hom_sizes(), t.hom_sizes(), y.hom_sizes());
                    visited += 1;
                    visit(&GraphInstance { x: x.clone(), t: t.clone(), contact, label }, &p)?;
                }
            }
        }
    }
    Ok((visited, skipped))
}

fn categories() -> Vec<(&'static str, OriginalGraph)> {
    vec![("walking arrow", walking_arrow()), ("composable pair", composable_pair()), ("Z/2", z2())]
}

/// Every graph on at most two vertices with at most one edge per hom.
fn small_graphs() -> Vec<Arc<FiniteGraph>> {
    (0..=2).flat_map(|n| graphs(n, 1)).map(Arc::new).collect()
}

fn unital_characters(x: &OriginalGraph, max_size: usize) -> impl Iterator<Item = Character> {
    characters(x.graph(), max_size, Some(x.units().clone()))
}

fn witness_value(instance: &str, w: &Witness) -> Value {
    json!({"instance": instance, "witness": w})
}

// ---------------------------------------------------------------------------
// Criteria.

fn set_adjunction() -> Outcome {
    let mut forms = 0u128;
    for nx in 1..=3 {
        for nt in 1..=3 {
            for ny in 1..=3 {
                let (x, t, y) = (FiniteSet::range(nx), FiniteSet::range(nt), FiniteSet::range(ny));
                let r = lib(set_adjunction_suite(&x, &t, &y, BUDGET))?;
                let expected = pow(ny as u128, nx * nt);
                ensure(r.forms as u128 == expected && r.names as u128 == expected, || {
                    format!("|X|={nx} |T|={nt} |Y|={ny}: {} forms, {} names, expected {expected}", r.forms, r.names)
                })?;
                ensure(r.holds(), || format!("|X|={nx} |T|={nt} |Y|={ny}: {r:?}"))?;

                let prod = product(&x, &t);
                let expo = exponential(&t, &y);
                let (fst, snd) = (prod.first_projection(), prod.second_projection());
                for f in all_mappings(prod.set(), &y) {
                    let g = lib(name(&prod, &expo, &f))?;
                    for p in 0..prod.set().len() {
                        let curried = expo.mapping(g.apply(fst.apply(p))).apply(snd.apply(p));
                        ensure(curried == f.apply(p), || format!("name disagrees with currying at {f:?}"))?;
                    }
                    ensure(lib(realize(&prod, &expo, &g))? == f, || format!("realize(name(f)) ≠ f at {f:?}"))?;
                    forms += 1;
                }
            }
        }
    }
    Ok(format!("27 size combinations, {forms} forms curried pointwise"))
}

fn posets() -> Outcome {
    let all: Vec<FinitePoset> = (0..=3).flat_map(labeled_posets).collect();
    for n in 0..=3 {
        let listed = labeled_posets(n).count();
        ensure(listed == oracle_poset_count(n), || format!("{listed} posets on {n} points, oracle {}", oracle_poset_count(n)))?;
    }
    let mut maps = 0;
    for p in &all {
        for q in &all {
            let ev = poset_eval_monotone_check(p, q);
            ensure(ev.holds(), || format!("evaluation not monotone: {:?}", ev.witness))?;
            let mut monotone = 0;
            for m in all_mappings(p.carrier(), q.carrier()) {
                let oracle = oracle_monotone(&m, p, q);
                ensure(is_monotone(&m, p, q) == oracle, || format!("monotonicity disagrees at {m:?}"))?;
                ensure(is_limit_continuous(&m, p, q) == oracle, || format!("limit continuity disagrees at {m:?}"))?;
                monotone += oracle as usize;
                maps += 1;
            }
            let exp = poset_exponential(p, q);
            ensure(exp.maps().len() == monotone, || format!("{} maps in the exponential, oracle {monotone}", exp.maps().len()))?;
        }
    }
    let chain = FinitePoset::chain(3);
    let oracle = (0..3).flat_map(|a| (a..3).flat_map(move |b| (b..3).map(move |_| ()))).count();
    let counted = poset_exponential(&chain, &chain).maps().len();
    ensure(counted == 10 && oracle == 10, || format!("3-chain: {counted} monotone self-maps, oracle {oracle}"))?;
    Ok(format!("{} posets, {maps} maps compared; 3-chain has {counted} monotone self-maps", all.len()))
}

fn graph_round_trips() -> Outcome {
    let mut first_non_decomposable = None;
    let mut first_non_neutral = None;
    let (mut admitted, mut exhausted) = (0u64, 0u64);
    let (mut predecomposable, mut neutral) = (0u64, 0u64);
    let (visited, skipped) = graph_sweep(GRAPH_INSTANCE_BUDGET as u128, |inst, p| {
        let (ux, ut) = (first_loops(&inst.x), first_loops(&inst.t));
        match round_trip_suite(&inst.x, &inst.t, &inst.contact, &ux, &ut, Budget(GRAPH_INSTANCE_BUDGET)) {
            Ok(r) => {
                admitted += 1;
                let oracle = oracle_transports(p.graph(), inst.contact.graph());
                ensure(r.forms as u128 == oracle, || format!("{}: {} forms, oracle {oracle}", inst.label, r.forms))?;
                ensure(r.holds(), || format!("{}: {:?} {:?}", inst.label, r.forms_round_trip, r.names_round_trip))?;
                predecomposable += r.predecomposable;
                neutral += r.neutral;
                if first_non_decomposable.is_none() {
                    first_non_decomposable = r.non_decomposable.map(|w| witness_value(&inst.label, &w));
                }
                if first_non_neutral.is_none() {
                    first_non_neutral = r.non_neutral.map(|w| witness_value(&inst.label, &w));
                }
                Ok(())
            }
            Err(adjunct::Error::BudgetExceeded { .. }) => {
                exhausted += 1;
                Ok(())
            }
            Err(e) => Err(format!("{}: {e}", inst.label)),
        }
    })?;
    let (Some(nd), Some(nn)) = (first_non_decomposable, first_non_neutral) else {
        return Err("no non-decomposable or no non-neutral witness found".into());
    };
    let recorded = json!({"non_decomposable": nd, "non_neutral": nn});
    golden(&goldens_dir().join("graph_witnesses.json"), &(adjunct::cli::pretty(&recorded) + "\n"))?;
    Ok(format!(
        "{admitted} instances round-trip ({predecomposable} predecomposable forms, {neutral} neutral names); \
         {exhausted} over budget, {skipped} target graphs skipped of {} visited; witnesses match goldens",
        visited
    ))
}

fn categories_and_evaluation() -> Outcome {
    for (label, c) in categories() {
        let check = validate_category(&c);
        ensure(check.holds(), || format!("{label} fails: {:?}", check.witness))?;
    }
    let bad = validate_category(&m3());
    let Some(w) = bad.witness else {
        return Err("M3 validates as a category".into());
    };
    ensure(w.property == "associativity", || format!("M3 fails with {w:?}"))?;
    golden(&goldens_dir().join("m3_witness.json"), &(adjunct::cli::pretty(&json!(w)) + "\n"))?;

    let (mut transforms, mut natural) = (0u64, 0u64);
    for (label, y) in categories() {
        for t in small_graphs() {
            let agree = lib(evaluations_agree(&t, &y, BUDGET))?;
            ensure(agree.holds(), || format!("{label}: {:?}", agree.witness))?;
            let exp = lib(natural_exponential(&t, &y, BUDGET))?;
            let p = carte_biproduct(exp.graph(), &t);
            let pre = lib(evaluation(&exp, &p, y.contact(), Side::Pre))?;
            let post = lib(evaluation(&exp, &p, y.contact(), Side::Post))?;
            ensure(pre == post, || format!("{label}, T{:?}: ev⁺ ≠ ev⁻", t.hom_sizes()))?;
            let list: Vec<Transport> = transports(&t, y.graph()).collect();
            for phi in &list {
                for psi in &list {
                    for alpha in all_transforms(phi, psi) {
                        let oracle = oracle_natural(&alpha, y.contact());
                        ensure(is_natural(&alpha, y.contact()) == oracle, || format!("naturality disagrees at {alpha:?}"))?;
                        transforms += 1;
                        natural += oracle as u64;
                    }
                }
            }
        }
    }

    // Composites of natural transforms: never broken in a category, searched
    // for exhaustively over every non-associative unital magma of order 3.
    for (label, y) in categories() {
        for t in small_graphs() {
            let found = lib(natural_composition_witness(&t, &y, BUDGET))?;
            ensure(found.is_none(), || format!("{label}: natural composite fails to be natural"))?;
        }
    }
    let (mut magmas, mut broken) = (0, None);
    'search: for table in unital_magmas(3).filter(|t| !is_associative_table(t)) {
        magmas += 1;
        let y = lib(OriginalGraph::monoid(&["1", "a", "b"], &table))?;
        for t in small_graphs() {
            let Some((alpha, beta)) = lib(natural_composition_witness(&t, &y, BUDGET))? else {
                continue;
            };
            let composite = lib(compose_transforms(&alpha, &beta, y.contact()))?;
            ensure(
                oracle_natural(&alpha, y.contact())
                    && oracle_natural(&beta, y.contact())
                    && !oracle_natural(&composite, y.contact()),
                || format!("composition witness on {table:?} is not confirmed by the oracle"),
            )?;
            broken = Some((table.clone(), t.hom_sizes().to_vec()));
            break 'search;
        }
    }
    let composition = match broken {
        Some((table, sizes)) => format!("natural composites break first on magma {table:?} with T{sizes:?}"),
        None => format!("no non-natural composite at budget over {magmas} non-associative magmas"),
    };
    Ok(format!(
        "3 categories validate, M3 fails at [{}]; ev⁺ = ev⁻ over {natural} natural of {transforms} transforms; {composition}",
        w.location.join(", ")
    ))
}

fn yoneda() -> Outcome {
    let mut checked = 0;
    for (label, x) in [("walking arrow", walking_arrow()), ("M3", m3())] {
        for f in unital_characters(&x, 3) {
            for v in 0..x.graph().vertex_count() {
                let nat = lib(natural_character_transforms(&x, &f, v, BUDGET))?.len();
                let social = social_points(&f, x.contact(), v).len();
                let (onat, osocial) = (oracle_nat(&x, &f, v), oracle_social(&x, &f, v));
                ensure(nat == onat && social == osocial && nat == social, || {
                    format!("{label}, vertex {v}: Nat {nat} (oracle {onat}), social {social} (oracle {osocial})")
                })?;
                ensure(lib(yoneda_correspondence(&x, &f, v, BUDGET))?.bijective, || format!("{label}: not bijective"))?;
                checked += 1;
            }
        }
    }
    let mut functorial = 0;
    for (label, x) in categories() {
        for f in unital_characters(&x, 2) {
            if !f.functorial_check(x.contact()).holds() {
                continue;
            }
            functorial += 1;
            for v in 0..x.graph().vertex_count() {
                let social = social_points(&f, x.contact(), v).len();
                ensure(social == f.values(v).len(), || format!("{label}: functorial character with a non-social point"))?;
            }
        }
        let ff = lib(fullfaithful_check(&lib(FiniteCategory::new(x))?, BUDGET))?;
        ensure(ff.holds(), || format!("{label}: {:?}", ff.witness))?;
    }
    let x = walking_arrow();
    let hom = x.graph().hom_len(0, 1);
    let nat = lib(natural_character_transforms(&x, &lib(Character::representable(&x, 1))?, 0, BUDGET))?.len();
    ensure(nat == 1 && hom == 1, || format!("|Nat(X(−;0),X(−;1))| = {nat}, |X(0;1)| = {hom}"))?;
    Ok(format!(
        "{checked} (character, vertex) pairs match; {functorial} functorial characters fully social; \
         full and faithful on 3 categories; |Nat(X(−;0),X(−;1))| = 1"
    ))
}

/// Unital, monotone ordered graphs on at most two vertices whose homs have
/// at most two edges, ordered as chains in either direction.
fn ordered_targets() -> Result<Vec<(String, OrderedGraph)>, String> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for g in graphs_with_loops(n, 2) {
            let g = Arc::new(g);
            if ContactTable::count(&g) > 4096 {
                continue;
            }
            for (k, contact) in ContactTable::all(&g).enumerate() {
                let x = lib(OriginalGraph::new(first_loops(&g), contact))?;
                if !adjunct::structure::validate_original(&x).holds() {
                    continue;
                }
                for (dir, reversed) in [("up", false), ("down", true)] {
                    let orders = (0..n * n)
                        .map(|h| {
                            let chain = FinitePoset::chain_on(g.hom(h / n, h % n).clone());
                            if reversed { chain.opposite() } else { chain }
                        })
                        .collect();
                    let y = lib(OrderedGraph::from_original(&x, orders))?;
                    if lib(monotone_contact_check(&y))?.holds() {
                        out.push((format!("Y{:?} contact#{k} {dir}", g.hom_sizes()), y));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn same_outcome(a: &Check, b: &Check) -> bool {
    let strip = |w: &Option<Witness>| w.as_ref().map(|w| (w.location.clone(), w.expected.clone(), w.found.clone()));
    a.checked == b.checked && strip(&a.witness) == strip(&b.witness)
}

/// The least element of `candidates` under `leq`, if there is one.
fn least(candidates: &[Transport], leq: impl Fn(&Transport, &Transport) -> bool) -> Option<&Transport> {
    candidates.iter().find(|c| candidates.iter().all(|d| leq(c, d)))
}

fn ordered() -> Outcome {
    let targets = ordered_targets()?;
    let sources = [("point", adjunct::structure::discrete(1)), ("walking arrow", walking_arrow()), ("Z/2", z2())];
    let (mut suites, mut bounds, mut sandwiched, mut corestricted, mut closures) = (0, 0, 0, 0, 0);
    let mut counterexample = None;
    for (ylabel, y) in &targets {
        for (xlabel, x) in &sources {
            for (tlabel, t) in &sources {
                let label = format!("{xlabel} × {tlabel} → {ylabel}");
                let p = carte_biproduct(x.graph(), t.graph());
                if count_transports(p.graph(), y.graph()) > ORDERED_FORM_CAP {
                    continue;
                }
                let r = lib(adjunction_inequality_suite(x, t, y, BUDGET))?;
                ensure(r.holds(), || format!("{label}: {r:?}"))?;
                suites += 1;

                let (ux, ut) = (x.units(), t.units());
                let leq = |a: &Transport, b: &Transport| transport_leq(a, b, y).expect("same shape");
                for f in transports(p.graph(), y.graph()) {
                    let mut found = [None, None];
                    for (slot, side) in [Side::Pre, Side::Post].into_iter().enumerate() {
                        if !lib(regular_bound_hypotheses(&f, &p, ux, ut, y, side))?.holds() {
                            continue;
                        }
                        let b = lib(regular_bound(&f, &p, ux, ut, y, side, BUDGET))?;
                        ensure(b.holds(), || format!("{label}: {b:?}"))?;
                        let regular: Vec<Transport> = transports_over(p.graph(), y.graph(), f.vertex_map().to_vec())
                            .filter(|h| match side {
                                Side::Pre => leq(&f, h),
                                Side::Post => leq(h, &f),
                            })
                            .filter(|h| is_regular(h, &p, ux, ut, y, side).expect("same shape"))
                            .collect();
                        let extremal = match side {
                            Side::Pre => least(&regular, |a, c| leq(a, c)),
                            Side::Post => least(&regular, |a, c| leq(c, a)),
                        };
                        ensure(extremal == Some(&b.transport), || {
                            format!("{label}: bound {} is not the extremal regular transport", b.bound)
                        })?;
                        found[slot] = Some(b.transport);
                        bounds += 1;
                    }
                    if let [Some(upper), Some(lower)] = &found {
                        ensure(leq(lower, &f) && leq(&f, upper), || format!("{label}: f⁻ ≤ f ≤ f⁺ fails at {}", f.label()))?;
                        sandwiched += 1;
                    }
                }

                for target in [Continuity::Continuous, Continuity::Cocontinuous] {
                    let c = lib(corestriction_suite(x, t, y, target, BUDGET))?;
                    ensure(c.corestricted.holds(), || format!("{label}: {:?}", c.corestricted.witness))?;
                    corestricted += c.eligible;
                    if counterexample.is_none() {
                        counterexample = c.without_pre.or(c.without_post).map(|w| witness_value(&label, &w));
                    }
                }
            }
        }
        if lib(contact_associativity_check(y))?.holds() {
            for (_, t) in &sources {
                let c = lib(continuous_composition_closure(t.graph(), y, BUDGET))?;
                ensure(c.holds(), || format!("{ylabel}: {:?}", c.witness))?;
                closures += 1;
            }
        }
    }
    let Some(counterexample) = counterexample else {
        return Err("no corestriction counterexample with one hypothesis dropped".into());
    };
    golden(&goldens_dir().join("corestriction_counterexample.json"), &(adjunct::cli::pretty(&counterexample) + "\n"))?;
    let degenerate = discrete_degeneration()?;
    Ok(format!(
        "{} targets: {suites} inequality suites, {bounds} certified regular bounds, {sandwiched} sandwiched forms, \
         {corestricted} corestricted forms, {closures} closures; {degenerate}",
        targets.len()
    ))
}

/// Discrete orders turn every inequality back into the equation of
/// criteria 3 to 5, with identical case counts and witnesses.
fn discrete_degeneration() -> Result<String, String> {
    let mut compared = 0u64;
    graph_sweep(DEGENERATE_FORM_CAP, |inst, p| {
        let (ux, ut) = (first_loops(&inst.x), first_loops(&inst.t));
        let y = OrderedGraph::discrete(inst.contact.graph().clone()).with_contact(inst.contact.clone());
        for f in transports(p.graph(), inst.contact.graph()) {
            for side in [Side::Pre, Side::Post] {
                let plain = lib(decomposability_check(&f, p, &ux, &ut, &inst.contact, side))?;
                for dir in [Direction::Lower, Direction::Upper] {
                    let ordered = lib(decomposition_inequality_check(&f, p, &ux, &ut, &y, side, dir))?;
                    ensure(same_outcome(&plain, &ordered), || format!("{}: {plain:?} vs {ordered:?}", inst.label))?;
                    compared += 1;
                }
            }
        }
        let mut mismatch = None;
        let visited = for_each_curried(&inst.x, &inst.t, inst.contact.graph(), Budget(DEGENERATE_FORM_CAP as u64), |_| true, |g| {
            for side in [Side::Pre, Side::Post] {
                let plain = neutrality_check(g, &ux, &ut, &inst.contact, side);
                for dir in [Direction::Lower, Direction::Upper] {
                    let ordered = neutrality_inequality_check(g, &ux, &ut, &y, side, dir).expect("contact present");
                    if !same_outcome(&plain, &ordered) {
                        mismatch = Some(format!("{}: {plain:?} vs {ordered:?}", inst.label));
                        return std::ops::ControlFlow::Break(());
                    }
                }
            }
            std::ops::ControlFlow::Continue(())
        });
        if let Some(m) = mismatch {
            return Err(m);
        }
        compared += visited.unwrap_or(0);
        Ok(())
    })?;

    for (label, y) in categories() {
        let yd = OrderedGraph::discrete(y.graph().clone()).with_units(y.units().clone()).with_contact(y.contact().clone());
        for t in small_graphs() {
            let list: Vec<Transport> = transports(&t, y.graph()).collect();
            for phi in &list {
                for psi in &list {
                    let natural: Vec<Transform> = all_transforms(phi, psi).filter(|a| is_natural(a, y.contact())).collect();
                    for target in [Continuity::Continuous, Continuity::Cocontinuous] {
                        let continuous = lib(continuous_transform_set(phi, psi, &yd, target))?;
                        ensure(continuous == natural, || format!("{label}: continuous and natural transforms differ"))?;
                        compared += 1;
                    }
                }
            }
        }
    }

    for x in [walking_arrow(), m3()] {
        for f in unital_characters(&x, 3) {
            let fd = OrderedCharacter::discrete(f.clone());
            for v in 0..x.graph().vertex_count() {
                let natural = lib(natural_character_transforms(&x, &f, v, BUDGET))?;
                let continuous = lib(continuous_character_transforms(&x, &fd, v, BUDGET))?;
                ensure(natural == continuous, || "continuous and natural character transforms differ".into())?;
                let social = social_points(&f, x.contact(), v);
                for dir in [Direction::Lower, Direction::Upper] {
                    ensure(social_points_ordered(&fd, x.contact(), v, dir) == social, || "ordered social points differ".into())?;
                }
                ensure(lib(continuous_yoneda_check(&x, &fd, v, BUDGET))?.bijective, || "discrete Yoneda not bijective".into())?;
                compared += 1;
            }
        }
    }
    Ok(format!("discrete orders reproduce criteria 3 to 5 on {compared} comparisons"))
}

fn quantales() -> Outcome {
    let boolean = Arc::new(Quantale::boolean());
    let tropical = Arc::new(Quantale::tropical(3));
    for q in [&boolean, &tropical] {
        ensure(validate_quantale(q).holds(), || "quantale laws fail".into())?;
    }

    // Boolean weights are preorders: products and exponentials of posets.
    let posets: Vec<FinitePoset> = (0..=3).flat_map(labeled_posets).collect();
    for p in &posets {
        for q in &posets {
            let (wp, wq) = (WeightedGraph::from_poset(p).shared(), WeightedGraph::from_poset(q).shared());
            let prod = lib(v_biproduct(&wp, &wq))?;
            ensure(prod.weights() == WeightedGraph::from_poset(&p.product(q)).weights(), || "Boolean product differs".into())?;
            let exp = lib(v_exponential(&wp, &wq, BUDGET))?;
            let reference = poset_exponential(p, q);
            let maps: Vec<&[usize]> = reference.maps().iter().map(|m| m.mapping().assignment()).collect();
            ensure(exp.transports().len() == maps.len(), || "Boolean exponential has the wrong vertices".into())?;
            let index: Vec<usize> = exp
                .transports()
                .iter()
                .map(|v| maps.iter().position(|m| *m == v.map()).ok_or("V-functor that is not monotone"))
                .collect::<Result<_, _>>()?;
            for (i, &a) in index.iter().enumerate() {
                for (j, &b) in index.iter().enumerate() {
                    let expected = reference.poset().leq(a, b) as usize;
                    ensure(exp.graph().weight(i, j) == expected, || "Boolean exponential weight differs".into())?;
                }
            }
        }
    }
    for n in 0..=3 {
        for bits in 0u32..1 << (n * n) {
            let w: Vec<usize> = (0..n * n).map(|k| (bits >> k & 1) as usize).collect();
            let g = lib(WeightedGraph::new(boolean.clone(), FiniteSet::range(n), w.clone()))?;
            let preorder = (0..n).all(|a| w[a * n + a] == 1)
                && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| w[a * n + b] * w[b * n + c] <= w[a * n + c])));
            ensure(v_category_validate(&g).holds() == preorder, || format!("Boolean validation disagrees at {w:?}"))?;
        }
    }

    // Tropical weights: the truncated triangle inequality.
    let k = tropical.len();
    let mut matrices = 0;
    for n in 1..=3 {
        let mut w = vec![0; n * n];
        loop {
            let g = lib(WeightedGraph::new(tropical.clone(), FiniteSet::range(n), w.clone()))?;
            ensure(v_category_validate(&g).holds() == oracle_metric(&tropical, n, &w), || {
                format!("tropical validation disagrees at {w:?}")
            })?;
            matrices += 1;
            let mut i = 0;
            while i < w.len() && w[i] + 1 == k {
                w[i] = 0;
                i += 1;
            }
            if i == w.len() {
                break;
            }
            w[i] += 1;
        }
    }

    // Exponential weights are sup-distances over non-expansive maps.
    let small: Vec<Arc<WeightedGraph>> = (1..=2).flat_map(|n| v_categories(&tropical, n)).map(Arc::new).collect();
    let mut exponentials = 0;
    for t in &small {
        for y in &small {
            let exp = lib(v_exponential(t, y, BUDGET))?;
            let dt = |a: usize, b: usize| distance(&tropical, t.weight(a, b));
            let dy = |a: usize, b: usize| distance(&tropical, y.weight(a, b));
            let (nt, ny) = (t.len(), y.len());
            let expanding: BTreeSet<Vec<usize>> = (0..pow(ny as u128, nt) as usize)
                .map(|code| (0..nt).map(|s| code / ny.pow(s as u32) % ny).collect::<Vec<_>>())
                .filter(|m| (0..nt).all(|a| (0..nt).all(|b| dy(m[a], m[b]) <= dt(a, b))))
                .collect();
            let listed: BTreeSet<Vec<usize>> = exp.transports().iter().map(|v| v.map().to_vec()).collect();
            ensure(listed == expanding, || "exponential vertices are not the non-expansive maps".into())?;
            for (i, phi) in exp.transports().iter().enumerate() {
                for (j, psi) in exp.transports().iter().enumerate() {
                    let sup = (0..nt).map(|s| dy(phi.apply(s), psi.apply(s))).max().unwrap_or(0);
                    let got = distance(&tropical, exp.graph().weight(i, j));
                    ensure(got == sup, || format!("weight {got} against sup-distance {sup}"))?;
                }
            }
            exponentials += 1;
        }
    }

    // The round trips over every 3-point space.
    let line = WeightedGraph::from_rows(tropical.clone(), &[vec![0, 1], vec![1, 0]]).map_err(|e| e.to_string())?.shared();
    let point = WeightedGraph::from_rows(tropical.clone(), &[vec![0]]).map_err(|e| e.to_string())?.shared();
    let mut suites = 0;
    for y in v_categories(&tropical, 3) {
        let y = y.shared();
        for (x, t) in [(&point, &line), (&line, &point), (&line, &line)] {
            let r = lib(v_adjunction_suite(x, t, &y, BUDGET))?;
            ensure(r.holds(), || format!("{:?}: {r:?}", y.weights()))?;
            suites += 1;
        }
    }

    let bool_meets = meet_distribution_check(&boolean);
    ensure(bool_meets.holds(), || format!("Boolean meets: {:?}", bool_meets.witness))?;
    let trop_meets = meet_distribution_check(&tropical);
    let reported = match &trop_meets.witness {
        Some(w) => format!("tropical fails at [{}]", w.location.join(", ")),
        None => "tropical holds".into(),
    };
    golden(&goldens_dir().join("meet_distribution.json"), &(adjunct::cli::pretty(&json!({
        "boolean": bool_meets,
        "tropical": trop_meets,
    })) + "\n"))?;
    Ok(format!(
        "{} poset pairs agree; {matrices} tropical matrices validated; {exponentials} exponentials; \
         {suites} round-trip suites over 3-point spaces; meets: Boolean holds, {reported}",
        posets.len() * posets.len()
    ))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_adjunct"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: Option<&str>) -> Result<Run, String> {
    use std::io::Write;
    let mut child = binary()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).map_err(|e| e.to_string())?;
    drop(pipe);
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    Ok(Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    })
}

fn cli() -> Outcome {
    let dir = goldens_dir().join("documents");
    let mut inputs: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    inputs.retain(|p| p.extension().is_some_and(|e| e == "json") && !p.to_string_lossy().contains(".out."));
    inputs.sort();
    let mut kinds = BTreeSet::new();
    let mut tasks = 0;
    for input in &inputs {
        let path = input.to_str().unwrap();
        let stem = input.file_stem().unwrap().to_string_lossy().into_owned();
        let check = run(&["check", path], None)?;
        ensure(check.code == 0, || format!("{stem}: check exits {}: {}", check.code, check.stderr))?;
        golden(&dir.join(format!("{stem}.out.check.json")), &check.stdout)?;
        let canonical: Value = serde_json::from_str(&check.stdout).map_err(|e| e.to_string())?;
        let kind = canonical["kind"].as_str().unwrap_or_default().to_string();
        // The canonical form is a fixed point.
        let again = run(&["check", "-"], Some(&check.stdout))?;
        ensure(again.stdout == check.stdout, || format!("{stem}: canonical form is not stable"))?;
        if kind == "task" {
            tasks += 1;
            let first = run(&["run", "--format", "machine", path], None)?;
            let second = run(&["run", "--format", "machine", "--seed", "7", path], None)?;
            ensure(first.stdout == second.stdout && first.code == second.code, || format!("{stem}: runs differ"))?;
            golden(&dir.join(format!("{stem}.out.report.json")), &first.stdout)?;
            let report: Value = serde_json::from_str(&first.stdout).map_err(|e| e.to_string())?;
            let expected = match report["verdict"].as_str() {
                Some("pass") => 0,
                Some("fail") => 1,
                _ => 2,
            };
            ensure(first.code == expected, || format!("{stem}: exit {} for {}", first.code, report["verdict"]))?;
            let text = run(&["run", path], None)?;
            golden(&dir.join(format!("{stem}.out.text")), &text.stdout)?;
        }
        kinds.insert(kind);
    }
    let all: BTreeSet<String> = adjunct::cli::Kind::ALL.iter().map(|k| k.as_str().to_string()).collect();
    ensure(inputs.len() >= 10 && kinds == all, || format!("{} documents cover {kinds:?}", inputs.len()))?;

    let task = dir.join("12_task_set_bijection.json");
    let task = task.to_str().unwrap();
    let exhausted = run(&["run", "--budget", "0", task], None)?;
    ensure(exhausted.code == 2 && exhausted.stdout.starts_with("exhausted "), || {
        format!("budget 0 exits {} with {}", exhausted.code, exhausted.stdout)
    })?;
    let invalid = run(&["check", "-"], Some(r#"{"schema": "adjunct/v1", "kind": "graph", "body": {"vertices": ["0"], "edges": [["f", "0", "1"]]}}"#))?;
    ensure(invalid.code == 2 && invalid.stdout.is_empty() && invalid.stderr.starts_with("error: /body/edges/0/2"), || {
        format!("invalid document exits {} with {}", invalid.code, invalid.stderr)
    })?;
    let syntax = run(&["run", "-"], Some("{\"schema\": "))?;
    ensure(syntax.code == 2 && syntax.stderr.contains("syntax error"), || format!("syntax error exits {}", syntax.code))?;
    let not_task = run(&["run", dir.join("01_set.json").to_str().unwrap()], None)?;
    ensure(not_task.code == 2, || format!("running a set exits {}", not_task.code))?;
    let usage = run(&["frobnicate"], None)?;
    ensure(usage.code == 2, || format!("unknown subcommand exits {}", usage.code))?;

    let first = run(&["enumerate", "posets", "--size", "3"], None)?;
    let second = run(&["enumerate", "posets", "--size", "3"], None)?;
    ensure(first.stdout == second.stdout && first.stdout.lines().count() == 19, || "poset stream differs".into())?;

    Ok(format!(
        "{} documents ({tasks} tasks) match goldens across {} kinds; runs byte-identical; exit codes 0/1/2 verified",
        inputs.len(),
        kinds.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("set adjunction", set_adjunction),
        ("poset exponentials", posets),
        ("graph round trips", graph_round_trips),
        ("categories and evaluation", categories_and_evaluation),
        ("Yoneda", yoneda),
        ("ordered graphs", ordered),
        ("quantales", quantales),
        ("CLI", cli),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    let mut summary = BTreeMap::new();
    for (i, (label, criterion)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS criterion {} [PRIMARY] {label}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {} [PRIMARY] {label}: {why} ({secs:.1}s)", i + 1);
            }
        }
        summary.insert(i + 1, outcome.is_ok());
    }
    println!("{} of {} criteria pass", summary.values().filter(|&&ok| ok).count(), summary.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
