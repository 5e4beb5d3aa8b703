//! Named verification tasks: argument parsing and dispatch.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::check::Check;
use crate::cli::document::{as_str, child, invalid, lookup, Obj, PResult, Reason, Scope};
use crate::cli::report::Report;
use crate::error::{Error, Result};
use crate::finset::{
    all_mappings, is_limit_continuous, is_monotone, poset_eval_monotone_check, set_adjunction_suite, FinitePoset,
    FiniteSet,
};
use crate::graphs::{carte_biproduct, count_transports, round_trip_suite, transports, FiniteGraph, Side};
use crate::ordered::{
    adjunction_inequality_suite, continuous_composition_closure, continuous_yoneda_check, corestriction_suite,
    monotone_contact_check, regular_bound, regular_bound_hypotheses, Continuity, OrderedCharacter, OrderedGraph,
};
use crate::quantale::{
    meet_distribution_check, quantale_law_checks, v_adjunction_suite, v_category_validate, v_exponential,
    v_functor_classify, Quantale, VTransport, WeightedGraph,
};
use crate::structure::{
    bijection_suite, edge_transform_correspondence, evaluations_agree, fullfaithful_check, validate_category,
    yoneda_correspondence, FiniteCategory, OriginalGraph,
};
use crate::util::{saturating_pow, Budget};

/// Task names with their argument keys, in canonical order.
pub const TASKS: [(&str, &[&str]); 21] = [
    ("finset.bijection", &["x", "t", "y"]),
    ("finset.poset_exponential", &["t", "y"]),
    ("graphs.round_trip", &["x", "t", "y"]),
    ("structure.validate_category", &["category"]),
    ("structure.bijection", &["x", "t", "y"]),
    ("structure.evaluations_agree", &["t", "y"]),
    ("structure.yoneda", &["x", "character", "vertex"]),
    ("structure.representables", &["x", "from", "to"]),
    ("structure.fullfaithful", &["category"]),
    ("ordered.monotone_contact", &["y"]),
    ("ordered.adjunction_inequalities", &["x", "t", "y"]),
    ("ordered.regular_bounds", &["x", "t", "y"]),
    ("ordered.corestriction", &["x", "t", "y", "target"]),
    ("ordered.closure", &["t", "y"]),
    ("ordered.continuous_yoneda", &["x", "character", "vertex"]),
    ("quantale.validate", &["quantale"]),
    ("quantale.meet_distribution", &["quantale"]),
    ("quantale.v_category", &["graph"]),
    ("quantale.adjunction", &["x", "t", "y"]),
    ("quantale.classify", &["map"]),
    ("quantale.exponential", &["t", "y"]),
];

/// A task with resolved arguments.
#[derive(Clone)]
pub enum Task {
    FinsetBijection { x: FiniteSet, t: FiniteSet, y: FiniteSet },
    PosetExponential { t: FinitePoset, y: FinitePoset },
    RoundTrip { x: OriginalGraph, t: OriginalGraph, y: OriginalGraph },
    ValidateCategory(OriginalGraph),
    Bijection { x: OriginalGraph, t: OriginalGraph, y: OriginalGraph },
    EvaluationsAgree { t: Arc<FiniteGraph>, y: OriginalGraph },
    Yoneda { x: OriginalGraph, character: OrderedCharacter, vertex: usize },
    Representables { x: OriginalGraph, from: usize, to: usize },
    FullFaithful(OriginalGraph),
    MonotoneContact(OrderedGraph),
    AdjunctionInequalities { x: OriginalGraph, t: OriginalGraph, y: OrderedGraph },
    RegularBounds { x: OriginalGraph, t: OriginalGraph, y: OrderedGraph },
    Corestriction { x: OriginalGraph, t: OriginalGraph, y: OrderedGraph, target: Continuity },
    Closure { t: Arc<FiniteGraph>, y: OrderedGraph },
    ContinuousYoneda { x: OriginalGraph, character: OrderedCharacter, vertex: usize },
    QuantaleValidate(Arc<Quantale>),
    MeetDistribution(Arc<Quantale>),
    VCategory(Arc<WeightedGraph>),
    VAdjunction { x: Arc<WeightedGraph>, t: Arc<WeightedGraph>, y: Arc<WeightedGraph> },
    Classify(VTransport),
    VExponential { t: Arc<WeightedGraph>, y: Arc<WeightedGraph> },
}

#[derive(Clone)]
pub struct TaskSpec {
    pub name: String,
    pub task: Task,
}

struct Args<'a> {
    scope: &'a Scope,
    obj: Obj<'a>,
    canonical: Map<String, Value>,
}

macro_rules! arg {
    ($fn:ident, $resolve:ident, $t:ty) => {
        fn $fn(&mut self, key: &str) -> PResult<$t> {
            let (v, p) = self.obj.req(key)?;
            let (s, c) = self.scope.$resolve(v, &p)?;
            self.canonical.insert(key.into(), c);
            Ok(s)
        }
    };
}

impl Args<'_> {
    arg!(set, set, FiniteSet);
    arg!(poset, poset, FinitePoset);
    arg!(graph, graph, Arc<FiniteGraph>);
    arg!(original, original, OriginalGraph);
    arg!(ordered, ordered, OrderedGraph);
    arg!(character, character, OrderedCharacter);
    arg!(quantale, quantale, Arc<Quantale>);
    arg!(weighted, weighted, Arc<WeightedGraph>);
    arg!(vtransport, vtransport, VTransport);

    fn vertex(&mut self, key: &str, g: &FiniteGraph) -> PResult<usize> {
        let (v, p) = self.obj.req(key)?;
        let a = lookup(g.vertices(), v, &p, "vertex")?;
        self.canonical.insert(key.into(), v.clone());
        Ok(a)
    }

    fn continuity(&mut self, key: &str) -> PResult<Continuity> {
        let (v, p) = self.obj.req(key)?;
        let c = match as_str(v, &p)? {
            "continuous" => Continuity::Continuous,
            "cocontinuous" => Continuity::Cocontinuous,
            other => return Err(invalid(&p, Reason::Schema, format!("expected continuous or cocontinuous, found `{other}`"))),
        };
        self.canonical.insert(key.into(), v.clone());
        Ok(c)
    }

    /// A character over the graph of `x`.
    fn character_over(&mut self, key: &str, x: &OriginalGraph) -> PResult<OrderedCharacter> {
        let c = self.character(key)?;
        if c.character().base().as_ref() != x.graph().as_ref() {
            return Err(invalid(&child(&self.obj_pointer(), key), Reason::Schema, "character is not over the graph of `x`"));
        }
        Ok(c)
    }

    fn obj_pointer(&self) -> String {
        self.obj.pointer().to_string()
    }
}

pub(crate) fn parse_task(scope: &Scope, v: &Value, pointer: &str) -> PResult<(TaskSpec, Value)> {
    let obj = Obj::new(v, pointer, &["task", "args"])?;
    let (name, np) = obj.req("task")?;
    let name = as_str(name, &np)?;
    let Some(&(name, keys)) = TASKS.iter().find(|(n, _)| *n == name) else {
        return Err(invalid(&np, Reason::UnknownTask, format!("unknown task `{name}`")));
    };
    let (args, ap) = obj.req("args")?;
    let mut a = Args {
        scope,
        obj: Obj::new(args, &ap, keys)?,
        canonical: Map::new(),
    };
    let task = match name {
        "finset.bijection" => Task::FinsetBijection { x: a.set("x")?, t: a.set("t")?, y: a.set("y")? },
        "finset.poset_exponential" => Task::PosetExponential { t: a.poset("t")?, y: a.poset("y")? },
        "graphs.round_trip" => Task::RoundTrip { x: a.original("x")?, t: a.original("t")?, y: a.original("y")? },
        "structure.validate_category" => Task::ValidateCategory(a.original("category")?),
        "structure.bijection" => Task::Bijection { x: a.original("x")?, t: a.original("t")?, y: a.original("y")? },
        "structure.evaluations_agree" => Task::EvaluationsAgree { t: a.graph("t")?, y: a.original("y")? },
        "structure.yoneda" | "ordered.continuous_yoneda" => {
            let x = a.original("x")?;
            let character = a.character_over("character", &x)?;
            let vertex = a.vertex("vertex", x.graph())?;
            if name == "structure.yoneda" {
                Task::Yoneda { x, character, vertex }
            } else {
                Task::ContinuousYoneda { x, character, vertex }
            }
        }
        "structure.representables" => {
            let x = a.original("x")?;
            let from = a.vertex("from", x.graph())?;
            let to = a.vertex("to", x.graph())?;
            Task::Representables { x, from, to }
        }
        "structure.fullfaithful" => Task::FullFaithful(a.original("category")?),
        "ordered.monotone_contact" => Task::MonotoneContact(a.ordered("y")?),
        "ordered.adjunction_inequalities" => {
            Task::AdjunctionInequalities { x: a.original("x")?, t: a.original("t")?, y: a.ordered("y")? }
        }
        "ordered.regular_bounds" => Task::RegularBounds { x: a.original("x")?, t: a.original("t")?, y: a.ordered("y")? },
        "ordered.corestriction" => Task::Corestriction {
            x: a.original("x")?,
            t: a.original("t")?,
            y: a.ordered("y")?,
            target: a.continuity("target")?,
        },
        "ordered.closure" => Task::Closure { t: a.graph("t")?, y: a.ordered("y")? },
        "quantale.validate" => Task::QuantaleValidate(a.quantale("quantale")?),
        "quantale.meet_distribution" => Task::MeetDistribution(a.quantale("quantale")?),
        "quantale.v_category" => Task::VCategory(a.weighted("graph")?),
        "quantale.adjunction" => Task::VAdjunction { x: a.weighted("x")?, t: a.weighted("t")?, y: a.weighted("y")? },
        "quantale.classify" => Task::Classify(a.vtransport("map")?),
        "quantale.exponential" => Task::VExponential { t: a.weighted("t")?, y: a.weighted("y")? },
        _ => unreachable!("every listed task is dispatched"),
    };
    let canonical = json!({"task": name, "args": Value::Object(a.canonical)});
    Ok((TaskSpec { name: name.to_string(), task }, canonical))
}

/// Runs a task. Over-budget enumerations yield an `exhausted` report; other
/// errors (failed hypotheses, mismatched arguments) are returned.
pub fn run_task(spec: &TaskSpec, budget: Budget) -> Result<Report> {
    let mut report = Report::new(&spec.name);
    match run_into(&spec.task, budget, &mut report) {
        Ok(()) => Ok(report),
        Err(e @ Error::BudgetExceeded { .. }) => Ok(Report::exhausted(&spec.name, e.to_string())),
        Err(e) => Err(e),
    }
}

fn run_into(task: &Task, budget: Budget, r: &mut Report) -> Result<()> {
    match task {
        Task::FinsetBijection { x, t, y } => {
            let s = set_adjunction_suite(x, t, y, budget)?;
            r.count("forms", s.forms).count("names", s.names).count("expected", s.expected);
            r.require("forms counted", s.forms == s.expected, s.expected.to_string(), s.forms.to_string());
            r.require("names counted", s.names == s.expected, s.expected.to_string(), s.names.to_string());
            for c in [
                s.realize_after_name,
                s.name_after_realize,
                s.triangle_product,
                s.triangle_exponential,
                s.natural_in_source,
                s.natural_in_target,
            ] {
                r.check(c);
            }
        }
        Task::PosetExponential { t, y } => {
            budget.admit(saturating_pow(y.len(), t.len()))?;
            let mut monotone = 0u64;
            let mut agree = Check::new("monotone iff limit-continuous");
            for m in all_mappings(t.carrier(), y.carrier()) {
                agree.tick();
                let (mono, cont) = (is_monotone(&m, t, y), is_limit_continuous(&m, t, y));
                monotone += u64::from(mono);
                if mono != cont {
                    agree = agree.fail(vec![format!("{m:?}")], format!("monotone {mono}"), format!("limit-continuous {cont}"));
                }
            }
            r.count("maps", saturating_pow(y.len(), t.len())).count("monotone", monotone);
            r.check(poset_eval_monotone_check(t, y)).check(agree);
        }
        Task::RoundTrip { x, t, y } => {
            let s = round_trip_suite(x.graph(), t.graph(), y.contact(), x.units(), t.units(), budget)?;
            r.count("forms", s.forms)
                .count("predecomposable", s.predecomposable)
                .count("names", s.names)
                .count("neutral", s.neutral);
            r.check(s.forms_round_trip).check(s.names_round_trip);
            r.finding(s.non_decomposable).finding(s.non_neutral);
        }
        Task::ValidateCategory(x) => {
            r.count("vertices", x.graph().vertex_count()).count("edges", x.graph().edge_count());
            r.check(validate_category(x));
        }
        Task::Bijection { x, t, y } => {
            let s = bijection_suite(x, t, y, budget)?;
            r.count("forms", s.forms)
                .count("decomposable", s.decomposable)
                .count("names", s.names)
                .count("neutral_names", s.neutral_names);
            r.check(s.names_land).check(s.forms_round_trip).check(s.names_round_trip);
            r.require(
                "decomposable forms match neutral names",
                s.decomposable == s.neutral_names,
                s.decomposable.to_string(),
                s.neutral_names.to_string(),
            );
            r.finding(s.unnatural_name);
        }
        Task::EvaluationsAgree { t, y } => {
            r.check(evaluations_agree(t, y, budget)?);
        }
        Task::Yoneda { x, character, vertex } => {
            let s = yoneda_correspondence(x, character.character(), *vertex, budget)?;
            r.count("values", character.character().values(*vertex).len())
                .count("social_points", s.social_points)
                .count("transforms", s.transforms);
            r.require(
                "transforms match social points",
                s.transforms == s.social_points,
                s.social_points.to_string(),
                s.transforms.to_string(),
            );
            r.check(s.point_to_transform).check(s.transform_to_point);
        }
        Task::Representables { x, from, to } => {
            let s = edge_transform_correspondence(x, *from, *to, budget)?;
            r.count("edges", x.graph().hom_len(*from, *to))
                .count("social_points", s.correspondence.social_points)
                .count("transforms", s.correspondence.transforms);
            r.require(
                "transforms match edges",
                s.correspondence.transforms == x.graph().hom_len(*from, *to),
                x.graph().hom_len(*from, *to).to_string(),
                s.correspondence.transforms.to_string(),
            );
            r.check(s.correspondence.point_to_transform)
                .check(s.correspondence.transform_to_point)
                .check(s.composition);
        }
        Task::FullFaithful(x) => {
            let c = FiniteCategory::new(x.clone())?;
            r.check(fullfaithful_check(&c, budget)?);
        }
        Task::MonotoneContact(y) => {
            r.check(monotone_contact_check(y)?);
        }
        Task::AdjunctionInequalities { x, t, y } => {
            let s = adjunction_inequality_suite(x, t, y, budget)?;
            r.count("forms", s.forms)
                .count("lower_predecomposable", s.lower_predecomposable)
                .count("names", s.names)
                .count("upper_preneutral", s.upper_preneutral);
            r.check(s.unit_inequality)
                .check(s.counit_inequality)
                .check(s.name_monotone)
                .check(s.realization_monotone);
        }
        Task::RegularBounds { x, t, y } => {
            let product = carte_biproduct(x.graph(), t.graph());
            budget.admit(count_transports(product.graph(), y.graph()))?;
            let (ux, ut) = (x.units(), t.units());
            let mut forms = 0u64;
            let mut competitors = 0u64;
            let mut eligible = [0u64; 2];
            let mut certified = [
                Check::new("pre bound is the least preregular upper bound"),
                Check::new("post bound is the greatest postregular lower bound"),
            ];
            for f in transports(product.graph(), y.graph()) {
                forms += 1;
                for (k, side) in [Side::Pre, Side::Post].into_iter().enumerate() {
                    if !regular_bound_hypotheses(&f, &product, ux, ut, y, side)?.holds() {
                        continue;
                    }
                    eligible[k] += 1;
                    let b = regular_bound(&f, &product, ux, ut, y, side, budget)?;
                    competitors += b.competitors;
                    certified[k].tick();
                    if !b.holds() {
                        let found = b.extremal.witness.map_or_else(|| b.bound.clone(), |w| w.found);
                        certified[k] = certified[k].clone().fail(vec![f.label()], "a certified bound", found);
                    }
                }
            }
            r.count("forms", forms)
                .count("pre_eligible", eligible[0])
                .count("post_eligible", eligible[1])
                .count("competitors", competitors);
            let [pre, post] = certified;
            r.check(pre).check(post);
        }
        Task::Corestriction { x, t, y, target } => {
            let s = corestriction_suite(x, t, y, *target, budget)?;
            r.count("forms", s.forms).count("eligible", s.eligible);
            r.check(s.corestricted);
            r.finding(s.without_pre).finding(s.without_post);
        }
        Task::Closure { t, y } => {
            r.check(continuous_composition_closure(t, y, budget)?);
        }
        Task::ContinuousYoneda { x, character, vertex } => {
            let s = continuous_yoneda_check(x, character, *vertex, budget)?;
            r.count("lower_social_points", s.lower_social_points)
                .count("continuous_transforms", s.continuous_transforms)
                .count("bijective", u64::from(s.bijective));
            r.check(s.point_to_transform).check(s.generated_below);
            r.finding(s.ungenerated);
        }
        Task::QuantaleValidate(q) => {
            r.count("elements", q.len());
            for law in quantale_law_checks(q) {
                r.check(law);
            }
        }
        Task::MeetDistribution(q) => {
            r.count("elements", q.len());
            r.check(meet_distribution_check(q));
        }
        Task::VCategory(w) => {
            r.count("vertices", w.len());
            r.check(v_category_validate(w));
        }
        Task::VAdjunction { x, t, y } => {
            let s = v_adjunction_suite(x, t, y, budget)?;
            r.count("forms", s.forms)
                .count("lower_decomposable", s.lower_decomposable)
                .count("names", s.names)
                .count("upper_neutral", s.upper_neutral);
            r.check(s.unit_inequality).check(s.counit_inequality).check(s.sides_agree);
        }
        Task::Classify(f) => {
            let c = v_functor_classify(f);
            for (name, check) in [
                ("crude", c.crude),
                ("continuous", c.continuous),
                ("cocontinuous", c.cocontinuous),
                ("natural", c.natural),
            ] {
                r.count(name, u64::from(check.holds()));
                r.finding(check.witness);
            }
        }
        Task::VExponential { t, y } => {
            let e = v_exponential(t, y, budget)?;
            r.count("vertices", e.transports().len());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::document::{Document, Structure, SCHEMA};
    use crate::cli::report::Verdict;

    fn task(name: &str, args: Value) -> TaskSpec {
        let d = Document::from_value(&json!({"schema": SCHEMA, "kind": "task", "body": {"task": name, "args": args}}))
            .unwrap();
        match d.structure() {
            Structure::Task(t) => (**t).clone(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finset_bijection_counts_sixteen() {
        let r = run_task(&task("finset.bijection", json!({"x": 2, "t": 2, "y": 2})), Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.counts["forms"], 16);
        assert_eq!(r.counts["expected"], 16);
    }

    #[test]
    fn m3_fails_associativity() {
        let r = run_task(&task("structure.validate_category", json!({"category": "m3"})), Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses[0].property, "associativity");
    }

    #[test]
    fn zero_budget_is_exhausted() {
        let r = run_task(&task("finset.bijection", json!({"x": 1, "t": 1, "y": 1})), Budget(0)).unwrap();
        assert_eq!(r.verdict, Verdict::Exhausted);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn unknown_task_is_rejected() {
        let e = Document::from_value(&json!({"schema": SCHEMA, "kind": "task", "body": {"task": "nope", "args": {}}}))
            .unwrap_err();
        assert_eq!(e.reason(), Some(Reason::UnknownTask));
        assert_eq!(e.pointer(), Some("/body/task"));
    }

    #[test]
    fn every_listed_task_parses_with_fixtures() {
        let sample = |name: &str| -> Value {
            match name {
                "finset.bijection" => json!({"x": 1, "t": 1, "y": 2}),
                "finset.poset_exponential" => {
                    let p = json!({"kind": "poset", "body": {"elements": ["a", "b"], "leq": [["a", "b"]]}});
                    json!({"t": p, "y": p})
                }
                "structure.validate_category" | "structure.fullfaithful" => json!({"category": "walking_arrow"}),
                "structure.evaluations_agree" => json!({"t": "arrow", "y": "walking_arrow"}),
                "structure.yoneda" | "ordered.continuous_yoneda" => json!({
                    "x": "z2",
                    "character": {"kind": "character", "body": {
                        "base": "z2", "values": {"*": ["p"]}, "actions": {"1": {"p": "p"}, "g": {"p": "p"}}
                    }},
                    "vertex": "*"
                }),
                "structure.representables" => json!({"x": "walking_arrow", "from": "0", "to": "1"}),
                "ordered.monotone_contact" => json!({"y": "chain_monoid"}),
                "ordered.closure" => json!({"t": "loop_point", "y": "chain_monoid"}),
                "ordered.corestriction" => json!({"x": "z2", "t": "z2", "y": "chain_monoid", "target": "continuous"}),
                n if n.starts_with("ordered.") => json!({"x": "walking_arrow", "t": "z2", "y": "chain_monoid"}),
                "quantale.validate" | "quantale.meet_distribution" => json!({"quantale": "boolean"}),
                n if n.starts_with("quantale.") => {
                    let w = json!({"kind": "weighted_graph", "body": {
                        "quantale": "boolean", "vertices": ["a"], "weights": [["1"]]
                    }});
                    match n {
                        "quantale.v_category" => json!({"graph": w}),
                        "quantale.classify" => json!({"map": {"kind": "vtransport", "body": {"source": w, "target": w, "map": {"a": "a"}}}}),
                        "quantale.exponential" => json!({"t": w, "y": w}),
                        _ => json!({"x": w, "t": w, "y": w}),
                    }
                }
                _ => json!({"x": "walking_arrow", "t": "walking_arrow", "y": "walking_arrow"}),
            }
        };
        for (name, _) in TASKS {
            let spec = task(name, sample(name));
            let r = run_task(&spec, Budget::default());
            assert!(r.is_ok(), "{name}: {r:?}");
        }
    }
}
